//! Critical inferences, the cut measure and cut elimination.

use std::collections::{HashMap, HashSet};
use std::fmt;

use super::structural::{adapt, build, extended_axiom, falsum, strong_weaken_down, strong_weaken_up};
use super::{G3Error, G3Proof, OccId, RuleG3, Seq};
use crate::formula::Formula;
use crate::order::degree;

type Res = Result<G3Proof, G3Error>;

/// Lexicographic (degree, width, level) measure of a cut.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CutMeasure {
    pub degree: usize,
    pub width: usize,
    pub level: usize,
}

impl fmt::Display for CutMeasure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.degree, self.width, self.level)
    }
}

fn ante_walk(p: &G3Proof, path: &mut Vec<usize>, id: OccId, out: &mut Vec<(Vec<usize>, OccId)>) {
    if !p.seq.has(id) {
        return;
    }
    if p.rule.is_modal() {
        if p.premises[0].seq.has(id) {
            out.push((path.clone(), id));
        }
        return;
    }
    for (k, q) in p.premises.iter().enumerate() {
        path.push(k);
        ante_walk(q, path, id, out);
        path.pop();
    }
}

fn succ_walk(p: &G3Proof, path: &mut Vec<usize>, id: OccId, out: &mut Vec<(Vec<usize>, OccId)>) {
    if p.rule.is_modal() {
        path.push(0);
        ante_walk(&p.premises[0], path, id, out);
        path.pop();
        return;
    }
    for (k, q) in p.premises.iter().enumerate() {
        if q.seq.succ_id() == Some(id) {
            path.push(k);
            succ_walk(q, path, id, out);
            path.pop();
        }
    }
}

fn critical(p: &G3Proof) -> Vec<(Vec<usize>, OccId)> {
    let mut out = Vec::new();
    if let Some(s) = &p.seq.succ {
        if s.formula.is_box() {
            succ_walk(p, &mut Vec::new(), s.id, &mut out);
        }
    }
    out
}

/// Paths (relative to `p`) of the modal inferences that are critical for
/// the boxed succedent of the node at `over`: those where a strict ancestor
/// of the box is kept as an unboxed context member, with exactly one modal
/// inference (the one where the box is principal) in between.
pub fn critical_inferences(p: &G3Proof, over: &[usize]) -> Vec<Vec<usize>> {
    critical(p.at(over))
        .into_iter()
        .map(|(path, _)| over.iter().copied().chain(path).collect())
        .collect()
}

/// Number of inferences critical for the succedent of `p`.
pub fn width(p: &G3Proof) -> usize {
    critical(p).len()
}

fn cut_measure(p: &G3Proof) -> CutMeasure {
    let (l, r) = (&p.premises[0], &p.premises[1]);
    CutMeasure {
        degree: l.seq.succ_formula().map(degree).unwrap_or(0),
        width: width(l),
        level: l.height() + r.height(),
    }
}

fn collect_cuts(p: &G3Proof, out: &mut Vec<CutMeasure>) {
    if p.rule == RuleG3::Cut {
        out.push(cut_measure(p));
    }
    p.premises.iter().for_each(|q| collect_cuts(q, out));
}

/// (cut degree, cut width, cut level) of a whole proof; (0, 0, 0) if it is
/// cut-free.
pub fn cut_stats(p: &G3Proof) -> CutMeasure {
    let mut all = Vec::new();
    collect_cuts(p, &mut all);
    all.into_iter().max().unwrap_or_default()
}

/// Removes the antecedent occurrence `id` and its strict ancestors. Fails
/// if one of them is principal or kept unboxed by a modal inference.
fn prune(p: &G3Proof, id: OccId) -> Res {
    if !p.seq.has(id) {
        return Ok(p.clone());
    }
    if p.principal == Some(id) && p.rule != RuleG3::Cut {
        return Err(G3Error::Unsupported(format!("pruned occurrence is principal at {}", p.seq)));
    }
    let premises = if p.rule.is_modal() {
        if p.premises[0].seq.has(id) {
            return Err(G3Error::Unsupported(format!("pruned occurrence is critical at {}", p.seq)));
        }
        p.premises.clone()
    } else {
        p.premises.iter().map(|q| prune(q, id)).collect::<Result<_, _>>()?
    };
    Ok(G3Proof {
        seq: p.seq.without(id),
        rule: p.rule,
        principal: p.principal,
        premises,
    })
}

/// The same modal inference with its weakening part dropped.
fn drop_weakening(p: &G3Proof) -> G3Proof {
    let q = &p.premises[0];
    G3Proof {
        seq: Seq {
            ante: p.seq.ante.iter().filter(|o| q.seq.has(o.id)).cloned().collect(),
            succ: p.seq.succ.clone(),
        },
        rule: p.rule,
        principal: p.principal,
        premises: p.premises.clone(),
    }
}

fn replace_at(p: &G3Proof, path: &[usize], with: G3Proof) -> G3Proof {
    let mut q = p.clone();
    *q.at_mut(path) = with;
    q
}

fn aux(p: &G3Proof, q: &G3Proof, f: &Formula) -> Option<OccId> {
    let ids: HashSet<OccId> = p.seq.ids().collect();
    q.seq.ante.iter().find(|o| !ids.contains(&o.id) && &o.formula == f).map(|o| o.id)
}

fn missing(what: &str) -> G3Error {
    G3Error::Unsupported(format!("cut elimination: {}", what))
}

/// The result of eliminating all cuts.
#[derive(Clone, Debug)]
pub struct Elimination {
    pub proof: G3Proof,
    /// Measure of each reduced topmost cut, in order.
    pub reductions: Vec<CutMeasure>,
    /// Total number of cut instances handled, including the recursive ones.
    pub steps: usize,
}

#[derive(Default)]
struct Eliminator {
    steps: usize,
}

impl Eliminator {
    /// Eliminates a cut between `d1` (proving the cut formula) and `d2` on
    /// its occurrence `c`, first renaming `d2` apart if their ids clash.
    /// Returns the proof and the map from `d2`'s old root ids to the new.
    fn cut(&mut self, d1: &G3Proof, d2: &G3Proof, c: OccId, bound: CutMeasure) -> Result<(G3Proof, HashMap<OccId, OccId>), G3Error> {
        let left: HashSet<OccId> = d1.seq.ante.iter().map(|o| o.id).collect();
        if d2.seq.ids().any(|i| left.contains(&i)) {
            let (d2, map) = d2.refresh();
            let r = self.elim(d1, &d2, map[&c], Some(bound))?;
            Ok((r, map))
        } else {
            let map = d2.seq.ids().map(|i| (i, i)).collect();
            Ok((self.elim(d1, d2, c, Some(bound))?, map))
        }
    }

    fn elim(&mut self, d1: &G3Proof, d2: &G3Proof, c: OccId, bound: Option<CutMeasure>) -> Res {
        self.steps += 1;
        let a = d1.seq.succ_formula().cloned().ok_or_else(|| missing("left premise has no succedent"))?;
        if d2.seq.get(c).map(|o| &o.formula) != Some(&a) {
            return Err(missing("cut formulas differ"));
        }
        let m = CutMeasure {
            degree: degree(&a),
            width: width(d1),
            level: d1.height() + d2.height(),
        };
        if let Some(b) = bound {
            if m >= b {
                return Err(G3Error::Measure { parent: b, child: m });
            }
        }
        let target = Seq {
            ante: d1.seq.ante.iter().chain(d2.seq.ante.iter().filter(|o| o.id != c)).cloned().collect(),
            succ: d2.seq.succ.clone(),
        };
        let leaf = |rule, principal| G3Proof {
            seq: target.clone(),
            rule,
            principal,
            premises: Vec::new(),
        };
        if d1.rule == RuleG3::LBot {
            return Ok(leaf(RuleG3::LBot, d1.principal));
        }
        if d2.rule == RuleG3::LBot {
            if d2.principal != Some(c) {
                return Ok(leaf(RuleG3::LBot, d2.principal));
            }
            return adapt(&falsum(d1, target.succ.clone())?, &target);
        }
        if d1.rule == RuleG3::At {
            return adapt(d2, &target);
        }
        if d2.rule == RuleG3::At {
            if d2.principal != Some(c) {
                return Ok(leaf(RuleG3::At, d2.principal));
            }
            return adapt(d1, &target);
        }
        // The cut formula already occurs on the other side: weakening or
        // contraction suffices.
        if d1.seq.ante.iter().any(|o| o.formula == a) || d2.seq.ante.iter().any(|o| o.id != c && o.formula == a) {
            return adapt(d2, &target);
        }
        if d2.seq.succ_formula() == Some(&a) {
            return adapt(d1, &target);
        }
        if d1.rule.is_left() {
            let sid = d1.seq.succ_id();
            let mut premises = Vec::new();
            for q in &d1.premises {
                premises.push(if q.seq.succ_id() == sid { self.cut(q, d2, c, m)?.0 } else { q.clone() });
            }
            return build(d1.rule, &target, d1.principal, premises);
        }
        let c_principal = d2.principal == Some(c);
        match d2.rule {
            RuleG3::RAnd | RuleG3::ROr(_) | RuleG3::RImp | RuleG3::LAnd | RuleG3::LOr | RuleG3::LImp if !c_principal => {
                let mut premises = Vec::new();
                for q in &d2.premises {
                    premises.push(if q.seq.has(c) { self.cut(d1, q, c, m)?.0 } else { q.clone() });
                }
                return build(d2.rule, &target, d2.principal, premises);
            }
            RuleG3::RSL if !a.is_box() => {
                let r = self.cut(d1, &d2.premises[0], c, m)?.0;
                return build(RuleG3::RSL, &target, None, vec![r]);
            }
            RuleG3::RSL if !d2.premises[0].seq.has(c) => {
                return build(RuleG3::RSL, &target, None, vec![d2.premises[0].clone()]);
            }
            _ => {}
        }
        match (&a, d1.rule, d2.rule) {
            (Formula::And(x, y), RuleG3::RAnd, RuleG3::LAnd) => {
                let q = &d2.premises[0];
                let kx = aux(d2, q, x).ok_or_else(|| missing("conjunct"))?;
                let ky = q
                    .seq
                    .ante
                    .iter()
                    .find(|o| !d2.seq.has(o.id) && o.id != kx && o.formula == **y)
                    .ok_or_else(|| missing("conjunct"))?
                    .id;
                let (r1, map) = self.cut(&d1.premises[1], q, ky, m)?;
                let (r2, _) = self.cut(&d1.premises[0], &r1, map[&kx], m)?;
                adapt(&r2, &target)
            }
            (Formula::Or(..), RuleG3::ROr(i), RuleG3::LOr) => {
                let q = &d2.premises[i as usize];
                let g = d1.premises[0].seq.succ_formula().unwrap();
                let k = aux(d2, q, g).ok_or_else(|| missing("disjunct"))?;
                let (r, _) = self.cut(&d1.premises[0], q, k, m)?;
                adapt(&r, &target)
            }
            (Formula::Imp(x, y), RuleG3::RImp, RuleG3::LImp) => {
                let p1 = &d1.premises[0];
                let kx = aux(d1, p1, x).ok_or_else(|| missing("antecedent"))?;
                let ky = aux(d2, &d2.premises[1], y).ok_or_else(|| missing("consequent"))?;
                let (r1, _) = self.cut(d1, &d2.premises[0], c, m)?;
                let (r2, _) = self.cut(&r1, p1, kx, m)?;
                let (r3, _) = self.cut(&r2, &d2.premises[1], ky, m)?;
                adapt(&r3, &target)
            }
            (Formula::Box(phi), RuleG3::RSL, RuleG3::RSL) => self.modal(d1, d2, c, phi, m, &target),
            _ => Err(missing(&format!("no case for {} against {}", d1.rule.name(), d2.rule.name()))),
        }
    }

    /// Both premises end in RSL and the cut box is kept in the right one.
    fn modal(&mut self, d1: &G3Proof, d2: &G3Proof, c: OccId, phi: &Formula, m: CutMeasure, target: &Seq) -> Res {
        let s = d1.seq.succ_id().unwrap();
        let d1p = &d1.premises[0];
        let d2p = &d2.premises[0];
        let d1bar = drop_weakening(d1);
        let crit = critical(&d1bar);
        if crit.is_empty() {
            // The pruned left premise proves Π1, ⊡Γ1 ⇒ φ without the diagonal.
            let d3 = prune(d1p, s)?;
            let k = aux(d2, d2p, phi).ok_or_else(|| missing("unboxed cut formula"))?;
            let (r3, map) = self.cut(&d1bar, d2p, c, m)?;
            let k = map[&k];
            let (r2, _) = self.cut(&d3, &r3, k, m)?;
            return build(RuleG3::RSL, target, None, vec![r2]);
        }
        let (path, a) = crit[0].clone();
        debug_assert_eq!(a, s);
        let r_node = d1bar.at(&path);
        let chi = r_node
            .seq
            .succ_formula()
            .and_then(Formula::unbox)
            .cloned()
            .ok_or_else(|| missing("critical inference without boxed succedent"))?;
        // D1 with every sequent S replaced by S_χ, and the premise of the
        // critical inference replaced by an identity proof.
        let d1chi = strong_weaken_down(&d1bar, &chi)?;
        let rchi = d1chi.at(&path);
        let s3chi = &rchi.premises[0].seq;
        let a_inner = aux(rchi, &rchi.premises[0], phi).ok_or_else(|| missing("unboxed critical formula"))?;
        let s4 = s3chi.without(a).without(a_inner);
        let d1circ = replace_at(&d1chi, &path, {
            let mut r = rchi.clone();
            r.premises[0] = adapt(&extended_axiom(&chi), &s4)?;
            r
        });
        let (r3, _) = self.cut(&d1circ, d1p, s, m)?;
        let d3 = &d1.at(&path).premises[0];
        let a1 = aux(d1.at(&path), d3, phi).ok_or_else(|| missing("unboxed critical formula"))?;
        let (r4, map4) = self.cut(&d1circ, d3, a, m)?;
        let (r2, _) = self.cut(&r3, &r4, map4[&a1], m)?;
        // D1 with Π1 added everywhere above and Γ1 added below the boxes.
        let mut t = d1bar.clone();
        for o in d1bar.seq.ante.iter().filter(|o| !o.formula.is_box()) {
            t = strong_weaken_up(&t, &o.formula)?;
        }
        for o in d1bar.seq.ante.iter() {
            if let Some(g) = o.formula.unbox() {
                t = strong_weaken_down(&t, g)?;
            }
        }
        let rt = t.at(&path);
        let top = &rt.premises[0];
        let t_inner = aux(rt, top, phi).ok_or_else(|| missing("unboxed critical formula"))?;
        let s5 = top.seq.without(a).without(t_inner);
        let d4 = adapt(&r2, &s5)?;
        let mut r = rt.clone();
        r.premises[0] = d4;
        let dtri = replace_at(&t, &path, r);
        let (r5, _) = self.cut(&dtri, d2, c, m)?;
        adapt(&r5, target)
    }
}

fn topmost(p: &G3Proof, el: &mut Eliminator, log: &mut Vec<CutMeasure>) -> Result<Option<G3Proof>, G3Error> {
    if p.rule == RuleG3::Cut && p.premises.iter().all(G3Proof::is_cut_free) {
        let (l, r) = (&p.premises[0], &p.premises[1]);
        log.push(cut_measure(p));
        let q = el.elim(l, r, p.principal.unwrap(), None)?;
        let q = if q.seq == p.seq { q } else { adapt(&q, &p.seq)? };
        return Ok(Some(q));
    }
    for (k, q) in p.premises.iter().enumerate() {
        if let Some(r) = topmost(q, el, log)? {
            let mut out = p.clone();
            out.premises[k] = r;
            return Ok(Some(out));
        }
    }
    Ok(None)
}

/// Replaces the leftmost topmost cut by a cut-free proof of its conclusion.
/// Returns `None` if `p` is cut-free.
pub fn reduce_topmost_cut(p: &G3Proof) -> Result<Option<(G3Proof, CutMeasure)>, G3Error> {
    let mut el = Eliminator::default();
    let mut log = Vec::new();
    Ok(topmost(p, &mut el, &mut log)?.map(|q| (q, log[0])))
}

/// Eliminates all cuts, topmost first.
pub fn eliminate_cuts(p: &G3Proof) -> Result<Elimination, G3Error> {
    let mut el = Eliminator::default();
    let mut reductions = Vec::new();
    let mut proof = p.clone();
    while let Some(q) = topmost(&proof, &mut el, &mut reductions)? {
        proof = q;
    }
    Ok(Elimination {
        proof,
        reductions,
        steps: el.steps,
    })
}

