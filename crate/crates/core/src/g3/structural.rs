//! Weakening, contraction, inversion and strong weakening, all height
//! preserving on cut-free proofs, plus the reshaping helpers used by the
//! cut eliminator and the translator.

use super::{multiset, new_occs, sub_multiset, G3Error, G3Proof, Occ, OccId, RuleG3, Seq};
use crate::formula::Formula;
use crate::parser::render_formula;

type Res = Result<G3Proof, G3Error>;

fn node(seq: Seq, rule: RuleG3, principal: Option<OccId>, premises: Vec<G3Proof>) -> G3Proof {
    G3Proof {
        seq,
        rule,
        principal,
        premises,
    }
}

fn shape(what: &str, p: &G3Proof) -> G3Error {
    G3Error::Unsupported(format!("{} at {} ({})", what, p.seq, p.rule.name()))
}

fn occ_of(p: &G3Proof, id: OccId) -> Result<Occ, G3Error> {
    p.seq.get(id).cloned().ok_or_else(|| shape("no such occurrence", p))
}

/// Adds the occurrence `o` to the endsequent. A boxed formula joins the
/// weakening part of a modal conclusion; anything else is threaded upward.
pub fn weaken_occ(p: &G3Proof, o: &Occ) -> G3Proof {
    let seq = p.seq.with(std::slice::from_ref(o));
    let premises = match p.rule {
        RuleG3::At | RuleG3::LBot => Vec::new(),
        RuleG3::RSL if o.formula.is_box() => p.premises.clone(),
        RuleG3::RGL => p.premises.clone(),
        RuleG3::Cut => vec![weaken_occ(&p.premises[0], o), p.premises[1].clone()],
        _ => p.premises.iter().map(|q| weaken_occ(q, o)).collect(),
    };
    node(seq, p.rule, p.principal, premises)
}

pub fn weaken(p: &G3Proof, f: &Formula) -> G3Proof {
    weaken_occ(p, &Occ::fresh(f.clone()))
}

pub fn weaken_all(p: &G3Proof, occs: &[Occ]) -> G3Proof {
    occs.iter().fold(p.clone(), |q, o| weaken_occ(&q, o))
}

/// Restores the modal side conditions of an RSL node after its conclusion
/// changed: unboxed conclusion members and missing unboxings are added to
/// the premise by weakening.
fn fix_modal(mut r: G3Proof) -> Res {
    if r.rule != RuleG3::RSL {
        return Ok(r);
    }
    let diag = r.seq.succ.clone().ok_or_else(|| shape("modal rule without succedent", &r))?;
    let mut q = r.premises.pop().unwrap();
    for o in &r.seq.ante {
        if !o.formula.is_box() && !q.seq.has(o.id) {
            q = weaken_occ(&q, o);
        }
    }
    if !q.seq.has(diag.id) {
        q = weaken_occ(&q, &diag);
    }
    let needed = multiset(
        r.seq
            .ante
            .iter()
            .filter(|o| q.seq.has(o.id))
            .filter_map(|o| o.formula.unbox().cloned()),
    );
    let have = multiset(new_occs(&r.seq, &q.seq, Some(diag.id)).into_iter().map(|o| o.formula.clone()));
    if !sub_multiset(&have, &needed) {
        return Err(shape("modal premise has surplus formulas", &r));
    }
    for (f, n) in &needed {
        for _ in have.get(f).copied().unwrap_or(0)..*n {
            q = weaken(&q, f);
        }
    }
    r.premises.push(q);
    Ok(r)
}

/// Rebuilds `p` with the side occurrence `id` replaced by `repl`, applying
/// `up` to every premise that still contains it.
fn through_ante(p: &G3Proof, id: OccId, repl: &[Occ], up: &mut dyn FnMut(&G3Proof) -> Res) -> Res {
    let mut premises = Vec::with_capacity(p.premises.len());
    for q in &p.premises {
        premises.push(if q.seq.has(id) { up(q)? } else { q.clone() });
    }
    fix_modal(node(p.seq.replace(id, repl), p.rule, p.principal, premises))
}

/// Rebuilds `p`, whose succedent is a side formula, with `extra` added to
/// the antecedent and the succedent replaced. Premises sharing the
/// succedent go through `up`; the others are weakened by `extra`.
fn through_succ(p: &G3Proof, extra: &[Occ], succ: Option<Occ>, up: &mut dyn FnMut(&G3Proof) -> Res) -> Res {
    if !(p.rule.is_left() || p.rule == RuleG3::Cut) {
        return Err(shape("succedent is principal", p));
    }
    let sid = p.seq.succ_id();
    let mut premises = Vec::with_capacity(p.premises.len());
    for (k, q) in p.premises.iter().enumerate() {
        premises.push(if p.rule == RuleG3::Cut {
            if k == 1 {
                up(q)?
            } else {
                q.clone()
            }
        } else if q.seq.succ_id() == sid {
            up(q)?
        } else {
            weaken_all(q, extra)
        });
    }
    let mut seq = p.seq.with(extra);
    seq.succ = succ;
    Ok(node(seq, p.rule, p.principal, premises))
}

/// The auxiliary occurrences of a one-premise left rule, matched in order
/// against `want`.
fn aux_ids(p: &G3Proof, q: &G3Proof, want: &[&Formula]) -> Vec<OccId> {
    let mut fresh: Vec<&Occ> = new_occs(&p.seq, &q.seq, None);
    want.iter()
        .map(|f| {
            let k = fresh.iter().position(|o| &o.formula == *f).expect("auxiliary formula present");
            fresh.remove(k).id
        })
        .collect()
}

/// Γ, a∧b ⇒ Δ  to  Γ, a, b ⇒ Δ, with the new occurrences `x` and `y`.
pub fn inv_land(p: &G3Proof, id: OccId, x: &Occ, y: &Occ) -> Res {
    let o = occ_of(p, id)?;
    let Formula::And(a, b) = &o.formula else {
        return Err(shape("not a conjunction", p));
    };
    if p.principal == Some(id) && p.rule != RuleG3::Cut {
        if p.rule != RuleG3::LAnd {
            return Err(shape("conjunction principal in a foreign rule", p));
        }
        let mut q = p.premises[0].clone();
        let ids = aux_ids(p, &q, &[a, b]);
        super::rename_ante(&mut q, ids[0], x.id);
        super::rename_ante(&mut q, ids[1], y.id);
        return Ok(q);
    }
    let repl = [x.clone(), y.clone()];
    through_ante(p, id, &repl, &mut |q| inv_land(q, id, x, y))
}

/// Γ, a∨b ⇒ Δ  to  Γ, a ⇒ Δ (side 0) or Γ, b ⇒ Δ (side 1).
pub fn inv_lor(p: &G3Proof, id: OccId, side: usize, z: &Occ) -> Res {
    let o = occ_of(p, id)?;
    let Formula::Or(..) = &o.formula else {
        return Err(shape("not a disjunction", p));
    };
    if p.principal == Some(id) && p.rule != RuleG3::Cut {
        if p.rule != RuleG3::LOr {
            return Err(shape("disjunction principal in a foreign rule", p));
        }
        let mut q = p.premises[side].clone();
        let ids = aux_ids(p, &q, &[&z.formula]);
        super::rename_ante(&mut q, ids[0], z.id);
        return Ok(q);
    }
    through_ante(p, id, std::slice::from_ref(z), &mut |q| inv_lor(q, id, side, z))
}

/// Γ, a→b ⇒ Δ  to  Γ, b ⇒ Δ.
pub fn inv_limp(p: &G3Proof, id: OccId, y: &Occ) -> Res {
    let o = occ_of(p, id)?;
    let Formula::Imp(..) = &o.formula else {
        return Err(shape("not an implication", p));
    };
    if p.principal == Some(id) && p.rule != RuleG3::Cut {
        if p.rule != RuleG3::LImp {
            return Err(shape("implication principal in a foreign rule", p));
        }
        let mut q = p.premises[1].clone();
        let ids = aux_ids(p, &q, &[&y.formula]);
        super::rename_ante(&mut q, ids[0], y.id);
        return Ok(q);
    }
    through_ante(p, id, std::slice::from_ref(y), &mut |q| inv_limp(q, id, y))
}

/// Γ ⇒ a→b  to  Γ, a ⇒ b, with new occurrences `x` and `y`.
pub fn inv_rimp(p: &G3Proof, x: &Occ, y: &Occ) -> Res {
    match p.rule {
        RuleG3::RImp => {
            let mut q = p.premises[0].clone();
            let ids = aux_ids(p, &q, &[&x.formula]);
            super::rename_ante(&mut q, ids[0], x.id);
            let sid = q.seq.succ_id().unwrap();
            super::rename_succ(&mut q, sid, y.id);
            Ok(q)
        }
        RuleG3::LBot => Ok(node(
            p.seq.with(std::slice::from_ref(x)).with_succ(Some(y.clone())),
            RuleG3::LBot,
            p.principal,
            Vec::new(),
        )),
        _ => through_succ(p, std::slice::from_ref(x), Some(y.clone()), &mut |q| inv_rimp(q, x, y)),
    }
}

/// Γ ⇒ a∧b  to  Γ ⇒ a (side 0) or Γ ⇒ b (side 1).
pub fn inv_rand(p: &G3Proof, side: usize, z: &Occ) -> Res {
    match p.rule {
        RuleG3::RAnd => {
            let mut q = p.premises[side].clone();
            let sid = q.seq.succ_id().unwrap();
            super::rename_succ(&mut q, sid, z.id);
            Ok(q)
        }
        RuleG3::LBot => Ok(node(p.seq.with_succ(Some(z.clone())), RuleG3::LBot, p.principal, Vec::new())),
        _ => through_succ(p, &[], Some(z.clone()), &mut |q| inv_rand(q, side, z)),
    }
}

/// Γ ⇒ ⊥  to  Γ ⇒ Δ for any Δ.
pub fn falsum(p: &G3Proof, succ: Option<Occ>) -> Res {
    if p.seq.succ_formula() != Some(&Formula::Bot) {
        return Err(shape("succedent is not falsum", p));
    }
    match p.rule {
        RuleG3::LBot => Ok(node(p.seq.with_succ(succ), RuleG3::LBot, p.principal, Vec::new())),
        _ => through_succ(p, &[], succ.clone(), &mut |q| falsum(q, succ.clone())),
    }
}

fn inner_ids(r: &G3Proof, q: &G3Proof, f: &Formula) -> Vec<OccId> {
    let diag = r.seq.succ_id();
    new_occs(&r.seq, &q.seq, diag)
        .into_iter()
        .filter(|o| &o.formula == f)
        .map(|o| o.id)
        .collect()
}

/// Contracts the occurrence `drop` into `keep`, which must carry the same
/// formula. The result contains no occurrence with id `drop`.
pub fn contract_ids(p: &G3Proof, keep: OccId, drop: OccId) -> Res {
    let (k, d) = (occ_of(p, keep)?, occ_of(p, drop)?);
    if k.formula != d.formula || keep == drop {
        return Err(shape("contracted occurrences differ", p));
    }
    let f = k.formula;
    if p.principal == Some(drop) && p.rule != RuleG3::Cut {
        let mut r = contract_ids(p, drop, keep)?;
        super::rename_ante(&mut r, drop, keep);
        return Ok(r);
    }
    let seq = p.seq.without(drop);
    let prem = &p.premises;
    match p.rule {
        RuleG3::At | RuleG3::LBot => Ok(node(seq, p.rule, p.principal, Vec::new())),
        _ if p.principal == Some(keep) && p.rule != RuleG3::Cut => match (p.rule, &f) {
            (RuleG3::LAnd, Formula::And(a, b)) => {
                let ids = aux_ids(p, &prem[0], &[a, b]);
                let (x, y) = (Occ::fresh((**a).clone()), Occ::fresh((**b).clone()));
                let q = inv_land(&prem[0], drop, &x, &y)?;
                let q = contract_ids(&q, ids[0], x.id)?;
                let q = contract_ids(&q, ids[1], y.id)?;
                Ok(node(seq, p.rule, p.principal, vec![q]))
            }
            (RuleG3::LOr, Formula::Or(a, b)) => {
                let mut out = Vec::new();
                for (side, g) in [a, b].into_iter().enumerate() {
                    let ids = aux_ids(p, &prem[side], &[g]);
                    let z = Occ::fresh((**g).clone());
                    let q = inv_lor(&prem[side], drop, side, &z)?;
                    out.push(contract_ids(&q, ids[0], z.id)?);
                }
                Ok(node(seq, p.rule, p.principal, out))
            }
            (RuleG3::LImp, Formula::Imp(_, b)) => {
                let left = contract_ids(&prem[0], keep, drop)?;
                let ids = aux_ids(p, &prem[1], &[b]);
                let y = Occ::fresh((**b).clone());
                let q = inv_limp(&prem[1], drop, &y)?;
                let right = contract_ids(&q, ids[0], y.id)?;
                Ok(node(seq, p.rule, p.principal, vec![left, right]))
            }
            _ => Err(shape("contraction of this principal formula", p)),
        },
        RuleG3::Cut => {
            let mut out = prem.clone();
            let side = (0..2)
                .find(|&i| prem[i].seq.has(keep) && prem[i].seq.has(drop))
                .ok_or_else(|| shape("contraction across a cut", p))?;
            out[side] = contract_ids(&prem[side], keep, drop)?;
            Ok(node(seq, p.rule, p.principal, out))
        }
        RuleG3::RSL | RuleG3::RSL4 | RuleG3::RGL => {
            let q = &prem[0];
            let (kin, din) = (q.seq.has(keep), q.seq.has(drop));
            if !din {
                return Ok(node(seq, p.rule, p.principal, vec![q.clone()]));
            }
            if !kin {
                let mut r = node(p.seq.without(keep), p.rule, p.principal, vec![q.clone()]);
                super::rename_ante(&mut r, drop, keep);
                return Ok(r);
            }
            let mut q = contract_ids(q, keep, drop)?;
            if let Some(inner) = f.unbox() {
                let kept = |o: &&Occ| o.formula.unbox() == Some(inner) && (p.rule == RuleG3::RSL4 || q.seq.has(o.id));
                let target = seq.ante.iter().filter(kept).count();
                let shell = node(seq.clone(), p.rule, p.principal, Vec::new());
                loop {
                    let ids = inner_ids(&shell, &q, inner);
                    if ids.len() <= target {
                        break;
                    }
                    q = contract_ids(&q, ids[0], ids[1])?;
                }
            }
            Ok(node(seq, p.rule, p.principal, vec![q]))
        }
        _ => {
            let out = prem
                .iter()
                .map(|q| contract_ids(q, keep, drop))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(node(seq, p.rule, p.principal, out))
        }
    }
}

/// Contracts two antecedent occurrences of `f` into one.
pub fn contract(p: &G3Proof, f: &Formula) -> Res {
    let ids: Vec<OccId> = p.seq.ante.iter().filter(|o| &o.formula == f).map(|o| o.id).collect();
    if ids.len() < 2 {
        return Err(G3Error::Unsupported(format!("{} occurs fewer than twice", render_formula(f))));
    }
    contract_ids(p, ids[0], ids[1])
}

/// Reshapes `p` to prove `target` exactly, matching occurrences by formula,
/// contracting surplus copies, weakening by missing ones and applying the
/// falsum rule to a ⊥ succedent. The result uses the ids of `target`.
pub fn adapt(p: &G3Proof, target: &Seq) -> Res {
    let fail = || G3Error::Adapt {
        from: p.seq.to_string(),
        to: target.to_string(),
    };
    let (mut q, _) = p.refresh();
    let mut pending: Vec<Occ> = target.ante.clone();
    let mut matched: Vec<(OccId, OccId)> = Vec::new();
    let mut surplus: Vec<Occ> = Vec::new();
    for o in &q.seq.ante {
        match pending.iter().position(|t| t.formula == o.formula) {
            Some(k) => matched.push((o.id, pending.remove(k).id)),
            None => surplus.push(o.clone()),
        }
    }
    for s in surplus {
        let keep = matched
            .iter()
            .find(|(from, _)| q.seq.get(*from).map(|o| &o.formula) == Some(&s.formula))
            .ok_or_else(fail)?
            .0;
        q = contract_ids(&q, keep, s.id)?;
    }
    for (from, to) in matched {
        super::rename_ante(&mut q, from, to);
    }
    match (q.seq.succ.clone(), &target.succ) {
        (Some(a), Some(b)) if a.formula == b.formula => super::rename_succ(&mut q, a.id, b.id),
        (None, None) => {}
        (Some(a), t) if a.formula == Formula::Bot => q = falsum(&q, t.clone())?,
        _ => return Err(fail()),
    }
    let mut q = weaken_all(&q, &pending);
    q.seq.ante = target.ante.clone();
    Ok(q)
}

/// The premise sequents an inference needs for the given conclusion, with
/// fresh ids for auxiliary formulas. For RSL every boxed antecedent member
/// is unboxed.
pub fn premise_shapes(rule: RuleG3, concl: &Seq, principal: Option<OccId>) -> Result<Vec<Seq>, G3Error> {
    let bad = || G3Error::Unsupported(format!("{} cannot conclude {}", rule.name(), concl));
    let pf = || principal.and_then(|id| concl.get(id)).map(|o| o.formula.clone()).ok_or_else(bad);
    let sf = || concl.succ_formula().cloned().ok_or_else(bad);
    let id = principal.unwrap_or_default();
    let f = |x: &Formula| Occ::fresh(x.clone());
    Ok(match rule {
        RuleG3::At | RuleG3::LBot => Vec::new(),
        RuleG3::LAnd => match pf()? {
            Formula::And(a, b) => vec![concl.replace(id, &[f(&a), f(&b)])],
            _ => return Err(bad()),
        },
        RuleG3::LOr => match pf()? {
            Formula::Or(a, b) => vec![concl.replace(id, &[f(&a)]), concl.replace(id, &[f(&b)])],
            _ => return Err(bad()),
        },
        RuleG3::LImp => match pf()? {
            Formula::Imp(a, b) => vec![concl.with_succ(Some(f(&a))), concl.replace(id, &[f(&b)])],
            _ => return Err(bad()),
        },
        RuleG3::LBox => vec![concl.replace(id, &[f(&Formula::boxed(pf()?))])],
        RuleG3::RAnd => match sf()? {
            Formula::And(a, b) => vec![concl.with_succ(Some(f(&a))), concl.with_succ(Some(f(&b)))],
            _ => return Err(bad()),
        },
        RuleG3::ROr(i) => match sf()? {
            Formula::Or(a, b) => vec![concl.with_succ(Some(f(if i == 0 { &a } else { &b })))],
            _ => return Err(bad()),
        },
        RuleG3::RImp => match sf()? {
            Formula::Imp(a, b) => vec![concl.with(&[f(&a)]).with_succ(Some(f(&b)))],
            _ => return Err(bad()),
        },
        RuleG3::RSL | RuleG3::RSL4 | RuleG3::RGL => {
            let diag = concl.succ.clone().ok_or_else(bad)?;
            let phi = diag.formula.unbox().cloned().ok_or_else(bad)?;
            let mut ante: Vec<Occ> = if rule == RuleG3::RGL {
                concl.ante.iter().filter(|o| o.formula.is_box()).cloned().collect()
            } else {
                concl.ante.clone()
            };
            let inners: Vec<Occ> = concl.ante.iter().filter_map(|o| o.formula.unbox()).map(f).collect();
            ante.extend(inners);
            ante.push(diag);
            vec![Seq {
                ante,
                succ: Some(f(&phi)),
            }]
        }
        RuleG3::Cut => return Err(bad()),
    })
}

/// Applies `rule` to conclude `concl`, reshaping each given premise proof
/// to the required premise sequent.
pub fn build(rule: RuleG3, concl: &Seq, principal: Option<OccId>, premises: Vec<G3Proof>) -> Res {
    let shapes = premise_shapes(rule, concl, principal)?;
    if shapes.len() != premises.len() {
        return Err(G3Error::Unsupported(format!("{} needs {} premises", rule.name(), shapes.len())));
    }
    let premises = premises
        .iter()
        .zip(&shapes)
        .map(|(p, s)| adapt(p, s))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(node(concl.clone(), rule, principal, premises))
}

/// A cut-free proof of φ ⇒ φ, by induction on φ.
pub fn extended_axiom(phi: &Formula) -> G3Proof {
    let a = Occ::fresh(phi.clone());
    let concl = Seq {
        ante: vec![a.clone()],
        succ: Some(Occ::fresh(phi.clone())),
    };
    let goal = |f: &Formula| Seq {
        ante: vec![a.clone()],
        succ: Some(Occ::fresh(f.clone())),
    };
    let r = match phi {
        Formula::Atom(_) => Ok(node(concl, RuleG3::At, Some(a.id), Vec::new())),
        Formula::Bot => Ok(node(concl, RuleG3::LBot, Some(a.id), Vec::new())),
        Formula::And(x, y) => {
            let l = build(RuleG3::LAnd, &goal(x), Some(a.id), vec![extended_axiom(x)]).unwrap();
            let r = build(RuleG3::LAnd, &goal(y), Some(a.id), vec![extended_axiom(y)]).unwrap();
            build(RuleG3::RAnd, &concl, None, vec![l, r])
        }
        Formula::Or(x, y) => {
            let side = |i: u8, g: &Formula| {
                let s = Seq::from_formulas(std::slice::from_ref(g), Some(phi));
                build(RuleG3::ROr(i), &s, None, vec![extended_axiom(g)]).unwrap()
            };
            build(RuleG3::LOr, &concl, Some(a.id), vec![side(0, x), side(1, y)])
        }
        Formula::Imp(x, y) => {
            let inner = Seq {
                ante: vec![a.clone(), Occ::fresh((**x).clone())],
                succ: Some(Occ::fresh((**y).clone())),
            };
            let l = build(RuleG3::LImp, &inner, Some(a.id), vec![extended_axiom(x), extended_axiom(y)]).unwrap();
            build(RuleG3::RImp, &concl, None, vec![l])
        }
        Formula::Box(x) => build(RuleG3::RSL, &concl, None, vec![extended_axiom(x)]),
    };
    r.expect("identity proofs always build")
}

/// Number of modal inferences below the node at `path`, counting the one
/// whose premise it is.
pub fn grade(p: &G3Proof, path: &[usize]) -> usize {
    (0..path.len()).filter(|&k| p.at(&path[..k]).rule.is_modal()).count()
}

fn core_only(p: &G3Proof) -> Result<(), G3Error> {
    match p.rule {
        RuleG3::Cut | RuleG3::RSL4 | RuleG3::RGL | RuleG3::LBox => Err(shape("strong weakening needs a cut-free core proof", p)),
        _ => Ok(()),
    }
}

fn up(p: &G3Proof, chi: &Occ, g: usize) -> Res {
    core_only(p)?;
    let present = !chi.formula.is_box() || g == 0;
    let seq = if present {
        p.seq.with(std::slice::from_ref(chi))
    } else {
        p.seq.clone()
    };
    let g2 = g + usize::from(p.rule.is_modal());
    let premises = p.premises.iter().map(|q| up(q, chi, g2)).collect::<Result<Vec<_>, _>>()?;
    Ok(node(seq, p.rule, p.principal, premises))
}

/// Every sequent S becomes S^χ: χ is added unless it is boxed and the grade
/// of S is positive.
pub fn strong_weaken_up(p: &G3Proof, chi: &Formula) -> Res {
    up(p, &Occ::fresh(chi.clone()), 0)
}

fn down(p: &G3Proof, chi: &Formula, added: &[Occ]) -> Res {
    core_only(p)?;
    let premises = if p.rule == RuleG3::RSL {
        let mut next = vec![added[0].clone(), Occ::fresh(chi.clone())];
        if !chi.is_box() {
            next.extend(added[1..].iter().cloned());
        }
        vec![down(&p.premises[0], chi, &next)?]
    } else {
        p.premises.iter().map(|q| down(q, chi, added)).collect::<Result<Vec<_>, _>>()?
    };
    Ok(node(p.seq.with(added), p.rule, p.principal, premises))
}

/// Every sequent S becomes S_χ: □χ is added, together with χ when χ is
/// boxed and the grade is positive, or g(S) copies of χ when χ is not
/// boxed.
pub fn strong_weaken_down(p: &G3Proof, chi: &Formula) -> Res {
    down(p, chi, &[Occ::fresh(Formula::boxed(chi.clone()))])
}

