//! The G3-style calculus with the strong Löb right rule, its cut rule and
//! the two variant calculi.
//!
//! Every formula occurrence in a sequent carries an id. Ids only relate
//! adjacent sequents: an occurrence in a premise with the same id as one in
//! the conclusion is its strict ancestor (a side formula, or the diagonal
//! box in a modal premise). Auxiliary formulas get ids not used in the
//! conclusion.

mod cut;
mod structural;
mod translate;

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::str::FromStr;
use std::sync::atomic::{AtomicU64, Ordering};

use serde_json::{json, Value};
use thiserror::Error;

use crate::formula::Formula;
use crate::parser::{parse_sequent_ordered, render_parts};
use crate::sequent::Sequent;

pub use cut::{critical_inferences, cut_stats, eliminate_cuts, reduce_topmost_cut, width, CutMeasure, Elimination};
pub use structural::{
    adapt, build, contract, extended_axiom, grade, inv_land, inv_limp, inv_lor, inv_rand, inv_rimp, strong_weaken_down,
    strong_weaken_up, weaken, weaken_occ,
};
pub use translate::{g4_to_g3, to_b_variant, to_glc_variant, to_profile};

pub type OccId = u64;

static NEXT_ID: AtomicU64 = AtomicU64::new(1);

pub fn fresh_id() -> OccId {
    NEXT_ID.fetch_add(1, Ordering::Relaxed)
}

fn reserve_ids(max: OccId) {
    NEXT_ID.fetch_max(max + 1, Ordering::Relaxed);
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Occ {
    pub id: OccId,
    pub formula: Formula,
}

impl Occ {
    pub fn fresh(formula: Formula) -> Occ {
        Occ { id: fresh_id(), formula }
    }
}

/// A sequent of formula occurrences. The antecedent keeps its order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Seq {
    pub ante: Vec<Occ>,
    pub succ: Option<Occ>,
}

impl Seq {
    pub fn fresh(s: &Sequent) -> Seq {
        Seq {
            ante: s.ante().iter().cloned().map(Occ::fresh).collect(),
            succ: s.succ().cloned().map(Occ::fresh),
        }
    }

    pub fn from_formulas(ante: &[Formula], succ: Option<&Formula>) -> Seq {
        Seq {
            ante: ante.iter().cloned().map(Occ::fresh).collect(),
            succ: succ.cloned().map(Occ::fresh),
        }
    }

    pub fn get(&self, id: OccId) -> Option<&Occ> {
        self.ante.iter().find(|o| o.id == id)
    }

    pub fn has(&self, id: OccId) -> bool {
        self.get(id).is_some()
    }

    pub fn succ_id(&self) -> Option<OccId> {
        self.succ.as_ref().map(|o| o.id)
    }

    pub fn succ_formula(&self) -> Option<&Formula> {
        self.succ.as_ref().map(|o| &o.formula)
    }

    pub fn without(&self, id: OccId) -> Seq {
        Seq {
            ante: self.ante.iter().filter(|o| o.id != id).cloned().collect(),
            succ: self.succ.clone(),
        }
    }

    pub fn with(&self, occs: &[Occ]) -> Seq {
        let mut ante = self.ante.clone();
        ante.extend(occs.iter().cloned());
        Seq {
            ante,
            succ: self.succ.clone(),
        }
    }

    pub fn with_succ(&self, succ: Option<Occ>) -> Seq {
        Seq {
            ante: self.ante.clone(),
            succ,
        }
    }

    /// Replaces the occurrence `id` by `occs`, keeping its position.
    pub fn replace(&self, id: OccId, occs: &[Occ]) -> Seq {
        let mut ante = Vec::with_capacity(self.ante.len() + occs.len());
        for o in &self.ante {
            if o.id == id {
                ante.extend(occs.iter().cloned());
            } else {
                ante.push(o.clone());
            }
        }
        Seq {
            ante,
            succ: self.succ.clone(),
        }
    }

    pub fn ids(&self) -> impl Iterator<Item = OccId> + '_ {
        self.ante.iter().map(|o| o.id).chain(self.succ_id())
    }

    pub fn formulas(&self) -> Vec<Formula> {
        self.ante.iter().map(|o| o.formula.clone()).collect()
    }

    pub fn sequent(&self) -> Sequent {
        Sequent::new(self.formulas(), self.succ_formula().cloned())
    }
}

impl fmt::Display for Seq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_parts(&self.formulas(), self.succ_formula()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RuleG3 {
    At,
    LBot,
    RAnd,
    LAnd,
    ROr(u8),
    LOr,
    RImp,
    LImp,
    RSL,
    Cut,
    RSL4,
    RGL,
    LBox,
}

impl RuleG3 {
    pub fn name(self) -> &'static str {
        match self {
            RuleG3::At => "At",
            RuleG3::LBot => "LBot",
            RuleG3::RAnd => "RAnd",
            RuleG3::LAnd => "LAnd",
            RuleG3::ROr(0) => "ROr1",
            RuleG3::ROr(_) => "ROr2",
            RuleG3::LOr => "LOr",
            RuleG3::RImp => "RImp",
            RuleG3::LImp => "LImp",
            RuleG3::RSL => "RSL",
            RuleG3::Cut => "Cut",
            RuleG3::RSL4 => "RSL4",
            RuleG3::RGL => "RGL",
            RuleG3::LBox => "LBox",
        }
    }

    pub fn is_modal(self) -> bool {
        matches!(self, RuleG3::RSL | RuleG3::RSL4 | RuleG3::RGL)
    }

    /// Rules whose succedent is a side formula.
    pub fn is_left(self) -> bool {
        matches!(self, RuleG3::LAnd | RuleG3::LOr | RuleG3::LImp | RuleG3::LBox)
    }
}

impl FromStr for RuleG3 {
    type Err = String;

    fn from_str(s: &str) -> Result<RuleG3, String> {
        Ok(match s {
            "At" => RuleG3::At,
            "LBot" => RuleG3::LBot,
            "RAnd" => RuleG3::RAnd,
            "LAnd" => RuleG3::LAnd,
            "ROr1" => RuleG3::ROr(0),
            "ROr2" => RuleG3::ROr(1),
            "LOr" => RuleG3::LOr,
            "RImp" => RuleG3::RImp,
            "LImp" => RuleG3::LImp,
            "RSL" => RuleG3::RSL,
            "Cut" => RuleG3::Cut,
            "RSL4" => RuleG3::RSL4,
            "RGL" => RuleG3::RGL,
            "LBox" => RuleG3::LBox,
            _ => return Err(format!("unknown rule {}", s)),
        })
    }
}

/// Which rule set a proof is checked against.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Profile {
    Core,
    WithCut,
    BVariant,
    GlcVariant,
}

impl Profile {
    pub const ALL: [Profile; 4] = [Profile::Core, Profile::WithCut, Profile::BVariant, Profile::GlcVariant];

    pub fn name(self) -> &'static str {
        match self {
            Profile::Core => "core",
            Profile::WithCut => "with_cut",
            Profile::BVariant => "b_variant",
            Profile::GlcVariant => "glc_variant",
        }
    }

    pub fn calculus_tag(self) -> &'static str {
        match self {
            Profile::Core => "G3iSL",
            Profile::WithCut => "G3iSL+Cut",
            Profile::BVariant => "G3iSLb",
            Profile::GlcVariant => "G3iGLC",
        }
    }

    pub fn allows(self, rule: RuleG3) -> bool {
        match rule {
            RuleG3::RSL => matches!(self, Profile::Core | Profile::WithCut),
            RuleG3::Cut => self == Profile::WithCut,
            RuleG3::RSL4 => self == Profile::BVariant,
            RuleG3::RGL | RuleG3::LBox => self == Profile::GlcVariant,
            _ => true,
        }
    }
}

impl FromStr for Profile {
    type Err = String;

    fn from_str(s: &str) -> Result<Profile, String> {
        Profile::ALL
            .into_iter()
            .find(|p| p.name() == s || p.calculus_tag() == s)
            .ok_or_else(|| format!("unknown profile {} (expected core, with_cut, b_variant or glc_variant)", s))
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum G3Error {
    #[error("{rule} does not derive {sequent}: {reason}")]
    BadInference { sequent: String, rule: String, reason: String },
    #[error("rule {rule} is not part of the {profile} profile")]
    NotInProfile { rule: String, profile: String },
    #[error("cannot reshape {from} into {to}")]
    Adapt { from: String, to: String },
    #[error("cut measure did not decrease: {child:?} after {parent:?}")]
    Measure { parent: CutMeasure, child: CutMeasure },
    #[error("unsupported transformation: {0}")]
    Unsupported(String),
    #[error("malformed proof file: {0}")]
    Format(String),
}

/// A derivation tree. `principal` is the id of the principal antecedent
/// occurrence for left rules and axioms, and of the cut occurrence in the
/// right premise for cuts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct G3Proof {
    pub seq: Seq,
    pub rule: RuleG3,
    pub principal: Option<OccId>,
    pub premises: Vec<G3Proof>,
}

impl G3Proof {
    pub fn size(&self) -> usize {
        1 + self.premises.iter().map(G3Proof::size).sum::<usize>()
    }

    /// Height in nodes: an axiom has height 1.
    pub fn height(&self) -> usize {
        1 + self.premises.iter().map(G3Proof::height).max().unwrap_or(0)
    }

    pub fn sequent(&self) -> Sequent {
        self.seq.sequent()
    }

    pub fn count_rule(&self, rule: RuleG3) -> usize {
        usize::from(self.rule == rule) + self.premises.iter().map(|p| p.count_rule(rule)).sum::<usize>()
    }

    pub fn is_cut_free(&self) -> bool {
        self.rule != RuleG3::Cut && self.premises.iter().all(G3Proof::is_cut_free)
    }

    pub fn at(&self, path: &[usize]) -> &G3Proof {
        path.iter().fold(self, |p, &i| &p.premises[i])
    }

    pub fn at_mut(&mut self, path: &[usize]) -> &mut G3Proof {
        path.iter().fold(self, |p, &i| &mut p.premises[i])
    }

    fn visit_ids(&self, f: &mut impl FnMut(OccId)) {
        self.seq.ids().for_each(&mut *f);
        self.premises.iter().for_each(|p| p.visit_ids(f));
    }

    fn map_ids(&self, f: &impl Fn(OccId) -> OccId) -> G3Proof {
        let m = |o: &Occ| Occ {
            id: f(o.id),
            formula: o.formula.clone(),
        };
        G3Proof {
            seq: Seq {
                ante: self.seq.ante.iter().map(m).collect(),
                succ: self.seq.succ.as_ref().map(m),
            },
            rule: self.rule,
            principal: self.principal.map(f),
            premises: self.premises.iter().map(|p| p.map_ids(f)).collect(),
        }
    }

    /// Renames every id in the tree to a fresh one, returning the map.
    pub fn refresh(&self) -> (G3Proof, HashMap<OccId, OccId>) {
        let mut map = HashMap::new();
        self.visit_ids(&mut |id| {
            map.entry(id).or_insert_with(fresh_id);
        });
        let q = self.map_ids(&|id| map[&id]);
        (q, map)
    }

    /// The same proof with ids renumbered from 1 in preorder.
    pub fn normalize(&self) -> G3Proof {
        let mut map = HashMap::new();
        let mut next = 0;
        self.visit_ids(&mut |id| {
            map.entry(id).or_insert_with(|| {
                next += 1;
                next
            });
        });
        self.map_ids(&|id| map[&id])
    }

    pub fn to_json(&self, profile: Profile) -> Value {
        let mut v = self.node_json();
        v["calculus"] = json!(profile.calculus_tag());
        v["profile"] = json!(profile.name());
        v
    }

    fn node_json(&self) -> Value {
        let mut v = json!({
            "rule": self.rule.name(),
            "sequent": self.seq.to_string(),
            "ids": self.seq.ante.iter().map(|o| o.id).collect::<Vec<_>>(),
            "succ_id": self.seq.succ_id(),
            "premises": self.premises.iter().map(G3Proof::node_json).collect::<Vec<_>>(),
        });
        if let Some(p) = self.principal {
            v["principal"] = json!(p);
        }
        v
    }

    /// Reads a proof and the profile named in the file (`core` if absent).
    pub fn from_json(v: &Value) -> Result<(G3Proof, Profile), G3Error> {
        let profile = match (v.get("profile"), v.get("calculus")) {
            (Some(p), _) => p.as_str().unwrap_or_default().parse().map_err(G3Error::Format)?,
            (None, Some(c)) => c.as_str().unwrap_or_default().parse().map_err(G3Error::Format)?,
            (None, None) => Profile::Core,
        };
        let p = Self::node_from_json(v)?;
        let mut max = 0;
        p.visit_ids(&mut |id| max = max.max(id));
        reserve_ids(max);
        Ok((p, profile))
    }

    fn node_from_json(v: &Value) -> Result<G3Proof, G3Error> {
        let bad = |m: &str| G3Error::Format(m.to_string());
        let rule: RuleG3 = v["rule"]
            .as_str()
            .ok_or_else(|| bad("missing rule"))?
            .parse()
            .map_err(G3Error::Format)?;
        let text = v["sequent"].as_str().ok_or_else(|| bad("missing sequent"))?;
        let (ante, succ) = parse_sequent_ordered(text).map_err(|e| G3Error::Format(format!("{}: {}", text, e)))?;
        let ids: Vec<OccId> = v["ids"]
            .as_array()
            .ok_or_else(|| bad("missing ids"))?
            .iter()
            .map(|x| x.as_u64().ok_or_else(|| bad("ids must be integers")))
            .collect::<Result<_, _>>()?;
        if ids.len() != ante.len() {
            return Err(G3Error::Format(format!("{}: {} ids for {} formulas", text, ids.len(), ante.len())));
        }
        let succ = match (succ, v.get("succ_id").and_then(Value::as_u64)) {
            (None, _) => None,
            (Some(formula), Some(id)) => Some(Occ { id, formula }),
            (Some(_), None) => return Err(bad("missing succ_id")),
        };
        let principal = v.get("principal").and_then(Value::as_u64);
        let premises = v["premises"]
            .as_array()
            .ok_or_else(|| bad("missing premises"))?
            .iter()
            .map(Self::node_from_json)
            .collect::<Result<Vec<_>, _>>()?;
        Ok(G3Proof {
            seq: Seq {
                ante: ids.into_iter().zip(ante).map(|(id, formula)| Occ { id, formula }).collect(),
                succ,
            },
            rule,
            principal,
            premises,
        })
    }

    /// Graphviz rendering, conclusion at the bottom.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph proof {\n  rankdir=BT;\n  node [shape=plaintext];\n");
        let mut n = 0;
        self.dot_into(&mut out, &mut n);
        out.push_str("}\n");
        out
    }

    fn dot_into(&self, out: &mut String, n: &mut usize) -> usize {
        let me = *n;
        *n += 1;
        let label = format!("{}  ({})", self.seq, self.rule.name()).replace('\\', "\\\\").replace('"', "\\\"");
        out.push_str(&format!("  n{} [label=\"{}\"];\n", me, label));
        for p in &self.premises {
            let c = p.dot_into(out, n);
            out.push_str(&format!("  n{} -> n{};\n", c, me));
        }
        me
    }
}

fn bad(p: &G3Proof, reason: impl Into<String>) -> G3Error {
    G3Error::BadInference {
        sequent: p.seq.to_string(),
        rule: p.rule.name().to_string(),
        reason: reason.into(),
    }
}

fn multiset(fs: impl IntoIterator<Item = Formula>) -> BTreeMap<Formula, usize> {
    let mut m = BTreeMap::new();
    for f in fs {
        *m.entry(f).or_insert(0) += 1;
    }
    m
}

fn sub_multiset(a: &BTreeMap<Formula, usize>, b: &BTreeMap<Formula, usize>) -> bool {
    a.iter().all(|(f, n)| b.get(f).copied().unwrap_or(0) >= *n)
}

/// Ante occurrences of `prem` whose ids do not occur in `concl`, other than
/// `skip`.
fn new_occs<'a>(concl: &Seq, prem: &'a Seq, skip: Option<OccId>) -> Vec<&'a Occ> {
    let ids: HashSet<OccId> = concl.ids().collect();
    prem.ante
        .iter()
        .filter(|o| !ids.contains(&o.id) && Some(o.id) != skip)
        .collect()
}

fn same_occ(a: Option<&Occ>, b: Option<&Occ>) -> bool {
    a == b
}

/// The premise keeps the conclusion's antecedent except `removed`, adds
/// exactly the formulas `added` under new ids, and has succedent `succ`.
fn side_ok(
    p: &G3Proof,
    prem: &Seq,
    removed: Option<OccId>,
    added: &[Formula],
    succ: Result<Option<&Occ>, &Formula>,
) -> Result<(), G3Error> {
    for o in &p.seq.ante {
        if Some(o.id) == removed {
            if prem.has(o.id) {
                return Err(bad(p, "principal occurrence reappears in a premise"));
            }
        } else if prem.get(o.id) != Some(o) {
            return Err(bad(p, format!("side formula {} missing from a premise", crate::parser::render_formula(&o.formula))));
        }
    }
    let fresh = new_occs(&p.seq, prem, None);
    if fresh.len() != prem.ante.len() + usize::from(removed.is_some()) - p.seq.ante.len() {
        return Err(bad(p, "premise reuses an id"));
    }
    if multiset(fresh.iter().map(|o| o.formula.clone())) != multiset(added.iter().cloned()) {
        return Err(bad(p, "wrong auxiliary formulas in a premise"));
    }
    match succ {
        Ok(s) => {
            if !same_occ(prem.succ.as_ref(), s) {
                return Err(bad(p, "premise succedent differs"));
            }
        }
        Err(f) => match &prem.succ {
            Some(o) if &o.formula == f && !p.seq.ids().any(|i| i == o.id) => {}
            _ => return Err(bad(p, "premise succedent must be a new occurrence of the auxiliary formula")),
        },
    }
    Ok(())
}

fn distinct_ids(s: &Seq) -> bool {
    let mut seen = HashSet::new();
    s.ids().all(|i| seen.insert(i))
}

fn check_node(p: &G3Proof, profile: Profile) -> Result<(), G3Error> {
    if !profile.allows(p.rule) {
        return Err(G3Error::NotInProfile {
            rule: p.rule.name().into(),
            profile: profile.name().into(),
        });
    }
    if !distinct_ids(&p.seq) {
        return Err(bad(p, "repeated occurrence id"));
    }
    let arity = match p.rule {
        RuleG3::At | RuleG3::LBot => 0,
        RuleG3::RAnd | RuleG3::LOr | RuleG3::LImp | RuleG3::Cut => 2,
        _ => 1,
    };
    if p.premises.len() != arity {
        return Err(bad(p, format!("expected {} premises", arity)));
    }
    let principal = || -> Result<&Occ, G3Error> {
        p.principal
            .and_then(|id| p.seq.get(id))
            .ok_or_else(|| bad(p, "principal occurrence not in the antecedent"))
    };
    let succ = p.seq.succ.as_ref();
    let succ_f = || succ.map(|o| &o.formula).ok_or_else(|| bad(p, "empty succedent"));
    let prem = |i: usize| &p.premises[i].seq;
    match p.rule {
        RuleG3::At => {
            let o = principal()?;
            if !o.formula.is_atom() || Some(&o.formula) != succ.map(|o| &o.formula) {
                return Err(bad(p, "principal must be an atom equal to the succedent"));
            }
        }
        RuleG3::LBot => {
            if principal()?.formula != Formula::Bot {
                return Err(bad(p, "principal must be falsum"));
            }
        }
        RuleG3::RAnd => match succ_f()? {
            Formula::And(a, b) => {
                side_ok(p, prem(0), None, &[], Err(a))?;
                side_ok(p, prem(1), None, &[], Err(b))?;
            }
            _ => return Err(bad(p, "succedent is not a conjunction")),
        },
        RuleG3::ROr(i) => match succ_f()? {
            Formula::Or(a, b) => side_ok(p, prem(0), None, &[], Err(if i == 0 { a } else { b }))?,
            _ => return Err(bad(p, "succedent is not a disjunction")),
        },
        RuleG3::RImp => match succ_f()? {
            Formula::Imp(a, b) => side_ok(p, prem(0), None, &[(**a).clone()], Err(b))?,
            _ => return Err(bad(p, "succedent is not an implication")),
        },
        RuleG3::LAnd => match &principal()?.formula {
            Formula::And(a, b) => side_ok(p, prem(0), p.principal, &[(**a).clone(), (**b).clone()], Ok(succ))?,
            _ => return Err(bad(p, "principal is not a conjunction")),
        },
        RuleG3::LOr => match &principal()?.formula {
            Formula::Or(a, b) => {
                side_ok(p, prem(0), p.principal, &[(**a).clone()], Ok(succ))?;
                side_ok(p, prem(1), p.principal, &[(**b).clone()], Ok(succ))?;
            }
            _ => return Err(bad(p, "principal is not a disjunction")),
        },
        RuleG3::LImp => match &principal()?.formula {
            Formula::Imp(a, b) => {
                side_ok(p, prem(0), None, &[], Err(a))?;
                side_ok(p, prem(1), p.principal, &[(**b).clone()], Ok(succ))?;
            }
            _ => return Err(bad(p, "principal is not an implication")),
        },
        RuleG3::LBox => {
            let o = principal()?;
            side_ok(p, prem(0), p.principal, &[Formula::boxed(o.formula.clone())], Ok(succ))?;
        }
        RuleG3::RSL | RuleG3::RSL4 | RuleG3::RGL => check_modal(p)?,
        RuleG3::Cut => check_cut(p)?,
    }
    p.premises.iter().try_for_each(|q| {
        if distinct_ids(&q.seq) {
            Ok(())
        } else {
            Err(bad(q, "repeated occurrence id"))
        }
    })
}

fn check_modal(p: &G3Proof) -> Result<(), G3Error> {
    let diag = p.seq.succ.as_ref().ok_or_else(|| bad(p, "empty succedent"))?;
    let phi = diag.formula.unbox().ok_or_else(|| bad(p, "succedent is not boxed"))?;
    let prem = &p.premises[0].seq;
    if prem.get(diag.id) != Some(diag) {
        return Err(bad(p, "diagonal box missing from the premise"));
    }
    match &prem.succ {
        Some(o) if &o.formula == phi && !p.seq.ids().any(|i| i == o.id) => {}
        _ => return Err(bad(p, "premise succedent must be a new occurrence of the boxed formula")),
    }
    let mut inners = Vec::new();
    for o in &p.seq.ante {
        match (prem.get(o.id), o.formula.unbox()) {
            (Some(q), _) if q != o => return Err(bad(p, "occurrence changed its formula")),
            (Some(_), Some(inner)) => {
                if p.rule != RuleG3::RSL4 {
                    inners.push(inner.clone());
                }
            }
            (Some(_), None) => {
                if p.rule == RuleG3::RGL {
                    return Err(bad(p, "unboxed formula kept in the premise"));
                }
            }
            (None, Some(inner)) => {
                if p.rule == RuleG3::RSL4 {
                    return Err(bad(p, "conclusion formula missing from the premise"));
                }
                let _ = inner;
            }
            (None, None) => {
                if p.rule != RuleG3::RGL {
                    return Err(bad(p, "unboxed formula missing from the premise"));
                }
            }
        }
    }
    let fresh = multiset(new_occs(&p.seq, prem, Some(diag.id)).into_iter().map(|o| o.formula.clone()));
    if p.rule == RuleG3::RSL4 {
        let allowed = multiset(p.seq.ante.iter().filter_map(|o| o.formula.unbox().cloned()));
        if !sub_multiset(&fresh, &allowed) {
            return Err(bad(p, "premise adds formulas that are not unboxed antecedent members"));
        }
    } else if fresh != multiset(inners) {
        return Err(bad(p, "premise must add exactly the unboxed kept boxes"));
    }
    Ok(())
}

fn check_cut(p: &G3Proof) -> Result<(), G3Error> {
    let (left, right) = (&p.premises[0].seq, &p.premises[1].seq);
    let c = p.principal.and_then(|id| right.get(id)).ok_or_else(|| bad(p, "cut occurrence missing"))?;
    if p.seq.has(c.id) {
        return Err(bad(p, "cut occurrence reappears in the conclusion"));
    }
    match &left.succ {
        Some(o) if o.formula == c.formula && !p.seq.ids().any(|i| i == o.id) => {}
        _ => return Err(bad(p, "left premise must prove the cut formula")),
    }
    if right.succ != p.seq.succ {
        return Err(bad(p, "right premise succedent differs"));
    }
    let mut parts: Vec<&Occ> = left.ante.iter().chain(right.ante.iter().filter(|o| o.id != c.id)).collect();
    let mut concl: Vec<&Occ> = p.seq.ante.iter().collect();
    parts.sort_by_key(|o| o.id);
    concl.sort_by_key(|o| o.id);
    if parts != concl {
        return Err(bad(p, "premise contexts do not split the conclusion"));
    }
    Ok(())
}

/// Checks every inference against the profile. Reports the lowest offending
/// node first.
pub fn check_g3_proof(p: &G3Proof, profile: Profile) -> Result<(), G3Error> {
    p.premises.iter().try_for_each(|q| check_g3_proof(q, profile))?;
    check_node(p, profile)
}

/// Renames the antecedent occurrence `from` to `to` along its ancestry.
pub fn rename_ante(p: &mut G3Proof, from: OccId, to: OccId) {
    let Some(o) = p.seq.ante.iter_mut().find(|o| o.id == from) else {
        return;
    };
    o.id = to;
    if p.principal == Some(from) {
        p.principal = Some(to);
    }
    for q in &mut p.premises {
        if q.seq.has(from) {
            rename_ante(q, from, to);
        }
    }
}

/// Renames the succedent occurrence `from` to `to` along its ancestry,
/// including the diagonal box of a modal premise.
pub fn rename_succ(p: &mut G3Proof, from: OccId, to: OccId) {
    match &mut p.seq.succ {
        Some(o) if o.id == from => o.id = to,
        _ => return,
    }
    for q in &mut p.premises {
        if p.rule.is_modal() {
            rename_ante(q, from, to);
        } else if q.seq.succ_id() == Some(from) {
            rename_succ(q, from, to);
        }
    }
}

#[cfg(test)]
mod tests;
