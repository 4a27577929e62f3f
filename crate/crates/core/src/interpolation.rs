//! Craig interpolants read off cut-free G3 proofs.

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::formula::Formula;
use crate::g3::{check_g3_proof, eliminate_cuts, g4_to_g3, G3Error, G3Proof, OccId, Profile, RuleG3};
use crate::g4::{decide, extract_proof, search};
use crate::parser::{parse_split, render_formula, render_list, render_parts, ParseError};
use crate::sequent::Sequent;

/// Γ1 ; Γ2 ⇒ Δ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitSequent {
    pub left: Vec<Formula>,
    pub right: Vec<Formula>,
    pub succ: Option<Formula>,
}

impl SplitSequent {
    pub fn new(left: Vec<Formula>, right: Vec<Formula>, succ: Option<Formula>) -> SplitSequent {
        SplitSequent { left, right, succ }
    }

    pub fn parse(text: &str) -> Result<SplitSequent, ParseError> {
        let (left, right, succ) = parse_split(text)?;
        Ok(SplitSequent { left, right, succ })
    }

    pub fn sequent(&self) -> Sequent {
        Sequent::new(self.left.iter().chain(&self.right).cloned().collect(), self.succ.clone())
    }
}

impl fmt::Display for SplitSequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let l = render_list(&self.left);
        if !l.is_empty() {
            write!(f, "{} ", l)?;
        }
        write!(f, "; {}", render_parts(&self.right, self.succ.as_ref()))
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum InterpolationError {
    #[error("sequent {0} is not provable")]
    NotProvable(String),
    #[error("the split does not match the proof's endsequent {0}")]
    SplitMismatch(String),
    #[error(transparent)]
    Proof(#[from] G3Error),
    #[error("candidate interpolant {formula} fails: {reason}")]
    Invalid { formula: String, reason: String },
}

fn top() -> Formula {
    Formula::top()
}

fn is_top(f: &Formula) -> bool {
    *f == top()
}

fn and(a: Formula, b: Formula) -> Formula {
    match () {
        _ if is_top(&a) => b,
        _ if is_top(&b) => a,
        _ if a == Formula::Bot || b == Formula::Bot => Formula::Bot,
        _ if a == b => a,
        _ => Formula::and(a, b),
    }
}

fn or(a: Formula, b: Formula) -> Formula {
    match () {
        _ if is_top(&a) || is_top(&b) => top(),
        _ if a == Formula::Bot => b,
        _ if b == Formula::Bot => a,
        _ if a == b => a,
        _ => Formula::or(a, b),
    }
}

fn imp(a: Formula, b: Formula) -> Formula {
    match () {
        _ if is_top(&a) => b,
        _ if is_top(&b) || a == Formula::Bot => top(),
        _ => Formula::imp(a, b),
    }
}

fn boxed(a: Formula) -> Formula {
    if is_top(&a) {
        top()
    } else {
        Formula::boxed(a)
    }
}

/// Maehara's construction. `left` holds the ids of the first partition;
/// every other antecedent occurrence and the succedent form the second.
fn interp(p: &G3Proof, left: &HashSet<OccId>) -> Result<Formula, InterpolationError> {
    let in_left = |id: Option<OccId>| id.is_some_and(|i| left.contains(&i));
    // Auxiliary formulas of a left rule inherit the side of the principal.
    let inherit = |q: &G3Proof| -> HashSet<OccId> {
        let mut s: HashSet<OccId> = left.iter().copied().filter(|i| q.seq.has(*i)).collect();
        if in_left(p.principal) {
            s.extend(q.seq.ante.iter().filter(|o| !p.seq.has(o.id)).map(|o| o.id));
        }
        s
    };
    let keep = |q: &G3Proof| -> HashSet<OccId> { left.iter().copied().filter(|i| q.seq.has(*i)).collect() };
    match p.rule {
        RuleG3::At => {
            if in_left(p.principal) {
                Ok(p.seq.succ_formula().cloned().unwrap())
            } else {
                Ok(top())
            }
        }
        RuleG3::LBot => Ok(if in_left(p.principal) { Formula::Bot } else { top() }),
        RuleG3::RAnd => Ok(and(interp(&p.premises[0], &keep(&p.premises[0]))?, interp(&p.premises[1], &keep(&p.premises[1]))?)),
        RuleG3::ROr(_) | RuleG3::RImp => interp(&p.premises[0], &keep(&p.premises[0])),
        RuleG3::LAnd => interp(&p.premises[0], &inherit(&p.premises[0])),
        RuleG3::LOr => {
            let a = interp(&p.premises[0], &inherit(&p.premises[0]))?;
            let b = interp(&p.premises[1], &inherit(&p.premises[1]))?;
            Ok(if in_left(p.principal) { or(a, b) } else { and(a, b) })
        }
        RuleG3::LImp => {
            let (q1, q2) = (&p.premises[0], &p.premises[1]);
            if in_left(p.principal) {
                let swapped: HashSet<OccId> = q1.seq.ante.iter().map(|o| o.id).filter(|i| !left.contains(i)).collect();
                let a = interp(q1, &swapped)?;
                let b = interp(q2, &inherit(q2))?;
                Ok(imp(a, b))
            } else {
                Ok(and(interp(q1, &keep(q1))?, interp(q2, &keep(q2))?))
            }
        }
        RuleG3::RSL => {
            let q = &p.premises[0];
            let mut next = keep(q);
            let diag = p.seq.succ_id();
            let mut fresh: Vec<_> = q
                .seq
                .ante
                .iter()
                .filter(|o| !p.seq.has(o.id) && Some(o.id) != diag)
                .collect();
            for o in p.seq.ante.iter().filter(|o| left.contains(&o.id) && q.seq.has(o.id)) {
                if let Some(inner) = o.formula.unbox() {
                    if let Some(k) = fresh.iter().position(|x| &x.formula == inner) {
                        next.insert(fresh.remove(k).id);
                    }
                }
            }
            Ok(boxed(interp(q, &next)?))
        }
        RuleG3::Cut | RuleG3::RSL4 | RuleG3::RGL | RuleG3::LBox => Err(G3Error::Unsupported(format!(
            "interpolation needs a cut-free core proof, found {}",
            p.rule.name()
        ))
        .into()),
    }
}

fn atoms(fs: &[Formula]) -> BTreeSet<Arc<str>> {
    fs.iter().flat_map(Formula::atoms).collect()
}

/// An interpolant for the split, read off a cut-free core proof of the
/// underlying sequent, and checked with the decision procedure.
pub fn interpolate(p: &G3Proof, split: &SplitSequent) -> Result<Formula, InterpolationError> {
    if !p.is_cut_free() {
        return Err(G3Error::Unsupported("interpolation needs a cut-free proof".into()).into());
    }
    check_g3_proof(p, Profile::Core)?;
    if p.sequent() != split.sequent() {
        return Err(InterpolationError::SplitMismatch(p.seq.to_string()));
    }
    let mut want = split.left.clone();
    let mut left = HashSet::new();
    for o in &p.seq.ante {
        if let Some(k) = want.iter().position(|f| f == &o.formula) {
            want.remove(k);
            left.insert(o.id);
        }
    }
    let i = interp(p, &left)?;
    validate(&i, split)?;
    Ok(i)
}

/// Checks the atom condition and that both halves are provable.
pub fn validate(i: &Formula, split: &SplitSequent) -> Result<(), InterpolationError> {
    let bad = |reason: String| InterpolationError::Invalid {
        formula: render_formula(i),
        reason,
    };
    let l = atoms(&split.left);
    let mut r = atoms(&split.right);
    if let Some(d) = &split.succ {
        r.extend(d.atoms());
    }
    if let Some(a) = i.atoms().iter().find(|a| !l.contains(*a) || !r.contains(*a)) {
        return Err(bad(format!("atom {} is not shared", a)));
    }
    let first = Sequent::new(split.left.clone(), Some(i.clone()));
    let mut right = split.right.clone();
    right.push(i.clone());
    let second = Sequent::new(right, split.succ.clone());
    let (a, b) = both(|| decide(&first), || decide(&second));
    if !a {
        return Err(bad(format!("{} is not provable", first)));
    }
    if !b {
        return Err(bad(format!("{} is not provable", second)));
    }
    Ok(())
}

fn both(a: impl FnOnce() -> bool + Send, b: impl FnOnce() -> bool + Send) -> (bool, bool) {
    std::thread::scope(|s| {
        let h = s.spawn(b);
        let x = a();
        (x, h.join().expect("decision procedure panicked"))
    })
}

/// A cut-free core proof of the sequent, via the terminating calculus and
/// cut elimination.
pub fn cut_free_proof(s: &Sequent) -> Result<G3Proof, InterpolationError> {
    let root = search(s);
    let g4 = extract_proof(&root).map_err(|_| InterpolationError::NotProvable(s.to_string()))?;
    let p = g4_to_g3(&g4)?;
    Ok(eliminate_cuts(&p)?.proof)
}

/// Proves the underlying sequent and interpolates.
pub fn interpolate_split(split: &SplitSequent) -> Result<Formula, InterpolationError> {
    let p = cut_free_proof(&split.sequent())?;
    interpolate(&p, split)
}
