//! The terminating calculus G4iSL□^a: rule instances, irreducibility,
//! backward search with positive/negative marking, and proof extraction.

mod proof;
mod search;

use std::fmt;
use std::str::FromStr;

pub use proof::{check_g4_proof, extended_axiom_proof, extract_proof, G4Error, G4Proof};
pub use search::{
    backward_applications, decide, decide_with, search, search_with, search_edges, Group, Note, Priority,
    SearchNode, SearchOptions,
};

use crate::formula::Formula;
use crate::sequent::Sequent;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RuleG4 {
    At,
    LBot,
    RAnd,
    LAnd,
    ROr(u8),
    LOr,
    RImp,
    LpImp,
    LAndImp,
    LOrImp,
    LImpImpA,
    ImpSL1,
    ImpSL2,
    RSLa,
}

impl RuleG4 {
    pub const ALL: [RuleG4; 15] = [
        RuleG4::At,
        RuleG4::LBot,
        RuleG4::RAnd,
        RuleG4::LAnd,
        RuleG4::ROr(0),
        RuleG4::ROr(1),
        RuleG4::LOr,
        RuleG4::RImp,
        RuleG4::LpImp,
        RuleG4::LAndImp,
        RuleG4::LOrImp,
        RuleG4::LImpImpA,
        RuleG4::ImpSL1,
        RuleG4::ImpSL2,
        RuleG4::RSLa,
    ];

    /// Rules applied eagerly during search; the rest branch.
    pub const INVERTIBLE: [RuleG4; 8] = [
        RuleG4::LAnd,
        RuleG4::LOr,
        RuleG4::LpImp,
        RuleG4::LAndImp,
        RuleG4::LOrImp,
        RuleG4::ImpSL2,
        RuleG4::RAnd,
        RuleG4::RImp,
    ];

    pub fn name(self) -> &'static str {
        match self {
            RuleG4::At => "At",
            RuleG4::LBot => "LBot",
            RuleG4::RAnd => "RAnd",
            RuleG4::LAnd => "LAnd",
            RuleG4::ROr(0) => "ROr0",
            RuleG4::ROr(_) => "ROr1",
            RuleG4::LOr => "LOr",
            RuleG4::RImp => "RImp",
            RuleG4::LpImp => "LpImp",
            RuleG4::LAndImp => "LAndImp",
            RuleG4::LOrImp => "LOrImp",
            RuleG4::LImpImpA => "LImpImpA",
            RuleG4::ImpSL1 => "ImpSL1",
            RuleG4::ImpSL2 => "ImpSL2",
            RuleG4::RSLa => "RSLa",
        }
    }

    pub fn is_invertible(self) -> bool {
        RuleG4::INVERTIBLE.contains(&self)
    }
}

impl fmt::Display for RuleG4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for RuleG4 {
    type Err = String;

    fn from_str(s: &str) -> Result<RuleG4, String> {
        RuleG4::ALL
            .iter()
            .copied()
            .find(|r| r.name() == s)
            .ok_or_else(|| format!("unknown G4 rule `{}`", s))
    }
}

/// One backward instance: the principal formula (if any) and the premises.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub rule: RuleG4,
    pub principal: Option<Formula>,
    pub premises: Vec<Sequent>,
}

fn distinct(fs: &[Formula]) -> Vec<&Formula> {
    let mut out: Vec<&Formula> = Vec::new();
    for f in fs {
        if out.last() != Some(&f) {
            out.push(f);
        }
    }
    out
}

fn with(mut v: Vec<Formula>, extra: impl IntoIterator<Item = Formula>) -> Vec<Formula> {
    v.extend(extra);
    v
}

/// `Π, Γ, □Γ` for an antecedent split into non-boxed `Π` and boxed `□Γ`.
fn boxdot(ante: &[Formula]) -> Vec<Formula> {
    let mut out = ante.to_vec();
    out.extend(ante.iter().filter_map(|f| f.unbox().cloned()));
    out
}

/// All instances of `rule` whose conclusion is `s`, one per choice of
/// principal formula.
pub fn instances(rule: RuleG4, s: &Sequent) -> Vec<Instance> {
    let succ = s.succ().cloned();
    let ante = s.ante();
    let mk = |principal: Option<Formula>, premises: Vec<Sequent>| Instance {
        rule,
        principal,
        premises,
    };
    let mut out = Vec::new();
    match rule {
        RuleG4::At => {
            if let Some(p @ Formula::Atom(_)) = &succ {
                if s.contains(p) {
                    out.push(mk(Some(p.clone()), vec![]));
                }
            }
        }
        RuleG4::LBot => {
            if s.contains(&Formula::Bot) {
                out.push(mk(Some(Formula::Bot), vec![]));
            }
        }
        RuleG4::RAnd => {
            if let Some(Formula::And(a, b)) = &succ {
                out.push(mk(
                    None,
                    vec![
                        Sequent::new(ante.to_vec(), Some((**a).clone())),
                        Sequent::new(ante.to_vec(), Some((**b).clone())),
                    ],
                ));
            }
        }
        RuleG4::ROr(i) => {
            if let Some(Formula::Or(a, b)) = &succ {
                let d = if i == 0 { a } else { b };
                out.push(mk(None, vec![Sequent::new(ante.to_vec(), Some((**d).clone()))]));
            }
        }
        RuleG4::RImp => {
            if let Some(Formula::Imp(a, b)) = &succ {
                out.push(mk(
                    None,
                    vec![Sequent::new(with(ante.to_vec(), [(**a).clone()]), Some((**b).clone()))],
                ));
            }
        }
        RuleG4::RSLa => {
            if let Some(Formula::Box(a)) = &succ {
                let prem = with(boxdot(ante), [succ.clone().unwrap()]);
                out.push(mk(None, vec![Sequent::new(prem, Some((**a).clone()))]));
            }
        }
        _ => {
            for f in distinct(ante) {
                let rest = s.without(f);
                let same = |v: Vec<Formula>| Sequent::new(v, succ.clone());
                let premises = match (rule, f) {
                    (RuleG4::LAnd, Formula::And(a, b)) => {
                        vec![same(with(rest, [(**a).clone(), (**b).clone()]))]
                    }
                    (RuleG4::LOr, Formula::Or(a, b)) => vec![
                        same(with(rest.clone(), [(**a).clone()])),
                        same(with(rest, [(**b).clone()])),
                    ],
                    (RuleG4::LpImp, Formula::Imp(p, c)) if p.is_atom() && s.contains(p) => {
                        vec![same(with(rest, [(**c).clone()]))]
                    }
                    (RuleG4::LAndImp, Formula::Imp(ab, c)) => match &**ab {
                        Formula::And(a, b) => vec![same(with(
                            rest,
                            [Formula::imp((**a).clone(), Formula::imp((**b).clone(), (**c).clone()))],
                        ))],
                        _ => continue,
                    },
                    (RuleG4::LOrImp, Formula::Imp(ab, c)) => match &**ab {
                        Formula::Or(a, b) => vec![same(with(
                            rest,
                            [
                                Formula::imp((**a).clone(), (**c).clone()),
                                Formula::imp((**b).clone(), (**c).clone()),
                            ],
                        ))],
                        _ => continue,
                    },
                    (RuleG4::LImpImpA, Formula::Imp(ab, c)) => match &**ab {
                        Formula::Imp(a, b) => vec![
                            Sequent::new(
                                with(
                                    rest.clone(),
                                    [Formula::imp((**b).clone(), (**c).clone()), (**a).clone()],
                                ),
                                Some((**b).clone()),
                            ),
                            same(with(rest, [(**c).clone()])),
                        ],
                        _ => continue,
                    },
                    (RuleG4::ImpSL1, Formula::Imp(ba, c)) if ba.is_box() && !s.contains(ba) => {
                        let a = ba.unbox().unwrap().clone();
                        vec![
                            Sequent::new(with(boxdot(&rest), [(**ba).clone(), f.clone()]), Some(a)),
                            same(with(rest, [(**c).clone()])),
                        ]
                    }
                    (RuleG4::ImpSL2, Formula::Imp(ba, c)) if ba.is_box() && s.contains(ba) => {
                        vec![same(with(rest, [(**c).clone()]))]
                    }
                    _ => continue,
                };
                out.push(mk(Some(f.clone()), premises));
            }
        }
    }
    out
}

/// The succedent formula occurs in the antecedent.
pub fn is_extended_axiom(s: &Sequent) -> bool {
    s.succ().is_some_and(|d| s.contains(d))
}

/// Irreducibility in the a-variant: the four clauses for G4iSL□ plus the
/// requirement that no `□φ → ψ` sits next to `□φ`.
pub fn is_irreducible(s: &Sequent) -> bool {
    let succ_ok = match s.succ() {
        None => true,
        Some(f) => matches!(f, Formula::Atom(_) | Formula::Bot | Formula::Or(..) | Formula::Box(_)),
    };
    let shapes_ok = s.unboxed().all(|f| match f {
        Formula::Atom(_) => true,
        Formula::Imp(a, _) => matches!(&**a, Formula::Atom(_) | Formula::Imp(..) | Formula::Box(_)),
        _ => false,
    });
    let no_lp = !s.unboxed().any(|f| match f {
        Formula::Imp(a, _) => a.is_atom() && s.contains(a),
        _ => false,
    });
    let no_box_pair = !s.unboxed().any(|f| match f {
        Formula::Imp(a, _) => a.is_box() && s.contains(a),
        _ => false,
    });
    succ_ok && shapes_ok && no_lp && !is_extended_axiom(s) && no_box_pair
}
