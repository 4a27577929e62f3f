use std::sync::Arc;

use serde_json::{json, Value};
use thiserror::Error;

use super::search::{Note, SearchNode};
use super::{instances, RuleG4};
use crate::formula::Formula;
use crate::parser::{parse_formula, parse_sequent, render_formula};
use crate::sequent::Sequent;

pub const CALCULUS_TAG: &str = "G4iSLa";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct G4Proof {
    pub sequent: Sequent,
    pub rule: RuleG4,
    pub principal: Option<Formula>,
    pub premises: Vec<G4Proof>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum G4Error {
    #[error("sequent {0} is not provable")]
    NotProvable(String),
    #[error("{rule} does not derive {sequent} from the given premises")]
    BadInference { sequent: String, rule: String },
    #[error("malformed proof file: {0}")]
    Format(String),
}

impl G4Proof {
    fn leaf(sequent: Sequent, rule: RuleG4, principal: Formula) -> G4Proof {
        G4Proof {
            sequent,
            rule,
            principal: Some(principal),
            premises: Vec::new(),
        }
    }

    pub fn size(&self) -> usize {
        1 + self.premises.iter().map(G4Proof::size).sum::<usize>()
    }

    pub fn height(&self) -> usize {
        1 + self.premises.iter().map(G4Proof::height).max().unwrap_or(0)
    }

    pub fn to_json(&self) -> Value {
        let mut v = self.node_json();
        v["calculus"] = json!(CALCULUS_TAG);
        v
    }

    fn node_json(&self) -> Value {
        let mut v = json!({
            "rule": self.rule.name(),
            "sequent": self.sequent.to_string(),
            "premises": self.premises.iter().map(G4Proof::node_json).collect::<Vec<_>>(),
        });
        if let Some(p) = &self.principal {
            v["principal"] = json!(render_formula(p));
        }
        v
    }

    pub fn from_json(v: &Value) -> Result<G4Proof, G4Error> {
        if let Some(tag) = v.get("calculus") {
            if tag != CALCULUS_TAG {
                return Err(G4Error::Format(format!("expected calculus {}, found {}", CALCULUS_TAG, tag)));
            }
        }
        Self::node_from_json(v)
    }

    fn node_from_json(v: &Value) -> Result<G4Proof, G4Error> {
        let bad = |m: &str| G4Error::Format(m.to_string());
        let rule: RuleG4 = v["rule"]
            .as_str()
            .ok_or_else(|| bad("missing rule"))?
            .parse()
            .map_err(|e: String| G4Error::Format(e))?;
        let text = v["sequent"].as_str().ok_or_else(|| bad("missing sequent"))?;
        let sequent = parse_sequent(text).map_err(|e| G4Error::Format(format!("{}: {}", text, e)))?;
        let principal = match v.get("principal") {
            None | Some(Value::Null) => None,
            Some(p) => {
                let t = p.as_str().ok_or_else(|| bad("principal must be a string"))?;
                Some(parse_formula(t).map_err(|e| G4Error::Format(format!("{}: {}", t, e)))?)
            }
        };
        let premises = v["premises"]
            .as_array()
            .ok_or_else(|| bad("missing premises"))?
            .iter()
            .map(Self::node_from_json)
            .collect::<Result<Vec<_>, _>>()?;
        Ok(G4Proof {
            sequent,
            rule,
            principal,
            premises,
        })
    }
}

/// Checks every inference against its rule schema, including side
/// conditions; reports the lowest offending node.
pub fn check_g4_proof(p: &G4Proof) -> Result<(), G4Error> {
    let got: Vec<&Sequent> = p.premises.iter().map(|q| &q.sequent).collect();
    let ok = instances(p.rule, &p.sequent).iter().any(|inst| {
        (p.principal.is_none() || p.principal == inst.principal) && inst.premises.iter().eq(got.iter().copied())
    });
    if !ok {
        return Err(G4Error::BadInference {
            sequent: p.sequent.to_string(),
            rule: p.rule.name().to_string(),
        });
    }
    p.premises.iter().try_for_each(check_g4_proof)
}

/// Reads a proof off the positive part of a search tree. Extended-axiom
/// leaves are expanded into full derivations.
pub fn extract_proof(root: &Arc<SearchNode>) -> Result<G4Proof, G4Error> {
    if !root.positive {
        return Err(G4Error::NotProvable(root.sequent.to_string()));
    }
    Ok(extract(root))
}

fn extract(n: &SearchNode) -> G4Proof {
    let s = &n.sequent;
    match n.note {
        Note::Axiom(rule) => {
            let principal = match rule {
                RuleG4::LBot => Formula::Bot,
                _ => s.succ().unwrap().clone(),
            };
            G4Proof::leaf(s.clone(), rule, principal)
        }
        Note::ExtendedAxiom => {
            let d = s.succ().unwrap();
            extended_axiom_proof(&s.without(d), d)
        }
        Note::Reducible | Note::Irreducible => {
            let g = n
                .groups
                .iter()
                .find(|g| g.positive())
                .expect("positive node has a positive group");
            G4Proof {
                sequent: s.clone(),
                rule: g.rule,
                principal: g.principal.clone(),
                premises: g.premises.iter().map(|q| extract(q)).collect(),
            }
        }
    }
}

fn cat(a: &[Formula], b: &[Formula]) -> Vec<Formula> {
    a.iter().chain(b).cloned().collect()
}

fn node(ante: Vec<Formula>, succ: &Formula, rule: RuleG4, principal: Option<Formula>, premises: Vec<G4Proof>) -> G4Proof {
    G4Proof {
        sequent: Sequent::new(ante, Some(succ.clone())),
        rule,
        principal,
        premises,
    }
}

/// A derivation of `ctx, φ ⇒ φ`, by induction on the weight of `φ`.
pub fn extended_axiom_proof(ctx: &[Formula], phi: &Formula) -> G4Proof {
    let ante = cat(ctx, std::slice::from_ref(phi));
    match phi {
        Formula::Atom(_) => G4Proof::leaf(Sequent::new(ante, Some(phi.clone())), RuleG4::At, phi.clone()),
        Formula::Bot => G4Proof::leaf(Sequent::new(ante, Some(phi.clone())), RuleG4::LBot, Formula::Bot),
        Formula::And(a, b) => {
            let (a, b) = ((**a).clone(), (**b).clone());
            let split = cat(ctx, &[a.clone(), b.clone()]);
            let r = node(
                split,
                phi,
                RuleG4::RAnd,
                None,
                vec![
                    extended_axiom_proof(&cat(ctx, std::slice::from_ref(&b)), &a),
                    extended_axiom_proof(&cat(ctx, std::slice::from_ref(&a)), &b),
                ],
            );
            node(ante, phi, RuleG4::LAnd, Some(phi.clone()), vec![r])
        }
        Formula::Or(a, b) => {
            let side = |i: u8, d: &Formula| {
                node(
                    cat(ctx, std::slice::from_ref(d)),
                    phi,
                    RuleG4::ROr(i),
                    None,
                    vec![extended_axiom_proof(ctx, d)],
                )
            };
            node(ante, phi, RuleG4::LOr, Some(phi.clone()), vec![side(0, a), side(1, b)])
        }
        Formula::Imp(a, b) => {
            let k = |extra: &[Formula]| extended_axiom_proof(&cat(ctx, extra), b);
            let body = modus_ponens(ctx, a, b, b, &k);
            node(ante, phi, RuleG4::RImp, None, vec![body])
        }
        Formula::Box(a) => {
            let mut prem = ante.clone();
            prem.extend(ante.iter().filter_map(|f| f.unbox().cloned()));
            prem.push(phi.clone());
            let i = prem.iter().position(|f| f == &**a).unwrap();
            prem.remove(i);
            let body = extended_axiom_proof(&prem, a);
            node(ante, phi, RuleG4::RSLa, None, vec![body])
        }
    }
}

/// A derivation of `ctx, a, a → b ⇒ goal` given `k`, which for any extra
/// multiset `e` derives `ctx, e, b ⇒ goal`.
fn modus_ponens(
    ctx: &[Formula],
    a: &Formula,
    b: &Formula,
    goal: &Formula,
    k: &dyn Fn(&[Formula]) -> G4Proof,
) -> G4Proof {
    let ab = Formula::imp(a.clone(), b.clone());
    let ante = cat(ctx, &[a.clone(), ab.clone()]);
    match a {
        Formula::Atom(_) => node(ante, goal, RuleG4::LpImp, Some(ab), vec![k(std::slice::from_ref(a))]),
        Formula::Bot => G4Proof::leaf(Sequent::new(ante, Some(goal.clone())), RuleG4::LBot, Formula::Bot),
        Formula::And(c, d) => {
            let (c, d) = ((**c).clone(), (**d).clone());
            let db = Formula::imp(d.clone(), b.clone());
            let k1 = |e: &[Formula]| {
                let k2 = |e2: &[Formula]| k(&cat(e, e2));
                modus_ponens(&cat(ctx, e), &d, b, goal, &k2)
            };
            let inner = modus_ponens(&cat(ctx, std::slice::from_ref(&d)), &c, &db, goal, &k1);
            let curried = node(
                cat(ctx, &[c.clone(), d.clone(), ab.clone()]),
                goal,
                RuleG4::LAndImp,
                Some(ab.clone()),
                vec![inner],
            );
            node(ante, goal, RuleG4::LAnd, Some(a.clone()), vec![curried])
        }
        Formula::Or(c, d) => {
            let (c, d) = ((**c).clone(), (**d).clone());
            let cb = Formula::imp(c.clone(), b.clone());
            let db = Formula::imp(d.clone(), b.clone());
            let branch = |x: &Formula, other: &Formula| {
                let k1 = |e: &[Formula]| k(&cat(std::slice::from_ref(other), e));
                let inner = modus_ponens(&cat(ctx, std::slice::from_ref(other)), x, b, goal, &k1);
                node(
                    cat(ctx, &[x.clone(), ab.clone()]),
                    goal,
                    RuleG4::LOrImp,
                    Some(ab.clone()),
                    vec![inner],
                )
            };
            node(
                ante,
                goal,
                RuleG4::LOr,
                Some(a.clone()),
                vec![branch(&c, &db), branch(&d, &cb)],
            )
        }
        Formula::Imp(c, d) => {
            let (c, d) = ((**c).clone(), (**d).clone());
            let db = Formula::imp(d.clone(), b.clone());
            let left_ctx = cat(ctx, &[db]);
            let k1 = |e: &[Formula]| extended_axiom_proof(&cat(&left_ctx, e), &d);
            let left = modus_ponens(&left_ctx, &c, &d, &d, &k1);
            let right = k(std::slice::from_ref(a));
            node(ante, goal, RuleG4::LImpImpA, Some(ab), vec![left, right])
        }
        Formula::Box(_) => node(ante, goal, RuleG4::ImpSL2, Some(ab), vec![k(std::slice::from_ref(a))]),
    }
}
