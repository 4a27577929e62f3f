//! Compiling G4 proofs into the G3 calculus with cut, and converting
//! cut-free proofs into the variant calculi.

use super::structural::{adapt, build, extended_axiom, weaken_occ};
use super::{G3Error, G3Proof, Occ, OccId, Profile, RuleG3, Seq};
use crate::formula::Formula;
use crate::g4::{G4Proof, RuleG4};

type Res = Result<G3Proof, G3Error>;

fn node(seq: Seq, rule: RuleG3, principal: Option<OccId>, premises: Vec<G3Proof>) -> G3Proof {
    G3Proof {
        seq,
        rule,
        principal,
        premises,
    }
}

fn find(s: &Seq, f: &Formula) -> Result<OccId, G3Error> {
    s.ante
        .iter()
        .find(|o| &o.formula == f)
        .map(|o| o.id)
        .ok_or_else(|| G3Error::Unsupported(format!("principal formula missing from {}", s)))
}

fn seq(ante: &[&Occ], succ: &Formula) -> Seq {
    Seq {
        ante: ante.iter().map(|o| (*o).clone()).collect(),
        succ: Some(Occ::fresh(succ.clone())),
    }
}

/// Cut with `left` proving a formula `f` and `right` using the occurrence
/// `c` of `f`. The antecedent ids of the two proofs must be disjoint.
fn cut(left: G3Proof, right: G3Proof, c: OccId) -> G3Proof {
    let mut ante = left.seq.ante.clone();
    ante.extend(right.seq.ante.iter().filter(|o| o.id != c).cloned());
    let s = Seq {
        ante,
        succ: right.seq.succ.clone(),
    };
    node(s, RuleG3::Cut, Some(c), vec![left, right])
}

/// A proof of `ante ⇒ f` for `f` in `ante`, by weakening an identity proof.
fn identity(ante: &[&Occ], f: &Formula) -> Res {
    adapt(&extended_axiom(f), &seq(ante, f))
}

fn tr(p: &G4Proof) -> Res {
    let concl = Seq::fresh(&p.sequent);
    let principal = match &p.principal {
        Some(f) if !matches!(p.rule, RuleG4::RAnd | RuleG4::ROr(_) | RuleG4::RImp | RuleG4::RSLa | RuleG4::At) => {
            Some(find(&concl, f)?)
        }
        _ => None,
    };
    let prems = || p.premises.iter().map(tr).collect::<Result<Vec<_>, _>>();
    match p.rule {
        RuleG4::At => {
            let succ = concl.succ_formula().cloned().unwrap();
            let id = find(&concl, &succ)?;
            Ok(node(concl, RuleG3::At, Some(id), Vec::new()))
        }
        RuleG4::LBot => {
            let id = find(&concl, &Formula::Bot)?;
            Ok(node(concl, RuleG3::LBot, Some(id), Vec::new()))
        }
        RuleG4::RAnd => build(RuleG3::RAnd, &concl, None, prems()?),
        RuleG4::ROr(i) => build(RuleG3::ROr(i), &concl, None, prems()?),
        RuleG4::RImp => build(RuleG3::RImp, &concl, None, prems()?),
        RuleG4::LAnd => build(RuleG3::LAnd, &concl, principal, prems()?),
        RuleG4::LOr => build(RuleG3::LOr, &concl, principal, prems()?),
        RuleG4::RSLa => build(RuleG3::RSL, &concl, None, prems()?),
        RuleG4::LpImp => lp_imp(p, &concl, principal.unwrap()),
        RuleG4::LAndImp => l_and_imp(p, &concl, principal.unwrap()),
        RuleG4::LOrImp => l_or_imp(p, &concl, principal.unwrap()),
        RuleG4::LImpImpA => l_imp_imp(p, &concl, principal.unwrap()),
        RuleG4::ImpSL1 => {
            let f = concl.get(principal.unwrap()).unwrap().formula.clone();
            let Formula::Imp(b, _) = &f else { unreachable!() };
            let left = build(RuleG3::RSL, &concl.with_succ(Some(Occ::fresh((**b).clone()))), None, vec![tr(&p.premises[0])?])?;
            build(RuleG3::LImp, &concl, principal, vec![left, tr(&p.premises[1])?])
        }
        RuleG4::ImpSL2 => {
            let f = concl.get(principal.unwrap()).unwrap().formula.clone();
            let Formula::Imp(b, _) = &f else { unreachable!() };
            let left = adapt(&extended_axiom(b), &concl.with_succ(Some(Occ::fresh((**b).clone()))))?;
            build(RuleG3::LImp, &concl, principal, vec![left, tr(&p.premises[0])?])
        }
    }
}

/// Γ, p, p→φ ⇒ Δ: cut p∧φ, proved from p, p→φ, into Γ, p∧φ ⇒ Δ.
fn lp_imp(p: &G4Proof, concl: &Seq, imp: OccId) -> Res {
    let o_imp = concl.get(imp).unwrap().clone();
    let Formula::Imp(a, phi) = &o_imp.formula else { unreachable!() };
    let o_p = concl.ante.iter().find(|o| o.formula == **a).cloned().unwrap();
    let conj = Formula::and((**a).clone(), (**phi).clone());
    let ctx = [&o_p, &o_imp];
    let at = || Ok::<_, G3Error>(node(seq(&ctx, a), RuleG3::At, Some(o_p.id), Vec::new()));
    let l_phi = build(RuleG3::LImp, &seq(&ctx, phi), Some(imp), vec![at()?, extended_axiom(phi)])?;
    let left = build(RuleG3::RAnd, &seq(&ctx, &conj), None, vec![at()?, l_phi])?;
    let c = Occ::fresh(conj);
    let rest = concl.without(imp).without(o_p.id);
    let right = build(RuleG3::LAnd, &rest.with(std::slice::from_ref(&c)), Some(c.id), vec![tr(&p.premises[0])?])?;
    Ok(cut(left, right, c.id))
}

/// Γ, (a∧b)→c ⇒ Δ: cut a→(b→c).
fn l_and_imp(p: &G4Proof, concl: &Seq, imp: OccId) -> Res {
    let o = concl.get(imp).unwrap().clone();
    let Formula::Imp(ab, c) = &o.formula else { unreachable!() };
    let Formula::And(a, b) = &**ab else { unreachable!() };
    let curried = Formula::imp((**a).clone(), Formula::imp((**b).clone(), (**c).clone()));
    let (oa, ob) = (Occ::fresh((**a).clone()), Occ::fresh((**b).clone()));
    let inner = seq(&[&o, &oa, &ob], c);
    let conj = build(RuleG3::RAnd, &seq(&[&o, &oa, &ob], ab), None, vec![identity(&[&oa], a)?, identity(&[&ob], b)?])?;
    let lim = build(RuleG3::LImp, &inner, Some(imp), vec![conj, extended_axiom(c)])?;
    let mid = build(RuleG3::RImp, &seq(&[&o, &oa], &Formula::imp((**b).clone(), (**c).clone())), None, vec![lim])?;
    let left = build(RuleG3::RImp, &seq(&[&o], &curried), None, vec![mid])?;
    let k = Occ::fresh(curried);
    let right = adapt(&tr(&p.premises[0])?, &concl.without(imp).with(std::slice::from_ref(&k)))?;
    Ok(cut(left, right, k.id))
}

/// Γ, (a∨b)→c ⇒ Δ: cut (a→c)∧(b→c).
fn l_or_imp(p: &G4Proof, concl: &Seq, imp: OccId) -> Res {
    let o = concl.get(imp).unwrap().clone();
    let Formula::Imp(ab, c) = &o.formula else { unreachable!() };
    let Formula::Or(a, b) = &**ab else { unreachable!() };
    let half = |i: u8, x: &Formula| -> Res {
        let ox = Occ::fresh(x.clone());
        let disj = build(RuleG3::ROr(i), &seq(&[&o, &ox], ab), None, vec![extended_axiom(x)])?;
        let lim = build(RuleG3::LImp, &seq(&[&o, &ox], c), Some(imp), vec![disj, extended_axiom(c)])?;
        build(RuleG3::RImp, &seq(&[&o], &Formula::imp(x.clone(), (**c).clone())), None, vec![lim])
    };
    let both = Formula::and(Formula::imp((**a).clone(), (**c).clone()), Formula::imp((**b).clone(), (**c).clone()));
    let left = build(RuleG3::RAnd, &seq(&[&o], &both), None, vec![half(0, a)?, half(1, b)?])?;
    let k = Occ::fresh(both);
    let right = build(RuleG3::LAnd, &concl.without(imp).with(std::slice::from_ref(&k)), Some(k.id), vec![tr(&p.premises[0])?])?;
    Ok(cut(left, right, k.id))
}

/// Γ, (a→b)→c ⇒ Δ: the left premise Γ, b→c, a ⇒ b becomes
/// Γ, (a→b)→c ⇒ a→b by a cut on b→c and R→, then L→.
fn l_imp_imp(p: &G4Proof, concl: &Seq, imp: OccId) -> Res {
    let o = concl.get(imp).unwrap().clone();
    let Formula::Imp(ab, c) = &o.formula else { unreachable!() };
    let Formula::Imp(a, b) = &**ab else { unreachable!() };
    let bc = Formula::imp((**b).clone(), (**c).clone());
    let ob = Occ::fresh((**b).clone());
    let oa = Occ::fresh((**a).clone());
    let ab_proof = build(RuleG3::RImp, &seq(&[&o, &ob], ab), None, vec![identity(&[&ob, &oa], b)?])?;
    let lim = build(RuleG3::LImp, &seq(&[&o, &ob], c), Some(imp), vec![ab_proof, extended_axiom(c)])?;
    let left = build(RuleG3::RImp, &seq(&[&o], &bc), None, vec![lim])?;
    let k = Occ::fresh(bc);
    let x = Occ::fresh((**a).clone());
    let rest = concl.without(imp);
    let p1 = adapt(
        &tr(&p.premises[0])?,
        &Seq {
            ante: rest.ante.iter().cloned().chain([k.clone(), x.clone()]).collect(),
            succ: Some(Occ::fresh((**b).clone())),
        },
    )?;
    let cutted = cut(left, p1, k.id);
    let y = build(RuleG3::RImp, &concl.with_succ(Some(Occ::fresh((**ab).clone()))), None, vec![cutted])?;
    build(RuleG3::LImp, concl, Some(imp), vec![y, tr(&p.premises[1])?])
}

/// Translates a G4 proof into a G3 proof with cuts of the same endsequent.
pub fn g4_to_g3(p: &G4Proof) -> Res {
    tr(p)
}

/// Replaces each RSL by RSL4, weakening its premise by the dropped boxes.
pub fn to_b_variant(p: &G3Proof) -> Res {
    let premises = p.premises.iter().map(to_b_variant).collect::<Result<Vec<_>, _>>()?;
    match p.rule {
        RuleG3::RSL => {
            let mut q = premises.into_iter().next().unwrap();
            for o in &p.seq.ante {
                if !q.seq.has(o.id) {
                    q = weaken_occ(&q, o);
                }
            }
            Ok(node(p.seq.clone(), RuleG3::RSL4, None, vec![q]))
        }
        RuleG3::Cut | RuleG3::RSL4 | RuleG3::RGL | RuleG3::LBox => {
            Err(G3Error::Unsupported(format!("{} in a proof converted to the b variant", p.rule.name())))
        }
        _ => Ok(node(p.seq.clone(), p.rule, p.principal, premises)),
    }
}

/// Replaces each RSL by boxing its unboxed context (weakening the premise
/// by those boxes), RGL, and one L□ per boxed context member.
pub fn to_glc_variant(p: &G3Proof) -> Res {
    let premises = p.premises.iter().map(to_glc_variant).collect::<Result<Vec<_>, _>>()?;
    match p.rule {
        RuleG3::RSL => {
            let mut q = premises.into_iter().next().unwrap();
            let pis: Vec<Occ> = p.seq.ante.iter().filter(|o| !o.formula.is_box()).cloned().collect();
            let boxes: Vec<Occ> = pis.iter().map(|o| Occ::fresh(Formula::boxed(o.formula.clone()))).collect();
            for b in &boxes {
                q = weaken_occ(&q, b);
            }
            let mut s = p.seq.clone();
            for (pi, b) in pis.iter().zip(&boxes) {
                s = s.replace(pi.id, std::slice::from_ref(b));
            }
            let mut out = node(s.clone(), RuleG3::RGL, None, vec![q]);
            for (pi, b) in pis.iter().zip(&boxes) {
                s = s.replace(b.id, std::slice::from_ref(pi));
                out = node(s.clone(), RuleG3::LBox, Some(pi.id), vec![out]);
            }
            Ok(out)
        }
        RuleG3::Cut | RuleG3::RSL4 | RuleG3::RGL | RuleG3::LBox => {
            Err(G3Error::Unsupported(format!("{} in a proof converted to the glc variant", p.rule.name())))
        }
        _ => Ok(node(p.seq.clone(), p.rule, p.principal, premises)),
    }
}

/// Converts a cut-free core proof to the given profile.
pub fn to_profile(p: &G3Proof, profile: Profile) -> Res {
    match profile {
        Profile::Core | Profile::WithCut => Ok(p.clone()),
        Profile::BVariant => to_b_variant(p),
        Profile::GlcVariant => to_glc_variant(p),
    }
}
