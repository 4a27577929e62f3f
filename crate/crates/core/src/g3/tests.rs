use super::*;
use crate::g4::{extract_proof, search};
use crate::parser::{parse_formula, parse_sequent};

fn f(t: &str) -> Formula {
    parse_formula(t).unwrap()
}

fn leaf(rule: RuleG3, ante: &[&str], succ: &str) -> G3Proof {
    let seq = Seq::from_formulas(&ante.iter().map(|t| f(t)).collect::<Vec<_>>(), Some(&f(succ)));
    let target = if rule == RuleG3::LBot { Formula::Bot } else { f(succ) };
    let principal = seq.ante.iter().find(|o| o.formula == target).map(|o| o.id);
    G3Proof {
        seq,
        rule,
        principal,
        premises: Vec::new(),
    }
}

fn g3_of(t: &str) -> G3Proof {
    let s = parse_sequent(t).unwrap();
    let g4 = extract_proof(&search(&s)).unwrap();
    let p = g4_to_g3(&g4).unwrap();
    check_g3_proof(&p, Profile::WithCut).unwrap();
    assert_eq!(p.sequent(), s);
    p
}

fn cut_free_of(t: &str) -> G3Proof {
    let e = eliminate_cuts(&g3_of(t)).unwrap();
    check_g3_proof(&e.proof, Profile::Core).unwrap();
    e.proof
}

/// The minimal □□φ-critical derivation for φ = p → p: ⇒ □□φ by two RSLs
/// over an identity leaf.
fn boxbox() -> G3Proof {
    let phi = f("p -> p");
    let leaf = build(
        RuleG3::RImp,
        &Seq::from_formulas(&[Formula::boxed(Formula::boxed(phi.clone())), Formula::boxed(phi.clone())], Some(&phi)),
        None,
        vec![leaf(RuleG3::At, &["p"], "p")],
    )
    .unwrap();
    let bb = Formula::boxed(Formula::boxed(phi.clone()));
    let mid = build(RuleG3::RSL, &Seq::from_formulas(std::slice::from_ref(&bb), Some(&Formula::boxed(phi))), None, vec![leaf]).unwrap();
    build(RuleG3::RSL, &Seq::from_formulas(&[], Some(&bb)), None, vec![mid]).unwrap()
}

#[test]
fn minimal_boxbox_proof_checks() {
    let p = boxbox();
    check_g3_proof(&p, Profile::Core).unwrap();
    assert_eq!(p.seq.to_string(), "=> [][](p -> p)");
    assert_eq!(p.premises[0].seq.to_string(), "[][](p -> p) => [](p -> p)");
}

#[test]
fn boxed_formula_kept_unboxed_is_rejected() {
    // □q kept in the premise without its unboxing.
    let q = Occ::fresh(f("[]q"));
    let diag = Occ::fresh(f("[]p"));
    let prem_succ = Occ::fresh(f("p"));
    let top = G3Proof {
        seq: Seq {
            ante: vec![q.clone(), diag.clone(), Occ::fresh(f("p"))],
            succ: Some(prem_succ),
        },
        rule: RuleG3::At,
        principal: None,
        premises: Vec::new(),
    };
    let mut top = top;
    top.principal = Some(top.seq.ante[2].id);
    let p = G3Proof {
        seq: Seq {
            ante: vec![q],
            succ: Some(diag),
        },
        rule: RuleG3::RSL,
        principal: None,
        premises: vec![top],
    };
    assert!(matches!(check_g3_proof(&p, Profile::Core), Err(G3Error::BadInference { .. })));
}

#[test]
fn cut_is_rejected_by_core() {
    let l = leaf(RuleG3::At, &["p"], "p");
    let r = leaf(RuleG3::At, &["p"], "p");
    let c = r.seq.ante[0].id;
    let p = translate_cut(l, r, c);
    check_g3_proof(&p, Profile::WithCut).unwrap();
    assert!(matches!(check_g3_proof(&p, Profile::Core), Err(G3Error::NotInProfile { .. })));
}

fn translate_cut(l: G3Proof, r: G3Proof, c: OccId) -> G3Proof {
    let mut ante = l.seq.ante.clone();
    ante.extend(r.seq.ante.iter().filter(|o| o.id != c).cloned());
    G3Proof {
        seq: Seq {
            ante,
            succ: r.seq.succ.clone(),
        },
        rule: RuleG3::Cut,
        principal: Some(c),
        premises: vec![l, r],
    }
}

#[test]
fn heights() {
    let ax = leaf(RuleG3::At, &["p", "q"], "p");
    assert_eq!(ax.height(), 1);
    let one = build(RuleG3::RImp, &Seq::from_formulas(&[f("p")], Some(&f("q -> p"))), None, vec![ax.clone()]).unwrap();
    assert_eq!(one.height(), 2);
    let two = build(RuleG3::RAnd, &Seq::from_formulas(&[f("p"), f("q")], Some(&f("p & q"))), None, vec![ax, leaf(RuleG3::At, &["p", "q"], "q")]).unwrap();
    assert_eq!(two.height(), 2);
}

#[test]
fn weakening_keeps_height() {
    let p = leaf(RuleG3::At, &["p"], "p");
    let w = weaken(&p, &f("q"));
    check_g3_proof(&w, Profile::Core).unwrap();
    assert_eq!(w.height(), 1);
    assert_eq!(w.sequent(), parse_sequent("q, p => p").unwrap());
}

#[test]
fn boxed_weakening_enters_only_the_last_modal_conclusion() {
    let p = boxbox();
    let w = weaken(&p, &f("[]r"));
    check_g3_proof(&w, Profile::Core).unwrap();
    assert_eq!(w.height(), p.height());
    assert!(!w.premises[0].sequent().contains(&f("[]r")));
    let w = weaken(&p, &f("r"));
    check_g3_proof(&w, Profile::Core).unwrap();
    assert!(w.premises[0].sequent().contains(&f("r")));
}

#[test]
fn contraction_of_atoms() {
    let p = leaf(RuleG3::At, &["p", "p"], "p");
    let c = contract(&p, &f("p")).unwrap();
    check_g3_proof(&c, Profile::Core).unwrap();
    assert_eq!(c.sequent(), parse_sequent("p => p").unwrap());
}

#[test]
fn contraction_through_principal_rules() {
    for t in [
        "p & q, p & q => q",
        "p | q, p | q => q | p",
        "p -> q, p -> q, p => q",
        "[]p, []p => []p",
        "[](p -> q), [](p -> q), []p => []q",
    ] {
        let mut s = parse_sequent(t).unwrap();
        let dup = s.ante().iter().find(|g| s.count(g) > 1).unwrap().clone();
        let p = cut_free_of(&s.to_string());
        let c = contract(&p, &dup).unwrap();
        check_g3_proof(&c, Profile::Core).unwrap();
        assert!(c.height() <= p.height(), "{}", t);
        s = Sequent::new(s.without(&dup), s.succ().cloned());
        assert_eq!(c.sequent(), s, "{}", t);
    }
}

#[test]
fn right_implication_inversion() {
    let p = cut_free_of("p -> q, q -> r => p -> r");
    let c = inv_rimp(&p, &Occ::fresh(f("p")), &Occ::fresh(f("r"))).unwrap();
    check_g3_proof(&c, Profile::Core).unwrap();
    assert!(c.height() <= p.height());
    assert_eq!(c.sequent(), parse_sequent("p -> q, q -> r, p => r").unwrap());
}

#[test]
fn falsum_rule() {
    let p = cut_free_of("p, p -> false => false");
    let q = structural::falsum(&p, Some(Occ::fresh(f("[]s & t")))).unwrap();
    check_g3_proof(&q, Profile::Core).unwrap();
    assert_eq!(q.sequent(), parse_sequent("p, p -> false => []s & t").unwrap());
}

#[test]
fn grades() {
    let p = boxbox();
    assert_eq!(grade(&p, &[]), 0);
    assert_eq!(grade(&p, &[0]), 1);
    assert_eq!(grade(&p, &[0, 0]), 2);
    assert_eq!(grade(&p, &[0, 0, 0]), 2);
}

#[test]
fn strong_weakening_worked_example() {
    let p = boxbox();
    let rows = |q: &G3Proof| {
        let mut out = Vec::new();
        let mut n = q;
        loop {
            out.push(n.sequent());
            if n.premises.is_empty() || n.rule == RuleG3::RImp {
                break;
            }
            n = &n.premises[0];
        }
        out
    };
    let expect = |lines: &[&str]| lines.iter().map(|t| parse_sequent(t).unwrap()).collect::<Vec<_>>();
    let boxed = strong_weaken_down(&p, &f("[]c")).unwrap();
    check_g3_proof(&boxed, Profile::Core).unwrap();
    assert_eq!(boxed.height(), p.height());
    assert_eq!(
        rows(&boxed),
        expect(&[
            "[][]c => [][](p -> p)",
            "[][]c, []c, [][](p -> p) => [](p -> p)",
            "[][]c, []c, [][](p -> p), [](p -> p), [](p -> p) => p -> p",
        ])
    );
    let plain = strong_weaken_down(&p, &f("c")).unwrap();
    check_g3_proof(&plain, Profile::Core).unwrap();
    assert_eq!(
        rows(&plain),
        expect(&[
            "[]c => [][](p -> p)",
            "[]c, c, [][](p -> p) => [](p -> p)",
            "[]c, c, c, [][](p -> p), [](p -> p), [](p -> p) => p -> p",
        ])
    );
    let up = strong_weaken_up(&p, &f("[]c")).unwrap();
    check_g3_proof(&up, Profile::Core).unwrap();
    assert_eq!(rows(&up)[1], p.premises[0].sequent());
}

/// r ∨ ⊥ ⇒ □(□s → □s): the left branch keeps the box in an inner modal
/// inference, the right one is an axiom.
fn inner_box_example() -> G3Proof {
    let phi = f("[]s -> []s");
    let bphi = Formula::boxed(phi.clone());
    let inner = build(
        RuleG3::RSL,
        &Seq::from_formulas(&[f("r"), bphi.clone(), f("[]s")], Some(&f("[]s"))),
        None,
        vec![extended_axiom(&f("s"))],
    )
    .unwrap();
    let imp = build(RuleG3::RImp, &Seq::from_formulas(&[f("r"), bphi.clone()], Some(&phi)), None, vec![inner]).unwrap();
    let left = build(RuleG3::RSL, &Seq::from_formulas(&[f("r")], Some(&bphi)), None, vec![imp]).unwrap();
    let root = Seq::from_formulas(&[f("r | false")], Some(&bphi));
    let right = leaf(RuleG3::LBot, &["false"], "[]([]s -> []s)");
    build(RuleG3::LOr, &root, Some(root.ante[0].id), vec![left, right]).unwrap()
}

#[test]
fn critical_inferences_of_inner_box_example() {
    let p = inner_box_example();
    check_g3_proof(&p, Profile::Core).unwrap();
    assert_eq!(critical_inferences(&p, &[]), vec![vec![0, 0, 0]]);
    assert_eq!(width(&p), 1);
    assert!(critical_inferences(&extended_axiom(&f("[]p")), &[]).is_empty());
}

#[test]
fn cut_measures() {
    assert_eq!(cut_stats(&extended_axiom(&f("p"))), CutMeasure::default());
    let l = leaf(RuleG3::At, &["p"], "p");
    let r = leaf(RuleG3::At, &["p"], "p");
    let c = r.seq.ante[0].id;
    let p = translate_cut(l, r, c);
    assert_eq!(
        cut_stats(&p),
        CutMeasure {
            degree: 1,
            width: 0,
            level: 2
        }
    );
    let (bb, b) = (f("[][]x"), f("[]x"));
    let inner = build(RuleG3::RSL, &Seq::from_formulas(&[bb.clone(), b.clone(), bb.clone()], Some(&b)), None, vec![extended_axiom(&f("x"))]).unwrap();
    let l = build(RuleG3::RSL, &Seq::from_formulas(std::slice::from_ref(&bb), Some(&bb)), None, vec![inner]).unwrap();
    let r = extended_axiom(&bb);
    let c = r.seq.ante[0].id;
    let p = translate_cut(l, r, c);
    check_g3_proof(&p, Profile::WithCut).unwrap();
    let e = eliminate_cuts(&p).unwrap();
    check_g3_proof(&e.proof, Profile::Core).unwrap();
    assert_eq!(e.proof.seq, p.seq);
    assert_eq!(cut_stats(&p).width, 1);
}

#[test]
fn atom_cut_elimination() {
    let l = leaf(RuleG3::At, &["p"], "p");
    let r = leaf(RuleG3::At, &["p"], "p");
    let c = r.seq.ante[0].id;
    let p = translate_cut(l, r, c);
    let e = eliminate_cuts(&p).unwrap();
    assert_eq!(e.reductions.len(), 1);
    check_g3_proof(&e.proof, Profile::Core).unwrap();
    assert_eq!(e.proof.seq, p.seq);
    let e2 = eliminate_cuts(&e.proof).unwrap();
    assert!(e2.reductions.is_empty());
    assert_eq!(e2.proof, e.proof);
}

#[test]
fn boxed_cuts_are_eliminated() {
    let bb = f("[][]x");
    let (l, r) = (extended_axiom(&bb), extended_axiom(&bb).refresh().0);
    let c = r.seq.ante[0].id;
    let p = translate_cut(l, r, c);
    let e = eliminate_cuts(&p).unwrap();
    check_g3_proof(&e.proof, Profile::Core).unwrap();
    assert_eq!(e.proof.seq, p.seq);
}

#[test]
fn falsum_cut() {
    let l = cut_free_of("p, p -> false => false");
    let r = leaf(RuleG3::LBot, &["false"], "q");
    let c = r.seq.ante[0].id;
    let p = translate_cut(l, r, c);
    let e = eliminate_cuts(&p).unwrap();
    assert!(e.proof.is_cut_free());
    check_g3_proof(&e.proof, Profile::Core).unwrap();
}

#[test]
fn implication_cut_principal_on_both_sides() {
    let l = cut_free_of("p -> q => p -> q");
    let r = cut_free_of("p -> q, p => q");
    let c = r.seq.ante.iter().find(|o| o.formula == f("p -> q")).unwrap().id;
    let p = translate_cut(l, r, c);
    check_g3_proof(&p, Profile::WithCut).unwrap();
    let e = eliminate_cuts(&p).unwrap();
    check_g3_proof(&e.proof, Profile::Core).unwrap();
    assert_eq!(e.proof.seq, p.seq);
}

#[test]
fn translated_theorems_lose_their_cuts() {
    for t in [
        "=> ([]p -> p) -> p",
        "=> p -> []p",
        "=> []([]p -> p) -> []p",
        "=> [](p -> q) -> []p -> []q",
        "=> []p -> [][]p",
        "p, p -> q => q",
        "(p & q) -> r => p -> q -> r",
        "(p | q) -> r => (p -> r) & (q -> r)",
        "(p -> q) -> r, q => r",
        "[]p -> q => q | ~q -> q",
        "=> ~~(p | ~p)",
        "[](p & q) => []p & []q",
    ] {
        let p = g3_of(t);
        let e = eliminate_cuts(&p).unwrap();
        assert!(e.proof.is_cut_free(), "{}", t);
        check_g3_proof(&e.proof, Profile::Core).unwrap_or_else(|err| panic!("{}: {}", t, err));
        assert_eq!(e.proof.seq, p.seq, "{}", t);
    }
}

#[test]
fn variants_check() {
    for t in ["=> ([]p -> p) -> p", "=> []([]p -> p) -> []p", "q, []r => [](p -> p)", "p => []p"] {
        let p = cut_free_of(t);
        let b = to_b_variant(&p).unwrap();
        check_g3_proof(&b, Profile::BVariant).unwrap_or_else(|e| panic!("{}: {}", t, e));
        let g = to_glc_variant(&p).unwrap();
        check_g3_proof(&g, Profile::GlcVariant).unwrap_or_else(|e| panic!("{}: {}", t, e));
        assert_eq!(g.sequent(), p.sequent());
        assert!(check_g3_proof(&b, Profile::Core).is_err() || b.count_rule(RuleG3::RSL4) == 0);
    }
}

#[test]
fn json_round_trip() {
    let p = g3_of("=> [](p -> q) -> []p -> []q");
    let v = p.to_json(Profile::WithCut);
    let (q, profile) = G3Proof::from_json(&v).unwrap();
    assert_eq!(profile, Profile::WithCut);
    assert_eq!(q, p);
    let n = p.normalize();
    check_g3_proof(&n, Profile::WithCut).unwrap();
    assert_eq!(n, q.normalize());
    assert!(p.to_dot().starts_with("digraph"));
}
