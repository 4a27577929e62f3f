//! One PASS/FAIL line per acceptance criterion.

use std::time::{Duration, Instant};

use isl::fuzz::{corpus, FuzzConfig, Generator};
use isl::g3::{
    build, check_g3_proof, contract, eliminate_cuts, extended_axiom, g4_to_g3, inv_land, inv_limp, inv_lor, inv_rand,
    inv_rimp, strong_weaken_down, weaken, Occ, Seq,
};
use isl::g4::{decide_with, extract_proof, search_with, search_edges, Priority, SearchOptions};
use isl::interpolation::{cut_free_proof, interpolate, validate};
use isl::semantics::{countermodel, enumerate_models, validate_model};
use isl::{decide, parse_formula, parse_sequent, search, sequent_less, Formula, G3Proof, Profile, RuleG3, SearchOrderContext, Sequent, SplitSequent};

const AXIOM_TIME_LIMIT: Duration = Duration::from_secs(1);
const MAX_COUNTERMODEL_WORLDS: usize = 5;
const SOUNDNESS_TIME_LIMIT: Duration = Duration::from_secs(600);
const MIN_PIPELINE_PROOFS: usize = 200;
const STRUCTURAL_PROOFS: usize = 500;
const MIN_SPLITS: usize = 100;
const SHUFFLES: u64 = 5;

fn corpus_config() -> FuzzConfig {
    FuzzConfig {
        seed: 1,
        count: 1000,
        max_weight: 12,
        atoms: 2,
        max_model_worlds: 3,
    }
}

fn f(t: &str) -> Formula {
    parse_formula(t).unwrap()
}

type Outcome = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

fn axiom_suite() -> Outcome {
    let mut slowest = Duration::ZERO;
    for t in ["([]p -> p) -> p", "p -> []p", "[]([]p -> p) -> []p", "[](p -> q) -> ([]p -> []q)", "[]p -> [][]p"] {
        let start = Instant::now();
        let ok = decide(&Sequent::goal(f(t)));
        let took = start.elapsed();
        slowest = slowest.max(took);
        if !ok {
            return Err(format!("{} not derivable", t));
        }
        if took >= AXIOM_TIME_LIMIT {
            return Err(format!("{} took {:?}", t, took));
        }
    }
    Ok(format!("5 axioms, slowest {:?}", slowest))
}

fn non_theorem_suite() -> Outcome {
    let mut sizes = Vec::new();
    for t in ["[]p -> p", "p | (p -> false)", "[]false", "((p -> q) -> p) -> p"] {
        let s = Sequent::goal(f(t));
        if decide(&s) {
            return Err(format!("{} derivable", t));
        }
        let (m, w) = countermodel(&search(&s)).map_err(|e| e.to_string())?;
        if !validate_model(&m).is_empty() {
            return Err(format!("{}: invalid countermodel", t));
        }
        if !m.refuting_worlds(&s).contains(&w) {
            return Err(format!("{}: not refuted at the designated world", t));
        }
        if m.len() > MAX_COUNTERMODEL_WORLDS {
            return Err(format!("{}: {} worlds", t, m.len()));
        }
        sizes.push(m.len());
    }
    Ok(format!("countermodel sizes {:?}", sizes))
}

fn termination_witness(cases: &[Sequent]) -> Outcome {
    let full = SearchOptions {
        full: true,
        ..SearchOptions::default()
    };
    let mut edges = 0;
    for s in cases {
        let ctx = SearchOrderContext::for_root(s);
        for (parent, child) in search_edges(&search_with(s, &full)) {
            edges += 1;
            match sequent_less(&child, &parent, ctx) {
                Ok(true) => {}
                other => return Err(format!("edge {} -> {}: {:?}", parent, child, other)),
            }
        }
    }
    Ok(format!("{} sequents, {} edges, 0 violations", cases.len(), edges))
}

fn soundness(cases: &[Sequent], worlds: usize) -> Outcome {
    let start = Instant::now();
    let (mut pos, mut models) = (0, 0);
    for s in cases {
        let root = search(s);
        if root.positive {
            pos += 1;
            for m in enumerate_models(&s.atoms(), worlds) {
                models += 1;
                if !m.refuting_worlds(s).is_empty() {
                    return Err(format!("{} derivable but refuted by {}", s, m.to_json()));
                }
            }
        } else {
            let (m, w) = countermodel(&root).map_err(|e| format!("{}: {}", s, e))?;
            if !validate_model(&m).is_empty() || !m.refuting_worlds(s).contains(&w) {
                return Err(format!("{}: bad countermodel", s));
            }
        }
    }
    let took = start.elapsed();
    if took >= SOUNDNESS_TIME_LIMIT {
        return Err(format!("took {:?}", took));
    }
    Ok(format!("{} positive ({} models checked), {} negative, {:?}", pos, models, cases.len() - pos, took))
}

/// Cut-free proofs of the positive sequents. The eliminator itself fails
/// with a measure error if a new cut is not dwl-smaller than its parent.
fn pipeline(positive: &[Sequent]) -> Outcome {
    let (mut reductions, mut with_cuts) = (0, 0);
    for s in positive {
        let g4 = extract_proof(&search(s)).map_err(|e| format!("{}: {}", s, e))?;
        let g3 = g4_to_g3(&g4).map_err(|e| format!("{}: {}", s, e))?;
        check_g3_proof(&g3, Profile::WithCut).map_err(|e| format!("{}: {}", s, e))?;
        with_cuts += usize::from(!g3.is_cut_free());
        let done = eliminate_cuts(&g3).map_err(|e| format!("{}: {}", s, e))?;
        reductions += done.reductions.len();
        if !done.proof.is_cut_free() || done.proof.sequent() != *s {
            return Err(format!("{}: wrong result", s));
        }
        check_g3_proof(&done.proof, Profile::Core).map_err(|e| format!("{}: {}", s, e))?;
    }
    if positive.len() < MIN_PIPELINE_PROOFS {
        return Err(format!("only {} positive sequents", positive.len()));
    }
    Ok(format!("{} proofs ({} with cuts), {} reductions", positive.len(), with_cuts, reductions))
}

fn structural_case(p: &G3Proof, g: &mut Generator) -> Result<usize, String> {
    let h = p.height();
    let mut results: Vec<(&str, G3Proof)> = Vec::new();
    let extra = g.formula(5);
    results.push(("weaken", weaken(p, &extra)));
    for o in &p.seq.ante {
        let doubled = weaken(p, &o.formula);
        results.push(("contract", contract(&doubled, &o.formula).map_err(|e| e.to_string())?));
        let fresh = |x: &Formula| Occ::fresh(x.clone());
        match &o.formula {
            Formula::And(a, b) => {
                results.push(("L∧ inversion", inv_land(p, o.id, &fresh(a), &fresh(b)).map_err(|e| e.to_string())?));
            }
            Formula::Or(a, b) => {
                results.push(("L∨ inversion", inv_lor(p, o.id, 0, &fresh(a)).map_err(|e| e.to_string())?));
                results.push(("L∨ inversion", inv_lor(p, o.id, 1, &fresh(b)).map_err(|e| e.to_string())?));
            }
            Formula::Imp(_, b) => {
                results.push(("L→ inversion", inv_limp(p, o.id, &fresh(b)).map_err(|e| e.to_string())?));
            }
            _ => {}
        }
    }
    match p.seq.succ_formula() {
        Some(Formula::Imp(a, b)) => {
            let r = inv_rimp(p, &Occ::fresh((**a).clone()), &Occ::fresh((**b).clone()));
            results.push(("R→ inversion", r.map_err(|e| e.to_string())?));
        }
        Some(Formula::And(a, b)) => {
            results.push(("R∧ inversion", inv_rand(p, 0, &Occ::fresh((**a).clone())).map_err(|e| e.to_string())?));
            results.push(("R∧ inversion", inv_rand(p, 1, &Occ::fresh((**b).clone())).map_err(|e| e.to_string())?));
        }
        _ => {}
    }
    for (what, q) in &results {
        check_g3_proof(q, Profile::Core).map_err(|e| format!("{}: {}", what, e))?;
        if q.height() > h {
            return Err(format!("{} raised the height from {} to {}", what, h, q.height()));
        }
    }
    Ok(results.len())
}

/// ⇒ □□(p→p) by two RSL inferences over an identity leaf.
fn boxbox() -> G3Proof {
    let phi = f("p -> p");
    let bb = Formula::boxed(Formula::boxed(phi.clone()));
    let top = build(
        RuleG3::RImp,
        &Seq::from_formulas(&[bb.clone(), Formula::boxed(phi.clone())], Some(&phi)),
        None,
        vec![extended_axiom(&f("p"))],
    )
    .unwrap();
    let mid = build(RuleG3::RSL, &Seq::from_formulas(std::slice::from_ref(&bb), Some(&Formula::boxed(phi))), None, vec![top]).unwrap();
    build(RuleG3::RSL, &Seq::from_formulas(&[], Some(&bb)), None, vec![mid]).unwrap()
}

fn modal_spine(p: &G3Proof) -> Vec<Sequent> {
    let mut out = vec![p.sequent()];
    let mut n = p;
    while n.rule == RuleG3::RSL {
        n = &n.premises[0];
        out.push(n.sequent());
    }
    out
}

fn worked_example() -> Result<(), String> {
    let p = boxbox();
    let expect = |lines: &[&str]| lines.iter().map(|t| parse_sequent(t).unwrap()).collect::<Vec<_>>();
    for (chi, lines) in [
        (
            "[]c",
            [
                "[][]c => [][](p -> p)",
                "[][]c, []c, [][](p -> p) => [](p -> p)",
                "[][]c, []c, [][](p -> p), [](p -> p), [](p -> p) => p -> p",
            ],
        ),
        (
            "c",
            [
                "[]c => [][](p -> p)",
                "[]c, c, [][](p -> p) => [](p -> p)",
                "[]c, c, c, [][](p -> p), [](p -> p), [](p -> p) => p -> p",
            ],
        ),
    ] {
        let q = strong_weaken_down(&p, &f(chi)).map_err(|e| e.to_string())?;
        check_g3_proof(&q, Profile::Core).map_err(|e| e.to_string())?;
        if modal_spine(&q) != expect(&lines) {
            return Err(format!("χ = {}: got {:?}", chi, modal_spine(&q)));
        }
    }
    Ok(())
}

fn structural_lemmas() -> Outcome {
    let mut proofs = Vec::new();
    let cfg = FuzzConfig {
        seed: 2,
        count: 5000,
        ..corpus_config()
    };
    for s in corpus(&cfg) {
        if proofs.len() == STRUCTURAL_PROOFS {
            break;
        }
        if decide(&s) {
            proofs.push(cut_free_proof(&s).map_err(|e| format!("{}: {}", s, e))?);
        }
    }
    if proofs.len() < STRUCTURAL_PROOFS {
        return Err(format!("only {} proofs", proofs.len()));
    }
    let mut g = Generator::new(3, 2);
    let mut ops = 0;
    for p in &proofs {
        ops += structural_case(p, &mut g).map_err(|e| format!("{}: {}", p.seq, e))?;
    }
    worked_example()?;
    Ok(format!("{} proofs, {} transformations, worked example reproduced", proofs.len(), ops))
}

fn splits(positive: &[Sequent]) -> Vec<SplitSequent> {
    let mut out = Vec::new();
    for s in positive {
        let ante = s.ante();
        for mask in 0..(1u32 << ante.len()) {
            let (mut l, mut r) = (Vec::new(), Vec::new());
            for (i, a) in ante.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    l.push(a.clone());
                } else {
                    r.push(a.clone());
                }
            }
            out.push(SplitSequent::new(l, r, s.succ().cloned()));
        }
    }
    out
}

fn interpolation(positive: &[Sequent]) -> Outcome {
    let all = splits(positive);
    let nontrivial = all.iter().filter(|s| !s.left.is_empty()).count();
    for split in &all {
        let p = cut_free_proof(&split.sequent()).map_err(|e| format!("{}: {}", split, e))?;
        let i = interpolate(&p, split).map_err(|e| format!("{}: {}", split, e))?;
        validate(&i, split).map_err(|e| format!("{}: {}", split, e))?;
    }
    if all.len() < MIN_SPLITS {
        return Err(format!("only {} splits", all.len()));
    }
    Ok(format!("{} splits ({} with a nonempty left part)", all.len(), nontrivial))
}

fn equivalence(cases: &[Sequent]) -> Outcome {
    let mut agree = 0;
    for s in cases {
        let verdict = decide(s);
        let pipeline = cut_free_proof(s)
            .map(|p| p.is_cut_free() && p.sequent() == *s && check_g3_proof(&p, Profile::Core).is_ok())
            .unwrap_or(false);
        if verdict != pipeline {
            return Err(format!("{}: decide {} pipeline {}", s, verdict, pipeline));
        }
        agree += 1;
    }
    Ok(format!("{} sequents agree", agree))
}

fn marking_robustness(cases: &[Sequent]) -> Outcome {
    let base: Vec<bool> = cases.iter().map(decide).collect();
    for seed in 0..SHUFFLES {
        let priority = Priority::shuffled(seed);
        for (s, &b) in cases.iter().zip(&base) {
            if decide_with(s, &priority) != b {
                return Err(format!("{} changes under {:?}", s, priority));
            }
        }
    }
    Ok(format!("{} priorities x {} sequents", SHUFFLES, cases.len()))
}

fn main() {
    let cfg = corpus_config();
    let cases = corpus(&cfg);
    let positive: Vec<Sequent> = cases.iter().filter(|s| decide(s)).cloned().collect();
    let criteria: Vec<Criterion> = vec![
        ("axiom suite", Box::new(axiom_suite)),
        ("non-theorem suite", Box::new(non_theorem_suite)),
        ("termination witness", Box::new(|| termination_witness(&cases))),
        ("soundness cross-check", Box::new(|| soundness(&cases, cfg.max_model_worlds))),
        ("cut elimination pipeline", Box::new(|| pipeline(&positive))),
        ("structural lemmas", Box::new(structural_lemmas)),
        ("interpolation", Box::new(|| interpolation(&positive))),
        ("equivalence", Box::new(|| equivalence(&cases))),
        ("marking robustness", Box::new(|| marking_robustness(&cases))),
    ];
    let mut failed = Vec::new();
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("PASS {} {}: {}", i + 1, name, detail),
            Err(why) => {
                println!("FAIL {} {}: {}", i + 1, name, why);
                failed.push(i + 1);
            }
        }
    }
    if !failed.is_empty() {
        eprintln!("failed criteria {:?}", failed);
        std::process::exit(1);
    }
}
