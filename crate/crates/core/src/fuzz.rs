//! Seeded random formulas and sequents of bounded weight.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::formula::Formula;
use crate::g3::{check_g3_proof, eliminate_cuts, g4_to_g3, Profile};
use crate::g4::{check_g4_proof, extract_proof, search};
use crate::parser::render_sequent;
use crate::semantics::{countermodel, enumerate_models, validate_model};
use crate::sequent::Sequent;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FuzzConfig {
    pub seed: u64,
    pub count: usize,
    pub max_weight: usize,
    pub atoms: usize,
    pub max_model_worlds: usize,
}

impl Default for FuzzConfig {
    fn default() -> FuzzConfig {
        FuzzConfig {
            seed: 1,
            count: 100,
            max_weight: 12,
            atoms: 2,
            max_model_worlds: 3,
        }
    }
}

pub fn atom_name(i: usize) -> String {
    const NAMES: [&str; 6] = ["p", "q", "r", "s", "t", "u"];
    match NAMES.get(i) {
        Some(n) => n.to_string(),
        None => format!("p{}", i),
    }
}

pub struct Generator {
    rng: ChaCha8Rng,
    atoms: usize,
}

impl Generator {
    pub fn new(seed: u64, atoms: usize) -> Generator {
        Generator {
            rng: ChaCha8Rng::seed_from_u64(seed),
            atoms: atoms.max(1),
        }
    }

    fn leaf(&mut self) -> Formula {
        if self.rng.gen_bool(0.1) {
            Formula::Bot
        } else {
            Formula::atom(&atom_name(self.rng.gen_range(0..self.atoms)))
        }
    }

    /// A formula of weight exactly `w` (at least 1).
    pub fn formula_of_weight(&mut self, w: usize) -> Formula {
        match w {
            0 | 1 => self.leaf(),
            2 => Formula::boxed(self.leaf()),
            _ => {
                // and 0.15, or 0.2, imp 0.45, box 0.2
                let roll: f64 = self.rng.gen();
                if roll < 0.15 && w >= 4 {
                    let a = self.rng.gen_range(1..=w - 3);
                    Formula::and(self.formula_of_weight(a), self.formula_of_weight(w - 2 - a))
                } else if roll < 0.35 {
                    let a = self.rng.gen_range(1..=w - 2);
                    Formula::or(self.formula_of_weight(a), self.formula_of_weight(w - 1 - a))
                } else if roll < 0.8 {
                    let a = self.rng.gen_range(1..=w - 2);
                    Formula::imp(self.formula_of_weight(a), self.formula_of_weight(w - 1 - a))
                } else {
                    Formula::boxed(self.formula_of_weight(w - 1))
                }
            }
        }
    }

    /// A formula of weight between 1 and `max_weight`.
    pub fn formula(&mut self, max_weight: usize) -> Formula {
        let w = self.rng.gen_range(1..=max_weight.max(1));
        self.formula_of_weight(w)
    }

    /// A sequent whose formulas weigh at most `max_weight` together, with up
    /// to two antecedent formulas.
    pub fn sequent(&mut self, max_weight: usize) -> Sequent {
        let max_weight = max_weight.max(1);
        let k = match self.rng.gen_range(0..10) {
            0..=4 => 0,
            5..=7 => 1,
            _ => 2,
        };
        let with_succ = k == 0 || self.rng.gen_bool(0.9);
        let parts = k + usize::from(with_succ);
        let total = self.rng.gen_range(parts.max(1)..=max_weight.max(parts));
        let mut weights = vec![1; parts];
        for _ in parts..total {
            let i = self.rng.gen_range(0..parts);
            weights[i] += 1;
        }
        let mut fs: Vec<Formula> = weights.iter().map(|&w| self.formula_of_weight(w)).collect();
        let succ = if with_succ { fs.pop() } else { None };
        Sequent::new(fs, succ)
    }
}

/// The deterministic corpus for a configuration.
pub fn corpus(cfg: &FuzzConfig) -> Vec<Sequent> {
    let mut g = Generator::new(cfg.seed, cfg.atoms);
    (0..cfg.count).map(|_| g.sequent(cfg.max_weight)).collect()
}

/// Outcome of cross-checking one sequent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// Provable; the G3 proof after cut elimination has this many nodes and
    /// needed this many reductions.
    Provable { size: usize, reductions: usize },
    /// Not provable; the countermodel has this many worlds.
    Refuted { worlds: usize },
}

/// One line of a fuzz report.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CaseReport {
    pub index: usize,
    pub sequent: Sequent,
    pub result: Result<Verdict, String>,
}

impl std::fmt::Display for CaseReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = render_sequent(&self.sequent);
        match &self.result {
            Ok(Verdict::Provable { size, reductions }) => {
                write!(f, "{:>5} provable size={} reductions={}  {}", self.index, size, reductions, s)
            }
            Ok(Verdict::Refuted { worlds }) => write!(f, "{:>5} refuted worlds={}  {}", self.index, worlds, s),
            Err(e) => write!(f, "{:>5} DISCREPANCY {}  {}", self.index, e, s),
        }
    }
}

/// Runs every check on one sequent: positive sequents go through proof
/// extraction, translation and cut elimination and must hold in every
/// enumerated model; negative ones must be refuted by their countermodel.
pub fn check_sequent(s: &Sequent, max_model_worlds: usize) -> Result<Verdict, String> {
    let root = search(s);
    if root.positive {
        let g4 = extract_proof(&root).map_err(|e| format!("extraction: {}", e))?;
        check_g4_proof(&g4).map_err(|e| format!("G4 proof: {}", e))?;
        let g3 = g4_to_g3(&g4).map_err(|e| format!("translation: {}", e))?;
        check_g3_proof(&g3, Profile::WithCut).map_err(|e| format!("translated proof: {}", e))?;
        let done = eliminate_cuts(&g3).map_err(|e| format!("cut elimination: {}", e))?;
        if !done.proof.is_cut_free() {
            return Err("cut elimination left a cut".into());
        }
        check_g3_proof(&done.proof, Profile::Core).map_err(|e| format!("cut-free proof: {}", e))?;
        if done.proof.sequent() != *s {
            return Err(format!("cut elimination changed the endsequent to {}", done.proof.seq));
        }
        if let Some(m) = enumerate_models(&s.atoms(), max_model_worlds).find(|m| !m.refuting_worlds(s).is_empty()) {
            return Err(format!("provable but refuted by the {}-world model {}", m.len(), m.to_json()));
        }
        Ok(Verdict::Provable {
            size: done.proof.size(),
            reductions: done.reductions.len(),
        })
    } else {
        let (m, w) = countermodel(&root).map_err(|e| format!("countermodel: {}", e))?;
        let bad = validate_model(&m);
        if !bad.is_empty() {
            return Err(format!("invalid countermodel: {}", bad[0]));
        }
        if !m.refuting_worlds(s).contains(&w) {
            return Err(format!("countermodel does not refute at {}", m.names[w]));
        }
        Ok(Verdict::Refuted { worlds: m.len() })
    }
}

/// Cross-checks a single corpus entry.
pub fn check_case(index: usize, s: &Sequent, cfg: &FuzzConfig) -> CaseReport {
    CaseReport {
        index,
        sequent: s.clone(),
        result: check_sequent(s, cfg.max_model_worlds),
    }
}
