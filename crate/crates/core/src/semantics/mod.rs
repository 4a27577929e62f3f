//! Finite iSL Kripke models: frame conditions, forcing, generated
//! submodels, exhaustive enumeration and the countermodel construction.

mod countermodel;
mod enumerate;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use serde_json::{json, Value};
use thiserror::Error;

use crate::formula::Formula;
use crate::sequent::Sequent;

pub use countermodel::countermodel;
pub use enumerate::{enumerate_models, ModelEnumerator};

/// A finite model `(W, ≤, R, V)`. Worlds are indices into `names`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KripkeModel {
    pub names: Vec<String>,
    /// `le[w][v]` iff `w ≤ v`.
    pub le: Vec<Vec<bool>>,
    /// `r[w][x]` iff `w R x`.
    pub r: Vec<Vec<bool>>,
    pub val: Vec<BTreeSet<Arc<str>>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    Empty,
    NotReflexive(String),
    NotTransitive(String, String, String),
    NotAntisymmetric(String, String),
    /// `w ≤ v R x` without `w R x`.
    LeThenR(String, String, String),
    NotMonotone { lower: String, upper: String, atom: String },
    RNotTransitive(String, String, String),
    RCycle(Vec<String>),
    /// `w R x` without `w ≤ x`.
    RNotInLe(String, String),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Empty => write!(f, "the model has no worlds"),
            Violation::NotReflexive(w) => write!(f, "≤ is not reflexive at {}", w),
            Violation::NotTransitive(a, b, c) => write!(f, "≤ is not transitive: {} ≤ {} ≤ {}", a, b, c),
            Violation::NotAntisymmetric(a, b) => write!(f, "≤ is not antisymmetric: {} and {}", a, b),
            Violation::LeThenR(a, b, c) => write!(f, "{} ≤ {} R {} but not {} R {}", a, b, c, a, c),
            Violation::NotMonotone { lower, upper, atom } => {
                write!(f, "valuation not monotone: {} true at {} but not at {}", atom, lower, upper)
            }
            Violation::RNotTransitive(a, b, c) => write!(f, "R is not transitive: {} R {} R {}", a, b, c),
            Violation::RCycle(ws) => write!(f, "R has a cycle through {}", ws.join(", ")),
            Violation::RNotInLe(a, b) => write!(f, "{} R {} but not {} ≤ {}", a, b, a, b),
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SemanticsError {
    #[error("not an iSL-model: {0}")]
    Invalid(String),
    #[error("no world {0}")]
    NoSuchWorld(String),
    #[error("the search tree is positive; there is no countermodel")]
    Positive,
    #[error("malformed model file: {0}")]
    Format(String),
}

impl KripkeModel {
    /// Model with the given number of worlds named `w0, w1, …`, `≤` the
    /// identity and everything else empty.
    pub fn discrete(n: usize) -> KripkeModel {
        KripkeModel {
            names: (0..n).map(|i| format!("w{}", i)).collect(),
            le: (0..n).map(|i| (0..n).map(|j| i == j).collect()).collect(),
            r: vec![vec![false; n]; n],
            val: vec![BTreeSet::new(); n],
        }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn world(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn set_true(&mut self, w: usize, atom: &str) {
        self.val[w].insert(Arc::from(atom));
    }

    /// Adds `w ≤ x` together with `w R x`.
    pub fn add_r(&mut self, w: usize, x: usize) {
        self.r[w][x] = true;
        self.le[w][x] = true;
    }

    pub fn validate(&self) -> Vec<Violation> {
        validate_model(self)
    }

    /// Worlds where `f` is forced. Assumes the model is valid.
    pub fn truth_set(&self, f: &Formula) -> Vec<bool> {
        let n = self.len();
        match f {
            Formula::Bot => vec![false; n],
            Formula::Atom(p) => self.val.iter().map(|v| v.contains(p)).collect(),
            Formula::And(a, b) => {
                let (x, y) = (self.truth_set(a), self.truth_set(b));
                x.iter().zip(&y).map(|(p, q)| *p && *q).collect()
            }
            Formula::Or(a, b) => {
                let (x, y) = (self.truth_set(a), self.truth_set(b));
                x.iter().zip(&y).map(|(p, q)| *p || *q).collect()
            }
            Formula::Imp(a, b) => {
                let (x, y) = (self.truth_set(a), self.truth_set(b));
                (0..n).map(|w| (0..n).all(|v| !self.le[w][v] || !x[v] || y[v])).collect()
            }
            Formula::Box(a) => {
                let x = self.truth_set(a);
                (0..n).map(|w| (0..n).all(|v| !self.r[w][v] || x[v])).collect()
            }
        }
    }

    /// Worlds forcing the whole antecedent and not the succedent.
    pub fn refuting_worlds(&self, s: &Sequent) -> Vec<usize> {
        let n = self.len();
        let mut ok = vec![true; n];
        for f in s.ante() {
            let t = self.truth_set(f);
            for w in 0..n {
                ok[w] &= t[w];
            }
        }
        if let Some(d) = s.succ() {
            let t = self.truth_set(d);
            for w in 0..n {
                ok[w] &= !t[w];
            }
        }
        (0..n).filter(|&w| ok[w]).collect()
    }

    /// Worlds reachable from `w` along `≤` and `R`, in index order.
    pub fn generated(&self, w: usize) -> Vec<usize> {
        let n = self.len();
        let mut seen = vec![false; n];
        let mut stack = vec![w];
        seen[w] = true;
        while let Some(x) = stack.pop() {
            for (y, s) in seen.iter_mut().enumerate() {
                if (self.le[x][y] || self.r[x][y]) && !*s {
                    *s = true;
                    stack.push(y);
                }
            }
        }
        (0..n).filter(|&y| seen[y]).collect()
    }

    /// Restriction to the given worlds, in the given order.
    pub fn restrict(&self, keep: &[usize]) -> KripkeModel {
        KripkeModel {
            names: keep.iter().map(|&i| self.names[i].clone()).collect(),
            le: keep.iter().map(|&i| keep.iter().map(|&j| self.le[i][j]).collect()).collect(),
            r: keep.iter().map(|&i| keep.iter().map(|&j| self.r[i][j]).collect()).collect(),
            val: keep.iter().map(|&i| self.val[i].clone()).collect(),
        }
    }

    pub fn to_json(&self) -> Value {
        let n = self.len();
        let pairs = |rel: &Vec<Vec<bool>>, skip_diag: bool| {
            let mut out = Vec::new();
            for (i, row) in rel.iter().enumerate() {
                for (j, &x) in row.iter().enumerate() {
                    if x && !(skip_diag && i == j) {
                        out.push(json!([self.names[i], self.names[j]]));
                    }
                }
            }
            out
        };
        let val: BTreeMap<&str, Vec<&str>> = (0..n)
            .map(|i| (self.names[i].as_str(), self.val[i].iter().map(|a| &**a).collect()))
            .collect();
        json!({
            "worlds": self.names,
            "le": pairs(&self.le, true),
            "r": pairs(&self.r, false),
            "val": val,
        })
    }

    /// Reads the JSON model format. Reflexive `≤` pairs are added; nothing
    /// else is closed, so invalid relations surface in validation.
    pub fn from_json(v: &Value) -> Result<KripkeModel, SemanticsError> {
        let bad = |m: String| SemanticsError::Format(m);
        let names: Vec<String> = v["worlds"]
            .as_array()
            .ok_or_else(|| bad("missing worlds".into()))?
            .iter()
            .map(|w| w.as_str().map(str::to_string).ok_or_else(|| bad("world names must be strings".into())))
            .collect::<Result<_, _>>()?;
        let distinct: BTreeSet<&String> = names.iter().collect();
        if distinct.len() != names.len() {
            return Err(bad("duplicate world names".into()));
        }
        let mut m = KripkeModel::discrete(names.len());
        m.names = names;
        let index = |m: &KripkeModel, x: &Value| -> Result<usize, SemanticsError> {
            let name = x.as_str().ok_or_else(|| bad("world references must be strings".into()))?;
            m.world(name).ok_or_else(|| bad(format!("unknown world {}", name)))
        };
        for key in ["le", "r"] {
            let pairs = match v.get(key) {
                None => continue,
                Some(p) => p.as_array().ok_or_else(|| bad(format!("{} must be a list of pairs", key)))?,
            };
            for pair in pairs {
                let pair = pair
                    .as_array()
                    .filter(|p| p.len() == 2)
                    .ok_or_else(|| bad(format!("{} entries must be pairs", key)))?;
                let (a, b) = (index(&m, &pair[0])?, index(&m, &pair[1])?);
                if key == "le" {
                    m.le[a][b] = true;
                } else {
                    m.r[a][b] = true;
                }
            }
        }
        if let Some(val) = v.get("val") {
            let obj = val.as_object().ok_or_else(|| bad("val must be an object".into()))?;
            for (w, atoms) in obj {
                let i = m.world(w).ok_or_else(|| bad(format!("unknown world {}", w)))?;
                for a in atoms.as_array().ok_or_else(|| bad("val entries must be lists".into()))? {
                    let a = a.as_str().ok_or_else(|| bad("atoms must be strings".into()))?;
                    m.set_true(i, a);
                }
            }
        }
        Ok(m)
    }

    /// Graphviz rendering: `≤` edges dashed (reflexive and transitive ones
    /// omitted), `R` edges solid.
    pub fn to_dot(&self, designated: Option<usize>) -> String {
        let n = self.len();
        let mut out = String::from("digraph model {\n  rankdir=BT;\n");
        for i in 0..n {
            let atoms: Vec<&str> = self.val[i].iter().map(|a| &**a).collect();
            let shape = if Some(i) == designated { "doublecircle" } else { "circle" };
            out.push_str(&format!(
                "  \"{}\" [shape={}, xlabel=\"{}\"];\n",
                self.names[i],
                shape,
                atoms.join(",")
            ));
        }
        for i in 0..n {
            for j in 0..n {
                let covers = self.le[i][j] && i != j && !(0..n).any(|k| k != i && k != j && self.le[i][k] && self.le[k][j]);
                if covers {
                    out.push_str(&format!("  \"{}\" -> \"{}\" [style=dashed];\n", self.names[i], self.names[j]));
                }
                if self.r[i][j] {
                    out.push_str(&format!("  \"{}\" -> \"{}\";\n", self.names[i], self.names[j]));
                }
            }
        }
        out.push_str("}\n");
        out
    }
}

/// Every violated frame condition, with witnesses.
pub fn validate_model(m: &KripkeModel) -> Vec<Violation> {
    let n = m.len();
    let name = |i: usize| m.names[i].clone();
    let mut out = Vec::new();
    if n == 0 {
        out.push(Violation::Empty);
    }
    for w in 0..n {
        if !m.le[w][w] {
            out.push(Violation::NotReflexive(name(w)));
        }
    }
    for a in 0..n {
        for b in 0..n {
            if a < b && m.le[a][b] && m.le[b][a] {
                out.push(Violation::NotAntisymmetric(name(a), name(b)));
            }
            if m.r[a][b] && !m.le[a][b] {
                out.push(Violation::RNotInLe(name(a), name(b)));
            }
            for c in 0..n {
                if m.le[a][b] && m.le[b][c] && !m.le[a][c] {
                    out.push(Violation::NotTransitive(name(a), name(b), name(c)));
                }
                if m.le[a][b] && m.r[b][c] && !m.r[a][c] {
                    out.push(Violation::LeThenR(name(a), name(b), name(c)));
                }
                if m.r[a][b] && m.r[b][c] && !m.r[a][c] {
                    out.push(Violation::RNotTransitive(name(a), name(b), name(c)));
                }
            }
            if m.le[a][b] {
                for p in &m.val[a] {
                    if !m.val[b].contains(p) {
                        out.push(Violation::NotMonotone {
                            lower: name(a),
                            upper: name(b),
                            atom: p.to_string(),
                        });
                    }
                }
            }
        }
    }
    if let Some(cycle) = r_cycle(m) {
        out.push(Violation::RCycle(cycle.into_iter().map(name).collect()));
    }
    out
}

fn r_cycle(m: &KripkeModel) -> Option<Vec<usize>> {
    let n = m.len();
    // 0 unvisited, 1 on stack, 2 done
    let mut state = vec![0u8; n];
    let mut path = Vec::new();
    fn dfs(m: &KripkeModel, w: usize, state: &mut [u8], path: &mut Vec<usize>) -> Option<Vec<usize>> {
        state[w] = 1;
        path.push(w);
        for x in 0..m.len() {
            if !m.r[w][x] {
                continue;
            }
            if state[x] == 1 {
                let start = path.iter().position(|&y| y == x).unwrap();
                return Some(path[start..].to_vec());
            }
            if state[x] == 0 {
                if let Some(c) = dfs(m, x, state, path) {
                    return Some(c);
                }
            }
        }
        path.pop();
        state[w] = 2;
        None
    }
    (0..n).find_map(|w| if state[w] == 0 { dfs(m, w, &mut state, &mut path) } else { None })
}

fn checked(m: &KripkeModel, w: usize) -> Result<(), SemanticsError> {
    if w >= m.len() {
        return Err(SemanticsError::NoSuchWorld(w.to_string()));
    }
    let v = validate_model(m);
    if let Some(first) = v.first() {
        return Err(SemanticsError::Invalid(first.to_string()));
    }
    Ok(())
}

/// `M, w ⊩ f`.
pub fn forces(m: &KripkeModel, w: usize, f: &Formula) -> Result<bool, SemanticsError> {
    checked(m, w)?;
    Ok(m.truth_set(f)[w])
}

/// A world refuting `s`, if any.
pub fn refutes(m: &KripkeModel, s: &Sequent) -> Result<Option<usize>, SemanticsError> {
    checked(m, 0)?;
    Ok(m.refuting_worlds(s).into_iter().next())
}

/// The submodel generated by `w`, and the index of `w` in it.
pub fn generated_submodel(m: &KripkeModel, w: usize) -> (KripkeModel, usize) {
    let keep = m.generated(w);
    let at = keep.iter().position(|&x| x == w).unwrap();
    (m.restrict(&keep), at)
}
