use std::collections::BTreeSet;
use std::sync::Arc;

use super::{validate_model, KripkeModel};

struct Frame {
    n: usize,
    le: Vec<Vec<bool>>,
    r: Vec<Vec<bool>>,
    /// Upward-closed sets of worlds, as bitmasks.
    upsets: Vec<u32>,
}

/// Lazily yields every iSL-model with at most `max_worlds` worlds over the
/// given atoms. Isomorphic copies are not filtered.
pub struct ModelEnumerator {
    atoms: Vec<Arc<str>>,
    frames: Vec<Frame>,
    frame: usize,
    /// Mixed-radix counter over the upset choice of each atom.
    digits: Vec<usize>,
}

fn frames(n: usize) -> Vec<Frame> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).filter(|(i, j)| i != j).collect();
    let mut out = Vec::new();
    for le_bits in 0u32..(1 << pairs.len()) {
        let mut le: Vec<Vec<bool>> = (0..n).map(|i| (0..n).map(|j| i == j).collect()).collect();
        for (k, &(i, j)) in pairs.iter().enumerate() {
            le[i][j] = le_bits >> k & 1 == 1;
        }
        let partial_order = (0..n).all(|a| {
            (0..n).all(|b| (a == b || !(le[a][b] && le[b][a])) && (0..n).all(|c| !(le[a][b] && le[b][c]) || le[a][c]))
        });
        if !partial_order {
            continue;
        }
        let strict: Vec<(usize, usize)> = pairs.iter().copied().filter(|&(i, j)| le[i][j]).collect();
        for r_bits in 0u32..(1 << strict.len()) {
            let mut r = vec![vec![false; n]; n];
            for (k, &(i, j)) in strict.iter().enumerate() {
                r[i][j] = r_bits >> k & 1 == 1;
            }
            let m = KripkeModel {
                names: (0..n).map(|i| format!("w{}", i)).collect(),
                le: le.clone(),
                r,
                val: vec![BTreeSet::new(); n],
            };
            if !validate_model(&m).is_empty() {
                continue;
            }
            let upsets = (0u32..(1 << n))
                .filter(|&s| (0..n).all(|a| s >> a & 1 == 0 || (0..n).all(|b| !le[a][b] || s >> b & 1 == 1)))
                .collect();
            out.push(Frame { n, le: m.le, r: m.r, upsets });
        }
    }
    out
}

impl ModelEnumerator {
    pub fn new(atoms: &BTreeSet<Arc<str>>, max_worlds: usize) -> ModelEnumerator {
        ModelEnumerator {
            atoms: atoms.iter().cloned().collect(),
            frames: (1..=max_worlds).flat_map(frames).collect(),
            frame: 0,
            digits: vec![0; atoms.len()],
        }
    }

    fn advance(&mut self) {
        let radix = self.frames[self.frame].upsets.len();
        for d in self.digits.iter_mut() {
            *d += 1;
            if *d < radix {
                return;
            }
            *d = 0;
        }
        self.frame += 1;
    }
}

impl Iterator for ModelEnumerator {
    type Item = KripkeModel;

    fn next(&mut self) -> Option<KripkeModel> {
        let frame = self.frames.get(self.frame)?;
        let mut val = vec![BTreeSet::new(); frame.n];
        for (atom, &d) in self.atoms.iter().zip(&self.digits) {
            let set = frame.upsets[d];
            for (w, v) in val.iter_mut().enumerate() {
                if set >> w & 1 == 1 {
                    v.insert(atom.clone());
                }
            }
        }
        let m = KripkeModel {
            names: (0..frame.n).map(|i| format!("w{}", i)).collect(),
            le: frame.le.clone(),
            r: frame.r.clone(),
            val,
        };
        self.advance();
        Some(m)
    }
}

pub fn enumerate_models(atoms: &BTreeSet<Arc<str>>, max_worlds: usize) -> ModelEnumerator {
    ModelEnumerator::new(atoms, max_worlds)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn atoms(names: &[&str]) -> BTreeSet<Arc<str>> {
        names.iter().map(|&a| Arc::from(a)).collect()
    }

    /// Every relation pair and every valuation, filtered by validation. Pairs
    /// whose relations already fail are skipped before valuations are tried.
    fn brute_force_count(names: &[&str], max_worlds: usize) -> usize {
        let mut count = 0;
        for n in 1..=max_worlds {
            let cells = n * n;
            for le_bits in 0u64..(1 << cells) {
                let mut m = KripkeModel::discrete(n);
                for i in 0..n {
                    for j in 0..n {
                        m.le[i][j] = le_bits >> (i * n + j) & 1 == 1;
                    }
                }
                if !validate_model(&m).is_empty() {
                    continue;
                }
                for r_bits in 0u64..(1 << cells) {
                    for i in 0..n {
                        for j in 0..n {
                            m.r[i][j] = r_bits >> (i * n + j) & 1 == 1;
                        }
                    }
                    if !validate_model(&m).is_empty() {
                        continue;
                    }
                    for v_bits in 0u64..(1 << (n * names.len())) {
                        let mut mv = m.clone();
                        for i in 0..n {
                            for (k, a) in names.iter().enumerate() {
                                if v_bits >> (i * names.len() + k) & 1 == 1 {
                                    mv.set_true(i, a);
                                }
                            }
                        }
                        if validate_model(&mv).is_empty() {
                            count += 1;
                        }
                    }
                }
            }
        }
        count
    }

    #[test]
    fn one_world_models() {
        assert_eq!(enumerate_models(&atoms(&[]), 1).count(), 1);
        let ms: Vec<_> = enumerate_models(&atoms(&["p"]), 1).collect();
        assert_eq!(ms.len(), 2);
        assert!(ms.iter().all(|m| !m.r[0][0]));
    }

    #[test]
    fn two_world_count_matches_brute_force() {
        assert_eq!(brute_force_count(&["p"], 2), 18);
        assert_eq!(enumerate_models(&atoms(&["p"]), 2).count(), 18);
    }

    #[test]
    fn three_world_count_matches_brute_force() {
        let expected = brute_force_count(&["p"], 3);
        assert_eq!(enumerate_models(&atoms(&["p"]), 3).count(), expected);
    }

    #[test]
    fn all_enumerated_models_are_valid() {
        for m in enumerate_models(&atoms(&["p", "q"]), 3) {
            assert!(m.validate().is_empty());
        }
    }
}
