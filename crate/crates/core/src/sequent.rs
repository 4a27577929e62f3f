use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use crate::formula::Formula;

/// A single-conclusion sequent. The antecedent is a multiset, kept sorted in
/// the canonical formula order so that equal multisets compare equal.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Sequent {
    ante: Vec<Formula>,
    succ: Option<Formula>,
}

impl Sequent {
    pub fn new(mut ante: Vec<Formula>, succ: Option<Formula>) -> Sequent {
        ante.sort();
        Sequent { ante, succ }
    }

    pub fn goal(f: Formula) -> Sequent {
        Sequent::new(Vec::new(), Some(f))
    }

    pub fn ante(&self) -> &[Formula] {
        &self.ante
    }

    pub fn succ(&self) -> Option<&Formula> {
        self.succ.as_ref()
    }

    pub fn contains(&self, f: &Formula) -> bool {
        self.ante.binary_search(f).is_ok()
    }

    pub fn count(&self, f: &Formula) -> usize {
        self.ante.iter().filter(|g| *g == f).count()
    }

    /// Antecedent with one occurrence of `f` removed.
    pub fn without(&self, f: &Formula) -> Vec<Formula> {
        let mut v = self.ante.clone();
        if let Ok(i) = v.binary_search(f) {
            v.remove(i);
        }
        v
    }

    /// Boxed antecedent members, with multiplicity.
    pub fn boxed(&self) -> impl Iterator<Item = &Formula> {
        self.ante.iter().filter(|f| f.is_box())
    }

    /// Non-boxed antecedent members, with multiplicity.
    pub fn unboxed(&self) -> impl Iterator<Item = &Formula> {
        self.ante.iter().filter(|f| !f.is_box())
    }

    /// Antecedent followed by the succedent, as one multiset.
    pub fn all_formulas(&self) -> Vec<Formula> {
        let mut v = self.ante.clone();
        v.extend(self.succ.iter().cloned());
        v
    }

    pub fn atoms(&self) -> BTreeSet<Arc<str>> {
        let mut out = BTreeSet::new();
        for f in self.ante.iter().chain(self.succ.iter()) {
            f.collect_atoms(&mut out);
        }
        out
    }

    pub fn box_occurrences(&self) -> usize {
        self.ante
            .iter()
            .chain(self.succ.iter())
            .map(Formula::box_occurrences)
            .sum()
    }

    pub fn weaken(&self, f: Formula) -> Sequent {
        let mut v = self.ante.clone();
        v.push(f);
        Sequent::new(v, self.succ.clone())
    }
}

impl fmt::Display for Sequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::parser::render_sequent(self))
    }
}

impl fmt::Debug for Sequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn multiset_equality_ignores_order() {
        let p = Formula::atom("p");
        let q = Formula::atom("q");
        let a = Sequent::new(vec![p.clone(), q.clone(), p.clone()], None);
        let b = Sequent::new(vec![q, p.clone(), p.clone()], None);
        assert_eq!(a, b);
        assert_eq!(a.count(&p), 2);
    }

    #[test]
    fn without_removes_one_copy() {
        let p = Formula::atom("p");
        let s = Sequent::new(vec![p.clone(), p.clone()], None);
        assert_eq!(s.without(&p), vec![p]);
    }
}
