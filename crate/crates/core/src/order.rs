//! Weight, degree and the orders that make backward search terminate.

use std::collections::{BTreeMap, HashSet};

use thiserror::Error;

use crate::formula::Formula;
use crate::sequent::Sequent;

pub fn weight(f: &Formula) -> usize {
    match f {
        Formula::Bot | Formula::Atom(_) => 1,
        Formula::And(a, b) => weight(a) + weight(b) + 2,
        Formula::Or(a, b) | Formula::Imp(a, b) => weight(a) + weight(b) + 1,
        Formula::Box(a) => weight(a) + 1,
    }
}

pub fn degree(f: &Formula) -> usize {
    match f {
        Formula::Bot => 0,
        Formula::Atom(_) => 1,
        Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => degree(a) + degree(b) + 1,
        Formula::Box(a) => degree(a) + 1,
    }
}

/// Dershowitz–Manna extension of the weight order to multisets: `a` is
/// obtained from `b` by replacing at least one occurrence by any number of
/// strictly lighter formulas.
pub fn multiset_less(a: &[Formula], b: &[Formula]) -> bool {
    let mut diff: BTreeMap<&Formula, isize> = BTreeMap::new();
    for f in a {
        *diff.entry(f).or_default() += 1;
    }
    for f in b {
        *diff.entry(f).or_default() -= 1;
    }
    // positive: surplus in a, negative: surplus in b
    let removed: Vec<usize> = diff
        .iter()
        .filter(|(_, &n)| n < 0)
        .map(|(f, _)| weight(f))
        .collect();
    if removed.is_empty() {
        return false;
    }
    let heaviest = *removed.iter().max().unwrap();
    diff.iter()
        .filter(|(_, &n)| n > 0)
        .all(|(f, _)| weight(f) < heaviest)
}

/// Number of distinct boxed formulas in the antecedent.
pub fn box_count(s: &Sequent) -> usize {
    s.boxed().collect::<HashSet<_>>().len()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchOrderContext {
    pub c: usize,
}

impl SearchOrderContext {
    /// The budget used for a search rooted at `s`: all box occurrences in it.
    pub fn for_root(s: &Sequent) -> SearchOrderContext {
        SearchOrderContext {
            c: s.box_occurrences(),
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OrderError {
    #[error("box budget {c} is below the box count {b} of {sequent}")]
    BudgetExceeded { c: usize, b: usize, sequent: String },
}

/// `s1` comes strictly before `s2`: fewer boxes left to introduce, or the
/// same number and a smaller multiset.
pub fn sequent_less(s1: &Sequent, s2: &Sequent, ctx: SearchOrderContext) -> Result<bool, OrderError> {
    let b1 = box_count(s1);
    let b2 = box_count(s2);
    for (b, s) in [(b1, s1), (b2, s2)] {
        if b > ctx.c {
            return Err(OrderError::BudgetExceeded {
                c: ctx.c,
                b,
                sequent: s.to_string(),
            });
        }
    }
    if b1 != b2 {
        return Ok(ctx.c - b1 < ctx.c - b2);
    }
    Ok(multiset_less(&s1.all_formulas(), &s2.all_formulas()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::{parse_formula, parse_sequent};

    fn f(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    fn s(t: &str) -> Sequent {
        parse_sequent(t).unwrap()
    }

    #[test]
    fn weights() {
        assert_eq!(weight(&f("p")), 1);
        assert_eq!(weight(&f("false")), 1);
        assert_eq!(weight(&f("[]p")), 2);
        assert_eq!(weight(&f("p & q")), 4);
        assert_eq!(weight(&f("p | q")), 3);
        assert_eq!(weight(&f("p -> q")), 3);
    }

    #[test]
    fn degrees() {
        assert_eq!(degree(&Formula::Bot), 0);
        assert_eq!(degree(&f("p")), 1);
        assert_eq!(degree(&f("[](p & q)")), 4);
        assert_eq!(degree(&f("~p")), 2);
    }

    #[test]
    fn multiset_examples() {
        assert!(!multiset_less(&[f("p")], &[f("p")]));
        assert!(multiset_less(&[], &[f("p")]));
        assert!(multiset_less(&[f("p"), f("q")], &[f("p & q")]));
        assert!(!multiset_less(&[f("q")], &[f("p")]));
        assert!(!multiset_less(&[f("p & q")], &[f("p"), f("q")]));
    }

    #[test]
    fn box_count_examples() {
        assert_eq!(box_count(&s("[]p, []p, q => r")), 1);
        assert_eq!(box_count(&s("p => []q")), 0);
        assert_eq!(box_count(&s("[]p, []q =>")), 2);
    }

    #[test]
    fn sequent_order_examples() {
        let ctx2 = SearchOrderContext { c: 2 };
        assert_eq!(sequent_less(&s("[]p, []q =>"), &s("[]p =>"), ctx2), Ok(true));
        let ctx0 = SearchOrderContext { c: 0 };
        assert_eq!(sequent_less(&s("p =>"), &s("p & q =>"), ctx0), Ok(true));
        assert_eq!(sequent_less(&s("p =>"), &s("p =>"), ctx0), Ok(false));
    }

    #[test]
    fn budget_violation_is_an_error() {
        let ctx = SearchOrderContext { c: 0 };
        assert!(sequent_less(&s("[]p =>"), &s("p =>"), ctx).is_err());
    }
}
