use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

/// A modal propositional formula. Negation is not a constructor; `~a` is
/// `a -> false`.
///
/// The derived order (Bot < Atom < And < Or < Imp < Box, then by children)
/// is the canonical syntactic order used to sort multisets.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Formula {
    Bot,
    Atom(Arc<str>),
    And(Arc<Formula>, Arc<Formula>),
    Or(Arc<Formula>, Arc<Formula>),
    Imp(Arc<Formula>, Arc<Formula>),
    Box(Arc<Formula>),
}

impl Formula {
    pub fn atom(name: &str) -> Formula {
        assert!(!name.is_empty(), "atom names are nonempty");
        Formula::Atom(Arc::from(name))
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Arc::new(a), Arc::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Arc::new(a), Arc::new(b))
    }

    pub fn imp(a: Formula, b: Formula) -> Formula {
        Formula::Imp(Arc::new(a), Arc::new(b))
    }

    pub fn boxed(a: Formula) -> Formula {
        Formula::Box(Arc::new(a))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(a: Formula) -> Formula {
        Formula::imp(a, Formula::Bot)
    }

    /// `false -> false`, the stand-in for a truth constant.
    pub fn top() -> Formula {
        Formula::imp(Formula::Bot, Formula::Bot)
    }

    pub fn is_atom(&self) -> bool {
        matches!(self, Formula::Atom(_))
    }

    pub fn is_box(&self) -> bool {
        matches!(self, Formula::Box(_))
    }

    /// The formula under an outer box.
    pub fn unbox(&self) -> Option<&Formula> {
        match self {
            Formula::Box(a) => Some(a),
            _ => None,
        }
    }

    pub fn atoms(&self) -> BTreeSet<Arc<str>> {
        let mut out = BTreeSet::new();
        self.collect_atoms(&mut out);
        out
    }

    pub(crate) fn collect_atoms(&self, out: &mut BTreeSet<Arc<str>>) {
        match self {
            Formula::Bot => {}
            Formula::Atom(p) => {
                out.insert(p.clone());
            }
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => {
                a.collect_atoms(out);
                b.collect_atoms(out);
            }
            Formula::Box(a) => a.collect_atoms(out),
        }
    }

    /// Number of box occurrences.
    pub fn box_occurrences(&self) -> usize {
        match self {
            Formula::Bot | Formula::Atom(_) => 0,
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => {
                a.box_occurrences() + b.box_occurrences()
            }
            Formula::Box(a) => 1 + a.box_occurrences(),
        }
    }

    /// Number of constructor nodes.
    pub fn size(&self) -> usize {
        match self {
            Formula::Bot | Formula::Atom(_) => 1,
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => 1 + a.size() + b.size(),
            Formula::Box(a) => 1 + a.size(),
        }
    }

    /// Conjunction of a list; the empty conjunction is `false -> false`.
    pub fn conj(items: Vec<Formula>) -> Formula {
        let mut it = items.into_iter();
        match it.next() {
            None => Formula::top(),
            Some(first) => it.fold(first, Formula::and),
        }
    }

    /// Disjunction of a list; the empty disjunction is `false`.
    pub fn disj(items: Vec<Formula>) -> Formula {
        let mut it = items.into_iter();
        match it.next() {
            None => Formula::Bot,
            Some(first) => it.fold(first, Formula::or),
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::parser::render_formula(self))
    }
}

impl fmt::Debug for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}
