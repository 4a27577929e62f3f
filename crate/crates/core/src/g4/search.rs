use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{instances, is_extended_axiom, Instance, RuleG4};
use crate::formula::Formula;
use crate::sequent::Sequent;

/// Order in which the invertible rules are tried.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Priority(pub [RuleG4; 8]);

impl Default for Priority {
    fn default() -> Priority {
        Priority(RuleG4::INVERTIBLE)
    }
}

impl Priority {
    pub fn shuffled(seed: u64) -> Priority {
        let mut rules = RuleG4::INVERTIBLE;
        rules.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        Priority(rules)
    }
}

#[derive(Clone, Debug, Default)]
pub struct SearchOptions {
    /// Explore every premise of every group. Needed for countermodels.
    pub full: bool,
    pub priority: Priority,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Note {
    /// Instance of At or L⊥.
    Axiom(RuleG4),
    ExtendedAxiom,
    /// An invertible rule was applied.
    Reducible,
    /// No invertible rule applies; every non-invertible instance is a group.
    Irreducible,
}

#[derive(Debug)]
pub struct Group {
    pub rule: RuleG4,
    pub principal: Option<Formula>,
    /// Premise sequents of the rule instance, in order.
    pub sequents: Vec<Sequent>,
    /// Searched premises. Shorter than `sequents` when the search pruned.
    pub premises: Vec<Arc<SearchNode>>,
}

impl Group {
    pub fn positive(&self) -> bool {
        self.premises.len() == self.sequents.len() && self.premises.iter().all(|p| p.positive)
    }
}

#[derive(Debug)]
pub struct SearchNode {
    pub sequent: Sequent,
    pub note: Note,
    pub positive: bool,
    pub groups: Vec<Group>,
}

impl SearchNode {
    /// Number of distinct nodes reachable from here.
    pub fn node_count(self: &Arc<Self>) -> usize {
        let mut seen = HashSet::new();
        let mut stack = vec![self.clone()];
        while let Some(n) = stack.pop() {
            if seen.insert(Arc::as_ptr(&n)) {
                for g in &n.groups {
                    stack.extend(g.premises.iter().cloned());
                }
            }
        }
        seen.len()
    }
}

fn axiom(s: &Sequent) -> Option<Note> {
    if s.contains(&Formula::Bot) {
        Some(Note::Axiom(RuleG4::LBot))
    } else if matches!(s.succ(), Some(p @ Formula::Atom(_)) if s.contains(p)) {
        Some(Note::Axiom(RuleG4::At))
    } else if is_extended_axiom(s) {
        Some(Note::ExtendedAxiom)
    } else {
        None
    }
}

const BRANCHING: [RuleG4; 5] = [
    RuleG4::ROr(0),
    RuleG4::ROr(1),
    RuleG4::RSLa,
    RuleG4::LImpImpA,
    RuleG4::ImpSL1,
];

fn applications(s: &Sequent, priority: &Priority) -> (Note, Vec<Instance>) {
    if let Some(note) = axiom(s) {
        return (note, Vec::new());
    }
    for rule in priority.0 {
        if let Some(inst) = instances(rule, s).into_iter().next() {
            return (Note::Reducible, vec![inst]);
        }
    }
    let all = BRANCHING.iter().flat_map(|&r| instances(r, s)).collect();
    (Note::Irreducible, all)
}

/// Backward rule instances the search would create for `s`: none for
/// axioms, one invertible instance for reducible sequents, and every
/// non-invertible instance otherwise.
pub fn backward_applications(s: &Sequent) -> Vec<Instance> {
    applications(s, &Priority::default()).1
}

struct Searcher {
    opts: SearchOptions,
    cache: HashMap<Sequent, Arc<SearchNode>>,
}

impl Searcher {
    fn node(&mut self, s: &Sequent) -> Arc<SearchNode> {
        if let Some(n) = self.cache.get(s) {
            return n.clone();
        }
        let (note, apps) = applications(s, &self.opts.priority);
        let mut groups = Vec::new();
        let mut positive = matches!(note, Note::Axiom(_) | Note::ExtendedAxiom);
        for inst in apps {
            let mut premises = Vec::new();
            for p in &inst.premises {
                let n = self.node(p);
                let neg = !n.positive;
                premises.push(n);
                if neg && !self.opts.full {
                    break;
                }
            }
            let group = Group {
                rule: inst.rule,
                principal: inst.principal,
                sequents: inst.premises,
                premises,
            };
            let good = group.positive();
            groups.push(group);
            match note {
                Note::Reducible => positive = good,
                _ => positive |= good,
            }
            if positive && !self.opts.full {
                break;
            }
        }
        let node = Arc::new(SearchNode {
            sequent: s.clone(),
            note,
            positive,
            groups,
        });
        self.cache.insert(s.clone(), node.clone());
        node
    }
}

pub fn search_with(s: &Sequent, opts: &SearchOptions) -> Arc<SearchNode> {
    let mut searcher = Searcher {
        opts: opts.clone(),
        cache: HashMap::new(),
    };
    searcher.node(s)
}

/// The full marked search tree of `s`.
pub fn search(s: &Sequent) -> Arc<SearchNode> {
    search_with(
        s,
        &SearchOptions {
            full: true,
            ..Default::default()
        },
    )
}

pub fn decide_with(s: &Sequent, priority: &Priority) -> bool {
    search_with(
        s,
        &SearchOptions {
            full: false,
            priority: priority.clone(),
        },
    )
    .positive
}

pub fn decide(s: &Sequent) -> bool {
    decide_with(s, &Priority::default())
}

/// Every parent/child pair in the (shared) search tree, each once.
pub fn search_edges(root: &Arc<SearchNode>) -> Vec<(Sequent, Sequent)> {
    let mut seen = HashSet::new();
    let mut stack = vec![root.clone()];
    let mut out = Vec::new();
    while let Some(n) = stack.pop() {
        if !seen.insert(Arc::as_ptr(&n)) {
            continue;
        }
        for g in &n.groups {
            for p in &g.premises {
                out.push((n.sequent.clone(), p.sequent.clone()));
                stack.push(p.clone());
            }
        }
    }
    out
}
