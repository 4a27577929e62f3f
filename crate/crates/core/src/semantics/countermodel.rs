use std::collections::BTreeSet;
use std::sync::Arc;

use super::{generated_submodel, KripkeModel, SemanticsError};
use crate::formula::Formula;
use crate::g4::{Note, RuleG4, SearchNode};

/// A model whose world names are relative paths; the root is "".
struct Rooted {
    model: KripkeModel,
    root: usize,
}

fn qualify(tag: &str, name: &str) -> String {
    if name.is_empty() {
        tag.to_string()
    } else {
        format!("{}.{}", tag, name)
    }
}

fn atoms_of(node: &SearchNode) -> BTreeSet<Arc<str>> {
    node.sequent
        .ante()
        .iter()
        .filter_map(|f| match f {
            Formula::Atom(p) => Some(p.clone()),
            _ => None,
        })
        .collect()
}

fn point(node: &SearchNode) -> Rooted {
    let mut model = KripkeModel::discrete(1);
    model.names[0] = String::new();
    model.val[0] = atoms_of(node);
    Rooted { model, root: 0 }
}

/// A fresh root below the given (tag, submodel, modal) parts: the root is
/// `≤` every world and `R` the roots of the modal parts, then `R` is closed
/// under transitivity and `w ≤ v R z ⇒ w R z`.
fn assemble(node: &SearchNode, parts: Vec<(String, Rooted, bool)>) -> Rooted {
    let total = 1 + parts.iter().map(|(_, p, _)| p.model.len()).sum::<usize>();
    let mut m = KripkeModel::discrete(total);
    m.names[0] = String::new();
    m.val[0] = atoms_of(node);
    let mut offset = 1;
    for (tag, part, modal) in &parts {
        let k = part.model.len();
        for i in 0..k {
            m.names[offset + i] = qualify(tag, &part.model.names[i]);
            m.val[offset + i] = part.model.val[i].clone();
            m.le[0][offset + i] = true;
            for j in 0..k {
                m.le[offset + i][offset + j] = part.model.le[i][j];
                m.r[offset + i][offset + j] = part.model.r[i][j];
            }
        }
        if *modal {
            m.r[0][offset + part.root] = true;
        }
        offset += k;
    }
    loop {
        let mut changed = false;
        for a in 0..total {
            for b in 0..total {
                for c in 0..total {
                    if !m.r[a][c] && ((m.r[a][b] && m.r[b][c]) || (m.le[a][b] && m.r[b][c])) {
                        m.r[a][c] = true;
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }
    Rooted { model: m, root: 0 }
}

fn sub(r: Rooted) -> Rooted {
    let (model, root) = generated_submodel(&r.model, r.root);
    Rooted { model, root }
}

fn build(node: &SearchNode) -> Result<Rooted, SemanticsError> {
    if node.positive {
        return Err(SemanticsError::Positive);
    }
    match node.note {
        Note::Axiom(_) | Note::ExtendedAxiom => Err(SemanticsError::Positive),
        Note::Reducible => {
            let g = &node.groups[0];
            let bad = g.premises.iter().find(|p| !p.positive).ok_or(SemanticsError::Positive)?;
            build(bad)
        }
        Note::Irreducible => {
            if node.groups.is_empty() {
                return Ok(point(node));
            }
            let incomplete = node.groups.iter().any(|g| g.premises.len() != g.sequents.len());
            if incomplete {
                return Err(SemanticsError::Invalid("search tree was pruned; run a full search".into()));
            }
            for g in &node.groups {
                if matches!(g.rule, RuleG4::LImpImpA | RuleG4::ImpSL1) && !g.premises[1].positive {
                    return build(&g.premises[1]);
                }
            }
            let mut parts = Vec::new();
            let (mut k, mut l) = (0, 0);
            for g in &node.groups {
                let part = match g.rule {
                    RuleG4::LImpImpA => {
                        k += 1;
                        (format!("k{}", k), sub(build(&g.premises[0])?), false)
                    }
                    RuleG4::ImpSL1 => {
                        l += 1;
                        (format!("l{}", l), sub(build(&g.premises[0])?), true)
                    }
                    RuleG4::RSLa => ("x".to_string(), sub(build(&g.premises[0])?), true),
                    RuleG4::ROr(i) => (format!("h{}", i + 1), sub(build(&g.premises[0])?), false),
                    _ => unreachable!("only non-invertible rules branch"),
                };
                parts.push(part);
            }
            Ok(assemble(node, parts))
        }
    }
}

/// A countermodel for the root of a negative, fully expanded search tree,
/// with the refuting world. World names are paths from the root `w`.
pub fn countermodel(root: &SearchNode) -> Result<(KripkeModel, usize), SemanticsError> {
    let Rooted { mut model, root: at } = build(root)?;
    for name in model.names.iter_mut() {
        *name = qualify("w", name);
    }
    Ok((model, at))
}
