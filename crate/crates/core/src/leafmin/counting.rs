//! The degree-sum certificate for a five-leaf tree no catalog move applies to.
//!
//! Every neighbor of a leaf lies in the tree, and the blocked catalog
//! entries bound how often each tree vertex can be counted. Summing those
//! bounds over the parts of the decomposition gives `d(U) ≤ |V(T)| − 2`,
//! so the five leaves are a light independent set.

use crate::certificate::Certificate;
use crate::decompose::{CaseDecomposition, Skeleton};
use crate::error::SolveError;
use crate::graph::Vertex;
use crate::tree::SpanningTree;

fn breach<T>(msg: String) -> Result<T, SolveError> {
    Err(SolveError::InternalInvariantBreach(msg))
}

/// Builds and checks the low-degree-sum witness `U = {u_1, .., u_5}`.
///
/// Each per-part inequality is checked individually so a failure names
/// the part that broke; a breach means the catalog missed a move.
pub fn counting_certificate(
    tree: &SpanningTree<'_>,
    d: &CaseDecomposition,
) -> Result<Certificate, SolveError> {
    let g = tree.host();
    let leaves = d.leaves.to_vec();
    if !g.is_independent(&leaves) {
        return breach("counting: tree leaves are not independent".into());
    }
    if let Some(&u) = leaves
        .iter()
        .find(|&&u| g.neighbors(u).any(|w| !tree.contains(w)))
    {
        return breach(format!(
            "counting: leaf {u} has a neighbor outside the tree"
        ));
    }
    let hits = |x: Vertex| d.leaf_mask(tree, x).count_ones() as usize;
    let hits_in = |part: &[Vertex]| part.iter().map(|&x| hits(x)).sum::<usize>();

    let slack = match d.skeleton {
        Skeleton::One { s, t } => {
            for i in 0..5 {
                let own = usize::from(g.has_edge(s, d.leaves[i]));
                let reserve = usize::from(i >= 3);
                let need = reserve + hits_in(&d.blocks[i]) + own;
                if d.blocks[i].len() < need {
                    return breach(format!(
                        "counting: branch set {i} has {} vertices but {need} leaf incidences",
                        d.blocks[i].len()
                    ));
                }
            }
            let need = hits(t) + hits_in(&d.spine);
            if d.spine_path.len() < need {
                return breach(format!(
                    "counting: spine path has {} vertices but {need} leaf incidences",
                    d.spine_path.len()
                ));
            }
            2
        }
        Skeleton::Three { s, w, t } => {
            for i in 0..5 {
                let need = 1 + hits_in(&d.blocks[i]);
                if d.blocks[i].len() < need {
                    return breach(format!(
                        "counting: branch set {i} has {} vertices but {need} leaf incidences",
                        d.blocks[i].len()
                    ));
                }
            }
            let need = (hits(s) + hits(w) + hits(t) + hits_in(&d.spine)).saturating_sub(2);
            if d.spine_path.len() < need {
                return breach(format!(
                    "counting: spine path has {} vertices but {need} leaf incidences",
                    d.spine_path.len()
                ));
            }
            3
        }
        Skeleton::Two { .. } => {
            return breach("counting: a single-hub tree always has a move".into())
        }
    };

    let degree_sum = g.degree_sum(leaves.iter().copied());
    if degree_sum + slack > tree.order() {
        return breach(format!(
            "counting: leaf degree sum {degree_sum} exceeds {} - {slack}",
            tree.order()
        ));
    }
    Ok(Certificate::low_sigma(g, leaves))
}
