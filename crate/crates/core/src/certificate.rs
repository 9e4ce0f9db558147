//! Verifiable evidence that a graph violates the theorem's hypotheses.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, Vertex, VertexSet};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("invalid certificate: {0}")]
pub struct InvalidCertificate(pub String);

fn invalid<T>(msg: impl Into<String>) -> Result<T, InvalidCertificate> {
    Err(InvalidCertificate(msg.into()))
}

/// An induced `K_{1,r}`: `center` adjacent to every leaf, leaves pairwise
/// non-adjacent.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct InducedStar {
    pub center: Vertex,
    pub leaves: Vec<Vertex>,
}

impl InducedStar {
    pub fn new(center: Vertex, mut leaves: Vec<Vertex>) -> Self {
        leaves.sort_unstable();
        InducedStar { center, leaves }
    }

    pub fn verify(&self, g: &Graph) -> Result<(), InvalidCertificate> {
        let n = g.n();
        if self.center >= n || self.leaves.iter().any(|&v| v >= n) {
            return invalid("star vertex out of range");
        }
        if self.leaves.contains(&self.center) {
            return invalid(format!("center {} listed as a leaf", self.center));
        }
        if let Some(&v) = self.leaves.iter().find(|&&v| !g.has_edge(self.center, v)) {
            return invalid(format!("leaf {v} not adjacent to center {}", self.center));
        }
        if !g.is_independent(&self.leaves) {
            return invalid(format!(
                "leaves {:?} are not pairwise non-adjacent and distinct",
                self.leaves
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    /// An induced `K_{1,5}`.
    InducedStarFound(InducedStar),
    /// Five pairwise non-adjacent vertices whose degrees sum to at most
    /// `n − 2`, so `σ₅(G) ≤ n − 2`.
    LowSigmaWitness {
        vertices: Vec<Vertex>,
        degree_sum: usize,
    },
    /// A proper nonempty vertex set with no edges leaving it.
    Disconnected { component: Vec<Vertex> },
}

impl Certificate {
    pub fn low_sigma(g: &Graph, mut vertices: Vec<Vertex>) -> Self {
        vertices.sort_unstable();
        let degree_sum = g.degree_sum(vertices.iter().copied());
        Certificate::LowSigmaWitness {
            vertices,
            degree_sum,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Certificate::InducedStarFound(_) => "induced_star_found",
            Certificate::LowSigmaWitness { .. } => "low_sigma_witness",
            Certificate::Disconnected { .. } => "disconnected",
        }
    }

    pub fn verify(&self, g: &Graph) -> Result<(), InvalidCertificate> {
        let n = g.n();
        match self {
            Certificate::InducedStarFound(star) => {
                if star.leaves.len() != 5 {
                    return invalid(format!("star has {} leaves, expected 5", star.leaves.len()));
                }
                star.verify(g)
            }
            Certificate::LowSigmaWitness {
                vertices,
                degree_sum,
            } => {
                if vertices.len() != 5 || vertices.iter().any(|&v| v >= n) {
                    return invalid(format!(
                        "witness {vertices:?} is not five vertices of the graph"
                    ));
                }
                if !g.is_independent(vertices) {
                    return invalid(format!("witness {vertices:?} is not independent"));
                }
                let actual = g.degree_sum(vertices.iter().copied());
                if actual != *degree_sum {
                    return invalid(format!("declared degree sum {degree_sum}, actual {actual}"));
                }
                if actual + 2 > n {
                    return invalid(format!(
                        "degree sum {actual} exceeds n - 2 = {}",
                        n as i64 - 2
                    ));
                }
                Ok(())
            }
            Certificate::Disconnected { component } => {
                if component.is_empty() || component.len() >= n || component.iter().any(|&v| v >= n)
                {
                    return invalid("component must be a proper nonempty vertex subset");
                }
                let set = VertexSet::from_vertices(n, component.iter().copied());
                if set.len() != component.len() {
                    return invalid("component lists a vertex twice");
                }
                for &v in component {
                    if let Some(w) = g.neighbors(v).find(|&w| !set.contains(w)) {
                        return invalid(format!("edge {v}-{w} leaves the component"));
                    }
                }
                Ok(())
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn star5() -> Graph {
        Graph::from_edges(6, (1..6).map(|v| (0, v))).unwrap()
    }

    #[test]
    fn star_checks() {
        let g = star5();
        assert!(InducedStar::new(0, vec![1, 2, 3, 4, 5]).verify(&g).is_ok());
        assert!(InducedStar::new(1, vec![0]).verify(&g).is_ok());
        assert!(InducedStar::new(0, vec![1, 1]).verify(&g).is_err());
        assert!(InducedStar::new(1, vec![2]).verify(&g).is_err());
        let chord = g.with_edge(1, 2).unwrap();
        assert!(InducedStar::new(0, vec![1, 2, 3, 4, 5])
            .verify(&chord)
            .is_err());
    }

    #[test]
    fn low_sigma_checks() {
        let g = star5();
        // n = 6 so the bound is 4; the five leaves sum to 5.
        let cert = Certificate::low_sigma(&g, vec![5, 4, 3, 2, 1]);
        assert!(cert.verify(&g).is_err());
        let mut big = Graph::new(8);
        for v in 1..6 {
            big.add_edge(0, v).unwrap();
        }
        big.add_edge(6, 7).unwrap();
        assert!(Certificate::low_sigma(&big, vec![1, 2, 3, 4, 5])
            .verify(&big)
            .is_ok());
        let lying = Certificate::LowSigmaWitness {
            vertices: vec![1, 2, 3, 4, 5],
            degree_sum: 4,
        };
        assert!(lying.verify(&big).is_err());
    }

    #[test]
    fn disconnected_checks() {
        let g = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        assert!(Certificate::Disconnected {
            component: vec![0, 1]
        }
        .verify(&g)
        .is_ok());
        assert!(Certificate::Disconnected { component: vec![0] }
            .verify(&g)
            .is_err());
        assert!(Certificate::Disconnected {
            component: vec![0, 1, 2, 3]
        }
        .verify(&g)
        .is_err());
    }
}
