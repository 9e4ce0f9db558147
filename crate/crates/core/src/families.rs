//! Instance generators: the sharpness family and random graphs repaired
//! until they satisfy the theorem's hypotheses.

use rand::seq::{IndexedRandom, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::GenerationError;
use crate::graph::{component_of, Graph, Vertex, VertexSet};
use crate::hypothesis::{find_induced_star, hypotheses_hold, sigma_k, DegreeSum};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SharpnessParams {
    pub m: usize,
}

impl SharpnessParams {
    pub fn order(&self) -> usize {
        5 * self.m + 2
    }
}

/// Five disjoint `K_m` blocks `D₁..D₅` on consecutive indices, a hub
/// `x = 5m` joined to `D₁ ∪ D₂ ∪ D₃`, a hub `y = 5m + 1` joined to
/// `D₄ ∪ D₅`, and the edge `xy`.
///
/// Connected and `K_{1,5}`-free with `σ₅ = 5m = n − 2`, yet every spanning
/// tree has at least five leaves.
pub fn sharpness_graph(m: usize) -> Graph {
    assert!(m >= 1, "block size must be at least 1");
    let params = SharpnessParams { m };
    let (x, y) = (5 * m, 5 * m + 1);
    let mut g = Graph::new(params.order());
    let mut join = |u: Vertex, v: Vertex| {
        g.add_edge(u, v).expect("sharpness edges are in range");
    };
    for block in 0..5 {
        let base = block * m;
        for a in base..base + m {
            for b in a + 1..base + m {
                join(a, b);
            }
            join(a, if block < 3 { x } else { y });
        }
    }
    join(x, y);
    g
}

const RESAMPLES: usize = 32;

/// A connected `K_{1,5}`-free graph with `σ₅ ≥ n − 1`, verified before it
/// is returned. Deterministic in `(n, seed)`.
///
/// Each attempt samples `G(n, p)` for a random density, bridges its
/// components, then repairs: an induced `K_{1,5}` gets an edge between two
/// of its leaves; a light independent 5-set gets an edge from its cheapest
/// member to a random non-neighbor. Both repairs only add edges.
pub fn random_theorem_instance(n: usize, seed: u64) -> Result<Graph, GenerationError> {
    if n < 6 {
        return Err(GenerationError::TooSmall { n, min: 6 });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let repair_budget = n * n;
    for _ in 0..RESAMPLES {
        let p = rng.random_range(0.1..0.6);
        let mut g = random_connected(n, p, &mut rng);
        for _ in 0..repair_budget {
            if let Some(star) = find_induced_star(&g, 5) {
                let pair: Vec<_> = star.leaves.choose_multiple(&mut rng, 2).copied().collect();
                g.add_edge(pair[0], pair[1])
                    .expect("star leaves are distinct vertices");
                continue;
            }
            let sigma = sigma_k(&g, 5);
            match sigma.value {
                DegreeSum::Finite(v) if v + 1 < n => {
                    let witness = sigma.witness.expect("finite sigma has a witness");
                    let cheapest = *witness
                        .iter()
                        .min_by_key(|&&v| (g.degree(v), v))
                        .expect("nonempty witness");
                    let options: Vec<Vertex> = (0..n)
                        .filter(|&w| w != cheapest && !g.has_edge(cheapest, w))
                        .collect();
                    let &target = options
                        .choose(&mut rng)
                        .expect("a vertex of a light set has non-neighbors");
                    g.add_edge(cheapest, target).expect("fresh edge");
                }
                _ => break,
            }
        }
        if hypotheses_hold(&g).holds() {
            return Ok(g);
        }
    }
    Err(GenerationError::GenerationFailed {
        n,
        attempts: RESAMPLES,
    })
}

/// `G(n, p)` with components chained together by one random edge each.
pub fn random_connected<R: Rng>(n: usize, p: f64, rng: &mut R) -> Graph {
    let mut g = Graph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(p) {
                g.add_edge(u, v).expect("in range");
            }
        }
    }
    let mut seen = VertexSet::new(n);
    let mut components: Vec<Vec<Vertex>> = Vec::new();
    for v in 0..n {
        if !seen.contains(v) {
            let comp = component_of(&g, v);
            seen.union_with(&comp);
            components.push(comp.to_vec());
        }
    }
    components.shuffle(rng);
    for pair in components.windows(2) {
        let a = *pair[0].choose(rng).expect("nonempty component");
        let b = *pair[1].choose(rng).expect("nonempty component");
        g.add_edge(a, b).expect("distinct components");
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::is_connected;

    #[test]
    fn sharpness_m1_degrees() {
        let g = sharpness_graph(1);
        assert_eq!(g.n(), 7);
        assert_eq!(&g.degrees()[..5], &[1, 1, 1, 1, 1]);
        assert_eq!(g.degree(5), 4);
        assert_eq!(g.degree(6), 3);
        assert_eq!(sigma_k(&g, 5).value, DegreeSum::Finite(5));
    }

    #[test]
    fn sharpness_m2_shape() {
        let g = sharpness_graph(2);
        assert_eq!(g.n(), 12);
        assert!(is_connected(&g).is_connected());
        assert!(find_induced_star(&g, 5).is_none());
        // 5 block edges + 6 x-edges + 4 y-edges + xy
        assert_eq!(g.edge_count(), 16);
    }

    #[test]
    fn random_instances_verify_and_repeat() {
        for seed in 0..5 {
            let g = random_theorem_instance(9, seed).unwrap();
            assert!(hypotheses_hold(&g).holds());
            assert_eq!(g, random_theorem_instance(9, seed).unwrap());
        }
    }

    #[test]
    fn too_small() {
        assert!(matches!(
            random_theorem_instance(5, 0),
            Err(GenerationError::TooSmall { .. })
        ));
    }
}
