//! Exact checks for the two hypotheses: `K_{1,5}`-freeness and
//! `σ₅(G) ≥ n − 1`, each with a witness on failure.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::certificate::{Certificate, InducedStar};
use crate::graph::{is_connected, Connectivity, Graph, Vertex, VertexSet};

/// First induced `K_{1,r}` in lexicographic `(center, leaves)` order.
pub fn find_induced_star(g: &Graph, r: usize) -> Option<InducedStar> {
    assert!(r >= 1, "star needs at least one leaf");
    let mut chosen = Vec::with_capacity(r);
    for center in 0..g.n() {
        if g.degree(center) < r {
            continue;
        }
        let candidates = g.neighbor_set(center);
        if independent_extension(g, &candidates, r, &mut chosen) {
            return Some(InducedStar::new(center, chosen));
        }
        chosen.clear();
    }
    None
}

/// Depth-first search for `need` more pairwise non-adjacent vertices out of
/// `candidates`, lexicographically smallest first.
fn independent_extension(
    g: &Graph,
    candidates: &VertexSet,
    need: usize,
    chosen: &mut Vec<Vertex>,
) -> bool {
    if need == 0 {
        return true;
    }
    let mut left = candidates.len();
    for v in candidates.iter() {
        if left < need {
            return false;
        }
        left -= 1;
        let mut next = candidates.clone();
        // keep only later, non-adjacent candidates
        for w in candidates.iter().take_while(|&w| w <= v) {
            next.remove(w);
        }
        for w in g.neighbors(v) {
            next.remove(w);
        }
        chosen.push(v);
        if independent_extension(g, &next, need - 1, chosen) {
            return true;
        }
        chosen.pop();
    }
    false
}

/// A degree sum that may be infinite (no independent set of that size).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DegreeSum {
    Finite(usize),
    Infinite,
}

impl DegreeSum {
    pub fn finite(self) -> Option<usize> {
        match self {
            DegreeSum::Finite(v) => Some(v),
            DegreeSum::Infinite => None,
        }
    }

    /// `self ≥ bound`, with `Infinite` above every bound.
    pub fn at_least(self, bound: usize) -> bool {
        self >= DegreeSum::Finite(bound)
    }
}

impl fmt::Display for DegreeSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DegreeSum::Finite(v) => write!(f, "{v}"),
            DegreeSum::Infinite => f.write_str("infinite"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SigmaReport {
    pub k: usize,
    pub value: DegreeSum,
    /// Sorted independent `k`-set attaining `value`; absent when infinite.
    pub witness: Option<Vec<Vertex>>,
}

/// `σ_k(G)` by branch and bound over vertices sorted by `(degree, index)`.
///
/// Because candidates are visited in ascending degree, `sum + need·d(v)`
/// lower-bounds every completion through `v` and all later candidates, so
/// the scan at a node stops at the first `v` that cannot beat the
/// incumbent.
pub fn sigma_k(g: &Graph, k: usize) -> SigmaReport {
    assert!(k >= 1, "sigma_k needs k >= 1");
    let n = g.n();
    let mut order: Vec<Vertex> = (0..n).collect();
    order.sort_by_key(|&v| (g.degree(v), v));
    let mut position = vec![0usize; n];
    for (i, &v) in order.iter().enumerate() {
        position[v] = i;
    }
    let adjacency: Vec<VertexSet> = order
        .iter()
        .map(|&v| VertexSet::from_vertices(n, g.neighbors(v).map(|w| position[w])))
        .collect();
    let degree: Vec<usize> = order.iter().map(|&v| g.degree(v)).collect();

    let mut search = SigmaSearch {
        adjacency: &adjacency,
        degree: &degree,
        best: usize::MAX,
        best_set: None,
        chosen: Vec::with_capacity(k),
    };
    search.descend(&VertexSet::full(n), k, 0);

    match search.best_set {
        Some(set) => {
            let mut witness: Vec<Vertex> = set.into_iter().map(|i| order[i]).collect();
            witness.sort_unstable();
            SigmaReport {
                k,
                value: DegreeSum::Finite(search.best),
                witness: Some(witness),
            }
        }
        None => SigmaReport {
            k,
            value: DegreeSum::Infinite,
            witness: None,
        },
    }
}

struct SigmaSearch<'a> {
    adjacency: &'a [VertexSet],
    degree: &'a [usize],
    best: usize,
    best_set: Option<Vec<usize>>,
    chosen: Vec<usize>,
}

impl SigmaSearch<'_> {
    fn descend(&mut self, candidates: &VertexSet, need: usize, sum: usize) {
        let mut left = candidates.len();
        for i in candidates.iter() {
            if left < need {
                return;
            }
            left -= 1;
            let d = self.degree[i];
            if sum + need * d >= self.best {
                return;
            }
            self.chosen.push(i);
            if need == 1 {
                self.best = sum + d;
                self.best_set = Some(self.chosen.clone());
                self.chosen.pop();
                return;
            }
            let mut next = candidates.clone();
            next.difference_with(&self.adjacency[i]);
            for j in candidates.iter().take_while(|&j| j <= i) {
                next.remove(j);
            }
            self.descend(&next, need - 1, sum + d);
            self.chosen.pop();
        }
    }
}

/// Outcome of checking the theorem's hypotheses.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verdict {
    Holds,
    Fails(Certificate),
}

impl Verdict {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }
}

/// Everything the hypothesis check computes, for reporting.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HypothesisReport {
    pub n: usize,
    pub connectivity: Connectivity,
    pub induced_star: Option<InducedStar>,
    pub sigma5: SigmaReport,
}

impl HypothesisReport {
    pub fn compute(g: &Graph) -> Self {
        HypothesisReport {
            n: g.n(),
            connectivity: is_connected(g),
            induced_star: find_induced_star(g, 5),
            sigma5: sigma_k(g, 5),
        }
    }

    pub fn sigma_bound_holds(&self) -> bool {
        self.sigma5.value.at_least(self.n.saturating_sub(1))
    }

    pub fn verdict(&self) -> Verdict {
        if let Connectivity::Disconnected { component } = &self.connectivity {
            return Verdict::Fails(Certificate::Disconnected {
                component: component.clone(),
            });
        }
        if let Some(star) = &self.induced_star {
            return Verdict::Fails(Certificate::InducedStarFound(star.clone()));
        }
        if !self.sigma_bound_holds() {
            let witness = self
                .sigma5
                .witness
                .clone()
                .expect("finite sigma has a witness");
            let degree_sum = self.sigma5.value.finite().expect("finite sigma");
            return Verdict::Fails(Certificate::LowSigmaWitness {
                vertices: witness,
                degree_sum,
            });
        }
        Verdict::Holds
    }
}

/// Connected, `K_{1,5}`-free, and `σ₅ ≥ n − 1` (infinite counts as holding).
pub fn hypotheses_hold(g: &Graph) -> Verdict {
    if let Connectivity::Disconnected { component } = is_connected(g) {
        return Verdict::Fails(Certificate::Disconnected { component });
    }
    if let Some(star) = find_induced_star(g, 5) {
        return Verdict::Fails(Certificate::InducedStarFound(star));
    }
    let sigma = sigma_k(g, 5);
    match sigma.value {
        DegreeSum::Finite(value) if value + 1 < g.n() => {
            Verdict::Fails(Certificate::LowSigmaWitness {
                vertices: sigma.witness.expect("finite sigma has a witness"),
                degree_sum: value,
            })
        }
        _ => Verdict::Holds,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::sharpness_graph;

    fn star(r: usize) -> Graph {
        Graph::from_edges(r + 1, (1..=r).map(|v| (0, v))).unwrap()
    }

    fn path(n: usize) -> Graph {
        Graph::from_edges(n, (1..n).map(|v| (v - 1, v))).unwrap()
    }

    #[test]
    fn star_found_in_star() {
        let s = find_induced_star(&star(5), 5).unwrap();
        assert_eq!(s, InducedStar::new(0, vec![1, 2, 3, 4, 5]));
    }

    #[test]
    fn no_star_in_sharpness_or_low_degree() {
        assert!(find_induced_star(&sharpness_graph(1), 5).is_none());
        assert!(find_induced_star(&sharpness_graph(2), 5).is_none());
        let cycle = Graph::from_edges(9, (0..9).map(|v| (v, (v + 1) % 9))).unwrap();
        let mut max4 = cycle.clone();
        max4.add_edge(0, 4).unwrap();
        max4.add_edge(2, 6).unwrap();
        assert!(max4.degrees().iter().all(|&d| d <= 4));
        assert!(find_induced_star(&max4, 5).is_none());
    }

    #[test]
    fn lexicographic_first_star() {
        // vertex 7 has a claw on leaves {0,1,2}; vertex 3 has one on {4,5,6}
        let g = Graph::from_edges(8, [(7, 0), (7, 1), (7, 2), (3, 4), (3, 5), (3, 6)]).unwrap();
        assert_eq!(
            find_induced_star(&g, 3),
            Some(InducedStar::new(3, vec![4, 5, 6]))
        );
    }

    #[test]
    fn sigma_examples() {
        let m2 = sigma_k(&sharpness_graph(2), 5);
        assert_eq!(m2.value, DegreeSum::Finite(10));
        assert_eq!(sigma_k(&Graph::complete(7), 5).value, DegreeSum::Infinite);
        assert_eq!(sigma_k(&Graph::complete(7), 5).witness, None);
        let s = sigma_k(&star(5), 5);
        assert_eq!(s.value, DegreeSum::Finite(5));
        assert_eq!(s.witness, Some(vec![1, 2, 3, 4, 5]));
    }

    #[test]
    fn sigma_one_is_min_degree() {
        let g = Graph::from_edges(5, [(0, 1), (0, 2), (0, 3), (1, 2), (3, 4)]).unwrap();
        assert_eq!(sigma_k(&g, 1).value, DegreeSum::Finite(1));
        assert_eq!(sigma_k(&g, 1).witness, Some(vec![4]));
    }

    #[test]
    fn verdicts() {
        assert_eq!(hypotheses_hold(&path(6)), Verdict::Holds);
        match hypotheses_hold(&sharpness_graph(1)) {
            Verdict::Fails(Certificate::LowSigmaWitness {
                vertices,
                degree_sum,
            }) => {
                assert_eq!(degree_sum, 5);
                assert_eq!(vertices, vec![0, 1, 2, 3, 4]);
            }
            other => panic!("unexpected verdict {other:?}"),
        }
        assert!(matches!(
            hypotheses_hold(&star(5)),
            Verdict::Fails(Certificate::InducedStarFound(_))
        ));
        let split = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        assert!(matches!(
            hypotheses_hold(&split),
            Verdict::Fails(Certificate::Disconnected { .. })
        ));
    }

    #[test]
    fn report_agrees_with_verdict() {
        for g in [path(6), sharpness_graph(1), star(5), Graph::complete(6)] {
            assert_eq!(HypothesisReport::compute(&g).verdict(), hypotheses_hold(&g));
        }
    }
}
