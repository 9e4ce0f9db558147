//! Ground truth for small graphs: exact minimum-leaf spanning trees by
//! enumeration, and sweeps that check the solver against it.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::OracleError;
use crate::families::random_theorem_instance;
use crate::graph::{is_connected, Graph, Vertex};
use crate::graph6::encode_graph6;
use crate::hypothesis::{hypotheses_hold, sigma_k, DegreeSum};
use crate::leafmin::{iteration_limit, solve_with, Solution, SolveOptions, SolveReport};
use crate::tree::{Edge, SpanningTree};

pub const DEFAULT_BUDGET: u64 = 10_000_000;

/// Largest order the enumerator accepts (one machine word per row).
pub const ORACLE_MAX_N: usize = 64;

#[derive(Debug, Clone)]
pub struct OracleReport<'g> {
    pub min_leaves: usize,
    pub witness: SpanningTree<'g>,
    /// Complete spanning trees visited before the search stopped.
    pub trees_enumerated: u64,
}

/// Exact minimum leaf count over all spanning trees of `g`.
///
/// Trees are grown one edge at a time from vertex 0; each frontier edge is
/// either taken or deleted, and a deletion that disconnects the remaining
/// graph is never explored. Branches whose settled leaves already match
/// the best tree are cut, and the search stops at two leaves.
pub fn min_leaf_spanning_tree(g: &Graph, budget: u64) -> Result<OracleReport<'_>, OracleError> {
    let mut search = Enumerator::new(g, budget, true)?;
    let n = g.n();
    if n == 1 {
        return Ok(OracleReport {
            min_leaves: 0,
            witness: SpanningTree::singleton(g, 0),
            trees_enumerated: 1,
        });
    }
    let finished = search.run();
    let best = search.best.take();
    match (finished, best) {
        (true, Some((min_leaves, edges))) => Ok(OracleReport {
            min_leaves,
            witness: SpanningTree::from_edges(g, edges)
                .expect("enumerated edges form a spanning tree"),
            trees_enumerated: search.trees,
        }),
        (_, best) => Err(OracleError::BudgetExceeded {
            budget,
            best_upper_bound: best.map(|(leaves, _)| leaves),
        }),
    }
}

/// Number of spanning trees of `g`, without pruning or early exit.
pub fn count_spanning_trees(g: &Graph, budget: u64) -> Result<u64, OracleError> {
    if g.n() == 1 {
        return Ok(1);
    }
    let mut search = Enumerator::new(g, budget, false)?;
    if search.run() {
        Ok(search.trees)
    } else {
        Err(OracleError::BudgetExceeded {
            budget,
            best_upper_bound: search.best.map(|(l, _)| l),
        })
    }
}

struct Enumerator {
    n: usize,
    full: u64,
    /// Host edges not yet deleted, tree edges included.
    live: Vec<u64>,
    in_tree: u64,
    tree_degree: Vec<u32>,
    edges: Vec<Edge>,
    best: Option<(usize, Vec<Edge>)>,
    trees: u64,
    budget: u64,
    prune: bool,
}

impl Enumerator {
    fn new(g: &Graph, budget: u64, prune: bool) -> Result<Self, OracleError> {
        let n = g.n();
        assert!(
            n <= ORACLE_MAX_N,
            "oracle supports at most {ORACLE_MAX_N} vertices"
        );
        if n == 0 || !is_connected(g).is_connected() {
            return Err(OracleError::Disconnected);
        }
        let live = (0..n)
            .map(|v| g.neighbors(v).fold(0u64, |m, w| m | 1 << w))
            .collect();
        Ok(Enumerator {
            n,
            full: if n == 64 { u64::MAX } else { (1u64 << n) - 1 },
            live,
            in_tree: 1,
            tree_degree: vec![0; n],
            edges: Vec::with_capacity(n - 1),
            best: None,
            trees: 0,
            budget,
            prune,
        })
    }

    fn done(&self) -> bool {
        self.prune && matches!(self.best, Some((2, _)))
    }

    /// Returns `false` if the budget ran out.
    fn run(&mut self) -> bool {
        self.extend()
    }

    /// Leaves of the partial tree that can never gain another edge.
    fn settled_leaves(&self) -> usize {
        let outside = self.full & !self.in_tree;
        (0..self.n)
            .filter(|&v| {
                self.in_tree & (1 << v) != 0
                    && self.tree_degree[v] == 1
                    && self.live[v] & outside == 0
            })
            .count()
    }

    fn live_connected(&self) -> bool {
        let mut seen = 1u64;
        let mut stack = 1u64;
        while stack != 0 {
            let v = stack.trailing_zeros() as usize;
            stack &= stack - 1;
            let fresh = self.live[v] & !seen;
            seen |= fresh;
            stack |= fresh;
        }
        seen == self.full
    }

    fn extend(&mut self) -> bool {
        if self.done() {
            return true;
        }
        if self.in_tree == self.full {
            self.trees += 1;
            let leaves = self.tree_degree.iter().filter(|&&d| d == 1).count();
            if self.best.as_ref().is_none_or(|(b, _)| leaves < *b) {
                self.best = Some((leaves, self.edges.clone()));
            }
            return self.trees < self.budget;
        }
        if self.prune {
            if let Some((b, _)) = self.best {
                if self.settled_leaves().max(2) >= b {
                    return true;
                }
            }
        }
        // first frontier edge: lowest tree vertex with a live edge outward
        let outside = self.full & !self.in_tree;
        let Some(x) =
            (0..self.n).find(|&v| self.in_tree & (1 << v) != 0 && self.live[v] & outside != 0)
        else {
            return true;
        };
        let y = (self.live[x] & outside).trailing_zeros() as usize;

        self.in_tree |= 1 << y;
        self.tree_degree[x] += 1;
        self.tree_degree[y] += 1;
        self.edges.push((x, y));
        let ok = self.extend();
        self.edges.pop();
        self.tree_degree[x] -= 1;
        self.tree_degree[y] -= 1;
        self.in_tree &= !(1 << y);
        if !ok || self.done() {
            return ok;
        }

        self.live[x] &= !(1 << y);
        self.live[y] &= !(1 << x);
        let ok = if self.live_connected() {
            self.extend()
        } else {
            true
        };
        self.live[x] |= 1 << y;
        self.live[y] |= 1 << x;
        ok
    }
}

/// `σ_k` by scanning every `k`-subset; the reference for [`sigma_k`].
pub fn brute_force_sigma(g: &Graph, k: usize) -> DegreeSum {
    fn scan(g: &Graph, k: usize, start: Vertex, chosen: &mut Vec<Vertex>, best: &mut DegreeSum) {
        if chosen.len() == k {
            if g.is_independent(chosen) {
                *best = (*best).min(DegreeSum::Finite(g.degree_sum(chosen.iter().copied())));
            }
            return;
        }
        for v in start..g.n() {
            chosen.push(v);
            scan(g, k, v + 1, chosen, best);
            chosen.pop();
        }
    }
    let mut best = DegreeSum::Infinite;
    scan(g, k, 0, &mut Vec::with_capacity(k), &mut best);
    best
}

/// Graph number `index` among the labeled graphs on `n` vertices: bit `b`
/// of `index` is the `b`-th pair in `(0,1), (0,2), (1,2), (0,3), ..` order.
pub fn labeled_graph(n: usize, index: u64) -> Graph {
    let mut g = Graph::new(n);
    let mut bit = 0;
    for v in 1..n {
        for u in 0..v {
            if index >> bit & 1 == 1 {
                g.add_edge(u, v).expect("in range");
            }
            bit += 1;
        }
    }
    g
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ViolationKind {
    /// The hypotheses hold but the solver refuted.
    RefutedUnderHypotheses,
    /// The solver returned an error.
    SolverError,
    /// The returned tree is not a spanning tree with at most four leaves.
    BadTree,
    /// The returned certificate does not verify.
    BadCertificate,
    /// The oracle disagrees with the solver or with the hypotheses.
    OracleMismatch,
    /// `sigma_k` disagrees with the subset scan.
    SigmaMismatch,
    /// A traced move did not lower the potential, or too many moves.
    PotentialDescent,
    /// The instance generator failed.
    Generation,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub kind: ViolationKind,
    pub graph6: String,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} on {}: {}", self.kind, self.graph6, self.detail)
    }
}

/// Violations kept verbatim per summary; the rest are only counted.
pub const MAX_KEPT_VIOLATIONS: usize = 64;

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepSummary {
    pub n: usize,
    pub graphs_scanned: u64,
    pub connected: u64,
    pub hypotheses_held: u64,
    /// Trees returned, over every connected graph.
    pub solver_trees: u64,
    pub solver_refutations: u64,
    /// Trees returned for graphs satisfying the hypotheses; equals
    /// `hypotheses_held` when the solver is correct.
    pub trees_under_hypotheses: u64,
    pub oracle_checked: u64,
    pub sigma_checked: u64,
    pub moves_total: u64,
    pub max_moves: u64,
    pub max_tree_leaves: usize,
    pub max_branch_vertices: usize,
    pub violation_count: u64,
    pub violations: Vec<Violation>,
}

impl SweepSummary {
    fn empty(n: usize) -> Self {
        SweepSummary {
            n,
            ..Default::default()
        }
    }

    fn violate(&mut self, kind: ViolationKind, g: &Graph, detail: impl Into<String>) {
        self.violation_count += 1;
        if self.violations.len() < MAX_KEPT_VIOLATIONS {
            self.violations.push(Violation {
                kind,
                graph6: encode_graph6(g).unwrap_or_default(),
                detail: detail.into(),
            });
        }
    }

    /// Commutative merge of counters; kept violations are concatenated.
    pub fn merge(mut self, other: SweepSummary) -> SweepSummary {
        self.graphs_scanned += other.graphs_scanned;
        self.connected += other.connected;
        self.hypotheses_held += other.hypotheses_held;
        self.solver_trees += other.solver_trees;
        self.solver_refutations += other.solver_refutations;
        self.trees_under_hypotheses += other.trees_under_hypotheses;
        self.oracle_checked += other.oracle_checked;
        self.sigma_checked += other.sigma_checked;
        self.moves_total += other.moves_total;
        self.max_moves = self.max_moves.max(other.max_moves);
        self.max_tree_leaves = self.max_tree_leaves.max(other.max_tree_leaves);
        self.max_branch_vertices = self.max_branch_vertices.max(other.max_branch_vertices);
        self.violation_count += other.violation_count;
        let room = MAX_KEPT_VIOLATIONS.saturating_sub(self.violations.len());
        self.violations
            .extend(other.violations.into_iter().take(room));
        self
    }

    pub fn is_clean(&self) -> bool {
        self.violation_count == 0
    }
}

/// Which cross-checks a sweep runs per graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SweepChecks {
    pub oracle: bool,
    pub sigma: bool,
}

impl SweepChecks {
    /// Oracle up to 12 vertices, subset scan up to 8.
    pub fn for_order(n: usize) -> Self {
        SweepChecks {
            oracle: n <= 12,
            sigma: n <= 8,
        }
    }
}

/// Runs every check on one graph and records the outcome in `summary`.
pub fn check_instance(g: &Graph, checks: SweepChecks, summary: &mut SweepSummary) {
    summary.graphs_scanned += 1;
    let n = g.n();
    if checks.sigma {
        summary.sigma_checked += 1;
        let fast = sigma_k(g, 5);
        let slow = brute_force_sigma(g, 5);
        if fast.value != slow {
            summary.violate(
                ViolationKind::SigmaMismatch,
                g,
                format!("sigma_k {} vs scan {slow}", fast.value),
            );
        }
    }
    if n == 0 || !is_connected(g).is_connected() {
        return;
    }
    summary.connected += 1;
    let verdict = hypotheses_hold(g);
    let held = verdict.holds();
    if held {
        summary.hypotheses_held += 1;
    } else if let crate::hypothesis::Verdict::Fails(certificate) = &verdict {
        if let Err(e) = certificate.verify(g) {
            summary.violate(
                ViolationKind::BadCertificate,
                g,
                format!("hypothesis witness: {e}"),
            );
        }
    }

    let report = match solve_with(g, SolveOptions { trace: true }) {
        Ok(report) => report,
        Err(e) => {
            summary.violate(ViolationKind::SolverError, g, e.to_string());
            return;
        }
    };
    check_trace(g, &report, summary);

    let solver_leaves = match &report.solution {
        Solution::Tree(tree) => {
            summary.solver_trees += 1;
            if held {
                summary.trees_under_hypotheses += 1;
            }
            let leaves = tree.leaf_count();
            let branches = tree.branch_vertices().len();
            summary.max_tree_leaves = summary.max_tree_leaves.max(leaves);
            summary.max_branch_vertices = summary.max_branch_vertices.max(branches);
            if !tree.is_spanning() || leaves > 4 || branches > 2 {
                summary.violate(
                    ViolationKind::BadTree,
                    g,
                    format!(
                        "spanning {}, {leaves} leaves, {branches} branch vertices",
                        tree.is_spanning()
                    ),
                );
            }
            Some(leaves)
        }
        Solution::Refuted(certificate) => {
            summary.solver_refutations += 1;
            if let Err(e) = certificate.verify(g) {
                summary.violate(ViolationKind::BadCertificate, g, e.to_string());
            }
            if held {
                summary.violate(
                    ViolationKind::RefutedUnderHypotheses,
                    g,
                    format!("{certificate:?}"),
                );
            }
            None
        }
    };

    if checks.oracle {
        summary.oracle_checked += 1;
        match min_leaf_spanning_tree(g, DEFAULT_BUDGET) {
            Ok(oracle) => {
                let min = oracle.min_leaves;
                if let Some(leaves) = solver_leaves {
                    if leaves < min {
                        summary.violate(
                            ViolationKind::OracleMismatch,
                            g,
                            format!("solver {leaves} < oracle {min}"),
                        );
                    }
                }
                if held && min > 4 {
                    summary.violate(
                        ViolationKind::OracleMismatch,
                        g,
                        format!("hypotheses hold, oracle min {min}"),
                    );
                }
                if held != solver_leaves.is_some() && held {
                    summary.violate(
                        ViolationKind::OracleMismatch,
                        g,
                        format!("oracle min {min} but solver refuted"),
                    );
                }
            }
            Err(e) => summary.violate(ViolationKind::OracleMismatch, g, e.to_string()),
        }
    }
}

fn check_trace(g: &Graph, report: &SolveReport<'_>, summary: &mut SweepSummary) {
    summary.moves_total += report.moves;
    summary.max_moves = summary.max_moves.max(report.moves);
    if report.moves > iteration_limit(g.n()) {
        summary.violate(
            ViolationKind::PotentialDescent,
            g,
            format!("{} moves", report.moves),
        );
    }
    if report.trace.len() as u64 != report.moves {
        summary.violate(
            ViolationKind::PotentialDescent,
            g,
            "trace length differs from move count",
        );
    }
    for (record, next) in report.trace.iter().zip(report.trace.iter().skip(1)) {
        if next.before != record.after {
            summary.violate(
                ViolationKind::PotentialDescent,
                g,
                format!("step {} does not chain", next.step),
            );
        }
    }
    if let Some(record) = report.trace.iter().find(|r| r.after >= r.before) {
        summary.violate(
            ViolationKind::PotentialDescent,
            g,
            format!(
                "step {} {}: {} -> {}",
                record.step, record.claim_tag, record.before, record.after
            ),
        );
    }
}

/// Every labeled graph on `n ≤ 8` vertices, sharded across threads.
pub fn exhaustive_sweep(n: usize) -> SweepSummary {
    exhaustive_sweep_with(
        n,
        SweepChecks {
            oracle: n <= 7,
            sigma: true,
        },
    )
}

pub fn exhaustive_sweep_with(n: usize, checks: SweepChecks) -> SweepSummary {
    assert!(n <= 8, "exhaustive sweeps stop at 8 vertices");
    let pairs = n * n.saturating_sub(1) / 2;
    let total = 1u64 << pairs;
    const SHARD: u64 = 1 << 12;
    let shards = total.div_ceil(SHARD);
    (0..shards)
        .into_par_iter()
        .map(|shard| {
            let mut summary = SweepSummary::empty(n);
            for index in shard * SHARD..((shard + 1) * SHARD).min(total) {
                check_instance(&labeled_graph(n, index), checks, &mut summary);
            }
            summary
        })
        .reduce(|| SweepSummary::empty(n), SweepSummary::merge)
}

/// Per-sample generator seeds drawn from one master seed.
pub fn sample_seeds(seed: u64, samples: usize) -> Vec<u64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..samples).map(|_| rng.random()).collect()
}

/// `samples` verified theorem instances on `n` vertices.
pub fn random_sweep(n: usize, samples: usize, seed: u64) -> SweepSummary {
    random_sweep_with(n, samples, seed, SweepChecks::for_order(n))
}

pub fn random_sweep_with(n: usize, samples: usize, seed: u64, checks: SweepChecks) -> SweepSummary {
    assert!(n <= 200, "random sweeps stop at 200 vertices");
    sample_seeds(seed, samples)
        .into_par_iter()
        .map(|sample_seed| {
            let mut summary = SweepSummary::empty(n);
            match random_theorem_instance(n, sample_seed) {
                Ok(g) => check_instance(&g, checks, &mut summary),
                Err(e) => {
                    summary.graphs_scanned += 1;
                    summary.violate(
                        ViolationKind::Generation,
                        &Graph::new(0),
                        format!("seed {sample_seed}: {e}"),
                    );
                }
            }
            summary
        })
        .reduce(|| SweepSummary::empty(n), SweepSummary::merge)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::sharpness_graph;

    fn path(n: usize) -> Graph {
        Graph::from_edges(n, (1..n).map(|v| (v - 1, v))).unwrap()
    }

    fn star(r: usize) -> Graph {
        Graph::from_edges(r + 1, (1..=r).map(|v| (0, v))).unwrap()
    }

    #[test]
    fn paths_and_stars() {
        let p = path(6);
        let report = min_leaf_spanning_tree(&p, DEFAULT_BUDGET).unwrap();
        assert_eq!(report.min_leaves, 2);
        assert_eq!(report.trees_enumerated, 1);
        assert_eq!(
            min_leaf_spanning_tree(&star(5), DEFAULT_BUDGET)
                .unwrap()
                .min_leaves,
            5
        );
    }

    #[test]
    fn cayley_counts() {
        assert_eq!(
            count_spanning_trees(&Graph::complete(4), DEFAULT_BUDGET).unwrap(),
            16
        );
        assert_eq!(
            count_spanning_trees(&Graph::complete(5), DEFAULT_BUDGET).unwrap(),
            125
        );
        assert_eq!(
            count_spanning_trees(&Graph::complete(6), DEFAULT_BUDGET).unwrap(),
            1296
        );
        // C5 has five spanning paths
        let c5 = Graph::from_edges(5, (0..5).map(|v| (v, (v + 1) % 5))).unwrap();
        assert_eq!(count_spanning_trees(&c5, DEFAULT_BUDGET).unwrap(), 5);
    }

    #[test]
    fn witness_is_optimal_tree() {
        let g = sharpness_graph(1);
        let report = min_leaf_spanning_tree(&g, DEFAULT_BUDGET).unwrap();
        assert_eq!(report.min_leaves, 5);
        assert!(report.witness.is_spanning());
        assert_eq!(report.witness.leaf_count(), 5);
    }

    #[test]
    fn budget_and_disconnection() {
        let err = min_leaf_spanning_tree(&sharpness_graph(2), 1).unwrap_err();
        assert!(matches!(
            err,
            OracleError::BudgetExceeded {
                budget: 1,
                best_upper_bound: Some(_)
            }
        ));
        assert_eq!(
            min_leaf_spanning_tree(&Graph::new(3), 10).unwrap_err(),
            OracleError::Disconnected
        );
    }

    #[test]
    fn single_vertex() {
        let g = Graph::new(1);
        assert_eq!(min_leaf_spanning_tree(&g, 1).unwrap().min_leaves, 0);
    }

    #[test]
    fn labeled_graph_indexing() {
        let g = labeled_graph(3, 0b101);
        assert!(g.has_edge(0, 1) && g.has_edge(1, 2) && !g.has_edge(0, 2));
    }

    #[test]
    fn small_sweeps_are_clean() {
        let s4 = exhaustive_sweep(4);
        assert_eq!(s4.graphs_scanned, 64);
        assert_eq!(s4.connected, 38);
        assert!(s4.is_clean(), "{:?}", s4.violations);
        let s1 = exhaustive_sweep(1);
        assert_eq!((s1.graphs_scanned, s1.solver_trees), (1, 1));
    }

    #[test]
    fn empty_random_sweep() {
        let s = random_sweep(10, 0, 7);
        assert_eq!(s, SweepSummary::empty(10));
    }
}
