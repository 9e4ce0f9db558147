mod common;

use leafspan::certificate::Certificate;
use leafspan::decompose::{decompose, CaseId, Skeleton};
use leafspan::graph::{is_connected, parse_edge_list, write_edge_list, Graph};
use leafspan::hypothesis::{find_induced_star, hypotheses_hold, sigma_k, DegreeSum};
use leafspan::leafmin::{solve_with, ClaimTag, Outcome, Solution, SolveOptions};
use leafspan::oracle::{brute_force_sigma, labeled_graph};
use leafspan::tree::{Exchange, SpanningTree};
use leafspan::{encode_graph6, parse_graph6, TreeError};
use proptest::prelude::*;

fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        (Just(n), prop::collection::vec(any::<bool>(), pairs)).prop_map(|(n, bits)| {
            let mut g = Graph::new(n);
            let mut it = bits.into_iter();
            for v in 1..n {
                for u in 0..v {
                    if it.next().unwrap() {
                        g.add_edge(u, v).unwrap();
                    }
                }
            }
            g
        })
    })
}

/// Random labeled tree on `n` vertices from a Prüfer sequence.
fn prufer_tree(n: usize, seq: &[usize]) -> Vec<(usize, usize)> {
    if n == 1 {
        return vec![];
    }
    let mut degree = vec![1; n];
    for &x in seq {
        degree[x] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for &x in seq {
        let leaf = (0..n).find(|&v| degree[v] == 1).unwrap();
        edges.push((leaf, x));
        degree[leaf] -= 1;
        degree[x] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    edges.push((rest[0], rest[1]));
    edges
}

/// Some vertex with five pairwise non-adjacent neighbors, by subset scan.
fn has_induced_star_brute(g: &Graph) -> bool {
    (0..g.n()).any(|c| {
        let nbrs: Vec<usize> = g.neighbors(c).collect();
        let m = nbrs.len();
        (0u32..1 << m)
            .filter(|mask| mask.count_ones() == 5)
            .any(|mask| {
                let pick: Vec<usize> = (0..m)
                    .filter(|i| mask >> i & 1 == 1)
                    .map(|i| nbrs[i])
                    .collect();
                g.is_independent(&pick)
            })
    })
}

fn tree_on(max_n: usize) -> impl Strategy<Value = (usize, Vec<(usize, usize)>)> {
    (2..=max_n).prop_flat_map(|n| {
        prop::collection::vec(0..n, n - 2).prop_map(move |seq| (n, prufer_tree(n, &seq)))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn graph6_round_trip(g in graph(14)) {
        let text = encode_graph6(&g).unwrap();
        prop_assert_eq!(parse_graph6(&text).unwrap(), g);
    }

    #[test]
    fn edge_list_round_trip_and_handshake(g in graph(12)) {
        let text = write_edge_list(g.n(), g.edges());
        let back = parse_edge_list(&text).unwrap();
        prop_assert_eq!(&back, &g);
        let degree_total: usize = (0..g.n()).map(|v| g.degree(v)).sum();
        prop_assert_eq!(degree_total, 2 * g.edge_count());
        for u in 0..g.n() {
            prop_assert!(!g.has_edge(u, u));
            for v in 0..g.n() {
                prop_assert_eq!(g.has_edge(u, v), g.has_edge(v, u));
            }
        }
    }

    #[test]
    fn sigma_matches_subset_scan(g in graph(10)) {
        for k in 1..=5 {
            let report = sigma_k(&g, k);
            prop_assert_eq!(report.value, brute_force_sigma(&g, k));
            if let Some(w) = report.witness {
                prop_assert_eq!(w.len(), k);
                prop_assert!(g.is_independent(&w));
                prop_assert_eq!(DegreeSum::Finite(g.degree_sum(w.iter().copied())), report.value);
            }
        }
    }

    #[test]
    fn sigma_monotone_in_k(g in graph(8)) {
        for k in 1..5 {
            let (a, b) = (brute_force_sigma(&g, k), brute_force_sigma(&g, k + 1));
            prop_assert!(a <= b);
            prop_assert!(sigma_k(&g, k).value <= sigma_k(&g, k + 1).value);
        }
    }

    #[test]
    fn sigma_monotone_under_edge_addition(g in graph(10), u in 0usize..10, v in 0usize..10) {
        let (u, v) = (u % g.n(), v % g.n());
        prop_assume!(u != v);
        let h = g.with_edge(u, v).unwrap();
        prop_assert!(sigma_k(&g, 5).value <= sigma_k(&h, 5).value);
    }

    #[test]
    fn induced_star_verifies_or_none_exists(g in graph(9)) {
        match find_induced_star(&g, 5) {
            Some(star) => prop_assert!(star.verify(&g).is_ok()),
            None => prop_assert!(!has_induced_star_brute(&g)),
        }
    }

    #[test]
    fn tree_paths_reverse(t in tree_on(12), a in 0usize..12, b in 0usize..12) {
        let (n, edges) = t;
        let host = Graph::from_edges(n, edges.iter().copied()).unwrap();
        let tree = SpanningTree::from_edges(&host, edges).unwrap();
        let (a, b) = (a % n, b % n);
        let mut back = tree.path(b, a);
        back.reverse();
        prop_assert_eq!(tree.path(a, b), back);
        let excess: usize = tree.branch_vertices().iter().map(|&v| tree.degree(v) - 2).sum();
        prop_assert_eq!(excess + 2, tree.leaf_count());
    }

    #[test]
    fn random_exchanges_validate(
        t in tree_on(10),
        chords in prop::collection::vec((0usize..10, 0usize..10), 0..12),
        pick in prop::collection::vec((0usize..64, 0usize..64), 1..3),
    ) {
        let (n, edges) = t;
        let mut host = Graph::from_edges(n, edges.iter().copied()).unwrap();
        for (a, b) in chords {
            if a % n != b % n {
                host.add_edge(a % n, b % n).unwrap();
            }
        }
        let tree = SpanningTree::from_edges(&host, edges.iter().copied()).unwrap();
        let host_edges: Vec<_> = host.edges().collect();
        let removed: Vec<_> = pick.iter().map(|&(r, _)| edges[r % edges.len()]).collect();
        let added: Vec<_> = pick.iter().map(|&(_, a)| host_edges[a % host_edges.len()]).collect();
        let x = Exchange::new(ClaimTag::HubAnchorChord, Outcome::CaseShift, &removed, &added);
        match tree.apply(&x) {
            Ok(next) => {
                // a returned tree is a genuine spanning tree of the host
                prop_assert!(next.is_spanning());
                prop_assert_eq!(next.edge_count(), n - 1);
                let rebuilt = SpanningTree::from_edges(&host, next.edges()).unwrap();
                prop_assert_eq!(&rebuilt, &next);
                let g = Graph::from_edges(n, next.edges()).unwrap();
                prop_assert!(is_connected(&g).is_connected());
            }
            Err(e) => prop_assert!(matches!(e, TreeError::ExchangeInvalid(_))),
        }
    }

    #[test]
    fn cut_exchanges_always_apply(t in tree_on(10), r in 0usize..64, a in 0usize..10, b in 0usize..10) {
        let (n, edges) = t;
        let host = Graph::complete(n);
        let tree = SpanningTree::from_edges(&host, edges.iter().copied()).unwrap();
        let (x, y) = edges[r % edges.len()];
        // the side of the cut containing x once xy is removed
        let side: Vec<usize> = (0..n).filter(|&v| !tree.path(x, v).contains(&y)).collect();
        let other: Vec<usize> = (0..n).filter(|v| !side.contains(v)).collect();
        let added = (side[a % side.len()], other[b % other.len()]);
        let xch = Exchange::new(ClaimTag::HubAnchorChord, Outcome::CaseShift, &[(x, y)], &[added]);
        let result = tree.apply(&xch);
        if (added.0.min(added.1), added.0.max(added.1)) == (x.min(y), x.max(y)) {
            // re-adding the removed edge is rejected
            prop_assert!(result.is_err());
        } else {
            let next = result.unwrap();
            prop_assert!(next.is_spanning() && next.has_edge(added.0, added.1) && !next.has_edge(x, y));
        }
    }

    #[test]
    fn solve_output_verifies(g in graph(9)) {
        let report = solve_with(&g, SolveOptions { trace: true }).unwrap();
        for r in &report.trace {
            prop_assert!(r.after < r.before);
        }
        match &report.solution {
            Solution::Tree(t) => {
                prop_assert!(t.is_spanning());
                prop_assert!(t.leaf_count() <= 4);
                prop_assert!(t.branch_vertices().len() <= 2);
            }
            Solution::Refuted(c) => {
                prop_assert!(c.verify(&g).is_ok());
                prop_assert!(!hypotheses_hold(&g).holds());
                match c {
                    Certificate::LowSigmaWitness { .. } => {
                        prop_assert!(!sigma_k(&g, 5).value.at_least(g.n() - 1));
                    }
                    Certificate::InducedStarFound(_) => prop_assert!(find_induced_star(&g, 5).is_some()),
                    Certificate::Disconnected { .. } => prop_assert!(!is_connected(&g).is_connected()),
                }
            }
        }
    }
}

/// Every labeled tree on at most 7 vertices with five leaves decomposes,
/// and the pieces partition the vertex set as the case requires.
#[test]
fn decompose_is_total_on_small_trees() {
    let mut checked = 0;
    for n in 6usize..=7 {
        let total = n.pow(n as u32 - 2);
        for code in 0..total {
            let mut seq = Vec::with_capacity(n - 2);
            let mut c = code;
            for _ in 0..n - 2 {
                seq.push(c % n);
                c /= n;
            }
            let edges = prufer_tree(n, &seq);
            let host = Graph::from_edges(n, edges.iter().copied()).unwrap();
            let tree = SpanningTree::from_edges(&host, edges).unwrap();
            if tree.leaf_count() != 5 {
                assert!(decompose(&tree).is_err());
                continue;
            }
            let d = decompose(&tree).unwrap();
            checked += 1;
            let mut owner = vec![0u8; n];
            let branches = tree.branch_vertices();
            for &b in &branches {
                owner[b] += 1;
            }
            for (i, block) in d.blocks.iter().enumerate() {
                assert_eq!(block.first(), Some(&d.anchors[i]));
                assert_eq!(block.last(), Some(&d.leaves[i]));
                assert_eq!(tree.degree(d.leaves[i]), 1);
                assert!(tree.has_edge(d.anchors[i], d.attach[i]));
                assert!(branches.contains(&d.attach[i]));
                for w in block.windows(2) {
                    assert!(tree.has_edge(w[0], w[1]));
                }
                for &x in block {
                    owner[x] += 1;
                    assert_eq!(d.block_of(x), Some(i));
                }
            }
            for &x in &d.spine {
                owner[x] += 1;
                assert_eq!(tree.degree(x), 2);
            }
            assert!(owner.iter().all(|&c| c == 1), "{:?}", tree.edges());
            match d.skeleton {
                Skeleton::One { s, t } => {
                    assert_eq!((tree.degree(s), tree.degree(t)), (4, 3));
                    assert!(
                        d.attach[..3].iter().all(|&a| a == s)
                            && d.attach[3..].iter().all(|&a| a == t)
                    );
                    assert_eq!(d.case(), CaseId::One);
                }
                Skeleton::Two { r } => assert!(d.attach.iter().all(|&a| a == r)),
                Skeleton::Three { s, w, t } => {
                    assert!(s < t);
                    assert_eq!(&d.attach, &[s, s, t, t, w]);
                    assert!(d.spine_path.contains(&w));
                }
            }
        }
    }
    assert!(checked > 0);
}

#[test]
fn sigma_agrees_on_every_graph_of_order_six() {
    for index in 0..1u64 << 15 {
        let g = labeled_graph(6, index);
        assert_eq!(
            sigma_k(&g, 5).value,
            brute_force_sigma(&g, 5),
            "{}",
            encode_graph6(&g).unwrap()
        );
    }
}

#[test]
fn long_form_graph6_file() {
    let text = include_str!("data/cycle70.g6");
    let g = parse_graph6(text).unwrap();
    assert_eq!(g.n(), 70);
    assert_eq!(g.edge_count(), 70);
    assert_eq!(g, common::cycle(70));
    assert_eq!(encode_graph6(&g).unwrap(), text.trim());
}
