#![allow(dead_code)]

use leafspan::decompose::{decompose, CaseId};
use leafspan::graph::Graph;
use leafspan::leafmin::{find_move, ClaimTag, FindResult, Outcome, Potential};
use leafspan::parse_graph6;
use leafspan::tree::{Edge, SpanningTree};

pub const FIXTURES: &str = include_str!("../data/claim_fixtures.txt");

pub struct Fixture {
    pub tag: ClaimTag,
    pub graph: Graph,
    pub tree_edges: Vec<Edge>,
}

pub fn fixtures() -> Vec<Fixture> {
    FIXTURES
        .lines()
        .filter(|l| !l.trim().is_empty())
        .map(|line| {
            let mut parts = line.split_whitespace();
            let (tag, g6, edges) = (
                parts.next().unwrap(),
                parts.next().unwrap(),
                parts.next().unwrap(),
            );
            let tree_edges = edges
                .split(',')
                .map(|e| {
                    let (u, v) = e.split_once('-').unwrap();
                    (u.parse().unwrap(), v.parse().unwrap())
                })
                .collect();
            Fixture {
                tag: ClaimTag::from_name(tag).unwrap_or_else(|| panic!("unknown tag {tag}")),
                graph: parse_graph6(g6).unwrap(),
                tree_edges,
            }
        })
        .collect()
}

/// Runs the catalog on one fixture and checks the fired entry, the
/// declared outcome class, and the potential drop. Returns a failure
/// description, if any.
pub fn check_fixture(f: &Fixture) -> Result<(), String> {
    let g = &f.graph;
    if g.n() > 14 {
        return Err(format!("{} vertices", g.n()));
    }
    let tree =
        SpanningTree::from_edges(g, f.tree_edges.iter().copied()).map_err(|e| e.to_string())?;
    if !tree.is_spanning() || tree.leaf_count() != 5 {
        return Err("fixture tree is not a five-leaf spanning tree".into());
    }
    let before = decompose(&tree).map_err(|e| e.to_string())?;
    match find_move(&tree, &before) {
        FindResult::Move(mv) => {
            if mv.claim_tag != f.tag {
                return Err(format!("fired {} instead", mv.claim_tag));
            }
            let next = tree.apply(&mv.exchange).map_err(|e| e.to_string())?;
            let after = (next.leaf_count() == 5).then(|| decompose(&next).unwrap());
            let reached = match mv.exchange.declared_outcome {
                Outcome::FourLeaf => next.is_spanning() && next.leaf_count() <= 4,
                Outcome::Grow => false,
                Outcome::ShorterSpine => after.as_ref().is_some_and(|a| {
                    before.case() == CaseId::One
                        && a.case() == CaseId::One
                        && a.spine_length() < before.spine_length()
                }),
                Outcome::LargerHubBlocks => after.as_ref().is_some_and(|a| {
                    a.case() == CaseId::One
                        && a.spine_length() == before.spine_length()
                        && a.hub_block_total() > before.hub_block_total()
                }),
                Outcome::ShorterOuterSpine => after.as_ref().is_some_and(|a| {
                    before.case() == CaseId::Three
                        && a.case() == CaseId::Three
                        && a.spine_length() < before.spine_length()
                }),
                Outcome::CaseShift => after
                    .as_ref()
                    .is_some_and(|a| before.case() != CaseId::One && a.case() == CaseId::One),
            };
            if !reached {
                return Err(format!(
                    "declared {:?} not reached",
                    mv.exchange.declared_outcome
                ));
            }
            let (p0, p1) = (
                Potential::of(&tree, Some(&before)),
                Potential::of(&next, after.as_ref()),
            );
            if p1 >= p0 {
                return Err(format!("potential {p0} -> {p1}"));
            }
            Ok(())
        }
        FindResult::Certificate { tag, certificate } => {
            if tag != f.tag {
                return Err(format!("fired {tag} instead"));
            }
            certificate.verify(g).map_err(|e| e.to_string())
        }
        FindResult::Exhausted => Err("no entry fired".into()),
    }
}

pub fn path(n: usize) -> Graph {
    Graph::from_edges(n, (1..n).map(|v| (v - 1, v))).unwrap()
}

pub fn cycle(n: usize) -> Graph {
    Graph::from_edges(n, (0..n).map(|v| (v, (v + 1) % n))).unwrap()
}
