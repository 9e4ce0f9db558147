//! The move catalog for five-leaf trees whose leaves have no neighbors
//! outside the tree.
//!
//! Entries are scanned in a fixed order per case; within an entry,
//! candidate vertices ascend by index. Later entries may assume that
//! earlier ones did not fire: the induced stars they emit are independent
//! only because of that. Stars are still verified before they are
//! returned, and an unverifiable one lets the scan continue.

use crate::certificate::{Certificate, InducedStar};
use crate::decompose::{CaseDecomposition, Skeleton};
use crate::graph::{Graph, Vertex};
use crate::tree::{Edge, Exchange, SpanningTree};

use super::{ClaimTag, Move, Outcome};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FindResult {
    Move(Move),
    Certificate {
        tag: ClaimTag,
        certificate: Certificate,
    },
    /// No catalog entry fires.
    Exhausted,
}

/// First applicable catalog entry for the decomposed five-leaf `tree`.
pub fn find_move(tree: &SpanningTree<'_>, decomposition: &CaseDecomposition) -> FindResult {
    let scan = Scan::new(tree, decomposition);
    let found = match decomposition.skeleton {
        Skeleton::One { s, t } => scan.case_one(s, t),
        Skeleton::Two { r } => scan.case_two(r),
        Skeleton::Three { s, w, t } => scan.case_three(s, w, t),
    };
    match found {
        Some(Found::Move(exchange)) => FindResult::Move(Move::new(exchange)),
        Some(Found::Star(tag, star)) => FindResult::Certificate {
            tag,
            certificate: Certificate::InducedStarFound(star),
        },
        None => FindResult::Exhausted,
    }
}

enum Found {
    Move(Exchange),
    Star(ClaimTag, InducedStar),
}

const HUB: [usize; 3] = [0, 1, 2];
const FAR: [usize; 2] = [3, 4];

struct Scan<'a, 'g> {
    g: &'g Graph,
    tree: &'a SpanningTree<'g>,
    d: &'a CaseDecomposition,
    /// Per host vertex, bit `i` set iff adjacent to `u_i`.
    mask: Vec<u8>,
    /// Branch sets with members in ascending index.
    sorted_blocks: [Vec<Vertex>; 5],
    sorted_spine: Vec<Vertex>,
}

fn bits(mask: u8) -> impl Iterator<Item = usize> {
    (0..5).filter(move |&i| mask & (1 << i) != 0)
}

fn exchange(tag: ClaimTag, outcome: Outcome, removed: &[Edge], added: &[Edge]) -> Option<Found> {
    Some(Found::Move(Exchange::new(tag, outcome, removed, added)))
}

impl<'a, 'g> Scan<'a, 'g> {
    fn new(tree: &'a SpanningTree<'g>, d: &'a CaseDecomposition) -> Self {
        let g = tree.host();
        let mask = (0..g.n()).map(|x| d.leaf_mask(tree, x)).collect();
        let sorted_blocks = d.blocks.clone().map(|mut b| {
            b.sort_unstable();
            b
        });
        let mut sorted_spine = d.spine.clone();
        sorted_spine.sort_unstable();
        Scan {
            g,
            tree,
            d,
            mask,
            sorted_blocks,
            sorted_spine,
        }
    }

    #[inline]
    fn adj(&self, a: Vertex, b: Vertex) -> bool {
        self.g.has_edge(a, b)
    }

    #[inline]
    fn u(&self, i: usize) -> Vertex {
        self.d.leaves[i]
    }

    #[inline]
    fn v(&self, i: usize) -> Vertex {
        self.d.anchors[i]
    }

    /// The tree edge `v_i v_i⁻` joining branch set `i` to its branch vertex.
    #[inline]
    fn anchor_edge(&self, i: usize) -> Edge {
        (self.d.anchors[i], self.d.attach[i])
    }

    #[inline]
    fn sees(&self, x: Vertex, i: usize) -> bool {
        self.mask[x] & (1 << i) != 0
    }

    fn interior(&self, x: Vertex, i: usize) -> bool {
        x != self.u(i) && x != self.v(i)
    }

    /// Emits an induced star if it verifies.
    fn star(&self, tag: ClaimTag, center: Vertex, leaves: Vec<Vertex>) -> Option<Found> {
        let star = InducedStar::new(center, leaves);
        (star.leaves.len() == 5 && star.verify(self.g).is_ok()).then_some(Found::Star(tag, star))
    }

    fn leaves_seen_by(&self, x: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        bits(self.mask[x]).map(|i| self.u(i))
    }

    // Shared by Cases One and Three.

    /// `x ∈ N(u_j) ∩ B_i` with `x ∈ {u_i, v_i}`: hang `B_i` from `u_j`.
    fn block_end_to_leaf(&self, tag: ClaimTag) -> Option<Found> {
        for i in 0..5 {
            for &x in &self.sorted_blocks[i] {
                if self.interior(x, i) {
                    continue;
                }
                if let Some(j) = bits(self.mask[x]).find(|&j| j != i) {
                    return exchange(
                        tag,
                        Outcome::FourLeaf,
                        &[self.anchor_edge(i)],
                        &[(x, self.u(j))],
                    );
                }
            }
        }
        None
    }

    /// `x ∈ N(u_j) ∩ B_i` and `x⁻ u_k ∈ E` for some `k ≠ j`.
    fn predecessor_pair(&self, tag: ClaimTag) -> Option<Found> {
        for i in 0..5 {
            for &x in &self.sorted_blocks[i] {
                if !self.interior(x, i) {
                    continue;
                }
                let xm = self.d.pred(x)?;
                for j in bits(self.mask[x]).filter(|&j| j != i) {
                    if let Some(k) = bits(self.mask[xm]).find(|&k| k != j) {
                        return exchange(
                            tag,
                            Outcome::FourLeaf,
                            &[self.anchor_edge(i), (x, xm)],
                            &[(x, self.u(j)), (xm, self.u(k))],
                        );
                    }
                }
            }
        }
        None
    }

    // Case One.

    fn case_one(&self, s: Vertex, t: Vertex) -> Option<Found> {
        self.block_end_to_leaf(ClaimTag::BlockEndToLeaf)
            .or_else(|| self.predecessor_pair(ClaimTag::PredecessorPair))
            .or_else(|| self.common_neighbor_star())
            .or_else(|| self.spine_to_far_leaf(t))
            .or_else(|| self.spine_double_hub_leaf(s))
            .or_else(|| self.hub_successor_to_leaf(s))
            .or_else(|| self.hub_to_far_leaf(s, t))
            .or_else(|| self.far_hub_to_hub_leaf(s, t))
            .or_else(|| self.four_neighbor(s, t))
            .or_else(|| self.foreign_triple())
            .or_else(|| self.far_block_to_hub_leaf())
            .or_else(|| self.twin_triple(s))
            .or_else(|| self.leaf_anchor_chord(s))
            .or_else(|| self.hub_leaf_chord(s, t))
    }

    fn common_neighbor_star(&self) -> Option<Found> {
        (0..self.g.n())
            .filter(|&x| self.mask[x] == 0b11111)
            .find_map(|x| self.star(ClaimTag::CommonNeighborStar, x, self.d.leaves.to_vec()))
    }

    /// `x ∈ P` adjacent to a leaf at `t`: move that branch set onto `x`.
    fn spine_to_far_leaf(&self, t: Vertex) -> Option<Found> {
        for &x in &self.sorted_spine {
            if let Some(i) = FAR.into_iter().find(|&i| self.sees(x, i)) {
                return exchange(
                    ClaimTag::SpineToFarLeaf,
                    Outcome::ShorterSpine,
                    &[(t, self.v(i))],
                    &[(x, self.u(i))],
                );
            }
        }
        None
    }

    /// `x ∈ P` adjacent to two leaves at `s`: `x` takes over as the hub.
    fn spine_double_hub_leaf(&self, s: Vertex) -> Option<Found> {
        for &x in &self.sorted_spine {
            let mut hub = HUB.into_iter().filter(|&j| self.sees(x, j));
            if let (Some(j), Some(k)) = (hub.next(), hub.next()) {
                return exchange(
                    ClaimTag::SpineDoubleHubLeaf,
                    Outcome::ShorterSpine,
                    &[(s, self.v(j)), (s, self.v(k))],
                    &[(x, self.u(j)), (x, self.u(k))],
                );
            }
        }
        None
    }

    fn hub_successor_to_leaf(&self, s: Vertex) -> Option<Found> {
        let sp = self.d.spine_first()?;
        let i = HUB.into_iter().find(|&i| self.sees(sp, i))?;
        exchange(
            ClaimTag::HubSuccessorToLeaf,
            Outcome::FourLeaf,
            &[(s, sp)],
            &[(sp, self.u(i))],
        )
    }

    /// `s u_i ∈ E` for a leaf `u_i` at `t`.
    fn hub_to_far_leaf(&self, s: Vertex, t: Vertex) -> Option<Found> {
        for i in FAR.into_iter().filter(|&i| self.sees(s, i)) {
            let ui = self.u(i);
            if self.d.spine.is_empty() {
                return exchange(
                    ClaimTag::HubToFarLeafAdjacent,
                    Outcome::FourLeaf,
                    &[(s, t)],
                    &[(s, ui)],
                );
            }
            let sp = self.d.s_plus()?;
            if let Some(j) = HUB.into_iter().find(|&j| self.adj(sp, self.v(j))) {
                return exchange(
                    ClaimTag::HubToFarLeafViaSuccessor,
                    Outcome::FourLeaf,
                    &[(s, sp), (s, self.v(j))],
                    &[(s, ui), (sp, self.v(j))],
                );
            }
            for (j, k) in [(0, 1), (0, 2), (1, 2)] {
                if self.adj(self.v(j), self.v(k)) {
                    return exchange(
                        ClaimTag::HubToFarLeafAnchorChord,
                        Outcome::ShorterSpine,
                        &[(s, self.v(j)), (t, self.v(i))],
                        &[(s, ui), (self.v(j), self.v(k))],
                    );
                }
            }
            let leaves = vec![sp, ui, self.v(0), self.v(1), self.v(2)];
            if let Some(found) = self.star(ClaimTag::HubToFarLeafStar, s, leaves) {
                return Some(found);
            }
        }
        None
    }

    fn far_hub_to_hub_leaf(&self, s: Vertex, t: Vertex) -> Option<Found> {
        if !self.d.spine.is_empty() {
            return None;
        }
        let j = HUB.into_iter().find(|&j| self.sees(t, j))?;
        exchange(
            ClaimTag::FarHubToHubLeaf,
            Outcome::FourLeaf,
            &[(s, t)],
            &[(t, self.u(j))],
        )
    }

    /// A vertex adjacent to exactly four leaves.
    fn four_neighbor(&self, s: Vertex, t: Vertex) -> Option<Found> {
        for x in (0..self.g.n()).filter(|&x| self.mask[x].count_ones() == 4) {
            if self.d.block_of(x).is_some() {
                let mut leaves: Vec<Vertex> = self.leaves_seen_by(x).collect();
                leaves.push(self.d.pred(x)?);
                if let Some(found) = self.star(ClaimTag::FourNeighborBlockStar, x, leaves) {
                    return Some(found);
                }
            } else if x == t {
                let tm = self.d.t_minus()?;
                if tm == s {
                    continue;
                }
                for j in HUB.into_iter().filter(|&j| self.sees(tm, j)) {
                    if let Some(k) = HUB.into_iter().find(|&k| k != j && self.sees(t, k)) {
                        return exchange(
                            ClaimTag::FourNeighborFarHub,
                            Outcome::FourLeaf,
                            &[(s, self.v(j)), (t, tm)],
                            &[(t, self.u(k)), (tm, self.u(j))],
                        );
                    }
                }
                let mut leaves: Vec<Vertex> = self.leaves_seen_by(t).collect();
                leaves.push(tm);
                if let Some(found) = self.star(ClaimTag::FourNeighborFarHubStar, t, leaves) {
                    return Some(found);
                }
            }
        }
        None
    }

    /// `x ∈ B_i` adjacent to three leaves, none of them `u_i`.
    fn foreign_triple(&self) -> Option<Found> {
        for i in 0..5 {
            for &x in &self.sorted_blocks[i] {
                let m = self.mask[x];
                if m.count_ones() != 3 || self.sees(x, i) || !self.interior(x, i) {
                    continue;
                }
                let (Some(xm), Some(xp)) = (self.d.pred(x), self.d.succ(x)) else {
                    continue;
                };
                let mut others = bits(m);
                let (j, k) = (others.next()?, others.next()?);
                if self.adj(xm, xp) {
                    return exchange(
                        ClaimTag::ForeignTripleBypass,
                        Outcome::FourLeaf,
                        &[self.anchor_edge(j), (x, xm), (x, xp)],
                        &[(x, self.u(j)), (x, self.u(k)), (xm, xp)],
                    );
                }
                let mut leaves: Vec<Vertex> = self.leaves_seen_by(x).collect();
                leaves.extend([xm, xp]);
                if let Some(found) = self.star(ClaimTag::ForeignTripleStar, x, leaves) {
                    return Some(found);
                }
            }
        }
        None
    }

    /// `x ∈ B_i` at `t` adjacent to `u_j` at `s`: move the tail of `B_i`
    /// beyond `x` into `B_j`.
    fn far_block_to_hub_leaf(&self) -> Option<Found> {
        for i in FAR {
            for &x in &self.sorted_blocks[i] {
                if x == self.v(i) {
                    continue;
                }
                if let Some(j) = HUB.into_iter().find(|&j| self.sees(x, j)) {
                    let xm = self.d.pred(x)?;
                    return exchange(
                        ClaimTag::FarBlockToHubLeaf,
                        Outcome::LargerHubBlocks,
                        &[(x, xm)],
                        &[(x, self.u(j))],
                    );
                }
            }
        }
        None
    }

    /// Members of `B_i` adjacent to `u_i` and two other leaves, in path
    /// order from `v_i`.
    fn own_triples(&self, i: usize) -> impl Iterator<Item = Vertex> + '_ {
        self.d.blocks[i].iter().copied().filter(move |&x| {
            self.mask[x].count_ones() == 3 && self.sees(x, i) && self.interior(x, i)
        })
    }

    /// Two members of `B_i` (`i` at `s`) each adjacent to `u_i` and two
    /// more leaves.
    fn twin_triple(&self, s: Vertex) -> Option<Found> {
        for i in HUB {
            let mut triples = self.own_triples(i);
            let (Some(x), Some(y)) = (triples.next(), triples.next()) else {
                continue;
            };
            let (Some(xm), Some(xp), Some(ym), Some(yp)) = (
                self.d.pred(x),
                self.d.succ(x),
                self.d.pred(y),
                self.d.succ(y),
            ) else {
                continue;
            };
            let others = |z: Vertex| bits(self.mask[z]).filter(move |&j| j != i);
            let Some((j, k)) = others(x).find_map(|j| others(y).find(|&k| k != j).map(|k| (j, k)))
            else {
                continue;
            };
            let (ui, uj, uk, vi) = (self.u(i), self.u(j), self.u(k), self.v(i));
            if self.adj(xm, xp) {
                return exchange(
                    ClaimTag::TwinTripleBypass,
                    Outcome::FourLeaf,
                    &[(s, vi), (x, xm), (x, xp), (y, yp)],
                    &[(x, ui), (x, uj), (xm, xp), (y, uk)],
                );
            }
            if xp != y && self.adj(xp, ui) {
                return exchange(
                    ClaimTag::TwinTripleSuccessor,
                    Outcome::FourLeaf,
                    &[(s, vi), (x, xp), (y, ym)],
                    &[(x, uj), (xp, ui), (y, uk)],
                );
            }
            let mut leaves: Vec<Vertex> = self.leaves_seen_by(x).collect();
            leaves.extend([xm, xp]);
            if let Some(found) = self.star(ClaimTag::TwinTripleStar, x, leaves) {
                return Some(found);
            }
        }
        None
    }

    fn leaf_anchor_chord(&self, s: Vertex) -> Option<Found> {
        for i in HUB {
            let (ui, vi) = (self.u(i), self.v(i));
            if !self.adj(ui, vi) {
                continue;
            }
            let mut triples: Vec<Vertex> = self.own_triples(i).collect();
            triples.sort_unstable();
            if let Some(&x) = triples.first() {
                let j = bits(self.mask[x]).find(|&j| j != i)?;
                let xm = self.d.pred(x)?;
                return exchange(
                    ClaimTag::LeafAnchorChord,
                    Outcome::FourLeaf,
                    &[(s, vi), (x, xm)],
                    &[(ui, vi), (x, self.u(j))],
                );
            }
        }
        None
    }

    /// `s u_i ∈ E` for `i` at `s` while `B_i` holds a triple-neighbor `x`
    /// of `u_i`: a cascade of exchanges, then the star at `s`.
    fn hub_leaf_chord(&self, s: Vertex, t: Vertex) -> Option<Found> {
        for i in HUB.into_iter().filter(|&i| self.sees(s, i)) {
            let mut triples: Vec<Vertex> = self.own_triples(i).collect();
            triples.sort_unstable();
            let Some(&x) = triples.first() else {
                continue;
            };
            let (ui, vi) = (self.u(i), self.v(i));
            let siblings: Vec<usize> = HUB.into_iter().filter(|&m| m != i).collect();
            let (j, k) = (siblings[0], siblings[1]);
            let (vj, vk) = (self.v(j), self.v(k));
            let xm = self.d.pred(x)?;

            for m in [j, k] {
                if self.adj(vi, self.v(m)) {
                    return exchange(
                        ClaimTag::HubLeafAnchorChord,
                        Outcome::FourLeaf,
                        &[(s, vi), (s, self.v(m))],
                        &[(s, ui), (vi, self.v(m))],
                    );
                }
            }

            let far = FAR.into_iter().find(|&q| self.sees(x, q));
            if self.adj(vj, vk) {
                if let Some(m) = [j, k].into_iter().find(|&m| self.sees(x, m)) {
                    return exchange(
                        ClaimTag::HubLeafSiblingChord,
                        Outcome::FourLeaf,
                        &[(s, vj), (s, vk)],
                        &[(vj, vk), (x, self.u(m))],
                    );
                }
                if let (Some(q), Some(tm)) = (far, self.d.t_minus()) {
                    let outcome = if self.d.spine.is_empty() {
                        Outcome::FourLeaf
                    } else {
                        Outcome::ShorterSpine
                    };
                    return exchange(
                        ClaimTag::HubLeafSiblingChordFar,
                        outcome,
                        &[(s, vj), (t, tm), (x, xm)],
                        &[(s, ui), (vj, vk), (x, self.u(q))],
                    );
                }
            }

            // `s⁺ u_i ∈ E` was already taken by `hub_successor_to_leaf` or,
            // with `s⁺ = t`, by `far_hub_to_hub_leaf`.
            let sp = self.d.s_plus()?;
            if self.adj(sp, vi) {
                return exchange(
                    ClaimTag::HubLeafSuccessorAnchor,
                    Outcome::FourLeaf,
                    &[(s, sp), (s, vi)],
                    &[(s, ui), (sp, vi)],
                );
            }
            for m in [j, k] {
                let vm = self.v(m);
                if !self.adj(sp, vm) {
                    continue;
                }
                if let Some(q) = far {
                    return exchange(
                        ClaimTag::HubLeafSuccessorSibling,
                        Outcome::FourLeaf,
                        &[(s, sp), (s, vm)],
                        &[(sp, vm), (x, self.u(q))],
                    );
                }
                if let Some(xp) = self.d.succ(x) {
                    if self.sees(x, j) && self.sees(x, k) {
                        return exchange(
                            ClaimTag::HubLeafSuccessorSiblingSplit,
                            Outcome::FourLeaf,
                            &[(s, sp), (s, vm), (x, xm), (x, xp)],
                            &[(s, ui), (sp, vm), (x, self.u(j)), (x, self.u(k))],
                        );
                    }
                }
            }

            let leaves = vec![sp, ui, self.v(0), self.v(1), self.v(2)];
            if let Some(found) = self.star(ClaimTag::HubLeafStar, s, leaves) {
                return Some(found);
            }
        }
        None
    }

    // Case Two.

    /// Two tree-neighbors of `r` adjacent in the host. Removing `r a` and
    /// adding `a b` drops a leaf when `b` is a leaf, and otherwise makes
    /// `b` a second branch vertex.
    fn case_two(&self, r: Vertex) -> Option<Found> {
        let anchors = self.d.anchors;
        for &a in &anchors {
            for &b in &anchors {
                if a != b && self.tree.degree(b) == 1 && self.adj(a, b) {
                    return exchange(
                        ClaimTag::HubAnchorChord,
                        Outcome::FourLeaf,
                        &[(r, a)],
                        &[(a, b)],
                    );
                }
            }
        }
        for (ia, &a) in anchors.iter().enumerate() {
            for &b in &anchors[ia + 1..] {
                if self.adj(a, b) {
                    return exchange(
                        ClaimTag::HubAnchorChord,
                        Outcome::CaseShift,
                        &[(r, a)],
                        &[(a, b)],
                    );
                }
            }
        }
        self.star(ClaimTag::HubAnchorStar, r, anchors.to_vec())
    }

    // Case Three: s owns sets 0, 1; t owns 2, 3; w owns 4.

    fn case_three(&self, s: Vertex, w: Vertex, t: Vertex) -> Option<Found> {
        self.block_end_to_leaf(ClaimTag::TripleBlockEndToLeaf)
            .or_else(|| self.predecessor_pair(ClaimTag::TriplePredecessorPair))
            .or_else(|| self.triple_spine_to_leaf())
            .or_else(|| self.triple_outer_leaf_to_middle(s, w, t))
            .or_else(|| self.triple_middle_leaf_to_outer(s, w, t))
            .or_else(|| self.triple_double_neighbor())
    }

    /// `x ∈ P` adjacent to a leaf at `s` or `t`: that leaf's branch set
    /// moves onto `x`, pulling the outer branch vertex inward.
    fn triple_spine_to_leaf(&self) -> Option<Found> {
        for &x in &self.sorted_spine {
            if let Some(i) = (0..4).find(|&i| self.sees(x, i)) {
                return exchange(
                    ClaimTag::TripleSpineToLeaf,
                    Outcome::ShorterOuterSpine,
                    &[self.anchor_edge(i)],
                    &[(x, self.u(i))],
                );
            }
        }
        None
    }

    fn triple_outer_leaf_to_middle(&self, s: Vertex, w: Vertex, t: Vertex) -> Option<Found> {
        let tag = ClaimTag::TripleOuterLeafToMiddle;
        for (group, home, targets) in [([0, 1], s, [w, t]), ([2, 3], t, [s, w])] {
            for i in group {
                if let Some(&b) = targets.iter().find(|&&b| self.sees(b, i)) {
                    return exchange(
                        tag,
                        Outcome::CaseShift,
                        &[(home, self.v(i))],
                        &[(b, self.u(i))],
                    );
                }
            }
        }
        None
    }

    fn triple_middle_leaf_to_outer(&self, s: Vertex, w: Vertex, t: Vertex) -> Option<Found> {
        let &b = [s, t].iter().find(|&&b| self.sees(b, 4))?;
        exchange(
            ClaimTag::TripleMiddleLeafToOuter,
            Outcome::CaseShift,
            &[(w, self.v(4))],
            &[(b, self.u(4))],
        )
    }

    /// `x ∈ B_i` adjacent to `u_j, u_k` (`j, k ≠ i`): `x` becomes a degree-4
    /// hub after detaching `B_i` and `B_j` from distinct branch vertices.
    fn triple_double_neighbor(&self) -> Option<Found> {
        for i in 0..5 {
            for &x in &self.sorted_blocks[i] {
                let others = self.mask[x] & !(1 << i);
                if others.count_ones() < 2 || !self.interior(x, i) {
                    continue;
                }
                let Some(j) = bits(others).find(|&j| self.d.attach[j] != self.d.attach[i]) else {
                    continue;
                };
                let Some(k) = bits(others).find(|&k| k != j) else {
                    continue;
                };
                return exchange(
                    ClaimTag::TripleDoubleNeighbor,
                    Outcome::CaseShift,
                    &[self.anchor_edge(i), self.anchor_edge(j)],
                    &[(x, self.u(j)), (x, self.u(k))],
                );
            }
        }
        None
    }
}
