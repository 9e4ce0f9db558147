//! The solver. Starting from one vertex it grows a tree, and whenever a
//! non-growable five-leaf tree appears it looks up an exchange in the move
//! catalog. Every accepted move strictly lowers a lexicographic potential,
//! so the loop terminates with either a spanning tree of at most four
//! leaves or a certificate that the hypotheses fail.

mod catalog;
mod counting;

use std::fmt;

use serde::{Deserialize, Serialize};

pub use catalog::{find_move, FindResult};
pub use counting::counting_certificate;

pub use crate::certificate::Certificate;
use crate::decompose::{decompose, CaseDecomposition, CaseId};
use crate::error::SolveError;
use crate::graph::{is_connected, Connectivity, Graph};
use crate::tree::{Edge, Exchange, SpanningTree};

/// What applying a move is declared to achieve.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    /// At most four leaves on the same vertex set.
    FourLeaf,
    /// One more vertex.
    Grow,
    /// Case One tree with a shorter `s`–`t` path.
    ShorterSpine,
    /// Case One tree, same `s`–`t` distance, more vertices in the branch
    /// sets at `s`.
    LargerHubBlocks,
    /// Case Three tree with a shorter path between the outer branch vertices.
    ShorterOuterSpine,
    /// Case Two or Three tree turned into a Case One tree.
    CaseShift,
}

impl Outcome {
    /// The potential component this outcome strictly decreases.
    pub fn component(self) -> PotentialComponent {
        match self {
            Outcome::Grow => PotentialComponent::Missing,
            Outcome::FourLeaf => PotentialComponent::LeafExcess,
            Outcome::CaseShift => PotentialComponent::CaseRank,
            Outcome::ShorterSpine | Outcome::ShorterOuterSpine => PotentialComponent::Spine,
            Outcome::LargerHubBlocks => PotentialComponent::HubDeficit,
        }
    }
}

macro_rules! claim_tags {
    ($($(#[$doc:meta])* $variant:ident => $name:literal,)*) => {
        /// Move-catalog entries. Each names one trigger/exchange pair (or
        /// one induced-star endgame) of the catalog scan.
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
        #[serde(rename_all = "snake_case")]
        pub enum ClaimTag {
            $($(#[$doc])* $variant,)*
        }

        impl ClaimTag {
            pub const ALL: &'static [ClaimTag] = &[$(ClaimTag::$variant,)*];

            pub fn name(self) -> &'static str {
                match self {
                    $(ClaimTag::$variant => $name,)*
                }
            }

            pub fn from_name(name: &str) -> Option<ClaimTag> {
                match name {
                    $($name => Some(ClaimTag::$variant),)*
                    _ => None,
                }
            }
        }
    };
}

claim_tags! {
    /// Attach one more vertex to the tree.
    Grow => "grow",
    // Case One: s of degree 4 owns branch sets 0..3, t of degree 3 owns 3..5.
    /// A leaf is adjacent to the anchor or leaf of another branch set.
    BlockEndToLeaf => "block_end_to_leaf",
    /// `x ∈ N(u_j) ∩ B_i` whose predecessor sees another leaf.
    PredecessorPair => "predecessor_pair",
    /// A vertex adjacent to all five leaves.
    CommonNeighborStar => "common_neighbor_star",
    /// A spine vertex adjacent to a leaf at `t`.
    SpineToFarLeaf => "spine_to_far_leaf",
    /// A spine vertex adjacent to two leaves at `s`.
    SpineDoubleHubLeaf => "spine_double_hub_leaf",
    /// `s⁺` adjacent to a leaf at `s`.
    HubSuccessorToLeaf => "hub_successor_to_leaf",
    /// `s` adjacent to a leaf at `t`, with `s` and `t` adjacent.
    HubToFarLeafAdjacent => "hub_to_far_leaf_adjacent",
    /// `s` adjacent to a leaf at `t`, `s⁺` adjacent to an anchor at `s`.
    HubToFarLeafViaSuccessor => "hub_to_far_leaf_via_successor",
    /// `s` adjacent to a leaf at `t`, two anchors at `s` adjacent.
    HubToFarLeafAnchorChord => "hub_to_far_leaf_anchor_chord",
    /// `s` adjacent to a leaf at `t` and nothing else fires.
    HubToFarLeafStar => "hub_to_far_leaf_star",
    /// `t` adjacent to a leaf at `s`, with `s` and `t` adjacent.
    FarHubToHubLeaf => "far_hub_to_hub_leaf",
    /// A branch-set vertex adjacent to four leaves.
    FourNeighborBlockStar => "four_neighbor_block_star",
    /// `t` adjacent to four leaves and `t⁻` adjacent to a leaf at `s`.
    FourNeighborFarHub => "four_neighbor_far_hub",
    /// `t` adjacent to four leaves and nothing else fires.
    FourNeighborFarHubStar => "four_neighbor_far_hub_star",
    /// `x ∈ B_i` adjacent to three leaves other than `u_i`, `x⁻x⁺ ∈ E`.
    ForeignTripleBypass => "foreign_triple_bypass",
    /// `x ∈ B_i` adjacent to three leaves other than `u_i`, `x⁻x⁺ ∉ E`.
    ForeignTripleStar => "foreign_triple_star",
    /// A vertex of a branch set at `t` adjacent to a leaf at `s`.
    FarBlockToHubLeaf => "far_block_to_hub_leaf",
    /// Two triple-neighbors of `u_i` in `B_i`, `x⁻x⁺ ∈ E`.
    TwinTripleBypass => "twin_triple_bypass",
    /// Two triple-neighbors of `u_i` in `B_i`, `x⁺u_i ∈ E`.
    TwinTripleSuccessor => "twin_triple_successor",
    /// Two triple-neighbors of `u_i` in `B_i` and nothing else fires.
    TwinTripleStar => "twin_triple_star",
    /// `u_i v_i ∈ E` and a triple-neighbor of `u_i` in `B_i`.
    LeafAnchorChord => "leaf_anchor_chord",
    /// `s u_i ∈ E`, triple-neighbor in `B_i`, `v_i` adjacent to a sibling anchor.
    HubLeafAnchorChord => "hub_leaf_anchor_chord",
    /// `s u_i ∈ E`, sibling anchors adjacent, `x` sees a sibling leaf.
    HubLeafSiblingChord => "hub_leaf_sibling_chord",
    /// `s u_i ∈ E`, sibling anchors adjacent, `x` sees a leaf at `t`.
    HubLeafSiblingChordFar => "hub_leaf_sibling_chord_far",
    /// `s u_i ∈ E` and `s⁺ v_i ∈ E`.
    HubLeafSuccessorAnchor => "hub_leaf_successor_anchor",
    /// `s u_i ∈ E`, `s⁺` adjacent to a sibling anchor, `x` sees a leaf at `t`.
    HubLeafSuccessorSibling => "hub_leaf_successor_sibling",
    /// `s u_i ∈ E`, `s⁺` adjacent to a sibling anchor, `x` sees both siblings.
    HubLeafSuccessorSiblingSplit => "hub_leaf_successor_sibling_split",
    /// `s u_i ∈ E` with a triple-neighbor in `B_i` and nothing else fires.
    HubLeafStar => "hub_leaf_star",
    // Case Two: r of degree 5.
    /// Two neighbors of `r` adjacent in the host.
    HubAnchorChord => "hub_anchor_chord",
    /// Neighbors of `r` pairwise non-adjacent.
    HubAnchorStar => "hub_anchor_star",
    // Case Three: s owns 0..2, t owns 2..4, w owns 4.
    /// As `block_end_to_leaf`, three branch vertices.
    TripleBlockEndToLeaf => "triple_block_end_to_leaf",
    /// As `predecessor_pair`, three branch vertices.
    TriplePredecessorPair => "triple_predecessor_pair",
    /// A spine vertex adjacent to a leaf at `s` or `t`.
    TripleSpineToLeaf => "triple_spine_to_leaf",
    /// A leaf at `s` (or `t`) adjacent to `w` or the opposite end.
    TripleOuterLeafToMiddle => "triple_outer_leaf_to_middle",
    /// The leaf at `w` adjacent to `s` or `t`.
    TripleMiddleLeafToOuter => "triple_middle_leaf_to_outer",
    /// `x ∈ B_i` adjacent to two leaves other than `u_i`.
    TripleDoubleNeighbor => "triple_double_neighbor",
}

impl fmt::Display for ClaimTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PotentialComponent {
    Missing,
    LeafExcess,
    CaseRank,
    Spine,
    HubDeficit,
}

/// Lexicographic descent potential; field order is comparison order.
///
/// `spine` is `d_T[s, t]` in Cases One and Three; `hub_deficit` is
/// `n − Σ_{i<3} |B_i|` in Case One. Both are zero otherwise.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Potential {
    pub missing: usize,
    pub leaf_excess: usize,
    pub case_rank: u8,
    pub spine: usize,
    pub hub_deficit: usize,
}

impl Potential {
    /// `decomposition` must be given exactly when the tree has five leaves.
    pub fn of(tree: &SpanningTree<'_>, decomposition: Option<&CaseDecomposition>) -> Self {
        let n = tree.host().n();
        let mut phi = Potential {
            missing: n - tree.order(),
            leaf_excess: tree.leaf_count().saturating_sub(4),
            case_rank: 0,
            spine: 0,
            hub_deficit: 0,
        };
        if let Some(d) = decomposition {
            match d.case() {
                CaseId::One => {
                    phi.spine = d.spine_length();
                    phi.hub_deficit = n - d.hub_block_total();
                }
                CaseId::Two => phi.case_rank = 1,
                CaseId::Three => {
                    phi.case_rank = 2;
                    phi.spine = d.spine_length();
                }
            }
        }
        phi
    }
}

impl fmt::Display for Potential {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}, {}, {}, {}, {})",
            self.missing, self.leaf_excess, self.case_rank, self.spine, self.hub_deficit
        )
    }
}

/// An exchange together with the potential component it must lower.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Move {
    pub exchange: Exchange,
    pub claim_tag: ClaimTag,
    pub expected_drop: PotentialComponent,
}

impl Move {
    pub fn new(exchange: Exchange) -> Self {
        Move {
            claim_tag: exchange.justification,
            expected_drop: exchange.declared_outcome.component(),
            exchange,
        }
    }
}

/// One accepted move.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceRecord {
    pub step: u64,
    pub claim_tag: ClaimTag,
    pub removed: Vec<Edge>,
    pub added: Vec<Edge>,
    pub before: Potential,
    pub after: Potential,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Solution<'g> {
    Tree(SpanningTree<'g>),
    Refuted(Certificate),
}

impl Solution<'_> {
    pub fn is_tree(&self) -> bool {
        matches!(self, Solution::Tree(_))
    }
}

#[derive(Debug, Clone)]
pub struct SolveReport<'g> {
    pub solution: Solution<'g>,
    /// Catalog entry that produced the certificate, if any.
    pub certificate_tag: Option<ClaimTag>,
    pub moves: u64,
    pub trace: Vec<TraceRecord>,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct SolveOptions {
    pub trace: bool,
}

/// Accepted-move limit: a loose multiple of the descent bound.
pub fn iteration_limit(n: usize) -> u64 {
    64 * (n as u64).pow(3)
}

/// A spanning tree with at most four leaves, or a verified certificate.
pub fn solve(g: &Graph) -> Result<Solution<'_>, SolveError> {
    solve_with(g, SolveOptions::default()).map(|r| r.solution)
}

pub fn solve_with(g: &Graph, options: SolveOptions) -> Result<SolveReport<'_>, SolveError> {
    let n = g.n();
    if n == 0 {
        return Err(SolveError::InternalInvariantBreach("empty graph".into()));
    }
    let mut report = SolveReport {
        solution: Solution::Refuted(Certificate::Disconnected {
            component: Vec::new(),
        }),
        certificate_tag: None,
        moves: 0,
        trace: Vec::new(),
    };
    if let Connectivity::Disconnected { component } = is_connected(g) {
        report.solution = Solution::Refuted(Certificate::Disconnected { component });
        return Ok(report);
    }
    let limit = iteration_limit(n);
    let mut tree = SpanningTree::singleton(g, 0);
    let mut decomposition: Option<CaseDecomposition> = None;
    loop {
        if tree.is_spanning() && tree.leaf_count() <= 4 {
            report.solution = Solution::Tree(tree);
            return Ok(report);
        }
        let grown = if tree.is_spanning() {
            None
        } else {
            grow_step(&tree)
        };
        let mv = match grown {
            Some(mv) => mv,
            None => {
                let d = decomposition.as_ref().ok_or_else(|| {
                    SolveError::InternalInvariantBreach(format!(
                        "tree with {} leaves on {} of {n} vertices cannot grow",
                        tree.leaf_count(),
                        tree.order()
                    ))
                })?;
                match find_move(&tree, d) {
                    FindResult::Move(mv) => mv,
                    FindResult::Certificate { tag, certificate } => {
                        certificate.verify(g).map_err(|e| {
                            SolveError::InternalInvariantBreach(format!("{tag}: {e}"))
                        })?;
                        report.certificate_tag = Some(tag);
                        report.solution = Solution::Refuted(certificate);
                        return Ok(report);
                    }
                    FindResult::Exhausted => {
                        let certificate = counting_certificate(&tree, d)?;
                        report.solution = Solution::Refuted(certificate);
                        return Ok(report);
                    }
                }
            }
        };

        let before = Potential::of(&tree, decomposition.as_ref());
        let next = tree.apply(&mv.exchange)?;
        let next_decomposition = if next.leaf_count() == 5 {
            Some(decompose(&next)?)
        } else {
            None
        };
        let after = Potential::of(&next, next_decomposition.as_ref());
        check_outcome(&mv, decomposition.as_ref(), next_decomposition.as_ref())?;
        if after >= before {
            return Err(SolveError::InternalInvariantBreach(format!(
                "{}: potential {before} did not drop (now {after})",
                mv.claim_tag
            )));
        }
        report.moves += 1;
        if report.moves > limit {
            return Err(SolveError::IterationGuardExceeded {
                moves: report.moves,
                limit,
            });
        }
        if options.trace {
            report.trace.push(TraceRecord {
                step: report.moves,
                claim_tag: mv.claim_tag,
                removed: mv.exchange.removed.clone(),
                added: mv.exchange.added.clone(),
                before,
                after,
            });
        }
        tree = next;
        decomposition = next_decomposition;
    }
}

/// Checks a declared improvement class against both decompositions.
fn check_outcome(
    mv: &Move,
    before: Option<&CaseDecomposition>,
    after: Option<&CaseDecomposition>,
) -> Result<(), SolveError> {
    let ok = match mv.exchange.declared_outcome {
        // checked by `SpanningTree::apply`
        Outcome::FourLeaf | Outcome::Grow => true,
        Outcome::ShorterSpine => matches!(
            (before, after),
            (Some(b), Some(a)) if b.case() == CaseId::One && a.case() == CaseId::One
                && a.spine_length() < b.spine_length()
        ),
        Outcome::LargerHubBlocks => matches!(
            (before, after),
            (Some(b), Some(a)) if b.case() == CaseId::One && a.case() == CaseId::One
                && a.spine_length() == b.spine_length()
                && a.hub_block_total() > b.hub_block_total()
        ),
        Outcome::ShorterOuterSpine => matches!(
            (before, after),
            (Some(b), Some(a)) if b.case() == CaseId::Three && a.case() == CaseId::Three
                && a.spine_length() < b.spine_length()
        ),
        Outcome::CaseShift => matches!(
            (before, after),
            (Some(b), Some(a)) if b.case() != CaseId::One && a.case() == CaseId::One
        ),
    };
    if ok {
        Ok(())
    } else {
        Err(SolveError::InternalInvariantBreach(format!(
            "{}: declared outcome {:?} not achieved",
            mv.claim_tag, mv.exchange.declared_outcome
        )))
    }
}

/// Attaches one outside vertex.
///
/// With at most four leaves any tree vertex may take the new neighbor
/// (leaves are tried first, so the leaf count is kept when possible). With
/// five leaves only a leaf may, which keeps five leaves; `None` then means
/// every leaf's neighborhood already lies inside the tree.
pub fn grow_step(tree: &SpanningTree<'_>) -> Option<Move> {
    let g = tree.host();
    let leaves = tree.leaves();
    let attach = |v| g.neighbors(v).find(|&w| !tree.contains(w)).map(|w| (v, w));
    let found = leaves.iter().find_map(|&v| attach(v)).or_else(|| {
        if leaves.len() >= 5 {
            None
        } else {
            tree.vertices().iter().find_map(attach)
        }
    })?;
    Some(Move::new(Exchange::new(
        ClaimTag::Grow,
        Outcome::Grow,
        &[],
        &[found],
    )))
}
