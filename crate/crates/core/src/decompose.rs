//! Skeleton of a five-leaf tree: its branch vertices, the five branch
//! sets hanging off them, and the spine between the extreme branches.
//!
//! Degrees of the branch vertices satisfy `Σ (deg − 2) = leaves − 2 = 3`,
//! so the branch-degree multiset is `{5}`, `{4, 3}` or `{3, 3, 3}`.

use serde::{Deserialize, Serialize};

use crate::error::TreeError;
use crate::graph::Vertex;
use crate::tree::SpanningTree;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CaseId {
    /// Branch vertices `s` (degree 4) and `t` (degree 3).
    One,
    /// A single branch vertex `r` of degree 5.
    Two,
    /// Branch vertices `s`, `w`, `t` of degree 3, `w` between the others.
    Three,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Skeleton {
    One { s: Vertex, t: Vertex },
    Two { r: Vertex },
    Three { s: Vertex, w: Vertex, t: Vertex },
}

const NO_BLOCK: u8 = u8::MAX;

/// Labels follow a fixed split: in Case One, indices `0..3` hang off `s`
/// and `3..5` off `t`; in Case Three, `0..2` off `s`, `2..4` off `t`, and
/// `4` off `w`. Within a branch vertex, indices ascend with anchor vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CaseDecomposition {
    pub skeleton: Skeleton,
    /// `u_i`: the leaf of branch set `i`.
    pub leaves: [Vertex; 5],
    /// `v_i`: the vertex of branch set `i` adjacent to a branch vertex.
    pub anchors: [Vertex; 5],
    /// `v_i⁻`: the branch vertex that branch set `i` hangs from.
    pub attach: [Vertex; 5],
    /// `B_i`, ordered from `v_i` out to `u_i`.
    pub blocks: [Vec<Vertex>; 5],
    /// `P_T[s, t]` from `s` to `t`; empty in Case Two.
    pub spine_path: Vec<Vertex>,
    /// `P`: interior of the spine path minus branch vertices, in path order.
    pub spine: Vec<Vertex>,
    block_index: Vec<u8>,
    block_pos: Vec<u32>,
    spine_pos: Vec<u32>,
}

struct Walk {
    /// Vertices strictly after the branch vertex, in walk order.
    interior: Vec<Vertex>,
    /// Where the walk stopped: a leaf (last of `interior`) or a branch vertex.
    end: Vertex,
    reaches_branch: bool,
}

fn walk(tree: &SpanningTree<'_>, from: Vertex, first: Vertex) -> Walk {
    let mut interior = Vec::new();
    let (mut prev, mut cur) = (from, first);
    loop {
        match tree.degree(cur) {
            1 => {
                interior.push(cur);
                return Walk {
                    interior,
                    end: cur,
                    reaches_branch: false,
                };
            }
            2 => {
                interior.push(cur);
                let next = tree
                    .neighbors(cur)
                    .iter()
                    .copied()
                    .find(|&w| w != prev)
                    .expect("degree two");
                prev = cur;
                cur = next;
            }
            _ => {
                return Walk {
                    interior,
                    end: cur,
                    reaches_branch: true,
                }
            }
        }
    }
}

impl CaseDecomposition {
    pub fn new(tree: &SpanningTree<'_>) -> Result<Self, TreeError> {
        let leaf_count = tree.leaf_count();
        if leaf_count != 5 {
            return Err(TreeError::NotFiveLeaves(leaf_count));
        }
        let branches = tree.branch_vertices();
        let mut degrees: Vec<usize> = branches.iter().map(|&b| tree.degree(b)).collect();
        degrees.sort_unstable();

        let mut groups: Vec<(Vertex, Vec<Walk>)> = Vec::new();
        let (skeleton, order) = match degrees.as_slice() {
            [5] => (Skeleton::Two { r: branches[0] }, vec![branches[0]]),
            [3, 4] => {
                let s = *branches
                    .iter()
                    .find(|&&b| tree.degree(b) == 4)
                    .expect("degree four");
                let t = *branches
                    .iter()
                    .find(|&&b| tree.degree(b) == 3)
                    .expect("degree three");
                (Skeleton::One { s, t }, vec![s, t])
            }
            [3, 3, 3] => {
                let toward_branch = |b: Vertex| {
                    tree.neighbors(b)
                        .iter()
                        .filter(|&&y| walk(tree, b, y).reaches_branch)
                        .count()
                };
                let w = *branches
                    .iter()
                    .find(|&&b| toward_branch(b) == 2)
                    .expect("middle branch vertex");
                let mut ends: Vec<Vertex> = branches.iter().copied().filter(|&b| b != w).collect();
                ends.sort_unstable();
                let (s, t) = (ends[0], ends[1]);
                (Skeleton::Three { s, w, t }, vec![s, t, w])
            }
            other => {
                return Err(TreeError::NotATree(format!(
                    "five-leaf tree with impossible branch degrees {other:?}"
                )))
            }
        };
        for &b in &order {
            let mut blocks: Vec<Walk> = tree
                .neighbors(b)
                .iter()
                .map(|&y| walk(tree, b, y))
                .filter(|w| !w.reaches_branch)
                .collect();
            blocks.sort_by_key(|w| w.interior[0]);
            groups.push((b, blocks));
        }

        let n = tree.host().n();
        let mut leaves = [0; 5];
        let mut anchors = [0; 5];
        let mut attach = [0; 5];
        let mut blocks: [Vec<Vertex>; 5] = Default::default();
        let mut block_index = vec![NO_BLOCK; n];
        let mut block_pos = vec![0u32; n];
        let mut i = 0;
        for (b, walks) in groups {
            for w in walks {
                if i >= 5 {
                    return Err(TreeError::NotATree("more than five branch sets".into()));
                }
                leaves[i] = w.end;
                anchors[i] = w.interior[0];
                attach[i] = b;
                for (pos, &x) in w.interior.iter().enumerate() {
                    block_index[x] = i as u8;
                    block_pos[x] = pos as u32;
                }
                blocks[i] = w.interior;
                i += 1;
            }
        }
        if i != 5 {
            return Err(TreeError::NotATree(format!(
                "found {i} branch sets, expected 5"
            )));
        }

        let spine_path = match skeleton {
            Skeleton::Two { .. } => Vec::new(),
            Skeleton::One { s, t } | Skeleton::Three { s, t, .. } => tree.path(s, t),
        };
        let spine: Vec<Vertex> = spine_path
            .iter()
            .copied()
            .filter(|&x| tree.degree(x) == 2)
            .collect();
        let mut spine_pos = vec![u32::MAX; n];
        for (pos, &x) in spine_path.iter().enumerate() {
            spine_pos[x] = pos as u32;
        }

        Ok(CaseDecomposition {
            skeleton,
            leaves,
            anchors,
            attach,
            blocks,
            spine_path,
            spine,
            block_index,
            block_pos,
            spine_pos,
        })
    }

    pub fn case(&self) -> CaseId {
        match self.skeleton {
            Skeleton::One { .. } => CaseId::One,
            Skeleton::Two { .. } => CaseId::Two,
            Skeleton::Three { .. } => CaseId::Three,
        }
    }

    /// Index of the branch set containing `x`.
    #[inline]
    pub fn block_of(&self, x: Vertex) -> Option<usize> {
        match self.block_index.get(x) {
            Some(&i) if i != NO_BLOCK => Some(i as usize),
            _ => None,
        }
    }

    /// `x⁻` for `x` in a branch set: the neighbor toward the branch vertex.
    pub fn pred(&self, x: Vertex) -> Option<Vertex> {
        let i = self.block_of(x)?;
        let pos = self.block_pos[x] as usize;
        Some(if pos == 0 {
            self.attach[i]
        } else {
            self.blocks[i][pos - 1]
        })
    }

    /// `x⁺` for `x` in a branch set: the neighbor toward the leaf, absent
    /// at the leaf itself.
    pub fn succ(&self, x: Vertex) -> Option<Vertex> {
        let i = self.block_of(x)?;
        self.blocks[i].get(self.block_pos[x] as usize + 1).copied()
    }

    /// Whether `x` lies on `P_T[s, t]` (endpoints included).
    pub fn on_spine_path(&self, x: Vertex) -> bool {
        self.spine_pos.get(x).is_some_and(|&p| p != u32::MAX)
    }

    /// `d_T[s, t]`; zero in Case Two.
    pub fn spine_length(&self) -> usize {
        self.spine_path.len().saturating_sub(1)
    }

    /// `s⁺`: the successor of `s` on `P_T[s, t]`, which is `t` itself when
    /// the two are adjacent.
    pub fn s_plus(&self) -> Option<Vertex> {
        self.spine_path.get(1).copied()
    }

    /// `t⁻`: the predecessor of `t` on `P_T[s, t]`.
    pub fn t_minus(&self) -> Option<Vertex> {
        let len = self.spine_path.len();
        (len >= 2).then(|| self.spine_path[len - 2])
    }

    /// First vertex of `P`, absent when `P = ∅`.
    pub fn spine_first(&self) -> Option<Vertex> {
        self.spine.first().copied()
    }

    /// `Σ |B_i|` over the branch sets hanging off `s` in Case One.
    pub fn hub_block_total(&self) -> usize {
        match self.skeleton {
            Skeleton::One { .. } => self.blocks[..3].iter().map(Vec::len).sum(),
            _ => 0,
        }
    }

    /// Bitmask of `i` with `x u_i ∈ E(G)`.
    pub fn leaf_mask(&self, tree: &SpanningTree<'_>, x: Vertex) -> u8 {
        let g = tree.host();
        self.leaves
            .iter()
            .enumerate()
            .filter(|&(_, &u)| g.has_edge(x, u))
            .fold(0u8, |m, (i, _)| m | (1 << i))
    }
}

/// Decomposes a five-leaf tree.
pub fn decompose(tree: &SpanningTree<'_>) -> Result<CaseDecomposition, TreeError> {
    CaseDecomposition::new(tree)
}
