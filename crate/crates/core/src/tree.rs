//! Ordered rooted trees stored as preorder degree sequences.
//!
//! Every child has a larger preorder index than its parent, so a sweep over
//! the indices in decreasing order visits children before parents. All
//! bottom-up parameters below are computed that way in `O(n)` with no
//! recursion.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;
use thiserror::Error;

const NO_PARENT: u32 = u32::MAX;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TreeError {
    #[error("empty degree sequence")]
    Empty,
    #[error("degree sum is {sum} but {nodes} nodes need {expected}")]
    InvalidDegreeSum {
        sum: u64,
        nodes: usize,
        expected: u64,
    },
    #[error("the tree closes after {closed_at} nodes but the sequence has {len}")]
    InvalidPrefix { closed_at: usize, len: usize },
    #[error("cannot parse degree '{0}'")]
    Parse(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tree {
    degrees: Vec<u32>,
    parent: Vec<u32>,
    subtree_size: Vec<u32>,
}

/// Per-node peel numbers and leaf-heights, indexed by preorder position.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NodeAnnotations {
    pub peel: Vec<u32>,
    pub leaf_height: Vec<u32>,
}

/// A greedy minimum `s`-path vertex cover.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpvcResult {
    pub marked: Vec<bool>,
    pub size: usize,
}

impl Tree {
    /// Validates a preorder degree sequence and derives the parent and
    /// subtree-size arrays.
    pub fn from_degrees(degrees: Vec<u32>) -> Result<Self, TreeError> {
        if degrees.is_empty() {
            return Err(TreeError::Empty);
        }
        let n = degrees.len();
        let mut parent = vec![NO_PARENT; n];
        // (node, children still to attach)
        let mut stack: Vec<(u32, u32)> = Vec::new();
        for (i, &deg) in degrees.iter().enumerate() {
            if i > 0 {
                let Some(top) = stack.last_mut() else {
                    return Err(TreeError::InvalidPrefix {
                        closed_at: i,
                        len: n,
                    });
                };
                parent[i] = top.0;
                top.1 -= 1;
                if top.1 == 0 {
                    stack.pop();
                }
            }
            if deg > 0 {
                stack.push((i as u32, deg));
            }
        }
        if !stack.is_empty() {
            let sum: u64 = degrees.iter().map(|&d| d as u64).sum();
            return Err(TreeError::InvalidDegreeSum {
                sum,
                nodes: n,
                expected: n as u64 - 1,
            });
        }
        let mut subtree_size = vec![1u32; n];
        for u in (1..n).rev() {
            let p = parent[u] as usize;
            subtree_size[p] += subtree_size[u];
        }
        Ok(Self {
            degrees,
            parent,
            subtree_size,
        })
    }

    /// The single-node tree.
    pub fn singleton() -> Self {
        Self::from_degrees(vec![0]).expect("valid tree")
    }

    /// A path of `n` nodes.
    pub fn path(n: usize) -> Self {
        assert!(n >= 1);
        let mut d = vec![1; n];
        d[n - 1] = 0;
        Self::from_degrees(d).expect("valid tree")
    }

    /// A root with `k` leaf children.
    pub fn star(k: u32) -> Self {
        let mut d = vec![0; k as usize + 1];
        d[0] = k;
        Self::from_degrees(d).expect("valid tree")
    }

    pub fn len(&self) -> usize {
        self.degrees.len()
    }

    /// Always false: a tree has at least one node.
    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    pub fn into_degrees(self) -> Vec<u32> {
        self.degrees
    }

    pub fn degree(&self, u: usize) -> u32 {
        self.degrees[u]
    }

    pub fn parent(&self, u: usize) -> Option<usize> {
        match self.parent[u] {
            NO_PARENT => None,
            p => Some(p as usize),
        }
    }

    pub fn subtree_size(&self, u: usize) -> usize {
        self.subtree_size[u] as usize
    }

    pub fn first_child(&self, u: usize) -> Option<usize> {
        (self.degrees[u] > 0).then_some(u + 1)
    }

    /// Children of `u` in order.
    pub fn children(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        let mut next = u + 1;
        (0..self.degrees[u]).map(move |_| {
            let c = next;
            next += self.subtree_size[c] as usize;
            c
        })
    }

    pub fn is_leaf(&self, u: usize) -> bool {
        self.degrees[u] == 0
    }

    pub fn depths(&self) -> Vec<u32> {
        let mut depth = vec![0u32; self.len()];
        for u in 1..self.len() {
            depth[u] = depth[self.parent[u] as usize] + 1;
        }
        depth
    }

    pub fn height(&self) -> u32 {
        self.depths().into_iter().max().unwrap_or(0)
    }

    /// Layer index of every node under repeated removal of all leaves and
    /// then all their parents.
    ///
    /// A leaf has peel 0. A node with a child of even peel gets one more
    /// than the smallest such child; otherwise it gets one more than its
    /// largest child.
    pub fn peel_numbers(&self) -> Vec<u32> {
        let n = self.len();
        let mut min_even = vec![u32::MAX; n];
        let mut max_child = vec![0u32; n];
        let mut peel = vec![0u32; n];
        for u in (0..n).rev() {
            let rho = if self.degrees[u] == 0 {
                0
            } else if min_even[u] != u32::MAX {
                min_even[u] + 1
            } else {
                max_child[u] + 1
            };
            peel[u] = rho;
            if let Some(p) = self.parent(u) {
                if rho % 2 == 0 {
                    min_even[p] = min_even[p].min(rho);
                }
                max_child[p] = max_child[p].max(rho);
            }
        }
        peel
    }

    /// Distance from each node to the nearest leaf in its own subtree.
    pub fn leaf_heights(&self) -> Vec<u32> {
        let n = self.len();
        let mut min_child = vec![u32::MAX; n];
        let mut lambda = vec![0u32; n];
        for u in (0..n).rev() {
            let l = if self.degrees[u] == 0 {
                0
            } else {
                min_child[u] + 1
            };
            lambda[u] = l;
            if let Some(p) = self.parent(u) {
                min_child[p] = min_child[p].min(l);
            }
        }
        lambda
    }

    pub fn annotate(&self) -> NodeAnnotations {
        NodeAnnotations {
            peel: self.peel_numbers(),
            leaf_height: self.leaf_heights(),
        }
    }

    /// `m(T)`: the largest peel number.
    pub fn max_peel(&self) -> u32 {
        self.peel_numbers().into_iter().max().unwrap_or(0)
    }

    /// `lambda(T)`: the largest leaf-height.
    pub fn max_leaf_height(&self) -> u32 {
        self.leaf_heights().into_iter().max().unwrap_or(0)
    }

    /// Size of a maximum independent set: the nodes with even peel number.
    pub fn independence_number(&self) -> usize {
        count_even(&self.peel_numbers())
    }

    /// Size of a minimum vertex cover, `n - I(T)`.
    pub fn vertex_cover_number(&self) -> usize {
        self.len() - self.independence_number()
    }

    /// Node counts per peel layer, `N_0, N_1, ..., N_{m(T)}`.
    pub fn layer_counts(&self) -> Vec<usize> {
        layer_histogram(&self.peel_numbers())
    }

    /// Minimum vertex set meeting every downward path of `s` nodes.
    ///
    /// Each node carries the height of what is left of its subtree once
    /// marked descendants are cut away. A node whose residual height reaches
    /// `s - 1` is marked and cut from its parent. Children are always
    /// settled before their parent, so deeper cuts happen first.
    pub fn mark_spvc(&self, s: usize) -> SpvcResult {
        assert!(s >= 2, "path order must be at least 2");
        let target = (s - 1) as u32;
        let n = self.len();
        // residual height + 1 of the tallest unmarked child, 0 if none
        let mut reach = vec![0u32; n];
        let mut marked = vec![false; n];
        let mut size = 0;
        for u in (0..n).rev() {
            let h = reach[u];
            if h == target {
                marked[u] = true;
                size += 1;
            } else if let Some(p) = self.parent(u) {
                reach[p] = reach[p].max(h + 1);
            }
        }
        SpvcResult { marked, size }
    }

    /// `V_s(T)`.
    pub fn spvc_number(&self, s: usize) -> usize {
        self.mark_spvc(s).size
    }

    /// Comma-separated preorder degrees, e.g. `1,1,0`.
    pub fn to_degree_line(&self) -> String {
        let mut out = String::with_capacity(self.len() * 2);
        for (i, d) in self.degrees.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            let _ = write!(out, "{d}");
        }
        out
    }

    /// Parses one tree from degrees separated by commas and/or whitespace
    /// (so both `1,1,0` and one integer per line are accepted).
    pub fn parse_degrees(text: &str) -> Result<Self, TreeError> {
        let degrees = text
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<u32>()
                    .map_err(|_| TreeError::Parse(t.to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::from_degrees(degrees)
    }

    /// JSON object keyed by preorder index.
    pub fn annotations_json(&self) -> serde_json::Value {
        #[derive(Serialize)]
        struct Node {
            degree: u32,
            peel: u32,
            leaf_height: u32,
        }
        let ann = self.annotate();
        let map: BTreeMap<usize, Node> = (0..self.len())
            .map(|u| {
                (
                    u,
                    Node {
                        degree: self.degrees[u],
                        peel: ann.peel[u],
                        leaf_height: ann.leaf_height[u],
                    },
                )
            })
            .collect();
        serde_json::to_value(map).expect("annotations serialize")
    }
}

/// Reads a file holding one tree per line. Blank lines are skipped; every
/// other line yields its 1-based line number and a parse result.
pub fn read_tree_lines(text: &str) -> Vec<(usize, Result<Tree, TreeError>)> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| (i + 1, Tree::parse_degrees(l)))
        .collect()
}

pub(crate) fn count_even(peel: &[u32]) -> usize {
    peel.iter().filter(|&&p| p % 2 == 0).count()
}

pub(crate) fn layer_histogram(peel: &[u32]) -> Vec<usize> {
    let m = peel.iter().copied().max().unwrap_or(0) as usize;
    let mut counts = vec![0usize; m + 1];
    for &p in peel {
        counts[p as usize] += 1;
    }
    counts
}
