//! Unconditioned, size-conditioned and Kesten-spine tree samplers.
//!
//! All samplers emit preorder degree sequences directly. Preorder
//! generation draws the same independent degrees as breadth-first
//! generation, so the law of the tree is unchanged.
//!
//! Conditioned trees use the cycle lemma. An i.i.d. sequence `xi_1..xi_n`
//! conditioned on `sum xi_i = n - 1` is exchangeable, so it can be produced
//! by drawing the multiset of values and shuffling. The rotation of that
//! sequence that starts just after the first minimum of the partial sums of
//! `xi_i - 1` is the preorder code of a tree with exactly the law of `T_n`.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_distr::{Binomial, Distribution};
use thiserror::Error;

use crate::offspring::{Family, OffspringDistribution};
use crate::tree::Tree;

/// Default node cap for unconditioned trees.
pub const DEFAULT_UNCONDITIONED_CAP: usize = 10_000_000;
/// Default node cap for each subtree hanging off a Kesten spine.
pub const DEFAULT_SUBTREE_CAP: usize = 1_000_000;
/// Default number of count draws before a size is declared unattainable.
pub const DEFAULT_RETRY_BUDGET: u64 = 1_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SamplerError {
    #[error("tree reached the cap of {nodes} nodes before extinction")]
    CapExceeded { nodes: usize },
    /// `attempts` is 0 when the support lattice rules the size out up front.
    #[error("no tree of size {n} is attainable{}", retry_note(*attempts))]
    UnattainableSize { n: usize, attempts: u64 },
    #[error("tree size must be at least 1")]
    ZeroSize,
    #[error("the offspring law has no size-biased version: {0}")]
    NotCritical(String),
}

fn retry_note(attempts: u64) -> String {
    match attempts {
        0 => " under this offspring law".into(),
        k => format!(" (none found in {k} attempts)"),
    }
}

/// A Kesten tree cut off below spine depth `depth`.
#[derive(Clone, Debug)]
pub struct KestenTruncation {
    pub tree: Tree,
    /// Preorder indices of the spine nodes, root first; `depth + 1` entries.
    pub spine: Vec<usize>,
    pub depth: usize,
    /// Number of hanging subtrees that hit the cap and were closed with leaves.
    pub truncated: usize,
}

/// Grows one BGW tree in preorder, failing once `cap` nodes exist.
pub fn sample_unconditioned<R: Rng + ?Sized>(
    d: &OffspringDistribution,
    rng: &mut R,
    cap: usize,
) -> Result<Tree, SamplerError> {
    assert!(cap >= 1, "cap must be positive");
    let mut degrees = Vec::new();
    if grow(d, rng, cap, &mut degrees) {
        return Err(SamplerError::CapExceeded { nodes: cap });
    }
    Ok(Tree::from_degrees(degrees).expect("preorder growth yields a tree"))
}

/// Appends one BGW subtree to `out`. When `cap` nodes have been drawn the
/// remaining open slots are closed with leaves and `true` is returned.
fn grow<R: Rng + ?Sized>(
    d: &OffspringDistribution,
    rng: &mut R,
    cap: usize,
    out: &mut Vec<u32>,
) -> bool {
    let mut open: u64 = 1;
    let mut drawn = 0usize;
    while open > 0 {
        if drawn == cap {
            out.extend(std::iter::repeat_n(0, open as usize));
            return true;
        }
        let k = d.sample(rng);
        out.push(k);
        drawn += 1;
        open = open + k as u64 - 1;
    }
    false
}

/// Draws `T_n` with the default retry budget.
pub fn sample_conditioned<R: Rng + ?Sized>(
    d: &OffspringDistribution,
    n: usize,
    rng: &mut R,
) -> Result<Tree, SamplerError> {
    sample_conditioned_with_budget(d, n, rng, DEFAULT_RETRY_BUDGET).map(|(t, _)| t)
}

/// Draws `T_n` and also returns how many count vectors were drawn before
/// one with the right degree sum appeared.
pub fn sample_conditioned_with_budget<R: Rng + ?Sized>(
    d: &OffspringDistribution,
    n: usize,
    rng: &mut R,
    budget: u64,
) -> Result<(Tree, u64), SamplerError> {
    if n == 0 {
        return Err(SamplerError::ZeroSize);
    }
    if n == 1 {
        return Ok((Tree::singleton(), 1));
    }
    let (mut seq, attempts) = match d.family() {
        Family::Poisson1 => (poisson_sequence(n, rng), 1),
        Family::GeometricHalf => (geometric_sequence(n, rng), 1),
        _ => {
            let unattainable = SamplerError::UnattainableSize { n, attempts: 0 };
            if !(n as u64 - 1).is_multiple_of(d.support_gcd()) || d.table().len() < 2 {
                return Err(unattainable);
            }
            finite_sequence(d.table(), n, rng, budget)?
        }
    };
    rotate_to_preorder(&mut seq);
    let tree = Tree::from_degrees(seq).expect("cycle lemma rotation is a tree");
    Ok((tree, attempts))
}

/// Rotates a sequence with `sum (x_i - 1) = -1` into its unique valid
/// preorder rotation.
pub fn rotate_to_preorder(seq: &mut [u32]) {
    let n = seq.len();
    let mut acc = 0i64;
    let mut min = i64::MAX;
    let mut start = 0;
    for (k, &x) in seq.iter().enumerate() {
        acc += x as i64 - 1;
        if acc < min {
            min = acc;
            start = k + 1;
        }
    }
    debug_assert_eq!(acc, -1, "sequence must sum to n - 1");
    seq.rotate_left(start % n);
}

/// `n - 1` balls thrown into `n` urns: the Poisson(1) sequence given its sum.
fn poisson_sequence<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Vec<u32> {
    let mut seq = vec![0u32; n];
    for _ in 1..n {
        seq[rng.random_range(0..n)] += 1;
    }
    seq
}

/// A uniform composition of `n - 1` into `n` parts: the Geometric(1/2)
/// sequence given its sum.
fn geometric_sequence<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Vec<u32> {
    let mut symbols = vec![false; 2 * (n - 1)];
    symbols[..n - 1].fill(true);
    symbols.shuffle(rng);
    let mut seq = Vec::with_capacity(n);
    let mut run = 0u32;
    for star in symbols {
        if star {
            run += 1;
        } else {
            seq.push(run);
            run = 0;
        }
    }
    seq.push(run);
    seq
}

/// Draws multinomial value counts until they carry degree sum `n - 1`, then
/// lays the values out in uniformly random order.
fn finite_sequence<R: Rng + ?Sized>(
    table: &[f64],
    n: usize,
    rng: &mut R,
    budget: u64,
) -> Result<(Vec<u32>, u64), SamplerError> {
    let target = n as u64 - 1;
    let mut counts = vec![0u64; table.len()];
    for attempt in 1..=budget {
        if draw_counts(table, n as u64, target, rng, &mut counts) {
            let mut seq = Vec::with_capacity(n);
            for (k, &c) in counts.iter().enumerate() {
                seq.extend(std::iter::repeat_n(k as u32, c as usize));
            }
            seq.shuffle(rng);
            return Ok((seq, attempt));
        }
    }
    Err(SamplerError::UnattainableSize {
        n,
        attempts: budget,
    })
}

/// Sequential binomial draw of multinomial counts; returns whether the
/// degree sum hit `target`. Abandons the draw as soon as it overshoots.
fn draw_counts<R: Rng + ?Sized>(
    table: &[f64],
    n: u64,
    target: u64,
    rng: &mut R,
    counts: &mut [u64],
) -> bool {
    counts.fill(0);
    let mut left = n;
    let mut mass = 1.0f64;
    let mut sum = 0u64;
    let last = table.iter().rposition(|&p| p > 0.0).unwrap_or(0);
    for (k, &p) in table.iter().enumerate().take(last + 1) {
        if left == 0 {
            break;
        }
        let c = if k == last {
            left
        } else if p <= 0.0 {
            0
        } else {
            let prob = (p / mass).clamp(0.0, 1.0);
            Binomial::new(left, prob)
                .expect("valid binomial")
                .sample(rng)
        };
        counts[k] = c;
        left -= c;
        mass -= p;
        sum += c * k as u64;
        if sum > target {
            return false;
        }
    }
    sum == target
}

/// Builds the spine of a Kesten tree down to depth `depth`.
///
/// Each spine node has a size-biased number of children, one of them picked
/// uniformly to continue the spine. The spine node at depth `depth` keeps
/// its size-biased degree but all of its children start ordinary BGW
/// subtrees, which is where the truncation happens.
pub fn sample_kesten<R: Rng + ?Sized>(
    d: &OffspringDistribution,
    depth: usize,
    subtree_cap: usize,
    rng: &mut R,
) -> Result<KestenTruncation, SamplerError> {
    let zeta = d
        .size_biased()
        .map_err(|e| SamplerError::NotCritical(e.to_string()))?;
    let mut degrees = Vec::new();
    let mut spine = Vec::with_capacity(depth + 1);
    let mut right = Vec::with_capacity(depth);
    let mut truncated = 0;
    for level in 0..=depth {
        spine.push(degrees.len());
        let k = zeta.sample(rng);
        degrees.push(k);
        if level == depth {
            for _ in 0..k {
                truncated += grow(d, rng, subtree_cap, &mut degrees) as usize;
            }
        } else {
            let pick = rng.random_range(0..k);
            for _ in 0..pick {
                truncated += grow(d, rng, subtree_cap, &mut degrees) as usize;
            }
            right.push(k - 1 - pick);
        }
    }
    // right-hand siblings follow the spine in preorder, deepest level first
    for &r in right.iter().rev() {
        for _ in 0..r {
            truncated += grow(d, rng, subtree_cap, &mut degrees) as usize;
        }
    }
    let tree = Tree::from_degrees(degrees).expect("spine construction yields a tree");
    Ok(KestenTruncation {
        tree,
        spine,
        depth,
        truncated,
    })
}
