//! Fixed points and exact root laws of unconditioned Galton-Watson trees.
//!
//! * `q = f(1 - q)`: probability that the root lies in the layered
//!   independent set.
//! * `q_s`: probability that the root is marked by the greedy `s`-path cover.
//! * `r_i`, `l_i`: laws of the peel number and leaf-height of the root.
//! * `l**_i`: limit law of the root leaf-height of the conditioned tree.
//!
//! Tables are computed from complementary tail sums rather than from
//! `1 - partial sum`, and differences of `f` go through
//! [`OffspringDistribution::f_diff`], so entries keep relative precision far
//! into the tail. Leaf-height tables are built in log space because for
//! `p_1 = 0` their entries fall below the smallest double within a dozen
//! terms.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::config::Tolerances;
use crate::offspring::OffspringDistribution;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AnalyticError {
    #[error("path order s = {0} must be at least 2")]
    InvalidPathOrder(usize),
    #[error("no sign change of q - G_s(q) found on a {grid}-point grid for s = {s}")]
    NoBracket { s: usize, grid: usize },
    #[error("table needs at least one term")]
    EmptyTable,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FixedPointResult {
    pub value: f64,
    pub iterations: u32,
    /// `|value - F(value)|` for the solved map `F`.
    pub residual: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum TableKind {
    /// `r_i`: peel number of the root of an unconditioned tree.
    PeelRoot,
    /// `l_i`: leaf-height of the root of an unconditioned tree.
    LeafHeightRoot,
    /// `l**_i`: limiting leaf-height of the root of `T_n`.
    RootLimitLaw,
}

/// A truncated probability sequence with its missing mass.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DistributionTable {
    pub kind: TableKind,
    pub values: Vec<f64>,
    /// Natural logs of `values`, finite even where `values` underflows.
    #[serde(skip)]
    pub ln_values: Vec<f64>,
    pub tail_mass: f64,
}

impl DistributionTable {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, i: usize) -> f64 {
        self.values.get(i).copied().unwrap_or(0.0)
    }

    /// Sum of stored values plus the tail.
    pub fn total(&self) -> f64 {
        self.values.iter().sum::<f64>() + self.tail_mass
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("index,value\n");
        for (i, v) in self.values.iter().enumerate() {
            let _ = writeln!(out, "{i},{v:e}");
        }
        let _ = writeln!(out, "tail,{:e}", self.tail_mass);
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("table serializes")
    }

    /// Total variation distance to an empirical pmf; unmatched mass on either
    /// side counts in full, the tail included.
    pub fn total_variation(&self, empirical: &[f64]) -> f64 {
        let len = self.values.len().max(empirical.len());
        let mut acc = 0.0;
        for i in 0..len {
            acc += (self.get(i) - empirical.get(i).copied().unwrap_or(0.0)).abs();
        }
        0.5 * (acc + self.tail_mass)
    }
}

/// How a tree parameter is scaled before comparing it with its limit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Normalization {
    /// `X / n`
    Linear,
    /// `X / ln n`
    Log,
    /// `X / ln ln n`
    LogLog,
}

impl Normalization {
    pub fn scale(self, n: u64) -> f64 {
        let n = n as f64;
        match self {
            Normalization::Linear => n,
            Normalization::Log => n.ln(),
            Normalization::LogLog => n.ln().ln(),
        }
    }
}

/// Solves `q = f(1 - q)` by bisection.
pub fn solve_q(d: &OffspringDistribution) -> FixedPointResult {
    solve_q_with(d, &Tolerances::default())
}

pub fn solve_q_with(d: &OffspringDistribution, tol: &Tolerances) -> FixedPointResult {
    // q - f(1 - q) is increasing, -1 at 0 and 1 - p_0 >= 0 at 1.
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    let mut iterations = 0;
    while hi - lo > tol.fixed_point {
        let mid = 0.5 * (lo + hi);
        if mid - d.f(1.0 - mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        iterations += 1;
    }
    let value = 0.5 * (lo + hi);
    FixedPointResult {
        value,
        iterations,
        residual: (value - d.f(1.0 - value)).abs(),
    }
}

/// `G_s(q)`: probability that the root starts an unmarked downward path of
/// `s - 1` edges when every other node is marked with probability `q`.
///
/// A child continues such a path of `j` edges exactly when it is unmarked
/// and starts one of `j - 1` edges. Marked nodes are those starting a path
/// of `s - 1` edges, so that event has probability `P{E_(j-1)} - q`, and
/// with `w_j = 1 - P{E_j}`:
/// `w_0 = 0`, `w_j = f(q + w_(j-1))`, `G_s(q) = 1 - w_(s-1)`.
/// The argument of `f` is clamped to 1, which only matters away from the
/// fixed point.
pub fn iterated_map(d: &OffspringDistribution, s: usize, q: f64) -> f64 {
    let mut w = 0.0;
    for _ in 1..s {
        w = d.f((q + w).min(1.0));
    }
    1.0 - w
}

/// Solves `q_s = G_s(q_s)`, the limiting fraction of nodes in a minimum
/// `s`-path vertex cover.
pub fn solve_qs(d: &OffspringDistribution, s: usize) -> Result<FixedPointResult, AnalyticError> {
    solve_qs_with(d, s, &Tolerances::default())
}

pub fn solve_qs_with(
    d: &OffspringDistribution,
    s: usize,
    tol: &Tolerances,
) -> Result<FixedPointResult, AnalyticError> {
    if s < 2 {
        return Err(AnalyticError::InvalidPathOrder(s));
    }
    let phi = |q: f64| q - iterated_map(d, s, q);
    let grid = tol.bracket_grid;

    // phi is increasing with phi(0) <= 0 < phi(1); take the first grid cell
    // where the sign flips.
    let mut bracket = None;
    let mut prev_x = 0.0;
    let mut prev = phi(0.0);
    if prev == 0.0 {
        return Ok(FixedPointResult {
            value: 0.0,
            iterations: 0,
            residual: 0.0,
        });
    }
    for k in 1..=grid {
        let x = k as f64 / grid as f64;
        let y = phi(x);
        if (prev < 0.0) != (y < 0.0) {
            bracket = Some((prev_x, x, prev < 0.0));
            break;
        }
        prev_x = x;
        prev = y;
    }
    let (mut lo, mut hi, rising) = bracket.ok_or(AnalyticError::NoBracket { s, grid })?;

    let mut iterations = 0;
    while hi - lo > tol.iterated_fixed_point * 0.1 {
        let mid = 0.5 * (lo + hi);
        if (phi(mid) < 0.0) == rising {
            lo = mid;
        } else {
            hi = mid;
        }
        iterations += 1;
    }
    let value = 0.5 * (lo + hi);
    Ok(FixedPointResult {
        value,
        iterations,
        residual: phi(value).abs(),
    })
}

/// `f'(1 - q)`: geometric decay rate of the peel layers.
pub fn peel_decay_rate(d: &OffspringDistribution) -> f64 {
    d.f_prime(1.0 - solve_q(d).value)
}

/// Limit of `M_n / ln n`: `1 / ln(1 / f'(1 - q))`.
pub fn peel_constant(d: &OffspringDistribution) -> f64 {
    -1.0 / peel_decay_rate(d).ln()
}

/// Limit of the maximum leaf-height under its normalization:
/// `1 / ln(1 / p_1)` over `ln n` when `p_1 > 0`, else `1 / ln kappa` over
/// `ln ln n`.
pub fn leafheight_constant(d: &OffspringDistribution) -> (Normalization, f64) {
    let p1 = d.p1();
    if p1 > 0.0 {
        (Normalization::Log, -1.0 / p1.ln())
    } else {
        let kappa = d.kappa().expect("critical law with p_1 = 0 has kappa");
        (Normalization::LogLog, 1.0 / (kappa as f64).ln())
    }
}

/// `r_0, ..., r_{n_terms - 1}`: law of the root peel number.
///
/// With `A_k = P{peel odd, >= 2k+1}` and `B_k = P{peel even, >= 2k}`:
/// `A_k = f(1 - q + B_k) - f(1 - q)` and `B_{k+1} = f(1 - q) - f(1 - q - A_k)`,
/// starting from `B_0 = q` and `B_1 = q - p_0`. Entries are emitted in the
/// order `r_0, r_1, r_2, ...`, each odd term before the even term that
/// depends on it.
pub fn peel_distribution(
    d: &OffspringDistribution,
    n_terms: usize,
) -> Result<DistributionTable, AnalyticError> {
    if n_terms == 0 {
        return Err(AnalyticError::EmptyTable);
    }
    let q = solve_q(d).value;
    let base = 1.0 - q;
    let odd_tail = |b: f64| d.f_diff(base + b, base, b);
    let even_tail = |a: f64| d.f_diff(base, base - a, a);

    let mut values = Vec::with_capacity(n_terms);
    values.push(d.p0());

    let mut a_prev = odd_tail(q); // A_0
    let mut b_cur = q - d.p0(); // B_1
    let mut tail = a_prev + b_cur;
    while values.len() < n_terms {
        let a_cur = odd_tail(b_cur);
        values.push(a_prev - a_cur);
        tail = a_cur + b_cur;
        if values.len() == n_terms {
            break;
        }
        let b_next = even_tail(a_cur);
        values.push(b_cur - b_next);
        tail = a_cur + b_next;
        a_prev = a_cur;
        b_cur = b_next;
    }
    let ln_values = values.iter().map(|v| v.ln()).collect();
    Ok(DistributionTable {
        kind: TableKind::PeelRoot,
        values,
        ln_values,
        tail_mass: tail,
    })
}

/// `ln P{leaf-height >= i}` for `i = 0..=n_terms`.
fn ln_leafheight_tails(d: &OffspringDistribution, n_terms: usize) -> Vec<f64> {
    // P{>= i + 1} = f(P{>= i}) - p_0
    let mut tails = Vec::with_capacity(n_terms + 1);
    tails.push(0.0);
    tails.push((1.0 - d.p0()).ln());
    while tails.len() <= n_terms {
        let t = *tails.last().unwrap();
        let next = if t == f64::NEG_INFINITY {
            t
        } else {
            t + d.ln_increment(t)
        };
        tails.push(next);
    }
    tails
}

fn ln_difference(ln_hi: f64, ln_lo: f64) -> f64 {
    if ln_hi == f64::NEG_INFINITY {
        return ln_hi;
    }
    ln_hi + (-(ln_lo - ln_hi).exp_m1()).ln()
}

/// `l_0, ..., l_{n_terms - 1}`: law of the root leaf-height, from
/// `l_0 = p_0` and `l_{i+1} = f(l+_i) - f(l+_{i+1})`.
pub fn leafheight_distribution(
    d: &OffspringDistribution,
    n_terms: usize,
) -> Result<DistributionTable, AnalyticError> {
    if n_terms == 0 {
        return Err(AnalyticError::EmptyTable);
    }
    let tails = ln_leafheight_tails(d, n_terms);
    let mut ln_values = Vec::with_capacity(n_terms);
    ln_values.push(d.p0().ln());
    for i in 1..n_terms {
        ln_values.push(ln_difference(tails[i], tails[i + 1]));
    }
    let mut values: Vec<f64> = ln_values.iter().map(|v| v.exp()).collect();
    values[0] = d.p0();
    Ok(DistributionTable {
        kind: TableKind::LeafHeightRoot,
        values,
        ln_values,
        tail_mass: tails[n_terms].exp(),
    })
}

/// `l**_0, ..., l**_{n_terms - 1}`: limit law of the root leaf-height of
/// `T_n`.
///
/// The product `prod_{j<i} f'(l+_j)` is the survival function
/// `P{H >= i}` of the stationary spinal chain `H = 1 + min(H, H_1, ...)`;
/// the stored pmf is its first difference, so `l**_0 = 0`.
pub fn root_limit_law(
    d: &OffspringDistribution,
    n_terms: usize,
) -> Result<DistributionTable, AnalyticError> {
    if n_terms == 0 {
        return Err(AnalyticError::EmptyTable);
    }
    let tails = ln_leafheight_tails(d, n_terms);
    // ln P{H >= i}; f'(l+_0) = f'(1) = 1.
    let mut ln_survival = Vec::with_capacity(n_terms + 1);
    ln_survival.push(0.0);
    ln_survival.push(0.0);
    for i in 1..n_terms {
        let prev = ln_survival[i];
        ln_survival.push(prev + d.ln_f_prime(tails[i]));
    }
    let mut ln_values = Vec::with_capacity(n_terms);
    ln_values.push(f64::NEG_INFINITY);
    for i in 1..n_terms {
        ln_values.push(ln_difference(ln_survival[i], ln_survival[i + 1]));
    }
    let values = ln_values.iter().map(|v| v.exp()).collect();
    Ok(DistributionTable {
        kind: TableKind::RootLimitLaw,
        values,
        ln_values,
        tail_mass: ln_survival[n_terms].exp(),
    })
}
