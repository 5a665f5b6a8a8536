//! Offspring laws for Galton-Watson trees.
//!
//! An [`OffspringDistribution`] is immutable once built. It answers pmf and
//! generating-function queries, samples child counts, and exposes the
//! size-biased law used along the spine of Kesten's tree.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rand_distr::weighted::WeightedAliasIndex;
use rand_distr::{Distribution, Geometric};
use thiserror::Error;

/// Tail mass below which an infinite support is cut off.
pub const SERIES_TAIL: f64 = 1e-15;
/// Allowed deviation of the mean from 1 for a law to count as critical.
pub const CRITICAL_TOLERANCE: f64 = 1e-9;
/// Allowed deviation of user-supplied probabilities from a total of 1.
pub const NORMALIZATION_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum OffspringError {
    #[error("probability p_{index} = {value} is not in [0, 1]")]
    InvalidProbability { index: usize, value: f64 },
    #[error("probabilities sum to {sum}, not 1")]
    NotNormalized { sum: f64 },
    #[error("offspring law has zero variance")]
    ZeroVariance,
    #[error("offspring mean is {mean}, expected 1 (critical law)")]
    NotCritical { mean: f64 },
    #[error("offspring mean is {mean} > 1 (supercritical laws are not supported)")]
    Supercritical { mean: f64 },
    #[error("p_0 = 0: trees would be infinite")]
    NoLeaves,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("argument s = {s} is outside [0, 1]")]
    OutOfDomain { s: f64 },
    #[error("cannot parse family '{0}'")]
    Parse(String),
}

/// The shape of an offspring law.
#[derive(Clone, Debug, PartialEq)]
pub enum Family {
    /// Explicit probabilities `p_0, ..., p_K`.
    FiniteSupport(Vec<f64>),
    /// Poisson(1): rooted Cayley trees.
    Poisson1,
    /// `p_i = 2^{-(i+1)}`: planted plane trees.
    GeometricHalf,
    /// Binomial(d, 1/d).
    Binomial(u32),
    /// `p_0 = 1 - 1/t`, `p_t = 1/t`.
    TaryFlajolet(u32),
    /// Uniform over a finite set of child counts.
    UniformSet(Vec<u32>),
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::FiniteSupport(p) => {
                let parts: Vec<String> = p.iter().map(|x| x.to_string()).collect();
                write!(f, "pmf:{}", parts.join(","))
            }
            Family::Poisson1 => write!(f, "cayley"),
            Family::GeometricHalf => write!(f, "geometric"),
            Family::Binomial(2) => write!(f, "catalan"),
            Family::Binomial(d) => write!(f, "binomial:{d}"),
            Family::TaryFlajolet(t) => write!(f, "tary:{t}"),
            Family::UniformSet(s) if s == &[0, 2] => write!(f, "binary"),
            Family::UniformSet(s) if s == &[0, 1, 2] => write!(f, "motzkin"),
            Family::UniformSet(s) => {
                let parts: Vec<String> = s.iter().map(|x| x.to_string()).collect();
                write!(f, "uniform:{}", parts.join(","))
            }
        }
    }
}

#[derive(Clone, Debug)]
enum Sampler {
    Alias(WeightedAliasIndex<f64>),
    Poisson,
    Geometric(Geometric),
}

/// A validated offspring law.
#[derive(Clone, Debug)]
pub struct OffspringDistribution {
    family: Family,
    /// `p_0..p_K`; for infinite supports truncated once the tail drops below
    /// [`SERIES_TAIL`].
    table: Vec<f64>,
    finite: bool,
    mean: f64,
    variance: f64,
    sampler: Sampler,
}

impl OffspringDistribution {
    /// Builds a critical law. Non-critical or degenerate inputs are rejected.
    pub fn new(family: Family) -> Result<Self, OffspringError> {
        Self::build(family, false)
    }

    /// Builds a law with mean at most 1. Zero variance is tolerated here, so
    /// the point mass at 0 is accepted.
    pub fn subcritical(family: Family) -> Result<Self, OffspringError> {
        Self::build(family, true)
    }

    pub fn binary() -> Self {
        Self::new(Family::UniformSet(vec![0, 2])).expect("valid law")
    }

    pub fn motzkin() -> Self {
        Self::new(Family::UniformSet(vec![0, 1, 2])).expect("valid law")
    }

    pub fn cayley() -> Self {
        Self::new(Family::Poisson1).expect("valid law")
    }

    pub fn geometric() -> Self {
        Self::new(Family::GeometricHalf).expect("valid law")
    }

    pub fn catalan() -> Self {
        Self::new(Family::Binomial(2)).expect("valid law")
    }

    pub fn binomial(d: u32) -> Result<Self, OffspringError> {
        Self::new(Family::Binomial(d))
    }

    pub fn tary(t: u32) -> Result<Self, OffspringError> {
        Self::new(Family::TaryFlajolet(t))
    }

    /// The seven families of the summary table, keyed by their parse label.
    pub fn table_families() -> Vec<(&'static str, Self)> {
        vec![
            ("binary", Self::binary()),
            ("tary:3", Self::tary(3).expect("valid law")),
            ("cayley", Self::cayley()),
            ("geometric", Self::geometric()),
            ("motzkin", Self::motzkin()),
            ("catalan", Self::catalan()),
            ("binomial:3", Self::binomial(3).expect("valid law")),
        ]
    }

    fn build(family: Family, allow_subcritical: bool) -> Result<Self, OffspringError> {
        let (table, finite) = match &family {
            Family::FiniteSupport(p) => {
                if p.is_empty() {
                    return Err(OffspringError::InvalidParameter(
                        "empty probability list".into(),
                    ));
                }
                for (index, &value) in p.iter().enumerate() {
                    if !(0.0..=1.0).contains(&value) || value.is_nan() {
                        return Err(OffspringError::InvalidProbability { index, value });
                    }
                }
                let sum: f64 = p.iter().sum();
                if (sum - 1.0).abs() > NORMALIZATION_TOLERANCE {
                    return Err(OffspringError::NotNormalized { sum });
                }
                (p.clone(), true)
            }
            Family::UniformSet(support) => {
                if support.is_empty() {
                    return Err(OffspringError::InvalidParameter("empty support".into()));
                }
                let mut sorted = support.clone();
                sorted.sort_unstable();
                sorted.dedup();
                if sorted.len() != support.len() {
                    return Err(OffspringError::InvalidParameter(
                        "support has repeated values".into(),
                    ));
                }
                let k = *sorted.last().unwrap() as usize;
                let mut p = vec![0.0; k + 1];
                let w = 1.0 / sorted.len() as f64;
                for &i in &sorted {
                    p[i as usize] = w;
                }
                (p, true)
            }
            Family::Binomial(d) => {
                if *d < 2 {
                    return Err(OffspringError::InvalidParameter(format!(
                        "binomial order d = {d} must be at least 2"
                    )));
                }
                let d = *d as usize;
                let pr = 1.0 / d as f64;
                let mut p = vec![0.0; d + 1];
                let mut coef = 1.0;
                for (i, slot) in p.iter_mut().enumerate() {
                    *slot = coef * pr.powi(i as i32) * (1.0 - pr).powi((d - i) as i32);
                    coef = coef * (d - i) as f64 / (i + 1) as f64;
                }
                (p, true)
            }
            Family::TaryFlajolet(t) => {
                if *t < 2 {
                    return Err(OffspringError::InvalidParameter(format!(
                        "arity t = {t} must be at least 2"
                    )));
                }
                let t = *t as usize;
                let mut p = vec![0.0; t + 1];
                p[0] = 1.0 - 1.0 / t as f64;
                p[t] = 1.0 / t as f64;
                (p, true)
            }
            Family::Poisson1 => {
                let mut p = Vec::new();
                let mut term = (-1.0f64).exp();
                let mut acc = 0.0;
                let mut i = 0usize;
                while 1.0 - acc >= SERIES_TAIL || i < 2 {
                    p.push(term);
                    acc += term;
                    i += 1;
                    term /= i as f64;
                    if term < SERIES_TAIL * 1e-3 {
                        break;
                    }
                }
                (p, false)
            }
            Family::GeometricHalf => {
                let mut p = Vec::new();
                let mut term = 0.5;
                // tail after index i is 2^{-(i+1)}
                while term >= SERIES_TAIL {
                    p.push(term);
                    term *= 0.5;
                }
                p.push(term);
                (p, false)
            }
        };

        let mean: f64 = table.iter().enumerate().map(|(i, p)| i as f64 * p).sum();
        let second: f64 = table
            .iter()
            .enumerate()
            .map(|(i, p)| (i * i) as f64 * p)
            .sum();
        let variance = match family {
            Family::Poisson1 => 1.0,
            Family::GeometricHalf => 2.0,
            _ => (second - mean * mean).max(0.0),
        };
        let mean = match family {
            Family::Poisson1 | Family::GeometricHalf => 1.0,
            _ => mean,
        };

        if table[0] <= 0.0 {
            return Err(OffspringError::NoLeaves);
        }
        if mean > 1.0 + CRITICAL_TOLERANCE {
            return Err(OffspringError::Supercritical { mean });
        }
        if !allow_subcritical {
            if variance <= 0.0 {
                return Err(OffspringError::ZeroVariance);
            }
            if (mean - 1.0).abs() > CRITICAL_TOLERANCE {
                return Err(OffspringError::NotCritical { mean });
            }
        }

        let sampler = match family {
            Family::Poisson1 => Sampler::Poisson,
            Family::GeometricHalf => Sampler::Geometric(Geometric::new(0.5).expect("p in (0,1]")),
            _ => Sampler::Alias(
                WeightedAliasIndex::new(table.clone())
                    .map_err(|e| OffspringError::InvalidParameter(e.to_string()))?,
            ),
        };

        Ok(Self {
            family,
            table,
            finite,
            mean,
            variance,
            sampler,
        })
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    /// Canonical parse label, e.g. `"binary"` or `"binomial:3"`.
    pub fn label(&self) -> String {
        self.family.to_string()
    }

    pub fn mean(&self) -> f64 {
        self.mean
    }

    pub fn variance(&self) -> f64 {
        self.variance
    }

    pub fn is_critical(&self) -> bool {
        (self.mean - 1.0).abs() <= CRITICAL_TOLERANCE && self.variance > 0.0
    }

    pub fn is_finite_support(&self) -> bool {
        self.finite
    }

    /// `p_0..p_K`. Infinite supports are truncated at tail mass [`SERIES_TAIL`].
    pub fn table(&self) -> &[f64] {
        &self.table
    }

    pub fn pmf(&self, i: usize) -> f64 {
        match self.family {
            Family::Poisson1 => {
                let mut v = (-1.0f64).exp();
                for k in 1..=i {
                    v /= k as f64;
                }
                v
            }
            Family::GeometricHalf => 0.5f64.powi(i as i32 + 1),
            _ => self.table.get(i).copied().unwrap_or(0.0),
        }
    }

    pub fn p0(&self) -> f64 {
        self.table[0]
    }

    pub fn p1(&self) -> f64 {
        self.pmf(1)
    }

    /// Smallest `i > 1` with `p_i > 0`; only defined when `p_1 = 0`.
    pub fn kappa(&self) -> Option<u32> {
        if self.p1() > 0.0 {
            return None;
        }
        self.table
            .iter()
            .enumerate()
            .skip(2)
            .find(|(_, &p)| p > 0.0)
            .map(|(i, _)| i as u32)
    }

    /// Gcd of the child counts with positive probability; every tree size `n`
    /// must satisfy `(n - 1) % gcd == 0`.
    pub fn support_gcd(&self) -> u64 {
        if !self.finite {
            return 1;
        }
        let mut g = 0u64;
        for (i, &p) in self.table.iter().enumerate().skip(1) {
            if p > 0.0 {
                g = gcd(g, i as u64);
            }
        }
        g.max(1)
    }

    /// Smallest size `m >= n` compatible with the support lattice.
    pub fn nearest_attainable_size(&self, n: u64) -> u64 {
        let g = self.support_gcd();
        let n = n.max(1);
        n + (g - (n - 1) % g) % g
    }

    /// Generating function `f(s) = E[s^xi]`.
    pub fn pgf(&self, s: f64) -> Result<f64, OffspringError> {
        check_domain(s)?;
        Ok(self.f(s))
    }

    /// Derivative `f'(s) = E[xi s^(xi - 1)]`.
    pub fn pgf_prime(&self, s: f64) -> Result<f64, OffspringError> {
        check_domain(s)?;
        Ok(self.f_prime(s))
    }

    pub(crate) fn f(&self, s: f64) -> f64 {
        match self.family {
            Family::Poisson1 => (s - 1.0).exp(),
            Family::GeometricHalf => 1.0 / (2.0 - s),
            Family::Binomial(d) => (1.0 + (s - 1.0) / d as f64).powi(d as i32),
            Family::TaryFlajolet(t) => {
                let t = t as f64;
                1.0 - 1.0 / t + s.powf(t) / t
            }
            _ => self.table.iter().rev().fold(0.0, |acc, &p| acc * s + p),
        }
    }

    pub(crate) fn f_prime(&self, s: f64) -> f64 {
        match self.family {
            Family::Poisson1 => (s - 1.0).exp(),
            Family::GeometricHalf => 1.0 / ((2.0 - s) * (2.0 - s)),
            Family::Binomial(d) => (1.0 + (s - 1.0) / d as f64).powi(d as i32 - 1),
            Family::TaryFlajolet(t) => s.powi(t as i32 - 1),
            _ => self
                .table
                .iter()
                .enumerate()
                .skip(1)
                .rev()
                .fold(0.0, |acc, (i, &p)| acc * s + i as f64 * p),
        }
    }

    /// `f(u) - f(v)` where the caller supplies `delta = u - v` exactly.
    ///
    /// The difference is formed as `delta` times a divided difference, so it
    /// keeps full relative precision when `u` and `v` agree to many digits.
    pub(crate) fn f_diff(&self, u: f64, v: f64, delta: f64) -> f64 {
        match self.family {
            Family::Poisson1 => (v - 1.0).exp() * delta.exp_m1(),
            Family::GeometricHalf => delta / ((2.0 - u) * (2.0 - v)),
            Family::Binomial(d) => {
                let df = d as f64;
                let a = 1.0 + (u - 1.0) / df;
                let b = 1.0 + (v - 1.0) / df;
                delta / df * geometric_sum(a, b, d as usize)
            }
            Family::TaryFlajolet(t) => delta / t as f64 * geometric_sum(u, v, t as usize),
            _ => {
                // h_k = (u^k - v^k) / (u - v) = u h_{k-1} + v^{k-1}
                let mut h = 0.0;
                let mut vpow = 1.0;
                let mut acc = 0.0;
                for &p in self.table.iter().skip(1) {
                    h = u * h + vpow;
                    vpow *= v;
                    acc += p * h;
                }
                delta * acc
            }
        }
    }

    /// `ln((f(t) - p_0) / t)` for `t = exp(ln_t)`, valid far below the
    /// smallest positive double.
    pub(crate) fn ln_increment(&self, ln_t: f64) -> f64 {
        match self.family {
            Family::Poisson1 => {
                let t = ln_t.exp();
                if t == 0.0 {
                    -1.0
                } else {
                    -1.0 + (t.exp_m1() / t).ln()
                }
            }
            Family::GeometricHalf => -(2.0 * (2.0 - ln_t.exp())).ln(),
            _ => log_sum_exp(
                self.table
                    .iter()
                    .enumerate()
                    .skip(1)
                    .filter(|(_, &p)| p > 0.0)
                    .map(|(k, &p)| p.ln() + (k - 1) as f64 * ln_t),
            ),
        }
    }

    /// `ln f'(s)` for `s = exp(ln_s)`.
    pub(crate) fn ln_f_prime(&self, ln_s: f64) -> f64 {
        match self.family {
            Family::Poisson1 => ln_s.exp() - 1.0,
            Family::GeometricHalf => -2.0 * (2.0 - ln_s.exp()).ln(),
            _ => log_sum_exp(
                self.table
                    .iter()
                    .enumerate()
                    .skip(1)
                    .filter(|(_, &p)| p > 0.0)
                    .map(|(k, &p)| (k as f64 * p).ln() + (k - 1) as f64 * ln_s),
            ),
        }
    }

    /// Draws one child count.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> u32 {
        match &self.sampler {
            Sampler::Alias(alias) => alias.sample(rng) as u32,
            Sampler::Poisson => poisson1_inversion(rng),
            Sampler::Geometric(g) => g.sample(rng) as u32,
        }
    }

    /// The size-biased law `P{zeta = i} = i p_i`. Requires a critical law.
    pub fn size_biased(&self) -> Result<SizeBiased, OffspringError> {
        if (self.mean - 1.0).abs() > CRITICAL_TOLERANCE {
            return Err(OffspringError::NotCritical { mean: self.mean });
        }
        let inner = match self.family {
            Family::Poisson1 => SizeBiasedInner::PoissonShift,
            Family::GeometricHalf => {
                SizeBiasedInner::GeometricPair(Geometric::new(0.5).expect("p in (0,1]"))
            }
            _ => {
                let weights: Vec<f64> = self
                    .table
                    .iter()
                    .enumerate()
                    .map(|(i, p)| i as f64 * p)
                    .collect();
                SizeBiasedInner::Alias(
                    WeightedAliasIndex::new(weights)
                        .map_err(|e| OffspringError::InvalidParameter(e.to_string()))?,
                )
            }
        };
        Ok(SizeBiased {
            base: self.clone(),
            inner,
        })
    }
}

impl FromStr for OffspringDistribution {
    type Err = OffspringError;

    /// Grammar: `binary`, `tary:<t>`, `cayley`, `geometric`, `motzkin`,
    /// `catalan`, `binomial:<d>`, `pmf:<p0,p1,...>`, `uniform:<k0,k1,...>`.
    fn from_str(spec: &str) -> Result<Self, Self::Err> {
        let spec = spec.trim();
        let (head, arg) = match spec.split_once(':') {
            Some((h, a)) => (h.trim(), Some(a.trim())),
            None => (spec, None),
        };
        let parse_int = |a: Option<&str>| -> Result<u32, OffspringError> {
            a.ok_or_else(|| OffspringError::Parse(spec.to_string()))?
                .parse::<u32>()
                .map_err(|_| OffspringError::Parse(spec.to_string()))
        };
        match (head.to_ascii_lowercase().as_str(), arg) {
            ("binary", None) => Ok(Self::binary()),
            ("cayley", None) => Ok(Self::cayley()),
            ("geometric", None) => Ok(Self::geometric()),
            ("motzkin", None) => Ok(Self::motzkin()),
            ("catalan", None) => Ok(Self::catalan()),
            ("tary", a) => Self::tary(parse_int(a)?),
            ("binomial", a) => Self::binomial(parse_int(a)?),
            ("pmf", Some(list)) => {
                let probs = list
                    .split(',')
                    .map(|x| x.trim().parse::<f64>())
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(|_| OffspringError::Parse(spec.to_string()))?;
                Self::new(Family::FiniteSupport(probs))
            }
            ("uniform", Some(list)) => {
                let support = list
                    .split(',')
                    .map(|x| x.trim().parse::<u32>())
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(|_| OffspringError::Parse(spec.to_string()))?;
                Self::new(Family::UniformSet(support))
            }
            _ => Err(OffspringError::Parse(spec.to_string())),
        }
    }
}

#[derive(Clone, Debug)]
enum SizeBiasedInner {
    Alias(WeightedAliasIndex<f64>),
    /// `zeta = 1 + Poisson(1)`.
    PoissonShift,
    /// `zeta = 1 + G1 + G2` with independent Geometric(1/2) failures.
    GeometricPair(Geometric),
}

/// Sampler for the size-biased child count on the spine of Kesten's tree.
#[derive(Clone, Debug)]
pub struct SizeBiased {
    base: OffspringDistribution,
    inner: SizeBiasedInner,
}

impl SizeBiased {
    pub fn pmf(&self, i: usize) -> f64 {
        i as f64 * self.base.pmf(i)
    }

    /// `E[zeta] = sigma^2 + 1`.
    pub fn mean(&self) -> f64 {
        self.base.variance + 1.0
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> u32 {
        match &self.inner {
            SizeBiasedInner::Alias(a) => a.sample(rng) as u32,
            SizeBiasedInner::PoissonShift => 1 + poisson1_inversion(rng),
            SizeBiasedInner::GeometricPair(g) => (1 + g.sample(rng) + g.sample(rng)) as u32,
        }
    }
}

fn poisson1_inversion<R: Rng + ?Sized>(rng: &mut R) -> u32 {
    let u: f64 = rng.random();
    let mut k = 0u32;
    let mut p = (-1.0f64).exp();
    let mut cdf = p;
    while u > cdf && k < 64 {
        k += 1;
        p /= k as f64;
        cdf += p;
    }
    k
}

fn check_domain(s: f64) -> Result<(), OffspringError> {
    if (0.0..=1.0).contains(&s) {
        Ok(())
    } else {
        Err(OffspringError::OutOfDomain { s })
    }
}

/// `sum_{j<k} a^{k-1-j} b^j`.
fn geometric_sum(a: f64, b: f64, k: usize) -> f64 {
    let mut h = 0.0;
    let mut bpow = 1.0;
    for _ in 0..k {
        h = a * h + bpow;
        bpow *= b;
    }
    h
}

fn log_sum_exp(terms: impl Iterator<Item = f64>) -> f64 {
    let terms: Vec<f64> = terms.collect();
    let max = terms.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if max == f64::NEG_INFINITY {
        return max;
    }
    max + terms.iter().map(|t| (t - max).exp()).sum::<f64>().ln()
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}
