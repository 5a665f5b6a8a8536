//! Monte Carlo checks of the limit laws on conditioned trees.
//!
//! Trial `t` at size `n` draws from its own stream `(n << 24) | t`, and trials
//! are collected in index order before any reduction, so a report depends
//! only on the seed and the configuration, never on the thread count.

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::analytic::{
    leafheight_constant, leafheight_distribution, peel_constant, peel_distribution, root_limit_law,
    solve_q, solve_qs, AnalyticError, Normalization,
};
use crate::config::slack;
use crate::offspring::OffspringDistribution;
use crate::rng::{RandomStream, RNG_ALGORITHM};
use crate::sampler::{sample_conditioned, SamplerError};
use crate::tree::{count_even, layer_histogram, Tree};

/// Slack for limits normalized by `ln n` or `ln ln n`. Only used for the
/// secondary tolerance check; the primary test for these is the trend.
pub const SLOW_LIMIT_SLACK: f64 = 0.05;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ExperimentError {
    #[error(transparent)]
    Sampler(#[from] SamplerError),
    #[error(transparent)]
    Analytic(#[from] AnalyticError),
    #[error("invalid experiment configuration: {0}")]
    InvalidConfig(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    Consistent,
    Inconsistent,
}

impl Verdict {
    fn from_bool(ok: bool) -> Self {
        if ok {
            Verdict::Consistent
        } else {
            Verdict::Inconsistent
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Estimate {
    pub n: usize,
    pub mean: f64,
    pub std_error: f64,
    /// `mean - target`
    pub deviation: f64,
    /// `|deviation| <= max(3 SE, slack)`
    pub within_tolerance: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExperimentReport {
    pub name: String,
    pub family: String,
    pub n_values: Vec<usize>,
    pub trials_per_n: usize,
    pub seed: u64,
    pub rng: String,
    pub estimates: Vec<Estimate>,
    pub target: f64,
    pub normalization: Normalization,
    pub slack: f64,
    /// Outcome of [`approaches`] over increasing `n`. Only computed for
    /// `ln n` and `ln ln n` normalizations.
    pub trend: Option<bool>,
    pub verdict: Verdict,
    pub rule: String,
    /// Per-trial normalized values, one vector per entry of `n_values`.
    #[serde(skip)]
    pub per_trial: Vec<Vec<f64>>,
}

impl ExperimentReport {
    #[allow(clippy::too_many_arguments)]
    fn build(
        name: String,
        d: &OffspringDistribution,
        n_values: &[usize],
        trials: usize,
        seed: u64,
        target: f64,
        normalization: Normalization,
        per_trial: Vec<Vec<f64>>,
    ) -> Self {
        let slack = match normalization {
            Normalization::Linear => slack::LINEAR_RATIO,
            _ => SLOW_LIMIT_SLACK,
        };
        let estimates: Vec<Estimate> = n_values
            .iter()
            .zip(&per_trial)
            .map(|(&n, xs)| {
                let (mean, std_error) = mean_and_se(xs);
                let deviation = mean - target;
                Estimate {
                    n,
                    mean,
                    std_error,
                    deviation,
                    within_tolerance: deviation.abs()
                        <= (slack::STANDARD_ERRORS * std_error).max(slack),
                }
            })
            .collect();
        let last_ok = estimates.last().is_some_and(|e| e.within_tolerance);
        let (trend, ok, rule) = match normalization {
            Normalization::Linear => (
                None,
                last_ok,
                format!("|mean - target| <= max(3 SE, {slack}) at the largest n"),
            ),
            _ => {
                let t = approaches(&estimates);
                (
                    Some(t),
                    t || last_ok,
                    format!(
                        "|mean - target| shrinks from smallest to largest n with no step away beyond 3 SE, or <= max(3 SE, {slack}) at the largest n"
                    ),
                )
            }
        };
        Self {
            name,
            family: d.label(),
            n_values: n_values.to_vec(),
            trials_per_n: trials,
            seed,
            rng: RNG_ALGORITHM.to_string(),
            estimates,
            target,
            normalization,
            slack,
            trend,
            verdict: Verdict::from_bool(ok),
            rule,
            per_trial,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "{} on {} ({} trials, seed {})",
            self.name, self.family, self.trials_per_n, self.seed
        );
        let _ = writeln!(out, "target {:.6} ({:?})", self.target, self.normalization);
        let _ = writeln!(
            out,
            "{:>10}  {:>10}  {:>10}  {:>10}",
            "n", "mean", "se", "deviation"
        );
        for e in &self.estimates {
            let _ = writeln!(
                out,
                "{:>10}  {:>10.6}  {:>10.6}  {:>+10.6}",
                e.n, e.mean, e.std_error, e.deviation
            );
        }
        if let Some(t) = self.trend {
            let _ = writeln!(out, "trend toward target: {t}");
        }
        let _ = writeln!(out, "verdict: {:?} ({})", self.verdict, self.rule);
        out
    }

    /// `n,trial,value` rows of the per-trial values.
    pub fn trials_csv(&self) -> String {
        let mut out = String::from("n,trial,value\n");
        for (n, xs) in self.n_values.iter().zip(&self.per_trial) {
            for (t, x) in xs.iter().enumerate() {
                let _ = writeln!(out, "{n},{t},{x:e}");
            }
        }
        out
    }
}

/// Per-index comparison of mean layer fractions with `r_i`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LayerRow {
    pub index: usize,
    pub mean: f64,
    pub std_error: f64,
    pub target: f64,
    pub deviation: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LayerReport {
    pub name: String,
    pub family: String,
    pub n: usize,
    pub trials: usize,
    pub seed: u64,
    pub rng: String,
    pub rows: Vec<LayerRow>,
    pub max_deviation: f64,
    pub slack: f64,
    pub verdict: Verdict,
    pub rule: String,
    /// Every tree's layer counts summed to its size.
    pub layers_sum_to_n: bool,
    #[serde(skip)]
    pub per_trial: Vec<Vec<f64>>,
}

impl LayerReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "{} on {} (n = {}, {} trials, seed {})",
            self.name, self.family, self.n, self.trials, self.seed
        );
        let _ = writeln!(
            out,
            "{:>5}  {:>10}  {:>10}  {:>10}  {:>10}",
            "i", "N_i/n", "se", "r_i", "deviation"
        );
        for r in &self.rows {
            let _ = writeln!(
                out,
                "{:>5}  {:>10.6}  {:>10.6}  {:>10.6}  {:>+10.6}",
                r.index, r.mean, r.std_error, r.target, r.deviation
            );
        }
        let _ = writeln!(out, "max deviation {:.6}", self.max_deviation);
        let _ = writeln!(out, "verdict: {:?} ({})", self.verdict, self.rule);
        out
    }

    /// `trial,index,value` rows of the per-trial layer fractions.
    pub fn trials_csv(&self) -> String {
        let mut out = String::from("trial,index,value\n");
        for (t, xs) in self.per_trial.iter().enumerate() {
            for (i, x) in xs.iter().enumerate() {
                let _ = writeln!(out, "{t},{i},{x:e}");
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HistogramFit {
    pub empirical: Vec<f64>,
    pub table: Vec<f64>,
    pub table_tail: f64,
    pub total_variation: f64,
    pub slack: f64,
    pub verdict: Verdict,
}

impl HistogramFit {
    fn new(empirical: Vec<f64>, table: crate::analytic::DistributionTable) -> Self {
        let tv = table.total_variation(&empirical);
        Self {
            empirical,
            table: table.values,
            table_tail: table.tail_mass,
            total_variation: tv,
            slack: slack::LEAF_HEIGHT_TV,
            verdict: Verdict::from_bool(tv < slack::LEAF_HEIGHT_TV),
        }
    }
}

/// Root and uniform-node leaf-height histograms against their limit laws.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LeafHeightReport {
    pub name: String,
    pub family: String,
    pub n: usize,
    pub trials: usize,
    pub seed: u64,
    pub rng: String,
    pub root: HistogramFit,
    pub uniform_node: HistogramFit,
    pub verdict: Verdict,
    /// Root leaf-height of each trial.
    #[serde(skip)]
    pub per_trial: Vec<u32>,
}

impl LeafHeightReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "{} on {} (n = {}, {} trials, seed {})",
            self.name, self.family, self.n, self.trials, self.seed
        );
        for (label, fit) in [("root", &self.root), ("uniform node", &self.uniform_node)] {
            let _ = writeln!(
                out,
                "{label}: total variation {:.6} ({:?})",
                fit.total_variation, fit.verdict
            );
            let _ = writeln!(out, "{:>5}  {:>10}  {:>10}", "i", "empirical", "limit");
            let len = fit.empirical.len().max(fit.table.len());
            for i in 0..len {
                let e = fit.empirical.get(i).copied().unwrap_or(0.0);
                let t = fit.table.get(i).copied().unwrap_or(0.0);
                if e > 0.0 || t > 1e-9 {
                    let _ = writeln!(out, "{i:>5}  {e:>10.6}  {t:>10.6}");
                }
            }
        }
        let _ = writeln!(out, "verdict: {:?}", self.verdict);
        out
    }

    /// `trial,root_leaf_height` rows.
    pub fn trials_csv(&self) -> String {
        let mut out = String::from("trial,root_leaf_height\n");
        for (t, v) in self.per_trial.iter().enumerate() {
            let _ = writeln!(out, "{t},{v}");
        }
        out
    }
}

/// One family of the summary table: exact constants next to estimates.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Table1Row {
    pub name: String,
    pub family: String,
    pub n: usize,
    pub q: f64,
    pub independence_mean: f64,
    pub independence_se: f64,
    pub peel_constant: f64,
    pub peel_mean: f64,
    pub peel_se: f64,
    pub leafheight_normalization: Normalization,
    pub leafheight_constant: f64,
    pub leafheight_mean: f64,
    pub leafheight_se: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Table1Report {
    pub n: usize,
    pub trials: usize,
    pub seed: u64,
    pub rng: String,
    pub rows: Vec<Table1Row>,
}

impl Table1Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Columns `I_n`, `M_n`, `L_n`, each as "exact (estimate)".
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "n ~ {}, {} trials per family, seed {}",
            self.n, self.trials, self.seed
        );
        let _ = writeln!(
            out,
            "{:<12} {:>8}  {:<22} {:<22} {:<28}",
            "family", "n", "I_n / n", "M_n / ln n", "L_n"
        );
        for r in &self.rows {
            let unit = match r.leafheight_normalization {
                Normalization::LogLog => "ln ln n",
                _ => "ln n",
            };
            let _ = writeln!(
                out,
                "{:<12} {:>8}  {:<22} {:<22} {:<28}",
                r.name,
                r.n,
                format!("{:.6} ({:.4})", r.q, r.independence_mean),
                format!("{:.6} ({:.4})", r.peel_constant, r.peel_mean),
                format!(
                    "{:.6} ({:.4}) x {unit}",
                    r.leafheight_constant, r.leafheight_mean
                ),
            );
        }
        out
    }
}

/// Stream id of trial `trial` at size `n`.
pub fn stream_id(n: usize, trial: usize) -> u64 {
    ((n as u64) << 24) | trial as u64
}

/// Mean and standard error with the `k - 1` sample variance.
pub fn mean_and_se(xs: &[f64]) -> (f64, f64) {
    let k = xs.len();
    if k == 0 {
        return (f64::NAN, f64::NAN);
    }
    let mean = xs.iter().sum::<f64>() / k as f64;
    if k < 2 {
        return (mean, f64::NAN);
    }
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (k - 1) as f64;
    (mean, (var / k as f64).sqrt())
}

/// Trend test for slowly converging limits: `|mean - target|` ends smaller
/// than it starts, and no step moves it away from the target by more than
/// three standard errors of the difference.
pub fn approaches(estimates: &[Estimate]) -> bool {
    let (Some(first), Some(last)) = (estimates.first(), estimates.last()) else {
        return false;
    };
    estimates.len() >= 2
        && last.deviation.abs() < first.deviation.abs()
        && estimates.windows(2).all(|w| {
            let noise = slack::STANDARD_ERRORS * w[0].std_error.hypot(w[1].std_error);
            w[1].deviation.abs() <= w[0].deviation.abs() + noise
        })
}

/// Samples `trials` copies of `T_n` in parallel and maps each through `f`.
pub fn map_trials<T, F>(
    d: &OffspringDistribution,
    n: usize,
    trials: usize,
    seed: u64,
    f: F,
) -> Result<Vec<T>, ExperimentError>
where
    T: Send,
    F: Fn(&Tree) -> T + Sync,
{
    if trials >= 1 << 24 {
        return Err(ExperimentError::InvalidConfig(format!(
            "at most {} trials per size",
            (1u64 << 24) - 1
        )));
    }
    (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = RandomStream::new(seed, stream_id(n, t));
            let tree = sample_conditioned(d, n, &mut rng)?;
            Ok(f(&tree))
        })
        .collect()
}

fn check_trials(trials: usize) -> Result<(), ExperimentError> {
    if trials < 2 {
        return Err(ExperimentError::InvalidConfig(
            "standard errors need at least 2 trials".into(),
        ));
    }
    Ok(())
}

fn check_sizes(n_values: &[usize], norm: Normalization) -> Result<(), ExperimentError> {
    if n_values.is_empty() {
        return Err(ExperimentError::InvalidConfig("no tree sizes given".into()));
    }
    let min = match norm {
        Normalization::Linear => 1,
        Normalization::Log => 2,
        Normalization::LogLog => 3,
    };
    if let Some(&n) = n_values.iter().find(|&&n| n < min) {
        return Err(ExperimentError::InvalidConfig(format!(
            "n = {n} is too small for {norm:?} normalization"
        )));
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn scalar_experiment(
    name: &str,
    d: &OffspringDistribution,
    n_values: &[usize],
    trials: usize,
    seed: u64,
    target: f64,
    norm: Normalization,
    stat: impl Fn(&Tree) -> f64 + Sync,
) -> Result<ExperimentReport, ExperimentError> {
    check_trials(trials)?;
    check_sizes(n_values, norm)?;
    let per_trial = n_values
        .iter()
        .map(|&n| {
            let scale = norm.scale(n as u64);
            map_trials(d, n, trials, seed, |t| stat(t) / scale)
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(ExperimentReport::build(
        name.to_string(),
        d,
        n_values,
        trials,
        seed,
        target,
        norm,
        per_trial,
    ))
}

/// `I_n / n` against `q`.
pub fn run_independence(
    d: &OffspringDistribution,
    n_values: &[usize],
    trials: usize,
    seed: u64,
) -> Result<ExperimentReport, ExperimentError> {
    let target = solve_q(d).value;
    scalar_experiment(
        "independence",
        d,
        n_values,
        trials,
        seed,
        target,
        Normalization::Linear,
        |t| t.independence_number() as f64,
    )
}

/// `M_n / ln n` against `1 / ln(1 / f'(1 - q))`.
pub fn run_peel(
    d: &OffspringDistribution,
    n_values: &[usize],
    trials: usize,
    seed: u64,
) -> Result<ExperimentReport, ExperimentError> {
    scalar_experiment(
        "peel",
        d,
        n_values,
        trials,
        seed,
        peel_constant(d),
        Normalization::Log,
        |t| t.max_peel() as f64,
    )
}

/// `L_n` over `ln n` or `ln ln n`, depending on whether `p_1 > 0`.
pub fn run_leafheight(
    d: &OffspringDistribution,
    n_values: &[usize],
    trials: usize,
    seed: u64,
) -> Result<ExperimentReport, ExperimentError> {
    let (norm, target) = leafheight_constant(d);
    scalar_experiment("leafheight", d, n_values, trials, seed, target, norm, |t| {
        t.max_leaf_height() as f64
    })
}

/// `V_s(T_n) / n` against `q_s`, one report per `s`. Every `s` is evaluated
/// on the same trees.
pub fn run_spvc(
    d: &OffspringDistribution,
    s_values: &[usize],
    n_values: &[usize],
    trials: usize,
    seed: u64,
) -> Result<Vec<ExperimentReport>, ExperimentError> {
    check_trials(trials)?;
    check_sizes(n_values, Normalization::Linear)?;
    if s_values.is_empty() {
        return Err(ExperimentError::InvalidConfig(
            "no path orders given".into(),
        ));
    }
    let targets = s_values
        .iter()
        .map(|&s| solve_qs(d, s).map(|r| r.value))
        .collect::<Result<Vec<_>, _>>()?;
    // [n][trial][s]
    let raw = n_values
        .iter()
        .map(|&n| {
            map_trials(d, n, trials, seed, |t| {
                s_values
                    .iter()
                    .map(|&s| t.spvc_number(s) as f64 / n as f64)
                    .collect::<Vec<_>>()
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(s_values
        .iter()
        .zip(targets)
        .enumerate()
        .map(|(j, (&s, target))| {
            let per_trial = raw
                .iter()
                .map(|per_n| per_n.iter().map(|v| v[j]).collect())
                .collect();
            ExperimentReport::build(
                format!("spvc:s={s}"),
                d,
                n_values,
                trials,
                seed,
                target,
                Normalization::Linear,
                per_trial,
            )
        })
        .collect())
}

/// Mean layer fractions `N_i / n` for `i <= i_max` against `r_i`.
pub fn run_layers(
    d: &OffspringDistribution,
    n: usize,
    trials: usize,
    i_max: usize,
    seed: u64,
) -> Result<LayerReport, ExperimentError> {
    check_trials(trials)?;
    check_sizes(&[n], Normalization::Linear)?;
    let table = peel_distribution(d, i_max + 1)?;
    let counted = map_trials(d, n, trials, seed, |t| {
        let counts = layer_histogram(&t.peel_numbers());
        let total: usize = counts.iter().sum();
        let fractions: Vec<f64> = (0..=i_max)
            .map(|i| counts.get(i).copied().unwrap_or(0) as f64 / n as f64)
            .collect();
        (fractions, total == t.len())
    })?;
    let layers_sum_to_n = counted.iter().all(|(_, ok)| *ok);
    let per_trial: Vec<Vec<f64>> = counted.into_iter().map(|(f, _)| f).collect();
    let rows: Vec<LayerRow> = (0..=i_max)
        .map(|i| {
            let xs: Vec<f64> = per_trial.iter().map(|f| f[i]).collect();
            let (mean, std_error) = mean_and_se(&xs);
            let target = table.get(i);
            LayerRow {
                index: i,
                mean,
                std_error,
                target,
                deviation: mean - target,
            }
        })
        .collect();
    let max_deviation = rows.iter().map(|r| r.deviation.abs()).fold(0.0, f64::max);
    Ok(LayerReport {
        name: "layers".into(),
        family: d.label(),
        n,
        trials,
        seed,
        rng: RNG_ALGORITHM.to_string(),
        rows,
        max_deviation,
        slack: slack::LAYER_FRACTION,
        verdict: Verdict::from_bool(max_deviation < slack::LAYER_FRACTION),
        rule: format!("max_i |mean N_i/n - r_i| < {}", slack::LAYER_FRACTION),
        layers_sum_to_n,
        per_trial,
    })
}

/// Histograms of the root leaf-height and of the leaf-height of a uniform
/// node, against the limit laws `l**` and `l`.
///
/// The uniform-node histogram averages each tree's own leaf-height
/// histogram, which is the exact law of a uniformly chosen node.
pub fn run_root_leafheight(
    d: &OffspringDistribution,
    n: usize,
    trials: usize,
    seed: u64,
) -> Result<LeafHeightReport, ExperimentError> {
    check_trials(trials)?;
    check_sizes(&[n], Normalization::Linear)?;
    let per_tree = map_trials(d, n, trials, seed, |t| {
        let lambda = t.leaf_heights();
        (lambda[0], layer_histogram(&lambda))
    })?;
    let mut root = Vec::new();
    let mut uniform = Vec::new();
    for (r, hist) in &per_tree {
        let r = &(*r as usize);
        if root.len() <= *r {
            root.resize(r + 1, 0.0);
        }
        root[*r] += 1.0;
        if uniform.len() < hist.len() {
            uniform.resize(hist.len(), 0.0);
        }
        for (i, &c) in hist.iter().enumerate() {
            uniform[i] += c as f64 / n as f64;
        }
    }
    for x in root.iter_mut().chain(uniform.iter_mut()) {
        *x /= trials as f64;
    }
    let terms = root.len().max(uniform.len()) + 8;
    let root = HistogramFit::new(root, root_limit_law(d, terms)?);
    let uniform_node = HistogramFit::new(uniform, leafheight_distribution(d, terms)?);
    let verdict = Verdict::from_bool(
        root.verdict == Verdict::Consistent && uniform_node.verdict == Verdict::Consistent,
    );
    Ok(LeafHeightReport {
        name: "rootlaw".into(),
        family: d.label(),
        n,
        trials,
        seed,
        rng: RNG_ALGORITHM.to_string(),
        root,
        uniform_node,
        verdict,
        per_trial: per_tree.iter().map(|(r, _)| *r).collect(),
    })
}

/// The seven families of the summary table at the attainable size nearest
/// above `n`, with `I_n / n`, `M_n / ln n` and `L_n` estimated from the same
/// trees.
pub fn table1(trials: usize, n: usize, seed: u64) -> Result<Table1Report, ExperimentError> {
    check_trials(trials)?;
    check_sizes(&[n], Normalization::LogLog)?;
    let rows = OffspringDistribution::table_families()
        .into_iter()
        .map(|(name, d)| {
            let m = d.nearest_attainable_size(n as u64) as usize;
            let (lnorm, lconst) = leafheight_constant(&d);
            let (ln_n, l_scale) = (Normalization::Log.scale(m as u64), lnorm.scale(m as u64));
            let stats = map_trials(&d, m, trials, seed, |t| {
                let peel = t.peel_numbers();
                let m_n = peel.iter().copied().max().unwrap_or(0);
                (
                    count_even(&peel) as f64 / m as f64,
                    m_n as f64 / ln_n,
                    t.max_leaf_height() as f64 / l_scale,
                )
            })?;
            let col = |k: usize| -> (f64, f64) {
                let xs: Vec<f64> = stats
                    .iter()
                    .map(|s| match k {
                        0 => s.0,
                        1 => s.1,
                        _ => s.2,
                    })
                    .collect();
                mean_and_se(&xs)
            };
            let (im, ise) = col(0);
            let (pm, pse) = col(1);
            let (lm, lse) = col(2);
            Ok(Table1Row {
                name: name.to_string(),
                family: d.label(),
                n: m,
                q: solve_q(&d).value,
                independence_mean: im,
                independence_se: ise,
                peel_constant: peel_constant(&d),
                peel_mean: pm,
                peel_se: pse,
                leafheight_normalization: lnorm,
                leafheight_constant: lconst,
                leafheight_mean: lm,
                leafheight_se: lse,
            })
        })
        .collect::<Result<Vec<_>, ExperimentError>>()?;
    Ok(Table1Report {
        n,
        trials,
        seed,
        rng: RNG_ALGORITHM.to_string(),
        rows,
    })
}
