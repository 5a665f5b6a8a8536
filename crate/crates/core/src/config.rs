//! Numerical tolerances shared by the solvers, tables and experiments.

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Bisection width for `q = f(1 - q)`.
    pub fixed_point: f64,
    /// Bisection width for the iterated `q_s` map.
    pub iterated_fixed_point: f64,
    /// Grid used to bracket a root of the iterated map.
    pub bracket_grid: usize,
    /// Allowed gap between a table's total (with tail) and 1.
    pub table_tail: f64,
    /// Index window for ratio-decay checks on the peel table.
    pub ratio_window: (usize, usize),
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            fixed_point: 1e-13,
            iterated_fixed_point: 1e-12,
            bracket_grid: 10_000,
            table_tail: 1e-12,
            ratio_window: (40, 60),
        }
    }
}

/// Monte Carlo slacks for linear-normalized limits.
pub mod slack {
    /// `I_n / n` and `V_s(T_n) / n` against their fixed points.
    pub const LINEAR_RATIO: f64 = 0.01;
    /// Largest per-layer deviation `|N_i / n - r_i|`.
    pub const LAYER_FRACTION: f64 = 0.015;
    /// Total variation between leaf-height histograms and limit tables.
    pub const LEAF_HEIGHT_TV: f64 = 0.02;
    /// Standard errors a deviation may span before it counts against a limit.
    pub const STANDARD_ERRORS: f64 = 3.0;
}
