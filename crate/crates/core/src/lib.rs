//! Random Galton–Watson trees: peel numbers, leaf-heights, independent sets
//! and path vertex covers, with exact limit constants and Monte Carlo checks.

pub mod analytic;
pub mod config;
pub mod experiments;
pub mod offspring;
pub mod rng;
pub mod sampler;
pub mod tree;

pub use analytic::{
    leafheight_constant, leafheight_distribution, peel_constant, peel_decay_rate,
    peel_distribution, root_limit_law, solve_q, solve_qs, AnalyticError, DistributionTable,
    FixedPointResult, Normalization, TableKind,
};
pub use config::Tolerances;
pub use offspring::{Family, OffspringDistribution, OffspringError, SizeBiased};
pub use rng::RandomStream;
pub use sampler::{
    sample_conditioned, sample_kesten, sample_unconditioned, KestenTruncation, SamplerError,
};
pub use tree::{NodeAnnotations, SpvcResult, Tree, TreeError};
