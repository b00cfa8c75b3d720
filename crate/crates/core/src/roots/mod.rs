//! Certified root finding and the analytic quantities built on it: sup norms
//! on intervals, Mahler measures and zero statistics.

mod find;
mod fixed;
mod mahler;
mod stats;
mod supnorm;

pub use find::{
    find_roots, find_roots_with, default_precision_cap, set_default_precision_cap, CertifiedRoot, Reality, RootOptions, RootSet, DEFAULT_PRECISION_CAP,
};
pub use supnorm::{sup_norm, sup_norm_int, sup_norm_with_argmax, SupNorm};
pub use mahler::{conformal_map, generalized_mahler, mahler_measure, GeneralizedMahler};
pub use stats::{arcsine_moment, zero_stats, EquilibriumMeasure, ZeroStats};
