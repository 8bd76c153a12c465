//! Closed forms and asymptotics for the Fibonacci cube `Q(P_n)`.
//!
//! Counts are exact big integers. Reals appear only in the asymptotic and
//! audit helpers in [`asymptotic`] and [`sums`].

pub mod asymptotic;
mod exact;
pub mod sums;

pub use asymptotic::{
    d_star_expansion, entropy_f, entropy_g, layer_size_stirling, layer_size_stirling_ln, outdeg_stirling,
    outdeg_stirling_ln, qrdstar_ratio, EntropyPoint, R_STAR_SLOPE,
};
pub use exact::{
    binomial, cube_size_pn, d_star, fibonacci, layer_size_pn, layer_sizes_pn, max_layer_pn, outdeg_count_pn,
    outdeg_histogram_pn, r_star, MaximizerSet,
};
pub use sums::{gaussian_sum_bounds, quad_exp_sum_bound, GaussianSum, QuadSum};
