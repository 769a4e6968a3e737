//! Rate–distortion functions with a fixed reproduction distribution, computed
//! through the MMSE of the distortion given the source symbol.
//!
//! The toolkit offers two independent routes to `R_q(D)`: the Legendre form
//! `R_q(D) = -min_{s>=0} [sD + Σ_x p(x) ln Z_x(s)]`, solved by a monotone
//! one-dimensional root search, and the parametric integrals
//!
//! ```text
//! D_s       = D_0 - ∫_0^s mmse_t dt      = D_∞ + ∫_s^∞ mmse_t dt
//! R_q(D_s)  =       ∫_0^s t·mmse_t dt    = R_q(D_∞) - ∫_s^∞ t·mmse_t dt
//! ```
//!
//! evaluated by adaptive quadrature. Around them sit closed-form bounds and
//! asymptotics, the analogous integral for the mutual information of a fixed
//! channel input, and brute-force oracles for small alphabets.

pub mod bounds;
pub mod capacity;
pub mod curve;
pub mod error;
pub mod gibbs;
pub mod info;
pub mod oracle;
pub mod presets;
pub mod prob;
pub mod quadrature;
pub mod schema;
pub mod verify;

pub use bounds::{BoundCurve, MomentSummary};
pub use capacity::{
    capacity_by_integral, capacity_legendre, capacity_mmse, capacity_posterior, output_marginal, ChannelProblem,
};
pub use curve::{
    distortion_by_integral, distortion_by_tail_integral, legendre_rate, rate_at_d_infinity, rate_by_integral,
    rate_by_tail_integral, solve_s_for_distortion, trace_curve, Curve, CurvePoint, LegendreSolution, Method,
};
pub use error::{Error, Result};
pub use gibbs::{
    evaluate, gibbs_channel, log_partition, mmse, parametric_distortion, GibbsChannel, KernelPoint, SParam,
};
pub use oracle::{
    blahut_arimoto, bruteforce_rq, min_coupled_distortion, mot_rate_function, q_search_infimum, OracleResult,
};
pub use presets::Preset;
pub use prob::{
    build_distortion_matrix, d_infinity, d_zero, discretize_density, Density, DistortionMatrix, DistortionSpec, Grid,
    Pmf, RdProblem,
};
pub use quadrature::QuadratureConfig;
