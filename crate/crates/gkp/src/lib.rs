//! Six-parameter triangle recurrences and the limit laws of their row random
//! variables.
//!
//! The recurrence
//!
//! ```text
//! |n k| = (αn + βk + γ)·|n-1 k| + (α′n + β′k + γ′)·|n-1 k-1| + [n = k = 0]
//! ```
//!
//! (the Graham–Knuth–Patashnik family, which specializes to the binomial,
//! Stirling, Eulerian and Lah triangles) induces for each row a random
//! variable `X_n` with `P(X_n = k) ∝ |n k|`. This crate computes the triangle
//! exactly or in scaled floating point, expands the closed-form generating
//! functions, classifies the parameter point into its limit-law regime,
//! evaluates all closed-form centering and scaling constants, and verifies
//! the classification against the exact recurrence through distribution
//! distances, exact-law identities, and real-rootedness checks.
//!
//! Structural computations are generic over the [`Scalar`] backend: exact
//! rationals ([`Rat`]) or scaled floats (`f64`). See [`triangle`], [`bgf`],
//! [`regime`], [`verify`].

pub mod asymptotic;
pub mod bgf;
pub mod dist;
pub mod error;
pub mod indicator;
pub mod laws;
pub mod nb;
pub mod params;
pub mod polynomial;
pub mod regime;
pub mod saddle;
pub mod scalar;
pub mod series;
pub mod singularity;
pub mod sturm;
pub mod triangle;
pub mod verify;

pub use asymptotic::{asymptotic_law, AsymptoticLaw};
pub use bgf::{
    closed_form, consistency_check, pde_residual, series_coefficients, BgfForm, ClosedFormBgf,
    DiscrepancyReport, SeriesAtX,
};
pub use dist::{exact_moments, pgf_eval, pmf_at, MomentReport, RowDistribution};
pub use error::{Error, Result};
pub use indicator::{bernoulli_convolution, indicator_moment_expansion, indicator_probabilities};
pub use laws::{conditioned_nb_poisson, law_pmf, normal_cdf, LimitLaw, PmfValue};
pub use nb::{nb_exact_moments, nb_s_sequence};
pub use params::GkpParams;
pub use polynomial::{polynomial_rows, polynomial_step, GenPolynomial};
pub use regime::{classify, GaussianCase, Regime};
pub use saddle::{quasi_power_moments, saddle_solve, SaddleContext};
pub use scalar::{format_rational, parse_rational, rat_to_f64, Rat, Scalar};
pub use singularity::{singularity_data, SingularityData};
pub use sturm::real_rooted;
pub use triangle::{build_triangle, Limits, RowScan, TriangleTable};
pub use verify::{
    convergence_report, kolmogorov_to_normal, tv_distance, BackendChoice, ConvergenceReport,
};

/// Triangle in the exact rational backend.
pub type ExactTriangle = TriangleTable<Rat>;
/// Triangle in the scaled-float backend.
pub type FloatTriangle = TriangleTable<f64>;
