//! Quantitative confrontation of the exact finite-n laws with the classified
//! limits: Kolmogorov and total-variation distances and convergence tables.

use crate::asymptotic::{asymptotic_law, AsymptoticLaw};
use crate::dist::{exact_moments, RowDistribution};
use crate::error::{Error, Result};
use crate::laws::normal_cdf;
use crate::params::GkpParams;
use crate::regime::Regime;
use crate::scalar::{rat_to_f64, Rat, Scalar};
use crate::triangle::{Limits, RowScan};

pub use crate::sturm::real_rooted;

/// Kolmogorov distance between a lattice distribution and `N(a, b²)`:
/// `sup_k |P(X ≤ k) − Φ((k−a)/b)|` over the lattice, without continuity
/// correction.
pub fn kolmogorov_to_normal<S: Scalar>(dist: &RowDistribution<S>, a: f64, b: f64) -> Result<f64> {
    if !b.is_finite() || b <= 0.0 {
        return Err(Error::InvalidInput(
            "kolmogorov distance needs a positive scale".into(),
        ));
    }
    let mut sup: f64 = normal_cdf((-1.0 - a) / b); // empty cdf below the support
    let mut cdf = 0.0;
    for (k, p) in dist.probs().iter().enumerate() {
        cdf += p.to_f64();
        let gap = (cdf - normal_cdf((k as f64 - a) / b)).abs();
        if gap > sup {
            sup = gap;
        }
    }
    Ok(sup)
}

/// Total variation distance `½ Σ_k |p_k − q_k|`, with the shorter support
/// padded by zeros. Exact for the exact backend.
pub fn tv_distance<S: Scalar>(d1: &RowDistribution<S>, d2: &RowDistribution<S>) -> S {
    let len = d1.probs().len().max(d2.probs().len());
    let mut acc = S::zero();
    for k in 0..len {
        let diff = d1.prob(k) - d2.prob(k);
        acc = acc + if diff < S::zero() { -diff } else { diff };
    }
    acc / (S::one() + S::one())
}

/// Total variation between a finite lattice law and Pois(λ), the Poisson tail
/// beyond the support counted in full.
pub fn tv_to_poisson<S: Scalar>(dist: &RowDistribution<S>, lambda: f64) -> f64 {
    let mut acc = 0.0;
    let mut pois_mass = 0.0;
    let mut pois = (-lambda).exp();
    for (j, p) in dist.probs().iter().enumerate() {
        if j > 0 {
            pois *= lambda / j as f64;
        }
        pois_mass += pois;
        acc += (p.to_f64() - pois).abs();
    }
    acc += (1.0 - pois_mass).max(0.0);
    acc / 2.0
}

/// Which backend a convergence report runs on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BackendChoice {
    /// Exact for the exact-law regimes, scaled float otherwise.
    Auto,
    Exact,
    Float,
}

/// One grid point of a convergence report.
#[derive(Clone, Debug)]
pub struct ReportRow {
    pub n: usize,
    /// Exact μ_n (float rendering; the rational is kept when the backend is exact).
    pub mean: f64,
    pub variance: f64,
    pub mean_exact: Option<Rat>,
    pub variance_exact: Option<Rat>,
    /// Predicted centering a_n and squared scale b_n².
    pub center: f64,
    pub scale_sq: f64,
    /// μ_n / a_n where the centering is nonzero.
    pub center_ratio: Option<f64>,
    /// Kolmogorov distance to N(0,1) under exact-moment standardization,
    /// for the Gaussian regimes.
    pub ks: Option<f64>,
    /// Total variation to the regime's reference law (float rendering).
    pub tv: Option<f64>,
    /// Exact rational total variation when both sides are exact.
    pub tv_exact: Option<Rat>,
}

/// Distances and moments along an increasing n-grid.
#[derive(Clone, Debug)]
pub struct ConvergenceReport {
    pub params: GkpParams,
    pub regime: Regime,
    pub backend: &'static str,
    pub rows: Vec<ReportRow>,
}

fn report_row<S: Scalar>(
    law: &AsymptoticLaw,
    dist: &RowDistribution<S>,
    n: usize,
) -> Result<ReportRow> {
    let moments = exact_moments(dist);
    let mean = moments.mean_f64();
    let variance = moments.variance_f64();
    let mean_exact = moments.mean.to_rat();
    let variance_exact = moments.variance.to_rat();
    let center = law.center(n);
    let scale = law.scale(n);
    let center_ratio = if center != 0.0 {
        Some(mean / center)
    } else {
        None
    };

    let mut ks = None;
    let mut tv = None;
    let mut tv_exact = None;

    if law.regime().is_gaussian() {
        if variance > 0.0 {
            ks = Some(kolmogorov_to_normal(dist, mean, variance.sqrt())?);
        }
    } else if let Some(reference) = law.exact_law(n) {
        let reference = reference?;
        if S::EXACT {
            let lhs = exact_probs(dist);
            let d = tv_distance(&lhs, &reference);
            tv = Some(rat_to_f64(&d));
            tv_exact = Some(d);
        } else {
            let lhs = RowDistribution::<f64>::from_weights(n, &dist.probs_f64())?;
            let rhs = RowDistribution::<f64>::from_weights(n, &reference.probs_f64())?;
            tv = Some(tv_distance(&lhs, &rhs));
        }
    } else if let Regime::PoissonComplement { lambda } = law.regime() {
        tv = Some(tv_to_poisson(&dist.complement(), rat_to_f64(lambda)));
    }

    Ok(ReportRow {
        n,
        mean,
        variance,
        mean_exact,
        variance_exact,
        center,
        scale_sq: scale * scale,
        center_ratio,
        ks,
        tv,
        tv_exact,
    })
}

fn exact_probs<S: Scalar>(dist: &RowDistribution<S>) -> RowDistribution<Rat> {
    let weights: Vec<Rat> = dist
        .probs()
        .iter()
        .map(|p| p.to_rat().expect("exact backend"))
        .collect();
    RowDistribution::from_weights(dist.n(), &weights).expect("already a distribution")
}

fn scan_report<S: Scalar>(
    params: &GkpParams,
    law: &AsymptoticLaw,
    grid: &[usize],
) -> Result<Vec<ReportRow>> {
    let mut rows = Vec::with_capacity(grid.len());
    let mut scan = RowScan::<S>::new(params.clone(), Limits::default());
    for &n in grid {
        while scan.n() < n {
            scan.advance()?;
        }
        let dist = RowDistribution::from_weights(n, scan.row())?;
        rows.push(report_row(law, &dist, n)?);
    }
    Ok(rows)
}

/// Runs the regime-appropriate checks along `grid`, building each row from a
/// single streaming pass of the triangle.
pub fn convergence_report(
    params: &GkpParams,
    grid: &[usize],
    backend: BackendChoice,
) -> Result<ConvergenceReport> {
    if grid.is_empty() || grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidInput(
            "grid must be nonempty and strictly increasing".into(),
        ));
    }
    let law = asymptotic_law(params)?;
    let use_exact = match backend {
        BackendChoice::Exact => true,
        BackendChoice::Float => false,
        BackendChoice::Auto => law.regime().is_exact_law(),
    };
    let rows = if use_exact {
        scan_report::<Rat>(params, &law, grid)?
    } else {
        scan_report::<f64>(params, &law, grid)?
    };
    Ok(ConvergenceReport {
        params: params.clone(),
        regime: law.regime().clone(),
        backend: if use_exact {
            Rat::BACKEND_NAME
        } else {
            f64::BACKEND_NAME
        },
        rows,
    })
}
