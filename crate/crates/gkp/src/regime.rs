//! Maps a classifiable parameter point to its limit-law regime.

use num_traits::{One, Signed, Zero};
use std::fmt;

use crate::params::GkpParams;
use crate::scalar::Rat;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GaussianCase {
    /// α > 0 and β > 0
    I,
    /// α = 0, β > 0
    II,
    /// α > 0, β = 0
    III,
}

impl fmt::Display for GaussianCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GaussianCase::I => write!(f, "i"),
            GaussianCase::II => write!(f, "ii"),
            GaussianCase::III => write!(f, "iii"),
        }
    }
}

/// The limit-law regime of the row random variables, with the constants that
/// identify the exact or limiting law.
#[derive(Clone, Debug, PartialEq)]
pub enum Regime {
    /// β′ = γ′ = 0: every k ≥ 1 source term vanishes, X_n = 0 a.s.
    DegenerateAtZero,
    /// Only the k = n entry survives, X_n = n a.s.
    DegenerateAtN,
    /// β = β′ = α = α′ = 0, γ′ > 0: X_n is exactly Bin(n, γ′/(γ+γ′)).
    BinomialExact { p: Rat },
    /// β′ > 0 with α, β not both zero: Gaussian limit, mean and variance
    /// linear in n.
    GaussianLinear(GaussianCase),
    /// α = β = 0, β′ > 0, γ > 0: exactly a negative binomial conditioned on
    /// its sum with an independent Poisson.
    NbConditionedPoisson { r: Rat, p: Rat },
    /// β = β′ = 0, α > 0, γ′ > 0: Gaussian with mean and variance ~ (γ′/α)·log n.
    GaussianLogN { coef: Rat },
    /// β′ = 0, α = 0, β > 0, γ′ > 0: Gaussian centered at n/log n.
    GaussianNOverLogN,
    /// β′ = 0, α > 0, β > 0, γ′ > 0: Gaussian with a stretched-power scale
    /// n^{β/(α+β)}, handled through the saddle-point machinery.
    GaussianStretchedPower,
    /// α = β = 0, α′ > 0, β′ > 0, γ > 0: n − X_n converges to Pois(γ/β′).
    PoissonComplement { lambda: Rat },
    /// β = β′ = 0, α′ > 0: X_n is exactly a sum of independent indicators.
    IndicatorSum,
    /// Outside the classifiable families.
    Unsupported,
}

impl Regime {
    pub fn tag(&self) -> String {
        match self {
            Regime::DegenerateAtZero => "DegenerateAtZero".into(),
            Regime::DegenerateAtN => "DegenerateAtN".into(),
            Regime::BinomialExact { .. } => "BinomialExact".into(),
            Regime::GaussianLinear(case) => format!("GaussianLinear.{case}"),
            Regime::NbConditionedPoisson { .. } => "NBConditionedPoisson".into(),
            Regime::GaussianLogN { .. } => "GaussianLogN".into(),
            Regime::GaussianNOverLogN => "GaussianNOverLogN".into(),
            Regime::GaussianStretchedPower => "GaussianStretchedPower".into(),
            Regime::PoissonComplement { .. } => "PoissonComplement".into(),
            Regime::IndicatorSum => "IndicatorSum".into(),
            Regime::Unsupported => "Unsupported".into(),
        }
    }

    /// Regimes whose law is exact at every n, not only in the limit.
    pub fn is_exact_law(&self) -> bool {
        matches!(
            self,
            Regime::DegenerateAtZero
                | Regime::DegenerateAtN
                | Regime::BinomialExact { .. }
                | Regime::NbConditionedPoisson { .. }
                | Regime::IndicatorSum
        )
    }

    pub fn is_gaussian(&self) -> bool {
        matches!(
            self,
            Regime::GaussianLinear(_)
                | Regime::GaussianLogN { .. }
                | Regime::GaussianNOverLogN
                | Regime::GaussianStretchedPower
        )
    }
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.tag())
    }
}

/// Total classification of a parameter point. Non-classifiable points map to
/// [`Regime::Unsupported`]; classifiable points map to exactly one other tag.
pub fn classify(params: &GkpParams) -> Regime {
    if !params.classifiable() {
        return Regime::Unsupported;
    }
    let a = &params.alpha;
    let b = &params.beta;
    let g = &params.gamma;
    let ap = &params.alpha_p;
    let bp = &params.beta_p;
    let gp = &params.gamma_p;

    if ap.is_zero() {
        if bp.is_positive() {
            if a.is_positive() && b.is_positive() {
                Regime::GaussianLinear(GaussianCase::I)
            } else if a.is_zero() && b.is_positive() {
                Regime::GaussianLinear(GaussianCase::II)
            } else if a.is_positive() {
                Regime::GaussianLinear(GaussianCase::III)
            } else if g.is_positive() {
                Regime::NbConditionedPoisson {
                    r: Rat::one() + gp / bp,
                    p: g / (bp + g),
                }
            } else {
                Regime::DegenerateAtN
            }
        } else if gp.is_zero() {
            Regime::DegenerateAtZero
        } else if b.is_zero() && a.is_zero() {
            Regime::BinomialExact { p: gp / (g + gp) }
        } else if b.is_zero() {
            Regime::GaussianLogN { coef: gp / a }
        } else if a.is_zero() {
            Regime::GaussianNOverLogN
        } else {
            Regime::GaussianStretchedPower
        }
    } else if a.is_zero() && b.is_zero() && bp.is_positive() {
        if g.is_positive() {
            Regime::PoissonComplement { lambda: g / bp }
        } else {
            Regime::DegenerateAtN
        }
    } else {
        Regime::IndicatorSum
    }
}
