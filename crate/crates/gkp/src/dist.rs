//! Row random variables: normalized rows of the triangle and their moments.

use crate::error::{Error, Result};
use crate::scalar::{Rat, Scalar};
use crate::triangle::TriangleTable;

/// The distribution of the row random variable `X_n`:
/// `P(X_n = k) = |n k| / Σ_j |n j|`.
///
/// Exact when built from the exact backend. For the float backend the row
/// scale offsets cancel in the normalization, so probabilities are plain
/// `f64` values with `|Σ p_k − 1| ≤ 1e-12`.
#[derive(Clone, Debug, PartialEq)]
pub struct RowDistribution<S> {
    n: usize,
    probs: Vec<S>,
}

impl<S: Scalar> RowDistribution<S> {
    /// Normalizes an arbitrary nonnegative weight vector.
    pub fn from_weights(n: usize, weights: &[S]) -> Result<Self> {
        let mut sum = S::zero();
        for w in weights {
            if *w < S::zero() {
                return Err(Error::NegativeEntry { n });
            }
            sum = sum + w;
        }
        if sum.is_zero() {
            return Err(Error::ZeroRowSum { n });
        }
        let probs = weights.iter().map(|w| w.clone() / &sum).collect();
        Ok(Self { n, probs })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn probs(&self) -> &[S] {
        &self.probs
    }

    pub fn prob(&self, k: usize) -> S {
        self.probs.get(k).cloned().unwrap_or_else(S::zero)
    }

    pub fn probs_f64(&self) -> Vec<f64> {
        self.probs.iter().map(Scalar::to_f64).collect()
    }

    /// The distribution of `n − X_n`.
    pub fn complement(&self) -> Self {
        let mut probs = self.probs.clone();
        probs.reverse();
        Self { n: self.n, probs }
    }
}

/// Normalizes row `n` of a table into the law of `X_n`.
pub fn pmf_at<S: Scalar>(table: &TriangleTable<S>, n: usize) -> Result<RowDistribution<S>> {
    RowDistribution::from_weights(n, table.row(n)?)
}

/// Probability generating function `E[x^{X_n}] = Σ p_k x^k` at a rational
/// point, evaluated in the distribution's own scalar.
pub fn pgf_eval<S: Scalar>(dist: &RowDistribution<S>, x: &Rat) -> S {
    let xs = S::from_rat(x);
    let mut acc = S::zero();
    for p in dist.probs.iter().rev() {
        acc = acc * &xs + p;
    }
    acc
}

/// Mean and variance of a row distribution.
#[derive(Clone, Debug, PartialEq)]
pub struct MomentReport<S> {
    pub mean: S,
    pub variance: S,
}

impl<S: Scalar> MomentReport<S> {
    pub fn mean_f64(&self) -> f64 {
        self.mean.to_f64()
    }

    pub fn variance_f64(&self) -> f64 {
        self.variance.to_f64()
    }
}

/// `μ_n = Σ k·p_k` and `σ_n² = Σ k²·p_k − μ_n²`.
///
/// The float backend recomputes the variance as `Σ (k−μ)²·p_k`, which avoids
/// the cancellation the textbook form suffers when `μ² ≫ σ²`.
pub fn exact_moments<S: Scalar>(dist: &RowDistribution<S>) -> MomentReport<S> {
    let mut mean = S::zero();
    for (k, p) in dist.probs.iter().enumerate() {
        mean = mean + S::from_usize(k) * p;
    }
    let variance = if S::EXACT {
        let mut second = S::zero();
        for (k, p) in dist.probs.iter().enumerate() {
            let ks = S::from_usize(k);
            second = second + ks.clone() * &ks * p;
        }
        second - mean.clone() * &mean
    } else {
        let mut acc = S::zero();
        for (k, p) in dist.probs.iter().enumerate() {
            let d = S::from_usize(k) - mean.clone();
            acc = acc + d.clone() * &d * p;
        }
        acc
    };
    MomentReport { mean, variance }
}
