//! The triangle engine: exact or scaled-float tables of `|n k|`.

use crate::error::{Error, Result};
use crate::params::GkpParams;
use crate::polynomial::GenPolynomial;
use crate::scalar::Scalar;

/// Resource limits for triangle construction. Only the exact backend can blow
/// up, so the budget counts bytes of stored rational entries and construction
/// aborts with [`Error::ResourceLimit`] instead of degrading silently.
#[derive(Clone, Copy, Debug)]
pub struct Limits {
    pub exact_budget_bytes: usize,
}

impl Default for Limits {
    fn default() -> Self {
        // 1 GiB of stored entries
        Self {
            exact_budget_bytes: 1 << 30,
        }
    }
}

/// Streaming row-by-row construction. Holds only the current row, so grids at
/// large `n` run in linear memory; [`TriangleTable`] is the collected form.
pub struct RowScan<S: Scalar> {
    params: GkpParams,
    limits: Limits,
    n: usize,
    row: Vec<S>,
    log2_scale: f64,
    // parameter images in S, fixed once
    alpha: S,
    beta: S,
    gamma: S,
    alpha_p: S,
    beta_p: S,
    gamma_p: S,
}

impl<S: Scalar> RowScan<S> {
    pub fn new(params: GkpParams, limits: Limits) -> Self {
        let alpha = S::from_rat(&params.alpha);
        let beta = S::from_rat(&params.beta);
        let gamma = S::from_rat(&params.gamma);
        let alpha_p = S::from_rat(&params.alpha_p);
        let beta_p = S::from_rat(&params.beta_p);
        let gamma_p = S::from_rat(&params.gamma_p);
        Self {
            params,
            limits,
            n: 0,
            row: vec![S::one()],
            log2_scale: 0.0,
            alpha,
            beta,
            gamma,
            alpha_p,
            beta_p,
            gamma_p,
        }
    }

    pub fn params(&self) -> &GkpParams {
        &self.params
    }

    /// Index of the row currently held.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Entries of the current row. For the float backend these are mantissas;
    /// the true entry is `entry * 2^log2_scale`.
    pub fn row(&self) -> &[S] {
        &self.row
    }

    pub fn log2_scale(&self) -> f64 {
        self.log2_scale
    }

    /// Builds the next row from the current one.
    pub fn advance(&mut self) -> Result<()> {
        let n = self.n + 1;
        let n_s = S::from_usize(n);
        // a(k) = αn + βk + γ and b(k) = α′n + β′k + γ′, updated incrementally in k
        let mut a = self.alpha.clone() * &n_s + &self.gamma;
        let mut b = self.alpha_p.clone() * &n_s + &self.gamma_p;

        let prev = &self.row;
        let mut next = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let mut v = if k < prev.len() {
                a.clone() * &prev[k]
            } else {
                S::zero()
            };
            if k >= 1 {
                v = v + b.clone() * &prev[k - 1];
            }
            next.push(v);
            if k < n {
                a = a + &self.beta;
                b = b + &self.beta_p;
            }
        }

        let delta = S::normalize_row(&mut next);
        self.log2_scale += delta;
        self.n = n;
        self.row = next;

        if S::EXACT {
            let bytes: usize = self.row.iter().map(Scalar::storage_bytes).sum();
            if bytes > self.limits.exact_budget_bytes {
                return Err(Error::ResourceLimit {
                    used: bytes,
                    budget: self.limits.exact_budget_bytes,
                    n,
                });
            }
        }
        Ok(())
    }
}

/// A fully materialized triangle, rows `0..=n_max`.
///
/// Immutable after construction and safe to share across threads. For the
/// float backend each row carries a log2 scale offset: the stored mantissas
/// of row `n` are the true entries divided by `2^log2_scale(n)`, with the
/// largest mantissa in `[1, 2)`. Scaling is by powers of two only, so the
/// mantissas are bit-exact functions of the recurrence.
#[derive(Clone, Debug)]
pub struct TriangleTable<S: Scalar> {
    params: GkpParams,
    rows: Vec<Vec<S>>,
    log2_scales: Vec<f64>,
}

impl<S: Scalar> TriangleTable<S> {
    /// Builds rows `0..=n_max` under the default limits.
    pub fn build(params: GkpParams, n_max: usize) -> Result<Self> {
        Self::build_with_limits(params, n_max, Limits::default())
    }

    pub fn build_with_limits(params: GkpParams, n_max: usize, limits: Limits) -> Result<Self> {
        let mut scan = RowScan::<S>::new(params.clone(), limits);
        let mut rows = Vec::with_capacity(n_max + 1);
        let mut log2_scales = Vec::with_capacity(n_max + 1);
        let mut total_bytes = 0usize;
        rows.push(scan.row().to_vec());
        log2_scales.push(scan.log2_scale());
        for _ in 0..n_max {
            scan.advance()?;
            if S::EXACT {
                total_bytes += scan.row().iter().map(Scalar::storage_bytes).sum::<usize>();
                if total_bytes > limits.exact_budget_bytes {
                    return Err(Error::ResourceLimit {
                        used: total_bytes,
                        budget: limits.exact_budget_bytes,
                        n: scan.n(),
                    });
                }
            }
            rows.push(scan.row().to_vec());
            log2_scales.push(scan.log2_scale());
        }
        Ok(Self {
            params,
            rows,
            log2_scales,
        })
    }

    pub fn params(&self) -> &GkpParams {
        &self.params
    }

    pub fn n_max(&self) -> usize {
        self.rows.len() - 1
    }

    pub fn row(&self, n: usize) -> Result<&[S]> {
        self.rows
            .get(n)
            .map(Vec::as_slice)
            .ok_or(Error::RowMissing {
                n,
                max: self.n_max(),
            })
    }

    pub fn log2_scale(&self, n: usize) -> Result<f64> {
        self.log2_scales.get(n).copied().ok_or(Error::RowMissing {
            n,
            max: self.n_max(),
        })
    }

    /// Row `n` as a generating polynomial (coefficients are the row entries,
    /// so for the float backend they are the scaled mantissas).
    pub fn row_polynomial(&self, n: usize) -> Result<GenPolynomial<S>> {
        Ok(GenPolynomial::new(self.row(n)?.to_vec()))
    }
}

/// Builds a triangle in the requested scalar backend.
pub fn build_triangle<S: Scalar>(params: &GkpParams, n_max: usize) -> Result<TriangleTable<S>> {
    TriangleTable::build(params.clone(), n_max)
}
