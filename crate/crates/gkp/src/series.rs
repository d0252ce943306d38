//! Truncated power series with exact coefficient arithmetic.
//!
//! A [`Series`] holds coefficients of `z^0 .. z^(order-1)`; every operation
//! truncates to the shorter operand. The primitives are the ones needed to
//! expand the closed-form generating functions: Cauchy product, division,
//! composition, exp and log of a series, and the binomial series
//! `(1 + c·z)^q` with rational exponent. With a rational scalar everything is
//! exact to the truncation order.

use num_traits::One;

use crate::error::{Error, Result};
use crate::scalar::{rat_int, Rat, Scalar};

#[derive(Clone, Debug, PartialEq)]
pub struct Series<S> {
    coeffs: Vec<S>,
}

impl<S: Scalar> Series<S> {
    pub fn from_coeffs(coeffs: Vec<S>) -> Self {
        assert!(
            !coeffs.is_empty(),
            "series needs at least the constant term"
        );
        Self { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        assert!(order > 0);
        Self {
            coeffs: vec![S::zero(); order],
        }
    }

    pub fn constant(c: S, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    /// The monomial `c·z` (order must be ≥ 2 to hold it).
    pub fn linear(c: S, order: usize) -> Self {
        assert!(order >= 2);
        let mut s = Self::zero(order);
        s.coeffs[1] = c;
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, i: usize) -> S {
        self.coeffs.get(i).cloned().unwrap_or_else(S::zero)
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn truncated(&self, order: usize) -> Self {
        assert!(order > 0);
        let mut coeffs = self.coeffs.clone();
        coeffs.truncate(order);
        coeffs.resize(order, S::zero());
        Self { coeffs }
    }

    pub fn neg(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.order().min(rhs.order());
        let coeffs = (0..n)
            .map(|i| self.coeffs[i].clone() + &rhs.coeffs[i])
            .collect();
        Self { coeffs }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let n = self.order().min(rhs.order());
        let coeffs = (0..n)
            .map(|i| self.coeffs[i].clone() - &rhs.coeffs[i])
            .collect();
        Self { coeffs }
    }

    pub fn scale(&self, c: &S) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|a| a.clone() * c).collect(),
        }
    }

    pub fn add_constant(&self, c: &S) -> Self {
        let mut out = self.clone();
        out.coeffs[0] = out.coeffs[0].clone() + c;
        out
    }

    /// Truncated Cauchy product.
    pub fn mul(&self, rhs: &Self) -> Self {
        let n = self.order().min(rhs.order());
        let mut coeffs = vec![S::zero(); n];
        for i in 0..n {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..n - i {
                if rhs.coeffs[j].is_zero() {
                    continue;
                }
                coeffs[i + j] = coeffs[i + j].clone() + self.coeffs[i].clone() * &rhs.coeffs[j];
            }
        }
        Self { coeffs }
    }

    /// Division; the divisor must have a nonzero constant term.
    pub fn div(&self, rhs: &Self) -> Result<Self> {
        if rhs.coeffs[0].is_zero() {
            return Err(Error::ConstantTerm {
                op: "division",
                required: "nonzero",
            });
        }
        let n = self.order().min(rhs.order());
        let mut q = vec![S::zero(); n];
        for i in 0..n {
            let mut acc = self.coeff(i);
            for k in 1..=i {
                acc = acc - rhs.coeff(k) * &q[i - k];
            }
            q[i] = acc / &rhs.coeffs[0];
        }
        Ok(Self { coeffs: q })
    }

    /// Coefficient-shift by one power of `z`; the order grows with it so no
    /// information is lost.
    pub fn mul_z(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.order() + 1);
        coeffs.push(S::zero());
        coeffs.extend(self.coeffs.iter().cloned());
        Self { coeffs }
    }

    /// Formal derivative; the order shrinks by one.
    pub fn derivative(&self) -> Self {
        if self.order() == 1 {
            return Self::zero(1);
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| S::from_usize(k) * c)
            .collect();
        Self { coeffs }
    }

    /// `exp` of a series with zero constant term.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::ConstantTerm {
                op: "exp",
                required: "zero",
            });
        }
        let n = self.order();
        let mut g = vec![S::zero(); n];
        g[0] = S::one();
        for m in 1..n {
            let mut acc = S::zero();
            for k in 1..=m {
                if self.coeffs[k].is_zero() {
                    continue;
                }
                acc = acc + S::from_usize(k) * &self.coeffs[k] * &g[m - k];
            }
            g[m] = acc / S::from_usize(m);
        }
        Ok(Self { coeffs: g })
    }

    /// `log` of a series with constant term exactly one.
    pub fn ln(&self) -> Result<Self> {
        if !self.coeffs[0].is_one() {
            return Err(Error::ConstantTerm {
                op: "log",
                required: "one",
            });
        }
        let n = self.order();
        let mut h = vec![S::zero(); n];
        for m in 1..n {
            let mut acc = S::from_usize(m) * &self.coeffs[m];
            for (k, hk) in h.iter().enumerate().take(m).skip(1) {
                acc = acc - S::from_usize(k) * hk * &self.coeffs[m - k];
            }
            h[m] = acc / S::from_usize(m);
        }
        Ok(Self { coeffs: h })
    }

    /// `(self)^q` for rational `q`; the constant term must be exactly one so
    /// the power stays in the scalar's field.
    pub fn pow_rat(&self, q: &Rat) -> Result<Self> {
        if !self.coeffs[0].is_one() {
            return Err(Error::ConstantTerm {
                op: "rational power",
                required: "one",
            });
        }
        self.ln()?.scale(&S::from_rat(q)).exp()
    }

    /// Composition `self(inner)`; `inner` must have zero constant term.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        if !inner.coeffs[0].is_zero() {
            return Err(Error::ConstantTerm {
                op: "composition",
                required: "zero",
            });
        }
        let n = self.order().min(inner.order());
        let inner = inner.truncated(n);
        let mut acc = Series::constant(self.coeff(n - 1), n);
        for k in (0..n - 1).rev() {
            acc = acc.mul(&inner).add_constant(&self.coeff(k));
        }
        Ok(acc)
    }
}

/// `(1 + c·z)^q` expanded directly through the binomial series.
pub fn binomial_series<S: Scalar>(q: &Rat, c: &S, order: usize) -> Series<S> {
    let mut coeffs = Vec::with_capacity(order);
    coeffs.push(S::one());
    let mut binom = Rat::one();
    let mut c_pow = S::one();
    for m in 1..order {
        // C(q, m) = C(q, m-1) · (q - m + 1) / m
        binom = binom * (q - rat_int(m as i64 - 1)) / rat_int(m as i64);
        c_pow = c_pow * c;
        coeffs.push(S::from_rat(&binom) * &c_pow);
    }
    Series::from_coeffs(coeffs)
}

/// `exp(c·z)` expanded directly.
pub fn exp_series<S: Scalar>(c: &S, order: usize) -> Series<S> {
    let mut coeffs = Vec::with_capacity(order);
    coeffs.push(S::one());
    for m in 1..order {
        let prev = coeffs[m - 1].clone();
        coeffs.push(prev * c / S::from_usize(m));
    }
    Series::from_coeffs(coeffs)
}
