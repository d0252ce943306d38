//! The scalar abstraction behind the two computation backends.
//!
//! Every structural computation (triangle recurrence, generating polynomials,
//! row distributions, truncated series, total variation) is generic over a
//! [`Scalar`]. Two backends matter in practice:
//!
//! * [`Rat`] (`num_rational::BigRational`) — exact arithmetic; every identity
//!   the recurrence implies holds as literal equality.
//! * `f64` — the scaled-float backend for large `n`. Row magnitudes grow
//!   super-exponentially, so rows are renormalized by a power of two after
//!   each step and the removed exponent is tracked separately. Power-of-two
//!   scaling is exact in binary floating point, so the rescaling itself never
//!   rounds.
//!
//! `f32` is implemented for completeness but the shipped tools use the two
//! above.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Num, NumRef, One, Signed, ToPrimitive, Zero};
use std::fmt::{Debug, Display};
use std::ops::Neg;

use crate::error::{Error, Result};

/// Exact rational scalar used by the exact backend.
pub type Rat = BigRational;

/// Shorthand for a small rational.
pub fn rat(numer: i64, denom: i64) -> Rat {
    Rat::new(BigInt::from(numer), BigInt::from(denom))
}

/// Shorthand for an integer rational.
pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Converts a big rational to `f64` without overflowing through the numerator
/// or denominator individually (both may exceed `f64::MAX` while the ratio is
/// tame). Both are truncated to an 80-bit window and the removed binary
/// exponent is reapplied at the end.
pub fn rat_to_f64(r: &Rat) -> f64 {
    let numer = r.numer();
    let denom = r.denom();
    if numer.is_zero() {
        return 0.0;
    }
    let nb = numer.bits() as i64;
    let db = denom.bits() as i64;
    let sn = (nb - 80).max(0);
    let sd = (db - 80).max(0);
    let nf = (numer >> sn as usize).to_f64().unwrap_or(f64::NAN);
    let df = (denom >> sd as usize).to_f64().unwrap_or(f64::NAN);
    let shift = sn - sd;
    if shift.abs() > i32::MAX as i64 {
        return if shift > 0 {
            f64::INFINITY * nf.signum()
        } else {
            0.0
        };
    }
    (nf / df) * 2f64.powi(shift as i32)
}

/// Parses a rational written as `num/den` or as a plain integer.
pub fn parse_rational(s: &str) -> Result<Rat> {
    let s = s.trim();
    let bad = || {
        Error::InvalidInput(format!(
            "`{s}` is not a rational (expected `num/den` or an integer)"
        ))
    };
    match s.split_once('/') {
        Some((n, d)) => {
            let numer: BigInt = n.trim().parse().map_err(|_| bad())?;
            let denom: BigInt = d.trim().parse().map_err(|_| bad())?;
            if denom.is_zero() {
                return Err(Error::InvalidInput(format!("`{s}` has a zero denominator")));
            }
            Ok(Rat::new(numer, denom))
        }
        None => {
            let numer: BigInt = s.parse().map_err(|_| bad())?;
            Ok(Rat::from_integer(numer))
        }
    }
}

/// Canonical text form: `num/den`, or just `num` when the denominator is 1.
pub fn format_rational(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Scalar type the structural computations are generic over.
pub trait Scalar:
    Clone
    + PartialEq
    + PartialOrd
    + Debug
    + Display
    + Num
    + NumRef
    + Neg<Output = Self>
    + Send
    + Sync
    + 'static
{
    /// Whether arithmetic in this scalar is exact.
    const EXACT: bool;

    /// Human tag used in reports and serialized documents.
    const BACKEND_NAME: &'static str;

    fn from_rat(r: &Rat) -> Self;

    fn from_usize(n: usize) -> Self;

    fn to_f64(&self) -> f64;

    /// The exact rational value, for scalars that have one.
    fn to_rat(&self) -> Option<Rat> {
        None
    }

    /// Approximate heap footprint, used by the exact-backend storage budget.
    fn storage_bytes(&self) -> usize;

    /// Rescales a freshly computed row in place and returns the log2 offset
    /// removed from it. The default is a no-op for exact scalars.
    fn normalize_row(_row: &mut [Self]) -> f64 {
        0.0
    }
}

impl Scalar for Rat {
    const EXACT: bool = true;
    const BACKEND_NAME: &'static str = "exact";

    fn from_rat(r: &Rat) -> Self {
        r.clone()
    }

    fn from_usize(n: usize) -> Self {
        Rat::from_integer(BigInt::from(n))
    }

    fn to_f64(&self) -> f64 {
        rat_to_f64(self)
    }

    fn to_rat(&self) -> Option<Rat> {
        Some(self.clone())
    }

    fn storage_bytes(&self) -> usize {
        ((self.numer().bits() + self.denom().bits()) / 8) as usize + 16
    }
}

macro_rules! impl_float_scalar {
    ($t:ty, $name:literal) => {
        impl Scalar for $t {
            const EXACT: bool = false;
            const BACKEND_NAME: &'static str = $name;

            fn from_rat(r: &Rat) -> Self {
                rat_to_f64(r) as $t
            }

            fn from_usize(n: usize) -> Self {
                n as $t
            }

            fn to_f64(&self) -> f64 {
                *self as f64
            }

            fn storage_bytes(&self) -> usize {
                std::mem::size_of::<$t>()
            }

            fn normalize_row(row: &mut [Self]) -> f64 {
                let max = row.iter().fold(0.0 as $t, |m, v| m.max(v.abs()));
                if max == 0.0 || !max.is_finite() {
                    return 0.0;
                }
                let e = max.log2().floor();
                // 2^-e is a power of two, so the division is exact.
                let scale = (2.0 as $t).powi(-e as i32);
                for v in row.iter_mut() {
                    *v *= scale;
                }
                e as f64
            }
        }
    };
}

impl_float_scalar!(f64, "float");
impl_float_scalar!(f32, "float32");
