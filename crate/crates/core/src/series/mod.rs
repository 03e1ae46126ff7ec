//! Exact scalars and truncated formal power series.
//!
//! Every number the crate produces is a [`BigRational`]. Series in the
//! Novikov variable `q` are dense, carry their own truncation order, and are
//! generic over a [`Coefficient`] ring so the same Cauchy-product, inversion,
//! exp/log and reversion code serves scalar, cohomology-valued and
//! `1/hbar`-Laurent-valued series.

mod hbar;
mod truncated;

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

pub use hbar::HbarLaurent;
pub use num_rational::BigRational;
pub use truncated::{exp_reversion, exp_reversion_to, TruncatedSeries};

/// Builds the rational `n / d`.
pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Builds the integer `n` as a rational.
pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Commutative ring with exact arithmetic, used as the coefficient domain of
/// a [`TruncatedSeries`].
///
/// Elements may carry a shape (the ambient dimension of a cohomology class);
/// `compatible` reports whether two elements can be combined.
pub trait Coefficient: Clone + PartialEq + fmt::Debug + Send + Sync {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn vanishes(&self) -> bool;
    fn compatible(&self, other: &Self) -> bool;
    fn plus(&self, other: &Self) -> Self;
    fn minus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn scaled(&self, c: &BigRational) -> Self;
    fn try_inverse(&self) -> Option<Self>;

    fn negated(&self) -> Self {
        self.zero_like().minus(self)
    }

    fn is_unity(&self) -> bool {
        *self == self.one_like()
    }
}

impl Coefficient for BigRational {
    fn zero_like(&self) -> Self {
        BigRational::zero()
    }
    fn one_like(&self) -> Self {
        BigRational::one()
    }
    fn vanishes(&self) -> bool {
        Zero::is_zero(self)
    }
    fn compatible(&self, _other: &Self) -> bool {
        true
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn scaled(&self, c: &BigRational) -> Self {
        self * c
    }
    fn try_inverse(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
}

/// Formats a rational as an exact `p/q` string (`p` alone for integers).
pub fn format_rational(x: &BigRational) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parses `p`, `-p` or `p/q`.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(BigRational::new(n, d))
            }
        }
        None => s.parse::<BigInt>().ok().map(BigRational::from_integer),
    }
}

/// Lossy decimal rendering for display columns only.
pub fn approx_f64(x: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    x.to_f64().unwrap_or(f64::NAN)
}
