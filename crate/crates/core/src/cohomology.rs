//! The cohomology ring `H*(P^r) = Q[H]/(H^{r+1})`.

use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::series::{format_rational, int, BigRational, Coefficient};

/// A class `sum_a c_a H^a` on `P^r`; products truncate above `H^r`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ProjClass {
    r: usize,
    coeffs: Vec<BigRational>,
}

impl ProjClass {
    pub fn zero(r: usize) -> Self {
        Self {
            r,
            coeffs: vec![BigRational::zero(); r + 1],
        }
    }

    pub fn one(r: usize) -> Self {
        Self::hyperplane_power(r, 0)
    }

    /// `H^a`, which is zero once `a > r`.
    pub fn hyperplane_power(r: usize, a: usize) -> Self {
        let mut x = Self::zero(r);
        if a <= r {
            x.coeffs[a] = BigRational::one();
        }
        x
    }

    /// `c H^a`.
    pub fn monomial(r: usize, a: usize, c: BigRational) -> Self {
        let mut x = Self::zero(r);
        if a <= r {
            x.coeffs[a] = c;
        }
        x
    }

    /// The linear class `c0 + c1 H`.
    pub fn linear(r: usize, c0: BigRational, c1: BigRational) -> Self {
        let mut x = Self::zero(r);
        x.coeffs[0] = c0;
        if r >= 1 {
            x.coeffs[1] = c1;
        }
        x
    }

    /// Requires exactly `r + 1` coefficients.
    pub fn from_coeffs(r: usize, coeffs: Vec<BigRational>) -> Result<Self> {
        if coeffs.len() != r + 1 {
            return Err(Error::InvalidConfig(format!(
                "a class on P^{r} needs {} coefficients, got {}",
                r + 1,
                coeffs.len()
            )));
        }
        Ok(Self { r, coeffs })
    }

    pub fn from_ints(r: usize, coeffs: &[i64]) -> Result<Self> {
        Self::from_coeffs(r, coeffs.iter().map(|&c| int(c)).collect())
    }

    pub fn dim(&self) -> usize {
        self.r
    }

    /// Coefficient of `H^a` (zero beyond `r`).
    pub fn coeff(&self, a: usize) -> BigRational {
        self.coeffs
            .get(a)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn cup(&self, other: &Self) -> Result<Self> {
        if self.r != other.r {
            return Err(Error::DimensionMismatch {
                left: self.r,
                right: other.r,
            });
        }
        Ok(self.cup_unchecked(other))
    }

    fn cup_unchecked(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.r);
        for (a, x) in self.coeffs.iter().enumerate() {
            if Zero::is_zero(x) {
                continue;
            }
            for (b, y) in other.coeffs.iter().enumerate().take(self.r + 1 - a) {
                if !Zero::is_zero(y) {
                    out.coeffs[a + b] += x * y;
                }
            }
        }
        out
    }

    /// Integral over `P^r`: the coefficient of `H^r`.
    pub fn integrate(&self) -> BigRational {
        self.coeffs[self.r].clone()
    }

    /// `x * H^k`.
    pub fn times_hyperplane_power(&self, k: usize) -> Self {
        let mut out = Self::zero(self.r);
        for a in 0..=self.r {
            if a + k <= self.r {
                out.coeffs[a + k] = self.coeffs[a].clone();
            }
        }
        out
    }
}

impl Coefficient for ProjClass {
    fn zero_like(&self) -> Self {
        Self::zero(self.r)
    }
    fn one_like(&self) -> Self {
        Self::one(self.r)
    }
    fn vanishes(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }
    fn compatible(&self, other: &Self) -> bool {
        self.r == other.r
    }
    fn plus(&self, other: &Self) -> Self {
        assert_eq!(self.r, other.r, "adding classes on different P^r");
        Self {
            r: self.r,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
    fn minus(&self, other: &Self) -> Self {
        assert_eq!(self.r, other.r, "subtracting classes on different P^r");
        Self {
            r: self.r,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
    fn times(&self, other: &Self) -> Self {
        assert_eq!(self.r, other.r, "multiplying classes on different P^r");
        self.cup_unchecked(other)
    }
    fn scaled(&self, c: &BigRational) -> Self {
        Self {
            r: self.r,
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }
    /// `c0 (1 + n)` with `n` nilpotent inverts to `c0^{-1} sum_k (-n)^k`.
    fn try_inverse(&self) -> Option<Self> {
        let c0 = self.coeffs[0].clone();
        if Zero::is_zero(&c0) {
            return None;
        }
        let inv0 = c0.recip();
        let mut neg_nil = self.scaled(&-&inv0);
        neg_nil.coeffs[0] = BigRational::zero();
        let mut acc = Self::one(self.r);
        let mut power = Self::one(self.r);
        for _ in 0..self.r {
            power = power.cup_unchecked(&neg_nil);
            acc = acc.plus(&power);
        }
        Some(acc.scaled(&inv0))
    }
}

impl fmt::Display for ProjClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !Zero::is_zero(*c))
            .map(|(a, c)| match a {
                0 => format_rational(c),
                1 => format!("{}H", format_rational(c)),
                _ => format!("{}H^{a}", format_rational(c)),
            })
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h(r: usize, a: usize) -> ProjClass {
        ProjClass::hyperplane_power(r, a)
    }

    #[test]
    fn cup_examples() {
        assert_eq!(h(4, 1).cup(&h(4, 1)).unwrap(), h(4, 2));
        assert!(h(4, 2).cup(&h(4, 3)).unwrap().vanishes());
        let x = ProjClass::from_ints(1, &[1, 1]).unwrap();
        assert_eq!(
            x.cup(&x).unwrap(),
            ProjClass::from_ints(1, &[1, 2]).unwrap()
        );
    }

    #[test]
    fn cup_dimension_mismatch() {
        assert_eq!(
            h(3, 1).cup(&h(4, 1)),
            Err(Error::DimensionMismatch { left: 3, right: 4 })
        );
    }

    #[test]
    fn integrate_examples() {
        assert_eq!(h(4, 4).integrate(), int(1));
        assert_eq!(h(4, 0).integrate(), int(0));
        let x = ProjClass::from_ints(4, &[0, 0, 0, 5, 2]).unwrap();
        assert_eq!(x.integrate(), int(2));
    }

    #[test]
    fn intersection_pairing_is_unimodular() {
        for r in 1..=7 {
            for a in 0..=r {
                assert_eq!(h(r, a).cup(&h(r, r - a)).unwrap().integrate(), int(1));
            }
        }
    }

    #[test]
    fn inverse_of_unit() {
        let x = ProjClass::from_ints(4, &[3, 1, 0, 2, 0]).unwrap();
        let inv = x.try_inverse().unwrap();
        assert_eq!(x.cup(&inv).unwrap(), ProjClass::one(4));
        assert!(h(4, 1).try_inverse().is_none());
    }

    #[test]
    fn wrong_length_rejected() {
        assert!(ProjClass::from_ints(2, &[1, 2]).is_err());
    }

    #[test]
    fn display() {
        let x = ProjClass::from_ints(4, &[0, 0, 0, 5, -2]).unwrap();
        assert_eq!(x.to_string(), "5H^3 + -2H^4");
        assert_eq!(ProjClass::zero(2).to_string(), "0");
    }
}
