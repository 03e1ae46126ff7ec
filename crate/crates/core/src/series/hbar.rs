use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use super::{BigRational, Coefficient};
use crate::cohomology::ProjClass;

/// Finite Laurent polynomial in `hbar` with coefficients in `H*(P^r)`.
///
/// Only non-zero terms are stored, so structural equality is equality of
/// the represented elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HbarLaurent {
    r: usize,
    terms: BTreeMap<i32, ProjClass>,
}

impl HbarLaurent {
    pub fn zero(r: usize) -> Self {
        Self {
            r,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(r: usize) -> Self {
        Self::monomial(0, ProjClass::one(r))
    }

    /// `class * hbar^exponent`.
    pub fn monomial(exponent: i32, class: ProjClass) -> Self {
        let mut x = Self::zero(class.dim());
        x.add_term(exponent, class);
        x
    }

    /// Reads a class of total degree `degree` in `(H, hbar)`: the `H^a`
    /// component is placed at `hbar^{degree - a}`.
    pub fn from_homogeneous(degree: i32, class: &ProjClass) -> Self {
        let r = class.dim();
        let mut x = Self::zero(r);
        for a in 0..=r {
            let c = class.coeff(a);
            if !Zero::is_zero(&c) {
                x.add_term(degree - a as i32, ProjClass::monomial(r, a, c));
            }
        }
        x
    }

    pub fn dim(&self) -> usize {
        self.r
    }

    fn add_term(&mut self, exponent: i32, class: ProjClass) {
        let slot = self
            .terms
            .entry(exponent)
            .or_insert_with(|| ProjClass::zero(class.dim()));
        *slot = slot.plus(&class);
        if slot.vanishes() {
            self.terms.remove(&exponent);
        }
    }

    /// The class multiplying `hbar^exponent`.
    pub fn coefficient(&self, exponent: i32) -> ProjClass {
        self.terms
            .get(&exponent)
            .cloned()
            .unwrap_or_else(|| ProjClass::zero(self.r))
    }

    /// The rational in front of `H^h_power hbar^exponent`.
    pub fn slot(&self, h_power: usize, exponent: i32) -> BigRational {
        self.terms
            .get(&exponent)
            .map(|c| c.coeff(h_power))
            .unwrap_or_else(BigRational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, &ProjClass)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn min_exponent(&self) -> Option<i32> {
        self.terms.keys().next().copied()
    }

    pub fn max_exponent(&self) -> Option<i32> {
        self.terms.keys().next_back().copied()
    }

    /// Multiplies every coefficient by a class.
    pub fn cup_class(&self, class: &ProjClass) -> Self {
        let mut out = Self::zero(self.r);
        for (e, c) in &self.terms {
            out.add_term(*e, c.times(class));
        }
        out
    }

    /// Drops all terms with `hbar` exponent below `lowest`.
    pub fn truncate_below(&self, lowest: i32) -> Self {
        Self {
            r: self.r,
            terms: self
                .terms
                .range(lowest..)
                .map(|(e, c)| (*e, c.clone()))
                .collect(),
        }
    }
}

impl Coefficient for HbarLaurent {
    fn zero_like(&self) -> Self {
        Self::zero(self.r)
    }
    fn one_like(&self) -> Self {
        Self::one(self.r)
    }
    fn vanishes(&self) -> bool {
        self.terms.is_empty()
    }
    fn compatible(&self, other: &Self) -> bool {
        self.r == other.r
    }
    fn plus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
    fn minus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, c.negated());
        }
        out
    }
    fn times(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.r);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                out.add_term(e1 + e2, c1.times(c2));
            }
        }
        out
    }
    fn scaled(&self, c: &BigRational) -> Self {
        if Zero::is_zero(c) {
            return Self::zero(self.r);
        }
        Self {
            r: self.r,
            terms: self.terms.iter().map(|(e, x)| (*e, x.scaled(c))).collect(),
        }
    }
    /// Only monomials `u hbar^k` with `u` a unit are inverted.
    fn try_inverse(&self) -> Option<Self> {
        if self.terms.len() != 1 {
            return None;
        }
        let (e, c) = self.terms.iter().next()?;
        Some(Self::monomial(-e, c.try_inverse()?))
    }
}

impl fmt::Display for HbarLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(e, c)| match e {
                0 => format!("({c})"),
                _ => format!("({c})hbar^{e}"),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::int;

    #[test]
    fn homogeneous_placement() {
        // H + 2 hbar has degree 1
        let x = HbarLaurent::from_homogeneous(1, &ProjClass::from_ints(2, &[2, 1, 0]).unwrap());
        assert_eq!(x.slot(0, 1), int(2));
        assert_eq!(x.slot(1, 0), int(1));
        assert_eq!(x.min_exponent(), Some(0));
    }

    #[test]
    fn cancellation_removes_terms() {
        let a = HbarLaurent::monomial(-2, ProjClass::hyperplane_power(3, 1));
        assert!(a.minus(&a).vanishes());
        assert_eq!(a.minus(&a), HbarLaurent::zero(3));
    }

    #[test]
    fn monomial_inverse() {
        let a = HbarLaurent::monomial(-3, ProjClass::from_ints(2, &[2, 1, 0]).unwrap());
        let inv = a.try_inverse().unwrap();
        assert_eq!(a.times(&inv), HbarLaurent::one(2));
        let b = a.plus(&HbarLaurent::one(2));
        assert!(b.try_inverse().is_none());
    }

    #[test]
    fn window_truncation() {
        let a = HbarLaurent::monomial(-1, ProjClass::one(1))
            .plus(&HbarLaurent::monomial(-5, ProjClass::one(1)));
        assert_eq!(
            a.truncate_below(-3),
            HbarLaurent::monomial(-1, ProjClass::one(1))
        );
    }
}
