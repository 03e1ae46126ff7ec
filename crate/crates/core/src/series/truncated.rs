use num_traits::Zero;

use super::{int, BigRational, Coefficient};
use crate::error::{Error, Result};

/// Power series `sum_{d=0}^{D} c_d q^d` with every coefficient beyond the
/// truncation order `D` discarded.
///
/// Storage is dense: `coeffs.len() == D + 1` always, and all coefficients
/// share one shape.
#[derive(Clone, Debug, PartialEq)]
pub struct TruncatedSeries<C> {
    coeffs: Vec<C>,
}

impl<C: Coefficient> TruncatedSeries<C> {
    /// Builds a series of the given order. Missing coefficients are zero,
    /// extra ones are dropped.
    pub fn new(order: usize, mut coeffs: Vec<C>) -> Result<Self> {
        let Some(first) = coeffs.first().cloned() else {
            return Err(Error::Precondition(
                "a series needs at least one coefficient".into(),
            ));
        };
        if let Some(bad) = coeffs.iter().find(|c| !c.compatible(&first)) {
            return Err(Error::DomainMismatch(format!("{first:?} vs {bad:?}")));
        }
        coeffs.truncate(order + 1);
        coeffs.resize(order + 1, first.zero_like());
        Ok(Self { coeffs })
    }

    /// The constant series `c`.
    pub fn constant(c: C, order: usize) -> Self {
        let zero = c.zero_like();
        let mut coeffs = vec![zero; order + 1];
        coeffs[0] = c;
        Self { coeffs }
    }

    /// `c q^k`, or zero if `k` exceeds the order.
    pub fn monomial(c: C, k: usize, order: usize) -> Self {
        let mut coeffs = vec![c.zero_like(); order + 1];
        if k <= order {
            coeffs[k] = c;
        }
        Self { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, d: usize) -> Option<&C> {
        self.coeffs.get(d)
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<C> {
        self.coeffs
    }

    pub fn zero_like(&self) -> Self {
        Self::constant(self.coeffs[0].zero_like(), self.order())
    }

    pub fn one_like(&self) -> Self {
        Self::constant(self.coeffs[0].one_like(), self.order())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Coefficient::vanishes)
    }

    /// Drops every coefficient above `order` (a no-op if already lower).
    pub fn truncate(&self, order: usize) -> Self {
        let order = order.min(self.order());
        Self {
            coeffs: self.coeffs[..=order].to_vec(),
        }
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.coeffs[0].compatible(&other.coeffs[0]) {
            Ok(())
        } else {
            Err(Error::DomainMismatch(format!(
                "{:?} vs {:?}",
                self.coeffs[0], other.coeffs[0]
            )))
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let order = self.order().min(other.order());
        Ok(Self {
            coeffs: (0..=order)
                .map(|d| self.coeffs[d].plus(&other.coeffs[d]))
                .collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let order = self.order().min(other.order());
        Ok(Self {
            coeffs: (0..=order)
                .map(|d| self.coeffs[d].minus(&other.coeffs[d]))
                .collect(),
        })
    }

    pub fn neg(&self) -> Self {
        self.map(Coefficient::negated)
    }

    /// Cauchy product truncated at the smaller of the two orders.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let order = self.order().min(other.order());
        let coeffs = (0..=order)
            .map(|n| {
                (0..=n).fold(self.coeffs[0].zero_like(), |acc, k| {
                    let (a, b) = (&self.coeffs[k], &other.coeffs[n - k]);
                    if a.vanishes() || b.vanishes() {
                        acc
                    } else {
                        acc.plus(&a.times(b))
                    }
                })
            })
            .collect();
        Ok(Self { coeffs })
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        self.map(|x| x.scaled(c))
    }

    /// Multiplies every coefficient by a scalar series (Cauchy product over
    /// the scalars).
    pub fn mul_scalar_series(&self, s: &TruncatedSeries<BigRational>) -> Self {
        let order = self.order().min(s.order());
        let coeffs = (0..=order)
            .map(|n| {
                (0..=n).fold(self.coeffs[0].zero_like(), |acc, k| {
                    let w = &s.coeffs[n - k];
                    if Zero::is_zero(w) {
                        acc
                    } else {
                        acc.plus(&self.coeffs[k].scaled(w))
                    }
                })
            })
            .collect();
        Self { coeffs }
    }

    pub fn map(&self, f: impl Fn(&C) -> C) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    /// Multiplicative inverse; requires a unit constant term.
    pub fn invert(&self) -> Result<Self> {
        let inv0 = self.coeffs[0].try_inverse().ok_or(Error::NonUnitConstant)?;
        let mut out: Vec<C> = Vec::with_capacity(self.coeffs.len());
        out.push(inv0.clone());
        for n in 1..=self.order() {
            let s = (1..=n).fold(inv0.zero_like(), |acc, k| {
                acc.plus(&self.coeffs[k].times(&out[n - k]))
            });
            out.push(inv0.times(&s).negated());
        }
        Ok(Self { coeffs: out })
    }

    /// Formal exponential; the constant term must vanish.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeffs[0].vanishes() {
            return Err(Error::Precondition(
                "exp needs a vanishing constant term".into(),
            ));
        }
        // n f_n = sum_{k=1}^n k a_k f_{n-k}
        let mut out = vec![self.coeffs[0].one_like()];
        for n in 1..=self.order() {
            let s = (1..=n).fold(self.coeffs[0].zero_like(), |acc, k| {
                if self.coeffs[k].vanishes() {
                    acc
                } else {
                    acc.plus(&self.coeffs[k].times(&out[n - k]).scaled(&int(k as i64)))
                }
            });
            out.push(s.scaled(&int(n as i64).recip()));
        }
        Ok(Self { coeffs: out })
    }

    /// Formal logarithm; the constant term must be one.
    pub fn log(&self) -> Result<Self> {
        if !self.coeffs[0].is_unity() {
            return Err(Error::Precondition("log needs constant term 1".into()));
        }
        // n l_n = n a_n - sum_{k=1}^{n-1} k l_k a_{n-k}
        let mut out = vec![self.coeffs[0].zero_like()];
        for n in 1..=self.order() {
            let mut s = self.coeffs[n].scaled(&int(n as i64));
            for (k, l) in out.iter().enumerate().take(n).skip(1) {
                if !l.vanishes() {
                    s = s.minus(&l.times(&self.coeffs[n - k]).scaled(&int(k as i64)));
                }
            }
            out.push(s.scaled(&int(n as i64).recip()));
        }
        Ok(Self { coeffs: out })
    }

    /// Substitutes a scalar series with zero constant term for `q`:
    /// `sum_d c_d inner(q)^d`.
    pub fn compose(&self, inner: &TruncatedSeries<BigRational>) -> Result<Self> {
        if !Zero::is_zero(&inner.coeffs[0]) {
            return Err(Error::Precondition(
                "inner series of a composition needs zero constant term".into(),
            ));
        }
        let order = self.order().min(inner.order());
        let inner = inner.truncate(order);
        let mut acc = Self::constant(self.coeffs[order].clone(), order);
        for d in (0..order).rev() {
            acc = acc.mul_scalar_series(&inner);
            acc.coeffs[0] = acc.coeffs[0].plus(&self.coeffs[d]);
        }
        Ok(acc)
    }
}

impl TruncatedSeries<BigRational> {
    /// Convenience constructor from small integers.
    pub fn from_ints(order: usize, coeffs: &[i64]) -> Self {
        let mut v: Vec<BigRational> = coeffs.iter().map(|&c| int(c)).collect();
        if v.is_empty() {
            v.push(BigRational::zero());
        }
        Self::new(order, v).expect("scalar series are always compatible")
    }

    /// The series `q`.
    pub fn variable(order: usize) -> Self {
        Self::monomial(int(1), 1, order)
    }

    /// Multiplies by `q`, keeping the order.
    pub fn shift_up(&self) -> Self {
        let mut coeffs = vec![BigRational::zero()];
        coeffs.extend(self.coeffs[..self.order()].iter().cloned());
        Self { coeffs }
    }
}

/// Inverts the change of variables `t = log q + g(q)`.
///
/// Returns `q` as a series in `Q = e^t` (zero constant term, unit linear
/// term) of the same order as `g`, so that `log q(Q) + g(q(Q)) = log Q`.
pub fn exp_reversion(g: &TruncatedSeries<BigRational>) -> Result<TruncatedSeries<BigRational>> {
    exp_reversion_to(g, g.order())
}

/// As [`exp_reversion`] but to an explicit order. The coefficient of `Q^n`
/// only needs `g` through `q^{n-1}`, so `order` may exceed `g.order()` by one.
pub fn exp_reversion_to(
    g: &TruncatedSeries<BigRational>,
    order: usize,
) -> Result<TruncatedSeries<BigRational>> {
    if !Zero::is_zero(&g.coeffs[0]) {
        return Err(Error::Precondition(
            "mirror correction g(q) must have zero constant term".into(),
        ));
    }
    if order > g.order() + 1 {
        return Err(Error::InsufficientOrder {
            requested: order,
            available: g.order() + 1,
        });
    }
    let g = TruncatedSeries::new(order, g.coeffs.clone())?;
    // Fixed point of q = Q exp(-g(q)); each pass fixes one more coefficient.
    let mut q = TruncatedSeries::variable(order);
    for _ in 0..order {
        q = g.compose(&q)?.neg().exp()?.shift_up();
    }
    Ok(q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::rat;

    fn s(order: usize, c: &[i64]) -> TruncatedSeries<BigRational> {
        TruncatedSeries::from_ints(order, c)
    }

    #[test]
    fn difference_of_squares() {
        let p = s(3, &[1, 1]).mul(&s(3, &[1, -1])).unwrap();
        assert_eq!(p, s(3, &[1, 0, -1]));
    }

    #[test]
    fn telescoping_product_truncates() {
        let p = s(3, &[1, 1, 1, 1]).mul(&s(3, &[1, -1])).unwrap();
        assert_eq!(p, s(3, &[1]));
    }

    #[test]
    fn identity_product() {
        let a = s(4, &[3, -1, 0, 7, 2]);
        assert_eq!(s(4, &[1]).mul(&a).unwrap(), a);
    }

    #[test]
    fn mixed_orders_use_minimum() {
        let p = s(5, &[1, 1]).mul(&s(2, &[1, 1])).unwrap();
        assert_eq!(p.order(), 2);
        assert_eq!(p, s(2, &[1, 2, 1]));
    }

    #[test]
    fn geometric_series() {
        assert_eq!(s(3, &[1, -1]).invert().unwrap(), s(3, &[1, 1, 1, 1]));
        assert_eq!(s(3, &[1]).invert().unwrap(), s(3, &[1]));
    }

    #[test]
    fn inverse_of_quintic_leading_factor() {
        // (1 + 120q)(1 - 120q + 14400q^2) = 1 + 1728000 q^3
        let inv = s(2, &[1, 120]).invert().unwrap();
        assert_eq!(inv, s(2, &[1, -120, 14400]));
        assert_eq!(inv.mul(&s(2, &[1, 120])).unwrap(), s(2, &[1]));
    }

    #[test]
    fn non_unit_constant_rejected() {
        assert_eq!(s(2, &[0, 1]).invert(), Err(Error::NonUnitConstant));
    }

    #[test]
    fn exp_taylor_coefficients() {
        let e = TruncatedSeries::variable(3).exp().unwrap();
        let want = TruncatedSeries::new(3, vec![int(1), int(1), rat(1, 2), rat(1, 6)]).unwrap();
        assert_eq!(e, want);
        assert_eq!(s(3, &[0]).exp().unwrap(), s(3, &[1]));
    }

    #[test]
    fn log_of_exp() {
        let q = TruncatedSeries::variable(4);
        assert_eq!(q.exp().unwrap().log().unwrap(), q);
    }

    #[test]
    fn exp_log_preconditions() {
        assert!(matches!(s(2, &[1, 1]).exp(), Err(Error::Precondition(_))));
        assert!(matches!(s(2, &[2, 1]).log(), Err(Error::Precondition(_))));
    }

    #[test]
    fn reversion_of_zero_is_identity() {
        assert_eq!(
            exp_reversion(&s(5, &[0])).unwrap(),
            TruncatedSeries::variable(5)
        );
    }

    #[test]
    fn reversion_linear_correction() {
        // log q + a q = log Q  =>  q = Q - a Q^2 + O(Q^3)
        let a = rat(7, 3);
        let g = TruncatedSeries::new(2, vec![int(0), a.clone()]).unwrap();
        let q = exp_reversion(&g).unwrap();
        assert_eq!(
            q,
            TruncatedSeries::new(2, vec![int(0), int(1), -a]).unwrap()
        );
    }

    #[test]
    fn reversion_order_bound() {
        let g = s(3, &[0, 1]);
        assert!(exp_reversion_to(&g, 4).is_ok());
        assert_eq!(
            exp_reversion_to(&g, 5),
            Err(Error::InsufficientOrder {
                requested: 5,
                available: 4
            })
        );
        assert!(matches!(
            exp_reversion(&s(3, &[1, 1])),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn composition_with_identity() {
        let a = s(4, &[2, 0, -3, 5, 1]);
        assert_eq!(a.compose(&TruncatedSeries::variable(4)).unwrap(), a);
        assert!(a.compose(&s(4, &[1, 1])).is_err());
    }

    #[test]
    fn empty_coefficient_list_rejected() {
        assert!(TruncatedSeries::<BigRational>::new(2, vec![]).is_err());
    }
}
