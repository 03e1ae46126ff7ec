//! Degree-1 counts as top Chern numbers on the Grassmannian of lines.
//!
//! Lines in `P^r` are points of `G(2, r+1)`. A line lies on the zero locus of
//! a section of `O(l)` when the induced section of `Sym^l S*` vanishes, so the
//! number of lines on a complete intersection is
//! `int_{G(2,r+1)} prod_i c_top(Sym^{l_i} S*)`.
//! With Chern roots `x1, x2` of `S*` the integrand is the symmetric form
//! `prod_i prod_k (k x1 + (l_i - k) x2)`. Expanding it in Schur polynomials
//! `s_(a,b)(x1, x2)` and keeping the coefficient of `s_(r-1,r-1)` (the point
//! class) gives the integral, since `s_(a,b)(S*)` vanishes for `a > r - 1`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::series::BigRational;

/// A two-row partition `(a, b)` with `a >= b >= 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SchurIndex {
    pub a: usize,
    pub b: usize,
}

impl SchurIndex {
    pub fn new(a: usize, b: usize) -> Option<Self> {
        (a >= b).then_some(Self { a, b })
    }

    /// Whether `s_(a,b)(S*)` is a non-zero class on `G(2, k)`.
    pub fn fits(&self, k: usize) -> bool {
        k >= 2 && self.a <= k - 2
    }
}

/// Homogeneous binary form of degree `n`: entry `i` is the coefficient of
/// `x1^i x2^(n-i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinaryForm {
    coeffs: Vec<BigInt>,
}

impl BinaryForm {
    pub fn one() -> Self {
        Self {
            coeffs: vec![BigInt::one()],
        }
    }

    /// `p x1 + q x2`.
    pub fn linear(p: i64, q: i64) -> Self {
        Self {
            coeffs: vec![BigInt::from(q), BigInt::from(p)],
        }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, i: usize) -> &BigInt {
        &self.coeffs[i]
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Self { coeffs }
    }

    pub fn is_symmetric(&self) -> bool {
        self.coeffs.iter().eq(self.coeffs.iter().rev())
    }

    /// Schur expansion of a symmetric form via the bialternant formula:
    /// the coefficient of `s_(a,b)` is the coefficient of `x1^(a+1) x2^b` in
    /// `(x1 - x2) * self`.
    pub fn schur_expand(&self) -> Result<BTreeMap<SchurIndex, BigInt>> {
        if !self.is_symmetric() {
            return Err(Error::Precondition(
                "Schur expansion needs a symmetric form".into(),
            ));
        }
        let n = self.degree();
        let alt = self.mul(&Self::linear(1, -1));
        let mut out = BTreeMap::new();
        for b in 0..=n / 2 {
            let a = n - b;
            let c = alt.coeff(a + 1);
            if !c.is_zero() {
                out.insert(SchurIndex { a, b }, c.clone());
            }
        }
        Ok(out)
    }

    /// Inverse of [`schur_expand`](Self::schur_expand) for terms of total
    /// degree `n`.
    pub fn from_schur(n: usize, terms: &BTreeMap<SchurIndex, BigInt>) -> Result<Self> {
        let mut coeffs = vec![BigInt::zero(); n + 1];
        for (idx, c) in terms {
            if idx.a + idx.b != n {
                return Err(Error::Precondition(format!(
                    "s_({},{}) does not have degree {n}",
                    idx.a, idx.b
                )));
            }
            // s_(a,b) = sum_{i=b}^{a} x1^i x2^(a+b-i)
            for slot in &mut coeffs[idx.b..=idx.a] {
                *slot += c;
            }
        }
        Ok(Self { coeffs })
    }
}

/// `c_top(Sym^l S*)` as a form in the Chern roots.
pub fn top_chern_of_symmetric_power(l: u32) -> BinaryForm {
    (0..=l as i64).fold(BinaryForm::one(), |acc, k| {
        acc.mul(&BinaryForm::linear(k, l as i64 - k))
    })
}

/// Number of lines on the zero locus of `O(l_1) + ... + O(l_k)` in `P^r`.
///
/// Errors unless `sum (l_i + 1) = 2(r - 1)`, the dimension of `G(2, r+1)`.
pub fn schubert_line_count(r: usize, degrees: &[u32]) -> Result<BigRational> {
    if r == 0 {
        return Err(Error::InvalidConfig(
            "ambient dimension must be positive".into(),
        ));
    }
    if degrees.contains(&0) {
        return Err(Error::InvalidConfig(
            "line bundle degrees must be positive".into(),
        ));
    }
    let rank: i64 = degrees.iter().map(|&l| l as i64 + 1).sum();
    let dim = 2 * (r as i64 - 1);
    if rank != dim {
        return Err(Error::RankMismatch { rank, dim });
    }
    let form = degrees.iter().fold(BinaryForm::one(), |acc, &l| {
        acc.mul(&top_chern_of_symmetric_power(l))
    });
    let expansion = form.schur_expand()?;
    let point = SchurIndex { a: r - 1, b: r - 1 };
    Ok(BigRational::from_integer(
        expansion.get(&point).cloned().unwrap_or_default(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::int;

    #[test]
    fn classical_line_counts() {
        assert_eq!(schubert_line_count(3, &[3]).unwrap(), int(27));
        assert_eq!(schubert_line_count(4, &[5]).unwrap(), int(2875));
        assert_eq!(schubert_line_count(4, &[2, 2]).unwrap(), int(16));
    }

    #[test]
    fn complete_intersection_line_counts() {
        // Calabi-Yau complete intersections in P^5 and P^7.
        assert_eq!(schubert_line_count(5, &[3, 3]).unwrap(), int(1053));
        assert_eq!(schubert_line_count(5, &[2, 4]).unwrap(), int(1280));
        assert_eq!(schubert_line_count(7, &[2, 2, 2, 2]).unwrap(), int(512));
    }

    #[test]
    fn non_enumerative_input_is_an_error() {
        assert_eq!(
            schubert_line_count(4, &[4]),
            Err(Error::RankMismatch { rank: 5, dim: 6 })
        );
        assert!(schubert_line_count(3, &[0, 5]).is_err());
    }

    #[test]
    fn schur_round_trip() {
        let f = top_chern_of_symmetric_power(5).mul(&top_chern_of_symmetric_power(2));
        let s = f.schur_expand().unwrap();
        assert_eq!(BinaryForm::from_schur(f.degree(), &s).unwrap(), f);
    }

    #[test]
    fn asymmetric_form_rejected() {
        assert!(BinaryForm::linear(1, 2).schur_expand().is_err());
    }

    #[test]
    fn schur_index_fits_box() {
        assert!(SchurIndex::new(3, 3).unwrap().fits(5));
        assert!(!SchurIndex::new(4, 2).unwrap().fits(5));
        assert!(SchurIndex::new(1, 2).is_none());
    }
}
