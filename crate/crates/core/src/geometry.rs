//! Ambient projective space together with a split bundle
//! `O(l_1) + ... + O(l_k) + O(-m_1) + ... + O(-m_j)`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::cohomology::ProjClass;
use crate::error::{Error, Result};
use crate::series::{int, BigRational};

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BundleSpec {
    convex: Vec<u32>,
    concave: Vec<u32>,
}

impl BundleSpec {
    /// All degrees must be positive: `O(l)` summands are convex and `O(-m)`
    /// summands concave on genus-0 stable maps.
    pub fn new(convex: Vec<u32>, concave: Vec<u32>) -> Result<Self> {
        if convex.iter().chain(&concave).any(|&x| x == 0) {
            return Err(Error::InvalidConfig(
                "bundle degrees must be positive integers".into(),
            ));
        }
        Ok(Self { convex, concave })
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn convex_degrees(&self) -> &[u32] {
        &self.convex
    }

    pub fn concave_degrees(&self) -> &[u32] {
        &self.concave
    }

    pub fn is_empty(&self) -> bool {
        self.convex.is_empty() && self.concave.is_empty()
    }

    pub fn is_convex(&self) -> bool {
        self.concave.is_empty()
    }

    /// Rank of the induced bundle on `M_{0,n}(P^r, d)`: `ld + 1` sections
    /// per convex summand and `md - 1` first-cohomology classes per concave
    /// one.
    pub fn rank_over(&self, d: u32) -> i64 {
        let d = d as i64;
        self.convex.iter().map(|&l| l as i64 * d + 1).sum::<i64>()
            + self.concave.iter().map(|&m| m as i64 * d - 1).sum::<i64>()
    }

    /// `sum l_i + sum m_j`, compared with `c_1(P^r) = r + 1`.
    pub fn criticality_index(&self) -> u32 {
        self.convex.iter().chain(&self.concave).sum()
    }

    /// Product of the convex degrees, the degree of the zero locus.
    pub fn zero_locus_degree(&self) -> BigRational {
        self.convex
            .iter()
            .fold(int(1), |acc, &l| acc * int(l as i64))
    }

    /// Euler class of the convex part, `prod l_i H`.
    pub fn euler_class(&self, r: usize) -> ProjClass {
        ProjClass::monomial(r, self.convex.len(), self.zero_locus_degree())
    }
}

impl fmt::Display for BundleSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .convex
            .iter()
            .map(|l| format!("O({l})"))
            .chain(self.concave.iter().map(|m| format!("O(-{m})")))
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join("+"))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GeometryConfig {
    r: usize,
    bundle: BundleSpec,
}

impl GeometryConfig {
    pub fn new(r: usize, bundle: BundleSpec) -> Result<Self> {
        if r == 0 {
            return Err(Error::InvalidConfig(
                "ambient dimension must be at least 1".into(),
            ));
        }
        Ok(Self { r, bundle })
    }

    pub fn projective_space(r: usize) -> Result<Self> {
        Self::new(r, BundleSpec::empty())
    }

    /// `O(5)` on `P^4`.
    pub fn quintic() -> Self {
        Self {
            r: 4,
            bundle: BundleSpec {
                convex: vec![5],
                concave: vec![],
            },
        }
    }

    /// `O(-1) + O(-1)` on `P^1`.
    pub fn local_p1() -> Self {
        Self {
            r: 1,
            bundle: BundleSpec {
                convex: vec![],
                concave: vec![1, 1],
            },
        }
    }

    pub fn convex(r: usize, degrees: &[u32]) -> Result<Self> {
        Self::new(r, BundleSpec::new(degrees.to_vec(), vec![])?)
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn bundle(&self) -> &BundleSpec {
        &self.bundle
    }

    /// `dim M_{0,marks}(P^r, d) = (r+1)d + r - 3 + marks`.
    pub fn moduli_dim(&self, d: u32, marks: u32) -> i64 {
        (self.r as i64 + 1) * d as i64 + self.r as i64 - 3 + marks as i64
    }

    /// Whether the Euler class of the induced bundle has top degree on
    /// `M_{0,0}(P^r, d)`.
    pub fn euler_admissible(&self, d: u32) -> bool {
        self.bundle.rank_over(d) == self.moduli_dim(d, 0)
    }

    /// Calabi-Yau threefold zero locus: `sum l = r + 1`, `r - 3` convex
    /// summands, no concave part.
    pub fn is_cy3_complete_intersection(&self) -> bool {
        self.bundle.is_convex()
            && self.bundle.convex.len() + 3 == self.r
            && self.bundle.criticality_index() as usize == self.r + 1
    }
}

impl fmt::Display for GeometryConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "P^{} with V = {}", self.r, self.bundle)
    }
}

/// Multiplicative class applied to the induced bundle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CharClassSpec {
    Euler,
    /// Total Chern class `sum_i s^i c_i`.
    ChernPolynomial(BigRational),
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranks_and_dimensions() {
        let q = GeometryConfig::quintic();
        for d in 1..6 {
            assert_eq!(q.bundle().rank_over(d), 5 * d as i64 + 1);
            assert!(q.euler_admissible(d));
        }
        let l = GeometryConfig::local_p1();
        assert_eq!(l.bundle().rank_over(3), 4);
        assert_eq!(l.moduli_dim(3, 0), 4);
        let cubic = GeometryConfig::convex(3, &[3]).unwrap();
        assert!(cubic.euler_admissible(1));
        assert!(!cubic.euler_admissible(2));
    }

    #[test]
    fn cy3_detection() {
        assert!(GeometryConfig::quintic().is_cy3_complete_intersection());
        assert!(GeometryConfig::convex(5, &[3, 3])
            .unwrap()
            .is_cy3_complete_intersection());
        assert!(!GeometryConfig::convex(3, &[3])
            .unwrap()
            .is_cy3_complete_intersection());
        assert!(!GeometryConfig::local_p1().is_cy3_complete_intersection());
    }

    #[test]
    fn invalid_inputs() {
        assert!(BundleSpec::new(vec![0], vec![]).is_err());
        assert!(GeometryConfig::projective_space(0).is_err());
    }

    #[test]
    fn euler_prefactor() {
        let e = GeometryConfig::convex(5, &[3, 3])
            .unwrap()
            .bundle()
            .euler_class(5);
        assert_eq!(e, ProjClass::monomial(5, 2, int(9)));
    }
}
