//! Hypergeometric series, mirror transformation and `J`-functions.
//!
//! The `q^d` coefficient of the `I`-series is a ratio of products of
//! linear forms in `H` and `hbar`, so it is homogeneous of degree
//! `d (sum l + sum m - r - 1)`. It is computed as a class in `H*(P^r)`
//! together with that degree and then spread over `hbar` powers, which keeps
//! every coefficient a finite Laurent polynomial.
//!
//! Normalization writes `I/I_0 = 1 + (f_0 + f_1 H)/hbar + O(hbar^-2)` and
//! strips `exp(-(f_0 + f_1 H)/hbar)`; the `H` part becomes the change of
//! variables `t = log q + f_1(q)`, `Q = e^t`. What remains is the bracket
//! `1 + sum_d Q^d sum_{n,a} hbar^{-(n+2)} <tau_n T_a> T^a` of the
//! `J`-function with the exponential prefactor removed.

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::cohomology::ProjClass;
use crate::error::{Error, Result};
use crate::geometry::GeometryConfig;
use crate::localization::{LocalizationEngine, Twist};
use crate::series::{exp_reversion, int, BigRational, Coefficient, HbarLaurent, TruncatedSeries};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MirrorConfig {
    geometry: GeometryConfig,
    q_order: usize,
    hbar_window: Option<i32>,
}

impl MirrorConfig {
    /// Only Fano and Calabi-Yau regimes (`sum l + sum m <= r + 1`) are
    /// accepted.
    pub fn new(geometry: GeometryConfig, q_order: usize) -> Result<Self> {
        let index = geometry.bundle().criticality_index() as usize;
        if index > geometry.r() + 1 {
            return Err(Error::InvalidConfig(format!(
                "sum of bundle degrees {index} exceeds r + 1 = {}",
                geometry.r() + 1
            )));
        }
        Ok(Self {
            geometry,
            q_order,
            hbar_window: None,
        })
    }

    /// Lowest `hbar` exponent to retain. Defaults to exactly what the
    /// product formula needs.
    pub fn with_hbar_window(mut self, lowest: i32) -> Self {
        self.hbar_window = Some(lowest);
        self
    }

    pub fn geometry(&self) -> &GeometryConfig {
        &self.geometry
    }

    pub fn q_order(&self) -> usize {
        self.q_order
    }

    /// Total `(H, hbar)` degree of the `q^d` coefficient.
    pub fn coefficient_degree(&self, d: usize) -> i32 {
        let index = self.geometry.bundle().criticality_index() as i32;
        d as i32 * (index - self.geometry.r() as i32 - 1)
    }

    /// Lowest `hbar` exponent appearing in the `I`-series through `q_order`.
    pub fn required_window(&self) -> i32 {
        (1..=self.q_order)
            .map(|d| self.coefficient_degree(d) - self.geometry.r() as i32)
            .min()
            .unwrap_or(0)
            .min(0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum JKind {
    /// Hypergeometric series before the mirror transformation.
    RawI,
    /// Bracket of a `J`-function: constant term 1, no `hbar^-1` terms.
    Normalized,
}

/// A series in `q` (or `Q`) with `hbar`-Laurent coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct JSeries {
    series: TruncatedSeries<HbarLaurent>,
    kind: JKind,
}

impl JSeries {
    pub fn new(series: TruncatedSeries<HbarLaurent>, kind: JKind) -> Self {
        Self { series, kind }
    }

    pub fn kind(&self) -> JKind {
        self.kind
    }

    pub fn order(&self) -> usize {
        self.series.order()
    }

    pub fn series(&self) -> &TruncatedSeries<HbarLaurent> {
        &self.series
    }

    pub fn coefficient(&self, d: usize) -> Option<&HbarLaurent> {
        self.series.coeff(d)
    }

    /// Rational in front of `q^d H^h_power hbar^exponent`.
    pub fn slot(&self, d: usize, h_power: usize, exponent: i32) -> BigRational {
        self.series
            .coeff(d)
            .map(|c| c.slot(h_power, exponent))
            .unwrap_or_else(BigRational::zero)
    }

    /// Multiplies every coefficient by a cohomology class, e.g. `Euler(V)`.
    pub fn times_class(&self, class: &ProjClass) -> Self {
        Self {
            series: self.series.map(|c| c.cup_class(class)),
            kind: self.kind,
        }
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self {
            series: self.series.truncate(order),
            kind: self.kind,
        }
    }

    /// The scalar series of one `(H^h_power, hbar^exponent)` slot.
    pub fn slot_series(&self, h_power: usize, exponent: i32) -> TruncatedSeries<BigRational> {
        let coeffs = (0..=self.order())
            .map(|d| self.slot(d, h_power, exponent))
            .collect();
        TruncatedSeries::new(self.order(), coeffs).expect("scalar series")
    }
}

/// Homogeneous `q^d` coefficient of the `I`-series as `(degree, class)`.
fn i_coefficient(geometry: &GeometryConfig, d: usize) -> (i32, ProjClass) {
    let r = geometry.r();
    let mut class = ProjClass::one(r);
    let mut degree = 0i32;
    let linear = |c0: i64, c1: i64| ProjClass::linear(r, int(c0), int(c1));
    for &l in geometry.bundle().convex_degrees() {
        for k in 1..=(l as usize * d) as i64 {
            class = class.times(&linear(k, l as i64));
            degree += 1;
        }
    }
    for &m in geometry.bundle().concave_degrees() {
        for k in 0..(m as usize * d) as i64 {
            class = class.times(&linear(-k, -(m as i64)));
            degree += 1;
        }
    }
    for k in 1..=d as i64 {
        let inv = linear(k, 1).try_inverse().expect("k + H is a unit");
        for _ in 0..=r {
            class = class.times(&inv);
        }
        degree -= r as i32 + 1;
    }
    (degree, class)
}

/// `sum_d q^d prod_i prod_{k=1}^{l_i d} (l_i H + k hbar)
///   prod_j prod_{k=0}^{m_j d - 1} (-m_j H - k hbar) / prod_{k=1}^d (H + k hbar)^{r+1}`.
pub fn i_function(cfg: &MirrorConfig) -> Result<JSeries> {
    let needed = cfg.required_window();
    if let Some(window) = cfg.hbar_window {
        if window > needed {
            return Err(Error::HbarWindow { needed, window });
        }
    }
    let coeffs: Vec<HbarLaurent> = (0..=cfg.q_order)
        .into_par_iter()
        .map(|d| {
            let (degree, class) = i_coefficient(&cfg.geometry, d);
            HbarLaurent::from_homogeneous(degree, &class)
        })
        .collect();
    Ok(JSeries::new(
        TruncatedSeries::new(cfg.q_order, coeffs)?,
        JKind::RawI,
    ))
}

/// Data of the mirror transformation.
#[derive(Clone, Debug, PartialEq)]
pub struct MirrorMap {
    /// `I_0`, the `H^0 hbar^0` part of `I`.
    pub i0: TruncatedSeries<BigRational>,
    /// `g = I_1/I_0`, so that `t = log q + g(q)`.
    pub g: TruncatedSeries<BigRational>,
    /// `H^0 hbar^-1` part of `I/I_0`, a shift of `t_0` (Fano index one).
    pub t0_shift: TruncatedSeries<BigRational>,
    /// Inverse change of variables `q(Q)`.
    pub q_of_big_q: TruncatedSeries<BigRational>,
}

/// Normalizes a raw `I`-series into the bracket of its `J`-function,
/// re-expanded in `Q = e^t`.
pub fn mirror_map(i: &JSeries) -> Result<(MirrorMap, JSeries)> {
    if i.kind != JKind::RawI {
        return Err(Error::Precondition(
            "mirror_map expects a raw I-series".into(),
        ));
    }
    let r = i.series.coeffs()[0].dim();
    for (d, c) in i.series.coeffs().iter().enumerate() {
        let positive = c.max_exponent().is_some_and(|e| e > 0);
        let class_at_zero = (1..=r).any(|a| !c.slot(a, 0).is_zero());
        if positive || class_at_zero {
            return Err(Error::Unsupported(format!(
                "q^{d} coefficient has non-negative hbar powers beyond the constant"
            )));
        }
    }
    let i0 = i.slot_series(0, 0);
    let inv_i0 = i0.invert()?;
    let normalized = i.series.mul_scalar_series(&inv_i0);
    let view = JSeries::new(normalized.clone(), JKind::RawI);
    let t0_shift = view.slot_series(0, -1);
    let g = view.slot_series(1, -1);
    for (d, c) in normalized.coeffs().iter().enumerate() {
        if (2..=r).any(|a| !c.slot(a, -1).is_zero()) {
            return Err(Error::Unsupported(format!(
                "q^{d} coefficient has hbar^-1 terms beyond H^1"
            )));
        }
    }
    let prefactor_exponent: Vec<HbarLaurent> = (0..=normalized.order())
        .map(|d| {
            HbarLaurent::monomial(
                -1,
                ProjClass::linear(r, -t0_shift.coeffs()[d].clone(), -g.coeffs()[d].clone()),
            )
        })
        .collect();
    let prefactor = TruncatedSeries::new(normalized.order(), prefactor_exponent)?.exp()?;
    let stripped = prefactor.mul(&normalized)?;
    let q_of_big_q = exp_reversion(&g)?;
    let j = stripped.compose(&q_of_big_q)?;
    Ok((
        MirrorMap {
            i0,
            g,
            t0_shift,
            q_of_big_q,
        },
        JSeries::new(j, JKind::Normalized),
    ))
}

/// Genus-0 invariants `N_d`, `d = 1..=D`, of the zero locus, read off the
/// normalized `J`-function.
///
/// With `s` convex summands the `Q^d hbar^-2` coefficient along
/// `H^{r-s-1}` equals `<tau_0 H^{s+1} Euler(V')>_{0,d}`, and the divisor
/// equation turns that into `d N_d / prod l_i`. Every requested degree must
/// be one where the Euler class of `V_{d,0}` has top degree.
pub fn extract_gw(j: &JSeries, cfg: &MirrorConfig) -> Result<Vec<BigRational>> {
    if j.kind != JKind::Normalized {
        return Err(Error::Precondition(
            "extract_gw expects a normalized J-function".into(),
        ));
    }
    let geometry = &cfg.geometry;
    if !geometry.bundle().is_convex() || geometry.bundle().is_empty() {
        return Err(Error::Unsupported(
            "invariants are extracted for zero loci of convex bundles only".into(),
        ));
    }
    let s = geometry.bundle().convex_degrees().len();
    if s + 1 > geometry.r() {
        return Err(Error::Unsupported("zero locus has no curve classes".into()));
    }
    let order = cfg.q_order.min(j.order());
    if order < cfg.q_order {
        return Err(Error::InsufficientOrder {
            requested: cfg.q_order,
            available: j.order(),
        });
    }
    let slot_power = geometry.r() - s - 1;
    let degree = geometry.bundle().zero_locus_degree();
    (1..=order as u32)
        .map(|d| {
            if !geometry.euler_admissible(d) {
                return Err(Error::Unsupported(format!(
                    "degree {d} is not enumerative for {geometry}"
                )));
            }
            Ok(j.slot(d as usize, slot_power, -2) * &degree / int(d as i64))
        })
        .collect()
}

/// Builds the `J` bracket directly from one-point correlators:
/// `1 + sum_d q^d sum_{n,a} hbar^{-(n+2)} <tau_n H^a> H^{r-a}`, plain or with
/// the `Euler(V')` twist.
pub fn assemble_j_from_correlators(
    engine: &LocalizationEngine,
    geometry: &GeometryConfig,
    order: usize,
    twist: Twist,
) -> Result<JSeries> {
    if twist == Twist::Full {
        return Err(Error::Unsupported(
            "the J bracket uses the plain or kernel-twisted correlators".into(),
        ));
    }
    let r = geometry.r();
    let mut coeffs = vec![HbarLaurent::one(r)];
    for d in 1..=order as u32 {
        let rank = match twist {
            Twist::Kernel => {
                geometry.bundle().rank_over(d) - geometry.bundle().convex_degrees().len() as i64
            }
            _ => 0,
        };
        let mut term = HbarLaurent::zero(r);
        for a in 0..=r as u32 {
            let n = geometry.moduli_dim(d, 1) - rank - a as i64;
            if n < 0 {
                continue;
            }
            let value = engine.one_point_correlator(geometry, d, n as u32, a, twist)?;
            if value.is_zero() {
                continue;
            }
            let dual = ProjClass::monomial(r, r - a as usize, value);
            term = term.plus(&HbarLaurent::monomial(-(n as i32 + 2), dual));
        }
        coeffs.push(term);
    }
    Ok(JSeries::new(
        TruncatedSeries::new(order, coeffs)?,
        JKind::Normalized,
    ))
}

/// Whether every `d >= 1` coefficient lives in `hbar^-2` and below.
pub fn bracket_starts_at_hbar_minus_two(j: &JSeries) -> bool {
    j.series
        .coeffs()
        .iter()
        .skip(1)
        .all(|c| c.max_exponent().is_none_or(|e| e <= -2))
        && j.series.coeffs()[0].is_unity()
}

/// Exact `(5d)!/(d!)^5`-style leading coefficients, the `H^0 hbar^0` part.
pub fn leading_coefficient(geometry: &GeometryConfig, d: u32) -> BigRational {
    let fact = |n: u64| (1..=n as i64).fold(BigRational::one(), |acc, k| acc * int(k));
    let d = d as u64;
    let num = geometry
        .bundle()
        .convex_degrees()
        .iter()
        .fold(BigRational::one(), |acc, &l| acc * fact(l as u64 * d));
    num / num_traits::pow(fact(d), geometry.r() + 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::rat;

    fn quintic(order: usize) -> MirrorConfig {
        MirrorConfig::new(GeometryConfig::quintic(), order).unwrap()
    }

    #[test]
    fn quintic_i0_and_mirror_map() {
        let i = i_function(&quintic(3)).unwrap();
        assert_eq!(i.slot(1, 0, 0), int(120));
        assert_eq!(i.slot(2, 0, 0), int(113400));
        assert_eq!(
            i.slot(3, 0, 0),
            leading_coefficient(&GeometryConfig::quintic(), 3)
        );
        let (map, _) = mirror_map(&i).unwrap();
        assert_eq!(map.i0.coeffs()[..3], [int(1), int(120), int(113400)]);
        assert_eq!(map.g.coeffs()[1], int(770));
    }

    #[test]
    fn p1_degree_one_term() {
        let cfg = MirrorConfig::new(GeometryConfig::projective_space(1).unwrap(), 1).unwrap();
        let i = i_function(&cfg).unwrap();
        let c = i.coefficient(1).unwrap();
        assert_eq!(c.slot(0, -2), int(1));
        assert_eq!(c.slot(1, -3), int(-2));
        assert_eq!(c.terms().count(), 2);
        assert_eq!(i.coefficient(0).unwrap(), &HbarLaurent::one(1));
    }

    #[test]
    fn fano_map_is_trivial() {
        let cfg = MirrorConfig::new(GeometryConfig::projective_space(4).unwrap(), 4).unwrap();
        let i = i_function(&cfg).unwrap();
        let (map, j) = mirror_map(&i).unwrap();
        assert!(map.g.is_zero());
        assert!(map.t0_shift.is_zero());
        assert_eq!(map.q_of_big_q, TruncatedSeries::variable(4));
        assert_eq!(j.series(), i.series());
    }

    #[test]
    fn identity_normalization() {
        let i =
            i_function(&MirrorConfig::new(GeometryConfig::convex(4, &[2]).unwrap(), 3).unwrap())
                .unwrap();
        let (_, j) = mirror_map(&i).unwrap();
        assert_eq!(j.series(), i.series());
    }

    #[test]
    fn quintic_low_degree_invariants() {
        let cfg = quintic(3);
        let (_, j) = mirror_map(&i_function(&cfg).unwrap()).unwrap();
        let n = extract_gw(&j, &cfg).unwrap();
        assert_eq!(n, vec![int(2875), rat(4876875, 8), rat(8564575000, 27)]);
        assert!(bracket_starts_at_hbar_minus_two(&j));
    }

    #[test]
    fn cubic_surface_lines() {
        let cfg = MirrorConfig::new(GeometryConfig::convex(3, &[3]).unwrap(), 1).unwrap();
        let (map, j) = mirror_map(&i_function(&cfg).unwrap()).unwrap();
        assert_eq!(map.t0_shift.coeffs()[1], int(6));
        assert_eq!(extract_gw(&j, &cfg).unwrap(), vec![int(27)]);
        let cfg2 = MirrorConfig::new(GeometryConfig::convex(3, &[3]).unwrap(), 2).unwrap();
        let (_, j2) = mirror_map(&i_function(&cfg2).unwrap()).unwrap();
        assert!(matches!(extract_gw(&j2, &cfg2), Err(Error::Unsupported(_))));
    }

    #[test]
    fn window_too_narrow() {
        let cfg = quintic(2).with_hbar_window(-3);
        assert_eq!(
            i_function(&cfg),
            Err(Error::HbarWindow {
                needed: -4,
                window: -3
            })
        );
        assert!(i_function(&quintic(2).with_hbar_window(-10)).is_ok());
        let p4 = MirrorConfig::new(GeometryConfig::projective_space(4).unwrap(), 2).unwrap();
        assert_eq!(p4.required_window(), -14);
    }

    #[test]
    fn general_type_rejected() {
        assert!(MirrorConfig::new(GeometryConfig::convex(4, &[6]).unwrap(), 2).is_err());
    }

    #[test]
    fn extraction_preconditions() {
        let cfg = quintic(2);
        let i = i_function(&cfg).unwrap();
        assert!(extract_gw(&i, &cfg).is_err());
        let local = MirrorConfig::new(GeometryConfig::local_p1(), 2).unwrap();
        let (_, j) = mirror_map(&i_function(&local).unwrap()).unwrap();
        assert!(matches!(extract_gw(&j, &local), Err(Error::Unsupported(_))));
        assert!(mirror_map(&j).is_err());
    }

    #[test]
    fn correlators_rebuild_projective_j() {
        let geometry = GeometryConfig::projective_space(2).unwrap();
        let cfg = MirrorConfig::new(geometry.clone(), 2).unwrap();
        let i = i_function(&cfg).unwrap();
        let engine = LocalizationEngine::new();
        let j = assemble_j_from_correlators(&engine, &geometry, 2, Twist::None).unwrap();
        assert_eq!(j.series(), i.series());
    }

    #[test]
    fn correlators_rebuild_quintic_j() {
        let geometry = GeometryConfig::quintic();
        let cfg = MirrorConfig::new(geometry.clone(), 2).unwrap();
        let (_, j) = mirror_map(&i_function(&cfg).unwrap()).unwrap();
        let engine = LocalizationEngine::new();
        let twisted = assemble_j_from_correlators(&engine, &geometry, 2, Twist::Kernel).unwrap();
        let euler = geometry.bundle().euler_class(4);
        assert_eq!(
            twisted.times_class(&euler).series(),
            j.times_class(&euler).series()
        );
    }
}
