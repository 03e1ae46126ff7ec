//! Exact value of one fixed-locus term of the localization formula.
//!
//! Conventions, with `lambda_i` the weight of `O(1)` at the fixed point
//! `p_i` (so `H|p_i = lambda_i` and `T_{p_i} P^r` has weights
//! `lambda_i - lambda_k`):
//!
//! * an edge of degree `d` between `p_i` and `p_j` contributes the moving
//!   part of `H^0(C_e, f^*T)`: the weights
//!   `(a lambda_i + (d-a) lambda_j)/d - lambda_k`, `0 <= a <= d`, minus the
//!   two zero weights;
//! * a vertex of valence `val` contributes `e(T_{p_i})^{val-1}`;
//! * the flag `F = (v, e)` has tangent weight `w_F = (lambda_i - lambda_j)/d`.
//!   Unmarked leaves contribute `w_F` (a moving automorphism of the edge),
//!   unmarked valence-2 vertices `1/(w_F1 + w_F2)` (node smoothing), and
//!   vertices carrying a contracted component `M_{0,k}` contribute
//!   `int prod_F 1/(w_F - psi_F)`, evaluated from
//!   `int psi^a... = (k-3)!/prod a!`;
//! * the cotangent line at a marked leaf has weight `-w_F`.
//!
//! The graph total is divided by `|Aut| * prod d_e`.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::geometry::{CharClassSpec, GeometryConfig};
use crate::series::{int, BigRational};

use super::graph::FixedGraph;
use super::weights::WeightVector;

/// Which bundle class multiplies the integrand.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Twist {
    /// Plain integral over the moduli of maps to `P^r`.
    None,
    /// The class of the whole induced bundle `V_{d,n}`.
    Full,
    /// Euler class of the kernel `V'_{d,1}` of evaluation at the mark.
    Kernel,
}

/// Insertion `psi^psi_power ev^*(H^class_power)` at the marked point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Descendant {
    pub psi_power: u32,
    pub class_power: u32,
}

impl Descendant {
    pub fn new(psi_power: u32, class_power: u32) -> Self {
        Self {
            psi_power,
            class_power,
        }
    }
}

pub(crate) fn degenerate() -> Error {
    Error::DegenerateWeights { attempts: 1 }
}

struct Fraction {
    num: BigRational,
    den: BigRational,
}

impl Fraction {
    fn new() -> Self {
        Self {
            num: BigRational::one(),
            den: BigRational::one(),
        }
    }

    fn mul(&mut self, x: &BigRational) {
        self.num *= x;
    }

    fn div(&mut self, x: &BigRational) -> Result<()> {
        if x.is_zero() {
            return Err(degenerate());
        }
        self.den *= x;
        Ok(())
    }

    fn value(self) -> BigRational {
        self.num / self.den
    }
}

fn factorial(n: u64) -> BigRational {
    (1..=n as i64).fold(int(1), |acc, k| acc * int(k))
}

fn pow(x: &BigRational, e: u32) -> BigRational {
    num_traits::pow(x.clone(), e as usize)
}

/// Weights of the induced bundle restricted to the fixed locus of `g`.
///
/// Convex `O(l)`: interior section weights of every edge plus `l lambda_i`
/// once per vertex (`H^0` of the normalization sequence). Concave `O(-m)`:
/// interior `H^1` weights of every edge plus `val - 1` copies of
/// `-m lambda_i` per vertex. `drop_mark` removes the evaluation at the mark.
fn bundle_weights(
    g: &FixedGraph,
    lam: &[BigRational],
    cfg: &GeometryConfig,
    drop_mark: bool,
) -> Vec<BigRational> {
    let mut out = Vec::new();
    let bundle = cfg.bundle();
    for &l in bundle.convex_degrees() {
        let l = l as i64;
        for &(u, v, de) in g.edges() {
            let (li, lj) = (&lam[g.label(u)], &lam[g.label(v)]);
            let n = l * de as i64;
            for a in 1..n {
                out.push((li * int(a) + lj * int(n - a)) / int(de as i64));
            }
        }
        for v in 0..g.vertex_count() {
            if drop_mark && g.mark() == Some(v) {
                continue;
            }
            out.push(&lam[g.label(v)] * int(l));
        }
    }
    for &m in bundle.concave_degrees() {
        let m = m as i64;
        for &(u, v, de) in g.edges() {
            let (li, lj) = (&lam[g.label(u)], &lam[g.label(v)]);
            let n = m * de as i64;
            for a in 1..n {
                out.push(-(li * int(a) + lj * int(n - a)) / int(de as i64));
            }
        }
        for v in 0..g.vertex_count() {
            for _ in 1..g.valence(v) {
                out.push(&lam[g.label(v)] * int(-m));
            }
        }
    }
    out
}

/// `e_k` of a list of weights.
fn elementary_symmetric(weights: &[BigRational], k: usize) -> BigRational {
    let mut e = vec![BigRational::zero(); k + 1];
    e[0] = BigRational::one();
    for (seen, w) in weights.iter().enumerate() {
        for j in (1..=k.min(seen + 1)).rev() {
            let add = &e[j - 1] * w;
            e[j] += add;
        }
    }
    e.swap_remove(k)
}

/// Exact contribution of one fixed-point graph.
///
/// `target_degree` is the complex degree the bundle class must supply; the
/// Chern polynomial contributes only its component of that degree, which is
/// the only part with a weight-independent integral.
pub fn graph_contribution(
    g: &FixedGraph,
    w: &WeightVector,
    cfg: &GeometryConfig,
    class: &CharClassSpec,
    descendant: Option<Descendant>,
    twist: Twist,
) -> Result<BigRational> {
    let r = cfg.r();
    if w.len() != r + 1 {
        return Err(Error::InvalidConfig(format!(
            "{} weights given for P^{r}",
            w.len()
        )));
    }
    if g.mark().is_some() != descendant.is_some() {
        return Err(Error::Precondition(
            "a descendant insertion needs exactly one marked point".into(),
        ));
    }
    if twist == Twist::Kernel && (g.mark().is_none() || !cfg.bundle().is_convex()) {
        return Err(Error::Precondition(
            "the kernel twist needs a marked point and a convex bundle".into(),
        ));
    }
    let lam = w.rationals();
    let mut f = Fraction::new();

    for &(u, v, de) in g.edges() {
        let (i, j) = (g.label(u), g.label(v));
        let dr = int(de as i64);
        for (k, lk) in lam.iter().enumerate() {
            if k == i || k == j {
                continue;
            }
            for a in 0..=de as i64 {
                f.div(&((&lam[i] * int(a) + &lam[j] * int(de as i64 - a)) / &dr - lk))?;
            }
        }
        let step = (&lam[i] - &lam[j]) / &dr;
        for a in 1..=de as i64 {
            f.div(&(&step * int(a)))?;
            f.div(&(&step * int(-a)))?;
        }
    }

    let (psi_power, class_power) = descendant
        .map(|x| (x.psi_power, x.class_power))
        .unwrap_or((0, 0));
    for v in 0..g.vertex_count() {
        let i = g.label(v);
        let marked = g.mark() == Some(v);
        let omegas: Vec<BigRational> = g
            .flags(v)
            .map(|(other, de)| (&lam[i] - &lam[g.label(other)]) / int(de as i64))
            .collect();
        let val = omegas.len();
        if val >= 2 {
            let tangent = lam
                .iter()
                .enumerate()
                .filter(|&(k, _)| k != i)
                .fold(int(1), |acc, (_, lk)| acc * (&lam[i] - lk));
            f.mul(&pow(&tangent, val as u32 - 1));
        }
        match (val, marked) {
            (1, false) => f.mul(&omegas[0]),
            (2, false) => f.div(&(&omegas[0] + &omegas[1]))?,
            (1, true) => f.mul(&pow(&-omegas[0].clone(), psi_power)),
            _ => {
                let special = val as u64 + u64::from(marked);
                let b = if marked { psi_power as u64 } else { 0 };
                if b > special - 3 {
                    return Ok(BigRational::zero());
                }
                let free = special - 3 - b;
                f.mul(&(factorial(special - 3) / (factorial(b) * factorial(free))));
                let mut inv_sum = BigRational::zero();
                for om in &omegas {
                    f.div(om)?;
                    inv_sum += om.recip();
                }
                f.mul(&pow(&inv_sum, free as u32));
            }
        }
        if marked {
            f.mul(&pow(&lam[i], class_power));
        }
    }

    if twist != Twist::None {
        let weights = bundle_weights(g, &lam, cfg, twist == Twist::Kernel);
        match class {
            CharClassSpec::Euler => {
                let e = weights.iter().fold(int(1), |acc, x| acc * x);
                f.mul(&e);
            }
            CharClassSpec::ChernPolynomial(s) => {
                let marks = u32::from(g.mark().is_some());
                let target = cfg.moduli_dim(g.degree(), marks) - (psi_power + class_power) as i64;
                if target < 0 {
                    return Ok(BigRational::zero());
                }
                let ek = elementary_symmetric(&weights, target as usize);
                f.mul(&(ek * pow(s, target as u32)));
            }
        }
    }

    let edge_product: u64 = g.edges().iter().map(|e| e.2 as u64).product();
    f.div(&int((g.automorphism_order() * edge_product) as i64))?;
    Ok(f.value())
}
