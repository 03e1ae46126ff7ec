use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::geometry::GeometryConfig;
use crate::series::{int, BigRational};

/// Half-width of the range weights are drawn from.
const WEIGHT_RANGE: i64 = 4096;

/// Integer torus weights `lambda_0, ..., lambda_r`, pairwise distinct.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightVector {
    values: Vec<i64>,
}

impl WeightVector {
    pub fn new(values: Vec<i64>) -> Result<Self> {
        let mut sorted = values.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != values.len() || values.len() < 2 {
            return Err(Error::InvalidConfig(
                "torus weights must be at least two pairwise distinct integers".into(),
            ));
        }
        Ok(Self { values })
    }

    /// Deterministic weights for a computation: the same configuration,
    /// seed and attempt number always give the same vector.
    pub fn seeded(cfg: &GeometryConfig, d: u32, seed: u64, attempt: u32) -> Self {
        let mut h = Mixer::new(seed);
        h.push(cfg.r() as u64);
        for &l in cfg.bundle().convex_degrees() {
            h.push(1 << 32 | l as u64);
        }
        for &m in cfg.bundle().concave_degrees() {
            h.push(2 << 32 | m as u64);
        }
        h.push(d as u64);
        h.push(attempt as u64);
        let mut rng = ChaCha8Rng::seed_from_u64(h.finish());
        let picks = sample(&mut rng, (2 * WEIGHT_RANGE + 1) as usize, cfg.r() + 1);
        Self {
            values: picks.into_iter().map(|i| i as i64 - WEIGHT_RANGE).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    pub fn rationals(&self) -> Vec<BigRational> {
        self.values.iter().map(|&v| int(v)).collect()
    }
}

/// splitmix64-style accumulator; stable across platforms and toolchains.
struct Mixer(u64);

impl Mixer {
    fn new(seed: u64) -> Self {
        Self(seed ^ 0x9e37_79b9_7f4a_7c15)
    }

    fn push(&mut self, x: u64) {
        let mut z = self.0.wrapping_add(x).wrapping_add(0x9e37_79b9_7f4a_7c15);
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        self.0 = z ^ (z >> 31);
    }

    fn finish(&self) -> u64 {
        self.0
    }
}
