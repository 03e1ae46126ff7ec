//! Atiyah-Bott localization on moduli of genus-0 stable maps to `P^r`.
//!
//! Integrals are sums over fixed-point graphs of exact rationals evaluated at
//! integer torus weights. A weight vector that produces a zero denominator is
//! discarded and the next one in a deterministic sequence is tried.

mod cache;
mod contribution;
mod graph;
mod weights;

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use num_traits::Zero;
use rayon::prelude::*;

pub use cache::{CacheEntry, CacheKey, CacheLookup, GraphCache, CACHE_FORMAT, CACHE_VERSION};
pub use contribution::{graph_contribution, Descendant, Twist};
pub use graph::{enumerate_graphs, FixedGraph};
pub use weights::WeightVector;

use crate::error::{Error, Result};
use crate::geometry::{CharClassSpec, GeometryConfig};
use crate::series::BigRational;

pub const DEFAULT_SEED: u64 = 0x5eed;
pub const DEFAULT_MAX_ATTEMPTS: u32 = 16;

type GraphMemo = HashMap<(usize, u32, u32), Arc<Vec<FixedGraph>>>;

/// Evaluates localization integrals, memoizing graph sets and optionally
/// persisting them through a [`GraphCache`].
#[derive(Debug)]
pub struct LocalizationEngine {
    seed: u64,
    parallel: bool,
    max_attempts: u32,
    cache: Option<GraphCache>,
    memo: Mutex<GraphMemo>,
    notes: Mutex<Vec<String>>,
}

impl Default for LocalizationEngine {
    fn default() -> Self {
        Self {
            seed: DEFAULT_SEED,
            parallel: true,
            max_attempts: DEFAULT_MAX_ATTEMPTS,
            cache: None,
            memo: Mutex::new(HashMap::new()),
            notes: Mutex::new(Vec::new()),
        }
    }
}

impl LocalizationEngine {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_parallel(mut self, parallel: bool) -> Self {
        self.parallel = parallel;
        self
    }

    pub fn with_max_attempts(mut self, attempts: u32) -> Self {
        self.max_attempts = attempts.max(1);
        self
    }

    pub fn with_cache(mut self, cache: GraphCache) -> Self {
        self.cache = Some(cache);
        self
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Messages about cache regeneration collected so far.
    pub fn take_notes(&self) -> Vec<String> {
        std::mem::take(&mut *self.notes.lock().unwrap())
    }

    pub fn graphs(&self, r: usize, d: u32, marks: u32) -> Result<Arc<Vec<FixedGraph>>> {
        if let Some(g) = self.memo.lock().unwrap().get(&(r, d, marks)) {
            return Ok(Arc::clone(g));
        }
        let graphs = match &self.cache {
            Some(cache) => {
                let (graphs, note) = cache.get_or_enumerate(&CacheKey {
                    r,
                    degree: d,
                    marks,
                })?;
                if let Some(n) = note {
                    self.notes.lock().unwrap().push(n);
                }
                graphs
            }
            None => enumerate_graphs(r, d, marks)?,
        };
        let graphs = Arc::new(graphs);
        self.memo
            .lock()
            .unwrap()
            .insert((r, d, marks), Arc::clone(&graphs));
        Ok(graphs)
    }

    /// Sum of all graph contributions at one weight vector.
    pub fn sum_at(
        &self,
        graphs: &[FixedGraph],
        w: &WeightVector,
        cfg: &GeometryConfig,
        class: &CharClassSpec,
        descendant: Option<Descendant>,
        twist: Twist,
    ) -> Result<BigRational> {
        let term = |g: &FixedGraph| graph_contribution(g, w, cfg, class, descendant, twist);
        if self.parallel {
            graphs
                .par_iter()
                .map(term)
                .try_reduce(BigRational::zero, |a, b| Ok(a + b))
        } else {
            graphs
                .iter()
                .try_fold(BigRational::zero(), |acc, g| Ok(acc + term(g)?))
        }
    }

    /// Localization sum with automatic retry on degenerate weights. No
    /// dimension check is made here.
    pub fn integrate(
        &self,
        cfg: &GeometryConfig,
        d: u32,
        class: &CharClassSpec,
        descendant: Option<Descendant>,
        twist: Twist,
    ) -> Result<BigRational> {
        let marks = u32::from(descendant.is_some());
        let graphs = self.graphs(cfg.r(), d, marks)?;
        for attempt in 0..self.max_attempts {
            let w = WeightVector::seeded(cfg, d, self.seed, attempt);
            match self.sum_at(&graphs, &w, cfg, class, descendant, twist) {
                Err(Error::DegenerateWeights { .. }) => continue,
                other => return other,
            }
        }
        Err(Error::DegenerateWeights {
            attempts: self.max_attempts as usize,
        })
    }

    /// `K_d = int_{M_{0,0}(P^r,d)} b(V_{d,0})`.
    ///
    /// With the Euler class the bundle rank must equal the dimension of the
    /// moduli space.
    pub fn euler_integral(
        &self,
        cfg: &GeometryConfig,
        d: u32,
        class: &CharClassSpec,
    ) -> Result<BigRational> {
        if d == 0 {
            return Err(Error::InvalidConfig("degree must be positive".into()));
        }
        if *class == CharClassSpec::Euler && !cfg.euler_admissible(d) {
            return Err(Error::RankMismatch {
                rank: cfg.bundle().rank_over(d),
                dim: cfg.moduli_dim(d, 0),
            });
        }
        self.integrate(cfg, d, class, None, Twist::Full)
    }

    /// `<tau_n H^a>_{0,d}`, plain or multiplied by `Euler(V')` (kernel twist)
    /// or `Euler(V_{d,1})` (full twist).
    ///
    /// Returns zero without evaluating when the integrand's degree differs
    /// from `dim M_{0,1}(P^r, d)` or when `a > r`.
    pub fn one_point_correlator(
        &self,
        cfg: &GeometryConfig,
        d: u32,
        n: u32,
        a: u32,
        twist: Twist,
    ) -> Result<BigRational> {
        if d == 0 {
            return Err(Error::InvalidConfig("degree must be positive".into()));
        }
        let bundle_rank = match twist {
            Twist::None => 0,
            Twist::Kernel => {
                if !cfg.bundle().is_convex() {
                    return Err(Error::Unsupported(
                        "kernel-twisted correlators need a convex bundle".into(),
                    ));
                }
                cfg.bundle().rank_over(d) - cfg.bundle().convex_degrees().len() as i64
            }
            Twist::Full => cfg.bundle().rank_over(d),
        };
        if a as usize > cfg.r() || n as i64 + a as i64 + bundle_rank != cfg.moduli_dim(d, 1) {
            return Ok(BigRational::zero());
        }
        self.integrate(
            cfg,
            d,
            &CharClassSpec::Euler,
            Some(Descendant::new(n, a)),
            twist,
        )
    }
}
