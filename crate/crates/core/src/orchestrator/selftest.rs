use std::fmt::Write as _;
use std::path::PathBuf;

use crate::error::Result;
use crate::geometry::{CharClassSpec, GeometryConfig};
use crate::localization::{GraphCache, LocalizationEngine, Twist, DEFAULT_SEED};
use crate::mirror::{
    assemble_j_from_correlators, extract_gw, i_function, mirror_map, MirrorConfig,
};
use crate::schubert::schubert_line_count;
use crate::series::{format_rational, int, BigRational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Default)]
pub struct SelftestReport {
    pub checks: Vec<Check>,
}

impl SelftestReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let tag = if c.passed { "PASS" } else { "FAIL" };
            let _ = writeln!(out, "{tag}  {}  {}", c.name, c.detail);
        }
        let failed = self.checks.iter().filter(|c| !c.passed).count();
        let _ = writeln!(out, "{} checks, {failed} failed", self.checks.len());
        out
    }

    fn push(&mut self, name: &str, outcome: Result<(bool, String)>) {
        let (passed, detail) = outcome.unwrap_or_else(|e| (false, format!("error: {e}")));
        self.checks.push(Check {
            name: name.to_string(),
            passed,
            detail,
        });
    }
}

#[derive(Clone, Debug)]
pub struct SelftestOptions {
    pub seed: u64,
    pub cache_dir: Option<PathBuf>,
}

impl Default for SelftestOptions {
    fn default() -> Self {
        Self {
            seed: DEFAULT_SEED,
            cache_dir: None,
        }
    }
}

fn show(values: &[BigRational]) -> String {
    values
        .iter()
        .map(format_rational)
        .collect::<Vec<_>>()
        .join(", ")
}

/// Runs the cross-oracle suite. Failures are recorded, never raised.
pub fn run_selftest(opts: &SelftestOptions) -> SelftestReport {
    let mut report = SelftestReport::default();
    let cache = opts.cache_dir.as_ref().map(GraphCache::new);

    // Before the engine touches the cache, so a tampered file is seen as is.
    if let Some(cache) = &cache {
        report.push(
            "graph cache matches enumeration",
            cache.verify().map(|problems| {
                if problems.is_empty() {
                    (
                        true,
                        format!("{} files ok", cache.inspect().map_or(0, |e| e.len())),
                    )
                } else {
                    let list: Vec<String> = problems
                        .iter()
                        .map(|(p, why)| format!("{}: {why}", p.display()))
                        .collect();
                    (false, list.join("; "))
                }
            }),
        );
    }

    let mut engine = LocalizationEngine::new().with_seed(opts.seed);
    if let Some(cache) = cache {
        engine = engine.with_cache(cache);
    }

    for (r, degrees) in [(4usize, vec![5u32]), (3, vec![3]), (5, vec![3, 3])] {
        let name = format!("lines on P^{r} {degrees:?}: schubert = localization");
        report.push(
            &name,
            (|| {
                let g = GeometryConfig::convex(r, &degrees)?;
                let s = schubert_line_count(r, &degrees)?;
                let l = engine.euler_integral(&g, 1, &CharClassSpec::Euler)?;
                Ok((
                    s == l,
                    format!("{} vs {}", format_rational(&s), format_rational(&l)),
                ))
            })(),
        );
    }

    report.push(
        "quintic d <= 2: localization = mirror",
        (|| {
            let g = GeometryConfig::quintic();
            let m = MirrorConfig::new(g.clone(), 2)?;
            let (_, j) = mirror_map(&i_function(&m)?)?;
            let mirror = extract_gw(&j, &m)?;
            let local = (1..=2)
                .map(|d| engine.euler_integral(&g, d, &CharClassSpec::Euler))
                .collect::<Result<Vec<_>>>()?;
            Ok((
                mirror == local,
                format!("[{}] vs [{}]", show(&local), show(&mirror)),
            ))
        })(),
    );

    report.push(
        "weight independence (3 seeds)",
        (|| {
            let mut seen = Vec::new();
            for k in 0..3u64 {
                let e = LocalizationEngine::new().with_seed(opts.seed.wrapping_add(k * 7919));
                seen.push((
                    e.euler_integral(&GeometryConfig::quintic(), 2, &CharClassSpec::Euler)?,
                    e.euler_integral(&GeometryConfig::local_p1(), 3, &CharClassSpec::Euler)?,
                ));
            }
            let same = seen.windows(2).all(|w| w[0] == w[1]);
            Ok((
                same,
                format!(
                    "{} / {}",
                    format_rational(&seen[0].0),
                    format_rational(&seen[0].1)
                ),
            ))
        })(),
    );

    for r in [1usize, 4] {
        report.push(
            &format!("J-function of P^{r} through q^2 matches hypergeometric series"),
            (|| {
                let g = GeometryConfig::projective_space(r)?;
                let i = i_function(&MirrorConfig::new(g.clone(), 2)?)?;
                let j = assemble_j_from_correlators(&engine, &g, 2, Twist::None)?;
                Ok((
                    i.series() == j.series(),
                    format!("{} coefficients", j.order() + 1),
                ))
            })(),
        );
    }

    report.push(
        "P^1 descendants <tau_0 H> = 1, <tau_1 1> = -2",
        (|| {
            let g = GeometryConfig::projective_space(1)?;
            let a = engine.one_point_correlator(&g, 1, 0, 1, Twist::None)?;
            let b = engine.one_point_correlator(&g, 1, 1, 0, Twist::None)?;
            Ok((
                a == int(1) && b == int(-2),
                format!("{}, {}", format_rational(&a), format_rational(&b)),
            ))
        })(),
    );

    report.push(
        "quintic Euler(V) J_V through q^2: correlators = mirror",
        (|| {
            let g = GeometryConfig::quintic();
            let (_, j) = mirror_map(&i_function(&MirrorConfig::new(g.clone(), 2)?)?)?;
            let twisted = assemble_j_from_correlators(&engine, &g, 2, Twist::Kernel)?;
            let e = g.bundle().euler_class(g.r());
            Ok((
                twisted.times_class(&e).series() == j.times_class(&e).series(),
                "all (H, hbar) slots".to_string(),
            ))
        })(),
    );

    for note in engine.take_notes() {
        report.checks.push(Check {
            name: "graph cache".into(),
            passed: true,
            detail: note,
        });
    }
    report
}
