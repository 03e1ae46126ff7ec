use std::fmt::Write as _;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;

use super::config::RunConfig;
use crate::error::Result;
use crate::geometry::CharClassSpec;
use crate::instanton::{invert_multicover, InvariantTable, Provenance};
use crate::localization::{GraphCache, LocalizationEngine};
use crate::mirror::{extract_gw, i_function, mirror_map};
use crate::series::{approx_f64, format_rational, BigRational};

/// One output row.
///
/// `K` is the localization integral of the chosen class over
/// `M_{0,0}(P^r, d)`; `N` is the invariant of the zero locus when the bundle
/// is convex and the class is Euler. Instanton numbers are taken from `N`,
/// or from `K` for Euler-class local invariants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeRecord {
    pub degree: u32,
    pub n_invariant: Option<BigRational>,
    pub k_integral: Option<BigRational>,
    pub instanton: Option<BigRational>,
    pub integral: Option<bool>,
    pub provenance: Provenance,
}

#[derive(Serialize)]
struct JsonRecord {
    degree: u32,
    #[serde(rename = "N")]
    n_invariant: Option<String>,
    #[serde(rename = "K")]
    k_integral: Option<String>,
    n: Option<String>,
    integral: Option<bool>,
    provenance: Provenance,
}

impl DegreeRecord {
    fn to_json(&self) -> String {
        let rec = JsonRecord {
            degree: self.degree,
            n_invariant: self.n_invariant.as_ref().map(format_rational),
            k_integral: self.k_integral.as_ref().map(format_rational),
            n: self.instanton.as_ref().map(format_rational),
            integral: self.integral,
            provenance: self.provenance,
        };
        serde_json::to_string(&rec).expect("records serialize")
    }
}

/// Localization and mirror values that differ at one degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Disagreement {
    pub degree: u32,
    pub localization: BigRational,
    pub mirror: BigRational,
}

#[derive(Clone, Debug)]
pub struct ComputeReport {
    pub geometry: String,
    pub records: Vec<DegreeRecord>,
    pub disagreements: Vec<Disagreement>,
    pub timings: Vec<(String, Duration)>,
    pub notes: Vec<String>,
}

impl ComputeReport {
    pub fn agrees(&self) -> bool {
        self.disagreements.is_empty()
    }

    /// One JSON object per line, ordered by degree. Deterministic.
    pub fn to_json_lines(&self) -> String {
        self.records.iter().map(|r| r.to_json() + "\n").collect()
    }

    pub fn to_human(&self) -> String {
        let cell = |x: &Option<BigRational>| x.as_ref().map_or("-".to_string(), format_rational);
        let rows: Vec<[String; 7]> = self
            .records
            .iter()
            .map(|r| {
                [
                    r.degree.to_string(),
                    cell(&r.n_invariant),
                    cell(&r.k_integral),
                    cell(&r.instanton),
                    r.integral
                        .map_or("-".into(), |b| if b { "yes" } else { "no" }.into()),
                    r.provenance.to_string(),
                    r.n_invariant
                        .as_ref()
                        .or(r.k_integral.as_ref())
                        .map_or("-".into(), |x| format!("{:.6e}", approx_f64(x))),
                ]
            })
            .collect();
        let header = [
            "d",
            "N",
            "K",
            "n",
            "integral",
            "provenance",
            "~value (display only)",
        ];
        let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
        for row in &rows {
            for (w, c) in widths.iter_mut().zip(row) {
                *w = (*w).max(c.len());
            }
        }
        let mut out = format!("{}\n", self.geometry);
        let line = |cells: Vec<&str>| {
            cells
                .iter()
                .zip(&widths)
                .map(|(c, w)| format!("{c:<w$}"))
                .collect::<Vec<_>>()
                .join("  ")
                .trim_end()
                .to_string()
        };
        out += &line(header.to_vec());
        out.push('\n');
        for row in &rows {
            out += &line(row.iter().map(String::as_str).collect());
            out.push('\n');
        }
        if !self.records.is_empty()
            && self
                .records
                .iter()
                .all(|r| r.provenance == Provenance::Both)
        {
            let _ = writeln!(out, "pipelines agree: {}", self.agrees());
        }
        out
    }

    /// Side-by-side listing of disagreeing degrees.
    pub fn diff_text(&self) -> String {
        let mut out = String::from("degree  localization  mirror\n");
        for d in &self.disagreements {
            let _ = writeln!(
                out,
                "{}  {}  {}",
                d.degree,
                format_rational(&d.localization),
                format_rational(&d.mirror)
            );
        }
        out
    }

    pub fn timing_text(&self) -> String {
        self.timings
            .iter()
            .map(|(stage, t)| format!("{stage}: {:.3}s\n", t.as_secs_f64()))
            .collect()
    }
}

pub fn engine_for(cfg: &RunConfig) -> LocalizationEngine {
    let engine = LocalizationEngine::new().with_seed(cfg.seed);
    match &cfg.cache_dir {
        Some(dir) => engine.with_cache(GraphCache::new(dir)),
        None => engine,
    }
}

/// Runs the configured pipelines for degrees `1..=max_degree`.
///
/// A disagreement under `method = both` is reported in the result, not as
/// an error; callers decide the exit status.
pub fn run_compute(cfg: &RunConfig) -> Result<ComputeReport> {
    cfg.validate()?;
    let degrees: Vec<u32> = (1..=cfg.max_degree).collect();
    let mut timings = Vec::new();
    let mut notes = Vec::new();

    let localized = if cfg.uses_localization() {
        let start = Instant::now();
        let engine = engine_for(cfg);
        let values = degrees
            .par_iter()
            .map(|&d| engine.euler_integral(&cfg.geometry, d, &cfg.class.0))
            .collect::<Result<Vec<_>>>()?;
        timings.push(("localization".to_string(), start.elapsed()));
        notes.extend(engine.take_notes());
        Some(values)
    } else {
        None
    };

    let mirrored = if cfg.uses_mirror() && cfg.max_degree > 0 {
        let start = Instant::now();
        let mcfg = cfg.mirror_config()?;
        let (_, j) = mirror_map(&i_function(&mcfg)?)?;
        let values = extract_gw(&j, &mcfg)?;
        timings.push(("mirror".to_string(), start.elapsed()));
        Some(values)
    } else {
        None
    };

    let convex_euler = cfg.class.0 == CharClassSpec::Euler && cfg.geometry.bundle().is_convex();
    let mut disagreements = Vec::new();
    if let (Some(l), Some(m)) = (&localized, &mirrored) {
        for ((&degree, a), b) in degrees.iter().zip(l).zip(m) {
            if a != b {
                disagreements.push(Disagreement {
                    degree,
                    localization: a.clone(),
                    mirror: b.clone(),
                });
            }
        }
    }
    let provenance = match cfg.method {
        super::Method::Localization => Provenance::Localization,
        super::Method::Mirror => Provenance::Mirror,
        super::Method::Both => Provenance::Both,
    };
    let n_values: Option<Vec<BigRational>> = match (&mirrored, &localized) {
        (Some(m), _) => Some(m.clone()),
        (None, Some(l)) if convex_euler => Some(l.clone()),
        _ => None,
    };
    let source = n_values.clone().or_else(|| {
        (cfg.class.0 == CharClassSpec::Euler)
            .then(|| localized.clone())
            .flatten()
    });
    let instantons = source
        .map(|v| {
            invert_multicover(&InvariantTable::from_values(
                v,
                cfg.geometry.to_string(),
                provenance,
            ))
        })
        .transpose()?;

    let records = degrees
        .iter()
        .enumerate()
        .map(|(i, &degree)| DegreeRecord {
            degree,
            n_invariant: n_values.as_ref().map(|v| v[i].clone()),
            k_integral: localized.as_ref().map(|v| v[i].clone()),
            instanton: instantons.as_ref().and_then(|t| t.get(degree).cloned()),
            integral: instantons
                .as_ref()
                .and_then(|t| t.integrality().get(&degree).copied()),
            provenance,
        })
        .collect();
    Ok(ComputeReport {
        geometry: cfg.geometry.to_string(),
        records,
        disagreements,
        timings,
        notes,
    })
}
