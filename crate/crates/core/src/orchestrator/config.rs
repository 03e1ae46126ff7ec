use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::geometry::{BundleSpec, CharClassSpec, GeometryConfig};
use crate::localization::DEFAULT_SEED;
use crate::mirror::MirrorConfig;
use crate::series::{format_rational, parse_rational, BigRational};

/// Environment variable consulted for the graph cache directory when
/// neither a flag nor the config file sets one.
pub const CACHE_DIR_ENV: &str = "ZEROLOCUS_CACHE_DIR";

pub const DEFAULT_MAX_DEGREE: u32 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Localization,
    Mirror,
    Both,
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "localization" => Ok(Method::Localization),
            "mirror" => Ok(Method::Mirror),
            "both" => Ok(Method::Both),
            other => Err(Error::InvalidConfig(format!(
                "unknown method {other:?} (expected localization, mirror or both)"
            ))),
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Localization => "localization",
            Method::Mirror => "mirror",
            Method::Both => "both",
        })
    }
}

/// `euler`, or `chern:<s>` / `chern(<s>)` for the Chern polynomial at `s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassChoice(pub CharClassSpec);

impl FromStr for ClassChoice {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().to_ascii_lowercase();
        if t == "euler" {
            return Ok(ClassChoice(CharClassSpec::Euler));
        }
        let arg = t
            .strip_prefix("chern:")
            .or_else(|| t.strip_prefix("chern(").and_then(|x| x.strip_suffix(')')));
        match arg.and_then(parse_rational) {
            Some(v) => Ok(ClassChoice(CharClassSpec::ChernPolynomial(v))),
            None => Err(Error::InvalidConfig(format!(
                "unknown class {s:?} (expected euler or chern:<p/q>)"
            ))),
        }
    }
}

impl fmt::Display for ClassChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            CharClassSpec::Euler => f.write_str("euler"),
            CharClassSpec::ChernPolynomial(s) => write!(f, "chern:{}", format_rational(s)),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    Human,
    Json,
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "human" | "table" => Ok(OutputFormat::Human),
            "json" => Ok(OutputFormat::Json),
            other => Err(Error::InvalidConfig(format!(
                "unknown format {other:?} (expected human or json)"
            ))),
        }
    }
}

/// Flat key/value config file. Every key is optional.
///
/// ```toml
/// r = 4
/// convex = [5]
/// max_degree = 3
/// method = "both"
/// class = "euler"
/// format = "json"
/// cache_dir = "/tmp/zerolocus"
/// seed = 24301
/// ```
#[derive(Clone, Debug, Default, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub r: Option<usize>,
    pub convex: Option<Vec<u32>>,
    pub concave: Option<Vec<u32>>,
    pub max_degree: Option<u32>,
    pub method: Option<String>,
    pub class: Option<String>,
    pub format: Option<String>,
    pub cache_dir: Option<PathBuf>,
    pub seed: Option<u64>,
}

impl ConfigFile {
    pub fn parse(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::InvalidConfig(format!("config file: {e}")))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path)
            .map_err(|e| Error::InvalidConfig(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    /// Values present in `over` replace those in `self`.
    pub fn overridden_by(self, over: ConfigFile) -> Self {
        Self {
            r: over.r.or(self.r),
            convex: over.convex.or(self.convex),
            concave: over.concave.or(self.concave),
            max_degree: over.max_degree.or(self.max_degree),
            method: over.method.or(self.method),
            class: over.class.or(self.class),
            format: over.format.or(self.format),
            cache_dir: over.cache_dir.or(self.cache_dir),
            seed: over.seed.or(self.seed),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub geometry: GeometryConfig,
    pub max_degree: u32,
    pub method: Method,
    pub class: ClassChoice,
    pub format: OutputFormat,
    pub cache_dir: Option<PathBuf>,
    pub seed: u64,
}

impl RunConfig {
    /// Merges file values, flag values (which win) and the cache-directory
    /// environment fallback, then validates.
    pub fn resolve(
        file: ConfigFile,
        flags: ConfigFile,
        env_cache: Option<PathBuf>,
    ) -> Result<Self> {
        let merged = file.overridden_by(flags);
        let r = merged
            .r
            .ok_or_else(|| Error::InvalidConfig("the ambient dimension r is required".into()))?;
        let bundle = BundleSpec::new(
            merged.convex.unwrap_or_default(),
            merged.concave.unwrap_or_default(),
        )?;
        let cfg = Self {
            geometry: GeometryConfig::new(r, bundle)?,
            max_degree: merged.max_degree.unwrap_or(DEFAULT_MAX_DEGREE),
            method: merged
                .method
                .as_deref()
                .map_or(Ok(Method::Localization), str::parse)?,
            class: merged
                .class
                .as_deref()
                .map_or(Ok(ClassChoice(CharClassSpec::Euler)), str::parse)?,
            format: merged
                .format
                .as_deref()
                .map_or(Ok(OutputFormat::Human), str::parse)?,
            cache_dir: merged.cache_dir.or(env_cache),
            seed: merged.seed.unwrap_or(DEFAULT_SEED),
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn new(geometry: GeometryConfig, max_degree: u32, method: Method) -> Result<Self> {
        let cfg = Self {
            geometry,
            max_degree,
            method,
            class: ClassChoice(CharClassSpec::Euler),
            format: OutputFormat::Json,
            cache_dir: None,
            seed: DEFAULT_SEED,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn with_class(mut self, class: CharClassSpec) -> Result<Self> {
        self.class = ClassChoice(class);
        self.validate()?;
        Ok(self)
    }

    pub fn chern_parameter(&self) -> Option<&BigRational> {
        match &self.class.0 {
            CharClassSpec::ChernPolynomial(s) => Some(s),
            CharClassSpec::Euler => None,
        }
    }

    pub fn uses_localization(&self) -> bool {
        self.method != Method::Mirror
    }

    pub fn uses_mirror(&self) -> bool {
        self.method != Method::Localization
    }

    pub fn mirror_config(&self) -> Result<MirrorConfig> {
        MirrorConfig::new(self.geometry.clone(), self.max_degree as usize)
    }

    pub fn validate(&self) -> Result<()> {
        let g = &self.geometry;
        let euler = self.class.0 == CharClassSpec::Euler;
        if self.uses_mirror() {
            if !euler {
                return Err(Error::InvalidConfig(
                    "the mirror pipeline computes Euler-class invariants only".into(),
                ));
            }
            if g.bundle().is_empty() || !g.bundle().is_convex() {
                return Err(Error::InvalidConfig(
                    "the mirror pipeline needs a non-empty convex bundle".into(),
                ));
            }
            if g.bundle().convex_degrees().len() + 1 > g.r() {
                return Err(Error::InvalidConfig(
                    "the zero locus must have positive dimension".into(),
                ));
            }
            self.mirror_config()?;
        }
        if euler {
            if let Some(d) = (1..=self.max_degree).find(|&d| !g.euler_admissible(d)) {
                return Err(Error::InvalidConfig(format!(
                    "rank of V_d is {} but the moduli space has dimension {} at d = {d}; \
                     the Euler integral is not defined there",
                    g.bundle().rank_over(d),
                    g.moduli_dim(d, 0)
                )));
            }
        }
        Ok(())
    }
}
