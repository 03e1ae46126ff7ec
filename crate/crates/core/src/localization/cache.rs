//! On-disk cache of enumerated graph sets, one JSON file per `(r, d, marks)`.
//!
//! Files carry a format tag, a version and their key. A file written by
//! another version or for another key is stale and gets regenerated; a file
//! that does not parse or fails structural validation is corrupt.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::graph::{enumerate_graphs, FixedGraph};
use crate::error::{Error, Result};

pub const CACHE_FORMAT: &str = "zerolocus-graph-cache";
pub const CACHE_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheKey {
    pub r: usize,
    pub degree: u32,
    pub marks: u32,
}

impl CacheKey {
    pub fn file_name(&self) -> String {
        format!("graphs_r{}_d{}_m{}.json", self.r, self.degree, self.marks)
    }
}

#[derive(Serialize, Deserialize)]
struct CacheFile {
    format: String,
    version: u32,
    #[serde(flatten)]
    key: CacheKey,
    graphs: Vec<FixedGraph>,
}

#[derive(Debug, PartialEq, Eq)]
pub enum CacheLookup {
    Hit(Vec<FixedGraph>),
    Missing,
    Stale(String),
    Corrupt(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CacheEntry {
    pub path: PathBuf,
    pub key: Option<CacheKey>,
    pub graphs: Option<usize>,
    pub status: String,
}

#[derive(Clone, Debug)]
pub struct GraphCache {
    dir: PathBuf,
}

impl GraphCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Self { dir: dir.into() }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path_for(&self, key: &CacheKey) -> PathBuf {
        self.dir.join(key.file_name())
    }

    pub fn load(&self, key: &CacheKey) -> CacheLookup {
        let path = self.path_for(key);
        match fs::read_to_string(&path) {
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => CacheLookup::Missing,
            Err(e) => CacheLookup::Corrupt(e.to_string()),
            Ok(text) => parse(&text, Some(key)),
        }
    }

    pub fn store(&self, key: &CacheKey, graphs: &[FixedGraph]) -> Result<PathBuf> {
        fs::create_dir_all(&self.dir)?;
        let file = CacheFile {
            format: CACHE_FORMAT.into(),
            version: CACHE_VERSION,
            key: key.clone(),
            graphs: graphs.to_vec(),
        };
        let text = serde_json::to_string(&file).map_err(|e| Error::Cache(e.to_string()))?;
        let path = self.path_for(key);
        let tmp = path.with_extension("json.tmp");
        fs::write(&tmp, text + "\n")?;
        fs::rename(&tmp, &path)?;
        Ok(path)
    }

    /// Returns cached graphs or enumerates and stores them. The second value
    /// describes why regeneration happened, if it did.
    pub fn get_or_enumerate(&self, key: &CacheKey) -> Result<(Vec<FixedGraph>, Option<String>)> {
        let note = match self.load(key) {
            CacheLookup::Hit(graphs) => return Ok((graphs, None)),
            CacheLookup::Missing => None,
            CacheLookup::Stale(why) => Some(format!("stale cache regenerated: {why}")),
            CacheLookup::Corrupt(why) => Some(format!("corrupt cache regenerated: {why}")),
        };
        let graphs = enumerate_graphs(key.r, key.degree, key.marks)?;
        self.store(key, &graphs)?;
        Ok((graphs, note))
    }

    fn files(&self) -> Result<Vec<PathBuf>> {
        if !self.dir.exists() {
            return Ok(Vec::new());
        }
        let mut out: Vec<PathBuf> = fs::read_dir(&self.dir)?
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| {
                p.file_name()
                    .and_then(|n| n.to_str())
                    .is_some_and(|n| n.starts_with("graphs_") && n.ends_with(".json"))
            })
            .collect();
        out.sort();
        Ok(out)
    }

    /// Summary of every cache file, without re-enumerating.
    pub fn inspect(&self) -> Result<Vec<CacheEntry>> {
        self.files()?
            .into_iter()
            .map(|path| {
                let text = fs::read_to_string(&path)?;
                let header = serde_json::from_str::<CacheFile>(&text).ok();
                let status = match parse(&text, None) {
                    CacheLookup::Hit(_) => "ok".to_string(),
                    CacheLookup::Stale(w) => format!("stale: {w}"),
                    CacheLookup::Corrupt(w) => format!("corrupt: {w}"),
                    CacheLookup::Missing => "missing".to_string(),
                };
                Ok(CacheEntry {
                    key: header.as_ref().map(|h| h.key.clone()),
                    graphs: header.map(|h| h.graphs.len()),
                    path,
                    status,
                })
            })
            .collect()
    }

    /// Checks every file against a fresh enumeration. Returns one
    /// `(path, problem)` pair per file that is not an exact match.
    pub fn verify(&self) -> Result<Vec<(PathBuf, String)>> {
        let mut problems = Vec::new();
        for path in self.files()? {
            let text = fs::read_to_string(&path)?;
            let problem = match serde_json::from_str::<CacheFile>(&text) {
                Err(e) => Some(format!("unreadable: {e}")),
                Ok(file) => match parse(&text, Some(&file.key)) {
                    CacheLookup::Hit(graphs) => {
                        let k = &file.key;
                        let fresh = enumerate_graphs(k.r, k.degree, k.marks)?;
                        (fresh != graphs).then(|| {
                            format!(
                                "holds {} graphs, enumeration gives {} (or they differ)",
                                graphs.len(),
                                fresh.len()
                            )
                        })
                    }
                    CacheLookup::Stale(w) => Some(format!("stale: {w}")),
                    CacheLookup::Corrupt(w) => Some(format!("corrupt: {w}")),
                    CacheLookup::Missing => None,
                },
            };
            if let Some(p) = problem {
                problems.push((path, p));
            }
        }
        Ok(problems)
    }

    /// Deletes every cache file; returns how many were removed.
    pub fn clear(&self) -> Result<usize> {
        let files = self.files()?;
        for f in &files {
            fs::remove_file(f)?;
        }
        Ok(files.len())
    }
}

fn parse(text: &str, expect: Option<&CacheKey>) -> CacheLookup {
    #[derive(Deserialize)]
    struct Header {
        format: Option<String>,
        version: Option<u32>,
    }
    let header: Header = match serde_json::from_str(text) {
        Ok(h) => h,
        Err(e) => return CacheLookup::Corrupt(e.to_string()),
    };
    if header.format.as_deref() != Some(CACHE_FORMAT) {
        return CacheLookup::Stale(format!("format tag {:?}", header.format));
    }
    if header.version != Some(CACHE_VERSION) {
        return CacheLookup::Stale(format!(
            "version {:?}, expected {CACHE_VERSION}",
            header.version
        ));
    }
    let file: CacheFile = match serde_json::from_str(text) {
        Ok(f) => f,
        Err(e) => return CacheLookup::Corrupt(e.to_string()),
    };
    if let Some(key) = expect {
        if &file.key != key {
            return CacheLookup::Stale(format!("file holds {:?}, wanted {key:?}", file.key));
        }
    }
    for g in &file.graphs {
        if let Err(e) = g.validate(file.key.r, file.key.degree, file.key.marks) {
            return CacheLookup::Corrupt(e.to_string());
        }
    }
    CacheLookup::Hit(file.graphs)
}
