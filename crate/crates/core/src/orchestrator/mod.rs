//! Run configuration, the `compute` and `selftest` drivers, and their
//! report formats.

mod compute;
mod config;
mod selftest;

pub use compute::{engine_for, run_compute, ComputeReport, DegreeRecord, Disagreement};
pub use config::{
    ClassChoice, ConfigFile, Method, OutputFormat, RunConfig, CACHE_DIR_ENV, DEFAULT_MAX_DEGREE,
};
pub use selftest::{run_selftest, Check, SelftestOptions, SelftestReport};
