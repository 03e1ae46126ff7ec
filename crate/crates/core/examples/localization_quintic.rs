//! Degree-d invariants of the quintic threefold by torus localization.
//!
//! Pass a maximum degree as the first argument (default 3).

use std::time::Instant;

use zerolocus::geometry::{CharClassSpec, GeometryConfig};
use zerolocus::localization::{enumerate_graphs, LocalizationEngine};
use zerolocus::series::format_rational;

fn main() -> zerolocus::Result<()> {
    let max: u32 = std::env::args()
        .nth(1)
        .and_then(|a| a.parse().ok())
        .unwrap_or(3);
    let quintic = GeometryConfig::quintic();
    let engine = LocalizationEngine::new();
    for d in 1..=max {
        let start = Instant::now();
        let graphs = enumerate_graphs(4, d, 0)?.len();
        let n = engine.euler_integral(&quintic, d, &CharClassSpec::Euler)?;
        println!(
            "d={d}  graphs={graphs:<5}  N_d = {}  ({:.2?})",
            format_rational(&n),
            start.elapsed()
        );
    }
    Ok(())
}
