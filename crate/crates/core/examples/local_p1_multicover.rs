//! O(-1) + O(-1) over P^1: every degree-d integral is 1/d^3, so the
//! instanton expansion has a single term.

use zerolocus::geometry::{CharClassSpec, GeometryConfig};
use zerolocus::instanton::{invert_multicover, InvariantTable, Provenance};
use zerolocus::localization::LocalizationEngine;
use zerolocus::series::format_rational;

fn main() -> zerolocus::Result<()> {
    let geometry = GeometryConfig::local_p1();
    let engine = LocalizationEngine::new();
    let values = (1..=5)
        .map(|d| engine.euler_integral(&geometry, d, &CharClassSpec::Euler))
        .collect::<zerolocus::Result<Vec<_>>>()?;
    let table = InvariantTable::from_values(values, geometry.to_string(), Provenance::Localization);
    let instantons = invert_multicover(&table)?;
    for (d, k) in table.entries() {
        println!(
            "d={d}  K_d = {:<6}  n_d = {}",
            format_rational(k),
            format_rational(&instantons.entries()[d])
        );
    }
    Ok(())
}
