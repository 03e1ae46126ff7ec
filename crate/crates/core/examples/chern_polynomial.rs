//! Integrals of the Chern polynomial c_s(V_d) = sum_i s^i c_i(V_d) over the
//! moduli of stable maps. Only the top-degree part contributes, so the
//! answer is s^dim times the corresponding Chern number.

use zerolocus::geometry::{CharClassSpec, GeometryConfig};
use zerolocus::localization::LocalizationEngine;
use zerolocus::series::{format_rational, rat};

fn main() -> zerolocus::Result<()> {
    let engine = LocalizationEngine::new();
    let cases = [
        ("quintic", GeometryConfig::quintic()),
        ("quartic in P^3", GeometryConfig::convex(3, &[4])?),
        ("P^2 with O(1)", GeometryConfig::convex(2, &[1])?),
    ];
    for (name, g) in cases {
        for s in [rat(1, 1), rat(1, 2)] {
            let class = CharClassSpec::ChernPolynomial(s.clone());
            let values: Vec<String> = (1..=2)
                .map(|d| {
                    engine
                        .euler_integral(&g, d, &class)
                        .map(|v| format_rational(&v))
                })
                .collect::<zerolocus::Result<_>>()?;
            println!(
                "{name:<16} s={:<4} d=1,2: {}",
                format_rational(&s),
                values.join(", ")
            );
        }
    }
    Ok(())
}
