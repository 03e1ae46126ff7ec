//! Quintic invariants through degree 10 from the hypergeometric series, and
//! the instanton numbers they determine.

use std::time::Instant;

use zerolocus::geometry::GeometryConfig;
use zerolocus::instanton::{invert_multicover, InvariantTable, Provenance};
use zerolocus::mirror::{extract_gw, i_function, mirror_map, MirrorConfig};
use zerolocus::series::format_rational;

fn main() -> zerolocus::Result<()> {
    let start = Instant::now();
    let cfg = MirrorConfig::new(GeometryConfig::quintic(), 10)?;
    let (map, j) = mirror_map(&i_function(&cfg)?)?;
    let n = extract_gw(&j, &cfg)?;
    let elapsed = start.elapsed();

    println!(
        "I_0 = 1 + {} q + {} q^2 + ...",
        map.i0.coeffs()[1],
        map.i0.coeffs()[2]
    );
    println!(
        "mirror map g(q) = {} q + {} q^2 + ...",
        map.g.coeffs()[1],
        map.g.coeffs()[2]
    );
    let table = InvariantTable::from_values(n, "quintic", Provenance::Mirror);
    let inst = invert_multicover(&table)?;
    for (d, nd) in table.entries() {
        println!(
            "d={d:<2}  n_d = {:<28}  N_d = {}",
            format_rational(&inst.entries()[d]),
            format_rational(nd)
        );
    }
    println!("all instanton numbers integral: {}", inst.all_integral());
    println!("computed in {elapsed:.2?}");
    Ok(())
}
