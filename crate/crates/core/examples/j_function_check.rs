//! Rebuilds J-functions from one-point descendant correlators and compares
//! them slot by slot with the hypergeometric side.

use zerolocus::geometry::GeometryConfig;
use zerolocus::localization::{LocalizationEngine, Twist};
use zerolocus::mirror::{assemble_j_from_correlators, i_function, mirror_map, MirrorConfig};

fn main() -> zerolocus::Result<()> {
    let engine = LocalizationEngine::new();

    for r in [1, 2, 4] {
        let g = GeometryConfig::projective_space(r)?;
        let hyper = i_function(&MirrorConfig::new(g.clone(), 2)?)?;
        let assembled = assemble_j_from_correlators(&engine, &g, 2, Twist::None)?;
        println!(
            "P^{r}: q^1 coefficient {}",
            assembled.coefficient(1).unwrap()
        );
        println!(
            "P^{r}: equal through q^2: {}",
            hyper.series() == assembled.series()
        );
    }

    let quintic = GeometryConfig::quintic();
    let (_, j) = mirror_map(&i_function(&MirrorConfig::new(quintic.clone(), 2)?)?)?;
    let twisted = assemble_j_from_correlators(&engine, &quintic, 2, Twist::Kernel)?;
    let euler = quintic.bundle().euler_class(4);
    let lhs = twisted.times_class(&euler);
    let rhs = j.times_class(&euler);
    println!("quintic Q^1 slot: {}", rhs.coefficient(1).unwrap());
    println!(
        "quintic twisted J equal through Q^2: {}",
        lhs.series() == rhs.series()
    );
    Ok(())
}
