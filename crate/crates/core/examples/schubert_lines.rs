//! Lines on hypersurfaces and complete intersections by Schubert calculus on
//! the Grassmannian of lines.

use zerolocus::schubert::schubert_line_count;
use zerolocus::series::format_rational;

fn main() -> zerolocus::Result<()> {
    let cases: &[(usize, &[u32])] = &[
        (3, &[3]),
        (4, &[5]),
        (5, &[3, 3]),
        (5, &[2, 4]),
        (6, &[2, 2, 3]),
        (7, &[2, 2, 2, 2]),
    ];
    for &(r, degrees) in cases {
        let n = schubert_line_count(r, degrees)?;
        println!("P^{r} {degrees:?}: {} lines", format_rational(&n));
    }
    Ok(())
}
