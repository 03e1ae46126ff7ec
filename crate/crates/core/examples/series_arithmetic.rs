//! Truncated series: products, inverses, exp/log and the mirror-map reversion.

use zerolocus::series::{exp_reversion, format_rational, int, TruncatedSeries};

fn show(s: &TruncatedSeries<zerolocus::series::BigRational>) -> String {
    s.coeffs()
        .iter()
        .map(format_rational)
        .collect::<Vec<_>>()
        .join(", ")
}

fn main() -> zerolocus::Result<()> {
    let a = TruncatedSeries::from_ints(4, &[1, 1]);
    let b = TruncatedSeries::from_ints(4, &[1, -1]);
    println!("(1+q)(1-q)       = [{}]", show(&a.mul(&b)?));
    println!("1/(1-q)          = [{}]", show(&b.invert()?));

    let x = TruncatedSeries::variable(6);
    let e = x.exp()?;
    println!("exp(q)           = [{}]", show(&e));
    println!("log(exp(q))      = [{}]", show(&e.log()?));

    // t = log q + 770 q: solve for q as a series in Q = e^t
    let g = TruncatedSeries::from_ints(3, &[0, 770]);
    let q = exp_reversion(&g)?;
    println!("q(Q) for g = 770q: [{}]", show(&q));
    assert_eq!(q.coeffs()[2], int(-770));
    Ok(())
}
