//! Acceptance criteria, one PASS/FAIL line each. Runs as a plain binary so
//! the lines always reach the test output.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use zerolocus::geometry::{CharClassSpec, GeometryConfig};
use zerolocus::instanton::{invert_multicover, InvariantTable, Provenance};
use zerolocus::localization::{Descendant, LocalizationEngine, Twist, WeightVector};
use zerolocus::mirror::{
    assemble_j_from_correlators, extract_gw, i_function, mirror_map, MirrorConfig,
};
use zerolocus::schubert::schubert_line_count;
use zerolocus::series::{
    exp_reversion_to, format_rational, int, rat, BigRational, TruncatedSeries,
};
use zerolocus::Result;

type Outcome = Result<(bool, String)>;
type Criterion = (&'static str, Box<dyn Fn() -> Outcome>);

fn timed(limit: Duration, f: impl FnOnce() -> Outcome) -> Outcome {
    let start = Instant::now();
    let (ok, detail) = f()?;
    let t = start.elapsed();
    Ok((
        ok && t < limit,
        format!(
            "{detail}; {:.3}s (limit {}s)",
            t.as_secs_f64(),
            limit.as_secs()
        ),
    ))
}

fn show(v: &[BigRational]) -> String {
    v.iter().map(format_rational).collect::<Vec<_>>().join(", ")
}

fn euler() -> CharClassSpec {
    CharClassSpec::Euler
}

fn triple_oracle_lines() -> Outcome {
    timed(Duration::from_secs(1), || {
        let engine = LocalizationEngine::new();
        let mut ok = true;
        let mut parts = Vec::new();
        for (r, degrees) in [(4usize, [5u32]), (3, [3])] {
            let g = GeometryConfig::convex(r, &degrees)?;
            let s = schubert_line_count(r, &degrees)?;
            let l = engine.euler_integral(&g, 1, &euler())?;
            let m = MirrorConfig::new(g, 1)?;
            let (_, j) = mirror_map(&i_function(&m)?)?;
            let x = extract_gw(&j, &m)?.remove(0);
            ok &= s == l && l == x;
            parts.push(format!("P^{r}{degrees:?}: {s}/{l}/{x}"));
        }
        Ok((ok, parts.join("; ")))
    })
}

fn quintic_pipelines() -> Outcome {
    let g = GeometryConfig::quintic();
    let (ok_local, local, local_detail) = {
        let start = Instant::now();
        let engine = LocalizationEngine::new().with_parallel(false);
        let v = (1..=3)
            .map(|d| engine.euler_integral(&g, d, &euler()))
            .collect::<Result<Vec<_>>>()?;
        let t = start.elapsed();
        (
            t < Duration::from_secs(300),
            v,
            format!("localization serial {:.3}s", t.as_secs_f64()),
        )
    };
    let start = Instant::now();
    let m = MirrorConfig::new(g, 10)?;
    let (_, j) = mirror_map(&i_function(&m)?)?;
    let mirror = extract_gw(&j, &m)?;
    let t = start.elapsed();
    let ok = ok_local && t < Duration::from_secs(1) && mirror[..3] == local[..];
    Ok((
        ok,
        format!(
            "N_1..3 = [{}]; {local_detail} (limit 300s); mirror to d=10 {:.3}s (limit 1s)",
            show(&local),
            t.as_secs_f64()
        ),
    ))
}

fn instanton_integrality() -> Outcome {
    let m = MirrorConfig::new(GeometryConfig::quintic(), 5)?;
    let (_, j) = mirror_map(&i_function(&m)?)?;
    let table = InvariantTable::from_values(extract_gw(&j, &m)?, "quintic", Provenance::Mirror);
    let inst = invert_multicover(&table)?;
    let values: Vec<_> = inst.entries().values().cloned().collect();
    Ok((
        inst.all_integral() && &inst.resum() == table.entries(),
        format!("n_1..5 = [{}]", show(&values)),
    ))
}

fn multicover_law() -> Outcome {
    timed(Duration::from_secs(60), || {
        let engine = LocalizationEngine::new();
        let g = GeometryConfig::local_p1();
        let v = (1..=4)
            .map(|d| engine.euler_integral(&g, d, &euler()))
            .collect::<Result<Vec<_>>>()?;
        let expected: Vec<_> = (1..=4).map(|d| rat(1, d * d * d)).collect();
        Ok((v == expected, format!("K_1..4 = [{}]", show(&v))))
    })
}

fn j_closed_form() -> Outcome {
    let engine = LocalizationEngine::new();
    let mut ok = true;
    for r in [1, 4] {
        let g = GeometryConfig::projective_space(r)?;
        let i = i_function(&MirrorConfig::new(g.clone(), 2)?)?;
        let j = assemble_j_from_correlators(&engine, &g, 2, Twist::None)?;
        ok &= i.series() == j.series();
    }
    let p1 = GeometryConfig::projective_space(1)?;
    let a = engine.one_point_correlator(&p1, 1, 0, 1, Twist::None)?;
    let b = engine.one_point_correlator(&p1, 1, 1, 0, Twist::None)?;
    Ok((
        ok && a == int(1) && b == int(-2),
        format!("P^1, P^4 through q^2; <tau_0 H> = {a}, <tau_1 1> = {b}"),
    ))
}

fn twisted_j_desk_check() -> Outcome {
    let g = GeometryConfig::quintic();
    let (_, j) = mirror_map(&i_function(&MirrorConfig::new(g.clone(), 2)?)?)?;
    let twisted = assemble_j_from_correlators(&LocalizationEngine::new(), &g, 2, Twist::Kernel)?;
    let e = g.bundle().euler_class(4);
    let lhs = twisted.times_class(&e);
    let rhs = j.times_class(&e);
    let slots = (0..=2)
        .map(|d| rhs.coefficient(d).unwrap().terms().count())
        .sum::<usize>();
    Ok((
        lhs.series() == rhs.series(),
        format!("{slots} non-zero (H, hbar) slots through Q^2"),
    ))
}

fn random_series(
    rng: &mut ChaCha8Rng,
    order: usize,
    constant: Option<i64>,
) -> TruncatedSeries<BigRational> {
    let mut c: Vec<_> = (0..=order)
        .map(|_| rat(rng.gen_range(-30..=30), rng.gen_range(1..=7)))
        .collect();
    if let Some(k) = constant {
        c[0] = int(k);
    }
    TruncatedSeries::new(order, c).unwrap()
}

fn property_suites() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let cases = 100;
    let mut failures = Vec::new();

    let mut ring = true;
    for _ in 0..cases {
        let (a, b, c) = (
            random_series(&mut rng, 5, None),
            random_series(&mut rng, 5, None),
            random_series(&mut rng, 5, Some(1)),
        );
        ring &= a.mul(&b)? == b.mul(&a)?
            && a.mul(&b)?.mul(&c)? == a.mul(&b.mul(&c)?)?
            && a.mul(&b.add(&c)?)? == a.mul(&b)?.add(&a.mul(&c)?)?
            && c.mul(&c.invert()?)? == c.one_like();
    }
    if !ring {
        failures.push("ring axioms");
    }

    let mut reversion = true;
    for _ in 0..cases {
        let g = random_series(&mut rng, 5, Some(0));
        let q = exp_reversion_to(&g, 6)?;
        let back = q.mul(&g.truncate(5).compose(&q.truncate(5))?.exp()?)?;
        reversion &= back == TruncatedSeries::variable(5);
    }
    if !reversion {
        failures.push("reversion");
    }

    let g = GeometryConfig::quintic();
    let by_seed: Vec<_> = [11u64, 22, 33]
        .iter()
        .map(|&s| {
            LocalizationEngine::new()
                .with_seed(s)
                .euler_integral(&g, 2, &euler())
        })
        .collect::<Result<_>>()?;
    if by_seed.windows(2).any(|w| w[0] != w[1]) {
        failures.push("weight independence");
    }

    let serial = LocalizationEngine::new()
        .with_parallel(false)
        .euler_integral(&g, 2, &euler())?;
    let parallel = LocalizationEngine::new()
        .with_parallel(true)
        .euler_integral(&g, 2, &euler())?;
    if serial != parallel {
        failures.push("serial vs parallel");
    }

    // integrands of degree below dim M_{0,1}(P^2, 2) = 6 sum to zero
    let p2 = GeometryConfig::projective_space(2)?;
    let engine = LocalizationEngine::new();
    let graphs = engine.graphs(2, 2, 1)?;
    let mut vanishing = true;
    for _ in 0..cases {
        let mut w: Vec<i64> = Vec::new();
        while w.len() < 3 {
            let x = rng.gen_range(-200..=200);
            if !w.contains(&x) {
                w.push(x);
            }
        }
        let (n, a) = (rng.gen_range(0..=3u32), rng.gen_range(0..=2u32));
        let desc = Some(Descendant::new(n, a));
        match engine.sum_at(
            &graphs,
            &WeightVector::new(w)?,
            &p2,
            &euler(),
            desc,
            Twist::None,
        ) {
            Ok(v) => vanishing &= v == int(0),
            Err(zerolocus::Error::DegenerateWeights { .. }) => {}
            Err(e) => return Err(e),
        }
    }
    if !vanishing {
        failures.push("dimension axiom");
    }

    Ok((
        failures.is_empty(),
        if failures.is_empty() {
            format!("{cases} random cases per suite")
        } else {
            format!("failed: {}", failures.join(", "))
        },
    ))
}

fn main() -> ExitCode {
    let criteria: Vec<Criterion> = vec![
        ("1 triple-oracle line counts", Box::new(triple_oracle_lines)),
        ("2 quintic pipeline agreement", Box::new(quintic_pipelines)),
        ("3 instanton integrality", Box::new(instanton_integrality)),
        ("4 multiple-cover law", Box::new(multicover_law)),
        ("5 J-function closed form", Box::new(j_closed_form)),
        ("6 twisted J desk check", Box::new(twisted_j_desk_check)),
        ("7 property suites", Box::new(property_suites)),
    ];
    let mut all = true;
    let mut shadows = true;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let (ok, detail) = check().unwrap_or_else(|e| (false, format!("error: {e}")));
        println!(
            "{}  criterion {name}: {detail}",
            if ok { "PASS" } else { "FAIL" }
        );
        all &= ok;
        if i < 6 {
            shadows &= ok;
        }
    }
    // Criterion 8 is a scope statement: the class-level identity is out of
    // reach, and what is checked is its numerical consequences above.
    println!(
        "{}  criterion 8 scope limit: class-level statement not machine-checked; numerical shadows 1-6 {}",
        if shadows { "PASS" } else { "FAIL" },
        if shadows { "all hold" } else { "do not all hold" }
    );
    all &= shadows;
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
