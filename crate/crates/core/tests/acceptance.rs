//! One line per acceptance criterion; the test fails if any criterion fails.

mod common;

use std::time::{Duration, Instant};

use common::*;
use genuslab::arith::{PuiseuxSeries, Rational};
use genuslab::catalog::{build, CATALOG_KEYS};
use genuslab::cohom::{PullbackClass, RationalClass, Variety};
use genuslab::genus::{
    functional_equation_check, genus, orbifold_elliptic_genus, specialize, Convention,
    GenusContext, GenusResult, Law, SpecialValue, Specialization, TorsionTable,
};
use genuslab::jacobi::{generator_expansion, membership, JacobiGenerator, JacobiMonomial};
use genuslab::{Error, Result};
use num_complex::Complex64;
use proptest::test_runner::{Config, TestRunner};

/// Three integer q-orders in eighths.
const QMAX: i64 = 24;

struct Outcome {
    passed: bool,
    detail: String,
}

fn pass(detail: impl Into<String>) -> Result<Outcome> {
    Ok(Outcome {
        passed: true,
        detail: detail.into(),
    })
}

fn fail(detail: impl Into<String>) -> Result<Outcome> {
    Ok(Outcome {
        passed: false,
        detail: detail.into(),
    })
}

fn context(xs: &[&Variety]) -> GenusContext {
    let p = xs
        .iter()
        .map(|x| genuslab::genus::required_profile(x, &[]))
        .reduce(|a, b| a.join(&b))
        .unwrap();
    let d = xs.iter().map(|x| x.dimension).max().unwrap() as usize;
    GenusContext::new(p, d, QMAX * p.nq as i64 / 8)
}

fn ell(ctx: &GenusContext, x: &Variety, alpha: Option<&str>, conv: Convention) -> Result<GenusResult> {
    if x.orbifold.is_some() {
        orbifold_elliptic_genus(ctx, x, alpha, None, conv)
    } else {
        genus(ctx, x, alpha, conv)
    }
}

fn std_ell(ctx: &GenusContext, x: &Variety, alpha: Option<&str>, conv: Convention) -> Result<GenusResult> {
    ell(ctx, x, alpha, conv)?.to_standard(ctx)
}

fn same(a: &PuiseuxSeries, b: &PuiseuxSeries) -> std::result::Result<(), String> {
    let p = a.profile();
    match a.first_discrepancy(b) {
        None if a.profile() == b.profile() => Ok(()),
        None => Err("profiles differ".into()),
        Some(d) => Err(format!(
            "q^({}): {} vs {}",
            p.q_exp(d.q_num),
            d.left.fmt_with(p.ly),
            d.right.fmt_with(p.ly)
        )),
    }
}

fn theta_sum(z: Complex64, tau: Complex64, shift: f64, alternate: bool) -> Complex64 {
    let i_pi = Complex64::new(0.0, std::f64::consts::PI);
    (-30..=30)
        .map(|n| {
            let m = n as f64 + shift;
            let s = if alternate && n % 2 != 0 { -1.0 } else { 1.0 };
            (i_pi * tau * m * m + i_pi * 2.0 * z * m).exp() * s
        })
        .sum()
}

/// 2·4·Σ_{i=2,3,4} θ_i(z)²/θ_i(0)² from the theta series.
fn two_phi01_float(z: Complex64, tau: Complex64) -> Complex64 {
    let zero = Complex64::new(0.0, 0.0);
    let mut v = zero;
    for (shift, alt) in [(0.5, false), (0.0, false), (0.0, true)] {
        let r = theta_sum(z, tau, shift, alt) / theta_sum(zero, tau, shift, alt);
        v += r * r;
    }
    v * 8.0
}

fn phi01_coordinate(r: &GenusResult) -> Result<Option<Rational>> {
    let m = membership(r)?;
    let key = JacobiMonomial {
        a: 0,
        b: 0,
        c: 0,
        e: 1,
        f: 0,
        g: 0,
    };
    Ok((m.success && m.coordinates.len() == 1).then(|| m.coordinate(&key)))
}

fn k3_jacobi() -> Result<Outcome> {
    let t0 = Instant::now();
    let x = build("k3-quartic")?;
    let ctx = context(&[&x]);
    let normalized = std_ell(&ctx, &x, None, Convention::Normalized)?;
    let direct = ell(&ctx, &x, None, Convention::Eq2)?;
    let p = ctx.profile();
    let two_phi = generator_expansion(JacobiGenerator::Phi01, p, ctx.truncation())?
        .scale_rational(&Rational::from_integer(2));
    for (name, r) in [("normalized", &normalized), ("eq2", &direct)] {
        if let Err(d) = same(&r.series, &two_phi) {
            return fail(format!("{name} differs from 2·phi01 at {d}"));
        }
    }
    if phi01_coordinate(&normalized)? != Some(Rational::from_integer(2)) {
        return fail(format!("membership gave {:?}", membership(&normalized)?));
    }
    // |q| between 0.0005 and 0.002
    let points = [
        (0.11, 0.03, 0.07, 0.002f64),
        (0.27, -0.02, -0.31, 0.0015),
        (0.38, 0.0, 0.45, 0.001),
        (0.05, 0.05, 0.2, 0.0008),
        (0.44, -0.04, -0.12, 0.0005),
    ];
    let mut worst = 0.0f64;
    for (zr, zi, tr, q_abs) in points {
        let z = Complex64::new(zr, zi);
        let tau = Complex64::new(tr, -q_abs.ln() / (2.0 * std::f64::consts::PI));
        let exact = normalized.series.eval_complex(z, tau).value;
        let float = two_phi01_float(z, tau);
        worst = worst.max((exact - float).norm() / float.norm());
    }
    let elapsed = t0.elapsed();
    if worst > 1e-6 {
        return fail(format!("float oracle relative error {worst:.2e}"));
    }
    if elapsed > Duration::from_secs(60) {
        return fail(format!("took {elapsed:?}"));
    }
    pass(format!(
        "2·phi01 through q^3 in both conventions, coordinates {{phi01: 2}}, float error {worst:.1e}"
    ))
}

fn mckay() -> Result<Outcome> {
    let t0 = Instant::now();
    let kummer = build("kummer")?;
    let k3 = build("k3-quartic")?;
    let ctx = context(&[&kummer, &k3]);
    for conv in [Convention::Eq2, Convention::Normalized] {
        let a = ell(&ctx, &kummer, None, conv)?;
        let b = ell(&ctx, &k3, None, conv)?;
        if let Err(d) = same(&a.series, &b.series) {
            return fail(format!("{conv}: {d}"));
        }
        if a.truncation() < ctx.profile().q_orders(3) {
            return fail("truncation below three q-orders");
        }
    }
    let elapsed = t0.elapsed();
    if elapsed > Duration::from_secs(120) {
        return fail(format!("took {elapsed:?}"));
    }
    pass("orbifold Kummer genus equals the K3 genus through q^3 in both conventions")
}

fn k_equivalence() -> Result<Outcome> {
    let blowup = build("blowup-p2")?;
    let p2 = build("p2")?;
    let ctx = context(&[&blowup, &p2]);
    for conv in [Convention::Eq2, Convention::Normalized] {
        let a = ell(&ctx, &blowup, None, conv)?;
        let b = ell(&ctx, &p2, None, conv)?;
        if let Err(d) = same(&a.series, &b.series) {
            return fail(format!("{conv}: {d}"));
        }
    }
    let one = Some(Rational::one());
    for x in [&blowup, &p2] {
        let t = specialize(&std_ell(&ctx, x, None, Convention::Normalized)?, Specialization::Todd)?;
        if t.as_rational() != one {
            return fail(format!("todd({}) = {t}", x.name));
        }
    }
    pass("Ell(Bl_pt P², −E) = Ell(P²) through q^3, todd 1 on both sides")
}

fn modularity() -> Result<Outcome> {
    let mut notes = Vec::new();
    for key in ["cubic-curve", "k3-quartic", "quintic"] {
        let x = build(key)?;
        let ctx = context(&[&x]);
        let r = std_ell(&ctx, &x, None, Convention::Normalized)?;
        for law in [Law::Modular1, Law::Modular3, Law::Modular4] {
            let rep = functional_equation_check(&r, law)?;
            if !rep.passed {
                return fail(format!("{key} {law}: {:?}", rep.discrepancy));
            }
        }
        let m = membership(&r)?;
        if !m.success || r.weight != 0 || r.index != Rational::new(x.dimension as i64, 2) {
            return fail(format!("{key} membership {m:?}"));
        }
        notes.push(format!("{key} ok"));
    }
    let p2 = build("p2")?;
    let ctx = context(&[&p2]);
    let r = std_ell(&ctx, &p2, None, Convention::Eq2)?;
    let rep = functional_equation_check(&r, Law::Modular3)?;
    match (&rep.passed, &rep.discrepancy) {
        (false, Some(d)) => notes.push(format!("P² modular3 fails at {d}")),
        _ => return fail("P² passed modular3"),
    }
    if membership(&r)?.success {
        return fail("P² passed membership");
    }
    pass(notes.join("; "))
}

fn specializations() -> Result<Outcome> {
    let value = |key: &str, kind: Specialization| -> Result<SpecialValue> {
        let x = build(key)?;
        let ctx = context(&[&x]);
        specialize(&std_ell(&ctx, &x, None, Convention::Eq2)?, kind)
    };
    let expect = [
        ("p1", Specialization::Todd, 1),
        ("p2", Specialization::Todd, 1),
        ("p3", Specialization::Todd, 1),
        ("p2", Specialization::Euler, 3),
        ("k3-quartic", Specialization::Euler, 24),
        ("k3-quartic", Specialization::Signature, -16),
    ];
    for (key, kind, want) in expect {
        let v = value(key, kind)?;
        if v.as_rational() != Some(Rational::from_integer(want)) {
            return fail(format!("{key} {kind:?} = {v}, expected {want}"));
        }
    }
    let chi = value("p1", Specialization::ChiY)?.to_string();
    if chi != "1 + y" {
        return fail(format!("chi_(-y)(P1) = {chi}"));
    }
    pass("todd(P^1,P^2,P^3) = 1, euler 3 and 24, signature −16, chi_(-y)(P^1) = 1 + y")
}

fn higher_genera() -> Result<Outcome> {
    let mut t2 = build("torus2")?;
    let ctx = context(&[&t2]);
    let r = ell(&ctx, &t2, Some("omega"), Convention::Eq2)?;
    if r.weight != -1 {
        return fail(format!("weight {}", r.weight));
    }
    let phi = generator_expansion(JacobiGenerator::PhiM1Half, ctx.profile(), ctx.truncation())?;
    let lead = r.series.coeff_or_zero(0).as_laurent().and_then(|l| {
        l.coeff(1).and_then(|c| c.as_rational().cloned())
    });
    let Some(c) = lead.filter(|c| !c.is_zero()) else {
        return fail("no y^(1/2) q^0 term");
    };
    if let Err(d) = same(&r.series, &phi.scale_rational(&c)) {
        return fail(format!("not proportional to phiM1half: {d}"));
    }
    let m = membership(&r)?;
    if !m.success {
        return fail(format!("membership at weight −1: {m:?}"));
    }
    if !functional_equation_check(&r, Law::Modular3)?.passed {
        return fail("modular3 with alpha");
    }
    let mut vanishing = Vec::new();
    for (key, k) in [("torus2", 2u32), ("torus4", 3u32)] {
        let mut x = if key == "torus2" { t2.clone() } else { build(key)? };
        x.pullbacks.push(PullbackClass {
            name: "beta".into(),
            class: RationalClass::zero(&x.ring),
            half_degree: k,
        });
        let ctx = context(&[&x]);
        let r = ell(&ctx, &x, Some("beta"), Convention::Eq2)?;
        if !r.series.is_zero() || r.weight != -(k as i64) {
            return fail(format!("{key} with half-degree {k}: weight {}", r.weight));
        }
        vanishing.push(format!("{key} k={k}"));
    }
    t2.pullbacks.clear();
    pass(format!(
        "Ell_omega(T²) = {c}·phiM1half, weight −1 membership ok, zero for {}",
        vanishing.join(", ")
    ))
}

fn discrete_torsion() -> Result<Outcome> {
    let x = build("kummer")?;
    let ctx = context(&[&x]);
    let plain = orbifold_elliptic_genus(&ctx, &x, None, None, Convention::Eq2)?;
    let trivial = orbifold_elliptic_genus(&ctx, &x, None, Some(&TorsionTable::trivial()), Convention::Eq2)?;
    if let Err(d) = same(&plain.series, &trivial.series) {
        return fail(format!("trivial table changed the result at {d}"));
    }
    let half = Rational::new(1, 2);
    let nu = TorsionTable::from_entries([
        ("s".to_string(), "1".to_string(), half.clone()),
        ("1".to_string(), "s".to_string(), half.clone()),
    ])?;
    let round_trip = nu.compose(&nu.inverse());
    let twisted_back =
        orbifold_elliptic_genus(&ctx, &x, None, Some(&round_trip), Convention::Eq2)?;
    if !round_trip.is_trivial() || same(&plain.series, &twisted_back.series).is_err() {
        return fail("twisting by a table and its inverse is not the identity");
    }
    let bad = TorsionTable::from_entries([("s".to_string(), "1".to_string(), half)]);
    if !matches!(bad, Err(Error::Validation(_))) {
        return fail("table with delta(s,1)·delta(1,s) = −1 accepted");
    }
    pass("trivial table is the identity; unbalanced table rejected")
}

fn convention_covariance() -> Result<Outcome> {
    for key in ["p1", "p2", "k3-quartic"] {
        let x = build(key)?;
        let ctx = context(&[&x]);
        let e = ell(&ctx, &x, None, Convention::Eq2)?;
        let n = ell(&ctx, &x, None, Convention::Normalized)?;
        let k = ctx.convention_factor()?.pow(x.dimension as i64)?;
        if let Err(d) = same(&e.series, &n.series.try_mul(&k)?) {
            return fail(format!("{key}: {d}"));
        }
    }
    for key in CATALOG_KEYS {
        let x = build(key)?;
        let ctx = context(&[&x]);
        for conv in [Convention::Eq2, Convention::Normalized] {
            if let Err(e) = ell(&ctx, &x, None, conv) {
                return fail(format!("{key} {conv}: {e}"));
            }
        }
    }
    pass(format!(
        "eq2 = normalized × factor^d on P^1, P^2, K3; {} catalog entries run in both conventions",
        CATALOG_KEYS.len()
    ))
}

fn s<T: std::fmt::Debug>(
    r: std::result::Result<(), proptest::test_runner::TestError<T>>,
) -> std::result::Result<(), String> {
    r.map_err(|e| format!("{e:?}"))
}

fn invariant_suites() -> Result<Outcome> {
    let mut runner = TestRunner::new(Config {
        cases: 24,
        failure_persistence: None,
        ..Config::default()
    });
    let mut failures = Vec::new();
    let mut record = |name: &str, r: std::result::Result<(), String>| {
        if let Err(e) = r {
            failures.push(format!("{name}: {e}"));
        }
    };
    record(
        "cyclotomic ring",
        s(runner.run(&(cyclotomic(), cyclotomic(), cyclotomic()), |(a, b, c)| {
            cyclotomic_axioms(&a, &b, &c)
        })),
    );
    record(
        "series ring",
        s(runner.run(&(series(), series(), series()), |(a, b, c)| series_axioms(&a, &b, &c))),
    );
    let ring = product_ring();
    record(
        "cohomology ring",
        s(runner.run(&(class_coeffs(), class_coeffs(), class_coeffs()), |(a, b, c)| {
            class_axioms(&ring, &a, &b, &c)
        })),
    );
    record(
        "theta identities",
        s(runner.run(&(-4i64..=4, -2i64..=2, -2i64..=2), |(a, b, c)| {
            theta_identities(&Rational::new(a, 4), &Rational::new(b, 2), &Rational::from_integer(c))
        })),
    );
    record(
        "multiplicativity",
        s(runner.run(&(class_coeffs(), class_coeffs(), class_coeffs()), |(f, e, g)| {
            multiplicativity(&f, &e, &g)
        })),
    );
    let mut float_runner = TestRunner::new(Config {
        cases: 10,
        failure_persistence: None,
        ..Config::default()
    });
    record(
        "float theta",
        s(float_runner.run(&theta_point(), |(a, b, c, z, tau)| {
            let err = theta_float_error(&a, &b, &c, z, tau);
            proptest::prop_assert!(err < 1e-8, "relative error {}", err);
            Ok(())
        })),
    );
    if failures.is_empty() {
        pass("ring axioms, theta identities, multiplicativity, float theta at 1e-8")
    } else {
        fail(failures.join("; "))
    }
}

#[test]
fn acceptance() {
    let start = Instant::now();
    let criteria: [(&str, fn() -> Result<Outcome>); 9] = [
        ("K3 Jacobi form", k3_jacobi),
        ("McKay for the Kummer datum", mckay),
        ("K-equivalence of the P² blow-up", k_equivalence),
        ("modularity", modularity),
        ("specializations", specializations),
        ("higher genera", higher_genera),
        ("discrete torsion", discrete_torsion),
        ("convention covariance", convention_covariance),
        ("invariant suites", invariant_suites),
    ];
    let mut failed = Vec::new();
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t0 = Instant::now();
        let outcome = run().unwrap_or_else(|e| Outcome {
            passed: false,
            detail: format!("error: {e}"),
        });
        println!(
            "[{}] {}. {name}: {} ({:.2?})",
            if outcome.passed { "PASS" } else { "FAIL" },
            i + 1,
            outcome.detail,
            t0.elapsed()
        );
        if !outcome.passed {
            failed.push(i + 1);
        }
    }
    let total = start.elapsed();
    println!("acceptance total {total:.2?}");
    assert!(total < Duration::from_secs(600), "acceptance exceeded 10 minutes");
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
