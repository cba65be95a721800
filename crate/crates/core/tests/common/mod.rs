//! Property checks shared by the proptest suite and the acceptance run.
#![allow(dead_code)]

use std::sync::Arc;

use genuslab::arith::{
    cyclotomic_field, Cyclotomic, ExponentProfile, PuiseuxSeries, Rational, SlotSeries, YFraction,
};
use genuslab::catalog::{product, proj_space, proj_space_with};
use genuslab::cohom::{genus_class_from_root_function, ChernData, CohomClass, RationalClass, Ring};
use genuslab::theta::{theta_expansion, ThetaArg};
use num_complex::Complex64;
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

pub type Check = std::result::Result<(), TestCaseError>;

pub const P: ExponentProfile = ExponentProfile::BASE;

pub fn rational() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=4).prop_map(|(n, d)| Rational::new(n, d))
}

/// Elements of Q(ζ₁₂).
pub fn cyclotomic() -> impl Strategy<Value = Cyclotomic> {
    prop::collection::vec(rational(), 4)
        .prop_map(|c| Cyclotomic::from_coeffs(cyclotomic_field(12), c))
}

/// Truncated series with a few monomial terms over Q(i).
pub fn series() -> impl Strategy<Value = PuiseuxSeries> {
    prop::collection::vec((0i64..=24, -4i64..=4, rational(), rational()), 1..5).prop_map(|ts| {
        let f = P.field();
        PuiseuxSeries::from_terms(
            P,
            24,
            ts.into_iter().map(|(q, y, a, b)| {
                (q, YFraction::monomial(Cyclotomic::from_coeffs(f, vec![a, b]), y))
            }),
        )
    })
}

/// H*(P² × P¹).
pub fn product_ring() -> Arc<Ring> {
    let x = product(&proj_space(2).unwrap(), &proj_space_with(1, "k").unwrap()).unwrap();
    x.ring.clone()
}

pub fn class(ring: &Arc<Ring>, coeffs: &[Rational]) -> RationalClass {
    let terms: Vec<_> = ring
        .basis()
        .iter()
        .zip(coeffs)
        .map(|(m, c)| (m.clone(), c.clone()))
        .collect();
    RationalClass::from_terms(ring, &terms).unwrap()
}

pub fn class_coeffs() -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec(rational(), 6)
}

fn ensure(ok: bool, what: &str) -> Check {
    if ok {
        Ok(())
    } else {
        Err(TestCaseError::fail(what.to_string()))
    }
}

pub fn cyclotomic_axioms(a: &Cyclotomic, b: &Cyclotomic, c: &Cyclotomic) -> Check {
    ensure(&(a * b) * c == a * &(b * c), "associativity")?;
    ensure(a * b == b * a, "commutativity")?;
    ensure(a * &(b + c) == &(a * b) + &(a * c), "distributivity")?;
    if let Some(inv) = a.inv() {
        ensure((a * &inv).is_one(), "inverse")?;
    } else {
        ensure(a.is_zero(), "only zero lacks an inverse")?;
    }
    Ok(())
}

pub fn series_axioms(a: &PuiseuxSeries, b: &PuiseuxSeries, c: &PuiseuxSeries) -> Check {
    let m = |x: &PuiseuxSeries, y: &PuiseuxSeries| x.try_mul(y).unwrap();
    ensure(m(&m(a, b), c).agrees_with(&m(a, &m(b, c))), "associativity")?;
    ensure(m(a, b).agrees_with(&m(b, a)), "commutativity")?;
    ensure(
        m(a, &(b + c)).agrees_with(&(&m(a, b) + &m(a, c))),
        "distributivity",
    )?;
    if let Ok(inv) = a.inverse() {
        ensure(m(a, &inv).agrees_with(&PuiseuxSeries::one(P)), "inverse")?;
    }
    Ok(())
}

pub fn class_axioms(ring: &Arc<Ring>, a: &[Rational], b: &[Rational], c: &[Rational]) -> Check {
    let (a, b, c) = (class(ring, a), class(ring, b), class(ring, c));
    ensure(a.mul(&b).mul(&c) == a.mul(&b.mul(&c)), "associativity")?;
    ensure(a.mul(&b) == b.mul(&a), "commutativity")?;
    ensure(a.mul(&b.add(&c)) == a.mul(&b).add(&a.mul(&c)), "distributivity")?;
    ensure(a.mul(&RationalClass::one(ring)) == a, "unit")?;
    Ok(())
}

fn theta_body(arg: &ThetaArg, p: ExponentProfile) -> PuiseuxSeries {
    theta_expansion(arg, p, 0, p.q_orders(6))
        .unwrap()
        .body
        .coeff(0)
        .clone()
}

/// θ(−v) = −θ(v), θ(v + 1) = −θ(v), θ(v − τ) = −q^{−1/2}e^{2πiv}θ(v).
pub fn theta_identities(a: &Rational, b: &Rational, c: &Rational) -> Check {
    let one = Rational::one();
    let arg = ThetaArg::new(a.clone(), b.clone(), c.clone());
    let shifted_z = ThetaArg::new(a + &one, b.clone(), c.clone());
    let shifted_tau = ThetaArg::new(a.clone(), b + &one, c.clone());
    let p = [&shifted_z, &shifted_tau]
        .iter()
        .fold(arg.required_profile(P), |p, x| p.join(&x.required_profile(P)));
    let t = theta_body(&arg, p);
    ensure(theta_body(&arg.negated(), p).agrees_with(&-&t), "oddness")?;
    ensure(theta_body(&shifted_z, p).agrees_with(&-&t), "period 1")?;
    let field = p.field();
    let e = PuiseuxSeries::monomial(
        p,
        -Cyclotomic::root_of_unity(field, a).unwrap(),
        -(p.nq as i64) / 2 - p.q_num(b).unwrap(),
        -p.y_num(c).unwrap(),
    );
    ensure(
        theta_body(&shifted_tau, p).agrees_with(&e.try_mul(&t).unwrap()),
        "quasi-period tau",
    )
}

pub fn rational_slot(coeffs: &[Rational]) -> SlotSeries {
    SlotSeries::from_coeffs(
        coeffs
            .iter()
            .map(|c| PuiseuxSeries::from_rational(P, c.clone()))
            .collect(),
    )
}

fn classes_agree(x: &CohomClass, y: &CohomClass) -> bool {
    x.coeffs()
        .iter()
        .zip(y.coeffs())
        .all(|(a, b)| a.agrees_with(b))
}

/// The genus class of E ⊕ F is the product of the classes of E and F.
pub fn multiplicativity(f_tail: &[Rational], e: &[Rational], g: &[Rational]) -> Check {
    let ring = product_ring();
    let mut fc = vec![Rational::one()];
    fc.extend_from_slice(&f_tail[..3]);
    let f = rational_slot(&fc);
    let one = RationalClass::one(&ring);
    let ce = one
        .add(&class(&ring, e).component(1))
        .add(&class(&ring, g).component(2));
    let cf = one.add(&class(&ring, g).component(1));
    let e_data = ChernData::new(ce.clone(), 2).unwrap();
    let f_data = ChernData::new(cf.clone(), 1).unwrap();
    let sum = ChernData::new(ce.mul(&cf), 3).unwrap();
    let lhs = genus_class_from_root_function(&f, &sum).unwrap();
    let rhs = genus_class_from_root_function(&f, &e_data)
        .unwrap()
        .mul(&genus_class_from_root_function(&f, &f_data).unwrap())
        .unwrap();
    ensure(classes_agree(&lhs, &rhs), "multiplicativity")
}

/// 2 Σ_{n≥0} (−1)^n q^{(n+1/2)²/2} sin((2n+1)πv)
pub fn theta_float(v: Complex64, tau: Complex64) -> Complex64 {
    let i_pi = Complex64::new(0.0, std::f64::consts::PI);
    (0..40)
        .map(|n| {
            let m = n as f64 + 0.5;
            let s = if n % 2 == 0 { 2.0 } else { -2.0 };
            (i_pi * tau * m * m).exp() * (v * std::f64::consts::PI * (2 * n + 1) as f64).sin() * s
        })
        .sum()
}

/// Exact product expansion evaluated at (z, τ) against the theta series, relative error.
pub fn theta_float_error(a: &Rational, b: &Rational, c: &Rational, z: Complex64, tau: Complex64) -> f64 {
    let arg = ThetaArg::new(a.clone(), b.clone(), c.clone());
    let p = arg.required_profile(P);
    let exact = theta_expansion(&arg, p, 0, p.q_orders(24))
        .unwrap()
        .eval_complex(z, tau);
    let v = Complex64::new(a.to_f64(), 0.0) - tau * b.to_f64() - z * c.to_f64();
    let f = theta_float(v, tau);
    (exact - f).norm() / f.norm().max(1e-12)
}

pub fn theta_point() -> impl Strategy<Value = (Rational, Rational, Rational, Complex64, Complex64)> {
    (
        -3i64..=3,
        -2i64..=2,
        -2i64..=2,
        0.05f64..0.45,
        -0.1f64..0.1,
        -0.5f64..0.5,
        0.6f64..1.4,
    )
        .prop_filter("θ vanishes at lattice points", |(a, b, c, ..)| {
            !(*c == 0 && *a % 4 == 0 && *b % 2 == 0)
        })
        .prop_map(|(a, b, c, zr, zi, tr, ti)| {
            (
                Rational::new(a, 4),
                Rational::new(b, 2),
                Rational::from_integer(c),
                Complex64::new(zr, zi),
                Complex64::new(tr, ti),
            )
        })
}
