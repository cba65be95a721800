//! q-expansions of θ(v,τ) = q^{1/8}(2 sin πv)∏(1−q^l)(1−q^l e^{2πiv})(1−q^l e^{−2πiv})
//! at arguments v = k·x/2πi + a − bτ − cz.

mod quotient;

pub use quotient::{assemble_quotient, NilPrefactor};

use std::fmt;

use num_complex::Complex64;

use crate::arith::{Cyclotomic, ExponentProfile, PuiseuxSeries, Rational, SlotSeries};
use crate::error::{Error, Result};

/// Argument k·x/2πi + a − bτ − cz of θ, where x is the nilpotent slot.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ThetaArg {
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
    pub slot: Option<Rational>,
}

impl ThetaArg {
    pub fn new(a: Rational, b: Rational, c: Rational) -> Self {
        ThetaArg { a, b, c, slot: None }
    }

    /// θ(−cz).
    pub fn z(c: Rational) -> Self {
        Self::new(Rational::zero(), Rational::zero(), c)
    }

    pub fn with_slot(mut self, k: Rational) -> Self {
        self.slot = if k.is_zero() { None } else { Some(k) };
        self
    }

    pub fn negated(&self) -> Self {
        ThetaArg {
            a: -&self.a,
            b: -&self.b,
            c: -&self.c,
            slot: self.slot.as_ref().map(|k| -k),
        }
    }

    /// Smallest profile extension in which the expansion is representable.
    pub fn required_profile(&self, p: ExponentProfile) -> ExponentProfile {
        let half = Rational::new(1, 2);
        p.with_root_of_unity(&(&self.a * &half))
            .with_q_exponent(&(&self.b * &half))
            .with_y_exponent(&(&self.c * &half))
    }
}

impl fmt::Display for ThetaArg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "theta(")?;
        if let Some(k) = &self.slot {
            write!(f, "{k}*x/2pi i + ")?;
        }
        write!(f, "{} - ({})tau - ({})z)", self.a, self.b, self.c)
    }
}

/// A series q^{q8/8}·(−i)^{mi}·(2πi)^{pi}·P₁^{eta}·body with P₁ = ∏(1−q^l).
#[derive(Clone, Debug)]
pub struct Prefactored {
    pub q8: i64,
    pub mi: i64,
    pub pi: i64,
    pub eta: i64,
    pub body: SlotSeries,
    pub label: String,
}

impl Prefactored {
    pub fn mul(&self, other: &Prefactored) -> Result<Prefactored> {
        Ok(Prefactored {
            q8: self.q8 + other.q8,
            mi: (self.mi + other.mi).rem_euclid(4),
            pi: self.pi + other.pi,
            eta: self.eta + other.eta,
            body: self.body.mul(&other.body)?,
            label: format!("{}*{}", self.label, other.label),
        })
    }

    /// Numerical value of the x⁰ part with the ledger folded in.
    pub fn eval_complex(&self, z: Complex64, tau: Complex64) -> Complex64 {
        let two_pi_i = Complex64::new(0.0, 2.0 * std::f64::consts::PI);
        let q8 = (two_pi_i * tau / 8.0).exp();
        let minus_i = Complex64::new(0.0, -1.0);
        let body = self.body.coeff(0).eval_complex(z, tau).value;
        body * q8.powf(self.q8 as f64)
            * minus_i.powi(self.mi as i32)
            * two_pi_i.powi(self.pi as i32)
            * euler_product_complex(tau, 400).powi(self.eta as i32)
    }
}

/// ∏_{l≥1}(1−q^l) known through q-exponent numerator `trunc`.
pub fn euler_product(profile: ExponentProfile, trunc: i64) -> PuiseuxSeries {
    // pentagonal number theorem
    let nq = profile.nq as i64;
    let field = profile.field();
    let mut terms = Vec::new();
    let mut k: i64 = 0;
    loop {
        let mut any = false;
        for kk in if k == 0 { vec![0] } else { vec![k, -k] } {
            let e = kk * (3 * kk - 1) / 2 * nq;
            if e <= trunc {
                any = true;
                let sign = if kk.rem_euclid(2) == 0 { 1 } else { -1 };
                terms.push((
                    e,
                    crate::arith::YFraction::constant(Cyclotomic::from_integer(field, sign)),
                ));
            }
        }
        if !any {
            break;
        }
        k += 1;
    }
    PuiseuxSeries::from_terms(profile, trunc, terms)
}

pub(crate) fn euler_product_complex(tau: Complex64, factors: usize) -> Complex64 {
    let q = (Complex64::new(0.0, 2.0 * std::f64::consts::PI) * tau).exp();
    let mut p = Complex64::new(1.0, 0.0);
    let mut ql = q;
    for _ in 0..factors {
        p *= Complex64::new(1.0, 0.0) - ql;
        ql *= q;
    }
    p
}

/// Slot series Σ_i c·(k^i/i!) x^i times the monomial ζ-power·q^{qn}·y^{yn}.
fn exp_monomial(
    profile: ExponentProfile,
    c: &Cyclotomic,
    qn: i64,
    yn: i64,
    k: &Rational,
    degree: usize,
) -> SlotSeries {
    let e = SlotSeries::exp_linear(profile, k, degree);
    let m = PuiseuxSeries::monomial(profile, c.clone(), qn, yn);
    SlotSeries::from_coeffs(
        e.coeffs()
            .iter()
            .map(|ci| &m * ci)
            .collect(),
    )
}

fn min_valuation(s: &SlotSeries) -> i64 {
    s.coeffs()
        .iter()
        .filter_map(|c| c.valuation())
        .min()
        .unwrap_or(0)
}

/// Expansion of θ(arg) to relative q-precision `trunc_rel` (in 1/Nq units)
/// with slot degree `degree`.
pub fn theta_expansion(
    arg: &ThetaArg,
    profile: ExponentProfile,
    degree: usize,
    trunc_rel: i64,
) -> Result<Prefactored> {
    let half = Rational::new(1, 2);
    let field = profile.field();
    let a_half = &arg.a * &half;
    let zeta_half = Cyclotomic::root_of_unity(field, &a_half)
        .map_err(|_| Error::profile(format!("e^(2pi i {a_half}) needs a larger Nzeta")))?;
    let zeta_half_inv = Cyclotomic::root_of_unity(field, &-&a_half)?;
    let zeta = Cyclotomic::root_of_unity(field, &arg.a)?;
    let zeta_inv = Cyclotomic::root_of_unity(field, &-&arg.a)?;
    let bq = profile.q_num(&arg.b)?;
    let bq_half = profile.q_num(&(&arg.b * &half))?;
    let cy = profile.y_num(&arg.c)?;
    let cy_half = profile.y_num(&(&arg.c * &half))?;
    let k = arg.slot.clone().unwrap_or_else(Rational::zero);
    let k_half = &k * &half;
    let nq = profile.nq as i64;

    // E^{1/2} − E^{−1/2}
    let sine = exp_monomial(profile, &zeta_half, -bq_half, -cy_half, &k_half, degree).add(
        &exp_monomial(profile, &zeta_half_inv, bq_half, cy_half, &-&k_half, degree)
            .scale_rational(&Rational::from_integer(-1)),
    )?;

    let one = SlotSeries::one(profile, degree);
    let minus_one = Rational::from_integer(-1);
    let mut factors = vec![sine];
    let mut l: i64 = 1;
    loop {
        let s_plus = l * nq - bq; // q^l E
        let s_minus = l * nq + bq; // q^l E^{-1}
        if s_plus > trunc_rel && s_minus > trunc_rel {
            break;
        }
        if s_plus <= trunc_rel {
            let t = exp_monomial(profile, &zeta, s_plus, -cy, &k, degree).scale_rational(&minus_one);
            factors.push(one.add(&t)?);
        }
        if s_minus <= trunc_rel {
            let t = exp_monomial(profile, &zeta_inv, s_minus, cy, &-&k, degree)
                .scale_rational(&minus_one);
            factors.push(one.add(&t)?);
        }
        l += 1;
    }

    let vals: Vec<i64> = factors.iter().map(min_valuation).collect();
    let total: i64 = vals.iter().sum();
    let t_abs = total + trunc_rel;
    let mut remaining = total;
    let mut body: Option<SlotSeries> = None;
    for (f, v) in factors.iter().zip(&vals) {
        remaining -= v;
        let next = match body {
            None => f.truncate(t_abs - remaining),
            Some(b) => b.mul(f)?.truncate(t_abs - remaining),
        };
        body = Some(next);
    }
    Ok(Prefactored {
        q8: 1,
        mi: 1,
        pi: 0,
        eta: 1,
        body: body.unwrap().truncate(t_abs),
        label: arg.to_string(),
    })
}

/// θ'(0) = q^{1/8}(−i)(2πi)P₁³.
pub fn theta_prime_zero(profile: ExponentProfile, degree: usize) -> Prefactored {
    Prefactored {
        q8: 1,
        mi: 1,
        pi: 1,
        eta: 3,
        body: SlotSeries::one(profile, degree),
        label: "theta'(0)".into(),
    }
}
