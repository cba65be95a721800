use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Mutex, OnceLock};

use crate::arith::{Cyclotomic, ExponentProfile, PuiseuxSeries, Rational, YFraction};
use crate::error::{Error, Result};
use crate::theta::euler_product;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum JacobiGenerator {
    E4,
    E6,
    PhiM21,
    Phi01,
    PhiM1Half,
    Phi03Half,
}

impl JacobiGenerator {
    pub const ALL: [JacobiGenerator; 6] = [
        JacobiGenerator::E4,
        JacobiGenerator::E6,
        JacobiGenerator::PhiM21,
        JacobiGenerator::Phi01,
        JacobiGenerator::PhiM1Half,
        JacobiGenerator::Phi03Half,
    ];

    pub fn name(self) -> &'static str {
        match self {
            JacobiGenerator::E4 => "E4",
            JacobiGenerator::E6 => "E6",
            JacobiGenerator::PhiM21 => "phiM21",
            JacobiGenerator::Phi01 => "phi01",
            JacobiGenerator::PhiM1Half => "phiM1half",
            JacobiGenerator::Phi03Half => "phi03half",
        }
    }

    pub fn weight(self) -> i64 {
        match self {
            JacobiGenerator::E4 => 4,
            JacobiGenerator::E6 => 6,
            JacobiGenerator::PhiM21 => -2,
            JacobiGenerator::Phi01 => 0,
            JacobiGenerator::PhiM1Half => -1,
            JacobiGenerator::Phi03Half => 0,
        }
    }

    pub fn index(self) -> Rational {
        match self {
            JacobiGenerator::E4 | JacobiGenerator::E6 => Rational::zero(),
            JacobiGenerator::PhiM21 | JacobiGenerator::Phi01 => Rational::one(),
            JacobiGenerator::PhiM1Half => Rational::new(1, 2),
            JacobiGenerator::Phi03Half => Rational::new(3, 2),
        }
    }
}

impl fmt::Display for JacobiGenerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for JacobiGenerator {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        JacobiGenerator::ALL
            .into_iter()
            .find(|g| g.name() == s)
            .ok_or_else(|| Error::validation(format!("unknown Jacobi generator {s:?}")))
    }
}

type CacheKey = (JacobiGenerator, ExponentProfile, i64);

fn cache() -> &'static Mutex<HashMap<CacheKey, PuiseuxSeries>> {
    static CACHE: OnceLock<Mutex<HashMap<CacheKey, PuiseuxSeries>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Expansion of `gen` known through q-exponent numerator `trunc` in `profile`.
pub fn generator_expansion(
    gen: JacobiGenerator,
    profile: ExponentProfile,
    trunc: i64,
) -> Result<PuiseuxSeries> {
    if trunc < 0 {
        return Err(Error::validation("generator truncation must be nonnegative"));
    }
    let key = (gen, profile, trunc);
    if let Some(s) = cache().lock().unwrap().get(&key) {
        return Ok(s.clone());
    }
    let s = build(gen, profile, trunc)?;
    cache().lock().unwrap().insert(key, s.clone());
    Ok(s)
}

fn build(gen: JacobiGenerator, p: ExponentProfile, t: i64) -> Result<PuiseuxSeries> {
    match gen {
        JacobiGenerator::E4 => Ok(eisenstein(p, t, 240, 3)),
        JacobiGenerator::E6 => Ok(eisenstein(p, t, -504, 5)),
        JacobiGenerator::PhiM1Half => phi_m1_half(p, t),
        JacobiGenerator::PhiM21 => phi_m1_half(p, t)?.pow(2),
        JacobiGenerator::Phi01 => phi01(p, t),
        JacobiGenerator::Phi03Half => phi03_half(p, t),
    }
}

fn constant_term(p: ExponentProfile, c: i64, q_num: i64, y_num: i64) -> (i64, YFraction) {
    (
        q_num,
        YFraction::monomial(Cyclotomic::from_integer(p.field(), c), y_num),
    )
}

/// 1 + s·q^{q_num}·y^{y_num}
fn binomial(p: ExponentProfile, t: i64, s: i64, q_num: i64, y_num: i64) -> PuiseuxSeries {
    PuiseuxSeries::from_terms(
        p,
        t,
        [constant_term(p, 1, 0, 0), constant_term(p, s, q_num, y_num)],
    )
}

/// ∏ over q-exponent numerators `start + k·step` ≤ t of (1 + s·q^e·y^{y_num}).
fn product(
    p: ExponentProfile,
    t: i64,
    s: i64,
    start: i64,
    step: i64,
    y_num: i64,
) -> Result<PuiseuxSeries> {
    let mut acc = PuiseuxSeries::one(p).truncate(t);
    let mut e = start;
    while e <= t {
        acc = acc.try_mul(&binomial(p, t, s, e, y_num))?;
        e += step;
    }
    Ok(acc)
}

fn divisor_power_sum(n: i64, k: u32) -> i64 {
    (1..=n).filter(|d| n % d == 0).map(|d| d.pow(k)).sum()
}

fn eisenstein(p: ExponentProfile, t: i64, c: i64, k: u32) -> PuiseuxSeries {
    let nq = p.nq as i64;
    let terms = std::iter::once(constant_term(p, 1, 0, 0))
        .chain((1..=t / nq).map(|n| constant_term(p, c * divisor_power_sum(n, k), n * nq, 0)));
    PuiseuxSeries::from_terms(p, t, terms)
}

fn half_y_binomial(p: ExponentProfile, t: i64, sign: i64) -> PuiseuxSeries {
    let h = p.ly as i64 / 2;
    PuiseuxSeries::from_terms(
        p,
        t,
        [constant_term(p, 1, 0, h), constant_term(p, sign, 0, -h)],
    )
}

/// (y^{1/2} − y^{−1/2})∏(1 − q^l y)(1 − q^l y^{−1})(1 − q^l)^{−2}
fn phi_m1_half(p: ExponentProfile, t: i64) -> Result<PuiseuxSeries> {
    let nq = p.nq as i64;
    let ly = p.ly as i64;
    let eta = euler_product(p, t).inverse()?;
    half_y_binomial(p, t, -1)
        .try_mul(&product(p, t, -1, nq, nq, ly)?)?
        .try_mul(&product(p, t, -1, nq, nq, -ly)?)?
        .try_mul(&eta.pow(2)?)
}

/// 4·Σ_{i=2,3,4} (θ_i(z)/θ_i(0))², from the half-period product formulas.
fn phi01(p: ExponentProfile, t: i64) -> Result<PuiseuxSeries> {
    let nq = p.nq as i64;
    let ly = p.ly as i64;
    let half = nq / 2;
    let ratio = |sign: i64, start: i64| -> Result<PuiseuxSeries> {
        let num = product(p, t, sign, start, nq, ly)?.try_mul(&product(p, t, sign, start, nq, -ly)?)?;
        let den = product(p, t, sign, start, nq, 0)?.pow(2)?;
        num.try_mul(&den.inverse()?)
    };
    let r2 = half_y_binomial(p, t, 1)
        .scale_rational(&Rational::new(1, 2))
        .try_mul(&ratio(1, nq)?)?;
    let r3 = ratio(1, half)?;
    let r4 = ratio(-1, half)?;
    let sum = r2.pow(2)?.try_add(&r3.pow(2)?)?.try_add(&r4.pow(2)?)?;
    Ok(sum.scale_rational(&Rational::from_integer(4)))
}

/// θ(2z)/θ(z) = (y^{1/2} + y^{−1/2})∏(1 − q^l y²)(1 − q^l y^{−2})/((1 − q^l y)(1 − q^l y^{−1}))
fn phi03_half(p: ExponentProfile, t: i64) -> Result<PuiseuxSeries> {
    let nq = p.nq as i64;
    let ly = p.ly as i64;
    let num = product(p, t, -1, nq, nq, 2 * ly)?.try_mul(&product(p, t, -1, nq, nq, -2 * ly)?)?;
    let den = product(p, t, -1, nq, nq, ly)?.try_mul(&product(p, t, -1, nq, nq, -ly)?)?;
    half_y_binomial(p, t, 1)
        .try_mul(&num)?
        .try_mul(&den.inverse()?)
}
