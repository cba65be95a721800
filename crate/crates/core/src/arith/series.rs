//! Truncated Puiseux series in q with rational-function coefficients in y.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::cyclotomic::Cyclotomic;
use super::laurent::LaurentPoly;
use super::profile::ExponentProfile;
use super::rational::Rational;
use super::yfraction::YFraction;
use crate::error::{Error, Result};

/// Truncation value of an exactly known (finite) series.
pub const EXACT: i64 = i64::MAX / 4;

fn sat_add(a: i64, b: i64) -> i64 {
    if a >= EXACT || b >= EXACT {
        EXACT
    } else {
        (a + b).min(EXACT)
    }
}

/// Series Σ c_f(y) q^{f/Nq}, known for every exponent numerator f ≤ `trunc`.
#[derive(Clone)]
pub struct PuiseuxSeries {
    profile: ExponentProfile,
    trunc: i64,
    terms: BTreeMap<i64, YFraction>,
}

/// Numerical value of a series together with a rough size of the omitted tail.
#[derive(Clone, Copy, Debug)]
pub struct Evaluation {
    pub value: Complex64,
    pub tail_estimate: f64,
}

/// First coefficient where two series disagree within their common window.
#[derive(Clone, Debug)]
pub struct Discrepancy {
    pub q_num: i64,
    pub left: YFraction,
    pub right: YFraction,
}

impl PuiseuxSeries {
    pub fn zero(profile: ExponentProfile, trunc: i64) -> Self {
        PuiseuxSeries {
            profile,
            trunc,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(profile: ExponentProfile) -> Self {
        Self::constant(profile, YFraction::one(profile.field()))
    }

    pub fn constant(profile: ExponentProfile, c: YFraction) -> Self {
        Self::term(profile, 0, c)
    }

    pub fn from_rational(profile: ExponentProfile, r: Rational) -> Self {
        Self::constant(profile, YFraction::from_rational(profile.field(), r))
    }

    pub fn from_cyclotomic(profile: ExponentProfile, c: Cyclotomic) -> Self {
        Self::constant(profile, YFraction::constant(c))
    }

    /// Exact single term c·q^{q_num/Nq}.
    pub fn term(profile: ExponentProfile, q_num: i64, c: YFraction) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(q_num, c);
        }
        PuiseuxSeries {
            profile,
            trunc: EXACT,
            terms,
        }
    }

    /// Exact monomial c·q^{q_num/Nq}·y^{y_num/Ly}.
    pub fn monomial(profile: ExponentProfile, c: Cyclotomic, q_num: i64, y_num: i64) -> Self {
        Self::term(profile, q_num, YFraction::monomial(c, y_num))
    }

    /// Builds a series from explicit coefficients, dropping zeros and
    /// anything above the truncation.
    pub fn from_terms(
        profile: ExponentProfile,
        trunc: i64,
        terms: impl IntoIterator<Item = (i64, YFraction)>,
    ) -> Self {
        let mut map: BTreeMap<i64, YFraction> = BTreeMap::new();
        for (e, c) in terms {
            if e > trunc {
                continue;
            }
            match map.remove(&e) {
                Some(prev) => {
                    let s = &prev + &c;
                    if !s.is_zero() {
                        map.insert(e, s);
                    }
                }
                None => {
                    if !c.is_zero() {
                        map.insert(e, c);
                    }
                }
            }
        }
        PuiseuxSeries {
            profile,
            trunc,
            terms: map,
        }
    }

    pub fn profile(&self) -> ExponentProfile {
        self.profile
    }

    pub fn truncation(&self) -> i64 {
        self.trunc
    }

    pub fn is_exact(&self) -> bool {
        self.trunc >= EXACT
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &YFraction)> {
        self.terms.iter().map(|(k, v)| (*k, v))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, q_num: i64) -> Option<&YFraction> {
        self.terms.get(&q_num)
    }

    /// Coefficient at q_num, zero if absent. Panics above the truncation.
    pub fn coeff_or_zero(&self, q_num: i64) -> YFraction {
        assert!(q_num <= self.trunc, "coefficient beyond truncation");
        self.terms
            .get(&q_num)
            .cloned()
            .unwrap_or_else(|| YFraction::zero(self.profile.field()))
    }

    /// Zero up to the truncation.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn valuation(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    /// Lowest exponent that may carry a nonzero coefficient.
    fn effective_valuation(&self) -> i64 {
        self.valuation().unwrap_or_else(|| sat_add(self.trunc, 1))
    }

    pub fn leading(&self) -> Option<(i64, &YFraction)> {
        self.terms.iter().next().map(|(k, v)| (*k, v))
    }

    pub fn truncate(&self, t: i64) -> Self {
        let trunc = t.min(self.trunc);
        PuiseuxSeries {
            profile: self.profile,
            trunc,
            terms: self
                .terms
                .range(..=trunc)
                .map(|(k, v)| (*k, v.clone()))
                .collect(),
        }
    }

    /// Gcd-reduces every coefficient.
    pub fn canonical(&self) -> Self {
        PuiseuxSeries {
            profile: self.profile,
            trunc: self.trunc,
            terms: self.terms.iter().map(|(k, v)| (*k, v.reduced())).collect(),
        }
    }

    fn check_profile(&self, other: &Self) -> Result<()> {
        if self.profile != other.profile {
            return Err(Error::profile(format!(
                "profile mismatch: {:?} vs {:?}",
                self.profile, other.profile
            )));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_profile(other)?;
        let trunc = self.trunc.min(other.trunc);
        let mut terms: BTreeMap<i64, YFraction> =
            self.terms.range(..=trunc).map(|(k, v)| (*k, v.clone())).collect();
        for (k, v) in other.terms.range(..=trunc) {
            match terms.remove(k) {
                Some(prev) => {
                    let s = &prev + v;
                    if !s.is_zero() {
                        terms.insert(*k, s);
                    }
                }
                None => {
                    terms.insert(*k, v.clone());
                }
            }
        }
        Ok(PuiseuxSeries {
            profile: self.profile,
            trunc,
            terms,
        })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&-other)
    }

    /// Product with truncation min(T1 + v2, T2 + v1).
    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_profile(other)?;
        let trunc = sat_add(self.trunc, other.effective_valuation())
            .min(sat_add(other.trunc, self.effective_valuation()));
        let mut acc: BTreeMap<i64, YFraction> = BTreeMap::new();
        for (i, a) in &self.terms {
            for (j, b) in &other.terms {
                let k = i + j;
                if k > trunc {
                    break;
                }
                let p = a * b;
                match acc.get_mut(&k) {
                    Some(slot) => *slot = &*slot + &p,
                    None => {
                        acc.insert(k, p);
                    }
                }
            }
        }
        acc.retain(|_, v| !v.is_zero());
        Ok(PuiseuxSeries {
            profile: self.profile,
            trunc,
            terms: acc,
        })
    }

    pub fn mul_coeff(&self, c: &YFraction) -> Self {
        if c.is_zero() {
            return Self::zero(self.profile, self.trunc);
        }
        PuiseuxSeries {
            profile: self.profile,
            trunc: self.trunc,
            terms: self.terms.iter().map(|(k, v)| (*k, v * c)).collect(),
        }
    }

    pub fn scale(&self, c: &Cyclotomic) -> Self {
        if c.is_zero() {
            return Self::zero(self.profile, self.trunc);
        }
        PuiseuxSeries {
            profile: self.profile,
            trunc: self.trunc,
            terms: self.terms.iter().map(|(k, v)| (*k, v.scale(c))).collect(),
        }
    }

    pub fn scale_rational(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return Self::zero(self.profile, self.trunc);
        }
        PuiseuxSeries {
            profile: self.profile,
            trunc: self.trunc,
            terms: self
                .terms
                .iter()
                .map(|(k, v)| (*k, v.scale_rational(r)))
                .collect(),
        }
    }

    /// Multiplies by q^{k/Nq}.
    pub fn shift_q(&self, k: i64) -> Self {
        PuiseuxSeries {
            profile: self.profile,
            trunc: sat_add(self.trunc, k),
            terms: self.terms.iter().map(|(e, v)| (e + k, v.clone())).collect(),
        }
    }

    /// Multiplies by y^{k/Ly}.
    pub fn shift_y(&self, k: i64) -> Self {
        PuiseuxSeries {
            profile: self.profile,
            trunc: self.trunc,
            terms: self.terms.iter().map(|(e, v)| (*e, v.shift(k))).collect(),
        }
    }

    /// Multiplicative inverse; the lowest coefficient must be invertible.
    pub fn inverse(&self) -> Result<Self> {
        let (v, lead) = self
            .leading()
            .ok_or_else(|| Error::NonInvertible("series is zero up to its truncation".into()))?;
        let lead_inv = lead.inv()?;
        if self.is_exact() {
            if self.terms.len() == 1 {
                return Ok(Self::term(self.profile, -v, lead_inv));
            }
            return Err(Error::NonInvertible(
                "exact series with several terms needs a truncation before inversion".into(),
            ));
        }
        let rel = self.trunc - v;
        let a: Vec<(i64, &YFraction)> = self
            .terms
            .iter()
            .skip(1)
            .map(|(k, c)| (k - v, c))
            .collect();
        let mut b: BTreeMap<i64, YFraction> = BTreeMap::new();
        b.insert(0, lead_inv.clone());
        let field = self.profile.field();
        for n in 1..=rel {
            let mut s = YFraction::zero(field);
            for (k, ak) in &a {
                if *k > n {
                    break;
                }
                if let Some(bk) = b.get(&(n - k)) {
                    s = &s + &(*ak * bk);
                }
            }
            if !s.is_zero() {
                let bn = -&(&s * &lead_inv);
                b.insert(n, bn.reduced());
            }
        }
        Ok(PuiseuxSeries {
            profile: self.profile,
            trunc: self.trunc - 2 * v,
            terms: b.into_iter().map(|(k, c)| (k - v, c)).collect(),
        })
    }

    pub fn pow(&self, n: i64) -> Result<Self> {
        if n < 0 {
            return self.inverse()?.pow(-n);
        }
        let mut result = Self::one(self.profile);
        let mut base = self.clone();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        Ok(result)
    }

    /// z ↦ z + 1: the y^e coefficient is multiplied by e^{2πie}.
    pub fn z_plus_one(&self) -> Result<Self> {
        let p = self.profile;
        let mut terms = BTreeMap::new();
        for (k, c) in &self.terms {
            let num = phase_laurent(c.numer(), p.ly, p)?;
            let den = phase_laurent(c.denom(), p.ly, p)?;
            terms.insert(*k, YFraction::new(num, den)?);
        }
        Ok(PuiseuxSeries {
            profile: p,
            trunc: self.trunc,
            terms,
        })
    }

    /// τ ↦ τ + 1: the q^f coefficient is multiplied by e^{2πif}.
    pub fn tau_plus_one(&self) -> Result<Self> {
        let p = self.profile;
        let field = p.field();
        let mut terms = BTreeMap::new();
        for (k, c) in &self.terms {
            let phase = Cyclotomic::root_of_unity(field, &p.q_exp(*k)).map_err(|_| {
                Error::profile(format!(
                    "phase of q^({}) not representable in Q(zeta{})",
                    p.q_exp(*k),
                    p.nzeta
                ))
            })?;
            terms.insert(*k, c.scale(&phase));
        }
        Ok(PuiseuxSeries {
            profile: p,
            trunc: self.trunc,
            terms,
        })
    }

    /// z ↦ z + Kτ on Laurent coefficients: y^e q^f ↦ y^e q^{f+Ke}.
    ///
    /// The result window assumes the unknown tail carries y-exponents within
    /// the range already present, so it shrinks by the largest downward shift.
    pub fn z_plus_k_tau(&self, k: i64) -> Result<Self> {
        let p = self.profile;
        let field = p.field();
        let mut out: Vec<(i64, YFraction)> = Vec::new();
        let mut min_shift = 0i64;
        for (f, c) in &self.terms {
            let poly = c.as_laurent().ok_or_else(|| {
                Error::profile("z -> z + K·tau needs Laurent-polynomial coefficients".to_string())
            })?;
            for (e, coeff) in poly.terms() {
                let shift_num = k * e * p.nq as i64;
                if shift_num % p.ly as i64 != 0 {
                    return Err(Error::profile(format!(
                        "shift of y^({}) by {k}·tau not representable with Nq = {}",
                        p.y_exp(e),
                        p.nq
                    )));
                }
                let shift = shift_num / p.ly as i64;
                min_shift = min_shift.min(shift);
                out.push((f + shift, YFraction::monomial(coeff.clone(), e)));
            }
        }
        let trunc = if self.is_exact() {
            EXACT
        } else {
            self.trunc + min_shift
        };
        let _ = field;
        Ok(Self::from_terms(p, trunc, out))
    }

    /// Numerical value at y = e^{2πiz}, q = e^{2πiτ}.
    pub fn eval_complex(&self, z: Complex64, tau: Complex64) -> Evaluation {
        let two_pi_i = Complex64::new(0.0, 2.0 * std::f64::consts::PI);
        let u = (two_pi_i * z / self.profile.ly as f64).exp();
        let q1 = (two_pi_i * tau / self.profile.nq as f64).exp();
        let mut value = Complex64::new(0.0, 0.0);
        let mut last_block = 0.0f64;
        let block_start = self.trunc.saturating_sub(self.profile.nq as i64);
        for (k, c) in &self.terms {
            let t = c.eval_complex(u) * q1.powf(*k as f64);
            value += t;
            if !self.is_exact() && *k > block_start {
                last_block += t.norm();
            }
        }
        let tail_estimate = if self.is_exact() {
            0.0
        } else {
            let q_abs = q1.norm().powi(self.profile.nq as i32);
            last_block * q_abs / (1.0 - q_abs).max(1e-300)
        };
        Evaluation {
            value,
            tail_estimate,
        }
    }

    /// Re-expresses the series in a finer profile.
    pub fn rescale(&self, target: ExponentProfile) -> Result<Self> {
        if self.profile == target {
            return Ok(self.clone());
        }
        if !self.profile.divides(&target) {
            return Err(Error::profile(format!(
                "cannot rescale {:?} to {:?}",
                self.profile, target
            )));
        }
        let my = (target.ly / self.profile.ly) as i64;
        let mq = (target.nq / self.profile.nq) as i64;
        let field = target.field();
        let mut terms = BTreeMap::new();
        for (k, c) in &self.terms {
            terms.insert(k * mq, c.inflate(my).embed(field)?);
        }
        let trunc = if self.is_exact() { EXACT } else { self.trunc * mq };
        Ok(PuiseuxSeries {
            profile: target,
            trunc,
            terms,
        })
    }

    /// First coefficient (up to the common truncation) where the series differ.
    pub fn first_discrepancy(&self, other: &Self) -> Option<Discrepancy> {
        let trunc = self.trunc.min(other.trunc);
        let field = self.profile.field();
        let keys: std::collections::BTreeSet<i64> = self
            .terms
            .range(..=trunc)
            .chain(other.terms.range(..=trunc))
            .map(|(k, _)| *k)
            .collect();
        for k in keys {
            let l = self.terms.get(&k).cloned().unwrap_or_else(|| YFraction::zero(field));
            let r = other.terms.get(&k).cloned().unwrap_or_else(|| YFraction::zero(field));
            if l != r {
                return Some(Discrepancy {
                    q_num: k,
                    left: l,
                    right: r,
                });
            }
        }
        None
    }

    /// Equality on the common truncation window.
    pub fn agrees_with(&self, other: &Self) -> bool {
        self.profile == other.profile && self.first_discrepancy(other).is_none()
    }

    pub fn map_coeffs(&self, f: impl Fn(&YFraction) -> YFraction) -> Self {
        Self::from_terms(
            self.profile,
            self.trunc,
            self.terms.iter().map(|(k, v)| (*k, f(v))),
        )
    }

    /// One line per q-exponent: `q^(f): coefficient`.
    pub fn coefficient_table(&self) -> String {
        let mut out = String::new();
        for (k, c) in &self.terms {
            let _ = writeln!(out, "q^({}): {}", self.profile.q_exp(*k), c.fmt_with(self.profile.ly));
        }
        if !self.is_exact() {
            let _ = writeln!(out, "+ O(q^({}))", self.profile.q_exp(self.trunc + 1));
        }
        out
    }

    pub fn to_json(&self) -> SeriesJson {
        SeriesJson::from(self)
    }
}

/// Multiplies the u^e coefficient by e^{2πi e/ly}, checking representability.
fn phase_laurent(p: &LaurentPoly, ly: u32, profile: ExponentProfile) -> Result<LaurentPoly> {
    let field = profile.field();
    let n = profile.nzeta as i64;
    let terms = p
        .terms()
        .map(|(e, c)| {
            let num = e * n;
            if num % ly as i64 != 0 {
                return Err(Error::profile(format!(
                    "phase of y^({}) not representable in Q(zeta{n})",
                    Rational::new(e, ly as i64)
                )));
            }
            Ok((e, c * &Cyclotomic::zeta_pow(field, num / ly as i64)))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(LaurentPoly::from_terms(field, terms))
}

impl Add for &PuiseuxSeries {
    type Output = PuiseuxSeries;
    fn add(self, rhs: &PuiseuxSeries) -> PuiseuxSeries {
        self.try_add(rhs).expect("series addition")
    }
}

impl Sub for &PuiseuxSeries {
    type Output = PuiseuxSeries;
    fn sub(self, rhs: &PuiseuxSeries) -> PuiseuxSeries {
        self.try_sub(rhs).expect("series subtraction")
    }
}

impl Mul for &PuiseuxSeries {
    type Output = PuiseuxSeries;
    fn mul(self, rhs: &PuiseuxSeries) -> PuiseuxSeries {
        self.try_mul(rhs).expect("series multiplication")
    }
}

impl Neg for &PuiseuxSeries {
    type Output = PuiseuxSeries;
    fn neg(self) -> PuiseuxSeries {
        PuiseuxSeries {
            profile: self.profile,
            trunc: self.trunc,
            terms: self.terms.iter().map(|(k, v)| (*k, -v)).collect(),
        }
    }
}

impl std::fmt::Debug for PuiseuxSeries {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.coefficient_table())
    }
}

/// One Laurent term: [y-exponent numerator, cyclotomic coefficients].
pub type TermJson = (i64, Vec<Rational>);

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CoefficientJson {
    pub q_exp_numerator: i64,
    pub y_numerator: Vec<TermJson>,
    pub y_denominator: Vec<TermJson>,
}

/// JSON form of a series. `truncation` is null for exact series.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SeriesJson {
    pub profile: ExponentProfile,
    pub truncation: Option<i64>,
    pub terms: Vec<CoefficientJson>,
}

fn laurent_json(p: &LaurentPoly) -> Vec<TermJson> {
    p.terms().map(|(e, c)| (e, c.coeffs().to_vec())).collect()
}

impl From<&PuiseuxSeries> for SeriesJson {
    fn from(s: &PuiseuxSeries) -> Self {
        SeriesJson {
            profile: s.profile,
            truncation: (!s.is_exact()).then_some(s.trunc),
            terms: s
                .terms
                .iter()
                .map(|(k, c)| {
                    let c = c.reduced();
                    CoefficientJson {
                        q_exp_numerator: *k,
                        y_numerator: laurent_json(c.numer()),
                        y_denominator: laurent_json(c.denom()),
                    }
                })
                .collect(),
        }
    }
}

impl TryFrom<&SeriesJson> for PuiseuxSeries {
    type Error = Error;

    fn try_from(j: &SeriesJson) -> Result<Self> {
        let profile = ExponentProfile::new(j.profile.ly, j.profile.nq, j.profile.nzeta)?;
        let field = profile.field();
        let poly = |terms: &[TermJson]| -> Result<LaurentPoly> {
            let mut out = Vec::new();
            for (e, coeffs) in terms {
                if coeffs.len() != field.degree() {
                    return Err(Error::validation(format!(
                        "cyclotomic coefficient vector of length {} (expected {})",
                        coeffs.len(),
                        field.degree()
                    )));
                }
                out.push((*e, Cyclotomic::from_coeffs(field, coeffs.clone())));
            }
            Ok(LaurentPoly::from_terms(field, out))
        };
        let trunc = j.truncation.unwrap_or(EXACT);
        let mut terms = Vec::new();
        for c in &j.terms {
            let num = poly(&c.y_numerator)?;
            let den = if c.y_denominator.is_empty() {
                LaurentPoly::one(field)
            } else {
                poly(&c.y_denominator)?
            };
            terms.push((c.q_exp_numerator, YFraction::new(num, den)?));
        }
        Ok(PuiseuxSeries::from_terms(profile, trunc, terms))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p() -> ExponentProfile {
        ExponentProfile::BASE
    }

    fn int(n: i64) -> Cyclotomic {
        Cyclotomic::from_integer(p().field(), n)
    }

    fn mono(c: i64, q: i64, y: i64) -> PuiseuxSeries {
        PuiseuxSeries::monomial(p(), int(c), q, y)
    }

    #[test]
    fn difference_of_squares() {
        let one = PuiseuxSeries::one(p());
        let a = &one + &mono(1, 8, 0);
        let b = &one - &mono(1, 8, 0);
        let prod = &a * &b;
        assert!(prod.agrees_with(&(&one - &mono(1, 16, 0))));
        assert!(prod.is_exact());
    }

    #[test]
    fn half_powers_add() {
        let h = mono(1, 4, 0);
        assert!((&h * &h).agrees_with(&mono(1, 8, 0)));
    }

    #[test]
    fn multiply_by_zero() {
        let s = (&PuiseuxSeries::one(p()) + &mono(3, 8, 2)).truncate(40);
        let z = PuiseuxSeries::zero(p(), 40);
        assert!((&s * &z).is_zero());
    }

    #[test]
    fn geometric_inverse() {
        let s = (&PuiseuxSeries::one(p()) - &mono(1, 8, 0)).truncate(40);
        let inv = s.inverse().unwrap();
        assert_eq!(inv.truncation(), 40);
        for k in 0..=5 {
            assert!(inv.coeff(8 * k).unwrap().is_one());
        }
        assert!((&s * &inv).agrees_with(&PuiseuxSeries::one(p())));
    }

    #[test]
    fn inverse_of_sine_factor_is_a_fraction() {
        let s = &mono(1, 0, -1) - &mono(1, 0, 1);
        let inv = s.inverse().unwrap();
        assert!(inv.is_exact());
        assert!((&s * &inv).agrees_with(&PuiseuxSeries::one(p())));
    }

    #[test]
    fn inverse_of_zero_fails() {
        assert!(PuiseuxSeries::zero(p(), 16).inverse().is_err());
    }

    #[test]
    fn inversion_tracks_valuation() {
        // q^{1/2}(1 - q) known to q^3
        let s = (&mono(1, 4, 0) - &mono(1, 12, 0)).truncate(24);
        let inv = s.inverse().unwrap();
        assert_eq!(inv.valuation(), Some(-4));
        assert_eq!(inv.truncation(), 24 - 8);
        assert!((&s * &inv).agrees_with(&PuiseuxSeries::one(p()).truncate(20)));
    }

    #[test]
    fn z_plus_one_phases() {
        let s = mono(1, 0, 1); // y^{1/2}
        let t = s.z_plus_one().unwrap();
        assert!(t.agrees_with(&mono(-1, 0, 1)));
        let integral = (&mono(2, 0, 2) + &mono(5, 8, -4)).truncate(16);
        assert!(integral.z_plus_one().unwrap().agrees_with(&integral));
    }

    #[test]
    fn z_plus_tau_on_symmetric_polynomial() {
        let s = &mono(1, 0, -2) + &mono(1, 0, 2);
        let t = s.z_plus_k_tau(1).unwrap();
        assert!(t.agrees_with(&(&mono(1, -8, -2) + &mono(1, 8, 2))));
    }

    #[test]
    fn tau_plus_one_on_integral_q_series() {
        let s = (&mono(1, 0, 0) + &mono(7, 8, 2)).truncate(24);
        assert!(s.tau_plus_one().unwrap().agrees_with(&s));
        let half = mono(1, 4, 0);
        assert!(half.tau_plus_one().unwrap().agrees_with(&mono(-1, 4, 0)));
    }

    #[test]
    fn complex_evaluation() {
        let tau = Complex64::new(0.0, 1.0);
        let z = Complex64::new(0.5, 0.0);
        let one = PuiseuxSeries::one(p()).eval_complex(z, tau);
        assert!((one.value - 1.0).norm() < 1e-15);
        let q = mono(1, 8, 0).eval_complex(z, tau);
        assert!((q.value.re - 0.001_867_442_731_707_988_8).abs() < 1e-15);
        let y = mono(1, 0, 2).eval_complex(z, tau);
        assert!((y.value + 1.0).norm() < 1e-14);
    }

    #[test]
    fn json_round_trip() {
        let s = (&mono(3, 4, -1) + &mono(-2, 8, 3)).truncate(30);
        let j = s.to_json();
        let back = PuiseuxSeries::try_from(&j).unwrap();
        assert_eq!(back.truncation(), 30);
        assert!(back.agrees_with(&s));
    }

    #[test]
    fn rescale_to_finer_profile() {
        let s = mono(1, 4, 1);
        let fine = ExponentProfile::new(4, 16, 8).unwrap();
        let r = s.rescale(fine).unwrap();
        assert!(r.agrees_with(&PuiseuxSeries::monomial(
            fine,
            Cyclotomic::one(fine.field()),
            8,
            2
        )));
    }
}
