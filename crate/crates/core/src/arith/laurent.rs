//! Laurent polynomials in u = y^{1/Ly} with cyclotomic coefficients.

use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use super::cyclotomic::{Cyclotomic, CyclotomicField};
use super::rational::Rational;
use crate::error::Result;

/// Dense Laurent polynomial: `coeffs[i]` is the coefficient of u^{low+i}.
/// Zero is the empty vector; otherwise both end coefficients are nonzero.
#[derive(Clone)]
pub struct LaurentPoly {
    field: &'static CyclotomicField,
    low: i64,
    coeffs: Vec<Cyclotomic>,
}

impl PartialEq for LaurentPoly {
    fn eq(&self, other: &Self) -> bool {
        self.low == other.low && self.coeffs == other.coeffs
    }
}

impl Eq for LaurentPoly {}

impl LaurentPoly {
    pub fn zero(field: &'static CyclotomicField) -> Self {
        LaurentPoly {
            field,
            low: 0,
            coeffs: Vec::new(),
        }
    }

    pub fn one(field: &'static CyclotomicField) -> Self {
        Self::monomial(Cyclotomic::one(field), 0)
    }

    pub fn constant(c: Cyclotomic) -> Self {
        Self::monomial(c, 0)
    }

    pub fn monomial(c: Cyclotomic, exp: i64) -> Self {
        let field = c.field();
        if c.is_zero() {
            return Self::zero(field);
        }
        LaurentPoly {
            field,
            low: exp,
            coeffs: vec![c],
        }
    }

    /// Builds from (exponent, coefficient) pairs; repeated exponents add up.
    pub fn from_terms(
        field: &'static CyclotomicField,
        terms: impl IntoIterator<Item = (i64, Cyclotomic)>,
    ) -> Self {
        let terms: Vec<(i64, Cyclotomic)> = terms.into_iter().collect();
        if terms.is_empty() {
            return Self::zero(field);
        }
        let low = terms.iter().map(|t| t.0).min().unwrap();
        let high = terms.iter().map(|t| t.0).max().unwrap();
        let mut coeffs = vec![Cyclotomic::zero(field); (high - low + 1) as usize];
        for (e, c) in terms {
            let slot = &mut coeffs[(e - low) as usize];
            *slot = &*slot + &c;
        }
        Self::normalized(field, low, coeffs)
    }

    fn normalized(field: &'static CyclotomicField, low: i64, mut coeffs: Vec<Cyclotomic>) -> Self {
        while coeffs.last().is_some_and(Cyclotomic::is_zero) {
            coeffs.pop();
        }
        let lead = coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead == coeffs.len() {
            return Self::zero(field);
        }
        coeffs.drain(..lead);
        LaurentPoly {
            field,
            low: low + lead as i64,
            coeffs,
        }
    }

    pub fn field(&self) -> &'static CyclotomicField {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.low == 0 && self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Lowest exponent present (0 for the zero polynomial).
    pub fn low(&self) -> i64 {
        self.low
    }

    /// Highest exponent present (−1 below `low` for the zero polynomial).
    pub fn high(&self) -> i64 {
        self.low + self.coeffs.len() as i64 - 1
    }

    /// Number of stored coefficient slots.
    pub fn span(&self) -> usize {
        self.coeffs.len()
    }

    pub fn as_monomial(&self) -> Option<(i64, &Cyclotomic)> {
        if self.coeffs.len() == 1 {
            Some((self.low, &self.coeffs[0]))
        } else {
            None
        }
    }

    pub fn as_constant(&self) -> Option<&Cyclotomic> {
        match self.as_monomial() {
            Some((0, c)) => Some(c),
            _ => None,
        }
    }

    pub fn coeff(&self, exp: i64) -> Option<&Cyclotomic> {
        let i = exp - self.low;
        if i < 0 {
            return None;
        }
        self.coeffs.get(i as usize).filter(|c| !c.is_zero())
    }

    /// Nonzero terms in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &Cyclotomic)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.low + i as i64, c))
    }

    pub fn leading(&self) -> Option<&Cyclotomic> {
        self.coeffs.last()
    }

    pub fn trailing(&self) -> Option<&Cyclotomic> {
        self.coeffs.first()
    }

    /// Multiplies by u^k.
    pub fn shift(&self, k: i64) -> Self {
        let mut out = self.clone();
        if !out.is_zero() {
            out.low += k;
        }
        out
    }

    pub fn scale(&self, c: &Cyclotomic) -> Self {
        if c.is_zero() {
            return Self::zero(self.field);
        }
        LaurentPoly {
            field: self.field,
            low: self.low,
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    pub fn scale_rational(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return Self::zero(self.field);
        }
        LaurentPoly {
            field: self.field,
            low: self.low,
            coeffs: self.coeffs.iter().map(|x| x.scale(r)).collect(),
        }
    }

    /// Substitutes u ↦ ζ_N^k·u, i.e. multiplies the u^e coefficient by ζ_N^{ke}.
    pub fn twist(&self, k: i64) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| {
                if c.is_zero() {
                    c.clone()
                } else {
                    c * &Cyclotomic::zeta_pow(self.field, k * (self.low + i as i64))
                }
            })
            .collect();
        LaurentPoly {
            field: self.field,
            low: self.low,
            coeffs,
        }
    }

    /// Substitutes u ↦ u^m.
    pub fn inflate(&self, m: i64) -> Self {
        assert!(m >= 1);
        Self::from_terms(self.field, self.terms().map(|(e, c)| (e * m, c.clone())))
    }

    pub fn embed(&self, target: &'static CyclotomicField) -> Result<Self> {
        let terms = self
            .terms()
            .map(|(e, c)| Ok((e, c.embed(target)?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_terms(target, terms))
    }

    pub fn eval_complex(&self, u: Complex64) -> Complex64 {
        self.terms()
            .map(|(e, c)| c.to_complex() * u.powi(e as i32))
            .sum()
    }

    /// Value at u = ζ_N^k.
    pub fn eval_at_root(&self, k: i64) -> Cyclotomic {
        let mut acc = Cyclotomic::zero(self.field);
        for (e, c) in self.terms() {
            acc = &acc + &(c * &Cyclotomic::zeta_pow(self.field, k * e));
        }
        acc
    }

    /// Coefficient vector of u^{-low}·self, i.e. as an ordinary polynomial.
    pub(crate) fn dense(&self) -> &[Cyclotomic] {
        &self.coeffs
    }

    pub(crate) fn from_dense(field: &'static CyclotomicField, low: i64, coeffs: Vec<Cyclotomic>) -> Self {
        Self::normalized(field, low, coeffs)
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let low = self.low.min(rhs.low);
        let high = self.high().max(rhs.high());
        let mut coeffs = vec![Cyclotomic::zero(self.field); (high - low + 1) as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[(self.low - low) as usize + i] = c.clone();
        }
        for (i, c) in rhs.coeffs.iter().enumerate() {
            let slot = &mut coeffs[(rhs.low - low) as usize + i];
            *slot = &*slot + c;
        }
        LaurentPoly::normalized(self.field, low, coeffs)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            field: self.field,
            low: self.low,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &(-rhs)
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero(self.field);
        }
        if let Some((e, c)) = rhs.as_monomial() {
            return self.scale(c).shift(e);
        }
        if let Some((e, c)) = self.as_monomial() {
            return rhs.scale(c).shift(e);
        }
        let mut coeffs = vec![Cyclotomic::zero(self.field); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let slot = &mut coeffs[i + j];
                *slot = &*slot + &(a * b);
            }
        }
        LaurentPoly::normalized(self.field, self.low + rhs.low, coeffs)
    }
}

impl std::fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms().map(|(e, c)| format!("({c})u^{e}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Quotient and remainder of ordinary polynomials (dense, lowest first).
pub(crate) fn poly_divrem(
    field: &'static CyclotomicField,
    a: &[Cyclotomic],
    b: &[Cyclotomic],
) -> (Vec<Cyclotomic>, Vec<Cyclotomic>) {
    let mut r: Vec<Cyclotomic> = a.to_vec();
    trim(&mut r);
    let mut b = b.to_vec();
    trim(&mut b);
    assert!(!b.is_empty(), "polynomial division by zero");
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let lead_inv = b.last().unwrap().inv().expect("nonzero leading coefficient");
    let mut q = vec![Cyclotomic::zero(field); r.len() - b.len() + 1];
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let c = r.last().unwrap() * &lead_inv;
        for (i, bi) in b.iter().enumerate() {
            if !bi.is_zero() {
                r[shift + i] = &r[shift + i] - &(&c * bi);
            }
        }
        q[shift] = c;
        r.pop();
        trim(&mut r);
        if r.is_empty() {
            break;
        }
    }
    (q, r)
}

/// Monic gcd of ordinary polynomials over the cyclotomic field.
pub(crate) fn poly_gcd(
    field: &'static CyclotomicField,
    a: &[Cyclotomic],
    b: &[Cyclotomic],
) -> Vec<Cyclotomic> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        make_monic(&mut y);
        let (_, r) = poly_divrem(field, &x, &y);
        x = std::mem::replace(&mut y, r);
    }
    make_monic(&mut x);
    x
}

fn make_monic(p: &mut [Cyclotomic]) {
    if let Some(lead) = p.last() {
        if !lead.is_one() {
            let inv = lead.inv().expect("nonzero leading coefficient");
            for c in p.iter_mut() {
                *c = &*c * &inv;
            }
        }
    }
}

fn trim(p: &mut Vec<Cyclotomic>) {
    while p.last().is_some_and(Cyclotomic::is_zero) {
        p.pop();
    }
}
