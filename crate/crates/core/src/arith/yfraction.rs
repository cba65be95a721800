//! Rational functions in u = y^{1/Ly} over a cyclotomic field.

use std::fmt::Write as _;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::atomic::{AtomicUsize, Ordering};

use num_complex::Complex64;

use super::cyclotomic::{Cyclotomic, CyclotomicField};
use super::laurent::{poly_divrem, poly_gcd, LaurentPoly};
use super::rational::Rational;
use crate::error::{Error, Result};

static REDUCE_BOUND: AtomicUsize = AtomicUsize::new(12);

/// Sets the combined numerator/denominator span above which fractions are
/// gcd-reduced eagerly after arithmetic. Zero means always reduce.
pub fn set_reduce_bound(bound: usize) {
    REDUCE_BOUND.store(bound, Ordering::Relaxed);
}

pub fn reduce_bound() -> usize {
    REDUCE_BOUND.load(Ordering::Relaxed)
}

/// `num / den` where `den` is an ordinary polynomial with constant term 1.
/// A denominator of 1 means the value is a Laurent polynomial.
#[derive(Clone)]
pub struct YFraction {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl YFraction {
    pub fn zero(field: &'static CyclotomicField) -> Self {
        YFraction {
            num: LaurentPoly::zero(field),
            den: LaurentPoly::one(field),
        }
    }

    pub fn one(field: &'static CyclotomicField) -> Self {
        Self::from_poly(LaurentPoly::one(field))
    }

    pub fn from_poly(num: LaurentPoly) -> Self {
        let den = LaurentPoly::one(num.field());
        YFraction { num, den }
    }

    pub fn constant(c: Cyclotomic) -> Self {
        Self::from_poly(LaurentPoly::constant(c))
    }

    pub fn monomial(c: Cyclotomic, exp: i64) -> Self {
        Self::from_poly(LaurentPoly::monomial(c, exp))
    }

    pub fn from_rational(field: &'static CyclotomicField, r: Rational) -> Self {
        Self::constant(Cyclotomic::from_rational(field, r))
    }

    /// Builds `num / den`, normalizing the denominator.
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::NonInvertible("zero denominator".into()));
        }
        let mut f = Self::normalize(num, den);
        f.reduce();
        Ok(f)
    }

    fn normalize(num: LaurentPoly, den: LaurentPoly) -> Self {
        let shift = -den.low();
        let (mut num, mut den) = (num.shift(shift), den.shift(shift));
        let c = den.trailing().expect("nonzero denominator").clone();
        if !c.is_one() {
            let inv = c.inv().expect("nonzero trailing coefficient");
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        YFraction { num, den }
    }

    pub fn field(&self) -> &'static CyclotomicField {
        self.num.field()
    }

    pub fn numer(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn denom(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num.is_one() || (!self.is_zero() && self.num == self.den)
    }

    /// The value as a Laurent polynomial, if it is one.
    pub fn as_laurent(&self) -> Option<LaurentPoly> {
        if self.den.is_one() {
            return Some(self.num.clone());
        }
        let r = self.reduced();
        r.den.is_one().then_some(r.num)
    }

    pub fn is_polynomial(&self) -> bool {
        self.as_laurent().is_some()
    }

    /// Cancels the polynomial gcd of numerator and denominator.
    pub fn reduce(&mut self) {
        if self.den.is_one() {
            return;
        }
        if self.num.is_zero() {
            self.den = LaurentPoly::one(self.field());
            return;
        }
        let field = self.field();
        let g = poly_gcd(field, self.num.dense(), self.den.dense());
        if g.len() <= 1 {
            return;
        }
        let (qn, rn) = poly_divrem(field, self.num.dense(), &g);
        let (qd, rd) = poly_divrem(field, self.den.dense(), &g);
        debug_assert!(rn.is_empty() && rd.is_empty());
        let num = LaurentPoly::from_dense(field, self.num.low(), qn);
        let den = LaurentPoly::from_dense(field, 0, qd);
        *self = Self::normalize(num, den);
    }

    pub fn reduced(&self) -> Self {
        let mut r = self.clone();
        r.reduce();
        r
    }

    fn maybe_reduce(mut self) -> Self {
        if !self.den.is_one() && self.num.span() + self.den.span() > reduce_bound() {
            self.reduce();
        }
        self
    }

    pub fn inv(&self) -> Result<Self> {
        if self.num.is_zero() {
            return Err(Error::NonInvertible("zero rational function".into()));
        }
        let mut f = Self::normalize(self.den.clone(), self.num.clone());
        if f.num.span() + f.den.span() > reduce_bound() {
            f.reduce();
        }
        Ok(f)
    }

    pub fn scale(&self, c: &Cyclotomic) -> Self {
        YFraction {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn scale_rational(&self, r: &Rational) -> Self {
        YFraction {
            num: self.num.scale_rational(r),
            den: self.den.clone(),
        }
    }

    /// Multiplies by u^k.
    pub fn shift(&self, k: i64) -> Self {
        YFraction {
            num: self.num.shift(k),
            den: self.den.clone(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut result = Self::one(self.field());
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Substitutes u ↦ ζ_N^k·u.
    pub fn twist(&self, k: i64) -> Self {
        YFraction {
            num: self.num.twist(k),
            den: self.den.twist(k),
        }
    }

    /// Substitutes u ↦ u^m.
    pub fn inflate(&self, m: i64) -> Self {
        YFraction {
            num: self.num.inflate(m),
            den: self.den.inflate(m),
        }
    }

    pub fn embed(&self, target: &'static CyclotomicField) -> Result<Self> {
        Ok(YFraction {
            num: self.num.embed(target)?,
            den: self.den.embed(target)?,
        })
    }

    pub fn eval_complex(&self, u: Complex64) -> Complex64 {
        self.num.eval_complex(u) / self.den.eval_complex(u)
    }

    /// Exact value at u = ζ_N^k.
    pub fn eval_at_root(&self, k: i64) -> Result<Cyclotomic> {
        let r = self.reduced();
        let d = r.den.eval_at_root(k);
        let inv = d.inv().ok_or_else(|| {
            Error::NonInvertible(format!("pole at u = zeta{}^{k}", self.field().order()))
        })?;
        Ok(&r.num.eval_at_root(k) * &inv)
    }

    /// Human-readable form with exponents of y (u = y^{1/ly}).
    pub fn fmt_with(&self, ly: u32) -> String {
        let r = self.reduced();
        let num = fmt_laurent(&r.num, ly);
        if r.den.is_one() {
            num
        } else {
            format!("({num})/({})", fmt_laurent(&r.den, ly))
        }
    }
}

pub(crate) fn fmt_laurent(p: &LaurentPoly, ly: u32) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, (e, c)) in p.terms().enumerate() {
        let exp = Rational::new(e, ly as i64);
        let coeff = match c.as_rational() {
            Some(r) => r.to_string(),
            None => format!("({c})"),
        };
        if i > 0 {
            out.push_str(" + ");
        }
        if exp.is_zero() {
            out.push_str(&coeff);
        } else {
            let cpart = match coeff.as_str() {
                "1" => String::new(),
                "-1" => "-".into(),
                _ => format!("{coeff}*"),
            };
            if exp.is_one() {
                let _ = write!(out, "{cpart}y");
            } else {
                let _ = write!(out, "{cpart}y^({exp})");
            }
        }
    }
    out
}

impl PartialEq for YFraction {
    fn eq(&self, other: &Self) -> bool {
        if self.den == other.den {
            return self.num == other.num;
        }
        &self.num * &other.den == &other.num * &self.den
    }
}

impl Eq for YFraction {}

impl Add for &YFraction {
    type Output = YFraction;
    fn add(self, rhs: &YFraction) -> YFraction {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return YFraction {
                num: &self.num + &rhs.num,
                den: self.den.clone(),
            }
            .maybe_reduce();
        }
        YFraction {
            num: &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            den: &self.den * &rhs.den,
        }
        .maybe_reduce()
    }
}

impl Neg for &YFraction {
    type Output = YFraction;
    fn neg(self) -> YFraction {
        YFraction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Sub for &YFraction {
    type Output = YFraction;
    fn sub(self, rhs: &YFraction) -> YFraction {
        self + &(-rhs)
    }
}

impl Mul for &YFraction {
    type Output = YFraction;
    fn mul(self, rhs: &YFraction) -> YFraction {
        if self.is_zero() || rhs.is_zero() {
            return YFraction::zero(self.field());
        }
        if rhs.den.is_one() && self.den.is_one() {
            return YFraction::from_poly(&self.num * &rhs.num);
        }
        YFraction {
            num: &self.num * &rhs.num,
            den: &self.den * &rhs.den,
        }
        .maybe_reduce()
    }
}

impl std::fmt::Debug for YFraction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({:?})/({:?})", self.num, self.den)
    }
}
