//! Exact arithmetic in the cyclotomic field Q(ζ_N).
//!
//! Elements are stored as coefficient vectors in the power basis
//! 1, ζ, …, ζ^{φ(N)−1}, reduced modulo the N-th cyclotomic polynomial.
//! Field descriptions are built once per order and shared as `&'static`
//! references, so elements are cheap to move around.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Mutex, OnceLock};

use num_complex::Complex64;

use super::rational::Rational;
use crate::error::{Error, Result};

pub struct CyclotomicField {
    order: u32,
    degree: usize,
    /// Φ_N, monic, lowest coefficient first.
    phi: Vec<i64>,
    /// ζ^k reduced modulo Φ_N, for k in 0..N.
    powers: Vec<Vec<i64>>,
}

impl fmt::Debug for CyclotomicField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q(zeta{})", self.order)
    }
}

impl CyclotomicField {
    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn minimal_polynomial(&self) -> &[i64] {
        &self.phi
    }

    fn build(order: u32) -> Self {
        let phi = cyclotomic_poly(order);
        let degree = phi.len() - 1;
        let mut powers = Vec::with_capacity(order as usize);
        let mut cur = vec![0i64; degree];
        cur[0] = 1;
        if degree == 0 {
            // Only possible for order 0, which is rejected upstream.
            unreachable!()
        }
        for _ in 0..order {
            powers.push(cur.clone());
            // multiply by x and reduce the overflow coefficient
            let top = cur[degree - 1];
            for i in (1..degree).rev() {
                cur[i] = cur[i - 1];
            }
            cur[0] = 0;
            if top != 0 {
                for i in 0..degree {
                    cur[i] -= top * phi[i];
                }
            }
        }
        CyclotomicField {
            order,
            degree,
            phi,
            powers,
        }
    }
}

/// Integer coefficients of Φ_n, obtained by dividing x^n − 1 by Φ_d for
/// every proper divisor d of n.
pub fn cyclotomic_poly(n: u32) -> Vec<i64> {
    assert!(n >= 1, "cyclotomic order must be positive");
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in 1..n {
        if n % d == 0 {
            num = exact_div_int(&num, &cyclotomic_poly(d));
        }
    }
    num
}

fn exact_div_int(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dn = den.len() - 1;
    assert_eq!(den[dn], 1);
    let qlen = rem.len() - dn;
    let mut quot = vec![0i64; qlen];
    for k in (0..qlen).rev() {
        let c = rem[k + dn];
        quot[k] = c;
        if c != 0 {
            for (i, d) in den.iter().enumerate() {
                rem[k + i] -= c * d;
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    quot
}

/// Shared field description for Q(ζ_n).
pub fn cyclotomic_field(n: u32) -> &'static CyclotomicField {
    static FIELDS: OnceLock<Mutex<HashMap<u32, &'static CyclotomicField>>> = OnceLock::new();
    assert!(n >= 1, "cyclotomic order must be positive");
    let map = FIELDS.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(f) = map.lock().unwrap().get(&n) {
        return f;
    }
    let built: &'static CyclotomicField = Box::leak(Box::new(CyclotomicField::build(n)));
    *map.lock().unwrap().entry(n).or_insert(built)
}

/// Element of Q(ζ_N).
#[derive(Clone)]
pub struct Cyclotomic {
    field: &'static CyclotomicField,
    coeffs: Vec<Rational>,
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        self.field.order == other.field.order && self.coeffs == other.coeffs
    }
}

impl Eq for Cyclotomic {}

impl Cyclotomic {
    pub fn zero(field: &'static CyclotomicField) -> Self {
        Cyclotomic {
            field,
            coeffs: vec![Rational::zero(); field.degree],
        }
    }

    pub fn one(field: &'static CyclotomicField) -> Self {
        Self::from_rational(field, Rational::one())
    }

    pub fn from_rational(field: &'static CyclotomicField, r: Rational) -> Self {
        let mut c = Self::zero(field);
        c.coeffs[0] = r;
        c
    }

    pub fn from_integer(field: &'static CyclotomicField, n: i64) -> Self {
        Self::from_rational(field, Rational::from_integer(n))
    }

    /// Builds an element from coefficients of ζ^0, ζ^1, … of any length,
    /// reducing modulo Φ_N.
    pub fn from_coeffs(field: &'static CyclotomicField, coeffs: Vec<Rational>) -> Self {
        let mut out = Self::zero(field);
        for (k, c) in coeffs.into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            out.add_scaled_power(k, &c);
        }
        out
    }

    /// e^{2πi a}; the denominator of `a` must divide the field order.
    pub fn root_of_unity(field: &'static CyclotomicField, a: &Rational) -> Result<Self> {
        let k = root_index(field.order, a)?;
        let coeffs = field.powers[k]
            .iter()
            .map(|&c| Rational::from_integer(c))
            .collect();
        Ok(Cyclotomic { field, coeffs })
    }

    /// ζ_N^k for an integer k.
    pub fn zeta_pow(field: &'static CyclotomicField, k: i64) -> Self {
        let n = field.order as i64;
        let idx = k.rem_euclid(n) as usize;
        Cyclotomic {
            field,
            coeffs: field.powers[idx]
                .iter()
                .map(|&c| Rational::from_integer(c))
                .collect(),
        }
    }

    pub fn field(&self) -> &'static CyclotomicField {
        self.field
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Rational::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Rational::is_zero)
    }

    /// Returns the value if the element lies in Q.
    pub fn as_rational(&self) -> Option<&Rational> {
        if self.coeffs[1..].iter().all(Rational::is_zero) {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    fn add_scaled_power(&mut self, k: usize, c: &Rational) {
        let n = self.field.order as usize;
        let pw = &self.field.powers[k % n];
        for (dst, &p) in self.coeffs.iter_mut().zip(pw) {
            match p {
                0 => {}
                1 => *dst += c,
                -1 => *dst -= c,
                _ => *dst += &(c * &Rational::from_integer(p)),
            }
        }
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Cyclotomic {
            field: self.field,
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    pub fn inv(&self) -> Option<Self> {
        if let Some(r) = self.as_rational() {
            if r.is_zero() {
                return None;
            }
            return Some(Self::from_rational(self.field, r.recip()));
        }
        let a = trim(self.coeffs.clone());
        let m: Vec<Rational> = self
            .field
            .phi
            .iter()
            .map(|&c| Rational::from_integer(c))
            .collect();
        let s = inverse_mod(&a, &m)?;
        Some(Self::from_coeffs(self.field, s))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut result = Self::one(self.field);
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

    /// Image of ζ_N ↦ ζ_M^{M/N} in Q(ζ_M); requires N | M.
    pub fn embed(&self, target: &'static CyclotomicField) -> Result<Self> {
        let (n, m) = (self.field.order, target.order);
        if m % n != 0 {
            return Err(Error::profile(format!(
                "cannot embed Q(zeta{n}) into Q(zeta{m})"
            )));
        }
        let step = (m / n) as usize;
        let mut out = Self::zero(target);
        for (k, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                out.add_scaled_power(k * step, c);
            }
        }
        Ok(out)
    }

    pub fn to_complex(&self) -> Complex64 {
        let n = self.field.order as f64;
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| {
                let ang = 2.0 * std::f64::consts::PI * k as f64 / n;
                Complex64::from_polar(c.to_f64(), ang)
            })
            .sum()
    }

    fn assert_same_field(&self, other: &Self) {
        assert_eq!(
            self.field.order, other.field.order,
            "cyclotomic order mismatch"
        );
    }
}

/// Index k with e^{2πi a} = ζ_N^k.
pub fn root_index(order: u32, a: &Rational) -> Result<usize> {
    let scaled = a * &Rational::from_integer(order as i64);
    let k = scaled.to_i64().ok_or_else(|| {
        Error::profile(format!(
            "root of unity exp(2πi·{a}) is not representable in Q(zeta{order})"
        ))
    })?;
    Ok(k.rem_euclid(order as i64) as usize)
}

fn trim(mut v: Vec<Rational>) -> Vec<Rational> {
    while v.last().is_some_and(Rational::is_zero) {
        v.pop();
    }
    v
}

/// Quotient and remainder of dense rational polynomials.
fn divrem(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let b = trim(b.to_vec());
    let mut r = trim(a.to_vec());
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let lead_inv = b.last().expect("division by zero polynomial").recip();
    let mut q = vec![Rational::zero(); r.len() - b.len() + 1];
    while r.len() >= b.len() && !r.is_empty() {
        let shift = r.len() - b.len();
        let c = r.last().unwrap() * &lead_inv;
        for (i, bi) in b.iter().enumerate() {
            let t = &c * bi;
            r[shift + i] -= &t;
        }
        q[shift] = c;
        r = trim(r);
    }
    (q, r)
}

fn poly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += &(x * y);
        }
    }
    out
}

fn poly_sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let n = a.len().max(b.len());
    let mut out = vec![Rational::zero(); n];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    trim(out)
}

/// s with s·a ≡ 1 (mod m), by the extended Euclidean algorithm.
fn inverse_mod(a: &[Rational], m: &[Rational]) -> Option<Vec<Rational>> {
    let (mut r0, mut r1) = (trim(m.to_vec()), trim(a.to_vec()));
    let (mut s0, mut s1): (Vec<Rational>, Vec<Rational>) = (Vec::new(), vec![Rational::one()]);
    while !r1.is_empty() {
        let (q, r) = divrem(&r0, &r1);
        let s2 = poly_sub(&s0, &poly_mul(&q, &s1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
    }
    if r0.len() != 1 {
        return None;
    }
    let c = r0[0].recip();
    Some(s0.into_iter().map(|x| x * &c).collect())
}

impl Add for &Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.assert_same_field(rhs);
        Cyclotomic {
            field: self.field,
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.assert_same_field(rhs);
        Cyclotomic {
            field: self.field,
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Mul for &Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.assert_same_field(rhs);
        if let Some(r) = self.as_rational() {
            return rhs.scale(r);
        }
        if let Some(r) = rhs.as_rational() {
            return self.scale(r);
        }
        let d = self.field.degree;
        let mut wide = vec![Rational::zero(); 2 * d - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    wide[i + j] += &(a * b);
                }
            }
        }
        let mut out = Cyclotomic {
            field: self.field,
            coeffs: wide[..d].to_vec(),
        };
        for (k, c) in wide.iter().enumerate().skip(d) {
            if !c.is_zero() {
                out.add_scaled_power(k, c);
            }
        }
        out
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic {
            field: self.field,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Add for Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: Cyclotomic) -> Cyclotomic {
        &self + &rhs
    }
}

impl Sub for Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: Cyclotomic) -> Cyclotomic {
        &self - &rhs
    }
}

impl Mul for Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: Cyclotomic) -> Cyclotomic {
        &self * &rhs
    }
}

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        -&self
    }
}

/// Renders as a sum of `c*zetaN^k` terms, or a plain rational.
impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(r) = self.as_rational() {
            return write!(f, "{r}");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (neg, mag) = if c.is_negative() { (true, -c) } else { (false, c.clone()) };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            first = false;
            match (k, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (_, true) => write!(f, "zeta{}^{k}", self.field.order)?,
                (_, false) => write!(f, "{mag}*zeta{}^{k}", self.field.order)?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyclotomic({self})")
    }
}
