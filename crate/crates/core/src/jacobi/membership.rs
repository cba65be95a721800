use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num::{BigInt, Integer, One, Signed, Zero};
use serde::Serialize;

use super::generators::{generator_expansion, JacobiGenerator};
use crate::arith::{ExponentProfile, PuiseuxSeries, Rational};
use crate::error::{Error, Result};
use crate::genus::{Convention, GenusResult};

/// E4^a E6^b phiM21^c phi01^e phiM1half^f phi03half^g with f, g ∈ {0, 1}.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct JacobiMonomial {
    pub a: u32,
    pub b: u32,
    pub c: u32,
    pub e: u32,
    pub f: u32,
    pub g: u32,
}

impl JacobiMonomial {
    pub fn weight(&self) -> i64 {
        4 * self.a as i64 + 6 * self.b as i64 - 2 * self.c as i64 - self.f as i64
    }

    pub fn index(&self) -> Rational {
        Rational::new(
            2 * (self.c + self.e) as i64 + self.f as i64 + 3 * self.g as i64,
            2,
        )
    }

    pub fn key(&self) -> String {
        let mut s = format!(
            "E4^{} E6^{} phiM21^{} phi01^{} phiM1half^{}",
            self.a, self.b, self.c, self.e, self.f
        );
        if self.g > 0 {
            s.push_str(&format!(" phi03half^{}", self.g));
        }
        s
    }

    pub fn expansion(&self, profile: ExponentProfile, trunc: i64) -> Result<PuiseuxSeries> {
        let mut acc = PuiseuxSeries::one(profile).truncate(trunc);
        for (gen, k) in [
            (JacobiGenerator::E4, self.a),
            (JacobiGenerator::E6, self.b),
            (JacobiGenerator::PhiM21, self.c),
            (JacobiGenerator::Phi01, self.e),
            (JacobiGenerator::PhiM1Half, self.f),
            (JacobiGenerator::Phi03Half, self.g),
        ] {
            if k > 0 {
                acc = acc.try_mul(&generator_expansion(gen, profile, trunc)?.pow(k as i64)?)?;
            }
        }
        Ok(acc)
    }
}

impl fmt::Display for JacobiMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.key())
    }
}

/// All monomials of the given weight and index.
pub fn basis_monomials(weight: i64, index: &Rational) -> Result<Vec<JacobiMonomial>> {
    let twice = (index * Rational::from_integer(2))
        .to_i64()
        .filter(|t| *t >= 0)
        .ok_or_else(|| Error::validation(format!("index {index} is not a nonnegative half-integer")))?;
    let mut out = Vec::new();
    for f in 0..=1u32 {
        for g in 0..=1u32 {
            let rest = twice - f as i64 - 3 * g as i64;
            if rest < 0 || rest % 2 != 0 {
                continue;
            }
            let ce = rest / 2;
            for c in 0..=ce {
                let e = ce - c;
                // 4a + 6b = weight + 2c + f
                let target = weight + 2 * c + f as i64;
                if target < 0 {
                    continue;
                }
                for b in 0..=target / 6 {
                    let r = target - 6 * b;
                    if r % 4 == 0 {
                        out.push(JacobiMonomial {
                            a: (r / 4) as u32,
                            b: b as u32,
                            c: c as u32,
                            e: e as u32,
                            f,
                            g,
                        });
                    }
                }
            }
        }
    }
    out.sort();
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct MembershipOptions {
    /// Require at least `factor·n + extra` compared coefficients for n monomials.
    pub margin_factor: usize,
    pub margin_extra: usize,
    pub max_index: Rational,
}

impl Default for MembershipOptions {
    fn default() -> Self {
        MembershipOptions {
            margin_factor: 2,
            margin_extra: 5,
            max_index: Rational::from_integer(6),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct MembershipReport {
    pub success: bool,
    pub weight: i64,
    pub index: Rational,
    pub coordinates: BTreeMap<String, Rational>,
    pub residual: Option<String>,
    pub compared: usize,
    pub monomials: usize,
}

impl MembershipReport {
    pub fn coordinate(&self, m: &JacobiMonomial) -> Rational {
        self.coordinates.get(&m.key()).cloned().unwrap_or_else(Rational::zero)
    }
}

pub fn membership(r: &GenusResult) -> Result<MembershipReport> {
    membership_with(r, &MembershipOptions::default())
}

type Position = (i64, i64);

fn rational_grid(s: &PuiseuxSeries) -> std::result::Result<BTreeMap<Position, Rational>, i64> {
    let mut out = BTreeMap::new();
    for (q, c) in s.terms() {
        let poly = c.reduced().as_laurent().ok_or(q)?;
        for (e, v) in poly.terms() {
            out.insert((q, e), v.as_rational().ok_or(q)?.clone());
        }
    }
    Ok(out)
}

/// Exact solve of candidate = Σ coordinate·monomial over the truncated window.
pub fn membership_with(r: &GenusResult, opts: &MembershipOptions) -> Result<MembershipReport> {
    if r.convention != Convention::Eq2 {
        return Err(Error::validation(
            "membership needs a result in the eq2 convention",
        ));
    }
    if r.index > opts.max_index {
        return Err(Error::validation(format!(
            "index {} exceeds the configured ceiling {}",
            r.index, opts.max_index
        )));
    }
    let p = r.series.profile();
    let t = r.series.truncation();
    let monomials = basis_monomials(r.weight, &r.index)?;
    let mut report = MembershipReport {
        success: false,
        weight: r.weight,
        index: r.index.clone(),
        coordinates: BTreeMap::new(),
        residual: None,
        compared: 0,
        monomials: monomials.len(),
    };
    let at = |(q, e): Position| format!("q^({}) y^({})", p.q_exp(q), p.y_exp(e));

    if r.series.is_zero() {
        report.success = true;
        return Ok(report);
    }
    if r.series.is_exact() {
        return Err(Error::validation(
            "membership needs a truncated candidate series",
        ));
    }
    let candidate = match rational_grid(&r.series) {
        Ok(g) => g,
        Err(q) => {
            report.residual = Some(format!(
                "q^({}): coefficient is not a rational Laurent polynomial in y",
                p.q_exp(q)
            ));
            return Ok(report);
        }
    };
    if monomials.is_empty() {
        report.residual = candidate.keys().next().map(|&k| at(k));
        report.compared = candidate.len();
        return Ok(report);
    }
    let columns = monomials
        .iter()
        .map(|m| {
            rational_grid(&m.expansion(p, t)?)
                .map_err(|_| Error::validation(format!("{m} has non-rational coefficients")))
        })
        .collect::<Result<Vec<_>>>()?;

    let positions: BTreeSet<Position> = candidate
        .keys()
        .chain(columns.iter().flat_map(|c| c.keys()))
        .copied()
        .collect();
    let n = monomials.len();
    report.compared = positions.len();
    let needed = opts.margin_factor * n + opts.margin_extra;
    if positions.len() < needed {
        return Err(Error::InsufficientTruncation(format!(
            "{} coefficients available, {needed} needed for {n} monomials",
            positions.len()
        )));
    }

    let mut echelon = Echelon::new(n);
    for &pos in &positions {
        let mut row: Vec<Rational> = columns
            .iter()
            .map(|c| c.get(&pos).cloned().unwrap_or_else(Rational::zero))
            .collect();
        row.push(candidate.get(&pos).cloned().unwrap_or_else(Rational::zero));
        if !echelon.insert(integer_row(&row)) {
            report.residual = Some(at(pos));
            return Ok(report);
        }
    }
    let x = echelon.solve().ok_or_else(|| {
        Error::InsufficientTruncation(
            "the basis monomials are not separated by the available coefficients".into(),
        )
    })?;
    report.coordinates = monomials
        .iter()
        .zip(x)
        .filter(|(_, v)| !v.is_zero())
        .map(|(m, v)| (m.key(), v))
        .collect();
    report.success = true;
    Ok(report)
}

fn integer_row(row: &[Rational]) -> Vec<BigInt> {
    let l = row.iter().fold(BigInt::one(), |l, r| l.lcm(r.denom()));
    row.iter()
        .map(|r| r.numer() * (&l / r.denom()))
        .collect()
}

fn primitive(row: &mut [BigInt]) {
    let g = row.iter().fold(BigInt::zero(), |g, v| g.gcd(v));
    if !g.is_zero() && !g.is_one() {
        for v in row.iter_mut() {
            *v = &*v / &g;
        }
    }
}

/// Fraction-free row echelon form over Z, built one row at a time.
struct Echelon {
    n: usize,
    rows: Vec<(usize, Vec<BigInt>)>,
}

impl Echelon {
    fn new(n: usize) -> Self {
        Echelon {
            n,
            rows: Vec::new(),
        }
    }

    /// Adds an augmented row; false when it makes the system inconsistent.
    fn insert(&mut self, mut row: Vec<BigInt>) -> bool {
        for (pc, piv) in &self.rows {
            if row[*pc].is_zero() {
                continue;
            }
            let a = piv[*pc].clone();
            let b = row[*pc].clone();
            for (v, w) in row.iter_mut().zip(piv) {
                *v = &*v * &a - w * &b;
            }
            primitive(&mut row);
        }
        match row[..self.n].iter().position(|v| !v.is_zero()) {
            Some(pc) => {
                if row[pc].is_negative() {
                    row.iter_mut().for_each(|v| *v = -&*v);
                }
                self.rows.push((pc, row));
                true
            }
            None => row[self.n].is_zero(),
        }
    }

    /// Unique solution, or None when the rank is below n.
    fn solve(&self) -> Option<Vec<Rational>> {
        if self.rows.len() < self.n {
            return None;
        }
        let mut x = vec![Rational::zero(); self.n];
        for (pc, row) in self.rows.iter().rev() {
            let mut acc = Rational::from_bigints(row[self.n].clone(), BigInt::one());
            for (j, v) in row[..self.n].iter().enumerate() {
                if j != *pc && !v.is_zero() {
                    acc -= &(&x[j] * Rational::from_bigints(v.clone(), BigInt::one()));
                }
            }
            x[*pc] = acc / Rational::from_bigints(row[*pc].clone(), BigInt::one());
        }
        Some(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{Cyclotomic, YFraction};

    const P: ExponentProfile = ExponentProfile::BASE;

    fn result(s: PuiseuxSeries, weight: i64, d: u32) -> GenusResult {
        GenusResult::new(s, weight, d, Convention::Eq2)
    }

    #[test]
    fn basis_counts() {
        // weight 0 index 1: phi01 only; weight -2 index 1: phiM21 only
        assert_eq!(basis_monomials(0, &Rational::one()).unwrap().len(), 1);
        assert_eq!(basis_monomials(-2, &Rational::one()).unwrap().len(), 1);
        let b = basis_monomials(0, &Rational::from_integer(2)).unwrap();
        let keys: Vec<String> = b.iter().map(|m| m.key()).collect();
        assert_eq!(
            keys,
            vec![
                "E4^0 E6^0 phiM21^0 phi01^2 phiM1half^0",
                "E4^1 E6^0 phiM21^2 phi01^0 phiM1half^0",
            ]
        );
        for m in &b {
            assert_eq!(m.weight(), 0);
            assert_eq!(m.index(), Rational::from_integer(2));
        }
        let q = basis_monomials(0, &Rational::new(3, 2)).unwrap();
        assert_eq!(q.len(), 1);
        assert_eq!(q[0].g, 1);
    }

    #[test]
    fn recovers_known_combination() {
        let t = 24;
        let basis = basis_monomials(0, &Rational::from_integer(2)).unwrap();
        let s = basis[0]
            .expansion(P, t)
            .unwrap()
            .scale_rational(&Rational::new(3, 7))
            .try_sub(&basis[1].expansion(P, t).unwrap().scale_rational(&Rational::from_integer(5)))
            .unwrap();
        let rep = membership(&result(s, 0, 4)).unwrap();
        assert!(rep.success);
        assert_eq!(rep.coordinate(&basis[0]), Rational::new(3, 7));
        assert_eq!(rep.coordinate(&basis[1]), Rational::from_integer(-5));
    }

    #[test]
    fn zero_series_is_member() {
        let rep = membership(&result(PuiseuxSeries::zero(P, 24), 0, 2)).unwrap();
        assert!(rep.success);
        assert!(rep.coordinates.is_empty());
    }

    #[test]
    fn perturbed_series_fails_with_residual() {
        let t = 24;
        let phi = generator_expansion(JacobiGenerator::Phi01, P, t).unwrap();
        let bump = PuiseuxSeries::monomial(P, Cyclotomic::one(P.field()), 16, 2);
        let rep = membership(&result(phi.try_add(&bump).unwrap(), 0, 2)).unwrap();
        assert!(!rep.success);
        assert_eq!(rep.residual.as_deref(), Some("q^(2) y^(1)"));
    }

    #[test]
    fn too_short_window_is_reported() {
        let phi = generator_expansion(JacobiGenerator::E4, P, 0).unwrap();
        let s = PuiseuxSeries::constant(P, YFraction::one(P.field())).truncate(0);
        assert!(phi.agrees_with(&s));
        assert!(matches!(
            membership(&GenusResult::new(s, 4, 0, Convention::Eq2)),
            Err(Error::InsufficientTruncation(_))
        ));
    }
}
