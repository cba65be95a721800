use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::{Convention, GenusResult};
use crate::arith::{Cyclotomic, ExponentProfile, PuiseuxSeries, Rational, YFraction};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Specialization {
    Q0,
    Euler,
    Todd,
    Signature,
    ChiY,
}

impl FromStr for Specialization {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "q0" => Ok(Specialization::Q0),
            "euler" => Ok(Specialization::Euler),
            "todd" => Ok(Specialization::Todd),
            "signature" => Ok(Specialization::Signature),
            "chiy" | "chi_y" => Ok(Specialization::ChiY),
            _ => Err(Error::validation(format!("unknown specialization {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum SpecialValue {
    Number(Cyclotomic),
    Function(YFraction, u32),
}

impl SpecialValue {
    pub fn as_rational(&self) -> Option<Rational> {
        match self {
            SpecialValue::Number(c) => c.as_rational().cloned(),
            SpecialValue::Function(f, _) => f.as_laurent()?.as_constant()?.as_rational().cloned(),
        }
    }
}

impl fmt::Display for SpecialValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpecialValue::Number(c) => write!(f, "{c}"),
            SpecialValue::Function(y, ly) => write!(f, "{}", y.fmt_with(*ly)),
        }
    }
}

fn require_standard(r: &GenusResult) -> Result<()> {
    if r.convention != Convention::Eq2 {
        return Err(Error::validation(
            "convert the result to the eq2 convention before specializing or checking",
        ));
    }
    Ok(())
}

fn laurent_q0(r: &GenusResult) -> Result<crate::arith::LaurentPoly> {
    if r.truncation() < 0 {
        return Err(Error::InsufficientTruncation(
            "the q^0 coefficient is not known".into(),
        ));
    }
    let q0 = r.series.coeff_or_zero(0).reduced();
    q0.as_laurent()
        .ok_or_else(|| Error::validation("q^0 coefficient is not a Laurent polynomial in y"))
}

/// Value of a standard-convention genus under a classical specialization.
pub fn specialize(r: &GenusResult, kind: Specialization) -> Result<SpecialValue> {
    require_standard(r)?;
    let p = r.series.profile();
    let field = p.field();
    let half_d = r.dimension as i64 * p.ly as i64 / 2;
    match kind {
        Specialization::Q0 => {
            laurent_q0(r)?;
            Ok(SpecialValue::Function(r.series.coeff_or_zero(0).reduced(), p.ly))
        }
        Specialization::ChiY => {
            let q0 = laurent_q0(r)?;
            Ok(SpecialValue::Function(YFraction::from_poly(q0.shift(half_d)), p.ly))
        }
        Specialization::Todd => {
            let q0 = laurent_q0(r)?;
            Ok(SpecialValue::Number(
                q0.coeff(-half_d).cloned().unwrap_or_else(|| Cyclotomic::zero(field)),
            ))
        }
        Specialization::Euler => {
            let q0 = laurent_q0(r)?;
            for (k, c) in r.series.terms() {
                if k != 0 && !c.eval_at_root(0)?.is_zero() {
                    return Err(Error::validation(format!(
                        "value at z = 0 depends on q (coefficient of q^({}))",
                        p.q_exp(k)
                    )));
                }
            }
            Ok(SpecialValue::Number(q0.eval_at_root(0)))
        }
        Specialization::Signature => {
            let q0 = laurent_q0(r)?.shift(half_d);
            let mut acc = Cyclotomic::zero(field);
            for (e, c) in q0.terms() {
                if e % p.ly as i64 != 0 {
                    return Err(Error::validation("y^(d/2)·q^0 has fractional y-exponents"));
                }
                let term = if (e / p.ly as i64) % 2 == 0 { c.clone() } else { -c };
                acc = &acc + &term;
            }
            Ok(SpecialValue::Number(acc))
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Law {
    /// τ ↦ τ + 1
    Modular1,
    /// z ↦ z + τ
    Modular3,
    /// z ↦ z + 1
    Modular4,
    /// z ↦ z + Kτ
    LatticePeriod(i64),
}

impl FromStr for Law {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "m1" | "modular1" => Ok(Law::Modular1),
            "m3" | "modular3" => Ok(Law::Modular3),
            "m4" | "modular4" => Ok(Law::Modular4),
            _ => {
                let k = s
                    .strip_prefix("lattice:")
                    .and_then(|k| k.parse::<i64>().ok())
                    .ok_or_else(|| Error::validation(format!("unknown law {s:?}")))?;
                if k == 0 {
                    return Err(Error::validation("lattice period must be nonzero"));
                }
                Ok(Law::LatticePeriod(k))
            }
        }
    }
}

impl fmt::Display for Law {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Law::Modular1 => write!(f, "modular1"),
            Law::Modular3 => write!(f, "modular3"),
            Law::Modular4 => write!(f, "modular4"),
            Law::LatticePeriod(k) => write!(f, "lattice:{k}"),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub law: String,
    pub passed: bool,
    pub compared: usize,
    pub discrepancy: Option<String>,
}

fn check_profile(p: ExponentProfile) -> ExponentProfile {
    let nq = crate::arith::rational::lcm_u64(p.nq as u64, p.ly as u64) as u32;
    let nzeta = crate::arith::rational::lcm_u64(
        crate::arith::rational::lcm_u64(p.nzeta as u64, p.ly as u64),
        nq as u64,
    ) as u32;
    ExponentProfile { nq, nzeta, ..p }
}

/// Compares a standard-convention genus with its transform under `law`.
pub fn functional_equation_check(r: &GenusResult, law: Law) -> Result<CheckReport> {
    require_standard(r)?;
    let p = check_profile(r.series.profile());
    let s = r.series.rescale(p)?.canonical();
    let d = r.dimension as i64;
    let sign_d = if d % 2 == 0 { 1 } else { -1 };
    let compare = |lhs: PuiseuxSeries, rhs: PuiseuxSeries| -> CheckReport {
        let compared = lhs.num_terms().max(rhs.num_terms());
        match lhs.first_discrepancy(&rhs) {
            None => CheckReport {
                law: law.to_string(),
                passed: true,
                compared,
                discrepancy: None,
            },
            Some(dis) => CheckReport {
                law: law.to_string(),
                passed: false,
                compared,
                discrepancy: Some(format!(
                    "q^({}): transformed {} vs expected {}",
                    p.q_exp(dis.q_num),
                    dis.left.fmt_with(p.ly),
                    dis.right.fmt_with(p.ly)
                )),
            },
        }
    };
    match law {
        Law::Modular1 => Ok(compare(s.tau_plus_one()?, s.clone())),
        Law::Modular4 => Ok(compare(
            s.z_plus_one()?,
            s.scale_rational(&Rational::from_integer(sign_d)),
        )),
        Law::Modular3 => lattice_check(&s, d, 1, law),
        Law::LatticePeriod(k) => lattice_check(&s, d, k, law),
    }
}

/// c(N − K·e, e) = (−1)^{dK} c(N + dK²/2, e + dK) wherever both sides are known.
fn lattice_check(s: &PuiseuxSeries, d: i64, k: i64, law: Law) -> Result<CheckReport> {
    let p = s.profile();
    let ly = p.ly as i64;
    let nq = p.nq as i64;
    let t = s.truncation();
    let mut grid: BTreeMap<(i64, i64), Cyclotomic> = BTreeMap::new();
    for (n, c) in s.terms() {
        let poly = c
            .as_laurent()
            .ok_or_else(|| Error::validation("lattice check needs Laurent coefficients"))?;
        for (e, v) in poly.terms() {
            grid.insert((n, e), v.clone());
        }
    }
    let field = p.field();
    let zero = Cyclotomic::zero(field);
    let get = |n: i64, e: i64| grid.get(&(n, e)).cloned().unwrap_or_else(|| zero.clone());
    let shift = |e: i64| k * e * nq / ly;
    let dq = d * k * k * nq / 2;
    let dy = d * k * ly;
    let sign = if (d * k) % 2 == 0 { 1 } else { -1 };

    // the zero form satisfies every law once the shifted q^0 row fits in the window
    if s.is_zero() {
        if t < dq {
            return Err(Error::InsufficientTruncation(format!(
                "truncation q^({}) is below the {law} shift q^({})",
                p.q_exp(t),
                p.q_exp(dq)
            )));
        }
        return Ok(CheckReport {
            law: law.to_string(),
            passed: true,
            compared: 0,
            discrepancy: None,
        });
    }

    let mut positions: BTreeSet<(i64, i64)> = BTreeSet::new();
    for &(n, e) in grid.keys() {
        let big_n = n + shift(e);
        if big_n + dq <= t {
            positions.insert((big_n, e));
        }
        let e2 = e - dy;
        let big_n2 = n - dq;
        if big_n2 - shift(e2) <= t {
            positions.insert((big_n2, e2));
        }
    }
    for &(big_n, e) in &positions {
        let lhs = get(big_n - shift(e), e);
        let rhs = get(big_n + dq, e + dy).scale(&Rational::from_integer(sign));
        if lhs != rhs {
            return Ok(CheckReport {
                law: law.to_string(),
                passed: false,
                compared: positions.len(),
                discrepancy: Some(format!(
                    "y^({}) q^({}): transformed coefficient {} vs expected {}",
                    p.y_exp(e),
                    p.q_exp(big_n),
                    lhs,
                    rhs
                )),
            });
        }
    }
    if positions.is_empty() {
        return Err(Error::InsufficientTruncation(format!(
            "no coefficients fall inside the {law} comparison window"
        )));
    }
    Ok(CheckReport {
        law: law.to_string(),
        passed: true,
        compared: positions.len(),
        discrepancy: None,
    })
}
