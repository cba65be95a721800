use std::sync::Arc;

use super::class::{CohomClass, RationalClass};
use super::ring::Ring;
use crate::arith::{PuiseuxSeries, Rational, EXACT};
use crate::error::{Error, Result};
use crate::genus::OrbifoldData;

/// Total Chern class of a bundle of the given rank.
#[derive(Clone, Debug, PartialEq)]
pub struct ChernData {
    pub total: RationalClass,
    pub rank: u32,
}

impl ChernData {
    pub fn new(total: RationalClass, rank: u32) -> Result<Self> {
        if total.coeff(0) != &Rational::one() {
            return Err(Error::validation("total Chern class must have constant term 1"));
        }
        Ok(ChernData { total, rank })
    }

    pub fn trivial(ring: &Arc<Ring>, rank: u32) -> Self {
        ChernData {
            total: RationalClass::one(ring),
            rank,
        }
    }

    pub fn c(&self, k: u32) -> RationalClass {
        self.total.component(k)
    }

    /// Power sums p_1..p_n of the Chern roots by Newton's identities.
    pub fn power_sums(&self, n: u32) -> Vec<RationalClass> {
        let ring = self.total.ring();
        let e: Vec<RationalClass> = (0..=n).map(|k| self.c(k)).collect();
        let mut p: Vec<RationalClass> = vec![RationalClass::scalar(ring, Rational::from_integer(self.rank as i64))];
        for k in 1..=n as usize {
            let sign = |i: usize| if i % 2 == 1 { Rational::one() } else { Rational::from_integer(-1) };
            let mut pk = e[k].scale(&(&sign(k) * &Rational::from_integer(k as i64)));
            for i in 1..k {
                pk = pk.add(&e[i].mul(&p[k - i]).scale(&sign(i)));
            }
            p.push(pk);
        }
        p
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Divisor {
    pub name: String,
    pub class: RationalClass,
    pub delta: Rational,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PullbackClass {
    pub name: String,
    pub class: RationalClass,
    pub half_degree: u32,
}

impl PullbackClass {
    pub fn new(name: impl Into<String>, class: RationalClass) -> Result<Self> {
        let name = name.into();
        let half_degree = if class.is_zero() {
            0
        } else {
            class.homogeneous_degree().ok_or_else(|| {
                Error::validation(format!("pullback class {name} is not homogeneous"))
            })?
        };
        Ok(PullbackClass {
            name,
            class,
            half_degree,
        })
    }
}

#[derive(Clone, Debug)]
pub struct Variety {
    pub name: String,
    pub dimension: u32,
    pub ring: Arc<Ring>,
    pub tangent: ChernData,
    /// Value of ∫ on each basis monomial.
    pub integral: Vec<Rational>,
    pub divisors: Vec<Divisor>,
    pub pullbacks: Vec<PullbackClass>,
    pub orbifold: Option<OrbifoldData>,
}

impl Variety {
    /// A variety without divisors, pullbacks or sectors.
    pub fn new(
        name: impl Into<String>,
        ring: Arc<Ring>,
        tangent: ChernData,
        integral: Vec<Rational>,
    ) -> Result<Self> {
        let v = Variety {
            name: name.into(),
            dimension: ring.dimension(),
            ring,
            tangent,
            integral,
            divisors: Vec::new(),
            pullbacks: Vec::new(),
            orbifold: None,
        };
        v.validate()?;
        Ok(v)
    }

    /// Integration functional from top-degree values like `[("h^2", 1)]`.
    pub fn integral_from(ring: &Ring, values: &[(&str, Rational)]) -> Result<Vec<Rational>> {
        let mut out = vec![Rational::zero(); ring.rank()];
        for (m, v) in values {
            let mono = ring.parse_monomial(m)?;
            let i = ring
                .index_of(&mono)
                .ok_or_else(|| Error::validation(format!("{m} is not a basis monomial")))?;
            out[i] = v.clone();
        }
        Ok(out)
    }

    pub fn validate(&self) -> Result<()> {
        validate_integral(&self.ring, &self.integral, self.dimension)?;
        if self.tangent.rank != self.dimension {
            return Err(Error::validation(format!(
                "tangent rank {} differs from dimension {}",
                self.tangent.rank, self.dimension
            )));
        }
        if self.tangent.total.coeff(0) != &Rational::one() {
            return Err(Error::validation("Chern class must have constant term 1"));
        }
        for d in &self.divisors {
            check_klt(&d.name, &d.delta)?;
        }
        if let Some(o) = &self.orbifold {
            o.validate(self.dimension)?;
        }
        Ok(())
    }

    pub fn pullback(&self, name: &str) -> Option<&PullbackClass> {
        self.pullbacks.iter().find(|p| p.name == name)
    }

    pub fn integrate(&self, c: &CohomClass) -> PuiseuxSeries {
        integrate_with(&self.integral, c)
    }

    pub fn integrate_rational(&self, c: &RationalClass) -> Rational {
        c.coeffs()
            .iter()
            .zip(&self.integral)
            .map(|(a, b)| a * b)
            .sum()
    }

    pub fn has_vanishing_c1(&self) -> bool {
        self.tangent.c(1).is_zero()
    }
}

pub(crate) fn check_klt(name: &str, delta: &Rational) -> Result<()> {
    if delta <= &Rational::from_integer(-1) {
        return Err(Error::NotKlt {
            name: name.to_string(),
            delta: delta.to_string(),
        });
    }
    Ok(())
}

pub(crate) fn validate_integral(ring: &Ring, integral: &[Rational], dim: u32) -> Result<()> {
    if integral.len() != ring.rank() {
        return Err(Error::validation("integration functional has wrong length"));
    }
    for (i, v) in integral.iter().enumerate() {
        if !v.is_zero() && ring.degree_of(i) != dim {
            return Err(Error::validation(format!(
                "integral of {} must vanish outside top degree",
                ring.format_monomial(&ring.basis()[i])
            )));
        }
    }
    Ok(())
}

/// Σ coefficient × ∫ over the basis.
pub fn integrate_with(integral: &[Rational], c: &CohomClass) -> PuiseuxSeries {
    let profile = c.profile();
    let mut acc = PuiseuxSeries::zero(profile, EXACT);
    let mut trunc = c.truncation();
    for (s, v) in c.coeffs().iter().zip(integral) {
        if v.is_zero() {
            continue;
        }
        trunc = trunc.min(s.truncation());
        acc = &acc + &s.scale_rational(v);
    }
    acc.truncate(trunc)
}
