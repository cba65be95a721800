use std::fmt;
use std::sync::Arc;

use super::ring::{Monomial, Ring};
use crate::arith::{ExponentProfile, PuiseuxSeries, Rational, EXACT};
use crate::error::Result;

fn same_ring(a: &Arc<Ring>, b: &Arc<Ring>) {
    assert!(Arc::ptr_eq(a, b) || **a == **b, "classes live in different rings");
}

/// Class with rational coefficients (Chern data, divisors, pullbacks).
#[derive(Clone, Debug)]
pub struct RationalClass {
    ring: Arc<Ring>,
    coeffs: Vec<Rational>,
}

impl PartialEq for RationalClass {
    fn eq(&self, other: &Self) -> bool {
        *self.ring == *other.ring && self.coeffs == other.coeffs
    }
}

impl RationalClass {
    pub fn zero(ring: &Arc<Ring>) -> Self {
        RationalClass {
            ring: ring.clone(),
            coeffs: vec![Rational::zero(); ring.rank()],
        }
    }

    pub fn one(ring: &Arc<Ring>) -> Self {
        Self::scalar(ring, Rational::one())
    }

    pub fn scalar(ring: &Arc<Ring>, r: Rational) -> Self {
        let mut c = Self::zero(ring);
        c.coeffs[0] = r;
        c
    }

    pub fn from_terms(ring: &Arc<Ring>, terms: &[(Monomial, Rational)]) -> Result<Self> {
        let mut c = Self::zero(ring);
        for (m, r) in terms {
            for (i, ci) in ring.reduce(m)? {
                c.coeffs[i] += &(r * &ci);
            }
        }
        Ok(c)
    }

    /// Parses `[[monomial, rational], ...]` data already split into strings.
    pub fn parse(ring: &Arc<Ring>, terms: &[(String, Rational)]) -> Result<Self> {
        let parsed = terms
            .iter()
            .map(|(m, r)| Ok((ring.parse_monomial(m)?, r.clone())))
            .collect::<Result<Vec<_>>>()?;
        Self::from_terms(ring, &parsed)
    }

    pub fn generator(ring: &Arc<Ring>, name: &str) -> Result<Self> {
        Self::parse(ring, &[(name.to_string(), Rational::one())])
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &Rational {
        &self.coeffs[i]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, o: &Self) -> Self {
        same_ring(&self.ring, &o.ring);
        RationalClass {
            ring: self.ring.clone(),
            coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&Rational::from_integer(-1)))
    }

    pub fn scale(&self, r: &Rational) -> Self {
        RationalClass {
            ring: self.ring.clone(),
            coeffs: self.coeffs.iter().map(|a| a * r).collect(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        same_ring(&self.ring, &o.ring);
        let mut out = vec![Rational::zero(); self.ring.rank()];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let ab = a * b;
                for (k, c) in self.ring.product_of(i, j) {
                    out[*k] += &(&ab * c);
                }
            }
        }
        RationalClass {
            ring: self.ring.clone(),
            coeffs: out,
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut r = Self::one(&self.ring);
        for _ in 0..n {
            r = r.mul(self);
        }
        r
    }

    /// Component of complex degree `d`.
    pub fn component(&self, d: u32) -> Self {
        RationalClass {
            ring: self.ring.clone(),
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| {
                    if self.ring.degree_of(i) == d {
                        c.clone()
                    } else {
                        Rational::zero()
                    }
                })
                .collect(),
        }
    }

    /// The single degree of a nonzero homogeneous class.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut deg = None;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let d = self.ring.degree_of(i);
            match deg {
                None => deg = Some(d),
                Some(e) if e != d => return None,
                _ => {}
            }
        }
        deg
    }

    pub fn to_series_class(&self, profile: ExponentProfile) -> CohomClass {
        CohomClass {
            ring: self.ring.clone(),
            coeffs: self
                .coeffs
                .iter()
                .map(|c| {
                    if c.is_zero() {
                        PuiseuxSeries::zero(profile, EXACT)
                    } else {
                        PuiseuxSeries::from_rational(profile, c.clone())
                    }
                })
                .collect(),
        }
    }

    /// `[[monomial, rational], ...]` with zero terms dropped.
    pub fn terms(&self) -> Vec<(String, Rational)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (self.ring.format_monomial(&self.ring.basis()[i]), c.clone()))
            .collect()
    }
}

impl fmt::Display for RationalClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let t = self.terms();
        if t.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = t.iter().map(|(m, c)| format!("({c})*{m}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Class with series coefficients.
#[derive(Clone, Debug)]
pub struct CohomClass {
    ring: Arc<Ring>,
    coeffs: Vec<PuiseuxSeries>,
}

impl CohomClass {
    pub fn zero(ring: &Arc<Ring>, profile: ExponentProfile) -> Self {
        CohomClass {
            ring: ring.clone(),
            coeffs: vec![PuiseuxSeries::zero(profile, EXACT); ring.rank()],
        }
    }

    pub fn one(ring: &Arc<Ring>, profile: ExponentProfile) -> Self {
        Self::scalar(ring, PuiseuxSeries::one(profile))
    }

    pub fn scalar(ring: &Arc<Ring>, s: PuiseuxSeries) -> Self {
        let mut c = Self::zero(ring, s.profile());
        c.coeffs[0] = s;
        c
    }

    pub fn from_coeffs(ring: &Arc<Ring>, coeffs: Vec<PuiseuxSeries>) -> Self {
        assert_eq!(coeffs.len(), ring.rank());
        CohomClass {
            ring: ring.clone(),
            coeffs,
        }
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn profile(&self) -> ExponentProfile {
        self.coeffs[0].profile()
    }

    pub fn coeffs(&self) -> &[PuiseuxSeries] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &PuiseuxSeries {
        &self.coeffs[i]
    }

    pub fn truncation(&self) -> i64 {
        self.coeffs.iter().map(|c| c.truncation()).min().unwrap()
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        same_ring(&self.ring, &o.ring);
        Ok(CohomClass {
            ring: self.ring.clone(),
            coeffs: self
                .coeffs
                .iter()
                .zip(&o.coeffs)
                .map(|(a, b)| a.try_add(b))
                .collect::<Result<_>>()?,
        })
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        same_ring(&self.ring, &o.ring);
        let n = self.ring.rank();
        let mut out: Vec<Option<PuiseuxSeries>> = vec![None; n];
        let mut trunc = EXACT;
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                if self.ring.product_of(i, j).is_empty() {
                    continue;
                }
                if (a.is_zero() && a.is_exact()) || (b.is_zero() && b.is_exact()) {
                    continue;
                }
                let ab = a.try_mul(b)?;
                trunc = trunc.min(ab.truncation());
                for (k, c) in self.ring.product_of(i, j) {
                    let t = ab.scale_rational(c);
                    out[*k] = Some(match out[*k].take() {
                        Some(s) => s.try_add(&t)?,
                        None => t,
                    });
                }
            }
        }
        let profile = self.profile();
        Ok(CohomClass {
            ring: self.ring.clone(),
            coeffs: out
                .into_iter()
                .map(|c| c.unwrap_or_else(|| PuiseuxSeries::zero(profile, trunc)))
                .collect(),
        })
    }

    pub fn mul_rational(&self, r: &RationalClass) -> Result<Self> {
        self.mul(&r.to_series_class(self.profile()))
    }

    pub fn scale_series(&self, s: &PuiseuxSeries) -> Result<Self> {
        Ok(CohomClass {
            ring: self.ring.clone(),
            coeffs: self
                .coeffs
                .iter()
                .map(|c| c.try_mul(s))
                .collect::<Result<_>>()?,
        })
    }

    pub fn scale_rational(&self, r: &Rational) -> Self {
        CohomClass {
            ring: self.ring.clone(),
            coeffs: self.coeffs.iter().map(|c| c.scale_rational(r)).collect(),
        }
    }

    /// exp of a class with vanishing degree-0 part, exact by nilpotency.
    pub fn exp_nilpotent(&self) -> Result<Self> {
        let profile = self.profile();
        let mut result = Self::one(&self.ring, profile);
        let mut power = Self::one(&self.ring, profile);
        for n in 1..=self.ring.dimension() {
            power = power
                .mul(self)?
                .scale_rational(&Rational::new(1, n as i64));
            result = result.add(&power)?;
        }
        Ok(result)
    }

    pub fn map(&self, f: impl Fn(&PuiseuxSeries) -> PuiseuxSeries) -> Self {
        CohomClass {
            ring: self.ring.clone(),
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    pub fn try_map(&self, f: impl Fn(&PuiseuxSeries) -> Result<PuiseuxSeries>) -> Result<Self> {
        Ok(CohomClass {
            ring: self.ring.clone(),
            coeffs: self.coeffs.iter().map(f).collect::<Result<_>>()?,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohom::ring::Generator;

    fn p2() -> Arc<Ring> {
        Arc::new(
            Ring::truncated(
                vec![Generator {
                    name: "h".into(),
                    degree: 1,
                    cap: Some(3),
                }],
                2,
            )
            .unwrap(),
        )
    }

    #[test]
    fn rational_arithmetic() {
        let r = p2();
        let h = RationalClass::generator(&r, "h").unwrap();
        let c = RationalClass::one(&r).add(&h).pow(3);
        assert_eq!(
            c.terms(),
            vec![
                ("1".to_string(), Rational::one()),
                ("h".to_string(), Rational::from_integer(3)),
                ("h^2".to_string(), Rational::from_integer(3)),
            ]
        );
        assert!(h.pow(3).is_zero());
        assert_eq!(c.component(1).homogeneous_degree(), Some(1));
        assert_eq!(c.homogeneous_degree(), None);
    }

    #[test]
    fn exp_of_nilpotent_class() {
        let r = p2();
        let p = ExponentProfile::BASE;
        let h = RationalClass::generator(&r, "h").unwrap().to_series_class(p);
        let e = h.exp_nilpotent().unwrap();
        let want = RationalClass::parse(
            &r,
            &[
                ("1".into(), Rational::one()),
                ("h".into(), Rational::one()),
                ("h^2".into(), Rational::new(1, 2)),
            ],
        )
        .unwrap()
        .to_series_class(p);
        for i in 0..3 {
            assert!(e.coeff(i).agrees_with(want.coeff(i)));
        }
    }
}
