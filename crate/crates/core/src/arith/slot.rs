//! Truncated power series in a nilpotent slot variable x with series coefficients.

use super::profile::ExponentProfile;
use super::rational::Rational;
use super::series::PuiseuxSeries;
use crate::error::{Error, Result};

/// Σ_{i ≤ degree} c_i x^i where x^{degree+1} = 0.
#[derive(Clone, Debug)]
pub struct SlotSeries {
    profile: ExponentProfile,
    coeffs: Vec<PuiseuxSeries>,
}

impl SlotSeries {
    pub fn zero(profile: ExponentProfile, degree: usize) -> Self {
        SlotSeries {
            profile,
            coeffs: vec![PuiseuxSeries::zero(profile, super::series::EXACT); degree + 1],
        }
    }

    pub fn constant(c: PuiseuxSeries, degree: usize) -> Self {
        let mut s = Self::zero(c.profile(), degree);
        s.coeffs[0] = c;
        s
    }

    pub fn one(profile: ExponentProfile, degree: usize) -> Self {
        Self::constant(PuiseuxSeries::one(profile), degree)
    }

    /// The slot variable itself.
    pub fn x(profile: ExponentProfile, degree: usize) -> Self {
        let mut s = Self::zero(profile, degree);
        if degree >= 1 {
            s.coeffs[1] = PuiseuxSeries::one(profile);
        }
        s
    }

    pub fn from_coeffs(coeffs: Vec<PuiseuxSeries>) -> Self {
        assert!(!coeffs.is_empty(), "slot series needs at least one coefficient");
        SlotSeries {
            profile: coeffs[0].profile(),
            coeffs,
        }
    }

    /// exp(k·x) with rational k.
    pub fn exp_linear(profile: ExponentProfile, k: &Rational, degree: usize) -> Self {
        let mut coeffs = Vec::with_capacity(degree + 1);
        let mut c = Rational::one();
        for i in 0..=degree {
            coeffs.push(PuiseuxSeries::from_rational(profile, c.clone()));
            c = &(&c * k) / &Rational::from_integer(i as i64 + 1);
        }
        SlotSeries { profile, coeffs }
    }

    pub fn profile(&self) -> ExponentProfile {
        self.profile
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, i: usize) -> &PuiseuxSeries {
        &self.coeffs[i]
    }

    pub fn coeffs(&self) -> &[PuiseuxSeries] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<PuiseuxSeries> {
        self.coeffs
    }

    pub fn with_degree(&self, degree: usize) -> Self {
        let mut coeffs: Vec<_> = self.coeffs.iter().take(degree + 1).cloned().collect();
        while coeffs.len() < degree + 1 {
            coeffs.push(PuiseuxSeries::zero(self.profile, super::series::EXACT));
        }
        SlotSeries {
            profile: self.profile,
            coeffs,
        }
    }

    /// Minimum truncation over all coefficients.
    pub fn truncation(&self) -> i64 {
        self.coeffs.iter().map(|c| c.truncation()).min().unwrap()
    }

    pub fn truncate(&self, t: i64) -> Self {
        SlotSeries {
            profile: self.profile,
            coeffs: self.coeffs.iter().map(|c| c.truncate(t)).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let d = self.degree().min(other.degree());
        let coeffs = (0..=d)
            .map(|i| self.coeffs[i].try_add(&other.coeffs[i]))
            .collect::<Result<_>>()?;
        Ok(SlotSeries {
            profile: self.profile,
            coeffs,
        })
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        let d = self.degree().min(other.degree());
        let mut coeffs = Vec::with_capacity(d + 1);
        for n in 0..=d {
            let mut acc: Option<PuiseuxSeries> = None;
            for i in 0..=n {
                let a = &self.coeffs[i];
                let b = &other.coeffs[n - i];
                if (a.is_zero() && a.is_exact()) || (b.is_zero() && b.is_exact()) {
                    continue;
                }
                let p = a.try_mul(b)?;
                acc = Some(match acc {
                    Some(s) => s.try_add(&p)?,
                    None => p,
                });
            }
            coeffs.push(acc.unwrap_or_else(|| PuiseuxSeries::zero(self.profile, super::series::EXACT)));
        }
        Ok(SlotSeries {
            profile: self.profile,
            coeffs,
        })
    }

    pub fn mul_series(&self, c: &PuiseuxSeries) -> Result<Self> {
        Ok(SlotSeries {
            profile: self.profile,
            coeffs: self
                .coeffs
                .iter()
                .map(|a| a.try_mul(c))
                .collect::<Result<_>>()?,
        })
    }

    pub fn scale_rational(&self, r: &Rational) -> Self {
        SlotSeries {
            profile: self.profile,
            coeffs: self.coeffs.iter().map(|a| a.scale_rational(r)).collect(),
        }
    }

    /// Inverse; the constant coefficient must be invertible.
    pub fn inverse(&self) -> Result<Self> {
        let d = self.degree();
        let c0_inv = self.coeffs[0].inverse()?;
        let mut out: Vec<PuiseuxSeries> = vec![c0_inv.clone()];
        for n in 1..=d {
            let mut acc: Option<PuiseuxSeries> = None;
            for k in 1..=n {
                let a = &self.coeffs[k];
                if a.is_zero() && a.is_exact() {
                    continue;
                }
                let p = a.try_mul(&out[n - k])?;
                acc = Some(match acc {
                    Some(s) => s.try_add(&p)?,
                    None => p,
                });
            }
            let next = match acc {
                Some(s) => -&s.try_mul(&c0_inv)?,
                None => PuiseuxSeries::zero(self.profile, super::series::EXACT),
            };
            out.push(next);
        }
        Ok(SlotSeries {
            profile: self.profile,
            coeffs: out,
        })
    }

    /// log of a series whose constant coefficient is exactly 1.
    pub fn log(&self) -> Result<Self> {
        let c0 = &self.coeffs[0];
        let one = PuiseuxSeries::one(self.profile);
        if !(c0.agrees_with(&one) && c0.num_terms() == 1) {
            return Err(Error::validation(
                "log needs a slot series with constant term 1".to_string(),
            ));
        }
        // (log f)' = f'/f
        let d = self.degree();
        let finv = self.inverse()?;
        let deriv = self.derivative();
        let q = deriv.mul(&finv.with_degree(d.saturating_sub(1)))?;
        let mut coeffs = vec![PuiseuxSeries::zero(self.profile, super::series::EXACT)];
        for (i, c) in q.coeffs.iter().enumerate() {
            coeffs.push(c.scale_rational(&Rational::new(1, i as i64 + 1)));
        }
        coeffs.truncate(d + 1);
        Ok(SlotSeries {
            profile: self.profile,
            coeffs,
        })
    }

    /// exp of a series with vanishing constant coefficient.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::validation(
                "exp needs a slot series with constant term 0".to_string(),
            ));
        }
        // E' = g'E, E_0 = 1: n E_n = Σ_{k=1}^{n} k g_k E_{n-k}
        let d = self.degree();
        let mut out = vec![PuiseuxSeries::one(self.profile)];
        for n in 1..=d {
            let mut acc: Option<PuiseuxSeries> = None;
            for k in 1..=n {
                let g = &self.coeffs[k];
                if g.is_zero() && g.is_exact() {
                    continue;
                }
                let p = g
                    .scale_rational(&Rational::from_integer(k as i64))
                    .try_mul(&out[n - k])?;
                acc = Some(match acc {
                    Some(s) => s.try_add(&p)?,
                    None => p,
                });
            }
            out.push(match acc {
                Some(s) => s.scale_rational(&Rational::new(1, n as i64)),
                None => PuiseuxSeries::zero(self.profile, super::series::EXACT),
            });
        }
        Ok(SlotSeries {
            profile: self.profile,
            coeffs: out,
        })
    }

    pub fn derivative(&self) -> Self {
        let d = self.degree();
        if d == 0 {
            return Self::zero(self.profile, 0);
        }
        SlotSeries {
            profile: self.profile,
            coeffs: (1..=d)
                .map(|i| self.coeffs[i].scale_rational(&Rational::from_integer(i as i64)))
                .collect(),
        }
    }

    /// Divides by x. The constant coefficient must vanish; the degree drops by one.
    pub fn shift_down(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::NonInvertible(
                "division by x of a series with nonzero constant term".into(),
            ));
        }
        if self.degree() == 0 {
            return Err(Error::NonInvertible("no x-degree left to divide by x".into()));
        }
        Ok(SlotSeries {
            profile: self.profile,
            coeffs: self.coeffs[1..].to_vec(),
        })
    }

    pub fn agrees_with(&self, other: &Self) -> bool {
        let d = self.degree().min(other.degree());
        (0..=d).all(|i| self.coeffs[i].agrees_with(&other.coeffs[i]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::cyclotomic::Cyclotomic;

    fn p() -> ExponentProfile {
        ExponentProfile::BASE
    }

    #[test]
    fn exp_log_round_trip() {
        let q = PuiseuxSeries::monomial(p(), Cyclotomic::one(p().field()), 8, 2).truncate(40);
        let g = SlotSeries::from_coeffs(vec![
            PuiseuxSeries::zero(p(), 40),
            q.clone(),
            PuiseuxSeries::from_rational(p(), Rational::new(3, 2)).truncate(40),
            q,
        ]);
        let e = g.exp().unwrap();
        let back = e.log().unwrap();
        assert!(back.agrees_with(&g));
    }

    #[test]
    fn exp_linear_matches_exp() {
        let k = Rational::new(2, 3);
        let lin = SlotSeries::x(p(), 4).scale_rational(&k);
        assert!(lin.exp().unwrap().agrees_with(&SlotSeries::exp_linear(p(), &k, 4)));
    }

    #[test]
    fn inverse_times_self() {
        let s = SlotSeries::exp_linear(p(), &Rational::new(5, 1), 5);
        let prod = s.mul(&s.inverse().unwrap()).unwrap();
        assert!(prod.agrees_with(&SlotSeries::one(p(), 5)));
    }

    #[test]
    fn shift_down_divides_by_x() {
        let e = SlotSeries::exp_linear(p(), &Rational::one(), 3);
        let f = e.add(&SlotSeries::one(p(), 3).scale_rational(&Rational::from_integer(-1))).unwrap();
        let g = f.shift_down().unwrap();
        assert_eq!(g.degree(), 2);
        assert!(g.coeff(0).agrees_with(&PuiseuxSeries::one(p())));
        assert!(g
            .coeff(1)
            .agrees_with(&PuiseuxSeries::from_rational(p(), Rational::new(1, 2))));
        assert!(e.shift_down().is_err());
    }
}
