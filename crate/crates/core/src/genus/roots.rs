use std::collections::HashMap;
use std::sync::Mutex;

use crate::arith::{ExponentProfile, PuiseuxSeries, Rational, SlotSeries};
use crate::cohom::Variety;
use crate::error::{Error, Result};
use crate::theta::{
    assemble_quotient, theta_expansion, theta_prime_zero, NilPrefactor, Prefactored, ThetaArg,
};

use super::Convention;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum RootKey {
    Standard(Convention),
    Twisted(Rational, Rational, Convention),
    Divisor(Rational, Rational, Rational),
    ConventionFactor,
}

/// Shared settings and memoized root functions for one computation.
pub struct GenusContext {
    profile: ExponentProfile,
    degree: usize,
    trunc: i64,
    cache: Mutex<HashMap<RootKey, SlotSeries>>,
}

impl GenusContext {
    /// `degree` is the largest ring dimension used; `trunc` is the target
    /// q-exponent numerator.
    pub fn new(profile: ExponentProfile, degree: usize, trunc: i64) -> Self {
        GenusContext {
            profile,
            degree,
            trunc,
            cache: Mutex::new(HashMap::new()),
        }
    }

    /// Context whose profile covers all characters of `x` and `extra` roots of unity.
    pub fn for_variety(x: &Variety, trunc: i64, extra: &[Rational]) -> Self {
        Self::new(required_profile(x, extra), x.dimension as usize, trunc)
    }

    pub fn profile(&self) -> ExponentProfile {
        self.profile
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn truncation(&self) -> i64 {
        self.trunc
    }

    fn cached(&self, key: RootKey, build: impl FnOnce() -> Result<SlotSeries>) -> Result<SlotSeries> {
        if let Some(s) = self.cache.lock().unwrap().get(&key) {
            return Ok(s.clone());
        }
        let s = build()?;
        self.cache.lock().unwrap().insert(key, s.clone());
        Ok(s)
    }

    fn theta(&self, arg: ThetaArg) -> Result<Prefactored> {
        theta_expansion(&arg, self.profile, self.degree + 1, self.trunc)
    }

    fn two_pi_i(&self) -> Prefactored {
        Prefactored {
            q8: 0,
            mi: 0,
            pi: 1,
            eta: 0,
            body: SlotSeries::one(self.profile, self.degree + 1),
            label: "2pi i".into(),
        }
    }

    fn x_arg(a: Rational, b: Rational, c: Rational) -> ThetaArg {
        ThetaArg::new(a, b, c).with_slot(Rational::one())
    }

    /// x·θ(x/2πi − z)/θ(x/2πi), or the normalized (x/2πi)θ(x/2πi − z)θ'(0)/(θ(−z)θ(x/2πi)).
    pub fn standard_root(&self, conv: Convention) -> Result<SlotSeries> {
        self.cached(RootKey::Standard(conv), || {
            let z = Rational::zero;
            let num = self.theta(Self::x_arg(z(), z(), Rational::one()))?;
            let den = self.theta(Self::x_arg(z(), z(), z()))?;
            match conv {
                Convention::Eq2 => assemble_quotient(&[num], &[den], &[NilPrefactor::x()], self.degree),
                Convention::Normalized => {
                    let tz = self.theta(ThetaArg::z(Rational::one()))?;
                    assemble_quotient(
                        &[num, theta_prime_zero(self.profile, self.degree + 1)],
                        &[tz, den],
                        &[NilPrefactor::x_over_2pi_i()],
                        self.degree,
                    )
                }
            }
        })
    }

    /// θ(x/2πi + a − bτ − z)/θ(x/2πi + a − bτ)·y^b, times θ'(0)/(2πiθ(−z)) when normalized.
    pub fn twisted_root(&self, a: &Rational, b: &Rational, conv: Convention) -> Result<SlotSeries> {
        if a.is_zero() && b.is_zero() {
            return Err(Error::CharacterBookkeeping(
                "twisted root with trivial characters".into(),
            ));
        }
        self.cached(RootKey::Twisted(a.clone(), b.clone(), conv), || {
            let num = self.theta(Self::x_arg(a.clone(), b.clone(), Rational::one()))?;
            let den = self.theta(Self::x_arg(a.clone(), b.clone(), Rational::zero()))?;
            let f = match conv {
                Convention::Eq2 => assemble_quotient(&[num], &[den], &[], self.degree),
                Convention::Normalized => {
                    let tz = self.theta(ThetaArg::z(Rational::one()))?;
                    assemble_quotient(
                        &[num, theta_prime_zero(self.profile, self.degree + 1)],
                        &[den, tz, self.two_pi_i()],
                        &[],
                        self.degree,
                    )
                }
            }
            .map_err(|e| match e {
                Error::ThetaPole { factor } => Error::CharacterBookkeeping(format!(
                    "twisted factor {factor} vanishes at x = 0"
                )),
                other => other,
            })?;
            let shift = self.profile.y_num(b)?;
            Ok(shift_y(&f, shift))
        })
    }

    /// θ(e/2πi + ε_g − ε_hτ − (δ+1)z)θ(−z) / (θ(e/2πi + ε_g − ε_hτ − z)θ(−(δ+1)z)) · y^{δε_h}.
    pub fn divisor_factor(
        &self,
        delta: &Rational,
        eps_g: &Rational,
        eps_h: &Rational,
    ) -> Result<SlotSeries> {
        if delta.is_zero() {
            return Ok(SlotSeries::one(self.profile, self.degree));
        }
        let key = RootKey::Divisor(delta.clone(), eps_g.clone(), eps_h.clone());
        self.cached(key, || {
            let c = delta + &Rational::one();
            let n1 = self.theta(Self::x_arg(eps_g.clone(), eps_h.clone(), c.clone()))?;
            let n2 = self.theta(ThetaArg::z(Rational::one()))?;
            let d1 = self.theta(Self::x_arg(eps_g.clone(), eps_h.clone(), Rational::one()))?;
            let d2 = self.theta(ThetaArg::z(c))?;
            let f = assemble_quotient(&[n1, n2], &[d1, d2], &[], self.degree)?;
            Ok(shift_y(&f, self.profile.y_num(&(delta * eps_h))?))
        })
    }

    /// 2πiθ(−z)/θ'(0), the ratio of the two conventions per Chern root.
    pub fn convention_factor(&self) -> Result<PuiseuxSeries> {
        let s = self.cached(RootKey::ConventionFactor, || {
            let tz = theta_expansion(&ThetaArg::z(Rational::one()), self.profile, 1, self.trunc)?;
            let tpi = Prefactored {
                body: SlotSeries::one(self.profile, 1),
                ..self.two_pi_i()
            };
            assemble_quotient(&[tz, tpi], &[theta_prime_zero(self.profile, 1)], &[], 0)
        })?;
        Ok(s.coeff(0).clone())
    }
}

fn shift_y(f: &SlotSeries, k: i64) -> SlotSeries {
    if k == 0 {
        return f.clone();
    }
    SlotSeries::from_coeffs(f.coeffs().iter().map(|c| c.shift_y(k)).collect())
}

/// Profile large enough for every character, divisor weight and extra root in the input.
pub fn required_profile(x: &Variety, extra: &[Rational]) -> ExponentProfile {
    let half = Rational::new(1, 2);
    let mut p = ExponentProfile::BASE;
    let add_divisor = |p: ExponentProfile, delta: &Rational, eg: &Rational, eh: &Rational| {
        let c = delta + &Rational::one();
        p.with_y_exponent(&(&c * &half))
            .with_y_exponent(&(delta * eh))
            .with_root_of_unity(&(eg * &half))
            .with_root_of_unity(&(&(eg * &c) * &half))
            .with_q_exponent(&(eh * &half))
    };
    for d in &x.divisors {
        p = add_divisor(p, &d.delta, &Rational::zero(), &Rational::zero());
    }
    if let Some(o) = &x.orbifold {
        for s in &o.sectors {
            for c in &s.components {
                for t in &c.twisted_parts {
                    p = p
                        .with_root_of_unity(&(&t.lambda_g * &half))
                        .with_q_exponent(&(&t.lambda_h * &half))
                        .with_y_exponent(&t.lambda_h);
                }
                for d in &c.divisor_restrictions {
                    p = add_divisor(p, &d.delta, &d.eps_g, &d.eps_h);
                }
            }
        }
    }
    for r in extra {
        p = p.with_root_of_unity(r);
    }
    p
}
