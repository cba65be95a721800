use super::{euler_product, Prefactored};
use crate::arith::{Cyclotomic, Rational, SlotSeries, EXACT};
use crate::error::{Error, Result};

/// A nilpotent prefactor x·(2πi)^{pi}: `x()` for x, `x_over_2pi_i()` for x/2πi.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NilPrefactor {
    pub pi: i64,
}

impl NilPrefactor {
    pub fn x() -> Self {
        NilPrefactor { pi: 0 }
    }

    pub fn x_over_2pi_i() -> Self {
        NilPrefactor { pi: -1 }
    }
}

/// ∏num / ∏den times the nilpotent prefactors, with the ledger folded in.
///
/// Bodies must carry slot degree `degree + 1`. A denominator whose x⁰
/// coefficient vanishes is divided by x and absorbs one nilpotent prefactor.
pub fn assemble_quotient(
    num: &[Prefactored],
    den: &[Prefactored],
    nil: &[NilPrefactor],
    degree: usize,
) -> Result<SlotSeries> {
    let profile = num
        .first()
        .or(den.first())
        .map(|f| f.body.profile())
        .ok_or_else(|| Error::validation("empty quotient"))?;
    let mut q8 = 0i64;
    let mut mi = 0i64;
    let mut pi: i64 = nil.iter().map(|n| n.pi).sum();
    let mut eta = 0i64;

    let mut top = SlotSeries::one(profile, degree + 1);
    for f in num {
        q8 += f.q8;
        mi += f.mi;
        pi += f.pi;
        eta += f.eta;
        top = top.mul(&f.body.with_degree(degree + 1))?;
    }

    let mut spare = nil.len();
    let mut bottom = SlotSeries::one(profile, degree);
    for f in den {
        q8 -= f.q8;
        mi -= f.mi;
        pi -= f.pi;
        eta -= f.eta;
        let mut b = f.body.with_degree(degree + 1);
        if b.coeff(0).is_zero() {
            if spare == 0 {
                return Err(Error::ThetaPole {
                    factor: f.label.clone(),
                });
            }
            spare -= 1;
            b = b.shift_down()?;
            if b.coeff(0).is_zero() {
                return Err(Error::ThetaPole {
                    factor: format!("{} (higher-order zero)", f.label),
                });
            }
        }
        bottom = bottom.mul(&b.with_degree(degree))?;
    }
    if pi != 0 {
        return Err(Error::TranscendentalResidue {
            pi_exp: pi,
            context: format!(
                "{} / {}",
                num.iter().map(|f| f.label.as_str()).collect::<Vec<_>>().join("*"),
                den.iter().map(|f| f.label.as_str()).collect::<Vec<_>>().join("*")
            ),
        });
    }

    let mut result = top.with_degree(degree);
    for _ in 0..spare {
        let x = SlotSeries::x(profile, degree);
        result = result.mul(&x)?;
    }
    if !den.is_empty() {
        result = result.mul(&bottom.inverse()?)?;
    }

    // fold the ledger
    let field = profile.field();
    let nq = profile.nq as i64;
    if (q8 * nq) % 8 != 0 {
        return Err(Error::profile("q^(1/8) ledger not representable"));
    }
    let unit = Cyclotomic::root_of_unity(field, &Rational::new(-mi.rem_euclid(4), 4))?;
    let mut coeffs: Vec<_> = result
        .coeffs()
        .iter()
        .map(|c| c.shift_q(q8 * nq / 8).scale(&unit))
        .collect();
    if eta != 0 {
        let t = result.truncation();
        let v = result
            .coeffs()
            .iter()
            .filter_map(|c| c.valuation())
            .min()
            .unwrap_or(0);
        let rel = if t >= EXACT { nq * 8 } else { (t + q8 * nq / 8 - v).max(0) };
        let mut p1 = euler_product(profile, rel).pow(eta.abs())?;
        if eta < 0 {
            p1 = p1.inverse()?;
        }
        coeffs = coeffs.iter().map(|c| c * &p1).collect();
    }
    Ok(SlotSeries::from_coeffs(coeffs))
}

#[cfg(test)]
mod tests {
    use super::super::{theta_expansion, theta_prime_zero, ThetaArg};
    use super::*;
    use crate::arith::{ExponentProfile, PuiseuxSeries, YFraction};

    fn p() -> ExponentProfile {
        ExponentProfile::BASE
    }

    fn one() -> Rational {
        Rational::one()
    }

    fn zero() -> Rational {
        Rational::zero()
    }

    #[test]
    fn self_quotient_is_one() {
        let t = theta_expansion(&ThetaArg::z(-one()), p(), 1, 40).unwrap();
        let q = assemble_quotient(&[t.clone()], &[t], &[], 0).unwrap();
        assert!(q.coeff(0).agrees_with(&PuiseuxSeries::one(p())));
    }

    #[test]
    fn regularized_division() {
        let d = 2;
        let num = theta_expansion(&ThetaArg::z(one()).with_slot(one()), p(), d + 1, 40).unwrap();
        let den = theta_expansion(&ThetaArg::z(zero()).with_slot(one()), p(), d + 1, 40).unwrap();
        let f = assemble_quotient(&[num], &[den], &[NilPrefactor::x()], d).unwrap();
        let field = p().field();
        let want = &YFraction::monomial(Cyclotomic::one(field), -1)
            - &YFraction::monomial(Cyclotomic::one(field), 1);
        assert_eq!(f.coeff(0).coeff_or_zero(0), want);
    }

    #[test]
    fn normalized_root_function_starts_at_one() {
        let d = 2;
        let num = theta_expansion(&ThetaArg::z(one()).with_slot(one()), p(), d + 1, 40).unwrap();
        let tz = theta_expansion(&ThetaArg::z(one()), p(), d + 1, 40).unwrap();
        let den = theta_expansion(&ThetaArg::z(zero()).with_slot(one()), p(), d + 1, 40).unwrap();
        let f = assemble_quotient(
            &[num, theta_prime_zero(p(), d + 1)],
            &[tz, den],
            &[NilPrefactor::x_over_2pi_i()],
            d,
        )
        .unwrap();
        assert!(f.coeff(0).agrees_with(&PuiseuxSeries::one(p())));
    }

    #[test]
    fn unbalanced_pi_is_rejected() {
        let t = theta_expansion(&ThetaArg::z(one()), p(), 1, 16).unwrap();
        let err = assemble_quotient(&[t, theta_prime_zero(p(), 1)], &[], &[], 0).unwrap_err();
        assert!(matches!(err, Error::TranscendentalResidue { pi_exp: 1, .. }));
    }

    #[test]
    fn unmatched_zero_is_a_pole() {
        let num = theta_expansion(&ThetaArg::z(one()), p(), 1, 16).unwrap();
        let den = theta_expansion(&ThetaArg::z(zero()).with_slot(one()), p(), 1, 16).unwrap();
        let err = assemble_quotient(&[num], &[den], &[], 0).unwrap_err();
        assert!(matches!(err, Error::ThetaPole { .. }));
    }
}
