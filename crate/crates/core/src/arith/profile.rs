use serde::{Deserialize, Serialize};

use super::cyclotomic::{cyclotomic_field, CyclotomicField};
use super::rational::{lcm_u64, Rational};
use crate::error::{Error, Result};

/// Common exponent denominators shared by every series of one computation.
///
/// y-exponents are multiples of 1/`ly`, q-exponents multiples of 1/`nq`,
/// and all phases live in Q(ζ_`nzeta`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ExponentProfile {
    pub ly: u32,
    pub nq: u32,
    pub nzeta: u32,
}

impl Default for ExponentProfile {
    fn default() -> Self {
        Self::BASE
    }
}

impl ExponentProfile {
    /// Smallest admissible profile: y^{1/2}, q^{1/8}, fourth roots of unity.
    pub const BASE: ExponentProfile = ExponentProfile {
        ly: 2,
        nq: 8,
        nzeta: 4,
    };

    pub fn new(ly: u32, nq: u32, nzeta: u32) -> Result<Self> {
        if ly == 0 || ly % 2 != 0 {
            return Err(Error::profile(format!("Ly = {ly} must be a positive multiple of 2")));
        }
        if nq == 0 || nq % 8 != 0 {
            return Err(Error::profile(format!("Nq = {nq} must be a positive multiple of 8")));
        }
        if nzeta == 0 || nzeta % 4 != 0 {
            return Err(Error::profile(format!(
                "Nzeta = {nzeta} must be a positive multiple of 4"
            )));
        }
        Ok(ExponentProfile { ly, nq, nzeta })
    }

    pub fn field(&self) -> &'static CyclotomicField {
        cyclotomic_field(self.nzeta)
    }

    pub fn join(&self, other: &ExponentProfile) -> ExponentProfile {
        ExponentProfile {
            ly: lcm_u64(self.ly as u64, other.ly as u64) as u32,
            nq: lcm_u64(self.nq as u64, other.nq as u64) as u32,
            nzeta: lcm_u64(self.nzeta as u64, other.nzeta as u64) as u32,
        }
    }

    /// True when every exponent of `self` is representable in `other`.
    pub fn divides(&self, other: &ExponentProfile) -> bool {
        other.ly % self.ly == 0 && other.nq % self.nq == 0 && other.nzeta % self.nzeta == 0
    }

    /// Enlarges the profile so that y^{r} is representable.
    pub fn with_y_exponent(self, r: &Rational) -> Self {
        ExponentProfile {
            ly: lcm_u64(self.ly as u64, r.denom_u64()) as u32,
            ..self
        }
    }

    pub fn with_q_exponent(self, r: &Rational) -> Self {
        ExponentProfile {
            nq: lcm_u64(self.nq as u64, r.denom_u64()) as u32,
            ..self
        }
    }

    pub fn with_root_of_unity(self, r: &Rational) -> Self {
        ExponentProfile {
            nzeta: lcm_u64(self.nzeta as u64, r.denom_u64()) as u32,
            ..self
        }
    }

    /// Numerator of `r` over `ly`, if representable.
    pub fn y_num(&self, r: &Rational) -> Result<i64> {
        (r * &Rational::from_integer(self.ly as i64))
            .to_i64()
            .ok_or_else(|| Error::profile(format!("y^({r}) not representable with Ly = {}", self.ly)))
    }

    pub fn q_num(&self, r: &Rational) -> Result<i64> {
        (r * &Rational::from_integer(self.nq as i64))
            .to_i64()
            .ok_or_else(|| Error::profile(format!("q^({r}) not representable with Nq = {}", self.nq)))
    }

    pub fn y_exp(&self, num: i64) -> Rational {
        Rational::new(num, self.ly as i64)
    }

    pub fn q_exp(&self, num: i64) -> Rational {
        Rational::new(num, self.nq as i64)
    }

    /// Truncation numerator corresponding to an integer number of q-orders.
    pub fn q_orders(&self, orders: i64) -> i64 {
        orders * self.nq as i64
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert!(ExponentProfile::new(2, 8, 4).is_ok());
        assert!(ExponentProfile::new(3, 8, 4).is_err());
        assert!(ExponentProfile::new(2, 12, 4).is_err());
        assert!(ExponentProfile::new(2, 8, 6).is_err());
    }

    #[test]
    fn growth_by_exponents() {
        let p = ExponentProfile::BASE
            .with_y_exponent(&Rational::new(2, 3))
            .with_q_exponent(&Rational::new(1, 16))
            .with_root_of_unity(&Rational::new(1, 6));
        assert_eq!(p, ExponentProfile { ly: 6, nq: 16, nzeta: 12 });
        assert_eq!(p.y_num(&Rational::new(1, 3)).unwrap(), 2);
        assert!(ExponentProfile::BASE.y_num(&Rational::new(1, 3)).is_err());
    }
}
