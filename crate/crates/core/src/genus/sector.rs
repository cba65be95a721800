use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::arith::{Cyclotomic, CyclotomicField, Rational};
use crate::cohom::{check_klt, validate_integral, ChernData, PullbackClass, RationalClass, Ring};
use crate::error::{Error, Result};

/// Eigenbundle with character e^{2πiλ(g)} under g and e^{2πiλ(h)} under h.
#[derive(Clone, Debug, PartialEq)]
pub struct TwistedPart {
    pub chern: ChernData,
    pub lambda_g: Rational,
    pub lambda_h: Rational,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DivisorRestriction {
    pub name: String,
    /// c₁ of the divisor bundle restricted; zero when the component is not inside it.
    pub e_class: RationalClass,
    pub eps_g: Rational,
    pub eps_h: Rational,
    pub delta: Rational,
}

/// One connected component of the common fixed locus of (g, h).
#[derive(Clone, Debug)]
pub struct Component {
    pub ring: Arc<Ring>,
    pub integral: Vec<Rational>,
    pub zero_part: ChernData,
    pub twisted_parts: Vec<TwistedPart>,
    pub divisor_restrictions: Vec<DivisorRestriction>,
    pub restricted_pullbacks: Vec<PullbackClass>,
}

#[derive(Clone, Debug)]
pub struct Sector {
    pub g: String,
    pub h: String,
    pub components: Vec<Component>,
}

#[derive(Clone, Debug)]
pub struct OrbifoldData {
    pub group_order: u32,
    pub sectors: Vec<Sector>,
}

fn in_unit_interval(r: &Rational) -> bool {
    !r.is_negative() && r < &Rational::one()
}

impl Component {
    pub fn validate(&self, dimension: u32) -> Result<()> {
        validate_integral(&self.ring, &self.integral, self.ring.dimension())?;
        if self.zero_part.rank != self.ring.dimension() {
            return Err(Error::validation(format!(
                "zero eigenbundle rank {} differs from component dimension {}",
                self.zero_part.rank,
                self.ring.dimension()
            )));
        }
        let total: u32 =
            self.zero_part.rank + self.twisted_parts.iter().map(|t| t.chern.rank).sum::<u32>();
        if total != dimension {
            return Err(Error::validation(format!(
                "character ranks sum to {total}, expected {dimension}"
            )));
        }
        for t in &self.twisted_parts {
            if !in_unit_interval(&t.lambda_g) || !in_unit_interval(&t.lambda_h) {
                return Err(Error::validation(format!(
                    "characters ({}, {}) must lie in [0, 1)",
                    t.lambda_g, t.lambda_h
                )));
            }
            if t.lambda_g.is_zero() && t.lambda_h.is_zero() {
                return Err(Error::CharacterBookkeeping(
                    "twisted part with trivial characters belongs to the zero eigenbundle".into(),
                ));
            }
        }
        for d in &self.divisor_restrictions {
            check_klt(&d.name, &d.delta)?;
            if !in_unit_interval(&d.eps_g) || !in_unit_interval(&d.eps_h) {
                return Err(Error::validation(format!(
                    "divisor {} characters must lie in [0, 1)",
                    d.name
                )));
            }
        }
        Ok(())
    }
}

impl OrbifoldData {
    pub fn validate(&self, dimension: u32) -> Result<()> {
        if self.group_order == 0 {
            return Err(Error::validation("group order must be positive"));
        }
        for s in &self.sectors {
            for c in &s.components {
                c.validate(dimension)?;
            }
        }
        Ok(())
    }
}

/// Discrete torsion weights δ(g,h) = e^{2πi·root(g,h)}; absent pairs have δ = 1.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TorsionTable {
    roots: BTreeMap<(String, String), Rational>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TorsionEntry {
    pub g: String,
    pub h: String,
    pub root: Rational,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TorsionJson {
    pub entries: Vec<TorsionEntry>,
}

impl TorsionTable {
    pub fn trivial() -> Self {
        Self::default()
    }

    pub fn from_entries(entries: impl IntoIterator<Item = (String, String, Rational)>) -> Result<Self> {
        let mut roots = BTreeMap::new();
        for (g, h, a) in entries {
            let a = a.fract_positive();
            if roots.insert((g.clone(), h.clone()), a).is_some() {
                return Err(Error::validation(format!("duplicate torsion entry ({g}, {h})")));
            }
        }
        let t = TorsionTable { roots };
        t.validate()?;
        Ok(t)
    }

    pub fn from_json(j: &TorsionJson) -> Result<Self> {
        Self::from_entries(
            j.entries
                .iter()
                .map(|e| (e.g.clone(), e.h.clone(), e.root.clone())),
        )
    }

    pub fn to_json(&self) -> TorsionJson {
        TorsionJson {
            entries: self
                .roots
                .iter()
                .map(|((g, h), a)| TorsionEntry {
                    g: g.clone(),
                    h: h.clone(),
                    root: a.clone(),
                })
                .collect(),
        }
    }

    /// δ(g,g) = 1 and δ(g,h)·δ(h,g) = 1.
    pub fn validate(&self) -> Result<()> {
        for ((g, h), a) in &self.roots {
            let b = self.root(h, g);
            if !(a + &b).is_integer() {
                return Err(Error::validation(format!(
                    "torsion weights violate delta({g},{h})*delta({h},{g}) = 1"
                )));
            }
            if g == h && !a.is_zero() {
                return Err(Error::validation(format!("torsion weight delta({g},{g}) must be 1")));
            }
        }
        Ok(())
    }

    pub fn root(&self, g: &str, h: &str) -> Rational {
        self.roots
            .get(&(g.to_string(), h.to_string()))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn delta(&self, field: &'static CyclotomicField, g: &str, h: &str) -> Result<Cyclotomic> {
        Cyclotomic::root_of_unity(field, &self.root(g, h))
    }

    /// Pointwise product of weights.
    pub fn compose(&self, other: &Self) -> Self {
        let mut roots = self.roots.clone();
        for (k, a) in &other.roots {
            let s = (&roots.get(k).cloned().unwrap_or_else(Rational::zero) + a).fract_positive();
            roots.insert(k.clone(), s);
        }
        roots.retain(|_, a| !a.is_zero());
        TorsionTable { roots }
    }

    pub fn inverse(&self) -> Self {
        TorsionTable {
            roots: self
                .roots
                .iter()
                .map(|(k, a)| (k.clone(), (-a).fract_positive()))
                .filter(|(_, a)| !a.is_zero())
                .collect(),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.roots.values().all(|a| a.is_zero())
    }

    /// Denominators of all weights.
    pub fn roots(&self) -> impl Iterator<Item = &Rational> {
        self.roots.values()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(g: &str, h: &str, a: Rational) -> (String, String, Rational) {
        (g.into(), h.into(), a)
    }

    #[test]
    fn antisymmetric_table_is_valid() {
        let t = TorsionTable::from_entries([
            e("a", "b", Rational::new(1, 2)),
            e("b", "a", Rational::new(1, 2)),
        ])
        .unwrap();
        assert_eq!(t.root("a", "b"), Rational::new(1, 2));
        assert!(t.compose(&t.inverse()).is_trivial());
    }

    #[test]
    fn rejects_non_inverse_pair() {
        let err = TorsionTable::from_entries([
            e("a", "b", Rational::new(1, 3)),
            e("b", "a", Rational::new(1, 3)),
        ]);
        assert!(err.is_err());
        assert!(TorsionTable::from_entries([e("a", "a", Rational::new(1, 2))]).is_err());
    }
}
