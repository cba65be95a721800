use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::arith::Rational;
use crate::cohom::{
    parse_monomial, ChernData, Divisor, Generator, PullbackClass, RationalClass, Relation, Ring,
    RingKind, Variety,
};
use crate::error::{Error, Result};
use crate::genus::{Component, DivisorRestriction, OrbifoldData, Sector, TwistedPart};

/// Largest accepted denominator for characters, weights and torsion roots.
pub const MAX_CHARACTER_DENOMINATOR: u64 = 120;

pub type TermsJson = Vec<(String, Rational)>;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct GeneratorJson {
    pub name: String,
    pub degree: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cap: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct RelationJson {
    pub monomial: String,
    pub combination: TermsJson,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct RingJson {
    pub kind: String,
    #[serde(default)]
    pub generators: Vec<GeneratorJson>,
    #[serde(default)]
    pub relations: Vec<RelationJson>,
    /// Degree bound; defaults to the dimension of the enclosing variety.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dimension: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct DivisorJson {
    pub name: String,
    pub class: TermsJson,
    pub delta: Rational,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct PullbackJson {
    pub name: String,
    pub class: TermsJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub half_degree: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct ChernJson {
    pub chern: TermsJson,
    pub rank: u32,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct TwistedJson {
    pub chern: TermsJson,
    pub rank: u32,
    pub lambda_g: Rational,
    pub lambda_h: Rational,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct DivisorRestrictionJson {
    pub name: String,
    pub e_class: TermsJson,
    pub eps_g: Rational,
    pub eps_h: Rational,
    pub delta: Rational,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct ComponentJson {
    pub ring: RingJson,
    pub integrate: TermsJson,
    pub zero_part: ChernJson,
    #[serde(default)]
    pub twisted_parts: Vec<TwistedJson>,
    #[serde(default)]
    pub divisor_restrictions: Vec<DivisorRestrictionJson>,
    #[serde(default)]
    pub restricted_pullbacks: Vec<PullbackJson>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct SectorJson {
    pub g: String,
    pub h: String,
    pub components: Vec<ComponentJson>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct VarietyJson {
    pub name: String,
    pub dimension: u32,
    pub ring: RingJson,
    pub chern: TermsJson,
    pub integrate: TermsJson,
    #[serde(default)]
    pub divisors: Vec<DivisorJson>,
    #[serde(default)]
    pub pullback_classes: Vec<PullbackJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group_order: Option<u32>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub sectors: Vec<SectorJson>,
}

fn check_denominator(what: &str, r: &Rational) -> Result<()> {
    if r.denom_u64() > MAX_CHARACTER_DENOMINATOR {
        return Err(Error::validation(format!(
            "{what} = {r} has denominator above {MAX_CHARACTER_DENOMINATOR}"
        )));
    }
    Ok(())
}

fn ring_from_json(j: &RingJson, default_dim: u32) -> Result<Arc<Ring>> {
    let gens: Vec<Generator> = j
        .generators
        .iter()
        .map(|g| Generator {
            name: g.name.clone(),
            degree: g.degree,
            cap: g.cap,
        })
        .collect();
    let ring = match j.kind.as_str() {
        "formalPoint" => {
            if !gens.is_empty() || !j.relations.is_empty() {
                return Err(Error::validation("formalPoint ring takes no generators"));
            }
            Ring::point()
        }
        "formalTop" => {
            let d = match gens.as_slice() {
                [] => j.dimension.unwrap_or(default_dim),
                [g] => g.degree,
                _ => return Err(Error::validation("formalTop ring has one generator")),
            };
            let mut r = Ring::formal_top(d);
            if let [g] = gens.as_slice() {
                if g.name != "omega" {
                    r = Ring::new(
                        RingKind::FormalTop,
                        vec![Generator {
                            name: g.name.clone(),
                            degree: d,
                            cap: Some(2),
                        }],
                        Vec::new(),
                        d,
                    )?;
                }
            }
            r
        }
        "truncatedPolynomial" => {
            let rels = j
                .relations
                .iter()
                .map(|r| {
                    Ok(Relation {
                        lhs: parse_monomial(&gens, &r.monomial)?,
                        rhs: r
                            .combination
                            .iter()
                            .map(|(m, c)| Ok((parse_monomial(&gens, m)?, c.clone())))
                            .collect::<Result<_>>()?,
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            Ring::new(
                RingKind::TruncatedPolynomial,
                gens,
                rels,
                j.dimension.unwrap_or(default_dim),
            )?
        }
        other => return Err(Error::validation(format!("unknown ring kind {other:?}"))),
    };
    Ok(Arc::new(ring))
}

fn ring_to_json(r: &Ring) -> RingJson {
    RingJson {
        kind: r.kind().as_str().to_string(),
        generators: r
            .generators()
            .iter()
            .map(|g| GeneratorJson {
                name: g.name.clone(),
                degree: g.degree,
                cap: g.cap,
            })
            .collect(),
        relations: r
            .relations()
            .iter()
            .map(|rel| RelationJson {
                monomial: r.format_monomial(&rel.lhs),
                combination: rel
                    .rhs
                    .iter()
                    .map(|(m, c)| (r.format_monomial(m), c.clone()))
                    .collect(),
            })
            .collect(),
        dimension: Some(r.dimension()),
    }
}

fn integral_from_terms(ring: &Arc<Ring>, terms: &TermsJson) -> Result<Vec<Rational>> {
    let mut out = vec![Rational::zero(); ring.rank()];
    for (m, v) in terms {
        let mono = ring.parse_monomial(m)?;
        let i = ring
            .index_of(&mono)
            .ok_or_else(|| Error::validation(format!("integrate: {m} is not a basis monomial")))?;
        out[i] = v.clone();
    }
    Ok(out)
}

fn integral_to_terms(ring: &Ring, integral: &[Rational]) -> TermsJson {
    integral
        .iter()
        .enumerate()
        .filter(|(_, v)| !v.is_zero())
        .map(|(i, v)| (ring.format_monomial(&ring.basis()[i]), v.clone()))
        .collect()
}

fn pullback_from_json(ring: &Arc<Ring>, p: &PullbackJson) -> Result<PullbackClass> {
    let pb = PullbackClass::new(p.name.clone(), RationalClass::parse(ring, &p.class)?)?;
    if let Some(k) = p.half_degree {
        if k != pb.half_degree && !pb.class.is_zero() {
            return Err(Error::validation(format!(
                "pullback {} declares half degree {k} but has degree {}",
                p.name, pb.half_degree
            )));
        }
        return Ok(PullbackClass {
            half_degree: k,
            ..pb
        });
    }
    Ok(pb)
}

fn pullback_to_json(p: &PullbackClass) -> PullbackJson {
    PullbackJson {
        name: p.name.clone(),
        class: p.class.terms(),
        half_degree: Some(p.half_degree),
    }
}

fn component_from_json(c: &ComponentJson, dimension: u32) -> Result<Component> {
    let ring = ring_from_json(&c.ring, dimension)?;
    let integral = integral_from_terms(&ring, &c.integrate)?;
    let zero_part = ChernData::new(RationalClass::parse(&ring, &c.zero_part.chern)?, c.zero_part.rank)?;
    let twisted_parts = c
        .twisted_parts
        .iter()
        .map(|t| {
            check_denominator("lambdaG", &t.lambda_g)?;
            check_denominator("lambdaH", &t.lambda_h)?;
            Ok(TwistedPart {
                chern: ChernData::new(RationalClass::parse(&ring, &t.chern)?, t.rank)?,
                lambda_g: t.lambda_g.clone(),
                lambda_h: t.lambda_h.clone(),
            })
        })
        .collect::<Result<_>>()?;
    let divisor_restrictions = c
        .divisor_restrictions
        .iter()
        .map(|d| {
            for (w, r) in [("epsG", &d.eps_g), ("epsH", &d.eps_h), ("delta", &d.delta)] {
                check_denominator(w, r)?;
            }
            Ok(DivisorRestriction {
                name: d.name.clone(),
                e_class: RationalClass::parse(&ring, &d.e_class)?,
                eps_g: d.eps_g.clone(),
                eps_h: d.eps_h.clone(),
                delta: d.delta.clone(),
            })
        })
        .collect::<Result<_>>()?;
    let restricted_pullbacks = c
        .restricted_pullbacks
        .iter()
        .map(|p| pullback_from_json(&ring, p))
        .collect::<Result<_>>()?;
    Ok(Component {
        ring,
        integral,
        zero_part,
        twisted_parts,
        divisor_restrictions,
        restricted_pullbacks,
    })
}

fn component_to_json(c: &Component) -> ComponentJson {
    ComponentJson {
        ring: ring_to_json(&c.ring),
        integrate: integral_to_terms(&c.ring, &c.integral),
        zero_part: ChernJson {
            chern: c.zero_part.total.terms(),
            rank: c.zero_part.rank,
        },
        twisted_parts: c
            .twisted_parts
            .iter()
            .map(|t| TwistedJson {
                chern: t.chern.total.terms(),
                rank: t.chern.rank,
                lambda_g: t.lambda_g.clone(),
                lambda_h: t.lambda_h.clone(),
            })
            .collect(),
        divisor_restrictions: c
            .divisor_restrictions
            .iter()
            .map(|d| DivisorRestrictionJson {
                name: d.name.clone(),
                e_class: d.e_class.terms(),
                eps_g: d.eps_g.clone(),
                eps_h: d.eps_h.clone(),
                delta: d.delta.clone(),
            })
            .collect(),
        restricted_pullbacks: c.restricted_pullbacks.iter().map(pullback_to_json).collect(),
    }
}

impl TryFrom<&VarietyJson> for Variety {
    type Error = Error;

    fn try_from(j: &VarietyJson) -> Result<Variety> {
        let ring = ring_from_json(&j.ring, j.dimension)?;
        if ring.dimension() != j.dimension {
            return Err(Error::validation(format!(
                "ring dimension {} differs from variety dimension {}",
                ring.dimension(),
                j.dimension
            )));
        }
        let tangent = ChernData::new(RationalClass::parse(&ring, &j.chern)?, j.dimension)?;
        let integral = integral_from_terms(&ring, &j.integrate)?;
        let divisors = j
            .divisors
            .iter()
            .map(|d| {
                check_denominator("delta", &d.delta)?;
                Ok(Divisor {
                    name: d.name.clone(),
                    class: RationalClass::parse(&ring, &d.class)?,
                    delta: d.delta.clone(),
                })
            })
            .collect::<Result<_>>()?;
        let pullbacks = j
            .pullback_classes
            .iter()
            .map(|p| pullback_from_json(&ring, p))
            .collect::<Result<_>>()?;
        let orbifold = if j.sectors.is_empty() {
            if j.group_order.is_some() {
                return Err(Error::validation("groupOrder given without sectors"));
            }
            None
        } else {
            let group_order = j
                .group_order
                .ok_or_else(|| Error::validation("sectors need groupOrder"))?;
            let sectors = j
                .sectors
                .iter()
                .map(|s| {
                    Ok(Sector {
                        g: s.g.clone(),
                        h: s.h.clone(),
                        components: s
                            .components
                            .iter()
                            .map(|c| component_from_json(c, j.dimension))
                            .collect::<Result<_>>()?,
                    })
                })
                .collect::<Result<_>>()?;
            Some(OrbifoldData {
                group_order,
                sectors,
            })
        };
        let v = Variety {
            name: j.name.clone(),
            dimension: j.dimension,
            ring,
            tangent,
            integral,
            divisors,
            pullbacks,
            orbifold,
        };
        v.validate()?;
        Ok(v)
    }
}

impl From<&Variety> for VarietyJson {
    fn from(v: &Variety) -> Self {
        VarietyJson {
            name: v.name.clone(),
            dimension: v.dimension,
            ring: ring_to_json(&v.ring),
            chern: v.tangent.total.terms(),
            integrate: integral_to_terms(&v.ring, &v.integral),
            divisors: v
                .divisors
                .iter()
                .map(|d| DivisorJson {
                    name: d.name.clone(),
                    class: d.class.terms(),
                    delta: d.delta.clone(),
                })
                .collect(),
            pullback_classes: v.pullbacks.iter().map(pullback_to_json).collect(),
            group_order: v.orbifold.as_ref().map(|o| o.group_order),
            sectors: v
                .orbifold
                .as_ref()
                .map(|o| {
                    o.sectors
                        .iter()
                        .map(|s| SectorJson {
                            g: s.g.clone(),
                            h: s.h.clone(),
                            components: s.components.iter().map(component_to_json).collect(),
                        })
                        .collect()
                })
                .unwrap_or_default(),
        }
    }
}

pub fn variety_from_str(s: &str) -> Result<Variety> {
    let j: VarietyJson = serde_json::from_str(s)?;
    Variety::try_from(&j)
}

pub fn variety_to_string(v: &Variety) -> Result<String> {
    Ok(serde_json::to_string_pretty(&VarietyJson::from(v))?)
}

pub fn load_variety(path: impl AsRef<Path>) -> Result<Variety> {
    variety_from_str(&std::fs::read_to_string(path)?)
}

pub fn save_variety(v: &Variety, path: impl AsRef<Path>) -> Result<()> {
    std::fs::write(path, variety_to_string(v)?)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{build, CATALOG_KEYS};

    #[test]
    fn round_trip_every_entry() {
        for key in CATALOG_KEYS {
            let v = build(key).unwrap();
            let s = variety_to_string(&v).unwrap();
            let back = variety_from_str(&s).unwrap();
            assert_eq!(variety_to_string(&back).unwrap(), s, "{key}");
        }
    }

    #[test]
    fn minus_one_delta_is_not_klt() {
        let mut j = VarietyJson::from(&build("blowup-p2").unwrap());
        j.divisors[0].delta = Rational::from_integer(-1);
        let err = Variety::try_from(&j).unwrap_err();
        assert!(matches!(err, Error::NotKlt { .. }));
    }

    #[test]
    fn character_ranks_must_sum_to_dimension() {
        let mut j = VarietyJson::from(&build("kummer").unwrap());
        j.sectors[1].components[0].twisted_parts[0].rank = 1;
        assert!(matches!(Variety::try_from(&j), Err(Error::Validation(_))));
    }

    #[test]
    fn large_denominators_rejected() {
        let mut j = VarietyJson::from(&build("kummer").unwrap());
        j.sectors[1].components[0].twisted_parts[0].lambda_h = Rational::new(1, 1000);
        assert!(Variety::try_from(&j).is_err());
    }
}
