//! Elliptic classes and genera of varieties, pairs and orbifolds, with specializations
//! and functional-equation checks.

mod checks;
mod compute;
mod roots;
mod sector;

pub use checks::{functional_equation_check, specialize, CheckReport, Law, Specialization, SpecialValue};
pub use compute::{
    elliptic_class, elliptic_class_pair, genus, higher_genus, orbifold_elliptic_genus,
    singular_genus,
};
pub use roots::{required_profile, GenusContext};
pub use sector::{
    Component, DivisorRestriction, OrbifoldData, Sector, TorsionEntry, TorsionJson, TorsionTable,
    TwistedPart,
};

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::arith::{PuiseuxSeries, Rational, SeriesJson};
use crate::error::{Error, Result};

/// Which root function is used per Chern root.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum Convention {
    /// x·θ(x/2πi − z)/θ(x/2πi)
    Eq2,
    /// (x/2πi)θ(x/2πi − z)θ'(0)/(θ(x/2πi)θ(−z)), constant term 1
    Normalized,
}

impl fmt::Display for Convention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Convention::Eq2 => "eq2",
            Convention::Normalized => "normalized",
        })
    }
}

impl FromStr for Convention {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "eq2" => Ok(Convention::Eq2),
            "normalized" => Ok(Convention::Normalized),
            _ => Err(Error::validation(format!("unknown convention {s:?}"))),
        }
    }
}

/// An integrated genus with its Jacobi-form metadata.
#[derive(Clone, Debug)]
pub struct GenusResult {
    pub series: PuiseuxSeries,
    pub weight: i64,
    pub index: Rational,
    pub dimension: u32,
    pub convention: Convention,
    pub label: Option<String>,
}

impl GenusResult {
    pub fn new(series: PuiseuxSeries, weight: i64, dimension: u32, convention: Convention) -> Self {
        GenusResult {
            series,
            weight,
            index: Rational::new(dimension as i64, 2),
            dimension,
            convention,
            label: None,
        }
    }

    pub fn truncation(&self) -> i64 {
        self.series.truncation()
    }

    /// The same genus in the `Eq2` convention.
    pub fn to_standard(&self, ctx: &GenusContext) -> Result<GenusResult> {
        match self.convention {
            Convention::Eq2 => Ok(self.clone()),
            Convention::Normalized => {
                let k = ctx.convention_factor()?.pow(self.dimension as i64)?;
                Ok(GenusResult {
                    series: self.series.try_mul(&k)?.canonical(),
                    convention: Convention::Eq2,
                    ..self.clone()
                })
            }
        }
    }

    pub fn to_json(&self) -> GenusResultJson {
        GenusResultJson {
            weight: self.weight,
            index: [self.index.to_i64_pair().0, self.index.to_i64_pair().1],
            truncation: self.truncation(),
            convention: self.convention,
            series: self.series.canonical().to_json(),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GenusResultJson {
    pub weight: i64,
    pub index: [i64; 2],
    pub truncation: i64,
    pub convention: Convention,
    pub series: SeriesJson,
}
