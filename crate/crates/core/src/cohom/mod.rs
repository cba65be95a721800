//! Truncated graded rings, classes, varieties and characteristic classes from root functions.

mod class;
mod genus_class;
mod ring;
mod variety;

pub use class::{CohomClass, RationalClass};
pub use genus_class::{genus_class_from_root_function, product_over_roots, substitute_nilpotent};
pub use ring::{parse_monomial, Generator, Monomial, Relation, Ring, RingKind};
pub use variety::{integrate_with, ChernData, Divisor, PullbackClass, Variety};
pub(crate) use variety::{check_klt, validate_integral};
