//! Exact arithmetic: rationals, cyclotomic numbers, y-rational functions and q-series.

pub mod cyclotomic;
pub mod laurent;
pub mod profile;
pub mod rational;
pub mod series;
pub mod slot;
pub mod yfraction;

pub use cyclotomic::{cyclotomic_field, Cyclotomic, CyclotomicField};
pub use laurent::LaurentPoly;
pub use profile::ExponentProfile;
pub use rational::Rational;
pub use series::{PuiseuxSeries, SeriesJson, EXACT};
pub use slot::SlotSeries;
pub use yfraction::YFraction;
