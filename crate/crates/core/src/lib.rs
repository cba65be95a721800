//! Elliptic genera of complex manifolds, orbifolds and singular pairs as exact q-series.

pub mod arith;
pub mod catalog;
pub mod cohom;
pub mod error;
pub mod genus;
pub mod jacobi;
pub mod theta;

pub use error::{Error, Result};
