//! Weak Jacobi form generators and exact membership in their span.

mod generators;
mod membership;

pub use generators::{generator_expansion, JacobiGenerator};
pub use membership::{
    basis_monomials, membership, membership_with, JacobiMonomial, MembershipOptions,
    MembershipReport,
};
