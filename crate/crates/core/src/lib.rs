//! Exact arithmetic behind torsion-point growth bounds for Galois modules of
//! rank r over the integers and over F_q[T].
//!
//! The crate is organised by subsystem:
//!
//! * [`ring`]: primes and factored ideals of the two supported Dedekind domains.
//! * [`residue`]: residue rings A/a, matrix groups GL_r(A/a), closed-form group
//!   orders and brute-force enumeration oracles for them.
//! * [`arith`]: the Euler-type product θ(a), truncated zeta products and
//!   Mertens tables.
//! * [`bounds`]: field-degree intervals, torsion bounds and extremal towers.
//! * [`subgroup`]: finite subgroups of GL_r(A/a) standing in for Galois
//!   images, their fixed submodules and index computations.
//! * [`check`]: the formula-versus-oracle suite.

pub mod arith;
pub mod bounds;
pub mod check;
mod error;
pub mod residue;
pub mod ring;
pub mod subgroup;

pub use error::{Error, Result};
pub use residue::{Budget, Elem, Matrix, ModuleVector, ResidueRing};
pub use ring::{enumerate_primes, primorial_ideal, FactoredIdeal, Generator, PrimeIdeal, RingSpec};

/// Serializes any displayable integer (typically a `BigUint`) as a decimal
/// string so that JSON consumers never lose precision.
pub fn serialize_decimal<T: std::fmt::Display, S: serde::Serializer>(
    value: &T,
    serializer: S,
) -> std::result::Result<S::Ok, S::Error> {
    serializer.collect_str(value)
}
