//! Exact symbolic computation in path algebras of quivers.
//!
//! The crate builds the additive and multiplicative preprojective algebras of
//! a quiver over an exact coefficient domain (arbitrary-precision rationals,
//! prime fields, the integers, or localized integers), computes
//! noncommutative Groebner bases with certified completeness, enumerates
//! monomial bases, computes the zeroth Hochschild homology (trace space)
//! including its integer torsion, and mechanically verifies that explicit
//! algebra morphisms given by generator images descend to isomorphisms.
//!
//! All arithmetic is exact; there is no floating point anywhere in the crate.
//!
//! The main entry points:
//!
//! - [`quiver::Quiver`] and [`quiver::DoubledQuiver`] describe the underlying
//!   combinatorics, with Dynkin built-ins in [`quiver::builtin_dynkin`].
//! - [`presentation::Presentation`] pairs a doubled quiver with relations
//!   ([`presentation::additive`], [`presentation::multiplicative`], and
//!   [`Presentation::partial`](presentation::Presentation::partial) for
//!   dropping the relation at one vertex).
//! - [`groebner::complete`] runs overlap completion and certifies the result;
//!   [`groebner::GroebnerBasis`] answers normal-form, membership and basis
//!   queries.
//! - [`hh0`] computes trace spaces over fields (Groebner route) and over the
//!   integers (path-lattice route with Smith normal form torsion).
//! - [`morphism`] applies generator-image maps, checks triangularity, and
//!   certifies that a map descends through the relations.

pub mod groebner;
pub mod hh0;
pub mod morphism;
pub mod parse;
pub mod poly;
pub mod presentation;
pub mod quiver;
pub mod reproduce;
pub mod scalar;
pub mod snf;

/// Crate-wide error type.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// Malformed expression, quiver file, or map file.
    #[error("parse error: {0}")]
    Parse(String),
    /// Structurally invalid quiver or quiver operation.
    #[error("quiver error: {0}")]
    Quiver(String),
    /// A coefficient cannot be represented in the requested domain.
    #[error("coefficient {0} is not expressible over {1}")]
    Coefficient(String, String),
    /// Operation requires a star-shaped quiver.
    #[error("not star-shaped: {0}")]
    NotStarShaped(String),
    /// A query needed a certified-complete basis but the completion stopped early.
    #[error("Groebner basis incomplete: {0}")]
    Incomplete(String),
    /// Completion over a non-field domain hit a leading coefficient that is not a unit.
    #[error("non-unit leading coefficient {lead} over {domain}; completion aborted")]
    NonUnitLead { domain: String, lead: String },
    /// The degree cap was exhausted before the basis could be certified.
    #[error("degree cap {0} exceeded before certification")]
    DegreeCap(usize),
    /// Anything the engine does not support.
    #[error("unsupported: {0}")]
    Unsupported(String),
    /// Map verification failed (morphism does not descend, primes escape, ...).
    #[error("verification failed: {0}")]
    Verify(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub use poly::NCPoly;
pub use quiver::{DoubledQuiver, Quiver};
pub use scalar::{Integers, LocalizedIntegers, PrimeField, Rationals, ScalarDomain};

/// Noncommutative polynomial over the rationals.
pub type RatPoly = NCPoly<Rationals>;
/// Noncommutative polynomial over a prime field.
pub type FpPoly = NCPoly<PrimeField>;
/// Noncommutative polynomial over the integers.
pub type IntPoly = NCPoly<Integers>;
