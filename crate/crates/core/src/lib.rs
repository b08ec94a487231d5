//! Exact computation with pointed fusion categories and their module categories.
//!
//! Everything is table-driven and exact: finite groups are explicit
//! multiplication tables, scalars are either rational exponents of roots of
//! unity (`cochain::UnitRoot`) or elements of a fixed cyclotomic field
//! (`cyclo::CycScalar`). No floating point enters any verdict; floats appear
//! only as Frobenius-Perron dimension estimates that are re-certified exactly
//! whenever an exact candidate exists.
//!
//! Module map:
//! - [`group`]: multiplication tables, subgroups, morphisms, double cosets.
//! - [`cochain`]: normalized cochains valued in Q/Z, coboundaries, the
//!   cohomologous test, transported and twisted-intersection cocycles.
//! - [`snf`]: Smith normal form over the integers, used by the cochain solver.
//! - [`projrep`]: counting projective irreducibles of a finite group with a
//!   fixed multiplier, plus the twisted group algebra center as a cross-check.
//! - [`modcat`]: module category descriptors over a based group, functor
//!   category ranks, dual category simples, fiber functors.
//! - [`fusion`]: fusion rings, Frobenius-Perron dimensions, crossed products
//!   by a group action and equivariantization bookkeeping.
//! - [`cyclo`]: exact cyclotomic arithmetic.
//! - [`ty`]: Tambara-Yamagami categorical data, F-symbols, the pentagon
//!   checker, symmetries of the underlying bicharacter and the
//!   group-theoreticality verdict.

pub mod cochain;
pub mod cyclo;
pub mod fusion;
pub mod group;
pub mod modcat;
pub(crate) mod par;
pub mod projrep;
pub mod snf;
pub mod ty;

use thiserror::Error;

/// Errors shared across the crate. Math bugs panic; these are contract
/// violations by the caller or inputs outside the supported shapes.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid multiplication table: {0}")]
    InvalidTable(String),
    #[error("{what} exceeds cap ({actual} > {limit})")]
    CapExceeded {
        what: &'static str,
        actual: usize,
        limit: usize,
    },
    #[error("map is not a homomorphism: image of product of {x} and {y} disagrees")]
    NotAHomomorphism { x: usize, y: usize },
    #[error("subset is not a subgroup: {0}")]
    NotASubgroup(String),
    #[error("cochain arity {0} not supported here")]
    ArityUnsupported(u8),
    #[error("operands live on different groups or supports")]
    SupportMismatch,
    #[error("cochain is not a cocycle (fails at {args:?})")]
    NotACocycle { args: Vec<usize> },
    #[error("unsupported group shape: {0}")]
    UnsupportedShape(String),
    #[error("group is not abelian")]
    NonAbelian,
    #[error("bilinear form is degenerate")]
    Degenerate,
    #[error("expected an odd prime, got {0}")]
    NotAnOddPrime(usize),
    #[error("invalid Tambara-Yamagami datum: {0}")]
    InvalidTY(String),
    #[error("fusion ring axiom fails: {0}")]
    RingAxiom(String),
    #[error("not a ring action: {0}")]
    NotAnAction(String),
    #[error("stabilizer is nonabelian; its character degrees are not available")]
    StabilizerUnsupported,
    #[error("equivariant profile mismatch: {0}")]
    ProfileMismatch(String),
    #[error("root of unity exponent {num}/{den} does not live in the cyclotomic field of level {level}")]
    LevelMismatch { num: String, den: String, level: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
