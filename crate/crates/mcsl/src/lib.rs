//! # mcsl
//!
//! Exact construction and counting of coincidence site lattices (CSLs) and
//! multiple CSLs (MCSLs) of the body-centered cubic lattice.
//!
//! A rotation `R` is a coincidence rotation of a lattice `Γ` when `Γ ∩ RΓ`
//! has finite index in `Γ`; the intersection is the CSL and its index is the
//! coincidence index `Σ`. For the bcc lattice every coincidence rotation is
//! rational and comes from an integer quaternion, which makes the whole
//! subject computable in exact integer arithmetic:
//!
//! - [`quat`] — the ring of integer (Hurwitz) quaternions: products,
//!   one-sided Euclidean division, greatest common left divisors, least
//!   common right multiples, prime factorization, and enumeration of left
//!   ideals by norm.
//! - [`rot`] — exact rational rotation matrices parameterized by
//!   quaternions, the 24-element cubic rotation group, and the coincidence
//!   index `Σ`.
//! - [`lattice`] — sublattices of 3-space in canonical Hermite normal form:
//!   intersection, sum, index, and quotient invariants.
//! - [`csl`] — CSLs and MCSLs built two independent ways (ideal projection
//!   and geometric intersection), together with their prime-power
//!   decompositions and the two explicit representations of a two-fold
//!   intersection.
//! - [`census`] — exhaustive per-index enumeration of distinct CSLs and
//!   two-fold MCSLs, closed-form counting functions, and machine-readable
//!   comparison reports.
//! - [`verify`] — the self-check suite run by `mcsl verify all`.
//!
//! Everything is integer- or rational-exact; there is no floating point
//! anywhere in the computational paths. Lattices live in "doubled"
//! coordinates (units of half the conventional cubic edge) so that the bcc
//! lattice is the set of integer triples with mutually equal parity.
//!
//! ```
//! use mcsl::quat::Quaternion;
//! use mcsl::{csl, rot};
//!
//! // The rotation generated by the quaternion 1 + i + j.
//! let q = Quaternion::lipschitz(1, 1, 1, 0);
//! assert_eq!(rot::sigma(&q).unwrap(), 3);
//!
//! // Its CSL has index 3 in the bcc lattice, whichever way it is built.
//! let by_ideal = csl::csl_from_quaternion(&q).unwrap();
//! let by_geometry = csl::csl_geometric(&q);
//! assert_eq!(by_ideal, by_geometry);
//! ```

pub mod arith;
pub mod census;
pub mod cli;
pub mod csl;
pub mod lattice;
mod linalg;
pub mod quat;
pub mod rot;
pub mod verify;

pub use census::{CountReport, PairEqualityReport, ValuationProfile};
pub use csl::{CslRecord, McslRecord, PrimePart};
pub use lattice::{Lattice, RationalLattice};
pub use quat::{IdealHnf, Quaternion};
pub use rot::Rotation;

/// Errors produced by the quaternion, lattice, and census layers.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("quaternion must be nonzero")]
    ZeroQuaternion,
    #[error("quaternion components must all be integers or all half-integers")]
    MixedParity,
    #[error("quaternion is not primitive (content {0} > 1)")]
    NotPrimitive(i128),
    #[error("norm {0} is even; an odd norm is required here")]
    EvenNorm(i128),
    #[error("{0} is even; an odd value is required here")]
    EvenInput(i128),
    #[error("gcld(0, 0) is undefined")]
    BothZero,
    #[error("{p} does not divide the norm {norm}")]
    PrimeDoesNotDivide { p: i128, norm: i128 },
    #[error("{0} is not an odd prime")]
    NotOddPrime(i128),
    #[error("norms {0} and {1} are not coprime")]
    NotCoprime(i128, i128),
    #[error("norms must be powers of one common prime, got {0} and {1}")]
    NotSamePrimePower(i128, i128),
    #[error("one quaternion is a right multiple of the other")]
    RightMultiple,
    #[error("generators span rank {0} < 3")]
    RankDeficient(usize),
    #[error("first lattice is not a sublattice of the second")]
    NotSublattice,
    #[error("matrix is not an exact rotation (orthogonal with determinant 1)")]
    NotARotation,
    #[error("valuation profile violates a_ij <= min(a_i, a_j)")]
    InvalidProfile,
    #[error("cannot parse quaternion from {0:?}")]
    ParseQuaternion(String),
}

pub type Result<T> = std::result::Result<T, Error>;
