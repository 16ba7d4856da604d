//! Exact arithmetic for the components of unitary Shimura curves.
//!
//! Everything here is computed over the rationals (`num_rational::BigRational`),
//! so tests of symbolic identities are exact equalities rather than tolerance
//! checks.  Floating point enters only in [`volume::VolumeValue::evaluate`],
//! which renders a symbolic volume at a requested decimal precision using the
//! fixed-point reals of [`bigfloat`].
//!
//! The main pipeline, for an odd negative fundamental discriminant `D`:
//!
//! 1. [`field::make_field`] builds the field context for `k = Q(sqrt(D))`.
//! 2. [`forms::reduced_forms`] materializes the class group `CL(k)` as reduced
//!    binary quadratic forms, and [`forms::principal_genus`] the subgroup of
//!    squares `CL_0(k)`.
//! 3. [`hermitian::enumerate_spaces`] lists the signature-(1,1) hermitian
//!    spaces over `k` that admit a self-dual lattice, and
//!    [`hermitian::lattice_classes`] the Steinitz coset of each.
//! 4. [`quaternion::algebra_from_space`] attaches the quaternion algebra `B`
//!    and [`quaternion::construct_eichler_order`] the verified Eichler order
//!    `R = O_k + a*j` of level `N = |D| / disc(B)`.
//! 5. [`volume::unitary_degree`] and [`volume::unitary_volume`] compute the
//!    geometric degree and arithmetic volume of each connected component as
//!    exact rational combinations of `1`, `2 zeta'(-1)/zeta(-1)`, and `log p`.

pub mod arith;
pub mod bigfloat;
pub mod census;
pub mod field;
pub mod forms;
pub mod hermitian;
pub mod ideals;
pub mod quaternion;
pub mod report;
pub mod symbols;
pub mod verify;
pub mod volume;
pub mod zeta;
pub mod zlattice;

pub use field::{make_field, FieldContext, FieldElement};
pub use forms::{principal_genus, reduced_forms, ClassGroup, FormClass};
pub use hermitian::{enumerate_spaces, HermitianLattice, HermitianSpace};
pub use ideals::FractionalIdeal;
pub use quaternion::{EichlerOrder, QuaternionAlgebra, QuaternionElement};
pub use symbols::{hilbert_symbol, legendre, InvariantVector, Place};
pub use volume::VolumeValue;
pub use zeta::{zeta_constants, ZetaConstants};

use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    /// The integer is not an odd negative fundamental discriminant.
    #[error("invalid discriminant {0}: {1}")]
    InvalidDiscriminant(i64, String),
    /// A precondition on an argument failed.
    #[error("invalid input: {0}")]
    InvalidInput(String),
    /// An internal consistency check failed; indicates a bug, not bad input.
    #[error("internal consistency error: {0}")]
    Internal(String),
    /// Requested precision could not be certified within the iteration budget.
    #[error("precision not reached: {0}")]
    Precision(String),
}

pub type Result<T> = std::result::Result<T, Error>;
