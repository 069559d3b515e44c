//! Exact computation of the ı-divided powers of the rank-one coideal
//! subalgebra of quantum sl(2), in four families, together with the checks
//! that tie them to the quantum group: PBW closed forms, weight-wise
//! specialization into the modified quantum group, canonical-basis
//! positivity, and the ı-canonical basis of the simple modules `L(μ)`.
//!
//! All arithmetic is exact.  The core types are generic over the integer
//! coefficient ring (see [`Coeff`]); the aliases below fix it to
//! [`num_bigint::BigInt`], which is what the CLI and the verification suites
//! use.

pub mod error;
pub mod fixtures;
pub mod idp;
pub mod pbw;
pub mod qpoly;
pub mod render;
pub mod repmod;
pub mod scalar;
pub mod udot;
pub mod verify;

pub use error::{Error, Result};
pub use scalar::Coeff;

use num_bigint::BigInt;

/// `Z[q, q^{-1}]` with arbitrary-precision coefficients.
pub type IntLaurent = qpoly::Laurent<BigInt>;
/// `Q(q)`.
pub type RatQ = qpoly::RatFn<BigInt>;
/// An element of the PBW normal form over `Q(q)`.
pub type PbwElement = pbw::Pbw<BigInt>;
/// A weight-`μ` element of the modified quantum group.
pub type DotElement = udot::Dot<BigInt>;
/// An expansion over Lusztig's canonical basis at a fixed weight.
pub type CbExpansion = udot::Cb<BigInt>;
/// A vector of the simple module `L(μ)` on its canonical basis.
pub type ModuleVector = repmod::ModVec<BigInt>;
