//! The integer coefficient type the whole crate is generic over.
//!
//! Everything is exact, so the scalar is an integer ring `C` (typically
//! [`num_bigint::BigInt`]); rational functions are built on top as fractions
//! of Laurent polynomials over `C`.  Fixed-width integers such as `i64` and
//! `i128` also satisfy the bound and are handy in tests, but overflow on
//! large inputs.

use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::str::FromStr;

use num_integer::Integer;
use num_traits::{FromPrimitive, Signed, ToPrimitive};

/// Exact integer coefficients.
pub trait Coeff:
    Clone
    + Debug
    + Display
    + FromStr
    + Eq
    + Ord
    + Hash
    + Integer
    + Signed
    + FromPrimitive
    + ToPrimitive
    + Send
    + Sync
    + 'static
{
}

impl<T> Coeff for T where
    T: Clone
        + Debug
        + Display
        + FromStr
        + Eq
        + Ord
        + Hash
        + Integer
        + Signed
        + FromPrimitive
        + ToPrimitive
        + Send
        + Sync
        + 'static
{
}

/// Lift a machine integer into the coefficient type.
#[inline]
pub fn int<C: Coeff>(x: i64) -> C {
    C::from_i64(x).expect("coefficient type cannot represent a machine integer")
}
