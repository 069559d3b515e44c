//! Exact arithmetic in `Z[q, q^{-1}]` and `Q(q)`, and the q-combinatorics
//! built on it.

mod dense;
mod laurent;
mod qnum;
mod ratfn;

pub use laurent::Laurent;
pub use qnum::{cbinom, choose2, qbinom, qbinom2, qfact, qfact2, qint, qint2};
pub use ratfn::RatFn;

use crate::scalar::Coeff;

/// The Laurent polynomial a rational function equals, if any.
pub fn is_laurent<C: Coeff>(r: &RatFn<C>) -> Option<Laurent<C>> {
    r.as_laurent().cloned()
}

/// Membership in `N[q, q^{-1}]`.
pub fn is_nonneg<C: Coeff>(p: &Laurent<C>) -> bool {
    p.is_nonneg()
}

/// Membership in `q^{-1} N[q^{-1}]`.
pub fn is_qinv_nonneg<C: Coeff>(p: &Laurent<C>) -> bool {
    p.is_qinv_nonneg()
}
