//! Quantum integers, factorials and binomials.
//!
//! Everything here lives in `Z[q, q^{-1}]`.  Binomials are computed from
//! their product definitions with exact division, so a non-polynomial
//! quotient surfaces as [`Error::InexactDivision`] rather than being
//! truncated.

use super::Laurent;
use crate::error::Result;
use crate::scalar::{int, Coeff};

/// `[m] = (q^m - q^-m) / (q - q^-1)`.
pub fn qint<C: Coeff>(m: i64) -> Laurent<C> {
    let sign = if m < 0 { -1 } else { 1 };
    let k = m.abs();
    Laurent::from_terms((0..k).map(|j| (k - 1 - 2 * j, int::<C>(sign))))
}

/// `[b]! = [1][2]...[b]`.
pub fn qfact<C: Coeff>(b: u32) -> Laurent<C> {
    (1..=b as i64).fold(Laurent::one(), |acc, i| &acc * &qint(i))
}

/// The quantum binomial `[m choose b]` for any integer `m`.
pub fn qbinom<C: Coeff>(m: i64, b: u32) -> Result<Laurent<C>> {
    let num = (1..=b as i64).fold(Laurent::one(), |acc, i| &acc * &qint(m - i + 1));
    num.div_exact(&qfact(b))
}

/// `[m]_{q^2}`.
pub fn qint2<C: Coeff>(m: i64) -> Laurent<C> {
    qint(m).substitute_power(2)
}

pub fn qfact2<C: Coeff>(b: u32) -> Laurent<C> {
    qfact(b).substitute_power(2)
}

/// `[m choose b]_{q^2}`.
pub fn qbinom2<C: Coeff>(m: i64, b: u32) -> Result<Laurent<C>> {
    Ok(qbinom(m, b)?.substitute_power(2))
}

/// `prod_{i=1}^c (q^{4(m+i-1)} - 1) / (q^{-4i} - 1)`.  Nonnegative for `m <= 0`;
/// for `m >= 1` its sign is `(-1)^c`.
pub fn cbinom<C: Coeff>(m: i64, c: u32) -> Result<Laurent<C>> {
    let mut num = Laurent::one();
    let mut den = Laurent::one();
    for i in 1..=c as i64 {
        num = &num * &(&Laurent::q_pow(4 * (m + i - 1)) - &Laurent::one());
        den = &den * &(&Laurent::q_pow(-4 * i) - &Laurent::one());
    }
    num.div_exact(&den)
}

/// Binomial coefficient `x choose 2` extended to all integers.
pub fn choose2(x: i64) -> i64 {
    x * (x - 1) / 2
}
