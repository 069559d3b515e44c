use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_traits::{One, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::dense;
use crate::error::{Error, Result};
use crate::scalar::{int, Coeff};

/// A Laurent polynomial in `q` with integer coefficients, stored sparsely.
///
/// No stored coefficient is ever zero, so structural equality is value
/// equality.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Laurent<C> {
    terms: BTreeMap<i64, C>,
}

impl<C: Coeff> Default for Laurent<C> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<C: Coeff> Laurent<C> {
    pub fn zero() -> Self {
        Laurent {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::monomial(0, C::one())
    }

    pub fn constant(c: C) -> Self {
        Self::monomial(0, c)
    }

    pub fn monomial(exp: i64, c: C) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        Laurent { terms }
    }

    /// `q^exp`.
    pub fn q_pow(exp: i64) -> Self {
        Self::monomial(exp, C::one())
    }

    /// `sign * q^exp` for a sign of `+1` or `-1`.
    pub fn signed_q_pow(sign: i64, exp: i64) -> Self {
        Self::monomial(exp, int(sign))
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, C)>>(iter: I) -> Self {
        let mut out = Self::zero();
        for (e, c) in iter {
            out.add_term(e, c);
        }
        out
    }

    /// From small integer pairs; convenient in tests and fixtures.
    pub fn from_pairs(pairs: &[(i64, i64)]) -> Self {
        Self::from_terms(pairs.iter().map(|&(e, c)| (e, int(c))))
    }

    pub fn add_term(&mut self, exp: i64, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&exp) {
            Some(v) => {
                *v = v.clone() + c;
                if v.is_zero() {
                    self.terms.remove(&exp);
                }
            }
            None => {
                self.terms.insert(exp, c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).map_or(false, |c| c.is_one())
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms.contains_key(&0))
    }

    /// A single term `c q^e`.
    pub fn as_monomial(&self) -> Option<(i64, &C)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(e, c)| (*e, c))
        } else {
            None
        }
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &C)> + '_ {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exp: i64) -> C {
        self.terms.get(&exp).cloned().unwrap_or_else(C::zero)
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// Coefficient of the highest power of `q`.
    pub fn leading_coeff(&self) -> Option<&C> {
        self.terms.values().next_back()
    }

    /// Multiply by `q^k`.
    pub fn shift(&self, k: i64) -> Self {
        if k == 0 {
            return self.clone();
        }
        Laurent {
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    pub fn scale(&self, s: &C) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        Laurent {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (*e, c.clone() * s.clone()))
                .collect(),
        }
    }

    /// Substitute `q -> q^k`.  `k = 2` gives the `q^2`-analogues, `k = -1` the bar map.
    pub fn substitute_power(&self, k: i64) -> Self {
        assert!(k != 0, "q -> q^0 is not a ring endomorphism of Laurent polynomials");
        Laurent {
            terms: self.terms.iter().map(|(e, c)| (e * k, c.clone())).collect(),
        }
    }

    /// The bar involution `q -> q^{-1}`.
    pub fn bar(&self) -> Self {
        self.substitute_power(-1)
    }

    pub fn is_bar_invariant(&self) -> bool {
        self.terms
            .iter()
            .all(|(e, c)| self.terms.get(&-e).map_or(false, |d| d == c))
    }

    /// All coefficients are non-negative (membership in `N[q, q^{-1}]`).
    pub fn is_nonneg(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }

    /// Membership in `q^{-1} N[q^{-1}]`.
    pub fn is_qinv_nonneg(&self) -> bool {
        self.terms.iter().all(|(e, c)| *e < 0 && !c.is_negative())
    }

    pub fn content(&self) -> C {
        let v: Vec<C> = self.terms.values().cloned().collect();
        dense::content(&v)
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..n {
            out = &out * self;
        }
        out
    }

    /// Split into `q^shift * p(q)` with `p` an ordinary polynomial, `p(0) != 0`.
    pub(crate) fn to_dense(&self) -> (i64, Vec<C>) {
        let Some(lo) = self.min_exp() else {
            return (0, Vec::new());
        };
        let hi = self.max_exp().unwrap();
        let mut v = vec![C::zero(); (hi - lo + 1) as usize];
        for (e, c) in &self.terms {
            v[(e - lo) as usize] = c.clone();
        }
        (lo, v)
    }

    pub(crate) fn from_dense(shift: i64, p: Vec<C>) -> Self {
        Laurent {
            terms: p
                .into_iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (i as i64 + shift, c))
                .collect(),
        }
    }

    /// Exact quotient in `Z[q, q^{-1}]`; an error if `other` does not divide `self`.
    pub fn div_exact(&self, other: &Self) -> Result<Self> {
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(Self::zero());
        }
        if let Some((e, c)) = other.as_monomial() {
            let mut terms = BTreeMap::new();
            for (k, v) in &self.terms {
                let (quot, r) = num_integer::Integer::div_rem(v, c);
                if !r.is_zero() {
                    return Err(Error::InexactDivision(format!("{self} / {other}")));
                }
                terms.insert(k - e, quot);
            }
            return Ok(Laurent { terms });
        }
        let (sa, a) = self.to_dense();
        let (sb, b) = other.to_dense();
        match dense::div_exact(&a, &b) {
            Some(quot) => Ok(Self::from_dense(sa - sb, quot)),
            None => Err(Error::InexactDivision(format!("{self} / {other}"))),
        }
    }

    /// Gcd normalized to lowest exponent 0 and positive leading coefficient.
    pub fn gcd(&self, other: &Self) -> Self {
        let (_, a) = self.to_dense();
        let (_, b) = other.to_dense();
        Self::from_dense(0, dense::gcd(&a, &b))
    }
}

impl<C: Coeff> Zero for Laurent<C> {
    fn zero() -> Self {
        Laurent::zero()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl<C: Coeff> One for Laurent<C> {
    fn one() -> Self {
        Laurent::one()
    }
}

impl<C: Coeff> From<C> for Laurent<C> {
    fn from(c: C) -> Self {
        Laurent::constant(c)
    }
}

impl<'a, C: Coeff> AddAssign<&'a Laurent<C>> for Laurent<C> {
    fn add_assign(&mut self, rhs: &'a Laurent<C>) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, c.clone());
        }
    }
}

impl<'a, C: Coeff> SubAssign<&'a Laurent<C>> for Laurent<C> {
    fn sub_assign(&mut self, rhs: &'a Laurent<C>) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, -c.clone());
        }
    }
}

impl<'a, C: Coeff> Add<&'a Laurent<C>> for &'a Laurent<C> {
    type Output = Laurent<C>;
    fn add(self, rhs: &'a Laurent<C>) -> Laurent<C> {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<'a, C: Coeff> Sub<&'a Laurent<C>> for &'a Laurent<C> {
    type Output = Laurent<C>;
    fn sub(self, rhs: &'a Laurent<C>) -> Laurent<C> {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl<'a, C: Coeff> Mul<&'a Laurent<C>> for &'a Laurent<C> {
    type Output = Laurent<C>;
    fn mul(self, rhs: &'a Laurent<C>) -> Laurent<C> {
        let mut out = Laurent::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.add_term(e1 + e2, c1.clone() * c2.clone());
            }
        }
        out
    }
}

impl<C: Coeff> Add for Laurent<C> {
    type Output = Laurent<C>;
    fn add(mut self, rhs: Laurent<C>) -> Laurent<C> {
        self += &rhs;
        self
    }
}

impl<C: Coeff> Sub for Laurent<C> {
    type Output = Laurent<C>;
    fn sub(mut self, rhs: Laurent<C>) -> Laurent<C> {
        self -= &rhs;
        self
    }
}

impl<C: Coeff> Mul for Laurent<C> {
    type Output = Laurent<C>;
    fn mul(self, rhs: Laurent<C>) -> Laurent<C> {
        &self * &rhs
    }
}

impl<C: Coeff> Neg for Laurent<C> {
    type Output = Laurent<C>;
    fn neg(self) -> Laurent<C> {
        Laurent {
            terms: self.terms.into_iter().map(|(e, c)| (e, -c)).collect(),
        }
    }
}

impl<'a, C: Coeff> Neg for &'a Laurent<C> {
    type Output = Laurent<C>;
    fn neg(self) -> Laurent<C> {
        -self.clone()
    }
}

/// Plain-text form, highest power first: `q^2 + 2 - 3q^-1`.
impl<C: Coeff> fmt::Display for Laurent<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            let unit = abs.is_one();
            if *e == 0 {
                write!(f, "{abs}")?;
                continue;
            }
            if !unit {
                write!(f, "{abs}")?;
            }
            match *e {
                1 => f.write_str("q")?,
                e => write!(f, "q^{e}")?,
            }
        }
        Ok(())
    }
}

impl<C: Coeff> Serialize for Laurent<C> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let pairs: Vec<(i64, String)> = self
            .terms
            .iter()
            .map(|(e, c)| (*e, c.to_string()))
            .collect();
        pairs.serialize(s)
    }
}

impl<'de, C: Coeff> Deserialize<'de> for Laurent<C> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let pairs: Vec<(i64, String)> = Vec::deserialize(d)?;
        let mut out = Laurent::zero();
        for (e, s) in pairs {
            let c = s
                .parse::<C>()
                .map_err(|_| D::Error::custom(format!("bad coefficient {s:?}")))?;
            out.add_term(e, c);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    type L = Laurent<BigInt>;

    #[test]
    fn zero_coefficients_are_not_stored() {
        let p = L::from_pairs(&[(1, 2), (1, -2), (0, 0)]);
        assert!(p.is_zero());
        assert_eq!(p.len(), 0);
    }

    #[test]
    fn display_orders_by_descending_exponent() {
        let p = L::from_pairs(&[(-3, 2), (-1, 1), (0, -4), (2, 1)]);
        assert_eq!(p.to_string(), "q^2 - 4 + q^-1 + 2q^-3");
        assert_eq!(L::zero().to_string(), "0");
    }

    #[test]
    fn divides_laurent_polynomials_exactly() {
        // (q^2 - 1) / (q - q^-1) = q
        let a = L::from_pairs(&[(2, 1), (0, -1)]);
        let b = L::from_pairs(&[(1, 1), (-1, -1)]);
        assert_eq!(a.div_exact(&b).unwrap(), L::q_pow(1));
        let c = L::from_pairs(&[(2, 1), (0, 1)]);
        assert!(matches!(c.div_exact(&b), Err(Error::InexactDivision(_))));
        assert!(matches!(c.div_exact(&L::zero()), Err(Error::DivisionByZero)));
    }

    #[test]
    fn json_uses_string_coefficients() {
        let p = L::from_pairs(&[(-1, 3), (2, -1)]);
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, r#"[[-1,"3"],[2,"-1"]]"#);
        let back: L = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn predicates() {
        assert!(L::from_pairs(&[(-1, 1), (-3, 2)]).is_qinv_nonneg());
        assert!(!L::one().is_qinv_nonneg());
        assert!(L::zero().is_qinv_nonneg());
        assert!(!L::from_pairs(&[(1, -1)]).is_nonneg());
    }
}
