use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::Laurent;
use crate::error::{Error, Result};
use crate::scalar::Coeff;

/// An element of `Q(q)` as a reduced fraction of Laurent polynomials.
///
/// Normal form: the denominator has lowest exponent 0 and a positive leading
/// coefficient, numerator and denominator have no common polynomial factor,
/// and their integer contents are coprime.  Two values are equal iff their
/// normal forms coincide.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RatFn<C> {
    num: Laurent<C>,
    den: Laurent<C>,
}

impl<C: Coeff> RatFn<C> {
    pub fn zero() -> Self {
        RatFn {
            num: Laurent::zero(),
            den: Laurent::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_laurent(Laurent::one())
    }

    pub fn from_laurent(p: Laurent<C>) -> Self {
        RatFn {
            num: p,
            den: Laurent::one(),
        }
    }

    pub fn q_pow(e: i64) -> Self {
        Self::from_laurent(Laurent::q_pow(e))
    }

    pub fn new(num: Laurent<C>, den: Laurent<C>) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalize(num, den))
    }

    /// Panics on a zero denominator; for internal call sites where the
    /// denominator is known to be nonzero.
    pub(crate) fn frac(num: Laurent<C>, den: Laurent<C>) -> Self {
        Self::new(num, den).expect("nonzero denominator")
    }

    fn normalize(num: Laurent<C>, den: Laurent<C>) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        if den.is_one() {
            return RatFn { num, den };
        }
        // move the lowest power of q out of the denominator
        let lo = den.min_exp().unwrap();
        let (mut num, mut den) = (num.shift(-lo), den.shift(-lo));
        if !den.is_constant() {
            let g = num.gcd(&den);
            if !g.is_constant() {
                num = num.div_exact(&g).expect("gcd divides numerator");
                den = den.div_exact(&g).expect("gcd divides denominator");
                let lo = den.min_exp().unwrap();
                num = num.shift(-lo);
                den = den.shift(-lo);
            }
        }
        let g = num.content().gcd(&den.content());
        let mut unit = g;
        if den.leading_coeff().unwrap().is_negative() {
            unit = -unit;
        }
        if !unit.is_one() {
            let u = Laurent::constant(unit);
            num = num.div_exact(&u).expect("content divides");
            den = den.div_exact(&u).expect("content divides");
        }
        RatFn { num, den }
    }

    pub fn numer(&self) -> &Laurent<C> {
        &self.num
    }

    pub fn denom(&self) -> &Laurent<C> {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// The Laurent polynomial this value equals, if it is one.
    pub fn as_laurent(&self) -> Option<&Laurent<C>> {
        self.den.is_one().then_some(&self.num)
    }

    pub fn inv(&self) -> Result<Self> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn bar(&self) -> Self {
        Self::normalize(self.num.bar(), self.den.bar())
    }

    /// Multiply by `q^k`.
    pub fn shift(&self, k: i64) -> Self {
        RatFn {
            num: self.num.shift(k),
            den: self.den.clone(),
        }
    }

    pub fn mul_laurent(&self, p: &Laurent<C>) -> Self {
        if p.is_zero() || self.is_zero() {
            return Self::zero();
        }
        if let Some((e, c)) = p.as_monomial() {
            if c.is_one() {
                return self.shift(e);
            }
            if self.den.is_one() || self.den.content().gcd(c).is_one() {
                return RatFn {
                    num: self.num.shift(e).scale(c),
                    den: self.den.clone(),
                };
            }
        }
        if self.den.is_one() {
            return Self::from_laurent(&self.num * p);
        }
        Self::normalize(&self.num * p, self.den.clone())
    }

    pub fn div_laurent(&self, p: &Laurent<C>) -> Result<Self> {
        if p.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalize(self.num.clone(), &self.den * p))
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..n {
            out = &out * self;
        }
        out
    }
}

impl<C: Coeff> Default for RatFn<C> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<C: Coeff> From<Laurent<C>> for RatFn<C> {
    fn from(p: Laurent<C>) -> Self {
        RatFn::from_laurent(p)
    }
}

impl<'a, C: Coeff> Add<&'a RatFn<C>> for &'a RatFn<C> {
    type Output = RatFn<C>;
    fn add(self, rhs: &'a RatFn<C>) -> RatFn<C> {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            let num = &self.num + &rhs.num;
            if self.den.is_one() {
                return RatFn::from_laurent(num);
            }
            return RatFn::normalize(num, self.den.clone());
        }
        if self.den.is_one() {
            return RatFn::normalize(&(&self.num * &rhs.den) + &rhs.num, rhs.den.clone());
        }
        if rhs.den.is_one() {
            return RatFn::normalize(&self.num + &(&rhs.num * &self.den), self.den.clone());
        }
        let g = self.den.gcd(&rhs.den);
        let (l, r) = if g.is_one() {
            (rhs.den.clone(), self.den.clone())
        } else {
            (
                rhs.den.div_exact(&g).expect("gcd divides"),
                self.den.div_exact(&g).expect("gcd divides"),
            )
        };
        let num = &(&self.num * &l) + &(&rhs.num * &r);
        RatFn::normalize(num, &self.den * &l)
    }
}

impl<'a, C: Coeff> Sub<&'a RatFn<C>> for &'a RatFn<C> {
    type Output = RatFn<C>;
    fn sub(self, rhs: &'a RatFn<C>) -> RatFn<C> {
        let n = -rhs;
        self + &n
    }
}

impl<'a, C: Coeff> Mul<&'a RatFn<C>> for &'a RatFn<C> {
    type Output = RatFn<C>;
    fn mul(self, rhs: &'a RatFn<C>) -> RatFn<C> {
        if self.is_zero() || rhs.is_zero() {
            return RatFn::zero();
        }
        if rhs.den.is_one() {
            return self.mul_laurent(&rhs.num);
        }
        if self.den.is_one() {
            return rhs.mul_laurent(&self.num);
        }
        RatFn::normalize(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

/// Panics on division by zero, like the integer operators.
impl<'a, C: Coeff> Div<&'a RatFn<C>> for &'a RatFn<C> {
    type Output = RatFn<C>;
    fn div(self, rhs: &'a RatFn<C>) -> RatFn<C> {
        let inv = rhs.inv().expect("division by zero in Q(q)");
        self * &inv
    }
}

impl<'a, C: Coeff> Neg for &'a RatFn<C> {
    type Output = RatFn<C>;
    fn neg(self) -> RatFn<C> {
        RatFn {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl<C: Coeff> Neg for RatFn<C> {
    type Output = RatFn<C>;
    fn neg(self) -> RatFn<C> {
        RatFn {
            num: -self.num,
            den: self.den,
        }
    }
}

impl<C: Coeff> Add for RatFn<C> {
    type Output = RatFn<C>;
    fn add(self, rhs: RatFn<C>) -> RatFn<C> {
        &self + &rhs
    }
}

impl<C: Coeff> Sub for RatFn<C> {
    type Output = RatFn<C>;
    fn sub(self, rhs: RatFn<C>) -> RatFn<C> {
        &self - &rhs
    }
}

impl<C: Coeff> Mul for RatFn<C> {
    type Output = RatFn<C>;
    fn mul(self, rhs: RatFn<C>) -> RatFn<C> {
        &self * &rhs
    }
}

impl<C: Coeff> Zero for RatFn<C> {
    fn zero() -> Self {
        RatFn::zero()
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl<C: Coeff> One for RatFn<C> {
    fn one() -> Self {
        RatFn::one()
    }
}

impl<C: Coeff> fmt::Display for RatFn<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        let wrap = |p: &Laurent<C>| {
            if p.len() > 1 {
                format!("({p})")
            } else {
                p.to_string()
            }
        };
        write!(f, "{}/{}", wrap(&self.num), wrap(&self.den))
    }
}

#[derive(Serialize, Deserialize)]
#[serde(bound = "")]
struct RatRepr<C: Coeff> {
    num: Laurent<C>,
    den: Laurent<C>,
}

impl<C: Coeff> Serialize for RatFn<C> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RatRepr {
            num: self.num.clone(),
            den: self.den.clone(),
        }
        .serialize(s)
    }
}

impl<'de, C: Coeff> Deserialize<'de> for RatFn<C> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = RatRepr::<C>::deserialize(d)?;
        RatFn::new(r.num, r.den).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    type L = Laurent<BigInt>;
    type R = RatFn<BigInt>;

    #[test]
    fn reduces_to_a_laurent_polynomial() {
        // (q^2 - 1) / (q - q^-1) = q
        let r = R::new(L::from_pairs(&[(2, 1), (0, -1)]), L::from_pairs(&[(1, 1), (-1, -1)])).unwrap();
        assert_eq!(r.as_laurent(), Some(&L::q_pow(1)));
    }

    #[test]
    fn denominator_normal_form() {
        // 2 / (-2q^3 + 4q^2) = -1 / (q^3 - 2q^2) -> -q^-2 / (q - 2)
        let r = R::new(L::constant(2.into()), L::from_pairs(&[(3, -2), (2, 4)])).unwrap();
        assert_eq!(r.denom(), &L::from_pairs(&[(1, 1), (0, -2)]));
        assert_eq!(r.numer(), &L::from_pairs(&[(-2, -1)]));
        // rational constants keep their integer denominator
        let half = R::new(L::one(), L::constant(2.into())).unwrap();
        assert_eq!(half.denom(), &L::constant(2.into()));
        assert_eq!(&half + &half, R::one());
    }

    #[test]
    fn zero_denominator_is_an_error() {
        assert_eq!(R::new(L::one(), L::zero()), Err(Error::DivisionByZero));
        assert!(R::zero().inv().is_err());
    }

    #[test]
    fn json_shape() {
        let r = R::new(L::one(), L::from_pairs(&[(4, 1), (0, -1)])).unwrap();
        let s = serde_json::to_string(&r).unwrap();
        assert_eq!(s, r#"{"num":[[0,"1"]],"den":[[0,"-1"],[4,"1"]]}"#);
        let back: R = serde_json::from_str(&s).unwrap();
        assert_eq!(back, r);
        assert!(serde_json::from_str::<R>(r#"{"num":[[0,"1"]],"den":[]}"#).is_err());
    }
}
