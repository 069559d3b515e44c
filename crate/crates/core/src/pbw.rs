//! Normal-form arithmetic in the subalgebra `V` generated by `Ě`, `F` and `K^{-1}`.
//!
//! Every element is a finite sum of `coeff · Ě^(a) K^{-s} F^(b)` with `Ě^(a)`,
//! `F^(b)` divided powers and `coeff ∈ Q(q)`.  The monomial order
//! Ě-left / K-middle / F-right is the PBW normal form; products are reduced
//! back into it with the straightening rules
//!
//! ```text
//! Ě · Ě^(a)          = [a+1] Ě^(a+1)
//! K^{-1} · Ě^(a)     = q^{-2a} Ě^(a) K^{-1}
//! F · Ě^(a)          = q^{-2a} Ě^(a) F + Ě^(a-1) (q^{3-3a} K^{-2} - q^{1-a}) / (q^2 - 1)
//! F · K^{-1}         = q^{-2} K^{-1} F
//! ```

use std::collections::BTreeMap;
use std::fmt;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::qpoly::{qbinom, qfact, qint, Laurent, RatFn};
use crate::scalar::Coeff;

/// `Ě^(a) K^{-s} F^(b)`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub struct Mono {
    pub a: u32,
    pub s: u32,
    pub b: u32,
}

impl Mono {
    pub const ONE: Mono = Mono { a: 0, s: 0, b: 0 };

    pub fn new(a: u32, s: u32, b: u32) -> Self {
        Mono { a, s, b }
    }
}

/// Algebra generators of `V` that act by left multiplication.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Gen {
    ECheck,
    F,
    KInv,
}

/// Named elements of `V`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Named {
    ECheck,
    F,
    KInv,
    /// `h = (K^{-2} - 1) / (q^2 - 1)`
    H,
    /// `𝔱 = Ě + F`
    FrakT,
    /// `t = Ě + F + K^{-1}`
    T,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Pbw<C> {
    terms: BTreeMap<Mono, RatFn<C>>,
}

impl<C: Coeff> Default for Pbw<C> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<C: Coeff> Pbw<C> {
    pub fn zero() -> Self {
        Pbw {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::scalar(RatFn::one())
    }

    pub fn scalar(c: RatFn<C>) -> Self {
        Self::term(Mono::ONE, c)
    }

    pub fn term(m: Mono, c: RatFn<C>) -> Self {
        let mut out = Self::zero();
        out.add_term(m, c);
        out
    }

    /// `Ě^(a) K^{-s} F^(b)` with coefficient 1.
    pub fn monomial(a: u32, s: u32, b: u32) -> Self {
        Self::term(Mono::new(a, s, b), RatFn::one())
    }

    pub fn gen(name: Named) -> Self {
        match name {
            Named::ECheck => Self::monomial(1, 0, 0),
            Named::F => Self::monomial(0, 0, 1),
            Named::KInv => Self::monomial(0, 1, 0),
            Named::H => {
                let d = Laurent::from_pairs(&[(2, 1), (0, -1)]);
                let mut h = Self::zero();
                h.add_term(Mono::new(0, 2, 0), RatFn::frac(Laurent::one(), d.clone()));
                h.add_term(Mono::ONE, RatFn::frac(-Laurent::one(), d));
                h
            }
            Named::FrakT => &Self::gen(Named::ECheck) + &Self::gen(Named::F),
            Named::T => &Self::gen(Named::FrakT) + &Self::gen(Named::KInv),
        }
    }

    pub fn add_term(&mut self, m: Mono, c: RatFn<C>) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v = &*v + &c;
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in lexicographic `(a, s, b)` order.
    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &RatFn<C>)> + '_ {
        self.terms.iter()
    }

    pub fn coeff(&self, m: Mono) -> RatFn<C> {
        self.terms.get(&m).cloned().unwrap_or_else(RatFn::zero)
    }

    pub fn scale(&self, c: &RatFn<C>) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Pbw {
            terms: self.terms.iter().map(|(m, v)| (*m, v * c)).collect(),
        }
    }

    pub fn scale_laurent(&self, p: &Laurent<C>) -> Self {
        if p.is_zero() {
            return Self::zero();
        }
        Pbw {
            terms: self
                .terms
                .iter()
                .map(|(m, v)| (*m, v.mul_laurent(p)))
                .collect(),
        }
    }

    /// Left multiplication by a single generator.
    pub fn leftmul_gen(&self, g: Gen) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            match g {
                Gen::ECheck => {
                    out.add_term(Mono::new(m.a + 1, m.s, m.b), c.mul_laurent(&qint(m.a as i64 + 1)));
                }
                Gen::KInv => {
                    out.add_term(Mono::new(m.a, m.s + 1, m.b), c.shift(-2 * m.a as i64));
                }
                Gen::F => {
                    let a = m.a as i64;
                    let lead = qint::<C>(m.b as i64 + 1).shift(-2 * a - 2 * m.s as i64);
                    out.add_term(Mono::new(m.a, m.s, m.b + 1), c.mul_laurent(&lead));
                    if m.a > 0 {
                        let over = c
                            .div_laurent(&Laurent::from_pairs(&[(2, 1), (0, -1)]))
                            .expect("nonzero");
                        out.add_term(Mono::new(m.a - 1, m.s + 2, m.b), over.shift(3 - 3 * a));
                        out.add_term(Mono::new(m.a - 1, m.s, m.b), -over.shift(1 - a));
                    }
                }
            }
        }
        out
    }

    /// `F^(b) · self`.
    fn leftmul_f_div(&self, b: u32) -> Self {
        if b == 0 {
            return self.clone();
        }
        let mut x = self.clone();
        for _ in 0..b {
            x = x.leftmul_gen(Gen::F);
        }
        let f = qfact::<C>(b);
        Pbw {
            terms: x
                .terms
                .into_iter()
                .map(|(m, c)| (m, c.div_laurent(&f).expect("nonzero")))
                .collect(),
        }
    }

    /// The product `self · other` in normal form.
    ///
    /// Each left monomial `Ě^(a) K^{-s} F^(b)` is applied to `other` factor by
    /// factor from the right: `F^(b)` by iterating the straightening rule, then
    /// `K^{-s}` and `Ě^(a)`, which map monomials to monomials.
    pub fn mul(&self, other: &Self) -> Self {
        let mut by_b: BTreeMap<u32, Vec<(&Mono, &RatFn<C>)>> = BTreeMap::new();
        for (m, c) in &self.terms {
            by_b.entry(m.b).or_default().push((m, c));
        }
        let mut out = Self::zero();
        for (b, left) in by_b {
            let fy = other.leftmul_f_div(b);
            for (m, c) in left {
                for (n, d) in &fy.terms {
                    // K^{-s} Ě^(a') = q^{-2sa'} Ě^(a') K^{-s};  Ě^(a) Ě^(a') = [a+a' choose a] Ě^(a+a')
                    let mut coeff = (c * d).shift(-2 * m.s as i64 * n.a as i64);
                    if m.a > 0 && n.a > 0 {
                        let bin = qbinom::<C>((m.a + n.a) as i64, m.a).expect("q-binomial");
                        coeff = coeff.mul_laurent(&bin);
                    }
                    out.add_term(Mono::new(m.a + n.a, m.s + n.s, n.b), coeff);
                }
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..n {
            out = self.mul(&out);
        }
        out
    }

    /// The anti-involution fixing `Ě`, `F`, `K^{-1}` and sending `q -> q^{-1}`.
    pub fn sigma(&self) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            // Ě^(a) K^{-s} F^(b)  ->  F^(b) K^{-s} Ě^(a) = q^{-2sb} K^{-s} F^(b) Ě^(a)
            let img = Self::monomial(0, m.s, m.b)
                .mul(&Self::monomial(m.a, 0, 0))
                .scale(&c.bar().shift(-2 * (m.s as i64) * (m.b as i64)));
            out += &img;
        }
        out
    }

    /// The involution swapping `Ě` and `F`, fixing `K^{-1}`, sending `q -> q^{-1}`.
    pub fn varpi(&self) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            // Ě^(a) K^{-s} F^(b)  ->  F^(a) K^{-s} Ě^(b) = q^{-2sa} K^{-s} F^(a) Ě^(b)
            let img = Self::monomial(0, m.s, m.a)
                .mul(&Self::monomial(m.b, 0, 0))
                .scale(&c.bar().shift(-2 * (m.s as i64) * (m.a as i64)));
            out += &img;
        }
        out
    }

    /// Elements of the Cartan part `Q(q)[K^{-2}]`: coefficient `i` multiplies `K^{-2i}`.
    pub fn cartan(coeffs: &[RatFn<C>]) -> Self {
        let mut out = Self::zero();
        for (i, c) in coeffs.iter().enumerate() {
            out.add_term(Mono::new(0, 2 * i as u32, 0), c.clone());
        }
        out
    }

    /// `prod_{i=1}^n (q^{4a+4i-4} K^{-2} - 1) / (q^{4i} - 1)`.
    pub fn hbracket_sq(a: i64, n: u32) -> Self {
        Self::bracket_product(a, n, 0)
    }

    /// `prod_{i=1}^n (q^{4a+4i-4} K^{-2} - q^2) / (q^{4i} - 1)`.
    pub fn hbracket_br(a: i64, n: u32) -> Self {
        Self::bracket_product(a, n, 2)
    }

    fn bracket_product(a: i64, n: u32, const_exp: i64) -> Self {
        // numerator as a polynomial in K^{-2} with Laurent coefficients
        let mut poly: Vec<Laurent<C>> = vec![Laurent::one()];
        let mut den = Laurent::one();
        for i in 1..=n as i64 {
            let top = Laurent::q_pow(4 * a + 4 * i - 4);
            let low = -Laurent::q_pow(const_exp);
            let mut next = vec![Laurent::zero(); poly.len() + 1];
            for (k, p) in poly.iter().enumerate() {
                next[k] += &(p * &low);
                next[k + 1] += &(p * &top);
            }
            poly = next;
            den = &den * &(&Laurent::q_pow(4 * i) - &Laurent::one());
        }
        let coeffs: Vec<RatFn<C>> = poly
            .into_iter()
            .map(|p| RatFn::frac(p, den.clone()))
            .collect();
        Self::cartan(&coeffs)
    }

    /// True when every monomial is of the form `K^{-2c}`.
    pub fn is_cartan_even(&self) -> bool {
        self.terms.keys().all(|m| m.a == 0 && m.b == 0 && m.s % 2 == 0)
    }
}

impl<'a, C: Coeff> std::ops::AddAssign<&'a Pbw<C>> for Pbw<C> {
    fn add_assign(&mut self, rhs: &'a Pbw<C>) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, c.clone());
        }
    }
}

impl<'a, C: Coeff> std::ops::SubAssign<&'a Pbw<C>> for Pbw<C> {
    fn sub_assign(&mut self, rhs: &'a Pbw<C>) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, -c);
        }
    }
}

impl<'a, C: Coeff> std::ops::Add<&'a Pbw<C>> for &'a Pbw<C> {
    type Output = Pbw<C>;
    fn add(self, rhs: &'a Pbw<C>) -> Pbw<C> {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<'a, C: Coeff> std::ops::Sub<&'a Pbw<C>> for &'a Pbw<C> {
    type Output = Pbw<C>;
    fn sub(self, rhs: &'a Pbw<C>) -> Pbw<C> {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl<'a, C: Coeff> std::ops::Mul<&'a Pbw<C>> for &'a Pbw<C> {
    type Output = Pbw<C>;
    fn mul(self, rhs: &'a Pbw<C>) -> Pbw<C> {
        Pbw::mul(self, rhs)
    }
}

impl<C: Coeff> std::ops::Neg for &Pbw<C> {
    type Output = Pbw<C>;
    fn neg(self) -> Pbw<C> {
        Pbw {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

impl<C: Coeff> fmt::Display for Pbw<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::render::pbw_text(self))
    }
}

#[derive(Serialize, Deserialize)]
#[serde(bound = "")]
struct TermRepr<C: Coeff> {
    a: u32,
    s: u32,
    b: u32,
    coeff: RatFn<C>,
}

#[derive(Serialize, Deserialize)]
#[serde(bound = "")]
struct PbwRepr<C: Coeff> {
    terms: Vec<TermRepr<C>>,
}

impl<C: Coeff> Serialize for Pbw<C> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        PbwRepr {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| TermRepr {
                    a: m.a,
                    s: m.s,
                    b: m.b,
                    coeff: c.clone(),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de, C: Coeff> Deserialize<'de> for Pbw<C> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = PbwRepr::<C>::deserialize(d)?;
        let mut out = Pbw::zero();
        for t in r.terms {
            let m = Mono::new(t.a, t.s, t.b);
            if out.terms.contains_key(&m) {
                return Err(D::Error::custom(format!("duplicate monomial {m:?}")));
            }
            out.add_term(m, t.coeff);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    type P = Pbw<BigInt>;
    type L = Laurent<BigInt>;
    type R = RatFn<BigInt>;

    fn ql(e: i64) -> R {
        R::q_pow(e)
    }

    #[test]
    fn generators() {
        let t = P::gen(Named::T);
        assert_eq!(t.len(), 3);
        assert_eq!(t.coeff(Mono::new(0, 1, 0)), R::one());
        let h = P::gen(Named::H);
        let d = L::from_pairs(&[(2, 1), (0, -1)]);
        assert_eq!(h.coeff(Mono::new(0, 2, 0)), R::new(L::one(), d.clone()).unwrap());
        assert_eq!(h.coeff(Mono::ONE), R::new(-L::one(), d).unwrap());
    }

    #[test]
    fn f_past_echeck() {
        // F Ě = q^{-2} Ě F + h
        let lhs = P::gen(Named::ECheck).leftmul_gen(Gen::F);
        let rhs = &P::monomial(1, 0, 1).scale(&ql(-2)) + &P::gen(Named::H);
        assert_eq!(lhs, rhs);
        assert_eq!(P::gen(Named::F).mul(&P::gen(Named::ECheck)), rhs);
    }

    #[test]
    fn kinv_and_f_orders() {
        // K^{-1} F is already normal; F K^{-1} = q^{-2} K^{-1} F
        assert_eq!(P::gen(Named::F).leftmul_gen(Gen::KInv), P::monomial(0, 1, 1));
        assert_eq!(
            P::gen(Named::F).mul(&P::gen(Named::KInv)),
            P::monomial(0, 1, 1).scale(&ql(-2))
        );
    }

    #[test]
    fn echeck_divided_powers() {
        for a in 0..5 {
            let lhs = P::monomial(a, 0, 0).leftmul_gen(Gen::ECheck);
            let rhs = P::monomial(a + 1, 0, 0).scale_laurent(&qint(a as i64 + 1));
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn bracket_products() {
        assert_eq!(P::hbracket_sq(3, 0), P::one());
        assert_eq!(P::hbracket_br(-2, 0), P::one());
        // h = q[2][h;0] and h = q[2][[h;0]] + 1
        let q2 = qint::<BigInt>(2).shift(1);
        assert_eq!(P::hbracket_sq(0, 1).scale_laurent(&q2), P::gen(Named::H));
        assert_eq!(
            &P::hbracket_br(0, 1).scale_laurent(&q2) + &P::one(),
            P::gen(Named::H)
        );
        let d = L::from_pairs(&[(4, 1), (0, -1)]);
        let br = P::hbracket_br(1, 1);
        assert_eq!(br.coeff(Mono::new(0, 2, 0)), R::new(L::q_pow(4), d.clone()).unwrap());
        assert_eq!(br.coeff(Mono::ONE), R::new(-L::q_pow(2), d).unwrap());
    }

    #[test]
    fn sigma_on_generators() {
        for g in [Named::ECheck, Named::F, Named::KInv, Named::FrakT, Named::T] {
            assert_eq!(P::gen(g).sigma(), P::gen(g));
        }
        let h = P::gen(Named::H);
        assert_eq!(h.sigma(), h.scale(&(-&ql(2))));
    }

    #[test]
    fn varpi_on_generators() {
        assert_eq!(P::gen(Named::ECheck).varpi(), P::gen(Named::F));
        assert_eq!(P::gen(Named::F).varpi(), P::gen(Named::ECheck));
        assert_eq!(P::gen(Named::KInv).varpi(), P::gen(Named::KInv));
        assert_eq!(P::gen(Named::H).varpi().varpi(), P::gen(Named::H));
    }

    #[test]
    fn json_sorted_terms() {
        let t = P::gen(Named::FrakT);
        let s = serde_json::to_string(&t).unwrap();
        assert_eq!(
            s,
            r#"{"terms":[{"a":0,"s":0,"b":1,"coeff":{"num":[[0,"1"]],"den":[[0,"1"]]}},{"a":1,"s":0,"b":0,"coeff":{"num":[[0,"1"]],"den":[[0,"1"]]}}]}"#
        );
        let back: P = serde_json::from_str(&s).unwrap();
        assert_eq!(back, t);
    }
}
