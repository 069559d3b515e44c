//! Weight-wise images in the modified quantum group and Lusztig's canonical
//! basis of rank one.
//!
//! A [`Dot`] at weight `μ` is a sum of `coeff · E^(a) F^(b) 1_μ` with Laurent
//! coefficients.  The canonical basis consists of `E^(a) F^(b) 1_μ` for
//! `μ <= b - a` and `F^(b) E^(a) 1_μ` for `μ >= b - a`, the two agreeing on
//! the boundary `μ = b - a`, which is always stored E-first here.

use std::collections::BTreeMap;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::idp::Family;
use crate::pbw::Pbw;
use crate::qpoly::{choose2, is_laurent, qbinom, qbinom2, qfact, qint, Laurent, RatFn};
use crate::scalar::Coeff;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Dot<C> {
    weight: i64,
    terms: BTreeMap<(u32, u32), Laurent<C>>,
}

impl<C: Coeff> Dot<C> {
    pub fn zero(weight: i64) -> Self {
        Dot {
            weight,
            terms: BTreeMap::new(),
        }
    }

    /// `1_μ`.
    pub fn idempotent(weight: i64) -> Self {
        let mut d = Self::zero(weight);
        d.add_term(0, 0, Laurent::one());
        d
    }

    pub fn weight(&self) -> i64 {
        self.weight
    }

    pub fn add_term(&mut self, a: u32, b: u32, c: Laurent<C>) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry((a, b)).or_insert_with(Laurent::zero);
        *slot += &c;
        if slot.is_zero() {
            self.terms.remove(&(a, b));
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, u32, &Laurent<C>)> + '_ {
        self.terms.iter().map(|(&(a, b), c)| (a, b, c))
    }

    pub fn coeff(&self, a: u32, b: u32) -> Laurent<C> {
        self.terms.get(&(a, b)).cloned().unwrap_or_else(Laurent::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Left action of a PBW element, computed over `Q(q)` and then checked
    /// for integrality.
    pub fn act(&self, x: &Pbw<C>) -> Result<Self> {
        let mu = self.weight;
        let mut acc: BTreeMap<(u32, u32), RatFn<C>> = BTreeMap::new();
        for (m, c) in x.terms() {
            let mut cur: BTreeMap<(u32, u32), Laurent<C>> = self.terms.clone();
            let fact = qfact::<C>(m.b);
            // F^(b): iterate F then divide by [b]!
            for _ in 0..m.b {
                let mut next = BTreeMap::new();
                for (&(a, b), v) in &cur {
                    // F E^(a) F^(b) 1_μ = [b+1] E^(a) F^(b+1) 1_μ - [μ-2b+a-1] E^(a-1) F^(b) 1_μ
                    add_into(&mut next, (a, b + 1), v * &qint(b as i64 + 1));
                    if a > 0 {
                        let k = mu - 2 * b as i64 + a as i64 - 1;
                        add_into(&mut next, (a - 1, b), -(v * &qint(k)));
                    }
                }
                cur = next;
            }
            // K^{-s} then Ě^(a): E^(a)F^(b)1_μ has weight μ + 2a - 2b
            for (&(a, b), v) in &cur {
                let wt = mu + 2 * a as i64 - 2 * b as i64;
                let e = -(m.s as i64) * wt - (m.a as i64).pow(2) - m.a as i64 * wt;
                let bin = qbinom::<C>((a + m.a) as i64, m.a).expect("q-binomial");
                let lifted = c
                    .mul_laurent(&(v * &bin).shift(e))
                    .div_laurent(&fact)
                    .expect("nonzero");
                let slot = acc.entry((a + m.a, b)).or_insert_with(RatFn::zero);
                *slot = &*slot + &lifted;
            }
        }
        let mut out = Self::zero(mu);
        for ((a, b), v) in acc {
            out.add_term(a, b, integral(mu, a, b, &v)?);
        }
        Ok(out)
    }
}

fn add_into<C: Coeff>(map: &mut BTreeMap<(u32, u32), Laurent<C>>, key: (u32, u32), c: Laurent<C>) {
    if c.is_zero() {
        return;
    }
    let slot = map.entry(key).or_insert_with(Laurent::zero);
    *slot += &c;
    if slot.is_zero() {
        map.remove(&key);
    }
}

fn integral<C: Coeff>(mu: i64, a: u32, b: u32, v: &RatFn<C>) -> Result<Laurent<C>> {
    is_laurent(v).ok_or_else(|| Error::NonIntegral {
        weight: mu,
        a,
        b,
        coeff: v.to_string(),
    })
}

/// `X 1_μ` via `Ě^(a) K^{-s} F^(b) 1_μ = q^{-a² - (a+s)(μ-2b)} E^(a) F^(b) 1_μ`.
pub fn specialize<C: Coeff>(x: &Pbw<C>, mu: i64) -> Result<Dot<C>> {
    let mut sums: BTreeMap<(u32, u32), RatFn<C>> = BTreeMap::new();
    for (m, c) in x.terms() {
        let (a, s, b) = (m.a as i64, m.s as i64, m.b as i64);
        let e = -a * a - (a + s) * (mu - 2 * b);
        let slot = sums.entry((m.a, m.b)).or_insert_with(RatFn::zero);
        *slot = &*slot + &c.shift(e);
    }
    let mut out = Dot::zero(mu);
    for ((a, b), v) in sums {
        out.add_term(a, b, integral(mu, a, b, &v)?);
    }
    Ok(out)
}

/// One summand family `q^e [top choose c]_{q²} E^(a) F^(d-a)` with `d` the
/// total degree at `c = 0`, dropping by 2 per step in `c`.
fn push_dot<C: Coeff>(
    out: &mut Dot<C>,
    cmax: i64,
    deg: i64,
    exp: impl Fn(i64, i64) -> i64,
    top: impl Fn(i64, i64) -> i64,
) {
    for c in 0..=cmax {
        let d = deg - 2 * c;
        for a in 0..=d {
            let bin = qbinom2::<C>(top(c, a), c as u32).expect("q-binomial");
            out.add_term(a as u32, (d - a) as u32, bin.shift(exp(c, a)));
        }
    }
}

/// The explicit `E^(a) F^(b) 1_μ` expansion of the ı-divided power.
pub fn dot_closed<C: Coeff>(f: Family, n: u32, mu: i64) -> Result<Dot<C>> {
    f.check_weight(mu)?;
    let l = if f.even_weights() { mu / 2 } else { (mu + 1) / 2 };
    let n = n as i64;
    let c2 = choose2;
    let mut out = Dot::zero(mu);
    // shared leading part 2(a+c)(m-a-λ) - 2ac and its K^{-1} variant
    let p = |m: i64, c: i64, a: i64| 2 * (a + c) * (m - a - l) - 2 * a * c;
    let pk = |m: i64, c: i64, a: i64| 2 * (a + c + 1) * (m - a - l) - 2 * a * c;
    let even = n % 2 == 0;
    let m = n / 2;
    match (f, even) {
        (Family::TEv, true) => push_dot(
            &mut out, m, n,
            |c, a| p(m, c, a) - c2(2 * c + 1),
            |c, a| m - c - a - l,
        ),
        (Family::TEv, false) => {
            let m = m + 1;
            push_dot(
                &mut out, m - 1, n,
                |c, a| p(m, c, a) - a - c2(2 * c + 1),
                |c, a| m - c - a - l - 1,
            )
        }
        (Family::TOdd, true) => push_dot(
            &mut out, m, n,
            |c, a| p(m, c, a) + a - c2(2 * c),
            |c, a| m - c - a - l,
        ),
        (Family::TOdd, false) => push_dot(
            &mut out, m, n,
            |c, a| p(m, c, a) + 2 * a - c2(2 * c),
            |c, a| m - c - a - l + 1,
        ),
        (Family::KEv, true) => {
            push_dot(&mut out, m, n, |c, a| p(m, c, a) - c2(2 * c), |c, a| m - c - a - l);
            push_dot(
                &mut out, m - 1, n - 1,
                |c, a| pk(m, c, a) - a - c2(2 * c + 2),
                |c, a| m - c - a - l - 1,
            );
        }
        (Family::KEv, false) => {
            push_dot(
                &mut out, m, n,
                |c, a| p(m, c, a) + a - c2(2 * c),
                |c, a| m - c - a - l + 1,
            );
            push_dot(
                &mut out, m, n - 1,
                |c, a| pk(m, c, a) - c2(2 * c + 2) + 1,
                |c, a| m - c - a - l,
            );
        }
        (Family::KOdd, true) => {
            push_dot(
                &mut out, m, n,
                |c, a| p(m, c, a) + a - c2(2 * c),
                |c, a| m - c - a - l + 1,
            );
            push_dot(
                &mut out, m - 1, n - 1,
                |c, a| pk(m, c, a) - c2(2 * c + 2) + 1,
                |c, a| m - c - a - l,
            );
        }
        (Family::KOdd, false) => {
            push_dot(
                &mut out, m, n,
                |c, a| p(m, c, a) + 2 * a - c2(2 * c - 1) + 1,
                |c, a| m - c - a - l + 1,
            );
            push_dot(
                &mut out, m, n - 1,
                |c, a| pk(m, c, a) + a - c2(2 * c + 1) + 1,
                |c, a| m - c - a - l,
            );
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub enum CbOrder {
    /// `E^(a) F^(b) 1_μ`, used when `μ <= b - a`
    #[serde(rename = "E")]
    EFirst,
    /// `F^(b) E^(a) 1_μ`, used when `μ > b - a`
    #[serde(rename = "F")]
    FFirst,
}

/// A canonical-basis label at a fixed weight.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct CbLabel {
    pub order: CbOrder,
    pub a: u32,
    pub b: u32,
}

impl CbLabel {
    /// Whether the label is canonical at weight `mu` under the E-first
    /// boundary convention.
    pub fn is_valid(&self, mu: i64) -> bool {
        let diff = self.b as i64 - self.a as i64;
        match self.order {
            CbOrder::EFirst => mu <= diff,
            CbOrder::FFirst => mu > diff,
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Cb<C> {
    weight: i64,
    terms: BTreeMap<CbLabel, Laurent<C>>,
}

impl<C: Coeff> Cb<C> {
    pub fn zero(weight: i64) -> Self {
        Cb {
            weight,
            terms: BTreeMap::new(),
        }
    }

    pub fn weight(&self) -> i64 {
        self.weight
    }

    pub fn add_term(&mut self, label: CbLabel, c: Laurent<C>) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(label).or_insert_with(Laurent::zero);
        *slot += &c;
        if slot.is_zero() {
            self.terms.remove(&label);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&CbLabel, &Laurent<C>)> + '_ {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Every coefficient lies in `N[q, q^{-1}]`.
    pub fn is_positive(&self) -> bool {
        self.terms.values().all(|c| c.is_nonneg())
    }

    /// Expand back into E-first form with
    /// `F^(b) E^(a) 1_μ = sum_t [b-a-μ choose t] E^(a-t) F^(b-t) 1_μ`.
    pub fn to_dot(&self) -> Dot<C> {
        let mu = self.weight;
        let mut out = Dot::zero(mu);
        for (l, c) in &self.terms {
            match l.order {
                CbOrder::EFirst => out.add_term(l.a, l.b, c.clone()),
                CbOrder::FFirst => {
                    let top = l.b as i64 - l.a as i64 - mu;
                    for t in 0..=l.a.min(l.b) {
                        let bin = qbinom::<C>(top, t).expect("q-binomial");
                        out.add_term(l.a - t, l.b - t, c * &bin);
                    }
                }
            }
        }
        out
    }
}

/// Rewrite onto canonical-basis labels with
/// `E^(a) F^(b) 1_μ = sum_t [a-b+μ choose t] F^(b-t) E^(a-t) 1_μ`.
pub fn to_canonical_basis<C: Coeff>(d: &Dot<C>) -> Cb<C> {
    let mu = d.weight;
    let mut out = Cb::zero(mu);
    for (a, b, c) in d.terms() {
        if mu <= b as i64 - a as i64 {
            out.add_term(CbLabel { order: CbOrder::EFirst, a, b }, c.clone());
            continue;
        }
        let top = a as i64 - b as i64 + mu;
        for t in 0..=a.min(b) {
            let bin = qbinom::<C>(top, t).expect("q-binomial");
            let label = CbLabel {
                order: CbOrder::FFirst,
                a: a - t,
                b: b - t,
            };
            out.add_term(label, c * &bin);
        }
    }
    out
}

pub fn is_positive<C: Coeff>(cb: &Cb<C>) -> bool {
    cb.is_positive()
}

#[derive(Serialize, Deserialize)]
#[serde(bound = "")]
struct DotTermRepr<C: Coeff> {
    a: u32,
    b: u32,
    coeff: Laurent<C>,
}

#[derive(Serialize, Deserialize)]
#[serde(bound = "")]
struct DotRepr<C: Coeff> {
    weight: i64,
    terms: Vec<DotTermRepr<C>>,
}

impl<C: Coeff> Serialize for Dot<C> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        DotRepr {
            weight: self.weight,
            terms: self
                .terms()
                .map(|(a, b, c)| DotTermRepr { a, b, coeff: c.clone() })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de, C: Coeff> Deserialize<'de> for Dot<C> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = DotRepr::<C>::deserialize(d)?;
        let mut out = Dot::zero(r.weight);
        for t in r.terms {
            if t.coeff.is_zero() || out.terms.insert((t.a, t.b), t.coeff).is_some() {
                return Err(D::Error::custom("zero or repeated term"));
            }
        }
        Ok(out)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(bound = "")]
struct CbTermRepr<C: Coeff> {
    order: CbOrder,
    a: u32,
    b: u32,
    coeff: Laurent<C>,
}

#[derive(Serialize, Deserialize)]
#[serde(bound = "")]
struct CbRepr<C: Coeff> {
    weight: i64,
    terms: Vec<CbTermRepr<C>>,
}

impl<C: Coeff> Serialize for Cb<C> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CbRepr {
            weight: self.weight,
            terms: self
                .terms()
                .map(|(l, c)| CbTermRepr {
                    order: l.order,
                    a: l.a,
                    b: l.b,
                    coeff: c.clone(),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de, C: Coeff> Deserialize<'de> for Cb<C> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = CbRepr::<C>::deserialize(d)?;
        let mut out = Cb::zero(r.weight);
        for t in r.terms {
            let label = CbLabel {
                order: t.order,
                a: t.a,
                b: t.b,
            };
            if !label.is_valid(r.weight) {
                return Err(D::Error::custom(format!(
                    "label {label:?} is not canonical at weight {}",
                    r.weight
                )));
            }
            if t.coeff.is_zero() || out.terms.insert(label, t.coeff).is_some() {
                return Err(D::Error::custom("zero or repeated term"));
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::idp::idp_closed;
    use num_bigint::BigInt;

    type L = Laurent<BigInt>;
    type P = Pbw<BigInt>;

    #[test]
    fn bracket_specializations() {
        for a in -3..=3i64 {
            for n in 0..=3u32 {
                for l in -3..=3i64 {
                    let sq = specialize(&P::hbracket_sq(a, n), 2 * l).unwrap();
                    let want = qbinom2::<BigInt>(a - 1 - l + n as i64, n)
                        .unwrap()
                        .shift(2 * n as i64 * (a - 1 - l));
                    assert_eq!(sq.coeff(0, 0), want);
                    let br = specialize(&P::hbracket_br(a, n), 2 * l - 1).unwrap();
                    let want = qbinom2::<BigInt>(a - l - 1 + n as i64, n)
                        .unwrap()
                        .shift(2 * n as i64 * (a - l));
                    assert_eq!(br.coeff(0, 0), want);
                }
            }
        }
    }

    #[test]
    fn unit_and_parity() {
        assert_eq!(specialize(&P::one(), 5).unwrap(), Dot::idempotent(5));
        assert_eq!(dot_closed::<BigInt>(Family::TOdd, 0, -3).unwrap(), Dot::idempotent(-3));
        assert!(matches!(
            dot_closed::<BigInt>(Family::TEv, 1, 1),
            Err(Error::ParityMismatch { .. })
        ));
    }

    #[test]
    fn non_integral_is_reported() {
        let h = P::gen(crate::pbw::Named::H);
        // h 1_μ = [μ-ish] is integral, but (1/(q^2-1)) 1_μ is not
        assert!(specialize(&h, 3).is_ok());
        let bad = P::scalar(RatFn::new(L::one(), L::from_pairs(&[(2, 1), (0, -1)])).unwrap());
        assert!(matches!(specialize(&bad, 0), Err(Error::NonIntegral { .. })));
    }

    #[test]
    fn dot_matches_specialized_closed_small() {
        for f in Family::ALL {
            for n in 0..=6 {
                for l in -4..=4i64 {
                    let mu = if f.even_weights() { 2 * l } else { 2 * l - 1 };
                    let got = specialize(&idp_closed::<BigInt>(f, n), mu).unwrap();
                    assert_eq!(got, dot_closed(f, n, mu).unwrap(), "{f} n={n} mu={mu}");
                }
            }
        }
    }

    #[test]
    fn ef_conversion() {
        let mut ef = Dot::<BigInt>::zero(0);
        ef.add_term(1, 1, L::one());
        let cb = to_canonical_basis(&ef);
        assert_eq!(cb.len(), 1);
        let mut ef2 = Dot::<BigInt>::zero(2);
        ef2.add_term(1, 1, L::one());
        let cb = to_canonical_basis(&ef2);
        let fe = CbLabel { order: CbOrder::FFirst, a: 1, b: 1 };
        let one = CbLabel { order: CbOrder::FFirst, a: 0, b: 0 };
        assert_eq!(cb.terms().count(), 2);
        assert_eq!(cb.terms.get(&fe), Some(&L::one()));
        assert_eq!(cb.terms.get(&one), Some(&qint(2)));
        assert_eq!(cb.to_dot(), ef2);
    }

    #[test]
    fn positivity_predicate() {
        let mut cb = Cb::<BigInt>::zero(0);
        assert!(cb.is_positive());
        cb.add_term(CbLabel { order: CbOrder::EFirst, a: 0, b: 0 }, L::from_pairs(&[(1, -1)]));
        assert!(!is_positive(&cb));
    }

    #[test]
    fn json_shapes() {
        let d = dot_closed::<BigInt>(Family::TEv, 2, 0).unwrap();
        let s = serde_json::to_string(&d).unwrap();
        assert!(s.starts_with(r#"{"weight":0,"terms":[{"a":0,"b":"#));
        assert_eq!(serde_json::from_str::<Dot<BigInt>>(&s).unwrap(), d);
        let cb = to_canonical_basis(&d);
        let s = serde_json::to_string(&cb).unwrap();
        assert!(s.contains(r#""order":"#));
        assert_eq!(serde_json::from_str::<Cb<BigInt>>(&s).unwrap(), cb);
        let bad = r#"{"weight":5,"terms":[{"order":"E","a":0,"b":0,"coeff":[[0,"1"]]}]}"#;
        assert!(serde_json::from_str::<Cb<BigInt>>(bad).is_err());
    }
}
