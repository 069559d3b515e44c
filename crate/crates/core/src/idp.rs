//! The four families of ı-divided powers and the four ways to build them.
//!
//! | family  | generator        | weights | recursion subtracts at |
//! |---------|------------------|---------|------------------------|
//! | `TEv`   | `𝔱 = Ě + F`       | even    | odd `n`                |
//! | `TOdd`  | `𝔱`               | odd     | even `n`               |
//! | `KEv`   | `t = Ě + F + K⁻¹` | even    | even `n`               |
//! | `KOdd`  | `t`               | odd     | odd `n`                |

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, RwLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pbw::{Gen, Mono, Named, Pbw};
use crate::qpoly::{choose2, qint, Laurent, RatFn};
use crate::scalar::Coeff;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub enum Family {
    #[serde(rename = "t-ev")]
    TEv,
    #[serde(rename = "t-odd")]
    TOdd,
    #[serde(rename = "k-ev")]
    KEv,
    #[serde(rename = "k-odd")]
    KOdd,
}

impl Family {
    pub const ALL: [Family; 4] = [Family::TEv, Family::TOdd, Family::KEv, Family::KOdd];

    pub fn tag(self) -> &'static str {
        match self {
            Family::TEv => "t-ev",
            Family::TOdd => "t-odd",
            Family::KEv => "k-ev",
            Family::KOdd => "k-odd",
        }
    }

    /// True for the families built from `t`, which carries a `K^{-1}` term.
    pub fn uses_kinv(self) -> bool {
        matches!(self, Family::KEv | Family::KOdd)
    }

    pub fn even_weights(self) -> bool {
        matches!(self, Family::TEv | Family::KEv)
    }

    /// Reject weights of the wrong parity.
    pub fn check_weight(self, mu: i64) -> Result<()> {
        if (mu.rem_euclid(2) == 0) == self.even_weights() {
            Ok(())
        } else {
            Err(Error::ParityMismatch {
                family: self.tag(),
                expected: if self.even_weights() { "even" } else { "odd" },
                weight: mu,
            })
        }
    }

    pub fn generator<C: Coeff>(self) -> Pbw<C> {
        Pbw::gen(if self.uses_kinv() { Named::T } else { Named::FrakT })
    }

    /// Whether the two-term recursion at step `n` carries the `[n-1] X_{n-2}` term.
    fn subtracts_at(self, n: u32) -> bool {
        let odd = n % 2 == 1;
        match self {
            Family::TEv | Family::KOdd => odd && n >= 3,
            Family::TOdd | Family::KEv => !odd && n >= 2,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.tag() == s)
            .ok_or_else(|| Error::Parse(format!("unknown family `{s}`")))
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum Method {
    Recursive,
    Poly,
    Closed,
    Fky,
}

impl Method {
    pub const ALL: [Method; 4] = [Method::Recursive, Method::Poly, Method::Closed, Method::Fky];

    pub fn tag(self) -> &'static str {
        match self {
            Method::Recursive => "recursive",
            Method::Poly => "poly",
            Method::Closed => "closed",
            Method::Fky => "fky",
        }
    }
}

/// Left multiplication by the family generator.
fn gen_times<C: Coeff>(f: Family, x: &Pbw<C>) -> Pbw<C> {
    let mut out = x.leftmul_gen(Gen::ECheck);
    out += &x.leftmul_gen(Gen::F);
    if f.uses_kinv() {
        out += &x.leftmul_gen(Gen::KInv);
    }
    out
}

fn div_qint<C: Coeff>(x: &Pbw<C>, n: i64) -> Pbw<C> {
    let inv = RatFn::from_laurent(qint(n)).inv().expect("[n] is nonzero for n >= 1");
    x.scale(&inv)
}

/// `X_0, ..., X_n` from the two-term recursion.
pub fn idp_sequence<C: Coeff>(f: Family, n: u32) -> Vec<Pbw<C>> {
    let mut seq = vec![Pbw::one()];
    extend_sequence(f, &mut seq, n);
    seq
}

fn extend_sequence<C: Coeff>(f: Family, seq: &mut Vec<Pbw<C>>, n: u32) {
    while seq.len() <= n as usize {
        let k = seq.len() as u32;
        let mut x = gen_times(f, &seq[k as usize - 1]);
        if f.subtracts_at(k) {
            x -= &seq[k as usize - 2].scale_laurent(&qint(k as i64 - 1));
        }
        seq.push(div_qint(&x, k as i64));
    }
}

pub fn idp_recursive<C: Coeff>(f: Family, n: u32) -> Pbw<C> {
    idp_sequence(f, n).pop().unwrap()
}

/// The `k` in the linear factors `(g - [k])` of the product formula, in the
/// order they are written.
pub fn polynomial_factors(f: Family, n: u32) -> Vec<i64> {
    let n = n as i64;
    let a = n / 2;
    let centered = matches!(f, Family::TEv | Family::KOdd);
    let steps = |lo: i64, hi: i64| (lo..=hi).step_by(2).collect::<Vec<_>>();
    match (centered, n % 2 == 0) {
        (_, _) if n == 0 => Vec::new(),
        (true, true) => [vec![0], steps(2 - 2 * a, 2 * a - 2)].concat(),
        (true, false) => steps(-2 * a, 2 * a),
        (false, true) => steps(1 - 2 * a, 2 * a - 1),
        (false, false) => [vec![0], steps(1 - 2 * a, 2 * a - 1)].concat(),
    }
}

pub fn idp_polynomial<C: Coeff>(f: Family, n: u32) -> Pbw<C> {
    let mut acc = Pbw::one();
    for k in polynomial_factors(f, n).into_iter().rev() {
        let mut next = gen_times(f, &acc);
        next -= &acc.scale_laurent(&qint(k));
        acc = next;
    }
    for k in 1..=n as i64 {
        acc = div_qint(&acc, k);
    }
    acc
}

/// The Cartan factor of a closed-form summand.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum Bracket {
    /// `prod_{i=1}^c (q^{4a+4i-4} K^{-2} - 1) / (q^{4i} - 1)`
    Sq,
    /// `prod_{i=1}^c (q^{4a+4i-4} K^{-2} - q^2) / (q^{4i} - 1)`
    Br,
}

impl Bracket {
    pub fn eval<C: Coeff>(self, arg: i64, c: u32) -> Pbw<C> {
        match self {
            Bracket::Sq => Pbw::hbracket_sq(arg, c),
            Bracket::Br => Pbw::hbracket_br(arg, c),
        }
    }
}

/// Which generator stands on the left of the Cartan factor.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Order {
    /// `Ě^(left) B [K^{-1}] F^(right)`
    EhF,
    /// `F^(left) B [K^{-1}] Ě^(right)`
    FhE,
}

/// One summand `±q^e X^(left) B(arg, c) [K^{-1}] Y^(right)`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct ClosedTerm {
    pub negative: bool,
    pub qexp: i64,
    pub left: u32,
    pub bracket: Bracket,
    pub arg: i64,
    pub c: u32,
    pub kinv: bool,
    pub right: u32,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ClosedForm {
    pub family: Family,
    pub n: u32,
    pub order: Order,
    pub terms: Vec<ClosedTerm>,
}

struct SumSpec<'a> {
    cmax: i64,
    /// Total degree `left + right` at `c = 0`; it drops by 2 per step in `c`.
    deg: i64,
    kinv: bool,
    bracket: Bracket,
    arg: &'a dyn Fn(i64) -> i64,
    base: &'a dyn Fn(i64) -> i64,
}

fn push_sum(out: &mut Vec<ClosedTerm>, order: Order, s: SumSpec<'_>) {
    for c in 0..=s.cmax {
        let d = s.deg - 2 * c;
        for a in 0..=d {
            let twist = a * (d - a);
            let (negative, qexp) = match order {
                Order::EhF => (false, (s.base)(c) - twist),
                Order::FhE => (c % 2 == 1, (s.base)(c) + twist),
            };
            out.push(ClosedTerm {
                negative,
                qexp,
                left: a as u32,
                bracket: s.bracket,
                arg: (s.arg)(c),
                c: c as u32,
                kinv: s.kinv,
                right: (d - a) as u32,
            });
        }
    }
}

/// The closed ĚhF-form as a list of structured summands.
pub fn closed_form(f: Family, n: u32) -> ClosedForm {
    let n = n as i64;
    let m = n / 2;
    let even = n % 2 == 0;
    let mut terms = Vec::new();
    let c2 = choose2;
    let o = Order::EhF;
    use Bracket::{Br, Sq};
    let sum = |cmax, deg, kinv, bracket, arg: &dyn Fn(i64) -> i64, base: &dyn Fn(i64) -> i64, out: &mut Vec<ClosedTerm>| {
        push_sum(out, o, SumSpec { cmax, deg, kinv, bracket, arg, base })
    };
    match (f, even) {
        (Family::TEv, true) => sum(m, n, false, Sq, &|_| 1 - m, &|c| c2(2 * c), &mut terms),
        (Family::TEv, false) => {
            // n = 2m' - 1 with m' = m + 1
            let mp = m + 1;
            sum(mp - 1, n, false, Sq, &|_| 1 - mp, &|c| c2(2 * c + 1), &mut terms)
        }
        (Family::TOdd, true) => sum(m, n, false, Br, &|_| 1 - m, &|c| c2(2 * c), &mut terms),
        (Family::TOdd, false) => sum(m, n, false, Br, &|_| 1 - m, &|c| c2(2 * c - 1) - 1, &mut terms),
        (Family::KEv, true) => {
            sum(m, n, false, Sq, &|_| 1 - m, &|c| c2(2 * c + 1), &mut terms);
            sum(m - 1, n - 1, true, Sq, &|_| 1 - m, &|c| c2(2 * c + 2) - 2 * m, &mut terms);
        }
        (Family::KEv, false) => {
            sum(m, n, false, Sq, &|_| 1 - m, &|c| c2(2 * c), &mut terms);
            sum(m, n - 1, true, Sq, &|_| 1 - m, &|c| c2(2 * c + 1) - 2 * m, &mut terms);
        }
        (Family::KOdd, true) => {
            sum(m, n, false, Br, &|_| 2 - m, &|c| c2(2 * c - 1) - 1, &mut terms);
            sum(m - 1, n - 1, true, Br, &|_| 2 - m, &|c| c2(2 * c) + 1 - 2 * m, &mut terms);
        }
        (Family::KOdd, false) => {
            sum(m, n, false, Br, &|_| 1 - m, &|c| c2(2 * c), &mut terms);
            sum(m, n - 1, true, Br, &|_| 1 - m, &|c| c2(2 * c + 1) - 2 * m, &mut terms);
        }
    }
    ClosedForm {
        family: f,
        n: n as u32,
        order: o,
        terms,
    }
}

/// The closed FhĚ-form as a list of structured summands.
pub fn closed_form_fky(f: Family, n: u32) -> ClosedForm {
    let n = n as i64;
    let m = n / 2;
    let even = n % 2 == 0;
    let mut terms = Vec::new();
    let o = Order::FhE;
    use Bracket::{Br, Sq};
    let sum = |cmax, deg, kinv, bracket, arg: &dyn Fn(i64) -> i64, base: &dyn Fn(i64) -> i64, out: &mut Vec<ClosedTerm>| {
        push_sum(out, o, SumSpec { cmax, deg, kinv, bracket, arg, base })
    };
    match (f, even) {
        (Family::TEv, true) => sum(m, n, false, Sq, &|c| m - c, &|c| 3 * c, &mut terms),
        (Family::TEv, false) => {
            let mp = m + 1;
            sum(mp - 1, n, false, Sq, &|c| mp - c, &|c| c, &mut terms)
        }
        (Family::TOdd, true) => sum(m, n, false, Br, &|c| 1 + m - c, &|c| -c, &mut terms),
        (Family::TOdd, false) => sum(m, n, false, Br, &|c| 1 + m - c, &|c| c, &mut terms),
        (Family::KEv, true) => {
            sum(m, n, false, Sq, &|c| m - c, &|c| c, &mut terms);
            sum(m - 1, n - 1, true, Sq, &|c| m - c, &|c| -c - 1 + 2 * m, &mut terms);
        }
        (Family::KEv, false) => {
            sum(m, n, false, Sq, &|c| m - c, &|c| 3 * c, &mut terms);
            sum(m, n - 1, true, Sq, &|c| m - c, &|c| c + 2 * m, &mut terms);
        }
        (Family::KOdd, true) => {
            sum(m, n, false, Br, &|c| m - c, &|c| c, &mut terms);
            sum(m - 1, n - 1, true, Br, &|c| m - c, &|c| -c - 1 + 2 * m, &mut terms);
        }
        (Family::KOdd, false) => {
            sum(m, n, false, Br, &|c| 1 + m - c, &|c| -c, &mut terms);
            sum(m, n - 1, true, Br, &|c| 1 + m - c, &|c| -3 * c + 2 * m, &mut terms);
        }
    }
    ClosedForm {
        family: f,
        n: n as u32,
        order: o,
        terms,
    }
}

impl ClosedForm {
    pub fn eval<C: Coeff>(&self) -> Pbw<C> {
        let mut brackets: HashMap<(Bracket, i64, u32), Pbw<C>> = HashMap::new();
        let mut out = Pbw::zero();
        for t in &self.terms {
            let b = brackets
                .entry((t.bracket, t.arg, t.c))
                .or_insert_with(|| t.bracket.eval(t.arg, t.c));
            let coeff = Laurent::signed_q_pow(if t.negative { -1 } else { 1 }, t.qexp);
            let k = t.kinv as u32;
            match self.order {
                Order::EhF => {
                    for (m, v) in b.terms() {
                        out.add_term(Mono::new(t.left, m.s + k, t.right), v.mul_laurent(&coeff));
                    }
                }
                Order::FhE => {
                    let mut mid = Pbw::zero();
                    for (m, v) in b.terms() {
                        mid.add_term(Mono::new(0, m.s + k, 0), v.mul_laurent(&coeff));
                    }
                    let x = Pbw::monomial(0, 0, t.left)
                        .mul(&mid.mul(&Pbw::monomial(t.right, 0, 0)));
                    out += &x;
                }
            }
        }
        out
    }
}

pub fn idp_closed<C: Coeff>(f: Family, n: u32) -> Pbw<C> {
    closed_form(f, n).eval()
}

pub fn idp_closed_fky<C: Coeff>(f: Family, n: u32) -> Pbw<C> {
    closed_form_fky(f, n).eval()
}

pub fn idp<C: Coeff>(f: Family, n: u32, method: Method) -> Pbw<C> {
    match method {
        Method::Recursive => idp_recursive(f, n),
        Method::Poly => idp_polynomial(f, n),
        Method::Closed => idp_closed(f, n),
        Method::Fky => idp_closed_fky(f, n),
    }
}

/// `b^(n) = sum_a q^{-a(n-a)} Ě^(a) F^(n-a)`.
pub fn b_divided<C: Coeff>(n: u32) -> Pbw<C> {
    let mut out = Pbw::zero();
    for a in 0..=n {
        let e = -(a as i64) * (n - a) as i64;
        out.add_term(Mono::new(a, 0, n - a), RatFn::q_pow(e));
    }
    out
}

/// Memoized recursive construction, safe to share between threads.
pub struct IdpCache<C> {
    seqs: RwLock<HashMap<Family, Arc<Vec<Pbw<C>>>>>,
}

impl<C: Coeff> Default for IdpCache<C> {
    fn default() -> Self {
        Self::new()
    }
}

impl<C: Coeff> IdpCache<C> {
    pub fn new() -> Self {
        IdpCache {
            seqs: RwLock::new(HashMap::new()),
        }
    }

    pub fn get(&self, f: Family, n: u32) -> Pbw<C> {
        if let Some(seq) = self.seqs.read().unwrap().get(&f) {
            if let Some(x) = seq.get(n as usize) {
                return x.clone();
            }
        }
        let mut w = self.seqs.write().unwrap();
        let entry = w.entry(f).or_insert_with(|| Arc::new(vec![Pbw::one()]));
        if entry.len() <= n as usize {
            let mut seq = entry.as_ref().clone();
            extend_sequence(f, &mut seq, n);
            *entry = Arc::new(seq);
        }
        entry[n as usize].clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qpoly::qfact;
    use num_bigint::BigInt;

    type P = Pbw<BigInt>;

    fn frak_t() -> P {
        P::gen(Named::FrakT)
    }

    fn t() -> P {
        P::gen(Named::T)
    }

    #[test]
    fn low_degree_recursions() {
        assert_eq!(idp_recursive::<BigInt>(Family::TEv, 0), P::one());
        assert_eq!(idp_recursive::<BigInt>(Family::TEv, 1), frak_t());
        // (t^2 - 1) / [2]
        let want = div_qint(&(&t().pow(2) - &P::one()), 2);
        assert_eq!(idp_recursive::<BigInt>(Family::KEv, 2), want);
        // t (t^2 - [2]^2) / [3]!
        let two2 = P::one().scale_laurent(&qint::<BigInt>(2).pow(2));
        let num = t().mul(&(&t().pow(2) - &two2));
        let fact = RatFn::from_laurent(qfact::<BigInt>(3)).inv().unwrap();
        assert_eq!(idp_recursive::<BigInt>(Family::KOdd, 3), num.scale(&fact));
    }

    #[test]
    fn low_degree_polynomials() {
        assert_eq!(idp_polynomial::<BigInt>(Family::TEv, 2), div_qint(&frak_t().pow(2), 2));
        let want = div_qint(&(&frak_t().pow(2) - &P::one()), 2);
        assert_eq!(idp_polynomial::<BigInt>(Family::TOdd, 2), want);
        assert_eq!(idp_polynomial::<BigInt>(Family::KOdd, 2), div_qint(&t().pow(2), 2));
    }

    #[test]
    fn factor_lists() {
        assert_eq!(polynomial_factors(Family::TEv, 4), vec![0, -2, 0, 2]);
        assert_eq!(polynomial_factors(Family::TEv, 3), vec![-2, 0, 2]);
        assert_eq!(polynomial_factors(Family::TOdd, 4), vec![-3, -1, 1, 3]);
        assert_eq!(polynomial_factors(Family::KEv, 3), vec![0, -1, 1]);
        assert!(polynomial_factors(Family::KOdd, 0).is_empty());
    }

    #[test]
    fn closed_small_cases() {
        // b^(2) + q [h;0]
        let want = &b_divided::<BigInt>(2) + &P::hbracket_sq(0, 1).scale_laurent(&Laurent::q_pow(1));
        assert_eq!(idp_closed::<BigInt>(Family::TEv, 2), want);
        assert_eq!(idp_closed_fky::<BigInt>(Family::TOdd, 0), P::one());
    }

    #[test]
    fn b_divided_small() {
        assert_eq!(b_divided::<BigInt>(0), P::one());
        assert_eq!(b_divided::<BigInt>(1), frak_t());
        let mut want = P::monomial(2, 0, 0);
        want += &P::monomial(1, 0, 1).scale_laurent(&Laurent::q_pow(-1));
        want += &P::monomial(0, 0, 2);
        assert_eq!(b_divided::<BigInt>(2), want);
    }

    #[test]
    fn methods_agree_on_small_n() {
        for f in Family::ALL {
            for n in 0..=6 {
                let r = idp_recursive::<BigInt>(f, n);
                for m in [Method::Poly, Method::Closed, Method::Fky] {
                    assert_eq!(idp::<BigInt>(f, n, m), r, "{f} n={n} {}", m.tag());
                }
            }
        }
    }

    #[test]
    fn c_zero_slice_is_b_divided() {
        for f in Family::ALL {
            for n in 0..=6 {
                let mut slice = closed_form(f, n);
                slice.terms.retain(|t| t.c == 0 && !t.kinv);
                assert_eq!(slice.eval::<BigInt>(), b_divided(n), "{f} n={n}");
            }
        }
    }

    #[test]
    fn cache_matches_direct() {
        let cache = IdpCache::<BigInt>::new();
        assert_eq!(cache.get(Family::KOdd, 5), idp_recursive(Family::KOdd, 5));
        assert_eq!(cache.get(Family::KOdd, 2), idp_recursive(Family::KOdd, 2));
    }

    #[test]
    fn weight_parity() {
        assert!(Family::TEv.check_weight(-4).is_ok());
        assert!(Family::TOdd.check_weight(-3).is_ok());
        assert!(matches!(Family::KEv.check_weight(1), Err(Error::ParityMismatch { .. })));
        assert_eq!("k-odd".parse::<Family>().unwrap(), Family::KOdd);
    }
}
