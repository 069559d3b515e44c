use num_bigint::BigInt;
use proptest::prelude::*;

use ipowers::idp::{idp_closed, Family};
use ipowers::pbw::{Mono, Pbw};
use ipowers::qpoly::{cbinom, qbinom, Laurent, RatFn};
use ipowers::render::pbw_text;
use ipowers::repmod::ModVec;
use ipowers::udot::{specialize, to_canonical_basis, Dot};

type L = Laurent<BigInt>;
type R = RatFn<BigInt>;
type P = Pbw<BigInt>;

fn laurent() -> impl Strategy<Value = L> {
    prop::collection::vec((-4i64..=4, -3i64..=3), 0..4)
        .prop_map(|ts| Laurent::from_terms(ts.into_iter().map(|(e, c)| (e, BigInt::from(c)))))
}

fn nonzero_laurent() -> impl Strategy<Value = L> {
    laurent().prop_filter("nonzero", |p| !p.is_zero())
}

fn ratfn() -> impl Strategy<Value = R> {
    (laurent(), nonzero_laurent()).prop_map(|(n, d)| RatFn::new(n, d).unwrap())
}

fn element() -> impl Strategy<Value = P> {
    prop::collection::vec((0u32..=2, 0u32..=2, 0u32..=2, nonzero_laurent()), 1..4).prop_map(|ts| {
        let mut x = P::zero();
        for (a, s, b, c) in ts {
            x.add_term(Mono::new(a, s, b), RatFn::from_laurent(c));
        }
        x
    })
}

fn family() -> impl Strategy<Value = Family> {
    prop::sample::select(Family::ALL.to_vec())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(a in ratfn(), b in ratfn(), c in ratfn()) {
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a + &b, &b + &a);
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
        }
        prop_assert_eq!(a.bar().bar(), a);
    }

    #[test]
    fn laurent_division_inverts_multiplication(a in laurent(), b in nonzero_laurent()) {
        prop_assert_eq!((&a * &b).div_exact(&b).unwrap(), a);
    }

    #[test]
    fn quantum_pascal(m in -8i64..=8, k in 1u32..=5) {
        let lhs = qbinom::<BigInt>(m, k).unwrap();
        let rhs = &qbinom::<BigInt>(m - 1, k).unwrap().shift(-(k as i64))
            + &qbinom::<BigInt>(m - 1, k - 1).unwrap().shift(m - k as i64);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn quantum_binomials_are_bar_invariant(m in -8i64..=8, k in 0u32..=5) {
        prop_assert!(qbinom::<BigInt>(m, k).unwrap().is_bar_invariant());
    }

    #[test]
    fn cbinom_signs(m in -8i64..=8, c in 0u32..=4) {
        let v = cbinom::<BigInt>(m, c).unwrap();
        if m <= 0 || c == 0 {
            prop_assert!(v.is_nonneg());
        } else {
            let flipped = if c % 2 == 0 { v.clone() } else { -v.clone() };
            prop_assert!(flipped.is_nonneg());
        }
    }

    #[test]
    fn associativity(x in element(), y in element(), z in element()) {
        prop_assert_eq!(x.mul(&y).mul(&z), x.mul(&y.mul(&z)));
    }

    #[test]
    fn sigma_is_an_anti_involution(x in element(), y in element()) {
        prop_assert_eq!(x.mul(&y).sigma(), y.sigma().mul(&x.sigma()));
        prop_assert_eq!(x.sigma().sigma(), x.clone());
        prop_assert_eq!(x.varpi().varpi(), x);
    }

    #[test]
    fn varpi_is_multiplicative(x in element(), y in element()) {
        prop_assert_eq!(x.mul(&y).varpi(), x.varpi().mul(&y.varpi()));
    }

    #[test]
    fn module_axiom(x in element(), y in element(), mu in 0u32..=5, cs in prop::collection::vec(laurent(), 6)) {
        let v = ModVec::from_coords(mu, cs[..=mu as usize].iter().cloned().map(RatFn::from_laurent).collect());
        prop_assert_eq!(v.act_element(&x.mul(&y)), v.act_element(&y).act_element(&x));
    }

    #[test]
    fn dot_action_is_an_action(x in element(), y in element(), l in -3i64..=3) {
        let one = Dot::<BigInt>::idempotent(2 * l);
        let xy = one.act(&x.mul(&y)).unwrap();
        prop_assert_eq!(xy, one.act(&y).unwrap().act(&x).unwrap());
        prop_assert_eq!(one.act(&x).unwrap(), specialize(&x, 2 * l).unwrap());
    }

    #[test]
    fn canonical_basis_round_trip(f in family(), n in 0u32..=6, l in -4i64..=4) {
        let mu = if f.even_weights() { 2 * l } else { 2 * l - 1 };
        let d = specialize(&idp_closed::<BigInt>(f, n), mu).unwrap();
        let cb = to_canonical_basis(&d);
        prop_assert!(cb.is_positive());
        prop_assert_eq!(cb.to_dot(), d);
    }

    #[test]
    fn machine_and_big_integers_agree(f in family(), n in 0u32..=6) {
        prop_assert_eq!(pbw_text(&idp_closed::<i64>(f, n)), pbw_text(&idp_closed::<BigInt>(f, n)));
    }

    #[test]
    fn json_round_trips(x in element(), f in family(), n in 0u32..=5, l in -3i64..=3, r in ratfn()) {
        let back: P = serde_json::from_str(&serde_json::to_string(&x).unwrap()).unwrap();
        prop_assert_eq!(back, x);
        let back: R = serde_json::from_str(&serde_json::to_string(&r).unwrap()).unwrap();
        prop_assert_eq!(back, r);
        let mu = if f.even_weights() { 2 * l } else { 2 * l - 1 };
        let d = specialize(&idp_closed::<BigInt>(f, n), mu).unwrap();
        let back: Dot<BigInt> = serde_json::from_str(&serde_json::to_string(&d).unwrap()).unwrap();
        prop_assert_eq!(&back, &d);
        let cb = to_canonical_basis(&d);
        let back = serde_json::from_str(&serde_json::to_string(&cb).unwrap()).unwrap();
        prop_assert_eq!(cb, back);
        let hw = mu.unsigned_abs() as u32;
        let v = ModVec::<BigInt>::highest(hw).act_element(&idp_closed(f, n));
        let back: ModVec<BigInt> = serde_json::from_str(&serde_json::to_string(&v).unwrap()).unwrap();
        prop_assert_eq!(back, v);
    }

    #[test]
    fn brackets_commute_past_generators(a in -4i64..=4, n in 0u32..=3) {
        let f = P::monomial(0, 0, 1);
        let e = P::monomial(1, 0, 0);
        prop_assert_eq!(P::hbracket_sq(a, n).mul(&f), f.mul(&P::hbracket_sq(a + 1, n)));
        prop_assert_eq!(P::hbracket_sq(a, n).mul(&e), e.mul(&P::hbracket_sq(a - 1, n)));
        prop_assert_eq!(P::hbracket_br(a, n).mul(&f), f.mul(&P::hbracket_br(a + 1, n)));
        prop_assert_eq!(P::hbracket_br(a, n).mul(&e), e.mul(&P::hbracket_br(a - 1, n)));
    }
}
