//! Verification suites over finite windows.  Every check yields an [`Entry`];
//! entries are computed in parallel and sorted, so reports are deterministic.
//! A passing window is evidence, not a proof.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::str::FromStr;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::fixtures;
use crate::idp::{b_divided, closed_form, idp_closed, idp_closed_fky, idp_polynomial, idp_sequence, Family};
use crate::pbw::{Named, Pbw};
use crate::qpoly::{qbinom2, qint, Laurent, RatFn};
use crate::render::{cb_text, pbw_text};
use crate::repmod::{verify_icb, ModGen, ModVec};
use crate::udot::{dot_closed, specialize, to_canonical_basis, CbOrder, Dot};

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// One line of a verification report.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct Entry {
    pub family: Option<Family>,
    pub n: Option<u32>,
    pub mu: Option<i64>,
    pub check: String,
    pub status: Status,
    pub witness: Option<String>,
}

impl Entry {
    /// A failing entry iff a witness is given.
    pub fn new(family: impl Into<Option<Family>>, n: Option<u32>, mu: Option<i64>, check: &str, witness: Option<String>) -> Self {
        Entry {
            family: family.into(),
            n,
            mu,
            check: check.to_string(),
            status: if witness.is_some() { Status::Fail } else { Status::Pass },
            witness,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Suite {
    Closed,
    Fky,
    Dot,
    Cb,
    Module,
    Involution,
    Golden,
    All,
}

impl Suite {
    pub const EACH: [Suite; 7] = [
        Suite::Golden,
        Suite::Closed,
        Suite::Fky,
        Suite::Involution,
        Suite::Dot,
        Suite::Cb,
        Suite::Module,
    ];
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        Ok(match s {
            "closed" => Suite::Closed,
            "fky" => Suite::Fky,
            "dot" => Suite::Dot,
            "cb" => Suite::Cb,
            "module" => Suite::Module,
            "involution" => Suite::Involution,
            "golden" => Suite::Golden,
            "all" => Suite::All,
            _ => return Err(Error::Parse(format!("unknown suite `{s}`"))),
        })
    }
}

/// Windows for the sweeps.
#[derive(Clone, Debug)]
pub struct Config {
    /// Largest `n` for the PBW-level suites.
    pub max_n: u32,
    /// Largest `n` for the dot and canonical-basis suites.
    pub max_n_dot: u32,
    pub lambda_min: i64,
    pub lambda_max: i64,
    pub max_hw: u32,
    pub fixture_dir: PathBuf,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            max_n: 12,
            max_n_dot: 10,
            lambda_min: -8,
            lambda_max: 8,
            max_hw: 8,
            fixture_dir: fixtures::default_dir(),
        }
    }
}

pub fn all_pass(entries: &[Entry]) -> bool {
    entries.iter().all(Entry::passed)
}

pub fn run(suite: Suite, cfg: &Config) -> Vec<Entry> {
    let mut out = match suite {
        Suite::All => Suite::EACH.iter().flat_map(|&s| run(s, cfg)).collect(),
        Suite::Closed => closed_suite(cfg.max_n),
        Suite::Fky => fky_suite(cfg.max_n),
        Suite::Dot => dot_suite(cfg),
        Suite::Cb => cb_suite(cfg),
        Suite::Module => module_suite(cfg.max_hw),
        Suite::Involution => involution_suite(cfg.max_n),
        Suite::Golden => fixtures::check_dir(&cfg.fixture_dir),
    };
    out.sort();
    out
}

fn differ(got: &Pbw<BigInt>, want: &Pbw<BigInt>) -> Option<String> {
    (got != want).then(|| format!("got `{}`, want `{}`", pbw_text(got), pbw_text(want)))
}

fn pairs(max_n: u32) -> Vec<(Family, u32)> {
    Family::ALL
        .into_iter()
        .flat_map(|f| (0..=max_n).map(move |n| (f, n)))
        .collect()
}

/// The family's sequence up to `max_n` from the recursion, built once per family.
fn recursive_table(max_n: u32) -> BTreeMap<Family, Vec<Pbw<BigInt>>> {
    Family::ALL
        .into_par_iter()
        .map(|f| (f, idp_sequence(f, max_n)))
        .collect::<Vec<_>>()
        .into_iter()
        .collect()
}

/// All four constructions agree, the `c = 0` slice is `b^(n)`, and the
/// element commutes with its generator.
pub fn closed_suite(max_n: u32) -> Vec<Entry> {
    let table = recursive_table(max_n);
    pairs(max_n)
        .into_par_iter()
        .flat_map_iter(|(f, n)| {
            let rec = &table[&f][n as usize];
            let closed = idp_closed::<BigInt>(f, n);
            let mut slice = closed_form(f, n);
            slice.terms.retain(|t| t.c == 0 && !t.kinv);
            let g = f.generator::<BigInt>();
            let comm = rec.mul(&g) != g.mul(rec);
            vec![
                Entry::new(f, Some(n), None, "poly", differ(&idp_polynomial(f, n), rec)),
                Entry::new(f, Some(n), None, "closed", differ(&closed, rec)),
                Entry::new(f, Some(n), None, "fky", differ(&idp_closed_fky(f, n), rec)),
                Entry::new(f, Some(n), None, "b-slice", differ(&slice.eval(), &b_divided(n))),
                Entry::new(f, Some(n), None, "commutes", comm.then(|| "X g != g X".to_string())),
            ]
        })
        .collect()
}

pub fn fky_suite(max_n: u32) -> Vec<Entry> {
    pairs(max_n)
        .into_par_iter()
        .map(|(f, n)| {
            let w = differ(&idp_closed_fky::<BigInt>(f, n), &idp_closed(f, n));
            Entry::new(f, Some(n), None, "fky", w)
        })
        .collect()
}

/// ς-fixedness of the ı-divided powers, the bracket images under ς, and
/// involutivity of ς and ϖ.
pub fn involution_suite(max_n: u32) -> Vec<Entry> {
    let mut out: Vec<Entry> = pairs(max_n)
        .into_par_iter()
        .flat_map_iter(|(f, n)| {
            let x = idp_closed::<BigInt>(f, n);
            let vv = x.varpi().varpi();
            vec![
                Entry::new(f, Some(n), None, "sigma-fixed", differ(&x.sigma(), &x)),
                Entry::new(f, Some(n), None, "varpi-involutive", differ(&vv, &x)),
            ]
        })
        .collect();
    let items: Vec<(i64, u32)> = (-4..=4).flat_map(|a| (0..=4).map(move |n| (a, n))).collect();
    out.par_extend(items.into_par_iter().flat_map_iter(|(a, n)| {
        let sign = if n % 2 == 0 { 1 } else { -1 };
        let ni = n as i64;
        let sq = Pbw::<BigInt>::hbracket_sq(a, n);
        let want_sq = Pbw::hbracket_sq(1 - a - ni, n).scale_laurent(&Laurent::signed_q_pow(sign, 2 * ni * (ni + 1)));
        let br = Pbw::<BigInt>::hbracket_br(a, n);
        let want_br = Pbw::hbracket_br(2 - a - ni, n).scale_laurent(&Laurent::signed_q_pow(sign, 2 * ni * (ni - 1)));
        let label = |w: Option<String>| w.map(|w| format!("a={a}: {w}"));
        vec![
            Entry::new(None, Some(n), None, &format!("sigma-sq(a={a})"), label(differ(&sq.sigma(), &want_sq))),
            Entry::new(None, Some(n), None, &format!("sigma-br(a={a})"), label(differ(&br.sigma(), &want_br))),
        ]
    }));
    for name in [Named::ECheck, Named::F, Named::KInv, Named::H, Named::FrakT, Named::T] {
        let g = Pbw::<BigInt>::gen(name);
        let w = differ(&g.sigma().sigma(), &g).or_else(|| differ(&g.varpi().varpi(), &g));
        out.push(Entry::new(None, None, None, &format!("involutive({name:?})"), w));
    }
    out
}

fn weights(f: Family, cfg: &Config) -> Vec<i64> {
    (cfg.lambda_min..=cfg.lambda_max)
        .map(|l| if f.even_weights() { 2 * l } else { 2 * l - 1 })
        .collect()
}

/// Specialized closed forms, or the error they raised.
fn specialized(cfg: &Config) -> Vec<(Family, u32, i64, Result<Dot<BigInt>, Error>)> {
    pairs(cfg.max_n_dot)
        .into_par_iter()
        .flat_map_iter(|(f, n)| {
            let x = idp_closed::<BigInt>(f, n);
            weights(f, cfg)
                .into_iter()
                .map(|mu| (f, n, mu, specialize(&x, mu)))
                .collect::<Vec<_>>()
        })
        .collect()
}

/// Specialization agrees with the explicit q²-binomial expansions, and the
/// bracket elements specialize to q²-binomials.
pub fn dot_suite(cfg: &Config) -> Vec<Entry> {
    let mut out: Vec<Entry> = specialized(cfg)
        .into_par_iter()
        .map(|(f, n, mu, d)| {
            let w = match d {
                Err(e) => Some(e.to_string()),
                Ok(d) => {
                    let want = dot_closed(f, n, mu).expect("parity");
                    (d != want).then(|| {
                        format!("got `{}`, want `{}`", crate::render::dot_text(&d), crate::render::dot_text(&want))
                    })
                }
            };
            Entry::new(f, Some(n), Some(mu), "dot", w)
        })
        .collect();
    let items: Vec<(u32, i64)> = (0..=6).flat_map(|n| (-6..=6).map(move |l| (n, l))).collect();
    out.par_extend(items.into_par_iter().flat_map_iter(|(n, l)| {
        let ni = n as i64;
        let mut sq_bad = None;
        let mut br_bad = None;
        for a in -6..=6i64 {
            let sq = specialize(&Pbw::<BigInt>::hbracket_sq(a, n), 2 * l).map(|d| d.coeff(0, 0));
            let want = qbinom2::<BigInt>(a - 1 - l + ni, n).unwrap().shift(2 * ni * (a - 1 - l));
            if sq_bad.is_none() && sq.as_ref() != Ok(&want) {
                sq_bad = Some(format!("a={a}"));
            }
            let br = specialize(&Pbw::<BigInt>::hbracket_br(a, n), 2 * l - 1).map(|d| d.coeff(0, 0));
            let want = qbinom2::<BigInt>(a - l - 1 + ni, n).unwrap().shift(2 * ni * (a - l));
            if br_bad.is_none() && br.as_ref() != Ok(&want) {
                br_bad = Some(format!("a={a}"));
            }
        }
        vec![
            Entry::new(None, Some(n), Some(2 * l), "bracket-sq-qbinom", sq_bad),
            Entry::new(None, Some(n), Some(2 * l - 1), "bracket-br-qbinom", br_bad),
        ]
    }));
    out
}

/// `E^(a) F^(b) 1_μ` and its canonical-basis expansion act identically on the
/// weight-`μ` vectors of `L(N)` for several `N`.
pub fn conversion_defect(a: u32, b: u32, mu: i64) -> Option<String> {
    let mut d = Dot::<BigInt>::zero(mu);
    d.add_term(a, b, Laurent::one());
    let cb = to_canonical_basis(&d);
    let lo = mu.abs();
    for big_n in (lo..=lo + 2 * (a + b) as i64 + 2).step_by(2) {
        let hw = big_n as u32;
        let j = ((big_n - mu) / 2) as u32;
        let v = ModVec::<BigInt>::basis(hw, j);
        let lhs = v.act_divided(ModGen::F, b).act_divided(ModGen::E, a);
        let mut rhs = ModVec::zero(hw);
        for (l, c) in cb.terms() {
            let img = match l.order {
                CbOrder::EFirst => v.act_divided(ModGen::F, l.b).act_divided(ModGen::E, l.a),
                CbOrder::FFirst => v.act_divided(ModGen::E, l.a).act_divided(ModGen::F, l.b),
            };
            rhs = rhs.add(&img.scale(&RatFn::from_laurent(c.clone())));
        }
        if lhs != rhs {
            return Some(format!("on L({big_n}): `{lhs}` vs `{rhs}` from `{}`", cb_text(&cb)));
        }
    }
    None
}

/// Positivity of the canonical-basis expansions, exact round trip back to
/// E-first form, and the conversion identity against module operators.
pub fn cb_suite(cfg: &Config) -> Vec<Entry> {
    let mut out: Vec<Entry> = specialized(cfg)
        .into_par_iter()
        .flat_map_iter(|(f, n, mu, d)| match d {
            Err(e) => vec![Entry::new(f, Some(n), Some(mu), "positive", Some(e.to_string()))],
            Ok(d) => {
                let cb = to_canonical_basis(&d);
                let pos = (!cb.is_positive()).then(|| cb_text(&cb));
                let back = cb.to_dot();
                let rt = (back != d).then(|| "round trip changed the element".to_string());
                vec![
                    Entry::new(f, Some(n), Some(mu), "positive", pos),
                    Entry::new(f, Some(n), Some(mu), "roundtrip", rt),
                ]
            }
        })
        .collect();
    let items: Vec<(u32, u32, i64)> = (0..=4)
        .flat_map(|a| (0..=4).flat_map(move |b| (-6..=6).map(move |mu| (a, b, mu))))
        .collect();
    out.par_extend(items.into_par_iter().map(|(a, b, mu)| {
        Entry::new(None, None, Some(mu), &format!("conversion(a={a},b={b})"), conversion_defect(a, b, mu))
    }));
    out
}

/// The relation `EF - FE = [μ - 2a]` on `F^(a) v⁺`, which gates the module
/// action, and the ı-canonical basis checks.
pub fn relation_defect(mu: u32) -> Option<String> {
    for a in 0..=mu {
        let v = ModVec::<BigInt>::basis(mu, a);
        let ef = v.act_gen(ModGen::F).act_gen(ModGen::E);
        let fe = v.act_gen(ModGen::E).act_gen(ModGen::F);
        let lhs = ef.add(&fe.scale(&-RatFn::one()));
        let want = v.scale(&RatFn::from_laurent(qint(mu as i64 - 2 * a as i64)));
        if lhs != want {
            return Some(format!("a={a}: `{lhs}` vs `{want}`"));
        }
    }
    None
}

pub fn module_suite(max_hw: u32) -> Vec<Entry> {
    (0..=max_hw)
        .into_par_iter()
        .flat_map_iter(|mu| {
            let gate = relation_defect(mu);
            let mut out = vec![Entry::new(None, None, Some(mu as i64), "relation", gate.clone())];
            if gate.is_none() {
                out.extend(verify_icb::<BigInt>(mu));
            }
            out
        })
        .collect()
}
