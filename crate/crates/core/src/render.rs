//! Text and LaTeX rendering.  Output is deterministic: terms always appear in
//! the sorted order of the underlying maps.


use crate::idp::{Bracket, ClosedForm, ClosedTerm, Order};
use crate::pbw::{Mono, Pbw};
use crate::repmod::ModVec;
use crate::udot::{Cb, CbOrder, Dot};
use crate::qpoly::{Laurent, RatFn};
use crate::scalar::Coeff;

pub fn laurent_latex<C: Coeff>(p: &Laurent<C>) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, (e, c)) in p.terms().rev().enumerate() {
        let neg = c.is_negative();
        let abs = c.abs();
        match (i, neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        if e == 0 {
            out.push_str(&abs.to_string());
            continue;
        }
        if !abs.is_one() {
            out.push_str(&abs.to_string());
        }
        if e == 1 {
            out.push('q');
        } else {
            out.push_str(&format!("q^{{{e}}}"));
        }
    }
    out
}

pub fn ratfn_latex<C: Coeff>(r: &RatFn<C>) -> String {
    match r.as_laurent() {
        Some(p) => laurent_latex(p),
        None => format!(
            "\\frac{{{}}}{{{}}}",
            laurent_latex(r.numer()),
            laurent_latex(r.denom())
        ),
    }
}

fn mono_text(m: &Mono) -> String {
    let mut parts = Vec::new();
    match m.a {
        0 => {}
        1 => parts.push("Ě".to_string()),
        a => parts.push(format!("Ě^({a})")),
    }
    if m.s > 0 {
        parts.push(format!("K^-{}", m.s));
    }
    match m.b {
        0 => {}
        1 => parts.push("F".to_string()),
        b => parts.push(format!("F^({b})")),
    }
    parts.join(" ")
}

pub(crate) fn mono_latex(m: &Mono) -> String {
    let mut parts = Vec::new();
    match m.a {
        0 => {}
        1 => parts.push("\\check{E}".to_string()),
        a => parts.push(format!("\\check{{E}}^{{({a})}}")),
    }
    if m.s > 0 {
        parts.push(format!("K^{{-{}}}", m.s));
    }
    match m.b {
        0 => {}
        1 => parts.push("F".to_string()),
        b => parts.push(format!("F^{{({b})}}")),
    }
    parts.join(" ")
}

/// Join `(coefficient, monomial)` pairs; a unit coefficient is omitted and a
/// compound coefficient is parenthesized.
fn join_terms(terms: Vec<(String, bool, String)>, paren: (&str, &str)) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    terms
        .into_iter()
        .map(|(c, compound, m)| match (c.as_str(), m.is_empty()) {
            (_, true) => c,
            ("1", false) => m,
            ("-1", false) => format!("-{m}"),
            (_, false) if compound => format!("{}{c}{} {m}", paren.0, paren.1),
            (_, false) => format!("{c} {m}"),
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

fn is_compound<C: Coeff>(r: &RatFn<C>) -> bool {
    r.as_laurent().map_or(true, |p| p.len() > 1)
}

pub fn pbw_text<C: Coeff>(x: &Pbw<C>) -> String {
    join_terms(
        x.terms()
            .map(|(m, c)| (c.to_string(), is_compound(c), mono_text(m)))
            .collect(),
        ("(", ")"),
    )
}

pub fn pbw_latex<C: Coeff>(x: &Pbw<C>) -> String {
    join_terms(
        x.terms()
            .map(|(m, c)| (ratfn_latex(c), is_compound(c), mono_latex(m)))
            .collect(),
        ("\\left(", "\\right)"),
    )
}

fn laurent_compound<C: Coeff>(p: &Laurent<C>) -> bool {
    p.len() > 1
}

fn dot_mono_text(a: u32, b: u32, mu: i64, f_first: bool) -> String {
    let e = match a {
        0 => None,
        1 => Some("E".to_string()),
        a => Some(format!("E^({a})")),
    };
    let f = match b {
        0 => None,
        1 => Some("F".to_string()),
        b => Some(format!("F^({b})")),
    };
    let parts = if f_first { [f, e] } else { [e, f] };
    let mut out: Vec<String> = parts.into_iter().flatten().collect();
    out.push(format!("1_{mu}"));
    out.join(" ")
}

fn dot_mono_latex(a: u32, b: u32, mu: i64, f_first: bool) -> String {
    let e = match a {
        0 => None,
        1 => Some("E".to_string()),
        a => Some(format!("E^{{({a})}}")),
    };
    let f = match b {
        0 => None,
        1 => Some("F".to_string()),
        b => Some(format!("F^{{({b})}}")),
    };
    let parts = if f_first { [f, e] } else { [e, f] };
    let mut out: Vec<String> = parts.into_iter().flatten().collect();
    out.push(format!("\\mathbf 1_{{{mu}}}"));
    out.join(" ")
}

pub fn dot_text<C: Coeff>(d: &Dot<C>) -> String {
    join_terms(
        d.terms()
            .map(|(a, b, c)| (c.to_string(), laurent_compound(c), dot_mono_text(a, b, d.weight(), false)))
            .collect(),
        ("(", ")"),
    )
}

pub fn dot_latex<C: Coeff>(d: &Dot<C>) -> String {
    join_terms(
        d.terms()
            .map(|(a, b, c)| (laurent_latex(c), laurent_compound(c), dot_mono_latex(a, b, d.weight(), false)))
            .collect(),
        ("\\left(", "\\right)"),
    )
}

pub fn cb_text<C: Coeff>(x: &Cb<C>) -> String {
    join_terms(
        x.terms()
            .map(|(l, c)| {
                let m = dot_mono_text(l.a, l.b, x.weight(), l.order == CbOrder::FFirst);
                (c.to_string(), laurent_compound(c), m)
            })
            .collect(),
        ("(", ")"),
    )
}

pub fn cb_latex<C: Coeff>(x: &Cb<C>) -> String {
    join_terms(
        x.terms()
            .map(|(l, c)| {
                let m = dot_mono_latex(l.a, l.b, x.weight(), l.order == CbOrder::FFirst);
                (laurent_latex(c), laurent_compound(c), m)
            })
            .collect(),
        ("\\left(", "\\right)"),
    )
}

fn modvec_terms<C: Coeff>(v: &ModVec<C>, latex: bool) -> Vec<(String, bool, String)> {
    v.coords()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(a, c)| {
            let m = match (a, latex) {
                (0, false) => "v+".to_string(),
                (1, false) => "F v+".to_string(),
                (a, false) => format!("F^({a}) v+"),
                (0, true) => "v^+".to_string(),
                (1, true) => "F v^+".to_string(),
                (a, true) => format!("F^{{({a})}} v^+"),
            };
            let s = if latex { ratfn_latex(c) } else { c.to_string() };
            (s, is_compound(c), m)
        })
        .collect()
}

pub fn modvec_text<C: Coeff>(v: &ModVec<C>) -> String {
    join_terms(modvec_terms(v, false), ("(", ")"))
}

pub fn modvec_latex<C: Coeff>(v: &ModVec<C>) -> String {
    join_terms(modvec_terms(v, true), ("\\left(", "\\right)"))
}

fn bracket_latex(t: &ClosedTerm) -> Option<String> {
    match (t.bracket, t.c) {
        (_, 0) => None,
        (Bracket::Sq, 1) => Some(format!("[h;{}]", t.arg)),
        (Bracket::Sq, c) => Some(format!("\\qbinom{{h;{}}}{{{c}}}", t.arg)),
        (Bracket::Br, 1) => Some(format!("\\llbracket h;{} \\rrbracket", t.arg)),
        (Bracket::Br, c) => Some(format!("\\LR{{h;{}}}{{{c}}}", t.arg)),
    }
}

fn bracket_text(t: &ClosedTerm) -> Option<String> {
    match (t.bracket, t.c) {
        (_, 0) => None,
        (Bracket::Sq, 1) => Some(format!("[h;{}]", t.arg)),
        (Bracket::Sq, c) => Some(format!("[h;{} | {c}]", t.arg)),
        (Bracket::Br, 1) => Some(format!("[[h;{}]]", t.arg)),
        (Bracket::Br, c) => Some(format!("[[h;{} | {c}]]", t.arg)),
    }
}

fn closed_term(t: &ClosedTerm, order: Order, latex: bool) -> String {
    let power = |name: &str, k: u32| match (k, latex) {
        (0, _) => None,
        (1, _) => Some(name.to_string()),
        (k, true) => Some(format!("{name}^{{({k})}}")),
        (k, false) => Some(format!("{name}^({k})")),
    };
    let (e, f) = if latex { ("\\check{E}", "F") } else { ("Ě", "F") };
    let (l, r) = match order {
        Order::EhF => (e, f),
        Order::FhE => (f, e),
    };
    let q = match (t.qexp, latex) {
        (0, _) => None,
        (1, _) => Some("q".to_string()),
        (e, true) => Some(format!("q^{{{e}}}")),
        (e, false) => Some(format!("q^{e}")),
    };
    let k = t.kinv.then(|| if latex { "K^{-1}".to_string() } else { "K^-1".to_string() });
    let bracket = if latex { bracket_latex(t) } else { bracket_text(t) };
    let parts: Vec<String> = [q, power(l, t.left), bracket, k, power(r, t.right)]
        .into_iter()
        .flatten()
        .collect();
    let body = if parts.is_empty() { "1".to_string() } else { parts.join(" ") };
    if t.negative {
        format!("-{body}")
    } else {
        body
    }
}

/// The closed form in displayed notation; in ĚhF order the `c = 0` slice
/// without `K^{-1}` is collapsed to `b^(n)`.
fn closed_render(x: &ClosedForm, latex: bool) -> String {
    let mut parts = Vec::new();
    let mut rest = x.terms.as_slice();
    if x.order == Order::EhF {
        let k = rest.iter().take_while(|t| t.c == 0 && !t.kinv).count();
        if k > 0 && x.n > 0 {
            parts.push(if latex { format!("b^{{({})}}", x.n) } else { format!("b^({})", x.n) });
            rest = &rest[k..];
        }
    }
    parts.extend(rest.iter().map(|t| closed_term(t, x.order, latex)));
    if parts.is_empty() {
        return "0".into();
    }
    parts.join(" + ").replace("+ -", "- ")
}

pub fn closed_latex(x: &ClosedForm) -> String {
    closed_render(x, true)
}

pub fn closed_text(x: &ClosedForm) -> String {
    closed_render(x, false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pbw::Named;
    use num_bigint::BigInt;

    #[test]
    fn pbw_text_form() {
        let t = Pbw::<BigInt>::gen(Named::T);
        assert_eq!(pbw_text(&t), "F + K^-1 + Ě");
        let h = Pbw::<BigInt>::gen(Named::H);
        assert_eq!(pbw_text(&h), "-1/(q^2 - 1) + (1/(q^2 - 1)) K^-2");
        assert_eq!(pbw_text(&Pbw::<BigInt>::zero()), "0");
    }

    #[test]
    fn latex_forms() {
        let p = Laurent::<BigInt>::from_pairs(&[(2, 1), (0, -2), (-1, 1)]);
        assert_eq!(laurent_latex(&p), "q^{2} - 2 + q^{-1}");
        let x = Pbw::<BigInt>::monomial(2, 1, 3).scale_laurent(&Laurent::q_pow(-1));
        assert_eq!(pbw_latex(&x), "q^{-1} \\check{E}^{(2)} K^{-1} F^{(3)}");
    }

    #[test]
    fn closed_forms_in_display_notation() {
        use crate::idp::{closed_form, closed_form_fky, Family};
        assert_eq!(closed_latex(&closed_form(Family::TEv, 2)), "b^{(2)} + q [h;0]");
        assert_eq!(
            closed_latex(&closed_form(Family::TOdd, 3)),
            "b^{(3)} + q^{-1} \\llbracket h;0 \\rrbracket F + q^{-1} \\check{E} \\llbracket h;0 \\rrbracket"
        );
        assert_eq!(closed_text(&closed_form(Family::KOdd, 0)), "1");
        assert_eq!(closed_text(&closed_form_fky(Family::TEv, 2)), "Ě^(2) + q F Ě + F^(2) - q^3 [h;0]");
    }
}
