//! Dense univariate polynomials over an integer ring, low degree first.
//!
//! Only what the Laurent layer needs: exact division, pseudo-remainders and a
//! primitive-PRS gcd.  Inputs are assumed trimmed (no trailing zeros).


use crate::scalar::Coeff;

pub(crate) fn trim<C: Coeff>(p: &mut Vec<C>) {
    while p.last().map_or(false, |c| c.is_zero()) {
        p.pop();
    }
}

pub(crate) fn content<C: Coeff>(p: &[C]) -> C {
    let mut g = C::zero();
    for c in p {
        g = g.gcd(c);
        if g.is_one() {
            break;
        }
    }
    g
}

fn divide_by<C: Coeff>(p: &mut [C], d: &C) {
    if d.is_one() {
        return;
    }
    for c in p.iter_mut() {
        *c = c.div_floor(d);
    }
}

/// Primitive part with positive leading coefficient.
pub(crate) fn primitive<C: Coeff>(mut p: Vec<C>) -> Vec<C> {
    if p.is_empty() {
        return p;
    }
    let mut g = content(&p);
    if p.last().unwrap().is_negative() {
        g = -g;
    }
    divide_by(&mut p, &g);
    p
}

/// `a / b` when the quotient has integer coefficients and the remainder is zero.
pub(crate) fn div_exact<C: Coeff>(a: &[C], b: &[C]) -> Option<Vec<C>> {
    if b.is_empty() {
        return None;
    }
    if a.is_empty() {
        return Some(Vec::new());
    }
    if a.len() < b.len() {
        return None;
    }
    let lb = b.last().unwrap();
    let mut rem = a.to_vec();
    let mut quot = vec![C::zero(); a.len() - b.len() + 1];
    for k in (0..quot.len()).rev() {
        let top = &rem[k + b.len() - 1];
        if top.is_zero() {
            continue;
        }
        let (qk, r) = top.div_rem(lb);
        if !r.is_zero() {
            return None;
        }
        for (j, bj) in b.iter().enumerate() {
            if !bj.is_zero() {
                rem[k + j] = rem[k + j].clone() - qk.clone() * bj.clone();
            }
        }
        quot[k] = qk;
    }
    if rem.iter().any(|c| !c.is_zero()) {
        return None;
    }
    trim(&mut quot);
    Some(quot)
}

/// lc(b)^(deg a - deg b + 1) * a mod b, computed without fractions.
fn pseudo_rem<C: Coeff>(a: &[C], b: &[C]) -> Vec<C> {
    let mut rem = a.to_vec();
    let lb = b.last().unwrap().clone();
    while rem.len() >= b.len() && !rem.is_empty() {
        let shift = rem.len() - b.len();
        let top = rem.last().unwrap().clone();
        // rem <- lb * rem - top * x^shift * b, dropping the cancelled top term
        let g = lb.gcd(&top);
        let (mb, mt) = (lb.div_floor(&g), top.div_floor(&g));
        for c in rem.iter_mut() {
            *c = c.clone() * mb.clone();
        }
        for (j, bj) in b.iter().enumerate() {
            rem[shift + j] = rem[shift + j].clone() - mt.clone() * bj.clone();
        }
        rem.pop();
        trim(&mut rem);
    }
    rem
}

/// Greatest common divisor in Z[x]: primitive with positive leading
/// coefficient, times the gcd of the contents.
pub(crate) fn gcd<C: Coeff>(a: &[C], b: &[C]) -> Vec<C> {
    if a.is_empty() {
        let mut p = b.to_vec();
        if p.last().map_or(false, |c| c.is_negative()) {
            p.iter_mut().for_each(|c| *c = -c.clone());
        }
        return p;
    }
    if b.is_empty() {
        return gcd(b, a);
    }
    let cont = content(a).gcd(&content(b));
    let (mut r0, mut r1) = if a.len() >= b.len() {
        (primitive(a.to_vec()), primitive(b.to_vec()))
    } else {
        (primitive(b.to_vec()), primitive(a.to_vec()))
    };
    if r1.len() == 1 {
        return vec![cont];
    }
    // quick exit: the smaller one divides the larger
    if div_exact(&r0, &r1).is_some() {
        r1.iter_mut().for_each(|c| *c = c.clone() * cont.clone());
        return r1;
    }
    while !r1.is_empty() {
        let r = primitive(pseudo_rem(&r0, &r1));
        r0 = r1;
        r1 = r;
    }
    if r0.len() == 1 {
        return vec![cont];
    }
    r0.iter_mut().for_each(|c| *c = c.clone() * cont.clone());
    r0
}

#[cfg(test)]
pub(crate) fn mul<C: Coeff>(a: &[C], b: &[C]) -> Vec<C> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![C::zero(); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            if !bj.is_zero() {
                out[i + j] = out[i + j].clone() + ai.clone() * bj.clone();
            }
        }
    }
    trim(&mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[i64]) -> Vec<i64> {
        v.to_vec()
    }

    #[test]
    fn gcd_of_shared_factor() {
        // (x-1)(x+2) and (x-1)(x+3)
        let a = mul(&p(&[-1, 1]), &p(&[2, 1]));
        let b = mul(&p(&[-1, 1]), &p(&[3, 1]));
        assert_eq!(gcd(&a, &b), p(&[-1, 1]));
    }

    #[test]
    fn gcd_keeps_integer_content() {
        assert_eq!(gcd(&p(&[4, 6]), &p(&[6, 9])), p(&[2, 3]));
        assert_eq!(gcd(&p(&[4]), &p(&[6, 9])), p(&[1]));
    }

    #[test]
    fn exact_division() {
        let a = mul(&p(&[1, 1, 1]), &p(&[-1, 2]));
        assert_eq!(div_exact(&a, &p(&[-1, 2])), Some(p(&[1, 1, 1])));
        assert_eq!(div_exact(&p(&[1, 1]), &p(&[0, 2])), None);
        assert_eq!(div_exact(&p(&[1, 2]), &p(&[1, 1])), None);
    }
}
