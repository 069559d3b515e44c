//! Golden fixtures: displayed closed forms in LaTeX, parsed back into the
//! PBW normal form and compared with the computed ı-divided powers.
//!
//! A fixture file `idp_<family>_<n>.json` holds the display and the expected
//! element.  The directory defaults to `fixtures/` in this crate and can be
//! overridden with `IPOWERS_FIXTURES`.

use std::fs;
use std::path::{Path, PathBuf};

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::idp::{b_divided, idp_closed, Family};
use crate::pbw::Pbw;
use crate::qpoly::RatFn;
use crate::render::pbw_text;
use crate::verify::Entry;

pub const FIXTURE_ENV: &str = "IPOWERS_FIXTURES";

pub fn default_dir() -> PathBuf {
    std::env::var_os(FIXTURE_ENV)
        .map(PathBuf::from)
        .unwrap_or_else(|| Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures"))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fixture {
    pub family: Family,
    pub n: u32,
    pub display: String,
    pub element: Pbw<BigInt>,
}

pub fn file_name(f: Family, n: u32) -> String {
    format!("idp_{}_{n}.json", f.tag())
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: &str) -> Result<T> {
        Err(Error::Parse(format!("{msg} at byte {} of `{}`", self.pos, String::from_utf8_lossy(self.s))))
    }

    fn skip_ws(&mut self) {
        const NOISE: [&str; 6] = ["\\\\", "\\qquad", "\\quad", "\\notag", "\\,", "\\;"];
        loop {
            while self.pos < self.s.len() && b" \t\r\n&,.".contains(&self.s[self.pos]) {
                self.pos += 1;
            }
            match NOISE.iter().find(|w| self.rest().starts_with(w.as_bytes())) {
                Some(w) => self.pos += w.len(),
                None => break,
            }
        }
    }

    fn rest(&self) -> &'a [u8] {
        &self.s[self.pos..]
    }

    fn eat(&mut self, tok: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(tok.as_bytes()) {
            self.pos += tok.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: &str) -> Result<()> {
        if self.eat(tok) {
            Ok(())
        } else {
            self.err(&format!("expected `{tok}`"))
        }
    }

    fn int(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        if self.rest().first() == Some(&b'-') {
            self.pos += 1;
        }
        while self.rest().first().is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        std::str::from_utf8(&self.s[start..self.pos])
            .unwrap()
            .parse()
            .or_else(|_| self.err("expected an integer"))
    }

    /// `^{k}` or `^d`.
    fn exponent(&mut self) -> Result<i64> {
        if !self.eat("^") {
            return Ok(1);
        }
        if self.eat("{") {
            let k = self.int()?;
            self.expect("}")?;
            Ok(k)
        } else {
            let d = self.rest().first().copied().filter(u8::is_ascii_digit);
            match d {
                Some(d) => {
                    self.pos += 1;
                    Ok((d - b'0') as i64)
                }
                None => self.err("expected an exponent"),
            }
        }
    }

    /// `^{(k)}`, defaulting to 1.
    fn divided(&mut self) -> Result<u32> {
        if !self.eat("^") {
            return Ok(1);
        }
        self.expect("{")?;
        self.expect("(")?;
        let k = self.int()?;
        self.expect(")")?;
        self.expect("}")?;
        u32::try_from(k).or_else(|_| self.err("negative divided power"))
    }

    /// `h;a`.
    fn h_arg(&mut self) -> Result<i64> {
        self.expect("h")?;
        self.expect(";")?;
        self.int()
    }

    fn factor(&mut self) -> Result<Option<Pbw<BigInt>>> {
        self.skip_ws();
        if self.eat("b^{(") {
            let n = self.int()?;
            self.expect(")")?;
            self.expect("}")?;
            return Ok(Some(b_divided(n as u32)));
        }
        if self.eat("q") {
            let e = self.exponent()?;
            return Ok(Some(Pbw::scalar(RatFn::q_pow(e))));
        }
        if self.eat("\\check{E}") || self.eat("Y") {
            let a = self.divided()?;
            return Ok(Some(Pbw::monomial(a, 0, 0)));
        }
        if self.eat("F") {
            let b = self.divided()?;
            return Ok(Some(Pbw::monomial(0, 0, b)));
        }
        if self.eat("K") {
            let e = self.exponent()?;
            if e > 0 {
                return self.err("positive powers of K are outside the algebra");
            }
            return Ok(Some(Pbw::monomial(0, (-e) as u32, 0)));
        }
        if self.eat("[") {
            let a = self.h_arg()?;
            self.expect("]")?;
            return Ok(Some(Pbw::hbracket_sq(a, 1)));
        }
        if self.eat("\\qbinom{") {
            let a = self.h_arg()?;
            self.expect("}")?;
            self.expect("{")?;
            let n = self.int()?;
            self.expect("}")?;
            return Ok(Some(Pbw::hbracket_sq(a, n as u32)));
        }
        if self.eat("\\llbracket") {
            let a = self.h_arg()?;
            self.expect("\\rrbracket")?;
            return Ok(Some(Pbw::hbracket_br(a, 1)));
        }
        if self.eat("\\LR{") {
            let a = self.h_arg()?;
            self.expect("}")?;
            self.expect("{")?;
            let n = self.int()?;
            self.expect("}")?;
            return Ok(Some(Pbw::hbracket_br(a, n as u32)));
        }
        if self.rest().first().is_some_and(u8::is_ascii_digit) {
            let k = self.int()?;
            return Ok(Some(Pbw::scalar(RatFn::from_laurent(crate::qpoly::Laurent::constant(k.into())))));
        }
        Ok(None)
    }

    fn term(&mut self) -> Result<Pbw<BigInt>> {
        let mut acc = Pbw::one();
        let mut any = false;
        while let Some(f) = self.factor()? {
            acc = acc.mul(&f);
            any = true;
        }
        if !any {
            return self.err("expected a term");
        }
        Ok(acc)
    }

    fn expr(&mut self) -> Result<Pbw<BigInt>> {
        let mut neg = self.eat("-");
        let mut out = Pbw::zero();
        loop {
            let t = self.term()?;
            if neg {
                out -= &t;
            } else {
                out += &t;
            }
            if self.eat("+") {
                neg = false;
            } else if self.eat("-") {
                neg = true;
            } else {
                break;
            }
        }
        self.skip_ws();
        if self.pos != self.s.len() {
            return self.err("trailing input");
        }
        Ok(out)
    }
}

/// Parse a displayed closed form such as `b^{(2)} + q [h;0]` into normal form.
/// Each term is multiplied out left to right, so any factor order is accepted.
pub fn parse_display(s: &str) -> Result<Pbw<BigInt>> {
    Parser { s: s.as_bytes(), pos: 0 }.expr()
}

pub fn load(path: &Path) -> Result<Fixture> {
    let text = fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

pub fn load_dir(dir: &Path) -> Result<Vec<(PathBuf, Fixture)>> {
    let mut paths: Vec<PathBuf> = fs::read_dir(dir)
        .map_err(|e| Error::Parse(format!("{}: {e}", dir.display())))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| {
            let name = p.file_name().and_then(|n| n.to_str()).unwrap_or("");
            name.starts_with("idp_") && name.ends_with(".json")
        })
        .collect();
    paths.sort();
    paths.into_iter().map(|p| load(&p).map(|f| (p, f))).collect()
}

fn differ(what: &str, got: &Pbw<BigInt>, want: &Pbw<BigInt>) -> Option<String> {
    let (g, w) = (pbw_text(got), pbw_text(want));
    (g != w).then(|| format!("{what}: got `{g}`, want `{w}`"))
}

/// Two checks per fixture: the display parses to the stored element, and
/// the computed closed form renders byte-identically to it.
pub fn check(fx: &Fixture) -> Vec<Entry> {
    let parsed = parse_display(&fx.display);
    let display = match &parsed {
        Ok(p) => differ("display", p, &fx.element),
        Err(e) => Some(e.to_string()),
    };
    let computed = idp_closed::<BigInt>(fx.family, fx.n);
    vec![
        Entry::new(fx.family, Some(fx.n), None, "golden-display", display),
        Entry::new(fx.family, Some(fx.n), None, "golden", differ("closed", &computed, &fx.element)),
    ]
}

pub fn check_dir(dir: &Path) -> Vec<Entry> {
    match load_dir(dir) {
        Ok(fxs) if fxs.is_empty() => vec![Entry::new(None, None, None, "golden-load", Some(format!("no fixtures in {}", dir.display())))],
        Ok(fxs) => fxs.iter().flat_map(|(_, fx)| check(fx)).collect(),
        Err(e) => vec![Entry::new(None, None, None, "golden-load", Some(e.to_string()))],
    }
}

/// Rewrite each fixture's element from its display.
pub fn regenerate(dir: &Path) -> Result<usize> {
    let fxs = load_dir(dir)?;
    for (path, mut fx) in fxs.iter().cloned() {
        fx.element = parse_display(&fx.display)?;
        let text = serde_json::to_string_pretty(&fx).expect("serializable") + "\n";
        fs::write(&path, text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    }
    Ok(fxs.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pbw::Named;
    use crate::qpoly::Laurent;

    #[test]
    fn parses_factors() {
        let x = parse_display("b^{(2)} + q [h;0]").unwrap();
        let want = &b_divided(2) + &Pbw::hbracket_sq(0, 1).scale_laurent(&Laurent::q_pow(1));
        assert_eq!(x, want);
        assert_eq!(parse_display("Y^{(2)}").unwrap(), Pbw::monomial(2, 0, 0));
        assert_eq!(parse_display("q^3 K^{-1}F").unwrap(), Pbw::monomial(0, 1, 1).scale_laurent(&Laurent::q_pow(3)));
        assert_eq!(parse_display("F \\check{E}").unwrap(), Pbw::gen(Named::F).mul(&Pbw::gen(Named::ECheck)));
        assert_eq!(
            parse_display("\\LR{h;-1}{2} - 2").unwrap(),
            &Pbw::hbracket_br(-1, 2) - &Pbw::scalar(RatFn::from_laurent(Laurent::constant(2.into())))
        );
        assert_eq!(parse_display("\\llbracket h; 1 \\rrbracket,").unwrap(), Pbw::hbracket_br(1, 1));
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_display("b^{(2)} + ?").is_err());
        assert!(parse_display("K^{2}").is_err());
        assert!(parse_display("").is_err());
    }

    #[test]
    fn committed_fixtures_pass() {
        let entries = check_dir(&default_dir());
        assert!(entries.len() >= 2 * 14);
        for e in entries {
            assert_eq!(e.status, crate::verify::Status::Pass, "{e:?}");
        }
    }
}
