use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::json;

use ipowers::idp::{closed_form, closed_form_fky, idp, Family, Method};
use ipowers::render::{cb_latex, cb_text, closed_latex, dot_latex, dot_text, modvec_latex, modvec_text, pbw_latex, pbw_text};
use ipowers::repmod::icb_image;
use ipowers::udot::{specialize, to_canonical_basis};
use ipowers::verify::{self, Config, Suite};
use ipowers::{fixtures, Error};

#[derive(Parser)]
#[command(name = "ipowers", version, about = "ı-divided powers of quantum sl(2): compute, specialize, verify")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print the ı-divided power of a family in PBW normal form.
    Compute(ComputeArgs),
    /// Specialize an ı-divided power at one weight (or a range) into the modified quantum group.
    Specialize(SpecArgs),
    /// Canonical-basis expansion of a specialized ı-divided power.
    Cb(SpecArgs),
    /// Action of an ı-divided power on the highest weight vector of L(hw).
    Module(ModuleArgs),
    /// Run verification suites; exit 1 if any check fails.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    TEv,
    TOdd,
    KEv,
    KOdd,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Family {
        match f {
            FamilyArg::TEv => Family::TEv,
            FamilyArg::TOdd => Family::TOdd,
            FamilyArg::KEv => Family::KEv,
            FamilyArg::KOdd => Family::KOdd,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Recursive,
    Poly,
    Closed,
    Fky,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Method {
        match m {
            MethodArg::Recursive => Method::Recursive,
            MethodArg::Poly => Method::Poly,
            MethodArg::Closed => Method::Closed,
            MethodArg::Fky => Method::Fky,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Latex,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Closed,
    Fky,
    Dot,
    Cb,
    Module,
    Involution,
    Golden,
    All,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Suite {
        match s {
            SuiteArg::Closed => Suite::Closed,
            SuiteArg::Fky => Suite::Fky,
            SuiteArg::Dot => Suite::Dot,
            SuiteArg::Cb => Suite::Cb,
            SuiteArg::Module => Suite::Module,
            SuiteArg::Involution => Suite::Involution,
            SuiteArg::Golden => Suite::Golden,
            SuiteArg::All => Suite::All,
        }
    }
}

#[derive(Args)]
struct Common {
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Write to this file instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct ComputeArgs {
    #[arg(long, value_enum)]
    family: FamilyArg,
    #[arg(long, value_parser = clap::value_parser!(u32).range(..=MAX_N as i64))]
    n: u32,
    #[arg(long, value_enum, default_value = "closed")]
    method: MethodArg,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct SpecArgs {
    #[arg(long, value_enum)]
    family: FamilyArg,
    #[arg(long, value_parser = clap::value_parser!(u32).range(..=MAX_N as i64))]
    n: u32,
    #[arg(long, allow_negative_numbers = true, conflicts_with_all = ["weight_min", "weight_max"])]
    weight: Option<i64>,
    #[arg(long, allow_negative_numbers = true, requires = "weight_max")]
    weight_min: Option<i64>,
    #[arg(long, allow_negative_numbers = true, requires = "weight_min")]
    weight_max: Option<i64>,
    /// Also expand in the canonical basis and report positivity.
    #[arg(long)]
    cb: bool,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct ModuleArgs {
    #[arg(long, value_enum)]
    family: FamilyArg,
    #[arg(long, value_parser = clap::value_parser!(u32).range(..=MAX_N as i64))]
    n: u32,
    #[arg(long, value_parser = clap::value_parser!(u32).range(..=MAX_HW as i64))]
    hw: u32,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, value_enum, default_value = "all")]
    suite: SuiteArg,
    #[arg(long, value_parser = clap::value_parser!(u32).range(..=MAX_N as i64))]
    max_n: Option<u32>,
    /// Lower end of the weight window; λ runs over weights 2λ ≥ this.
    #[arg(long, allow_negative_numbers = true, default_value_t = -16)]
    weight_min: i64,
    #[arg(long, allow_negative_numbers = true, default_value_t = 16)]
    weight_max: i64,
    #[arg(long, value_parser = clap::value_parser!(u32).range(..=MAX_HW as i64))]
    max_hw: Option<u32>,
    /// Rewrite the golden fixtures from their displays before verifying.
    #[arg(long)]
    regenerate: bool,
    #[command(flatten)]
    common: Common,
}

/// Hard caps on the windows.
const MAX_N: u32 = 24;
const MAX_HW: u32 = 16;
const MAX_WEIGHT: i64 = 64;

enum Failure {
    Usage(String),
    Verification,
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        match e {
            Error::ParityMismatch { .. } | Error::Parse(_) => Failure::Usage(e.to_string()),
            _ => Failure::Internal(e.to_string()),
        }
    }
}

fn emit(common: &Common, text: &str) -> Result<(), Failure> {
    let mut text = text.to_string();
    if !text.ends_with('\n') {
        text.push('\n');
    }
    match &common.output {
        Some(path) => fs::write(path, text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display()))),
        None => {
            let _ = std::io::stdout().write_all(text.as_bytes());
            Ok(())
        }
    }
}

fn to_json<T: serde::Serialize>(x: &T) -> String {
    serde_json::to_string_pretty(x).expect("serializable")
}

fn compute(args: &ComputeArgs) -> Result<(), Failure> {
    let f = Family::from(args.family);
    let method = Method::from(args.method);
    let x = idp::<BigInt>(f, args.n, method);
    let out = match (args.common.format, method) {
        (Format::Json, _) => to_json(&x),
        (Format::Text, _) => pbw_text(&x),
        (Format::Latex, Method::Closed) => closed_latex(&closed_form(f, args.n)),
        (Format::Latex, Method::Fky) => closed_latex(&closed_form_fky(f, args.n)),
        (Format::Latex, _) => pbw_latex(&x),
    };
    emit(&args.common, &out)
}

fn weights(args: &SpecArgs, f: Family) -> Result<Vec<i64>, Failure> {
    let ws: Vec<i64> = match (args.weight, args.weight_min, args.weight_max) {
        (Some(w), _, _) => {
            f.check_weight(w)?;
            vec![w]
        }
        (None, Some(lo), Some(hi)) => (lo..=hi).filter(|&w| f.check_weight(w).is_ok()).collect(),
        _ => return Err(Failure::Usage("give --weight or --weight-min/--weight-max".into())),
    };
    if ws.iter().any(|w| w.abs() > MAX_WEIGHT) {
        return Err(Failure::Usage(format!("weights are capped at |μ| ≤ {MAX_WEIGHT}")));
    }
    Ok(ws)
}

fn specialize_cmd(args: &SpecArgs, cb_only: bool) -> Result<(), Failure> {
    let f = Family::from(args.family);
    let x = idp::<BigInt>(f, args.n, Method::Closed);
    let mut text = Vec::new();
    let mut values = Vec::new();
    for mu in weights(args, f)? {
        let d = specialize(&x, mu)?;
        let with_cb = cb_only || args.cb;
        let cb = with_cb.then(|| to_canonical_basis(&d));
        match args.common.format {
            Format::Json => values.push(match (&cb, cb_only) {
                (Some(cb), true) => json!({ "weight": mu, "cb": cb, "positivity": cb.is_positive() }),
                (Some(cb), false) => json!({ "weight": mu, "dot": d, "cb": cb, "positivity": cb.is_positive() }),
                (None, _) => serde_json::to_value(&d).expect("serializable"),
            }),
            fmt => {
                let (dr, cr): (fn(&_) -> String, fn(&_) -> String) = if fmt == Format::Latex {
                    (dot_latex, cb_latex)
                } else {
                    (dot_text, cb_text)
                };
                if !cb_only {
                    text.push(format!("weight {mu}: {}", dr(&d)));
                }
                if let Some(cb) = &cb {
                    text.push(format!("cb {mu}: {}", cr(cb)));
                    text.push(format!("positivity: {}", cb.is_positive()));
                }
            }
        }
    }
    let out = if args.common.format == Format::Json {
        if args.weight.is_some() {
            to_json(&values[0])
        } else {
            to_json(&values)
        }
    } else {
        text.join("\n")
    };
    emit(&args.common, &out)
}

fn module(args: &ModuleArgs) -> Result<(), Failure> {
    let f = Family::from(args.family);
    let v = icb_image::<BigInt>(f, args.n, args.hw)?;
    let out = match args.common.format {
        Format::Json => to_json(&v),
        Format::Text => modvec_text(&v),
        Format::Latex => modvec_latex(&v),
    };
    emit(&args.common, &out)
}

fn verify_cmd(args: &VerifyArgs) -> Result<(), Failure> {
    let mut cfg = Config::default();
    if let Some(n) = args.max_n {
        cfg.max_n = n;
        cfg.max_n_dot = cfg.max_n_dot.min(n);
    }
    if let Some(hw) = args.max_hw {
        cfg.max_hw = hw;
    }
    if args.weight_min > args.weight_max || args.weight_min.abs().max(args.weight_max.abs()) > MAX_WEIGHT {
        return Err(Failure::Usage("bad weight window".into()));
    }
    cfg.lambda_min = args.weight_min.div_euclid(2) + i64::from(args.weight_min.rem_euclid(2) != 0);
    cfg.lambda_max = args.weight_max.div_euclid(2);
    if args.regenerate {
        let k = fixtures::regenerate(&cfg.fixture_dir)?;
        eprintln!("regenerated {k} fixtures in {}", cfg.fixture_dir.display());
    }
    let report = verify::run(args.suite.into(), &cfg);
    let out = match args.common.format {
        Format::Json => to_json(&report),
        _ => {
            let mut lines: Vec<String> = report
                .iter()
                .map(|e| {
                    let mut s = format!("{} {}", if e.passed() { "PASS" } else { "FAIL" }, e.check);
                    if let Some(f) = e.family {
                        s += &format!(" family={f}");
                    }
                    if let Some(n) = e.n {
                        s += &format!(" n={n}");
                    }
                    if let Some(mu) = e.mu {
                        s += &format!(" mu={mu}");
                    }
                    if let Some(w) = &e.witness {
                        s += &format!(": {w}");
                    }
                    s
                })
                .collect();
            let failed = report.iter().filter(|e| !e.passed()).count();
            lines.push(format!("{} checks, {failed} failed", report.len()));
            lines.join("\n")
        }
    };
    emit(&args.common, &out)?;
    if verify::all_pass(&report) {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let res = match &cli.cmd {
        Cmd::Compute(a) => compute(a),
        Cmd::Specialize(a) => specialize_cmd(a, false),
        Cmd::Cb(a) => specialize_cmd(a, true),
        Cmd::Module(a) => module(a),
        Cmd::Verify(a) => verify_cmd(a),
    };
    match res {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Internal(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(3)
        }
    }
}
