//! Command-line front end for `toric-core`.
//!
//! Every subcommand reads JSON flags (inline or `@path`) and prints one line of
//! compact JSON with sorted keys. Errors print `{"detail": ..., "error": CODE}`.

use std::path::PathBuf;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use num_rational::BigRational;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use toric_core::lnd::{rational_str, TermJson};
use toric_core::{
    canonical_form, commutes, enumerate_roots, exp_lnd, fingerprint, finite_order,
    hilbert_basis_2d, iso_test, reconstruct_cone, recover_de, Cone, Error, Fingerprint, IntMatrix,
    LatticeTag, LatticeVector, LaurentPoly, Root, SurfaceDE,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_VERIFY: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "toric",
    version,
    about = "Roots, derivations and invariants of affine toric varieties"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Demazure roots of a cone inside the box [-B, B]^n.
    Roots {
        #[arg(long)]
        cone: String,
        #[arg(long)]
        bound: u64,
    },
    /// Recover a cone from its truncated root set.
    Reconstruct {
        #[arg(long)]
        roots: String,
        #[arg(long)]
        rank: usize,
    },
    /// Kernel-order grid of X_{d,e}.
    Fingerprint {
        #[arg(long, allow_hyphen_values = true)]
        d: BigInt,
        #[arg(long, allow_hyphen_values = true)]
        e: BigInt,
        #[arg(long)]
        lmax: usize,
        #[arg(long)]
        kmax: usize,
    },
    /// Recover the canonical (d, e) from a kernel-order grid.
    Identify {
        #[arg(long)]
        fingerprint: String,
    },
    /// Whether X_{d1,e1} and X_{d2,e2} are isomorphic.
    Iso {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    /// Canonical representative (d, min(e, e')).
    Canon {
        #[arg(long)]
        a: String,
    },
    /// Apply exp(s·δ) of a root derivation to a polynomial.
    Exp(ExpArgs),
    /// Whether two root derivations commute.
    Commute {
        #[arg(long)]
        cone: String,
        #[arg(long)]
        r1: String,
        #[arg(long)]
        r2: String,
    },
    /// Hilbert basis of the dual monoid of a rank-2 cone.
    Hilbert {
        #[arg(long)]
        cone: String,
    },
    /// Order of a matrix in GL_n(Z), null if infinite.
    Order {
        #[arg(long)]
        matrix: String,
    },
}

#[derive(Debug, Args)]
struct ExpArgs {
    #[arg(long)]
    cone: String,
    #[arg(long)]
    root: String,
    #[arg(long)]
    ray: usize,
    #[arg(long, allow_hyphen_values = true)]
    s: String,
    #[arg(long)]
    poly: String,
}

/// Polynomial input for `exp`; the cone may be omitted.
#[derive(Deserialize)]
struct PolyInput {
    cone: Option<Cone>,
    terms: Vec<TermJson>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RootInput {
    Tagged(Root),
    Bare(Vec<BigIntJson>),
}

/// Integer accepted either as a JSON number or a decimal string.
#[derive(Deserialize)]
#[serde(untagged)]
enum BigIntJson {
    Small(i64),
    Text(String),
}

impl BigIntJson {
    fn value(self) -> Result<BigInt, Failure> {
        match self {
            BigIntJson::Small(v) => Ok(v.into()),
            BigIntJson::Text(s) => s
                .parse()
                .map_err(|_| Failure::bad(format!("invalid integer {s:?}"))),
        }
    }
}

#[derive(Serialize)]
struct Pair {
    d: BigIntOut,
    e: BigIntOut,
}

#[derive(Serialize)]
#[serde(untagged)]
enum BigIntOut {
    Small(i64),
    Text(String),
}

impl From<&BigInt> for BigIntOut {
    fn from(v: &BigInt) -> Self {
        i64::try_from(v).map_or_else(|_| BigIntOut::Text(v.to_string()), BigIntOut::Small)
    }
}

impl From<&SurfaceDE> for Pair {
    fn from(s: &SurfaceDE) -> Self {
        Pair {
            d: s.d().into(),
            e: s.e().into(),
        }
    }
}

/// A failed invocation: error code, detail and exit status.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub code: &'static str,
    pub detail: String,
    pub exit: i32,
}

impl Failure {
    fn bad(detail: impl Into<String>) -> Self {
        Failure {
            code: "BAD_INPUT",
            detail: detail.into(),
            exit: EXIT_INPUT,
        }
    }

    pub fn to_json(&self) -> String {
        render(&json!({"detail": self.detail, "error": self.code}))
    }
}

impl From<Error> for Failure {
    fn from(err: Error) -> Self {
        let code = err.code();
        Failure {
            code,
            detail: err.to_string(),
            exit: if code == "VERIFY_MISMATCH" {
                EXIT_VERIFY
            } else {
                EXIT_INPUT
            },
        }
    }
}

/// Compact JSON with sorted keys and a trailing newline.
fn render(v: &Value) -> String {
    let mut out = serde_json::to_string(v).expect("JSON values always serialize");
    out.push('\n');
    out
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("output types serialize to JSON")
}

/// Reads a flag value: inline text, or the contents of a file for `@path`.
fn load(raw: &str) -> Result<String, Failure> {
    match raw.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(PathBuf::from(path))
            .map_err(|e| Failure::bad(format!("cannot read {path}: {e}"))),
        None => Ok(raw.to_string()),
    }
}

fn parse<T: DeserializeOwned>(flag: &str, raw: &str) -> Result<T, Failure> {
    let text = load(raw)?;
    serde_json::from_str(&text).map_err(|e| Failure::bad(format!("--{flag}: {e}")))
}

fn parse_pair(flag: &str, raw: &str) -> Result<SurfaceDE, Failure> {
    let text = load(raw)?;
    let bad = || Failure::bad(format!("--{flag}: expected d,e, got {text:?}"));
    let (d, e) = text.trim().split_once(',').ok_or_else(bad)?;
    let d: BigInt = d.trim().parse().map_err(|_| bad())?;
    let e: BigInt = e.trim().parse().map_err(|_| bad())?;
    Ok(SurfaceDE::new(d, e)?)
}

fn parse_root(flag: &str, raw: &str, ray: Option<usize>) -> Result<Root, Failure> {
    match parse::<RootInput>(flag, raw)? {
        RootInput::Tagged(r) => match ray {
            Some(i) if i != r.ray => Err(Failure::bad(format!(
                "--{flag} names ray {} but --ray is {i}",
                r.ray
            ))),
            _ => Ok(r),
        },
        RootInput::Bare(coords) => {
            let ray = ray.ok_or_else(|| {
                Failure::bad(format!("--{flag} needs {{\"alpha\": ..., \"ray\": ...}}"))
            })?;
            let coords = coords
                .into_iter()
                .map(BigIntJson::value)
                .collect::<Result<Vec<_>, _>>()?;
            Ok(Root::new(LatticeVector::new(LatticeTag::M, coords), ray))
        }
    }
}

fn execute(command: Command) -> Result<Value, Failure> {
    match command {
        Command::Roots { cone, bound } => {
            let cone: Cone = parse("cone", &cone)?;
            Ok(to_value(&enumerate_roots(&cone, bound)?))
        }
        Command::Reconstruct { roots, rank } => {
            let inputs: Vec<RootInput> = parse("roots", &roots)?;
            let alphas = inputs
                .into_iter()
                .map(|r| match r {
                    RootInput::Tagged(r) => Ok(r.alpha),
                    RootInput::Bare(c) => Ok(LatticeVector::new(
                        LatticeTag::M,
                        c.into_iter()
                            .map(BigIntJson::value)
                            .collect::<Result<Vec<_>, _>>()?,
                    )),
                })
                .collect::<Result<Vec<_>, Failure>>()?;
            Ok(to_value(&reconstruct_cone(&alphas, rank)?))
        }
        Command::Fingerprint { d, e, lmax, kmax } => {
            let s = SurfaceDE::new(d, e)?;
            Ok(to_value(&fingerprint(&s, lmax, kmax)?))
        }
        Command::Identify { fingerprint } => {
            let fp: Fingerprint = parse("fingerprint", &fingerprint)?;
            Ok(to_value(&Pair::from(&recover_de(&fp)?)))
        }
        Command::Iso { a, b } => {
            let a = parse_pair("a", &a)?;
            let b = parse_pair("b", &b)?;
            Ok(json!({"isomorphic": iso_test(&a, &b)}))
        }
        Command::Canon { a } => {
            let a = parse_pair("a", &a)?;
            Ok(to_value(&Pair::from(&canonical_form(&a))))
        }
        Command::Exp(args) => {
            let cone: Cone = parse("cone", &args.cone)?;
            let root = parse_root("root", &args.root, Some(args.ray))?;
            let s: BigRational = rational_str::parse(&load(&args.s)?)
                .map_err(|e| Failure::bad(format!("--s: {e}")))?;
            let poly: PolyInput = parse("poly", &args.poly)?;
            if poly.cone.as_ref().is_some_and(|c| *c != cone) {
                return Err(Error::ConeMismatch.into());
            }
            let f = LaurentPoly::from_terms(
                Arc::new(cone),
                poly.terms
                    .into_iter()
                    .map(|t| (LatticeVector::new(LatticeTag::M, t.m), t.c)),
            )?;
            Ok(to_value(&exp_lnd(&root, &s, &f)?))
        }
        Command::Commute { cone, r1, r2 } => {
            let cone: Arc<Cone> = Arc::new(parse("cone", &cone)?);
            let r1 = parse_root("r1", &r1, None)?;
            let r2 = parse_root("r2", &r2, None)?;
            Ok(json!({"commutes": commutes(&cone, &r1, &r2)?}))
        }
        Command::Hilbert { cone } => {
            let cone: Cone = parse("cone", &cone)?;
            Ok(to_value(&hilbert_basis_2d(&cone)?))
        }
        Command::Order { matrix } => {
            let matrix: IntMatrix = parse("matrix", &matrix)?;
            Ok(json!({"order": finite_order(&matrix)?}))
        }
    }
}

/// Runs one invocation and returns the exit status with the text for stdout.
pub fn run<I, T>(argv: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(err) => {
            use clap::error::ErrorKind;
            if matches!(
                err.kind(),
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion
            ) {
                return (EXIT_OK, err.to_string());
            }
            let rendered = err.render().to_string();
            let detail = rendered
                .lines()
                .take_while(|l| !l.starts_with("Usage:") && !l.starts_with("For more"))
                .map(str::trim)
                .filter(|l| !l.is_empty())
                .collect::<Vec<_>>()
                .join(" ");
            let detail = detail.trim_start_matches("error: ");
            return (EXIT_INPUT, Failure::bad(detail).to_json());
        }
    };
    match execute(cli.command) {
        Ok(v) => (EXIT_OK, render(&v)),
        Err(f) => (f.exit, f.to_json()),
    }
}
