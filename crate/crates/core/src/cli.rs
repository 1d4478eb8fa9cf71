//! Command-line front end. [`run`] is the whole program; the binary only
//! forwards `std::env::args_os` and the process streams.
//!
//! Exit status: 0 success, 1 domain error, 2 usage error. Errors go to
//! stderr as one JSON object `{"error": {"kind": .., "message": ..}}`.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::arakelov::{arith_degree, BottChernPlugin};
use crate::cache::{StructureCache, CACHE_ENV};
use crate::error::{Error, Result};
use crate::ortho::{expand_in_d_basis, ideal_decompose, ortho_schubert, structure_constants, StructureConstants};
use crate::poly::{PolyJson, Polynomial};
use crate::rational::Rational;
use crate::render::{render_expansion, render_table, table_row, table_rows};
use crate::stanley::{f_coeff, kl_tableaux};
use crate::suites::{run_suite, SuiteParams};
use crate::sym::Partition;
use crate::weyl::{PermutationA, SignedPermutation};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "orthoschubert", version, about = "Orthogonal Schubert calculus in exact arithmetic")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value = "text", global = true)]
    pub format: Format,

    /// Structure-constant cache directory; no caching when unset.
    #[arg(long, env = CACHE_ENV, global = true)]
    pub cache_dir: Option<PathBuf>,

    /// Cap on reduced-word enumeration.
    #[arg(long, default_value_t = 100_000, global = true)]
    pub word_bound: usize,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// D_w as a polynomial and in the P~_lambda S_pi basis.
    Dw {
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        w: String,
    },
    /// D_w for every w in W~_n, grouped by S_n-orbit.
    Table {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// The coefficient f^w_{lambda, pi}.
    Fcoeff {
        #[arg(long, allow_hyphen_values = true)]
        w: String,
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        pi: String,
    },
    /// Kraskiewicz-Lam tableaux of w with the given shape.
    Tableaux {
        #[arg(long, allow_hyphen_values = true)]
        w: String,
        #[arg(long)]
        shape: String,
    },
    /// Structure constants of D_u D_v, or of all pairs with --all.
    Product {
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true, required_unless_present = "all")]
        u: Option<String>,
        #[arg(long, allow_hyphen_values = true, required_unless_present = "all")]
        v: Option<String>,
        #[arg(long, conflicts_with_all = ["u", "v"])]
        all: bool,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Coefficients of a polynomial in the D_{lambda, pi} basis.
    Expand {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        poly_file: PathBuf,
    },
    /// h = sum e_i(X^2) f_i + e_n g for h in J_n.
    Decompose {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        poly_file: PathBuf,
    },
    /// Arithmetic degree of x^_1^{k_1} ... x^_n^{k_n}.
    Arithdeg {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        mono: String,
        #[arg(long)]
        plugin: Option<PathBuf>,
    },
    /// Runs a named invariant suite.
    Check {
        #[arg(long)]
        suite: String,
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long, default_value_t = 6)]
        weight: usize,
    },
}

/// Parses `args` (including the program name), writes to `out`/`err` and
/// returns the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return EXIT_OK;
            }
            let body = json!({"error": {"kind": "usage", "message": e.kind().to_string(), "detail": e.to_string()}});
            let _ = writeln!(err, "{body}");
            return EXIT_USAGE;
        }
    };
    match execute(&cli) {
        Ok(Outcome { text, passed }) => {
            let _ = out.write_all(text.as_bytes());
            if passed {
                EXIT_OK
            } else {
                EXIT_DOMAIN
            }
        }
        Err(e) => {
            let body = json!({"error": {"kind": e.kind(), "message": e.to_string()}});
            let _ = writeln!(err, "{body}");
            if e.is_usage() {
                EXIT_USAGE
            } else {
                EXIT_DOMAIN
            }
        }
    }
}

struct Outcome {
    text: String,
    passed: bool,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome { text, passed: true }
    }
}

fn emit(format: Format, value: Value, text: impl FnOnce() -> String) -> Outcome {
    match format {
        Format::Json => Outcome::ok(format!("{}\n", serde_json::to_string_pretty(&value).expect("json value"))),
        Format::Text => Outcome::ok(text()),
    }
}

fn parse_w(s: &str, n: usize) -> Result<SignedPermutation> {
    let w: SignedPermutation = s.parse()?;
    if w.n() != n {
        return Err(Error::SizeMismatch(n, w.n()));
    }
    Ok(w)
}

fn read_poly(path: &Path, n: usize) -> Result<Polynomial> {
    let text = fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    let j: PolyJson = serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    let p = Polynomial::from_json(&j)?;
    if p.nvars() != n {
        return Err(Error::MismatchedVars {
            left: n,
            right: p.nvars(),
        });
    }
    Ok(p)
}

fn structure_json(sc: &StructureConstants) -> Value {
    serde_json::to_value(sc.to_json()).expect("json value")
}

fn structure_text(sc: &StructureConstants) -> String {
    let mut s = format!("D_{{{}}} * D_{{{}}}\n", sc.u, sc.v);
    for (w, c) in &sc.schubert {
        s.push_str(&format!("  D_{{{w}}}: {c}\n"));
    }
    for (k, c) in &sc.ideal {
        s.push_str(&format!("  D_{k}: {c}\n"));
    }
    s
}

/// Output never depends on whether the cache was hit.
fn product(cli: &Cli, u: &SignedPermutation, v: &SignedPermutation) -> Result<StructureConstants> {
    match &cli.cache_dir {
        Some(dir) => Ok(StructureCache::new(dir).get_or_compute(u, v)?.0),
        None => structure_constants(u, v),
    }
}

fn execute(cli: &Cli) -> Result<Outcome> {
    let format = cli.format;
    match &cli.command {
        Command::Dw { n, w } => {
            let w = parse_w(w, *n)?;
            let row = table_row(&w)?;
            let poly = ortho_schubert(&w)?;
            let value = json!({
                "w": w.to_string(),
                "bar": row.w,
                "word": row.word,
                "rendering": row.rendering,
                "terms": row.terms,
                "polynomial": poly.to_json(),
            });
            Ok(emit(format, value, || {
                format!(
                    "w = {} = {}\nD_w = {}\npolynomial = {}\n",
                    row.w,
                    row.word,
                    row.rendering,
                    poly
                )
            }))
        }
        Command::Table { n, jobs } => match format {
            Format::Text => Ok(Outcome::ok(render_table(*n, *jobs)?)),
            Format::Json => {
                let rows = table_rows(*n, *jobs)?;
                Ok(emit(format, json!({"n": n, "rows": rows}), String::new))
            }
        },
        Command::Fcoeff { w, lambda, pi } => {
            let w: SignedPermutation = w.parse()?;
            let lambda: Partition = lambda.parse()?;
            let pi: PermutationA = pi.parse()?;
            let f = f_coeff(&w, &lambda, &pi)?;
            let value = json!({"w": w.to_string(), "lambda": lambda.parts(), "pi": pi.to_string(), "f": f});
            Ok(emit(format, value, || format!("{f}\n")))
        }
        Command::Tableaux { w, shape } => {
            let w: SignedPermutation = w.parse()?;
            let shape: Partition = shape.parse()?;
            let tabs = kl_tableaux(&w, &shape)?;
            let entries: Vec<Value> = tabs
                .iter()
                .map(|t| json!({"rows": t.rows, "m": t.m_stat()}))
                .collect();
            let value = json!({"w": w.to_string(), "shape": shape.parts(), "count": tabs.len(), "tableaux": entries});
            Ok(emit(format, value, || {
                let mut s = String::new();
                for t in &tabs {
                    let rows: Vec<String> = t
                        .rows
                        .iter()
                        .map(|r| r.iter().map(usize::to_string).collect::<Vec<_>>().join(" "))
                        .collect();
                    s.push_str(&format!("{}  m={}\n", rows.join(" / "), t.m_stat()));
                }
                s.push_str(&format!("{} tableaux\n", tabs.len()));
                s
            }))
        }
        Command::Product { n, u, v, all, jobs } => {
            if *all {
                let elems = SignedPermutation::all(*n);
                let pairs: Vec<(SignedPermutation, SignedPermutation)> = elems
                    .iter()
                    .flat_map(|a| elems.iter().map(move |b| (a.clone(), b.clone())))
                    .collect();
                let pool = rayon::ThreadPoolBuilder::new()
                    .num_threads((*jobs).max(1))
                    .build()
                    .map_err(|e| Error::Consistency(e.to_string()))?;
                let results: Vec<StructureConstants> =
                    pool.install(|| pairs.par_iter().map(|(a, b)| product(cli, a, b)).collect::<Result<_>>())?;
                let value = Value::Array(results.iter().map(structure_json).collect());
                Ok(emit(format, value, || results.iter().map(structure_text).collect()))
            } else {
                let u = parse_w(u.as_deref().expect("required by clap"), *n)?;
                let v = parse_w(v.as_deref().expect("required by clap"), *n)?;
                let sc = product(cli, &u, &v)?;
                Ok(emit(format, structure_json(&sc), || structure_text(&sc)))
            }
        }
        Command::Expand { n, poly_file } => {
            let p = read_poly(poly_file, *n)?;
            let exp = expand_in_d_basis(&p, *n)?;
            let entries: Vec<Value> = exp
                .coeffs
                .iter()
                .map(|(k, c)| json!({"lambda": k.lambda.parts(), "pi": k.pi.to_string(), "coef": c}))
                .collect();
            let value = json!({"n": n, "coeffs": entries});
            Ok(emit(format, value, || {
                let mut s = String::new();
                for (k, c) in &exp.coeffs {
                    s.push_str(&format!("D_{k}: {c}\n"));
                }
                s.push_str(&format!("schubert sector: {}\n", render_expansion(&exp.schubert_sector())));
                s
            }))
        }
        Command::Decompose { n, poly_file } => {
            let p = read_poly(poly_file, *n)?;
            let dec = ideal_decompose(&p, *n)?;
            let value = json!({
                "n": n,
                "f": dec.f.iter().map(Polynomial::to_json).collect::<Vec<_>>(),
                "g": dec.g.to_json(),
            });
            Ok(emit(format, value, || {
                let mut s = String::new();
                for (i, f) in dec.f.iter().enumerate() {
                    s.push_str(&format!("f_{} = {f}\n", i + 1));
                }
                s.push_str(&format!("g = {}\n", dec.g));
                s
            }))
        }
        Command::Arithdeg { n, mono, plugin } => {
            let exps = mono
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|t| !t.is_empty())
                .map(|t| t.parse::<u32>().map_err(|_| Error::Parse(format!("invalid exponent {t:?}"))))
                .collect::<Result<Vec<_>>>()?;
            if exps.len() != *n {
                return Err(Error::SizeMismatch(*n, exps.len()));
            }
            let plugin = match plugin {
                Some(path) => {
                    let text =
                        fs::read_to_string(path).map_err(|e| Error::InvalidPlugin(format!("{}: {e}", path.display())))?;
                    BottChernPlugin::from_json_str(&text)?
                }
                None => BottChernPlugin::empty(),
            };
            let deg: Rational = arith_degree(&exps, &plugin)?;
            Ok(emit(format, json!({"n": n, "mono": exps, "degree": deg}), || format!("{deg}\n")))
        }
        Command::Check { suite, n, weight } => {
            let params = SuiteParams {
                n: *n,
                weight: *weight,
                word_bound: cli.word_bound,
            };
            let lines = run_suite(suite, &params)?;
            let passed = lines.iter().all(|l| l.passed);
            let value = json!({"suite": suite, "passed": passed, "checks": lines});
            let mut o = emit(format, value, || {
                lines
                    .iter()
                    .map(|l| format!("{} {}: {}\n", if l.passed { "PASS" } else { "FAIL" }, l.name, l.detail))
                    .collect()
            });
            o.passed = passed;
            Ok(o)
        }
    }
}
