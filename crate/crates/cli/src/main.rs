//! `qstar`: exact computations with the star product on the quantum disc.
//!
//! Every command prints one JSON document on standard output. Exit status is
//! 0 on success, 1 when a verification law fails, 2 on usage, parse or
//! input errors.

use std::io::Write;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Parser, Subcommand};
use num_rational::BigRational;
use serde_json::{json, Value};

use qstar::expr::parse_poly;
use qstar::fockrep::{berezin, berezin_expansion};
use qstar::json::{envelope, error_json, Renderer};
use qstar::latex::{ncpoly_latex, pk_latex, star_series_latex};
use qstar::qcalc::box_op;
use qstar::star::{ck, pk, StarEngine};
use qstar::verify::{SuiteRegistry, VerifyConfig};
use qstar::{Error, NCPoly};

#[derive(Parser)]
#[command(name = "qstar", version, about = "Exact star-product computations on the quantum disc")]
struct Cli {
    /// Evaluate every scalar in the output at s = P/Q (q = s^2).
    #[arg(long, global = true, value_parser = parse_rational)]
    s0: Option<BigRational>,

    /// Add LaTeX renderings to the output.
    #[arg(long, global = true)]
    latex: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// The polynomial p_k.
    Pk { k: usize },
    /// The bidifferential operator C_k applied to f1, f2.
    Ck { k: usize, f1: String, f2: String },
    /// The star product f1 * f2 modulo t^(T+1).
    Star {
        f1: String,
        f2: String,
        #[arg(long, default_value_t = 4)]
        order: usize,
    },
    /// The Laplace-Beltrami operator applied to f.
    Box { f: String },
    /// The Berezin transform of z*^j z^k on a window.
    Berezin {
        j: u32,
        k: u32,
        #[arg(long, default_value_t = 6)]
        window: u32,
        #[arg(long, default_value_t = 16)]
        cutoff: usize,
        #[arg(long, default_value_t = 4)]
        order: usize,
    },
    /// Leading terms of the expansion of the Berezin transform of z*^j z^k.
    BerezinExpand {
        j: u32,
        k: u32,
        #[arg(long, default_value_t = 4)]
        terms: usize,
    },
    /// Run a verification suite: rewrite, calculus, star, oracle, berezin, uq, or all.
    Verify {
        suite: String,
        #[arg(long, default_value_t = 4)]
        t_order: usize,
        #[arg(long, default_value_t = 2)]
        max_degree: u32,
        #[arg(long, default_value_t = 16)]
        cutoff: usize,
        #[arg(long, default_value_t = 6)]
        window: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Sampled triples for the rewriting check (15625 or more is exhaustive).
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
    },
    /// Evaluate an expression at s = s0 (requires --s0).
    Eval { expr: String },
}

fn parse_rational(text: &str) -> Result<BigRational, String> {
    BigRational::from_str(text.trim()).map_err(|e| format!("expected P/Q: {e}"))
}

enum Failure {
    Input(Error),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e)
    }
}

fn poly(text: &str) -> Result<NCPoly, Failure> {
    Ok(parse_poly(text)?)
}

/// Runs a command; the boolean is false when a verification law failed.
fn run(cli: &Cli) -> Result<(Value, bool), Failure> {
    let r = match &cli.s0 {
        Some(s0) => Renderer::at(s0.clone()),
        None => Renderer::symbolic(),
    };
    let (name, mut result, ok) = match &cli.command {
        Command::Pk { k } => {
            let p = pk(*k);
            let mut v = r.pk(&p)?;
            if cli.latex {
                v["latex"] = json!(pk_latex(&p));
            }
            ("pk", v, true)
        }
        Command::Ck { k, f1, f2 } => {
            let c = ck(*k, &poly(f1)?, &poly(f2)?)?;
            let mut v = r.ncpoly_with_text(&c)?;
            if cli.latex {
                v["latex"] = json!(ncpoly_latex(&c));
            }
            ("ck", v, true)
        }
        Command::Star { f1, f2, order } => {
            let psi = StarEngine::new(*order).star(&poly(f1)?, &poly(f2)?);
            let mut v = r.star_series(&psi)?;
            if cli.latex {
                v["latex"] = json!(star_series_latex(&psi));
            }
            ("star", v, true)
        }
        Command::Box { f } => {
            let b = box_op(&poly(f)?);
            let mut v = r.ncpoly_with_text(&b)?;
            if cli.latex {
                v["latex"] = json!(ncpoly_latex(&b));
            }
            ("box", v, true)
        }
        Command::Berezin {
            j,
            k,
            window,
            cutoff,
            order,
        } => {
            let w = berezin(*j, *k, *window, *cutoff, *order)?;
            ("berezin", r.windowed(&w)?, true)
        }
        Command::BerezinExpand { j, k, terms } => {
            let e = berezin_expansion(*j, *k, *terms);
            let list = e
                .iter()
                .map(|f| {
                    let mut v = r.ncpoly_with_text(f)?;
                    if cli.latex {
                        v["latex"] = json!(ncpoly_latex(f));
                    }
                    Ok(v)
                })
                .collect::<Result<Vec<_>, Error>>()?;
            ("berezin-expand", json!({ "terms": list }), true)
        }
        Command::Verify {
            suite,
            t_order,
            max_degree,
            cutoff,
            window,
            seed,
            samples,
        } => {
            let cfg = VerifyConfig {
                t_order: *t_order,
                max_degree: *max_degree,
                cutoff: *cutoff,
                window: *window,
                seed: *seed,
                samples: *samples,
                s0: cli.s0.clone(),
            };
            let reports = SuiteRegistry::standard().run(suite, &cfg)?;
            let passed = reports.iter().all(|s| s.passed());
            let v = json!({
                "suite": suite,
                "config": {
                    "t_order": cfg.t_order,
                    "max_degree": cfg.max_degree,
                    "cutoff": cfg.cutoff,
                    "window": cfg.window,
                    "seed": cfg.seed,
                    "samples": cfg.samples,
                    "s0": cfg.s0.as_ref().map(|x| x.to_string()),
                },
                "passed": passed,
                "suites": reports.iter().map(|s| s.to_json()).collect::<Vec<_>>(),
            });
            ("verify", v, passed)
        }
        Command::Eval { expr } => {
            if r.s0().is_none() {
                return Err(Failure::Usage("eval requires --s0 P/Q".into()));
            }
            let f = poly(expr)?;
            ("eval", json!({ "s0": r.s0().unwrap().to_string(), "terms": r.ncpoly(&f)? }), true)
        }
    };
    if let (Some(s0), Value::Object(map)) = (&cli.s0, &mut result) {
        map.entry("s0").or_insert(json!(s0.to_string()));
    }
    Ok((envelope(name, result), ok))
}

/// Prints a document; a closed pipe on stdout is not an error.
fn emit(v: &Value) {
    let text = serde_json::to_string_pretty(v).expect("serializable");
    let _ = writeln!(std::io::stdout().lock(), "{text}");
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((v, ok)) => {
            emit(&v);
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Input(e)) => {
            emit(&error_json(&e));
            ExitCode::from(2)
        }
        Err(Failure::Usage(msg)) => {
            let v = json!({ "schema": qstar::json::SCHEMA, "error": { "kind": "usage", "message": msg } });
            emit(&v);
            ExitCode::from(2)
        }
    }
}
