//! The `netarith` command line. Every subcommand prints one JSON document;
//! errors print `{"error": ...}` and set a nonzero exit code.

use std::ffi::OsString;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value as Json};

use crate::acceptance;
use crate::budget::Budgets;
use crate::canon::canonical_form;
use crate::error::{Error, Result};
use crate::expr::{Evaluator, Value};
use crate::graph::Graph;
use crate::linalg::integer_determinant;
use crate::ring::{additive_prime_factorization, is_multiplicative_prime, nonunique_factorization_witness, Primality, View};
use crate::simplicial::SimplicialComplex;
use crate::spectral::{adjacency, connection_inverse, connection_matrix, kirchhoff, Spectrum64};
use crate::topology::{betti, CellComplex};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

/// Environment variable holding budget overrides such as `linalg=800`.
pub const BUDGET_ENV: &str = "NETARITH_BUDGET";

#[derive(Parser, Debug)]
#[command(name = "netarith", version, about = "Exact arithmetic of finite simple graphs")]
struct Cli {
    /// Ring used for `+`, `-`, `*` and integer literals.
    #[arg(long, global = true, value_enum, default_value_t = Mode::Zykov)]
    mode: Mode,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Mode {
    Zykov,
    Strong,
}

impl From<Mode> for View {
    fn from(m: Mode) -> View {
        match m {
            Mode::Zykov => View::Zykov,
            Mode::Strong => View::Strong,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum OutFormat {
    Json,
    Edges,
    Dot,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum MatrixKind {
    Adj,
    Kirchhoff,
    Connection,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate an expression to a graph or a signed ring element.
    Eval {
        expr: String,
        #[arg(long, value_enum, default_value_t = OutFormat::Json)]
        out: OutFormat,
    },
    /// Euler characteristic of the Whitney complex.
    Chi { expr: String },
    /// f-vector of the Whitney complex.
    Fvec { expr: String },
    /// Betti numbers, Euler characteristic and f-vector.
    Betti { expr: String },
    /// Poincaré polynomial coefficients.
    Poincare { expr: String },
    /// Eigenvalues of a matrix attached to the graph.
    Spec {
        expr: String,
        #[arg(long, value_enum, default_value_t = MatrixKind::Adj)]
        matrix: MatrixKind,
    },
    /// Determinant and energy of the connection matrix.
    Energy { expr: String },
    /// Exact isomorphism test; exits 1 when the graphs differ.
    Iso { left: String, right: String },
    /// Additive prime factorization in the current mode.
    Addfactor { expr: String },
    /// Multiplicative primality by bounded factor search.
    Primetest {
        expr: String,
        /// Cap on candidate products examined.
        #[arg(long)]
        budget: Option<usize>,
    },
    /// The 63-vertex graph with two distinct factorizations.
    Witness63,
    /// Run the acceptance suite.
    Selftest {
        #[arg(long, default_value_t = acceptance::DEFAULT_SEED)]
        seed: u64,
    },
}

/// Exit code and the text written to standard output.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub output: String,
}

/// Parses `argv` (program name first), applies [`BUDGET_ENV`] and runs the
/// subcommand.
pub fn run_command<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let budgets = match std::env::var(BUDGET_ENV) {
        Ok(spec) => match Budgets::default().with_overrides(&spec) {
            Ok(b) => b,
            Err(e) => return failure(&e),
        },
        Err(_) => Budgets::default(),
    };
    run_with_budgets(argv, budgets)
}

pub fn run_with_budgets<I, T>(argv: I, budgets: Budgets) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Outcome {
                    code: EXIT_OK,
                    output: e.to_string(),
                },
                _ => Outcome {
                    code: EXIT_PARSE,
                    output: line(&json!({ "error": e.to_string().trim_end() })),
                },
            };
        }
    };
    let eval = Evaluator::new(cli.mode.into()).with_budgets(budgets);
    match execute(&cli.command, &eval) {
        Ok((code, report)) => Outcome {
            code,
            output: line(&report),
        },
        Err(e) => failure(&e),
    }
}

fn line(v: &Json) -> String {
    format!("{v}\n")
}

fn failure(e: &Error) -> Outcome {
    let code = match e {
        Error::Parse(_) => EXIT_PARSE,
        Error::BudgetExceeded { .. } | Error::Undecided(_) => EXIT_BUDGET,
        _ => EXIT_FAILED,
    };
    Outcome {
        code,
        output: line(&json!({ "error": e.to_string() })),
    }
}

/// Rounds to nine decimals and folds `-0` into `0`.
pub fn round9(x: f64) -> f64 {
    let r = (x * 1e9).round() / 1e9;
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

fn graph_json(g: &Graph) -> Json {
    serde_json::to_value(g).expect("graphs serialize")
}

fn canonical_graph(g: &Graph, budgets: &Budgets) -> Result<Graph> {
    Ok(canonical_form(g, &budgets.canon_budget())?.to_graph())
}

fn execute(cmd: &Command, eval: &Evaluator) -> Result<(i32, Json)> {
    let b = &eval.budgets;
    let whitney = |g: &Graph| SimplicialComplex::whitney(g, b.simplices);
    let ok = |v: Json| Ok((EXIT_OK, v));
    match cmd {
        Command::Eval { expr, out } => {
            let v = eval.eval_str(expr)?;
            match (v, out) {
                (Value::Graph(g), OutFormat::Json) => ok(graph_json(&g)),
                (Value::Graph(g), OutFormat::Edges) => ok(Json::String(g.to_edge_list())),
                (Value::Graph(g), OutFormat::Dot) => ok(Json::String(g.to_dot())),
                (Value::Element(e), OutFormat::Json) => ok(e.to_json_value()),
                (Value::Element(_), _) => Err(Error::NotAGraph),
            }
        }
        Command::Chi { expr } => {
            let chi = match eval.eval_str(expr)? {
                Value::Graph(g) => whitney(&g)?.euler_characteristic(),
                Value::Element(e) => e.chi_hom()?,
            };
            ok(json!({ "chi": chi }))
        }
        Command::Fvec { expr } => {
            let g = eval.eval_graph(expr)?;
            ok(json!({ "fvector": whitney(&g)?.f_vector() }))
        }
        Command::Betti { expr } => {
            let c = whitney(&eval.eval_graph(expr)?)?;
            let bv = betti(&c, b.linalg)?;
            ok(json!({ "betti": bv, "chi": c.euler_characteristic(), "fvector": c.f_vector() }))
        }
        Command::Poincare { expr } => {
            let p = match eval.eval_str(expr)? {
                Value::Graph(g) => betti(&whitney(&g)?, b.linalg)?.poincare_polynomial(),
                Value::Element(e) => e.poincare_hom()?,
            };
            ok(json!({ "poincare": p.coeffs(), "text": p.to_string() }))
        }
        Command::Spec { expr, matrix } => {
            let g = eval.eval_graph(expr)?;
            let (name, m) = match matrix {
                MatrixKind::Adj => ("adj", adjacency(&g)),
                MatrixKind::Kirchhoff => ("kirchhoff", kirchhoff(&g)),
                MatrixKind::Connection => ("connection", connection_matrix(&whitney(&g)?, b.eigen)?),
            };
            let s = Spectrum64::try_of(&m, b.eigen)?;
            let values: Vec<f64> = s.values().iter().map(|&x| round9(x)).collect();
            ok(json!({ "matrix": name, "dimension": m.rows(), "spectrum": values }))
        }
        Command::Energy { expr } => {
            let c = whitney(&eval.eval_graph(expr)?)?;
            let det = integer_determinant(&connection_matrix(&c, b.inverse)?);
            let (inv, _) = connection_inverse(&c, b.inverse)?;
            ok(json!({
                "cells": c.len(),
                "chi": c.euler_characteristic(),
                "det": det.to_string(),
                "energy": inv.sum(),
            }))
        }
        Command::Iso { left, right } => {
            let (g, h) = (eval.eval_graph(left)?, eval.eval_graph(right)?);
            let same = crate::canon::is_isomorphic(&g, &h, &b.canon_budget())?;
            Ok((if same { EXIT_OK } else { EXIT_FAILED }, json!({ "isomorphic": same })))
        }
        Command::Addfactor { expr } => {
            let g = eval.eval_graph(expr)?;
            let factors: Vec<Json> = additive_prime_factorization(&g, eval.mode)?
                .iter()
                .map(|p| canonical_graph(p, b).map(|c| graph_json(&c)))
                .collect::<Result<_>>()?;
            ok(json!({ "view": eval.mode, "count": factors.len(), "factors": factors }))
        }
        Command::Primetest { expr, budget } => {
            let g = eval.eval_graph(expr)?;
            let verdict = is_multiplicative_prime(&g, eval.mode, budget.unwrap_or(b.factor))?;
            let report = match verdict {
                Primality::Unit => json!({ "verdict": "unit", "prime": false }),
                Primality::Prime => json!({ "verdict": "prime", "prime": true }),
                Primality::Composite(x, y) => json!({
                    "verdict": "composite",
                    "prime": false,
                    "witness": [graph_json(&x), graph_json(&y)],
                }),
                Primality::Undecided => {
                    return Ok((EXIT_BUDGET, json!({ "verdict": "undecided", "prime": null })));
                }
            };
            ok(report)
        }
        Command::Witness63 => {
            let w = nonunique_factorization_witness();
            let other = crate::products::zykov_product(&w.b1, &w.b2);
            let same = crate::canon::is_isomorphic(&w.product, &other, &b.canon_budget())?;
            let c = whitney(&w.product)?;
            let orders = [w.a1.order(), w.a2.order(), w.b1.order(), w.b2.order()];
            Ok((
                if same { EXIT_OK } else { EXIT_FAILED },
                json!({
                    "isomorphic": same,
                    "vertices": w.product.order(),
                    "factor_orders": orders,
                    "fvector": c.f_vector(),
                    "chi": c.euler_characteristic(),
                }),
            ))
        }
        Command::Selftest { seed } => {
            let reports = acceptance::run_all(*seed);
            let pass = reports.iter().all(|r| r.passed);
            let items: Vec<Json> = reports
                .iter()
                .map(|r| json!({ "id": r.id, "name": r.name, "pass": r.passed, "detail": r.detail }))
                .collect();
            Ok((if pass { EXIT_OK } else { EXIT_FAILED }, json!({ "pass": pass, "seed": seed, "criteria": items })))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(args: &[&str]) -> Outcome {
        let mut argv = vec!["netarith"];
        argv.extend_from_slice(args);
        run_with_budgets(argv, Budgets::default())
    }

    #[test]
    fn basic_commands() {
        assert_eq!(run(&["chi", "C4"]).output, "{\"chi\":0}\n");
        assert_eq!(run(&["chi", "cart(C4,C4)"]).output, "{\"chi\":0}\n");
        let iso = run(&["iso", "Windmill^2", "P9 + 4*S3"]);
        assert_eq!((iso.code, iso.output.as_str()), (0, "{\"isomorphic\":true}\n"));
        assert_eq!(run(&["iso", "K3", "P3"]).code, EXIT_FAILED);
        assert_eq!(run(&["fvec", "K3"]).output, "{\"fvector\":[3,3,1]}\n");
    }

    #[test]
    fn exit_codes() {
        let parse = run(&["chi", "K2 +"]);
        assert_eq!(parse.code, EXIT_PARSE);
        assert!(parse.output.starts_with("{\"error\":"));
        assert_eq!(run(&["nonsense"]).code, EXIT_PARSE);
        let tight = Budgets {
            simplices: 5,
            ..Budgets::default()
        };
        assert_eq!(run_with_budgets(["netarith", "fvec", "K4"], tight).code, EXIT_BUDGET);
        assert_eq!(run(&["betti", "C5 - C7"]).code, EXIT_FAILED);
        assert_eq!(run(&["--help"]).code, EXIT_OK);
    }

    #[test]
    fn rounding() {
        assert_eq!(round9(-1e-12), 0.0);
        assert!(round9(-1e-12).is_sign_positive());
        assert_eq!(round9(2.0000000001), 2.0);
    }
}
