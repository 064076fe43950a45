//! Command-line front end. Every command reads JSON documents (a path or `-`
//! for stdin) and writes one JSON document to stdout.

use std::ffi::OsString;
use std::io::Read;

use clap::{Args, Parser, Subcommand};
use num_traits::One;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::doc::{self, ElementDocument, EvalSpec, FockDocument, LarssonSpec, LoopDocument, VectorDocument};
use crate::error::{Error, Result};
use crate::fock::FockRep;
use crate::lattice::{format_scalar, smith_normalize, ExpVec, IntMatrix, Scalar, UnimodularMatrix};
use crate::presentation::{canonical_assignment, check_relations};
use crate::reps::ExpBox;
use crate::roots::{gim_matrix, gram_matrix, root_space_dim, WeightVec};
use crate::simple_lie::build_simple;
use crate::verify;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_USAGE: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "toroidal", version, about = "Exact computations in toroidal Lie algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct AlgebraArgs {
    /// Cartan type; only `A` is implemented.
    #[arg(long = "type", default_value = "A")]
    kind: String,
    #[arg(long)]
    rank: usize,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Bracket of two elements with matching headers.
    Bracket { left: String, right: String },
    /// Coordinate change by a unimodular matrix, rows separated by `;`.
    Twist {
        #[arg(long)]
        matrix: String,
        element: String,
    },
    /// Reduction of a `tau_tilde` element to the loop-of-affine algebra.
    Phi { element: String },
    /// Gram matrix of the form on `h* + span(delta_i, lambda_i)`.
    Gram {
        #[command(flatten)]
        algebra: AlgebraArgs,
        #[arg(long)]
        n: usize,
    },
    /// Generalized intersection matrix.
    Gim {
        #[command(flatten)]
        algebra: AlgebraArgs,
        #[arg(long)]
        n: usize,
    },
    /// Root space dimension of `alpha + delta_r`, simple-root coordinates then `r`.
    Rootdim {
        #[command(flatten)]
        algebra: AlgebraArgs,
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        weight: String,
    },
    /// `D(u, r)` applied to a Larsson module vector.
    LarssonAct { request: String },
    /// A toroidal element applied to an evaluation module vector.
    EvalAct { request: String },
    /// Submodule witness of a Larsson module and its closure inside a box.
    Witness {
        module: String,
        #[arg(long = "box", default_value_t = 1)]
        bound: i64,
    },
    /// Nilpotency index of a root vector on an evaluation module vector.
    Nilpotency { request: String },
    /// A toroidal element applied to a Fock space vector.
    FockAct { request: String },
    /// Checks the generators-and-relations model over a mode range.
    PresentCheck {
        #[command(flatten)]
        algebra: AlgebraArgs,
        #[arg(long)]
        modes: i64,
        /// Mode window of the assignment, default twice `modes`.
        #[arg(long)]
        window: Option<i64>,
    },
    /// Runs a seeded invariant suite.
    Verify {
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        size: usize,
        #[arg(long = "type", default_value = "A")]
        kind: String,
        #[arg(long, default_value_t = 1)]
        rank: usize,
        #[arg(long, default_value_t = 3)]
        modes: i64,
    },
    /// Smith normalization of a subgroup of `Z^n`, generators separated by `;`.
    NormalizeLattice {
        #[arg(long, allow_hyphen_values = true)]
        generators: String,
    },
}

/// Captured result of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
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

type CmdResult = std::result::Result<(i32, String), Failure>;

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    match dispatch(cli.command) {
        Ok((code, stdout)) => Outcome { code, stdout, stderr: String::new() },
        Err(Failure::Input(e)) => Outcome { code: EXIT_INPUT, stdout: String::new(), stderr: format!("error: {e}\n") },
        Err(Failure::Usage(msg)) => Outcome { code: EXIT_USAGE, stdout: String::new(), stderr: format!("usage error: {msg}\n") },
    }
}

fn read_input(path: &str) -> Result<String> {
    let mut s = String::new();
    let res = if path == "-" {
        std::io::stdin().read_to_string(&mut s).map(|_| ())
    } else {
        std::fs::read_to_string(path).map(|t| s = t)
    };
    res.map_err(|e| Error::Domain(format!("cannot read {path}: {e}")))?;
    Ok(s)
}

fn check_type(kind: &str) -> Result<()> {
    if kind != "A" {
        return Err(Error::Unsupported(format!("type {kind:?}; only type A is implemented")));
    }
    Ok(())
}

fn int_list(text: &str) -> Result<Vec<i64>> {
    text.split(',')
        .map(|x| x.trim().parse::<i64>().map_err(|_| Error::Domain(format!("not an integer: {x:?}"))))
        .collect()
}

fn int_rows(text: &str) -> Result<Vec<Vec<i64>>> {
    text.split(';').map(int_list).collect()
}

fn ok(value: &impl Serialize) -> CmdResult {
    Ok((EXIT_OK, doc::print(value)))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct LarssonActRequest {
    module: LarssonSpec,
    u: Vec<String>,
    r: Vec<i64>,
    vector: VectorDocument,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct EvalActRequest {
    module: EvalSpec,
    element: ElementDocument,
    vector: VectorDocument,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct NilpotencyRequest {
    module: EvalSpec,
    root: usize,
    exp: Vec<i64>,
    vector: VectorDocument,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FockActRequest {
    element: ElementDocument,
    vector: FockDocument,
}

fn dispatch(cmd: Command) -> CmdResult {
    match cmd {
        Command::Bracket { left, right } => {
            let (lt, rt) = (read_input(&left)?, read_input(&right)?);
            let (a, x) = doc::parse_element(&lt)?;
            let (b, y) = doc::parse_element(&rt)?;
            if a.header() != b.header() {
                return Err(Error::Flavor("the two elements live in different algebras".into()).into());
            }
            Ok((EXIT_OK, doc::print_element(&a, &a.bracket(&x, &y)?)))
        }
        Command::Twist { matrix, element } => {
            let m = UnimodularMatrix::new(IntMatrix::from_rows(int_rows(&matrix)?)?)?;
            let (a, x) = doc::parse_element(&read_input(&element)?)?;
            Ok((EXIT_OK, doc::print_element(&a, &a.twist(&m, &x)?)))
        }
        Command::Phi { element } => {
            let (a, x) = doc::parse_element(&read_input(&element)?)?;
            let y = a.phi_reduce(&x)?;
            let rank = a.g().expect("tau_tilde has a simple part").rank();
            ok(&LoopDocument::from_loop(rank, a.n(), &y))
        }
        Command::Gram { algebra, n } => {
            check_type(&algebra.kind)?;
            let g = build_simple(algebra.rank)?;
            let m = gram_matrix(&g, n);
            let rows: Vec<Vec<String>> = (0..m.nrows()).map(|i| m.row(i).iter().map(format_scalar).collect()).collect();
            ok(&json!({"type": "A", "rank": algebra.rank, "n": n, "matrix": rows}))
        }
        Command::Gim { algebra, n } => {
            check_type(&algebra.kind)?;
            let g = build_simple(algebra.rank)?;
            ok(&json!({"type": "A", "rank": algebra.rank, "n": n, "matrix": gim_matrix(&g, n)}))
        }
        Command::Rootdim { algebra, n, weight } => {
            check_type(&algebra.kind)?;
            let g = build_simple(algebra.rank)?;
            let w = int_list(&weight)?;
            let d = algebra.rank;
            if w.len() != d + n {
                return Err(Error::Dimension(format!("weight needs {} entries", d + n)).into());
            }
            let gamma = WeightVec::from_parts(&w[..d], &w[d..], n);
            ok(&json!({"type": "A", "rank": d, "n": n, "weight": w, "dim": root_space_dim(&g, n, &gamma)?}))
        }
        Command::LarssonAct { request } => {
            let text = read_input(&request)?;
            let req: LarssonActRequest = doc::parse(&text)?;
            let f = req.module.build(&text)?;
            let u = req.u.iter().map(|s| doc::scalar_in(&text, s)).collect::<Result<Vec<Scalar>>>()?;
            let y = f.act(&u, &ExpVec::new(req.r), &req.vector.to_vec(&text)?)?;
            ok(&VectorDocument::from_vec(&y))
        }
        Command::EvalAct { request } => {
            let text = read_input(&request)?;
            let req: EvalActRequest = doc::parse(&text)?;
            let m = req.module.build(&text)?;
            let (_, g) = req.element.to_element(&text)?;
            let y = m.act_element(&g, &req.vector.to_vec(&text)?)?;
            ok(&VectorDocument::from_vec(&y))
        }
        Command::Witness { module, bound } => {
            let text = read_input(&module)?;
            let spec: LarssonSpec = doc::parse(&text)?;
            let f = spec.build(&text)?;
            let n = f.n();
            let Some(w) = f.submodule_witness() else {
                return ok(&json!({"witness": null}));
            };
            let bx = ExpBox::symmetric(n, bound);
            let mut sample = Vec::new();
            for r in ExpBox::symmetric(n, 1).points() {
                for i in 0..n {
                    let mut u = vec![Scalar::from_integer(0.into()); n];
                    u[i] = Scalar::one();
                    sample.push((u, r.clone()));
                }
            }
            let report = f.closure_check(&w, &bx, &sample)?;
            let dims: Vec<_> = report.dims.iter().map(|(m, d)| json!({"degree": m.entries(), "dim": d})).collect();
            ok(&json!({
                "witness": VectorDocument::from_vec(&w),
                "closure": {"box": bound, "fiber_dim": f.fiber_dim(), "proper": report.closed, "dims": dims},
            }))
        }
        Command::Nilpotency { request } => {
            let text = read_input(&request)?;
            let req: NilpotencyRequest = doc::parse(&text)?;
            let m = req.module.build(&text)?;
            let k = m.nilpotency_index(req.root, &ExpVec::new(req.exp), &req.vector.to_vec(&text)?)?;
            ok(&json!({"index": k, "bound": m.nilpotency_bound(req.root)}))
        }
        Command::FockAct { request } => {
            let text = read_input(&request)?;
            let req: FockActRequest = doc::parse(&text)?;
            let (a, g) = req.element.to_element(&text)?;
            let rank = a.g().ok_or_else(|| Error::Flavor("the vertex representation needs a simple part".into()))?;
            let rep = FockRep::new(rank.clone(), a.n().saturating_sub(1))?;
            let v = req.vector.to_vec(&text)?;
            if v.rank() != rep.space().rank() {
                return Err(Error::Dimension(format!("Fock vector must have rank {}", rep.space().rank())).into());
            }
            ok(&FockDocument::from_vec(&rep.act(&g, &v)?))
        }
        Command::PresentCheck { algebra, modes, window } => {
            check_type(&algebra.kind)?;
            let window = window.unwrap_or(2 * modes);
            let a = canonical_assignment(build_simple(algebra.rank)?, window)?;
            let report = check_relations(&a, modes)?;
            let violations: Vec<_> = report
                .iter()
                .map(|v| {
                    json!({"relation": v.relation,
                           "lhs": ElementDocument::from_element(a.algebra(), &v.lhs),
                           "rhs": ElementDocument::from_element(a.algebra(), &v.rhs)})
                })
                .collect();
            let code = if report.is_empty() { EXIT_OK } else { EXIT_VIOLATION };
            let out = json!({"type": "A", "rank": algebra.rank, "modes": modes, "window": window,
                             "passed": report.is_empty(), "violations": violations});
            Ok((code, doc::print(&out)))
        }
        Command::Verify { suite, seed, size, kind, rank, modes } => {
            if !verify::SUITES.contains(&suite.as_str()) {
                return Err(Failure::Usage(format!("unknown suite {suite:?}; known: {}", verify::SUITES.join(", "))));
            }
            check_type(&kind)?;
            let report = verify::run(&suite, &verify::Params { seed, size, rank, modes })?;
            let code = if report.passed { EXIT_OK } else { EXIT_VIOLATION };
            Ok((code, doc::print(&report)))
        }
        Command::NormalizeLattice { generators } => {
            let gens: Vec<ExpVec> = int_rows(&generators)?.into_iter().map(ExpVec::new).collect();
            let s = smith_normalize(&gens)?;
            ok(&json!({"transform": s.transform.matrix().rows(), "diag": s.diag, "rank": s.rank}))
        }
    }
}
