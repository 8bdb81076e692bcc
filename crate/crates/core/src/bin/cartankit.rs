//! Command-line surface: load algebras, groups and elements from JSON, run
//! individual operations or the verification suite, and emit canonical JSON
//! or human-readable text.
//!
//! Exit codes: 0 ok/pass, 1 fail/counterexample, 2 input error,
//! 3 split failure (input needs eigenvalues outside Q(i)).

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use cartankit::error::Error;
use cartankit::group::GroupContext;
use cartankit::json::{
    group_from_value, lie_from_value, mat_from_value, report_to_value, root_datum_to_value,
    scalar_to_value, subalgebra_arg_from_value, subalgebra_from_indices, subspace_to_value,
    OutputOpts,
};
use cartankit::liealg::{algebraic_hull_single, LieAlgebra};
use cartankit::subspace::Subspace;
use cartankit::{corpus, verify};

#[derive(Parser)]
#[command(
    name = "cartankit",
    version,
    about = "Exact Lie-theoretic computations over Q(i)"
)]
struct Cli {
    /// Seed for randomized searches and samplers (default: $CARTANKIT_SEED or 0)
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Human-readable output instead of canonical JSON
    #[arg(long, global = true)]
    text: bool,
    /// Omit zero imaginary parts in scalar output
    #[arg(long = "real-output", global = true)]
    real_output: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Operations on a Lie algebra loaded from JSON
    Lie {
        /// Algebra file: {"ambient": n, "basis": [Mat, ...]}
        file: PathBuf,
        #[command(flatten)]
        op: LieOp,
    },
    /// Operations on a group context and one element
    Grp {
        /// Group file: {"name", "ambient", "lie", "hint"}
        file: Option<PathBuf>,
        /// Use a built-in context instead of a file
        #[arg(long)]
        corpus: Option<String>,
        /// Element file: a matrix in Mat JSON form
        #[arg(long)]
        element: PathBuf,
        #[command(flatten)]
        op: GrpOp,
    },
    /// Run verification checks; exit 0 iff no check fails
    Verify {
        /// Run every registered check
        #[arg(long, conflicts_with = "check")]
        all: bool,
        /// Run a single check by id (C1..C12)
        #[arg(long)]
        check: Option<String>,
        /// Sample count override (per-check defaults otherwise)
        #[arg(long)]
        samples: Option<u64>,
    },
    /// Built-in group contexts
    Corpus {
        /// List the available contexts
        #[arg(long)]
        list: bool,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct LieOp {
    /// Find a Cartan subalgebra (certified, seed-deterministic)
    #[arg(long)]
    cartan: bool,
    /// Rank = dimension of a Cartan subalgebra
    #[arg(long)]
    rank: bool,
    /// Root space decomposition w.r.t. a nilpotent subalgebra
    #[arg(long)]
    roots: Option<String>,
    /// Lower central and derived series
    #[arg(long)]
    series: bool,
    /// Nilpotency predicate
    #[arg(long)]
    nilpotent: bool,
    /// Solvability predicate
    #[arg(long)]
    solvable: bool,
    /// Normalizer of a subspace
    #[arg(long)]
    normalizer: Option<String>,
    /// Centralizer of a subspace
    #[arg(long)]
    centralizer: Option<String>,
    /// Joint 0-primary component g^0(h) of a nilpotent subalgebra
    #[arg(long)]
    g0: Option<String>,
    /// Algebraic hull of a single matrix (path to a Mat JSON file)
    #[arg(long = "hull-single")]
    hull_single: Option<PathBuf>,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct GrpOp {
    /// Coefficients of det((T+1)id - Ad(g))
    #[arg(long)]
    acoeffs: bool,
    /// r(g): least index with a nonzero coefficient
    #[arg(long)]
    r: bool,
    /// g^1(Ad g): primary component of eigenvalue 1
    #[arg(long)]
    g1: bool,
    /// Regularity of the element
    #[arg(long)]
    regular: bool,
    /// Membership in the C-Cartan C(h)
    #[arg(long = "in-c")]
    in_c: Option<String>,
    /// Permutation induced on the roots of h
    #[arg(long = "root-action")]
    root_action: Option<String>,
    /// Validate the element against the group context
    #[arg(long)]
    validate: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let seed = cli.seed.or_else(env_seed).unwrap_or(0);
    let opts = OutputOpts {
        real_output: cli.real_output,
    };
    let text = cli.text;
    match run(cli.cmd, seed, opts, text) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_of(&e))
        }
    }
}

fn env_seed() -> Option<u64> {
    std::env::var("CARTANKIT_SEED").ok()?.parse().ok()
}

fn exit_code_of(e: &Error) -> u8 {
    match e {
        Error::Split(_) => 3,
        Error::Input(_)
        | Error::DimensionMismatch(_)
        | Error::NotSquare { .. }
        | Error::ZeroPolynomial
        | Error::DivisionByZero => 2,
        _ => 1,
    }
}

fn read_json(path: &Path) -> Result<Value, Error> {
    let bytes = std::fs::read_to_string(path)
        .map_err(|e| Error::Input(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&bytes)
        .map_err(|e| Error::Input(format!("{} is not valid JSON: {e}", path.display())))
}

/// A subalgebra argument is either an inline comma-separated index list
/// ("0" or "0,2") or a path to a JSON file with "vectors" or "indices".
fn subalgebra_arg(lie: &LieAlgebra, arg: &str) -> Result<Subspace, Error> {
    let trimmed = arg.trim();
    let looks_inline = !trimmed.is_empty()
        && trimmed
            .chars()
            .all(|c| c.is_ascii_digit() || c == ',' || c == ' ');
    if looks_inline {
        let indices = trimmed
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Input(format!("bad basis index {p:?}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        return subalgebra_from_indices(lie, &indices);
    }
    subalgebra_arg_from_value(lie, &read_json(Path::new(trimmed))?)
}

fn emit(out: &Value, text: bool) {
    if text {
        println!("{}", render_text(out, 0));
    } else {
        println!("{out}");
    }
}

fn render_text(v: &Value, indent: usize) -> String {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(map) => map
            .iter()
            .map(|(k, val)| match val {
                Value::Object(_) | Value::Array(_) => {
                    format!("{pad}{k}:\n{}", render_text(val, indent + 1))
                }
                _ => format!("{pad}{k}: {}", plain(val)),
            })
            .collect::<Vec<_>>()
            .join("\n"),
        Value::Array(items) => items
            .iter()
            .map(|item| match item {
                Value::Object(_) | Value::Array(_) => render_text(item, indent),
                _ => format!("{pad}{}", plain(item)),
            })
            .collect::<Vec<_>>()
            .join("\n"),
        other => format!("{pad}{}", plain(other)),
    }
}

fn plain(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn run(cmd: Cmd, seed: u64, opts: OutputOpts, text: bool) -> Result<ExitCode, Error> {
    match cmd {
        Cmd::Lie { file, op } => {
            let lie = lie_from_value(&read_json(&file)?)?;
            let out = run_lie(&lie, &op, seed, opts)?;
            emit(&out, text);
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Grp {
            file,
            corpus: corpus_name,
            element,
            op,
        } => {
            let group = match (file, corpus_name) {
                (Some(_), Some(_)) => {
                    return Err(Error::Input(
                        "give either a group file or --corpus, not both".into(),
                    ))
                }
                (Some(path), None) => group_from_value(&read_json(&path)?)?,
                (None, Some(name)) => corpus::context(&name).ok_or_else(|| {
                    Error::Input(format!(
                        "unknown corpus context {name:?}; try `cartankit corpus --list`"
                    ))
                })?,
                (None, None) => return Err(Error::Input("need a group file or --corpus".into())),
            };
            let g = mat_from_value(&read_json(&element)?)?;
            let (out, code) = run_grp(&group, &g, &op, seed, opts)?;
            emit(&out, text);
            Ok(code)
        }
        Cmd::Verify {
            all,
            check,
            samples,
        } => {
            let reports = match (all, check) {
                (true, None) => verify::run_all(seed)?,
                (false, Some(id)) => {
                    let n = samples.unwrap_or_else(|| verify::default_samples(&id));
                    vec![verify::run_check(&id, seed, n)?]
                }
                _ => return Err(Error::Input("use --all or --check <id>".into())),
            };
            if text {
                for r in &reports {
                    println!(
                        "{:>4}  {:<8} seed={} samples={} {}ms",
                        r.check,
                        r.outcome.as_str(),
                        r.seed,
                        r.samples,
                        r.runtime_ms
                    );
                }
            } else {
                let vals: Vec<Value> = reports.iter().map(|r| report_to_value(r, true)).collect();
                println!("{}", Value::Array(vals));
            }
            if verify::any_failed(&reports) {
                Ok(ExitCode::from(1))
            } else {
                Ok(ExitCode::SUCCESS)
            }
        }
        Cmd::Corpus { list } => {
            if !list {
                return Err(Error::Input("corpus currently only supports --list".into()));
            }
            let entries: Vec<Value> = corpus::NAMES
                .iter()
                .map(|name| {
                    let ctx = corpus::context(name).unwrap();
                    json!({
                        "ambient": ctx.ambient(),
                        "dim": ctx.lie().dim(),
                        "hint": ctx.hint().as_str(),
                        "name": name,
                    })
                })
                .collect();
            emit(&json!({ "contexts": entries, "seed": seed }), text);
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn run_lie(lie: &LieAlgebra, op: &LieOp, seed: u64, opts: OutputOpts) -> Result<Value, Error> {
    let series_value = |seq: &[Subspace]| -> Value {
        Value::Array(seq.iter().map(|s| subspace_to_value(s, opts)).collect())
    };
    let out = if op.cartan {
        let h = lie.cartan_subalgebra(seed)?;
        json!({
            "cartan": subspace_to_value(&h, opts),
            "dim": h.dim(),
            "op": "cartan",
            "seed": seed,
        })
    } else if op.rank {
        json!({ "op": "rank", "rank": lie.rank(seed)?, "seed": seed })
    } else if let Some(arg) = &op.roots {
        let h = subalgebra_arg(lie, arg)?;
        let datum = lie.roots(&h)?;
        json!({
            "op": "roots",
            "root_datum": root_datum_to_value(&datum, opts),
            "seed": seed,
        })
    } else if op.series {
        json!({
            "derived": series_value(&lie.derived_series()),
            "lower_central": series_value(&lie.lower_central_series()),
            "op": "series",
            "seed": seed,
        })
    } else if op.nilpotent {
        json!({ "nilpotent": lie.is_nilpotent(), "op": "nilpotent", "seed": seed })
    } else if op.solvable {
        json!({ "op": "solvable", "seed": seed, "solvable": lie.is_solvable() })
    } else if let Some(arg) = &op.normalizer {
        let h = subalgebra_arg(lie, arg)?;
        json!({
            "normalizer": subspace_to_value(&lie.normalizer(&h), opts),
            "op": "normalizer",
            "seed": seed,
        })
    } else if let Some(arg) = &op.centralizer {
        let h = subalgebra_arg(lie, arg)?;
        json!({
            "centralizer": subspace_to_value(&lie.centralizer(&h), opts),
            "op": "centralizer",
            "seed": seed,
        })
    } else if let Some(arg) = &op.g0 {
        let h = subalgebra_arg(lie, arg)?;
        let g0 = lie.g0_of(&h)?;
        json!({
            "dim": g0.dim(),
            "g0": subspace_to_value(&g0, opts),
            "op": "g0",
            "seed": seed,
        })
    } else if let Some(path) = &op.hull_single {
        let x = mat_from_value(&read_json(path)?)?;
        let hull = algebraic_hull_single(lie.ambient(), &x)?;
        json!({
            "dim": hull.dim(),
            "hull": subspace_to_value(&hull, opts),
            "op": "hull-single",
            "seed": seed,
        })
    } else {
        unreachable!("clap enforces exactly one operation flag");
    };
    Ok(out)
}

fn run_grp(
    group: &GroupContext,
    g: &cartankit::Mat,
    op: &GrpOp,
    seed: u64,
    opts: OutputOpts,
) -> Result<(Value, ExitCode), Error> {
    let ok = ExitCode::SUCCESS;
    if op.validate {
        return Ok(match group.validate(g) {
            Ok(()) => (
                json!({ "group": group.name(), "op": "validate", "seed": seed, "valid": true }),
                ok,
            ),
            Err(rej) => (
                json!({
                    "group": group.name(),
                    "op": "validate",
                    "reason": rej.to_string(),
                    "seed": seed,
                    "valid": false,
                }),
                ExitCode::from(1),
            ),
        });
    }
    let out = if op.acoeffs {
        let a = group.a_coeffs(g)?;
        json!({
            "a": a.coeffs().iter().map(|s| s.to_string()).collect::<Vec<_>>(),
            "group": group.name(),
            "op": "acoeffs",
            "r": a.r_value(),
            "seed": seed,
        })
    } else if op.r {
        json!({
            "group": group.name(),
            "op": "r",
            "r": group.r_of(g)?,
            "seed": seed,
        })
    } else if op.g1 {
        let h = group.g1_of(g)?;
        json!({
            "dim": h.dim(),
            "g1": subspace_to_value(&h, opts),
            "group": group.name(),
            "op": "g1",
            "seed": seed,
        })
    } else if op.regular {
        json!({
            "group": group.name(),
            "op": "regular",
            "r": group.r_of(g)?,
            "rank": group.group_rank(seed)?,
            "regular": group.is_regular(g, seed)?,
            "seed": seed,
        })
    } else if let Some(arg) = &op.in_c {
        let h = subalgebra_arg(group.lie(), arg)?;
        json!({
            "group": group.name(),
            "in_c": group.in_c_h(g, &h, seed)?,
            "op": "in-c",
            "seed": seed,
        })
    } else if let Some(arg) = &op.root_action {
        let h = subalgebra_arg(group.lie(), arg)?;
        let datum = group.lie().roots(&h)?;
        let perm = group.root_action(g, &h)?;
        json!({
            "group": group.name(),
            "op": "root-action",
            "permutation": perm,
            "roots": datum
                .roots()
                .iter()
                .map(|r| Value::Array(
                    r.values.iter().map(|s| scalar_to_value(s, opts)).collect()
                ))
                .collect::<Vec<_>>(),
            "seed": seed,
        })
    } else {
        unreachable!("clap enforces exactly one operation flag");
    };
    Ok((out, ok))
}
