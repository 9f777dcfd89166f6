//! Command-line front end. `run` parses arguments, dispatches to the library
//! and returns the process exit code: 0 when every check passes, 1 when a
//! verification fails, 2 for usage errors.

use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::exactalg::DEFAULT_PRIMES;
use crate::exprlang::{load_corpus, parse};
use crate::genmat::{eval_at_points, eval_symbolic, sample_points};
use crate::invariants::{
    corpus_table, discover_relations, hilbert, remark_checks, run_pipeline, verify_corpus,
    verify_theorem, EvalConfig, Mode, RunHeader, SeriesId, DEFAULT_SEED, MAX_SERIES_DEGREE,
};
use crate::schur::{parse_tu_poly, schur_decompose};
use crate::tableaux::{catalogue_entries, Partition};
use crate::words::{enumerate_basis, Bidegree};
use crate::Error;

#[derive(Parser, Debug)]
#[command(
    name = "trace42",
    version,
    about = "Generators and relations of the trace algebra of two generic 4x4 matrices"
)]
struct Cli {
    /// How ranks and identities are decided.
    #[arg(long, global = true, value_enum, default_value_t = ModeArg::Modular)]
    mode: ModeArg,
    /// First prime for modular evaluation.
    #[arg(long, global = true, default_value_t = DEFAULT_PRIMES[0])]
    prime1: u64,
    /// Second prime for modular evaluation.
    #[arg(long, global = true, default_value_t = DEFAULT_PRIMES[1])]
    prime2: u64,
    /// Seed for the random evaluation points.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Degree bound: series truncation for `hilbert` (default 10), series
    /// range for `remarks` (default 15), largest symbolic degree for
    /// `verify-lemmas` (default 8).
    #[arg(long, global = true)]
    degree: Option<u32>,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModeArg {
    Modular,
    Symbolic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Tree,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Hilbert series with the Schur decomposition of each component.
    Hilbert {
        /// c42, c0, km or unsum.
        #[arg(long, default_value = "c0")]
        series: String,
    },
    /// Schur decomposition of a symmetric polynomial in t, u.
    Decompose {
        /// For example "(t+u)^4 - t^2 u^2".
        poly: String,
    },
    /// Cyclic words with p letters x and q letters y.
    Basis {
        /// Number of x letters.
        p: u32,
        /// Number of y letters.
        q: u32,
    },
    /// Catalogued highest weight vectors of a shape such as (4,2).
    Hwv {
        /// Two-row shape, written (l1,l2).
        shape: String,
    },
    /// Evaluates a trace expression on the generic traceless pair.
    Eval {
        /// For example "tr([x,y]^2) - 2*tr(x^2*y^2)".
        #[arg(long, allow_hyphen_values = true)]
        expr: String,
        /// Expand exactly instead of evaluating at points.
        #[arg(long)]
        symbolic: bool,
    },
    /// Checks every relation of the corpus.
    VerifyLemmas {
        /// Check only this relation.
        #[arg(long)]
        id: Option<String>,
    },
    /// Solves for the relations of one shape.
    Discover {
        /// Two-row shape of degree at most 10, written (l1,l2).
        shape: String,
    },
    /// Runs the generator search through degree 10 and compares.
    VerifyTheorem,
    /// The bracket identity, the relation character and the Jacobian check.
    Remarks {
        /// Also expand the bracket identity exactly.
        #[arg(long)]
        symbolic: bool,
    },
}

enum Failure {
    Usage(String),
    Check,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Usage(format!("output error: {e}"))
    }
}

type Outcome = std::result::Result<(), Failure>;

/// Runs the command line `args` (program name first) writing to stdout and
/// stderr.
pub fn run(args: &[String]) -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(args, &mut stdout.lock(), &mut stderr.lock())
}

/// As [`run`], writing the report to `out` and diagnostics to `err`.
pub fn run_with(args: &[String], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if code == 0 {
                write!(out, "{text}")
            } else {
                write!(err, "{text}")
            };
            return code;
        }
    };
    match dispatch(&cli, out) {
        Ok(()) => 0,
        Err(Failure::Check) => 1,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
    }
}

fn config(cli: &Cli) -> std::result::Result<EvalConfig, Failure> {
    let primes = [cli.prime1, cli.prime2];
    if primes[0] == primes[1] {
        return Err(Failure::Usage("--prime1 and --prime2 must differ".into()));
    }
    if let Some(p) = primes
        .iter()
        .find(|&&p| p < 3 || !primal_check::miller_rabin(p))
    {
        return Err(Failure::Usage(format!("{p} is not an odd prime")));
    }
    if let Some(d) = cli.degree.filter(|&d| d > MAX_SERIES_DEGREE) {
        return Err(Failure::Usage(format!(
            "--degree {d} exceeds {MAX_SERIES_DEGREE}"
        )));
    }
    let mode = match cli.mode {
        ModeArg::Modular => Mode::Modular,
        ModeArg::Symbolic => Mode::Symbolic,
    };
    Ok(EvalConfig {
        mode,
        primes,
        seed: cli.seed,
    })
}

fn emit(
    out: &mut dyn Write,
    format: Format,
    text: impl std::fmt::Display,
    tree: serde_json::Value,
) -> Outcome {
    match format {
        Format::Text => writeln!(out, "{text}")?,
        Format::Tree => writeln!(
            out,
            "{}",
            serde_json::to_string_pretty(&tree).expect("json values serialize")
        )?,
    }
    Ok(())
}

fn to_tree<T: serde::Serialize>(v: &T) -> serde_json::Value {
    serde_json::to_value(v).expect("reports serialize")
}

fn check(passed: bool) -> Outcome {
    if passed {
        Ok(())
    } else {
        Err(Failure::Check)
    }
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> Outcome {
    let cfg = config(cli)?;
    let header = RunHeader::from(&cfg);
    match &cli.command {
        Command::Hilbert { series } => {
            let id: SeriesId = series.parse()?;
            let d = cli.degree.unwrap_or(10);
            let r = hilbert(id, d)?;
            let mut text = format!("# series {id:?} through degree {d}\n");
            for (n, dec) in &r.components {
                text += &format!("h{n} = {dec}\n");
            }
            let comps: Vec<_> = r
                .components
                .iter()
                .map(|(n, dec)| json!({"degree": n, "schur": dec.to_string(), "polynomial": r.series.component(*n).to_string()}))
                .collect();
            emit(
                out,
                cli.format,
                text.trim_end(),
                json!({"series": id, "degree": d, "components": comps}),
            )
        }
        Command::Decompose { poly } => {
            let p = parse_tu_poly(poly)?;
            let d = schur_decompose(&p)?;
            emit(
                out,
                cli.format,
                &d,
                json!({"polynomial": p.to_string(), "schur": d.to_string()}),
            )
        }
        Command::Basis { p, q } => {
            let words: Vec<String> = enumerate_basis(Bidegree::new(*p, *q))
                .iter()
                .map(|w| w.to_string())
                .collect();
            emit(
                out,
                cli.format,
                words.join(", "),
                json!({"p": p, "q": q, "words": words}),
            )
        }
        Command::Hwv { shape } => {
            let shape: Partition = shape.parse()?;
            let entries = catalogue_entries(shape)?;
            let mut text = String::new();
            let mut tree = Vec::new();
            for (i, e) in entries.iter().enumerate() {
                let v = e.vector();
                let delta_zero = v.delta().is_zero();
                text += &format!("w{} {} scale {}: {}\n", i + 1, e.tableau, e.scalar, v);
                tree.push(json!({"index": i + 1, "tableau": e.tableau.to_string(), "scale": e.scalar.to_string(),
                    "vector": v.to_string(), "delta_zero": delta_zero}));
            }
            emit(
                out,
                cli.format,
                text.trim_end(),
                json!({"shape": shape, "vectors": tree}),
            )
        }
        Command::Eval { expr, symbolic } => {
            let e = parse(expr)?;
            if *symbolic || cfg.mode == Mode::Symbolic {
                let p = eval_symbolic(&e)?;
                return emit(
                    out,
                    cli.format,
                    &p,
                    json!({"expr": expr, "polynomial": p.to_string()}),
                );
            }
            let mut text = format!("{header}\n");
            let mut rows = Vec::new();
            for &prime in &cfg.primes {
                let vals = eval_at_points(&e, &sample_points(prime, cfg.seed, 3))?;
                for (i, v) in vals.iter().enumerate() {
                    text += &format!("prime {prime} point {i}: {v}\n");
                    rows.push(json!({"prime": prime, "point": i, "value": v.value()}));
                }
            }
            emit(
                out,
                cli.format,
                text.trim_end(),
                json!({"header": header, "expr": expr, "values": rows}),
            )
        }
        Command::VerifyLemmas { id } => {
            let corpus = load_corpus()?;
            let max_sym = cli.degree.unwrap_or(8);
            let checks = match id {
                Some(id) => {
                    let rec = corpus
                        .get(id)
                        .ok_or_else(|| Failure::Usage(format!("no relation with id `{id}`")))?;
                    vec![crate::invariants::verify_record(rec, &cfg, max_sym)?]
                }
                None => verify_corpus(&corpus, &cfg, max_sym)?,
            };
            emit(
                out,
                cli.format,
                corpus_table(&header, &checks),
                json!({"header": header, "records": checks}),
            )?;
            check(checks.iter().all(|c| c.passed))
        }
        Command::Discover { shape } => {
            let shape: Partition = shape.parse()?;
            let corpus = load_corpus()?;
            let gens = run_pipeline(shape.degree().saturating_sub(1), &cfg)?.generators;
            let r = discover_relations(shape, &gens, &corpus, &cfg)?;
            emit(out, cli.format, &r, to_tree(&r))?;
            check(r.unmatched.is_empty() && r.nullspace_certified != Some(false))
        }
        Command::VerifyTheorem => {
            let r = verify_theorem(&cfg)?;
            emit(out, cli.format, &r, to_tree(&r))?;
            check(r.passed)
        }
        Command::Remarks { symbolic } => {
            let r = remark_checks(&cfg, cli.degree.unwrap_or(15), *symbolic)?;
            emit(out, cli.format, &r, to_tree(&r))?;
            check(r.passed)
        }
    }
}
