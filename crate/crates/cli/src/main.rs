//! `z22`: command-line front end.
//!
//! Data travels as JSON on stdin/stdout; a one-line summary goes to stderr.
//! Exit codes: 0 success, 1 verification failures (report still written),
//! 2 input or usage error.

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;

use z22_core::catalog::{self, Payload};
use z22_core::format::{self, to_json};
use z22_core::jacobi::{self, check_all_jacobi_with, classify_shapes, IdentityClass};
use z22_core::oscillator;
use z22_core::solver::{self, SolverConfig};
use z22_core::structure::{self, NamingScheme};
use z22_core::{Degree, Error, GradedAlgebra};

#[derive(Parser)]
#[command(name = "z22", version, about = "Verify and construct Z2,2-graded Lie algebras")]
struct Cli {
    /// Worker threads for parallel sweeps. Reports do not depend on it.
    #[arg(long, global = true, default_value_t = 1)]
    workers: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check closure, graded antisymmetry and every generalized Jacobi identity.
    Check {
        /// Algebra JSON; stdin when omitted or `-`.
        input: Option<PathBuf>,
    },
    /// List the identity classes of degree triples with their bracket shapes.
    Classify {
        /// Restrict to the degrees present in this algebra.
        #[arg(long)]
        algebra: Option<PathBuf>,
    },
    /// Check a coefficient set against every constraint relation.
    Constraints { input: Option<PathBuf> },
    /// Build the algebra of a coefficient set.
    Assemble {
        input: Option<PathBuf>,
        /// Name of the assembled algebra.
        #[arg(long, default_value = "assembled")]
        name: String,
    },
    /// Read the coefficient set off an algebra.
    Decompose { input: Option<PathBuf> },
    /// Search for l, m, n completing a partial coefficient set.
    Solve {
        /// Coefficient set whose C, K, H, s, t, u, v are kept; the built-in
        /// u(1,1) set when omitted.
        input: Option<PathBuf>,
        /// Solver configuration JSON; flags below override it.
        #[arg(long)]
        config: Option<PathBuf>,
        /// Comma-separated rationals, e.g. `-1,0,1,2`.
        #[arg(long, allow_hyphen_values = true)]
        entry_pool: Option<String>,
        #[arg(long)]
        sparsity_budget: Option<usize>,
        #[arg(long)]
        cap: Option<u128>,
        #[arg(long)]
        canonicalize: bool,
        /// Also write each solution and the stage log as separate files here.
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
    /// Print a built-in catalog entry, or list them when no id is given.
    Builtin { id: Option<String> },
    /// Check the parastatistics realization of an algebra numerically.
    RepVerify {
        #[arg(long, default_value_t = 2)]
        p: usize,
        #[arg(long, default_value_t = 8)]
        cutoff: usize,
        #[arg(long, default_value_t = 4)]
        margin: usize,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        /// Algebra JSON; the built-in u11-z22 when omitted.
        #[arg(long)]
        algebra: Option<PathBuf>,
    },
}

enum Outcome {
    Pass,
    Fail,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Outcome::Pass) => ExitCode::SUCCESS,
        Ok(Outcome::Fail) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn read_input(path: Option<&Path>) -> Result<String, Error> {
    match path {
        Some(p) if p != Path::new("-") => fs::read_to_string(p)
            .map_err(|e| Error::Parameter(format!("cannot read {}: {e}", p.display()))),
        _ => {
            let mut s = String::new();
            io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| Error::Parameter(format!("cannot read stdin: {e}")))?;
            Ok(s)
        }
    }
}

fn emit(text: &str) -> Result<(), Error> {
    let mut out = io::stdout().lock();
    out.write_all(text.as_bytes())
        .and_then(|_| out.flush())
        .map_err(|e| Error::Parameter(format!("cannot write stdout: {e}")))
}

fn verdict(passed: bool) -> Outcome {
    if passed {
        Outcome::Pass
    } else {
        Outcome::Fail
    }
}

fn run(cli: Cli) -> Result<Outcome, Error> {
    let workers = cli.workers;
    if workers == 0 {
        return Err(Error::Parameter("--workers must be at least 1".into()));
    }
    match cli.command {
        Command::Check { input } => {
            let alg = format::parse_algebra(&read_input(input.as_deref())?)?;
            let closure = alg.check_closure();
            let antisymmetry = alg.check_antisymmetry();
            let jac = check_all_jacobi_with(&alg, workers)?;
            let passed = closure.passed() && antisymmetry.passed() && jac.passed();
            emit(&to_json(&json!({
                "algebra": alg.name(),
                "closure": closure,
                "antisymmetry": antisymmetry,
                "jacobi": jac,
                "passed": passed,
            })))?;
            eprintln!(
                "{}; {}; jacobi on {}: {} triples checked, {} failure(s)",
                closure.summary(),
                antisymmetry.summary(),
                jac.algebra,
                jac.checked,
                jac.failures.len()
            );
            Ok(verdict(passed))
        }
        Command::Classify { algebra } => {
            let (classes, counts) = match algebra {
                Some(path) => {
                    let alg = format::parse_algebra(&read_input(Some(&path))?)?;
                    let mut present: Vec<Degree> = alg.generators().iter().map(|g| g.degree).collect();
                    present.sort();
                    present.dedup();
                    let mut counts = std::collections::BTreeMap::new();
                    for (a, b, c) in jacobi::triples(alg.len()) {
                        let class = IdentityClass::new([alg.degree(a), alg.degree(b), alg.degree(c)]);
                        *counts.entry(class).or_insert(0usize) += 1;
                    }
                    (jacobi::identity_classes_over(&present), Some(counts))
                }
                None => (jacobi::identity_classes(), None),
            };
            let rows: Vec<_> = classes
                .iter()
                .map(|class| {
                    let c = classify_shapes(class.degrees);
                    let mut row = json!({
                        "degrees": c.degrees,
                        "shape": c.shape,
                        "shapeOrdinal": c.shape.ordinal(),
                        "terms": c.terms,
                    });
                    if let Some(counts) = &counts {
                        row["triples"] = json!(counts.get(class).copied().unwrap_or(0));
                    }
                    row
                })
                .collect();
            let shapes: std::collections::BTreeSet<_> =
                classes.iter().map(|c| classify_shapes(c.degrees).shape).collect();
            eprintln!("{} identity classes, {} shape(s)", rows.len(), shapes.len());
            emit(&to_json(&json!({ "classes": rows })))?;
            Ok(Outcome::Pass)
        }
        Command::Constraints { input } => {
            let cs = format::parse_coefficients(&read_input(input.as_deref())?)?;
            let report = structure::check_constraints(&cs, "coefficient set");
            emit(&to_json(&report))?;
            eprintln!("{}", report.summary());
            Ok(verdict(report.passed()))
        }
        Command::Assemble { input, name } => {
            let cs = format::parse_coefficients(&read_input(input.as_deref())?)?;
            let report = structure::check_constraints(&cs, &name);
            if !report.passed() {
                emit(&to_json(&report))?;
                eprintln!("refusing to assemble: {}", report.summary());
                return Ok(Outcome::Fail);
            }
            let alg = structure::assemble_unchecked(&cs, &NamingScheme::named(name));
            emit(&format::algebra_to_json(&alg))?;
            eprintln!("assembled {} with {} generators", alg.name(), alg.len());
            Ok(Outcome::Pass)
        }
        Command::Decompose { input } => {
            let alg = format::parse_algebra(&read_input(input.as_deref())?)?;
            let cs = structure::decompose(&alg)?;
            emit(&format::coefficients_to_json(&cs))?;
            eprintln!(
                "decomposed {}: dim L00={} L01={} L10={}",
                alg.name(),
                cs.dim_l00(),
                cs.dim_l01(),
                cs.dim_l10()
            );
            Ok(Outcome::Pass)
        }
        Command::Solve {
            input,
            config,
            entry_pool,
            sparsity_budget,
            cap,
            canonicalize,
            out_dir,
        } => {
            let mut cfg = match config {
                Some(path) => solver::parse_config(&read_input(Some(&path))?)?,
                None => SolverConfig::default(),
            };
            if let Some(pool) = entry_pool {
                cfg.entry_pool = solver::parse_pool(&pool)?;
            }
            if let Some(b) = sparsity_budget {
                cfg.sparsity_budget = b;
            }
            if let Some(c) = cap {
                cfg.cap = c;
            }
            cfg.canonicalize |= canonicalize;
            cfg.workers = workers;
            let partial = match input {
                Some(path) => format::parse_coefficients(&read_input(Some(&path))?)?,
                None => solver::default_partial(),
            };
            let out = solver::solve(&cfg, &partial)?;
            if let Some(dir) = out_dir {
                write_solutions(&dir, &out)?;
            }
            emit(&to_json(&out.to_dto()))?;
            eprintln!("{} solution(s)", out.solutions.len());
            Ok(Outcome::Pass)
        }
        Command::Builtin { id } => {
            let Some(id) = id else {
                let list: Vec<_> = catalog::entries()
                    .iter()
                    .map(|e| {
                        json!({
                            "id": e.id,
                            "aliases": e.aliases,
                            "description": e.description,
                            "provenance": e.provenance,
                        })
                    })
                    .collect();
                emit(&to_json(&list))?;
                return Ok(Outcome::Pass);
            };
            let entry = catalog::lookup(&id)
                .ok_or_else(|| Error::Parameter(format!("no built-in entry `{id}`")))?;
            match &entry.payload {
                Payload::Algebra(a) => emit(&format::algebra_to_json(a))?,
                Payload::Coefficients(cs) => emit(&format::coefficients_to_json(cs))?,
            }
            eprintln!("{}: {}", entry.id, entry.description);
            Ok(Outcome::Pass)
        }
        Command::RepVerify {
            p,
            cutoff,
            margin,
            tol,
            algebra,
        } => {
            let alg: GradedAlgebra = match algebra {
                Some(path) => format::parse_algebra(&read_input(Some(&path))?)?,
                None => catalog::u11_z22_algebra(),
            };
            let report = oscillator::verify_parastatistics(&alg, p, cutoff, margin, tol, workers)?;
            emit(&to_json(&report))?;
            eprintln!(
                "realization of {} at p={p}, cutoff={cutoff}: {} entries, max residual {:e}, {} failure(s)",
                report.algebra,
                report.entries.len(),
                report.max_entry_residual,
                report.failures
            );
            Ok(verdict(report.passed))
        }
    }
}

fn write_solutions(dir: &Path, out: &solver::SolverOutput) -> Result<(), Error> {
    let io_err = |e: io::Error| Error::Parameter(format!("cannot write to {}: {e}", dir.display()));
    fs::create_dir_all(dir).map_err(io_err)?;
    for (i, cs) in out.solutions.iter().enumerate() {
        let path = dir.join(format!("solution-{:03}.json", i + 1));
        fs::write(path, format::coefficients_to_json(cs)).map_err(io_err)?;
    }
    fs::write(dir.join("stage-log.json"), to_json(&out.stage_log)).map_err(io_err)?;
    Ok(())
}
