//! Argument parsing and subcommand dispatch for the `parapac` binary.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use parapac_core::consistency::{brute_force_consistency, check, kterm_dnf_kernelize, KernelRule};
use parapac_core::params::lambda_backdoor;
use parapac_core::reductions::{hitting_set_to_fvs, hitting_set_to_kcnf};
use parapac_core::{ConceptKind, ConsistencyInstance, ConsistencyOutcome, InstanceSamples};

use crate::experiment::{csv_string, run_experiment, summary_json, ExperimentSpec};
use crate::format::{parse_instance, parse_kind, write_instance, ParsedFile};

pub const EXIT_CONSISTENT: i32 = 0;
pub const EXIT_INCONSISTENT: i32 = 1;
pub const EXIT_INPUT_ERROR: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "parapac",
    version,
    about = "Parameterized consistency checking and PAC learning"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Look for a hypothesis of parameter at most k consistent with an
    /// instance file. Exits 0 when one exists, 1 when none does, 2 on bad input.
    Check {
        /// kcnf, kdnf, kterm_dnf, kclause_cnf, hdeletion or fvs; overrides the file header.
        #[arg(long)]
        kind: String,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        input: PathBuf,
        /// Forbidden family for hdeletion, e.g. `K2` or `P3`; defaults to the header's.
        #[arg(long)]
        family: Option<String>,
        /// Reject hypotheses whose printed form is longer than this.
        #[arg(long)]
        size_bound: Option<usize>,
        /// Use exhaustive enumeration instead of the parameterized algorithm.
        #[arg(long)]
        brute_force: bool,
    },
    /// Run PAC-learning trials against a scenario file and write one CSV row per trial.
    Learn {
        #[arg(long)]
        scenario: PathBuf,
        #[arg(long)]
        epsilon: f64,
        #[arg(long)]
        delta: f64,
        #[arg(long, default_value_t = 1)]
        trials: usize,
        #[arg(long, env = "PARAPAC_SEED", default_value_t = 0)]
        seed: u64,
        /// CSV destination; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        /// JSON summary destination; defaults to the CSV path with a `.summary.json` extension.
        #[arg(long)]
        summary: Option<PathBuf>,
        #[arg(long)]
        jobs: Option<usize>,
        /// Record per-trial wall time in the CSV (makes it run-dependent).
        #[arg(long)]
        timing: bool,
    },
    /// Turn a Hitting Set file into a consistency instance file.
    Reduce {
        #[arg(value_enum)]
        reduction: Reduction,
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Kernelize a k-term DNF instance and write the reduced instance.
    Kernelize {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Where to write the applied reduction rules.
        #[arg(long)]
        trace: Option<PathBuf>,
        /// Overrides the header's k.
        #[arg(long)]
        k: Option<usize>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Reduction {
    HsToKcnf,
    HsToFvs,
}

/// Parses `args` and runs the command, returning the process exit code.
pub fn main_with<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(stderr, "{}", e.render());
            return if e.use_stderr() { EXIT_INPUT_ERROR } else { 0 };
        }
    };
    match run(cli.command, stdout, stderr) {
        Ok(code) => code,
        Err(message) => {
            let _ = writeln!(stderr, "error: {message}");
            EXIT_INPUT_ERROR
        }
    }
}

fn read(path: &Path) -> Result<String, String> {
    fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn emit(path: Option<&Path>, text: &str, stdout: &mut dyn Write) -> Result<(), String> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| format!("{}: {e}", p.display())),
        None => stdout.write_all(text.as_bytes()).map_err(|e| e.to_string()),
    }
}

fn parse_file(path: &Path) -> Result<ParsedFile, String> {
    parse_instance(&read(path)?).map_err(|e| format!("{}: {e}", path.display()))
}

fn run(command: Command, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<i32, String> {
    match command {
        Command::Check {
            kind,
            k,
            input,
            family,
            size_bound,
            brute_force,
        } => {
            let ParsedFile::Consistency(file) = parse_file(&input)? else {
                return Err(format!("{}: not a BOOL or GRAPH instance", input.display()));
            };
            let header_family = match &file.kind {
                ConceptKind::HDeletion(f) => crate::format::family_spec(f),
                _ => None,
            };
            let kind = parse_kind(&kind, family.as_deref().or(header_family.as_deref()))?;
            let mut inst =
                ConsistencyInstance::new(kind, file.samples, k).map_err(|e| match e {
                    parapac_core::Error::KindMismatch(name) => {
                        format!(
                            "kind `{name}` does not match the {} file format",
                            input.display()
                        )
                    }
                    other => other.to_string(),
                })?;
            if let Some(bound) = size_bound {
                inst = inst.with_size_bound(bound);
            }
            let outcome = if brute_force {
                brute_force_consistency(&inst)
            } else {
                check(&inst)
            }
            .map_err(|e| e.to_string())?;
            Ok(match outcome {
                ConsistencyOutcome::Consistent(h) => {
                    let _ = writeln!(stdout, "CONSISTENT {h}");
                    EXIT_CONSISTENT
                }
                ConsistencyOutcome::Inconsistent => {
                    let _ = writeln!(stdout, "INCONSISTENT");
                    EXIT_INCONSISTENT
                }
            })
        }
        Command::Learn {
            scenario,
            epsilon,
            delta,
            trials,
            seed,
            out,
            summary,
            jobs,
            timing,
        } => {
            let ParsedFile::Scenario(scenario) = parse_file(&scenario)? else {
                return Err(format!("{}: not a scenario file", scenario.display()));
            };
            let spec = ExperimentSpec {
                scenario,
                epsilon,
                delta,
                trials,
                seed,
                jobs,
                timing,
            };
            let result = run_experiment(&spec).map_err(|e| e.to_string())?;
            emit(out.as_deref(), &csv_string(&result.rows), stdout)?;
            let summary_text = summary_json(&result.summary);
            match summary.or_else(|| out.map(|p| p.with_extension("summary.json"))) {
                Some(p) => {
                    emit(Some(&p), &summary_text, stdout)?;
                    let _ = stdout.write_all(summary_text.as_bytes());
                }
                None => {
                    let _ = stderr.write_all(summary_text.as_bytes());
                }
            }
            Ok(0)
        }
        Command::Reduce {
            reduction,
            input,
            out,
        } => {
            let ParsedFile::HittingSet(hs) = parse_file(&input)? else {
                return Err(format!("{}: not a Hitting Set (HS) file", input.display()));
            };
            let reduced = match reduction {
                Reduction::HsToKcnf => hitting_set_to_kcnf(&hs),
                Reduction::HsToFvs => hitting_set_to_fvs(&hs),
            }
            .map_err(|e| e.to_string())?;
            emit(out.as_deref(), &write_instance(&reduced), stdout)?;
            Ok(0)
        }
        Command::Kernelize {
            input,
            out,
            trace,
            k,
        } => {
            let ParsedFile::Consistency(file) = parse_file(&input)? else {
                return Err(format!("{}: not a BOOL instance", input.display()));
            };
            let (ConceptKind::KTermDnf, InstanceSamples::Boolean(samples)) =
                (&file.kind, &file.samples)
            else {
                return Err("kernelize needs a kind=kterm_dnf BOOL instance".to_string());
            };
            let k = k.unwrap_or(file.k);
            let backdoor = lambda_backdoor(samples, true);
            let kernel =
                kterm_dnf_kernelize(samples, k, &backdoor.vars).map_err(|e| e.to_string())?;
            let reduced = ConsistencyInstance::new(
                ConceptKind::KTermDnf,
                InstanceSamples::Boolean(kernel.reduced.clone()),
                k,
            )
            .map_err(|e| e.to_string())?;
            emit(out.as_deref(), &write_instance(&reduced), stdout)?;
            if let Some(path) = trace {
                let mut text = String::new();
                let _ = writeln!(text, "backdoor {}", join(&backdoor.vars));
                let _ = writeln!(text, "variables {}", join(&kernel.variables));
                for rule in &kernel.trace.rules {
                    let _ = match rule {
                        KernelRule::MergedVariables { kept, removed } => {
                            writeln!(text, "merge kept={kept} removed={removed}")
                        }
                        KernelRule::RemovedNegative { sample, pivot } => {
                            writeln!(text, "remove-negative sample={sample} pivot={pivot}")
                        }
                        KernelRule::RemovedPositive { sample, pivot } => {
                            writeln!(text, "remove-positive sample={sample} pivot={pivot}")
                        }
                    };
                }
                emit(Some(&path), &text, stdout)?;
            }
            let _ = writeln!(
                stderr,
                "kernel: {} -> {} samples, {} -> {} variables, s = {}",
                samples.len(),
                kernel.reduced.len(),
                samples.width(),
                kernel.reduced.width(),
                backdoor.ell()
            );
            Ok(0)
        }
    }
}

fn join(xs: &[usize]) -> String {
    xs.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(",")
}
