//! Repeated PAC-learning trials against one hidden scenario.

use std::io::Write;
use std::time::Instant;

use parapac_core::metalearn::{pac_learn_scenario, ConsistencyLearner, LearnerConfig};
use parapac_core::oracle::{HiddenScenario, RandomSource};
use rayon::prelude::*;
use serde::Serialize;

pub const CSV_HEADER: [&str; 6] = [
    "trial",
    "seed",
    "samples_used",
    "wall_time_ms",
    "exact_err",
    "success",
];

#[derive(Debug, Clone)]
pub struct ExperimentSpec {
    pub scenario: HiddenScenario,
    pub epsilon: f64,
    pub delta: f64,
    pub trials: usize,
    pub seed: u64,
    /// Worker threads; `None` uses the available parallelism.
    pub jobs: Option<usize>,
    /// Record per-trial wall time in the CSV. Off by default so that the CSV
    /// depends on the seed only.
    pub timing: bool,
}

/// One trial. `exact_err` is `None` when the trial failed with an error,
/// which is kept in `error`.
#[derive(Debug, Clone, PartialEq)]
pub struct ResultRow {
    pub trial: usize,
    pub seed: u64,
    pub samples_used: usize,
    pub wall_time_ms: f64,
    pub exact_err: Option<f64>,
    pub success: bool,
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrialError {
    pub trial: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Summary {
    pub kind: String,
    pub trials: usize,
    pub seed: u64,
    pub epsilon: f64,
    pub delta: f64,
    pub success_fraction: f64,
    pub failure_fraction: f64,
    pub mean_samples_used: f64,
    /// Measured even when the CSV omits timing.
    pub mean_wall_time_ms: f64,
    pub errors: Vec<TrialError>,
}

#[derive(Debug, Clone)]
pub struct ExperimentResult {
    pub rows: Vec<ResultRow>,
    pub summary: Summary,
}

#[derive(Debug, thiserror::Error)]
pub enum ExperimentError {
    #[error("trials must be at least 1")]
    NoTrials,
    #[error(transparent)]
    Core(#[from] parapac_core::Error),
    #[error("thread pool: {0}")]
    Pool(#[from] rayon::ThreadPoolBuildError),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Trial `i` draws from substream `i` of `spec.seed`, so rows do not depend
/// on how trials are spread over threads.
pub fn run_experiment(spec: &ExperimentSpec) -> Result<ExperimentResult, ExperimentError> {
    if spec.trials == 0 {
        return Err(ExperimentError::NoTrials);
    }
    let cfg = LearnerConfig::new(
        spec.scenario.width(),
        spec.epsilon,
        spec.delta,
        spec.scenario.params(),
        spec.seed,
    )?;
    let learner = ConsistencyLearner(spec.scenario.kind().clone());
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(jobs) = spec.jobs {
        pool = pool.num_threads(jobs.max(1));
    }
    let pool = pool.build()?;

    let timed: Vec<(ResultRow, f64)> = pool.install(|| {
        (0..spec.trials)
            .into_par_iter()
            .map(|trial| {
                let mut rng = RandomSource::substream(spec.seed, trial as u64);
                let start = Instant::now();
                let outcome = pac_learn_scenario(&cfg, &spec.scenario, &learner, &mut rng);
                let elapsed = start.elapsed().as_secs_f64() * 1e3;
                let row = match outcome {
                    Ok(rec) => ResultRow {
                        trial,
                        seed: spec.seed,
                        samples_used: rec.samples_used,
                        wall_time_ms: if spec.timing { elapsed } else { 0.0 },
                        exact_err: Some(rec.exact_err),
                        success: rec.exact_err <= spec.epsilon,
                        error: None,
                    },
                    Err(e) => ResultRow {
                        trial,
                        seed: spec.seed,
                        samples_used: 0,
                        wall_time_ms: if spec.timing { elapsed } else { 0.0 },
                        exact_err: None,
                        success: false,
                        error: Some(e.to_string()),
                    },
                };
                (row, elapsed)
            })
            .collect()
    });

    let trials = spec.trials as f64;
    let successes = timed.iter().filter(|(r, _)| r.success).count() as f64;
    let summary = Summary {
        kind: spec.scenario.kind().name().to_string(),
        trials: spec.trials,
        seed: spec.seed,
        epsilon: spec.epsilon,
        delta: spec.delta,
        success_fraction: successes / trials,
        failure_fraction: 1.0 - successes / trials,
        mean_samples_used: timed
            .iter()
            .map(|(r, _)| r.samples_used as f64)
            .sum::<f64>()
            / trials,
        mean_wall_time_ms: timed.iter().map(|(_, t)| t).sum::<f64>() / trials,
        errors: timed
            .iter()
            .filter_map(|(r, _)| {
                r.error.as_ref().map(|m| TrialError {
                    trial: r.trial,
                    message: m.clone(),
                })
            })
            .collect(),
    };
    Ok(ExperimentResult {
        rows: timed.into_iter().map(|(r, _)| r).collect(),
        summary,
    })
}

/// Header plus one row per trial, LF line endings.
pub fn write_csv<W: Write>(rows: &[ResultRow], out: W) -> Result<(), ExperimentError> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out);
    w.write_record(CSV_HEADER)?;
    for r in rows {
        w.write_record([
            r.trial.to_string(),
            r.seed.to_string(),
            r.samples_used.to_string(),
            r.wall_time_ms.to_string(),
            r.exact_err.map(|e| e.to_string()).unwrap_or_default(),
            (r.success as u8).to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn csv_string(rows: &[ResultRow]) -> String {
    let mut buf = Vec::new();
    write_csv(rows, &mut buf).expect("writing to memory");
    String::from_utf8(buf).expect("ASCII output")
}

pub fn summary_json(summary: &Summary) -> String {
    let mut s = serde_json::to_string_pretty(summary).expect("plain data serializes");
    s.push('\n');
    s
}
