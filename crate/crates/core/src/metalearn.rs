//! PAC learners built from consistency checkers, and consistency solvers
//! built from PAC learners.

use alloc::vec::Vec;

use crate::assignment::{LabeledSample, SampleSet};
use crate::consistency::{binomial, ConsistencyChecker, ConsistencyOutcome};
use crate::error::{Error, Result};
use crate::hypothesis::{graph_order, ConceptKind, Hypothesis};
use crate::oracle::{draw, exact_error, typical_uniform_sampler, HiddenScenario, RandomSource};
use crate::params::ParamInfo;

const LN_2: f64 = core::f64::consts::LN_2;

/// `log₂` of the number of representations with parameter at most `k` over
/// assignments of width `n` (`N²` for graph kinds).
pub fn log_hyp_count(kind: &ConceptKind, n: usize, k: usize) -> Result<f64> {
    Ok(match kind {
        ConceptKind::KCnf | ConceptKind::KDnf => {
            // Each of the C short clauses is either in or out.
            let clauses = (1..=k.min(n) as u128).fold(0u128, |acc, i| {
                acc.saturating_add(binomial(n as u128, i).saturating_mul(1u128 << i.min(127)))
            });
            clauses as f64
        }
        ConceptKind::KTermDnf | ConceptKind::KClauseCnf => k as f64 * n as f64 * libm::log2(3.0),
        ConceptKind::HDeletion(_) | ConceptKind::Fvs => {
            let order = graph_order(n)?;
            let count = (0..=k.min(order) as u128).fold(0u128, |acc, i| {
                acc.saturating_add(binomial(order as u128, i))
            });
            libm::log2(count as f64)
        }
    })
}

/// `⌈(1/ε)(ln|H| + 1/δ)⌉` with `ln|H| = log_hyp · ln 2`.
pub fn required_samples(log_hyp: f64, epsilon: f64, delta: f64) -> usize {
    libm::ceil((log_hyp * LN_2 + 1.0 / delta) / epsilon) as usize
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LearnerConfig {
    pub n: usize,
    pub epsilon: f64,
    pub delta: f64,
    pub params: ParamInfo,
    pub seed: u64,
}

impl LearnerConfig {
    pub fn new(n: usize, epsilon: f64, delta: f64, params: ParamInfo, seed: u64) -> Result<Self> {
        let cfg = Self {
            n,
            epsilon,
            delta,
            params,
            seed,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        let in_range = |v: f64| v > 0.0 && v <= 1.0;
        if in_range(self.epsilon) && in_range(self.delta) {
            Ok(())
        } else {
            Err(Error::InvalidAccuracy)
        }
    }
}

/// What a learner returns: the hypothesis and the number of draws it made.
#[derive(Debug, Clone, PartialEq)]
pub struct LearnRun {
    pub hypothesis: Hypothesis,
    pub samples_used: usize,
}

/// A learning run against a known scenario, so the true error is available.
#[derive(Debug, Clone, PartialEq)]
pub struct LearnRunRecord {
    pub hypothesis: Hypothesis,
    pub samples_used: usize,
    pub exact_err: f64,
}

pub trait PacLearner {
    fn kind(&self) -> &ConceptKind;

    fn learn(
        &self,
        cfg: &LearnerConfig,
        draw: &mut dyn FnMut() -> LabeledSample,
    ) -> Result<LearnRun>;
}

/// Draws the sample budget, deduplicates, and asks the checker for a
/// hypothesis with parameter at most `cfg.params.k`.
pub fn pac_learn_via_consistency<C: ConsistencyChecker + ?Sized>(
    cfg: &LearnerConfig,
    checker: &C,
    draw: &mut dyn FnMut() -> LabeledSample,
) -> Result<LearnRun> {
    cfg.validate()?;
    let kind = checker.kind();
    let k = cfg.params.k;
    let t = required_samples(log_hyp_count(kind, cfg.n, k)?, cfg.epsilon, cfg.delta);
    let drawn: Vec<LabeledSample> = (0..t).map(|_| draw()).collect();
    let samples = SampleSet::new(cfg.n, drawn)?;
    let hypothesis = checker
        .check_samples(&samples, k)?
        .into_hypothesis()
        .ok_or(Error::NotRealizable)?;
    if kind.kappa(&hypothesis)? > k {
        return Err(Error::Internal("checker exceeded the parameter"));
    }
    Ok(LearnRun {
        hypothesis,
        samples_used: t,
    })
}

/// The learner obtained from a consistency checker.
#[derive(Debug, Clone)]
pub struct ConsistencyLearner<C>(pub C);

impl<C: ConsistencyChecker> PacLearner for ConsistencyLearner<C> {
    fn kind(&self) -> &ConceptKind {
        self.0.kind()
    }

    fn learn(
        &self,
        cfg: &LearnerConfig,
        draw: &mut dyn FnMut() -> LabeledSample,
    ) -> Result<LearnRun> {
        pac_learn_via_consistency(cfg, &self.0, draw)
    }
}

/// Runs `learner` against `scenario` with draws from `rng` and reports the
/// exact error of its output.
pub fn pac_learn_scenario<L: PacLearner + ?Sized>(
    cfg: &LearnerConfig,
    scenario: &HiddenScenario,
    learner: &L,
    rng: &mut RandomSource,
) -> Result<LearnRunRecord> {
    if learner.kind() != scenario.kind() {
        return Err(Error::KindMismatch(scenario.kind().name()));
    }
    let run = learner.learn(cfg, &mut || draw(scenario, rng))?;
    let exact_err = exact_error(&run.hypothesis, scenario)?;
    Ok(LearnRunRecord {
        hypothesis: run.hypothesis,
        samples_used: run.samples_used,
        exact_err,
    })
}

/// Randomized consistency checking with a PAC learner: emulate the uniform
/// distribution on the sample points, ask for error below `1/(t+1)`, and keep
/// the answer only if it agrees with every sample.
pub fn consistency_via_pac_learner<L: PacLearner + ?Sized>(
    samples: &SampleSet,
    learner: &L,
    delta: f64,
    k: usize,
    rng: &mut RandomSource,
) -> Result<ConsistencyOutcome> {
    let kind = learner.kind();
    let n = samples.width();
    if samples.is_empty() {
        return kind.canonical_empty(n).map(ConsistencyOutcome::Consistent);
    }
    let points: Vec<_> = samples.assignments().cloned().collect();
    let distribution = typical_uniform_sampler(&points)?;
    let labels: Vec<bool> = samples.iter().map(|s| s.label).collect();
    let cfg = LearnerConfig::new(
        n,
        1.0 / (samples.len() + 1) as f64,
        delta,
        ParamInfo::new(k, kind.lambda(n, &points)),
        0,
    )?;
    let mut emulate = || {
        let i = distribution.sample_index(rng);
        LabeledSample::new(points[i].clone(), labels[i])
    };
    let h = match learner.learn(&cfg, &mut emulate) {
        Ok(run) => run.hypothesis,
        Err(Error::NotRealizable) => return Ok(ConsistencyOutcome::Inconsistent),
        Err(e) => return Err(e),
    };
    let within = kind.kappa(&h).is_ok_and(|kappa| kappa <= k);
    Ok(if within && h.is_consistent_with(samples) {
        ConsistencyOutcome::Consistent(h)
    } else {
        ConsistencyOutcome::Inconsistent
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::assignment::Assignment;
    use crate::graph::ForbiddenFamily;
    use crate::oracle::FiniteDistribution;

    #[test]
    fn hypothesis_space_sizes() {
        assert_eq!(log_hyp_count(&ConceptKind::KCnf, 2, 1).unwrap(), 4.0);
        assert_eq!(log_hyp_count(&ConceptKind::KTermDnf, 7, 0).unwrap(), 0.0);
        let fvs = log_hyp_count(&ConceptKind::Fvs, 25, 1).unwrap();
        assert!((fvs - 2.585).abs() < 1e-3);
        assert_eq!(log_hyp_count(&ConceptKind::KCnf, 8, 2).unwrap(), 128.0);
        assert!(log_hyp_count(&ConceptKind::HDeletion(ForbiddenFamily::cluster()), 10, 1).is_err());
    }

    #[test]
    fn sample_budget() {
        assert_eq!(required_samples(0.0, 1.0, 1.0), 1);
        assert_eq!(required_samples(4.0, 0.5, 0.5), 10);
        assert_eq!(required_samples(128.0, 0.2, 0.2), 469);
    }

    #[test]
    fn accuracy_is_validated() {
        assert!(LearnerConfig::new(2, 0.0, 0.5, ParamInfo::default(), 0).is_err());
        assert!(LearnerConfig::new(2, 0.5, 1.5, ParamInfo::default(), 0).is_err());
        assert!(LearnerConfig::new(2, 1.0, 1.0, ParamInfo::default(), 0).is_ok());
    }

    #[test]
    fn point_mass_has_zero_error() {
        let x = Assignment::parse_bits("101").unwrap();
        let concept = Hypothesis::Cnf(crate::formula::CnfFormula::empty(3).unwrap());
        let scenario = HiddenScenario::with_computed_params(
            ConceptKind::KCnf,
            concept,
            FiniteDistribution::point_mass(x),
        )
        .unwrap();
        let cfg = LearnerConfig::new(3, 0.5, 0.5, ParamInfo::new(1, 0), 7).unwrap();
        let mut rng = RandomSource::new(7);
        let rec = pac_learn_scenario(
            &cfg,
            &scenario,
            &ConsistencyLearner(ConceptKind::KCnf),
            &mut rng,
        )
        .unwrap();
        assert_eq!(rec.exact_err, 0.0);
        let log_hyp = log_hyp_count(&ConceptKind::KCnf, 3, 1).unwrap();
        assert_eq!(rec.samples_used, required_samples(log_hyp, 0.5, 0.5));
    }

    #[test]
    fn single_sample_round_trip() {
        let s = SampleSet::from_strs(&[("01", true)]).unwrap();
        let mut rng = RandomSource::new(1);
        let out = consistency_via_pac_learner(
            &s,
            &ConsistencyLearner(ConceptKind::KCnf),
            0.5,
            1,
            &mut rng,
        )
        .unwrap();
        assert!(out.hypothesis().unwrap().is_consistent_with(&s));
    }

    #[test]
    fn inconsistent_input_stays_inconsistent() {
        let s = SampleSet::from_strs(&[("10", true), ("01", true), ("11", false), ("00", false)])
            .unwrap();
        let mut rng = RandomSource::new(3);
        let out = consistency_via_pac_learner(
            &s,
            &ConsistencyLearner(ConceptKind::KCnf),
            0.1,
            1,
            &mut rng,
        )
        .unwrap();
        assert_eq!(out, ConsistencyOutcome::Inconsistent);
    }
}
