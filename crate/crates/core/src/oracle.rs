//! Hidden scenarios: an explicit finite distribution plus a hidden concept,
//! with the labeled-sample oracle and exact / Monte Carlo generalization error.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::ToString;
use alloc::vec::Vec;

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::assignment::{Assignment, LabeledSample};
use crate::error::{Error, Result};
use crate::hypothesis::{ConceptKind, Hypothesis};
use crate::params::ParamInfo;

pub const WEIGHT_TOLERANCE: f64 = 1e-9;

/// Seedable generator. Substreams keyed by `(seed, stream)` are independent
/// and reproducible, so parallel trials never share state.
#[derive(Debug, Clone)]
pub struct RandomSource {
    rng: ChaCha8Rng,
}

impl RandomSource {
    pub fn new(seed: u64) -> Self {
        Self::substream(seed, 0)
    }

    pub fn substream(seed: u64, stream: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        Self { rng }
    }

    /// Uniform in `[0, 1)`.
    pub fn next_f64(&mut self) -> f64 {
        self.rng.gen::<f64>()
    }

    pub fn below(&mut self, bound: usize) -> usize {
        self.rng.gen_range(0..bound)
    }
}

impl RngCore for RandomSource {
    fn next_u32(&mut self) -> u32 {
        self.rng.next_u32()
    }

    fn next_u64(&mut self) -> u64 {
        self.rng.next_u64()
    }

    fn fill_bytes(&mut self, dest: &mut [u8]) {
        self.rng.fill_bytes(dest)
    }

    fn try_fill_bytes(&mut self, dest: &mut [u8]) -> core::result::Result<(), rand::Error> {
        self.rng.try_fill_bytes(dest)
    }
}

/// A distribution with explicit finite support.
#[derive(Debug, Clone, PartialEq)]
pub struct FiniteDistribution {
    n: usize,
    support: Vec<Assignment>,
    weights: Vec<f64>,
    cumulative: Vec<f64>,
}

impl FiniteDistribution {
    /// Weights must be strictly positive and sum to 1 within
    /// [`WEIGHT_TOLERANCE`]; they are never renormalized.
    pub fn new(n: usize, support: Vec<(Assignment, f64)>) -> Result<Self> {
        if support.is_empty() {
            return Err(Error::EmptySupport);
        }
        let mut seen = BTreeSet::new();
        let mut total = 0.0;
        for (x, w) in &support {
            if x.width() != n {
                return Err(Error::WidthMismatch {
                    expected: n,
                    found: x.width(),
                });
            }
            if !w.is_finite() || *w <= 0.0 {
                return Err(Error::NonPositiveWeight(*w));
            }
            if !seen.insert(x) {
                return Err(Error::DuplicateSupport(x.to_string()));
            }
            total += w;
        }
        if libm::fabs(total - 1.0) > WEIGHT_TOLERANCE {
            return Err(Error::WeightSum(total));
        }
        let (support, weights): (Vec<_>, Vec<_>) = support.into_iter().unzip();
        let cumulative = weights
            .iter()
            .scan(0.0, |acc, w| {
                *acc += w;
                Some(*acc)
            })
            .collect();
        Ok(Self {
            n,
            support,
            weights,
            cumulative,
        })
    }

    pub fn point_mass(x: Assignment) -> Self {
        Self {
            n: x.width(),
            support: alloc::vec![x],
            weights: alloc::vec![1.0],
            cumulative: alloc::vec![1.0],
        }
    }

    pub fn width(&self) -> usize {
        self.n
    }

    pub fn support(&self) -> &[Assignment] {
        &self.support
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Index of a support point drawn by inverse CDF.
    pub fn sample_index(&self, rng: &mut RandomSource) -> usize {
        let u = rng.next_f64() * self.cumulative[self.cumulative.len() - 1];
        self.cumulative
            .partition_point(|&c| c <= u)
            .min(self.support.len() - 1)
    }
}

/// The uniform distribution on `xs`, which is typical for any
/// support-based parameter.
pub fn typical_uniform_sampler(xs: &[Assignment]) -> Result<FiniteDistribution> {
    let first = xs.first().ok_or(Error::EmptySupport)?;
    let w = 1.0 / xs.len() as f64;
    let support: Vec<_> = xs.iter().map(|x| (x.clone(), w)).collect();
    let mut d = FiniteDistribution::new(first.width(), support)?;
    // Keep the last cumulative entry exactly 1 despite rounding.
    if let Some(last) = d.cumulative.last_mut() {
        *last = 1.0;
    }
    Ok(d)
}

/// Hidden concept, hidden distribution and the promised parameters.
#[derive(Debug, Clone)]
pub struct HiddenScenario {
    kind: ConceptKind,
    concept: Hypothesis,
    distribution: FiniteDistribution,
    params: ParamInfo,
    labels: Vec<bool>,
}

impl HiddenScenario {
    /// Validates widths and that `params` equals κ of the concept and λ of
    /// the support.
    pub fn new(
        kind: ConceptKind,
        concept: Hypothesis,
        distribution: FiniteDistribution,
        params: ParamInfo,
    ) -> Result<Self> {
        if concept.width() != distribution.width() {
            return Err(Error::WidthMismatch {
                expected: distribution.width(),
                found: concept.width(),
            });
        }
        let k = kind.kappa(&concept)?;
        if k != params.k {
            return Err(Error::ScenarioParams(format!(
                "k = {} but the hidden concept has kappa {k}",
                params.k
            )));
        }
        let ell = kind.lambda(distribution.width(), distribution.support());
        if ell != params.ell {
            return Err(Error::ScenarioParams(format!(
                "ell = {} but the support has lambda {ell}",
                params.ell
            )));
        }
        let labels = distribution
            .support()
            .iter()
            .map(|x| concept.eval(x))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            kind,
            concept,
            distribution,
            params,
            labels,
        })
    }

    /// Builds a scenario with parameters computed from the concept and support.
    pub fn with_computed_params(
        kind: ConceptKind,
        concept: Hypothesis,
        distribution: FiniteDistribution,
    ) -> Result<Self> {
        let params = ParamInfo::new(
            kind.kappa(&concept)?,
            kind.lambda(distribution.width(), distribution.support()),
        );
        Self::new(kind, concept, distribution, params)
    }

    pub fn kind(&self) -> &ConceptKind {
        &self.kind
    }

    pub fn concept(&self) -> &Hypothesis {
        &self.concept
    }

    pub fn distribution(&self) -> &FiniteDistribution {
        &self.distribution
    }

    pub fn params(&self) -> ParamInfo {
        self.params
    }

    pub fn width(&self) -> usize {
        self.distribution.width()
    }
}

/// One i.i.d. labeled sample `(x, c*(x))`.
pub fn draw(scenario: &HiddenScenario, rng: &mut RandomSource) -> LabeledSample {
    let i = scenario.distribution.sample_index(rng);
    LabeledSample::new(scenario.distribution.support[i].clone(), scenario.labels[i])
}

/// Probability mass of the support points where `h` and the hidden concept disagree.
pub fn exact_error(h: &Hypothesis, scenario: &HiddenScenario) -> Result<f64> {
    check_width(h, scenario)?;
    let mut err = 0.0;
    for ((x, w), &label) in scenario
        .distribution
        .support
        .iter()
        .zip(&scenario.distribution.weights)
        .zip(&scenario.labels)
    {
        if h.eval(x)? != label {
            err += w;
        }
    }
    Ok(err)
}

/// Fraction of `trials` fresh draws on which `h` disagrees with the hidden concept.
pub fn monte_carlo_error(
    h: &Hypothesis,
    scenario: &HiddenScenario,
    trials: usize,
    rng: &mut RandomSource,
) -> Result<f64> {
    if trials == 0 {
        return Err(Error::NoTrials);
    }
    check_width(h, scenario)?;
    let mut wrong = 0usize;
    for _ in 0..trials {
        let s = draw(scenario, rng);
        if h.eval(&s.assignment)? != s.label {
            wrong += 1;
        }
    }
    Ok(wrong as f64 / trials as f64)
}

fn check_width(h: &Hypothesis, scenario: &HiddenScenario) -> Result<()> {
    if h.width() != scenario.width() {
        return Err(Error::WidthMismatch {
            expected: scenario.width(),
            found: h.width(),
        });
    }
    Ok(())
}
