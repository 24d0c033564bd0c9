//! Born-rule sampling of the optimal measurement.
//!
//! # Random streams
//!
//! All randomness comes from ChaCha8 (the 8-round ChaCha stream cipher used as
//! a counter-based generator, as implemented by `rand_chacha`). A master seed
//! `s: u64` and a stream index `j: u64` select the generator
//!
//! ```text
//! key    = s.to_le_bytes() ++ [0u8; 24]
//! stream = j
//! ```
//!
//! and uniform doubles are the top 53 bits of a `u64` scaled by `2^-53`.
//! Trials are cut into blocks of [`BLOCK_TRIALS`]; block `b` always draws
//! from stream `b`, so results do not depend on how blocks are spread over
//! worker threads.

mod scenarios;

use num_complex::Complex64;
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::discriminate::{build_povm, check_prior, failure_probability, DiscriminationProblem, PovmSolution};
use crate::linalg::ComplexVector;
use crate::{Error, Result};

pub use scenarios::{
    black_box_output, example_problem, example_subspaces, honest_valid_probability, key_sharing_states,
    scenario_black_box, scenario_key_sharing, BlackBoxRecord, BlackBoxReport, Eavesdropper, InterceptResend,
    KeySharingReport, TwoParticleState,
};

/// Trials per independent random stream.
pub const BLOCK_TRIALS: usize = 4096;

/// Tolerance on the norm of a measured state.
pub const NORM_TOL: f64 = 1e-10;

/// Generator for stream `stream` under master seed `seed`.
pub fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut key = [0u8; 32];
    key[..8].copy_from_slice(&seed.to_le_bytes());
    let mut rng = ChaCha8Rng::from_seed(key);
    rng.set_stream(stream);
    rng
}

/// Uniform double in `[0, 1)`.
pub(crate) fn uniform(rng: &mut (impl RngCore + ?Sized)) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Outcome {
    Identify1,
    Identify2,
    Fail,
}

impl Outcome {
    pub fn identified(self) -> Option<u8> {
        match self {
            Outcome::Identify1 => Some(1),
            Outcome::Identify2 => Some(2),
            Outcome::Fail => None,
        }
    }

    pub(crate) fn from_index(i: usize) -> Self {
        [Outcome::Identify1, Outcome::Identify2, Outcome::Fail][i]
    }
}

/// Draws a hypothesis label (1 with probability `eta`) and then a Jordan
/// basis state from that hypothesis' spectral decomposition.
pub fn sample_state(
    problem: &DiscriminationProblem,
    eta: f64,
    rng: &mut (impl RngCore + ?Sized),
) -> Result<(u8, ComplexVector)> {
    check_prior(eta)?;
    let jd = problem.jordan().ok_or(Error::MissingFrames)?;
    let label = if uniform(rng) < eta { 1 } else { 2 };
    let (weights, basis) = if label == 1 {
        (problem.alpha(), &jd.basis1)
    } else {
        (problem.beta(), &jd.basis2)
    };
    let i = pick(weights, uniform(rng));
    Ok((label, basis[i].clone()))
}

/// Index of the bin containing `u` in the cumulative distribution of `weights`.
pub(crate) fn pick(weights: &[f64], u: f64) -> usize {
    let total: f64 = weights.iter().sum();
    let target = u * total;
    let mut acc = 0.0;
    for (i, &w) in weights.iter().enumerate() {
        acc += w;
        if target < acc {
            return i;
        }
    }
    // u * total rounded up to the full sum: take the last positive bin.
    weights.iter().rposition(|&w| w > 0.0).unwrap_or(weights.len() - 1)
}

/// Born-rule probabilities `<s|Pi_j|s>` for identify-1, identify-2, fail.
pub fn outcome_probabilities(sol: &PovmSolution, state: &ComplexVector) -> Result<[f64; 3]> {
    let norm = state.norm();
    if (norm - 1.0).abs() > NORM_TOL {
        return Err(Error::UnnormalizedState(norm));
    }
    let [a, b, c] = sol.operators();
    Ok([a.expectation(state), b.expectation(state), c.expectation(state)])
}

/// Samples one outcome of the measurement on a pure state.
pub fn measure(
    sol: &PovmSolution,
    state: &ComplexVector,
    rng: &mut (impl RngCore + ?Sized),
) -> Result<Outcome> {
    let probs = outcome_probabilities(sol, state)?;
    let weights = probs.map(|p| p.max(0.0));
    Ok(Outcome::from_index(pick(&weights, uniform(rng))))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrialStats {
    pub trials: u64,
    pub identify1: u64,
    pub identify2: u64,
    pub failures: u64,
    /// Identify-1 on a state from `rho2` plus identify-2 on a state from `rho1`.
    pub misidentifications: u64,
    pub empirical_failure_rate: f64,
    pub expected_failure_rate: f64,
    pub z_score: f64,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
struct Tally {
    trials: u64,
    identify1: u64,
    identify2: u64,
    failures: u64,
    misidentifications: u64,
}

impl Tally {
    fn merge(self, o: Tally) -> Tally {
        Tally {
            trials: self.trials + o.trials,
            identify1: self.identify1 + o.identify1,
            identify2: self.identify2 + o.identify2,
            failures: self.failures + o.failures,
            misidentifications: self.misidentifications + o.misidentifications,
        }
    }
}

/// `(observed - expected) / sqrt(p (1 - p) / n)`; zero-variance cases give 0
/// on an exact match and an infinite score otherwise.
pub fn binomial_z_score(observed_rate: f64, expected_rate: f64, n: u64) -> f64 {
    let sigma = (expected_rate * (1.0 - expected_rate) / n as f64).sqrt();
    let diff = observed_rate - expected_rate;
    if sigma > 0.0 {
        diff / sigma
    } else if diff == 0.0 {
        0.0
    } else {
        f64::INFINITY.copysign(diff)
    }
}

fn run_block(
    problem: &DiscriminationProblem,
    sol: &PovmSolution,
    eta: f64,
    seed: u64,
    block: u64,
    count: usize,
) -> Result<Tally> {
    let mut rng = stream_rng(seed, block);
    let mut t = Tally::default();
    for _ in 0..count {
        let (label, state) = sample_state(problem, eta, &mut rng)?;
        let outcome = measure(sol, &state, &mut rng)?;
        t.trials += 1;
        match outcome {
            Outcome::Identify1 => t.identify1 += 1,
            Outcome::Identify2 => t.identify2 += 1,
            Outcome::Fail => t.failures += 1,
        }
        if outcome.identified().is_some_and(|l| l != label) {
            t.misidentifications += 1;
        }
    }
    Ok(t)
}

/// Monte Carlo estimate of the failure rate of the optimal measurement.
pub fn run_trials(problem: &DiscriminationProblem, eta: f64, trials: u64, seed: u64) -> Result<TrialStats> {
    run_trials_sharded(problem, eta, trials, seed, 1)
}

/// Same as [`run_trials`], with blocks spread over `shards` threads.
/// The result is identical for every shard count.
pub fn run_trials_sharded(
    problem: &DiscriminationProblem,
    eta: f64,
    trials: u64,
    seed: u64,
    shards: usize,
) -> Result<TrialStats> {
    if trials == 0 {
        return Err(Error::InvalidArgument("trials must be at least 1".into()));
    }
    let shards = shards.max(1);
    let sol = build_povm(problem, eta)?;
    let expected = failure_probability(problem, eta)?;
    let block = BLOCK_TRIALS as u64;
    let blocks = trials.div_ceil(block);
    let block_len = |b: u64| (trials - b * block).min(block) as usize;

    let tally = if shards == 1 {
        let mut acc = Tally::default();
        for b in 0..blocks {
            acc = acc.merge(run_block(problem, &sol, eta, seed, b, block_len(b))?);
        }
        acc
    } else {
        let results: Vec<Result<Tally>> = std::thread::scope(|scope| {
            let handles: Vec<_> = (0..shards as u64)
                .map(|s| {
                    let sol = &sol;
                    scope.spawn(move || {
                        let mut acc = Tally::default();
                        let mut b = s;
                        while b < blocks {
                            acc = acc.merge(run_block(problem, sol, eta, seed, b, block_len(b))?);
                            b += shards as u64;
                        }
                        Ok(acc)
                    })
                })
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("trial shard panicked"))
                .collect()
        });
        results
            .into_iter()
            .try_fold(Tally::default(), |acc, r| r.map(|t| acc.merge(t)))?
    };

    let empirical = tally.failures as f64 / tally.trials as f64;
    Ok(TrialStats {
        trials: tally.trials,
        identify1: tally.identify1,
        identify2: tally.identify2,
        failures: tally.failures,
        misidentifications: tally.misidentifications,
        empirical_failure_rate: empirical,
        expected_failure_rate: expected,
        z_score: binomial_z_score(empirical, expected, tally.trials),
    })
}

pub(crate) fn complex(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}
