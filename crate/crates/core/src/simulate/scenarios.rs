//! The four-dimensional example and its two applications.
//!
//! `S1 = span{|0>, |1>}` and `S2 = span{(|0> + |2>)/sqrt2, (|1> + |3>)/sqrt2}`
//! in a four-dimensional space. Both Jordan angles are 45 degrees, so at
//! equal priors the optimal failure probability is `1/sqrt2`.

use num_complex::Complex64;
use rand::{Rng, RngCore};
use rand_distr::StandardNormal;
use serde::Serialize;

use super::{complex, pick, stream_rng, uniform, Outcome};
use crate::discriminate::{build_povm, DiscriminationProblem, PovmSolution};
use crate::jordan::Subspace;
use crate::linalg::{ComplexMatrix, ComplexVector};
use crate::Result;

const H: f64 = std::f64::consts::FRAC_1_SQRT_2;

fn u0() -> ComplexVector {
    ComplexVector::from_real(&[H, 0.0, H, 0.0])
}

fn u1() -> ComplexVector {
    ComplexVector::from_real(&[0.0, H, 0.0, H])
}

pub fn example_subspaces() -> (Subspace, Subspace) {
    let s1 = Subspace::new(4, vec![ComplexVector::basis(4, 0), ComplexVector::basis(4, 1)])
        .expect("axis subspace");
    let s2 = Subspace::new(4, vec![u0(), u1()]).expect("rotated subspace");
    (s1, s2)
}

/// Uniform discrimination of the two example subspaces.
pub fn example_problem() -> DiscriminationProblem {
    let (s1, s2) = example_subspaces();
    DiscriminationProblem::from_subspaces(&s1, &s2, None, None).expect("example is in general position")
}

/// Pure state of two four-level particles, stored as the coefficient matrix
/// `C[j][l]` of `|j>_a |l>_b`.
#[derive(Debug, Clone)]
pub struct TwoParticleState {
    pub coeffs: ComplexMatrix,
}

impl TwoParticleState {
    /// `(|a>|b> + |b>|a>) / sqrt2` for orthonormal `a`, `b`.
    pub fn symmetrized(a: &ComplexVector, b: &ComplexVector) -> Self {
        let mut c = ComplexMatrix::zeros(a.len(), b.len());
        add_product(&mut c, a, b, H);
        add_product(&mut c, b, a, H);
        Self { coeffs: c }
    }

    pub fn product(a: &ComplexVector, b: &ComplexVector) -> Self {
        let mut c = ComplexMatrix::zeros(a.len(), b.len());
        add_product(&mut c, a, b, 1.0);
        Self { coeffs: c }
    }

    pub fn norm(&self) -> f64 {
        self.coeffs.frobenius_norm()
    }

    /// Reduced density operator of particle `a`: `C C^H`.
    pub fn reduced_a(&self) -> ComplexMatrix {
        &self.coeffs * &self.coeffs.adjoint()
    }

    /// Reduced density operator of particle `b`: `C^T conj(C)`.
    pub fn reduced_b(&self) -> ComplexMatrix {
        let t = self.coeffs.transpose();
        &t * &t.adjoint()
    }

    /// `<Psi| A (x) B |Psi> = Tr(C^H A C B^T)`.
    pub fn expectation(&self, a: &ComplexMatrix, b: &ComplexMatrix) -> f64 {
        let acb = &(a * &self.coeffs) * &b.transpose();
        self.coeffs.adjoint().trace_product(&acb).re
    }

    /// Joint outcome distribution when each particle is measured with `povm`,
    /// indexed `[alice][bob]` in the order identify-1, identify-2, fail.
    pub fn joint_distribution(&self, povm: &PovmSolution) -> [[f64; 3]; 3] {
        let ops = povm.operators();
        let mut p = [[0.0; 3]; 3];
        for (i, a) in ops.iter().enumerate() {
            for (j, b) in ops.iter().enumerate() {
                p[i][j] = self.expectation(a, b);
            }
        }
        p
    }
}

fn add_product(c: &mut ComplexMatrix, a: &ComplexVector, b: &ComplexVector, w: f64) {
    for j in 0..a.len() {
        for l in 0..b.len() {
            c[(j, l)] += a[j] * b[l] * w;
        }
    }
}

/// Charlie's two code states: bit 0 lives on `S1 (x) S1`, bit 1 on `S2 (x) S2`.
pub fn key_sharing_states() -> [TwoParticleState; 2] {
    [
        TwoParticleState::symmetrized(&ComplexVector::basis(4, 0), &ComplexVector::basis(4, 1)),
        TwoParticleState::symmetrized(&u0(), &u1()),
    ]
}

fn sample_joint(p: &[[f64; 3]; 3], rng: &mut (impl RngCore + ?Sized)) -> (Outcome, Outcome) {
    let flat: Vec<f64> = p.iter().flatten().map(|&x| x.max(0.0)).collect();
    let k = pick(&flat, uniform(rng));
    (Outcome::from_index(k / 3), Outcome::from_index(k % 3))
}

/// An adversary sitting between Charlie and the two parties.
pub trait Eavesdropper {
    /// Consumes the state Charlie sent and returns the state forwarded to Alice and Bob.
    fn intercept(&self, sent: &TwoParticleState, rng: &mut dyn RngCore) -> TwoParticleState;
}

/// Measures both particles with the same optimal measurement the parties use.
/// If either particle is identified she re-prepares the matching code state;
/// if both fail she forwards a product of uniformly random basis states.
#[derive(Debug, Clone)]
pub struct InterceptResend {
    povm: PovmSolution,
    codes: [TwoParticleState; 2],
}

impl InterceptResend {
    pub fn new() -> Self {
        Self {
            povm: build_povm(&example_problem(), 0.5).expect("example POVM"),
            codes: key_sharing_states(),
        }
    }
}

impl Default for InterceptResend {
    fn default() -> Self {
        Self::new()
    }
}

impl Eavesdropper for InterceptResend {
    fn intercept(&self, sent: &TwoParticleState, rng: &mut dyn RngCore) -> TwoParticleState {
        let (a, b) = sample_joint(&sent.joint_distribution(&self.povm), rng);
        match a.identified().or(b.identified()) {
            Some(label) => self.codes[usize::from(label - 1)].clone(),
            None => {
                let m = (uniform(rng) * 4.0) as usize;
                let n = (uniform(rng) * 4.0) as usize;
                TwoParticleState::product(&ComplexVector::basis(4, m.min(3)), &ComplexVector::basis(4, n.min(3)))
            }
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct KeySharingReport {
    pub rounds: u64,
    pub valid_bits: u64,
    /// Shared bits of the valid rounds, as `'0'`/`'1'` characters.
    pub bit_values: String,
    pub alice_success_rate: f64,
    pub bob_success_rate: f64,
    pub valid_rate: f64,
    pub expected_valid_rate: f64,
    pub eve_enabled: bool,
    /// Rounds in which a successful measurement named the wrong code state.
    pub disturbance_detected: u64,
}

/// Probability that both honest parties identify the code state: `(2 - sqrt2)^2 / 4`.
pub fn honest_valid_probability() -> f64 {
    let s = 2.0 - std::f64::consts::SQRT_2;
    s * s / 4.0
}

/// Charlie distributes one particle of a code state to each of Alice and Bob,
/// who measure independently with the equal-prior optimal measurement.
pub fn scenario_key_sharing(
    rounds: u64,
    seed: u64,
    eve: Option<&dyn Eavesdropper>,
) -> Result<KeySharingReport> {
    if rounds == 0 {
        return Err(crate::Error::InvalidArgument("rounds must be at least 1".into()));
    }
    let povm = build_povm(&example_problem(), 0.5)?;
    let codes = key_sharing_states();
    let honest = [
        codes[0].joint_distribution(&povm),
        codes[1].joint_distribution(&povm),
    ];
    let mut rng = stream_rng(seed, 0);

    let (mut alice_ok, mut bob_ok, mut valid, mut disturbed) = (0u64, 0u64, 0u64, 0u64);
    let mut bits = String::new();
    for _ in 0..rounds {
        let sent = usize::from(uniform(&mut rng) >= 0.5);
        let label = sent as u8 + 1;
        let (a, b) = match eve {
            None => sample_joint(&honest[sent], &mut rng),
            Some(e) => {
                let forwarded = e.intercept(&codes[sent], &mut rng);
                sample_joint(&forwarded.joint_distribution(&povm), &mut rng)
            }
        };
        let (ra, rb) = (a.identified(), b.identified());
        alice_ok += u64::from(ra.is_some());
        bob_ok += u64::from(rb.is_some());
        if ra.is_some_and(|l| l != label) || rb.is_some_and(|l| l != label) {
            disturbed += 1;
        }
        if let (Some(la), Some(_)) = (ra, rb) {
            valid += 1;
            bits.push(if la == 1 { '0' } else { '1' });
        }
    }
    let n = rounds as f64;
    Ok(KeySharingReport {
        rounds,
        valid_bits: valid,
        bit_values: bits,
        alice_success_rate: alice_ok as f64 / n,
        bob_success_rate: bob_ok as f64 / n,
        valid_rate: valid as f64 / n,
        expected_valid_rate: honest_valid_probability(),
        eve_enabled: eve.is_some(),
        disturbance_detected: disturbed,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct BlackBoxRecord {
    pub box_label: u8,
    pub outcome: Outcome,
    /// Born probability that the correct box is named, for this trial's rotation.
    pub success_probability: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct BlackBoxReport {
    pub trials: u64,
    pub box1_trials: u64,
    pub box2_trials: u64,
    pub successes: u64,
    pub failures: u64,
    pub misidentifications: u64,
    pub success_rate: f64,
    pub expected_success_rate: f64,
    /// Largest `|P(success) - (2 - sqrt2)/2|` over all trials.
    pub max_success_probability_deviation: f64,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub records: Vec<BlackBoxRecord>,
}

/// Two-qubit gate `a (x) b` on `|q1 q2>` ordered `00, 01, 10, 11`.
fn kron2(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(4, 4);
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                for l in 0..2 {
                    m[(2 * i + k, 2 * j + l)] = a[(i, j)] * b[(k, l)];
                }
            }
        }
    }
    m
}

fn hadamard() -> ComplexMatrix {
    ComplexMatrix::from_real_rows(&[&[H, H], &[H, -H]])
}

fn cnot() -> ComplexMatrix {
    ComplexMatrix::from_real_rows(&[
        &[1.0, 0.0, 0.0, 0.0],
        &[0.0, 1.0, 0.0, 0.0],
        &[0.0, 0.0, 0.0, 1.0],
        &[0.0, 0.0, 1.0, 0.0],
    ])
}

/// SU(2) element with first column `(a, b)`.
fn rotation(a: Complex64, b: Complex64) -> ComplexMatrix {
    ComplexMatrix::from_row_major(2, 2, vec![a, -b.conj(), b, a.conj()]).expect("2x2")
}

/// Haar-random qubit rotation from two normalized complex Gaussians.
fn haar_rotation(rng: &mut (impl RngCore + ?Sized)) -> ComplexMatrix {
    let mut g = || -> f64 { rng.sample(StandardNormal) };
    let a = complex(g(), g());
    let b = complex(g(), g());
    let n = (a.norm_sqr() + b.norm_sqr()).sqrt();
    rotation(a / n, b / n)
}

/// Output of black box `which` (1 or 2) on `|00>`, mapped into the example
/// space via `|00> -> |0>, |01> -> |1>, |11> -> |2>, |10> -> |3>`.
pub fn black_box_output(which: u8, rot: &ComplexMatrix) -> ComplexVector {
    let id = ComplexMatrix::identity(2);
    let input = ComplexVector::basis(4, 0);
    let out = if which == 1 {
        kron2(&id, rot).matvec(&input)
    } else {
        let prepared = kron2(&hadamard(), rot).matvec(&input);
        cnot().matvec(&prepared)
    };
    // qubit order 00, 01, 10, 11 -> example axes 0, 1, 3, 2
    ComplexVector(vec![out[0], out[1], out[3], out[2]])
}

/// Bob decides which of two black boxes acted on `|00>` using the
/// equal-prior optimal measurement for the example subspaces.
pub fn scenario_black_box(trials: u64, seed: u64) -> Result<BlackBoxReport> {
    if trials == 0 {
        return Err(crate::Error::InvalidArgument("trials must be at least 1".into()));
    }
    let povm = build_povm(&example_problem(), 0.5)?;
    let expected = 1.0 - H;
    let mut rng = stream_rng(seed, 0);
    let mut records = Vec::with_capacity(trials as usize);
    let (mut ok, mut fail, mut wrong, mut box1) = (0u64, 0u64, 0u64, 0u64);
    let mut worst: f64 = 0.0;
    for _ in 0..trials {
        let which: u8 = if uniform(&mut rng) < 0.5 { 1 } else { 2 };
        box1 += u64::from(which == 1);
        let rot = haar_rotation(&mut rng);
        let state = black_box_output(which, &rot);
        let probs = super::outcome_probabilities(&povm, &state)?;
        let p_success = probs[usize::from(which - 1)];
        worst = worst.max((p_success - expected).abs());
        let outcome = Outcome::from_index(pick(&probs.map(|p| p.max(0.0)), uniform(&mut rng)));
        match outcome.identified() {
            Some(l) if l == which => ok += 1,
            Some(_) => wrong += 1,
            None => fail += 1,
        }
        records.push(BlackBoxRecord {
            box_label: which,
            outcome,
            success_probability: p_success,
        });
    }
    Ok(BlackBoxReport {
        trials,
        box1_trials: box1,
        box2_trials: trials - box1,
        successes: ok,
        failures: fail,
        misidentifications: wrong,
        success_rate: ok as f64 / trials as f64,
        expected_success_rate: expected,
        max_success_probability_deviation: worst,
        records,
    })
}
