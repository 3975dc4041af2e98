//! Standard teleportation of one qubit through an arbitrary resource.
//!
//! Alice holds the information qubit and every resource qubit except the
//! receiver's. She measures those `n` qubits in the basis
//!
//! ```text
//! Ψ(0,1) = (|0⟩|ψ̄0⟩ ± |1⟩|ψ̄1⟩)/√2
//! Ψ(2,3) = (|0⟩|ψ̄1⟩ ± |1⟩|ψ̄0⟩)/√2
//! ```
//!
//! built from the resource's [`SchmidtForm`], sends the two-bit outcome `r`,
//! and Bob applies `U†` followed by `1`, `σz`, `σx` or `σxσz`.

use std::fmt;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::schmidt::{schmidt_form, SchmidtForm};
use crate::statevec::{inner_raw, Qubit2x2, StateVector};

/// Outcomes with a smaller probability carry no Bob state.
pub const UNREACHABLE_PROBABILITY: f64 = 1e-15;

/// Monte Carlo samples per independently seeded batch.
const MC_BATCH: usize = 4096;

const INFO_TOLERANCE: f64 = 1e-10;
const FRAC_1_SQRT_2: f64 = std::f64::consts::FRAC_1_SQRT_2;

/// The state `a|0⟩ + b|1⟩` to be teleported.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct InfoQubit {
    pub a: Complex64,
    pub b: Complex64,
}

impl InfoQubit {
    pub fn new(a: Complex64, b: Complex64) -> Result<Self> {
        let norm = (a.norm_sqr() + b.norm_sqr()).sqrt();
        if !norm.is_finite() || (norm - 1.0).abs() > INFO_TOLERANCE {
            return Err(Error::NotNormalized { norm });
        }
        Ok(Self { a: a / norm, b: b / norm })
    }

    pub fn from_real(a: f64, b: f64) -> Result<Self> {
        Self::new(Complex64::new(a, 0.0), Complex64::new(b, 0.0))
    }

    pub fn as_state(&self) -> StateVector {
        StateVector::new(1, vec![self.a, self.b]).expect("info qubit is normalized")
    }
}

/// Bob's correction for each outcome: `U†` first, then the Pauli part.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Correction {
    #[serde(rename = "U†")]
    Identity,
    #[serde(rename = "σzU†")]
    Z,
    #[serde(rename = "σxU†")]
    X,
    #[serde(rename = "σxσzU†")]
    XZ,
}

impl Correction {
    pub fn for_outcome(r: usize) -> Self {
        match r {
            0 => Self::Identity,
            1 => Self::Z,
            2 => Self::X,
            3 => Self::XZ,
            _ => panic!("outcome index {r} out of range"),
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            Self::Identity => "U†",
            Self::Z => "σzU†",
            Self::X => "σxU†",
            Self::XZ => "σxσzU†",
        }
    }

    /// Pauli factors in application order.
    fn paulis(&self) -> &'static [Qubit2x2] {
        const Z: Qubit2x2 = Qubit2x2::pauli_z();
        const X: Qubit2x2 = Qubit2x2::pauli_x();
        match self {
            Self::Identity => &[],
            Self::Z => &[Z],
            Self::X => &[X],
            Self::XZ => &[Z, X],
        }
    }

    /// The full single-qubit operator given the receiver rotation `u`.
    pub fn operator(&self, u: &Qubit2x2) -> Qubit2x2 {
        self.paulis().iter().fold(u.adjoint(), |acc, p| p.mul(&acc))
    }

    /// Applies the correction to Bob's qubit step by step.
    pub fn apply(&self, bob: &StateVector, u: &Qubit2x2) -> Result<StateVector> {
        let mut s = bob.apply_one_qubit(0, &u.adjoint())?;
        for p in self.paulis() {
            s = s.apply_one_qubit(0, p)?;
        }
        Ok(s)
    }
}

impl fmt::Display for Correction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Alice's four projectors over the information qubit (most significant)
/// followed by her resource qubits in register order.
#[derive(Clone, Debug, PartialEq)]
pub struct MeasurementBasis {
    pub states: [StateVector; 4],
}

impl MeasurementBasis {
    /// Largest deviation of the Gram matrix from the identity.
    pub fn gram_deviation(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for (i, x) in self.states.iter().enumerate() {
            for (j, y) in self.states.iter().enumerate() {
                let g = inner_raw(x.amps(), y.amps());
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((g - target).norm());
            }
        }
        worst
    }
}

pub fn measurement_basis(form: &SchmidtForm) -> MeasurementBasis {
    let n = form.n;
    let build = |first: &StateVector, second: &StateVector, sign: f64| {
        let amps = first
            .amps()
            .iter()
            .map(|x| x * FRAC_1_SQRT_2)
            .chain(second.amps().iter().map(|x| x * (sign * FRAC_1_SQRT_2)))
            .collect();
        StateVector::new(n, amps).expect("orthonormal branches give a unit vector")
    };
    let (p0, p1) = (&form.psibar0, &form.psibar1);
    MeasurementBasis {
        states: [
            build(p0, p1, 1.0),
            build(p0, p1, -1.0),
            build(p1, p0, 1.0),
            build(p1, p0, -1.0),
        ],
    }
}

/// One of Alice's four outcomes and its consequence for Bob.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OutcomeRecord {
    pub r: usize,
    pub prob: f64,
    /// Bob's collapsed qubit before correction; `None` for an unreachable outcome.
    #[serde(skip)]
    pub bob_state: Option<StateVector>,
    pub correction: Correction,
    /// Zero for an unreachable outcome.
    pub fidelity: f64,
}

/// `(P(r), F(r))` for every outcome from the closed-form expressions.
pub(crate) fn outcome_weights(a2: f64, b2: f64, abar: f64, bbar: f64) -> [(f64, f64); 4] {
    let p_even = 0.5 * (a2 * abar * abar + b2 * bbar * bbar);
    let p_odd = 0.5 * (b2 * abar * abar + a2 * bbar * bbar);
    let fid = |p: f64, amp: f64| {
        if p > UNREACHABLE_PROBABILITY {
            (amp * amp / (2.0 * p)).min(1.0)
        } else {
            0.0
        }
    };
    let f_even = fid(p_even, a2 * abar + b2 * bbar);
    let f_odd = fid(p_odd, b2 * abar + a2 * bbar);
    [(p_even, f_even), (p_even, f_even), (p_odd, f_odd), (p_odd, f_odd)]
}

/// Closed-form outcome table for teleporting `info` through `form`.
pub fn outcome_table(info: &InfoQubit, form: &SchmidtForm) -> [OutcomeRecord; 4] {
    let (a, b) = (info.a, info.b);
    let (abar, bbar) = (form.abar, form.bbar);
    let weights = outcome_weights(a.norm_sqr(), b.norm_sqr(), abar, bbar);
    let u = form.rotation();
    // Coefficients of |0̄⟩, |1̄⟩ in Bob's unnormalized state.
    let rotated = [
        [a * abar, b * bbar],
        [a * abar, -b * bbar],
        [b * abar, a * bbar],
        [b * abar, -a * bbar],
    ];
    std::array::from_fn(|r| {
        let (prob, fidelity) = weights[r];
        let bob_state = (prob > UNREACHABLE_PROBABILITY).then(|| {
            let v = u.apply(rotated[r]);
            let s = (2.0 * prob).sqrt();
            StateVector::new(1, vec![v[0] / s, v[1] / s]).expect("bob state is normalized")
        });
        OutcomeRecord {
            r,
            prob,
            bob_state,
            correction: Correction::for_outcome(r),
            fidelity,
        }
    })
}

/// A sampled run of the protocol.
#[derive(Clone, Debug, PartialEq)]
pub struct TeleportRun {
    pub outcome: OutcomeRecord,
    /// Born probabilities of all four outcomes obtained by projecting the joint state.
    pub probabilities: [f64; 4],
    /// Bob's qubit after the correction.
    pub final_state: StateVector,
}

/// Precomputed Schmidt form and measurement basis for repeated runs on one
/// resource.
#[derive(Clone, Debug)]
pub struct Teleporter {
    resource: StateVector,
    bob: usize,
    form: SchmidtForm,
    basis: MeasurementBasis,
}

impl Teleporter {
    pub fn new(resource: &StateVector, bob: usize) -> Result<Self> {
        let form = schmidt_form(resource, bob)?;
        let basis = measurement_basis(&form);
        Ok(Self {
            resource: resource.clone(),
            bob,
            form,
            basis,
        })
    }

    pub fn form(&self) -> &SchmidtForm {
        &self.form
    }

    pub fn basis(&self) -> &MeasurementBasis {
        &self.basis
    }

    /// Bob's unnormalized qubit for each of Alice's outcomes, obtained by
    /// projecting `info ⊗ resource` onto the measurement basis.
    pub fn project(&self, info: &InfoQubit) -> Result<[[Complex64; 2]; 4]> {
        let joint = info.as_state().tensor(&self.resource)?;
        // Receiver sits at position bob + 1 after the information qubit.
        let joint = joint.move_qubit_to_last(self.bob + 1)?;
        let amps = joint.amps();
        Ok(std::array::from_fn(|r| {
            let psi = self.basis.states[r].amps();
            let mut phi = [Complex64::new(0.0, 0.0); 2];
            for (m, p) in psi.iter().enumerate() {
                let pc = p.conj();
                phi[0] += pc * amps[2 * m];
                phi[1] += pc * amps[2 * m + 1];
            }
            phi
        }))
    }

    /// Runs the protocol assuming Alice observed outcome `r`.
    pub fn run_outcome(&self, info: &InfoQubit, r: usize) -> Result<TeleportRun> {
        if r > 3 {
            return Err(Error::OutOfRange {
                value: r as f64,
                lo: 0.0,
                hi: 3.0,
            });
        }
        let phis = self.project(info)?;
        let probabilities = phis.map(|phi| phi[0].norm_sqr() + phi[1].norm_sqr());
        self.finish(info, r, &phis, probabilities)
    }

    /// Samples Alice's outcome with the Born rule and runs the protocol.
    pub fn run<R: Rng + ?Sized>(&self, info: &InfoQubit, rng: &mut R) -> Result<TeleportRun> {
        let phis = self.project(info)?;
        let probabilities = phis.map(|phi| phi[0].norm_sqr() + phi[1].norm_sqr());
        let total: f64 = probabilities.iter().sum();
        let u: f64 = rng.random::<f64>() * total;
        let mut acc = 0.0;
        let mut r = 3;
        for (i, p) in probabilities.iter().enumerate() {
            acc += p;
            if u < acc {
                r = i;
                break;
            }
        }
        // Never report a zero-probability outcome because of rounding at the end.
        while probabilities[r] <= 0.0 {
            r -= 1;
        }
        self.finish(info, r, &phis, probabilities)
    }

    fn finish(
        &self,
        info: &InfoQubit,
        r: usize,
        phis: &[[Complex64; 2]; 4],
        probabilities: [f64; 4],
    ) -> Result<TeleportRun> {
        let prob = probabilities[r];
        let correction = Correction::for_outcome(r);
        if prob <= UNREACHABLE_PROBABILITY {
            return Err(Error::ConstraintViolated(format!(
                "outcome {r} has probability {prob:e}"
            )));
        }
        let s = prob.sqrt();
        let bob_state = StateVector::new(1, vec![phis[r][0] / s, phis[r][1] / s])?;
        let final_state = correction.apply(&bob_state, &self.form.rotation())?;
        let fidelity = info.as_state().inner(&final_state)?.norm_sqr();
        Ok(TeleportRun {
            outcome: OutcomeRecord {
                r,
                prob,
                bob_state: Some(bob_state),
                correction,
                fidelity,
            },
            probabilities,
            final_state,
        })
    }
}

/// Teleports `info` through `resource` with a seeded measurement outcome.
pub fn run_teleport(info: &InfoQubit, resource: &StateVector, bob: usize, seed: u64) -> Result<TeleportRun> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Teleporter::new(resource, bob)?.run(info, &mut rng)
}

/// Haar-random qubit from two independent standard complex Gaussians.
pub fn haar_random_info<R: Rng + ?Sized>(rng: &mut R) -> InfoQubit {
    loop {
        let g: [f64; 4] = std::array::from_fn(|_| rng.sample(StandardNormal));
        let a = Complex64::new(g[0], g[1]);
        let b = Complex64::new(g[2], g[3]);
        let norm = (a.norm_sqr() + b.norm_sqr()).sqrt();
        if norm > 1e-150 {
            return InfoQubit {
                a: a / norm,
                b: b / norm,
            };
        }
    }
}

pub fn haar_random_info_seeded(seed: u64) -> InfoQubit {
    haar_random_info(&mut ChaCha8Rng::seed_from_u64(seed))
}

/// Monte Carlo estimate with its standard error.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct McEstimate {
    pub mean: f64,
    pub std_error: f64,
    pub samples: usize,
}

/// Average over Haar-random information qubits of `Σ_r P(r)F(r)`.
///
/// Only the information state is sampled; the sum over outcomes is taken
/// from the outcome table. Batches of samples use independent ChaCha
/// streams of `seed` and are reduced in batch order, so the result does
/// not depend on thread scheduling.
pub fn average_fidelity_mc(resource: &StateVector, bob: usize, samples: usize, seed: u64) -> Result<McEstimate> {
    if samples == 0 {
        return Err(Error::ConstraintViolated("at least one sample is required".into()));
    }
    let form = schmidt_form(resource, bob)?;
    Ok(average_fidelity_for_form(&form, samples, seed))
}

pub fn average_fidelity_for_form(form: &SchmidtForm, samples: usize, seed: u64) -> McEstimate {
    let batches = samples.div_ceil(MC_BATCH);
    let partial: Vec<(f64, f64)> = (0..batches)
        .into_par_iter()
        .map(|batch| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(batch as u64);
            let count = MC_BATCH.min(samples - batch * MC_BATCH);
            let (mut sum, mut sum_sq) = (0.0, 0.0);
            for _ in 0..count {
                let info = haar_random_info(&mut rng);
                let v: f64 = outcome_weights(info.a.norm_sqr(), info.b.norm_sqr(), form.abar, form.bbar)
                    .iter()
                    .map(|(p, f)| p * f)
                    .sum();
                sum += v;
                sum_sq += v * v;
            }
            (sum, sum_sq)
        })
        .collect();
    let (sum, sum_sq) = partial
        .iter()
        .fold((0.0, 0.0), |(s, q), (bs, bq)| (s + bs, q + bq));
    let n = samples as f64;
    let mean = sum / n;
    let std_error = if samples > 1 {
        ((sum_sq - sum * mean) / (n - 1.0)).max(0.0).sqrt() / n.sqrt()
    } else {
        0.0
    };
    McEstimate {
        mean,
        std_error,
        samples,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn real(n: usize, entries: &[(usize, f64)]) -> StateVector {
        let mut a = vec![0.0; 1 << n];
        for &(k, v) in entries {
            a[k] = v;
        }
        StateVector::from_real(n, &a).unwrap()
    }

    fn ghz3() -> StateVector {
        real(3, &[(0, FRAC_1_SQRT_2), (7, FRAC_1_SQRT_2)])
    }

    #[test]
    fn info_validation() {
        assert!(InfoQubit::from_real(0.6, 0.8).is_ok());
        assert!(matches!(InfoQubit::from_real(0.6, 0.9), Err(Error::NotNormalized { .. })));
    }

    #[test]
    fn bell_resource_gives_bell_basis() {
        let bell = real(2, &[(0, FRAC_1_SQRT_2), (3, FRAC_1_SQRT_2)]);
        let basis = measurement_basis(&schmidt_form(&bell, 1).unwrap());
        let h = FRAC_1_SQRT_2;
        let expected = [
            real(2, &[(0b00, h), (0b11, h)]),
            real(2, &[(0b00, h), (0b11, -h)]),
            real(2, &[(0b01, h), (0b10, h)]),
            real(2, &[(0b01, h), (0b10, -h)]),
        ];
        for (got, want) in basis.states.iter().zip(&expected) {
            assert!(got.distance_up_to_phase(want).unwrap() < 1e-15);
        }
    }

    #[test]
    fn ghz_basis_and_w_gram() {
        let basis = measurement_basis(&schmidt_form(&ghz3(), 2).unwrap());
        let want = real(3, &[(0b000, FRAC_1_SQRT_2), (0b111, FRAC_1_SQRT_2)]);
        assert!(basis.states[0].distance_up_to_phase(&want).unwrap() < 1e-15);

        let s = 1.0 / 3f64.sqrt();
        let w = real(3, &[(0b100, s), (0b010, s), (0b001, s)]);
        let basis = measurement_basis(&schmidt_form(&w, 2).unwrap());
        assert!(basis.gram_deviation() < 1e-10);
    }

    #[test]
    fn ghz_table_is_perfect() {
        let info = InfoQubit::from_real(1.0, 0.0).unwrap();
        let table = outcome_table(&info, &schmidt_form(&ghz3(), 2).unwrap());
        for rec in &table {
            assert_abs_diff_eq!(rec.prob, 0.25, epsilon = 1e-15);
            assert_abs_diff_eq!(rec.fidelity, 1.0, epsilon = 1e-15);
        }
        let labels: Vec<_> = table.iter().map(|r| r.correction.label()).collect();
        assert_eq!(labels, ["U†", "σzU†", "σxU†", "σxσzU†"]);
    }

    #[test]
    fn two_qubit_partial_resource() {
        // cos(π/6)|00⟩ + sin(π/6)|11⟩, receiver = second qubit, info |+⟩.
        // F(0) = (Ā + B̄)²/(Ā² + B̄²) with Ā = cos(π/6), B̄ = sin(π/6):
        // (1 + sin(π/3))/2.
        let (c, s) = ((std::f64::consts::PI / 6.0).cos(), (std::f64::consts::PI / 6.0).sin());
        let resource = real(2, &[(0, c), (3, s)]);
        let info = InfoQubit::from_real(FRAC_1_SQRT_2, FRAC_1_SQRT_2).unwrap();
        let table = outcome_table(&info, &schmidt_form(&resource, 1).unwrap());
        let expected = (1.0 + (std::f64::consts::PI / 3.0).sin()) / 2.0;
        assert_abs_diff_eq!(expected, 0.933_012_701_892_219_3, epsilon = 1e-15);
        assert_abs_diff_eq!(table[0].fidelity, expected, epsilon = 1e-12);
        assert_abs_diff_eq!(table[1].fidelity, expected, epsilon = 1e-12);

        let sim = Teleporter::new(&resource, 1).unwrap();
        for (r, rec) in table.iter().enumerate() {
            let run = sim.run_outcome(&info, r).unwrap();
            assert_abs_diff_eq!(run.outcome.fidelity, rec.fidelity, epsilon = 1e-12);
            assert_abs_diff_eq!(run.probabilities[r], rec.prob, epsilon = 1e-12);
        }
    }

    #[test]
    fn basis_input_probabilities() {
        let s = 1.0 / 3f64.sqrt();
        let w = real(3, &[(0b100, s), (0b010, s), (0b001, s)]);
        let form = schmidt_form(&w, 2).unwrap();
        let info = InfoQubit::from_real(1.0, 0.0).unwrap();
        let table = outcome_table(&info, &form);
        assert_abs_diff_eq!(table[0].prob, form.abar * form.abar / 2.0, epsilon = 1e-15);
        assert_abs_diff_eq!(table[2].prob, form.bbar * form.bbar / 2.0, epsilon = 1e-15);
    }

    #[test]
    fn product_resource_run() {
        let resource = StateVector::basis(3, 0).unwrap();
        let info = InfoQubit::from_real(FRAC_1_SQRT_2, FRAC_1_SQRT_2).unwrap();
        let form = schmidt_form(&resource, 2).unwrap();
        let table = outcome_table(&info, &form);
        for rec in &table {
            assert_abs_diff_eq!(rec.prob, 0.25, epsilon = 1e-15);
        }
        for seed in 0..16 {
            let run = run_teleport(&info, &resource, 2, seed).unwrap();
            let r = run.outcome.r;
            assert_abs_diff_eq!(run.outcome.fidelity, table[r].fidelity, epsilon = 1e-12);
            assert_abs_diff_eq!(run.outcome.fidelity, 0.5, epsilon = 1e-12);
        }
    }

    #[test]
    fn unreachable_outcomes() {
        let resource = StateVector::basis(3, 0).unwrap();
        let info = InfoQubit::from_real(1.0, 0.0).unwrap();
        let table = outcome_table(&info, &schmidt_form(&resource, 2).unwrap());
        assert_eq!(table[2].prob, 0.0);
        assert!(table[2].bob_state.is_none());
        assert_eq!(table[2].fidelity, 0.0);
        let sim = Teleporter::new(&resource, 2).unwrap();
        assert!(sim.run_outcome(&info, 2).is_err());
        for seed in 0..32 {
            let run = run_teleport(&info, &resource, 2, seed).unwrap();
            assert!(run.outcome.r < 2);
        }
    }

    #[test]
    fn seeded_runs_repeat() {
        let info = haar_random_info_seeded(3);
        let s = 1.0 / 3f64.sqrt();
        let w = real(3, &[(0b100, s), (0b010, s), (0b001, s)]);
        let x = run_teleport(&info, &w, 2, 42).unwrap();
        let y = run_teleport(&info, &w, 2, 42).unwrap();
        assert_eq!(x, y);
    }

    #[test]
    fn correction_operator_matches_stepwise() {
        let u = Qubit2x2::basis_rotation(Complex64::new(0.3, -1.2));
        let bob = StateVector::new(1, vec![Complex64::new(0.6, 0.0), Complex64::new(0.0, 0.8)]).unwrap();
        for r in 0..4 {
            let c = Correction::for_outcome(r);
            let stepwise = c.apply(&bob, &u).unwrap();
            let whole = bob.apply_one_qubit(0, &c.operator(&u)).unwrap();
            assert!(stepwise.distance_up_to_phase(&whole).unwrap() < 1e-15);
        }
    }

    #[test]
    fn mc_estimates() {
        let est = average_fidelity_mc(&ghz3(), 2, 100_000, 0).unwrap();
        assert_abs_diff_eq!(est.mean, 1.0, epsilon = 1e-12);
        assert!(est.std_error < 1e-9);

        let est = average_fidelity_mc(&StateVector::basis(3, 0).unwrap(), 2, 100_000, 0).unwrap();
        assert_abs_diff_eq!(est.mean, 2.0 / 3.0, epsilon = 2e-3);

        assert!(average_fidelity_mc(&ghz3(), 2, 0, 0).is_err());
        let one = average_fidelity_mc(&ghz3(), 2, 1, 0).unwrap();
        assert_eq!(one.std_error, 0.0);
    }

    #[test]
    fn mc_is_deterministic() {
        let s = 1.0 / 3f64.sqrt();
        let w = real(3, &[(0b100, s), (0b010, s), (0b001, s)]);
        let x = average_fidelity_mc(&w, 2, 20_000, 9).unwrap();
        let y = average_fidelity_mc(&w, 2, 20_000, 9).unwrap();
        assert_eq!(x, y);
        let z = average_fidelity_mc(&w, 2, 20_000, 10).unwrap();
        assert_ne!(x.mean, z.mean);
    }
}
