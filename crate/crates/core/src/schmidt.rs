//! Schmidt form of a resource across the receiver cut.
//!
//! The resource is first written as `A|ψ0⟩|0⟩ + B|ψ1⟩|1⟩` with the receiver
//! qubit last. The branches need not be orthogonal. Rotating the receiver
//! basis to `|0̄⟩ = U|0⟩`, `|1̄⟩ = U|1⟩` with
//!
//! ```text
//! U = (1+|z|²)^(-1/2) [[1, -z*], [z, 1]]
//! ```
//!
//! gives `Ā|ψ̄0⟩|0̄⟩ + B̄|ψ̄1⟩|1̄⟩`, and the new branches are orthogonal exactly
//! when `z` solves
//!
//! ```text
//! AB·K·z² + (A² − B²)·z − AB·K* = 0,    K = ⟨ψ1|ψ0⟩.
//! ```
//!
//! The `AB` factors on the outer coefficients are required: without them the
//! roots do not make the branches orthogonal unless `AB = 1`. The rotated
//! weights are
//!
//! ```text
//! Ā² = (A² + B²|z|² + AB(Kz + K*z*)) / (1+|z|²)
//! B̄² = (B² + A²|z|² − AB(Kz + K*z*)) / (1+|z|²)
//! ```
//!
//! so that `Ā² + B̄² = 1`, and the concurrence across the cut is `C = 2ĀB̄`.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::statevec::{inner_raw, invert_permutation, move_to_last_permutation, Qubit2x2, StateVector};

/// Branch weights below this are treated as absent.
pub const BRANCH_THRESHOLD: f64 = 1e-12;

/// Ties between the two rotation roots are broken within this margin.
const ROOT_TIE: f64 = 1e-12;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// `A|ψ0⟩|0⟩ + B|ψ1⟩|1⟩` with the receiver qubit factored out.
#[derive(Clone, Debug, PartialEq)]
pub struct BipartiteSplit {
    pub a: f64,
    pub b: f64,
    pub psi0: Option<StateVector>,
    pub psi1: Option<StateVector>,
    /// `⟨ψ1|ψ0⟩`, zero when either branch is absent.
    pub k: Complex64,
    /// Receiver qubit index in the original register.
    pub bob: usize,
    /// Qubit count of the original register.
    pub n: usize,
}

impl BipartiteSplit {
    fn rest_qubits(&self) -> usize {
        self.n - 1
    }

    fn branch_or_zero(&self, which: usize) -> Vec<Complex64> {
        let branch = if which == 0 { &self.psi0 } else { &self.psi1 };
        match branch {
            Some(s) => s.amps().to_vec(),
            None => vec![ZERO; 1 << self.rest_qubits()],
        }
    }
}

/// Orthogonal two-branch form `Ā|ψ̄0⟩|0̄⟩ + B̄|ψ̄1⟩|1̄⟩`.
#[derive(Clone, Debug, PartialEq)]
pub struct SchmidtForm {
    pub abar: f64,
    pub bbar: f64,
    pub z: Complex64,
    pub psibar0: StateVector,
    pub psibar1: StateVector,
    pub concurrence: f64,
    pub bob: usize,
    pub n: usize,
}

/// Flat summary of a [`SchmidtForm`] for reports.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SchmidtSummary {
    pub abar: f64,
    pub bbar: f64,
    pub z: [f64; 2],
    pub concurrence: f64,
    pub maf: f64,
}

impl SchmidtForm {
    /// Builds the rotated form for a given `z`. Any `z` is accepted; the
    /// branches are orthogonal only for a root of the rotation quadratic.
    pub fn from_split(split: &BipartiteSplit, z: Complex64) -> SchmidtForm {
        let rest = split.rest_qubits();
        let scale = 1.0 / (1.0 + z.norm_sqr()).sqrt();
        let psi0 = split.branch_or_zero(0);
        let psi1 = split.branch_or_zero(1);
        let zc = z.conj();
        let branch0: Vec<Complex64> = psi0
            .iter()
            .zip(&psi1)
            .map(|(p0, p1)| (p0 * split.a + p1 * split.b * zc) * scale)
            .collect();
        let branch1: Vec<Complex64> = psi0
            .iter()
            .zip(&psi1)
            .map(|(p0, p1)| (-p0 * split.a * z + p1 * split.b) * scale)
            .collect();

        let (abar, psibar0, bbar, psibar1) =
            match StateVector::normalize_from(rest, branch0.clone(), BRANCH_THRESHOLD) {
                Some(psibar0) => {
                    let abar = crate::statevec::norm_of(&branch0);
                    let (bbar, psibar1) = orthogonal_part(&branch1, &psibar0);
                    (abar, psibar0, bbar, psibar1)
                }
                None => {
                    let psibar1 = StateVector::normalize_from(rest, branch1.clone(), 0.0)
                        .expect("a normalized state has a nonzero branch");
                    let bbar = crate::statevec::norm_of(&branch1);
                    let (abar, psibar0) = orthogonal_part(&branch0, &psibar1);
                    (abar, psibar0, bbar, psibar1)
                }
            };

        SchmidtForm {
            abar,
            bbar,
            z,
            concurrence: (2.0 * abar * bbar).min(1.0),
            psibar0,
            psibar1,
            bob: split.bob,
            n: split.n,
        }
    }

    /// The receiver basis change `U` defined by `z`.
    pub fn rotation(&self) -> Qubit2x2 {
        Qubit2x2::basis_rotation(self.z)
    }

    /// `|⟨ψ̄1|ψ̄0⟩|`.
    pub fn branch_overlap(&self) -> f64 {
        inner_raw(self.psibar1.amps(), self.psibar0.amps()).norm()
    }

    /// Reassembles `Ā|ψ̄0⟩|0̄⟩ + B̄|ψ̄1⟩|1̄⟩` in the original qubit order.
    pub fn reconstruct(&self) -> Result<StateVector> {
        let u = self.rotation();
        let bar0 = u.apply([Complex64::new(1.0, 0.0), ZERO]);
        let bar1 = u.apply([ZERO, Complex64::new(1.0, 0.0)]);
        let mut amps = Vec::with_capacity(1 << self.n);
        for (p0, p1) in self.psibar0.amps().iter().zip(self.psibar1.amps()) {
            for bit in 0..2 {
                amps.push(p0 * self.abar * bar0[bit] + p1 * self.bbar * bar1[bit]);
            }
        }
        let last = StateVector::new(self.n, amps)?;
        last.permute_qubits(&invert_permutation(&move_to_last_permutation(self.n, self.bob))?)
    }

    pub fn summary(&self) -> SchmidtSummary {
        SchmidtSummary {
            abar: self.abar,
            bbar: self.bbar,
            z: [self.z.re, self.z.im],
            concurrence: self.concurrence,
            maf: (2.0 + self.concurrence) / 3.0,
        }
    }
}

/// Removes the `unit` component from `v` and returns the remaining norm and
/// direction; falls back to a filler vector orthogonal to `unit` when
/// nothing remains.
fn orthogonal_part(v: &[Complex64], unit: &StateVector) -> (f64, StateVector) {
    let proj = inner_raw(unit.amps(), v);
    let rest: Vec<Complex64> = v.iter().zip(unit.amps()).map(|(x, u)| x - u * proj).collect();
    let norm = crate::statevec::norm_of(&rest);
    match StateVector::normalize_from(unit.num_qubits(), rest, BRANCH_THRESHOLD) {
        Some(dir) => (norm, dir),
        None => (norm, filler_orthogonal_to(unit)),
    }
}

/// A unit vector orthogonal to `unit`, built from the computational basis
/// vector with the smallest overlap.
fn filler_orthogonal_to(unit: &StateVector) -> StateVector {
    let (k, _) = unit
        .amps()
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.norm_sqr().total_cmp(&b.1.norm_sqr()))
        .expect("non-empty state");
    let overlap = unit.amp(k).conj();
    let mut v: Vec<Complex64> = unit.amps().iter().map(|u| -u * overlap).collect();
    v[k] += Complex64::new(1.0, 0.0);
    StateVector::normalize_from(unit.num_qubits(), v, 0.0).expect("residual norm is at least 1/√2")
}

/// Separates the receiver qubit `bob` from the rest.
pub fn split_by_receiver(sv: &StateVector, bob: usize) -> Result<BipartiteSplit> {
    let n = sv.num_qubits();
    if n < 2 {
        return Err(Error::ConstraintViolated(
            "a resource needs at least two qubits".into(),
        ));
    }
    let moved = sv.move_qubit_to_last(bob)?;
    let amps = moved.amps();
    let even: Vec<Complex64> = amps.iter().step_by(2).copied().collect();
    let odd: Vec<Complex64> = amps.iter().skip(1).step_by(2).copied().collect();
    let a = crate::statevec::norm_of(&even);
    let b = crate::statevec::norm_of(&odd);
    let psi0 = StateVector::normalize_from(n - 1, even, BRANCH_THRESHOLD);
    let psi1 = StateVector::normalize_from(n - 1, odd, BRANCH_THRESHOLD);
    let k = match (&psi0, &psi1) {
        (Some(p0), Some(p1)) => inner_raw(p1.amps(), p0.amps()),
        _ => ZERO,
    };
    let (a, b) = match (&psi0, &psi1) {
        (Some(_), None) => (1.0, 0.0),
        (None, Some(_)) => (0.0, 1.0),
        _ => (a, b),
    };
    Ok(BipartiteSplit {
        a,
        b,
        psi0,
        psi1,
        k,
        bob,
        n,
    })
}

/// Both roots of the rotation quadratic, or `None` when it degenerates
/// (either branch absent or `K ≈ 0`) and `z = 0` already gives orthogonal
/// branches.
pub fn rotation_roots(split: &BipartiteSplit) -> Option<[Complex64; 2]> {
    if split.psi0.is_none() || split.psi1.is_none() || split.k.norm() < BRANCH_THRESHOLD {
        return None;
    }
    let ab = split.a * split.b;
    let lead = split.k * ab;
    let mid = split.a * split.a - split.b * split.b;
    let tail = -split.k.conj() * ab;
    // The discriminant (A²−B²)² + 4A²B²|K|² is real and nonnegative.
    let disc = (mid * mid + 4.0 * ab * ab * split.k.norm_sqr()).sqrt();
    let q = -0.5 * (mid + if mid >= 0.0 { disc } else { -disc });
    let q = Complex64::new(q, 0.0);
    Some([q / lead, tail / q])
}

/// Closed-form rotated weights `(Ā, B̄)` for a given `z`.
pub fn rotated_weights(split: &BipartiteSplit, z: Complex64) -> (f64, f64) {
    let (a, b) = (split.a, split.b);
    let cross = a * b * 2.0 * (split.k * z).re;
    let denom = 1.0 + z.norm_sqr();
    let abar2 = (a * a + b * b * z.norm_sqr() + cross) / denom;
    let bbar2 = (b * b + a * a * z.norm_sqr() - cross) / denom;
    (abar2.max(0.0).sqrt(), bbar2.max(0.0).sqrt())
}

/// The rotation parameter that makes the branches orthogonal.
///
/// Of the two roots, the one giving `Ā ≥ B̄` is returned; exact ties prefer a
/// nonnegative real part, then a nonnegative imaginary part. When the
/// quadratic degenerates the answer is `z = 0`, in which case `Ā < B̄` is
/// possible (no finite `z` swaps the weights).
pub fn solve_rotation(split: &BipartiteSplit) -> Complex64 {
    let Some(roots) = rotation_roots(split) else {
        return ZERO;
    };
    let score = |z: &Complex64| rotated_weights(split, *z).0;
    let (s0, s1) = (score(&roots[0]), score(&roots[1]));
    if (s0 - s1).abs() > ROOT_TIE {
        return if s0 > s1 { roots[0] } else { roots[1] };
    }
    let rank = |z: &Complex64| (z.re >= 0.0, z.im >= 0.0);
    if rank(&roots[1]) > rank(&roots[0]) {
        roots[1]
    } else {
        roots[0]
    }
}

/// Schmidt form of `sv` across the cut that isolates qubit `bob`.
pub fn schmidt_form(sv: &StateVector, bob: usize) -> Result<SchmidtForm> {
    let split = split_by_receiver(sv, bob)?;
    let z = solve_rotation(&split);
    Ok(SchmidtForm::from_split(&split, z))
}

/// Concurrence `2ĀB̄` between qubit `bob` and the rest.
pub fn concurrence(sv: &StateVector, bob: usize) -> Result<f64> {
    Ok(schmidt_form(sv, bob)?.concurrence)
}

/// Independent route to the same number: `2√det ρ_bob`.
pub fn concurrence_oracle(sv: &StateVector, bob: usize) -> Result<f64> {
    Ok(sv.reduced_density_one(bob)?.pure_state_concurrence())
}

/// Maximal average fidelity `(2 + C) / 3`.
pub fn maf(c: f64) -> Result<f64> {
    if !(-1e-12..=1.0 + 1e-12).contains(&c) {
        return Err(Error::OutOfRange {
            value: c,
            lo: 0.0,
            hi: 1.0,
        });
    }
    Ok((2.0 + c.clamp(0.0, 1.0)) / 3.0)
}
