//! Perfect-teleportation criteria.
//!
//! A resource teleports perfectly iff the concurrence across the receiver
//! cut is one, i.e. iff the two receiver branches carry equal weight
//! (`A = B = 1/√2`) and are orthogonal (`⟨ψ1|ψ0⟩ = 0`). For three qubits
//! written as
//!
//! ```text
//! A|000⟩ + B|010⟩ + C|100⟩ + D|110⟩ + E|001⟩ + F|011⟩ + G|101⟩ + H|111⟩
//! ```
//!
//! with the receiver last, this reads
//!
//! ```text
//! |A|²+|B|²+|C|²+|D|² − |E|²−|F|²−|G|²−|H|² = 0
//! A*E + B*F + C*G + D*H = 0
//! ```
//!
//! The second sum is the unnormalized branch overlap; only its magnitude is
//! used, so the conjugation convention does not matter.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::families;
use crate::schmidt::{concurrence, split_by_receiver};
use crate::statevec::StateVector;

/// Default cutoff for verdicts.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

const PARAM_NORM_TOLERANCE: f64 = 1e-9;

/// Residuals of the two perfect-teleportation conditions.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PerfectVerdict {
    pub residual_balance: f64,
    pub residual_overlap: f64,
    pub tolerance: f64,
    pub verdict: bool,
}

impl PerfectVerdict {
    fn new(residual_balance: f64, residual_overlap: f64, tolerance: f64) -> Self {
        Self {
            residual_balance,
            residual_overlap,
            tolerance,
            verdict: residual_balance < tolerance && residual_overlap < tolerance,
        }
    }
}

/// General criterion: `|A² − B²|` and `|K|` from the receiver split.
pub fn check_general(resource: &StateVector, bob: usize, tol: f64) -> Result<PerfectVerdict> {
    let split = split_by_receiver(resource, bob)?;
    let v = PerfectVerdict::new((split.a * split.a - split.b * split.b).abs(), split.k.norm(), tol);
    // With both residuals below tol, 1 − C is of order tol².
    if v.verdict && tol <= 0.5 {
        let c = concurrence(resource, bob)?;
        if 1.0 - c > tol + 1e-12 {
            return Err(Error::InvariantViolation(format!(
                "perfect verdict with concurrence {c}"
            )));
        }
    }
    Ok(v)
}

/// Amplitudes `A..H` of a three-qubit state with the receiver moved last.
pub fn labeled_amplitudes(resource: &StateVector, bob: usize) -> Result<[Complex64; 8]> {
    if resource.num_qubits() != 3 {
        return Err(Error::WrongQubitCount {
            expected: 3,
            found: resource.num_qubits(),
        });
    }
    let s = resource.move_qubit_to_last(bob)?;
    let x = |k: usize| s.amp(k);
    Ok([
        x(0b000),
        x(0b010),
        x(0b100),
        x(0b110),
        x(0b001),
        x(0b011),
        x(0b101),
        x(0b111),
    ])
}

/// Three-qubit amplitude criterion.
///
/// Its overlap residual is `AB·|K|`, while [`check_general`] reports `|K|`,
/// so the two verdicts can only differ when the balance holds and
/// `AB·|K| < tol ≤ |K|`. Any other disagreement is an internal error.
pub fn check_3qubit(resource: &StateVector, bob: usize, tol: f64) -> Result<PerfectVerdict> {
    let [a, b, c, d, e, f, g, h] = labeled_amplitudes(resource, bob)?;
    let zero_block = a.norm_sqr() + b.norm_sqr() + c.norm_sqr() + d.norm_sqr();
    let one_block = e.norm_sqr() + f.norm_sqr() + g.norm_sqr() + h.norm_sqr();
    let overlap = a.conj() * e + b.conj() * f + c.conj() * g + d.conj() * h;
    let v = PerfectVerdict::new((zero_block - one_block).abs(), overlap.norm(), tol);

    let general = check_general(resource, bob, tol)?;
    let boundary = general.residual_balance < tol && v.residual_overlap < tol && general.residual_overlap >= tol;
    if v.verdict != general.verdict && !boundary {
        return Err(Error::InvariantViolation(format!(
            "amplitude criterion {v:?} disagrees with general criterion {general:?}"
        )));
    }
    Ok(v)
}

/// The two perfect-teleportation subfamilies of the five-term canonical form
/// `κ0e^{iθ}|000⟩ + κ1|001⟩ + κ2|010⟩ + κ3|100⟩ + κ4|111⟩`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ZhaForm {
    /// `κ1 = 0`: `κ0e^{iθ}|000⟩ + κ2|010⟩ + √(1/2−κ0²−κ2²)|100⟩ + |111⟩/√2`.
    Kappa1Zero,
    /// `κ0 = 0`: `κ1|001⟩ + κ2|010⟩ + √(1/2−κ2²)|100⟩ + √(1/2−κ1²)|111⟩`.
    Kappa0Zero,
}

impl ZhaForm {
    /// Basis kets (receiver last) that may carry amplitude in this form.
    pub fn support(&self) -> [usize; 4] {
        match self {
            Self::Kappa1Zero => [0b000, 0b010, 0b100, 0b111],
            Self::Kappa0Zero => [0b001, 0b010, 0b100, 0b111],
        }
    }

    pub fn all() -> [ZhaForm; 2] {
        [Self::Kappa1Zero, Self::Kappa0Zero]
    }
}

/// Whether `resource`, written with `bob` as the last qubit, has amplitude
/// only on the kets allowed by `form`.
pub fn matches_zha_pattern(resource: &StateVector, bob: usize, form: ZhaForm, tol: f64) -> Result<bool> {
    if resource.num_qubits() != 3 {
        return Err(Error::WrongQubitCount {
            expected: 3,
            found: resource.num_qubits(),
        });
    }
    let s = resource.move_qubit_to_last(bob)?;
    let support = form.support();
    Ok(s
        .amps()
        .iter()
        .enumerate()
        .all(|(k, a)| support.contains(&k) || a.norm() < tol))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ZhaReport {
    pub kappa_product: f64,
    /// `κ0κ1 < tol`.
    pub zha_condition: bool,
    /// Forms whose vanishing coefficient is zero within tolerance.
    pub forms: Vec<ZhaForm>,
    /// Whether a matched form also has its fixed coefficients.
    pub fixed_coefficients: bool,
    pub verdict: bool,
    /// Amplitude criterion applied to the built state, receiver = last qubit.
    pub state_check: PerfectVerdict,
}

/// Classifies canonical five-term parameters `κ0..κ4`, `θ`.
pub fn classify_zha(kappa: [f64; 5], theta: f64, tol: f64) -> Result<ZhaReport> {
    let state = families::acin_canonical(kappa, theta)?;
    let [k0, k1, k2, k3, k4] = kappa;
    let kappa_product = k0 * k1;
    let mut forms = Vec::new();
    if k1 < tol {
        forms.push(ZhaForm::Kappa1Zero);
    }
    if k0 < tol {
        forms.push(ZhaForm::Kappa0Zero);
    }
    let close = |x: f64, target: f64| target >= -tol && (x - target.max(0.0).sqrt()).abs() < tol;
    let fixed_coefficients = forms.iter().any(|form| match form {
        ZhaForm::Kappa1Zero => close(k4, 0.5) && close(k3, 0.5 - k0 * k0 - k2 * k2),
        ZhaForm::Kappa0Zero => close(k3, 0.5 - k2 * k2) && close(k4, 0.5 - k1 * k1),
    });
    Ok(ZhaReport {
        kappa_product,
        zha_condition: kappa_product < tol,
        verdict: kappa_product < tol && fixed_coefficients,
        forms,
        fixed_coefficients,
        state_check: check_3qubit(&state, 2, tol)?,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AcinAltReport {
    pub df_product: f64,
    /// `d·f < tol`.
    pub df_condition: bool,
    /// `|bc + df·e^{−iθ}|`, the unnormalized branch overlap.
    pub residual_overlap: f64,
    /// `|a² + b² + d² − c² − f²|`.
    pub residual_balance: f64,
    /// Both residuals below tolerance.
    pub verdict: bool,
    /// General criterion applied to the built state, receiver = last qubit.
    pub state_check: PerfectVerdict,
}

/// Classifies parameters of `a|000⟩ + b|100⟩ + c|101⟩ + d|110⟩ + fe^{iθ}|111⟩`
/// with the last qubit as receiver.
///
/// The receiver branches are `a|00⟩ + b|10⟩ + d|11⟩` and `c|10⟩ + fe^{iθ}|11⟩`,
/// so their overlap is `bc + df·e^{−iθ}`. `d·f = 0` alone therefore does not
/// make them orthogonal unless `b·c = 0` as well; both are reported.
pub fn classify_acin_alt(params: [f64; 5], theta: f64, tol: f64) -> Result<AcinAltReport> {
    let state = families::acin_alternative(params, theta)?;
    let [a, b, c, d, f] = params;
    let overlap = Complex64::new(b * c, 0.0) + Complex64::from_polar(d * f, -theta);
    let report = AcinAltReport {
        df_product: d * f,
        df_condition: d * f < tol,
        residual_overlap: overlap.norm(),
        residual_balance: (a * a + b * b + d * d - c * c - f * f).abs(),
        verdict: overlap.norm() < tol && (a * a + b * b + d * d - c * c - f * f).abs() < tol,
        state_check: check_general(&state, 2, tol)?,
    };
    Ok(report)
}

pub(crate) fn check_params(values: &[f64]) -> Result<()> {
    if let Some(bad) = values.iter().find(|v| !(v.is_finite() && **v >= 0.0)) {
        return Err(Error::ConstraintViolated(format!(
            "canonical coefficients must be real and nonnegative, got {bad}"
        )));
    }
    let norm = values.iter().map(|v| v * v).sum::<f64>().sqrt();
    if (norm - 1.0).abs() > PARAM_NORM_TOLERANCE {
        return Err(Error::NotNormalized { norm });
    }
    Ok(())
}
