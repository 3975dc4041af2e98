//! Named resource families.
//!
//! Constructors take each family's own parameterization, including the
//! square-root terms fixed by normalization, and reject parameters that
//! violate the family's constraint instead of renormalizing. Phases are in
//! radians. Kets are written `|q0 q1 q2⟩` with the receiver last.

use std::fmt;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::conditions::check_params;
use crate::error::{Error, Result};
use crate::statevec::{check_qubit_count, StateVector};

const H: f64 = std::f64::consts::FRAC_1_SQRT_2;

/// Slack allowed on inequality constraints before they count as violated.
const CONSTRAINT_SLACK: f64 = 1e-12;

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

fn three_qubit(entries: &[(usize, Complex64)]) -> Result<StateVector> {
    let mut amps = vec![Complex64::new(0.0, 0.0); 8];
    for &(k, v) in entries {
        amps[k] = v;
    }
    StateVector::new(3, amps)
}

fn remaining(budget: f64, used: f64, what: &str) -> Result<f64> {
    let rest = budget - used;
    if rest < -CONSTRAINT_SLACK || !rest.is_finite() {
        return Err(Error::ConstraintViolated(format!("{what} (got {used} > {budget})")));
    }
    Ok(rest.max(0.0).sqrt())
}

fn in_unit_interval(x: f64, name: &str) -> Result<()> {
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::ConstraintViolated(format!("{name} must lie in [0, 1], got {x}")));
    }
    Ok(())
}

/// `(|0…0⟩ + |1…1⟩)/√2`.
pub fn ghz(n: usize) -> Result<StateVector> {
    if n < 2 {
        return Err(Error::ConstraintViolated(format!("GHZ needs n >= 2, got {n}")));
    }
    check_qubit_count(n)?;
    let mut amps = vec![Complex64::new(0.0, 0.0); 1 << n];
    amps[0] = c(H);
    amps[(1 << n) - 1] = c(H);
    StateVector::new(n, amps)
}

/// `B|100⟩ + C|010⟩ + E|001⟩`.
pub fn w_general(b: Complex64, cc: Complex64, e: Complex64) -> Result<StateVector> {
    three_qubit(&[(0b100, b), (0b010, cc), (0b001, e)])
}

/// `(|100⟩ + |010⟩ + |001⟩)/√3`.
pub fn w_standard() -> StateVector {
    let s = c(1.0 / 3f64.sqrt());
    w_general(s, s, s).expect("standard W is normalized")
}

/// Receiver `|1⟩` branch is the product `|11⟩`:
/// `[a|00⟩ + b|01⟩ + √(1/2−a²−b²)|10⟩]|0⟩ + |111⟩/√2`.
pub fn separable_branch(a: f64, b: f64) -> Result<StateVector> {
    let rest = remaining(0.5, a * a + b * b, "a² + b² <= 1/2")?;
    three_qubit(&[
        (0b000, c(a)),
        (0b010, c(b)),
        (0b100, c(rest)),
        (0b111, c(H)),
    ])
}

/// Receiver `|1⟩` branch in two-qubit Schmidt form `a|00⟩ + √(1−a²)|11⟩`,
/// `|0⟩` branch the most general state orthogonal to it:
/// `κ(√(1−a²)|00⟩ − a|11⟩) + b·e^{iβ}|01⟩ + √(1−κ²−b²)|10⟩`, both weighted `1/√2`.
pub fn entangled_branch(a: f64, b: f64, beta: f64, kappa: f64) -> Result<StateVector> {
    in_unit_interval(a, "a")?;
    in_unit_interval(b, "b")?;
    in_unit_interval(kappa, "kappa")?;
    let tail = remaining(1.0, kappa * kappa + b * b, "kappa² + b² <= 1")?;
    let a_comp = (1.0 - a * a).sqrt();
    three_qubit(&[
        (0b000, c(H * kappa * a_comp)),
        (0b110, c(-H * kappa * a)),
        (0b010, Complex64::from_polar(H * b, beta)),
        (0b100, c(H * tail)),
        (0b001, c(H * a)),
        (0b111, c(H * a_comp)),
    ])
}

/// Five-term canonical form `κ0e^{iθ}|000⟩ + κ1|001⟩ + κ2|010⟩ + κ3|100⟩ + κ4|111⟩`.
pub fn acin_canonical(kappa: [f64; 5], theta: f64) -> Result<StateVector> {
    check_params(&kappa)?;
    let [k0, k1, k2, k3, k4] = kappa;
    three_qubit(&[
        (0b000, Complex64::from_polar(k0, theta)),
        (0b001, c(k1)),
        (0b010, c(k2)),
        (0b100, c(k3)),
        (0b111, c(k4)),
    ])
}

/// Alternative five-term form `a|000⟩ + b|100⟩ + c|101⟩ + d|110⟩ + fe^{iθ}|111⟩`.
pub fn acin_alternative(params: [f64; 5], theta: f64) -> Result<StateVector> {
    check_params(&params)?;
    let [a, b, cc, d, f] = params;
    three_qubit(&[
        (0b000, c(a)),
        (0b100, c(b)),
        (0b101, c(cc)),
        (0b110, c(d)),
        (0b111, Complex64::from_polar(f, theta)),
    ])
}

/// `e^{iθ}|000⟩/√2 + a|011⟩ + b·e^{iδ}|101⟩ + √(1/2−a²−b²)·e^{iγ}|111⟩`.
///
/// Perfect for the last qubit as receiver, but its amplitude pattern fits
/// neither of the two κ0κ1 = 0 canonical subfamilies.
pub fn zha_counterexample(a: f64, b: f64, theta: f64, delta: f64, gamma: f64) -> Result<StateVector> {
    let rest = remaining(0.5, a * a + b * b, "a² + b² <= 1/2")?;
    three_qubit(&[
        (0b000, Complex64::from_polar(H, theta)),
        (0b011, c(a)),
        (0b101, Complex64::from_polar(b, delta)),
        (0b111, Complex64::from_polar(rest, gamma)),
    ])
}

/// Haar-random pure state: normalized vector of standard complex Gaussians.
pub fn random_state(n: usize, seed: u64) -> Result<StateVector> {
    random_state_with(n, &mut ChaCha8Rng::seed_from_u64(seed))
}

pub fn random_state_with<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<StateVector> {
    check_qubit_count(n)?;
    loop {
        let amps: Vec<Complex64> = (0..1usize << n)
            .map(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
            .collect();
        if let Some(s) = StateVector::normalize_from(n, amps, 1e-100) {
            return Ok(s);
        }
    }
}

/// A family name with its parameters, as accepted by the `gen` command.
#[derive(Clone, Debug, PartialEq)]
pub enum FamilySpec {
    Ghz { n: usize },
    W { b: Complex64, c: Complex64, e: Complex64 },
    SeparableBranch { a: f64, b: f64 },
    EntangledBranch { a: f64, b: f64, beta: f64, kappa: f64 },
    Acin { kappa: [f64; 5], theta: f64 },
    AcinAlt { params: [f64; 5], theta: f64 },
    ZhaCounterexample { a: f64, b: f64, theta: f64, delta: f64, gamma: f64 },
    Random { n: usize, seed: u64 },
}

/// `(family, parameter names, number of required leading parameters)`.
pub const FAMILY_TABLE: &[(&str, &[&str], usize)] = &[
    ("ghz", &["n"], 1),
    ("w", &["b", "c", "e"], 3),
    ("separable", &["a", "b"], 2),
    ("entangled", &["a", "b", "beta", "kappa"], 4),
    ("acin", &["k0", "k1", "k2", "k3", "k4", "theta"], 5),
    ("acin-alt", &["a", "b", "c", "d", "f", "theta"], 5),
    ("counterexample", &["a", "b", "theta", "delta", "gamma"], 2),
    ("random", &["n", "seed"], 1),
];

impl FamilySpec {
    pub fn name(&self) -> &'static str {
        match self {
            Self::Ghz { .. } => "ghz",
            Self::W { .. } => "w",
            Self::SeparableBranch { .. } => "separable",
            Self::EntangledBranch { .. } => "entangled",
            Self::Acin { .. } => "acin",
            Self::AcinAlt { .. } => "acin-alt",
            Self::ZhaCounterexample { .. } => "counterexample",
            Self::Random { .. } => "random",
        }
    }

    pub fn build(&self) -> Result<StateVector> {
        match *self {
            Self::Ghz { n } => ghz(n),
            Self::W { b, c, e } => w_general(b, c, e),
            Self::SeparableBranch { a, b } => separable_branch(a, b),
            Self::EntangledBranch { a, b, beta, kappa } => entangled_branch(a, b, beta, kappa),
            Self::Acin { kappa, theta } => acin_canonical(kappa, theta),
            Self::AcinAlt { params, theta } => acin_alternative(params, theta),
            Self::ZhaCounterexample { a, b, theta, delta, gamma } => zha_counterexample(a, b, theta, delta, gamma),
            Self::Random { n, seed } => random_state(n, seed),
        }
    }

    /// Parses `family` and its parameters. Each parameter is either
    /// positional or `name=value`; complex values are written `re,im`.
    /// Trailing phases and the random seed default to zero.
    pub fn parse(family: &str, args: &[String]) -> Result<Self> {
        let (name, names, required) = FAMILY_TABLE
            .iter()
            .find(|(n, _, _)| *n == family)
            .copied()
            .ok_or_else(|| {
                let known: Vec<_> = FAMILY_TABLE.iter().map(|f| f.0).collect();
                Error::ConstraintViolated(format!("unknown family {family:?}; known: {}", known.join(", ")))
            })?;

        let mut slots: Vec<Option<&str>> = vec![None; names.len()];
        let mut next = 0;
        for arg in args {
            let (idx, value) = match arg.split_once('=') {
                Some((key, value)) => {
                    let idx = names.iter().position(|n| *n == key).ok_or_else(|| {
                        Error::ConstraintViolated(format!("{name}: unknown parameter {key:?}"))
                    })?;
                    (idx, value)
                }
                None => {
                    while next < slots.len() && slots[next].is_some() {
                        next += 1;
                    }
                    (next, arg.as_str())
                }
            };
            if idx >= slots.len() {
                return Err(Error::ConstraintViolated(format!(
                    "{name}: too many parameters (expected {})",
                    names.join(", ")
                )));
            }
            slots[idx] = Some(value);
        }
        if let Some(missing) = (0..required).find(|&i| slots[i].is_none()) {
            return Err(Error::ConstraintViolated(format!(
                "{name}: missing parameter {}",
                names[missing]
            )));
        }

        let real = |i: usize| -> Result<f64> {
            match slots[i] {
                None => Ok(0.0),
                Some(v) => v
                    .trim()
                    .parse::<f64>()
                    .map_err(|_| Error::ConstraintViolated(format!("{name}: {} is not a number: {v:?}", names[i]))),
            }
        };
        let int = |i: usize| -> Result<u64> {
            match slots[i] {
                None => Ok(0),
                Some(v) => v
                    .trim()
                    .parse::<u64>()
                    .map_err(|_| Error::ConstraintViolated(format!("{name}: {} is not an integer: {v:?}", names[i]))),
            }
        };
        let complex = |i: usize| -> Result<Complex64> {
            let v = slots[i].unwrap_or("0");
            let bad = || Error::ConstraintViolated(format!("{name}: {} is not re or re,im: {v:?}", names[i]));
            match v.split_once(',') {
                Some((re, im)) => Ok(Complex64::new(
                    re.trim().parse().map_err(|_| bad())?,
                    im.trim().parse().map_err(|_| bad())?,
                )),
                None => Ok(c(v.trim().parse().map_err(|_| bad())?)),
            }
        };

        Ok(match name {
            "ghz" => Self::Ghz { n: int(0)? as usize },
            "w" => Self::W {
                b: complex(0)?,
                c: complex(1)?,
                e: complex(2)?,
            },
            "separable" => Self::SeparableBranch { a: real(0)?, b: real(1)? },
            "entangled" => Self::EntangledBranch {
                a: real(0)?,
                b: real(1)?,
                beta: real(2)?,
                kappa: real(3)?,
            },
            "acin" => Self::Acin {
                kappa: [real(0)?, real(1)?, real(2)?, real(3)?, real(4)?],
                theta: real(5)?,
            },
            "acin-alt" => Self::AcinAlt {
                params: [real(0)?, real(1)?, real(2)?, real(3)?, real(4)?],
                theta: real(5)?,
            },
            "counterexample" => Self::ZhaCounterexample {
                a: real(0)?,
                b: real(1)?,
                theta: real(2)?,
                delta: real(3)?,
                gamma: real(4)?,
            },
            "random" => Self::Random {
                n: int(0)? as usize,
                seed: int(1)?,
            },
            _ => unreachable!("family table and parser out of sync"),
        })
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Ghz { n } => write!(f, "ghz n={n}"),
            Self::W { b, c, e } => write!(f, "w b={b} c={c} e={e}"),
            Self::SeparableBranch { a, b } => write!(f, "separable a={a} b={b}"),
            Self::EntangledBranch { a, b, beta, kappa } => {
                write!(f, "entangled a={a} b={b} beta={beta} kappa={kappa}")
            }
            Self::Acin { kappa, theta } => write!(f, "acin kappa={kappa:?} theta={theta}"),
            Self::AcinAlt { params, theta } => write!(f, "acin-alt params={params:?} theta={theta}"),
            Self::ZhaCounterexample { a, b, theta, delta, gamma } => {
                write!(f, "counterexample a={a} b={b} theta={theta} delta={delta} gamma={gamma}")
            }
            Self::Random { n, seed } => write!(f, "random n={n} seed={seed}"),
        }
    }
}
