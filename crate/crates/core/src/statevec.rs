//! Dense pure states of up to [`MAX_QUBITS`] qubits.
//!
//! Amplitude index `k` encodes the computational basis ket whose qubit 0 is
//! the most significant bit of `k` and whose qubit `n - 1` is the least
//! significant bit.

use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Largest supported register.
pub const MAX_QUBITS: usize = 12;

/// Allowed deviation of the norm from one when constructing a state.
pub const NORM_TOLERANCE: f64 = 1e-9;

/// Allowed deviation of `U†U` from the identity.
pub const UNITARY_TOLERANCE: f64 = 1e-12;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Normalized complex amplitude vector over `n` qubits.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    n: usize,
    amps: Vec<Complex64>,
}

impl StateVector {
    /// Validates and builds a state.
    ///
    /// A norm within [`NORM_TOLERANCE`] of one is silently corrected to
    /// exactly one; anything further away is rejected.
    pub fn new(n: usize, amps: Vec<Complex64>) -> Result<Self> {
        check_qubit_count(n)?;
        let expected = 1usize << n;
        if amps.len() != expected {
            return Err(Error::DimensionMismatch {
                expected,
                found: amps.len(),
            });
        }
        let norm = norm_of(&amps);
        if !norm.is_finite() || (norm - 1.0).abs() > NORM_TOLERANCE {
            return Err(Error::NotNormalized { norm });
        }
        let amps = amps.into_iter().map(|a| a / norm).collect();
        Ok(Self { n, amps })
    }

    /// Builds a state from real amplitudes.
    pub fn from_real(n: usize, amps: &[f64]) -> Result<Self> {
        Self::new(n, amps.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    /// Computational basis state `|index⟩`.
    pub fn basis(n: usize, index: usize) -> Result<Self> {
        check_qubit_count(n)?;
        let dim = 1usize << n;
        if index >= dim {
            return Err(Error::IndexOutOfRange { index, n: dim });
        }
        let mut amps = vec![ZERO; dim];
        amps[index] = ONE;
        Ok(Self { n, amps })
    }

    /// Scales an arbitrary nonzero vector to unit norm. Returns `None` when
    /// the norm is below `min_norm`.
    pub(crate) fn normalize_from(n: usize, amps: Vec<Complex64>, min_norm: f64) -> Option<Self> {
        debug_assert_eq!(amps.len(), 1 << n);
        let norm = norm_of(&amps);
        if norm.is_nan() || norm <= min_norm {
            return None;
        }
        Some(Self {
            n,
            amps: amps.into_iter().map(|a| a / norm).collect(),
        })
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amps(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn amp(&self, index: usize) -> Complex64 {
        self.amps[index]
    }

    pub fn norm(&self) -> f64 {
        norm_of(&self.amps)
    }

    /// `⟨self|other⟩`, conjugating `self`.
    pub fn inner(&self, other: &StateVector) -> Result<Complex64> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: other.n,
            });
        }
        Ok(inner_raw(&self.amps, &other.amps))
    }

    /// Applies a single-qubit unitary to qubit `q`.
    pub fn apply_one_qubit(&self, q: usize, op: &Qubit2x2) -> Result<StateVector> {
        self.check_index(q)?;
        let deviation = op.unitarity_deviation();
        if deviation > UNITARY_TOLERANCE {
            return Err(Error::NotUnitary { deviation });
        }
        let mask = 1usize << (self.n - 1 - q);
        let m = op.entries();
        let mut out = self.amps.clone();
        for k in (0..self.dim()).filter(|k| k & mask == 0) {
            let (a0, a1) = (self.amps[k], self.amps[k | mask]);
            out[k] = m[0][0] * a0 + m[0][1] * a1;
            out[k | mask] = m[1][0] * a0 + m[1][1] * a1;
        }
        Ok(StateVector { n: self.n, amps: out })
    }

    /// Relabels qubits: old qubit `i` becomes qubit `perm[i]`.
    ///
    /// Amplitudes are moved, never recomputed, so a permutation followed by
    /// its inverse reproduces the state bit for bit.
    pub fn permute_qubits(&self, perm: &[usize]) -> Result<StateVector> {
        validate_permutation(perm, self.n)?;
        let n = self.n;
        let mut out = vec![ZERO; self.dim()];
        for (k, &a) in self.amps.iter().enumerate() {
            let mut target = 0usize;
            for (old, &new) in perm.iter().enumerate() {
                if k >> (n - 1 - old) & 1 == 1 {
                    target |= 1 << (n - 1 - new);
                }
            }
            out[target] = a;
        }
        Ok(StateVector { n, amps: out })
    }

    /// Moves qubit `q` to the last (least significant) position, keeping the
    /// relative order of every other qubit.
    pub fn move_qubit_to_last(&self, q: usize) -> Result<StateVector> {
        self.check_index(q)?;
        self.permute_qubits(&move_to_last_permutation(self.n, q))
    }

    /// Reduced density matrix of qubit `q`, tracing out everything else.
    pub fn reduced_density_one(&self, q: usize) -> Result<DensityMatrix2> {
        self.check_index(q)?;
        let mask = 1usize << (self.n - 1 - q);
        let (mut r00, mut r11, mut r01) = (0.0, 0.0, ZERO);
        for k in (0..self.dim()).filter(|k| k & mask == 0) {
            let (a0, a1) = (self.amps[k], self.amps[k | mask]);
            r00 += a0.norm_sqr();
            r11 += a1.norm_sqr();
            r01 += a0 * a1.conj();
        }
        Ok(DensityMatrix2::new([
            [Complex64::new(r00, 0.0), r01],
            [r01.conj(), Complex64::new(r11, 0.0)],
        ]))
    }

    /// Tensor product `self ⊗ other`; `self` takes the more significant qubits.
    pub fn tensor(&self, other: &StateVector) -> Result<StateVector> {
        let n = self.n + other.n;
        if n > MAX_QUBITS {
            return Err(Error::TooManyQubits { n, max: MAX_QUBITS });
        }
        let amps = self
            .amps
            .iter()
            .flat_map(|&x| other.amps.iter().map(move |&y| x * y))
            .collect();
        StateVector::new(n, amps)
    }

    /// Largest amplitude difference after removing the global phase that best
    /// aligns `other` with `self`.
    pub fn distance_up_to_phase(&self, other: &StateVector) -> Result<f64> {
        let overlap = self.inner(other)?;
        let phase = if overlap.norm() > 0.0 {
            overlap.conj() / overlap.norm()
        } else {
            ONE
        };
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| (a - b * phase).norm())
            .fold(0.0, f64::max))
    }

    fn check_index(&self, q: usize) -> Result<()> {
        if q >= self.n {
            return Err(Error::IndexOutOfRange { index: q, n: self.n });
        }
        Ok(())
    }
}

impl fmt::Display for StateVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, a) in self.amps.iter().enumerate() {
            if a.norm() < 1e-12 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({:.6}{:+.6}i)|{:0width$b}⟩", a.re, a.im, k, width = self.n)?;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

pub(crate) fn check_qubit_count(n: usize) -> Result<()> {
    if n == 0 || n > MAX_QUBITS {
        return Err(Error::TooManyQubits { n, max: MAX_QUBITS });
    }
    Ok(())
}

pub(crate) fn norm_of(amps: &[Complex64]) -> f64 {
    amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
}

pub(crate) fn inner_raw(x: &[Complex64], y: &[Complex64]) -> Complex64 {
    x.iter().zip(y).map(|(a, b)| a.conj() * b).sum()
}

/// Permutation that sends qubit `q` to position `n - 1` and shifts the
/// qubits after it up by one.
pub fn move_to_last_permutation(n: usize, q: usize) -> Vec<usize> {
    (0..n)
        .map(|i| match i.cmp(&q) {
            std::cmp::Ordering::Less => i,
            std::cmp::Ordering::Equal => n - 1,
            std::cmp::Ordering::Greater => i - 1,
        })
        .collect()
}

/// Inverse of a qubit permutation.
pub fn invert_permutation(perm: &[usize]) -> Result<Vec<usize>> {
    validate_permutation(perm, perm.len())?;
    let mut inv = vec![0; perm.len()];
    for (i, &p) in perm.iter().enumerate() {
        inv[p] = i;
    }
    Ok(inv)
}

fn validate_permutation(perm: &[usize], n: usize) -> Result<()> {
    if perm.len() != n {
        return Err(Error::InvalidPermutation(format!(
            "length {} does not match {} qubits",
            perm.len(),
            n
        )));
    }
    let mut seen = vec![false; n];
    for &p in perm {
        if p >= n || seen[p] {
            return Err(Error::InvalidPermutation(format!(
                "{perm:?} is not a bijection on 0..{n}"
            )));
        }
        seen[p] = true;
    }
    Ok(())
}

/// A 2×2 complex operator on one qubit, row-major.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Qubit2x2([[Complex64; 2]; 2]);

impl Qubit2x2 {
    pub const fn new(m: [[Complex64; 2]; 2]) -> Self {
        Self(m)
    }

    pub const fn identity() -> Self {
        Self([[ONE, ZERO], [ZERO, ONE]])
    }

    pub const fn pauli_x() -> Self {
        Self([[ZERO, ONE], [ONE, ZERO]])
    }

    pub const fn pauli_z() -> Self {
        Self([[ONE, ZERO], [ZERO, Complex64::new(-1.0, 0.0)]])
    }

    /// The basis change `U` with `U|0⟩ = (|0⟩ + z|1⟩)/√(1+|z|²)` and
    /// `U|1⟩ = (|1⟩ − z*|0⟩)/√(1+|z|²)`.
    pub fn basis_rotation(z: Complex64) -> Self {
        let s = 1.0 / (1.0 + z.norm_sqr()).sqrt();
        Self([[ONE * s, -z.conj() * s], [z * s, ONE * s]])
    }

    pub fn entries(&self) -> &[[Complex64; 2]; 2] {
        &self.0
    }

    pub fn adjoint(&self) -> Self {
        let m = &self.0;
        Self([[m[0][0].conj(), m[1][0].conj()], [m[0][1].conj(), m[1][1].conj()]])
    }

    /// Matrix product `self · rhs` (apply `rhs` first).
    pub fn mul(&self, rhs: &Qubit2x2) -> Self {
        let (a, b) = (&self.0, &rhs.0);
        let mut out = [[ZERO; 2]; 2];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = a[i][0] * b[0][j] + a[i][1] * b[1][j];
            }
        }
        Self(out)
    }

    /// Image of the column vector `(v[0], v[1])`.
    pub fn apply(&self, v: [Complex64; 2]) -> [Complex64; 2] {
        let m = &self.0;
        [
            m[0][0] * v[0] + m[0][1] * v[1],
            m[1][0] * v[0] + m[1][1] * v[1],
        ]
    }

    /// Largest entry of `|U†U − I|`.
    pub fn unitarity_deviation(&self) -> f64 {
        let p = self.adjoint().mul(self);
        let id = Self::identity();
        let mut worst: f64 = 0.0;
        for i in 0..2 {
            for j in 0..2 {
                worst = worst.max((p.0[i][j] - id.0[i][j]).norm());
            }
        }
        worst
    }

    pub fn is_unitary(&self) -> bool {
        self.unitarity_deviation() <= UNITARY_TOLERANCE
    }
}

/// Single-qubit density matrix.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DensityMatrix2([[Complex64; 2]; 2]);

impl DensityMatrix2 {
    pub fn new(m: [[Complex64; 2]; 2]) -> Self {
        Self(m)
    }

    pub fn entries(&self) -> &[[Complex64; 2]; 2] {
        &self.0
    }

    pub fn trace(&self) -> f64 {
        self.0[0][0].re + self.0[1][1].re
    }

    pub fn det(&self) -> f64 {
        (self.0[0][0] * self.0[1][1] - self.0[0][1] * self.0[1][0]).re
    }

    /// Eigenvalues in ascending order.
    pub fn eigenvalues(&self) -> [f64; 2] {
        let half_tr = 0.5 * self.trace();
        let half_gap = 0.5 * (self.0[0][0].re - self.0[1][1].re);
        let r = (half_gap * half_gap + self.0[0][1].norm_sqr()).sqrt();
        [half_tr - r, half_tr + r]
    }

    /// `2√det ρ`: the concurrence of the pure state this matrix was reduced from.
    pub fn pure_state_concurrence(&self) -> f64 {
        (2.0 * self.det().max(0.0).sqrt()).min(1.0)
    }
}
