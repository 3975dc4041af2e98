//! Analysis of pure n-qubit resource states for standard teleportation of one qubit.
//!
//! The receiver ("Bob") holds one qubit of the resource, the sender ("Alice")
//! holds the rest. The crate splits the resource across that cut, rotates the
//! receiver's basis until the two branches become orthogonal, and reads off the
//! bipartite concurrence `C`. The maximal average fidelity of the protocol is
//! `(2 + C) / 3`, and perfect teleportation requires `C = 1`.
//!
//! Every closed-form quantity is cross-checked by an explicit simulation of
//! the protocol in [`protocol`]: Alice's four-outcome projective measurement,
//! the two-bit message, and Bob's correcting unitary.
//!
//! Bit ordering: qubit 0 is the most significant bit of an amplitude index, so
//! the ket `|q0 q1 q2⟩` sits at index `4*q0 + 2*q1 + q2`. The receiver defaults
//! to the last qubit.
//!
//! ```
//! use sqt::{families, schmidt};
//!
//! let w = families::w_general(0.5.into(), 0.5.into(), std::f64::consts::FRAC_1_SQRT_2.into()).unwrap();
//! let c = schmidt::concurrence(&w, 2).unwrap();
//! assert!((c - 1.0).abs() < 1e-12);
//! assert!((schmidt::maf(c).unwrap() - 1.0).abs() < 1e-12);
//! ```

pub mod cli;
pub mod conditions;
pub mod error;
pub mod families;
pub mod protocol;
pub mod schmidt;
pub mod statevec;

pub use error::{Error, Result};
pub use num_complex::Complex64;
pub use statevec::{DensityMatrix2, Qubit2x2, StateVector};
