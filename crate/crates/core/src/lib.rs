//! Finite phase-space toolkit for quantum time-frequency analysis on `Z_N`.
//!
//! Everything lives on the cyclic group `Z_N` with `N` odd, so that 2 is
//! invertible and every half-shift is exact modular arithmetic. Signals are
//! complex vectors of length `N`, operators are `N x N` kernels acting by
//! `(Sf)(x) = sum_t K(x,t) f(t)`, phase space is `Z_N x Z_N`, and the
//! operator-level time-frequency shifts `gamma_{w,z}(S) = pi(z) S pi(w)*`
//! act on the Hilbert-Schmidt space of kernels.
//!
//! Normalisations are chosen so that every orthogonality relation holds with
//! constant exactly one:
//!
//! * signals: counting inner product `<f,g> = sum f conj(g)`;
//! * phase space: `(1/N) sum`; double phase space: `(1/N^2) sum`;
//! * the DFT carries `N^{-1/2}`, the symplectic transform `1/N`, the
//!   double-symplectic transform `1/N^2`.
//!
//! The crate is organised around the layers of the theory: [`phase_space`]
//! and [`fourier`] provide the grid and transforms, [`tfa`] classical
//! time-frequency analysis, [`operator`]/[`quantization`] the operator layer
//! and its symbol calculus, [`shifts`] the operator time-frequency shifts and
//! coordinate maps, [`cohen`] the polarised Cohen transform and its
//! reproducing-kernel machinery, [`frames`] operator Gabor frames, and
//! [`norms`] mixed-norm modulation-space machinery.

// Dense grid kernels index several buffers per step; explicit indices
// read better than zipped iterators there.
#![allow(clippy::needless_range_loop)]

pub mod cohen;
pub mod error;
pub mod fourier;
pub mod frames;
pub mod norms;
pub mod operator;
pub mod phase_space;
pub mod quantization;
pub mod random;
pub mod shifts;
pub mod tfa;

mod linalg;
mod par;

pub use error::QtfaError;
pub use phase_space::{
    DoublePhaseFunction, DoublePhasePoint, Modulus, PhaseFunction, PhasePoint, Signal,
};

// Re-exported so downstream code can drive the ensemble helpers with the
// same generator types.
pub use rand;
pub use rand_chacha;

/// Result alias used across the crate.
pub type Result<T> = std::result::Result<T, QtfaError>;
