//! Seeded random data for ensembles and tests.
//!
//! Every experiment in the crate draws through a ChaCha8 stream seeded from a
//! 64-bit value, so runs are reproducible from the seed alone.

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::operator::Operator;
use crate::phase_space::{DoublePhaseFunction, Modulus, PhaseFunction, Signal};

/// Identifier of the generator, recorded in reports.
pub const RNG_ALGORITHM: &str = "chacha8";

/// The deterministic generator used throughout.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Standard complex Gaussian via Box-Muller.
pub fn complex_gaussian<R: Rng>(rng: &mut R) -> Complex64 {
    let u1: f64 = rng.gen_range(f64::EPSILON..1.0);
    let u2: f64 = rng.gen::<f64>();
    let r = (-2.0 * u1.ln()).sqrt();
    let theta = std::f64::consts::TAU * u2;
    // Real and imaginary parts are independent N(0, 1/2).
    Complex64::new(r * theta.cos(), r * theta.sin()) / 2f64.sqrt()
}

pub fn random_signal<R: Rng>(m: &Modulus, rng: &mut R) -> Signal {
    Signal::from_fn(m.n(), |_| complex_gaussian(rng))
}

/// Random signal scaled to unit norm.
pub fn random_unit_signal<R: Rng>(m: &Modulus, rng: &mut R) -> Signal {
    let s = random_signal(m, rng);
    let n = s.norm();
    s.scale(Complex64::new(1.0 / n, 0.0))
}

pub fn random_phase_function<R: Rng>(m: &Modulus, rng: &mut R) -> PhaseFunction {
    PhaseFunction::from_fn(m.n(), |_, _| complex_gaussian(rng))
}

pub fn random_double_phase_function<R: Rng>(m: &Modulus, rng: &mut R) -> DoublePhaseFunction {
    DoublePhaseFunction::from_fn(m.n(), |_, _, _, _| complex_gaussian(rng))
}

pub fn random_operator<R: Rng>(m: &Modulus, rng: &mut R) -> Operator {
    Operator::from_fn(m.n(), |_, _| complex_gaussian(rng))
}

/// Random operator scaled to unit Hilbert-Schmidt norm.
pub fn random_unit_operator<R: Rng>(m: &Modulus, rng: &mut R) -> Operator {
    let s = random_operator(m, rng);
    let n = s.hs_norm();
    s.scale(Complex64::new(1.0 / n, 0.0))
}
