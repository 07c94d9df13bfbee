//! The operator quantisation layer: kernel <-> Weyl symbol <-> spreading
//! function, the Fourier-Wigner transform, parity, phase-space translations
//! of operators, and the function/operator convolutions.
//!
//! Conventions (all exact on the grid):
//!
//! * `sigma_S(x, omega) = sum_t K(x + t/2, x - t/2) zeta^{-omega t}`;
//! * `eta_S = F_O(sigma_S)`, equivalently `eta_S(z) = half_phase(-x omega) tr(pi(-z) S)`;
//! * the synthesis `eta -> S` weights `pi(z)` by the same half phase:
//!   `S = (1/N) sum_z eta(z) half_phase(-x omega) pi(z)` — the symmetric
//!   shift family `half_phase(-x omega) pi(z)` is what makes the spreading
//!   pair and the symbol pair agree.

use num_complex::Complex64;

use crate::fourier::{raw_pass, symplectic_dft};
use crate::operator::{hs_inner, Operator};
use crate::phase_space::{Modulus, PhaseFunction, PhasePoint};
use crate::shifts::gamma_shift;
use crate::Result;

/// Weyl symbol of an operator via the symmetric coordinate change and a
/// partial DFT in the lag variable.
pub fn kernel_to_symbol(m: &Modulus, s: &Operator) -> PhaseFunction {
    let n = m.n();
    assert_eq!(s.n(), n, "operator size must match the modulus");
    let h = m.half();
    let mut out = PhaseFunction::zeros(n);
    let mut col = vec![Complex64::ZERO; n];
    let mut row = vec![Complex64::ZERO; n];
    for x in 0..n {
        for t in 0..n {
            let ht = m.mul(h, t);
            col[t] = s.at(m.add(x, ht), m.sub(x, ht));
        }
        raw_pass(m, &col, 0, 1, -1, &mut row);
        for omega in 0..n {
            out.set(x, omega, row[omega]);
        }
    }
    out
}

/// Inverse of [`kernel_to_symbol`]:
/// `K(a, b) = (1/N) sum_omega sigma((a + b)/2, omega) zeta^{omega (a - b)}`.
pub fn symbol_to_operator(m: &Modulus, sigma: &PhaseFunction) -> Operator {
    let n = m.n();
    assert_eq!(sigma.n(), n, "symbol grid must match the modulus");
    let h = m.half();
    Operator::from_fn(n, |a, b| {
        let x = m.mul(h, m.add(a, b));
        let t = a as i64 - b as i64;
        let mut acc = Complex64::ZERO;
        for omega in 0..n {
            acc += sigma.at(x, omega) * m.zeta_pow(omega as i64 * t);
        }
        acc / n as f64
    })
}

/// Spreading function `eta_S(x, omega) = half_phase(-x omega) tr(pi(-z) S)`,
/// computed directly from the kernel; equals `F_O(sigma_S)`.
pub fn spreading(m: &Modulus, s: &Operator) -> PhaseFunction {
    fourier_wigner(m, s)
}

/// Synthesis from a spreading function,
/// `S = (1/N) sum_z eta(z) half_phase(-x omega) pi(z)`.
pub fn spreading_to_operator(m: &Modulus, eta: &PhaseFunction) -> Operator {
    let n = m.n();
    assert_eq!(eta.n(), n, "spreading grid must match the modulus");
    let h = m.half();
    // K(a, b) = (1/N) sum_omega eta(a - b, omega) zeta^{omega * half * (a + b)}
    Operator::from_fn(n, |a, b| {
        let x = m.sub(a, b);
        let hs = m.mul(h, m.add(a, b));
        let mut acc = Complex64::ZERO;
        for omega in 0..n {
            acc += eta.at(x, omega) * m.zeta_pow(m.mul(omega, hs) as i64);
        }
        acc / n as f64
    })
}

/// Fourier-Wigner transform
/// `F_W(S)(z) = half_phase(-x omega) tr(pi(-z) S)`; identical to the
/// spreading function of `S`.
pub fn fourier_wigner(m: &Modulus, s: &Operator) -> PhaseFunction {
    let n = m.n();
    assert_eq!(s.n(), n, "operator size must match the modulus");
    // tr(pi(-z) S) = sum_t zeta^{-omega t} K(t + x, t)
    let mut out = PhaseFunction::zeros(n);
    let mut col = vec![Complex64::ZERO; n];
    let mut row = vec![Complex64::ZERO; n];
    for x in 0..n {
        for t in 0..n {
            col[t] = s.at(m.add(t, x), t);
        }
        raw_pass(m, &col, 0, 1, -1, &mut row);
        for omega in 0..n {
            out.set(x, omega, m.half_phase(-((x * omega) as i64)) * row[omega]);
        }
    }
    out
}

/// Parity conjugation `S -> P S P` with `(P f)(t) = f(-t)`.
pub fn parity_conjugate(m: &Modulus, s: &Operator) -> Operator {
    let n = m.n();
    assert_eq!(s.n(), n, "operator size must match the modulus");
    Operator::from_fn(n, |a, b| s.at(m.neg(a), m.neg(b)))
}

/// Phase-space translation of an operator, `alpha_z(S) = pi(z) S pi(z)*`.
pub fn alpha_shift(m: &Modulus, z: PhasePoint, s: &Operator) -> Operator {
    gamma_shift(m, z, z, s)
}

/// Function-operator convolution
/// `f * S = (1/N) sum_z f(z) alpha_z(S)`.
pub fn fn_op_convolve(m: &Modulus, f: &PhaseFunction, s: &Operator) -> Operator {
    let n = m.n();
    assert_eq!(f.n(), n, "phase function grid must match the modulus");
    assert_eq!(s.n(), n, "operator size must match the modulus");
    // alpha_z kernel: K(a, b) -> zeta^{omega (a - b)} K(a - x, b - x)
    let mut out = Operator::zeros(n);
    for x in 0..n {
        for omega in 0..n {
            let c = f.at(x, omega) / n as f64;
            for a in 0..n {
                for b in 0..n {
                    let phase = m.zeta_pow((omega as i64) * (a as i64 - b as i64));
                    let v = c * phase * s.at(m.sub(a, x), m.sub(b, x));
                    let cur = out.at(a, b);
                    out.set(a, b, cur + v);
                }
            }
        }
    }
    out
}

/// Operator-operator convolution
/// `(S * T)(z) = tr(S alpha_z(T-check))` with `T-check = P T P`.
pub fn op_op_convolve(m: &Modulus, s: &Operator, t: &Operator) -> PhaseFunction {
    let n = m.n();
    assert_eq!(s.n(), n, "operator size must match the modulus");
    assert_eq!(t.n(), n, "operator size must match the modulus");
    let tc = parity_conjugate(m, t);
    PhaseFunction::from_fn(n, |x, omega| {
        // tr(S alpha_z(Tc)) = sum_{a,b} K_S(a, b) K_{alpha_z(Tc)}(b, a)
        let mut acc = Complex64::ZERO;
        for a in 0..n {
            for b in 0..n {
                let phase = m.zeta_pow((omega as i64) * (b as i64 - a as i64));
                acc += s.at(a, b) * phase * tc.at(m.sub(b, x), m.sub(a, x));
            }
        }
        acc
    })
}

/// Weyl quantisation of a symbol (inverse of [`kernel_to_symbol`]).
pub fn weyl_operator(m: &Modulus, sigma: &PhaseFunction) -> Operator {
    symbol_to_operator(m, sigma)
}

/// The weak Weyl pairing `(1/N) sum sigma * W`: the bilinear duality pairing
/// of a symbol against a phase-space function, under which
/// `<L_sigma f, g> = weak_pairing(sigma, W(f, g))`.
pub fn weak_pairing(m: &Modulus, sigma: &PhaseFunction, w: &PhaseFunction) -> Complex64 {
    let raw: Complex64 = sigma
        .values()
        .iter()
        .zip(w.values())
        .map(|(a, b)| a * b)
        .sum();
    raw / m.n() as f64
}

/// Round-trip self-check used by the identity suites; returns the largest
/// deviation among kernel -> symbol -> kernel and kernel -> spreading ->
/// kernel on the given operator.
pub fn quantisation_round_trip_error(m: &Modulus, s: &Operator) -> f64 {
    let sigma = kernel_to_symbol(m, s);
    let back_symbol = symbol_to_operator(m, &sigma);
    let eta = spreading(m, s);
    let back_spread = spreading_to_operator(m, &eta);
    back_symbol.max_dev(s).max(back_spread.max_dev(s))
}

/// Largest deviation of `eta_S = F_O(sigma_S)` on the given operator.
pub fn spreading_symbol_consistency(m: &Modulus, s: &Operator) -> Result<f64> {
    let eta = spreading(m, s);
    let via_symbol = symplectic_dft(m, &kernel_to_symbol(m, s))?;
    Ok(eta.max_dev(&via_symbol))
}

/// Weyl unitarity defect `|<S,T>_HS - <sigma_S, sigma_T>_PS|`.
pub fn weyl_unitarity_defect(m: &Modulus, s: &Operator, t: &Operator) -> f64 {
    let lhs = hs_inner(s, t);
    let rhs = kernel_to_symbol(m, s).inner(&kernel_to_symbol(m, t));
    (lhs - rhs).norm()
}
