//! The three Fourier transforms of the model: the unitary DFT on signals,
//! the symplectic transform on phase space, and the double-symplectic
//! transform on double phase space.
//!
//! All kernels are table lookups `zeta^k` with integer `k`, so the
//! transforms respect the modular structure exactly; there is no angle
//! round-off beyond one complex multiplication per term.

use num_complex::Complex64;

use crate::par;
use crate::phase_space::{DoublePhaseFunction, Modulus, PhaseFunction, Signal};
use crate::{QtfaError, Result};

/// Raw pass `out[k] = sum_j a[j] zeta^{-jk}` (`sign = -1`) or
/// `zeta^{+jk}` (`sign = +1`), reading with the given stride.
#[inline]
pub(crate) fn raw_pass(
    m: &Modulus,
    input: &[Complex64],
    offset: usize,
    stride: usize,
    sign: i64,
    out: &mut [Complex64],
) {
    let n = m.n();
    for (k, slot) in out.iter_mut().enumerate() {
        let mut acc = Complex64::ZERO;
        for j in 0..n {
            let e = sign * (j as i64) * (k as i64);
            acc += input[offset + j * stride] * m.zeta_pow(e);
        }
        *slot = acc;
    }
}

/// Unitary DFT `(F f)(omega) = N^{-1/2} sum_t f(t) zeta^{-t omega}`.
pub fn dft(m: &Modulus, f: &Signal) -> Result<Signal> {
    transform_signal(m, f, -1)
}

/// Unitary inverse DFT `N^{-1/2} sum_omega F(omega) zeta^{+t omega}`.
pub fn idft(m: &Modulus, f: &Signal) -> Result<Signal> {
    transform_signal(m, f, 1)
}

fn transform_signal(m: &Modulus, f: &Signal, sign: i64) -> Result<Signal> {
    let n = m.n();
    if f.len() != n {
        return Err(QtfaError::Dimension {
            what: "signal",
            expected: n,
            got: f.len(),
        });
    }
    let scale = 1.0 / (n as f64).sqrt();
    let mut out = vec![Complex64::ZERO; n];
    raw_pass(m, f.values(), 0, 1, sign, &mut out);
    for v in &mut out {
        *v *= scale;
    }
    Ok(Signal::new(out))
}

/// Symplectic Fourier transform on phase space:
///
/// `F_O F(x, omega) = (1/N) sum_{x', omega'} F(x', omega') zeta^{x omega' - x' omega}`.
///
/// Involutive: applying it twice returns the input.
pub fn symplectic_dft(m: &Modulus, f: &PhaseFunction) -> Result<PhaseFunction> {
    let n = m.n();
    if f.n() != n {
        return Err(QtfaError::Dimension {
            what: "phase function",
            expected: n,
            got: f.n(),
        });
    }
    Ok(symplectic_on_values(m, f.values(), -1))
}

/// The companion transform with kernel `zeta^{+Omega}`; used for the `w` half
/// of the double-symplectic transform. Also involutive, and equals the
/// symplectic transform composed with point reflection.
pub(crate) fn symplectic_on_values(m: &Modulus, vals: &[Complex64], sign: i64) -> PhaseFunction {
    let n = m.n();
    // Pass 1: b[x'][x] = sum_{omega'} F(x', omega') zeta^{-sign * x * omega'}.
    let mut rows = vec![Complex64::ZERO; n * n];
    for xp in 0..n {
        raw_pass(m, vals, xp * n, 1, -sign, &mut rows[xp * n..(xp + 1) * n]);
    }
    // Pass 2: out(x, omega) = (1/N) sum_{x'} b[x'][x] zeta^{sign * x' * omega}.
    let scale = 1.0 / n as f64;
    let mut out = PhaseFunction::zeros(n);
    for x in 0..n {
        for omega in 0..n {
            let mut acc = Complex64::ZERO;
            for xp in 0..n {
                acc += rows[xp * n + x] * m.zeta_pow(sign * (xp as i64) * (omega as i64));
            }
            out.set(x, omega, acc * scale);
        }
    }
    out
}

/// Double-symplectic Fourier transform on double phase space:
///
/// `F_P F(w, z) = (1/N^2) sum_{w', z'} F(w', z') zeta^{Omega(w, w') - Omega(z, z')}`.
///
/// It factorises into the symplectic transform in the `z` pair and the
/// conjugate-kernel transform in the `w` pair, and is its own inverse.
pub fn double_symplectic_dft(m: &Modulus, f: &DoublePhaseFunction) -> Result<DoublePhaseFunction> {
    let n = m.n();
    if f.n() != n {
        return Err(QtfaError::Dimension {
            what: "double phase function",
            expected: n,
            got: f.n(),
        });
    }
    let n2 = n * n;

    // z-pass: for every fixed (w1, w2) transform the z-slice with kernel -Omega.
    let z_slices: Vec<Vec<Complex64>> = par::map_indices(n2, |wi| {
        let slice = &f.values()[wi * n2..(wi + 1) * n2];
        symplectic_on_values(m, slice, -1).values().to_vec()
    });

    // w-pass: for every fixed (z1, z2) transform across w with kernel +Omega.
    let w_cols: Vec<Vec<Complex64>> = par::map_indices(n2, |zi| {
        let gathered: Vec<Complex64> = (0..n2).map(|wi| z_slices[wi][zi]).collect();
        symplectic_on_values(m, &gathered, 1).values().to_vec()
    });

    let mut out = DoublePhaseFunction::zeros(n);
    for wi in 0..n2 {
        for zi in 0..n2 {
            out.values_mut()[wi * n2 + zi] = w_cols[zi][wi];
        }
    }
    Ok(out)
}

/// Plain 2D DFT pass on an `n x n` buffer:
/// `out(p, q) = sum_{u,v} f(u, v) zeta^{sign (up + vq)}`.
pub(crate) fn dft2_raw(m: &Modulus, f: &[Complex64], sign: i64) -> Vec<Complex64> {
    let n = m.n();
    let mut stage = vec![Complex64::ZERO; n * n];
    let mut row = vec![Complex64::ZERO; n];
    for u in 0..n {
        raw_pass(m, f, u * n, 1, sign, &mut row);
        stage[u * n..(u + 1) * n].copy_from_slice(&row);
    }
    let mut out = vec![Complex64::ZERO; n * n];
    let mut col = vec![Complex64::ZERO; n];
    for q in 0..n {
        raw_pass(m, &stage, q, n, sign, &mut col);
        for p in 0..n {
            out[p * n + q] = col[p];
        }
    }
    out
}

/// Table of 2D short-time Fourier coefficients of a phase-space function:
/// `V(a, b) = <F, M_{sign.b} T_a G>_PS = (1/N) sum_p F(p) conj(G(p - a))
/// zeta^{-sign b.p}`, stored with the translation pair in the `w` slot and
/// the modulation pair in the `z` slot.
pub fn phase_space_stft(
    m: &Modulus,
    f: &PhaseFunction,
    window: &PhaseFunction,
    modulation_sign: i64,
) -> DoublePhaseFunction {
    let n = m.n();
    assert_eq!(f.n(), n, "phase function grid must match the modulus");
    assert_eq!(window.n(), n, "window grid must match the modulus");
    let blocks: Vec<Vec<Complex64>> = par::map_indices(n * n, |ai| {
        let (a1, a2) = (ai / n, ai % n);
        let mut h = vec![Complex64::ZERO; n * n];
        for p1 in 0..n {
            for p2 in 0..n {
                h[p1 * n + p2] =
                    f.at(p1, p2) * window.at(m.sub(p1, a1), m.sub(p2, a2)).conj();
            }
        }
        let mut hat = dft2_raw(m, &h, -modulation_sign.signum());
        let scale = 1.0 / n as f64;
        for v in &mut hat {
            *v *= scale;
        }
        hat
    });
    let mut out = DoublePhaseFunction::zeros(n);
    for a1 in 0..n {
        for a2 in 0..n {
            let block = &blocks[a1 * n + a2];
            for b1 in 0..n {
                for b2 in 0..n {
                    out.set(a1, a2, b1, b2, block[b1 * n + b2]);
                }
            }
        }
    }
    out
}

/// Twisted convolution on phase space,
///
/// `(F nat G)(x, omega) = (1/N) sum_{x', omega'} F(x', omega') G(x - x', omega - omega')
///                        zeta^{-x'(omega - omega')}`.
pub fn twisted_convolution_2d(
    m: &Modulus,
    f: &PhaseFunction,
    g: &PhaseFunction,
) -> Result<PhaseFunction> {
    let n = m.n();
    for (what, got) in [("phase function", f.n()), ("phase function", g.n())] {
        if got != n {
            return Err(QtfaError::Dimension {
                what,
                expected: n,
                got,
            });
        }
    }
    // Per-row DFT in the frequency variable turns the twisted sum into a
    // product with a row-shifted spectrum of g.
    let fhat: Vec<Vec<Complex64>> = (0..n)
        .map(|xp| {
            let mut row = vec![Complex64::ZERO; n];
            raw_pass(m, f.values(), xp * n, 1, -1, &mut row);
            row
        })
        .collect();
    let ghat: Vec<Vec<Complex64>> = (0..n)
        .map(|c| {
            let mut row = vec![Complex64::ZERO; n];
            raw_pass(m, g.values(), c * n, 1, -1, &mut row);
            row
        })
        .collect();
    let scale = 1.0 / (n * n) as f64; // 1/N from the measure, 1/N from inversion
    let out: Vec<Vec<Complex64>> = par::map_indices(n, |x| {
        let mut acc = vec![Complex64::ZERO; n];
        for xp in 0..n {
            let gx = &ghat[m.sub(x, xp)];
            for q in 0..n {
                acc[q] += fhat[xp][q] * gx[m.add(q, xp)];
            }
        }
        let mut row = vec![Complex64::ZERO; n];
        raw_pass(m, &acc, 0, 1, 1, &mut row);
        for v in &mut row {
            *v *= scale;
        }
        row
    });
    PhaseFunction::from_values(n, out.concat())
}

/// Brute-force reference for [`twisted_convolution_2d`]; test oracle.
pub fn twisted_convolution_2d_naive(
    m: &Modulus,
    f: &PhaseFunction,
    g: &PhaseFunction,
) -> PhaseFunction {
    let n = m.n();
    PhaseFunction::from_fn(n, |x, omega| {
        let mut acc = Complex64::ZERO;
        for xp in 0..n {
            for op in 0..n {
                let dx = m.sub(x, xp);
                let domega = m.sub(omega, op);
                acc += f.at(xp, op)
                    * g.at(dx, domega)
                    * m.zeta_pow(-((xp as i64) * (domega as i64)));
            }
        }
        acc / n as f64
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::{random_phase_function, random_signal, seeded_rng};
    use crate::phase_space::PhasePoint;

    #[test]
    fn dft_of_delta_is_flat() {
        let m = Modulus::new(7).unwrap();
        let d = Signal::delta(7, 0);
        let f = dft(&m, &d).unwrap();
        let expect = 1.0 / 7f64.sqrt();
        for t in 0..7 {
            assert!((f.at(t) - Complex64::new(expect, 0.0)).norm() < 1e-14);
        }
    }

    #[test]
    fn dft_of_constant_is_delta() {
        let m = Modulus::new(5).unwrap();
        let ones = Signal::from_fn(5, |_| Complex64::ONE);
        let f = dft(&m, &ones).unwrap();
        assert!((f.at(0) - Complex64::new(5f64.sqrt(), 0.0)).norm() < 1e-13);
        for t in 1..5 {
            assert!(f.at(t).norm() < 1e-13);
        }
    }

    #[test]
    fn dft_is_unitary_and_inverted_by_idft() {
        for n in [5usize, 7, 9, 15] {
            let m = Modulus::new(n).unwrap();
            let mut rng = seeded_rng(2111);
            let f = random_signal(&m, &mut rng);
            let hat = dft(&m, &f).unwrap();
            assert!((hat.norm() - f.norm()).abs() < 1e-12, "n={n}");
            let back = idft(&m, &hat).unwrap();
            let dev: f64 = back
                .values()
                .iter()
                .zip(f.values())
                .map(|(a, b)| (a - b).norm())
                .fold(0.0, f64::max);
            assert!(dev < 1e-12, "n={n}");
        }
    }

    #[test]
    fn dft_length_mismatch_errors() {
        let m = Modulus::new(7).unwrap();
        let f = Signal::zeros(5);
        assert!(matches!(dft(&m, &f), Err(QtfaError::Dimension { .. })));
    }

    #[test]
    fn symplectic_impulse_is_flat() {
        let m = Modulus::new(5).unwrap();
        let mut f = PhaseFunction::zeros(5);
        f.set(0, 0, Complex64::new(5.0, 0.0));
        let hat = symplectic_dft(&m, &f).unwrap();
        for x in 0..5 {
            for o in 0..5 {
                assert!((hat.at(x, o) - Complex64::ONE).norm() < 1e-13);
            }
        }
    }

    #[test]
    fn symplectic_is_involutive() {
        let m = Modulus::new(7).unwrap();
        let mut rng = seeded_rng(7301);
        let f = random_phase_function(&m, &mut rng);
        let back = symplectic_dft(&m, &symplectic_dft(&m, &f).unwrap()).unwrap();
        assert!(back.max_dev(&f) < 1e-12);
    }

    #[test]
    fn symplectic_character_concentrates() {
        // F(z) = zeta^{Omega(z0, z)} transforms to N * delta_{z0}.
        let m = Modulus::new(7).unwrap();
        let z0 = PhasePoint::new(&m, 3, 2);
        let f = PhaseFunction::from_fn(7, |x, o| {
            let z = PhasePoint { x, omega: o };
            m.zeta_pow(crate::phase_space::symplectic_form(z0, z, &m) as i64)
        });
        let hat = symplectic_dft(&m, &f).unwrap();
        for x in 0..7 {
            for o in 0..7 {
                let expect = if (x, o) == (z0.x, z0.omega) {
                    Complex64::new(7.0, 0.0)
                } else {
                    Complex64::ZERO
                };
                assert!((hat.at(x, o) - expect).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn symplectic_plancherel() {
        let m = Modulus::new(9).unwrap();
        let mut rng = seeded_rng(88);
        let f = random_phase_function(&m, &mut rng);
        let g = random_phase_function(&m, &mut rng);
        let lhs = symplectic_dft(&m, &f)
            .unwrap()
            .inner(&symplectic_dft(&m, &g).unwrap());
        let rhs = f.inner(&g);
        assert!((lhs - rhs).norm() < 1e-12);
    }

    #[test]
    fn double_symplectic_impulse_and_involution() {
        let m = Modulus::new(5).unwrap();
        let mut f = DoublePhaseFunction::zeros(5);
        f.set(0, 0, 0, 0, Complex64::new(25.0, 0.0));
        let hat = double_symplectic_dft(&m, &f).unwrap();
        for v in hat.values() {
            assert!((v - Complex64::ONE).norm() < 1e-12);
        }

        let mut rng = seeded_rng(512);
        let g = crate::random::random_double_phase_function(&m, &mut rng);
        let back = double_symplectic_dft(&m, &double_symplectic_dft(&m, &g).unwrap()).unwrap();
        assert!(back.max_dev(&g) < 1e-12);
    }

    #[test]
    fn double_symplectic_factorises() {
        // Cross-check against nested symplectic transforms: the z pair uses
        // the symplectic kernel, the w pair its conjugate (a reflection).
        let m = Modulus::new(5).unwrap();
        let n = 5usize;
        let mut rng = seeded_rng(513);
        let f = crate::random::random_double_phase_function(&m, &mut rng);
        let fast = double_symplectic_dft(&m, &f).unwrap();

        let mut staged = DoublePhaseFunction::zeros(n);
        // Stage 1: transform each w-slice in z.
        let mut zpass = DoublePhaseFunction::zeros(n);
        for w1 in 0..n {
            for w2 in 0..n {
                let slice =
                    PhaseFunction::from_fn(n, |z1, z2| f.at(w1, w2, z1, z2));
                let t = symplectic_dft(&m, &slice).unwrap();
                for z1 in 0..n {
                    for z2 in 0..n {
                        zpass.set(w1, w2, z1, z2, t.at(z1, z2));
                    }
                }
            }
        }
        // Stage 2: transform across w with the reflected (conjugate) kernel,
        // realised as symplectic transform followed by point reflection.
        for z1 in 0..n {
            for z2 in 0..n {
                let slice =
                    PhaseFunction::from_fn(n, |w1, w2| zpass.at(w1, w2, z1, z2));
                let t = symplectic_dft(&m, &slice).unwrap();
                for w1 in 0..n {
                    for w2 in 0..n {
                        staged.set(w1, w2, z1, z2, t.at(m.neg(w1), m.neg(w2)));
                    }
                }
            }
        }
        assert!(fast.max_dev(&staged) < 1e-12);
    }

    #[test]
    fn phase_space_stft_matches_inner_products() {
        let m = Modulus::new(5).unwrap();
        let mut rng = seeded_rng(300);
        let f = random_phase_function(&m, &mut rng);
        let g = random_phase_function(&m, &mut rng);
        for sign in [1i64, -1] {
            let table = phase_space_stft(&m, &f, &g, sign);
            for (a1, a2, b1, b2) in [(0, 0, 0, 0), (1, 2, 3, 4), (4, 0, 2, 1)] {
                let a = PhasePoint { x: a1, omega: a2 };
                let b = PhasePoint { x: b1, omega: b2 };
                let bs = if sign > 0 { b } else { b.neg(&m) };
                let direct =
                    f.inner(&crate::shifts::phase_space_shift(&m, a, bs, &g));
                assert!((table.at(a1, a2, b1, b2) - direct).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn twisted_2d_matches_naive() {
        let m = Modulus::new(7).unwrap();
        let mut rng = seeded_rng(99);
        let f = random_phase_function(&m, &mut rng);
        let g = random_phase_function(&m, &mut rng);
        let fast = twisted_convolution_2d(&m, &f, &g).unwrap();
        let slow = twisted_convolution_2d_naive(&m, &f, &g);
        assert!(fast.max_dev(&slow) < 1e-11);
    }
}
