//! Classical time-frequency analysis on `Z_N`: time-frequency shifts, the
//! short-time Fourier transform and its adjoint, the Wigner distribution,
//! and the rank-one spreading (ambiguity) function.

use num_complex::Complex64;

use crate::fourier::raw_pass;
use crate::phase_space::{Modulus, PhaseFunction, PhasePoint, Signal};
use crate::{QtfaError, Result};

/// An analysis window: a signal together with its cached norm.
#[derive(Debug, Clone)]
pub struct Window {
    signal: Signal,
    norm2: f64,
}

impl Window {
    pub fn new(signal: Signal) -> Result<Self> {
        let norm2 = signal.norm();
        if norm2 <= 0.0 {
            return Err(QtfaError::InvalidWindow("window has zero norm"));
        }
        Ok(Window { signal, norm2 })
    }

    /// The periodised Gaussian `c * sum_{k=-K..K} exp(-pi (t~ + kN)^2 / N)`
    /// on centered representatives, normalised in `l^2`. `K = 3` keeps the
    /// truncation error below 1e-12 for every odd `N >= 5`.
    pub fn gaussian(m: &Modulus) -> Window {
        Self::gaussian_scaled(m, 1.0)
    }

    /// Gaussian with variance scaled by `width` (`width = 1` is standard).
    pub fn gaussian_scaled(m: &Modulus, width: f64) -> Window {
        Self::periodised_gaussian(m, width, 3)
    }

    /// Periodised Gaussian with an explicit truncation order; exposed so the
    /// truncation error of the default can be checked against a longer sum.
    pub fn periodised_gaussian(m: &Modulus, width: f64, terms: i64) -> Window {
        let n = m.n();
        let raw = Signal::from_fn(n, |t| {
            let tc = m.centered(t) as f64;
            let mut acc = 0.0;
            for k in -terms..=terms {
                let u = tc + k as f64 * n as f64;
                acc += (-std::f64::consts::PI * u * u / (width * n as f64)).exp();
            }
            Complex64::new(acc, 0.0)
        });
        let norm = raw.norm();
        Window::new(raw.scale(Complex64::new(1.0 / norm, 0.0))).expect("gaussian is nonzero")
    }

    #[inline]
    pub fn signal(&self) -> &Signal {
        &self.signal
    }

    #[inline]
    pub fn norm2(&self) -> f64 {
        self.norm2
    }
}

/// Time-frequency shift `(pi(z) f)(t) = zeta^{omega t} f(t - x)`.
pub fn tf_shift(m: &Modulus, z: PhasePoint, f: &Signal) -> Signal {
    assert_eq!(f.len(), m.n(), "signal length must match the modulus");
    Signal::from_fn(m.n(), |t| {
        m.zeta_pow((z.omega * t) as i64) * f.at(m.sub(t, z.x))
    })
}

/// Short-time Fourier transform `V_g f(z) = <f, pi(z) g>`.
///
/// Computed per time column with one DFT pass: for fixed `x`,
/// `V(x, omega) = sum_t f(t) conj(g(t-x)) zeta^{-omega t}`.
pub fn stft(m: &Modulus, f: &Signal, g: &Window) -> PhaseFunction {
    let n = m.n();
    assert_eq!(f.len(), n, "signal length must match the modulus");
    let gv = g.signal();
    let mut out = PhaseFunction::zeros(n);
    let mut col = vec![Complex64::ZERO; n];
    let mut row = vec![Complex64::ZERO; n];
    for x in 0..n {
        for t in 0..n {
            col[t] = f.at(t) * gv.at(m.sub(t, x)).conj();
        }
        raw_pass(m, &col, 0, 1, -1, &mut row);
        for omega in 0..n {
            out.set(x, omega, row[omega]);
        }
    }
    out
}

/// Adjoint of the STFT, `V_g^* F = (1/N) sum_z F(z) pi(z) g`.
///
/// For a unit-norm window this inverts [`stft`].
pub fn stft_adjoint(m: &Modulus, coeffs: &PhaseFunction, g: &Window) -> Signal {
    let n = m.n();
    assert_eq!(coeffs.n(), n, "coefficient grid must match the modulus");
    let gv = g.signal();
    let mut out = Signal::zeros(n);
    // (1/N) sum_{x} [sum_omega F(x, omega) zeta^{omega t}] g(t - x)
    let mut row = vec![Complex64::ZERO; n];
    for x in 0..n {
        raw_pass(m, coeffs.values(), x * n, 1, 1, &mut row);
        for t in 0..n {
            out.values_mut()[t] += row[t] * gv.at(m.sub(t, x));
        }
    }
    out.scale(Complex64::new(1.0 / n as f64, 0.0))
}

/// Cross-Wigner distribution
/// `W(f, g)(x, omega) = sum_t f(x + t/2) conj(g(x - t/2)) zeta^{-omega t}`,
/// with `t/2` realised through `half = 2^{-1} mod N`.
pub fn wigner(m: &Modulus, f: &Signal, g: &Signal) -> PhaseFunction {
    let n = m.n();
    assert_eq!(f.len(), n, "signal length must match the modulus");
    assert_eq!(g.len(), n, "signal length must match the modulus");
    let h = m.half();
    let mut out = PhaseFunction::zeros(n);
    let mut col = vec![Complex64::ZERO; n];
    let mut row = vec![Complex64::ZERO; n];
    for x in 0..n {
        for t in 0..n {
            let ht = m.mul(h, t);
            col[t] = f.at(m.add(x, ht)) * g.at(m.sub(x, ht)).conj();
        }
        raw_pass(m, &col, 0, 1, -1, &mut row);
        for omega in 0..n {
            out.set(x, omega, row[omega]);
        }
    }
    out
}

/// Spreading function of the rank-one operator `f (x) g`: the ambiguity
/// function in symmetric coordinates,
///
/// `eta(x, omega) = half_phase(x omega) * V_g f(x, omega)`.
///
/// This is exactly the symplectic Fourier transform of `W(f, g)`.
pub fn rank_one_spreading(m: &Modulus, f: &Signal, g: &Signal) -> PhaseFunction {
    let gw = match Window::new(g.clone()) {
        Ok(w) => w,
        Err(_) => return PhaseFunction::zeros(m.n()),
    };
    let v = stft(m, f, &gw);
    PhaseFunction::from_fn(m.n(), |x, omega| {
        m.half_phase((x * omega) as i64) * v.at(x, omega)
    })
}

/// Function modulation norm `M^{p,q}` of a signal: mixed norm of its STFT
/// against the Gaussian window, inner exponent over time, outer over
/// frequency, with total measure `(1/N) sum` on phase space.
pub fn function_modulation_norm(
    m: &Modulus,
    f: &Signal,
    p: crate::norms::Exponent,
    q: crate::norms::Exponent,
) -> f64 {
    let g = Window::gaussian(m);
    let v = stft(m, f, &g);
    let n = m.n();
    let inv_n = 1.0 / n as f64;
    let inner = |omega: usize| -> f64 {
        match p.as_finite() {
            Some(pv) => {
                let s: f64 = (0..n)
                    .map(|x| v.at(x, omega).norm().powf(pv))
                    .sum::<f64>()
                    * inv_n;
                s.powf(1.0 / pv)
            }
            None => (0..n).map(|x| v.at(x, omega).norm()).fold(0.0, f64::max),
        }
    };
    match q.as_finite() {
        Some(qv) => {
            let s: f64 = (0..n).map(|omega| inner(omega).powf(qv)).sum::<f64>();
            s.powf(1.0 / qv)
        }
        None => (0..n).map(inner).fold(0.0, f64::max),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fourier::symplectic_dft;
    use crate::random::{random_signal, random_unit_signal, seeded_rng};

    fn max_dev_signal(a: &Signal, b: &Signal) -> f64 {
        a.values()
            .iter()
            .zip(b.values())
            .map(|(x, y)| (x - y).norm())
            .fold(0.0, f64::max)
    }

    #[test]
    fn tf_shift_identity_and_unitarity() {
        let m = Modulus::new(7).unwrap();
        let mut rng = seeded_rng(41);
        let f = random_signal(&m, &mut rng);
        let same = tf_shift(&m, PhasePoint::ZERO, &f);
        assert!(max_dev_signal(&f, &same) < 1e-15);
        let shifted = tf_shift(&m, PhasePoint::new(&m, 3, 5), &f);
        assert!((shifted.norm() - f.norm()).abs() < 1e-12);
    }

    #[test]
    fn tf_shift_composition_law_exhaustive() {
        // pi(z) pi(z') = zeta^{-omega' x} pi(z + z'), all pairs at N=5.
        let m = Modulus::new(5).unwrap();
        let mut rng = seeded_rng(42);
        let f = random_signal(&m, &mut rng);
        for x in 0..5 {
            for o in 0..5 {
                for xp in 0..5 {
                    for op in 0..5 {
                        let z = PhasePoint { x, omega: o };
                        let zp = PhasePoint { x: xp, omega: op };
                        let lhs = tf_shift(&m, z, &tf_shift(&m, zp, &f));
                        let rhs = tf_shift(&m, z.add(zp, &m), &f)
                            .scale(m.zeta_pow(-((op * x) as i64)));
                        assert!(max_dev_signal(&lhs, &rhs) < 1e-12);
                    }
                }
            }
        }
    }

    #[test]
    fn tf_shift_adjoint_law() {
        // <pi(z) f, g> = zeta^{-x omega} <f, pi(-z) g> for random data.
        let m = Modulus::new(7).unwrap();
        let mut rng = seeded_rng(43);
        let f = random_signal(&m, &mut rng);
        let g = random_signal(&m, &mut rng);
        for x in 0..7 {
            for o in 0..7 {
                let z = PhasePoint { x, omega: o };
                let lhs = tf_shift(&m, z, &f).inner(&g);
                let rhs = m.zeta_pow(-((x * o) as i64)).conj()
                    * f.inner(&tf_shift(&m, z.neg(&m), &g));
                assert!((lhs - rhs).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn stft_of_deltas() {
        let m = Modulus::new(5).unwrap();
        let d = Signal::delta(5, 0);
        let w = Window::new(d.clone()).unwrap();
        let v = stft(&m, &d, &w);
        for x in 0..5 {
            for o in 0..5 {
                let expect = if x == 0 { Complex64::ONE } else { Complex64::ZERO };
                assert!((v.at(x, o) - expect).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn stft_matches_inner_product_definition() {
        let m = Modulus::new(9).unwrap();
        let mut rng = seeded_rng(44);
        let f = random_signal(&m, &mut rng);
        let g = random_signal(&m, &mut rng);
        let w = Window::new(g.clone()).unwrap();
        let v = stft(&m, &f, &w);
        for x in 0..9 {
            for o in 0..9 {
                let z = PhasePoint { x, omega: o };
                let direct = f.inner(&tf_shift(&m, z, &g));
                assert!((v.at(x, o) - direct).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn moyal_identity_constant_one() {
        let m = Modulus::new(9).unwrap();
        let mut rng = seeded_rng(45);
        let f = random_signal(&m, &mut rng);
        let g = random_signal(&m, &mut rng);
        let v = stft(&m, &f, &Window::new(g.clone()).unwrap());
        let energy = v.inner(&v).re;
        let expect = f.norm().powi(2) * g.norm().powi(2);
        assert!((energy - expect).abs() < 1e-11 * expect.max(1.0));
    }

    #[test]
    fn stft_covariance_under_shift() {
        // V_g(pi(z0) f)(z) = zeta^{x0 omega0 - x0 z2} V_g f(z - z0); brute force.
        let m = Modulus::new(5).unwrap();
        let mut rng = seeded_rng(46);
        let f = random_signal(&m, &mut rng);
        let g = Window::new(random_signal(&m, &mut rng)).unwrap();
        let v = stft(&m, &f, &g);
        for x0 in 0..5 {
            for o0 in 0..5 {
                let z0 = PhasePoint { x: x0, omega: o0 };
                let vs = stft(&m, &tf_shift(&m, z0, &f), &g);
                for x in 0..5 {
                    for o in 0..5 {
                        let z = PhasePoint { x, omega: o };
                        let d = z.sub(z0, &m);
                        let phase =
                            m.zeta_pow((x0 * o0) as i64 - (x0 * o) as i64);
                        let rhs = phase * v.at(d.x, d.omega);
                        assert!((vs.at(x, o) - rhs).norm() < 1e-12);
                    }
                }
            }
        }
    }

    #[test]
    fn reconstruction_for_unit_window() {
        let m = Modulus::new(7).unwrap();
        let mut rng = seeded_rng(47);
        let f = random_signal(&m, &mut rng);
        let g = Window::new(random_unit_signal(&m, &mut rng)).unwrap();
        let rec = stft_adjoint(&m, &stft(&m, &f, &g), &g);
        assert!(max_dev_signal(&f, &rec) < 1e-11);
    }

    #[test]
    fn stft_and_adjoint_are_adjoint() {
        let m = Modulus::new(5).unwrap();
        let mut rng = seeded_rng(48);
        let f = random_signal(&m, &mut rng);
        let coeffs = crate::random::random_phase_function(&m, &mut rng);
        let g = Window::new(random_signal(&m, &mut rng)).unwrap();
        let lhs = stft(&m, &f, &g).inner(&coeffs);
        let rhs = f.inner(&stft_adjoint(&m, &coeffs, &g));
        assert!((lhs - rhs).norm() < 1e-12);
    }

    #[test]
    fn adjoint_of_zero_is_zero() {
        let m = Modulus::new(5).unwrap();
        let g = Window::gaussian(&m);
        let z = stft_adjoint(&m, &PhaseFunction::zeros(5), &g);
        assert!(z.norm() < 1e-15);
    }

    #[test]
    fn wigner_of_same_signal_is_real() {
        let m = Modulus::new(7).unwrap();
        let mut rng = seeded_rng(49);
        let f = random_signal(&m, &mut rng);
        let w = wigner(&m, &f, &f);
        for v in w.values() {
            assert!(v.im.abs() < 1e-11);
        }
    }

    #[test]
    fn wigner_hermitian_swap() {
        let m = Modulus::new(7).unwrap();
        let mut rng = seeded_rng(50);
        let f = random_signal(&m, &mut rng);
        let g = random_signal(&m, &mut rng);
        let wfg = wigner(&m, &f, &g);
        let wgf = wigner(&m, &g, &f);
        for x in 0..7 {
            for o in 0..7 {
                assert!((wfg.at(x, o) - wgf.at(x, o).conj()).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn wigner_of_delta_supported_on_zero_column() {
        let m = Modulus::new(5).unwrap();
        let d = Signal::delta(5, 0);
        let w = wigner(&m, &d, &d);
        for x in 0..5 {
            for o in 0..5 {
                let expect = if x == 0 { Complex64::ONE } else { Complex64::ZERO };
                assert!((w.at(x, o) - expect).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn rank_one_spreading_is_symplectic_transform_of_wigner() {
        for n in [5usize, 7] {
            let m = Modulus::new(n).unwrap();
            let mut rng = seeded_rng(51);
            let f = random_signal(&m, &mut rng);
            let g = random_signal(&m, &mut rng);
            let eta = rank_one_spreading(&m, &f, &g);
            let via_wigner = symplectic_dft(&m, &wigner(&m, &f, &g)).unwrap();
            assert!(eta.max_dev(&via_wigner) < 1e-11, "n={n}");
        }
    }

    #[test]
    fn rank_one_spreading_zero_and_delta_support() {
        let m = Modulus::new(5).unwrap();
        let zero = Signal::zeros(5);
        let g = Signal::delta(5, 0);
        let eta = rank_one_spreading(&m, &zero, &g);
        assert!(eta.max_abs() < 1e-15);
        // Deltas: support sits on the x = 0 column with unit magnitude.
        let eta_d = rank_one_spreading(&m, &g, &g);
        for x in 0..5 {
            for o in 0..5 {
                let expect = if x == 0 { 1.0 } else { 0.0 };
                assert!((eta_d.at(x, o).norm() - expect).abs() < 1e-13);
            }
        }
    }

    #[test]
    fn gaussian_truncation_matches_long_sum() {
        for n in [5usize, 9, 15] {
            let m = Modulus::new(n).unwrap();
            let short = Window::gaussian(&m);
            let long = Window::periodised_gaussian(&m, 1.0, 10);
            let dev = max_dev_signal(short.signal(), long.signal());
            assert!(dev < 1e-12, "n={n}, dev={dev}");
        }
    }

    #[test]
    fn zero_window_rejected() {
        assert!(Window::new(Signal::zeros(5)).is_err());
    }
}
