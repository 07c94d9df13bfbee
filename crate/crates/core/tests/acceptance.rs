//! Acceptance suite: every release-gating identity of the toolkit, one test
//! per criterion, each printing a pass line with its measured error. Run via
//!
//! ```text
//! cargo test -p qtfa-core --test acceptance -- --nocapture
//! ```

#![allow(clippy::needless_range_loop)]

use num_complex::Complex64;
use qtfa_core::cohen::{
    cohen, cohen_adjoint, fphi_kernel_check, fphi_product_check, reproducing_kernel,
    twisted_convolution,
};
use qtfa_core::fourier::{double_symplectic_dft, phase_space_stft, symplectic_dft};
use qtfa_core::frames::{
    dual_window, operator_analysis, operator_frame_bounds,
    reconstruction_error, span_rank, Lattice,
};
use qtfa_core::norms::{
    default_window_operator, inclusion_experiment, lattice_mixed_norm, mixed_norm,
    operator_modulation_norm, symbol_modulation_norm, Exponent, InclusionConfig,
    MixedNormParams, Weight,
};
use qtfa_core::operator::{hs_inner, rank_one, Operator};
use qtfa_core::phase_space::{DoublePhasePoint, Modulus, PhasePoint};
use qtfa_core::quantization::{
    fn_op_convolve, fourier_wigner, kernel_to_symbol, quantisation_round_trip_error,
    spreading, spreading_to_operator,
};
use qtfa_core::random::{
    random_operator, random_signal, random_unit_operator, seeded_rng,
};
use qtfa_core::shifts::{
    gamma_cocycle_phase, gamma_shift, map_j, symbol_covariance_defect,
};
use qtfa_core::tfa::{stft, wigner, Window};

fn report(criterion: &str, max_error: f64, tolerance: f64) {
    let verdict = if max_error < tolerance { "PASS" } else { "FAIL" };
    println!("acceptance {criterion}: {verdict} (max_error={max_error:.3e}, tolerance={tolerance:.1e})");
    assert!(
        max_error < tolerance,
        "{criterion}: max_error {max_error:.3e} exceeds tolerance {tolerance:.1e}"
    );
}

/// Criterion 1: Projective cocycle law for the operator shifts, exhaustive over all
/// shift pairs of Z_5^8 on five random operators.
#[test]
fn acceptance_01_projective_cocycle() {
    let m = Modulus::new(5).unwrap();
    let mut rng = seeded_rng(1001);
    let mut max_err: f64 = 0.0;
    for _ in 0..5 {
        let s = random_operator(&m, &mut rng);
        // Cache gamma at every point once.
        let mut cache = Vec::with_capacity(625);
        for w1 in 0..5 {
            for w2 in 0..5 {
                for z1 in 0..5 {
                    for z2 in 0..5 {
                        cache.push(gamma_shift(
                            &m,
                            PhasePoint { x: w1, omega: w2 },
                            PhasePoint { x: z1, omega: z2 },
                            &s,
                        ));
                    }
                }
            }
        }
        let idx = |w: PhasePoint, z: PhasePoint| -> usize {
            ((w.x * 5 + w.omega) * 5 + z.x) * 5 + z.omega
        };
        for w1 in 0..5 {
            for w2 in 0..5 {
                for z1 in 0..5 {
                    for z2 in 0..5 {
                        let w = PhasePoint { x: w1, omega: w2 };
                        let z = PhasePoint { x: z1, omega: z2 };
                        let inner = &cache[idx(w, z)];
                        for w1p in 0..5 {
                            for w2p in 0..5 {
                                for z1p in 0..5 {
                                    for z2p in 0..5 {
                                        let wp = PhasePoint { x: w1p, omega: w2p };
                                        let zp = PhasePoint { x: z1p, omega: z2p };
                                        let lhs = gamma_shift(&m, wp, zp, inner);
                                        let phase = gamma_cocycle_phase(&m, w, z, wp, zp);
                                        let sum =
                                            &cache[idx(w.add(wp, &m), z.add(zp, &m))];
                                        let dev = lhs.max_dev(&sum.scale(phase));
                                        max_err = max_err.max(dev);
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    report("01 projective cocycle (exhaustive Z_5^8, 5 operators)", max_err, 1e-12);
}

/// Criterion 2: Orthogonality of the polarised Cohen transform:
/// <Q_R S, Q_T W> = <S, W><T, R> with constant exactly one.
#[test]
fn acceptance_02_transform_moyal() {
    let mut max_rel: f64 = 0.0;
    for n in [5usize, 7, 9] {
        let m = Modulus::new(n).unwrap();
        let mut rng = seeded_rng(1002);
        for _ in 0..100 {
            let r = random_operator(&m, &mut rng);
            let s = random_operator(&m, &mut rng);
            let t = random_operator(&m, &mut rng);
            let w = random_operator(&m, &mut rng);
            let lhs = cohen(&m, &r, &s)
                .unwrap()
                .inner(&cohen(&m, &t, &w).unwrap());
            let rhs = hs_inner(&s, &w) * hs_inner(&t, &r);
            max_rel = max_rel.max((lhs - rhs).norm() / rhs.norm().max(1.0));
        }
    }
    report("02 transform orthogonality (100 quadruples, N=5,7,9)", max_rel, 1e-10);
}

/// Criterion 3: Reproducing formula: adjoint reproduction for unit windows and the
/// pointwise kernel formula at every point of Z_5^4.
#[test]
fn acceptance_03_reproducing_formula() {
    let m7 = Modulus::new(7).unwrap();
    let mut rng = seeded_rng(1003);
    let mut max_err: f64 = 0.0;
    for _ in 0..5 {
        let s = random_unit_operator(&m7, &mut rng);
        for _ in 0..20 {
            let t = random_operator(&m7, &mut rng);
            let back = cohen_adjoint(&m7, &s, &cohen(&m7, &s, &t).unwrap()).unwrap();
            max_err = max_err.max(back.max_dev(&t));
        }
    }

    // Pointwise reproducing kernel at N = 5.
    let m5 = Modulus::new(5).unwrap();
    let s = random_unit_operator(&m5, &mut rng);
    let t = random_operator(&m5, &mut rng);
    let table = cohen(&m5, &s, &t).unwrap();
    let mut points = Vec::with_capacity(625);
    for w1 in 0..5 {
        for w2 in 0..5 {
            for z1 in 0..5 {
                for z2 in 0..5 {
                    points.push(DoublePhasePoint::new(
                        PhasePoint { x: w1, omega: w2 },
                        PhasePoint { x: z1, omega: z2 },
                    ));
                }
            }
        }
    }
    let mut kernel_err: f64 = 0.0;
    for &p in &points {
        let mut acc = Complex64::ZERO;
        for &q in &points {
            acc += table.at_point(q) * reproducing_kernel(&m5, &s, p, q);
        }
        acc /= 25.0;
        kernel_err = kernel_err.max((acc - table.at_point(p)).norm());
    }
    let err = max_err.max(kernel_err);
    report("03 reproducing formula (5 windows x 20 operators; all N=5 points)", err, 1e-10);
}

/// Criterion 4: Symbol covariance of the operator shifts, exhaustive at N = 5, and the
/// rank-one Wigner-window STFT factorisation at N = 7.
#[test]
fn acceptance_04_symbol_covariance() {
    let m = Modulus::new(5).unwrap();
    let mut rng = seeded_rng(1004);
    let s = random_operator(&m, &mut rng);
    let mut max_err: f64 = 0.0;
    for w1 in 0..5 {
        for w2 in 0..5 {
            for z1 in 0..5 {
                for z2 in 0..5 {
                    let w = PhasePoint { x: w1, omega: w2 };
                    let z = PhasePoint { x: z1, omega: z2 };
                    max_err = max_err.max(symbol_covariance_defect(&m, w, z, &s));
                }
            }
        }
    }
    report("04a symbol covariance (exhaustive Z_5^4)", max_err, 1e-11);

    // Rank-one factorisation: with V the 2D phase-space STFT,
    // V_{W(psi,phi)} W(f,g)(a, b) = zeta^{-a2 b2} V_psi f(a - Jb/2)
    //                               conj(V_phi g(a + Jb/2)).
    let m7 = Modulus::new(7).unwrap();
    let psi = random_signal(&m7, &mut rng);
    let phi = random_signal(&m7, &mut rng);
    let f = random_signal(&m7, &mut rng);
    let g = random_signal(&m7, &mut rng);
    let table = phase_space_stft(
        &m7,
        &wigner(&m7, &f, &g),
        &wigner(&m7, &psi, &phi),
        1,
    );
    let vf = stft(&m7, &f, &Window::new(psi).unwrap());
    let vg = stft(&m7, &g, &Window::new(phi).unwrap());
    let h = m7.half();
    let mut magic_err: f64 = 0.0;
    for a1 in 0..7 {
        for a2 in 0..7 {
            for b1 in 0..7 {
                for b2 in 0..7 {
                    let a = PhasePoint { x: a1, omega: a2 };
                    let b = PhasePoint { x: b1, omega: b2 };
                    let hjb = map_j(&m7, b).scale(h, &m7);
                    let left = a.sub(hjb, &m7);
                    let right = a.add(hjb, &m7);
                    let phase = m7.zeta_pow(-((a2 * b2) as i64));
                    let expect = phase
                        * vf.at(left.x, left.omega)
                        * vg.at(right.x, right.omega).conj();
                    magic_err =
                        magic_err.max((table.at(a1, a2, b1, b2) - expect).norm());
                }
            }
        }
    }
    report("04b rank-one Wigner-window factorisation (N=7)", magic_err, 1e-11);
}

/// Criterion 5: Twisted-convolution reproduction:
/// Q_S T (*) Q_R W = <W, S> Q_R T over 100 random quadruples.
#[test]
fn acceptance_05_twisted_reproduction() {
    let m = Modulus::new(5).unwrap();
    let mut rng = seeded_rng(1005);
    let mut max_err: f64 = 0.0;
    for _ in 0..100 {
        let s = random_operator(&m, &mut rng);
        let t = random_operator(&m, &mut rng);
        let r = random_operator(&m, &mut rng);
        let w = random_operator(&m, &mut rng);
        let lhs = twisted_convolution(
            &m,
            &cohen(&m, &s, &t).unwrap(),
            &cohen(&m, &r, &w).unwrap(),
        )
        .unwrap();
        let rhs = cohen(&m, &r, &t).unwrap().scale(hs_inner(&w, &s));
        max_err = max_err.max(lhs.max_dev(&rhs));
    }
    report("05 twisted-convolution reproduction (100 quadruples, N=5)", max_err, 1e-10);
}

/// Criterion 6: Double-symplectic transform identities: involutivity, the product
/// identity, and the kernel identity.
#[test]
fn acceptance_06_double_symplectic_identities() {
    let m = Modulus::new(5).unwrap();
    let mut rng = seeded_rng(1006);

    let f = qtfa_core::random::random_double_phase_function(&m, &mut rng);
    let back = double_symplectic_dft(&m, &double_symplectic_dft(&m, &f).unwrap()).unwrap();
    let inv_err = back.max_dev(&f);

    let s = random_operator(&m, &mut rng);
    let t = random_operator(&m, &mut rng);
    let r = random_operator(&m, &mut rng);
    let w = random_operator(&m, &mut rng);
    let prod_err = fphi_product_check(&m, &s, &t, &r, &w).unwrap().max_deviation;
    let kern_err = fphi_kernel_check(&m, &s, &t).unwrap().max_deviation;

    let err = inv_err.max(prod_err).max(kern_err);
    report("06 double-symplectic involution, product and kernel identities (N=5)", err, 1e-10);
}

/// Criterion 7: Quantisation round-trips and the convolution theorems.
#[test]
fn acceptance_07_quantisation_and_convolution() {
    let mut max_err: f64 = 0.0;
    for n in [5usize, 7, 9] {
        let m = Modulus::new(n).unwrap();
        let mut rng = seeded_rng(1007);
        let s = random_operator(&m, &mut rng);
        max_err = max_err.max(quantisation_round_trip_error(&m, &s));

        // eta = F_O(sigma) and the rank-one ambiguity form.
        let eta = spreading(&m, &s);
        let via_symbol = symplectic_dft(&m, &kernel_to_symbol(&m, &s)).unwrap();
        max_err = max_err.max(eta.max_dev(&via_symbol));
        max_err = max_err.max(spreading_to_operator(&m, &eta).max_dev(&s));

        // F_W(f * S) = F_O(f) . F_W(S).
        let f = qtfa_core::random::random_phase_function(&m, &mut rng);
        let lhs = fourier_wigner(&m, &fn_op_convolve(&m, &f, &s));
        let fhat = symplectic_dft(&m, &f).unwrap();
        let fw = fourier_wigner(&m, &s);
        let rhs = qtfa_core::phase_space::PhaseFunction::from_fn(n, |x, o| {
            fhat.at(x, o) * fw.at(x, o)
        });
        max_err = max_err.max(lhs.max_dev(&rhs));

        // F_O(S * T) = F_W(S) . F_W(T).
        let t = random_operator(&m, &mut rng);
        let conv = qtfa_core::quantization::op_op_convolve(&m, &s, &t);
        let lhs2 = symplectic_dft(&m, &conv).unwrap();
        let fwt = fourier_wigner(&m, &t);
        let rhs2 = qtfa_core::phase_space::PhaseFunction::from_fn(n, |x, o| {
            fw.at(x, o) * fwt.at(x, o)
        });
        max_err = max_err.max(lhs2.max_dev(&rhs2));
    }
    report("07 quantisation round-trips + convolution theorems (N=5,7,9)", max_err, 1e-10);
}

/// Criterion 8: Operator Gabor frames: positive bounds and dual reconstruction for the
/// tensor Gaussian at N=15 on the (3,3) lattice pair, tightness of the full
/// lattice, and full span rank for N <= 7.
#[test]
fn acceptance_08_frames() {
    // Tensor Gaussian frame at N = 15, a = b = 3.
    let m = Modulus::new(15).unwrap();
    let g = Window::gaussian(&m);
    let s = rank_one(g.signal(), g.signal());
    let lat = Lattice::new(&m, 3, 3).unwrap();
    let lats = (&lat, &lat);
    let (lo, hi) = operator_frame_bounds(&m, &s, lats);
    assert!(lo > 1e-8, "lower frame bound must be positive, got {lo}");
    assert!(hi >= lo);
    let dual = dual_window(&m, &s, lats).unwrap();
    let mut rng = seeded_rng(1008);
    let mut recon_err: f64 = 0.0;
    for _ in 0..3 {
        let t = random_operator(&m, &mut rng);
        recon_err = recon_err.max(reconstruction_error(&m, &s, &dual, lats, &t).unwrap());
    }
    report("08a dual-window reconstruction (N=15, a=b=3)", recon_err, 1e-9);

    // Full-lattice tightness: A = B for unit windows.
    let mut tight_err: f64 = 0.0;
    for n in [5usize, 7] {
        let mn = Modulus::new(n).unwrap();
        let mut rng = seeded_rng(10081);
        let w = random_unit_operator(&mn, &mut rng);
        let full = Lattice::full(&mn);
        let (a, b) = operator_frame_bounds(&mn, &w, (&full, &full));
        tight_err = tight_err.max((a - b).abs()).max((a - 1.0).abs());
    }
    // At N = 15 check the equivalent statement through the reproducing
    // property: the full-grid frame operator acts as the identity.
    let t15 = random_operator(&m, &mut rng);
    let s15 = random_unit_operator(&m, &mut rng);
    let back = cohen_adjoint(&m, &s15, &cohen(&m, &s15, &t15).unwrap()).unwrap();
    tight_err = tight_err.max(back.max_dev(&t15));
    report("08b full-lattice tightness A=B", tight_err, 1e-10);

    // Span rank N^2 for nonzero windows at N <= 7.
    for n in [5usize, 7] {
        let mn = Modulus::new(n).unwrap();
        let mut rng = seeded_rng(10082);
        let full = Lattice::full(&mn);
        for window in [
            random_operator(&mn, &mut rng),
            rank_one(
                &qtfa_core::phase_space::Signal::delta(n, 0),
                &qtfa_core::phase_space::Signal::delta(n, 0),
            ),
        ] {
            let rank = span_rank(&mn, &window, (&full, &full));
            assert_eq!(rank, n * n, "span rank at n={n}");
        }
    }
    println!("acceptance 08c span rank = N^2 (N=5,7): PASS");
}

/// Criterion 9: Norm calibration: the (2,2) operator modulation norm is the
/// Hilbert-Schmidt norm, and the symbol route equals the operator route.
#[test]
fn acceptance_09_norm_calibration() {
    let m = Modulus::new(9).unwrap();
    let window = default_window_operator(&m);
    let p22 = MixedNormParams::new(Exponent::TWO, Exponent::TWO);
    let mut rng = seeded_rng(1009);
    let mut hs_err: f64 = 0.0;
    for _ in 0..10 {
        let t = random_operator(&m, &mut rng);
        let nrm = operator_modulation_norm(&m, &t, &window, p22, &Weight::One).unwrap();
        hs_err = hs_err.max((nrm - t.hs_norm()).abs());
    }
    report("09a (2,2) modulation norm = HS norm (N=9)", hs_err, 1e-10);

    let m5 = Modulus::new(5).unwrap();
    let w5 = default_window_operator(&m5);
    let mut route_err: f64 = 0.0;
    for (p, q) in [(1.0, 2.0), (2.0, 1.0), (1.0, f64::INFINITY), (2.0, f64::INFINITY)] {
        let params = MixedNormParams::new(Exponent::new(p).unwrap(), Exponent::new(q).unwrap());
        let t = random_operator(&m5, &mut rng);
        let direct = operator_modulation_norm(&m5, &t, &w5, params, &Weight::One).unwrap();
        let via_symbol =
            symbol_modulation_norm(&m5, &kernel_to_symbol(&m5, &t), params, &Weight::One)
                .unwrap();
        route_err = route_err.max((direct - via_symbol).abs() / direct.max(1.0));
    }
    report("09b operator route = symbol route (N=5)", route_err, 1e-10);
}

/// Criterion 10: Discrete characterisation: lattice mixed norms of the analysis
/// coefficients are equivalent to the full-grid modulation norms, with
/// ratio intervals stable across two Gaussian-type windows.
#[test]
fn acceptance_10_discrete_characterisation() {
    let m = Modulus::new(15).unwrap();
    let lat = Lattice::new(&m, 3, 3).unwrap();
    let lats = (&lat, &lat);
    let g1 = Window::gaussian(&m);
    let g2 = Window::gaussian_scaled(&m, 1.3);
    let windows = [
        rank_one(g1.signal(), g1.signal()),
        rank_one(g2.signal(), g2.signal()),
    ];
    let exps = [Exponent::ONE, Exponent::TWO, Exponent::Infinity];
    let mut rng = seeded_rng(1010);
    let draws = 100usize;
    let operators: Vec<Operator> = (0..draws).map(|_| random_operator(&m, &mut rng)).collect();

    // intervals[window][pi][qi] = (min, max)
    let mut intervals = [[[(f64::INFINITY, 0.0f64); 3]; 3]; 2];
    for (wi, window) in windows.iter().enumerate() {
        for t in &operators {
            let coeffs = operator_analysis(&m, window, lats, t).unwrap();
            let table = cohen(&m, window, t).unwrap();
            for (pi, &p) in exps.iter().enumerate() {
                for (qi, &q) in exps.iter().enumerate() {
                    let params = MixedNormParams::new(p, q);
                    let lattice = lattice_mixed_norm(&coeffs, &lat, &lat, params);
                    let full = mixed_norm(&m, &table, params, &Weight::One).unwrap();
                    assert!(full > 0.0);
                    let ratio = lattice / full;
                    let cell = &mut intervals[wi][pi][qi];
                    cell.0 = cell.0.min(ratio);
                    cell.1 = cell.1.max(ratio);
                }
            }
        }
    }
    let mut max_drift: f64 = 0.0;
    for pi in 0..3 {
        for qi in 0..3 {
            let (lo1, hi1) = intervals[0][pi][qi];
            let (lo2, hi2) = intervals[1][pi][qi];
            assert!(lo1 > 0.0 && hi1.is_finite(), "interval must be bounded");
            println!(
                "acceptance 10 ratios p={pi} q={qi}: window1 [{lo1:.4}, {hi1:.4}], window2 [{lo2:.4}, {hi2:.4}]"
            );
            max_drift = max_drift
                .max((lo1 - lo2).abs() / lo1)
                .max((hi1 - hi2).abs() / hi1);
        }
    }
    println!("acceptance 10 max interval drift across windows: {max_drift:.4}");
    assert!(
        max_drift <= 0.10,
        "interval endpoints must be stable within 10%, drift {max_drift:.4}"
    );
    println!("acceptance 10 discrete characterisation (N=15, a=b=3, 100 draws): PASS");
}

/// Criterion 11: Symbol-inclusion ratio sweeps: finite intervals for the mixed pairs,
/// exact collapse at equal exponents.
#[test]
fn acceptance_11_inclusion_ratios() {
    let m = Modulus::new(9).unwrap();
    let pairs = [
        (Exponent::ONE, Exponent::TWO),
        (Exponent::ONE, Exponent::Infinity),
        (Exponent::TWO, Exponent::Infinity),
    ];
    let reports = inclusion_experiment(
        &m,
        &pairs,
        InclusionConfig {
            draws: 100,
            seed: 1011,
        },
    )
    .unwrap();
    for r in &reports {
        assert!(r.forward.0 > 0.0 && r.forward.1.is_finite());
        println!(
            "acceptance 11 ratio interval p={:?} q={:?}: forward [{:.4}, {:.4}], converse [{:.4}, {:.4}]",
            r.p, r.q, r.forward.0, r.forward.1, r.converse.0, r.converse.1
        );
    }
    let collapse = inclusion_experiment(
        &m,
        &[(Exponent::TWO, Exponent::TWO)],
        InclusionConfig {
            draws: 20,
            seed: 1011,
        },
    )
    .unwrap();
    let dev = (collapse[0].forward.0 - 1.0)
        .abs()
        .max((collapse[0].forward.1 - 1.0).abs());
    report("11 inclusion ratios (N=9, 100 draws; p=q collapse)", dev, 1e-9);
}

/// Criterion 12 is exercised end to end by the command-line crate's determinism test;
/// here we pin the library-side contract it relies on: identical seeds give
/// identical draws.
#[test]
fn acceptance_12_seeded_determinism() {
    let m = Modulus::new(5).unwrap();
    let a = random_operator(&m, &mut seeded_rng(42));
    let b = random_operator(&m, &mut seeded_rng(42));
    assert_eq!(a.kernel(), b.kernel());
    let t1 = cohen(&m, &a, &b).unwrap();
    let t2 = cohen(&m, &a, &b).unwrap();
    assert_eq!(t1.values(), t2.values());
    println!("acceptance 12 seeded determinism (library side): PASS");
}
