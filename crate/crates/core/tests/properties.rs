//! Property-based invariants over random moduli, signals, and operators.

use num_complex::Complex64;
use proptest::prelude::*;
use qtfa_core::cohen::{cohen, cohen_adjoint};
use qtfa_core::fourier::{dft, double_symplectic_dft, symplectic_dft};
use qtfa_core::norms::{mixed_norm, Exponent, MixedNormParams, Weight};
use qtfa_core::operator::{hs_inner, Operator};
use qtfa_core::phase_space::{
    DoublePhaseFunction, Modulus, PhaseFunction, PhasePoint, Signal,
};
use qtfa_core::quantization::{kernel_to_symbol, symbol_to_operator};
use qtfa_core::shifts::gamma_shift;
use qtfa_core::tfa::{stft, Window};

fn arb_modulus() -> impl Strategy<Value = Modulus> {
    prop::sample::select(vec![5usize, 7, 9, 15]).prop_map(|n| Modulus::new(n).unwrap())
}

fn arb_complex() -> impl Strategy<Value = Complex64> {
    (-1.0..1.0f64, -1.0..1.0f64).prop_map(|(re, im)| Complex64::new(re, im))
}

fn signal_for(m: &Modulus) -> impl Strategy<Value = Signal> {
    prop::collection::vec(arb_complex(), m.n()).prop_map(Signal::new)
}

fn operator_for(m: &Modulus) -> impl Strategy<Value = Operator> {
    let n = m.n();
    prop::collection::vec(arb_complex(), n * n)
        .prop_map(move |v| Operator::from_kernel(n, v).unwrap())
}

fn phase_fn_for(m: &Modulus) -> impl Strategy<Value = PhaseFunction> {
    let n = m.n();
    prop::collection::vec(arb_complex(), n * n)
        .prop_map(move |v| PhaseFunction::from_values(n, v).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn dft_preserves_norm((m, f) in arb_modulus().prop_flat_map(|m| {
        let s = signal_for(&m);
        (Just(m), s)
    })) {
        let hat = dft(&m, &f).unwrap();
        prop_assert!((hat.norm() - f.norm()).abs() < 1e-12);
    }

    #[test]
    fn symplectic_transform_is_involutive((m, f) in arb_modulus().prop_flat_map(|m| {
        let s = phase_fn_for(&m);
        (Just(m), s)
    })) {
        let back = symplectic_dft(&m, &symplectic_dft(&m, &f).unwrap()).unwrap();
        prop_assert!(back.max_dev(&f) < 1e-12);
    }

    #[test]
    fn moyal_holds_with_constant_one((m, f, g) in arb_modulus().prop_flat_map(|m| {
        let a = signal_for(&m);
        let b = signal_for(&m);
        (Just(m), a, b)
    })) {
        prop_assume!(g.norm() > 1e-3);
        let v = stft(&m, &f, &Window::new(g.clone()).unwrap());
        let energy = v.inner(&v).re;
        let expect = f.norm().powi(2) * g.norm().powi(2);
        prop_assert!((energy - expect).abs() < 1e-10 * expect.max(1.0));
    }

    #[test]
    fn weyl_correspondence_round_trips((m, s) in arb_modulus().prop_flat_map(|m| {
        let op = operator_for(&m);
        (Just(m), op)
    })) {
        let back = symbol_to_operator(&m, &kernel_to_symbol(&m, &s));
        prop_assert!(back.max_dev(&s) < 1e-11);
        // Unitarity of the symbol map.
        let sym = kernel_to_symbol(&m, &s);
        prop_assert!((sym.norm() - s.hs_norm()).abs() < 1e-10);
    }

    #[test]
    fn gamma_is_isometric_and_transform_reproduces(
        (m, s, t, w1, w2, z1, z2) in arb_modulus().prop_flat_map(|m| {
            let n = m.n();
            let a = operator_for(&m);
            let b = operator_for(&m);
            (Just(m), a, b, 0..n, 0..n, 0..n, 0..n)
        })
    ) {
        let w = PhasePoint { x: w1, omega: w2 };
        let z = PhasePoint { x: z1, omega: z2 };
        let shifted = gamma_shift(&m, w, z, &s);
        prop_assert!((shifted.hs_norm() - s.hs_norm()).abs() < 1e-11);

        prop_assume!(s.hs_norm() > 1e-3);
        let unit = s.scale(Complex64::new(1.0 / s.hs_norm(), 0.0));
        let back = cohen_adjoint(&m, &unit, &cohen(&m, &unit, &t).unwrap()).unwrap();
        prop_assert!(back.max_dev(&t) < 1e-9);
    }

    #[test]
    fn transform_isometry_scales_with_window(
        (m, s, t) in arb_modulus().prop_flat_map(|m| {
            let a = operator_for(&m);
            let b = operator_for(&m);
            (Just(m), a, b)
        })
    ) {
        prop_assume!(s.hs_norm() > 1e-3);
        let table = cohen(&m, &s, &t).unwrap();
        let energy = table.inner(&table).re;
        let expect = hs_inner(&s, &s).re * hs_inner(&t, &t).re;
        prop_assert!((energy - expect).abs() < 1e-9 * expect.max(1.0));
    }

    #[test]
    fn double_symplectic_is_unitary_involution(
        (m, vals) in arb_modulus().prop_flat_map(|m| {
            let n = m.n();
            let v = prop::collection::vec(arb_complex(), n * n * n * n);
            (Just(m), v)
        })
    ) {
        let f = DoublePhaseFunction::from_values(m.n(), vals).unwrap();
        let hat = double_symplectic_dft(&m, &f).unwrap();
        prop_assert!((hat.norm() - f.norm()).abs() < 1e-11);
        let back = double_symplectic_dft(&m, &hat).unwrap();
        prop_assert!(back.max_dev(&f) < 1e-11);
    }

    #[test]
    fn mixed_norm_triangle_and_homogeneity(
        (m, a, b, c) in arb_modulus().prop_flat_map(|m| {
            let n = m.n();
            let u = prop::collection::vec(arb_complex(), n * n * n * n);
            let v = prop::collection::vec(arb_complex(), n * n * n * n);
            (Just(m), u, v, -2.0..2.0f64)
        })
    ) {
        let f = DoublePhaseFunction::from_values(m.n(), a).unwrap();
        let g = DoublePhaseFunction::from_values(m.n(), b).unwrap();
        for (p, q) in [(1.0, 2.0), (2.0, f64::INFINITY), (3.0, 1.5)] {
            let params = MixedNormParams::new(
                Exponent::new(p).unwrap(),
                Exponent::new(q).unwrap(),
            );
            let nf = mixed_norm(&m, &f, params, &Weight::One).unwrap();
            let ng = mixed_norm(&m, &g, params, &Weight::One).unwrap();
            let sum = DoublePhaseFunction::from_values(
                m.n(),
                f.values().iter().zip(g.values()).map(|(x, y)| x + y).collect(),
            )
            .unwrap();
            let ns = mixed_norm(&m, &sum, params, &Weight::One).unwrap();
            prop_assert!(ns <= nf + ng + 1e-10);
            let scaled = f.scale(Complex64::new(c, 0.0));
            let nc = mixed_norm(&m, &scaled, params, &Weight::One).unwrap();
            prop_assert!((nc - c.abs() * nf).abs() < 1e-10 * nf.max(1.0));
        }
    }
}
