//! Named identity suites: each runs a set of checks at the configured
//! modulus and seed and reports one line per identity.

use serde::Serialize;

use qtfa_core::cohen::{
    cohen, cohen_adjoint, fphi_kernel_check, fphi_product_check, reproducing_kernel,
    twisted_convolution, twisted_convolution_naive,
};
use qtfa_core::fourier::{double_symplectic_dft, symplectic_dft};
use qtfa_core::frames::{
    dual_window, operator_frame_bounds, reconstruction_error, span_rank, Lattice,
};
use qtfa_core::norms::{
    default_window_operator, mixed_norm, operator_modulation_norm, symbol_modulation_norm,
    Exponent, MixedNormParams, ModeratedWeight, Weight,
};
use qtfa_core::operator::{hs_inner, rank_one};
use qtfa_core::phase_space::{DoublePhasePoint, Modulus, PhaseFunction, PhasePoint};
use qtfa_core::quantization::{
    alpha_shift, fn_op_convolve, fourier_wigner, kernel_to_symbol, op_op_convolve,
    quantisation_round_trip_error, spreading, spreading_to_operator,
};
use qtfa_core::random::{
    random_operator, random_signal, random_unit_operator, seeded_rng,
};
use qtfa_core::shifts::{
    beta_shift, gamma_cocycle_phase, gamma_shift, kernel_covariance_prediction,
    symbol_covariance_defect, symplectic_modulation,
};
use qtfa_core::tfa::{stft, stft_adjoint, Window};

/// One identity check inside a suite.
#[derive(Debug, Clone, Serialize)]
pub struct IdentityResult {
    pub identity: String,
    pub n: usize,
    pub max_error: f64,
    pub tolerance: f64,
    pub pass: bool,
}

/// Knobs shared across suites.
#[derive(Debug, Clone, Copy)]
pub struct SuiteOptions {
    pub seed: u64,
    /// Inner and outer exponents for the norm checks.
    pub p: Exponent,
    pub q: Exponent,
    /// Weight for the weighted norm checks.
    pub weight: Weight,
    /// Lattice steps for the frame checks; `None` picks the largest
    /// oversampled subgroup lattice.
    pub lattice: Option<(usize, usize)>,
}

impl SuiteOptions {
    pub fn new(seed: u64) -> Self {
        SuiteOptions {
            seed,
            p: Exponent::ONE,
            q: Exponent::TWO,
            weight: Weight::One,
            lattice: None,
        }
    }
}

fn result(identity: &str, n: usize, max_error: f64, tolerance: f64) -> IdentityResult {
    IdentityResult {
        identity: identity.to_string(),
        n,
        max_error,
        tolerance,
        pass: max_error < tolerance,
    }
}

pub const SUITE_NAMES: &[&str] = &[
    "cocycle",
    "moyal",
    "reproduce",
    "twisted",
    "fphi",
    "covariance",
    "qha",
    "frames",
    "norms",
    "all",
];

/// Human-readable map of what each suite verifies, printed by `--list`.
pub fn describe_suites() -> Vec<(&'static str, &'static str)> {
    vec![
        ("cocycle", "projective composition law of the operator shifts and its diagonal reduction"),
        ("moyal", "orthogonality relations: signal-level Moyal, transform isometry, operator Moyal"),
        ("reproduce", "adjoint reproduction, reproducing kernel, STFT resolution of identity"),
        ("twisted", "twisted convolution on double phase space and its reproducing relation"),
        ("fphi", "double-symplectic transform: involution, product identity, kernel identity"),
        ("covariance", "symbol and kernel covariance of operator shifts; operator modulation"),
        ("qha", "kernel/symbol/spreading round trips and the convolution theorems"),
        ("frames", "operator Gabor frame bounds, dual-window reconstruction, span rank"),
        ("norms", "mixed-norm calibration: HS anchor, symbol route, Bochner route, Young bound"),
        ("all", "every suite above"),
    ]
}

pub fn run_suite(
    name: &str,
    m: &Modulus,
    opts: &SuiteOptions,
) -> anyhow::Result<Vec<IdentityResult>> {
    let mut out = Vec::new();
    match name {
        "cocycle" => suite_cocycle(m, opts, &mut out),
        "moyal" => suite_moyal(m, opts, &mut out),
        "reproduce" => suite_reproduce(m, opts, &mut out),
        "twisted" => suite_twisted(m, opts, &mut out),
        "fphi" => suite_fphi(m, opts, &mut out),
        "covariance" => suite_covariance(m, opts, &mut out),
        "qha" => suite_qha(m, opts, &mut out),
        "frames" => suite_frames(m, opts, &mut out)?,
        "norms" => suite_norms(m, opts, &mut out),
        "all" => {
            for sub in SUITE_NAMES.iter().filter(|s| **s != "all") {
                out.extend(run_suite(sub, m, opts)?);
            }
        }
        other => anyhow::bail!("unknown suite '{other}'; use --list"),
    }
    Ok(out)
}

/// Deterministic sample of shift pairs: exhaustive when the grid is small,
/// otherwise a seeded draw.
fn shift_pairs(m: &Modulus, seed: u64, cap: usize) -> Vec<(PhasePoint, PhasePoint)> {
    let n = m.n();
    let total = n * n * n * n;
    if total <= cap {
        let mut pairs = Vec::with_capacity(total);
        for w1 in 0..n {
            for w2 in 0..n {
                for z1 in 0..n {
                    for z2 in 0..n {
                        pairs.push((
                            PhasePoint { x: w1, omega: w2 },
                            PhasePoint { x: z1, omega: z2 },
                        ));
                    }
                }
            }
        }
        pairs
    } else {
        use qtfa_core::rand::Rng;
        let mut rng = seeded_rng(seed ^ 0x9e3779b9);
        (0..cap)
            .map(|_| {
                (
                    PhasePoint {
                        x: rng.gen_range(0..n),
                        omega: rng.gen_range(0..n),
                    },
                    PhasePoint {
                        x: rng.gen_range(0..n),
                        omega: rng.gen_range(0..n),
                    },
                )
            })
            .collect()
    }
}

fn suite_cocycle(m: &Modulus, opts: &SuiteOptions, out: &mut Vec<IdentityResult>) {
    let seed = opts.seed;
    let n = m.n();
    let mut rng = seeded_rng(seed);
    let s = random_operator(m, &mut rng);
    // Exhaustive pair set at N = 5, a deterministic sample beyond.
    let pairs = shift_pairs(m, seed, 625);
    let outer_cap = if pairs.len() > 400 { 60 } else { pairs.len() };
    let mut max_err: f64 = 0.0;
    for &(w, z) in pairs.iter().take(outer_cap) {
        let inner = gamma_shift(m, w, z, &s);
        for &(wp, zp) in pairs.iter().take(outer_cap) {
            let lhs = gamma_shift(m, wp, zp, &inner);
            let phase = gamma_cocycle_phase(m, w, z, wp, zp);
            let rhs = gamma_shift(m, w.add(wp, m), z.add(zp, m), &s).scale(phase);
            max_err = max_err.max(lhs.max_dev(&rhs));
        }
    }
    out.push(result("gamma cocycle law", n, max_err, 1e-12));

    let mut diag_err: f64 = 0.0;
    for &(_, z) in &pairs {
        diag_err = diag_err.max(gamma_shift(m, z, z, &s).max_dev(&alpha_shift(m, z, &s)));
    }
    out.push(result("diagonal reduction to operator translation", n, diag_err, 1e-13));
}

fn suite_moyal(m: &Modulus, opts: &SuiteOptions, out: &mut Vec<IdentityResult>) {
    let seed = opts.seed;
    let n = m.n();
    let mut rng = seeded_rng(seed);

    let f = random_signal(m, &mut rng);
    let g = random_signal(m, &mut rng);
    let v = stft(m, &f, &Window::new(g.clone()).unwrap());
    let energy = v.inner(&v).re;
    let expect = f.norm().powi(2) * g.norm().powi(2);
    out.push(result(
        "signal Moyal identity (constant one)",
        n,
        (energy - expect).abs() / expect.max(1.0),
        1e-10,
    ));

    let s = random_unit_operator(m, &mut rng);
    let t = random_operator(m, &mut rng);
    let table = cohen(m, &s, &t).unwrap();
    let iso = (table.inner(&table).re - hs_inner(&t, &t).re).abs()
        / hs_inner(&t, &t).re.max(1.0);
    out.push(result("transform isometry for unit windows", n, iso, 1e-10));

    let mut max_rel: f64 = 0.0;
    for _ in 0..20 {
        let r = random_operator(m, &mut rng);
        let s2 = random_operator(m, &mut rng);
        let t2 = random_operator(m, &mut rng);
        let w2 = random_operator(m, &mut rng);
        let lhs = cohen(m, &r, &s2).unwrap().inner(&cohen(m, &t2, &w2).unwrap());
        let rhs = hs_inner(&s2, &w2) * hs_inner(&t2, &r);
        max_rel = max_rel.max((lhs - rhs).norm() / rhs.norm().max(1.0));
    }
    out.push(result("operator Moyal identity", n, max_rel, 1e-10));
}

fn suite_reproduce(m: &Modulus, opts: &SuiteOptions, out: &mut Vec<IdentityResult>) {
    let seed = opts.seed;
    let n = m.n();
    let mut rng = seeded_rng(seed);
    let s = random_unit_operator(m, &mut rng);
    let t = random_operator(m, &mut rng);
    let back = cohen_adjoint(m, &s, &cohen(m, &s, &t).unwrap()).unwrap();
    out.push(result("adjoint reproduction for unit windows", n, back.max_dev(&t), 1e-10));

    // Pointwise kernel formula over a deterministic point sample. The full
    // q-sum against k_p(q) = conj(Q_S(gamma_p S)(q)) is a transform-table
    // inner product, so each probe point costs one table.
    let points: Vec<DoublePhasePoint> = shift_pairs(m, seed, 625)
        .into_iter()
        .map(|(w, z)| DoublePhasePoint::new(w, z))
        .collect();
    let table = cohen(m, &s, &t).unwrap();
    let mut kernel_err: f64 = 0.0;
    for &p in points.iter().take(20) {
        let atom_table = cohen(m, &s, &gamma_shift(m, p.w, p.z, &s)).unwrap();
        let acc = table.inner(&atom_table);
        kernel_err = kernel_err.max((acc - table.at_point(p)).norm());
        // Spot-check the kernel itself against the definition.
        let q = points[(p.w.x + p.z.omega) % points.len()];
        let via_table = atom_table.at_point(q).conj();
        let direct = reproducing_kernel(m, &s, p, q);
        kernel_err = kernel_err.max((via_table - direct).norm());
    }
    out.push(result("reproducing kernel formula", n, kernel_err, 1e-10));

    let f = random_signal(m, &mut rng);
    let g = Window::new(qtfa_core::random::random_unit_signal(m, &mut rng)).unwrap();
    let rec = stft_adjoint(m, &stft(m, &f, &g), &g);
    let dev: f64 = rec
        .values()
        .iter()
        .zip(f.values())
        .map(|(a, b)| (a - b).norm())
        .fold(0.0, f64::max);
    out.push(result("STFT resolution of the identity", n, dev, 1e-10));
}

fn suite_twisted(m: &Modulus, opts: &SuiteOptions, out: &mut Vec<IdentityResult>) {
    let seed = opts.seed;
    let n = m.n();
    let mut rng = seeded_rng(seed);
    let mut max_err: f64 = 0.0;
    for _ in 0..10 {
        let s = random_operator(m, &mut rng);
        let t = random_operator(m, &mut rng);
        let r = random_operator(m, &mut rng);
        let w = random_operator(m, &mut rng);
        let lhs = twisted_convolution(m, &cohen(m, &s, &t).unwrap(), &cohen(m, &r, &w).unwrap())
            .unwrap();
        let rhs = cohen(m, &r, &t).unwrap().scale(hs_inner(&w, &s));
        max_err = max_err.max(lhs.max_dev(&rhs));
    }
    out.push(result("twisted reproducing relation", n, max_err, 1e-10));

    let s = random_unit_operator(m, &mut rng);
    let t = random_operator(m, &mut rng);
    let qst = cohen(m, &s, &t).unwrap();
    let conv = twisted_convolution(m, &qst, &cohen(m, &s, &s).unwrap()).unwrap();
    out.push(result("idempotence at unit windows", n, conv.max_dev(&qst), 1e-10));

    if n <= 5 {
        let f = qtfa_core::random::random_double_phase_function(m, &mut rng);
        let g = qtfa_core::random::random_double_phase_function(m, &mut rng);
        let fast = twisted_convolution(m, &f, &g).unwrap();
        let slow = twisted_convolution_naive(m, &f, &g);
        out.push(result("spectral path matches direct sum", n, fast.max_dev(&slow), 1e-11));
    }
}

fn suite_fphi(m: &Modulus, opts: &SuiteOptions, out: &mut Vec<IdentityResult>) {
    let seed = opts.seed;
    let n = m.n();
    let mut rng = seeded_rng(seed);
    let f = qtfa_core::random::random_double_phase_function(m, &mut rng);
    let back = double_symplectic_dft(m, &double_symplectic_dft(m, &f).unwrap()).unwrap();
    out.push(result("double-symplectic involution", n, back.max_dev(&f), 1e-10));

    let s = random_operator(m, &mut rng);
    let t = random_operator(m, &mut rng);
    let r = random_operator(m, &mut rng);
    let w = random_operator(m, &mut rng);
    out.push(result(
        "product identity",
        n,
        fphi_product_check(m, &s, &t, &r, &w).unwrap().max_deviation,
        1e-10,
    ));
    out.push(result(
        "kernel identity",
        n,
        fphi_kernel_check(m, &s, &t).unwrap().max_deviation,
        1e-10,
    ));
}

fn suite_covariance(m: &Modulus, opts: &SuiteOptions, out: &mut Vec<IdentityResult>) {
    let seed = opts.seed;
    let n = m.n();
    let mut rng = seeded_rng(seed);
    let s = random_operator(m, &mut rng);
    let pairs = shift_pairs(m, seed, 625);
    let mut sym_err: f64 = 0.0;
    let mut ker_err: f64 = 0.0;
    for &(w, z) in &pairs {
        sym_err = sym_err.max(symbol_covariance_defect(m, w, z, &s));
        ker_err = ker_err.max(
            kernel_covariance_prediction(m, w, z, &s).max_dev(&gamma_shift(m, w, z, &s)),
        );
    }
    out.push(result("symbol covariance of operator shifts", n, sym_err, 1e-11));
    out.push(result("kernel covariance of operator shifts", n, ker_err, 1e-11));

    let sigma = kernel_to_symbol(m, &s);
    let mut beta_err: f64 = 0.0;
    for &(w, _) in pairs.iter().take(pairs.len().min(n * n)) {
        let lhs = kernel_to_symbol(m, &beta_shift(m, w, &s));
        let rhs = symplectic_modulation(m, w, &sigma);
        beta_err = beta_err.max(lhs.max_dev(&rhs));
    }
    out.push(result("operator modulation acts as symbol modulation", n, beta_err, 1e-11));
}

fn suite_qha(m: &Modulus, opts: &SuiteOptions, out: &mut Vec<IdentityResult>) {
    let seed = opts.seed;
    let n = m.n();
    let mut rng = seeded_rng(seed);
    let s = random_operator(m, &mut rng);
    out.push(result(
        "kernel/symbol/spreading round trips",
        n,
        quantisation_round_trip_error(m, &s),
        1e-10,
    ));

    let eta = spreading(m, &s);
    let via_symbol = symplectic_dft(m, &kernel_to_symbol(m, &s)).unwrap();
    let fw_dev = fourier_wigner(m, &s)
        .max_dev(&eta)
        .max(eta.max_dev(&via_symbol))
        .max(spreading_to_operator(m, &eta).max_dev(&s));
    out.push(result("spreading = symplectic transform of the symbol", n, fw_dev, 1e-10));

    let f = qtfa_core::random::random_phase_function(m, &mut rng);
    let lhs = fourier_wigner(m, &fn_op_convolve(m, &f, &s));
    let fhat = symplectic_dft(m, &f).unwrap();
    let fw = fourier_wigner(m, &s);
    let rhs = PhaseFunction::from_fn(n, |x, o| fhat.at(x, o) * fw.at(x, o));
    out.push(result("function-operator convolution theorem", n, lhs.max_dev(&rhs), 1e-10));

    let t = random_operator(m, &mut rng);
    let conv = op_op_convolve(m, &s, &t);
    let lhs2 = symplectic_dft(m, &conv).unwrap();
    let fwt = fourier_wigner(m, &t);
    let rhs2 = PhaseFunction::from_fn(n, |x, o| fw.at(x, o) * fwt.at(x, o));
    let comm = conv.max_dev(&op_op_convolve(m, &t, &s));
    out.push(result(
        "operator-operator convolution theorem + commutativity",
        n,
        lhs2.max_dev(&rhs2).max(comm),
        1e-10,
    ));
}

fn suite_frames(
    m: &Modulus,
    opts: &SuiteOptions,
    out: &mut Vec<IdentityResult>,
) -> anyhow::Result<()> {
    let seed = opts.seed;
    let n = m.n();
    let mut rng = seeded_rng(seed);
    // Default: the largest steps with step^2 <= N, keeping the pair
    // oversampled; --lattice overrides.
    let (a, b) = opts.lattice.unwrap_or_else(|| {
        let step = (1..=n).rev().find(|d| n.is_multiple_of(*d) && d * d <= n).unwrap_or(1);
        (step, step)
    });
    let g = Window::gaussian(m);
    let s = rank_one(g.signal(), g.signal());
    let lat = Lattice::new(m, a, b).map_err(|e| anyhow::anyhow!("{e}"))?;
    let lats = (&lat, &lat);
    let (lo, hi) = operator_frame_bounds(m, &s, lats);
    let bound_err = if lo > 1e-8 && hi >= lo { 0.0 } else { 1.0 };
    out.push(result(
        &format!("tensor Gaussian frame bounds positive (a={a}, b={b})"),
        n,
        bound_err,
        0.5,
    ));

    let dual = dual_window(m, &s, lats).map_err(|e| anyhow::anyhow!("{e}"))?;
    let t = random_operator(m, &mut rng);
    out.push(result(
        "dual-window reconstruction",
        n,
        reconstruction_error(m, &s, &dual, lats, &t).unwrap(),
        1e-9,
    ));

    let unit = random_unit_operator(m, &mut rng);
    let back = cohen_adjoint(m, &unit, &cohen(m, &unit, &t).unwrap()).unwrap();
    out.push(result("full-grid tightness (resolution of identity)", n, back.max_dev(&t), 1e-10));

    if n <= 7 {
        let full = Lattice::full(m);
        let rank = span_rank(m, &s, (&full, &full));
        out.push(result(
            "span rank equals the HS dimension",
            n,
            (rank as f64 - (n * n) as f64).abs(),
            0.5,
        ));
    }
    Ok(())
}

fn suite_norms(m: &Modulus, opts: &SuiteOptions, out: &mut Vec<IdentityResult>) {
    let seed = opts.seed;
    let n = m.n();
    let mut rng = seeded_rng(seed);
    let t = random_operator(m, &mut rng);
    let window = default_window_operator(m);
    let p22 = MixedNormParams::new(Exponent::TWO, Exponent::TWO);
    let hs_anchor =
        (operator_modulation_norm(m, &t, &window, p22, &Weight::One).unwrap() - t.hs_norm())
            .abs();
    out.push(result("(2,2) modulation norm equals the HS norm", n, hs_anchor, 1e-10));

    let params = MixedNormParams::new(opts.p, opts.q);
    let direct = operator_modulation_norm(m, &t, &window, params, &opts.weight).unwrap();
    let via_symbol =
        symbol_modulation_norm(m, &kernel_to_symbol(m, &t), params, &opts.weight).unwrap();
    out.push(result(
        "symbol route equals operator route",
        n,
        (direct - via_symbol).abs() / direct.max(1.0),
        1e-10,
    ));

    // Young bound for the twisted convolution, unweighted form.
    let one = MixedNormParams::new(Exponent::ONE, Exponent::ONE);
    let mut young_excess: f64 = 0.0;
    for _ in 0..3 {
        let f = qtfa_core::random::random_double_phase_function(m, &mut rng);
        let h = qtfa_core::random::random_double_phase_function(m, &mut rng);
        let conv = twisted_convolution(m, &f, &h).unwrap();
        let lhs = mixed_norm(m, &conv, params, &Weight::One).unwrap();
        let rhs = mixed_norm(m, &f, one, &Weight::One).unwrap()
            * mixed_norm(m, &h, params, &Weight::One).unwrap();
        young_excess = young_excess.max((lhs - rhs).max(0.0) / rhs.max(1.0));
    }
    out.push(result("twisted Young inequality", n, young_excess, 1e-12));

    // Weighted Young with the moderation constant; the exhaustive constant
    // is an O(N^8) sweep, kept to moderate grids.
    if opts.weight != Weight::One && n <= 9 {
        let mw = ModeratedWeight::new(m, opts.weight, opts.weight);
        let mut excess: f64 = 0.0;
        for _ in 0..3 {
            let f = qtfa_core::random::random_double_phase_function(m, &mut rng);
            let h = qtfa_core::random::random_double_phase_function(m, &mut rng);
            let conv = twisted_convolution(m, &f, &h).unwrap();
            let lhs = mixed_norm(m, &conv, params, &mw.m).unwrap();
            let rhs = mw.moderation_constant
                * mixed_norm(m, &f, one, &mw.v).unwrap()
                * mixed_norm(m, &h, params, &mw.m).unwrap();
            excess = excess.max((lhs - rhs).max(0.0) / rhs.max(1.0));
        }
        out.push(result("weighted twisted Young inequality", n, excess, 1e-12));
    }
}
