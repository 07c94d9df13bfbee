//! Mixed-norm machinery: weighted `l^{p,q}` norms on double phase space,
//! operator and symbol modulation norms, Wiener amalgam norms, Schatten
//! norms, the rank-one atomic decomposition, and the symbol-inclusion
//! experiments.
//!
//! Measure conventions: a 2D slot (one copy of phase space) carries weight
//! `1/N` per point, so the `(2,2)` mixed norm is exactly the
//! double-phase-space norm and the operator `(2,2)` norm equals the
//! Hilbert-Schmidt norm for a unit window.

use num_complex::Complex64;

use crate::cohen::cohen;
use crate::fourier::phase_space_stft;
use crate::frames::{function_dual_window, gabor_frame_bounds, Lattice};
use crate::operator::{rank_one, svd, Operator};
use crate::phase_space::{
    DoublePhaseFunction, DoublePhasePoint, Modulus, PhaseFunction, PhasePoint, Signal,
};
use crate::quantization::kernel_to_symbol;
use crate::shifts::map_u;
use crate::tfa::{tf_shift, Window};
use crate::{QtfaError, Result};

/// A mixed-norm exponent in `[1, inf]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Exponent {
    Finite(f64),
    Infinity,
}

impl Exponent {
    pub fn new(p: f64) -> Result<Self> {
        if p.is_infinite() && p > 0.0 {
            return Ok(Exponent::Infinity);
        }
        if !(1.0..).contains(&p) || p.is_nan() {
            return Err(QtfaError::InvalidExponent(p));
        }
        Ok(Exponent::Finite(p))
    }

    pub const ONE: Exponent = Exponent::Finite(1.0);
    pub const TWO: Exponent = Exponent::Finite(2.0);

    pub fn as_finite(self) -> Option<f64> {
        match self {
            Exponent::Finite(p) => Some(p),
            Exponent::Infinity => None,
        }
    }

    /// `1/p`, with `1/inf = 0`.
    pub fn reciprocal(self) -> f64 {
        match self {
            Exponent::Finite(p) => 1.0 / p,
            Exponent::Infinity => 0.0,
        }
    }
}

/// Inner (over `w`) and outer (over `z`) exponents.
#[derive(Debug, Clone, Copy)]
pub struct MixedNormParams {
    pub p: Exponent,
    pub q: Exponent,
}

impl MixedNormParams {
    pub fn new(p: Exponent, q: Exponent) -> Self {
        MixedNormParams { p, q }
    }
}

/// A positive weight on double phase space.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Weight {
    /// The constant weight one.
    One,
    /// `(1 + |w~|^2 + |z~|^2)^{s/2}` on centered representatives.
    Poly { s: f64 },
}

impl Weight {
    pub fn eval4(&self, m: &Modulus, w: PhasePoint, z: PhasePoint) -> f64 {
        match self {
            Weight::One => 1.0,
            Weight::Poly { s } => {
                let n2 = sq(m.centered(w.x))
                    + sq(m.centered(w.omega))
                    + sq(m.centered(z.x))
                    + sq(m.centered(z.omega));
                (1.0 + n2).powf(s / 2.0)
            }
        }
    }

    pub fn eval2(&self, m: &Modulus, p: PhasePoint) -> f64 {
        match self {
            Weight::One => 1.0,
            Weight::Poly { s } => {
                let n2 = sq(m.centered(p.x)) + sq(m.centered(p.omega));
                (1.0 + n2).powf(s / 2.0)
            }
        }
    }
}

fn sq(v: i64) -> f64 {
    (v * v) as f64
}

/// A weight pair `(v, m)` with the computed moderation constant, the
/// smallest `C` with `m(p + q) <= C v(p) m(q)` over the group.
#[derive(Debug, Clone)]
pub struct ModeratedWeight {
    pub v: Weight,
    pub m: Weight,
    pub moderation_constant: f64,
}

impl ModeratedWeight {
    /// Exhaustive computation over `Z_N^4 x Z_N^4`; constant weights
    /// short-circuit to one.
    pub fn new(modulus: &Modulus, v: Weight, m: Weight) -> Self {
        if v == Weight::One && m == Weight::One {
            return ModeratedWeight {
                v,
                m,
                moderation_constant: 1.0,
            };
        }
        let n = modulus.n();
        let points: Vec<(PhasePoint, PhasePoint)> = (0..n * n * n * n)
            .map(|i| {
                let w = PhasePoint {
                    x: i / (n * n * n),
                    omega: (i / (n * n)) % n,
                };
                let z = PhasePoint {
                    x: (i / n) % n,
                    omega: i % n,
                };
                (w, z)
            })
            .collect();
        let mut worst: f64 = 0.0;
        for &(pw, pz) in &points {
            let vp = v.eval4(modulus, pw, pz);
            for &(qw, qz) in &points {
                let mq = m.eval4(modulus, qw, qz);
                let sum_w = pw.add(qw, modulus);
                let sum_z = pz.add(qz, modulus);
                let msum = m.eval4(modulus, sum_w, sum_z);
                worst = worst.max(msum / (vp * mq));
            }
        }
        ModeratedWeight {
            v,
            m,
            moderation_constant: worst,
        }
    }
}

/// Weighted mixed norm on double phase space:
///
/// `||F|| = ( (1/N) sum_z ( (1/N) sum_w |F(w,z) m(w,z)|^p )^{q/p} )^{1/q}`,
///
/// with maxima replacing the weighted sums at infinite exponents.
pub fn mixed_norm(
    m: &Modulus,
    f: &DoublePhaseFunction,
    params: MixedNormParams,
    weight: &Weight,
) -> Result<f64> {
    let n = m.n();
    if f.n() != n {
        return Err(QtfaError::Dimension {
            what: "double phase function",
            expected: n,
            got: f.n(),
        });
    }
    let inv_n = 1.0 / n as f64;
    let inner = |z1: usize, z2: usize| -> f64 {
        let z = PhasePoint { x: z1, omega: z2 };
        match params.p.as_finite() {
            Some(p) => {
                let mut acc = 0.0;
                for w1 in 0..n {
                    for w2 in 0..n {
                        let w = PhasePoint { x: w1, omega: w2 };
                        let v = f.at(w1, w2, z1, z2).norm() * weight.eval4(m, w, z);
                        acc += v.powf(p);
                    }
                }
                (acc * inv_n).powf(1.0 / p)
            }
            None => {
                let mut best: f64 = 0.0;
                for w1 in 0..n {
                    for w2 in 0..n {
                        let w = PhasePoint { x: w1, omega: w2 };
                        best = best.max(f.at(w1, w2, z1, z2).norm() * weight.eval4(m, w, z));
                    }
                }
                best
            }
        }
    };
    Ok(match params.q.as_finite() {
        Some(q) => {
            let mut acc = 0.0;
            for z1 in 0..n {
                for z2 in 0..n {
                    acc += inner(z1, z2).powf(q);
                }
            }
            (acc * inv_n).powf(1.0 / q)
        }
        None => {
            let mut best: f64 = 0.0;
            for z1 in 0..n {
                for z2 in 0..n {
                    best = best.max(inner(z1, z2));
                }
            }
            best
        }
    })
}

/// Mixed norm under slot measures normalised to probability (`1/N^2` per 2D
/// slot); related to [`mixed_norm`] by `N^{-1/p - 1/q}`. Under a probability
/// measure the norm is nonincreasing in each exponent.
pub fn mixed_norm_probability(
    m: &Modulus,
    f: &DoublePhaseFunction,
    params: MixedNormParams,
    weight: &Weight,
) -> Result<f64> {
    let base = mixed_norm(m, f, params, weight)?;
    let scale = (m.n() as f64).powf(-params.p.reciprocal() - params.q.reciprocal());
    Ok(base * scale)
}

/// Four-exponent mixed norm: independent exponents per scalar coordinate,
/// nested `w1` innermost, then `w2`, `z1`, `z2`, each scalar slot weighted
/// `N^{-1/2}` so that equal pairs collapse to [`mixed_norm`].
#[cfg(feature = "four-exponent")]
pub fn mixed_norm4(
    m: &Modulus,
    f: &DoublePhaseFunction,
    exponents: [Exponent; 4],
    weight: &Weight,
) -> Result<f64> {
    let n = m.n();
    if f.n() != n {
        return Err(QtfaError::Dimension {
            what: "double phase function",
            expected: n,
            got: f.n(),
        });
    }
    let slot = 1.0 / (n as f64).sqrt();
    // Fold one axis at a time, each with the scalar slot measure.
    let lp_slot = |values: &[f64], e: Exponent| -> f64 {
        match e.as_finite() {
            Some(p) => {
                let acc: f64 = values.iter().map(|v| v.powf(p)).sum();
                (acc * slot).powf(1.0 / p)
            }
            None => values.iter().cloned().fold(0.0, f64::max),
        }
    };
    let mut stage_z2 = Vec::with_capacity(n);
    for z2 in 0..n {
        let mut stage_z1 = Vec::with_capacity(n);
        for z1 in 0..n {
            let z = PhasePoint { x: z1, omega: z2 };
            let mut stage_w2 = Vec::with_capacity(n);
            for w2 in 0..n {
                let mut stage_w1 = Vec::with_capacity(n);
                for w1 in 0..n {
                    let w = PhasePoint { x: w1, omega: w2 };
                    stage_w1.push(f.at(w1, w2, z1, z2).norm() * weight.eval4(m, w, z));
                }
                stage_w2.push(lp_slot(&stage_w1, exponents[0]));
            }
            stage_z1.push(lp_slot(&stage_w2, exponents[1]));
        }
        stage_z2.push(lp_slot(&stage_z1, exponents[2]));
    }
    Ok(lp_slot(&stage_z2, exponents[3]))
}

/// The default rank-one Gaussian window `phi0 (x) phi0`.
pub fn default_window_operator(m: &Modulus) -> Operator {
    let g = Window::gaussian(m);
    rank_one(g.signal(), g.signal())
}

/// Operator modulation norm: the weighted mixed norm of the polarised Cohen
/// transform against the given window.
pub fn operator_modulation_norm(
    m: &Modulus,
    t: &Operator,
    window: &Operator,
    params: MixedNormParams,
    weight: &Weight,
) -> Result<f64> {
    let table = cohen(m, window, t)?;
    mixed_norm(m, &table, params, weight)
}

/// Mixed norm of lattice analysis coefficients laid out
/// `[mu_index * |Lambda| + lambda_index]`: inner exponent over `lambda`
/// (weight `covol(Lambda)/N`), outer over `mu`.
pub fn lattice_mixed_norm(
    coeffs: &[Complex64],
    lam: &Lattice,
    mu: &Lattice,
    params: MixedNormParams,
) -> f64 {
    let wl = lam.weight();
    let wm = mu.weight();
    let inner = |i: usize| -> f64 {
        let row = &coeffs[i * lam.len()..(i + 1) * lam.len()];
        match params.p.as_finite() {
            Some(p) => (row.iter().map(|c| c.norm().powf(p)).sum::<f64>() * wl).powf(1.0 / p),
            None => row.iter().map(|c| c.norm()).fold(0.0, f64::max),
        }
    };
    match params.q.as_finite() {
        Some(q) => ((0..mu.len()).map(|i| inner(i).powf(q)).sum::<f64>() * wm).powf(1.0 / q),
        None => (0..mu.len()).map(inner).fold(0.0, f64::max),
    }
}

/// Symbol modulation norm: the mixed norm of
/// `(w, z) -> <sigma, covariance_shift(U(w, z)) Phi0>_PS`, where `Phi0` is
/// the Weyl symbol of the Gaussian window pair. By the covariance law this
/// equals [`operator_modulation_norm`] of the Weyl operator of `sigma`
/// exactly.
pub fn symbol_modulation_norm(
    m: &Modulus,
    sigma: &PhaseFunction,
    params: MixedNormParams,
    weight: &Weight,
) -> Result<f64> {
    let n = m.n();
    let phi0 = kernel_to_symbol(m, &default_window_operator(m));
    // covariance_shift(a, b) = M_{-b} T_a, so sample the sign-flipped STFT
    // table along U.
    let v2 = phase_space_stft(m, sigma, &phi0, -1);
    let table = DoublePhaseFunction::from_fn(n, |w1, w2, z1, z2| {
        let u = map_u(
            m,
            DoublePhasePoint::new(
                PhasePoint { x: w1, omega: w2 },
                PhasePoint { x: z1, omega: z2 },
            ),
        );
        v2.at_point(u)
    });
    mixed_norm(m, &table, params, weight)
}

/// Function modulation norm of a phase-space function: mixed norm of its
/// 2D short-time Fourier transform against the Gaussian symbol window,
/// inner exponent over the translation slot, outer over modulation, slot
/// weight `1/N` each.
pub fn function_modulation_norm_2d(
    m: &Modulus,
    f: &PhaseFunction,
    params: MixedNormParams,
) -> f64 {
    let phi0 = kernel_to_symbol(m, &default_window_operator(m));
    let v2 = phase_space_stft(m, f, &phi0, 1);
    mixed_norm(m, &v2, params, &Weight::One).expect("grids match by construction")
}

/// Ensemble ratio `||Q_{S1} T|| / ||Q_{S2} T||` over the given operators,
/// returned as `(min, max)` together with the two-sided bound constant
/// from the twisted-convolution norm chain:
/// ratios lie in `[1/C21, C12]` with
/// `C12 = ||Q_{S1} S2||_{1,1} / ||S2||_HS^2` and symmetrically for `C21`.
pub fn window_equivalence_ratio(
    m: &Modulus,
    s1: &Operator,
    s2: &Operator,
    params: MixedNormParams,
    ensemble: &[Operator],
) -> Result<WindowEquivalence> {
    let one = MixedNormParams::new(Exponent::ONE, Exponent::ONE);
    let c12 = mixed_norm(m, &cohen(m, s1, s2)?, one, &Weight::One)? / s2.hs_norm().powi(2);
    let c21 = mixed_norm(m, &cohen(m, s2, s1)?, one, &Weight::One)? / s1.hs_norm().powi(2);
    let mut lo = f64::INFINITY;
    let mut hi = 0.0f64;
    for t in ensemble {
        let n1 = operator_modulation_norm(m, t, s1, params, &Weight::One)?;
        let n2 = operator_modulation_norm(m, t, s2, params, &Weight::One)?;
        if n2 > 0.0 {
            let r = n1 / n2;
            lo = lo.min(r);
            hi = hi.max(r);
        }
    }
    Ok(WindowEquivalence {
        ratio_min: lo,
        ratio_max: hi,
        bound_upper: c12,
        bound_lower: 1.0 / c21,
    })
}

/// Result of a window-equivalence sweep.
#[derive(Debug, Clone, Copy)]
pub struct WindowEquivalence {
    pub ratio_min: f64,
    pub ratio_max: f64,
    /// Upper bound `C12` for every ratio.
    pub bound_upper: f64,
    /// Lower bound `1/C21` for every ratio.
    pub bound_lower: f64,
}

/// Wiener amalgam norm on phase space: per-cube maxima of `|F|` over a
/// partition into `block x block` cubes, then the weighted mixed norm of
/// the cube maxima on the coarse grid (cube weight `block^2 / N` per slot,
/// weight evaluated at the cube base point).
pub fn wiener_amalgam_norm_2d(
    m: &Modulus,
    f: &PhaseFunction,
    block: usize,
    params: MixedNormParams,
    weight: &Weight,
) -> Result<f64> {
    let n = m.n();
    if block == 0 || !n.is_multiple_of(block) {
        return Err(QtfaError::InvalidBlock { block, n });
    }
    let cells = n / block;
    let cube_max = |cx: usize, co: usize| -> f64 {
        let mut best: f64 = 0.0;
        for dx in 0..block {
            for dy in 0..block {
                best = best.max(f.at(cx * block + dx, co * block + dy).norm());
            }
        }
        best
    };
    let cube_w = block as f64 * block as f64 / n as f64;
    let inner = |co: usize| -> f64 {
        match params.p.as_finite() {
            Some(p) => {
                let mut acc = 0.0;
                for cx in 0..cells {
                    let base = PhasePoint {
                        x: cx * block,
                        omega: co * block,
                    };
                    acc += (cube_max(cx, co) * weight.eval2(m, base)).powf(p);
                }
                (acc * cube_w).powf(1.0 / p)
            }
            None => {
                let mut best: f64 = 0.0;
                for cx in 0..cells {
                    let base = PhasePoint {
                        x: cx * block,
                        omega: co * block,
                    };
                    best = best.max(cube_max(cx, co) * weight.eval2(m, base));
                }
                best
            }
        }
    };
    Ok(match params.q.as_finite() {
        Some(q) => ((0..cells).map(|co| inner(co).powf(q)).sum::<f64>() * cube_w).powf(1.0 / q),
        None => (0..cells).map(inner).fold(0.0, f64::max),
    })
}

/// Wiener amalgam norm on double phase space; cubes are `block^4` boxes,
/// slot structure as in [`mixed_norm`].
pub fn wiener_amalgam_norm_4d(
    m: &Modulus,
    f: &DoublePhaseFunction,
    block: usize,
    params: MixedNormParams,
    weight: &Weight,
) -> Result<f64> {
    let n = m.n();
    if block == 0 || !n.is_multiple_of(block) {
        return Err(QtfaError::InvalidBlock { block, n });
    }
    let cells = n / block;
    let cube_w = (block as f64).powi(2) / n as f64;
    let cube_max = |w1: usize, w2: usize, z1: usize, z2: usize| -> f64 {
        let mut best: f64 = 0.0;
        for a in 0..block {
            for b in 0..block {
                for c in 0..block {
                    for d in 0..block {
                        best = best.max(
                            f.at(
                                w1 * block + a,
                                w2 * block + b,
                                z1 * block + c,
                                z2 * block + d,
                            )
                            .norm(),
                        );
                    }
                }
            }
        }
        best
    };
    let inner = |z1: usize, z2: usize| -> f64 {
        let zbase = PhasePoint {
            x: z1 * block,
            omega: z2 * block,
        };
        match params.p.as_finite() {
            Some(p) => {
                let mut acc = 0.0;
                for w1 in 0..cells {
                    for w2 in 0..cells {
                        let wbase = PhasePoint {
                            x: w1 * block,
                            omega: w2 * block,
                        };
                        acc += (cube_max(w1, w2, z1, z2) * weight.eval4(m, wbase, zbase)).powf(p);
                    }
                }
                (acc * cube_w).powf(1.0 / p)
            }
            None => {
                let mut best: f64 = 0.0;
                for w1 in 0..cells {
                    for w2 in 0..cells {
                        let wbase = PhasePoint {
                            x: w1 * block,
                            omega: w2 * block,
                        };
                        best =
                            best.max(cube_max(w1, w2, z1, z2) * weight.eval4(m, wbase, zbase));
                    }
                }
                best
            }
        }
    };
    Ok(match params.q.as_finite() {
        Some(q) => {
            let mut acc = 0.0;
            for z1 in 0..cells {
                for z2 in 0..cells {
                    acc += inner(z1, z2).powf(q);
                }
            }
            (acc * cube_w).powf(1.0 / q)
        }
        None => {
            let mut best: f64 = 0.0;
            for z1 in 0..cells {
                for z2 in 0..cells {
                    best = best.max(inner(z1, z2));
                }
            }
            best
        }
    })
}

/// `l^p` norm of the singular values.
pub fn schatten_norm(m: &Modulus, t: &Operator, p: Exponent) -> Result<f64> {
    let dec = svd(m, t)?;
    Ok(match p.as_finite() {
        Some(p) => dec
            .singular_values
            .iter()
            .map(|s| s.powf(p))
            .sum::<f64>()
            .powf(1.0 / p),
        None => dec.singular_values.first().copied().unwrap_or(0.0),
    })
}

/// Rank-one atomic decomposition `T = sum_mu s_mu phi_mu (x) psi_mu` built
/// from a tensor Gabor frame `g (x) g` on `Lambda x Lambda`:
/// `phi_mu` is the normalised dual atom `pi(mu) g~`, `psi_mu` collects the
/// `lambda` row of coefficients, and the `M^1` / `M^p` normalisations are
/// absorbed into `s`.
#[derive(Debug, Clone)]
pub struct OperatorDecomposition {
    pub s: Vec<f64>,
    pub phis: Vec<Signal>,
    pub psis: Vec<Signal>,
}

impl OperatorDecomposition {
    pub fn reconstruct(&self, n: usize) -> Operator {
        let mut acc = Operator::zeros(n);
        for ((s, phi), psi) in self.s.iter().zip(&self.phis).zip(&self.psis) {
            acc = acc.add(&rank_one(phi, psi).scale(Complex64::new(*s, 0.0)));
        }
        acc
    }

    /// Weighted `l^q` norm of the scale sequence.
    pub fn scale_norm(&self, lattice_weight: f64, q: Exponent) -> f64 {
        match q.as_finite() {
            Some(q) => (self.s.iter().map(|v| v.powf(q)).sum::<f64>() * lattice_weight)
                .powf(1.0 / q),
            None => self.s.iter().cloned().fold(0.0, f64::max),
        }
    }
}

/// Build the decomposition for exponents `(p, q)` over the frame generated
/// by `g` on `lat x lat`.
pub fn mp_decomposition(
    m: &Modulus,
    t: &Operator,
    params: MixedNormParams,
    g: &Window,
    lat: &Lattice,
) -> Result<OperatorDecomposition> {
    let (lo, hi) = gabor_frame_bounds(m, g, lat);
    if lo <= 1e-10 * hi {
        return Err(QtfaError::NotAFrame { min_eigenvalue: lo });
    }
    let dual = function_dual_window(m, g, lat)?;
    let s_window = rank_one(g.signal(), g.signal());
    let weight = lat.weight() * lat.weight();
    let m1 = MixedNormParams::new(Exponent::ONE, Exponent::ONE);

    let mut scales = Vec::with_capacity(lat.len());
    let mut phis = Vec::with_capacity(lat.len());
    let mut psis = Vec::with_capacity(lat.len());
    for &mu in lat.points() {
        // h_mu = sum_lambda conj(weight * Q_S T(lambda, mu)) pi(lambda) g~
        let mut h = Signal::zeros(m.n());
        for &lambda in lat.points() {
            let c = crate::cohen::cohen_at(m, &s_window, t, lambda, mu);
            let atom = tf_shift(m, lambda, &dual);
            h = h.add(&atom.scale((c * weight).conj()));
        }
        let phi_raw = tf_shift(m, mu, &dual);
        let phi_norm = crate::tfa::function_modulation_norm(m, &phi_raw, m1.p, m1.q);
        let psi_norm = crate::tfa::function_modulation_norm(m, &h, params.p, params.p);
        if psi_norm <= 1e-15 || phi_norm <= 1e-15 {
            continue;
        }
        scales.push(phi_norm * psi_norm);
        phis.push(phi_raw.scale(Complex64::new(1.0 / phi_norm, 0.0)));
        psis.push(h.scale(Complex64::new(1.0 / psi_norm, 0.0)));
    }
    Ok(OperatorDecomposition {
        s: scales,
        phis,
        psis,
    })
}

/// Configuration of a symbol-inclusion experiment.
#[derive(Debug, Clone, Copy)]
pub struct InclusionConfig {
    pub draws: usize,
    pub seed: u64,
}

/// Ratio intervals for one exponent pair.
#[derive(Debug, Clone, Copy)]
pub struct InclusionRatios {
    pub p: Exponent,
    pub q: Exponent,
    /// `||sigma_T||_{M^{p,q}} / ||T||_{M^{q,p}}` interval.
    pub forward: (f64, f64),
    /// `||T||_{M^{q,p}} / ||sigma_T||_{M^{p,q}}` interval (converse reading).
    pub converse: (f64, f64),
}

/// Over a random ensemble, compare the function modulation norm of the Weyl
/// symbol with the operator modulation norm at swapped exponents; the map
/// `T -> sigma_T` pairs `M^{q,p}` operators with `M^{p,q}` symbols.
pub fn inclusion_experiment(
    m: &Modulus,
    pairs: &[(Exponent, Exponent)],
    config: InclusionConfig,
) -> Result<Vec<InclusionRatios>> {
    let window = default_window_operator(m);
    let mut out = Vec::with_capacity(pairs.len());
    for &(p, q) in pairs {
        let mut rng = crate::random::seeded_rng(config.seed);
        let mut fwd = (f64::INFINITY, 0.0f64);
        for _ in 0..config.draws {
            let t = crate::random::random_operator(m, &mut rng);
            let op_norm = operator_modulation_norm(
                m,
                &t,
                &window,
                MixedNormParams::new(q, p),
                &Weight::One,
            )?;
            let sym_norm =
                function_modulation_norm_2d(m, &kernel_to_symbol(m, &t), MixedNormParams::new(p, q));
            if op_norm > 0.0 {
                let r = sym_norm / op_norm;
                fwd.0 = fwd.0.min(r);
                fwd.1 = fwd.1.max(r);
            }
        }
        out.push(InclusionRatios {
            p,
            q,
            forward: fwd,
            converse: (1.0 / fwd.1, 1.0 / fwd.0),
        });
    }
    Ok(out)
}
