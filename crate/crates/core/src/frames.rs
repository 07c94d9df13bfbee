//! Gabor frames for signals and for the Hilbert-Schmidt space: analysis,
//! synthesis and frame operators, canonical dual windows, Weyl-lifted
//! frames, and span-rank certificates.
//!
//! Lattices are subgroups `aZ_N x bZ_N` with `a, b | N`. Every lattice sum
//! carries the Riemann weight `covolume / N` per point (so the full lattice
//! reproduces the `(1/N) sum` phase-space measure and full-lattice frames of
//! unit windows are tight with bounds exactly one); lattice pairs on double
//! phase space carry the product weight.

use num_complex::Complex64;

use crate::linalg;
use crate::operator::Operator;
use crate::par;
use crate::phase_space::{DoublePhasePoint, Modulus, PhaseFunction, PhasePoint, Signal};
use crate::quantization::symbol_to_operator;
use crate::shifts::{covariance_shift, gamma_shift, map_u, map_u_inv};
use crate::tfa::{tf_shift, Window};
use crate::{QtfaError, Result};

/// Relative eigenvalue threshold below which a frame operator counts as
/// singular.
const FRAME_TOL: f64 = 1e-10;

/// A subgroup lattice `{(ja, kb)}` of phase space.
#[derive(Debug, Clone)]
pub struct Lattice {
    a: usize,
    b: usize,
    n: usize,
    points: Vec<PhasePoint>,
}

impl Lattice {
    pub fn new(m: &Modulus, a: usize, b: usize) -> Result<Self> {
        let n = m.n();
        for step in [a, b] {
            if step == 0 || !n.is_multiple_of(step) {
                return Err(QtfaError::InvalidLattice { step, n });
            }
        }
        let mut points = Vec::with_capacity((n / a) * (n / b));
        for j in 0..n / a {
            for k in 0..n / b {
                points.push(PhasePoint {
                    x: j * a,
                    omega: k * b,
                });
            }
        }
        Ok(Lattice { a, b, n, points })
    }

    pub fn full(m: &Modulus) -> Self {
        Self::new(m, 1, 1).expect("1 divides N")
    }

    pub fn steps(&self) -> (usize, usize) {
        (self.a, self.b)
    }

    pub fn points(&self) -> &[PhasePoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Riemann weight per lattice point, `ab / N`.
    pub fn weight(&self) -> f64 {
        (self.a * self.b) as f64 / self.n as f64
    }
}

/// Gabor analysis coefficients `c_lambda = <f, pi(lambda) g>`.
pub fn gabor_analysis(m: &Modulus, g: &Window, lat: &Lattice, f: &Signal) -> Vec<Complex64> {
    lat.points()
        .iter()
        .map(|&lambda| f.inner(&tf_shift(m, lambda, g.signal())))
        .collect()
}

/// Frame bounds of the signal-level Gabor system `{pi(lambda) g}`:
/// extreme eigenvalues of the weighted frame operator.
pub fn gabor_frame_bounds(m: &Modulus, g: &Window, lat: &Lattice) -> (f64, f64) {
    let n = m.n();
    let mut mat = vec![Complex64::ZERO; n * n];
    let w = lat.weight();
    for &lambda in lat.points() {
        let atom = tf_shift(m, lambda, g.signal());
        for r in 0..n {
            for c in 0..n {
                mat[r * n + c] += atom.at(r) * atom.at(c).conj() * w;
            }
        }
    }
    let (vals, _) = linalg::hermitian_eigen(n, &mat);
    (vals[0].max(0.0), vals[n - 1])
}

/// Canonical dual window of a signal-level Gabor frame.
pub fn function_dual_window(m: &Modulus, g: &Window, lat: &Lattice) -> Result<Signal> {
    let n = m.n();
    let mut mat = vec![Complex64::ZERO; n * n];
    let w = lat.weight();
    for &lambda in lat.points() {
        let atom = tf_shift(m, lambda, g.signal());
        for r in 0..n {
            for c in 0..n {
                mat[r * n + c] += atom.at(r) * atom.at(c).conj() * w;
            }
        }
    }
    let sol = linalg::hermitian_solve(n, &mat, g.signal().values(), FRAME_TOL)?;
    Ok(Signal::new(sol))
}

/// An operator Gabor system `{gamma_{lambda,mu}(S)}` over a lattice pair,
/// with its computed frame bounds.
#[derive(Debug, Clone)]
pub struct OperatorGaborSystem {
    pub window: Operator,
    pub lattice_pair: (Lattice, Lattice),
    pub frame_bounds: (f64, f64),
}

/// Analysis coefficients `C_S(T) = {Q_S T(lambda, mu)}`, laid out as
/// `coeffs[mu_index * |Lambda| + lambda_index]` (`lambda` runs over the
/// first lattice, the `w` slot).
pub fn operator_analysis(
    m: &Modulus,
    s: &Operator,
    lats: (&Lattice, &Lattice),
    t: &Operator,
) -> Result<Vec<Complex64>> {
    if s.hs_norm() <= 0.0 {
        return Err(QtfaError::InvalidWindow("window operator has zero HS norm"));
    }
    let (lam, mu) = lats;
    let coeffs: Vec<Complex64> = par::map_indices(mu.len() * lam.len(), |idx| {
        let mu_pt = mu.points()[idx / lam.len()];
        let lam_pt = lam.points()[idx % lam.len()];
        crate::cohen::cohen_at(m, s, t, lam_pt, mu_pt)
    });
    Ok(coeffs)
}

/// Synthesis `D_S(a) = weight * sum a_{lambda,mu} gamma_{lambda,mu}(S)`;
/// the adjoint of [`operator_analysis`] for the weighted coefficient inner
/// product.
pub fn operator_synthesis(
    m: &Modulus,
    s: &Operator,
    lats: (&Lattice, &Lattice),
    coeffs: &[Complex64],
) -> Result<Operator> {
    let (lam, mu) = lats;
    if coeffs.len() != lam.len() * mu.len() {
        return Err(QtfaError::Dimension {
            what: "lattice coefficients",
            expected: lam.len() * mu.len(),
            got: coeffs.len(),
        });
    }
    let w = lam.weight() * mu.weight();
    let mut out = Operator::zeros(m.n());
    for (i, &mu_pt) in mu.points().iter().enumerate() {
        for (j, &lam_pt) in lam.points().iter().enumerate() {
            let c = coeffs[i * lam.len() + j] * w;
            if c == Complex64::ZERO {
                continue;
            }
            out = out.add(&gamma_shift(m, lam_pt, mu_pt, s).scale(c));
        }
    }
    Ok(out)
}

/// Dense matrix of the frame-type operator
/// `E_{S,T}(X) = weight * sum <X, gamma(S)> gamma(T)` on the vectorised
/// Hilbert-Schmidt space (row-major kernel flattening, dimension N^2).
pub fn frame_operator_matrix(
    m: &Modulus,
    s: &Operator,
    t: &Operator,
    points: &[(PhasePoint, PhasePoint)],
    weight: f64,
) -> Vec<Complex64> {
    let dim = m.n() * m.n();
    // Atoms first, then a blocked rank-one accumulation; the row blocks are
    // independent, so the reduction order is fixed regardless of threading.
    let atoms: Vec<(Operator, Operator)> = par::map_indices(points.len(), |i| {
        let (w_pt, z_pt) = points[i];
        (
            gamma_shift(m, w_pt, z_pt, s),
            gamma_shift(m, w_pt, z_pt, t),
        )
    });
    let rows: Vec<Vec<Complex64>> = par::map_indices(dim, |r| {
        let mut row = vec![Complex64::ZERO; dim];
        for (gs, gt) in &atoms {
            let tr = gt.kernel()[r] * weight;
            for (slot, sv) in row.iter_mut().zip(gs.kernel()) {
                *slot += tr * sv.conj();
            }
        }
        row
    });
    rows.concat()
}

fn lattice_pair_points(lats: (&Lattice, &Lattice)) -> Vec<(PhasePoint, PhasePoint)> {
    let mut points = Vec::with_capacity(lats.0.len() * lats.1.len());
    for &lam in lats.0.points() {
        for &mu in lats.1.points() {
            points.push((lam, mu));
        }
    }
    points
}

/// Frame bounds of the operator Gabor system over a lattice pair: extreme
/// eigenvalues of `E_{S,S}`.
pub fn operator_frame_bounds(m: &Modulus, s: &Operator, lats: (&Lattice, &Lattice)) -> (f64, f64) {
    let points = lattice_pair_points(lats);
    let weight = lats.0.weight() * lats.1.weight();
    let mat = frame_operator_matrix(m, s, s, &points, weight);
    let dim = m.n() * m.n();
    let (vals, _) = linalg::hermitian_eigen(dim, &mat);
    (vals[0].max(0.0), vals[dim - 1])
}

/// Canonical dual window `S~ = E_{S,S}^{-1}(S)`; fails with the smallest
/// eigenvalue when the system is not a frame.
pub fn dual_window(m: &Modulus, s: &Operator, lats: (&Lattice, &Lattice)) -> Result<Operator> {
    let points = lattice_pair_points(lats);
    let weight = lats.0.weight() * lats.1.weight();
    let mat = frame_operator_matrix(m, s, s, &points, weight);
    let dim = m.n() * m.n();
    let sol = linalg::hermitian_solve(dim, &mat, s.kernel(), FRAME_TOL)?;
    Operator::from_kernel(m.n(), sol)
}

/// Reconstruction `T = weight * sum Q_S T(lambda, mu) gamma_{lambda,mu}(S~)`;
/// returns the largest kernel deviation from `T`.
pub fn reconstruction_error(
    m: &Modulus,
    s: &Operator,
    dual: &Operator,
    lats: (&Lattice, &Lattice),
    t: &Operator,
) -> Result<f64> {
    let coeffs = operator_analysis(m, s, lats, t)?;
    let rec = operator_synthesis(m, dual, lats, &coeffs)?;
    Ok(rec.max_dev(t))
}

/// Rank of the system matrix of vectorised `gamma_{lambda,mu}(S)`; the
/// system is a frame exactly when the rank is `N^2`.
pub fn span_rank(m: &Modulus, s: &Operator, lats: (&Lattice, &Lattice)) -> usize {
    let points = lattice_pair_points(lats);
    let dim = m.n() * m.n();
    let mut rows = Vec::with_capacity(points.len() * dim);
    for &(w_pt, z_pt) in &points {
        rows.extend_from_slice(gamma_shift(m, w_pt, z_pt, s).kernel());
    }
    linalg::numerical_rank(points.len(), dim, &rows, FRAME_TOL)
}

/// Frame bounds of a phase-space function system
/// `{covariance_shift(q)(G)}` over a point set in double phase space, with
/// respect to the `(1/N) sum` inner product.
pub fn phase_space_frame_bounds(
    m: &Modulus,
    g: &PhaseFunction,
    points: &[DoublePhasePoint],
    weight: f64,
) -> (f64, f64) {
    let n = m.n();
    let dim = n * n;
    let mut mat = vec![Complex64::ZERO; dim * dim];
    for &q in points {
        let atom = covariance_shift(m, q, g);
        // PS inner product carries 1/N.
        let scaled = weight / n as f64;
        for r in 0..dim {
            let ar = atom.values()[r];
            for c in 0..dim {
                mat[r * dim + c] += ar * atom.values()[c].conj() * scaled;
            }
        }
    }
    let (vals, _) = linalg::hermitian_eigen(dim, &mat);
    (vals[0].max(0.0), vals[dim - 1])
}

/// Lift a phase-space window to an operator Gabor system: the system window
/// is the Weyl operator of `g`, and the gamma index set is `U^{-1}` of the
/// given lattice pair. Its frame bounds equal those of the phase-space
/// system `{covariance_shift(q)(g)}_{q in lattice pair}` — both are
/// computed, compared, and returned.
pub fn weyl_lifted_frame(
    m: &Modulus,
    g: &PhaseFunction,
    lats: (&Lattice, &Lattice),
) -> Result<OperatorGaborSystem> {
    let window = symbol_to_operator(m, g);
    if window.hs_norm() <= 0.0 {
        return Err(QtfaError::InvalidWindow("lifted window has zero HS norm"));
    }
    let q_points: Vec<DoublePhasePoint> = lattice_pair_points(lats)
        .iter()
        .map(|&(a, b)| DoublePhasePoint::new(a, b))
        .collect();
    let gamma_points: Vec<(PhasePoint, PhasePoint)> = q_points
        .iter()
        .map(|&q| {
            let p = map_u_inv(m, q);
            (p.w, p.z)
        })
        .collect();
    let weight = lats.0.weight() * lats.1.weight();

    let fn_bounds = phase_space_frame_bounds(m, g, &q_points, weight);
    let mat = frame_operator_matrix(m, &window, &window, &gamma_points, weight);
    let dim = m.n() * m.n();
    let (vals, _) = linalg::hermitian_eigen(dim, &mat);
    let op_bounds = (vals[0].max(0.0), vals[dim - 1]);

    if fn_bounds.0 <= FRAME_TOL * fn_bounds.1 {
        return Err(QtfaError::NotAFrame {
            min_eigenvalue: fn_bounds.0,
        });
    }
    // The two routes must agree; surface disagreement as a numerical error.
    let dev = (fn_bounds.0 - op_bounds.0)
        .abs()
        .max((fn_bounds.1 - op_bounds.1).abs());
    if dev > 1e-8 * fn_bounds.1.max(1.0) {
        return Err(QtfaError::Numerical(format!(
            "lifted frame bounds disagree: function {fn_bounds:?} vs operator {op_bounds:?}"
        )));
    }
    Ok(OperatorGaborSystem {
        window,
        lattice_pair: (lats.0.clone(), lats.1.clone()),
        frame_bounds: op_bounds,
    })
}

/// Frame bounds of the phase-space system generated by the symbol of a
/// tensor window over `U(Lambda x M)`; the converse direction of the lift.
pub fn tensor_symbol_frame_bounds(
    m: &Modulus,
    f: &Signal,
    g: &Signal,
    lats: (&Lattice, &Lattice),
) -> (f64, f64) {
    let sigma = crate::quantization::kernel_to_symbol(m, &crate::operator::rank_one(f, g));
    let q_points: Vec<DoublePhasePoint> = lattice_pair_points(lats)
        .iter()
        .map(|&(a, b)| map_u(m, DoublePhasePoint::new(a, b)))
        .collect();
    let weight = lats.0.weight() * lats.1.weight();
    phase_space_frame_bounds(m, &sigma, &q_points, weight)
}

/// The identity `gamma_{lambda,mu} E gamma_{lambda,mu}^* = E` for lattice
/// shifts of the frame operator; returns the largest deviation over the
/// lattice pair.
pub fn frame_operator_shift_invariance(
    m: &Modulus,
    s: &Operator,
    lats: (&Lattice, &Lattice),
) -> f64 {
    let points = lattice_pair_points(lats);
    let weight = lats.0.weight() * lats.1.weight();
    let dim = m.n() * m.n();
    let e = frame_operator_matrix(m, s, s, &points, weight);
    // Apply E to a probe, conjugate by gamma, and compare.
    let apply = |mat: &[Complex64], x: &Operator| -> Operator {
        let mut out = vec![Complex64::ZERO; dim];
        for r in 0..dim {
            let mut acc = Complex64::ZERO;
            for c in 0..dim {
                acc += mat[r * dim + c] * x.kernel()[c];
            }
            out[r] = acc;
        }
        Operator::from_kernel(m.n(), out).expect("dimension")
    };
    // Conjugation invariance is commutation: E(gamma X) = gamma(E X) for
    // every lattice shift (the cocycle phases cancel in the conjugation).
    let mut rng = crate::random::seeded_rng(0x5eed);
    let probe = crate::random::random_operator(m, &mut rng);
    let e_probe = apply(&e, &probe);
    let mut max_dev: f64 = 0.0;
    for &(lam, mu) in &points {
        let lhs = apply(&e, &gamma_shift(m, lam, mu, &probe));
        let rhs = gamma_shift(m, lam, mu, &e_probe);
        max_dev = max_dev.max(lhs.max_dev(&rhs));
    }
    max_dev
}
