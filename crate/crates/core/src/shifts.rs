//! Operator time-frequency shifts: the modulation `beta_w`, the projective
//! shift `gamma_{w,z}`, the coordinate maps `U`, `U^{-1}`, `J`, `c_2`, and
//! the covariance laws tying operator shifts to phase-space shifts of the
//! Weyl symbol and of the integral kernel.
//!
//! # Calibrated conventions
//!
//! The identities below are exact on the grid and are enforced by the test
//! suites (exhaustively for N = 5):
//!
//! * cocycle: `gamma_{w',z'}(gamma_{w,z}(S)) = zeta^{-(z2 z1' - w2 w1')}
//!   gamma_{w+w', z+z'}(S)`;
//! * symbol covariance: with `(u_t, u_m) = U(w, z)`,
//!   `sigma_{gamma_{w,z}(S)}(p) = half_phase((z1 - w1)(z2 + w2)) *
//!   zeta^{Omega(z - w, p)} * sigma_S(p - u_t)`, and `z - w = J(u_m)`;
//! * kernel covariance: `K_{gamma_{w,z}(S)}(a, b) = zeta^{z2 a - w2 b}
//!   K_S(a - z1, b - w1)` — the permutation `c_2(w, z) = (z1, w1, z2, w2)`
//!   with the sign of the second modulation flipped;
//! * `beta_w` modulates the symbol: `sigma_{beta_w(S)}(p) = zeta^{Omega(w, p)}
//!   sigma_S(p)`.

use num_complex::Complex64;

use crate::operator::Operator;
use crate::phase_space::{
    symplectic_form, DoublePhasePoint, Modulus, PhaseFunction, PhasePoint,
};
use crate::quantization::kernel_to_symbol;

/// Operator time-frequency shift `gamma_{w,z}(S) = pi(z) S pi(w)*`,
/// computed as the kernel remap
/// `K(a, b) -> zeta^{z2 a - w2 b} K(a - z1, b - w1)`.
pub fn gamma_shift(m: &Modulus, w: PhasePoint, z: PhasePoint, s: &Operator) -> Operator {
    let n = m.n();
    assert_eq!(s.n(), n, "operator size must match the modulus");
    Operator::from_fn(n, |a, b| {
        let phase = m.zeta_pow((z.omega * a) as i64 - (w.omega * b) as i64);
        phase * s.at(m.sub(a, z.x), m.sub(b, w.x))
    })
}

/// Cocycle phase of the composition law:
/// `gamma_{w',z'} . gamma_{w,z} = phase * gamma_{w+w', z+z'}` with
/// `phase = zeta^{-(z2 z1' - w2 w1')}`.
pub fn gamma_cocycle_phase(
    m: &Modulus,
    w: PhasePoint,
    z: PhasePoint,
    wp: PhasePoint,
    zp: PhasePoint,
) -> Complex64 {
    m.zeta_pow(-((z.omega * zp.x) as i64) + (w.omega * wp.x) as i64)
}

/// Operator modulation
/// `beta_w(S) = half_phase(-half w1 w2) pi(w/2) S pi(w/2)`.
pub fn beta_shift(m: &Modulus, w: PhasePoint, s: &Operator) -> Operator {
    let n = m.n();
    assert_eq!(s.n(), n, "operator size must match the modulus");
    let hw = w.scale(m.half(), m);
    let c = m.half_phase(-(m.mul(m.half(), m.mul(w.x, w.omega)) as i64));
    // (pi(a) S pi(a))(s, t) = zeta^{a2 (s + t + a1)} K(s - a1, t + a1)
    Operator::from_fn(n, |st, t| {
        let phase = m.zeta_pow((hw.omega * m.add(m.add(st, t), hw.x)) as i64);
        c * phase * s.at(m.sub(st, hw.x), m.add(t, hw.x))
    })
}

/// Symplectic modulation of a phase-space function,
/// `M_w F(p) = zeta^{Omega(w, p)} F(p)`; the symbol-side image of `beta_w`.
pub fn symplectic_modulation(m: &Modulus, w: PhasePoint, f: &PhaseFunction) -> PhaseFunction {
    PhaseFunction::from_fn(m.n(), |x, omega| {
        let p = PhasePoint { x, omega };
        m.zeta_pow(symplectic_form(w, p, m) as i64) * f.at(x, omega)
    })
}

/// Euclidean time-frequency shift on phase-space functions,
/// `Pi(a, b) F(p) = zeta^{b . p} F(p - a)`.
pub fn phase_space_shift(
    m: &Modulus,
    translation: PhasePoint,
    modulation: PhasePoint,
    f: &PhaseFunction,
) -> PhaseFunction {
    PhaseFunction::from_fn(m.n(), |x, omega| {
        let phase = m.zeta_pow((modulation.x * x + modulation.omega * omega) as i64);
        phase * f.at(m.sub(x, translation.x), m.sub(omega, translation.omega))
    })
}

/// The covariance shift: translation by `u_t` followed by symplectic
/// modulation by `J(u_m)`, i.e. `F(p) -> zeta^{Omega(J u_m, p)} F(p - u_t)`.
/// Equal to `phase_space_shift(u_t, -u_m, .)`; this is the phase-space shift
/// appearing in the symbol covariance law.
pub fn covariance_shift(m: &Modulus, u: DoublePhasePoint, f: &PhaseFunction) -> PhaseFunction {
    phase_space_shift(m, u.w, u.z.neg(m), f)
}

/// Integer matrix acting on double phase space over `Z_N`; `half` encodes
/// the 1/2 entries of `U` and `U^{-1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CoordinateMap {
    pub matrix: [[i64; 4]; 4],
}

impl CoordinateMap {
    pub fn apply(&self, m: &Modulus, p: DoublePhasePoint) -> DoublePhasePoint {
        let v = [
            p.w.x as i64,
            p.w.omega as i64,
            p.z.x as i64,
            p.z.omega as i64,
        ];
        let mut out = [0usize; 4];
        for (i, row) in self.matrix.iter().enumerate() {
            let mut acc: i64 = 0;
            for (c, x) in row.iter().zip(&v) {
                acc += c * x;
            }
            out[i] = m.reduce(acc);
        }
        DoublePhasePoint {
            w: PhasePoint {
                x: out[0],
                omega: out[1],
            },
            z: PhasePoint {
                x: out[2],
                omega: out[3],
            },
        }
    }

    /// Matrix product `self . other` over `Z_N`.
    pub fn compose(&self, m: &Modulus, other: &CoordinateMap) -> CoordinateMap {
        let mut out = [[0i64; 4]; 4];
        for i in 0..4 {
            for j in 0..4 {
                let mut acc = 0i64;
                for k in 0..4 {
                    acc += self.matrix[i][k] * other.matrix[k][j];
                }
                out[i][j] = m.reduce(acc) as i64;
            }
        }
        CoordinateMap { matrix: out }
    }

    /// `U(w, z) = ((w1+z1)/2, (w2+z2)/2, w2 - z2, z1 - w1)`.
    pub fn u(m: &Modulus) -> CoordinateMap {
        let h = m.half() as i64;
        CoordinateMap {
            matrix: [
                [h, 0, h, 0],
                [0, h, 0, h],
                [0, 1, 0, -1],
                [-1, 0, 1, 0],
            ],
        }
    }

    /// `U^{-1}(w, z) = (w - Jz/2, w + Jz/2)`.
    pub fn u_inv(m: &Modulus) -> CoordinateMap {
        let h = m.half() as i64;
        CoordinateMap {
            matrix: [
                [1, 0, 0, -h],
                [0, 1, h, 0],
                [1, 0, 0, h],
                [0, 1, -h, 0],
            ],
        }
    }

    /// The kernel-side index permutation `c_2(w, z) = (z1, w1, z2, w2)`.
    pub fn c2() -> CoordinateMap {
        CoordinateMap {
            matrix: [
                [0, 0, 1, 0],
                [1, 0, 0, 0],
                [0, 0, 0, 1],
                [0, 1, 0, 0],
            ],
        }
    }
}

/// `U(w, z)`: the change of variables carrying an operator shift to a
/// phase-space shift of the Weyl symbol. The first pair is the translation,
/// the second the (sign-bearing) modulation index.
pub fn map_u(m: &Modulus, p: DoublePhasePoint) -> DoublePhasePoint {
    CoordinateMap::u(m).apply(m, p)
}

/// Inverse of [`map_u`].
pub fn map_u_inv(m: &Modulus, p: DoublePhasePoint) -> DoublePhasePoint {
    CoordinateMap::u_inv(m).apply(m, p)
}

/// The rotation `J(x, omega) = (omega, -x)`; `J^2 = -1`.
pub fn map_j(m: &Modulus, p: PhasePoint) -> PhasePoint {
    PhasePoint {
        x: p.omega,
        omega: m.neg(p.x),
    }
}

/// The kernel-side permutation `c_2`.
pub fn map_c2(m: &Modulus, p: DoublePhasePoint) -> DoublePhasePoint {
    CoordinateMap::c2().apply(m, p)
}

/// Predicted phase and phase-space shift for the symbol covariance law:
/// `sigma_{gamma_{w,z}(S)} = phase * covariance_shift(U(w,z), sigma_S)`
/// with `phase = half_phase((z1 - w1)(z2 + w2))`.
pub fn gamma_symbol_covariance(
    m: &Modulus,
    w: PhasePoint,
    z: PhasePoint,
) -> (Complex64, DoublePhasePoint) {
    let phase = m.half_phase(
        (z.x as i64 - w.x as i64) * (z.omega as i64 + w.omega as i64),
    );
    (phase, map_u(m, DoublePhasePoint::new(w, z)))
}

/// Largest deviation of the symbol covariance law on a given operator.
pub fn symbol_covariance_defect(
    m: &Modulus,
    w: PhasePoint,
    z: PhasePoint,
    s: &Operator,
) -> f64 {
    let lhs = kernel_to_symbol(m, &gamma_shift(m, w, z, s));
    let (phase, u) = gamma_symbol_covariance(m, w, z);
    let rhs = covariance_shift(m, u, &kernel_to_symbol(m, s)).scale(phase);
    lhs.max_dev(&rhs)
}

/// Predicted kernel of `gamma_{w,z}(S)`: the 2D time-frequency shift of
/// `K_S` at translation `(z1, w1)` and modulation `(z2, -w2)` — the
/// permutation `c_2` with the second modulation sign flipped.
pub fn kernel_covariance_prediction(
    m: &Modulus,
    w: PhasePoint,
    z: PhasePoint,
    s: &Operator,
) -> Operator {
    let n = m.n();
    let c = map_c2(m, DoublePhasePoint::new(w, z));
    // c = (z1, w1, z2, w2); the kernel shift uses modulation (z2, -w2).
    Operator::from_fn(n, |a, b| {
        let phase = m.zeta_pow((c.z.x * a) as i64 - (c.z.omega * b) as i64);
        phase * s.at(m.sub(a, c.w.x), m.sub(b, c.w.omega))
    })
}
