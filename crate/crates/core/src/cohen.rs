//! The polarised Cohen transform `Q_S T(w, z) = <T, gamma_{w,z}(S)>_HS`,
//! its adjoint and reproducing kernel, the twisted convolution on double
//! phase space, localisation operators, the operator STFT link, and the
//! double-symplectic product/kernel identities.
//!
//! # Calibrated identities
//!
//! With the crate's conventions the following hold exactly and are pinned
//! by tests:
//!
//! * Moyal: `<Q_R S, Q_T W> = <S, W>_HS <T, R>_HS` under `(1/N^2) sum`;
//! * reproduction: `Q_S* Q_S = ||S||_HS^2 Id`;
//! * twisted reproduction: `Q_S T (*) Q_R W = <W, S>_HS Q_R T`;
//! * product identity: `F_P(Q_S T . conj(Q_R W)) = Q_W T . conj(Q_R S)`;
//! * kernel identity: `F_P(Q_S T)(w, z) = K_T(z1, w1) conj(Khat_S(z2, w2))
//!   zeta^{w1 w2 - z1 z2}` with `Khat_S(p, q) = sum_{a,b} K_S(a,b)
//!   zeta^{-ap + bq}`.

use num_complex::Complex64;

use crate::fourier::{double_symplectic_dft, raw_pass};
use crate::operator::{hs_inner, Operator};
use crate::par;
use crate::phase_space::{
    DoublePhaseFunction, DoublePhasePoint, Modulus, PhaseFunction, PhasePoint, Signal,
};
use crate::shifts::gamma_shift;
use crate::{QtfaError, Result};

/// A window operator together with the dense transform table of one target.
#[derive(Debug, Clone)]
pub struct CohenTransform {
    window: Operator,
    table: DoublePhaseFunction,
}

impl CohenTransform {
    pub fn new(m: &Modulus, window: &Operator, target: &Operator) -> Result<Self> {
        let table = cohen(m, window, target)?;
        Ok(CohenTransform {
            window: window.clone(),
            table,
        })
    }

    pub fn window(&self) -> &Operator {
        &self.window
    }

    pub fn table(&self) -> &DoublePhaseFunction {
        &self.table
    }
}

/// A bounded mask on double phase space, the multiplier of a localisation
/// operator.
#[derive(Debug, Clone)]
pub struct LocalisationMask(pub DoublePhaseFunction);

fn check_window(s: &Operator) -> Result<()> {
    if s.hs_norm() <= 0.0 {
        return Err(QtfaError::InvalidWindow("window operator has zero HS norm"));
    }
    Ok(())
}

/// Point evaluation `Q_S T(w, z) = <T, gamma_{w,z}(S)>`; O(N^2) per point,
/// preferred over the dense table when only a few samples are needed.
pub fn cohen_at(
    m: &Modulus,
    s: &Operator,
    t: &Operator,
    w: PhasePoint,
    z: PhasePoint,
) -> Complex64 {
    hs_inner(t, &gamma_shift(m, w, z, s))
}

/// Dense transform table over all of `Z_N^4`.
///
/// For each translation pair `(z1, w1)` the modulation dependence is a 2D
/// DFT of the windowed correlation `K_T(a, b) conj(K_S(a - z1, b - w1))`,
/// so the table costs O(N^5) instead of the O(N^6) of pointwise evaluation.
pub fn cohen(m: &Modulus, s: &Operator, t: &Operator) -> Result<DoublePhaseFunction> {
    check_window(s)?;
    let n = m.n();
    assert_eq!(s.n(), n, "window size must match the modulus");
    assert_eq!(t.n(), n, "target size must match the modulus");

    // blocks[z1 * n + w1][z2 * n + w2]
    let blocks: Vec<Vec<Complex64>> = par::map_indices(n * n, |pair| {
        let z1 = pair / n;
        let w1 = pair % n;
        let mut corr = vec![Complex64::ZERO; n * n];
        for a in 0..n {
            for b in 0..n {
                corr[a * n + b] = t.at(a, b) * s.at(m.sub(a, z1), m.sub(b, w1)).conj();
            }
        }
        // DFT over b with sign +1 (-> w2), then over a with sign -1 (-> z2).
        let mut stage = vec![Complex64::ZERO; n * n];
        let mut row = vec![Complex64::ZERO; n];
        for a in 0..n {
            raw_pass(m, &corr, a * n, 1, 1, &mut row);
            stage[a * n..(a + 1) * n].copy_from_slice(&row);
        }
        let mut out = vec![Complex64::ZERO; n * n];
        let mut col = vec![Complex64::ZERO; n];
        for w2 in 0..n {
            raw_pass(m, &stage, w2, n, -1, &mut col);
            for z2 in 0..n {
                out[z2 * n + w2] = col[z2];
            }
        }
        out
    });

    let mut table = DoublePhaseFunction::zeros(n);
    for z1 in 0..n {
        for w1 in 0..n {
            let block = &blocks[z1 * n + w1];
            for z2 in 0..n {
                for w2 in 0..n {
                    table.set(w1, w2, z1, z2, block[z2 * n + w2]);
                }
            }
        }
    }
    Ok(table)
}

/// Adjoint synthesis `Q_S^* F = (1/N^2) sum_{w,z} F(w, z) gamma_{w,z}(S)`.
pub fn cohen_adjoint(m: &Modulus, s: &Operator, f: &DoublePhaseFunction) -> Result<Operator> {
    check_window(s)?;
    let n = m.n();
    assert_eq!(s.n(), n, "window size must match the modulus");
    assert_eq!(f.n(), n, "coefficient table must match the modulus");

    // For fixed (w1, z1):
    //   G(a, b) = sum_{z2} zeta^{a z2} sum_{w2} F(w1, w2, z1, z2) zeta^{-b w2},
    // then K(a, b) += G(a, b) K_S(a - z1, b - w1) / N^2.
    let partial: Vec<Vec<Complex64>> = par::map_indices(n * n, |pair| {
        let w1 = pair / n;
        let z1 = pair % n;
        let mut slice = vec![Complex64::ZERO; n * n]; // [z2 * n + w2]
        for z2 in 0..n {
            for w2 in 0..n {
                slice[z2 * n + w2] = f.at(w1, w2, z1, z2);
            }
        }
        let mut stage = vec![Complex64::ZERO; n * n]; // [z2 * n + b]
        let mut row = vec![Complex64::ZERO; n];
        for z2 in 0..n {
            raw_pass(m, &slice, z2 * n, 1, -1, &mut row);
            stage[z2 * n..(z2 + 1) * n].copy_from_slice(&row);
        }
        let mut g = vec![Complex64::ZERO; n * n]; // [a * n + b]
        let mut col = vec![Complex64::ZERO; n];
        for b in 0..n {
            raw_pass(m, &stage, b, n, 1, &mut col);
            for a in 0..n {
                g[a * n + b] = col[a];
            }
        }
        g
    });

    let scale = 1.0 / (n * n) as f64;
    let mut out = Operator::zeros(n);
    for w1 in 0..n {
        for z1 in 0..n {
            let g = &partial[w1 * n + z1];
            for a in 0..n {
                for b in 0..n {
                    let v = g[a * n + b] * s.at(m.sub(a, z1), m.sub(b, w1)) * scale;
                    let cur = out.at(a, b);
                    out.set(a, b, cur + v);
                }
            }
        }
    }
    Ok(out)
}

/// Reproducing kernel `k_p(q) = <gamma_q(S), gamma_p(S)>_HS`. For a unit
/// window, `Q_S T(p) = (1/N^2) sum_q Q_S T(q) k_p(q)`.
pub fn reproducing_kernel(
    m: &Modulus,
    s: &Operator,
    p: DoublePhasePoint,
    q: DoublePhasePoint,
) -> Complex64 {
    hs_inner(
        &gamma_shift(m, q.w, q.z, s),
        &gamma_shift(m, p.w, p.z, s),
    )
}

/// Twisted convolution on double phase space,
///
/// `(F (*) G)(w, z) = (1/N^2) sum_{w',z'} F(w', z') G(w - w', z - z')
///     zeta^{-(z1'(z2 - z2') - w1'(w2 - w2'))}`.
///
/// FFT-accelerated: for fixed first coordinates the twist is a character in
/// the difference variables, so each `(w1', z1')` contributes a modulated 2D
/// convolution, evaluated as a spectral product with shifted indices.
pub fn twisted_convolution(
    m: &Modulus,
    f: &DoublePhaseFunction,
    g: &DoublePhaseFunction,
) -> Result<DoublePhaseFunction> {
    let n = m.n();
    for (what, got) in [
        ("double phase function", f.n()),
        ("double phase function", g.n()),
    ] {
        if got != n {
            return Err(QtfaError::Dimension {
                what,
                expected: n,
                got,
            });
        }
    }
    let n2 = n * n;

    // Forward 2D spectra of all (w1, z1) slices: hat[w1 * n + z1][p * n + q].
    let spectra = |h: &DoublePhaseFunction| -> Vec<Vec<Complex64>> {
        par::map_indices(n2, |pair| {
            let w1 = pair / n;
            let z1 = pair % n;
            let mut slice = vec![Complex64::ZERO; n2]; // [w2 * n + z2]
            for w2 in 0..n {
                for z2 in 0..n {
                    slice[w2 * n + z2] = h.at(w1, w2, z1, z2);
                }
            }
            dft2_forward(m, &slice)
        })
    };
    let fhat = spectra(f);
    let ghat = spectra(g);

    let scale = 1.0 / (n2 * n2) as f64;
    let out_slices: Vec<Vec<Complex64>> = par::map_indices(n2, |pair| {
        let w1 = pair / n;
        let z1 = pair % n;
        let mut acc = vec![Complex64::ZERO; n2];
        for w1p in 0..n {
            for z1p in 0..n {
                let fh = &fhat[w1p * n + z1p];
                let gh = &ghat[m.sub(w1, w1p) * n + m.sub(z1, z1p)];
                for p in 0..n {
                    let ps = m.sub(p, w1p);
                    for q in 0..n {
                        let qs = m.add(q, z1p);
                        acc[p * n + q] += fh[p * n + q] * gh[ps * n + qs];
                    }
                }
            }
        }
        let mut inv = dft2_inverse(m, &acc);
        for v in &mut inv {
            *v *= scale;
        }
        inv
    });

    let mut out = DoublePhaseFunction::zeros(n);
    for w1 in 0..n {
        for z1 in 0..n {
            let slice = &out_slices[w1 * n + z1];
            for w2 in 0..n {
                for z2 in 0..n {
                    out.set(w1, w2, z1, z2, slice[w2 * n + z2]);
                }
            }
        }
    }
    Ok(out)
}

/// `Phi[f](p, q) = sum_{u,v} f(u, v) zeta^{-(up + vq)}` on an n x n buffer.
fn dft2_forward(m: &Modulus, f: &[Complex64]) -> Vec<Complex64> {
    crate::fourier::dft2_raw(m, f, -1)
}

/// `Phi^{-1}` without the 1/N^2 (applied by the caller).
fn dft2_inverse(m: &Modulus, f: &[Complex64]) -> Vec<Complex64> {
    crate::fourier::dft2_raw(m, f, 1)
}

/// Brute-force reference for [`twisted_convolution`]; test oracle.
pub fn twisted_convolution_naive(
    m: &Modulus,
    f: &DoublePhaseFunction,
    g: &DoublePhaseFunction,
) -> DoublePhaseFunction {
    let n = m.n();
    let n2 = (n * n) as f64;
    DoublePhaseFunction::from_fn(n, |w1, w2, z1, z2| {
        let mut acc = Complex64::ZERO;
        for w1p in 0..n {
            for w2p in 0..n {
                for z1p in 0..n {
                    for z2p in 0..n {
                        let dz2 = m.sub(z2, z2p) as i64;
                        let dw2 = m.sub(w2, w2p) as i64;
                        let twist = m.zeta_pow(-(z1p as i64) * dz2 + (w1p as i64) * dw2);
                        acc += f.at(w1p, w2p, z1p, z2p)
                            * g.at(m.sub(w1, w1p), m.sub(w2, w2p), m.sub(z1, z1p), m.sub(z2, z2p))
                            * twist;
                    }
                }
            }
        }
        acc / n2
    })
}

/// Localisation operator `A_F^S T = Q_S^*(F . Q_S T)`.
pub fn localisation_operator(
    m: &Modulus,
    mask: &LocalisationMask,
    s: &Operator,
    t: &Operator,
) -> Result<Operator> {
    let q = cohen(m, s, t)?;
    cohen_adjoint(m, s, &mask.0.mul_pointwise(&q))
}

/// Operator STFT slice `V_S T(z) = S* pi(z)* T` together with the transform
/// slice it predicts: `Q_S T(w, z) = half_phase(w1 w2) F_W(V_S T(z))(-w)`.
///
/// Returns `(V_S T(z), predicted slice as a function of w)`.
pub fn operator_stft_link(
    m: &Modulus,
    s: &Operator,
    t: &Operator,
    z: PhasePoint,
) -> (Operator, PhaseFunction) {
    let n = m.n();
    // pi(z)* T = zeta^{-z1 z2} pi(-z) T; kernel of pi(v) A is
    // zeta^{v2 a} A(a - v1, b).
    let zn = z.neg(m);
    let phase = m.zeta_pow(-((z.x * z.omega) as i64));
    let piz_t = Operator::from_fn(n, |a, b| {
        phase * m.zeta_pow((zn.omega * a) as i64) * t.at(m.sub(a, zn.x), b)
    });
    let v = s.adjoint().compose(&piz_t);
    let fw = crate::quantization::fourier_wigner(m, &v);
    let slice = PhaseFunction::from_fn(n, |w1, w2| {
        m.half_phase((w1 * w2) as i64) * fw.at(m.neg(w1), m.neg(w2))
    });
    (v, slice)
}

/// Diagonal restriction `z -> Q_S(f (x) f)(z, z)`: the quadratic class
/// of the window `S` applied to the signal `f`.
pub fn cohen_class_diagonal(m: &Modulus, s: &Operator, f: &Signal) -> PhaseFunction {
    let n = m.n();
    let t = crate::operator::rank_one(f, f);
    PhaseFunction::from_fn(n, |x, omega| {
        let z = PhasePoint { x, omega };
        cohen_at(m, s, &t, z, z)
    })
}

/// Report of a two-sided identity check: the largest entrywise deviation.
#[derive(Debug, Clone, Copy)]
pub struct IdentityCheck {
    pub max_deviation: f64,
}

/// Product identity on double phase space:
/// `F_P(Q_S T . conj(Q_R W)) = Q_W T . conj(Q_R S)`.
pub fn fphi_product_check(
    m: &Modulus,
    s: &Operator,
    t: &Operator,
    r: &Operator,
    w: &Operator,
) -> Result<IdentityCheck> {
    let qst = cohen(m, s, t)?;
    let qrw = cohen(m, r, w)?;
    let lhs = double_symplectic_dft(m, &qst.mul_pointwise(&qrw.conj()))?;
    let qwt = cohen(m, w, t)?;
    let qrs = cohen(m, r, s)?;
    let rhs = qwt.mul_pointwise(&qrs.conj());
    Ok(IdentityCheck {
        max_deviation: lhs.max_dev(&rhs),
    })
}

/// Kernel identity:
/// `F_P(Q_S T)(w, z) = K_T(z1, w1) conj(Khat_S(z2, w2)) zeta^{w1 w2 - z1 z2}`
/// where `Khat_S(p, q) = sum_{a,b} K_S(a, b) zeta^{-ap + bq}` is the mixed
/// forward/inverse 2D transform of the window kernel.
pub fn fphi_kernel_check(m: &Modulus, s: &Operator, t: &Operator) -> Result<IdentityCheck> {
    let n = m.n();
    let lhs = double_symplectic_dft(m, &cohen(m, s, t)?)?;
    let mut khat = vec![Complex64::ZERO; n * n];
    for p in 0..n {
        for q in 0..n {
            let mut acc = Complex64::ZERO;
            for a in 0..n {
                for b in 0..n {
                    acc += s.at(a, b) * m.zeta_pow(-((a * p) as i64) + (b * q) as i64);
                }
            }
            khat[p * n + q] = acc;
        }
    }
    let rhs = DoublePhaseFunction::from_fn(n, |w1, w2, z1, z2| {
        t.at(z1, w1)
            * khat[z2 * n + w2].conj()
            * m.zeta_pow((w1 * w2) as i64 - (z1 * z2) as i64)
    });
    Ok(IdentityCheck {
        max_deviation: lhs.max_dev(&rhs),
    })
}
