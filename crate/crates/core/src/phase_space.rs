//! The finite grid: modulus arithmetic, phase points, and the value types
//! (signals, phase-space functions, double-phase-space functions).

use num_complex::Complex64;
use std::f64::consts::TAU;

use crate::{QtfaError, Result};

/// Arithmetic context for `Z_N` with `N` odd.
///
/// Precomputes the power table of the primitive root of unity
/// `zeta = exp(2 pi i / N)` and the inverse of two, `half = (N+1)/2`,
/// which realises every half-shift exactly. All phases in the crate are
/// integer powers of `zeta`, so identities are N-periodic in each argument.
#[derive(Debug, Clone)]
pub struct Modulus {
    n: usize,
    half: usize,
    zeta: Vec<Complex64>,
}

impl Modulus {
    pub fn new(n: usize) -> Result<Self> {
        if n < 3 || n.is_multiple_of(2) {
            return Err(QtfaError::InvalidModulus(n));
        }
        let zeta = (0..n)
            .map(|k| Complex64::from_polar(1.0, TAU * k as f64 / n as f64))
            .collect();
        Ok(Modulus {
            n,
            half: n.div_ceil(2),
            zeta,
        })
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    /// `2^{-1} mod N`.
    #[inline]
    pub fn half(&self) -> usize {
        self.half
    }

    /// Canonical representative of `a` in `{0, .., N-1}`.
    #[inline]
    pub fn reduce(&self, a: i64) -> usize {
        a.rem_euclid(self.n as i64) as usize
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        let s = a + b;
        if s >= self.n {
            s - self.n
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: usize, b: usize) -> usize {
        if a >= b {
            a - b
        } else {
            a + self.n - b
        }
    }

    #[inline]
    pub fn neg(&self, a: usize) -> usize {
        if a == 0 {
            0
        } else {
            self.n - a
        }
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        (a as u64 * b as u64 % self.n as u64) as usize
    }

    /// `zeta^a` for any integer exponent.
    #[inline]
    pub fn zeta_pow(&self, a: i64) -> Complex64 {
        self.zeta[self.reduce(a)]
    }

    /// Centered representative of `a` in `[-(N-1)/2, (N-1)/2]`.
    #[inline]
    pub fn centered(&self, a: usize) -> i64 {
        let a = a as i64;
        let n = self.n as i64;
        if a > (n - 1) / 2 {
            a - n
        } else {
            a
        }
    }

    /// The unit complex number `zeta^{half * a}`, the exact realisation of
    /// the half phase `e^{i pi a / N}`-type factors. Squaring it gives
    /// `zeta^a` for every representative of `a`.
    #[inline]
    pub fn half_phase(&self, a: i64) -> Complex64 {
        self.zeta[self.mul(self.half, self.reduce(a))]
    }
}

/// The exact half phase `zeta^{(half * a) mod N}`.
pub fn half_phase(a: i64, modulus: &Modulus) -> Complex64 {
    modulus.half_phase(a)
}

/// A point `z = (x, omega)` of phase space `Z_N x Z_N`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PhasePoint {
    pub x: usize,
    pub omega: usize,
}

impl PhasePoint {
    /// Canonicalises arbitrary integer coordinates.
    pub fn new(modulus: &Modulus, x: i64, omega: i64) -> Self {
        PhasePoint {
            x: modulus.reduce(x),
            omega: modulus.reduce(omega),
        }
    }

    pub const ZERO: PhasePoint = PhasePoint { x: 0, omega: 0 };

    pub fn neg(self, m: &Modulus) -> Self {
        PhasePoint {
            x: m.neg(self.x),
            omega: m.neg(self.omega),
        }
    }

    pub fn add(self, other: PhasePoint, m: &Modulus) -> Self {
        PhasePoint {
            x: m.add(self.x, other.x),
            omega: m.add(self.omega, other.omega),
        }
    }

    pub fn sub(self, other: PhasePoint, m: &Modulus) -> Self {
        PhasePoint {
            x: m.sub(self.x, other.x),
            omega: m.sub(self.omega, other.omega),
        }
    }

    /// Scalar multiple `(c x, c omega)`.
    pub fn scale(self, c: usize, m: &Modulus) -> Self {
        PhasePoint {
            x: m.mul(c, self.x),
            omega: m.mul(c, self.omega),
        }
    }
}

/// A point `(w, z)` of double phase space `Z_N^4`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DoublePhasePoint {
    pub w: PhasePoint,
    pub z: PhasePoint,
}

impl DoublePhasePoint {
    pub fn new(w: PhasePoint, z: PhasePoint) -> Self {
        DoublePhasePoint { w, z }
    }
}

/// The symplectic form `Omega(z, z') = x' omega - x omega'  (mod N)`.
///
/// This sign convention is fixed once here; the symplectic Fourier kernel is
/// `zeta^{-Omega(z, z')}` in the integration variable `z'`.
pub fn symplectic_form(z: PhasePoint, zp: PhasePoint, m: &Modulus) -> usize {
    m.sub(m.mul(zp.x, z.omega), m.mul(z.x, zp.omega))
}

/// A complex vector on `Z_N`: the model Hilbert space element.
#[derive(Debug, Clone, PartialEq)]
pub struct Signal {
    values: Vec<Complex64>,
}

impl Signal {
    pub fn new(values: Vec<Complex64>) -> Self {
        Signal { values }
    }

    pub fn zeros(n: usize) -> Self {
        Signal {
            values: vec![Complex64::ZERO; n],
        }
    }

    /// Kronecker delta at `t`.
    pub fn delta(n: usize, t: usize) -> Self {
        let mut s = Self::zeros(n);
        s.values[t % n] = Complex64::ONE;
        s
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize) -> Complex64) -> Self {
        Signal {
            values: (0..n).map(&mut f).collect(),
        }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.values.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    #[inline]
    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    #[inline]
    pub fn values_mut(&mut self) -> &mut [Complex64] {
        &mut self.values
    }

    #[inline]
    pub fn at(&self, t: usize) -> Complex64 {
        self.values[t]
    }

    /// Counting-measure inner product, conjugate-linear in the second slot.
    pub fn inner(&self, other: &Signal) -> Complex64 {
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a * b.conj())
            .sum()
    }

    pub fn norm(&self) -> f64 {
        self.inner(self).re.sqrt()
    }

    pub fn scale(&self, c: Complex64) -> Signal {
        Signal {
            values: self.values.iter().map(|v| v * c).collect(),
        }
    }

    pub fn add(&self, other: &Signal) -> Signal {
        Signal {
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Signal) -> Signal {
        Signal {
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

/// A complex function on phase space, stored row-major as `values[x * N + omega]`.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseFunction {
    n: usize,
    values: Vec<Complex64>,
}

impl PhaseFunction {
    pub fn zeros(n: usize) -> Self {
        PhaseFunction {
            n,
            values: vec![Complex64::ZERO; n * n],
        }
    }

    pub fn from_values(n: usize, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != n * n {
            return Err(QtfaError::Dimension {
                what: "phase function",
                expected: n * n,
                got: values.len(),
            });
        }
        Ok(PhaseFunction { n, values })
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut values = Vec::with_capacity(n * n);
        for x in 0..n {
            for omega in 0..n {
                values.push(f(x, omega));
            }
        }
        PhaseFunction { n, values }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn at(&self, x: usize, omega: usize) -> Complex64 {
        self.values[x * self.n + omega]
    }

    #[inline]
    pub fn at_point(&self, z: PhasePoint) -> Complex64 {
        self.at(z.x, z.omega)
    }

    #[inline]
    pub fn set(&mut self, x: usize, omega: usize, v: Complex64) {
        self.values[x * self.n + omega] = v;
    }

    #[inline]
    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    #[inline]
    pub fn values_mut(&mut self) -> &mut [Complex64] {
        &mut self.values
    }

    /// Phase-space inner product `(1/N) sum F conj(G)`.
    pub fn inner(&self, other: &PhaseFunction) -> Complex64 {
        let raw: Complex64 = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a * b.conj())
            .sum();
        raw / self.n as f64
    }

    pub fn norm(&self) -> f64 {
        self.inner(self).re.max(0.0).sqrt()
    }

    pub fn scale(&self, c: Complex64) -> PhaseFunction {
        PhaseFunction {
            n: self.n,
            values: self.values.iter().map(|v| v * c).collect(),
        }
    }

    pub fn sub(&self, other: &PhaseFunction) -> PhaseFunction {
        PhaseFunction {
            n: self.n,
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// Largest entrywise deviation from `other`.
    pub fn max_dev(&self, other: &PhaseFunction) -> f64 {
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

/// A complex function on double phase space `Z_N^4`, stored row-major as
/// `values[((w1 * N + w2) * N + z1) * N + z2]`.
#[derive(Debug, Clone, PartialEq)]
pub struct DoublePhaseFunction {
    n: usize,
    values: Vec<Complex64>,
}

impl DoublePhaseFunction {
    pub fn zeros(n: usize) -> Self {
        DoublePhaseFunction {
            n,
            values: vec![Complex64::ZERO; n * n * n * n],
        }
    }

    pub fn from_values(n: usize, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != n * n * n * n {
            return Err(QtfaError::Dimension {
                what: "double phase function",
                expected: n * n * n * n,
                got: values.len(),
            });
        }
        Ok(DoublePhaseFunction { n, values })
    }

    pub fn from_fn(
        n: usize,
        mut f: impl FnMut(usize, usize, usize, usize) -> Complex64,
    ) -> Self {
        let mut values = Vec::with_capacity(n * n * n * n);
        for w1 in 0..n {
            for w2 in 0..n {
                for z1 in 0..n {
                    for z2 in 0..n {
                        values.push(f(w1, w2, z1, z2));
                    }
                }
            }
        }
        DoublePhaseFunction { n, values }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn idx(&self, w1: usize, w2: usize, z1: usize, z2: usize) -> usize {
        ((w1 * self.n + w2) * self.n + z1) * self.n + z2
    }

    #[inline]
    pub fn at(&self, w1: usize, w2: usize, z1: usize, z2: usize) -> Complex64 {
        self.values[self.idx(w1, w2, z1, z2)]
    }

    #[inline]
    pub fn at_point(&self, p: DoublePhasePoint) -> Complex64 {
        self.at(p.w.x, p.w.omega, p.z.x, p.z.omega)
    }

    #[inline]
    pub fn set(&mut self, w1: usize, w2: usize, z1: usize, z2: usize, v: Complex64) {
        let i = self.idx(w1, w2, z1, z2);
        self.values[i] = v;
    }

    #[inline]
    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    #[inline]
    pub fn values_mut(&mut self) -> &mut [Complex64] {
        &mut self.values
    }

    /// Double-phase-space inner product `(1/N^2) sum F conj(G)`.
    pub fn inner(&self, other: &DoublePhaseFunction) -> Complex64 {
        let raw: Complex64 = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a * b.conj())
            .sum();
        raw / (self.n * self.n) as f64
    }

    pub fn norm(&self) -> f64 {
        self.inner(self).re.max(0.0).sqrt()
    }

    pub fn scale(&self, c: Complex64) -> DoublePhaseFunction {
        DoublePhaseFunction {
            n: self.n,
            values: self.values.iter().map(|v| v * c).collect(),
        }
    }

    pub fn sub(&self, other: &DoublePhaseFunction) -> DoublePhaseFunction {
        DoublePhaseFunction {
            n: self.n,
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    /// Pointwise product `self * other`.
    pub fn mul_pointwise(&self, other: &DoublePhaseFunction) -> DoublePhaseFunction {
        DoublePhaseFunction {
            n: self.n,
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a * b)
                .collect(),
        }
    }

    pub fn conj(&self) -> DoublePhaseFunction {
        DoublePhaseFunction {
            n: self.n,
            values: self.values.iter().map(|v| v.conj()).collect(),
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    pub fn max_dev(&self, other: &DoublePhaseFunction) -> f64 {
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}
