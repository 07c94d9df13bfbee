//! Hilbert-Schmidt operators on `Z_N`: dense kernels, rank-one tensors, the
//! trace inner product, and singular value decompositions.

use num_complex::Complex64;

use crate::linalg;
use crate::phase_space::{Modulus, Signal};
use crate::{QtfaError, Result};

/// An operator given by its integral kernel, acting as
/// `(S f)(x) = sum_t K(x, t) f(t)`. Stored row-major: `kernel[x * N + t]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Operator {
    n: usize,
    kernel: Vec<Complex64>,
}

impl Operator {
    pub fn zeros(n: usize) -> Self {
        Operator {
            n,
            kernel: vec![Complex64::ZERO; n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut op = Self::zeros(n);
        for i in 0..n {
            op.kernel[i * n + i] = Complex64::ONE;
        }
        op
    }

    pub fn from_kernel(n: usize, kernel: Vec<Complex64>) -> Result<Self> {
        if kernel.len() != n * n {
            return Err(QtfaError::Dimension {
                what: "operator kernel",
                expected: n * n,
                got: kernel.len(),
            });
        }
        Ok(Operator { n, kernel })
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut kernel = Vec::with_capacity(n * n);
        for x in 0..n {
            for t in 0..n {
                kernel.push(f(x, t));
            }
        }
        Operator { n, kernel }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn at(&self, x: usize, t: usize) -> Complex64 {
        self.kernel[x * self.n + t]
    }

    #[inline]
    pub fn set(&mut self, x: usize, t: usize, v: Complex64) {
        self.kernel[x * self.n + t] = v;
    }

    #[inline]
    pub fn kernel(&self) -> &[Complex64] {
        &self.kernel
    }

    #[inline]
    pub fn kernel_mut(&mut self) -> &mut [Complex64] {
        &mut self.kernel
    }

    /// Apply to a signal.
    pub fn apply(&self, f: &Signal) -> Signal {
        assert_eq!(f.len(), self.n, "signal length must match the operator");
        Signal::from_fn(self.n, |x| {
            let mut acc = Complex64::ZERO;
            for t in 0..self.n {
                acc += self.at(x, t) * f.at(t);
            }
            acc
        })
    }

    /// Operator product `self * other`.
    pub fn compose(&self, other: &Operator) -> Operator {
        assert_eq!(self.n, other.n, "operator sizes must match");
        let n = self.n;
        Operator::from_fn(n, |x, t| {
            let mut acc = Complex64::ZERO;
            for k in 0..n {
                acc += self.at(x, k) * other.at(k, t);
            }
            acc
        })
    }

    /// Hermitian adjoint `S*`, kernel `K*(x, t) = conj K(t, x)`.
    pub fn adjoint(&self) -> Operator {
        Operator::from_fn(self.n, |x, t| self.at(t, x).conj())
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.n).map(|i| self.at(i, i)).sum()
    }

    pub fn scale(&self, c: Complex64) -> Operator {
        Operator {
            n: self.n,
            kernel: self.kernel.iter().map(|v| v * c).collect(),
        }
    }

    pub fn add(&self, other: &Operator) -> Operator {
        Operator {
            n: self.n,
            kernel: self
                .kernel
                .iter()
                .zip(&other.kernel)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Operator) -> Operator {
        Operator {
            n: self.n,
            kernel: self
                .kernel
                .iter()
                .zip(&other.kernel)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn hs_norm(&self) -> f64 {
        self.kernel
            .iter()
            .map(|v| v.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    pub fn max_dev(&self, other: &Operator) -> f64 {
        self.kernel
            .iter()
            .zip(&other.kernel)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

/// Rank-one operator `f (x) g = <. , g> f`, kernel `K(x, t) = f(x) conj g(t)`.
pub fn rank_one(f: &Signal, g: &Signal) -> Operator {
    assert_eq!(f.len(), g.len(), "factor lengths must match");
    Operator::from_fn(f.len(), |x, t| f.at(x) * g.at(t).conj())
}

/// Hilbert-Schmidt inner product `<S, T> = tr(S T*) = sum K_S conj K_T`.
pub fn hs_inner(s: &Operator, t: &Operator) -> Complex64 {
    assert_eq!(s.n(), t.n(), "operator sizes must match");
    s.kernel()
        .iter()
        .zip(t.kernel())
        .map(|(a, b)| a * b.conj())
        .sum()
}

/// Singular value decomposition `S = sum_n s_n psi_n (x) phi_n` with
/// nonincreasing singular values and orthonormal factor systems.
#[derive(Debug, Clone)]
pub struct SpectralDecomposition {
    pub singular_values: Vec<f64>,
    /// Left factors `psi_n`.
    pub left: Vec<Signal>,
    /// Right factors `phi_n`.
    pub right: Vec<Signal>,
}

impl SpectralDecomposition {
    /// Reassemble `sum s_n psi_n (x) phi_n`.
    pub fn reconstruct(&self, n: usize) -> Operator {
        let mut acc = Operator::zeros(n);
        for ((s, psi), phi) in self
            .singular_values
            .iter()
            .zip(&self.left)
            .zip(&self.right)
        {
            let term = rank_one(psi, phi).scale(Complex64::new(*s, 0.0));
            acc = acc.add(&term);
        }
        acc
    }
}

/// Singular value decomposition of the kernel matrix.
pub fn svd(_m: &Modulus, s: &Operator) -> Result<SpectralDecomposition> {
    let (sv, left, right) = linalg::svd_kernel(s.n(), s.kernel())?;
    Ok(SpectralDecomposition {
        singular_values: sv,
        left: left.into_iter().map(Signal::new).collect(),
        right: right.into_iter().map(Signal::new).collect(),
    })
}
