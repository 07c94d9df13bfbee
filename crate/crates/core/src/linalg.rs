//! Thin adapters around nalgebra for the dense factorisations: complex SVD,
//! Hermitian eigendecomposition, and numerical rank.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::{QtfaError, Result};

pub(crate) fn to_dmatrix(rows: usize, cols: usize, data: &[Complex64]) -> DMatrix<Complex64> {
    // Our buffers are row-major; nalgebra stores column-major.
    DMatrix::from_fn(rows, cols, |r, c| data[r * cols + c])
}

/// SVD of a square row-major kernel. Returns singular values (nonincreasing)
/// with matching left and right orthonormal systems.
///
/// Built on the Hermitian eigendecomposition of `A^H A`: the right vectors
/// are its eigenvectors, each singular value is recomputed as `||A v||`
/// (full relative accuracy even near zero), the left vectors are `A v /
/// sigma` on the numerical range and a Gram-Schmidt completion on the null
/// space.
pub(crate) type SvdParts = (Vec<f64>, Vec<Vec<Complex64>>, Vec<Vec<Complex64>>);

pub(crate) fn svd_kernel(n: usize, kernel: &[Complex64]) -> Result<SvdParts> {
    let a = to_dmatrix(n, n, kernel);
    let normal = a.adjoint() * &a;
    let herm = (&normal + normal.adjoint()) * Complex64::new(0.5, 0.0);
    let eig = herm.symmetric_eigen();

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[j].partial_cmp(&eig.eigenvalues[i]).unwrap());

    let mut values = Vec::with_capacity(n);
    let mut left: Vec<Option<Vec<Complex64>>> = Vec::with_capacity(n);
    let mut right = Vec::with_capacity(n);
    let scale = a.norm().max(f64::MIN_POSITIVE);
    for &k in &order {
        let v = eig.eigenvectors.column(k).clone_owned();
        let av = &a * &v;
        let sigma = av.norm();
        values.push(sigma);
        if sigma > 1e-13 * scale {
            left.push(Some((av / Complex64::new(sigma, 0.0)).iter().copied().collect()));
        } else {
            left.push(None);
        }
        right.push(v.iter().copied().collect());
    }

    // Complete the left system on the null space.
    let mut basis: Vec<DVector<Complex64>> = left
        .iter()
        .flatten()
        .map(|u| DVector::from_iterator(n, u.iter().copied()))
        .collect();
    for slot in left.iter_mut() {
        if slot.is_some() {
            continue;
        }
        let mut candidate = None;
        for e in 0..n {
            let mut v = DVector::from_fn(n, |r, _| {
                if r == e {
                    Complex64::ONE
                } else {
                    Complex64::ZERO
                }
            });
            for b in &basis {
                let coeff = b.dotc(&v);
                v -= b * coeff;
            }
            let nv = v.norm();
            if nv > 0.5_f64.sqrt() / n as f64 {
                v /= Complex64::new(nv, 0.0);
                candidate = Some(v);
                break;
            }
        }
        let v = candidate
            .ok_or_else(|| QtfaError::Numerical("SVD null-space completion failed".into()))?;
        *slot = Some(v.iter().copied().collect());
        basis.push(v);
    }

    Ok((
        values,
        left.into_iter().map(|u| u.expect("completed")).collect(),
        right,
    ))
}

/// Eigendecomposition of a Hermitian matrix given row-major. Returns
/// `(eigenvalues, eigenvectors)` sorted by increasing eigenvalue; the
/// input is symmetrised first to wash out accumulation noise.
pub(crate) fn hermitian_eigen(
    dim: usize,
    data: &[Complex64],
) -> (Vec<f64>, Vec<Vec<Complex64>>) {
    let mat = to_dmatrix(dim, dim, data);
    let herm = (&mat + mat.adjoint()) * Complex64::new(0.5, 0.0);
    let eig = herm.symmetric_eigen();
    let mut order: Vec<usize> = (0..dim).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].partial_cmp(&eig.eigenvalues[b]).unwrap());
    let values = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let vectors = order
        .iter()
        .map(|&k| eig.eigenvectors.column(k).iter().copied().collect())
        .collect();
    (values, vectors)
}

/// Numerical rank of a rectangular row-major matrix, computed through the
/// Hermitian eigenvalues of the Gram matrix `A^H A`. The squared relative
/// threshold is floored at the eigen-solver noise level, so exact zero
/// directions are never promoted to rank.
pub(crate) fn numerical_rank(rows: usize, cols: usize, data: &[Complex64], tol: f64) -> usize {
    let mat = to_dmatrix(rows, cols, data);
    let gram = mat.adjoint() * &mat;
    let (vals, _) = hermitian_eigen(cols, gram.transpose().as_slice());
    let max = vals.iter().cloned().fold(0.0, f64::max);
    if max <= 0.0 {
        return 0;
    }
    let threshold = (tol * tol).max(1e-12) * max;
    vals.iter().filter(|&&v| v > threshold).count()
}

/// Solve `A x = b` for Hermitian positive definite `A` through its
/// eigendecomposition; fails when the spectrum touches zero.
#[allow(dead_code)]
pub(crate) fn hermitian_solve(
    dim: usize,
    data: &[Complex64],
    b: &[Complex64],
    rel_tol: f64,
) -> Result<Vec<Complex64>> {
    let (vals, vecs) = hermitian_eigen(dim, data);
    let max = vals.iter().cloned().fold(0.0, f64::max);
    let min = vals.first().copied().unwrap_or(0.0);
    if min <= rel_tol * max || max <= 0.0 {
        return Err(QtfaError::NotAFrame {
            min_eigenvalue: min,
        });
    }
    let bvec = DVector::from_iterator(dim, b.iter().copied());
    let mut x = vec![Complex64::ZERO; dim];
    for (lambda, q) in vals.iter().zip(&vecs) {
        let qv = DVector::from_iterator(dim, q.iter().copied());
        let coeff = qv.dotc(&bvec) / Complex64::new(*lambda, 0.0);
        for (xi, qi) in x.iter_mut().zip(q) {
            *xi += coeff * qi;
        }
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hermitian_eigen_of_diagonal() {
        let data = vec![
            Complex64::new(2.0, 0.0),
            Complex64::ZERO,
            Complex64::ZERO,
            Complex64::new(5.0, 0.0),
        ];
        let (vals, _) = hermitian_eigen(2, &data);
        assert!((vals[0] - 2.0).abs() < 1e-12);
        assert!((vals[1] - 5.0).abs() < 1e-12);
    }

    #[test]
    fn rank_of_rank_one() {
        // Outer product of two vectors has rank one.
        let a = [Complex64::new(1.0, 1.0), Complex64::new(2.0, -1.0)];
        let b = [Complex64::new(0.5, 0.0), Complex64::new(0.0, 3.0)];
        let mut data = vec![Complex64::ZERO; 4];
        for r in 0..2 {
            for c in 0..2 {
                data[r * 2 + c] = a[r] * b[c];
            }
        }
        assert_eq!(numerical_rank(2, 2, &data, 1e-10), 1);
    }
}
