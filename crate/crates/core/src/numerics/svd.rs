//! Full real SVD by one-sided (Hestenes) Jacobi rotations.
//!
//! The matrices handled here are at most 9x9, so the quadratic sweep cost is
//! irrelevant and Jacobi's accuracy on small singular values is what matters.

use crate::error::{input, Result};
use crate::numerics::matrix::RealMatrix;
use crate::scalar::Real;

const MAX_SWEEPS: usize = 80;

/// `m = u * diag(singular_values) * v^T` with square orthogonal `u` (m x m)
/// and `v` (n x n); singular values are non-negative and descending.
#[derive(Debug, Clone, PartialEq)]
pub struct SvdResult<T> {
    pub u: RealMatrix<T>,
    pub singular_values: Vec<T>,
    pub v: RealMatrix<T>,
}

impl<T: Real> SvdResult<T> {
    /// `u * Σ * v^T` with Σ padded to the input shape.
    pub fn reconstruct(&self) -> RealMatrix<T> {
        let (m, n) = (self.u.rows(), self.v.rows());
        let mut sigma = RealMatrix::zeros(m, n);
        for (i, &s) in self.singular_values.iter().enumerate() {
            sigma[(i, i)] = s;
        }
        self.u.matmul(&sigma).matmul(&self.v.transpose())
    }
}

/// Singular value decomposition of a finite, non-empty real matrix.
pub fn svd_real<T: Real>(m: &RealMatrix<T>) -> Result<SvdResult<T>> {
    if m.rows() == 0 || m.cols() == 0 {
        return Err(input("svd of an empty matrix"));
    }
    if !m.is_finite() {
        return Err(input("svd input has non-finite entries"));
    }
    if m.rows() >= m.cols() {
        Ok(jacobi_tall(m))
    } else {
        // A^T = U' S V'^T  =>  A = V' S U'^T
        let t = jacobi_tall(&m.transpose());
        Ok(SvdResult {
            u: t.v,
            singular_values: t.singular_values,
            v: t.u,
        })
    }
}

/// Singular values only, descending.
pub fn singular_values<T: Real>(m: &RealMatrix<T>) -> Result<Vec<T>> {
    svd_real(m).map(|s| s.singular_values)
}

fn jacobi_tall<T: Real>(a: &RealMatrix<T>) -> SvdResult<T> {
    let (rows, cols) = (a.rows(), a.cols());
    let mut w = a.clone();
    let mut v = RealMatrix::<T>::identity(cols);
    let eps = T::epsilon();

    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..cols {
            for q in p + 1..cols {
                let (mut alpha, mut beta, mut gamma) = (T::zero(), T::zero(), T::zero());
                for i in 0..rows {
                    let (x, y) = (w[(i, p)], w[(i, q)]);
                    alpha = alpha + x * x;
                    beta = beta + y * y;
                    gamma = gamma + x * y;
                }
                if gamma == T::zero() || gamma.abs() <= eps * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let zeta = (beta - alpha) / (gamma + gamma);
                let t = zeta.signum() / (zeta.abs() + (T::one() + zeta * zeta).sqrt());
                let c = T::one() / (T::one() + t * t).sqrt();
                let s = c * t;
                rotate_columns(&mut w, p, q, c, s);
                rotate_columns(&mut v, p, q, c, s);
            }
        }
        if !rotated {
            break;
        }
    }

    let norms: Vec<T> = (0..cols)
        .map(|j| (0..rows).fold(T::zero(), |s, i| s + w[(i, j)] * w[(i, j)]).sqrt())
        .collect();
    let mut order: Vec<usize> = (0..cols).collect();
    order.sort_by(|&i, &j| norms[j].partial_cmp(&norms[i]).expect("finite norms"));

    let largest = norms[order[0]];
    let cutoff = largest * eps * T::from_usize(rows.max(cols)).unwrap();

    let mut u_cols: Vec<Vec<T>> = Vec::with_capacity(rows);
    let mut singular_values = Vec::with_capacity(cols);
    let mut v_sorted = RealMatrix::zeros(cols, cols);
    for (k, &j) in order.iter().enumerate() {
        singular_values.push(norms[j]);
        for i in 0..cols {
            v_sorted[(i, k)] = v[(i, j)];
        }
        if norms[j] > cutoff && norms[j] > T::zero() {
            u_cols.push((0..rows).map(|i| w[(i, j)] / norms[j]).collect());
        } else {
            // left vector for a numerically zero singular value comes from completion
            u_cols.push(Vec::new());
        }
    }
    let u = complete_orthonormal(u_cols, rows);
    SvdResult {
        u,
        singular_values,
        v: v_sorted,
    }
}

fn rotate_columns<T: Real>(m: &mut RealMatrix<T>, p: usize, q: usize, c: T, s: T) {
    for i in 0..m.rows() {
        let (x, y) = (m[(i, p)], m[(i, q)]);
        m[(i, p)] = c * x - s * y;
        m[(i, q)] = s * x + c * y;
    }
}

/// Fills empty slots (and any slots beyond `cols.len()`) with unit vectors
/// orthogonal to everything already present, re-orthonormalizing the given
/// vectors on the way.
fn complete_orthonormal<T: Real>(mut cols: Vec<Vec<T>>, dim: usize) -> RealMatrix<T> {
    cols.resize(dim, Vec::new());
    let mut basis: Vec<Vec<T>> = Vec::with_capacity(dim);
    let mut slots: Vec<Option<usize>> = vec![None; dim];

    for (k, c) in cols.iter().enumerate() {
        if c.is_empty() {
            continue;
        }
        if let Some(u) = orthonormalize(c.clone(), &basis) {
            slots[k] = Some(basis.len());
            basis.push(u);
        }
    }
    let mut candidate = 0;
    for slot in slots.iter_mut() {
        if slot.is_some() {
            continue;
        }
        while candidate < dim {
            let mut e = vec![T::zero(); dim];
            e[candidate] = T::one();
            candidate += 1;
            if let Some(u) = orthonormalize(e, &basis) {
                *slot = Some(basis.len());
                basis.push(u);
                break;
            }
        }
    }
    RealMatrix::from_fn(dim, dim, |i, k| basis[slots[k].expect("basis completed")][i])
}

fn orthonormalize<T: Real>(mut x: Vec<T>, basis: &[Vec<T>]) -> Option<Vec<T>> {
    // two passes of classical Gram-Schmidt
    for _ in 0..2 {
        for b in basis {
            let d = x.iter().zip(b).fold(T::zero(), |s, (&xi, &bi)| s + xi * bi);
            for (xi, &bi) in x.iter_mut().zip(b) {
                *xi = *xi - d * bi;
            }
        }
    }
    let n = x.iter().fold(T::zero(), |s, &xi| s + xi * xi).sqrt();
    if n <= T::lit(1e-6) {
        return None;
    }
    Some(x.into_iter().map(|xi| xi / n).collect())
}
