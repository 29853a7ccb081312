//! Hermitian eigendecomposition by cyclic complex Jacobi rotations.

use num_complex::Complex;
use num_traits::Zero;

use crate::error::{input, Result};
use crate::numerics::matrix::ComplexMatrix;
use crate::scalar::{tolerance, Real};

const MAX_SWEEPS: usize = 100;

/// Eigenvalues ascending; column `k` of `vectors` belongs to `values[k]`.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianEigen<T> {
    pub values: Vec<T>,
    pub vectors: ComplexMatrix<T>,
}

/// Eigendecomposition of a Hermitian matrix (Hermitian within `1e-10`).
pub fn eig_hermitian<T: Real>(m: &ComplexMatrix<T>) -> Result<HermitianEigen<T>> {
    if !m.is_square() || m.rows() == 0 {
        return Err(input(format!("eigenproblem needs a square matrix, got {}x{}", m.rows(), m.cols())));
    }
    if !m.is_finite() {
        return Err(input("eigenproblem input has non-finite entries"));
    }
    let defect = m.hermiticity_defect();
    if defect > T::tol(tolerance::DENSITY) {
        return Err(input(format!("matrix is not Hermitian (max deviation {defect})")));
    }
    let n = m.rows();
    // symmetrize away the admitted defect
    let mut a = ComplexMatrix::from_fn(n, n, |i, j| (m[(i, j)] + m[(j, i)].conj()) * T::lit(0.5));
    let mut v = ComplexMatrix::<T>::identity(n);
    let scale = a.as_slice().iter().fold(T::zero(), |s, z| s + z.norm_sqr()).sqrt();
    let eps = T::epsilon();

    for _ in 0..MAX_SWEEPS {
        let off = off_diagonal_norm(&a);
        if off <= eps * scale || off == T::zero() {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let h = a[(p, q)];
                let g = h.norm();
                if g == T::zero() {
                    continue;
                }
                let phase = h / g; // e^{i phi}
                let (app, aqq) = (a[(p, p)].re, a[(q, q)].re);
                let tau = (aqq - app) / (g + g);
                let sign = if tau >= T::zero() { T::one() } else { -T::one() };
                let t = sign / (tau.abs() + (T::one() + tau * tau).sqrt());
                let c = T::one() / (T::one() + t * t).sqrt();
                let s = c * t;
                apply_rotation(&mut a, &mut v, p, q, c, s, phase);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.partial_cmp(&a[(j, j)].re).expect("finite eigenvalues"));
    let values = order.iter().map(|&i| a[(i, i)].re).collect();
    let vectors = ComplexMatrix::from_fn(n, n, |i, k| v[(i, order[k])]);
    Ok(HermitianEigen { values, vectors })
}

/// Eigenvalues only, ascending.
pub fn eigenvalues_hermitian<T: Real>(m: &ComplexMatrix<T>) -> Result<Vec<T>> {
    eig_hermitian(m).map(|e| e.values)
}

fn off_diagonal_norm<T: Real>(a: &ComplexMatrix<T>) -> T {
    let n = a.rows();
    let mut s = T::zero();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s = s + a[(i, j)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// `A <- V^H A V`, `E <- E V` with the 2x2 block
/// `V = diag(1, e^{-i phi}) * [[c, s], [-s, c]]` on indices (p, q).
fn apply_rotation<T: Real>(
    a: &mut ComplexMatrix<T>,
    vecs: &mut ComplexMatrix<T>,
    p: usize,
    q: usize,
    c: T,
    s: T,
    phase: Complex<T>,
) {
    let n = a.rows();
    let conj_phase = phase.conj();
    for k in 0..n {
        let (akp, akq) = (a[(k, p)], a[(k, q)]);
        a[(k, p)] = akp * c - akq * conj_phase * s;
        a[(k, q)] = akp * s + akq * conj_phase * c;

        let (ekp, ekq) = (vecs[(k, p)], vecs[(k, q)]);
        vecs[(k, p)] = ekp * c - ekq * conj_phase * s;
        vecs[(k, q)] = ekp * s + ekq * conj_phase * c;
    }
    for k in 0..n {
        let (apk, aqk) = (a[(p, k)], a[(q, k)]);
        a[(p, k)] = apk * c - aqk * phase * s;
        a[(q, k)] = apk * s + aqk * phase * c;
    }
    a[(p, q)] = Complex::zero();
    a[(q, p)] = Complex::zero();
    a[(p, p)] = Complex::new(a[(p, p)].re, T::zero());
    a[(q, q)] = Complex::new(a[(q, q)].re, T::zero());
}
