//! Higher-order SVD of the coefficient tensor.
//!
//! `U_i` is the left singular matrix of the mode-`i` unfolding and the core is
//! `S_pqr = Σ R_abc U1(a,p) U2(b,q) U3(c,r)`. Rotating each qubit's Pauli
//! frame by `U_i` turns `S` into the coefficient tensor of the same state, so
//! the slice criterion can be rerun on it.

use crate::criteria::{best_of, l1_svd, Criterion, CriterionResult};
use crate::hs::{MdsTensor, Qubit};
use crate::numerics::{svd_real, RealMatrix};
use crate::scalar::Real;
use crate::unfolding::{unfold, Unfolded};

#[derive(Debug, Clone, PartialEq)]
pub struct HosvdResult<T> {
    /// `[U1, U2, U3]`, each 3x3 orthogonal.
    pub factors: [RealMatrix<T>; 3],
    pub core: MdsTensor<T>,
    /// Singular values of `R_(i)`, descending.
    pub mode_singular_values: [[T; 3]; 3],
}

impl<T: Real> HosvdResult<T> {
    pub fn factor(&self, mode: Qubit) -> &RealMatrix<T> {
        &self.factors[mode.index()]
    }

    /// `Σ S_pqr U1(a,p) U2(b,q) U3(c,r)`.
    pub fn reconstruct(&self) -> MdsTensor<T> {
        contract(&self.core, &self.factors, false)
    }
}

/// Multiplies every mode by its factor: `transpose = true` applies `U_iᵀ`
/// (lab frame to core), `false` applies `U_i`.
fn contract<T: Real>(t: &MdsTensor<T>, u: &[RealMatrix<T>; 3], transpose: bool) -> MdsTensor<T> {
    let f = |k: usize, i: usize, j: usize| if transpose { u[k][(j, i)] } else { u[k][(i, j)] };
    let mut out = [[[T::zero(); 3]; 3]; 3];
    for (p, plane) in out.iter_mut().enumerate() {
        for (q, row) in plane.iter_mut().enumerate() {
            for (r, x) in row.iter_mut().enumerate() {
                let mut s = T::zero();
                for ([a, b, c], v) in t.iter() {
                    s = s + v * f(0, p, a) * f(1, q, b) * f(2, r, c);
                }
                *x = s;
            }
        }
    }
    MdsTensor::from_array(out)
}

pub fn hosvd<T: Real>(t: &MdsTensor<T>) -> HosvdResult<T> {
    let svds = Qubit::ALL.map(|m| svd_real(&unfold(t, m).m).expect("finite 3x9 unfolding"));
    let mode_singular_values = [0, 1, 2].map(|k| {
        let s = &svds[k].singular_values;
        [s[0], s[1], s[2]]
    });
    let factors = svds.map(|s| s.u);
    let core = contract(t, &factors, true);
    HosvdResult {
        factors,
        core,
        mode_singular_values,
    }
}

/// Unfolding of the core along `mode`.
pub fn core_unfolding<T: Real>(h: &HosvdResult<T>, mode: Qubit) -> Unfolded<T> {
    unfold(&h.core, mode)
}

/// The slice ℓ1 criterion evaluated on the HOSVD core.
pub fn hosvd_l1_criterion<T: Real>(t: &MdsTensor<T>, mode: Qubit) -> CriterionResult<T> {
    hosvd_l1_from(&hosvd(t), mode)
}

pub fn hosvd_l1_from<T: Real>(h: &HosvdResult<T>, mode: Qubit) -> CriterionResult<T> {
    let mut r = l1_svd(&h.core, mode);
    r.name = Criterion::HosvdL1;
    r
}

/// Smallest [`hosvd_l1_criterion`] over the three modes.
pub fn hosvd_l1_best<T: Real>(t: &MdsTensor<T>) -> CriterionResult<T> {
    let h = hosvd(t);
    best_of(Qubit::ALL.map(|m| hosvd_l1_from(&h, m)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::EXAMPLE_1;

    fn orthogonal(u: &RealMatrix<f64>) -> bool {
        u.transpose().matmul(u).max_abs_diff(&RealMatrix::identity(3)) < 1e-9
    }

    #[test]
    fn constant_tensor_core() {
        let alpha: f64 = -0.04;
        let h = hosvd(&MdsTensor::constant(alpha).unwrap());
        let s = core_unfolding(&h, Qubit::A);
        let big = s.m[(0, 0)];
        assert!((big.abs() - 3.0 * 3f64.sqrt() * alpha.abs()).abs() < 1e-9);
        for (k, &x) in s.m.as_slice().iter().enumerate().skip(1) {
            assert!(x.abs() < 1e-9, "entry {k} = {x}");
        }
        let c = hosvd_l1_criterion(&MdsTensor::constant(alpha).unwrap(), Qubit::A);
        assert!((c.value - 3.0 * 3f64.sqrt() * alpha.abs()).abs() < 1e-9);
    }

    #[test]
    fn structure_on_example() {
        let t = MdsTensor::from_dense(&EXAMPLE_1).unwrap().scaled(1.5);
        let h = hosvd(&t);
        assert!(h.factors.iter().all(orthogonal));
        assert!(h.reconstruct().max_abs_diff(&t) < 1e-9);
        assert!((h.core.frobenius_sq() - t.frobenius_sq()).abs() < 1e-12);
        for mode in Qubit::ALL {
            let s = core_unfolding(&h, mode).m;
            let gram = s.matmul(&s.transpose());
            for i in 0..3 {
                let sv = h.mode_singular_values[mode.index()][i];
                assert!((gram[(i, i)].sqrt() - sv).abs() < 1e-9);
                for j in 0..3 {
                    if i != j {
                        assert!(gram[(i, j)].abs() < 1e-9);
                    }
                }
            }
        }
        let pre = l1_svd(&t, Qubit::A).value;
        let post = hosvd_l1_criterion(&t, Qubit::A).value;
        assert!(post < pre);
    }

    #[test]
    fn kronecker_route_agrees() {
        let t = MdsTensor::from_dense(&EXAMPLE_1).unwrap();
        let h = hosvd(&t);
        let [u1, u2, u3] = &h.factors;
        let via = u1.transpose().matmul(&unfold(&t, Qubit::A).m).matmul(&u2.kron(u3));
        assert!(via.max_abs_diff(&core_unfolding(&h, Qubit::A).m) < 1e-12);
    }

    #[test]
    fn zero_tensor() {
        let h = hosvd(&MdsTensor::<f64>::zeros());
        assert_eq!(h.core.l1(), 0.0);
        assert!(h.factors.iter().all(orthogonal));
        assert_eq!(hosvd_l1_best(&MdsTensor::<f64>::zeros()).value, 0.0);
    }
}
