//! Mode-wise matricization of the 3x3x3 coefficient tensor.
//!
//! Mode `k` puts index `k` on the rows; the columns run over the two
//! remaining indices in lexicographic order, last index fastest. So the
//! mode-3 unfolding has row `c` and columns `(a, b) = 11, 12, 13, 21, ...`.

use crate::error::{input, Result};
use crate::hs::{MdsTensor, Qubit};
use crate::numerics::RealMatrix;
use crate::scalar::Real;

/// A 3x9 unfolding together with the mode it was taken along.
#[derive(Debug, Clone, PartialEq)]
pub struct Unfolded<T> {
    pub mode: Qubit,
    pub m: RealMatrix<T>,
}

/// Tensor index of entry `(i, j)` of slice `p` along `mode` (all zero-based).
#[inline]
pub fn slice_index(mode: Qubit, p: usize, i: usize, j: usize) -> [usize; 3] {
    match mode {
        Qubit::A => [p, i, j],
        Qubit::B => [i, p, j],
        Qubit::C => [i, j, p],
    }
}

pub fn unfold<T: Real>(t: &MdsTensor<T>, mode: Qubit) -> Unfolded<T> {
    let m = RealMatrix::from_fn(3, 9, |p, col| {
        let [a, b, c] = slice_index(mode, p, col / 3, col % 3);
        t.get(a, b, c)
    });
    Unfolded { mode, m }
}

/// Inverse of [`unfold`]. Entries are not range-checked, so folded cores of
/// arbitrary tensors are representable.
pub fn fold<T: Real>(u: &Unfolded<T>) -> Result<MdsTensor<T>> {
    if u.m.rows() != 3 || u.m.cols() != 9 {
        return Err(input(format!("unfolding must be 3x9, got {}x{}", u.m.rows(), u.m.cols())));
    }
    let mut r = [[[T::zero(); 3]; 3]; 3];
    for p in 0..3 {
        for col in 0..9 {
            let [a, b, c] = slice_index(u.mode, p, col / 3, col % 3);
            r[a][b][c] = u.m[(p, col)];
        }
    }
    Ok(MdsTensor::from_array(r))
}

/// Slice `index` (one-based) along `mode` as a 3x3 matrix.
pub fn slice<T: Real>(t: &MdsTensor<T>, mode: Qubit, index: usize) -> Result<RealMatrix<T>> {
    if !(1..=3).contains(&index) {
        return Err(input(format!("slice index must be 1, 2 or 3, got {index}")));
    }
    Ok(slice0(t, mode, index - 1))
}

pub(crate) fn slice0<T: Real>(t: &MdsTensor<T>, mode: Qubit, p: usize) -> RealMatrix<T> {
    RealMatrix::from_fn(3, 3, |i, j| {
        let [a, b, c] = slice_index(mode, p, i, j);
        t.get(a, b, c)
    })
}
