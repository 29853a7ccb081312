//! Pauli / Hilbert-Schmidt representation of 3-qubit operators.
//!
//! Basis ordering: qubit A is the most significant tensor factor, so the
//! computational state `|abc>` has matrix index `4a + 2b + c`. Pauli
//! indices are `0 = I`, `1 = σx`, `2 = σy`, `3 = σz` throughout.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{input, Error, Result};
use crate::numerics::{eig_hermitian, eigenvalues_hermitian, ComplexMatrix};
use crate::scalar::{tolerance, Real};

pub const DIM: usize = 8;

/// One of the three qubits; also names the unfolding mode (A = mode 1).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Qubit {
    A,
    B,
    C,
}

impl Qubit {
    pub const ALL: [Qubit; 3] = [Qubit::A, Qubit::B, Qubit::C];

    /// Zero-based tensor index position.
    pub fn index(self) -> usize {
        match self {
            Qubit::A => 0,
            Qubit::B => 1,
            Qubit::C => 2,
        }
    }

    /// Unfolding mode number, 1..=3.
    pub fn mode(self) -> u8 {
        self.index() as u8 + 1
    }

    pub fn from_mode(mode: u8) -> Result<Self> {
        match mode {
            1 => Ok(Qubit::A),
            2 => Ok(Qubit::B),
            3 => Ok(Qubit::C),
            other => Err(input(format!("mode must be 1, 2 or 3, got {other}"))),
        }
    }

    /// Bit of the basis index carrying this qubit.
    fn bit(self) -> usize {
        match self {
            Qubit::A => 4,
            Qubit::B => 2,
            Qubit::C => 1,
        }
    }
}

impl fmt::Display for Qubit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Qubit::A => "A",
            Qubit::B => "B",
            Qubit::C => "C",
        };
        f.write_str(s)
    }
}

impl FromStr for Qubit {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "A" | "a" | "1" => Ok(Qubit::A),
            "B" | "b" | "2" => Ok(Qubit::B),
            "C" | "c" | "3" => Ok(Qubit::C),
            other => Err(input(format!("unknown qubit label {other:?}"))),
        }
    }
}

/// 2x2 Pauli matrix `σ_k`, `k = 0..=3` with `σ_0 = I`.
pub fn pauli<T: Real>(k: usize) -> ComplexMatrix<T> {
    let (o, l) = (T::zero(), T::one());
    let c = |re: T, im: T| Complex::new(re, im);
    let rows = match k {
        0 => [[c(l, o), c(o, o)], [c(o, o), c(l, o)]],
        1 => [[c(o, o), c(l, o)], [c(l, o), c(o, o)]],
        2 => [[c(o, o), c(o, -l)], [c(o, l), c(o, o)]],
        3 => [[c(l, o), c(o, o)], [c(o, o), c(-l, o)]],
        _ => panic!("Pauli index {k} out of range"),
    };
    ComplexMatrix::from_rows(&rows)
}

/// `I + n·σ` (twice the single-qubit state with Bloch vector `n`).
pub fn bloch_operator<T: Real>(n: [T; 3]) -> ComplexMatrix<T> {
    let mut m = pauli::<T>(0);
    for (k, &nk) in n.iter().enumerate() {
        if nk != T::zero() {
            m = &m + &pauli::<T>(k + 1).scale_real(nk);
        }
    }
    m
}

/// `σ_μ ⊗ σ_ν ⊗ σ_κ` as an 8x8 matrix.
pub fn pauli_product<T: Real>(mu: usize, nu: usize, kappa: usize) -> ComplexMatrix<T> {
    pauli::<T>(mu).kron(&pauli::<T>(nu)).kron(&pauli::<T>(kappa))
}

/// Real part of `Tr(ρ σ_μ⊗σ_ν⊗σ_κ)` without materializing the product.
///
/// Each Pauli product is a signed/phased permutation matrix, so the trace is
/// a sum of 8 entries.
fn pauli_expectation<T: Real>(rho: &ComplexMatrix<T>, idx: [usize; 3]) -> T {
    let mut total = Complex::<T>::zero();
    for col in 0..DIM {
        // P[row][col] is nonzero for exactly one row
        let mut row = 0;
        let mut amp = Complex::new(T::one(), T::zero());
        for (q, &k) in idx.iter().enumerate() {
            let shift = 2 - q;
            let bit = (col >> shift) & 1;
            let (out_bit, factor) = single_pauli_action::<T>(k, bit);
            row |= out_bit << shift;
            amp = amp * factor;
        }
        // Tr(ρP) = Σ_col Σ_row ρ[col][row] P[row][col]
        total = total + rho[(col, row)] * amp;
    }
    total.re
}

/// `σ_k |bit> = factor |out_bit>`.
fn single_pauli_action<T: Real>(k: usize, bit: usize) -> (usize, Complex<T>) {
    let (o, l) = (T::zero(), T::one());
    match (k, bit) {
        (0, b) => (b, Complex::new(l, o)),
        (1, b) => (1 - b, Complex::new(l, o)),
        (2, 0) => (1, Complex::new(o, l)),
        (2, _) => (0, Complex::new(o, -l)),
        (3, 0) => (0, Complex::new(l, o)),
        (3, _) => (1, Complex::new(-l, o)),
        _ => unreachable!(),
    }
}

/// The 27 triple-Pauli coefficients `R_{abc}` of an MDS state, stored
/// zero-based: `r[a][b][c]` holds `R_{a+1,b+1,c+1}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MdsTensor<T> {
    r: [[[T; 3]; 3]; 3],
}

impl<T: Real> MdsTensor<T> {
    /// Validating constructor: entries must be finite with `|R| <= 1`.
    pub fn new(r: [[[T; 3]; 3]; 3]) -> Result<Self> {
        for (a, plane) in r.iter().enumerate() {
            for (b, row) in plane.iter().enumerate() {
                for (c, &x) in row.iter().enumerate() {
                    if !x.is_finite() {
                        return Err(input(format!("R_{}{}{} is not finite", a + 1, b + 1, c + 1)));
                    }
                    if x.abs() > T::one() + T::tol(tolerance::BLOCH) {
                        return Err(input(format!(
                            "|R_{}{}{}| = {} exceeds 1",
                            a + 1,
                            b + 1,
                            c + 1,
                            x.abs()
                        )));
                    }
                }
            }
        }
        Ok(Self { r })
    }

    /// Accepts any finite entries, including ones outside the unit box, so
    /// that arbitrary inputs can be analyzed (and rejected as states).
    pub fn from_finite(r: [[[T; 3]; 3]; 3]) -> Result<Self> {
        if r.iter().flatten().flatten().any(|x| !x.is_finite()) {
            return Err(input("tensor has non-finite entries"));
        }
        Ok(Self { r })
    }

    /// Crate-internal constructor for derived tensors (cores, rescalings)
    /// that may legitimately leave the unit box.
    pub(crate) fn from_array(r: [[[T; 3]; 3]; 3]) -> Self {
        Self { r }
    }

    pub fn zeros() -> Self {
        Self::from_array([[[T::zero(); 3]; 3]; 3])
    }

    /// Every entry equal to `alpha`.
    pub fn constant(alpha: T) -> Result<Self> {
        Self::new([[[alpha; 3]; 3]; 3])
    }

    /// 27 values in lexicographic `(a, b, c)` order, `c` fastest.
    pub fn from_dense(values: &[T]) -> Result<Self> {
        if values.len() != 27 {
            return Err(input(format!("dense tensor needs 27 values, got {}", values.len())));
        }
        let mut r = [[[T::zero(); 3]; 3]; 3];
        for (k, &v) in values.iter().enumerate() {
            r[k / 9][(k / 3) % 3][k % 3] = v;
        }
        Self::new(r)
    }

    /// Sparse entries keyed by one-based labels such as `"132"`.
    pub fn from_sparse<'a, I>(entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (&'a str, T)>,
    {
        let mut r = [[[T::zero(); 3]; 3]; 3];
        let mut seen = [[[false; 3]; 3]; 3];
        for (key, v) in entries {
            let [a, b, c] = parse_label::<3>(key, 1)?;
            if seen[a][b][c] {
                return Err(input(format!("duplicate entry {key:?}")));
            }
            seen[a][b][c] = true;
            r[a][b][c] = v;
        }
        Self::new(r)
    }

    /// Zero-based access.
    #[inline]
    pub fn get(&self, a: usize, b: usize, c: usize) -> T {
        self.r[a][b][c]
    }

    pub fn as_array(&self) -> &[[[T; 3]; 3]; 3] {
        &self.r
    }

    /// 27 values in lexicographic order.
    pub fn to_dense(&self) -> Vec<T> {
        self.iter().map(|(_, v)| v).collect()
    }

    /// `((a, b, c), R)` in lexicographic order, zero-based indices.
    pub fn iter(&self) -> impl Iterator<Item = ([usize; 3], T)> + '_ {
        (0..27).map(move |k| {
            let idx = [k / 9, (k / 3) % 3, k % 3];
            (idx, self.r[idx[0]][idx[1]][idx[2]])
        })
    }

    pub fn scaled(&self, k: T) -> Self {
        let mut r = self.r;
        r.iter_mut().flatten().flatten().for_each(|x| *x = *x * k);
        Self::from_array(r)
    }

    /// Σ|R|.
    pub fn l1(&self) -> T {
        self.iter().fold(T::zero(), |s, (_, v)| s + v.abs())
    }

    /// Σ R².
    pub fn frobenius_sq(&self) -> T {
        self.iter().fold(T::zero(), |s, (_, v)| s + v * v)
    }

    /// Flips the sign of the given Pauli axis on one qubit (9 entries change).
    pub fn flip_axis(&self, qubit: Qubit, axis: usize) -> Self {
        let mut r = self.r;
        for (idx, _) in self.iter() {
            if idx[qubit.index()] == axis {
                let x = &mut r[idx[0]][idx[1]][idx[2]];
                *x = -*x;
            }
        }
        Self::from_array(r)
    }

    pub fn max_abs_diff(&self, other: &Self) -> T {
        self.iter()
            .zip(other.iter())
            .fold(T::zero(), |m, ((_, a), (_, b))| m.max((a - b).abs()))
    }
}

/// All 64 coefficients `R_{μνκ}` of a general 3-qubit operator with
/// `R_{000} = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GeneralHsTensor<T> {
    r: [[[T; 4]; 4]; 4],
}

impl<T: Real> GeneralHsTensor<T> {
    pub fn new(r: [[[T; 4]; 4]; 4]) -> Result<Self> {
        if r.iter().flatten().flatten().any(|x| !x.is_finite()) {
            return Err(input("general HS tensor has non-finite entries"));
        }
        if (r[0][0][0] - T::one()).abs() > T::tol(1e-12) {
            return Err(input(format!("R_000 must be 1, got {}", r[0][0][0])));
        }
        Ok(Self { r })
    }

    /// Only `R_000 = 1`, i.e. the maximally mixed state.
    pub fn identity() -> Self {
        let mut r = [[[T::zero(); 4]; 4]; 4];
        r[0][0][0] = T::one();
        Self { r }
    }

    /// Sparse entries keyed by labels over `0..=3`, e.g. `"033"`. `"000"` may
    /// be given (must then be 1) or omitted.
    pub fn from_sparse<'a, I>(entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (&'a str, T)>,
    {
        let mut r = [[[T::zero(); 4]; 4]; 4];
        r[0][0][0] = T::one();
        let mut seen = [[[false; 4]; 4]; 4];
        for (key, v) in entries {
            let [m, n, k] = parse_label::<4>(key, 0)?;
            if seen[m][n][k] {
                return Err(input(format!("duplicate entry {key:?}")));
            }
            seen[m][n][k] = true;
            r[m][n][k] = v;
        }
        Self::new(r)
    }

    /// Embeds an MDS tensor (only triple-Pauli terms).
    pub fn from_mds(t: &MdsTensor<T>) -> Self {
        let mut g = Self::identity();
        for ([a, b, c], v) in t.iter() {
            g.r[a + 1][b + 1][c + 1] = v;
        }
        g
    }

    #[inline]
    pub fn get(&self, mu: usize, nu: usize, kappa: usize) -> T {
        self.r[mu][nu][kappa]
    }

    pub fn as_array(&self) -> &[[[T; 4]; 4]; 4] {
        &self.r
    }

    /// `((μ, ν, κ), R)` in lexicographic order.
    pub fn iter(&self) -> impl Iterator<Item = ([usize; 3], T)> + '_ {
        (0..64).map(move |k| {
            let idx = [k / 16, (k / 4) % 4, k % 4];
            (idx, self.r[idx[0]][idx[1]][idx[2]])
        })
    }

    /// Triple-Pauli block.
    pub fn mds_part(&self) -> MdsTensor<T> {
        let mut r = [[[T::zero(); 3]; 3]; 3];
        for (a, plane) in r.iter_mut().enumerate() {
            for (b, row) in plane.iter_mut().enumerate() {
                for (c, x) in row.iter_mut().enumerate() {
                    *x = self.r[a + 1][b + 1][c + 1];
                }
            }
        }
        MdsTensor::from_array(r)
    }

    /// True iff every coefficient with at least one identity index (other
    /// than `R_000`) is below `tol` in magnitude.
    pub fn has_only_triple_terms(&self, tol: T) -> bool {
        self.iter()
            .filter(|(idx, _)| idx.contains(&0) && *idx != [0, 0, 0])
            .all(|(_, v)| v.abs() <= tol)
    }

    pub fn max_abs_diff(&self, other: &Self) -> T {
        self.iter()
            .zip(other.iter())
            .fold(T::zero(), |m, ((_, a), (_, b))| m.max((a - b).abs()))
    }
}

pub(crate) fn parse_label<const N: usize>(key: &str, base: usize) -> Result<[usize; 3]> {
    let digits: Vec<usize> = key
        .trim()
        .chars()
        .map(|ch| ch.to_digit(10).map(|d| d as usize))
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| input(format!("index label {key:?} is not numeric")))?;
    if digits.len() != 3 {
        return Err(input(format!("index label {key:?} must have exactly 3 digits")));
    }
    let mut out = [0; 3];
    for (o, d) in out.iter_mut().zip(digits) {
        if d < base || d >= base + N {
            return Err(input(format!(
                "index label {key:?}: digits must lie in {base}..={}",
                base + N - 1
            )));
        }
        *o = d - base;
    }
    Ok(out)
}

/// `(1/8) [I⊗I⊗I + Σ R_{abc} σ_a⊗σ_b⊗σ_c]`. Hermitian with unit trace;
/// positivity is not implied.
pub fn density_from_mds<T: Real>(t: &MdsTensor<T>) -> ComplexMatrix<T> {
    density_from_general(&GeneralHsTensor::from_mds(t))
}

/// `(1/8) Σ R_{μνκ} σ_μ⊗σ_ν⊗σ_κ`.
pub fn density_from_general<T: Real>(t: &GeneralHsTensor<T>) -> ComplexMatrix<T> {
    let mut m = ComplexMatrix::<T>::zeros(DIM, DIM);
    let eighth = T::lit(0.125);
    for (idx, v) in t.iter() {
        if v == T::zero() {
            continue;
        }
        accumulate_pauli(&mut m, idx, v * eighth);
    }
    m
}

/// `m += w · σ_μ⊗σ_ν⊗σ_κ`.
pub(crate) fn accumulate_pauli<T: Real>(m: &mut ComplexMatrix<T>, idx: [usize; 3], w: T) {
    for col in 0..DIM {
        let mut row = 0;
        let mut amp = Complex::new(w, T::zero());
        for (q, &k) in idx.iter().enumerate() {
            let shift = 2 - q;
            let (out_bit, factor) = single_pauli_action::<T>(k, (col >> shift) & 1);
            row |= out_bit << shift;
            amp = amp * factor;
        }
        m[(row, col)] = m[(row, col)] + amp;
    }
}

/// `R_{abc} = Tr(ρ σ_a⊗σ_b⊗σ_c)` for `a, b, c ∈ {1, 2, 3}`.
pub fn mds_from_density<T: Real>(rho: &ComplexMatrix<T>) -> Result<MdsTensor<T>> {
    check_dim(rho)?;
    let mut r = [[[T::zero(); 3]; 3]; 3];
    for (a, plane) in r.iter_mut().enumerate() {
        for (b, row) in plane.iter_mut().enumerate() {
            for (c, x) in row.iter_mut().enumerate() {
                *x = pauli_expectation(rho, [a + 1, b + 1, c + 1]);
            }
        }
    }
    Ok(MdsTensor::from_array(r))
}

/// All 64 coefficients `Tr(ρ σ_μ⊗σ_ν⊗σ_κ)`. Fails unless `Tr ρ = 1`.
pub fn general_from_density<T: Real>(rho: &ComplexMatrix<T>) -> Result<GeneralHsTensor<T>> {
    check_dim(rho)?;
    let mut r = [[[T::zero(); 4]; 4]; 4];
    for (mu, plane) in r.iter_mut().enumerate() {
        for (nu, row) in plane.iter_mut().enumerate() {
            for (kappa, x) in row.iter_mut().enumerate() {
                *x = pauli_expectation(rho, [mu, nu, kappa]);
            }
        }
    }
    GeneralHsTensor::new(r)
}

fn check_dim<T: Real>(rho: &ComplexMatrix<T>) -> Result<()> {
    if rho.rows() != DIM || rho.cols() != DIM {
        return Err(input(format!("expected an 8x8 matrix, got {}x{}", rho.rows(), rho.cols())));
    }
    Ok(())
}

/// Outcome of [`validate_density`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ValidityReport<T> {
    pub hermitian: bool,
    pub unit_trace: bool,
    pub psd: bool,
    /// Smallest eigenvalue of the Hermitian part.
    pub min_eigenvalue: T,
    pub is_mds: bool,
}

impl<T: Real> ValidityReport<T> {
    pub fn is_density(&self) -> bool {
        self.hermitian && self.unit_trace && self.psd
    }
}

/// Hermiticity, trace, positivity and MDS checks on an 8x8 matrix.
pub fn validate_density<T: Real>(rho: &ComplexMatrix<T>) -> Result<ValidityReport<T>> {
    check_dim(rho)?;
    if !rho.is_finite() {
        return Err(input("density matrix has non-finite entries"));
    }
    let hermitian = rho.hermiticity_defect() <= T::tol(tolerance::DENSITY);
    let herm_part = ComplexMatrix::from_fn(DIM, DIM, |i, j| (rho[(i, j)] + rho[(j, i)].conj()) * T::lit(0.5));
    let tr = rho.trace();
    let unit_trace = (tr.re - T::one()).abs() <= T::tol(tolerance::DENSITY) && tr.im.abs() <= T::tol(tolerance::DENSITY);
    let min_eigenvalue = eigenvalues_hermitian(&herm_part)?[0];
    let psd = hermitian && min_eigenvalue >= -T::tol(tolerance::PSD_FLOOR);
    let is_mds = unit_trace && is_mds(rho)?;
    Ok(ValidityReport {
        hermitian,
        unit_trace,
        psd,
        min_eigenvalue,
        is_mds,
    })
}

/// True iff every single- and double-Pauli coefficient vanishes within
/// `1e-10`, i.e. all one-qubit marginals are maximally mixed.
pub fn is_mds<T: Real>(rho: &ComplexMatrix<T>) -> Result<bool> {
    check_dim(rho)?;
    let tol = T::tol(tolerance::MDS);
    for mu in 0..4 {
        for nu in 0..4 {
            for kappa in 0..4 {
                let idx = [mu, nu, kappa];
                if idx == [0, 0, 0] || !idx.contains(&0) {
                    continue;
                }
                if pauli_expectation(rho, idx).abs() > tol {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Transpose on the tensor factor of `qubit`. Involutive, trace preserving.
pub fn partial_transpose<T: Real>(rho: &ComplexMatrix<T>, qubit: Qubit) -> Result<ComplexMatrix<T>> {
    check_dim(rho)?;
    let bit = qubit.bit();
    Ok(ComplexMatrix::from_fn(DIM, DIM, |i, j| {
        let (bi, bj) = (i & bit, j & bit);
        let src_row = (i & !bit) | bj;
        let src_col = (j & !bit) | bi;
        rho[(src_row, src_col)]
    }))
}

/// Smallest eigenvalue of the partial transpose on `qubit`.
pub fn min_pt_eigenvalue<T: Real>(rho: &ComplexMatrix<T>, qubit: Qubit) -> Result<T> {
    let pt = partial_transpose(rho, qubit)?;
    Ok(eigenvalues_hermitian(&pt)?[0])
}

/// Spectrum (ascending) of a Hermitian 8x8 matrix.
pub fn spectrum<T: Real>(rho: &ComplexMatrix<T>) -> Result<Vec<T>> {
    check_dim(rho)?;
    eigenvalues_hermitian(rho)
}

/// Validated density matrix: Hermitian, unit trace, PSD within tolerance.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix<T> {
    m: ComplexMatrix<T>,
}

impl<T: Real> DensityMatrix<T> {
    pub fn new(m: ComplexMatrix<T>) -> Result<Self> {
        let report = validate_density(&m)?;
        if !report.is_density() {
            return Err(input(format!(
                "not a density matrix (hermitian={}, unit_trace={}, min eigenvalue {})",
                report.hermitian, report.unit_trace, report.min_eigenvalue
            )));
        }
        Ok(Self { m })
    }

    pub fn matrix(&self) -> &ComplexMatrix<T> {
        &self.m
    }

    pub fn into_inner(self) -> ComplexMatrix<T> {
        self.m
    }

    /// `Tr(ρ²)`.
    pub fn purity(&self) -> T {
        self.m.matmul(&self.m).trace().re
    }

    pub fn eigen(&self) -> Result<crate::numerics::HermitianEigen<T>> {
        eig_hermitian(&self.m)
    }
}

/// Checks that an ascending 8-point spectrum splits into pairs
/// `λ_i + λ_{7-i} = 1/4`; returns the largest deviation.
pub fn pairing_defect<T: Real>(ascending: &[T]) -> T {
    let quarter = T::lit(0.25);
    let n = ascending.len();
    (0..n / 2).fold(T::zero(), |m, i| m.max((ascending[i] + ascending[n - 1 - i] - quarter).abs()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn example_31() -> MdsTensor<f64> {
        MdsTensor::from_dense(&crate::fixtures::EXAMPLE_1).unwrap()
    }

    #[test]
    fn zero_tensor_is_maximally_mixed() {
        let rho = density_from_mds(&MdsTensor::<f64>::zeros());
        let target = ComplexMatrix::<f64>::identity(8).scale_real(0.125);
        assert!(rho.max_abs_diff(&target) < 1e-15);
        let back = mds_from_density(&rho).unwrap();
        assert_eq!(back.l1(), 0.0);
        let g = general_from_density(&rho).unwrap();
        assert!(g.max_abs_diff(&GeneralHsTensor::identity()) < 1e-15);
    }

    #[test]
    fn pauli_products_match_kron() {
        for mu in 0..4 {
            for nu in 0..4 {
                for kappa in 0..4 {
                    let mut m = ComplexMatrix::<f64>::zeros(8, 8);
                    accumulate_pauli(&mut m, [mu, nu, kappa], 1.0);
                    assert!(m.max_abs_diff(&pauli_product(mu, nu, kappa)) < 1e-15);
                }
            }
        }
    }

    #[test]
    fn single_axis_tensor_spectrum() {
        let mut r = [[[0.0; 3]; 3]; 3];
        r[0][0][0] = 1.0;
        let rho = density_from_mds(&MdsTensor::<f64>::new(r).unwrap());
        let ev = spectrum(&rho).unwrap();
        for (i, &x) in ev.iter().enumerate() {
            let want: f64 = if i < 4 { 0.0 } else { 0.25 };
            assert!((x - want).abs() < 1e-12);
        }
    }

    #[test]
    fn sparse_and_dense_agree() {
        let dense = example_31();
        let labels: Vec<String> = dense
            .iter()
            .map(|([a, b, c], _)| format!("{}{}{}", a + 1, b + 1, c + 1))
            .collect();
        let sparse = MdsTensor::from_sparse(labels.iter().map(String::as_str).zip(dense.to_dense())).unwrap();
        assert_eq!(dense, sparse);
    }

    #[test]
    fn sparse_rejects_bad_labels() {
        assert!(MdsTensor::<f64>::from_sparse([("104", 0.1)]).is_err());
        assert!(MdsTensor::<f64>::from_sparse([("11", 0.1)]).is_err());
        assert!(MdsTensor::<f64>::from_sparse([("111", 0.1), ("111", 0.2)]).is_err());
        assert!(MdsTensor::<f64>::from_sparse([("1x1", 0.1)]).is_err());
        assert!(MdsTensor::<f64>::from_sparse([("111", 1.5)]).is_err());
        assert!(GeneralHsTensor::<f64>::from_sparse([("000", 0.5)]).is_err());
        assert!(GeneralHsTensor::<f64>::from_sparse([("033", 1.0)]).is_ok());
    }

    #[test]
    fn general_requires_unit_identity_coefficient() {
        let mut r = [[[0.0; 4]; 4]; 4];
        r[0][0][0] = 0.9;
        assert!(GeneralHsTensor::new(r).is_err());
        r[0][0][0] = 1.0;
        assert!(GeneralHsTensor::new(r).is_ok());
    }

    #[test]
    fn validate_flags() {
        let rho = density_from_mds(&MdsTensor::<f64>::zeros());
        let rep = validate_density(&rho).unwrap();
        assert!(rep.hermitian && rep.unit_trace && rep.psd && rep.is_mds);

        // diagonal triad on the sphere of radius 1.2 is not positive
        let a = 1.2 / 3f64.sqrt();
        let mut r = [[[0.0; 3]; 3]; 3];
        r[0][0][0] = a;
        r[1][1][1] = a;
        r[2][2][2] = a;
        let rho = density_from_mds(&MdsTensor::new(r).unwrap());
        let rep = validate_density(&rho).unwrap();
        assert!(rep.hermitian && rep.unit_trace);
        assert!(!rep.psd);
        assert!((rep.min_eigenvalue - (1.0 - 1.2) / 8.0).abs() < 1e-12);

        let rep = validate_density(&density_from_mds(&example_31())).unwrap();
        assert!(rep.is_density() && rep.is_mds);

        let mut bad = ComplexMatrix::<f64>::identity(8).scale_real(0.125);
        bad[(0, 1)] = Complex::new(0.01, 0.0);
        let rep = validate_density(&bad).unwrap();
        assert!(!rep.hermitian && !rep.psd);

        assert!(validate_density(&ComplexMatrix::<f64>::identity(4)).is_err());
    }

    #[test]
    fn partial_transpose_basics() {
        let mixed = ComplexMatrix::<f64>::identity(8).scale_real(0.125);
        for q in Qubit::ALL {
            assert_eq!(partial_transpose(&mixed, q).unwrap(), mixed);
        }
        let rho = density_from_mds(&example_31());
        for q in Qubit::ALL {
            let pt = partial_transpose(&rho, q).unwrap();
            assert_eq!(partial_transpose(&pt, q).unwrap(), rho);
            assert!((pt.trace().re - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn partial_transpose_on_a_flips_sigma_y_of_a() {
        // (σ_y ⊗ σ_x ⊗ σ_z)^{T_A} = -σ_y ⊗ σ_x ⊗ σ_z
        let p = pauli_product::<f64>(2, 1, 3);
        let pt = partial_transpose(&p, Qubit::A).unwrap();
        assert!(pt.max_abs_diff(&p.scale_real(-1.0)) < 1e-15);
        let pt_b = partial_transpose(&p, Qubit::B).unwrap();
        assert!(pt_b.max_abs_diff(&p) < 1e-15);
    }

    #[test]
    fn qubit_labels() {
        assert_eq!("B".parse::<Qubit>().unwrap(), Qubit::B);
        assert_eq!("3".parse::<Qubit>().unwrap(), Qubit::C);
        assert!("D".parse::<Qubit>().is_err());
        assert!(Qubit::from_mode(4).is_err());
        assert_eq!(Qubit::from_mode(2).unwrap().mode(), 2);
    }
}
