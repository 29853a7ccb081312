//! Explicit separable and biseparable ensembles certifying the criteria.
//!
//! Terms are stored symbolically (Bloch vectors, Pauli frames, Bell labels)
//! and materialized only by [`verify_ensemble`]. Every term stands for a
//! normalized state; the ensemble is `ρ = Σ w_t ρ_t` with `Σ w_t = 1`.

use serde::{Deserialize, Serialize};

use crate::criteria::{
    bisep_triads, fiber_index, fiber_norms, l1_general, l1_raw, l1_svd, l2_triads, triad_coefficients,
    triad_permutations, CriterionResult, TRIADS,
};
use crate::error::{input, Error, Result};
use crate::hosvd::{hosvd, hosvd_l1_from};
use crate::hs::{bloch_operator, pauli, GeneralHsTensor, MdsTensor, Qubit, DIM};
use crate::numerics::{eigenvalues_hermitian, svd_real, ComplexMatrix, RealMatrix};
use crate::scalar::{tolerance, Real};
use crate::unfolding::slice0;

/// Single-qubit state `(I + n·σ)/2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QubitFactor<T> {
    pub bloch: [T; 3],
}

impl<T: Real> QubitFactor<T> {
    pub fn new(bloch: [T; 3]) -> Result<Self> {
        let f = Self { bloch };
        if !bloch.iter().all(|x| x.is_finite()) {
            return Err(input("Bloch vector is not finite"));
        }
        if f.norm() > T::one() + T::tol(tolerance::BLOCH) {
            return Err(input(format!("Bloch vector length {} exceeds 1", f.norm())));
        }
        Ok(f)
    }

    pub fn norm(&self) -> T {
        self.bloch.iter().fold(T::zero(), |s, &x| s + x * x).sqrt()
    }

    /// `(I + n·σ)/2`.
    pub fn operator(&self) -> ComplexMatrix<T> {
        bloch_operator(self.bloch).scale_real(T::lit(0.5))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BellLabel {
    #[serde(rename = "phi-")]
    PhiMinus,
    #[serde(rename = "phi+")]
    PhiPlus,
    #[serde(rename = "psi+")]
    PsiPlus,
    #[serde(rename = "psi-")]
    PsiMinus,
}

impl BellLabel {
    pub const ALL: [BellLabel; 4] = [BellLabel::PhiMinus, BellLabel::PhiPlus, BellLabel::PsiPlus, BellLabel::PsiMinus];

    /// Correlations `<σ_a ⊗ σ_a>` for `a = x, y, z`.
    pub fn correlations(self) -> [i8; 3] {
        match self {
            BellLabel::PhiMinus => [-1, 1, 1],
            BellLabel::PhiPlus => [1, -1, 1],
            BellLabel::PsiPlus => [1, 1, -1],
            BellLabel::PsiMinus => [-1, -1, -1],
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            BellLabel::PhiMinus => "Φ-",
            BellLabel::PhiPlus => "Φ+",
            BellLabel::PsiPlus => "Ψ+",
            BellLabel::PsiMinus => "Ψ-",
        }
    }
}

/// Bell projector on BC in rotated Pauli frames: with `σ'_a = Σ_k F[k][a] σ_k`,
/// the operator is `(I + Σ_a s_a σ'_a ⊗ σ'_a) / 4`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BellFactor<T> {
    pub basis_b: [[T; 3]; 3],
    pub basis_c: [[T; 3]; 3],
    pub bell: BellLabel,
}

impl<T: Real> BellFactor<T> {
    /// Frames must be proper rotations.
    pub fn new(basis_b: [[T; 3]; 3], basis_c: [[T; 3]; 3], bell: BellLabel) -> Result<Self> {
        for f in [&basis_b, &basis_c] {
            let m = RealMatrix::from_rows(f);
            let defect = m.transpose().matmul(&m).max_abs_diff(&RealMatrix::identity(3));
            if defect > T::tol(tolerance::STRUCTURAL) {
                return Err(input("Bell frame is not orthogonal"));
            }
            if det3(f) < T::zero() {
                return Err(input("Bell frame is not a proper rotation"));
            }
        }
        Ok(Self { basis_b, basis_c, bell })
    }

    pub fn operator(&self) -> ComplexMatrix<T> {
        let mut m = ComplexMatrix::<T>::identity(4);
        let s = self.bell.correlations();
        for (a, &sa) in s.iter().enumerate() {
            let sb = rotated_pauli(&self.basis_b, a);
            let sc = rotated_pauli(&self.basis_c, a);
            let term = sb.kron(&sc).scale_real(T::lit(sa as f64));
            m = &m + &term;
        }
        m.scale_real(T::lit(0.25))
    }
}

fn det3<T: Real>(f: &[[T; 3]; 3]) -> T {
    f[0][0] * (f[1][1] * f[2][2] - f[1][2] * f[2][1]) - f[0][1] * (f[1][0] * f[2][2] - f[1][2] * f[2][0])
        + f[0][2] * (f[1][0] * f[2][1] - f[1][1] * f[2][0])
}

/// `Σ_k F[k][a] σ_k`.
fn rotated_pauli<T: Real>(frame: &[[T; 3]; 3], a: usize) -> ComplexMatrix<T> {
    let mut m = ComplexMatrix::<T>::zeros(2, 2);
    for (k, row) in frame.iter().enumerate() {
        if row[a] != T::zero() {
            m = &m + &pauli::<T>(k + 1).scale_real(row[a]);
        }
    }
    m
}

/// Permutation frame with column `a` equal to `e_{π(a)}`.
fn permutation_frame<T: Real>(pi: [usize; 3]) -> [[T; 3]; 3] {
    let mut f = [[T::zero(); 3]; 3];
    for (a, &p) in pi.iter().enumerate() {
        f[p][a] = T::one();
    }
    f
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TermKind<T> {
    /// `ρ_A ⊗ ρ_B ⊗ ρ_C`.
    Product { factors: [QubitFactor<T>; 3] },
    /// `ρ_A ⊗ P_BC` with a Bell projector `P_BC`.
    Bell { a: QubitFactor<T>, bc: BellFactor<T> },
    /// `I/8`.
    Identity,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EnsembleTerm<T> {
    pub weight: T,
    #[serde(flatten)]
    pub term: TermKind<T>,
}

impl<T: Real> EnsembleTerm<T> {
    pub fn product(weight: T, factors: [QubitFactor<T>; 3]) -> Self {
        Self {
            weight,
            term: TermKind::Product { factors },
        }
    }

    pub fn identity(weight: T) -> Self {
        Self {
            weight,
            term: TermKind::Identity,
        }
    }

    /// The normalized 8x8 state this term stands for.
    pub fn operator(&self) -> ComplexMatrix<T> {
        match &self.term {
            TermKind::Product { factors } => factors[0]
                .operator()
                .kron(&factors[1].operator())
                .kron(&factors[2].operator()),
            TermKind::Bell { a, bc } => a.operator().kron(&bc.operator()),
            TermKind::Identity => ComplexMatrix::identity(DIM).scale_real(T::lit(0.125)),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EnsembleKind {
    Full,
    /// Separable across A|BC.
    Biseparable,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeparableEnsemble<T> {
    pub kind: EnsembleKind,
    pub terms: Vec<EnsembleTerm<T>>,
}

impl<T: Real> SeparableEnsemble<T> {
    pub fn new(kind: EnsembleKind, terms: Vec<EnsembleTerm<T>>) -> Result<Self> {
        if terms.iter().any(|t| t.weight.is_nan() || t.weight < T::zero()) {
            return Err(input("ensemble weights must be non-negative"));
        }
        if kind == EnsembleKind::Full && terms.iter().any(|t| matches!(t.term, TermKind::Bell { .. })) {
            return Err(input("a fully separable ensemble cannot contain Bell terms"));
        }
        Ok(Self { kind, terms })
    }

    pub fn weight_sum(&self) -> T {
        self.terms.iter().fold(T::zero(), |s, t| s + t.weight)
    }

    /// Total weight on `I/8`.
    pub fn identity_weight(&self) -> T {
        self.terms
            .iter()
            .filter(|t| matches!(t.term, TermKind::Identity))
            .fold(T::zero(), |s, t| s + t.weight)
    }

    /// `Σ w_t ρ_t`.
    pub fn operator(&self) -> ComplexMatrix<T> {
        self.terms.iter().fold(ComplexMatrix::zeros(DIM, DIM), |acc, t| {
            &acc + &t.operator().scale_real(t.weight)
        })
    }
}

/// Outcome of [`verify_ensemble`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EnsembleCheck<T> {
    pub ok: bool,
    /// Max-abs entry of `Σ w_t ρ_t - ρ`.
    pub residual: T,
    pub weight_sum: T,
    /// Every term PSD with unit trace, and every weight non-negative.
    pub terms_valid: bool,
    pub min_term_eigenvalue: T,
}

/// Materializes every term, checks it is a state, and compares the weighted
/// sum with `rho`.
pub fn verify_ensemble<T: Real>(e: &SeparableEnsemble<T>, rho: &ComplexMatrix<T>) -> EnsembleCheck<T> {
    let mut sum = ComplexMatrix::<T>::zeros(DIM, DIM);
    let mut terms_valid = e.kind == EnsembleKind::Biseparable
        || !e.terms.iter().any(|t| matches!(t.term, TermKind::Bell { .. }));
    let mut min_eig = T::infinity();
    for t in &e.terms {
        let op = t.operator();
        terms_valid &= t.weight >= T::zero();
        terms_valid &= (op.trace().re - T::one()).abs() <= T::tol(tolerance::STRUCTURAL);
        match eigenvalues_hermitian(&op) {
            Ok(ev) => {
                min_eig = min_eig.min(ev[0]);
                terms_valid &= ev[0] >= -T::tol(tolerance::PSD_FLOOR);
            }
            Err(_) => terms_valid = false,
        }
        sum = &sum + &op.scale_real(t.weight);
    }
    if e.terms.is_empty() {
        min_eig = T::zero();
    }
    let residual = if rho.rows() == DIM && rho.cols() == DIM {
        sum.max_abs_diff(rho)
    } else {
        T::infinity()
    };
    let weight_sum = e.weight_sum();
    let ok = terms_valid
        && residual <= T::tol(tolerance::STRUCTURAL)
        && (weight_sum - T::one()).abs() <= T::tol(tolerance::WEIGHT_SUM);
    EnsembleCheck {
        ok,
        residual,
        weight_sum,
        terms_valid,
        min_term_eigenvalue: min_eig,
    }
}

fn refuse<T: Real>(r: &CriterionResult<T>) -> Result<()> {
    if r.satisfied {
        return Ok(());
    }
    let name = match r.mode {
        Some(m) => format!("{} (mode {})", r.name, m.mode()),
        None => r.name.to_string(),
    };
    Err(Error::Refused {
        criterion: name,
        value: r.value.to_f64().unwrap_or(f64::NAN),
        threshold: r.threshold.to_f64().unwrap_or(f64::NAN),
    })
}

fn scale3<T: Real>(v: [T; 3], s: T) -> [T; 3] {
    v.map(|x| x * s)
}

pub(crate) fn unit<T: Real>(k: usize) -> [T; 3] {
    let mut e = [T::zero(); 3];
    e[k] = T::one();
    e
}

fn apply<T: Real>(f: &RealMatrix<T>, v: [T; 3]) -> [T; 3] {
    [0, 1, 2].map(|i| (0..3).fold(T::zero(), |s, k| s + f[(i, k)] * v[k]))
}

fn column<T: Real>(m: &RealMatrix<T>, j: usize) -> [T; 3] {
    [m[(0, j)], m[(1, j)], m[(2, j)]]
}

/// Four product terms of weight `|coeff|/4` whose sum is
/// `|coeff| I + coeff (a·σ)⊗(b·σ)⊗(c·σ)` (times 8, before normalization).
pub(crate) fn push_product_quad<T: Real>(
    terms: &mut Vec<EnsembleTerm<T>>,
    coeff: T,
    a: [T; 3],
    b: [T; 3],
    c: [T; 3],
) -> Result<()> {
    if coeff == T::zero() {
        return Ok(());
    }
    let s = coeff.signum();
    let w = coeff.abs() * T::lit(0.25);
    let one = T::one();
    for (x, y, z) in [(one, -one, -s), (one, one, s), (-one, -one, s), (-one, one, -s)] {
        terms.push(EnsembleTerm::product(
            w,
            [
                QubitFactor::new(scale3(a, x))?,
                QubitFactor::new(scale3(b, y))?,
                QubitFactor::new(scale3(c, z))?,
            ],
        ));
    }
    Ok(())
}

pub(crate) fn finish<T: Real>(kind: EnsembleKind, mut terms: Vec<EnsembleTerm<T>>, used: T) -> Result<SeparableEnsemble<T>> {
    let rest = T::one() - used;
    if rest > T::zero() {
        terms.push(EnsembleTerm::identity(rest));
    }
    SeparableEnsemble::new(kind, terms)
}

/// Product ensemble from the raw coefficients (`rotated = false`, needs
/// `l1_raw <= 1`) or from the slice SVDs along `mode` (`rotated = true`,
/// needs `l1_svd(mode) <= 1`).
pub fn l1_ensemble<T: Real>(t: &MdsTensor<T>, rotated: bool, mode: Qubit) -> Result<SeparableEnsemble<T>> {
    if !rotated {
        let r = l1_raw(t);
        refuse(&r)?;
        let mut terms = Vec::new();
        for ([a, b, c], v) in t.iter() {
            push_product_quad(&mut terms, v, unit(a), unit(b), unit(c))?;
        }
        return finish(EnsembleKind::Full, terms, r.value);
    }
    let r = l1_svd(t, mode);
    refuse(&r)?;
    let id = RealMatrix::identity(3);
    let frames = [id.clone(), id.clone(), id];
    let terms = rotated_terms(t, mode, &frames)?;
    finish(EnsembleKind::Full, terms, r.value)
}

/// Slice-SVD product terms of `t`, whose Pauli frames are the columns of
/// `frames` (identity for the lab frame).
fn rotated_terms<T: Real>(t: &MdsTensor<T>, mode: Qubit, frames: &[RealMatrix<T>; 3]) -> Result<Vec<EnsembleTerm<T>>> {
    let mut terms = Vec::new();
    for p in 0..3 {
        let svd = svd_real(&slice0(t, mode, p))?;
        for (i, &s) in svd.singular_values.iter().enumerate() {
            if s == T::zero() {
                continue;
            }
            let (u, v) = (column(&svd.u, i), column(&svd.v, i));
            let e = unit(p);
            let local = match mode {
                Qubit::A => [e, u, v],
                Qubit::B => [u, e, v],
                Qubit::C => [u, v, e],
            };
            let [a, b, c] = [0, 1, 2].map(|k| apply(&frames[k], local[k]));
            push_product_quad(&mut terms, s, a, b, c)?;
        }
    }
    Ok(terms)
}

/// Product ensemble in the HOSVD frames: the slice-SVD construction applied
/// to the core, with each axis mapped back through its factor matrix.
pub fn hosvd_ensemble<T: Real>(t: &MdsTensor<T>, mode: Qubit) -> Result<SeparableEnsemble<T>> {
    let h = hosvd(t);
    let r = hosvd_l1_from(&h, mode);
    refuse(&r)?;
    let terms = rotated_terms(&h.core, mode, &h.factors)?;
    finish(EnsembleKind::Full, terms, r.value)
}

/// Fiber ensemble: each fiber along C becomes one coefficient `n_ab` on the
/// axis `(R_ab1, R_ab2, R_ab3)/n_ab`.
pub fn l2_ensemble<T: Real>(t: &MdsTensor<T>) -> Result<SeparableEnsemble<T>> {
    l2_ensemble_grouped(t, Qubit::C)
}

/// [`l2_ensemble`] with the fibers taken along any qubit.
pub fn l2_ensemble_grouped<T: Real>(t: &MdsTensor<T>, grouped_mode: Qubit) -> Result<SeparableEnsemble<T>> {
    let r = l2_triads(t, grouped_mode);
    refuse(&r)?;
    let norms = fiber_norms(t, grouped_mode);
    let mut terms = Vec::new();
    for (k, &n) in norms.iter().enumerate() {
        if n == T::zero() {
            continue;
        }
        let (i, j) = (k / 3, k % 3);
        let axis = [0, 1, 2].map(|x| {
            let [a, b, c] = fiber_index(grouped_mode, i, j, x);
            t.get(a, b, c) / n
        });
        let (ei, ej) = (unit(i), unit(j));
        let [a, b, c] = match grouped_mode {
            Qubit::A => [axis, ei, ej],
            Qubit::B => [ei, axis, ej],
            Qubit::C => [ei, ej, axis],
        };
        push_product_quad(&mut terms, n, a, b, c)?;
    }
    finish(EnsembleKind::Full, terms, r.value)
}

/// Product ensemble for a general tensor with `Σ_{μνκ≠000} |R_μνκ| <= 1`.
/// A coefficient acting on `k` qubits contributes `2^{k-1}` product terms;
/// untouched qubits stay maximally mixed.
pub fn l1_general_ensemble<T: Real>(g: &GeneralHsTensor<T>) -> Result<SeparableEnsemble<T>> {
    let r = l1_general(g);
    refuse(&r)?;
    let mut terms = Vec::new();
    for (idx, v) in g.iter() {
        if idx == [0, 0, 0] || v == T::zero() {
            continue;
        }
        let active: Vec<usize> = (0..3).filter(|&q| idx[q] != 0).collect();
        let axis = |q: usize| if idx[q] == 0 { [T::zero(); 3] } else { unit(idx[q] - 1) };
        if active.len() == 3 {
            push_product_quad(&mut terms, v, axis(0), axis(1), axis(2))?;
            continue;
        }
        // sign patterns whose products over the active qubits all equal sign(v)
        let s = v.signum();
        let patterns: &[&[T]] = match active.len() {
            1 => &[&[s]],
            _ => &[&[T::one(), s], &[-T::one(), -s]],
        };
        let w = v.abs() / T::lit(patterns.len() as f64);
        for signs in patterns {
            let mut bloch = [[T::zero(); 3]; 3];
            for (&q, &sg) in active.iter().zip(signs.iter()) {
                bloch[q] = scale3(axis(q), sg);
            }
            terms.push(EnsembleTerm::product(w, bloch.map(|b| QubitFactor { bloch: b })));
        }
    }
    finish(EnsembleKind::Full, terms, r.value)
}

/// A|BC ensemble: each triad `{(a, π_B(a), π_C(a))}` gives four terms
/// `ρ_A ⊗ P_Bell` in the frames relabeled by `π_B`, `π_C`.
pub fn bisep_ensemble<T: Real>(t: &MdsTensor<T>) -> Result<SeparableEnsemble<T>> {
    let r = bisep_triads(t);
    refuse(&r)?;
    let mut terms = Vec::new();
    for triad in &TRIADS {
        let coeffs = triad_coefficients(t, triad);
        let n = coeffs.iter().fold(T::zero(), |s, &x| s + x * x).sqrt();
        if n == T::zero() {
            continue;
        }
        let (pb, pc) = triad_permutations(triad);
        let (fb, fc) = (permutation_frame::<T>(pb), permutation_frame::<T>(pc));
        let w = n * T::lit(0.25);
        for bell in BellLabel::ALL {
            let s = bell.correlations();
            let bloch = [0, 1, 2].map(|a| T::lit(s[a] as f64) * coeffs[a] / n);
            terms.push(EnsembleTerm {
                weight: w,
                term: TermKind::Bell {
                    a: QubitFactor::new(bloch)?,
                    bc: BellFactor::new(fb, fc, bell)?,
                },
            });
        }
    }
    finish(EnsembleKind::Biseparable, terms, r.value)
}
