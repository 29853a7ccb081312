//! Sufficient separability criteria and the Frobenius necessary condition.
//!
//! Each criterion yields a [`CriterionResult`] whose `value` is compared to a
//! threshold of 1 with a plain `<=`. Failing a sufficient criterion says
//! nothing about entanglement.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::hs::{GeneralHsTensor, MdsTensor, Qubit};
use crate::numerics::singular_values;
use crate::scalar::Real;
use crate::unfolding::slice0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Criterion {
    Frobenius,
    L1Raw,
    L1Svd,
    L2Triads,
    BisepTriads,
    HosvdL1,
    L1General,
    /// Budget of the explicit GHZ / W noise ensembles.
    NoisyFamily,
}

/// What a satisfied (or, for the Frobenius bound, violated) criterion shows.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Implication {
    FullySeparable,
    Biseparable,
    /// Necessary condition only; violation rules out a density matrix.
    Necessary,
}

impl Criterion {
    pub fn label(self) -> &'static str {
        match self {
            Criterion::Frobenius => "frobenius",
            Criterion::L1Raw => "l1_raw",
            Criterion::L1Svd => "l1_svd",
            Criterion::L2Triads => "l2_triads",
            Criterion::BisepTriads => "bisep_triads",
            Criterion::HosvdL1 => "hosvd_l1",
            Criterion::L1General => "l1_general",
            Criterion::NoisyFamily => "noisy_family",
        }
    }

    pub fn implication(self) -> Implication {
        match self {
            Criterion::Frobenius => Implication::Necessary,
            Criterion::BisepTriads => Implication::Biseparable,
            _ => Implication::FullySeparable,
        }
    }
}

impl fmt::Display for Criterion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CriterionResult<T> {
    pub name: Criterion,
    pub value: T,
    pub threshold: T,
    pub satisfied: bool,
    /// Unfolding / grouping mode, where the criterion has one. Serialized
    /// as 1, 2 or 3.
    #[serde(with = "mode_number")]
    pub mode: Option<Qubit>,
    /// Per-slice singular values, per-fiber or per-triad norms.
    pub details: Vec<Vec<T>>,
}

impl<T: Real> CriterionResult<T> {
    pub(crate) fn new(name: Criterion, value: T, mode: Option<Qubit>, details: Vec<Vec<T>>) -> Self {
        let threshold = T::one();
        Self {
            name,
            value,
            threshold,
            satisfied: value <= threshold,
            mode,
            details,
        }
    }
}

mod mode_number {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use crate::hs::Qubit;

    pub fn serialize<S: Serializer>(m: &Option<Qubit>, s: S) -> Result<S::Ok, S::Error> {
        m.map(Qubit::mode).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Qubit>, D::Error> {
        match Option::<u8>::deserialize(d)? {
            None => Ok(None),
            Some(k) => Qubit::from_mode(k).map(Some).map_err(serde::de::Error::custom),
        }
    }
}

/// Σ|R_abc|.
pub fn l1_raw<T: Real>(t: &MdsTensor<T>) -> CriterionResult<T> {
    CriterionResult::new(Criterion::L1Raw, t.l1(), None, Vec::new())
}

/// Singular values of the three slices along `mode`, each descending.
pub fn slice_singular_values<T: Real>(t: &MdsTensor<T>, mode: Qubit) -> [[T; 3]; 3] {
    let mut out = [[T::zero(); 3]; 3];
    for (p, row) in out.iter_mut().enumerate() {
        let sv = singular_values(&slice0(t, mode, p)).expect("finite 3x3 slice");
        row.copy_from_slice(&sv);
    }
    out
}

/// Sum of the nine slice singular values along `mode`.
pub fn l1_svd<T: Real>(t: &MdsTensor<T>, mode: Qubit) -> CriterionResult<T> {
    let sv = slice_singular_values(t, mode);
    let value = sv.iter().flatten().fold(T::zero(), |s, &x| s + x);
    CriterionResult::new(
        Criterion::L1Svd,
        value,
        Some(mode),
        sv.iter().map(|r| r.to_vec()).collect(),
    )
}

/// Smallest [`l1_svd`] over the three modes; ties go to the lower mode.
pub fn l1_svd_best<T: Real>(t: &MdsTensor<T>) -> CriterionResult<T> {
    best_of(Qubit::ALL.map(|m| l1_svd(t, m)))
}

pub(crate) fn best_of<T: Real>(results: [CriterionResult<T>; 3]) -> CriterionResult<T> {
    let mut it = results.into_iter();
    let mut best = it.next().expect("three results");
    for r in it {
        if r.value < best.value {
            best = r;
        }
    }
    best
}

/// Norms of the nine fibers along `grouped_mode`, indexed by the two other
/// indices in lexicographic order.
pub fn fiber_norms<T: Real>(t: &MdsTensor<T>, grouped_mode: Qubit) -> [T; 9] {
    let mut out = [T::zero(); 9];
    for (k, n) in out.iter_mut().enumerate() {
        let (i, j) = (k / 3, k % 3);
        let sq = (0..3).fold(T::zero(), |s, x| {
            let [a, b, c] = fiber_index(grouped_mode, i, j, x);
            let v = t.get(a, b, c);
            s + v * v
        });
        *n = sq.sqrt();
    }
    out
}

/// Tensor index of element `x` of the fiber `(i, j)` running along `mode`.
#[inline]
pub(crate) fn fiber_index(mode: Qubit, i: usize, j: usize, x: usize) -> [usize; 3] {
    match mode {
        Qubit::A => [x, i, j],
        Qubit::B => [i, x, j],
        Qubit::C => [i, j, x],
    }
}

/// Σ over the nine fibers along `grouped_mode` of their ℓ2 norms. Mode C
/// gives `Σ_ab sqrt(R_ab1² + R_ab2² + R_ab3²)`.
pub fn l2_triads<T: Real>(t: &MdsTensor<T>, grouped_mode: Qubit) -> CriterionResult<T> {
    let norms = fiber_norms(t, grouped_mode);
    let value = norms.iter().fold(T::zero(), |s, &x| s + x);
    CriterionResult::new(Criterion::L2Triads, value, Some(grouped_mode), vec![norms.to_vec()])
}

/// The nine biseparability triads, zero-based. Each is
/// `{(a, π_B(a), π_C(a))}` for a pair of cyclic permutations.
pub const TRIADS: [[[usize; 3]; 3]; 9] = [
    [[0, 0, 0], [1, 1, 1], [2, 2, 2]],
    [[0, 2, 1], [2, 1, 0], [1, 0, 2]],
    [[0, 1, 2], [2, 0, 1], [1, 2, 0]],
    [[0, 0, 1], [1, 1, 2], [2, 2, 0]],
    [[0, 1, 0], [1, 2, 1], [2, 0, 2]],
    [[0, 2, 2], [2, 1, 1], [1, 0, 0]],
    [[0, 0, 2], [1, 1, 0], [2, 2, 1]],
    [[1, 0, 1], [0, 2, 0], [2, 1, 2]],
    [[2, 0, 0], [1, 2, 2], [0, 1, 1]],
];

/// `(π_B, π_C)` of a triad: `triad` contains `(a, π_B[a], π_C[a])`.
pub fn triad_permutations(triad: &[[usize; 3]; 3]) -> ([usize; 3], [usize; 3]) {
    let mut pb = [usize::MAX; 3];
    let mut pc = [usize::MAX; 3];
    for &[a, b, c] in triad {
        pb[a] = b;
        pc[a] = c;
    }
    (pb, pc)
}

/// Checks that [`TRIADS`] partitions the 27 indices, every triad having one
/// element per value of `a` and permutations on B and C.
pub fn triads_cover_exactly_once() -> bool {
    let mut seen = [[[0u8; 3]; 3]; 3];
    for t in &TRIADS {
        for &[a, b, c] in t {
            seen[a][b][c] += 1;
        }
        let (pb, pc) = triad_permutations(t);
        for p in [pb, pc] {
            let mut sorted = p;
            sorted.sort_unstable();
            if sorted != [0, 1, 2] {
                return false;
            }
        }
    }
    seen.iter().flatten().flatten().all(|&n| n == 1)
}

/// The three coefficients of a triad ordered by the A index.
pub fn triad_coefficients<T: Real>(t: &MdsTensor<T>, triad: &[[usize; 3]; 3]) -> [T; 3] {
    let (pb, pc) = triad_permutations(triad);
    [0, 1, 2].map(|a| t.get(a, pb[a], pc[a]))
}

/// Σ over the nine triads of their ℓ2 norms.
pub fn bisep_triads<T: Real>(t: &MdsTensor<T>) -> CriterionResult<T> {
    let norms: Vec<T> = TRIADS
        .iter()
        .map(|tr| triad_coefficients(t, tr).iter().fold(T::zero(), |s, &x| s + x * x).sqrt())
        .collect();
    let value = norms.iter().fold(T::zero(), |s, &x| s + x);
    CriterionResult::new(Criterion::BisepTriads, value, None, vec![norms])
}

/// Σ R². A value above 1 rules out a density matrix.
pub fn frobenius_bound<T: Real>(t: &MdsTensor<T>) -> CriterionResult<T> {
    CriterionResult::new(Criterion::Frobenius, t.frobenius_sq(), None, Vec::new())
}

/// Σ|R_μνκ| over every coefficient except `R_000`.
pub fn l1_general<T: Real>(t: &GeneralHsTensor<T>) -> CriterionResult<T> {
    let value = t
        .iter()
        .filter(|(idx, _)| *idx != [0, 0, 0])
        .fold(T::zero(), |s, (_, v)| s + v.abs());
    CriterionResult::new(Criterion::L1General, value, None, Vec::new())
}
