//! GHZ and W states, white-noise mixtures and their separable ensembles.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::ensembles::{finish, push_product_quad, unit, EnsembleKind, EnsembleTerm, QubitFactor, SeparableEnsemble};
use crate::criteria::{Criterion, CriterionResult};
use crate::error::{input, Error, Result};
use crate::hs::{density_from_general, GeneralHsTensor};
use crate::numerics::ComplexMatrix;
use crate::scalar::Real;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Ghz,
    W,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Ghz => "ghz",
            Family::W => "w",
        })
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "ghz" => Ok(Family::Ghz),
            "w" => Ok(Family::W),
            other => Err(input(format!("unknown state family {other:?} (expected ghz or w)"))),
        }
    }
}

/// `p ρ_family + (1 - p) I/8`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NoisyStateSpec<T> {
    pub family: Family,
    pub p: T,
}

impl<T: Real> NoisyStateSpec<T> {
    pub fn new(family: Family, p: T) -> Result<Self> {
        if !(p >= T::zero() && p <= T::one()) {
            return Err(input(format!("state probability must lie in [0, 1], got {p}")));
        }
        Ok(Self { family, p })
    }
}

fn tensor_from<T: Real>(entries: &[([usize; 3], f64)]) -> GeneralHsTensor<T> {
    let mut r = [[[T::zero(); 4]; 4]; 4];
    for &([m, n, k], v) in entries {
        r[m][n][k] = T::lit(v);
    }
    GeneralHsTensor::new(r).expect("built-in tensor is valid")
}

/// Coefficients of `(|000> + |111>)/√2`.
pub fn ghz_hs<T: Real>() -> GeneralHsTensor<T> {
    tensor_from(&[
        ([0, 0, 0], 1.0),
        ([1, 1, 1], 1.0),
        ([0, 3, 3], 1.0),
        ([3, 0, 3], 1.0),
        ([3, 3, 0], 1.0),
        ([1, 2, 2], -1.0),
        ([2, 1, 2], -1.0),
        ([2, 2, 1], -1.0),
    ])
}

/// Coefficients of `(|001> + |010> + |100>)/√3`.
pub fn w_hs<T: Real>() -> GeneralHsTensor<T> {
    let (third, two_thirds) = (1.0 / 3.0, 2.0 / 3.0);
    let mut entries = vec![([0, 0, 0], 1.0), ([3, 3, 3], -1.0)];
    for k in 0..3 {
        let mut z = [0; 3];
        z[k] = 3;
        entries.push((z, third));
        let mut zz = [3; 3];
        zz[k] = 0;
        entries.push((zz, -third));
    }
    // pairs in XX / YY, third qubit identity or σz
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        for axis in [1, 2] {
            for third_index in [0, 3] {
                let mut idx = [third_index; 3];
                idx[i] = axis;
                idx[j] = axis;
                entries.push((idx, two_thirds));
            }
        }
    }
    tensor_from(&entries)
}

pub fn family_hs<T: Real>(family: Family) -> GeneralHsTensor<T> {
    match family {
        Family::Ghz => ghz_hs(),
        Family::W => w_hs(),
    }
}

/// Coefficients of the noisy state: every entry of the family tensor but
/// `R_000` is scaled by `p`.
pub fn noisy_hs<T: Real>(spec: &NoisyStateSpec<T>) -> GeneralHsTensor<T> {
    let base = family_hs::<T>(spec.family);
    let mut r = *base.as_array();
    for (idx, v) in base.iter() {
        if idx != [0, 0, 0] {
            r[idx[0]][idx[1]][idx[2]] = v * spec.p;
        }
    }
    GeneralHsTensor::new(r).expect("scaled tensor keeps R_000 = 1")
}

pub fn noisy_state<T: Real>(spec: &NoisyStateSpec<T>) -> ComplexMatrix<T> {
    density_from_general(&noisy_hs(spec))
}

/// Projector onto the family's state vector, built from amplitudes.
pub fn pure_projector<T: Real>(family: Family) -> ComplexMatrix<T> {
    let mut psi = [T::zero(); 8];
    match family {
        Family::Ghz => {
            let a = T::one() / T::lit(2.0).sqrt();
            psi[0] = a;
            psi[7] = a;
        }
        Family::W => {
            let a = T::one() / T::lit(3.0).sqrt();
            for k in [1, 2, 4] {
                psi[k] = a;
            }
        }
    }
    ComplexMatrix::from_fn(8, 8, |i, j| Complex::new(psi[i] * psi[j], T::zero()))
}

/// `3 / (3 + 8√2)`: above it the partial transpose of the noisy W state has a
/// negative eigenvalue.
pub fn w_pt_bound<T: Real>() -> T {
    let three = T::lit(3.0);
    three / (three + T::lit(8.0) * T::SQRT_2())
}

/// Largest `p` for which [`noisy_ensemble`] produces an ensemble.
///
/// GHZ: `1/5`. W: `√3 / (8 + √3)`.
pub fn separable_bound<T: Real>(family: Family) -> T {
    match family {
        Family::Ghz => T::lit(0.2),
        Family::W => {
            let s3 = T::lit(3.0).sqrt();
            s3 / (T::lit(8.0) + s3)
        }
    }
}

/// Explicit product-state ensemble for the noisy state.
///
/// GHZ uses 16 x/y product terms of weight `p/4` plus `|000>`, `|111>` with
/// weight `p/2` each; the identity keeps `1 - 5p`.
///
/// W mixes, for each pair `(k, l)` with the third qubit in `|0>`, four
/// phase-rotated copies of `|φ>|φ>` where `|φ|0>|² = 1/(1+√3)`, plus the
/// computational states of weight 1 and 3. The identity keeps
/// `1 - p(1 + 8/√3)`.
pub fn noisy_ensemble<T: Real>(spec: &NoisyStateSpec<T>) -> Result<SeparableEnsemble<T>> {
    match spec.family {
        Family::Ghz => ghz_ensemble(spec.p),
        Family::W => w_ensemble(spec.p),
    }
}

/// Weight the non-identity terms of [`noisy_ensemble`] need; the ensemble
/// exists iff this is at most 1.
pub fn noisy_budget<T: Real>(spec: &NoisyStateSpec<T>) -> T {
    match spec.family {
        Family::Ghz => T::lit(5.0) * spec.p,
        Family::W => spec.p * (T::one() + T::lit(8.0) / T::lit(3.0).sqrt()),
    }
}

/// As a criterion result, for reports.
pub fn noisy_criterion<T: Real>(spec: &NoisyStateSpec<T>) -> CriterionResult<T> {
    CriterionResult::new(Criterion::NoisyFamily, noisy_budget(spec), None, Vec::new())
}

fn refuse_budget<T: Real>(family: Family, used: T) -> Result<()> {
    if used <= T::one() {
        return Ok(());
    }
    Err(Error::Refused {
        criterion: format!("noisy {family} budget"),
        value: used.to_f64().unwrap_or(f64::NAN),
        threshold: 1.0,
    })
}

fn z_state<T: Real>(bits: [bool; 3]) -> [QubitFactor<T>; 3] {
    bits.map(|b| {
        let z = if b { -T::one() } else { T::one() };
        QubitFactor { bloch: [T::zero(), T::zero(), z] }
    })
}

fn ghz_ensemble<T: Real>(p: T) -> Result<SeparableEnsemble<T>> {
    let used = noisy_budget(&NoisyStateSpec { family: Family::Ghz, p });
    refuse_budget(Family::Ghz, used)?;
    let mut terms = Vec::new();
    if p > T::zero() {
        let (x, y) = (unit::<T>(0), unit::<T>(1));
        push_product_quad(&mut terms, p, x, x, x)?;
        push_product_quad(&mut terms, -p, y, y, x)?;
        push_product_quad(&mut terms, -p, y, x, y)?;
        push_product_quad(&mut terms, -p, x, y, y)?;
        let half = p * T::lit(0.5);
        terms.push(EnsembleTerm::product(half, z_state([false; 3])));
        terms.push(EnsembleTerm::product(half, z_state([true; 3])));
    }
    finish(EnsembleKind::Full, terms, used)
}

fn w_ensemble<T: Real>(p: T) -> Result<SeparableEnsemble<T>> {
    let s3 = T::lit(3.0).sqrt();
    let used = noisy_budget(&NoisyStateSpec { family: Family::W, p });
    refuse_budget(Family::W, used)?;
    let mut terms = Vec::new();
    if p > T::zero() {
        let u = T::one() / (T::one() + s3);
        let z = u + u - T::one();
        let r = T::lit(2.0) * (u * (T::one() - u)).sqrt();
        let pair_weight = p / T::lit(3.0) * (T::one() + s3) * (T::one() + s3) / s3;
        let quarter = pair_weight * T::lit(0.25);
        let up = QubitFactor { bloch: [T::zero(), T::zero(), T::one()] };
        for m in 0..3 {
            for bloch in [[r, T::zero(), z], [-r, T::zero(), z], [T::zero(), r, z], [T::zero(), -r, z]] {
                let phi = QubitFactor::new(bloch)?;
                let mut factors = [phi; 3];
                factors[m] = up;
                terms.push(EnsembleTerm::product(quarter, factors));
            }
        }
        let single = p / s3 - p / T::lit(3.0);
        for k in 0..3 {
            let mut bits = [false; 3];
            bits[k] = true;
            terms.push(EnsembleTerm::product(single, z_state(bits)));
        }
        terms.push(EnsembleTerm::product(p / s3, z_state([true; 3])));
    }
    finish(EnsembleKind::Full, terms, used)
}
