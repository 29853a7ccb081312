#![allow(dead_code)]

use mdsep::hs::{density_from_mds, spectrum, MdsTensor};
use proptest::prelude::*;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Largest `k` with `I + k Σ d_abc σσσ` PSD.
pub fn psd_limit(d: &[f64; 27]) -> f64 {
    let t = MdsTensor::from_finite(dense(d)).unwrap();
    let h_min = 8.0 * spectrum(&density_from_mds(&t)).unwrap()[0] - 1.0;
    if h_min < 0.0 {
        -1.0 / h_min
    } else {
        f64::INFINITY
    }
}

pub fn dense(d: &[f64; 27]) -> [[[f64; 3]; 3]; 3] {
    std::array::from_fn(|a| std::array::from_fn(|b| std::array::from_fn(|c| d[9 * a + 3 * b + c])))
}

/// Valid MDS state: random direction in `[-1, 1]^27` scaled to a fraction
/// `u` of the PSD boundary.
pub fn valid_mds_from(d: &[f64; 27], u: f64) -> MdsTensor<f64> {
    MdsTensor::from_finite(dense(d)).unwrap().scaled(u * psd_limit(d).min(1e6))
}

pub fn random_direction(rng: &mut impl Rng) -> [f64; 27] {
    std::array::from_fn(|_| rng.gen_range(-1.0..1.0))
}

pub fn random_valid_mds(rng: &mut impl Rng) -> MdsTensor<f64> {
    let d = random_direction(rng);
    valid_mds_from(&d, rng.gen_range(0.0..0.999))
}

/// Rescales `t` so that a degree-one criterion with current value `value`
/// takes the value `target`.
pub fn rescale(t: &MdsTensor<f64>, value: f64, target: f64) -> MdsTensor<f64> {
    if value == 0.0 {
        *t
    } else {
        t.scaled(target / value)
    }
}

pub fn direction() -> impl Strategy<Value = [f64; 27]> {
    prop::array::uniform27(-1.0f64..1.0)
}

pub fn valid_mds() -> impl Strategy<Value = MdsTensor<f64>> {
    (direction(), 0.0f64..0.999).prop_map(|(d, u)| valid_mds_from(&d, u))
}

pub fn max_abs(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}
