#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use specball::{CMatrix, C64};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn gaussian(rng: &mut ChaCha8Rng) -> C64 {
    let re: f64 = StandardNormal.sample(rng);
    let im: f64 = StandardNormal.sample(rng);
    C64::new(re, im)
}

pub fn gaussian_matrix(rng: &mut ChaCha8Rng, n: usize) -> CMatrix {
    CMatrix::from_fn(n, |_, _| gaussian(rng))
}

/// Random matrix with spectral radius below `target`.
pub fn random_in_ball(rng: &mut ChaCha8Rng, n: usize, target: f64) -> CMatrix {
    let a = gaussian_matrix(rng, n);
    let r = specball::spectrum(&a).unwrap().radius();
    a.scale_real(target * rng.random_range(0.05..1.0) / r.max(1e-300))
}

/// Random point of the open unit disc.
pub fn disc_point(rng: &mut ChaCha8Rng, max_modulus: f64) -> C64 {
    let r = max_modulus * rng.random::<f64>().sqrt();
    let theta = rng.random_range(0.0..std::f64::consts::TAU);
    C64::from_polar(r, theta)
}

/// Well-conditioned random invertible matrix: identity plus a small perturbation.
pub fn well_conditioned(rng: &mut ChaCha8Rng, n: usize) -> CMatrix {
    let g = gaussian_matrix(rng, n);
    &CMatrix::identity(n) + &g.scale_real(0.3 / g.norm2())
}

/// Multiset distance after optimal pairing.
pub fn multiset_distance(a: &[C64], b: &[C64]) -> f64 {
    let costs: Vec<Vec<f64>> = a
        .iter()
        .map(|x| b.iter().map(|y| (x - y).norm()).collect())
        .collect();
    specball::matching::bottleneck_assignment(&costs).0
}
