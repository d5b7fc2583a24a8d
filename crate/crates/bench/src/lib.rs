//! Deterministic inputs shared by the benchmarks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use specball::{spectrum, CMatrix, Spectrum, C64};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn gaussian_matrix(rng: &mut ChaCha8Rng, n: usize) -> CMatrix {
    CMatrix::from_fn(n, |_, _| {
        let re: f64 = StandardNormal.sample(rng);
        let im: f64 = StandardNormal.sample(rng);
        C64::new(re, im)
    })
}

/// Gaussian matrix rescaled to spectral radius `radius`.
pub fn in_ball(rng: &mut ChaCha8Rng, n: usize, radius: f64) -> CMatrix {
    let a = gaussian_matrix(rng, n);
    let r = spectrum(&a).expect("finite input").radius();
    a.scale_real(radius / r)
}

pub fn disc_spectrum(rng: &mut ChaCha8Rng, n: usize) -> Spectrum {
    Spectrum::new(
        (0..n)
            .map(|_| {
                C64::from_polar(
                    0.95 * rng.random::<f64>().sqrt(),
                    rng.random_range(0.0..std::f64::consts::TAU),
                )
            })
            .collect(),
    )
}
