//! Random matrices in the spectral ball.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use specball::{spectrum, CMatrix, Error, C64};

/// Largest spectral radius kept without rescaling.
pub const RADIUS_CAP: f64 = 0.9;

/// `count` complex Gaussian `n x n` matrices; those with spectral radius at
/// least 0.9 are rescaled to radius exactly 0.9.
pub fn sample_omega(n: usize, count: usize, seed: u64) -> Result<Vec<CMatrix>, Error> {
    if n == 0 || count == 0 {
        return Err(Error::InvalidInput("n and count must be positive".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let scale = std::f64::consts::FRAC_1_SQRT_2;
    (0..count)
        .map(|_| {
            let a = CMatrix::from_fn(n, |_, _| {
                let re: f64 = StandardNormal.sample(&mut rng);
                let im: f64 = StandardNormal.sample(&mut rng);
                C64::new(re * scale, im * scale)
            });
            let r = spectrum(&a)?.radius();
            Ok(if r >= RADIUS_CAP {
                a.scale_real(RADIUS_CAP / r)
            } else {
                a
            })
        })
        .collect()
}
