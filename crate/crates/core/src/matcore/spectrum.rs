use crate::error::Result;
use crate::linalg;
use crate::matrix::{CMatrix, C64};

/// Eigenvalues with multiplicity, in no particular order.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    values: Vec<C64>,
    radius: f64,
}

impl Spectrum {
    pub fn new(values: Vec<C64>) -> Self {
        let radius = values.iter().map(|z| z.norm()).fold(0.0, f64::max);
        Spectrum { values, radius }
    }

    pub fn values(&self) -> &[C64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<C64> {
        self.values
    }

    /// Spectral radius `max |lambda|`.
    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Whether the spectrum lies in the open unit disc.
    pub fn in_unit_disc(&self) -> bool {
        self.radius < 1.0
    }

    pub fn sum(&self) -> C64 {
        self.values.iter().sum()
    }

    pub fn product(&self) -> C64 {
        self.values.iter().product()
    }

    /// Largest distance of an eigenvalue from the mean of all eigenvalues.
    pub fn spread(&self) -> f64 {
        let mean = self.sum() / self.values.len() as f64;
        self.values
            .iter()
            .map(|z| (z - mean).norm())
            .fold(0.0, f64::max)
    }
}

/// Eigenvalues of `a` with multiplicity and its spectral radius.
pub fn spectrum(a: &CMatrix) -> Result<Spectrum> {
    Ok(Spectrum::new(linalg::eigenvalues(a.as_dmatrix())?))
}
