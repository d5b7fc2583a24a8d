//! Dense univariate polynomials with complex coefficients, ascending degree.

use crate::error::{Error, Result};
use crate::linalg;
use crate::matrix::{CMatrix, C64, ONE, ZERO};

/// Monic polynomial; `coeffs[k]` multiplies `t^k` and the last entry is exactly 1.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyCoeffs {
    coeffs: Vec<C64>,
}

impl PolyCoeffs {
    /// Normalizes by the leading coefficient, which must be nonzero.
    pub fn monic(mut coeffs: Vec<C64>) -> Result<Self> {
        let lead = *coeffs
            .last()
            .ok_or_else(|| Error::InvalidInput("empty coefficient list".into()))?;
        if lead == ZERO {
            return Err(Error::InvalidInput("leading coefficient is zero".into()));
        }
        for c in coeffs.iter_mut() {
            *c /= lead;
        }
        *coeffs.last_mut().expect("non-empty") = ONE;
        Ok(PolyCoeffs { coeffs })
    }

    pub fn coeffs(&self) -> &[C64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn eval(&self, z: C64) -> C64 {
        eval(&self.coeffs, z)
    }

    /// `p(A)` by Horner's rule.
    pub fn eval_matrix(&self, a: &CMatrix) -> CMatrix {
        let n = a.dim();
        let mut acc = CMatrix::zeros(n);
        for &c in self.coeffs.iter().rev() {
            acc = &(&acc * a) + &CMatrix::scalar(n, c);
        }
        acc
    }

    pub fn roots(&self) -> Result<Vec<C64>> {
        roots(&self.coeffs)
    }

    /// Remainder of the division of `other` by `self`.
    pub fn remainder_of(&self, other: &[C64]) -> Vec<C64> {
        remainder(other, &self.coeffs)
    }
}

/// Horner evaluation of ascending coefficients.
pub fn eval(coeffs: &[C64], z: C64) -> C64 {
    coeffs.iter().rev().fold(ZERO, |acc, &c| acc * z + c)
}

/// Product of two polynomials.
pub fn mul(a: &[C64], b: &[C64]) -> Vec<C64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![ZERO; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Remainder of `num` divided by `den` (whose leading coefficient must be nonzero).
pub fn remainder(num: &[C64], den: &[C64]) -> Vec<C64> {
    let mut r = num.to_vec();
    let d = den.len() - 1;
    let lead = den[d];
    while r.len() > d {
        let top = r.len() - 1;
        let f = r[top] / lead;
        for (k, &c) in den.iter().enumerate() {
            r[top - d + k] -= f * c;
        }
        r.pop();
    }
    r
}

/// Drops trailing coefficients with modulus at most `tol` times the largest.
pub fn trim(coeffs: &[C64], tol: f64) -> Vec<C64> {
    let scale = coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
    let mut out = coeffs.to_vec();
    while out.len() > 1 && out.last().is_some_and(|c| c.norm() <= tol * scale) {
        out.pop();
    }
    out
}

/// Roots of a polynomial (ascending coefficients, nonzero leading term) as the
/// eigenvalues of its companion matrix.
pub fn roots(coeffs: &[C64]) -> Result<Vec<C64>> {
    let d = coeffs.len().saturating_sub(1);
    if d == 0 {
        return Ok(Vec::new());
    }
    let lead = coeffs[d];
    if lead == ZERO {
        return Err(Error::InvalidInput("leading coefficient is zero".into()));
    }
    let comp = CMatrix::from_fn(d, |i, j| {
        if j == d - 1 {
            -coeffs[i] / lead
        } else if i == j + 1 {
            ONE
        } else {
            ZERO
        }
    });
    linalg::eigenvalues(comp.as_dmatrix())
}
