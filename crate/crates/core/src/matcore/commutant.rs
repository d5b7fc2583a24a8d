//! The commutation operator `H -> AH - HA` and its null space.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::linalg::{self, RankDecision};
use crate::matrix::{commutator, CMatrix, C64};

/// Basis of the commutant `{M : MA = AM}`.
#[derive(Debug, Clone)]
pub struct CommutantBasis {
    pub dim: usize,
    pub basis: Vec<CMatrix>,
    pub rank: RankDecision,
}

/// Matrix of `H -> AH - HA` acting on column-major `vec(H)`,
/// namely `I (x) A - A^T (x) I`.
pub fn ad_operator(a: &CMatrix) -> DMatrix<C64> {
    let n = a.dim();
    let n2 = n * n;
    let mut k = DMatrix::<C64>::zeros(n2, n2);
    // vec index of H[i, j] is i + j n
    for j in 0..n {
        for i in 0..n {
            let row = i + j * n;
            for l in 0..n {
                // (AH)[i, j] = sum_l A[i, l] H[l, j]
                k[(row, l + j * n)] += a[(i, l)];
                // (HA)[i, j] = sum_l H[i, l] A[l, j]
                k[(row, i + l * n)] -= a[(l, j)];
            }
        }
    }
    k
}

pub fn commutant_basis(a: &CMatrix, tol: f64) -> CommutantBasis {
    let n = a.dim();
    let (null, rank) = linalg::null_space(&ad_operator(a), tol);
    let basis = (0..null.ncols())
        .map(|c| {
            let col: Vec<C64> = null.column(c).iter().copied().collect();
            CMatrix::from_vec(n, &col)
        })
        .collect::<Vec<_>>();
    CommutantBasis {
        dim: basis.len(),
        basis,
        rank,
    }
}

/// Minimum-norm `Y` with `AY - YA = B`.
pub fn solve_conjugation(a: &CMatrix, b: &CMatrix, tol: f64) -> Result<CMatrix> {
    let n = a.dim();
    if b.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            actual: b.dim(),
        });
    }
    let k = ad_operator(a);
    let rhs = DVector::from_vec(b.vec());
    let y = linalg::min_norm_solve(&k, &rhs, tol);
    let y = CMatrix::from_vec(n, y.as_slice());
    let residual = (&commutator(a, &y) - b).norm_fro();
    let threshold = tol * (1.0 + b.norm_fro());
    if residual > threshold {
        return Err(Error::NoSolution {
            residual,
            threshold,
        });
    }
    Ok(y)
}
