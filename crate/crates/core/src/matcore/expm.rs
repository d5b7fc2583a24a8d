//! Matrix exponential and the logarithm of a unitary matrix.

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::linalg;
use crate::matrix::{CMatrix, C64};

/// `exp(M)` by scaling and squaring with a Pade approximant.
pub fn matrix_exp(m: &CMatrix) -> CMatrix {
    CMatrix::wrap(m.as_dmatrix().exp())
}

/// Principal logarithm of a unitary matrix, skew-Hermitian, from the Schur
/// form of the (normal) input.
pub fn unitary_log(u: &CMatrix, tol: f64) -> Result<CMatrix> {
    let defect = u.unitarity_defect();
    if defect > tol {
        return Err(Error::InvalidInput(format!(
            "matrix is not unitary (defect {defect:.3e})"
        )));
    }
    let n = u.dim();
    let (q, t) = linalg::schur(u.as_dmatrix())?;
    let logs = DMatrix::<C64>::from_diagonal(&nalgebra::DVector::from_iterator(
        n,
        (0..n).map(|i| {
            let z = t[(i, i)];
            C64::new(z.norm().ln(), z.arg())
        }),
    ));
    let l = &q * logs * q.adjoint();
    let skew = (&l - l.adjoint()) * C64::new(0.5, 0.0);
    Ok(CMatrix::wrap(skew))
}
