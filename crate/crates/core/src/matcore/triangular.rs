//! Unitary triangularization with a prescribed diagonal order.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::linalg;
use crate::matrix::{CMatrix, C64};

/// `A = U T U^*` with `U` unitary and `T` upper triangular.
#[derive(Debug, Clone)]
pub struct Triangularization {
    pub u: CMatrix,
    pub t: CMatrix,
}

impl Triangularization {
    /// `U T U^*`.
    pub fn reconstruct(&self) -> CMatrix {
        &(&self.u * &self.t) * &self.u.adjoint()
    }
}

/// Smallest right singular vector of `m`. When several singular values are
/// below `threshold`, the vector is taken as the projection of the coordinate
/// vector best aligned with that null space, so that already-triangular
/// blocks keep their frame.
fn deflation_vector(m: &DMatrix<C64>, threshold: f64) -> (f64, DVector<C64>) {
    let (s, _u, v) = linalg::full_svd(m);
    let k = s.len() - 1;
    let null: Vec<usize> = (0..s.len()).filter(|&i| s[i] <= threshold).collect();
    if null.len() < 2 {
        return (s[k], v.column(k).into_owned());
    }
    let basis = DMatrix::from_columns(&null.iter().map(|&i| v.column(i)).collect::<Vec<_>>());
    let projections: Vec<DVector<C64>> = (0..m.ncols())
        .map(|r| &basis * basis.row(r).adjoint())
        .collect();
    let best = projections.iter().map(|p| p.norm()).fold(0.0, f64::max);
    let chosen = projections
        .into_iter()
        .find(|p| p.norm() >= 0.9 * best)
        .expect("some coordinate vector has the largest projection");
    let norm = chosen.norm();
    (s[k], chosen / C64::new(norm, 0.0))
}

/// Triangularizes `a` so that `diag(T)` follows `order`.
///
/// Each entry of `order` is deflated in turn: the smallest right singular
/// vector of the trailing block shifted by the requested value becomes the
/// next Schur vector. A shift whose smallest singular value exceeds
/// `tol * (1 + |A|)` is not an eigenvalue of what remains, so the order is
/// rejected.
pub fn ordered_triangularize(a: &CMatrix, order: &[C64], tol: f64) -> Result<Triangularization> {
    let n = a.dim();
    if order.len() != n {
        return Err(Error::InvalidOrder(format!(
            "expected {n} eigenvalues, got {}",
            order.len()
        )));
    }
    let threshold = tol * (1.0 + a.norm2());
    let mut w = a.as_dmatrix().clone();
    let mut u = DMatrix::<C64>::identity(n, n);
    for (k, &mu) in order.iter().enumerate().take(n - 1) {
        let m = n - k;
        let mut trailing = w.view((k, k), (m, m)).into_owned();
        for i in 0..m {
            trailing[(i, i)] -= mu;
        }
        let (smin, v) = deflation_vector(&trailing, threshold);
        if smin > threshold {
            return Err(Error::InvalidOrder(format!(
                "{mu} is not an eigenvalue at position {k} (residual {smin:.3e})"
            )));
        }
        let h = linalg::householder_from(&v);
        let rows = h.adjoint() * w.view((k, 0), (m, n));
        w.view_mut((k, 0), (m, n)).copy_from(&rows);
        let cols = w.view((0, k), (n, m)) * &h;
        w.view_mut((0, k), (n, m)).copy_from(&cols);
        let ucols = u.view((0, k), (n, m)) * &h;
        u.view_mut((0, k), (n, m)).copy_from(&ucols);
    }
    let last = (w[(n - 1, n - 1)] - order[n - 1]).norm();
    if last > threshold {
        return Err(Error::InvalidOrder(format!(
            "{} is not the remaining eigenvalue (residual {last:.3e})",
            order[n - 1]
        )));
    }
    let t = CMatrix::wrap(w).upper_triangle();
    Ok(Triangularization {
        u: CMatrix::wrap(u),
        t,
    })
}
