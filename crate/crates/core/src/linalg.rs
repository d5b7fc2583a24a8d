//! Thin helpers over nalgebra's dense decompositions.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::matrix::{CMatrix, C64, ONE, ZERO};

/// Outcome of a numerical rank decision.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RankDecision {
    pub rank: usize,
    /// Singular values strictly above this count toward the rank.
    pub threshold: f64,
    /// Some singular value lies within a factor 10 of the threshold.
    pub borderline: bool,
    /// Smallest singular value counted in the rank (infinite when rank 0).
    pub smallest_kept: f64,
    /// Largest singular value discarded (zero when full rank).
    pub largest_dropped: f64,
}

/// Rank with threshold `rel_tol * sigma_max`.
pub fn rank_of_singular_values(sv: &[f64], rel_tol: f64) -> RankDecision {
    let smax = sv.iter().cloned().fold(0.0, f64::max);
    let threshold = rel_tol * smax;
    let mut rank = 0;
    let mut borderline = false;
    let mut smallest_kept = f64::INFINITY;
    let mut largest_dropped: f64 = 0.0;
    for &s in sv {
        if s > threshold {
            rank += 1;
            smallest_kept = smallest_kept.min(s);
        } else {
            largest_dropped = largest_dropped.max(s);
        }
        if threshold > 0.0 && s >= threshold / 10.0 && s <= threshold * 10.0 {
            borderline = true;
        }
    }
    RankDecision {
        rank,
        threshold,
        borderline,
        smallest_kept,
        largest_dropped,
    }
}

pub fn singular_values(m: &DMatrix<C64>) -> Vec<f64> {
    m.clone()
        .svd(false, false)
        .singular_values
        .iter()
        .cloned()
        .collect()
}

pub fn rank(m: &DMatrix<C64>, rel_tol: f64) -> RankDecision {
    rank_of_singular_values(&singular_values(m), rel_tol)
}

/// Full SVD of a (possibly rectangular) matrix, returned as
/// `(singular values, U, V)` with `m = U diag(s) V^*`, sorted descending.
/// V is always square (the matrix is padded with zero rows if needed).
pub fn full_svd(m: &DMatrix<C64>) -> (Vec<f64>, DMatrix<C64>, DMatrix<C64>) {
    let (r, c) = m.shape();
    let padded = if r < c {
        let mut p = DMatrix::zeros(c, c);
        p.view_mut((0, 0), (r, c)).copy_from(m);
        p
    } else {
        m.clone()
    };
    let svd = padded.svd(true, true);
    let u = svd.u.expect("left singular vectors requested");
    let v = svd.v_t.expect("right singular vectors requested").adjoint();
    let s: Vec<f64> = svd.singular_values.iter().cloned().collect();
    let u = if r < c { u.rows(0, r).into_owned() } else { u };
    (s, u, v)
}

/// Orthonormal basis (as columns) of the numerical null space of `m`.
pub fn null_space(m: &DMatrix<C64>, rel_tol: f64) -> (DMatrix<C64>, RankDecision) {
    let (s, _u, v) = full_svd(m);
    let ncols = m.ncols();
    let mut sv = s.clone();
    sv.resize(ncols, 0.0);
    let decision = rank_of_singular_values(&sv, rel_tol);
    let cols: Vec<DVector<C64>> = (0..ncols)
        .filter(|&k| sv[k] <= decision.threshold)
        .map(|k| v.column(k).into_owned())
        .collect();
    let basis = if cols.is_empty() {
        DMatrix::zeros(ncols, 0)
    } else {
        DMatrix::from_columns(&cols)
    };
    (basis, decision)
}

/// Unit right singular vector for the smallest singular value of a square matrix.
pub fn smallest_right_singular_vector(m: &DMatrix<C64>) -> (f64, DVector<C64>) {
    let (s, _u, v) = full_svd(m);
    let k = s.len() - 1;
    (s[k], v.column(k).into_owned())
}

/// Minimum-norm least-squares solution of `m x = b`, discarding singular
/// values at or below `rel_tol * sigma_max`.
pub fn min_norm_solve(m: &DMatrix<C64>, b: &DVector<C64>, rel_tol: f64) -> DVector<C64> {
    let (s, u, v) = full_svd(m);
    let decision = rank_of_singular_values(&s, rel_tol);
    let mut x = DVector::zeros(m.ncols());
    for (k, &sk) in s.iter().enumerate().take(u.ncols()) {
        if sk > decision.threshold {
            let coeff = u.column(k).dotc(b) / C64::new(sk, 0.0);
            x += v.column(k) * coeff;
        }
    }
    x
}

/// Householder reflector `H` (Hermitian, unitary) whose first column is a
/// unimodular multiple of the unit vector `v`.
pub fn householder_from(v: &DVector<C64>) -> DMatrix<C64> {
    let m = v.len();
    let norm = v.norm();
    let v = v / C64::new(norm, 0.0);
    let v0 = v[0];
    let tail = (1..m).map(|i| v[i].norm_sqr()).sum::<f64>().sqrt();
    if tail <= 1e-15 {
        return DMatrix::identity(m, m);
    }
    let phase = if v0.norm() > 0.0 { v0 / v0.norm() } else { ONE };
    let mut u = v.clone();
    u[0] += phase;
    let uu = u.norm_squared();
    let mut h = DMatrix::identity(m, m);
    if uu > 0.0 {
        h -= (&u * u.adjoint()) * C64::new(2.0 / uu, 0.0);
    }
    h
}

/// Complex Schur form `m = Q T Q^*`.
///
/// Plain shifted QR can cycle on exactly structured inputs such as the
/// nilpotent shift matrix; on failure the input is first scrambled by a fixed
/// unitary similarity, then the convergence tolerance is relaxed.
pub fn schur(m: &DMatrix<C64>) -> Result<(DMatrix<C64>, DMatrix<C64>)> {
    let n = m.nrows();
    let max_iter = 2000 * n.max(1);
    if let Some(s) = nalgebra::Schur::try_new(m.clone(), f64::EPSILON, max_iter) {
        return Ok(s.unpack());
    }
    let v = DVector::from_iterator(
        n,
        (0..n).map(|k| C64::new(1.0 + 0.37 * k as f64, 0.61 - 0.23 * k as f64)),
    );
    let h = householder_from(&v);
    let scrambled = h.adjoint() * m * &h;
    for eps in [f64::EPSILON, 1e-14, 1e-12] {
        if let Some(s) = nalgebra::Schur::try_new(scrambled.clone(), eps, max_iter) {
            let (q, t) = s.unpack();
            return Ok((&h * q, t));
        }
    }
    Err(Error::Numeric("Schur iteration did not converge".into()))
}

/// Eigenvalues of a square complex matrix via the complex Schur form.
pub fn eigenvalues(m: &DMatrix<C64>) -> Result<Vec<C64>> {
    let n = m.nrows();
    if n == 1 {
        return Ok(vec![m[(0, 0)]]);
    }
    let (_q, t) = schur(m)?;
    let mut out = Vec::with_capacity(n);
    let mut k = 0;
    while k < n {
        // complex Schur is triangular, but guard against an unreduced 2x2 block
        let scale = t[(k, k)].norm()
            + if k + 1 < n {
                t[(k + 1, k + 1)].norm()
            } else {
                0.0
            };
        if k + 1 < n && t[(k + 1, k)].norm() > 1e-13 * scale.max(f64::MIN_POSITIVE) {
            let (a, b, c, d) = (t[(k, k)], t[(k, k + 1)], t[(k + 1, k)], t[(k + 1, k + 1)]);
            let half_tr = (a + d) * 0.5;
            let disc = ((a - d) * 0.5 * ((a - d) * 0.5) + b * c).sqrt();
            out.push(half_tr + disc);
            out.push(half_tr - disc);
            k += 2;
        } else {
            out.push(t[(k, k)]);
            k += 1;
        }
    }
    Ok(out)
}

/// Ascending eigenvalues and eigenvectors of a Hermitian matrix.
pub fn hermitian_eigen(m: &DMatrix<C64>) -> (Vec<f64>, DMatrix<C64>) {
    let herm = (m + m.adjoint()) * C64::new(0.5, 0.0);
    let eig = herm.symmetric_eigen();
    let mut idx: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    idx.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));
    let values = idx.iter().map(|&i| eig.eigenvalues[i]).collect();
    let cols: Vec<DVector<C64>> = idx
        .iter()
        .map(|&i| eig.eigenvectors.column(i).into_owned())
        .collect();
    (values, DMatrix::from_columns(&cols))
}

/// Completes a unit vector to a unitary matrix whose first column is a
/// unimodular multiple of it.
pub fn unitary_with_first_column(v: &DVector<C64>) -> CMatrix {
    CMatrix::wrap(householder_from(v))
}

/// LU factorization without pivoting, `m = L U` with unit lower `L`.
/// Fails when a pivot falls below `pivot_tol` times the largest entry.
pub fn lu_no_pivot(m: &DMatrix<C64>, pivot_tol: f64) -> Option<(DMatrix<C64>, DMatrix<C64>)> {
    let n = m.nrows();
    let scale = m.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let mut u = m.clone();
    let mut l = DMatrix::<C64>::identity(n, n);
    for k in 0..n {
        let pivot = u[(k, k)];
        if pivot.norm() <= pivot_tol * scale {
            return None;
        }
        for i in (k + 1)..n {
            let factor = u[(i, k)] / pivot;
            l[(i, k)] = factor;
            for j in k..n {
                let ukj = u[(k, j)];
                u[(i, j)] -= factor * ukj;
            }
            u[(i, k)] = ZERO;
        }
    }
    Some((l, u))
}
