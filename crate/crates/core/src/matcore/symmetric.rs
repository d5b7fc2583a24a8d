//! The symmetrization map `sigma`, its differential and companion matrices.
//!
//! Sign convention: `det(tI - A) = t^n + sum_j (-1)^j sigma_j(A) t^(n-j)`.

use crate::error::{Error, Result};
use crate::linalg;
use crate::matrix::{CMatrix, C64, ONE, ZERO};

/// A point `(sigma_1, ..., sigma_n)` of `C^n`.
#[derive(Debug, Clone, PartialEq)]
pub struct SymPoint {
    coords: Vec<C64>,
}

impl SymPoint {
    pub fn new(coords: Vec<C64>) -> Self {
        SymPoint { coords }
    }

    pub fn coords(&self) -> &[C64] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    /// Coefficients of `t^n + sum_j (-1)^j sigma_j t^(n-j)`, ascending in degree.
    pub fn char_poly(&self) -> Vec<C64> {
        let n = self.coords.len();
        let mut out = vec![ZERO; n + 1];
        out[n] = ONE;
        for (j, s) in self.coords.iter().enumerate() {
            let j = j + 1;
            let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
            out[n - j] = s * sign;
        }
        out
    }

    /// Roots of the associated monic polynomial.
    pub fn roots(&self) -> Result<Vec<C64>> {
        linalg::eigenvalues(companion(self).as_dmatrix())
    }

    /// Membership in the symmetrized polydisc: every root in the open unit disc.
    pub fn in_symmetrized_disc(&self) -> Result<bool> {
        Ok(self.roots()?.iter().all(|z| z.norm() < 1.0))
    }

    pub fn dist(&self, other: &SymPoint) -> f64 {
        self.coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    pub fn norm(&self) -> f64 {
        self.coords.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }
}

/// Elementary symmetric functions `(e_1, ..., e_n)` of a list of values.
pub fn elementary_symmetric(values: &[C64]) -> SymPoint {
    let n = values.len();
    // e[k] after processing a prefix; standard O(n^2) recurrence
    let mut e = vec![ZERO; n + 1];
    e[0] = ONE;
    for (i, &v) in values.iter().enumerate() {
        for k in (1..=i + 1).rev() {
            let prev = e[k - 1];
            e[k] += prev * v;
        }
    }
    SymPoint::new(e[1..].to_vec())
}

/// Coefficients of `det(tI - A)`, ascending in degree, from a Hessenberg
/// reduction and the standard last-column expansion recurrence.
pub fn char_poly(a: &CMatrix) -> Vec<C64> {
    let n = a.dim();
    let h = nalgebra::Hessenberg::new(a.as_dmatrix().clone()).h();
    // polys[k] = det(tI - H[0..k, 0..k]), ascending coefficients
    let mut polys: Vec<Vec<C64>> = Vec::with_capacity(n + 1);
    polys.push(vec![ONE]);
    for k in 1..=n {
        let prev = &polys[k - 1];
        let hkk = h[(k - 1, k - 1)];
        let mut p = vec![ZERO; k + 1];
        for (d, &c) in prev.iter().enumerate() {
            p[d + 1] += c;
            p[d] -= hkk * c;
        }
        // - sum_{i<k} h[i,k] * prod_{m=i+1}^{k} h[m,m-1] * p_{i-1}
        let mut sub = ONE;
        for i in (1..k).rev() {
            sub *= h[(i, i - 1)];
            let coeff = h[(i - 1, k - 1)] * sub;
            if coeff == ZERO {
                continue;
            }
            for (d, &c) in polys[i - 1].iter().enumerate() {
                p[d] -= coeff * c;
            }
        }
        polys.push(p);
    }
    polys.pop().expect("n >= 1")
}

/// `sigma(A)`: signed characteristic-polynomial coefficients.
pub fn sigma(a: &CMatrix) -> SymPoint {
    let n = a.dim();
    let p = char_poly(a);
    let coords = (1..=n)
        .map(|j| {
            let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
            p[n - j] * sign
        })
        .collect();
    SymPoint::new(coords)
}

/// Determinant of a small dense matrix (row-major buffer) by partial-pivot LU.
fn small_det(buf: &mut [C64], k: usize) -> C64 {
    let mut det = ONE;
    for col in 0..k {
        let mut piv = col;
        let mut best = buf[col * k + col].norm();
        for row in (col + 1)..k {
            let v = buf[row * k + col].norm();
            if v > best {
                best = v;
                piv = row;
            }
        }
        if best == 0.0 {
            return ZERO;
        }
        if piv != col {
            for j in 0..k {
                buf.swap(col * k + j, piv * k + j);
            }
            det = -det;
        }
        let p = buf[col * k + col];
        det *= p;
        for row in (col + 1)..k {
            let f = buf[row * k + col] / p;
            if f == ZERO {
                continue;
            }
            for j in col..k {
                let v = buf[col * k + j];
                buf[row * k + j] -= f * v;
            }
        }
    }
    det
}

/// Differential of `sigma` at `A` applied to `B`.
///
/// Coordinate `j` is the sum, over all `j x j` principal submatrices of `A`,
/// of the determinants obtained by replacing one column with the matching
/// entries of `B`. The first coordinate reduces to `tr(B)`.
pub fn sigma_pushforward(a: &CMatrix, b: &CMatrix) -> Result<SymPoint> {
    let n = a.dim();
    if b.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            actual: b.dim(),
        });
    }
    if n > 20 {
        return Err(Error::InvalidInput(format!(
            "dimension {n} too large for the minors formula"
        )));
    }
    let mut coords = vec![ZERO; n];
    coords[0] = b.trace();
    let mut idx = Vec::with_capacity(n);
    let mut buf = vec![ZERO; n * n];
    for mask in 1u32..(1u32 << n) {
        let j = mask.count_ones() as usize;
        if j < 2 {
            continue;
        }
        idx.clear();
        idx.extend((0..n).filter(|&i| mask & (1 << i) != 0));
        let mut total = ZERO;
        for replaced in 0..j {
            for (r, &ri) in idx.iter().enumerate() {
                for (c, &ci) in idx.iter().enumerate() {
                    buf[r * j + c] = if c == replaced {
                        b[(ri, ci)]
                    } else {
                        a[(ri, ci)]
                    };
                }
            }
            total += small_det(&mut buf[..j * j], j);
        }
        coords[j - 1] += total;
    }
    Ok(SymPoint::new(coords))
}

/// Companion matrix with subdiagonal ones and last column `(-a_0, ..., -a_{n-1})`,
/// where `a_j = (-1)^(n-j) sigma_(n-j)`.
pub fn companion(s: &SymPoint) -> CMatrix {
    let n = s.dim();
    let p = s.char_poly();
    CMatrix::from_fn(n, |i, j| {
        if j == n - 1 {
            -p[i]
        } else if i == j + 1 {
            ONE
        } else {
            ZERO
        }
    })
}
