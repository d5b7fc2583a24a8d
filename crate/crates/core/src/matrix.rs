//! Dense square complex matrices.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;

pub(crate) const ZERO: C64 = C64::new(0.0, 0.0);
pub(crate) const ONE: C64 = C64::new(1.0, 0.0);

/// Square `n x n` complex matrix with finite entries, `n >= 1`.
#[derive(Clone, PartialEq)]
pub struct CMatrix(DMatrix<C64>);

impl CMatrix {
    /// Builds a matrix from row-major entries.
    pub fn from_rows(n: usize, entries: &[C64]) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidInput(
                "matrix dimension must be at least 1".into(),
            ));
        }
        if entries.len() != n * n {
            return Err(Error::DimensionMismatch {
                expected: n * n,
                actual: entries.len(),
            });
        }
        Self::from_dmatrix(DMatrix::from_row_slice(n, n, entries))
    }

    /// Builds a matrix from real row-major entries.
    pub fn from_real_rows(n: usize, entries: &[f64]) -> Result<Self> {
        let c: Vec<C64> = entries.iter().map(|&x| C64::new(x, 0.0)).collect();
        Self::from_rows(n, &c)
    }

    /// Wraps an nalgebra matrix after checking it is square, non-empty and finite.
    pub fn from_dmatrix(m: DMatrix<C64>) -> Result<Self> {
        if m.nrows() != m.ncols() {
            return Err(Error::InvalidInput(format!(
                "matrix must be square, got {}x{}",
                m.nrows(),
                m.ncols()
            )));
        }
        if m.nrows() == 0 {
            return Err(Error::InvalidInput(
                "matrix dimension must be at least 1".into(),
            ));
        }
        if let Some(pos) = m
            .iter()
            .position(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            // nalgebra storage is column-major
            let (r, c) = (pos % m.nrows(), pos / m.nrows());
            return Err(Error::InvalidInput(format!(
                "non-finite entry at ({r}, {c})"
            )));
        }
        Ok(CMatrix(m))
    }

    /// Internal constructor for results of arithmetic on valid matrices.
    pub(crate) fn wrap(m: DMatrix<C64>) -> Self {
        debug_assert_eq!(m.nrows(), m.ncols());
        CMatrix(m)
    }

    pub fn from_fn(n: usize, f: impl FnMut(usize, usize) -> C64) -> Self {
        assert!(n > 0, "matrix dimension must be at least 1");
        CMatrix(DMatrix::from_fn(n, n, f))
    }

    pub fn zeros(n: usize) -> Self {
        Self::from_fn(n, |_, _| ZERO)
    }

    pub fn identity(n: usize) -> Self {
        Self::scalar(n, ONE)
    }

    /// `t * I`.
    pub fn scalar(n: usize, t: C64) -> Self {
        Self::from_fn(n, |i, j| if i == j { t } else { ZERO })
    }

    pub fn diag(values: &[C64]) -> Self {
        Self::from_fn(values.len(), |i, j| if i == j { values[i] } else { ZERO })
    }

    pub fn real_diag(values: &[f64]) -> Self {
        Self::from_fn(values.len(), |i, j| {
            if i == j {
                C64::new(values[i], 0.0)
            } else {
                ZERO
            }
        })
    }

    /// Matrix unit `E_ij`.
    pub fn unit(n: usize, i: usize, j: usize) -> Self {
        Self::from_fn(n, |r, c| if r == i && c == j { ONE } else { ZERO })
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    pub fn as_dmatrix(&self) -> &DMatrix<C64> {
        &self.0
    }

    pub fn into_dmatrix(self) -> DMatrix<C64> {
        self.0
    }

    /// Row-major copy of the entries.
    pub fn to_rows(&self) -> Vec<C64> {
        let n = self.dim();
        (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .map(|(i, j)| self.0[(i, j)])
            .collect()
    }

    pub fn adjoint(&self) -> Self {
        CMatrix(self.0.adjoint())
    }

    pub fn transpose(&self) -> Self {
        CMatrix(self.0.transpose())
    }

    /// Sum of the diagonal, accumulated from zero in index order.
    pub fn trace(&self) -> C64 {
        (0..self.dim()).fold(ZERO, |acc, k| acc + self.0[(k, k)])
    }

    pub fn diagonal(&self) -> Vec<C64> {
        (0..self.dim()).map(|k| self.0[(k, k)]).collect()
    }

    pub fn scale(&self, s: C64) -> Self {
        CMatrix(&self.0 * s)
    }

    pub fn scale_real(&self, s: f64) -> Self {
        self.scale(C64::new(s, 0.0))
    }

    /// `self + t * I`.
    pub fn shift(&self, t: C64) -> Self {
        let mut m = self.0.clone();
        for k in 0..self.dim() {
            m[(k, k)] += t;
        }
        CMatrix(m)
    }

    pub fn norm_fro(&self) -> f64 {
        self.0.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Spectral norm (largest singular value).
    pub fn norm2(&self) -> f64 {
        let svd = self.0.clone().svd(false, false);
        svd.singular_values.iter().cloned().fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Frobenius distance.
    pub fn dist(&self, other: &CMatrix) -> f64 {
        assert_eq!(self.dim(), other.dim());
        self.0
            .iter()
            .zip(other.0.iter())
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    /// True when every entry below the diagonal has modulus at most `tol`.
    pub fn is_upper_triangular(&self, tol: f64) -> bool {
        let n = self.dim();
        (0..n).all(|i| (0..i).all(|j| self.0[(i, j)].norm() <= tol))
    }

    /// Copy with everything below the diagonal set to zero.
    pub fn upper_triangle(&self) -> Self {
        CMatrix(self.0.upper_triangle())
    }

    pub fn determinant(&self) -> C64 {
        self.0.clone().determinant()
    }

    pub fn inverse(&self) -> Result<Self> {
        self.0
            .clone()
            .try_inverse()
            .map(CMatrix)
            .ok_or_else(|| Error::Numeric("matrix is singular".into()))
    }

    /// Integer power by repeated squaring.
    pub fn pow(&self, k: u32) -> Self {
        let mut result = CMatrix::identity(self.dim());
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = &result * &base;
            }
            base = &base * &base;
            k >>= 1;
        }
        result
    }

    /// `|| A^* A - I ||_F`.
    pub fn unitarity_defect(&self) -> f64 {
        (&self.adjoint() * self).dist(&CMatrix::identity(self.dim()))
    }

    /// `|| A - A^* ||_F`.
    pub fn hermitian_defect(&self) -> f64 {
        self.dist(&self.adjoint())
    }

    /// Column-major vectorization, `vec(A)`.
    pub fn vec(&self) -> Vec<C64> {
        self.0.iter().cloned().collect()
    }

    pub(crate) fn from_vec(n: usize, v: &[C64]) -> Self {
        CMatrix(DMatrix::from_column_slice(n, n, v))
    }
}

impl fmt::Debug for CMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.dim();
        writeln!(f, "CMatrix({n}x{n})[")?;
        for i in 0..n {
            write!(f, "  ")?;
            for j in 0..n {
                let z = self.0[(i, j)];
                write!(f, "{:+.6e}{:+.6e}i  ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl Index<(usize, usize)> for CMatrix {
    type Output = C64;
    fn index(&self, idx: (usize, usize)) -> &C64 {
        &self.0[idx]
    }
}

impl IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, idx: (usize, usize)) -> &mut C64 {
        &mut self.0[idx]
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $op:tt) => {
        impl<'a> $trait<&'a CMatrix> for &'a CMatrix {
            type Output = CMatrix;
            fn $method(self, rhs: &'a CMatrix) -> CMatrix {
                assert_eq!(self.dim(), rhs.dim(), "dimension mismatch");
                CMatrix(&self.0 $op &rhs.0)
            }
        }
        impl $trait<CMatrix> for CMatrix {
            type Output = CMatrix;
            fn $method(self, rhs: CMatrix) -> CMatrix {
                (&self).$method(&rhs)
            }
        }
    };
}

binop!(Add, add, +);
binop!(Sub, sub, -);
binop!(Mul, mul, *);

impl Neg for &CMatrix {
    type Output = CMatrix;
    fn neg(self) -> CMatrix {
        CMatrix(-&self.0)
    }
}

impl Mul<C64> for &CMatrix {
    type Output = CMatrix;
    fn mul(self, s: C64) -> CMatrix {
        self.scale(s)
    }
}

/// Commutator `[A, H] = AH - HA`.
pub fn commutator(a: &CMatrix, h: &CMatrix) -> CMatrix {
    &(a * h) - &(h * a)
}

pub fn c64(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

pub fn re(x: f64) -> C64 {
    C64::new(x, 0.0)
}
