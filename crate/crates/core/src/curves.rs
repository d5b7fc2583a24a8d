//! Entire matrix-valued curves with constant spectrum.

use crate::error::{Error, Result};
use crate::linalg;
use crate::matching::pair_values;
use crate::matcore::{
    matrix_exp, ordered_triangularize, sigma, sigma_pushforward, solve_conjugation, spectrum,
};
use crate::matrix::{commutator, CMatrix, C64, ONE, ZERO};
use crate::nonderog::{classify, ClassifyOptions};

pub const DEFAULT_SAMPLES: usize = 100;
pub const DEFAULT_RADIUS: f64 = 10.0;
/// Largest eigenvalue mismatch accepted when pairing two spectra.
pub const PAIRING_TOL: f64 = 1e-6;
/// Backward-error tolerance for the triangularizations behind the curves.
const TRIANGULARIZE_TOL: f64 = 1e-8;

/// How the diagonal of the triangular core moves along the curve.
#[derive(Debug, Clone, PartialEq)]
pub enum DiagonalPath {
    /// The diagonal of `start` throughout.
    Constant,
    /// Entry `j` follows `(k_j z + a_j) / (1 + conj(a_j) k_j z)`, where `a_j`
    /// is the diagonal of `start`.
    Mobius(Vec<C64>),
}

/// `W(z) T(z) W(z)^-1` with `W(z) = frame * prod_k exp((z / end_param) N_k)`
/// for nilpotent generators `N_k`, and `T(z)` upper triangular, moving
/// linearly off the diagonal from `start` (at 0) to `end` (at `end_param`).
#[derive(Debug, Clone, PartialEq)]
pub struct TriangularConjugation {
    pub frame: CMatrix,
    pub generators: Vec<CMatrix>,
    pub start: CMatrix,
    pub end: CMatrix,
    pub end_param: f64,
    pub diagonal: DiagonalPath,
}

impl TriangularConjugation {
    /// `W(z)` and its inverse.
    pub fn similarity(&self, z: C64) -> (CMatrix, CMatrix) {
        let s = z / self.end_param;
        let mut w = self.frame.clone();
        let mut w_inv = self.frame.adjoint();
        for g in &self.generators {
            w = &w * &nilpotent_exp(g, s);
            w_inv = &nilpotent_exp(g, -s) * &w_inv;
        }
        (w, w_inv)
    }

    /// Exact eigenvalues of the curve at `z`: the diagonal of the core.
    pub fn core_diagonal(&self, z: C64) -> Vec<C64> {
        let a = self.start.diagonal();
        match &self.diagonal {
            DiagonalPath::Constant => a,
            DiagonalPath::Mobius(kappa) => a
                .iter()
                .zip(kappa)
                .map(|(&a, &k)| (k * z + a) / (ONE + a.conj() * k * z))
                .collect(),
        }
    }

    /// The triangular core `T(z)`.
    pub fn core(&self, z: C64) -> CMatrix {
        let s = z / self.end_param;
        let mut t = &self.start + &(&(&self.end - &self.start) * s);
        for (j, d) in self.core_diagonal(z).into_iter().enumerate() {
            t[(j, j)] = d;
        }
        t
    }

    pub fn eval(&self, z: C64) -> CMatrix {
        let (w, w_inv) = self.similarity(z);
        &(&w * &self.core(z)) * &w_inv
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CurveKind {
    TriangularConjugation,
    ExpConjugation,
    MatrixPolynomial,
}

impl CurveKind {
    pub fn name(self) -> &'static str {
        match self {
            CurveKind::TriangularConjugation => "triangular_conjugation",
            CurveKind::ExpConjugation => "exp_conjugation",
            CurveKind::MatrixPolynomial => "matrix_polynomial",
        }
    }
}

/// A holomorphic curve `C -> M_n` in closed form.
#[derive(Debug, Clone, PartialEq)]
pub enum AnalyticCurve {
    TriangularConjugation(TriangularConjugation),
    /// `exp(-z Y) A exp(z Y)`.
    ExpConjugation {
        base: CMatrix,
        generator: CMatrix,
    },
    /// `sum_k z^k C_k`.
    MatrixPolynomial(Vec<CMatrix>),
}

impl AnalyticCurve {
    pub fn kind(&self) -> CurveKind {
        match self {
            AnalyticCurve::TriangularConjugation(_) => CurveKind::TriangularConjugation,
            AnalyticCurve::ExpConjugation { .. } => CurveKind::ExpConjugation,
            AnalyticCurve::MatrixPolynomial(_) => CurveKind::MatrixPolynomial,
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            AnalyticCurve::TriangularConjugation(t) => t.frame.dim(),
            AnalyticCurve::ExpConjugation { base, .. } => base.dim(),
            AnalyticCurve::MatrixPolynomial(c) => c[0].dim(),
        }
    }

    pub fn eval(&self, z: C64) -> CMatrix {
        match self {
            AnalyticCurve::TriangularConjugation(t) => t.eval(z),
            AnalyticCurve::ExpConjugation { base, generator } => {
                let fwd = matrix_exp(&(generator * z));
                let back = matrix_exp(&(generator * (-z)));
                &(&back * base) * &fwd
            }
            AnalyticCurve::MatrixPolynomial(coeffs) => {
                let n = coeffs[0].dim();
                coeffs
                    .iter()
                    .rev()
                    .fold(CMatrix::zeros(n), |acc, c| &(&acc * z) + c)
            }
        }
    }

    /// Central difference `(c(z + h) - c(z - h)) / 2h`.
    pub fn derivative_fd(&self, z: C64, h: f64) -> CMatrix {
        let hc = C64::new(h, 0.0);
        (&self.eval(z + hc) - &self.eval(z - hc)).scale_real(0.5 / h)
    }
}

/// `exp(s N)` for nilpotent `N`, as a finite sum.
fn nilpotent_exp(n: &CMatrix, s: C64) -> CMatrix {
    let dim = n.dim();
    let sn = n * s;
    let mut term = CMatrix::identity(dim);
    let mut acc = term.clone();
    for k in 1..dim {
        term = (&term * &sn).scale_real(1.0 / k as f64);
        acc = &acc + &term;
    }
    acc
}

/// `log(X)` for unipotent `X`, as a finite sum.
fn unipotent_log(x: &CMatrix) -> CMatrix {
    let dim = x.dim();
    let e = x - &CMatrix::identity(dim);
    let mut power = e.clone();
    let mut acc = CMatrix::zeros(dim);
    for k in 1..dim {
        let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
        acc = &acc + &power.scale_real(sign / k as f64);
        power = &power * &e;
    }
    acc
}

/// Nilpotent generators joining two unitary frames.
pub(crate) struct FramePath {
    pub generators: Vec<CMatrix>,
    /// Upper triangular `R` with `U W(1) R = V`, where `W(1)` is the product
    /// of the generator exponentials.
    pub upper: CMatrix,
    pub upper_inv: CMatrix,
}

/// Writes `U^* V = X L R` with `X` unit upper, `L` unit lower and `R` upper
/// triangular, so that `U X L` reaches `V R^-1` along unipotent paths.
/// `X = I` works for generic frames; a few fixed shears are tried when the
/// plain LU factorization is badly conditioned, and the best-conditioned
/// factorization wins.
pub(crate) fn frame_path(u: &CMatrix, v: &CMatrix) -> Result<FramePath> {
    let n = u.dim();
    let m = &u.adjoint() * v;
    let shear = CMatrix::from_fn(n, |i, j| {
        if j > i {
            C64::from_polar(1.0, 0.7 * (j - i) as f64)
        } else {
            ZERO
        }
    });
    let mut best: Option<(f64, FramePath)> = None;
    for c in [0.0, 0.5, 1.0, 2.0, 4.0] {
        let x_gen = shear.scale_real(c);
        let x_inv = nilpotent_exp(&x_gen, -ONE);
        let target = &x_inv * &m;
        let Some((l, r)) = linalg::lu_no_pivot(target.as_dmatrix(), 1e-10) else {
            continue;
        };
        let l = CMatrix::wrap(l);
        let r = CMatrix::wrap(r);
        let Ok(r_inv) = r.inverse() else { continue };
        let l_gen = unipotent_log(&l);
        let score = x_gen.norm_fro() + l_gen.norm_fro() + r.norm2() * r_inv.norm2();
        if !score.is_finite() {
            continue;
        }
        let generators: Vec<CMatrix> = [x_gen, l_gen]
            .into_iter()
            .filter(|g| g.max_abs() > 0.0)
            .collect();
        let better = best.as_ref().is_none_or(|(s, _)| score < *s);
        if better {
            best = Some((
                score,
                FramePath {
                    generators,
                    upper: r,
                    upper_inv: r_inv,
                },
            ));
        }
        if c == 0.0 && score < 1e3 {
            break;
        }
    }
    best.map(|(_, p)| p)
        .ok_or_else(|| Error::Numeric("no well-conditioned frame path found".into()))
}

fn check_same_dim(a: &CMatrix, b: &CMatrix) -> Result<()> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            actual: b.dim(),
        });
    }
    Ok(())
}

/// Curve through `A` (at 0) and `B` (at 1) whose spectrum is constant.
///
/// Both matrices are triangularized with matching diagonal order, the
/// unitary frames are joined by nilpotent exponentials and the triangular
/// parts are interpolated linearly above the diagonal.
pub fn iso_spectral_curve(a: &CMatrix, b: &CMatrix) -> Result<AnalyticCurve> {
    check_same_dim(a, b)?;
    let sa = spectrum(a)?;
    let sb = spectrum(b)?;
    let (gap, perm) = pair_values(sa.values(), sb.values());
    let scale = 1.0 + sa.radius().max(sb.radius());
    if gap > PAIRING_TOL * scale {
        return Err(Error::Precondition(format!(
            "spectra differ (largest mismatch {gap:.3e} after pairing)"
        )));
    }
    let order_b: Vec<C64> = perm.iter().map(|&j| sb.values()[j]).collect();
    let ta = ordered_triangularize(a, sa.values(), TRIANGULARIZE_TOL)?;
    let tb = ordered_triangularize(b, &order_b, TRIANGULARIZE_TOL)?;
    let path = frame_path(&ta.u, &tb.u)?;
    let mut end = (&(&path.upper * &tb.t) * &path.upper_inv).upper_triangle();
    for (j, d) in ta.t.diagonal().into_iter().enumerate() {
        end[(j, j)] = d;
    }
    Ok(AnalyticCurve::TriangularConjugation(
        TriangularConjugation {
            frame: ta.u,
            generators: path.generators,
            start: ta.t,
            end,
            end_param: 1.0,
            diagonal: DiagonalPath::Constant,
        },
    ))
}

fn binomial(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// `A` is a multiple of the identity to relative tolerance `tol`.
pub fn is_scalar(a: &CMatrix, tol: f64) -> bool {
    let tau = a.trace() / a.dim() as f64;
    a.shift(-tau).norm2() <= tol * a.norm2()
}

/// All coefficients of the characteristic polynomial of `B` vanish, scaled by
/// the matching power of `|B|`.
pub fn is_nilpotent(b: &CMatrix, tol: f64) -> bool {
    let n = b.dim();
    let norm = b.norm2();
    sigma(b)
        .coords()
        .iter()
        .enumerate()
        .all(|(k, s)| s.norm() <= tol * binomial(n, k + 1) * norm.powi(k as i32 + 1))
}

/// `sigma_*(A)(B) = 0`, coordinate `j` compared with `C(n, j) j |A|^(j-1) |B|`.
pub fn pushforward_vanishes(a: &CMatrix, b: &CMatrix, tol: f64) -> Result<bool> {
    let n = a.dim();
    let d = sigma_pushforward(a, b)?;
    let (na, nb) = (a.norm2().max(1.0), b.norm2());
    Ok(d.coords().iter().enumerate().all(|(k, c)| {
        let j = k + 1;
        c.norm() <= tol * binomial(n, j) * j as f64 * na.powi(k as i32) * nb.max(f64::MIN_POSITIVE)
    }))
}

enum Direction {
    /// Scalar base point, nilpotent direction.
    Scalar,
    /// Non-derogatory base point with `AY - YA = B`.
    NonDerogatory(CMatrix),
}

fn classify_direction(a: &CMatrix, b: &CMatrix, tol: f64) -> Result<Direction> {
    check_same_dim(a, b)?;
    if is_scalar(a, tol) {
        if is_nilpotent(b, tol) {
            return Ok(Direction::Scalar);
        }
        return Err(Error::Unsupported(
            "scalar base point needs a nilpotent direction".into(),
        ));
    }
    let report = classify(
        a,
        ClassifyOptions {
            tol,
            ..Default::default()
        },
    )?;
    if !report.verdict {
        return Err(Error::Unsupported(
            "base point is derogatory and not scalar".into(),
        ));
    }
    if !pushforward_vanishes(a, b, tol)? {
        return Err(Error::Unsupported(
            "direction changes the characteristic polynomial to first order".into(),
        ));
    }
    Ok(Direction::NonDerogatory(solve_conjugation(a, b, tol)?))
}

/// Isospectral curve with value `A` and derivative `B` at 0.
pub fn zero_metric_curve(a: &CMatrix, b: &CMatrix, tol: f64) -> Result<AnalyticCurve> {
    match classify_direction(a, b, tol)? {
        Direction::Scalar => Ok(AnalyticCurve::MatrixPolynomial(vec![a.clone(), b.clone()])),
        Direction::NonDerogatory(y) => Ok(AnalyticCurve::ExpConjugation {
            base: a.clone(),
            generator: y,
        }),
    }
}

/// Second Taylor coefficient of `exp(-zY) A exp(zY)`, namely `[[A, Y], Y] / 2`.
pub fn second_taylor_coefficient(a: &CMatrix, y: &CMatrix) -> CMatrix {
    commutator(&commutator(a, y), y).scale_real(0.5)
}

/// `c11 d22 + c22 d11 - c12 d21 - c21 d12`, the mixed term of `det(C + D)`.
fn mixed_det(c: &CMatrix, d: &CMatrix) -> C64 {
    c[(0, 0)] * d[(1, 1)] + c[(1, 1)] * d[(0, 0)] - c[(0, 1)] * d[(1, 0)] - c[(1, 0)] * d[(0, 1)]
}

/// Quadratic isospectral curve for `n = 2` together with the nonconstant
/// coefficients of its trace and determinant.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadraticWitness {
    pub curve: AnalyticCurve,
    /// Coefficients of `z` and `z^2` in `tr p(z)`.
    pub trace_coeffs: [C64; 2],
    /// Coefficients of `z, ..., z^4` in `det p(z)`.
    pub det_coeffs: [C64; 4],
}

impl QuadraticWitness {
    pub fn max_variation(&self) -> f64 {
        self.trace_coeffs
            .iter()
            .chain(&self.det_coeffs)
            .map(|c| c.norm())
            .fold(0.0, f64::max)
    }
}

/// Smallest-modulus root of `c0 + c1 x + c2 x^2`, with `x = 0` when the
/// polynomial vanishes identically.
fn small_root(c0: C64, c1: C64, c2: C64, tol: f64) -> Option<C64> {
    let scale = c0.norm().max(c1.norm()).max(c2.norm());
    if scale == 0.0 || c0.norm() <= tol * scale {
        return Some(ZERO);
    }
    if c2.norm() > tol * scale {
        let disc = (c1 * c1 - c2 * c0 * 4.0).sqrt();
        let r1 = (-c1 + disc) / (c2 * 2.0);
        let r2 = (-c1 - disc) / (c2 * 2.0);
        return Some(if r1.norm() <= r2.norm() { r1 } else { r2 });
    }
    if c1.norm() > tol * scale {
        return Some(-c0 / c1);
    }
    None
}

/// `p(z) = A + zB + z^2 psi` with constant spectrum, for `2 x 2` matrices.
///
/// In the non-derogatory case `psi = [B, Y] / 2` is the second Taylor
/// coefficient of `exp(-zY) A exp(zY)`. Any `Y + c A` solves the same
/// commutator equation; `c` is chosen so that `det psi = 0`, the only
/// condition on the quartic coefficient that the exponential curve does not
/// already guarantee.
pub fn quadratic_witness_2x2(a: &CMatrix, b: &CMatrix, tol: f64) -> Result<QuadraticWitness> {
    if a.dim() != 2 {
        return Err(Error::Unsupported(format!(
            "quadratic witness needs 2x2 input, got {}x{}",
            a.dim(),
            a.dim()
        )));
    }
    let psi = match classify_direction(a, b, tol)? {
        Direction::Scalar => CMatrix::zeros(2),
        Direction::NonDerogatory(y) => {
            let base = commutator(b, &y).scale_real(0.5);
            let step = commutator(b, a).scale_real(0.5);
            let c = small_root(
                base.determinant(),
                mixed_det(&base, &step),
                step.determinant(),
                1e-12,
            )
            .ok_or_else(|| Error::Numeric("no representative with singular psi".into()))?;
            &base + &(&step * c)
        }
    };
    let trace_coeffs = [b.trace(), psi.trace()];
    let det_coeffs = [
        mixed_det(a, b),
        b.determinant() + mixed_det(a, &psi),
        mixed_det(b, &psi),
        psi.determinant(),
    ];
    let coeffs = if psi.max_abs() == 0.0 {
        vec![a.clone(), b.clone()]
    } else {
        vec![a.clone(), b.clone(), psi]
    };
    let witness = QuadraticWitness {
        curve: AnalyticCurve::MatrixPolynomial(coeffs),
        trace_coeffs,
        det_coeffs,
    };
    let scale = (1.0 + a.norm2() + b.norm2()).powi(4);
    if witness.max_variation() > 1e-10 * scale {
        return Err(Error::Internal(format!(
            "quadratic witness varies the spectrum (coefficient {:.3e})",
            witness.max_variation()
        )));
    }
    Ok(witness)
}

/// Outcome of sampling a curve's spectrum.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumCheck {
    pub samples: usize,
    pub radius: f64,
    pub tol: f64,
    pub max_deviation: f64,
    pub worst_point: C64,
    pub passed: bool,
}

/// Deterministic points filling the disc of the given radius (a sunflower
/// spiral whose last point lies on the boundary).
pub fn sample_points(samples: usize, radius: f64) -> Vec<C64> {
    let golden = std::f64::consts::PI * (3.0 - 5f64.sqrt());
    (0..samples)
        .map(|k| {
            let r = radius * ((k + 1) as f64 / samples as f64).sqrt();
            C64::from_polar(r, golden * k as f64)
        })
        .collect()
}

/// Largest eigenvalue deviation from `expected` over sample points with
/// `|z| <= radius`, after optimal pairing at each point.
pub fn verify_constant_spectrum(
    curve: &AnalyticCurve,
    expected: &[C64],
    samples: usize,
    radius: f64,
    tol: f64,
) -> Result<SpectrumCheck> {
    let mut max_deviation = 0.0;
    let mut worst_point = ZERO;
    for z in sample_points(samples, radius) {
        let values = spectrum(&curve.eval(z))?;
        let (dev, _) = pair_values(values.values(), expected);
        if dev > max_deviation || dev.is_nan() {
            max_deviation = dev;
            worst_point = z;
        }
    }
    Ok(SpectrumCheck {
        samples,
        radius,
        tol,
        max_deviation,
        worst_point,
        passed: max_deviation <= tol,
    })
}
