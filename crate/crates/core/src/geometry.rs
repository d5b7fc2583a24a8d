//! Mobius distance, invariant distances at scalar base points, the
//! eigenvalue-matching upper bound with explicit analytic discs, and the
//! convex hull of the spectral ball.

use nalgebra::DVector;

use crate::curves::{frame_path, AnalyticCurve, DiagonalPath, TriangularConjugation};
use crate::error::{Error, Result};
use crate::linalg;
use crate::matching::bottleneck_assignment;
use crate::matcore::{ordered_triangularize, spectrum, Spectrum};
use crate::matrix::{CMatrix, C64, ONE, ZERO};

/// Angles and radii of the polar grid used to certify discs.
pub const GRID_ANGLES: usize = 64;
pub const GRID_RADII: usize = 16;
const TRIANGULARIZE_TOL: f64 = 1e-8;

fn check_in_disc(z: C64, what: &str) -> Result<()> {
    if !(z.norm() < 1.0) {
        return Err(Error::Domain(format!(
            "{what} = {z} is not in the open unit disc"
        )));
    }
    Ok(())
}

fn check_in_ball(b: &CMatrix, what: &str) -> Result<Spectrum> {
    let s = spectrum(b)?;
    if !s.in_unit_disc() {
        return Err(Error::Domain(format!(
            "{what} has spectral radius {} >= 1",
            s.radius()
        )));
    }
    Ok(s)
}

/// Pseudo-hyperbolic distance `|(z - w) / (1 - z conj(w))|`.
pub fn mobius(z: C64, w: C64) -> Result<f64> {
    check_in_disc(z, "z")?;
    check_in_disc(w, "w")?;
    Ok(mobius_unchecked(z, w))
}

fn mobius_unchecked(z: C64, w: C64) -> f64 {
    ((z - w) / (ONE - z * w.conj())).norm()
}

/// Disc automorphism sending `a` to 0.
fn mobius_shift(a: C64, z: C64) -> C64 {
    (z - a) / (ONE - a.conj() * z)
}

/// Lempert function between `tI` and `B`: the largest Mobius distance from
/// `t` to an eigenvalue of `B`.
pub fn lempert_scalar_base(t: C64, b: &CMatrix) -> Result<f64> {
    check_in_disc(t, "t")?;
    let s = check_in_ball(b, "B")?;
    Ok(s.values()
        .iter()
        .map(|&l| mobius_unchecked(t, l))
        .fold(0.0, f64::max))
}

/// Kobayashi-Royden pseudometric at `tI` in direction `B`: `r(B) / (1 - |t|^2)`.
pub fn kobayashi_scalar_base(t: C64, b: &CMatrix) -> Result<f64> {
    check_in_disc(t, "t")?;
    Ok(spectrum(b)?.radius() / (1.0 - t.norm_sqr()))
}

/// Optimal eigenvalue pairing: `value = max_j m(a_j, b_perm[j])`.
#[derive(Debug, Clone, PartialEq)]
pub struct Bottleneck {
    pub value: f64,
    pub permutation: Vec<usize>,
}

/// Minimum over pairings of the largest Mobius distance between paired
/// eigenvalues.
pub fn bottleneck_minimax(a: &Spectrum, b: &Spectrum) -> Result<Bottleneck> {
    if a.len() != b.len() {
        return Err(Error::InvalidInput(format!(
            "spectra have different sizes {} and {}",
            a.len(),
            b.len()
        )));
    }
    for &z in a.values().iter().chain(b.values()) {
        check_in_disc(z, "eigenvalue")?;
    }
    let costs: Vec<Vec<f64>> = a
        .values()
        .iter()
        .map(|&x| b.values().iter().map(|&y| mobius_unchecked(x, y)).collect())
        .collect();
    let (value, permutation) = bottleneck_assignment(&costs);
    Ok(Bottleneck { value, permutation })
}

/// Spectral radii observed on the polar grid.
#[derive(Debug, Clone, PartialEq)]
pub struct GridCertificate {
    pub angles: usize,
    pub radii: usize,
    /// Largest spectral radius of the evaluated matrices.
    pub max_spectral_radius: f64,
    /// Largest modulus of the exact eigenvalue functions over the closed disc.
    pub core_bound: f64,
}

/// Analytic disc through `A` (at 0) and `B` (at `s1`).
#[derive(Debug, Clone)]
pub struct DiscWitness {
    pub curve: AnalyticCurve,
    pub base_point: C64,
    pub target_point: C64,
    pub bottleneck: f64,
    pub start_residual: f64,
    pub end_residual: f64,
    pub grid: GridCertificate,
}

impl DiscWitness {
    /// Endpoints reproduced to `tol` and the disc stays in the spectral ball.
    pub fn is_valid(&self, tol: f64) -> bool {
        self.start_residual <= tol
            && self.end_residual <= tol
            && self.grid.max_spectral_radius < 1.0
            && self.grid.core_bound < 1.0
    }
}

/// Builds a disc `D -> Omega_n` with `phi(0) = A` and `phi(s1) = B`,
/// showing that the Lempert function at `(A, B)` is at most `s1`.
///
/// Eigenvalues are paired optimally, both matrices are triangularized in that
/// order, each diagonal entry follows a disc automorphism and the
/// off-diagonal part moves linearly.
pub fn upper_bound_disc(a: &CMatrix, b: &CMatrix, s1: f64) -> Result<DiscWitness> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            actual: b.dim(),
        });
    }
    let sa = check_in_ball(a, "A")?;
    let sb = check_in_ball(b, "B")?;
    let bn = bottleneck_minimax(&sa, &sb)?;
    if !(s1 > bn.value && s1 < 1.0) {
        return Err(Error::Infeasible(format!(
            "s1 = {s1} must lie strictly between the matching value {} and 1",
            bn.value
        )));
    }
    let order_b: Vec<C64> = bn.permutation.iter().map(|&j| sb.values()[j]).collect();
    let ta = ordered_triangularize(a, sa.values(), TRIANGULARIZE_TOL)?;
    let tb = ordered_triangularize(b, &order_b, TRIANGULARIZE_TOL)?;
    let path = frame_path(&ta.u, &tb.u)?;
    let mut end = (&(&path.upper * &tb.t) * &path.upper_inv).upper_triangle();
    let target_diag = tb.t.diagonal();
    for (j, &d) in target_diag.iter().enumerate() {
        end[(j, j)] = d;
    }
    let start_diag = ta.t.diagonal();
    let kappa: Vec<C64> = start_diag
        .iter()
        .zip(&target_diag)
        .map(|(&x, &y)| mobius_shift(x, y) / s1)
        .collect();
    if let Some(k) = kappa.iter().find(|k| k.norm() >= 1.0) {
        return Err(Error::Infeasible(format!(
            "diagonal disc slope {} is not below 1",
            k.norm()
        )));
    }
    let core_bound = start_diag
        .iter()
        .zip(&kappa)
        .map(|(x, k)| (k.norm() + x.norm()) / (1.0 + k.norm() * x.norm()))
        .fold(0.0, f64::max);
    let tc = TriangularConjugation {
        frame: ta.u,
        generators: path.generators,
        start: ta.t,
        end,
        end_param: s1,
        diagonal: DiagonalPath::Mobius(kappa),
    };
    let curve = AnalyticCurve::TriangularConjugation(tc);
    let target_point = C64::new(s1, 0.0);
    let start_residual = curve.eval(ZERO).dist(a);
    let end_residual = curve.eval(target_point).dist(b);
    let mut max_spectral_radius: f64 = 0.0;
    for i in 0..GRID_RADII {
        let r = i as f64 / (GRID_RADII - 1) as f64;
        for k in 0..GRID_ANGLES {
            let theta = std::f64::consts::TAU * k as f64 / GRID_ANGLES as f64;
            let z = C64::from_polar(r, theta);
            max_spectral_radius = max_spectral_radius.max(spectrum(&curve.eval(z))?.radius());
            if i == 0 {
                break;
            }
        }
    }
    Ok(DiscWitness {
        curve,
        base_point: ZERO,
        target_point,
        bottleneck: bn.value,
        start_residual,
        end_residual,
        grid: GridCertificate {
            angles: GRID_ANGLES,
            radii: GRID_RADII,
            max_spectral_radius,
            core_bound,
        },
    })
}

/// Minkowski function of the convex hull of the spectral ball, `|tr A| / n`,
/// and whether `A` lies in that hull.
pub fn hull_membership(a: &CMatrix) -> (f64, bool) {
    let h = a.trace().norm() / a.dim() as f64;
    (h, h < 1.0)
}

/// `A = w_1 T_1 + w_2 T_2` with both terms in the spectral ball.
#[derive(Debug, Clone)]
pub struct HullWitness {
    pub weights: [f64; 2],
    pub terms: [CMatrix; 2],
    /// Unitary `S` such that `S^* (A - tau I) S` has zero diagonal.
    pub similarity: CMatrix,
}

impl HullWitness {
    pub fn reconstruct(&self) -> CMatrix {
        &self.terms[0].scale_real(self.weights[0]) + &self.terms[1].scale_real(self.weights[1])
    }
}

/// Unit vector `x` in `C^2` with `x^* C x = target`, for `target` on the
/// segment between the diagonal entries of the `2 x 2` matrix `C`.
fn compress_2x2(c: [[C64; 2]; 2], target: C64) -> [C64; 2] {
    let (alpha, delta) = (c[0][0], c[1][1]);
    let span = delta - alpha;
    if span.norm() == 0.0 {
        return [ONE, ZERO];
    }
    // rotate and scale so that the diagonal becomes (-s, 1 - s) with target 0
    let rot = span.conj() / span.norm_sqr();
    let s = ((target - alpha) * rot).re.clamp(0.0, 1.0);
    let (b, g) = (c[0][1] * rot, c[1][0] * rot);
    // choose the relative phase so that b e^{i phi} + g e^{-i phi} is real
    let p = b.im + g.im;
    let q = b.re - g.re;
    let phi = if p == 0.0 && q == 0.0 {
        0.0
    } else {
        (-p).atan2(q)
    };
    let gamma = (b * C64::from_polar(1.0, phi) + g * C64::from_polar(1.0, -phi)).re;
    // gamma sin(2 theta) - cos(2 theta) = 2s - 1
    let radius = (1.0 + gamma * gamma).sqrt();
    let shift = 1.0f64.atan2(gamma);
    let theta = 0.5 * (shift + ((2.0 * s - 1.0) / radius).clamp(-1.0, 1.0).asin());
    [
        C64::new(theta.cos(), 0.0),
        C64::from_polar(theta.sin(), phi),
    ]
}

fn quad_form(m: &CMatrix, x: &DVector<C64>) -> C64 {
    x.dotc(&(m.as_dmatrix() * x))
}

/// Restricts `m` to the span of orthonormal `u, v` and finds a unit vector
/// there with quadratic form `target`.
fn compress_pair(m: &CMatrix, u: &DVector<C64>, v: &DVector<C64>, target: C64) -> DVector<C64> {
    let mm = m.as_dmatrix();
    let c = [
        [u.dotc(&(mm * u)), u.dotc(&(mm * v))],
        [v.dotc(&(mm * u)), v.dotc(&(mm * v))],
    ];
    let [x0, x1] = compress_2x2(c, target);
    u * x0 + v * x1
}

/// Unit vector with `x^* M x = 0` for a trace-free `M`: zero lies in the
/// convex hull of the diagonal, hence on a segment between two diagonal
/// entries or inside a triangle of three.
fn null_direction(m: &CMatrix) -> DVector<C64> {
    let n = m.dim();
    let d = m.diagonal();
    let scale = m.max_abs().max(f64::MIN_POSITIVE);
    let e = |i: usize| {
        let mut v = DVector::<C64>::zeros(n);
        v[i] = ONE;
        v
    };
    if let Some(i) = (0..n).find(|&i| d[i].norm() <= 1e-15 * scale) {
        return e(i);
    }
    // closest approach of a segment [d_i, d_j] to the origin
    let mut best: Option<(f64, usize, usize, C64)> = None;
    for i in 0..n {
        for j in (i + 1)..n {
            let span = d[j] - d[i];
            let t = if span.norm_sqr() > 0.0 {
                (-(d[i] * span.conj()).re / span.norm_sqr()).clamp(0.0, 1.0)
            } else {
                0.0
            };
            let p = d[i] + span * t;
            if best.is_none_or(|b| p.norm() < b.0) {
                best = Some((p.norm(), i, j, p));
            }
        }
    }
    let (dist, i, j, p) = best.expect("n >= 2 for a trace-free matrix with nonzero diagonal");
    if dist <= 1e-14 * scale {
        return compress_pair(m, &e(i), &e(j), p);
    }
    for i in 0..n {
        for j in (i + 1)..n {
            for k in 0..n {
                if k == i || k == j {
                    continue;
                }
                // (1 - s) d_i + s d_j + mu d_k = 0 with mu >= 0, s in [0, 1]
                let (a1, a2) = (d[j] - d[i], d[k]);
                let det = a1.re * a2.im - a1.im * a2.re;
                if det.abs() <= 1e-14 * scale * scale {
                    continue;
                }
                let rhs = -d[i];
                let s = (rhs.re * a2.im - rhs.im * a2.re) / det;
                let mu = (a1.re * rhs.im - a1.im * rhs.re) / det;
                if !(-1e-12..=1.0 + 1e-12).contains(&s) || mu < -1e-12 {
                    continue;
                }
                let p = d[i] + (d[j] - d[i]) * s.clamp(0.0, 1.0);
                let y = compress_pair(m, &e(i), &e(j), p);
                return compress_pair(m, &y, &e(k), ZERO);
            }
        }
    }
    // numerically degenerate configuration: fall back to the closest segment
    compress_pair(m, &e(i), &e(j), p)
}

/// Unitary `S` such that `S^* M S` has zero diagonal, for trace-free `M`.
pub fn zero_diagonal_similarity(m: &CMatrix) -> Result<CMatrix> {
    let n = m.dim();
    let tr = m.trace().norm();
    if tr > 1e-12 * (1.0 + m.norm_fro()) {
        return Err(Error::Precondition(format!(
            "matrix has nonzero trace {tr:.3e}"
        )));
    }
    let mut w = m.clone();
    let mut s = CMatrix::identity(n);
    for k in 0..n.saturating_sub(1) {
        let size = n - k;
        let block = CMatrix::from_fn(size, |i, j| w[(k + i, k + j)]);
        let x = null_direction(&block);
        let residual = quad_form(&block, &x).norm();
        if residual > 1e-9 * (1.0 + block.norm_fro()) {
            return Err(Error::Numeric(format!(
                "no zero of the quadratic form found (residual {residual:.3e})"
            )));
        }
        let h = linalg::householder_from(&x);
        let mut full = CMatrix::identity(n);
        for i in 0..size {
            for j in 0..size {
                full[(k + i, k + j)] = h[(i, j)];
            }
        }
        w = &(&full.adjoint() * &w) * &full;
        s = &s * &full;
    }
    Ok(s)
}

/// Writes a hull member as the midpoint of two matrices with the single
/// eigenvalue `tr(A)/n`.
pub fn hull_witness(a: &CMatrix) -> Result<HullWitness> {
    let n = a.dim();
    let (h, inside) = hull_membership(a);
    if !inside {
        return Err(Error::Domain(format!(
            "|tr A| / n = {h} is not below 1, so A is outside the convex hull"
        )));
    }
    let tau = a.trace() / n as f64;
    let centered = a.shift(-tau);
    let s = zero_diagonal_similarity(&centered)?;
    let z = &(&s.adjoint() * &centered) * &s;
    let upper = CMatrix::from_fn(n, |i, j| if j > i { z[(i, j)] * 2.0 } else { ZERO });
    let lower = CMatrix::from_fn(n, |i, j| if j < i { z[(i, j)] * 2.0 } else { ZERO });
    let conj = |t: CMatrix| &(&s * &t.shift(tau)) * &s.adjoint();
    Ok(HullWitness {
        weights: [0.5, 0.5],
        terms: [conj(upper), conj(lower)],
        similarity: s,
    })
}
