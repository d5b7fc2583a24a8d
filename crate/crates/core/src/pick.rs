//! Pick matrices, degenerate Nevanlinna-Pick interpolation, and the
//! boundary search that produces Blaschke products through points placed
//! symmetrically on a circle.

use std::f64::consts::TAU;

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::linalg;
use crate::matcore::{elementary_symmetric, spectrum, SymPoint};
use crate::matrix::{CMatrix, C64, ONE, ZERO};
use crate::poly;

/// Grid step of the descending radius scan.
pub const SCAN_STEP: f64 = 1e-2;
/// Width of the final bisection bracket.
pub const BISECTION_TOL: f64 = 1e-12;
/// Largest interpolation error accepted for a recovered interpolant.
pub const INTERPOLATION_TOL: f64 = 1e-6;
/// Eigenvalues closer than this (relative to `1 + r(B)`) are treated as equal.
pub const EQUAL_EIGENVALUE_TOL: f64 = 1e-6;

/// Interpolation data `f(nodes[j]) = targets[j]`.
#[derive(Debug, Clone, PartialEq)]
pub struct PickProblem {
    nodes: Vec<C64>,
    targets: Vec<C64>,
}

impl PickProblem {
    pub fn new(nodes: Vec<C64>, targets: Vec<C64>) -> Result<Self> {
        if nodes.len() != targets.len() {
            return Err(Error::DimensionMismatch {
                expected: nodes.len(),
                actual: targets.len(),
            });
        }
        if nodes.is_empty() {
            return Err(Error::InvalidInput("no interpolation nodes".into()));
        }
        for (j, x) in nodes.iter().enumerate() {
            if !(x.norm() < 1.0) {
                return Err(Error::Domain(format!(
                    "node {j} = {x} is not in the unit disc"
                )));
            }
            if let Some(k) = nodes[..j].iter().position(|y| y == x) {
                return Err(Error::InvalidInput(format!("nodes {k} and {j} coincide")));
            }
        }
        Ok(PickProblem { nodes, targets })
    }

    pub fn nodes(&self) -> &[C64] {
        &self.nodes
    }

    pub fn targets(&self) -> &[C64] {
        &self.targets
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }
}

/// `[(1 - w_j conj(w_k)) / (1 - x_j conj(x_k))]`.
pub fn pick_matrix(p: &PickProblem) -> CMatrix {
    let (x, w) = (&p.nodes, &p.targets);
    CMatrix::from_fn(p.len(), |j, k| {
        (ONE - w[j] * w[k].conj()) / (ONE - x[j] * x[k].conj())
    })
}

/// Smallest eigenvalue at least `-tol (1 + largest)`.
pub fn is_psd(m: &CMatrix, tol: f64) -> Result<bool> {
    let defect = m.hermitian_defect();
    if defect > tol * (1.0 + m.norm_fro()) {
        return Err(Error::InvalidInput(format!(
            "matrix is not Hermitian (defect {defect:.3e})"
        )));
    }
    let (values, _) = linalg::hermitian_eigen(m.as_dmatrix());
    let (min, max) = (values[0], values[values.len() - 1]);
    Ok(min >= -tol * (1.0 + max.max(0.0)))
}

/// `unimodular * prod (z - a) / (1 - conj(a) z)`.
#[derive(Debug, Clone, PartialEq)]
pub struct BlaschkeProduct {
    pub unimodular: C64,
    pub zeros: Vec<C64>,
}

impl BlaschkeProduct {
    pub fn new(unimodular: C64, zeros: Vec<C64>) -> Result<Self> {
        if (unimodular.norm() - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidInput(format!(
                "constant factor has modulus {}",
                unimodular.norm()
            )));
        }
        if let Some(a) = zeros.iter().find(|a| !(a.norm() < 1.0)) {
            return Err(Error::InvalidInput(format!(
                "zero {a} is not in the unit disc"
            )));
        }
        Ok(BlaschkeProduct { unimodular, zeros })
    }

    /// `z^n` times a constant.
    pub fn monomial(unimodular: C64, n: usize) -> Self {
        BlaschkeProduct {
            unimodular,
            zeros: vec![ZERO; n],
        }
    }

    pub fn order(&self) -> usize {
        self.zeros.len()
    }

    pub fn eval(&self, z: C64) -> C64 {
        self.zeros.iter().fold(self.unimodular, |acc, &a| {
            acc * (z - a) / (ONE - a.conj() * z)
        })
    }

    /// Largest `||B(e^{it})| - 1|` over `samples` equally spaced points.
    pub fn circle_defect(&self, samples: usize) -> f64 {
        (0..samples)
            .map(|k| {
                let z = C64::from_polar(1.0, TAU * k as f64 / samples as f64);
                (self.eval(z).norm() - 1.0).abs()
            })
            .fold(0.0, f64::max)
    }

    /// Largest modulus over `samples` equally spaced points of the circle.
    pub fn circle_max(&self, samples: usize) -> f64 {
        (0..samples)
            .map(|k| {
                self.eval(C64::from_polar(1.0, TAU * k as f64 / samples as f64))
                    .norm()
            })
            .fold(0.0, f64::max)
    }

    /// Largest `|B(x_j) - w_j|`.
    pub fn interpolation_residual(&self, p: &PickProblem) -> f64 {
        p.nodes
            .iter()
            .zip(&p.targets)
            .map(|(&x, &w)| (self.eval(x) - w).norm())
            .fold(0.0, f64::max)
    }

    /// `z B(z)`.
    pub fn times_z(&self) -> Self {
        let mut zeros = vec![ZERO];
        zeros.extend_from_slice(&self.zeros);
        BlaschkeProduct {
            unimodular: self.unimodular,
            zeros,
        }
    }
}

/// Solution of a degenerate Pick problem.
#[derive(Debug, Clone, PartialEq)]
pub enum Interpolant {
    /// All targets vanish; the solution is the zero function, not a
    /// Blaschke product.
    Zero,
    Blaschke(BlaschkeProduct),
}

impl Interpolant {
    pub fn eval(&self, z: C64) -> C64 {
        match self {
            Interpolant::Zero => ZERO,
            Interpolant::Blaschke(b) => b.eval(z),
        }
    }

    pub fn blaschke(&self) -> Option<&BlaschkeProduct> {
        match self {
            Interpolant::Zero => None,
            Interpolant::Blaschke(b) => Some(b),
        }
    }
}

/// Unique solution of a Pick problem whose matrix is positive semidefinite
/// and singular, recovered from a null vector `c` of the Pick matrix.
///
/// With `g(z) = sum_k c_k / (1 - conj(x_k) z)` and
/// `h(z) = sum_k c_k conj(w_k) / (1 - conj(x_k) z)`, the null-vector
/// equations say `g(x_j) = w_j h(x_j)`, so the solution is `g / h`. Clearing
/// denominators gives two polynomials; their common roots cancel and the
/// remaining roots of the numerator are the Blaschke zeros.
pub fn degenerate_interpolant(p: &PickProblem, nullvec: &[C64]) -> Result<Interpolant> {
    if p.targets.iter().all(|w| *w == ZERO) {
        return Ok(Interpolant::Zero);
    }
    let n = p.len();
    if nullvec.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            actual: nullvec.len(),
        });
    }
    let m = pick_matrix(p);
    let (values, _) = linalg::hermitian_eigen(m.as_dmatrix());
    let (min, max) = (values[0], values[n - 1]);
    let tol = 1e-8 * (1.0 + max.abs());
    if min < -tol {
        return Err(Error::Precondition(format!(
            "Pick matrix is indefinite (smallest eigenvalue {min:.3e})"
        )));
    }
    if min > tol {
        return Err(Error::Precondition(format!(
            "Pick matrix is nonsingular (smallest eigenvalue {min:.3e})"
        )));
    }
    let c = nalgebra::DVector::from_column_slice(nullvec);
    let c_norm = c.norm();
    if c_norm == 0.0 || (m.as_dmatrix() * &c).norm() > 1e-6 * (1.0 + max) * c_norm {
        return Err(Error::Precondition(
            "vector is not in the null space of the Pick matrix".into(),
        ));
    }
    let rank = values.iter().filter(|&&v| v > tol).count();

    let (x, w) = (&p.nodes, &p.targets);
    let mut num = vec![ZERO; n];
    let mut den = vec![ZERO; n];
    for j in 0..n {
        let mut prod = vec![ONE];
        for (i, xi) in x.iter().enumerate() {
            if i != j {
                prod = poly::mul(&prod, &[ONE, -xi.conj()]);
            }
        }
        for (k, coeff) in prod.iter().enumerate() {
            num[k] += nullvec[j] * coeff;
            den[k] += nullvec[j] * w[j].conj() * coeff;
        }
    }
    let num = poly::trim(&num, 1e-13);
    let den = poly::trim(&den, 1e-13);

    let circle: Vec<C64> = (0..64)
        .map(|k| C64::from_polar(1.0, TAU * k as f64 / 64.0))
        .collect();
    let den_max = circle
        .iter()
        .map(|&z| poly::eval(&den, z).norm())
        .fold(0.0, f64::max);
    if den_max <= 1e-12 * num.iter().map(|c| c.norm()).fold(0.0, f64::max) {
        return Err(Error::DegenerateData(
            "denominator vanishes on the circle".into(),
        ));
    }
    let zeros: Vec<C64> = poly::roots(&num)?
        .into_iter()
        .filter(|r| r.norm() < 1.0 && poly::eval(&den, *r).norm() > 1e-6 * den_max)
        .collect();
    let anchor = *circle
        .iter()
        .max_by(|a, b| {
            poly::eval(&den, **a)
                .norm()
                .total_cmp(&poly::eval(&den, **b).norm())
        })
        .expect("non-empty grid");
    let value = poly::eval(&num, anchor) / poly::eval(&den, anchor);
    let shape = BlaschkeProduct {
        unimodular: ONE,
        zeros,
    };
    let u = value / shape.eval(anchor);
    if (u.norm() - 1.0).abs() > 1e-6 {
        return Err(Error::Numeric(format!(
            "recovered interpolant is not inner (|u| = {})",
            u.norm()
        )));
    }
    let b = BlaschkeProduct {
        unimodular: u / u.norm(),
        zeros: shape.zeros,
    };
    let residual = b.interpolation_residual(p);
    if residual > INTERPOLATION_TOL {
        return Err(Error::Numeric(format!(
            "interpolation residual {residual:.3e} (Pick rank {rank}, order {})",
            b.order()
        )));
    }
    Ok(Interpolant::Blaschke(b))
}

/// `n`-th roots of unity, `e^{2 pi i j / n}`.
pub fn roots_of_unity(n: usize) -> Vec<C64> {
    (0..n)
        .map(|j| C64::from_polar(1.0, TAU * j as f64 / n as f64))
        .collect()
}

/// Data `f(eps_j beta) = lambda_j / (eps_j beta)` for a candidate `beta`.
pub fn lemma8_problem(lambdas: &[C64], beta: C64) -> Result<PickProblem> {
    let eps = roots_of_unity(lambdas.len());
    let nodes: Vec<C64> = eps.iter().map(|&e| e * beta).collect();
    let targets = lambdas.iter().zip(&nodes).map(|(&l, &x)| l / x).collect();
    PickProblem::new(nodes, targets)
}

/// Smallest eigenvalue of the diagonally scaled Pick matrix at radius `r`,
/// and the matching eigenvector of the unscaled matrix.
fn scaled_min_eigen(lambdas: &[C64], r: f64) -> Result<(f64, Vec<C64>, usize)> {
    let p = lemma8_problem(lambdas, C64::new(r, 0.0))?;
    let m = pick_matrix(&p);
    let n = m.dim();
    let d: Vec<f64> = (0..n)
        .map(|j| m[(j, j)].re.max(f64::MIN_POSITIVE).sqrt())
        .collect();
    let scaled = DMatrix::from_fn(n, n, |j, k| m[(j, k)] / (d[j] * d[k]));
    let (values, vectors) = linalg::hermitian_eigen(&scaled);
    let max = values[n - 1].abs().max(1.0);
    let near_zero = values.iter().filter(|v| v.abs() <= 1e-8 * max).count();
    let vec = (0..n).map(|j| vectors[(j, 0)] / d[j]).collect();
    Ok((values[0], vec, near_zero))
}

/// Result of the circular boundary search.
#[derive(Debug, Clone, PartialEq)]
pub struct Lemma8Solution {
    /// Boundary radius; zero in the degenerate all-zero case.
    pub beta: C64,
    /// `B` with `B(0) = 0` and `B(eps_j beta) = lambda_j`.
    pub blaschke: Interpolant,
    /// Largest `|B(eps_j beta) - lambda_j|`.
    pub residual: f64,
    /// More than one eigenvalue of the Pick matrix vanishes at the boundary.
    pub flagged: bool,
}

/// Finds `beta` on the boundary of the set of radii where the Pick problem
/// `f(eps_j beta) = lambda_j / (eps_j beta)` is solvable, and the Blaschke
/// product `B(z) = z f(z)` through `(0, 0), (eps_j beta, lambda_j)`.
///
/// Solvability depends only on `|beta|` and holds near the circle. Radii are
/// scanned downward from just below 1 to just above `max |lambda_j|`; the
/// lowest feasible grid point and the infeasible point below it bracket the
/// boundary, which is then located by bisection.
pub fn lemma8_solve(lambdas: &[C64]) -> Result<Lemma8Solution> {
    let n = lambdas.len();
    if n == 0 {
        return Err(Error::InvalidInput("no eigenvalues".into()));
    }
    if let Some(l) = lambdas.iter().find(|l| !(l.norm() < 1.0)) {
        return Err(Error::Domain(format!("{l} is not in the unit disc")));
    }
    let floor = lambdas.iter().map(|l| l.norm()).fold(0.0, f64::max);
    if floor == 0.0 {
        return Ok(Lemma8Solution {
            beta: ZERO,
            blaschke: Interpolant::Zero,
            residual: 0.0,
            flagged: false,
        });
    }
    let feasible = |r: f64| -> Result<bool> { Ok(scaled_min_eigen(lambdas, r)?.0 >= 0.0) };

    let top = 1.0 - (1.0 - floor) * 1e-6;
    if !feasible(top)? {
        return Err(Error::Numeric(format!(
            "Pick matrix is not positive near the circle (r = {top})"
        )));
    }
    let mut hi = top;
    let mut r = top - SCAN_STEP;
    while r > floor {
        if feasible(r)? {
            hi = r;
        }
        r -= SCAN_STEP;
    }
    // hi is the lowest feasible grid point, so the grid point below it is
    // infeasible or lies under max |lambda_j|
    let mut lo = (hi - SCAN_STEP).max(floor);
    while hi - lo > BISECTION_TOL * hi.max(1e-300) {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if feasible(mid)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let beta = C64::new(hi, 0.0);
    let (_, nullvec, near_zero) = scaled_min_eigen(lambdas, hi)?;
    let problem = lemma8_problem(lambdas, beta)?;
    let inner = degenerate_interpolant(&problem, &nullvec)?;
    let blaschke = match inner {
        Interpolant::Zero => Interpolant::Blaschke(BlaschkeProduct::monomial(ONE, 1)),
        Interpolant::Blaschke(b) => Interpolant::Blaschke(b.times_z()),
    };
    let eps = roots_of_unity(n);
    let residual = eps
        .iter()
        .zip(lambdas)
        .map(|(&e, &l)| (blaschke.eval(e * beta) - l).norm())
        .fold(0.0, f64::max);
    if residual > INTERPOLATION_TOL {
        return Err(Error::Numeric(format!(
            "Blaschke product misses the data by {residual:.3e}"
        )));
    }
    Ok(Lemma8Solution {
        beta,
        blaschke,
        residual,
        flagged: near_zero > 1,
    })
}

/// `z -> sigma(B(eps_1 z^(1/n)), ..., B(eps_n z^(1/n)))`, a holomorphic disc
/// in the symmetrized polydisc.
#[derive(Debug, Clone, PartialEq)]
pub struct GnDisc {
    pub blaschke: BlaschkeProduct,
    pub n: usize,
}

impl GnDisc {
    /// Evaluates with the `k`-th branch of the `n`-th root.
    pub fn eval_branch(&self, z: C64, k: usize) -> SymPoint {
        let root =
            z.powf(1.0 / self.n as f64) * C64::from_polar(1.0, TAU * k as f64 / self.n as f64);
        let values: Vec<C64> = roots_of_unity(self.n)
            .iter()
            .map(|&e| self.blaschke.eval(e * root))
            .collect();
        elementary_symmetric(&values)
    }

    pub fn eval(&self, z: C64) -> SymPoint {
        self.eval_branch(z, 0)
    }
}

/// Builds the symmetrized disc of a Blaschke product with `B(0) = 0` and order
/// at most `n`, checking on a sample grid that the value does not depend on
/// the branch of the root.
pub fn gn_disc_from_blaschke(b: &BlaschkeProduct, n: usize) -> Result<GnDisc> {
    if n == 0 {
        return Err(Error::InvalidInput("n must be positive".into()));
    }
    if b.order() > n {
        return Err(Error::Precondition(format!(
            "order {} exceeds {n}",
            b.order()
        )));
    }
    if b.eval(ZERO).norm() > 1e-12 {
        return Err(Error::Precondition("B(0) is not zero".into()));
    }
    let disc = GnDisc {
        blaschke: b.clone(),
        n,
    };
    for j in 0..16 {
        let z = C64::from_polar(0.9 * ((j + 1) as f64 / 16.0).sqrt(), 2.399963 * j as f64);
        let first = disc.eval_branch(z, 0);
        for k in 1..n {
            let d = first.dist(&disc.eval_branch(z, k));
            if d > 1e-9 {
                return Err(Error::Internal(format!("branch dependence {d:.3e} at {z}")));
            }
        }
    }
    Ok(disc)
}

/// Upper bound for the Lempert function of the symmetrized polydisc between
/// `0` and `sigma(B)`, compared with the spectral radius of `B`.
#[derive(Debug, Clone, PartialEq)]
pub struct GapCertificate {
    pub beta: C64,
    /// `None` when the spectrum is zero.
    pub blaschke: Option<BlaschkeProduct>,
    /// `|beta|^n`.
    pub upper: f64,
    /// `r(B)`.
    pub radius: f64,
    pub eigenvalues_equal: bool,
    pub is_gap: bool,
    pub residual: f64,
    pub flagged: bool,
}

/// Eigenvalues of `b`, replaced by `tr(b) / n` when they are numerically
/// equal.
///
/// Computed eigenvalues of a defective matrix split by roughly
/// `eps^(1/k)` for a Jordan block of size `k`, so besides a small spread
/// `b - (tr(b) / n) I` being nilpotent to working precision also counts.
pub fn snapped_spectrum(b: &CMatrix) -> Result<(Vec<C64>, bool)> {
    let s = spectrum(b)?;
    let n = s.len();
    let mean = b.trace() / n as f64;
    let centered = b.shift(-mean);
    let power = centered.pow(n as u32).norm2();
    let nilpotent = power <= 1e-12 * (1.0 + centered.norm2()).powi(n as i32);
    let equal = nilpotent || s.spread() <= EQUAL_EIGENVALUE_TOL * (1.0 + s.radius());
    if equal {
        Ok((vec![mean; n], true))
    } else {
        Ok((s.into_values(), false))
    }
}

/// Runs the boundary search on the spectrum of `B`.
pub fn gap_certificate(b: &CMatrix) -> Result<GapCertificate> {
    let n = b.dim();
    let (values, eigenvalues_equal) = snapped_spectrum(b)?;
    let radius = values.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if !(radius < 1.0) {
        return Err(Error::Domain(format!(
            "spectral radius {radius} is not below 1"
        )));
    }
    let sol = lemma8_solve(&values)?;
    let upper = sol.beta.norm().powi(n as i32);
    Ok(GapCertificate {
        beta: sol.beta,
        blaschke: sol.blaschke.blaschke().cloned(),
        upper,
        radius,
        eigenvalues_equal,
        is_gap: upper < radius - 1e-9,
        residual: sol.residual,
        flagged: sol.flagged,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::re;

    #[test]
    fn single_node_pick_matrix() {
        let p = PickProblem::new(vec![ZERO], vec![ZERO]).unwrap();
        assert_eq!(pick_matrix(&p), CMatrix::identity(1));
    }

    #[test]
    fn problem_validation() {
        assert!(PickProblem::new(vec![re(0.1), re(0.1)], vec![ZERO, ZERO]).is_err());
        assert!(PickProblem::new(vec![re(1.0)], vec![ZERO]).is_err());
        assert!(PickProblem::new(vec![re(0.1)], vec![ZERO, ZERO]).is_err());
    }

    #[test]
    fn psd_examples() {
        assert!(is_psd(&CMatrix::identity(3), 1e-9).unwrap());
        assert!(!is_psd(&CMatrix::real_diag(&[1.0, -0.1]), 1e-9).unwrap());
        assert!(is_psd(&CMatrix::unit(2, 0, 1), 1e-9).is_err());
    }

    #[test]
    fn blaschke_basics() {
        let b = BlaschkeProduct::new(ONE, vec![re(0.5)]).unwrap();
        assert!(b.eval(re(0.5)).norm() < 1e-16);
        assert!(b.circle_defect(256) < 1e-14);
        assert!(BlaschkeProduct::new(re(2.0), vec![]).is_err());
        assert!(BlaschkeProduct::new(ONE, vec![re(1.5)]).is_err());
        let z2 = BlaschkeProduct::monomial(ONE, 2);
        assert!((z2.eval(re(0.3)) - re(0.09)).norm() < 1e-16);
    }
}
