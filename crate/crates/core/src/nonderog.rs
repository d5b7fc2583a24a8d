//! Non-derogatory classification by six independent criteria.
//!
//! A matrix is non-derogatory when every eigenvalue has a one-dimensional
//! eigenspace. The criteria below are equivalent in exact arithmetic; each is
//! evaluated with its own rank decision and the results are cross-checked.

use std::fmt;

use nalgebra::{DMatrix, DVector};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};
use crate::linalg;
use crate::matcore::{ad_operator, char_poly, sigma_pushforward, spectrum};
use crate::matrix::{commutator, CMatrix, C64, ONE, ZERO};
use crate::poly::PolyCoeffs;

pub const DEFAULT_TOL: f64 = 1e-9;
/// Random starting vectors tried for the cyclic-vector test.
pub const KRYLOV_TRIALS: usize = 5;
/// Relative gap below which computed eigenvalues are grouped together.
pub const CLUSTER_GAP: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Criterion {
    /// A cyclic vector exists.
    C2,
    /// Minimal and characteristic polynomials coincide.
    C3,
    /// Each eigenspace is one-dimensional.
    C4,
    /// The commutant has dimension `n`.
    C5_7,
    /// The differential of `sigma` has rank `n`.
    C6,
    /// The commutation operator has rank `n^2 - n`.
    C8,
}

impl Criterion {
    pub const ALL: [Criterion; 6] = [
        Criterion::C2,
        Criterion::C3,
        Criterion::C4,
        Criterion::C5_7,
        Criterion::C6,
        Criterion::C8,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Criterion::C2 => "c2",
            Criterion::C3 => "c3",
            Criterion::C4 => "c4",
            Criterion::C5_7 => "c5_7",
            Criterion::C6 => "c6",
            Criterion::C8 => "c8",
        }
    }
}

impl fmt::Display for Criterion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CriterionResult {
    pub criterion: Criterion,
    pub holds: bool,
    /// Rank, degree or dimension that the decision was based on.
    pub value: f64,
    /// Value required for the criterion to hold.
    pub expected: f64,
    /// Singular value (or breakdown norm) closest to the decision threshold.
    pub margin: f64,
    pub threshold: f64,
    pub borderline: bool,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    pub rank_rel: f64,
    pub cluster_gap: f64,
    pub krylov_trials: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct NonderogReport {
    pub n: usize,
    pub verdict: bool,
    pub criteria: Vec<CriterionResult>,
    pub tolerances: Tolerances,
}

impl NonderogReport {
    pub fn get(&self, c: Criterion) -> &CriterionResult {
        self.criteria
            .iter()
            .find(|r| r.criterion == c)
            .expect("every criterion is evaluated")
    }

    pub fn unanimous(&self) -> bool {
        self.criteria.iter().all(|r| r.holds == self.verdict)
    }

    pub fn borderline(&self) -> bool {
        self.criteria.iter().any(|r| r.borderline)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClassifyOptions {
    pub tol: f64,
    pub seed: u64,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions {
            tol: DEFAULT_TOL,
            seed: 0x5eed,
        }
    }
}

fn near(value: f64, threshold: f64) -> bool {
    threshold > 0.0 && value >= threshold / 10.0 && value <= threshold * 10.0
}

/// Shifts out the trace and scales to unit spectral norm; scalar matrices map to 0.
fn normalize(a: &CMatrix, tol: f64) -> CMatrix {
    let n = a.dim();
    let tau = a.trace() / n as f64;
    let centered = a.shift(-tau);
    let norm = centered.norm2();
    if norm <= tol * a.norm2() || norm == 0.0 {
        CMatrix::zeros(n)
    } else {
        centered.scale_real(1.0 / norm)
    }
}

/// Arnoldi process with full reorthogonalization. Returns the Hessenberg
/// entries and the subdiagonal norms; stops when a new direction has norm at
/// most `tol`.
struct Arnoldi {
    h: DMatrix<C64>,
    dim: usize,
    /// Smallest accepted subdiagonal, then the rejected one if any.
    min_kept: f64,
    breakdown: Option<f64>,
}

fn arnoldi(
    apply: impl Fn(&DVector<C64>) -> DVector<C64>,
    start: DVector<C64>,
    max_dim: usize,
    tol: f64,
) -> Arnoldi {
    let mut basis: Vec<DVector<C64>> = vec![&start / C64::new(start.norm(), 0.0)];
    let mut h = DMatrix::<C64>::zeros(max_dim + 1, max_dim);
    let mut min_kept = f64::INFINITY;
    let mut breakdown = None;
    while basis.len() <= max_dim {
        let k = basis.len() - 1;
        let mut w = apply(&basis[k]);
        for _ in 0..2 {
            for (i, q) in basis.iter().enumerate() {
                let c = q.dotc(&w);
                if k < max_dim {
                    h[(i, k)] += c;
                }
                w -= q * c;
            }
        }
        let norm = w.norm();
        if basis.len() == max_dim || k == max_dim {
            break;
        }
        if norm <= tol {
            breakdown = Some(norm);
            break;
        }
        min_kept = min_kept.min(norm);
        h[(k + 1, k)] = C64::new(norm, 0.0);
        basis.push(w / C64::new(norm, 0.0));
    }
    let dim = basis.len();
    Arnoldi {
        h: h.view((0, 0), (dim, dim)).into_owned(),
        dim,
        min_kept,
        breakdown,
    }
}

fn matrix_krylov(a: &CMatrix, tol: f64) -> Arnoldi {
    let n = a.dim();
    let start = DVector::from_vec(CMatrix::identity(n).vec());
    let apply = |v: &DVector<C64>| {
        let m = CMatrix::from_vec(n, v.as_slice());
        DVector::from_vec((a * &m).vec())
    };
    arnoldi(apply, start, n, tol)
}

fn gaussian_vector(rng: &mut ChaCha8Rng, n: usize) -> DVector<C64> {
    DVector::from_iterator(
        n,
        (0..n).map(|_| {
            let re: f64 = StandardNormal.sample(rng);
            let im: f64 = StandardNormal.sample(rng);
            C64::new(re, im)
        }),
    )
}

fn criterion_c2(a: &CMatrix, tol: f64, seed: u64) -> CriterionResult {
    let n = a.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let dm = a.as_dmatrix();
    let mut best: Option<Arnoldi> = None;
    for _ in 0..KRYLOV_TRIALS {
        let v = gaussian_vector(&mut rng, n);
        let run = arnoldi(|x| dm * x, v, n, tol);
        let better = best.as_ref().is_none_or(|b| run.dim > b.dim);
        if better {
            best = Some(run);
        }
        if best.as_ref().is_some_and(|b| b.dim == n) {
            break;
        }
    }
    let best = best.expect("at least one trial");
    let margin = best.breakdown.unwrap_or(best.min_kept);
    CriterionResult {
        criterion: Criterion::C2,
        holds: best.dim == n,
        value: best.dim as f64,
        expected: n as f64,
        margin,
        threshold: tol,
        borderline: near(margin, tol) || near(best.min_kept, tol),
    }
}

fn criterion_c3(a: &CMatrix, tol: f64) -> CriterionResult {
    let n = a.dim();
    let run = matrix_krylov(a, tol);
    let margin = run.breakdown.unwrap_or(run.min_kept);
    CriterionResult {
        criterion: Criterion::C3,
        holds: run.dim == n,
        value: run.dim as f64,
        expected: n as f64,
        margin,
        threshold: tol,
        borderline: near(margin, tol) || near(run.min_kept, tol),
    }
}

/// Groups values whose single-linkage distance is at most `gap`.
fn clusters(values: &[C64], gap: f64) -> Vec<Vec<C64>> {
    let n = values.len();
    let mut label: Vec<usize> = (0..n).collect();
    fn find(label: &mut [usize], i: usize) -> usize {
        let mut r = i;
        while label[r] != r {
            r = label[r];
        }
        label[i] = r;
        r
    }
    for i in 0..n {
        for j in (i + 1)..n {
            if (values[i] - values[j]).norm() <= gap {
                let (ri, rj) = (find(&mut label, i), find(&mut label, j));
                label[ri.max(rj)] = ri.min(rj);
            }
        }
    }
    let mut groups: Vec<(usize, Vec<C64>)> = Vec::new();
    for (i, &v) in values.iter().enumerate() {
        let r = find(&mut label, i);
        match groups.iter_mut().find(|(root, _)| *root == r) {
            Some((_, g)) => g.push(v),
            None => groups.push((r, vec![v])),
        }
    }
    groups.into_iter().map(|(_, g)| g).collect()
}

fn criterion_c4(a: &CMatrix) -> Result<CriterionResult> {
    let spec = spectrum(a)?;
    let gap = CLUSTER_GAP * (1.0 + spec.radius());
    let mut max_mult = 0usize;
    let mut borderline = false;
    let mut margin = f64::INFINITY;
    let mut threshold_used = gap;
    for group in clusters(spec.values(), gap) {
        let center = group.iter().sum::<C64>() / group.len() as f64;
        let spread = group
            .iter()
            .map(|z| (z - center).norm())
            .fold(0.0, f64::max);
        let theta = gap.max(10.0 * spread);
        let sv = linalg::singular_values(a.shift(-center).as_dmatrix());
        let mult = sv.iter().filter(|&&s| s <= theta).count();
        if mult > max_mult {
            max_mult = mult;
            threshold_used = theta;
        }
        for &s in &sv {
            if near(s, theta) {
                borderline = true;
            }
            if s > theta {
                margin = margin.min(s);
            }
        }
    }
    Ok(CriterionResult {
        criterion: Criterion::C4,
        holds: max_mult == 1,
        value: max_mult as f64,
        expected: 1.0,
        margin,
        threshold: threshold_used,
        borderline,
    })
}

fn rank_result(
    criterion: Criterion,
    decision: linalg::RankDecision,
    value: usize,
    expected: usize,
) -> CriterionResult {
    let margin = if value == expected {
        decision.smallest_kept
    } else {
        decision.largest_dropped
    };
    CriterionResult {
        criterion,
        holds: value == expected,
        value: value as f64,
        expected: expected as f64,
        margin,
        threshold: decision.threshold,
        borderline: decision.borderline,
    }
}

fn criterion_c5_7(a: &CMatrix, tol: f64) -> CriterionResult {
    let n = a.dim();
    let decision = linalg::rank(&ad_operator(a), tol);
    let dim = n * n - decision.rank;
    let mut r = rank_result(Criterion::C5_7, decision, dim, n);
    r.margin = decision.largest_dropped.max(if dim == n {
        0.0
    } else {
        decision.smallest_kept
    });
    r
}

fn criterion_c6(a: &CMatrix, tol: f64) -> Result<CriterionResult> {
    let n = a.dim();
    let mut m = DMatrix::<C64>::zeros(n, n * n);
    for j in 0..n {
        for i in 0..n {
            let d = sigma_pushforward(a, &CMatrix::unit(n, i, j))?;
            for (r, &c) in d.coords().iter().enumerate() {
                m[(r, i + j * n)] = c;
            }
        }
    }
    let decision = linalg::rank(&m, tol);
    Ok(rank_result(Criterion::C6, decision, decision.rank, n))
}

fn criterion_c8(a: &CMatrix, tol: f64) -> CriterionResult {
    let n = a.dim();
    let mut m = DMatrix::<C64>::zeros(n * n, n * n);
    for j in 0..n {
        for i in 0..n {
            let image = commutator(a, &CMatrix::unit(n, i, j)).vec();
            m.column_mut(i + j * n).copy_from_slice(&image);
        }
    }
    let decision = linalg::rank(&m, tol);
    rank_result(Criterion::C8, decision, decision.rank, n * n - n)
}

/// Evaluates all six criteria on `a` and returns their majority verdict.
///
/// Ties fall back to the commutant dimension. Criteria that disagree while
/// none of them sits near its threshold indicate a tolerance bug and are
/// reported as an internal error.
pub fn classify(a: &CMatrix, opts: ClassifyOptions) -> Result<NonderogReport> {
    let n = a.dim();
    let tol = opts.tol;
    let b = normalize(a, tol);
    let criteria = vec![
        criterion_c2(&b, tol, opts.seed),
        criterion_c3(&b, tol),
        criterion_c4(&b)?,
        criterion_c5_7(&b, tol),
        criterion_c6(&b, tol)?,
        criterion_c8(&b, tol),
    ];
    let yes = criteria.iter().filter(|r| r.holds).count();
    let verdict = match yes.cmp(&(criteria.len() - yes)) {
        std::cmp::Ordering::Greater => true,
        std::cmp::Ordering::Less => false,
        std::cmp::Ordering::Equal => criteria[3].holds,
    };
    let report = NonderogReport {
        n,
        verdict,
        criteria,
        tolerances: Tolerances {
            rank_rel: tol,
            cluster_gap: CLUSTER_GAP,
            krylov_trials: KRYLOV_TRIALS,
        },
    };
    if !report.unanimous() && !report.borderline() {
        let split: Vec<String> = report
            .criteria
            .iter()
            .map(|r| format!("{}={}", r.criterion, r.holds))
            .collect();
        return Err(Error::Internal(format!(
            "criteria disagree without a borderline decision: {}",
            split.join(", ")
        )));
    }
    Ok(report)
}

/// Monic polynomial of least degree annihilating `a`.
///
/// The powers `I, A, A^2, ...` are orthogonalized in turn (after scaling `A`
/// to unit norm) until a new power lies within `tol` of the span of the
/// previous ones.
pub fn minimal_polynomial(a: &CMatrix, tol: f64) -> PolyCoeffs {
    let scale = a.norm2();
    if scale == 0.0 {
        return PolyCoeffs::monic(vec![ZERO, ONE]).expect("nonzero leading term");
    }
    let scaled = a.scale_real(1.0 / scale);
    let run = matrix_krylov(&scaled, tol);
    let h = CMatrix::from_dmatrix(run.h).expect("finite Hessenberg block");
    let q = char_poly(&h);
    let d = q.len() - 1;
    // p(t) = scale^d q(t / scale)
    let coeffs = q
        .iter()
        .enumerate()
        .map(|(k, &c)| c * scale.powi((d - k) as i32))
        .collect();
    PolyCoeffs::monic(coeffs).expect("monic characteristic polynomial")
}
