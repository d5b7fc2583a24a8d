//! One function per subcommand. Each returns the JSON object to print and
//! whether every verification inside it passed.

use serde::Serialize;
use serde_json::{json, Value};
use specball::curves::{self, is_scalar, DEFAULT_RADIUS, DEFAULT_SAMPLES};
use specball::pick::{snapped_spectrum, BlaschkeProduct};
use specball::{
    classify, gap_certificate, hull_membership, hull_witness, kobayashi_scalar_base,
    lempert_scalar_base, sigma, sigma_pushforward, spectrum, upper_bound_disc, CMatrix,
    ClassifyOptions, Error, C64,
};

use crate::io::emit_matrix;
use crate::json::{complex, complex_list};
use crate::sample::sample_omega;

/// Printed object plus overall verification status.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub report: Value,
    pub verified: bool,
}

impl Outcome {
    fn ok(report: Value) -> Self {
        Outcome {
            report,
            verified: true,
        }
    }
}

pub fn classify_cmd(a: &CMatrix, opts: ClassifyOptions) -> Result<Outcome, Error> {
    let r = classify(a, opts)?;
    let criteria: Vec<Value> = r
        .criteria
        .iter()
        .map(|c| {
            json!({
                "id": c.criterion.id(),
                "holds": c.holds,
                "value": c.value,
                "expected": c.expected,
                "margin": c.margin,
                "threshold": c.threshold,
                "borderline": c.borderline,
            })
        })
        .collect();
    Ok(Outcome::ok(json!({
        "command": "classify",
        "input": emit_matrix(a),
        "tol": opts.tol,
        "seed": opts.seed,
        "verdict": if r.verdict { "non-derogatory" } else { "derogatory" },
        "unanimous": r.unanimous(),
        "borderline": r.borderline(),
        "criteria": criteria,
    })))
}

pub fn sigma_cmd(a: &CMatrix, direction: Option<&CMatrix>) -> Result<Outcome, Error> {
    let s = spectrum(a)?;
    let point = sigma(a);
    let from_eigenvalues = specball::elementary_symmetric(s.values());
    let mut report = json!({
        "command": "sigma",
        "input": emit_matrix(a),
        "spectrum": complex_list(s.values()),
        "spectral_radius": s.radius(),
        "sigma": complex_list(point.coords()),
        "eigenvalue_residual": point.dist(&from_eigenvalues),
    });
    if let Some(b) = direction {
        let push = sigma_pushforward(a, b)?;
        report["direction"] = serde_json::to_value(emit_matrix(b)).expect("plain data");
        report["pushforward"] = complex_list(push.coords());
        report["trace_residual"] = json!((push.coords()[0] - b.trace()).norm());
    }
    Ok(Outcome::ok(report))
}

/// Default disc parameter: slightly above the optimal pairing value.
pub fn default_s1(bottleneck: f64) -> f64 {
    (bottleneck + 0.01).min(0.5 * (bottleneck + 1.0))
}

pub fn bounds_cmd(a: &CMatrix, b: &CMatrix, s1: Option<f64>, tol: f64) -> Result<Outcome, Error> {
    let (sa, sb) = (spectrum(a)?, spectrum(b)?);
    let bn = specball::bottleneck_minimax(&sa, &sb)?;
    let s1 = s1.unwrap_or_else(|| default_s1(bn.value));
    let w = upper_bound_disc(a, b, s1)?;
    let valid = w.is_valid(tol.max(1e-8));
    let mut report = json!({
        "command": "bounds",
        "input": emit_matrix(a),
        "target": emit_matrix(b),
        "spectrum_a": complex_list(sa.values()),
        "spectrum_b": complex_list(sb.values()),
        "bottleneck": { "value": bn.value, "permutation": bn.permutation },
        "s1": s1,
        "upper_bound": s1,
        "start_residual": w.start_residual,
        "end_residual": w.end_residual,
        "grid": {
            "angles": w.grid.angles,
            "radii": w.grid.radii,
            "max_spectral_radius": w.grid.max_spectral_radius,
            "core_bound": w.grid.core_bound,
        },
        "valid": valid,
    });
    if is_scalar(a, 1e-12) {
        let t = a[(0, 0)];
        let exact = lempert_scalar_base(t, b)?;
        report["scalar_base"] = json!({ "t": complex(t), "exact": exact, "excess": s1 - exact });
    }
    Ok(Outcome {
        report,
        verified: valid,
    })
}

fn blaschke_json(b: &BlaschkeProduct) -> Value {
    json!({
        "unimodular": complex(b.unimodular),
        "zeros": complex_list(&b.zeros),
        "order": b.order(),
        "circle_defect": b.circle_defect(256),
    })
}

pub fn lemma8_cmd(b: &CMatrix) -> Result<Outcome, Error> {
    let (values, _) = snapped_spectrum(b)?;
    let cert = gap_certificate(b)?;
    let n = b.dim();
    let mut verified =
        cert.residual <= specball::pick::INTERPOLATION_TOL && cert.upper <= cert.radius + 1e-9;
    let blaschke = match &cert.blaschke {
        Some(bp) => {
            verified &= bp.circle_defect(256) <= 1e-8 && bp.order() <= n;
            blaschke_json(bp)
        }
        None => Value::Null,
    };
    Ok(Outcome {
        report: json!({
            "command": "lemma8",
            "input": emit_matrix(b),
            "eigenvalues": complex_list(&values),
            "nodes": complex_list(&specball::pick::roots_of_unity(n).iter().map(|&e| e * cert.beta).collect::<Vec<_>>()),
            "beta": complex(cert.beta),
            "blaschke": blaschke,
            "interpolation_residual": cert.residual,
            "upper": cert.upper,
            "radius": cert.radius,
            "eigenvalues_equal": cert.eigenvalues_equal,
            "is_gap": cert.is_gap,
            "flagged": cert.flagged,
        }),
        verified,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum CurveChoice {
    /// Curve through A and B with constant spectrum.
    Iso,
    /// Curve through A with derivative B and constant spectrum.
    ZeroMetric,
    /// Degree-2 polynomial through A with derivative B (2x2 only).
    Quadratic,
}

#[derive(Debug, Clone, Copy)]
pub struct CurveOptions {
    pub samples: usize,
    pub radius: f64,
    pub tol: f64,
}

impl Default for CurveOptions {
    fn default() -> Self {
        CurveOptions {
            samples: DEFAULT_SAMPLES,
            radius: DEFAULT_RADIUS,
            tol: 1e-6,
        }
    }
}

pub fn curve_cmd(
    a: &CMatrix,
    b: &CMatrix,
    kind: CurveChoice,
    opts: CurveOptions,
) -> Result<Outcome, Error> {
    let zero = C64::new(0.0, 0.0);
    let mut extra = serde_json::Map::new();
    let curve = match kind {
        CurveChoice::Iso => {
            let c = specball::iso_spectral_curve(a, b)?;
            extra.insert(
                "end_residual".into(),
                json!(c.eval(C64::new(1.0, 0.0)).dist(b)),
            );
            c
        }
        CurveChoice::ZeroMetric => {
            let c = specball::zero_metric_curve(a, b, 1e-9)?;
            extra.insert(
                "derivative_residual".into(),
                json!(c.derivative_fd(zero, 1e-5).dist(b)),
            );
            c
        }
        CurveChoice::Quadratic => {
            let w = specball::quadratic_witness_2x2(a, b, 1e-9)?;
            extra.insert(
                "derivative_residual".into(),
                json!(w.curve.derivative_fd(zero, 1e-5).dist(b)),
            );
            extra.insert("trace_coeffs".into(), complex_list(&w.trace_coeffs));
            extra.insert("det_coeffs".into(), complex_list(&w.det_coeffs));
            extra.insert("coefficient_variation".into(), json!(w.max_variation()));
            w.curve
        }
    };
    let expected = spectrum(a)?;
    let check = curves::verify_constant_spectrum(
        &curve,
        expected.values(),
        opts.samples,
        opts.radius,
        opts.tol,
    )?;
    let mut report = json!({
        "command": "curve",
        "kind": curve.kind().name(),
        "input": emit_matrix(a),
        "target": emit_matrix(b),
        "start_residual": curve.eval(zero).dist(a),
        "spectrum_check": {
            "samples": check.samples,
            "radius": check.radius,
            "tol": check.tol,
            "max_deviation": check.max_deviation,
            "worst_point": complex(check.worst_point),
            "passed": check.passed,
        },
    });
    for (k, v) in extra {
        report[k] = v;
    }
    if let specball::AnalyticCurve::MatrixPolynomial(coeffs) = &curve {
        report["coefficients"] =
            serde_json::to_value(coeffs.iter().map(emit_matrix).collect::<Vec<_>>())
                .expect("plain data");
    }
    Ok(Outcome {
        report,
        verified: check.passed,
    })
}

pub fn hull_cmd(a: &CMatrix) -> Result<Outcome, Error> {
    let (h, inside) = hull_membership(a);
    let n = a.dim();
    let mut report = json!({
        "command": "hull",
        "input": emit_matrix(a),
        "h": h,
        "inside": inside,
        "spectral_radius": spectrum(a)?.radius(),
    });
    let mut verified = true;
    if inside {
        let w = hull_witness(a)?;
        let radii = [
            spectrum(&w.terms[0])?.radius(),
            spectrum(&w.terms[1])?.radius(),
        ];
        let residual = w.reconstruct().dist(a);
        verified = residual <= 1e-9 * (1.0 + a.norm_fro()) && radii.iter().all(|&r| r < 1.0);
        report["witness"] = json!({
            "weights": w.weights,
            "terms": [emit_matrix(&w.terms[0]), emit_matrix(&w.terms[1])],
            "similarity": emit_matrix(&w.similarity),
            "term_spectral_radii": radii,
            "reconstruction_residual": residual,
            "tau": complex(a.trace() / n as f64),
        });
    }
    Ok(Outcome { report, verified })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LempertPart {
    pub value_at_scalar_base: f64,
    /// Upper bound for the limit along non-derogatory base points.
    pub generic_limit_upper: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct KobayashiPart {
    pub value_at_scalar_base: f64,
    /// Limit along non-derogatory base points; only reported at `t = 0`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub generic_limit: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DiscontinuityReport {
    pub command: &'static str,
    pub input: String,
    pub matrix: crate::io::MatrixDocument,
    pub t: [f64; 2],
    /// `r(B)` after snapping numerically equal eigenvalues to their mean.
    pub radius: f64,
    pub trace_over_n: f64,
    pub beta: [f64; 2],
    pub lempert: LempertPart,
    pub kobayashi: KobayashiPart,
    pub jump_lempert: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub jump_kobayashi: Option<f64>,
    pub eigenvalues_equal: bool,
}

/// Disc automorphism of the spectral ball sending `tI` to 0:
/// `B -> (B - tI)(I - conj(t) B)^{-1}`.
pub fn automorphism(b: &CMatrix, t: C64) -> Result<CMatrix, Error> {
    let n = b.dim();
    let inv = (&CMatrix::identity(n) - &(b * t.conj())).inverse()?;
    Ok(&b.shift(-t) * &inv)
}

/// Values at the scalar base point `tI` against limits along
/// non-derogatory base points tending to `tI`.
pub fn discontinuity(label: &str, b: &CMatrix, t: C64) -> Result<DiscontinuityReport, Error> {
    let n = b.dim();
    // domain checks for t and B
    lempert_scalar_base(t, b)?;
    kobayashi_scalar_base(t, b)?;
    let (values, eigenvalues_equal) = snapped_spectrum(b)?;
    let radius = values.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let lempert_value = values
        .iter()
        .map(|&l| specball::mobius(t, l))
        .collect::<Result<Vec<_>, _>>()?
        .into_iter()
        .fold(0.0, f64::max);
    let moved = if t == C64::new(0.0, 0.0) {
        b.clone()
    } else {
        automorphism(b, t)?
    };
    let cert = gap_certificate(&moved)?;
    let kobayashi_value = radius / (1.0 - t.norm_sqr());
    let trace_over_n = b.trace().norm() / n as f64;
    let at_origin = t == C64::new(0.0, 0.0);
    let generic_limit = at_origin.then_some(trace_over_n);
    let (jump_lempert, jump_kobayashi) = if eigenvalues_equal {
        (0.0, generic_limit.map(|_| 0.0))
    } else {
        (
            (lempert_value - cert.upper).max(0.0),
            generic_limit.map(|g| (radius - g).max(0.0)),
        )
    };
    Ok(DiscontinuityReport {
        command: "discontinuity",
        input: label.to_string(),
        matrix: emit_matrix(b),
        t: [t.re, t.im],
        radius,
        trace_over_n,
        beta: [cert.beta.re, cert.beta.im],
        lempert: LempertPart {
            value_at_scalar_base: lempert_value,
            generic_limit_upper: cert.upper,
        },
        kobayashi: KobayashiPart {
            value_at_scalar_base: kobayashi_value,
            generic_limit,
        },
        jump_lempert,
        jump_kobayashi,
        eigenvalues_equal,
    })
}

pub fn discontinuity_cmd(label: &str, b: &CMatrix, t: C64) -> Result<Outcome, Error> {
    let r = discontinuity(label, b, t)?;
    Ok(Outcome::ok(serde_json::to_value(&r).expect("plain data")))
}

pub fn sample_cmd(n: usize, count: usize, seed: u64, tol: f64) -> Result<Outcome, Error> {
    let corpus = sample_omega(n, count, seed)?;
    let mut nonderog = 0usize;
    let mut max_radius: f64 = 0.0;
    for a in &corpus {
        max_radius = max_radius.max(spectrum(a)?.radius());
        if classify(a, ClassifyOptions { tol, seed })?.verdict {
            nonderog += 1;
        }
    }
    Ok(Outcome {
        report: json!({
            "command": "sample",
            "n": n,
            "count": count,
            "seed": seed,
            "max_spectral_radius": max_radius,
            "nonderogatory_fraction": nonderog as f64 / count as f64,
            "matrices": corpus.iter().map(emit_matrix).collect::<Vec<_>>(),
        }),
        verified: max_radius < 1.0,
    })
}
