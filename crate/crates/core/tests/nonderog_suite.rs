mod common;

use common::*;
use specball::matcore::{char_poly, companion, SymPoint};
use specball::{classify, minimal_polynomial, CMatrix, ClassifyOptions, C64};

fn block_diag(blocks: &[CMatrix]) -> CMatrix {
    let n: usize = blocks.iter().map(|b| b.dim()).sum();
    let mut out = CMatrix::zeros(n);
    let mut off = 0;
    for b in blocks {
        for i in 0..b.dim() {
            for j in 0..b.dim() {
                out[(off + i, off + j)] = b[(i, j)];
            }
        }
        off += b.dim();
    }
    out
}

fn jordan(n: usize, lambda: C64) -> CMatrix {
    CMatrix::from_fn(n, |i, j| {
        if i == j {
            lambda
        } else if j == i + 1 {
            C64::new(1.0, 0.0)
        } else {
            C64::new(0.0, 0.0)
        }
    })
}

/// (matrix, expected verdict)
fn crafted() -> Vec<(CMatrix, bool)> {
    let l = C64::new(0.3, -0.2);
    let mut out = Vec::new();
    for n in 1..=5 {
        out.push((CMatrix::scalar(n, l), n == 1));
        out.push((CMatrix::zeros(n), n == 1));
        out.push((jordan(n, l), true));
        out.push((jordan(n, C64::new(0.0, 0.0)), true));
    }
    out.push((block_diag(&[jordan(2, l), jordan(1, l)]), false));
    out.push((block_diag(&[jordan(2, l), jordan(2, l)]), false));
    out.push((block_diag(&[jordan(3, l), jordan(1, l)]), false));
    out.push((
        block_diag(&[jordan(2, l), jordan(1, l), jordan(2, -l)]),
        false,
    ));
    out.push((block_diag(&[jordan(2, l), jordan(1, -l)]), true));
    out.push((
        block_diag(&[jordan(3, l), jordan(2, C64::new(0.5, 0.0))]),
        true,
    ));
    let mut rng = rng(21);
    for n in 1..=5 {
        let coords = (0..n).map(|_| gaussian(&mut rng)).collect();
        out.push((companion(&SymPoint::new(coords)), true));
        out.push((companion(&SymPoint::new(vec![C64::new(0.0, 0.0); n])), true));
    }
    out
}

#[test]
fn crafted_suite_is_unanimous() {
    for (a, expected) in crafted() {
        let r = classify(&a, ClassifyOptions::default()).unwrap();
        assert!(r.unanimous(), "{a:?}: {:?}", r.criteria);
        assert_eq!(r.verdict, expected, "{a:?}");
    }
}

#[test]
fn random_matrices_are_nonderogatory() {
    let mut rng = rng(22);
    for n in 2..=5 {
        for k in 0..100 {
            let a = gaussian_matrix(&mut rng, n);
            let opts = ClassifyOptions {
                seed: k,
                ..Default::default()
            };
            let r = classify(&a, opts).unwrap();
            assert!(r.verdict && r.unanimous(), "{a:?}: {:?}", r.criteria);
        }
    }
}

#[test]
fn verdict_is_similarity_invariant() {
    let mut rng = rng(23);
    for (a, expected) in crafted() {
        let p = well_conditioned(&mut rng, a.dim());
        let b = &(&p.inverse().unwrap() * &a) * &p;
        let r = classify(&b, ClassifyOptions::default()).unwrap();
        assert_eq!(r.verdict, expected, "{b:?}: {:?}", r.criteria);
    }
}

#[test]
fn minimal_polynomial_divides_characteristic() {
    let mut rng = rng(24);
    let mut cases: Vec<CMatrix> = crafted().into_iter().map(|(a, _)| a).collect();
    for n in 1..=5 {
        cases.push(gaussian_matrix(&mut rng, n).scale_real(0.5));
    }
    for a in cases {
        let m = minimal_polynomial(&a, 1e-9);
        let rem = m.remainder_of(&char_poly(&a));
        assert!(rem.iter().all(|c| c.norm() <= 1e-7), "{a:?}");
        assert!(m.eval_matrix(&a).norm2() <= 1e-7 * (1.0 + a.norm2()).powi(m.degree() as i32));
    }
}

#[test]
fn companion_last_column_pattern() {
    let mut rng = rng(25);
    for n in 2..=5 {
        let coords = (0..n).map(|_| gaussian(&mut rng)).collect();
        let c = companion(&SymPoint::new(coords));
        let mut m = nalgebra::DMatrix::<C64>::zeros(n, n);
        for i in 0..n {
            let d = specball::sigma_pushforward(&c, &CMatrix::unit(n, i, n - 1)).unwrap();
            for (r, v) in d.coords().iter().enumerate() {
                m[(r, i)] = *v;
            }
        }
        for i in 0..n {
            // E_{i, n-1} lands on coordinate n - i with sign (-1)^(n-1-i);
            // coordinates before it vanish
            let row = n - 1 - i;
            let sign = if row % 2 == 0 { 1.0 } else { -1.0 };
            assert!(
                (m[(row, i)] - C64::new(sign, 0.0)).norm() < 1e-12,
                "n={n} i={i}: {m}"
            );
            for r in 0..n {
                if r != row {
                    assert!(m[(r, i)].norm() < 1e-12 || r > row, "n={n}: {m}");
                }
            }
        }
        assert_eq!(specball::linalg::rank(&m, 1e-9).rank, n);
    }
}
