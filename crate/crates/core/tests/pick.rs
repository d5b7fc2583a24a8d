mod common;

use common::{disc_point, rng};
use std::f64::consts::TAU;

use proptest::prelude::*;
use specball::pick::{lemma8_problem, roots_of_unity, GnDisc};
use specball::{
    c64, degenerate_interpolant, gap_certificate, gn_disc_from_blaschke, is_psd, lemma8_solve,
    pick_matrix, re, BlaschkeProduct, CMatrix, Interpolant, PickProblem, C64,
};

fn distinct_nodes(rng: &mut rand_chacha::ChaCha8Rng, n: usize) -> Vec<C64> {
    let mut nodes: Vec<C64> = Vec::new();
    while nodes.len() < n {
        let x = disc_point(rng, 0.85);
        if nodes.iter().all(|y| (x - y).norm() > 0.1) {
            nodes.push(x);
        }
    }
    nodes
}

fn null_vector(m: &CMatrix) -> Vec<C64> {
    let (_, vectors) = specball::linalg::hermitian_eigen(m.as_dmatrix());
    vectors.column(0).iter().cloned().collect()
}

#[test]
fn pick_matrix_is_hermitian_and_psd_for_schur_class_data() {
    let mut r = rng(11);
    for n in 1..=5 {
        for _ in 0..20 {
            let nodes = distinct_nodes(&mut r, n);
            let targets = nodes
                .iter()
                .map(|&x| x * c64(0.3, -0.2) + re(0.1))
                .collect();
            let p = PickProblem::new(nodes, targets).unwrap();
            let m = pick_matrix(&p);
            assert!(m.hermitian_defect() < 1e-14);
            assert!(is_psd(&m, 1e-9).unwrap());
        }
    }
}

#[test]
fn targets_outside_schur_class_give_indefinite_matrix() {
    let p = PickProblem::new(vec![re(0.0), re(0.5)], vec![re(0.0), re(0.9)]).unwrap();
    assert!(!is_psd(&pick_matrix(&p), 1e-9).unwrap());
}

#[test]
fn degenerate_data_recovers_generating_blaschke_product() {
    let mut r = rng(12);
    for n in 2..=5 {
        for order in 0..n {
            let zeros: Vec<C64> = (0..order).map(|_| disc_point(&mut r, 0.7)).collect();
            let u = C64::from_polar(1.0, r.random_range(0.0..TAU));
            let b = BlaschkeProduct::new(u, zeros).unwrap();
            let nodes = distinct_nodes(&mut r, n);
            let targets = nodes.iter().map(|&x| b.eval(x)).collect();
            let p = PickProblem::new(nodes, targets).unwrap();
            let m = pick_matrix(&p);
            let f = degenerate_interpolant(&p, &null_vector(&m)).unwrap();
            let f = f.blaschke().expect("non-zero data");
            assert_eq!(f.order(), order, "n={n}");
            for _ in 0..10 {
                let z = disc_point(&mut r, 0.95);
                assert!((f.eval(z) - b.eval(z)).norm() < 1e-6, "n={n} order={order}");
            }
            assert!(f.circle_defect(128) < 1e-12);
        }
    }
}

use rand::Rng;

#[test]
fn degenerate_interpolant_preconditions() {
    let p = PickProblem::new(vec![re(0.0), re(0.5)], vec![re(0.1), re(0.2)]).unwrap();
    let v = null_vector(&pick_matrix(&p));
    assert!(matches!(
        degenerate_interpolant(&p, &v),
        Err(specball::Error::Precondition(_))
    ));
    let zero = PickProblem::new(vec![re(0.0), re(0.5)], vec![re(0.0), re(0.0)]).unwrap();
    assert_eq!(
        degenerate_interpolant(&zero, &v).unwrap(),
        Interpolant::Zero
    );
}

#[test]
fn boundary_for_one_nonzero_eigenvalue() {
    // with r^2 = 2/3 the 2x2 Pick determinant
    // (1 - 0.64 / r^2) / (1 - r^2)^2 - 1 / (1 + r^2)^2 vanishes
    let r2: f64 = 2.0 / 3.0;
    let det = (1.0 - 0.64 / r2) / (1.0 - r2).powi(2) - 1.0 / (1.0 + r2).powi(2);
    assert!(det.abs() < 1e-12);
    let sol = lemma8_solve(&[re(0.8), re(0.0)]).unwrap();
    assert!((sol.beta.norm_sqr() - 2.0 / 3.0).abs() < 1e-6);
    assert!(sol.residual < 1e-6);
    let b = sol.blaschke.blaschke().unwrap();
    assert!(b.eval(re(0.0)).norm() < 1e-12);
}

#[test]
fn boundary_for_equal_eigenvalues_is_a_monomial() {
    let sol = lemma8_solve(&[re(0.5), re(0.5)]).unwrap();
    assert!((sol.beta.norm_sqr() - 0.5).abs() < 1e-6);
    let b = sol.blaschke.blaschke().unwrap();
    assert_eq!(b.order(), 2);
    let mut r = rng(13);
    for _ in 0..10 {
        let z = disc_point(&mut r, 0.99);
        assert!((b.eval(z) - z * z).norm() < 1e-6);
    }
}

#[test]
fn boundary_interpolates_random_spectra() {
    let mut r = rng(14);
    for n in 2..=4 {
        for _ in 0..10 {
            let lambdas: Vec<C64> = (0..n).map(|_| disc_point(&mut r, 0.9)).collect();
            let sol = lemma8_solve(&lambdas).unwrap();
            let b = sol.blaschke.blaschke().unwrap();
            for (e, l) in roots_of_unity(n).iter().zip(&lambdas) {
                assert!((b.eval(e * sol.beta) - l).norm() < 1e-6);
            }
            assert!(b.eval(re(0.0)).norm() < 1e-12);
            assert!(b.order() <= n);
            // just inside the boundary the data is not interpolable
            let inside = lemma8_problem(&lambdas, sol.beta * (1.0 - 1e-6)).unwrap();
            assert!(!is_psd(&pick_matrix(&inside), 1e-12).unwrap());
        }
    }
}

#[test]
fn zero_spectrum_is_degenerate() {
    let sol = lemma8_solve(&[re(0.0), re(0.0)]).unwrap();
    assert_eq!(sol.beta, re(0.0));
    assert_eq!(sol.blaschke, Interpolant::Zero);
}

#[test]
fn gn_disc_passes_through_the_spectrum() {
    let lambdas = [c64(0.3, 0.2), c64(-0.4, 0.1), re(0.05)];
    let sol = lemma8_solve(&lambdas).unwrap();
    let b = sol.blaschke.blaschke().unwrap();
    let disc = gn_disc_from_blaschke(b, 3).unwrap();
    assert!(disc.eval(re(0.0)).norm() < 1e-12);
    let target = specball::matcore::elementary_symmetric(&lambdas);
    let at = disc.eval(sol.beta.powu(3));
    assert!(at.dist(&target) < 1e-6);
    let mut r = rng(15);
    for _ in 0..20 {
        let z = disc_point(&mut r, 0.99);
        assert!(disc.eval(z).in_symmetrized_disc().unwrap());
    }
}

#[test]
fn gn_disc_rejects_bad_blaschke_products() {
    let b = BlaschkeProduct::new(re(1.0), vec![re(0.3)]).unwrap();
    assert!(gn_disc_from_blaschke(&b, 2).is_err());
    let b = BlaschkeProduct::monomial(re(1.0), 3);
    assert!(gn_disc_from_blaschke(&b, 2).is_err());
    let d: GnDisc = gn_disc_from_blaschke(&BlaschkeProduct::monomial(re(1.0), 2), 2).unwrap();
    assert_eq!(d.n, 2);
}

#[test]
fn gap_for_one_nonzero_eigenvalue() {
    let cert = gap_certificate(&CMatrix::real_diag(&[0.8, 0.0])).unwrap();
    assert!((cert.upper - 2.0 / 3.0).abs() < 1e-6);
    assert!((cert.radius - 0.8).abs() < 1e-12);
    assert!(cert.is_gap);
}

#[test]
fn no_gap_for_a_jordan_block() {
    let b = CMatrix::from_real_rows(2, &[0.5, 1.0, 0.0, 0.5]).unwrap();
    let cert = gap_certificate(&b).unwrap();
    assert!(cert.eigenvalues_equal);
    assert!(!cert.is_gap);
    assert!((cert.upper - 0.5).abs() < 1e-6);
}

#[test]
fn gap_dichotomy_on_random_matrices() {
    let mut r = rng(16);
    for n in 2..=3 {
        for _ in 0..50 {
            let b = common::random_in_ball(&mut r, n, 0.9);
            let cert = gap_certificate(&b).unwrap();
            assert!(cert.upper <= cert.radius + 1e-9);
            assert_eq!(cert.is_gap, !cert.eigenvalues_equal);
        }
    }
}

#[test]
fn gn_disc_of_z_squared() {
    let disc = gn_disc_from_blaschke(&BlaschkeProduct::monomial(re(1.0), 2), 2).unwrap();
    let mut r = rng(17);
    for _ in 0..20 {
        let z = disc_point(&mut r, 0.99);
        let p = disc.eval(z);
        assert!((p.coords()[0] - z * 2.0).norm() < 1e-12);
        assert!((p.coords()[1] - z * z).norm() < 1e-12);
    }
}

#[test]
fn gn_disc_is_independent_of_the_root_branch() {
    let mut r = rng(18);
    for n in 2..=4 {
        let lambdas: Vec<C64> = (0..n).map(|_| disc_point(&mut r, 0.8)).collect();
        let sol = lemma8_solve(&lambdas).unwrap();
        let disc = gn_disc_from_blaschke(sol.blaschke.blaschke().unwrap(), n).unwrap();
        for _ in 0..100 {
            let z = disc_point(&mut r, 0.99);
            let first = disc.eval_branch(z, 0);
            for k in 1..n {
                assert!(first.dist(&disc.eval_branch(z, k)) <= 1e-10);
            }
        }
    }
}

#[test]
fn equal_eigenvalues_give_monomials() {
    let mut r = rng(19);
    for n in 2..=3 {
        for _ in 0..10 {
            let l = disc_point(&mut r, 0.9);
            if l.norm() < 0.05 {
                continue;
            }
            let sol = lemma8_solve(&vec![l; n]).unwrap();
            assert!((sol.beta.norm().powi(n as i32) - l.norm()).abs() < 1e-6);
            let b = sol.blaschke.blaschke().unwrap();
            assert!(b.circle_defect(256) < 1e-8);
            // B = u z^n: compare B(z) / z^n at two points
            let (z1, z2) = (c64(0.3, 0.1), c64(-0.2, 0.5));
            let q1 = b.eval(z1) / z1.powu(n as u32);
            let q2 = b.eval(z2) / z2.powu(n as u32);
            assert!((q1 - q2).norm() < 1e-5 && (q1.norm() - 1.0).abs() < 1e-5);
        }
    }
}

#[test]
fn conjugated_jordan_blocks_have_no_gap() {
    let mut r = rng(20);
    for n in 2..=4 {
        for _ in 0..10 {
            let l = disc_point(&mut r, 0.85);
            let j = CMatrix::from_fn(n, |i, k| {
                if i == k {
                    l
                } else if k == i + 1 {
                    re(1.0)
                } else {
                    re(0.0)
                }
            });
            let s = common::well_conditioned(&mut r, n);
            let b = &(&s * &j) * &s.inverse().unwrap();
            let cert = gap_certificate(&b).unwrap();
            assert!(cert.eigenvalues_equal, "n={n}");
            assert!(!cert.is_gap);
            assert!((cert.upper - l.norm()).abs() < 1e-6);
        }
    }
}

proptest! {
    #[test]
    fn pick_matrix_depends_only_on_modulus(
        l in proptest::collection::vec((-0.6f64..0.6, -0.6f64..0.6), 2..5),
        rad in 0.87f64..0.99,
        theta in 0.0f64..TAU,
    ) {
        let lambdas: Vec<C64> = l.iter().map(|&(a, b)| c64(a, b)).collect();
        let base = pick_matrix(&lemma8_problem(&lambdas, re(rad)).unwrap());
        let rotated = pick_matrix(&lemma8_problem(&lambdas, C64::from_polar(rad, theta)).unwrap());
        prop_assert!(base.dist(&rotated) < 1e-12 * (1.0 + base.norm_fro()));
    }

    #[test]
    fn blaschke_products_are_inner(
        zeros in proptest::collection::vec((0.0f64..0.95, 0.0f64..TAU), 0..6),
        phase in 0.0f64..TAU,
    ) {
        let zeros = zeros.iter().map(|&(m, t)| C64::from_polar(m, t)).collect();
        let b = BlaschkeProduct::new(C64::from_polar(1.0, phase), zeros).unwrap();
        prop_assert!(b.circle_defect(64) < 1e-10);
        prop_assert!(b.eval(c64(0.1, 0.2)).norm() <= 1.0 + 1e-12);
    }
}
