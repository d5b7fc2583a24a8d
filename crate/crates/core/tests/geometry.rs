mod common;

use common::*;
use itertools_free::permutations;
use specball::{
    bottleneck_minimax, hull_membership, hull_witness, kobayashi_scalar_base, lempert_scalar_base,
    mobius, spectrum, upper_bound_disc, CMatrix, Error, Spectrum, C64,
};

mod itertools_free {
    /// All permutations of `0..n` (Heap's algorithm).
    pub fn permutations(n: usize) -> Vec<Vec<usize>> {
        let mut p: Vec<usize> = (0..n).collect();
        let mut out = vec![p.clone()];
        let mut c = vec![0; n];
        let mut i = 0;
        while i < n {
            if c[i] < i {
                if i % 2 == 0 {
                    p.swap(0, i);
                } else {
                    p.swap(c[i], i);
                }
                out.push(p.clone());
                c[i] += 1;
                i = 0;
            } else {
                c[i] = 0;
                i += 1;
            }
        }
        out
    }
}

fn re(x: f64) -> C64 {
    C64::new(x, 0.0)
}

fn mobius_direct(z: C64, w: C64) -> f64 {
    ((z - w) / (C64::new(1.0, 0.0) - z * w.conj())).norm()
}

fn brute_force(a: &[C64], b: &[C64]) -> f64 {
    permutations(a.len())
        .iter()
        .map(|p| {
            (0..a.len())
                .map(|j| mobius_direct(a[j], b[p[j]]))
                .fold(0.0, f64::max)
        })
        .fold(f64::INFINITY, f64::min)
}

#[test]
fn scalar_base_examples() {
    let b = CMatrix::real_diag(&[0.5, 0.2]);
    assert!((lempert_scalar_base(re(0.0), &b).unwrap() - 0.5).abs() < 1e-15);
    let b = CMatrix::from_real_rows(2, &[0.5, 1.0, 0.0, 0.5]).unwrap();
    assert!(lempert_scalar_base(re(0.5), &b).unwrap() < 1e-12);
    let b = CMatrix::scalar(1, re(-0.3));
    assert!((lempert_scalar_base(re(0.3), &b).unwrap() - 0.6 / 1.09).abs() < 1e-15);
    assert!(matches!(
        lempert_scalar_base(re(0.0), &CMatrix::real_diag(&[1.2, 0.0])),
        Err(Error::Domain(_))
    ));

    let b = CMatrix::real_diag(&[0.8, 0.0]);
    assert!((kobayashi_scalar_base(re(0.0), &b).unwrap() - 0.8).abs() < 1e-15);
    assert!((kobayashi_scalar_base(re(0.5), &b).unwrap() - 0.8 / 0.75).abs() < 1e-15);
    assert_eq!(
        kobayashi_scalar_base(re(0.5), &CMatrix::zeros(3)).unwrap(),
        0.0
    );
    assert!(kobayashi_scalar_base(re(1.0), &b).is_err());
}

#[test]
fn bottleneck_examples() {
    let a = Spectrum::new(vec![re(0.1), re(0.8)]);
    let b = Spectrum::new(vec![re(0.75), re(0.15)]);
    let r = bottleneck_minimax(&a, &b).unwrap();
    assert!((r.value - 0.125).abs() < 1e-15);
    assert_eq!(r.permutation, vec![1, 0]);
    let r = bottleneck_minimax(&a, &a).unwrap();
    assert_eq!((r.value, r.permutation), (0.0, vec![0, 1]));
    let r =
        bottleneck_minimax(&Spectrum::new(vec![re(0.0)]), &Spectrum::new(vec![re(0.5)])).unwrap();
    assert_eq!(r.value, 0.5);
    assert!(bottleneck_minimax(&a, &Spectrum::new(vec![re(0.0)])).is_err());
}

#[test]
fn bottleneck_matches_brute_force() {
    let mut rng = rng(41);
    for n in 1..=7 {
        for _ in 0..200 {
            let a: Vec<C64> = (0..n).map(|_| disc_point(&mut rng, 0.99)).collect();
            let b: Vec<C64> = (0..n).map(|_| disc_point(&mut rng, 0.99)).collect();
            let r =
                bottleneck_minimax(&Spectrum::new(a.clone()), &Spectrum::new(b.clone())).unwrap();
            assert!((r.value - brute_force(&a, &b)).abs() <= 1e-12);
            let attained = (0..n)
                .map(|j| mobius_direct(a[j], b[r.permutation[j]]))
                .fold(0.0, f64::max);
            assert!((attained - r.value).abs() <= 1e-12);
        }
    }
}

#[test]
fn equal_eigenvalue_cases_match_mobius() {
    let mut rng = rng(42);
    for n in 1..=4 {
        for _ in 0..20 {
            let t = disc_point(&mut rng, 0.95);
            let l = disc_point(&mut rng, 0.95);
            // triangular with constant diagonal l
            let b = CMatrix::from_fn(n, |i, j| {
                if i == j {
                    l
                } else if j > i {
                    gaussian(&mut rng)
                } else {
                    C64::new(0.0, 0.0)
                }
            });
            let m = mobius(t, l).unwrap();
            assert!((lempert_scalar_base(t, &b).unwrap() - m).abs() < 1e-6);
            let bn =
                bottleneck_minimax(&Spectrum::new(vec![t; n]), &Spectrum::new(vec![l; n])).unwrap();
            assert!((bn.value - m).abs() < 1e-15);
        }
    }
}

#[test]
fn disc_examples() {
    let a = CMatrix::real_diag(&[0.3, -0.2]);
    let w = upper_bound_disc(&a, &a, 0.5).unwrap();
    assert!(w.is_valid(1e-8));
    for k in 0..8 {
        let z = C64::from_polar(0.9, k as f64);
        assert!(w.curve.eval(z).dist(&a) < 1e-12);
    }

    let b = CMatrix::real_diag(&[0.5, 0.2]);
    let w = upper_bound_disc(&CMatrix::zeros(2), &b, 0.51).unwrap();
    assert!(w.is_valid(1e-8), "{:?}", w.grid);
    let exact = lempert_scalar_base(re(0.0), &b).unwrap();
    assert!(0.51 - exact <= 0.01 + 1e-12);

    let w = upper_bound_disc(
        &CMatrix::real_diag(&[0.1, 0.8]),
        &CMatrix::real_diag(&[0.15, 0.75]),
        0.13,
    )
    .unwrap();
    assert!((w.bottleneck - 0.125).abs() < 1e-12);
    assert!(w.is_valid(1e-8), "{:?}", w.grid);
}

#[test]
fn disc_rejects_small_s1_and_outside_points() {
    let a = CMatrix::real_diag(&[0.1, 0.8]);
    let b = CMatrix::real_diag(&[0.15, 0.75]);
    assert!(matches!(
        upper_bound_disc(&a, &b, 0.12),
        Err(Error::Infeasible(_))
    ));
    assert!(matches!(
        upper_bound_disc(&a, &b, 0.125),
        Err(Error::Infeasible(_))
    ));
    let out = CMatrix::real_diag(&[1.1, 0.0]);
    assert!(matches!(
        upper_bound_disc(&out, &b, 0.5),
        Err(Error::Domain(_))
    ));
}

#[test]
fn random_discs_are_valid() {
    let mut rng = rng(43);
    for n in 1..=4 {
        for _ in 0..15 {
            let a = random_in_ball(&mut rng, n, 0.8);
            let b = random_in_ball(&mut rng, n, 0.8);
            let s = bottleneck_minimax(&spectrum(&a).unwrap(), &spectrum(&b).unwrap())
                .unwrap()
                .value;
            let w = upper_bound_disc(&a, &b, s + 0.01).unwrap();
            assert!(
                w.is_valid(1e-8),
                "n={n}: {:?} {} {}",
                w.grid,
                w.start_residual,
                w.end_residual
            );
        }
    }
}

#[test]
fn scalar_base_bound_converges() {
    let mut rng = rng(44);
    for n in 1..=4 {
        let t = disc_point(&mut rng, 0.5);
        let b = random_in_ball(&mut rng, n, 0.8);
        let exact = lempert_scalar_base(t, &b).unwrap();
        let a = CMatrix::scalar(n, t);
        let s = bottleneck_minimax(&spectrum(&a).unwrap(), &spectrum(&b).unwrap())
            .unwrap()
            .value;
        assert!((s - exact).abs() < 1e-9);
        for gap in [0.01, 0.001] {
            let w = upper_bound_disc(&a, &b, s + gap).unwrap();
            assert!(w.is_valid(1e-8));
            assert!(s + gap - exact <= 0.011);
        }
    }
}

#[test]
fn hull_examples() {
    let (h, inside) = hull_membership(&CMatrix::real_diag(&[2.5, -2.5, 1.0]));
    assert!((h - 1.0 / 3.0).abs() < 1e-15 && inside);
    assert_eq!(hull_membership(&CMatrix::identity(3)), (1.0, false));
    assert_eq!(hull_membership(&CMatrix::zeros(2)), (0.0, true));

    let a = CMatrix::real_diag(&[1.5, -1.0]);
    let w = hull_witness(&a).unwrap();
    assert!(w.reconstruct().dist(&a) < 1e-12);
    let z = &(&w.similarity.adjoint() * &a.shift(re(-0.25))) * &w.similarity;
    assert!(z[(0, 0)].norm() < 1e-12 && z[(1, 1)].norm() < 1e-12);
    assert!((z[(0, 1)] * z[(1, 0)] - re(1.5625)).norm() < 1e-12);
    for t in &w.terms {
        let s = spectrum(t).unwrap();
        assert!(s.values().iter().all(|v| (v - re(0.25)).norm() < 1e-6));
    }
    assert!(matches!(
        hull_witness(&CMatrix::identity(2)),
        Err(Error::Domain(_))
    ));
}

#[test]
fn random_hull_witnesses() {
    let mut rng = rng(45);
    for n in 2..=5 {
        for _ in 0..40 {
            let g = gaussian_matrix(&mut rng, n).scale_real(2.0);
            // push the trace inside |tr| < n
            let target = disc_point(&mut rng, 0.99) * n as f64;
            let a = g.shift((target - g.trace()) / n as f64);
            let w = hull_witness(&a).unwrap();
            assert!(w.reconstruct().dist(&a) <= 1e-9 * (1.0 + a.norm_fro()));
            assert!(w.similarity.unitarity_defect() < 1e-12);
            for t in &w.terms {
                assert!(spectrum(t).unwrap().radius() < 1.0);
            }
        }
    }
}

#[test]
fn hull_is_convex_and_homogeneous() {
    let mut rng = rng(46);
    for n in 1..=4 {
        for _ in 0..50 {
            let a1 = random_in_ball(&mut rng, n, 0.999);
            let a2 = random_in_ball(&mut rng, n, 0.999);
            let w: f64 = rand::Rng::random(&mut rng);
            let mix = &a1.scale_real(w) + &a2.scale_real(1.0 - w);
            assert!(hull_membership(&mix).1);
            let c: f64 = 3.0 * rand::Rng::random::<f64>(&mut rng);
            let (h, _) = hull_membership(&a1);
            let (hc, _) = hull_membership(&a1.scale_real(c));
            assert!((hc - c * h).abs() <= 1e-12);
        }
    }
}
