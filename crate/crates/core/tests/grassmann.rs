use num_complex::Complex64;
use stiefel_geo::geodesics::{quasi_geodesic, sr_qg_projection};
use stiefel_geo::grassmann::*;
use stiefel_geo::lie::{Distribution, DistributionKind, LieStructure};
use stiefel_geo::linalg::{block_diag, off_diag, Matrix};
use stiefel_geo::metrics::geodesic_curvature;
use stiefel_geo::random::{self, CorpusRng};
use stiefel_geo::{Algebra, Quaternion, Scalar};

fn grid(algebra: Algebra) -> Vec<(usize, usize)> {
    match algebra {
        Algebra::Quaternion => vec![(2, 1), (3, 1)],
        _ => vec![(3, 1), (4, 2), (5, 2), (5, 3)],
    }
}

/// `diag(E, F) ∈ 𝔤ₙ`.
fn ef<T: Scalar>(rng: &mut CorpusRng, n: usize, k: usize) -> (Matrix<T>, Matrix<T>) {
    let kk = random::algebra_element::<T>(rng, n);
    (kk.block(0, 0, k, k), {
        let mut f = kk.block(k, k, n - k, n - k);
        if T::ALGEBRA.traceless() {
            let shift = (kk.block(0, 0, k, k).trace() + f.trace()).scale(1.0 / (n - k) as f64);
            for i in 0..n - k {
                f[(i, i)] -= shift;
            }
        }
        f
    })
}

fn quasi_projects_to_geodesic<T: Scalar>(seed: u64) {
    let mut rng = random::rng(seed, "quasi-projection");
    for (n, k) in grid(T::ALGEBRA) {
        let r = random::group_element::<T>(&mut rng, n);
        let s = random::group_element::<T>(&mut rng, k);
        let a = random::algebra_element::<T>(&mut rng, k);
        let b = random::matrix::<T>(&mut rng, k, n - k);
        let (e, f) = ef::<T>(&mut rng, n, k);
        for i in 0..=20 {
            let t = 0.1 * i as f64;
            let x = quasi_geodesic(&r, &s, &b, &a, t).unwrap();
            let geo = grassmann_geodesic(&r, &b, t).unwrap();
            assert!((project_stiefel(&x).unwrap().reflection() - geo.reflection()).max_abs() < 1e-10);
            let y = sr_qg_projection(&r, &s, &a, &b, &e, &f, t).unwrap();
            let cc = constant_curvature_curve(&r, &b, &e, &f, t).unwrap();
            assert!((project_stiefel(&y).unwrap().reflection() - cc.reflection()).max_abs() < 1e-10);
        }
    }
}

#[test]
fn quasi_geodesics_project_to_grassmann_geodesics() {
    quasi_projects_to_geodesic::<f64>(1);
    quasi_projects_to_geodesic::<Complex64>(2);
    quasi_projects_to_geodesic::<Quaternion>(3);
}

fn curvature<T: Scalar>(seed: u64) {
    let mut rng = random::rng(seed, "grassmann-curvature");
    for (n, k) in grid(T::ALGEBRA) {
        let st = LieStructure::<T>::new(Distribution::new(DistributionKind::Grassmann, n, k, T::ALGEBRA).unwrap()).unwrap();
        let g0 = random::group_element::<T>(&mut rng, n);
        let b = random::matrix::<T>(&mut rng, k, n - k);
        let b = b.scale(1.0 / b.frobenius());
        let zero = (Matrix::zeros(k, k), Matrix::zeros(n - k, n - k));
        for (e, f) in [zero, ef::<T>(&mut rng, n, k)] {
            let lift = grassmann_lift(&g0, &b, &e, &f).unwrap();
            let p = off_diag(&b);
            let kk = block_diag(&e, &f);
            let expect = p.commutator(&kk).frobenius() / std::f64::consts::SQRT_2;
            let samples: Vec<f64> = (0..10).map(|i| geodesic_curvature(&st, &lift, 0.2 * i as f64).unwrap()).collect();
            for kappa in &samples {
                assert!((kappa - expect).abs() < 1e-6, "({n},{k}) {kappa} vs {expect}");
            }
            let flat = e.max_abs() == 0.0 && f.max_abs() == 0.0;
            assert_eq!(samples[0] < 1e-6, flat, "({n},{k}) curvature {}", samples[0]);
        }
    }
}

#[test]
fn curvature_vanishes_only_for_geodesics() {
    curvature::<f64>(11);
    curvature::<Complex64>(12);
    curvature::<Quaternion>(13);
}

#[test]
fn symmetric_space_checks() {
    let mut rng = random::rng(21, "symmetry");
    for (n, k) in grid(Algebra::Real) {
        assert!(geodesic_symmetry_check::<f64>(n, k, 5, &mut rng).unwrap().pass);
        assert!(geodesic_symmetry_check::<Complex64>(n, k, 5, &mut rng).unwrap().pass);
    }
    for (n, k) in grid(Algebra::Quaternion) {
        let report = geodesic_symmetry_check::<Quaternion>(n, k, 5, &mut rng).unwrap();
        assert!(report.pass, "{report:?}");
    }
    assert!(geodesic_symmetry_check::<f64>(3, 4, 1, &mut rng).is_err());
}

#[test]
fn action_is_equivariant() {
    let mut rng = random::rng(31, "equivariance");
    let o = random::group_element::<Complex64>(&mut rng, 5);
    let g0 = random::group_element::<Complex64>(&mut rng, 5);
    let b = random::matrix::<Complex64>(&mut rng, 2, 3);
    for t in [0.0, 0.6, 1.9] {
        let lhs = act(&o, &grassmann_geodesic(&g0, &b, t).unwrap()).unwrap();
        let rhs = grassmann_geodesic(&(&o * &g0), &b, t).unwrap();
        assert!((lhs.reflection() - rhs.reflection()).max_abs() < 1e-12);
        assert_eq!(lhs.k(), 2);
    }
    assert!(act(&o.scale(2.0), &GrassmannPoint::base(5, 2)).is_err());
}
