use num_complex::Complex64;
use stiefel_geo::geodesics::{HorizontalCurve, SubRiemannianGeodesic};
use stiefel_geo::lie::{Distribution, DistributionKind, LieStructure, ProductElement};
use stiefel_geo::linalg::{self, block_diag, determinant, i_nk, Matrix};
use stiefel_geo::metrics::*;
use stiefel_geo::random::{self, CorpusRng};
use stiefel_geo::{Algebra, GeoError, Quaternion, Scalar};

fn grid(algebra: Algebra) -> Vec<(usize, usize)> {
    match algebra {
        Algebra::Quaternion => vec![(2, 1), (3, 1)],
        _ => vec![(3, 1), (4, 2), (5, 2), (5, 3)],
    }
}

fn dist<T: Scalar>(kind: DistributionKind, n: usize, k: usize) -> Distribution {
    Distribution::new(kind, n, k, T::ALGEBRA).unwrap()
}

/// Random point `gI_{nk}` and tangent `g[A; −B*]`.
fn tangent<T: Scalar>(rng: &mut CorpusRng, n: usize, k: usize) -> TangentVector<T> {
    let g = random::group_element::<T>(rng, n);
    let a = random::algebra_element::<T>(rng, k);
    let b = random::matrix::<T>(rng, k, n - k);
    let y = Matrix::from_fn(n, k, |r, c| if r < k { a[(r, c)] } else { -b[(c, r - k)].conj() });
    TangentVector::new(&g * &i_nk(n, k), &g * &y).unwrap()
}

fn isometry<T: Scalar>(seed: u64, trials: usize) -> (f64, f64) {
    let mut rng = random::rng(seed, "isometry");
    let (mut worst, mut spread) = (0.0f64, 0.0f64);
    let cells = grid(T::ALGEBRA);
    for i in 0..trials {
        let (n, k) = cells[i % cells.len()];
        let v = tangent::<T>(&mut rng, n, k);
        let ctx = LiftContext::complete(&v.at).unwrap();
        let red = stiefel_norm(&v, MetricTag::ReducedTrace, &ctx).unwrap();
        let qg = stiefel_norm(&v, MetricTag::QuasiGeodesicTrace, &ctx).unwrap();
        let orth = stiefel_norm(&v, MetricTag::OrthogonalTrace, &ctx).unwrap();
        worst = worst.max((red - qg).abs());
        spread = spread.max((red - orth).abs() / red);
    }
    (worst, spread)
}

#[test]
fn reduced_and_quasi_geodesic_metrics_coincide() {
    for (worst, spread) in [isometry::<f64>(1, 1000), isometry::<Complex64>(2, 1000), isometry::<Quaternion>(3, 400)] {
        assert!(worst < 1e-12, "{worst:e}");
        assert!(spread > 0.1, "{spread}");
    }
}

fn norms_match_controls<T: Scalar>(seed: u64) {
    let mut rng = random::rng(seed, "norm-oracle");
    for (n, k) in grid(T::ALGEBRA) {
        let r = random::group_element::<T>(&mut rng, n);
        let s = random::group_element::<T>(&mut rng, k);
        let a = random::algebra_element::<T>(&mut rng, k);
        let b = random::matrix::<T>(&mut rng, k, n - k);
        let c = random::algebra_element::<T>(&mut rng, n - k);
        let ctx = LiftContext::new(&r * &block_diag(&s.adjoint(), &Matrix::identity(n - k)), &(&(&r * &i_nk(n, k)) * &s.adjoint()))
            .unwrap();
        let velocity = |curve: &HorizontalCurve<T>| {
            let d = push_forward(&curve.lift(0.0), &curve.control(0.0), k);
            TangentVector::new(curve.point(0.0), d).unwrap()
        };
        let cases = [
            (HorizontalCurve::orthogonal(&r, &s, &a, &b).unwrap(), MetricTag::OrthogonalTrace),
            (HorizontalCurve::quasi(&r, &s, &b, &a).unwrap(), MetricTag::QuasiGeodesicTrace),
        ];
        for (curve, tag) in &cases {
            let norm = stiefel_norm(&velocity(curve), *tag, &ctx).unwrap();
            let u = curve.control(0.0);
            assert!((norm - u.norm().powi(2)).abs() < 1e-8 * norm.max(1.0), "{tag:?}");
        }
        // The reduced curve starts at rI_{nk}; lift through (r, I).
        let red = HorizontalCurve::reduced(&r, &a, &b).unwrap();
        let v = velocity(&red);
        let ctx = LiftContext::new(r.clone(), &v.at).unwrap();
        let norm = stiefel_norm(&v, MetricTag::ReducedTrace, &ctx).unwrap();
        assert!((norm - red.control(0.0).norm().powi(2)).abs() < 1e-8 * norm.max(1.0));
        // Ambient: ‖Ẋ‖_F² = 2‖A‖² + ‖B‖² for Ẋ = g[A; −B*].
        let amb = HorizontalCurve::ambient(&r, &a, &b, &c).unwrap();
        let v = velocity(&amb);
        let expect = 2.0 * skew_norm_sqr(&a.scale(0.5)) + b.frobenius_sqr();
        assert!((stiefel_norm(&v, MetricTag::Ambient, &ctx).unwrap() - expect).abs() < 1e-8 * expect.max(1.0));
    }
}

#[test]
fn metric_formulas_match_control_lengths() {
    norms_match_controls::<f64>(11);
    norms_match_controls::<Complex64>(12);
    norms_match_controls::<Quaternion>(13);
}

fn completion<T: Scalar>(seed: u64) {
    let mut rng = random::rng(seed, "completion");
    for (n, k) in grid(T::ALGEBRA) {
        let v = tangent::<T>(&mut rng, n, k);
        let ctx = LiftContext::complete(&v.at).unwrap();
        assert!(ctx.g.unitary_residual() < 1e-12);
        assert!((&ctx.g.left_cols(k) - &v.at).max_abs() < 1e-12);
        if T::ALGEBRA != Algebra::Quaternion {
            let det = determinant(&T::to_complex_matrix(&ctx.g));
            assert!((det - Complex64::new(1.0, 0.0)).norm() < 1e-12, "{det}");
        }
        let w = lift_tangent(&v, &ctx).unwrap();
        let st = LieStructure::<T>::new(dist::<T>(DistributionKind::Reduced, n, k)).unwrap();
        assert!(st.p_residual(&ProductElement::single(w.clone())) < 1e-12);
        assert!((&(&(&ctx.g * &w) * &i_nk(n, k)) - &v.dir).max_abs() < 1e-12);
    }
}

#[test]
fn lift_context_and_horizontal_lift() {
    completion::<f64>(21);
    completion::<Complex64>(22);
    completion::<Quaternion>(23);
}

#[test]
fn lift_rejects_trace_direction_over_c() {
    let x = i_nk::<Complex64>(3, 1);
    let i = Complex64::new(0.0, 1.0);
    let v = TangentVector::new(x.clone(), x.scale_right(i)).unwrap();
    let ctx = LiftContext::complete(&x).unwrap();
    assert!(matches!(lift_tangent(&v, &ctx), Err(GeoError::NotTraceless(_))));
}

#[test]
fn tangent_validation() {
    let x = i_nk::<f64>(3, 1);
    assert!(matches!(TangentVector::new(x.clone(), x.clone()), Err(GeoError::NotTangent(_))));
    assert!(matches!(TangentVector::new(x.scale(2.0), x.clone()), Err(GeoError::NotUnitary(_))));
    assert!(matches!(TangentVector::new(x.clone(), Matrix::zeros(2, 1)), Err(GeoError::Shape(_))));
    assert!(LiftContext::new(Matrix::identity(3), &i_nk::<f64>(3, 2).scale(-1.0)).is_err());
}

#[test]
fn sphere_metrics_agree() {
    let mut rng = random::rng(31, "sphere-metrics");
    for n in [2, 3, 6] {
        for _ in 0..20 {
            let v = tangent::<f64>(&mut rng, n, 1);
            let ctx = LiftContext::complete(&v.at).unwrap();
            let (red, amb) = (
                stiefel_norm(&v, MetricTag::ReducedTrace, &ctx).unwrap(),
                stiefel_norm(&v, MetricTag::Ambient, &ctx).unwrap(),
            );
            assert!((red - amb).abs() < 1e-12 * amb.max(1.0));
            let v = tangent::<Complex64>(&mut rng, n, 1);
            let ctx = LiftContext::complete(&v.at).unwrap();
            let (red, amb) = (
                stiefel_norm(&v, MetricTag::ReducedTrace, &ctx).unwrap(),
                stiefel_norm(&v, MetricTag::Ambient, &ctx).unwrap(),
            );
            assert!((red - amb).abs() < 1e-12 * amb.max(1.0));
        }
    }
}

fn ambient_relations<T: Scalar>(seed: u64) {
    let mut rng = random::rng(seed, "ambient-relation");
    for (n, k) in grid(T::ALGEBRA) {
        let st = LieStructure::<T>::new(dist::<T>(DistributionKind::Reduced, n, k)).unwrap();
        let u1 = st.random_p(&mut rng).first;
        let u2 = st.random_p(&mut rng).first;
        let (lhs, rhs) = ambient_vs_trace_relation(&u1, &u2, k).unwrap();
        assert!((lhs - rhs).abs() < 1e-12 * lhs.abs().max(1.0));
        let c = random::algebra_element::<T>(&mut rng, n - k);
        let l = linalg::assemble_gn(&random::algebra_element(&mut rng, k), &random::matrix(&mut rng, k, n - k), &c).unwrap();
        let (h, closed) = ambient_hamiltonian(&l, k).unwrap();
        assert!((h - closed).abs() < 1e-12 * closed.max(1.0));
    }
    let bad = Matrix::<T>::identity(3);
    assert!(ambient_vs_trace_relation(&bad, &bad, 1).is_err());
}

#[test]
fn ambient_form_and_hamiltonian() {
    ambient_relations::<f64>(41);
    ambient_relations::<Complex64>(42);
    ambient_relations::<Quaternion>(43);
}

fn unit(p: &ProductElement<impl Scalar>) -> f64 {
    1.0 / p.norm()
}

fn sr_curvature<T: Scalar>(seed: u64, kind: DistributionKind) {
    let mut rng = random::rng(seed, "sr-curvature");
    for (n, k) in grid(T::ALGEBRA) {
        let st = LieStructure::<T>::new(dist::<T>(kind, n, k)).unwrap();
        let pp = st.random_p(&mut rng);
        let pp = pp.scale(unit(&pp));
        let pperp = st.random_perp(&mut rng);
        let geo = SubRiemannianGeodesic::new(&st, st.random_group(&mut rng), pp.clone(), pperp.clone()).unwrap();
        let expect = pp.bracket(&pperp).norm();
        let samples: Vec<f64> = (0..10)
            .map(|i| geodesic_curvature(&st, &geo.curve, -0.5 + 0.3 * i as f64).unwrap())
            .collect();
        let mean = samples.iter().sum::<f64>() / 10.0;
        let std = (samples.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / 10.0).sqrt();
        assert!(std < 1e-7, "{kind:?} ({n},{k}) std {std:e}");
        assert!((mean - expect).abs() < 1e-6, "{kind:?} ({n},{k}) {mean} vs {expect}");
    }
}

#[test]
fn sub_riemannian_projections_have_constant_curvature() {
    for kind in [DistributionKind::Reduced, DistributionKind::Orthogonal] {
        sr_curvature::<f64>(51, kind);
        sr_curvature::<Complex64>(52, kind);
        sr_curvature::<Quaternion>(53, kind);
    }
}

fn quasi_curvature<T: Scalar>(seed: u64) {
    let mut rng = random::rng(seed, "quasi-curvature");
    let st_cache = |n, k| LieStructure::<T>::new(dist::<T>(DistributionKind::Reduced, n, k)).unwrap();
    for (n, k) in grid(T::ALGEBRA) {
        let st = st_cache(n, k);
        let r = random::group_element::<T>(&mut rng, n);
        let s = random::group_element::<T>(&mut rng, k);
        let a = random::algebra_element::<T>(&mut rng, k);
        let b = random::matrix::<T>(&mut rng, k, n - k);
        let speed = (skew_norm_sqr(&a) + b.frobenius_sqr()).sqrt();
        let (a, b) = (a.scale(1.0 / speed), b.scale(1.0 / speed));
        let zk = Matrix::zeros(k, k);
        let zm = Matrix::zeros(n - k, n - k);
        let lift = HorizontalCurve::sr_qg_reduced_lift(&r, &s, &a, &b, &zk, &zm).unwrap();
        let expect = (&a * &b).frobenius();
        for i in 0..10 {
            let kappa = geodesic_curvature(&st, &lift, 0.2 * i as f64).unwrap();
            assert!((kappa - expect).abs() < 1e-6, "({n},{k}) {kappa} vs {expect}");
        }
    }
}

#[test]
fn quasi_geodesic_curvature_closed_form() {
    quasi_curvature::<f64>(61);
    quasi_curvature::<Complex64>(62);
    quasi_curvature::<Quaternion>(63);
}

#[test]
fn geodesics_have_zero_covariant_acceleration() {
    let mut rng = random::rng(71, "zero-acceleration");
    let st = LieStructure::<f64>::new(dist::<f64>(DistributionKind::Reduced, 5, 2)).unwrap();
    let p = st.random_p(&mut rng);
    let geo = SubRiemannianGeodesic::new(&st, st.random_group(&mut rng), p, st.zero()).unwrap();
    let d = covariant_derivative(&st, &geo.curve, |t| geo.curve.control(t), 0.7).unwrap();
    assert!(d.norm < 1e-8 && d.tangent.max_abs() < 1e-8);
}

#[test]
fn covariant_derivative_needs_horizontal_lift() {
    let mut rng = random::rng(72, "non-horizontal");
    let st = LieStructure::<f64>::new(dist::<f64>(DistributionKind::Reduced, 4, 2)).unwrap();
    let mut curve = HorizontalCurve::reduced(
        &Matrix::identity(4),
        &random::algebra_element(&mut rng, 2),
        &random::matrix(&mut rng, 2, 2),
    )
    .unwrap();
    curve.chain.gens[0] = ProductElement::single(random::algebra_element(&mut rng, 4));
    assert!(matches!(
        covariant_derivative(&st, &curve, |t| curve.control(t), 0.0),
        Err(GeoError::NotInSubspace { .. })
    ));
    let other = LieStructure::<f64>::new(dist::<f64>(DistributionKind::Orthogonal, 4, 2)).unwrap();
    assert!(geodesic_curvature(&other, &curve, 0.0).is_err());
}
