use num_complex::Complex64;
use stiefel_geo::geodesics::*;
use stiefel_geo::lie::{Distribution, DistributionKind, LieStructure, ProductElement};
use stiefel_geo::linalg::{self, block_diag, i_nk, Matrix};
use stiefel_geo::random::{self, CorpusRng};
use stiefel_geo::{Algebra, Quaternion, Scalar};

const GRID: [(usize, usize); 4] = [(3, 1), (4, 2), (5, 2), (5, 3)];

fn grid(algebra: Algebra) -> Vec<(usize, usize)> {
    match algebra {
        Algebra::Quaternion => vec![(2, 1), (3, 1)],
        _ => GRID.to_vec(),
    }
}

struct Data<T: Scalar> {
    r: Matrix<T>,
    s: Matrix<T>,
    a: Matrix<T>,
    b: Matrix<T>,
    e: Matrix<T>,
    f: Matrix<T>,
}

fn data<T: Scalar>(rng: &mut CorpusRng, n: usize, k: usize) -> Data<T> {
    let e = random::skew::<T>(rng, k);
    let mut f = random::skew::<T>(rng, n - k);
    if T::ALGEBRA.traceless() && n > k {
        // diag(E, F) ∈ su(n)
        let shift = (e.trace() + f.trace()).scale(1.0 / (n - k) as f64);
        for i in 0..n - k {
            f[(i, i)] -= shift;
        }
    }
    Data {
        r: random::group_element(rng, n),
        s: random::group_element(rng, k),
        a: random::algebra_element(rng, k),
        b: random::matrix(rng, k, n - k),
        e,
        f,
    }
}

fn fd_control<T: Scalar>(c: &HorizontalCurve<T>, t: f64) -> ProductElement<T> {
    let h = 1e-5;
    let d = (&c.lift(t + h) - &c.lift(t - h)).scale(0.5 / h);
    &c.lift(t).adjoint() * &d
}

fn for_each_algebra(f: &dyn Fn(Algebra, u64)) {
    for (i, alg) in Algebra::ALL.into_iter().enumerate() {
        f(alg, 100 + i as u64);
    }
}

fn curve_checks<T: Scalar>(seed: u64) {
    let mut rng = random::rng(seed, "curves");
    for (n, k) in grid(T::ALGEBRA) {
        for _ in 0..3 {
            let d = data::<T>(&mut rng, n, k);
            let curves = [
                HorizontalCurve::reduced(&d.r, &d.a, &d.b).unwrap(),
                HorizontalCurve::orthogonal(&d.r, &d.s, &d.a, &d.b).unwrap(),
                HorizontalCurve::sr_qg(&d.r, &d.s, &d.a, &d.b, &d.e, &d.f).unwrap(),
                HorizontalCurve::sr_qg_reduced_lift(&d.r, &d.s, &d.a, &d.b, &d.e, &d.f).unwrap(),
                HorizontalCurve::quasi(&d.r, &d.s, &d.b, &d.a).unwrap(),
            ];
            for c in &curves {
                let st = LieStructure::<T>::new(c.dist).unwrap();
                for t in [-0.7, 0.0, 0.4, 1.3] {
                    let u = c.control(t);
                    assert!(st.p_residual(&u) < 1e-10, "{} control leaves p", c.dist);
                    assert!((&fd_control(c, t) - &u).max_abs() < 1e-6);
                    assert!(c.point(t).unitary_residual() < 1e-10);
                    assert!(c.lift(t).unitary_residual() < 1e-10);
                }
            }
        }
    }
}

#[test]
fn horizontal_curves_have_exact_controls_in_p() {
    curve_checks::<f64>(1);
    curve_checks::<Complex64>(2);
    curve_checks::<Quaternion>(3);
}

fn closed_forms_agree<T: Scalar>(seed: u64) {
    let mut rng = random::rng(seed, "closed-forms");
    for (n, k) in grid(T::ALGEBRA) {
        let d = data::<T>(&mut rng, n, k);
        let zk = Matrix::<T>::zeros(k, k);
        let zm = Matrix::<T>::zeros(n - k, n - k);
        let red = HorizontalCurve::reduced(&d.r, &d.a, &d.b).unwrap();
        let orth = HorizontalCurve::orthogonal(&d.r, &d.s, &d.a, &d.b).unwrap();
        let srqg = HorizontalCurve::sr_qg(&d.r, &d.s, &d.a, &d.b, &d.e, &d.f).unwrap();
        let srqg_red = HorizontalCurve::sr_qg_reduced_lift(&d.r, &d.s, &d.a, &d.b, &d.e, &d.f).unwrap();
        for t in [-1.1, 0.0, 0.3, 2.0] {
            let close = |x: &Matrix<T>, y: &Matrix<T>| (x - y).max_abs() < 1e-10;
            assert!(close(&red.point(t), &stiefel_geodesic_reduced(&d.r, &d.a, &d.b, t).unwrap()));
            assert!(close(&orth.point(t), &stiefel_geodesic_orthogonal(&d.r, &d.s, &d.a, &d.b, t).unwrap()));
            let proj = sr_qg_projection(&d.r, &d.s, &d.a, &d.b, &d.e, &d.f, t).unwrap();
            assert!(close(&srqg.point(t), &proj));
            assert!(close(&srqg_red.point(t), &proj));
            let q = quasi_geodesic(&d.r, &d.s, &d.b, &d.a, t).unwrap();
            assert!(close(&q, &quasi_geodesic_alt(&d.r, &d.s, &d.b, &d.a, t).unwrap()));
            assert!(close(&q, &sr_qg_projection(&d.r, &d.s, &d.a, &d.b, &zk, &zm, t).unwrap()));
            let minus_a = d.a.scale(-1.0);
            assert!(close(
                &geod_qg(&d.r, &d.s, &d.a, &d.b, t).unwrap(),
                &sr_qg_projection(&d.r, &d.s, &d.a, &d.b, &minus_a, &zm, t).unwrap()
            ));
        }
        let start = stiefel_geodesic_reduced(&d.r, &d.a, &d.b, 0.0).unwrap();
        assert!((&start - &(&d.r * &i_nk(n, k))).max_abs() < 1e-14);
    }
}

#[test]
fn closed_forms_agree_with_chains() {
    closed_forms_agree::<f64>(11);
    closed_forms_agree::<Complex64>(12);
    closed_forms_agree::<Quaternion>(13);
}

#[test]
fn rotation_example() {
    // n = 2, k = 1 over ℝ: a great circle e^{tΩ} e₁ = (cos bt, −sin bt).
    let r = Matrix::<f64>::identity(2);
    let a = Matrix::zeros(1, 1);
    let b = Matrix::from_rows(&[vec![0.5]]).unwrap();
    for t in [0.0, 0.7, 3.0] {
        let x = stiefel_geodesic_reduced(&r, &a, &b, t).unwrap();
        assert!((x[(0, 0)] - (0.5 * t).cos()).abs() < 1e-14);
        assert!((x[(1, 0)] + (0.5 * t).sin()).abs() < 1e-14);
    }
}

fn master_geodesic<T: Scalar>(seed: u64) {
    let mut rng = random::rng(seed, "master");
    for (n, k) in grid(T::ALGEBRA) {
        for kind in DistributionKind::ALL {
            let st = LieStructure::<T>::new(Distribution::new(kind, n, k, T::ALGEBRA).unwrap()).unwrap();
            for _ in 0..4 {
                let g0 = st.random_group(&mut rng);
                let pp = st.random_p(&mut rng);
                let pperp = st.random_perp(&mut rng);
                let geo = SubRiemannianGeodesic::new(&st, g0, pp.clone(), pperp.clone()).unwrap();
                let speed = pp.norm();
                for t in [-0.5, 0.0, 0.8, 1.7] {
                    let u = geo.control(t);
                    let (_, rest) = st.decompose(&u).unwrap();
                    assert!(rest.norm() < 1e-10);
                    assert!((u.norm() - speed).abs() < 1e-12 * speed.max(1.0));
                    assert!((&u - &geo.curve.control(t)).max_abs() < 1e-11);
                    assert!((&fd_control(&geo.curve, t) - &u).max_abs() < 1e-5);
                }
            }
            let bad = st.random_perp(&mut rng);
            if bad.norm() > 1e-8 {
                assert!(SubRiemannianGeodesic::new(&st, st.identity(), bad, st.zero()).is_err());
            }
        }
    }
}

#[test]
fn master_geodesic_is_horizontal_with_constant_speed() {
    master_geodesic::<f64>(21);
    master_geodesic::<Complex64>(22);
    master_geodesic::<Quaternion>(23);
}

fn ode_oracle<T: Scalar>(seed: u64) {
    let mut rng = random::rng(seed, "ode");
    for (n, k) in grid(T::ALGEBRA) {
        let d = data::<T>(&mut rng, n, k);
        let blocks = LiftBlocks::conjugated(&d.s, &d.a, &d.b, &d.e, &d.f);
        let g0 = &d.r * &block_diag(&d.s.adjoint(), &Matrix::identity(n - k));
        let exact = horizontal_lift_closed_form(&g0, &blocks, 1.0).unwrap();
        let ode = horizontal_lift_ode(&g0, &blocks, 1.0, 1000).unwrap();
        assert!((&ode - &exact).max_abs() < 1e-9, "{:e}", (&ode - &exact).max_abs());
        // The closed form is the reduced-horizontal lift of the quasi-geodesic family.
        let lift = HorizontalCurve::sr_qg_reduced_lift(&d.r, &d.s, &d.a, &d.b, &d.e, &d.f).unwrap();
        assert!((&lift.lift(1.0).first - &exact).max_abs() < 1e-10);
    }
}

#[test]
fn ode_matches_closed_form() {
    ode_oracle::<f64>(31);
    ode_oracle::<Complex64>(32);
    ode_oracle::<Quaternion>(33);
}

#[test]
fn ode_error_is_fourth_order() {
    let mut rng = random::rng(34, "ode-order");
    for (n, k) in [(4, 2), (5, 3)] {
        let d = data::<Complex64>(&mut rng, n, k);
        let scale = |m: &Matrix<Complex64>| m.scale(2.5 / m.frobenius().max(1e-12));
        let blocks = LiftBlocks::conjugated(&d.s, &scale(&d.a), &scale(&d.b), &scale(&d.e), &scale(&d.f));
        let g0 = Matrix::identity(n);
        let exact = horizontal_lift_closed_form(&g0, &blocks, 1.5).unwrap();
        let err: Vec<f64> = [200, 400, 800]
            .iter()
            .map(|&s| (&horizontal_lift_ode(&g0, &blocks, 1.5, s).unwrap() - &exact).max_abs())
            .collect();
        for w in err.windows(2) {
            let ratio = w[0] / w[1];
            assert!((8.0..=32.0).contains(&ratio), "ratios {err:?}");
        }
    }
}

#[test]
fn ode_rejects_bad_input() {
    let blocks = LiftBlocks {
        a: Matrix::<f64>::zeros(1, 1),
        e: Matrix::zeros(1, 1),
        b: Matrix::zeros(1, 2),
        f: Matrix::zeros(2, 2),
    };
    assert!(horizontal_lift_ode(&Matrix::identity(3), &blocks, 1.0, 0).is_err());
    assert!(horizontal_lift_ode(&Matrix::identity(4), &blocks, 1.0, 10).is_err());
}

fn euler_lagrange<T: Scalar>(seed: u64) -> f64 {
    let mut rng = random::rng(seed, "euler-lagrange");
    let mut worst = 0.0f64;
    for (n, k) in grid(T::ALGEBRA) {
        let d = data::<T>(&mut rng, n, k);
        // Unit ambient speed: ‖Ẋ(0)‖² = ‖A/2‖_F² + ‖B‖_F².
        let speed = (d.a.scale(0.5).frobenius_sqr() + d.b.frobenius_sqr()).sqrt();
        let (a, b) = (d.a.scale(1.0 / speed), d.b.scale(1.0 / speed));
        let zc = Matrix::zeros(n - k, n - k);
        for i in 0..10 {
            let t = -1.0 + 0.25 * i as f64;
            let curve = HorizontalCurve::ambient(&d.r, &a, &b, &zc).unwrap();
            let r = anchored_euler_lagrange_residual(&curve, t, H_SECOND).unwrap();
            let plain = euler_lagrange_residual(|s| ambient_geodesic(&d.r, &a, &b, &zc, s).unwrap(), t, H_SECOND)
                .unwrap();
            assert!(plain < 1e-6, "{plain:e}");
            worst = worst.max(r);
        }
    }
    worst
}

#[test]
fn ambient_geodesics_solve_euler_lagrange() {
    for (worst, alg) in [
        (euler_lagrange::<f64>(41), "real"),
        (euler_lagrange::<Complex64>(42), "complex"),
        (euler_lagrange::<Quaternion>(43), "quaternion"),
    ] {
        assert!(worst < 1e-7, "{alg}: {worst:e}");
    }
}

#[test]
fn reduced_geodesic_is_not_ambient() {
    let mut rng = random::rng(44, "el-negative");
    let d = data::<f64>(&mut rng, 4, 2);
    let a = d.a.scale((2.0f64).sqrt() / d.a.frobenius());
    assert!((stiefel_geo::metrics::skew_norm_sqr(&a) - 1.0).abs() < 1e-12);
    let r = euler_lagrange_residual(|s| stiefel_geodesic_reduced(&d.r, &a, &d.b, s).unwrap(), 0.3, H_SECOND).unwrap();
    assert!(r > 1e-3, "{r:e}");
}

#[test]
fn sphere_collapse() {
    for_each_algebra(&|alg, seed| {
        let mut rng = random::rng(seed, "sphere");
        match alg {
            Algebra::Real => sphere::<f64>(&mut rng),
            Algebra::Complex => sphere::<Complex64>(&mut rng),
            Algebra::Quaternion => sphere::<Quaternion>(&mut rng),
        }
    });
}

fn sphere<T: Scalar>(rng: &mut CorpusRng) {
    for n in [2, 3, 5] {
        if T::ALGEBRA == Algebra::Quaternion && n > 3 {
            continue;
        }
        let r = random::group_element::<T>(rng, n);
        let b = random::matrix::<T>(rng, 1, n - 1);
        let b = b.scale(1.0 / b.frobenius());
        let a = Matrix::zeros(1, 1);
        let res = sphere_residual(|s| stiefel_geodesic_reduced(&r, &a, &b, s).unwrap(), b.frobenius_sqr(), 0.4, H_SECOND);
        assert!(res < 1e-7, "{res:e}");
    }
}

#[test]
fn constructors_validate() {
    let r = Matrix::<f64>::identity(3);
    let a = Matrix::zeros(1, 1);
    assert!(HorizontalCurve::reduced(&r, &a, &Matrix::zeros(1, 1)).is_err());
    let not_skew = Matrix::from_rows(&[vec![1.0]]).unwrap();
    assert!(HorizontalCurve::reduced(&r, &not_skew, &Matrix::zeros(1, 2)).is_err());
    let not_unitary = r.scale(2.0);
    assert!(HorizontalCurve::reduced(&not_unitary, &a, &Matrix::zeros(1, 2)).is_err());
    assert!(euler_lagrange_residual(|_| Matrix::<f64>::zeros(2, 1), 0.0, 0.0).is_err());
    let s = Matrix::<f64>::identity(1);
    let orth = HorizontalCurve::orthogonal(&r, &s, &a, &Matrix::zeros(1, 2)).unwrap();
    assert!(anchored_euler_lagrange_residual(&orth, 0.0, H_SECOND).is_err());
}

fn fiber_and_forms<T: Scalar>(seed: u64) {
    let mut rng = random::rng(seed, "fiber");
    for (n, k) in grid(T::ALGEBRA) {
        let d = data::<T>(&mut rng, n, k);
        // Lifts from g₀ and g₀h, h ∈ K, differ by the constant h.
        let h = block_diag(&Matrix::identity(k), &random::group_element::<T>(&mut rng, n - k));
        let omega = linalg::assemble_gn(&d.a, &d.b, &Matrix::zeros(n - k, n - k)).unwrap();
        let moved = &(&h.adjoint() * &omega) * &h;
        let blocks = moved.split(k).unwrap();
        let c1 = HorizontalCurve::reduced(&d.r, &d.a, &d.b).unwrap();
        let c2 = HorizontalCurve::reduced(&(&d.r * &h), &blocks.a, &blocks.b).unwrap();
        for t in [0.0, 0.6, 1.4] {
            assert!((&c1.point(t) - &c2.point(t)).max_abs() < 1e-10);
            let rel = &c1.lift(t).first.adjoint() * &c2.lift(t).first;
            assert!((&rel - &h).max_abs() < 1e-10);
        }
        // r e^{tΩ̃} I s* = g e^{tΩ} I with g = r·diag(s*, I), Ω = diag(s, I) Ω̃ diag(s*, I).
        let s_n = block_diag(&d.s, &Matrix::identity(n - k));
        let omega_t = linalg::assemble_gn(&d.a.scale(-1.0), &d.b, &Matrix::zeros(n - k, n - k)).unwrap();
        let omega = &(&s_n * &omega_t) * &s_n.adjoint();
        let g = &d.r * &s_n.adjoint();
        for t in [0.5, 1.7] {
            let lhs = geod_qg(&d.r, &d.s, &d.a, &d.b, t).unwrap();
            let rhs = &(&g * &linalg::expm(&omega, t)) * &i_nk(n, k);
            assert!((&lhs - &rhs).max_abs() < 1e-10);
        }
    }
}

#[test]
fn lifts_differ_by_isotropy_and_forms_agree() {
    fiber_and_forms::<f64>(51);
    fiber_and_forms::<Complex64>(52);
    fiber_and_forms::<Quaternion>(53);
}

fn conservation<T: Scalar>(seed: u64) {
    let mut rng = random::rng(seed, "conservation");
    for (n, k) in grid(T::ALGEBRA) {
        // The splits with 𝔭⊥ ⟂ 𝔭; the quasi-geodesic one is oblique.
        for kind in [DistributionKind::Reduced, DistributionKind::Orthogonal, DistributionKind::Grassmann] {
            let st = LieStructure::<T>::new(Distribution::new(kind, n, k, T::ALGEBRA).unwrap()).unwrap();
            let pp = st.random_p(&mut rng);
            let pperp = st.random_perp(&mut rng);
            for t in [0.3, 1.1] {
                let u = extremal_control(&pp, &pperp, t);
                let e = pperp.scale(t).exp();
                assert!((&u - &(&(&e * &pp) * &e.adjoint())).max_abs() < 1e-14);
                for q in st.p_perp() {
                    assert!(u.trace_form(q).abs() < 1e-10);
                }
            }
        }
    }
}

#[test]
fn extremal_control_stays_orthogonal_to_p_perp() {
    conservation::<f64>(61);
    conservation::<Complex64>(62);
    conservation::<Quaternion>(63);
}

#[test]
fn ode_fixed_point() {
    let z = |m| Matrix::<Complex64>::zeros(m, m);
    let blocks = LiftBlocks { a: z(2), e: z(2), b: Matrix::zeros(2, 3), f: z(3) };
    let mut rng = random::rng(64, "ode-fixed");
    let g0 = random::group_element::<Complex64>(&mut rng, 5);
    assert!((&horizontal_lift_ode(&g0, &blocks, 2.0, 50).unwrap() - &g0).max_abs() < 1e-15);
}
