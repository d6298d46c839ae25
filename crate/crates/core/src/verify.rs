//! Seeded verification suites. Every check reduces its trials to a maximum
//! residual (or a witness value) and compares it against a tolerance. Trials
//! run sequentially so reports are byte-identical for a given seed.

use std::fmt;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{GeoError, Result};
use crate::geodesics::{
    anchored_euler_lagrange_residual, euler_lagrange_residual, horizontal_lift_closed_form, horizontal_lift_ode,
    anchored_sphere_residual, quasi_geodesic, stiefel_geodesic_reduced, HorizontalCurve, LiftBlocks, SubRiemannianGeodesic,
    H_FIRST, H_SECOND,
};
use crate::grassmann::{constant_curvature_curve, geodesic_symmetry_check, grassmann_geodesic, grassmann_lift, project_stiefel};
use crate::lie::{Distribution, DistributionKind, LieStructure, ProductElement};
use crate::linalg::{block_diag, i_nk, off_diag, Matrix};
use crate::metrics::{geodesic_curvature, skew_norm_sqr, stiefel_norm, LiftContext, MetricTag, TangentVector};
use crate::random::{self, CorpusRng};
use crate::scalars::{Algebra, Quaternion, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Structure,
    Horizontality,
    Isometry,
    Curvature,
    EulerLagrange,
    Grassmann,
    OdeOracle,
    QuaternionEmbed,
}

impl Suite {
    pub const ALL: [Suite; 8] = [
        Suite::Structure,
        Suite::Horizontality,
        Suite::Isometry,
        Suite::Curvature,
        Suite::EulerLagrange,
        Suite::Grassmann,
        Suite::OdeOracle,
        Suite::QuaternionEmbed,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Structure => "structure",
            Suite::Horizontality => "horizontality",
            Suite::Isometry => "isometry",
            Suite::Curvature => "curvature",
            Suite::EulerLagrange => "euler-lagrange",
            Suite::Grassmann => "grassmann",
            Suite::OdeOracle => "ode-oracle",
            Suite::QuaternionEmbed => "quaternion-embed",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| GeoError::Parse(format!("unknown suite `{s}`")))
    }

    /// Trials per grid cell when not overridden.
    pub fn default_trials(self) -> usize {
        match self {
            Suite::Structure => 1,
            Suite::Horizontality => 50,
            Suite::Isometry => 1000,
            Suite::Curvature => 10,
            Suite::EulerLagrange => 10,
            Suite::Grassmann => 10,
            Suite::OdeOracle => 3,
            Suite::QuaternionEmbed => 100,
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// `(algebra, n, k)` cells.
pub fn default_grid() -> Vec<(Algebra, usize, usize)> {
    let mut g = Vec::new();
    for alg in [Algebra::Real, Algebra::Complex] {
        for (n, k) in [(3, 1), (4, 2), (5, 2), (5, 3)] {
            g.push((alg, n, k));
        }
    }
    g.push((Algebra::Quaternion, 2, 1));
    g.push((Algebra::Quaternion, 3, 1));
    g
}

#[derive(Debug, Clone)]
pub struct VerifyConfig {
    pub seed: u64,
    pub trials: Option<usize>,
    /// Replaces the tolerance of every upper-bound check.
    pub tol: Option<f64>,
    pub grid: Vec<(Algebra, usize, usize)>,
}

impl VerifyConfig {
    pub fn new(seed: u64) -> Self {
        VerifyConfig { seed, trials: None, tol: None, grid: default_grid() }
    }

    fn trials(&self, suite: Suite) -> usize {
        self.trials.unwrap_or_else(|| suite.default_trials()).max(1)
    }

    fn rng(&self, label: &str) -> CorpusRng {
        random::rng(self.seed, label)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CheckReport {
    pub check: String,
    pub trials: usize,
    pub max_residual: f64,
    pub tolerance: f64,
    pub pass: bool,
    pub seed: u64,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub failures: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Bound {
    /// Pass iff the maximum stays below the tolerance.
    Below,
    /// Pass iff the maximum (a witness) exceeds the tolerance.
    Above,
}

/// Running reduction for one check.
struct Check {
    name: String,
    trials: usize,
    max: f64,
    tol: f64,
    bound: Bound,
    failures: Vec<String>,
}

impl Check {
    fn below(name: &str, tol: f64, cfg: &VerifyConfig) -> Self {
        Check { name: name.into(), trials: 0, max: 0.0, tol: cfg.tol.unwrap_or(tol), bound: Bound::Below, failures: Vec::new() }
    }

    /// Integer-valued check that passes only at zero; not subject to `tol`.
    fn count(name: &str) -> Self {
        Check { name: name.into(), trials: 0, max: 0.0, tol: 0.5, bound: Bound::Below, failures: Vec::new() }
    }

    fn above(name: &str, tol: f64) -> Self {
        Check { name: name.into(), trials: 0, max: 0.0, tol, bound: Bound::Above, failures: Vec::new() }
    }

    fn record(&mut self, value: f64, cell: impl FnOnce() -> String) {
        self.trials += 1;
        if value.is_nan() {
            self.max = f64::NAN;
        } else if !self.max.is_nan() {
            self.max = self.max.max(value);
        }
        if self.bound == Bound::Below && !(value < self.tol) && self.failures.len() < 8 {
            let c = cell();
            if !self.failures.contains(&c) {
                self.failures.push(c);
            }
        }
    }

    fn fail(&mut self, what: String) {
        if self.failures.len() < 8 {
            self.failures.push(what);
        }
    }

    fn finish(self, seed: u64) -> CheckReport {
        let pass = match self.bound {
            Bound::Below => self.max < self.tol && self.failures.is_empty(),
            Bound::Above => self.max > self.tol && self.failures.is_empty(),
        };
        CheckReport {
            check: self.name,
            trials: self.trials,
            max_residual: self.max,
            tolerance: self.tol,
            pass,
            seed,
            failures: self.failures,
        }
    }
}

macro_rules! on_algebra {
    ($alg:expr, $f:ident ( $($arg:expr),* )) => {
        match $alg {
            Algebra::Real => $f::<f64>($($arg),*),
            Algebra::Complex => $f::<Complex64>($($arg),*),
            Algebra::Quaternion => $f::<Quaternion>($($arg),*),
        }
    };
}

fn cell(alg: Algebra, n: usize, k: usize) -> String {
    format!("({n},{k},{alg})")
}

pub fn run_suite(suite: Suite, cfg: &VerifyConfig) -> Result<Vec<CheckReport>> {
    let checks = match suite {
        Suite::Structure => structure(cfg)?,
        Suite::Horizontality => horizontality(cfg)?,
        Suite::Isometry => isometry(cfg)?,
        Suite::Curvature => curvature(cfg)?,
        Suite::EulerLagrange => euler_lagrange(cfg)?,
        Suite::Grassmann => grassmann(cfg)?,
        Suite::OdeOracle => ode_oracle(cfg)?,
        Suite::QuaternionEmbed => quaternion_embed(cfg),
    };
    Ok(checks.into_iter().map(|c| c.finish(cfg.seed)).collect())
}

pub fn run_all(cfg: &VerifyConfig) -> Result<Vec<CheckReport>> {
    let mut out = Vec::new();
    for s in Suite::ALL {
        out.extend(run_suite(s, cfg)?);
    }
    Ok(out)
}

fn structure(cfg: &VerifyConfig) -> Result<Vec<Check>> {
    let mut pk = Check::below("structure.bracket-p-k", 1e-10, cfg);
    let mut kpp = Check::below("structure.k-in-brackets", 1e-10, cfg);
    let mut gen = Check::count("structure.span-rank-deficit");
    let mut perp = Check::below("structure.p-perp", 1e-10, cfg);
    for &(alg, n, k) in &cfg.grid {
        for kind in DistributionKind::ALL {
            let d = Distribution::new(kind, n, k, alg)?;
            let rep = on_algebra!(alg, structure_report(d))?;
            let at = || d.to_string();
            pk.record(rep.bracket_pk, at);
            kpp.record(rep.k_in_pp, at);
            gen.record(rep.dims.g.abs_diff(rep.span_rank) as f64, at);
            perp.record(rep.perp_orthogonal.max(rep.perp_subalgebra).max(rep.perp_bracket_p), at);
        }
    }
    Ok(vec![pk, kpp, gen, perp])
}

fn structure_report<T: Scalar>(d: Distribution) -> Result<crate::lie::StructureReport> {
    Ok(LieStructure::<T>::new(d)?.verify_structure())
}

fn fd_control<T: Scalar>(c: &HorizontalCurve<T>, t: f64, h: f64) -> ProductElement<T> {
    let d = (&c.lift(t + h) - &c.lift(t - h)).scale(0.5 / h);
    &c.lift(t).adjoint() * &d
}

fn horizontality(cfg: &VerifyConfig) -> Result<Vec<Check>> {
    let mut exact = Check::below("horizontality.exact-control", 1e-10, cfg);
    let mut fd = Check::below("horizontality.finite-difference", 1e-5, cfg);
    let mut speed = Check::below("horizontality.constant-speed", 1e-12, cfg);
    let mut rng = cfg.rng("horizontality");
    let trials = cfg.trials(Suite::Horizontality);
    for &(alg, n, k) in &cfg.grid {
        for kind in DistributionKind::ALL {
            let d = Distribution::new(kind, n, k, alg)?;
            on_algebra!(alg, horizontality_cell(d, trials, &mut rng, &mut exact, &mut fd, &mut speed))?;
        }
    }
    Ok(vec![exact, fd, speed])
}

fn horizontality_cell<T: Scalar>(
    d: Distribution,
    trials: usize,
    rng: &mut CorpusRng,
    exact: &mut Check,
    fd: &mut Check,
    speed: &mut Check,
) -> Result<()> {
    let st = LieStructure::<T>::new(d)?;
    let at = || d.to_string();
    for _ in 0..trials {
        let pp = st.random_p(rng);
        let pperp = st.random_perp(rng);
        let geo = SubRiemannianGeodesic::new(&st, st.random_group(rng), pp.clone(), pperp)?;
        let norm = pp.norm();
        for i in 0..10 {
            let t = -0.9 + 0.3 * i as f64;
            let u = geo.control(t);
            exact.record(st.decompose(&u)?.1.norm(), at);
            speed.record((u.norm() - norm).abs() / norm.max(1.0), at);
            let v = fd_control(&geo.curve, t, H_FIRST);
            fd.record((&v - &st.p_component(&v)).norm(), at);
        }
    }
    Ok(())
}

/// Random point `gI_{nk}` with tangent `g[A; −B*]`, `A ∈ 𝔤ₖ`.
fn random_tangent<T: Scalar>(rng: &mut CorpusRng, n: usize, k: usize, with_a: bool) -> Result<TangentVector<T>> {
    let g = random::group_element::<T>(rng, n);
    let a = if with_a { random::algebra_element::<T>(rng, k) } else { Matrix::zeros(k, k) };
    let b = random::matrix::<T>(rng, k, n - k);
    let y = Matrix::from_fn(n, k, |r, c| if r < k { a[(r, c)] } else { -b[(c, r - k)].conj() });
    TangentVector::new(&g * &i_nk(n, k), &g * &y)
}

fn isometry(cfg: &VerifyConfig) -> Result<Vec<Check>> {
    let mut equal = Check::below("isometry.reduced-quasigeodesic", 1e-12, cfg);
    let mut differ = Check::above("isometry.reduced-orthogonal-gap", 0.1);
    let mut sphere = Check::below("isometry.sphere-ambient", 1e-12, cfg);
    let mut rng = cfg.rng("isometry");
    let trials = cfg.trials(Suite::Isometry);
    for i in 0..trials {
        let (alg, n, k) = cfg.grid[i % cfg.grid.len()];
        on_algebra!(alg, isometry_trial(&mut rng, n, k, &mut equal, &mut differ, &mut sphere))?;
    }
    Ok(vec![equal, differ, sphere])
}

fn isometry_trial<T: Scalar>(
    rng: &mut CorpusRng,
    n: usize,
    k: usize,
    equal: &mut Check,
    differ: &mut Check,
    sphere: &mut Check,
) -> Result<()> {
    let at = || cell(T::ALGEBRA, n, k);
    let v = random_tangent::<T>(rng, n, k, true)?;
    let ctx = LiftContext::complete(&v.at)?;
    let red = stiefel_norm(&v, MetricTag::ReducedTrace, &ctx)?;
    let qg = stiefel_norm(&v, MetricTag::QuasiGeodesicTrace, &ctx)?;
    let orth = stiefel_norm(&v, MetricTag::OrthogonalTrace, &ctx)?;
    equal.record((red - qg).abs() / red.max(1.0), at);
    differ.record((red - orth).abs() / red, at);
    // For k = 1 over ℝ and ℂ the A block vanishes and every metric is the ambient one.
    if k == 1 && T::ALGEBRA != Algebra::Quaternion {
        let amb = stiefel_norm(&v, MetricTag::Ambient, &ctx)?;
        sphere.record((red - amb).abs() / amb.max(1.0), at);
    }
    Ok(())
}

/// Four metric norms of one tangent.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct MetricRow {
    pub trial: usize,
    pub algebra: Algebra,
    pub n: usize,
    pub k: usize,
    pub a_zero: bool,
    pub reduced: f64,
    pub quasi: f64,
    pub orthogonal: f64,
    pub ambient: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct MetricSummary {
    pub trials: usize,
    pub max_reduced_quasi: f64,
    /// Over tangents with `A ≠ 0`, relative to the reduced norm.
    pub min_reduced_orthogonal: f64,
    pub max_reduced_orthogonal: f64,
    /// Over tangents with `A = 0`, the largest spread of the four norms.
    pub max_spread_a_zero: f64,
    pub pass: bool,
    pub seed: u64,
}

/// Per-tangent metric table; every fourth tangent has `A = 0`.
pub fn compare_metrics(cfg: &VerifyConfig) -> Result<(Vec<MetricRow>, MetricSummary)> {
    let mut rng = cfg.rng("compare-metrics");
    let trials = cfg.trials(Suite::Isometry);
    let mut rows = Vec::with_capacity(trials);
    for trial in 0..trials {
        let (alg, n, k) = cfg.grid[trial % cfg.grid.len()];
        let with_a = trial % 4 != 3;
        rows.push(on_algebra!(alg, metric_row(&mut rng, trial, n, k, with_a))?);
    }
    let tol = cfg.tol.unwrap_or(1e-12);
    let mut s = MetricSummary {
        trials,
        max_reduced_quasi: 0.0,
        min_reduced_orthogonal: f64::INFINITY,
        max_reduced_orthogonal: 0.0,
        max_spread_a_zero: 0.0,
        pass: false,
        seed: cfg.seed,
    };
    for r in &rows {
        s.max_reduced_quasi = s.max_reduced_quasi.max((r.reduced - r.quasi).abs() / r.reduced.max(1.0));
        if r.a_zero {
            let vals = [r.reduced, r.quasi, r.orthogonal, r.ambient];
            let hi = vals.iter().cloned().fold(f64::MIN, f64::max);
            let lo = vals.iter().cloned().fold(f64::MAX, f64::min);
            s.max_spread_a_zero = s.max_spread_a_zero.max((hi - lo) / hi.max(1.0));
        } else {
            let gap = (r.reduced - r.orthogonal).abs() / r.reduced;
            s.min_reduced_orthogonal = s.min_reduced_orthogonal.min(gap);
            s.max_reduced_orthogonal = s.max_reduced_orthogonal.max(gap);
        }
    }
    s.pass = s.max_reduced_quasi < tol && s.max_spread_a_zero < tol && s.max_reduced_orthogonal > 0.1;
    Ok((rows, s))
}

fn metric_row<T: Scalar>(rng: &mut CorpusRng, trial: usize, n: usize, k: usize, with_a: bool) -> Result<MetricRow> {
    let v = random_tangent::<T>(rng, n, k, with_a)?;
    let ctx = LiftContext::complete(&v.at)?;
    let norm = |tag| stiefel_norm(&v, tag, &ctx);
    let top = v.at.adjoint() * &v.dir;
    Ok(MetricRow {
        trial,
        algebra: T::ALGEBRA,
        n,
        k,
        a_zero: top.max_abs() < 1e-12,
        reduced: norm(MetricTag::ReducedTrace)?,
        quasi: norm(MetricTag::QuasiGeodesicTrace)?,
        orthogonal: norm(MetricTag::OrthogonalTrace)?,
        ambient: norm(MetricTag::Ambient)?,
    })
}

fn curvature(cfg: &VerifyConfig) -> Result<Vec<Check>> {
    let mut constancy = Check::below("curvature.constancy", 1e-7, cfg);
    let mut closed = Check::below("curvature.closed-form", 1e-6, cfg);
    let mut rng = cfg.rng("curvature");
    let trials = cfg.trials(Suite::Curvature);
    for &(alg, n, k) in &cfg.grid {
        on_algebra!(alg, curvature_cell(n, k, trials, &mut rng, &mut constancy, &mut closed))?;
    }
    Ok(vec![constancy, closed])
}

fn spread(samples: &[f64]) -> f64 {
    let mean = samples.iter().sum::<f64>() / samples.len() as f64;
    (samples.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / samples.len() as f64).sqrt()
}

fn curvature_cell<T: Scalar>(
    n: usize,
    k: usize,
    trials: usize,
    rng: &mut CorpusRng,
    constancy: &mut Check,
    closed: &mut Check,
) -> Result<()> {
    let times: Vec<f64> = (0..10).map(|i| -0.5 + 0.3 * i as f64).collect();
    let mut sample = |st: &LieStructure<T>, c: &HorizontalCurve<T>, expect: f64, what: &str| -> Result<()> {
        let ks = times.iter().map(|&t| geodesic_curvature(st, c, t)).collect::<Result<Vec<_>>>()?;
        let at = || format!("{what} {}", cell(T::ALGEBRA, n, k));
        constancy.record(spread(&ks), at);
        closed.record(ks.iter().map(|x| (x - expect).abs()).fold(0.0, f64::max), at);
        Ok(())
    };
    let structures = [DistributionKind::Reduced, DistributionKind::Orthogonal, DistributionKind::Grassmann]
        .map(|kind| Distribution::new(kind, n, k, T::ALGEBRA).and_then(LieStructure::<T>::new));
    let [red, orth, gr] = structures;
    let (red, orth, gr) = (red?, orth?, gr?);
    for _ in 0..trials {
        // Sub-Riemannian projections: ‖[P_𝔭, P_𝔭⊥]‖ at unit speed.
        for st in [&red, &orth] {
            let pp = st.random_p(rng);
            let pp = pp.scale(1.0 / pp.norm());
            let pperp = st.random_perp(rng);
            let expect = pp.bracket(&pperp).norm();
            let geo = SubRiemannianGeodesic::new(st, st.random_group(rng), pp, pperp)?;
            sample(st, &geo.curve, expect, st.dist.kind.name())?;
        }
        // Quasi-geodesics: ‖AB‖ at unit speed, on the reduced-horizontal lift.
        let a = random::algebra_element::<T>(rng, k);
        let b = random::matrix::<T>(rng, k, n - k);
        let s = (skew_norm_sqr(&a) + b.frobenius_sqr()).sqrt();
        let (a, b) = (a.scale(1.0 / s), b.scale(1.0 / s));
        let lift = HorizontalCurve::sr_qg_reduced_lift(
            &random::group_element(rng, n),
            &random::group_element(rng, k),
            &a,
            &b,
            &Matrix::zeros(k, k),
            &Matrix::zeros(n - k, n - k),
        )?;
        sample(&red, &lift, (&a * &b).frobenius(), "quasi")?;
        // Grassmann projections of the quasi-geodesic family.
        let b = random::matrix::<T>(rng, k, n - k);
        let b = b.scale(1.0 / b.frobenius());
        let kk = random::algebra_element::<T>(rng, n);
        let (e, f) = (kk.block(0, 0, k, k), kk.block(k, k, n - k, n - k));
        let expect = off_diag(&b).commutator(&block_diag(&e, &f)).frobenius() / std::f64::consts::SQRT_2;
        let lift = grassmann_lift(&random::group_element(rng, n), &b, &e, &f)?;
        sample(&gr, &lift, expect, "grassmann")?;
    }
    Ok(())
}

fn euler_lagrange(cfg: &VerifyConfig) -> Result<Vec<Check>> {
    let mut ambient = Check::below("euler-lagrange.ambient", 1e-7, cfg);
    let mut reduced = Check::above("euler-lagrange.reduced-differs", 1e-3);
    let mut sphere = Check::below("euler-lagrange.sphere", 1e-7, cfg);
    let mut rng = cfg.rng("euler-lagrange");
    let trials = cfg.trials(Suite::EulerLagrange);
    for &(alg, n, k) in &cfg.grid {
        on_algebra!(alg, euler_lagrange_cell(n, k, trials, &mut rng, &mut ambient, &mut reduced, &mut sphere))?;
    }
    Ok(vec![ambient, reduced, sphere])
}

fn euler_lagrange_cell<T: Scalar>(
    n: usize,
    k: usize,
    trials: usize,
    rng: &mut CorpusRng,
    ambient: &mut Check,
    reduced: &mut Check,
    sphere: &mut Check,
) -> Result<()> {
    let at = || cell(T::ALGEBRA, n, k);
    for _ in 0..trials {
        let g0 = random::group_element::<T>(rng, n);
        let a = random::algebra_element::<T>(rng, k);
        let b = random::matrix::<T>(rng, k, n - k);
        let speed = (a.scale(0.5).frobenius_sqr() + b.frobenius_sqr()).sqrt();
        let (au, bu) = (a.scale(1.0 / speed), b.scale(1.0 / speed));
        let curve = HorizontalCurve::ambient(&g0, &au, &bu, &Matrix::zeros(n - k, n - k))?;
        for i in 0..10 {
            ambient.record(anchored_euler_lagrange_residual(&curve, -1.0 + 0.25 * i as f64, H_SECOND)?, at);
        }
        if a.max_abs() > 1e-12 {
            let a1 = a.scale(1.0 / skew_norm_sqr(&a).sqrt());
            reduced.record(euler_lagrange_residual(|t| stiefel_geodesic_reduced(&g0, &a1, &b, t).unwrap(), 0.3, H_SECOND)?, at);
        }
        if k == 1 {
            let b1 = b.scale(1.0 / b.frobenius());
            let great_circle = HorizontalCurve::reduced(&g0, &Matrix::zeros(1, 1), &b1)?;
            sphere.record(anchored_sphere_residual(&great_circle, 1.0, 0.4, H_SECOND)?, at);
        }
    }
    Ok(())
}

fn grassmann(cfg: &VerifyConfig) -> Result<Vec<Check>> {
    let mut projection = Check::below("grassmann.quasi-projection", 1e-10, cfg);
    let mut zero = Check::below("grassmann.curvature-zero-iff-geodesic", 1e-6, cfg);
    let mut sigma = Check::below("grassmann.sigma-isometry", 1e-13, cfg);
    let mut reversal = Check::below("grassmann.geodesic-reversal", 1e-10, cfg);
    let mut reflection = Check::below("grassmann.point-reflection", 1e-10, cfg);
    let mut constraints = Check::below("grassmann.constraints", 1e-9, cfg);
    let mut rng = cfg.rng("grassmann");
    let trials = cfg.trials(Suite::Grassmann);
    for &(alg, n, k) in &cfg.grid {
        let rep = on_algebra!(alg, symmetry_report(n, k, trials, &mut rng))?;
        let at = || cell(alg, n, k);
        sigma.record(rep.sigma_isometry, at);
        reversal.record(rep.reversal, at);
        reflection.record(rep.point_reflection, at);
        on_algebra!(alg, grassmann_cell(n, k, trials, &mut rng, &mut projection, &mut zero, &mut constraints))?;
    }
    Ok(vec![projection, zero, sigma, reversal, reflection, constraints])
}

fn symmetry_report<T: Scalar>(n: usize, k: usize, trials: usize, rng: &mut CorpusRng) -> Result<crate::grassmann::SymmetryReport> {
    geodesic_symmetry_check::<T>(n, k, trials, rng)
}

fn grassmann_cell<T: Scalar>(
    n: usize,
    k: usize,
    trials: usize,
    rng: &mut CorpusRng,
    projection: &mut Check,
    zero: &mut Check,
    constraints: &mut Check,
) -> Result<()> {
    let at = || cell(T::ALGEBRA, n, k);
    let gr = LieStructure::<T>::new(Distribution::new(DistributionKind::Grassmann, n, k, T::ALGEBRA)?)?;
    for _ in 0..trials {
        let r = random::group_element::<T>(rng, n);
        let s = random::group_element::<T>(rng, k);
        let a = random::algebra_element::<T>(rng, k);
        let b = random::matrix::<T>(rng, k, n - k);
        let mut worst = 0.0f64;
        for i in 0..=20 {
            let t = 0.1 * i as f64;
            let x = quasi_geodesic(&r, &s, &b, &a, t)?;
            let geo = grassmann_geodesic(&r, &b, t)?;
            worst = worst.max((project_stiefel(&x)?.reflection() - geo.reflection()).max_abs());
        }
        projection.record(worst, at);

        let kk = random::algebra_element::<T>(rng, n);
        let (e, f) = (kk.block(0, 0, k, k), kk.block(k, k, n - k, n - k));
        let flat = grassmann_lift(&r, &b, &Matrix::zeros(k, k), &Matrix::zeros(n - k, n - k))?;
        let bent = grassmann_lift(&r, &b, &e, &f)?;
        let k_flat = geodesic_curvature(&gr, &flat, 0.5)?;
        let k_bent = geodesic_curvature(&gr, &bent, 0.5)?;
        zero.record(k_flat, at);
        let ef_zero = e.max_abs() < 1e-12 && f.max_abs() < 1e-12;
        if (k_bent < 1e-6) != ef_zero {
            zero.fail(format!("{} curvature {k_bent:.3e} with E, F = 0: {ef_zero}", at()));
        }

        let mut drift = 0.0f64;
        for i in 0..=10 {
            let rt = constant_curvature_curve(&r, &b, &e, &f, 0.5 * i as f64)?;
            let m = rt.reflection();
            drift = drift.max((m - &m.adjoint()).max_abs()).max((&(m * m) - &Matrix::identity(n)).max_abs());
        }
        constraints.record(drift, at);
    }
    Ok(())
}

fn ode_oracle(cfg: &VerifyConfig) -> Result<Vec<Check>> {
    let mut agree = Check::below("ode-oracle.agreement", 1e-9, cfg);
    let mut order = Check::below("ode-oracle.fourth-order", 1.0, cfg);
    let mut rng = cfg.rng("ode-oracle");
    let trials = cfg.trials(Suite::OdeOracle);
    for &(alg, n, k) in &cfg.grid {
        on_algebra!(alg, ode_cell(n, k, trials, &mut rng, &mut agree, &mut order))?;
    }
    Ok(vec![agree, order])
}

fn ode_cell<T: Scalar>(
    n: usize,
    k: usize,
    trials: usize,
    rng: &mut CorpusRng,
    agree: &mut Check,
    order: &mut Check,
) -> Result<()> {
    let at = || cell(T::ALGEBRA, n, k);
    for trial in 0..trials {
        let s = random::group_element::<T>(rng, k);
        let kk = random::algebra_element::<T>(rng, n);
        let a = random::algebra_element::<T>(rng, k);
        let b = random::matrix::<T>(rng, k, n - k);
        let (e, f) = (kk.block(0, 0, k, k), kk.block(k, k, n - k, n - k));
        let blocks = LiftBlocks::conjugated(&s, &a, &b, &e, &f);
        let g0 = &random::group_element::<T>(rng, n) * &block_diag(&s.adjoint(), &Matrix::identity(n - k));
        let exact = horizontal_lift_closed_form(&g0, &blocks, 1.0)?;
        agree.record((&horizontal_lift_ode(&g0, &blocks, 1.0, 1000)? - &exact).max_abs(), at);
        if trial == 0 {
            // Error ratios across 200 → 400 → 800 steps, within a factor 2 of 16.
            let big = |m: &Matrix<T>| m.scale(2.5 / m.frobenius().max(1e-12));
            let blocks = LiftBlocks::conjugated(&s, &big(&a), &big(&b), &big(&e), &big(&f));
            let exact = horizontal_lift_closed_form(&g0, &blocks, 1.5)?;
            let errs = [200, 400, 800]
                .iter()
                .map(|&steps| Ok((&horizontal_lift_ode(&g0, &blocks, 1.5, steps)? - &exact).max_abs()))
                .collect::<Result<Vec<f64>>>()?;
            for w in errs.windows(2) {
                order.record((w[0] / w[1] / 16.0).log2().abs(), at);
            }
        }
    }
    Ok(())
}

fn quaternion_embed(cfg: &VerifyConfig) -> Vec<Check> {
    let mut hom = Check::below("quaternion-embed.homomorphism", 1e-10, cfg);
    let mut exp = Check::below("quaternion-embed.exp-consistency", 1e-10, cfg);
    let units = [Quaternion::ONE, Quaternion::I, Quaternion::J, Quaternion::K];
    for p in units {
        for q in units {
            let lhs = Matrix::from_rows(&[vec![p * q]]).unwrap();
            let (a, b) = (Matrix::from_rows(&[vec![p]]).unwrap(), Matrix::from_rows(&[vec![q]]).unwrap());
            let embedded = &Quaternion::to_complex_matrix(&a) * &Quaternion::to_complex_matrix(&b);
            hom.record((&Quaternion::to_complex_matrix(&lhs) - &embedded).max_abs(), || "basis".into());
        }
    }
    let mut rng = cfg.rng("quaternion-embed");
    for i in 0..cfg.trials(Suite::QuaternionEmbed) {
        let n = 1 + i % 4;
        let a = random::matrix::<Quaternion>(&mut rng, n, n);
        let b = random::matrix::<Quaternion>(&mut rng, n, n);
        let prod = Quaternion::to_complex_matrix(&(&a * &b));
        let embedded = &Quaternion::to_complex_matrix(&a) * &Quaternion::to_complex_matrix(&b);
        hom.record((&prod - &embedded).max_abs() / (a.frobenius() * b.frobenius()).max(1.0), || format!("n = {n}"));
        let (back, defect) = Quaternion::from_complex_matrix(&Quaternion::to_complex_matrix(&a));
        hom.record(defect.max((&back - &a).max_abs()), || format!("pullback n = {n}"));
        // exp against a Taylor series evaluated in quaternion arithmetic.
        let m = random::skew::<Quaternion>(&mut rng, n);
        let m = m.scale(1.0 / m.norm1().max(1.0));
        let mut term = Matrix::<Quaternion>::identity(n);
        let mut taylor = term.clone();
        for j in 1..30 {
            term = (&term * &m).scale(1.0 / j as f64);
            taylor = &taylor + &term;
        }
        let e = m.expm();
        exp.record((&e - &taylor).max_abs().max(e.unitary_residual()), || format!("n = {n}"));
    }
    vec![hom, exp]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(seed: u64) -> VerifyConfig {
        VerifyConfig {
            seed,
            trials: Some(3),
            tol: None,
            grid: vec![(Algebra::Real, 4, 2), (Algebra::Complex, 3, 1), (Algebra::Quaternion, 2, 1)],
        }
    }

    #[test]
    fn suites_pass_on_a_small_grid() {
        for suite in Suite::ALL {
            let mut cfg = small(7);
            if suite == Suite::Isometry {
                // The gap witness needs enough draws with a sizeable A block.
                cfg.trials = Some(30);
            }
            for rep in run_suite(suite, &cfg).unwrap() {
                // so(2) is abelian, so 𝔨 ⊄ [𝔭,𝔭] for the pair distributions at (4,2,ℝ).
                let known = rep.check == "structure.k-in-brackets";
                assert_eq!(rep.pass, !known, "{rep:?}");
            }
        }
    }

    #[test]
    fn reports_are_reproducible() {
        let a = serde_json::to_string(&run_suite(Suite::Isometry, &small(3)).unwrap()).unwrap();
        let b = serde_json::to_string(&run_suite(Suite::Isometry, &small(3)).unwrap()).unwrap();
        assert_eq!(a, b);
        let c = serde_json::to_string(&run_suite(Suite::Isometry, &small(4)).unwrap()).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn metric_table() {
        let mut cfg = small(5);
        cfg.trials = Some(40);
        let (rows, summary) = compare_metrics(&cfg).unwrap();
        assert_eq!(rows.len(), 40);
        assert!(rows.iter().filter(|r| r.a_zero).count() >= 10);
        assert!(summary.pass, "{summary:?}");
    }

    #[test]
    fn suite_names() {
        for s in Suite::ALL {
            assert_eq!(Suite::parse(s.name()).unwrap(), s);
        }
        assert!(Suite::parse("none-existent").is_err());
    }

    #[test]
    fn tolerance_override_applies_to_upper_bounds() {
        let mut cfg = small(1);
        cfg.trials = Some(30);
        cfg.tol = Some(0.0);
        let reps = run_suite(Suite::Isometry, &cfg).unwrap();
        assert!(reps.iter().any(|r| r.check == "isometry.reduced-orthogonal-gap" && r.pass));
        assert!(reps.iter().any(|r| r.check == "isometry.reduced-quasigeodesic" && r.tolerance == 0.0));
    }
}
