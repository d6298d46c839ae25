//! Closed-form extremal curves and the ODE oracle for horizontal lifts.
//!
//! Every family is carried by a horizontal curve of the form
//! `g(t) = L · e^{tX₁} ⋯ e^{tX_m} · R` in Gₙ or Gₙ × Gₖ ([`ExpChain`]), whose
//! control `g⁻¹ġ` is available in closed form. Stiefel points are
//! `π(g) = r I_{nk} s*`.

use crate::error::{GeoError, Result};
use crate::lie::{stiefel_project_unchecked, Distribution, DistributionKind, LieStructure, ProductElement};
use crate::linalg::{self, assemble, block_diag, embed_k, i_nk, off_diag, Matrix, TAU_GRP, TAU_SKEW};
use crate::scalars::Scalar;

/// `g(t) = left · e^{t gens[0]} ⋯ e^{t gens[m−1]} · right`.
#[derive(Debug, Clone)]
pub struct ExpChain<T: Scalar> {
    pub left: ProductElement<T>,
    pub gens: Vec<ProductElement<T>>,
    pub right: ProductElement<T>,
}

impl<T: Scalar> ExpChain<T> {
    pub fn point(&self, t: f64) -> ProductElement<T> {
        let mut g = self.left.clone();
        for x in &self.gens {
            g = &g * &x.scale(t).exp();
        }
        &g * &self.right
    }

    /// `g(t)⁻¹ ġ(t) = R⁻¹ (Σᵢ Sᵢ⁻¹ Xᵢ Sᵢ) R` with `Sᵢ = e^{tX_{i+1}} ⋯ e^{tX_m}`.
    pub fn control(&self, t: f64) -> ProductElement<T> {
        let (n, k2) = self.left.dims();
        let mut acc = ProductElement::zeros(n, k2);
        let mut suffix = ProductElement::identity(n, k2);
        for x in self.gens.iter().rev() {
            acc = &acc + &(&(&suffix.adjoint() * x) * &suffix);
            suffix = &x.scale(t).exp() * &suffix;
        }
        &(&self.right.adjoint() * &acc) * &self.right
    }
}

/// Horizontal curve for one distribution together with its Stiefel image.
#[derive(Debug, Clone)]
pub struct HorizontalCurve<T: Scalar> {
    pub dist: Distribution,
    pub chain: ExpChain<T>,
}

impl<T: Scalar> HorizontalCurve<T> {
    pub fn lift(&self, t: f64) -> ProductElement<T> {
        self.chain.point(t)
    }

    pub fn control(&self, t: f64) -> ProductElement<T> {
        self.chain.control(t)
    }

    pub fn point(&self, t: f64) -> Matrix<T> {
        stiefel_project_unchecked(&self.lift(t), self.dist.k)
    }

    fn single(dist: Distribution, left: Matrix<T>, gens: Vec<Matrix<T>>, right: Matrix<T>) -> Self {
        HorizontalCurve {
            dist,
            chain: ExpChain {
                left: ProductElement::single(left),
                gens: gens.into_iter().map(ProductElement::single).collect(),
                right: ProductElement::single(right),
            },
        }
    }

    /// Reduced-metric geodesic `g₀ e^{tΩ}`, `Ω = [[A,B],[−B*,0]]`.
    pub fn reduced(g0: &Matrix<T>, a: &Matrix<T>, b: &Matrix<T>) -> Result<Self> {
        let (n, k) = partition(g0, a, b)?;
        let omega = linalg::assemble_gn(a, b, &Matrix::zeros(n - k, n - k))?;
        Ok(Self::single(dist::<T>(DistributionKind::Reduced, n, k)?, g0.clone(), vec![omega], Matrix::identity(n)))
    }

    /// Orthogonal-metric geodesic `(r e^{tΩ}, s e^{−tA})`.
    pub fn orthogonal(r: &Matrix<T>, s: &Matrix<T>, a: &Matrix<T>, b: &Matrix<T>) -> Result<Self> {
        let (n, k) = partition(r, a, b)?;
        check_group(s, k)?;
        let omega = linalg::assemble_gn(a, b, &Matrix::zeros(n - k, n - k))?;
        Ok(HorizontalCurve {
            dist: dist::<T>(DistributionKind::Orthogonal, n, k)?,
            chain: ExpChain {
                left: ProductElement::new(r.clone(), s.clone()),
                gens: vec![ProductElement::new(omega, a.scale(-1.0))],
                right: ProductElement::identity(n, k),
            },
        })
    }

    /// Sub-Riemannian geodesic of the quasi-geodesic distribution with
    /// `P_𝔭 = ([[0,B],[−B*,0]], A)` and `P_𝔭⊥ = (diag(E,F), 0)`.
    pub fn sr_qg(
        r: &Matrix<T>,
        s: &Matrix<T>,
        a: &Matrix<T>,
        b: &Matrix<T>,
        e: &Matrix<T>,
        f: &Matrix<T>,
    ) -> Result<Self> {
        let (n, k) = partition(r, a, b)?;
        check_group(s, k)?;
        check_skew(e, k)?;
        check_skew(f, n - k)?;
        let phi = assemble(e, b, &(-&b.adjoint()), f)?;
        let ef = block_diag(e, f);
        Ok(HorizontalCurve {
            dist: dist::<T>(DistributionKind::QuasiGeodesic, n, k)?,
            chain: ExpChain {
                left: ProductElement::new(r.clone(), s.clone()),
                gens: vec![
                    ProductElement::new(phi, a.clone()),
                    ProductElement::new(ef.scale(-1.0), Matrix::zeros(k, k)),
                ],
                right: ProductElement::identity(n, k),
            },
        })
    }

    /// Quasi-geodesic `(r e^{tΨ}, s e^{tA})`.
    pub fn quasi(r: &Matrix<T>, s: &Matrix<T>, b: &Matrix<T>, a: &Matrix<T>) -> Result<Self> {
        let (n, k) = partition(r, a, b)?;
        Self::sr_qg(r, s, a, b, &Matrix::zeros(k, k), &Matrix::zeros(n - k, n - k))
    }

    /// Lift of the same Stiefel curve as [`sr_qg`](Self::sr_qg), horizontal
    /// for the reduced distribution: `r e^{tΦ} diag(e^{−tE}e^{−tA}, e^{−tF}) diag(s*, I)`.
    pub fn sr_qg_reduced_lift(
        r: &Matrix<T>,
        s: &Matrix<T>,
        a: &Matrix<T>,
        b: &Matrix<T>,
        e: &Matrix<T>,
        f: &Matrix<T>,
    ) -> Result<Self> {
        let (n, k) = partition(r, a, b)?;
        check_group(s, k)?;
        check_skew(e, k)?;
        check_skew(f, n - k)?;
        let phi = assemble(e, b, &(-&b.adjoint()), f)?;
        let gens = vec![
            phi,
            block_diag(e, f).scale(-1.0),
            block_diag(&a.scale(-1.0), &Matrix::zeros(n - k, n - k)),
        ];
        Ok(Self::single(dist::<T>(DistributionKind::Reduced, n, k)?, r.clone(), gens, embed_k(&s.adjoint(), n)))
    }

    /// Ambient-metric curve `g₀ e^{t(P+Q)} e^{−tQ}` with
    /// `P+Q = [[A,B₀],[−B₀*,C]]`, `Q = diag(A/2, C)`.
    pub fn ambient(g0: &Matrix<T>, a: &Matrix<T>, b0: &Matrix<T>, c: &Matrix<T>) -> Result<Self> {
        let (n, k) = partition(g0, a, b0)?;
        check_skew(c, n - k)?;
        let m = linalg::assemble_gn(a, b0, c)?;
        let q = block_diag(&a.scale(0.5), c);
        Ok(Self::single(dist::<T>(DistributionKind::Reduced, n, k)?, g0.clone(), vec![m, q.scale(-1.0)], Matrix::identity(n)))
    }
}

fn dist<T: Scalar>(kind: DistributionKind, n: usize, k: usize) -> Result<Distribution> {
    Distribution::new(kind, n, k, T::ALGEBRA)
}

/// `(n, k)` from a basepoint and the `A` (k×k) and `B` (k×(n−k)) blocks.
fn partition<T: Scalar>(g0: &Matrix<T>, a: &Matrix<T>, b: &Matrix<T>) -> Result<(usize, usize)> {
    let n = g0.rows();
    let k = a.rows();
    if k == 0 || k > n || b.shape() != (k, n - k) {
        return Err(GeoError::Shape(format!(
            "A {:?}, B {:?} do not fit n = {n}",
            a.shape(),
            b.shape()
        )));
    }
    check_group(g0, n)?;
    check_skew(a, k)?;
    Ok((n, k))
}

fn check_skew<T: Scalar>(m: &Matrix<T>, size: usize) -> Result<()> {
    if m.shape() != (size, size) {
        return Err(GeoError::Shape(format!("expected {size}x{size}, got {:?}", m.shape())));
    }
    let res = m.skew_residual();
    if res > TAU_SKEW {
        return Err(GeoError::NotSkewAdjoint(res));
    }
    Ok(())
}

fn check_group<T: Scalar>(g: &Matrix<T>, size: usize) -> Result<()> {
    if g.shape() != (size, size) {
        return Err(GeoError::Shape(format!("expected {size}x{size}, got {:?}", g.shape())));
    }
    let res = g.unitary_residual();
    if res > TAU_GRP {
        return Err(GeoError::NotUnitary(res));
    }
    Ok(())
}

/// Sub-Riemannian geodesic `g(t) = g₀ exp(t(P_𝔭 + P_𝔭⊥)) exp(−t P_𝔭⊥)`.
#[derive(Debug, Clone)]
pub struct SubRiemannianGeodesic<T: Scalar> {
    pub g0: ProductElement<T>,
    pub pp: ProductElement<T>,
    pub pperp: ProductElement<T>,
    pub curve: HorizontalCurve<T>,
}

impl<T: Scalar> SubRiemannianGeodesic<T> {
    pub fn new(
        structure: &LieStructure<T>,
        g0: ProductElement<T>,
        pp: ProductElement<T>,
        pperp: ProductElement<T>,
    ) -> Result<Self> {
        structure.require_p(&pp)?;
        structure.require_perp(&pperp)?;
        if g0.dims() != pp.dims() {
            return Err(GeoError::Shape(format!("basepoint {:?} vs {:?}", g0.dims(), pp.dims())));
        }
        let res = g0.unitary_residual();
        if res > TAU_GRP {
            return Err(GeoError::NotUnitary(res));
        }
        let (n, k2) = g0.dims();
        let curve = HorizontalCurve {
            dist: structure.dist,
            chain: ExpChain {
                left: g0.clone(),
                gens: vec![&pp + &pperp, pperp.scale(-1.0)],
                right: ProductElement::identity(n, k2),
            },
        };
        Ok(SubRiemannianGeodesic { g0, pp, pperp, curve })
    }

    pub fn point(&self, t: f64) -> ProductElement<T> {
        self.curve.lift(t)
    }

    pub fn control(&self, t: f64) -> ProductElement<T> {
        extremal_control(&self.pp, &self.pperp, t)
    }

    pub fn project(&self, t: f64) -> Matrix<T> {
        self.curve.point(t)
    }
}

pub fn sr_geodesic<T: Scalar>(
    structure: &LieStructure<T>,
    g0: &ProductElement<T>,
    pp: &ProductElement<T>,
    pperp: &ProductElement<T>,
    t: f64,
) -> Result<ProductElement<T>> {
    Ok(SubRiemannianGeodesic::new(structure, g0.clone(), pp.clone(), pperp.clone())?.point(t))
}

/// `U(t) = e^{tP_𝔭⊥} P_𝔭 e^{−tP_𝔭⊥}`.
pub fn extremal_control<T: Scalar>(
    pp: &ProductElement<T>,
    pperp: &ProductElement<T>,
    t: f64,
) -> ProductElement<T> {
    let e = pperp.scale(t).exp();
    &(&e * pp) * &e.adjoint()
}

/// `g₀ e^{tΩ} I_{nk}`.
pub fn stiefel_geodesic_reduced<T: Scalar>(g0: &Matrix<T>, a: &Matrix<T>, b: &Matrix<T>, t: f64) -> Result<Matrix<T>> {
    Ok(HorizontalCurve::reduced(g0, a, b)?.point(t))
}

/// `r e^{tΩ} I_{nk} e^{tA} s*`.
pub fn stiefel_geodesic_orthogonal<T: Scalar>(
    r: &Matrix<T>,
    s: &Matrix<T>,
    a: &Matrix<T>,
    b: &Matrix<T>,
    t: f64,
) -> Result<Matrix<T>> {
    let (n, k) = partition(r, a, b)?;
    check_group(s, k)?;
    let omega = linalg::assemble_gn(a, b, &Matrix::zeros(n - k, n - k))?;
    Ok(&(&(r * &linalg::expm(&omega, t)) * &i_nk(n, k)) * &(&linalg::expm(a, t) * &s.adjoint()))
}

/// `r e^{t[[E,B],[−B*,F]]} diag(e^{−tE}e^{−tA}, e^{−tF}) I_{nk} s*`.
pub fn sr_qg_projection<T: Scalar>(
    r: &Matrix<T>,
    s: &Matrix<T>,
    a: &Matrix<T>,
    b: &Matrix<T>,
    e: &Matrix<T>,
    f: &Matrix<T>,
    t: f64,
) -> Result<Matrix<T>> {
    let (n, k) = partition(r, a, b)?;
    check_group(s, k)?;
    check_skew(e, k)?;
    check_skew(f, n - k)?;
    let phi = assemble(e, b, &(-&b.adjoint()), f)?;
    let delta = block_diag(&(&linalg::expm(e, -t) * &linalg::expm(a, -t)), &linalg::expm(f, -t));
    Ok(&(&(&(r * &linalg::expm(&phi, t)) * &delta) * &i_nk(n, k)) * &s.adjoint())
}

/// `r e^{tΨ} I_{nk} e^{−tA} s*`, `Ψ = [[0,B],[−B*,0]]`.
pub fn quasi_geodesic<T: Scalar>(r: &Matrix<T>, s: &Matrix<T>, b: &Matrix<T>, a: &Matrix<T>, t: f64) -> Result<Matrix<T>> {
    let (n, k) = partition(r, a, b)?;
    check_group(s, k)?;
    let psi = off_diag(b);
    Ok(&(&(r * &linalg::expm(&psi, t)) * &i_nk(n, k)) * &(&linalg::expm(a, -t) * &s.adjoint()))
}

/// The same curve as `exp(tX) m exp(tY)` with `m = r I_{nk} s*`,
/// `X = rΨr*`, `Y = −sAs*`.
pub fn quasi_geodesic_alt<T: Scalar>(r: &Matrix<T>, s: &Matrix<T>, b: &Matrix<T>, a: &Matrix<T>, t: f64) -> Result<Matrix<T>> {
    let (n, k) = partition(r, a, b)?;
    check_group(s, k)?;
    let m = &(r * &i_nk(n, k)) * &s.adjoint();
    let x = &(r * &off_diag(b)) * &r.adjoint();
    let y = (&(s * a) * &s.adjoint()).scale(-1.0);
    Ok(&(&linalg::expm(&x, t) * &m) * &linalg::expm(&y, t))
}

/// Riemannian geodesic of the quasi-geodesic metric:
/// `r e^{tΩ̃} I_{nk} s*`, `Ω̃ = [[−A,B],[−B*,0]]`.
pub fn geod_qg<T: Scalar>(r: &Matrix<T>, s: &Matrix<T>, a: &Matrix<T>, b: &Matrix<T>, t: f64) -> Result<Matrix<T>> {
    let (n, k) = partition(r, a, b)?;
    check_group(s, k)?;
    let omega = linalg::assemble_gn(&a.scale(-1.0), b, &Matrix::zeros(n - k, n - k))?;
    Ok(&(&(r * &linalg::expm(&omega, t)) * &i_nk(n, k)) * &s.adjoint())
}

/// `g₀ e^{t[[A,B₀],[−B₀*,C]]} I_{nk} e^{−tA/2}`.
pub fn ambient_geodesic<T: Scalar>(
    g0: &Matrix<T>,
    a: &Matrix<T>,
    b0: &Matrix<T>,
    c: &Matrix<T>,
    t: f64,
) -> Result<Matrix<T>> {
    let (n, k) = partition(g0, a, b0)?;
    check_skew(c, n - k)?;
    let m = linalg::assemble_gn(a, b0, c)?;
    Ok(&(&(g0 * &linalg::expm(&m, t)) * &i_nk(n, k)) * &linalg::expm(a, -0.5 * t))
}

/// Second-difference step used for Euler–Lagrange residuals.
pub const H_SECOND: f64 = 1e-4;
/// First-difference step used for velocities.
pub const H_FIRST: f64 = 1e-6;

/// `‖Ẍ + X Ẋ* Ẋ‖_F` with central differences of step `h`.
pub fn euler_lagrange_residual<T: Scalar>(curve: impl Fn(f64) -> Matrix<T>, t: f64, h: f64) -> Result<f64> {
    if !(h > 0.0) {
        return Err(GeoError::InvalidArgument(format!("stencil step {h}")));
    }
    let (xm, x0, xp) = (curve(t - h), curve(t), curve(t + h));
    if xm.shape() != x0.shape() || xp.shape() != x0.shape() {
        return Err(GeoError::Shape("samples of differing shape".into()));
    }
    let xdd = (&(&xp - &x0.scale(2.0)) + &xm).scale(1.0 / (h * h));
    let xd = (&xp - &xm).scale(0.5 / h);
    Ok((&xdd + &(&(&x0 * &xd.adjoint()) * &xd)).frobenius())
}

/// `(X, Ẋ, Ẍ)` of a single-group curve with at most two generators by central
/// differences applied to factors near the identity.
///
/// Since `e^{(t+τ)X₁}e^{(t+τ)X₂} = e^{tX₁}·e^{τX₁}e^{τX₂}·e^{tX₂}`, the three
/// samples share their outer factors and only `e^{±hX₁}e^{±hX₂}` is
/// differenced, which keeps the exponential's roundoff out of the `1/h²`.
pub fn anchored_differences<T: Scalar>(curve: &HorizontalCurve<T>, t: f64, h: f64) -> Result<(Matrix<T>, Matrix<T>, Matrix<T>)> {
    if !(h > 0.0) {
        return Err(GeoError::InvalidArgument(format!("stencil step {h}")));
    }
    let c = &curve.chain;
    if c.gens.is_empty() || c.gens.len() > 2 {
        return Err(GeoError::InvalidArgument(format!("{} generators, expected 1 or 2", c.gens.len())));
    }
    let (n, k2) = c.left.dims();
    if k2 != 0 {
        return Err(GeoError::InvalidArgument("projection of a product curve is not linear".into()));
    }
    let x1 = &c.gens[0];
    let x2 = c.gens.get(1).cloned().unwrap_or_else(|| ProductElement::zeros(n, k2));
    let outer_left = &c.left * &x1.scale(t).exp();
    let outer_right = &x2.scale(t).exp() * &c.right;
    // e^{±hX} − I = C ± S with C, S the even and odd exponential tails, so
    // both differences are formed without cancelling against the identity.
    let (c1, s1) = exp_tails(x1, h);
    let (c2, s2) = exp_tails(&x2, h);
    let second = (&(&c1 + &c2) + &(&(&c1 * &c2) + &(&s1 * &s2))).scale(2.0);
    let first = (&(&s1 + &s2) + &(&(&c1 * &s2) + &(&s1 * &c2))).scale(2.0);
    let k = curve.dist.k;
    let project = |m: &ProductElement<T>| stiefel_project_unchecked(&(&(&outer_left * m) * &outer_right), k);
    let xdd = project(&second).scale(1.0 / (h * h));
    let xd = project(&first).scale(0.5 / h);
    let x0 = project(&ProductElement::identity(n, k2));
    Ok((x0, xd, xdd))
}

/// `‖Ẍ + XẊ*Ẋ‖` from [`anchored_differences`].
pub fn anchored_euler_lagrange_residual<T: Scalar>(curve: &HorizontalCurve<T>, t: f64, h: f64) -> Result<f64> {
    let (x0, xd, xdd) = anchored_differences(curve, t, h)?;
    Ok((&xdd + &(&(&x0 * &xd.adjoint()) * &xd)).frobenius())
}

/// `‖m̈ + ‖b‖²m‖` from [`anchored_differences`].
pub fn anchored_sphere_residual<T: Scalar>(curve: &HorizontalCurve<T>, b_norm_sqr: f64, t: f64, h: f64) -> Result<f64> {
    let (x0, _, xdd) = anchored_differences(curve, t, h)?;
    Ok((&xdd + &x0.scale(b_norm_sqr)).frobenius())
}

/// `(Σ_{j even ≥ 2}, Σ_{j odd}) (hX)^j / j!`.
fn exp_tails<T: Scalar>(x: &ProductElement<T>, h: f64) -> (ProductElement<T>, ProductElement<T>) {
    let (n, k2) = x.dims();
    let hx = x.scale(h);
    let (mut even, mut odd) = (ProductElement::zeros(n, k2), hx.clone());
    let mut term = hx.clone();
    for j in 2..60 {
        term = (&term * &hx).scale(1.0 / j as f64);
        if j % 2 == 0 {
            even = &even + &term;
        } else {
            odd = &odd + &term;
        }
        if term.max_abs() < 1e-30 {
            break;
        }
    }
    (even, odd)
}

/// `m̈ + ‖b‖² m` for a unit-sphere curve (k = 1).
pub fn sphere_residual<T: Scalar>(curve: impl Fn(f64) -> Matrix<T>, b_norm_sqr: f64, t: f64, h: f64) -> f64 {
    let (xm, x0, xp) = (curve(t - h), curve(t), curve(t + h));
    let xdd = (&(&xp - &x0.scale(2.0)) + &xm).scale(1.0 / (h * h));
    (&xdd + &x0.scale(b_norm_sqr)).frobenius()
}

/// Conjugated data `Ã, Ẽ, B̃, F` of the horizontal-lift equation.
#[derive(Debug, Clone)]
pub struct LiftBlocks<T: Scalar> {
    pub a: Matrix<T>,
    pub e: Matrix<T>,
    pub b: Matrix<T>,
    pub f: Matrix<T>,
}

impl<T: Scalar> LiftBlocks<T> {
    /// `Ã = sAs*`, `Ẽ = sEs*`, `B̃ = sB`.
    pub fn conjugated(s: &Matrix<T>, a: &Matrix<T>, b: &Matrix<T>, e: &Matrix<T>, f: &Matrix<T>) -> Self {
        let sa = s.adjoint();
        LiftBlocks { a: &(s * a) * &sa, e: &(s * e) * &sa, b: s * b, f: f.clone() }
    }

    fn check(&self) -> Result<(usize, usize)> {
        let k = self.a.rows();
        let m = self.f.rows();
        check_skew(&self.a, k)?;
        check_skew(&self.e, k)?;
        check_skew(&self.f, m)?;
        if self.b.shape() != (k, m) {
            return Err(GeoError::Shape(format!("B̃ is {:?}, expected {k}x{m}", self.b.shape())));
        }
        Ok((k, m))
    }

    /// Right-hand side `M(t)` of `ġ = g M(t)`.
    fn generator(&self, t: f64) -> Matrix<T> {
        let m = self.f.rows();
        let top = &(&(&linalg::expm(&self.a, t) * &linalg::expm(&self.e, t)) * &self.b) * &linalg::expm(&self.f, -t);
        assemble(&self.a.scale(-1.0), &top, &(-&top.adjoint()), &Matrix::zeros(m, m))
            .expect("blocks checked on entry")
    }
}

/// RK4 integration of `dg/dt = g [[−Ã, e^{tÃ}e^{tẼ}B̃e^{−tF}], [−(·)*, 0]]`
/// from `g₀`, without re-unitarisation.
pub fn horizontal_lift_ode<T: Scalar>(g0: &Matrix<T>, blocks: &LiftBlocks<T>, t_end: f64, steps: usize) -> Result<Matrix<T>> {
    if steps == 0 {
        return Err(GeoError::InvalidArgument("steps must be positive".into()));
    }
    let (k, m) = blocks.check()?;
    if g0.shape() != (k + m, k + m) {
        return Err(GeoError::Shape(format!("g0 is {:?}", g0.shape())));
    }
    let h = t_end / steps as f64;
    let mut g = g0.clone();
    for i in 0..steps {
        let t = i as f64 * h;
        let mid = blocks.generator(t + 0.5 * h);
        let k1 = &g * &blocks.generator(t);
        let k2 = &(&g + &k1.scale(0.5 * h)) * &mid;
        let k3 = &(&g + &k2.scale(0.5 * h)) * &mid;
        let k4 = &(&g + &k3.scale(h)) * &blocks.generator(t + h);
        let incr = &(&(&k1 + &k2.scale(2.0)) + &k3.scale(2.0)) + &k4;
        g = &g + &incr.scale(h / 6.0);
    }
    Ok(g)
}

/// Closed form `g₀ e^{tΦ} Δ(t)`, `Φ = [[Ẽ,B̃],[−B̃*,F]]`,
/// `Δ(t) = diag(e^{−tẼ}e^{−tÃ}, e^{−tF})`.
pub fn horizontal_lift_closed_form<T: Scalar>(g0: &Matrix<T>, blocks: &LiftBlocks<T>, t: f64) -> Result<Matrix<T>> {
    blocks.check()?;
    let phi = assemble(&blocks.e, &blocks.b, &(-&blocks.b.adjoint()), &blocks.f)?;
    let delta = block_diag(
        &(&linalg::expm(&blocks.e, -t) * &linalg::expm(&blocks.a, -t)),
        &linalg::expm(&blocks.f, -t),
    );
    Ok(&(g0 * &linalg::expm(&phi, t)) * &delta)
}
