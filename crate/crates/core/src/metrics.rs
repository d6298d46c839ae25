//! Homogeneous and ambient metrics on Stiefel manifolds, tangent lifts,
//! covariant derivatives and geodesic curvature.
//!
//! Throughout, `‖A‖² = −½ Re Tr(A²)` is the trace-form square of a skew block
//! and `‖B‖² = Tr(BB*)`.

use serde::{Deserialize, Serialize};

use crate::error::{GeoError, Result};
use crate::geodesics::HorizontalCurve;
use crate::lie::{LieStructure, ProductElement};
use crate::linalg::{self, determinant, i_nk, Matrix, TAU_GRP, TAU_SKEW};
use crate::scalars::{inner_product, Algebra, Scalar};

/// Step of the central difference used for `Ẇ`.
pub const H_COVARIANT: f64 = 1e-5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MetricTag {
    #[serde(rename = "reduced")]
    ReducedTrace,
    #[serde(rename = "orthogonal")]
    OrthogonalTrace,
    #[serde(rename = "quasi")]
    QuasiGeodesicTrace,
    Ambient,
}

impl MetricTag {
    pub const ALL: [MetricTag; 4] = [
        MetricTag::ReducedTrace,
        MetricTag::QuasiGeodesicTrace,
        MetricTag::OrthogonalTrace,
        MetricTag::Ambient,
    ];

    pub fn name(self) -> &'static str {
        match self {
            MetricTag::ReducedTrace => "reduced",
            MetricTag::OrthogonalTrace => "orthogonal",
            MetricTag::QuasiGeodesicTrace => "quasi",
            MetricTag::Ambient => "ambient",
        }
    }
}

/// `Ẋ` at `X`, with `X*Ẋ + Ẋ*X = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct TangentVector<T: Scalar> {
    pub at: Matrix<T>,
    pub dir: Matrix<T>,
}

impl<T: Scalar> TangentVector<T> {
    pub fn new(at: Matrix<T>, dir: Matrix<T>) -> Result<Self> {
        if at.shape() != dir.shape() || at.cols() > at.rows() || at.cols() == 0 {
            return Err(GeoError::Shape(format!("point {:?}, direction {:?}", at.shape(), dir.shape())));
        }
        let res = at.unitary_residual();
        if res > TAU_GRP {
            return Err(GeoError::NotUnitary(res));
        }
        let res = (&(&at.adjoint() * &dir) + &(&dir.adjoint() * &at)).max_abs();
        if res > TAU_SKEW {
            return Err(GeoError::NotTangent(res));
        }
        Ok(TangentVector { at, dir })
    }

    pub fn n(&self) -> usize {
        self.at.rows()
    }

    pub fn k(&self) -> usize {
        self.at.cols()
    }
}

/// A group element `g` with `g I_{nk} = X`.
#[derive(Debug, Clone, PartialEq)]
pub struct LiftContext<T: Scalar> {
    pub g: Matrix<T>,
}

impl<T: Scalar> LiftContext<T> {
    pub fn new(g: Matrix<T>, x: &Matrix<T>) -> Result<Self> {
        if !g.is_square() || g.rows() != x.rows() {
            return Err(GeoError::Shape(format!("g {:?} for X {:?}", g.shape(), x.shape())));
        }
        let res = g.unitary_residual();
        if res > TAU_GRP {
            return Err(GeoError::NotUnitary(res));
        }
        let res = (&g.left_cols(x.cols()) - x).max_abs();
        if res > TAU_GRP {
            return Err(GeoError::InvalidArgument(format!("g I_nk differs from X by {res:.3e}")));
        }
        Ok(LiftContext { g })
    }

    /// Completes the columns of `X` to an element of Gₙ by Gram–Schmidt on
    /// the standard basis (scalars act on the right).
    pub fn complete(x: &Matrix<T>) -> Result<Self> {
        let (n, k) = x.shape();
        let res = x.unitary_residual();
        if res > TAU_GRP {
            return Err(GeoError::NotUnitary(res));
        }
        let mut cols: Vec<Vec<T>> = (0..k).map(|c| x.column(c)).collect();
        for e in 0..n {
            if cols.len() == n {
                break;
            }
            let mut v: Vec<T> = (0..n).map(|r| if r == e { T::one() } else { T::zero() }).collect();
            for _ in 0..2 {
                for q in &cols {
                    let c = inner_product(q, &v);
                    for (vi, qi) in v.iter_mut().zip(q) {
                        *vi -= *qi * c;
                    }
                }
            }
            let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            if norm > 1e-6 {
                cols.push(v.into_iter().map(|z| z.scale(1.0 / norm)).collect());
            }
        }
        let mut g = Matrix::from_fn(n, n, |r, c| cols[c][r]);
        if n > k {
            // Land in the identity component: SO(n) or SU(n).
            let det = determinant(&T::to_complex_matrix(&g));
            let fix = match T::ALGEBRA {
                Algebra::Real if det.re < 0.0 => Some(T::from_real(-1.0)),
                Algebra::Complex => Some(T::from_components(&[det.conj().re, det.conj().im])),
                _ => None,
            };
            if let Some(f) = fix {
                for r in 0..n {
                    g[(r, n - 1)] = g[(r, n - 1)] * f;
                }
            }
        }
        Ok(LiftContext { g })
    }
}

/// Horizontal lift `W = [[A,B],[−B*,0]]` with `[A; −B*] = g*Ẋ`.
pub fn lift_tangent<T: Scalar>(v: &TangentVector<T>, ctx: &LiftContext<T>) -> Result<Matrix<T>> {
    let (n, k) = v.at.shape();
    if ctx.g.rows() != n || (&ctx.g.left_cols(k) - &v.at).max_abs() > TAU_GRP {
        return Err(GeoError::InvalidArgument("lift context does not sit over the point".into()));
    }
    let y = &ctx.g.adjoint() * &v.dir;
    let a = y.block(0, 0, k, k);
    let b = y.block(k, 0, n - k, k).adjoint().scale(-1.0);
    if T::ALGEBRA.traceless() && k < n {
        // The direction i·diag((n−k)I_k, −k I_{n−k}) is not in 𝔭 over su(n).
        let tr = a.trace().abs();
        if tr > TAU_SKEW {
            return Err(GeoError::NotTraceless(tr));
        }
    }
    linalg::assemble(&a, &b, &(-&b.adjoint()), &Matrix::zeros(n - k, n - k))
}

/// Blocks `(top, bottom)` of `Y = g*Ẋ`.
fn read_off<T: Scalar>(v: &TangentVector<T>, ctx: &LiftContext<T>) -> Result<(Matrix<T>, Matrix<T>)> {
    let (n, k) = v.at.shape();
    if ctx.g.rows() != n || (&ctx.g.left_cols(k) - &v.at).max_abs() > TAU_GRP {
        return Err(GeoError::InvalidArgument("lift context does not sit over the point".into()));
    }
    let y = &ctx.g.adjoint() * &v.dir;
    Ok((y.block(0, 0, k, k), y.block(k, 0, n - k, k)))
}

/// `‖A‖² = −½ Re Tr(A²)` for a skew block.
pub fn skew_norm_sqr<T: Scalar>(a: &Matrix<T>) -> f64 {
    linalg::trace_form_unchecked(a, a)
}

/// Squared length of `Ẋ` under the given metric.
///
/// The trace metrics read the blocks of `Y = g*Ẋ` in the coordinates of
/// their own distribution's lift through `(g, I)`:
/// reduced `Y = [A; −B*]`, quasi-geodesic `Y = [−A; −B*]` (from
/// `(g e^{tΨ}, e^{tA})`), orthogonal `Y = [2A'; −B'*]` (from
/// `(g e^{tΩ'}, e^{−tA'})`).
pub fn stiefel_norm<T: Scalar>(v: &TangentVector<T>, metric: MetricTag, ctx: &LiftContext<T>) -> Result<f64> {
    let (top, bottom) = read_off(v, ctx)?;
    Ok(match metric {
        MetricTag::ReducedTrace => skew_norm_sqr(&top) + bottom.frobenius_sqr(),
        MetricTag::QuasiGeodesicTrace => {
            let a = top.scale(-1.0);
            let b = bottom.adjoint().scale(-1.0);
            skew_norm_sqr(&a) + b.frobenius_sqr()
        }
        MetricTag::OrthogonalTrace => {
            let a = top.scale(0.5);
            let b = bottom.adjoint().scale(-1.0);
            2.0 * skew_norm_sqr(&a) + b.frobenius_sqr()
        }
        MetricTag::Ambient => v.dir.frobenius_sqr(),
    })
}

/// `((U₁,U₂)_𝔭, ⟨U₁, DU₂ + U₂D⟩)` for reduced-𝔭 elements, `D = diag(I_k, 0)`;
/// the first is the ambient form `Re Tr((U₁I_{nk})*(U₂I_{nk}))`.
pub fn ambient_vs_trace_relation<T: Scalar>(u1: &Matrix<T>, u2: &Matrix<T>, k: usize) -> Result<(f64, f64)> {
    let n = u1.rows();
    if u1.shape() != u2.shape() || !u1.is_square() || k == 0 || k > n {
        return Err(GeoError::Shape(format!("{:?}, {:?}, k = {k}", u1.shape(), u2.shape())));
    }
    for u in [u1, u2] {
        let res = u.block(k, k, n - k, n - k).max_abs();
        if res > TAU_SKEW {
            return Err(GeoError::NotInSubspace { space: "p", residual: res });
        }
    }
    let ink = i_nk::<T>(n, k);
    let lhs = (&(u1 * &ink).adjoint() * &(u2 * &ink)).trace().re();
    let d = Matrix::from_fn(n, n, |r, c| if r == c && r < k { T::one() } else { T::zero() });
    let rhs = linalg::trace_form(u1, &(&(&d * u2) + &(u2 * &d)))?;
    Ok((lhs, rhs))
}

/// For a dual vector `L = [[A,B],[−B*,C]]`, the optimal control is
/// `U = [[A/2,B],[−B*,0]]`. Returns `(½(U,U)_𝔭, ¼‖A‖² + ½Tr(BB*))`.
pub fn ambient_hamiltonian<T: Scalar>(l: &Matrix<T>, k: usize) -> Result<(f64, f64)> {
    let n = l.rows();
    let s = l.split(k)?;
    let u = linalg::assemble(&s.a.scale(0.5), &s.b, &(-&s.b.adjoint()), &Matrix::zeros(n - k, n - k))?;
    let (uu, _) = ambient_vs_trace_relation(&u, &u, k)?;
    Ok((0.5 * uu, 0.25 * skew_norm_sqr(&s.a) + 0.5 * s.b.frobenius_sqr()))
}

/// `D/dt W` along a horizontal curve, as `g(t)·V` with `V ∈ 𝔭`.
#[derive(Debug, Clone)]
pub struct CovariantDerivative<T: Scalar> {
    /// `V = Ẇ + ½[U,W]_𝔭`.
    pub lifted: ProductElement<T>,
    /// Push-forward of `g V` to the Stiefel manifold.
    pub tangent: Matrix<T>,
    /// Trace-form length of `V`.
    pub norm: f64,
}

/// Push-forward of `gV` under `π(r, s) = r I_{nk} s*`.
pub fn push_forward<T: Scalar>(g: &ProductElement<T>, v: &ProductElement<T>, k: usize) -> Matrix<T> {
    let n = g.first.rows();
    let ink = i_nk::<T>(n, k);
    let left = &(&g.first * &v.first) * &ink;
    if g.second.rows() == 0 {
        left
    } else {
        let right = &(&(&g.first * &ink) * &v.second) * &g.second.adjoint();
        &(&left * &g.second.adjoint()) - &right
    }
}

/// `g(t)(Ẇ + ½[U(t), W(t)]_𝔭)` with `Ẇ` from a central difference.
///
/// The lift must be horizontal for `structure`, whose 𝔭 ⊕ 𝔭⊥ split has to
/// be orthogonal (reduced, orthogonal or Grassmann) for the formula to be
/// the Levi-Civita derivative.
pub fn covariant_derivative<T: Scalar>(
    structure: &LieStructure<T>,
    curve: &HorizontalCurve<T>,
    w: impl Fn(f64) -> ProductElement<T>,
    t: f64,
) -> Result<CovariantDerivative<T>> {
    if curve.dist.kind != structure.dist.kind || curve.dist.n != structure.dist.n || curve.dist.k != structure.dist.k {
        return Err(GeoError::InvalidArgument(format!(
            "curve lives on {}, structure is {}",
            curve.dist, structure.dist
        )));
    }
    let u = curve.control(t);
    let off = structure.p_residual(&u);
    if off > 1e-8 {
        return Err(GeoError::NotInSubspace { space: "p", residual: off });
    }
    let h = H_COVARIANT;
    let wdot = (&w(t + h) - &w(t - h)).scale(0.5 / h);
    let bracket = structure.p_component(&u.bracket(&w(t)));
    let lifted = &wdot + &bracket.scale(0.5);
    let norm = lifted.norm();
    let tangent = push_forward(&curve.lift(t), &lifted, curve.dist.k);
    Ok(CovariantDerivative { lifted, tangent, norm })
}

/// `‖D/dt U‖ / ‖U‖²` for a constant-speed horizontal curve.
pub fn geodesic_curvature<T: Scalar>(structure: &LieStructure<T>, curve: &HorizontalCurve<T>, t: f64) -> Result<f64> {
    let speed_sqr = curve.control(t).trace_form(&curve.control(t));
    if speed_sqr <= 0.0 {
        return Err(GeoError::InvalidArgument("curve has zero speed".into()));
    }
    let d = covariant_derivative(structure, curve, |s| curve.control(s), t)?;
    Ok(d.norm / speed_sqr)
}
