//! Grassmann manifolds as orthogonal reflections `R = 2Π − I`, with the
//! base point `D = diag(I_k, −I_{n−k})`, and their symmetric-space structure.

use serde::Serialize;

use crate::error::{GeoError, Result};
use crate::geodesics::{ExpChain, HorizontalCurve};
use crate::lie::{algebra_basis, check_algebra, Distribution, DistributionKind, ProductElement};
use crate::linalg::{self, block_diag, off_diag, reflection_d, Matrix, TAU_GRP, TAU_SKEW};
use crate::random::{self, CorpusRng};
use crate::scalars::Scalar;

/// A k-dimensional subspace, stored as its reflection `R` (`R* = R`, `R² = I`).
#[derive(Debug, Clone, PartialEq)]
pub struct GrassmannPoint<T: Scalar> {
    r: Matrix<T>,
    k: usize,
}

impl<T: Scalar> GrassmannPoint<T> {
    pub fn new(r: Matrix<T>) -> Result<Self> {
        if !r.is_square() {
            return Err(GeoError::Shape(format!("reflection must be square, got {:?}", r.shape())));
        }
        let n = r.rows();
        let res = (&r - &r.adjoint()).max_abs().max((&(&r * &r) - &Matrix::identity(n)).max_abs());
        if res > TAU_GRP {
            return Err(GeoError::NotReflection(res));
        }
        let k = ((n as f64 + r.trace().re()) / 2.0).round() as usize;
        Ok(GrassmannPoint { r, k })
    }

    pub fn from_projector(p: &Matrix<T>) -> Result<Self> {
        Self::new(&p.scale(2.0) - &Matrix::identity(p.rows()))
    }

    /// The base point `D`.
    pub fn base(n: usize, k: usize) -> Self {
        GrassmannPoint { r: reflection_d(n, k), k }
    }

    pub fn reflection(&self) -> &Matrix<T> {
        &self.r
    }

    /// `Π = (I + R)/2`.
    pub fn projector(&self) -> Matrix<T> {
        (&self.r + &Matrix::identity(self.n())).scale(0.5)
    }

    pub fn n(&self) -> usize {
        self.r.rows()
    }

    pub fn k(&self) -> usize {
        self.k
    }
}

/// Tangent `Ṙ` at `R`: self-adjoint with `ṘR + RṘ = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct GrassmannTangent<T: Scalar> {
    pub at: GrassmannPoint<T>,
    pub dir: Matrix<T>,
}

impl<T: Scalar> GrassmannTangent<T> {
    pub fn new(at: GrassmannPoint<T>, dir: Matrix<T>) -> Result<Self> {
        if dir.shape() != at.r.shape() {
            return Err(GeoError::Shape(format!("direction {:?} at a point of size {}", dir.shape(), at.n())));
        }
        let res = (&dir - &dir.adjoint())
            .max_abs()
            .max((&(&dir * &at.r) + &(&at.r * &dir)).max_abs());
        if res > TAU_SKEW {
            return Err(GeoError::NotTangent(res));
        }
        Ok(GrassmannTangent { at, dir })
    }
}

/// Column space of `X` as the reflection `2XX* − I`.
pub fn project_stiefel<T: Scalar>(x: &Matrix<T>) -> Result<GrassmannPoint<T>> {
    let res = x.unitary_residual();
    if res > TAU_GRP {
        return Err(GeoError::NotUnitary(res));
    }
    Ok(GrassmannPoint { r: reflection_of(x), k: x.cols() })
}

fn reflection_of<T: Scalar>(x: &Matrix<T>) -> Matrix<T> {
    &(x * &x.adjoint()).scale(2.0) - &Matrix::identity(x.rows())
}

/// `O R O*`.
pub fn act<T: Scalar>(o: &Matrix<T>, p: &GrassmannPoint<T>) -> Result<GrassmannPoint<T>> {
    if o.shape() != p.r.shape() {
        return Err(GeoError::Shape(format!("{:?} acting on size {}", o.shape(), p.n())));
    }
    let res = o.unitary_residual();
    if res > TAU_GRP {
        return Err(GeoError::NotUnitary(res));
    }
    Ok(GrassmannPoint { r: &(o * &p.r) * &o.adjoint(), k: p.k })
}

fn check_blocks<T: Scalar>(g0: &Matrix<T>, b: &Matrix<T>) -> Result<(usize, usize)> {
    let n = g0.rows();
    let k = b.rows();
    if !g0.is_square() || k == 0 || k > n || b.cols() != n - k {
        return Err(GeoError::Shape(format!("B {:?} for n = {n}", b.shape())));
    }
    let res = g0.unitary_residual();
    if res > TAU_GRP {
        return Err(GeoError::NotUnitary(res));
    }
    Ok((n, k))
}

/// `g₀ e^{tP} D e^{−tP} g₀*` with `P = [[0,B],[−B*,0]]`.
pub fn grassmann_geodesic<T: Scalar>(g0: &Matrix<T>, b: &Matrix<T>, t: f64) -> Result<GrassmannPoint<T>> {
    let (n, k) = check_blocks(g0, b)?;
    let g = g0 * &linalg::expm(&off_diag(b), t);
    act(&g, &GrassmannPoint::base(n, k))
}

/// Horizontal lift `g₀ e^{t(P+K)} e^{−tK}` of the curve with constant
/// curvature, `P = [[0,B],[−B*,0]]`, `K = diag(E,F) ∈ 𝔤ₙ`.
pub fn grassmann_lift<T: Scalar>(g0: &Matrix<T>, b: &Matrix<T>, e: &Matrix<T>, f: &Matrix<T>) -> Result<HorizontalCurve<T>> {
    let (n, k) = check_blocks(g0, b)?;
    if e.shape() != (k, k) || f.shape() != (n - k, n - k) {
        return Err(GeoError::Shape(format!("E {:?}, F {:?}", e.shape(), f.shape())));
    }
    let kk = block_diag(e, f);
    check_algebra(&kk)?;
    let p = off_diag(b);
    Ok(HorizontalCurve {
        dist: Distribution::new(DistributionKind::Grassmann, n, k, T::ALGEBRA)?,
        chain: ExpChain {
            left: ProductElement::single(g0.clone()),
            gens: vec![ProductElement::single(&p + &kk), ProductElement::single(kk.scale(-1.0))],
            right: ProductElement::single(Matrix::identity(n)),
        },
    })
}

/// `g₀ e^{t(P+K)} D e^{−t(P+K)} g₀*`; a geodesic iff `[P, K] = 0`.
pub fn constant_curvature_curve<T: Scalar>(
    g0: &Matrix<T>,
    b: &Matrix<T>,
    e: &Matrix<T>,
    f: &Matrix<T>,
    t: f64,
) -> Result<GrassmannPoint<T>> {
    project_stiefel_curve(&grassmann_lift(g0, b, e, f)?, t)
}

/// Grassmann image of a Stiefel curve.
pub fn project_stiefel_curve<T: Scalar>(curve: &HorizontalCurve<T>, t: f64) -> Result<GrassmannPoint<T>> {
    project_stiefel(&curve.point(t))
}

/// `σ(X) = DXD`.
pub fn sigma<T: Scalar>(x: &Matrix<T>, k: usize) -> Matrix<T> {
    let d = reflection_d(x.rows(), k);
    &(&d * x) * &d
}

/// `F_g(h) = g σ(g⁻¹h)`.
pub fn geodesic_reversal<T: Scalar>(g: &Matrix<T>, h: &Matrix<T>, k: usize) -> Matrix<T> {
    g * &sigma(&(&g.adjoint() * h), k)
}

/// `S_p(R) = R_p R R_p`.
pub fn point_reflection<T: Scalar>(p: &GrassmannPoint<T>, q: &GrassmannPoint<T>) -> GrassmannPoint<T> {
    GrassmannPoint { r: &(&p.r * &q.r) * &p.r, k: q.k }
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SymmetryReport {
    pub n: usize,
    pub k: usize,
    pub trials: usize,
    /// `σ` preserves brackets and the trace form on a basis of 𝔤ₙ.
    pub sigma_isometry: f64,
    /// `F_g(g e^{tP}) = g e^{−tP}`.
    pub reversal: f64,
    /// `S_p(γ(t)) = γ(−t)` for `p = γ(0)`.
    pub point_reflection: f64,
    pub pass: bool,
}

/// Symmetric-space checks at `(n, k)` on `trials` random geodesics.
pub fn geodesic_symmetry_check<T: Scalar>(n: usize, k: usize, trials: usize, rng: &mut CorpusRng) -> Result<SymmetryReport> {
    if k == 0 || k > n {
        return Err(GeoError::InvalidPartition { n, k });
    }
    let basis = algebra_basis::<T>(n);
    let mut sigma_isometry = 0.0f64;
    for x in &basis {
        let sx = sigma(x, k);
        for y in &basis {
            let sy = sigma(y, k);
            let form = (linalg::trace_form_unchecked(&sx, &sy) - linalg::trace_form_unchecked(x, y)).abs();
            let hom = (&sigma(&x.commutator(y), k) - &sx.commutator(&sy)).max_abs();
            sigma_isometry = sigma_isometry.max(form).max(hom);
        }
    }
    let (mut reversal, mut point_refl) = (0.0f64, 0.0f64);
    for _ in 0..trials {
        let g = random::group_element::<T>(rng, n);
        let b = random::matrix::<T>(rng, k, n - k);
        let p = off_diag(&b);
        let p_at = act(&g, &GrassmannPoint::base(n, k))?;
        for t in [-1.3, -0.4, 0.25, 0.9, 2.0] {
            let fwd = &g * &linalg::expm(&p, t);
            let back = &g * &linalg::expm(&p, -t);
            reversal = reversal.max((&geodesic_reversal(&g, &fwd, k) - &back).max_abs());
            let gamma = grassmann_geodesic(&g, &b, t)?;
            let gamma_back = grassmann_geodesic(&g, &b, -t)?;
            point_refl = point_refl.max((point_reflection(&p_at, &gamma).r - gamma_back.r).max_abs());
        }
    }
    Ok(SymmetryReport {
        n,
        k,
        trials,
        sigma_isometry,
        reversal,
        point_reflection: point_refl,
        pass: sigma_isometry < 1e-13 && reversal < 1e-10 && point_refl < 1e-10,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    #[test]
    fn plane_geodesic_oracle() {
        let b = Matrix::from_rows(&[vec![1.0]]).unwrap();
        for t in [0.0, 0.3, 1.0, 2.5] {
            let r = grassmann_geodesic(&Matrix::<f64>::identity(2), &b, t).unwrap();
            let (c, s) = ((2.0 * t).cos(), (2.0 * t).sin());
            let expect = Matrix::from_rows(&[vec![c, -s], vec![-s, -c]]).unwrap();
            assert!((r.reflection() - &expect).max_abs() < 1e-14);
        }
    }

    #[test]
    fn projector_round_trip() {
        let mut rng = random::rng(5, "grassmann-unit");
        let g = random::group_element::<Complex64>(&mut rng, 4);
        let p = act(&g, &GrassmannPoint::base(4, 2)).unwrap();
        assert_eq!(p.k(), 2);
        let q = GrassmannPoint::from_projector(&p.projector()).unwrap();
        assert!((q.reflection() - p.reflection()).max_abs() < 1e-14);
        let pi = p.projector();
        assert!((&(&pi * &pi) - &pi).max_abs() < 1e-12);
        let x = g.left_cols(2);
        assert!((project_stiefel(&x).unwrap().reflection() - p.reflection()).max_abs() < 1e-12);
    }

    #[test]
    fn rejects_non_reflections() {
        let m = Matrix::from_rows(&[vec![1.0, 1.0], vec![0.0, -1.0]]).unwrap();
        assert!(matches!(GrassmannPoint::new(m), Err(GeoError::NotReflection(_))));
        let d = GrassmannPoint::<f64>::base(3, 1);
        assert!(matches!(GrassmannTangent::new(d.clone(), Matrix::identity(3)), Err(GeoError::NotTangent(_))));
        let ok = off_diag(&Matrix::from_rows(&[vec![1.0, 2.0]]).unwrap());
        let sym = Matrix::from_fn(3, 3, |r, c| if r == c { 0.0 } else { ok[(r, c)].abs() });
        assert!(GrassmannTangent::new(d, sym).is_ok());
    }
}
