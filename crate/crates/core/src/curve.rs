//! JSON curve specifications and algebra-independent sampling.
//!
//! ```json
//! {"family":"sr","dist":"reduced","n":3,"k":1,"algebra":"real",
//!  "blocks":{"B":{"algebra":"real","rows":1,"cols":2,"data":[[1,0]]}},
//!  "basepoint":{"r":...,"s":...},"normalized":true}
//! ```
//!
//! Missing blocks are zero and a missing basepoint is the identity. Block
//! roles by family:
//!
//! * `stiefel`: Riemannian geodesic of `dist` with blocks `A`, `B`.
//! * `quasi`: `r e^{tΨ} I_{nk} e^{−tA} s*`.
//! * `sr`: `g₀ e^{t(P_𝔭+P_𝔭⊥)} e^{−tP_𝔭⊥}`; `P_𝔭` is built from `A`, `B` as in
//!   the distribution and `P_𝔭⊥` from `diag(E, F)`, with second component `C`
//!   (default `E`) for the orthogonal distribution and `0` for the
//!   quasi-geodesic one.
//! * `ambient`: `g₀ e^{t[[A,B],[−B*,C]]} I_{nk} e^{−tA/2}`.
//! * `grassmann`: `g₀ e^{t(P+K)} D e^{−t(P+K)} g₀*` with `P = off(B)`, `K = diag(E,F)`;
//!   samples are reflections.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{GeoError, Result};
use crate::geodesics::{HorizontalCurve, SubRiemannianGeodesic};
use crate::grassmann::{grassmann_lift, GrassmannPoint};
use crate::json::{matrix_from_json, MatrixJson};
use crate::lie::{Distribution, DistributionKind, LieStructure, ProductElement};
use crate::linalg::{assemble, block_diag, off_diag, Matrix};
use crate::metrics::{geodesic_curvature, push_forward};
use crate::scalars::{Algebra, Quaternion, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Sr,
    Stiefel,
    Quasi,
    Ambient,
    Grassmann,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Blocks {
    #[serde(rename = "A", default, skip_serializing_if = "Option::is_none")]
    pub a: Option<MatrixJson>,
    #[serde(rename = "B", default, skip_serializing_if = "Option::is_none")]
    pub b: Option<MatrixJson>,
    #[serde(rename = "C", default, skip_serializing_if = "Option::is_none")]
    pub c: Option<MatrixJson>,
    #[serde(rename = "E", default, skip_serializing_if = "Option::is_none")]
    pub e: Option<MatrixJson>,
    #[serde(rename = "F", default, skip_serializing_if = "Option::is_none")]
    pub f: Option<MatrixJson>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Basepoint {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<MatrixJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s: Option<MatrixJson>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveSpec {
    pub family: Family,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dist: Option<DistributionKind>,
    pub n: usize,
    pub k: usize,
    pub algebra: Algebra,
    #[serde(default)]
    pub blocks: Blocks,
    #[serde(default)]
    pub basepoint: Basepoint,
    #[serde(default)]
    pub normalized: bool,
}

impl CurveSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        let spec: CurveSpec = serde_json::from_str(text)?;
        if spec.k == 0 || spec.k > spec.n {
            return Err(GeoError::InvalidPartition { n: spec.n, k: spec.k });
        }
        Ok(spec)
    }
}

/// Numeric blocks of a spec, after normalisation.
#[derive(Debug, Clone)]
struct Data<T: Scalar> {
    a: Matrix<T>,
    b: Matrix<T>,
    c: Option<Matrix<T>>,
    e: Matrix<T>,
    f: Matrix<T>,
    r: Matrix<T>,
    s: Matrix<T>,
}

impl<T: Scalar> Data<T> {
    fn parse(spec: &CurveSpec) -> Result<Self> {
        let (n, k) = (spec.n, spec.k);
        let get = |m: &Option<MatrixJson>, rows, cols| -> Result<Matrix<T>> {
            match m {
                Some(j) => {
                    let m = matrix_from_json::<T>(j)?;
                    if m.shape() != (rows, cols) {
                        return Err(GeoError::Shape(format!("block is {:?}, expected {rows}x{cols}", m.shape())));
                    }
                    Ok(m)
                }
                None => Ok(Matrix::zeros(rows, cols)),
            }
        };
        let c_size = if spec.family == Family::Ambient { n - k } else { k };
        Ok(Data {
            a: get(&spec.blocks.a, k, k)?,
            b: get(&spec.blocks.b, k, n - k)?,
            c: spec.blocks.c.as_ref().map(|_| get(&spec.blocks.c, c_size, c_size)).transpose()?,
            e: get(&spec.blocks.e, k, k)?,
            f: get(&spec.blocks.f, n - k, n - k)?,
            r: spec.basepoint.r.as_ref().map_or_else(|| Ok(Matrix::identity(n)), |_| get(&spec.basepoint.r, n, n))?,
            s: spec.basepoint.s.as_ref().map_or_else(|| Ok(Matrix::identity(k)), |_| get(&spec.basepoint.s, k, k))?,
        })
    }

    fn scaled(&self, c: f64) -> Self {
        Data {
            a: self.a.scale(c),
            b: self.b.scale(c),
            c: self.c.as_ref().map(|m| m.scale(c)),
            e: self.e.scale(c),
            f: self.f.scale(c),
            r: self.r.clone(),
            s: self.s.clone(),
        }
    }
}

/// A curve built from a [`CurveSpec`] over a fixed algebra.
#[derive(Debug, Clone)]
pub struct Curve<T: Scalar> {
    pub spec: CurveSpec,
    /// Carrier of the sampled points: a Stiefel lift, or the Grassmann lift.
    pub lift: HorizontalCurve<T>,
    /// Lift horizontal for an orthogonal split, used for curvature.
    pub metric_lift: HorizontalCurve<T>,
    /// Grassmann-horizontal lift of the projected curve.
    pub grassmann: HorizontalCurve<T>,
}

impl<T: Scalar> Curve<T> {
    pub fn new(spec: &CurveSpec) -> Result<Self> {
        if spec.algebra != T::ALGEBRA {
            return Err(GeoError::InvalidArgument(format!(
                "spec is {}, curve is {}",
                spec.algebra.name(),
                T::ALGEBRA.name()
            )));
        }
        let data = Data::<T>::parse(spec)?;
        let curve = Self::build(spec, &data)?;
        if !spec.normalized {
            return Ok(curve);
        }
        let speed = curve.speed();
        if !(speed > 1e-14) {
            return Err(GeoError::InvalidArgument("cannot normalise a constant curve".into()));
        }
        Self::build(spec, &data.scaled(1.0 / speed))
    }

    fn build(spec: &CurveSpec, d: &Data<T>) -> Result<Self> {
        let (n, k) = (spec.n, spec.k);
        let zk = Matrix::zeros(k, k);
        let zm = Matrix::zeros(n - k, n - k);
        let dist = spec.dist;
        let unsupported = || GeoError::InvalidArgument(format!("family {:?} with distribution {:?}", spec.family, dist));
        // (lift, metric lift, Grassmann data (B, E, F))
        let (lift, metric_lift, gr): (HorizontalCurve<T>, HorizontalCurve<T>, (Matrix<T>, Matrix<T>, Matrix<T>)) =
            match spec.family {
                Family::Stiefel => match dist.unwrap_or(DistributionKind::Reduced) {
                    DistributionKind::Reduced => {
                        let c = HorizontalCurve::reduced(&d.r, &d.a, &d.b)?;
                        (c.clone(), c, (d.b.clone(), d.a.clone(), zm))
                    }
                    DistributionKind::Orthogonal => (
                        HorizontalCurve::orthogonal(&d.r, &d.s, &d.a, &d.b)?,
                        HorizontalCurve::orthogonal(&d.r, &d.s, &d.a, &d.b)?,
                        (d.b.clone(), d.a.clone(), zm),
                    ),
                    DistributionKind::QuasiGeodesic => {
                        let e = d.a.scale(-1.0);
                        (
                            HorizontalCurve::sr_qg(&d.r, &d.s, &d.a, &d.b, &e, &zm)?,
                            HorizontalCurve::sr_qg_reduced_lift(&d.r, &d.s, &d.a, &d.b, &e, &zm)?,
                            (d.b.clone(), e, zm),
                        )
                    }
                    DistributionKind::Grassmann => return Err(unsupported()),
                },
                Family::Quasi => {
                    if dist.is_some_and(|k| k != DistributionKind::QuasiGeodesic) {
                        return Err(unsupported());
                    }
                    (
                        HorizontalCurve::quasi(&d.r, &d.s, &d.b, &d.a)?,
                        HorizontalCurve::sr_qg_reduced_lift(&d.r, &d.s, &d.a, &d.b, &zk, &zm)?,
                        (d.b.clone(), zk, zm),
                    )
                }
                Family::Sr => {
                    let kind = dist.unwrap_or(DistributionKind::Reduced);
                    let st = LieStructure::<T>::new(Distribution::new(kind, n, k, T::ALGEBRA)?)?;
                    let ef = block_diag(&d.e, &d.f);
                    let omega = assemble(&d.a, &d.b, &(-&d.b.adjoint()), &zm)?;
                    let (pp, pperp, g0) = match kind {
                        DistributionKind::Reduced => (
                            ProductElement::single(omega),
                            ProductElement::single(ef),
                            ProductElement::single(d.r.clone()),
                        ),
                        DistributionKind::Orthogonal => (
                            ProductElement::new(omega, d.a.scale(-1.0)),
                            ProductElement::new(ef, d.c.clone().unwrap_or_else(|| d.e.clone())),
                            ProductElement::new(d.r.clone(), d.s.clone()),
                        ),
                        DistributionKind::QuasiGeodesic => (
                            ProductElement::new(off_diag(&d.b), d.a.clone()),
                            ProductElement::new(ef, zk.clone()),
                            ProductElement::new(d.r.clone(), d.s.clone()),
                        ),
                        DistributionKind::Grassmann => (
                            ProductElement::single(off_diag(&d.b)),
                            ProductElement::single(ef),
                            ProductElement::single(d.r.clone()),
                        ),
                    };
                    let phi = (&pp + &pperp).first;
                    let gr = (phi.block(0, k, k, n - k), phi.block(0, 0, k, k), phi.block(k, k, n - k, n - k));
                    let geo = SubRiemannianGeodesic::new(&st, g0, pp, pperp)?;
                    let metric = match kind {
                        DistributionKind::QuasiGeodesic => {
                            HorizontalCurve::sr_qg_reduced_lift(&d.r, &d.s, &d.a, &d.b, &d.e, &d.f)?
                        }
                        _ => geo.curve.clone(),
                    };
                    (geo.curve, metric, gr)
                }
                Family::Ambient => {
                    let c = d.c.clone().unwrap_or_else(|| zm.clone());
                    let curve = HorizontalCurve::ambient(&d.r, &d.a, &d.b, &c)?;
                    (curve.clone(), curve, (d.b.clone(), d.a.clone(), c))
                }
                Family::Grassmann => {
                    let c = grassmann_lift(&d.r, &d.b, &d.e, &d.f)?;
                    (c.clone(), c, (d.b.clone(), d.e.clone(), d.f.clone()))
                }
            };
        let grassmann = grassmann_lift(&d.r, &gr.0, &gr.1, &gr.2)?;
        Ok(Curve { spec: spec.clone(), lift, metric_lift, grassmann })
    }

    /// Metric speed at `t = 0`: trace-form length of the control, or `‖Ẋ‖_F`
    /// for the ambient family.
    pub fn speed(&self) -> f64 {
        match self.spec.family {
            Family::Ambient => push_forward(&self.lift.lift(0.0), &self.lift.control(0.0), self.spec.k).frobenius(),
            _ => self.lift.control(0.0).norm(),
        }
    }

    pub fn is_grassmann(&self) -> bool {
        self.spec.family == Family::Grassmann
    }

    /// Stiefel point `n×k`, or the reflection `n×n` for the Grassmann family.
    pub fn point(&self, t: f64) -> Matrix<T> {
        if self.is_grassmann() {
            self.projection(t).reflection().clone()
        } else {
            self.lift.point(t)
        }
    }

    /// Distance of a sample from its manifold: `‖X*X − I‖` or
    /// `max(‖R* − R‖, ‖R² − I‖)`.
    pub fn residual(&self, m: &Matrix<T>) -> f64 {
        if self.is_grassmann() {
            (m - &m.adjoint()).max_abs().max((&(m * m) - &Matrix::identity(m.rows())).max_abs())
        } else {
            m.unitary_residual()
        }
    }

    /// Grassmann image `g₀ e^{tΦ̃} D e^{−tΦ̃} g₀*`.
    pub fn projection(&self, t: f64) -> GrassmannPoint<T> {
        let x = self.grassmann.point(t);
        let r = &(&x * &x.adjoint()).scale(2.0) - &Matrix::identity(x.rows());
        GrassmannPoint::new(r).expect("image of a unitary lift is a reflection")
    }

    /// Geodesic curvature of the Stiefel curve (the Grassmann curve for the
    /// Grassmann family) at `t`.
    pub fn curvature(&self, t: f64) -> Result<f64> {
        let st = LieStructure::<T>::new(self.metric_lift.dist)?;
        geodesic_curvature(&st, &self.metric_lift, t)
    }

    pub fn grassmann_curvature(&self, t: f64) -> Result<f64> {
        let st = LieStructure::<T>::new(self.grassmann.dist)?;
        geodesic_curvature(&st, &self.grassmann, t)
    }
}

/// One sampled point with real components in row-major order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurveSample {
    pub t: f64,
    pub rows: usize,
    pub cols: usize,
    pub point: Vec<f64>,
    pub residual: f64,
}

/// A [`Curve`] over whichever algebra the spec names.
#[derive(Debug, Clone)]
pub enum AnyCurve {
    Real(Curve<f64>),
    Complex(Curve<Complex64>),
    Quaternion(Curve<Quaternion>),
}

macro_rules! dispatch {
    ($self:expr, $c:ident => $body:expr) => {
        match $self {
            AnyCurve::Real($c) => $body,
            AnyCurve::Complex($c) => $body,
            AnyCurve::Quaternion($c) => $body,
        }
    };
}

impl AnyCurve {
    pub fn new(spec: &CurveSpec) -> Result<Self> {
        Ok(match spec.algebra {
            Algebra::Real => AnyCurve::Real(Curve::new(spec)?),
            Algebra::Complex => AnyCurve::Complex(Curve::new(spec)?),
            Algebra::Quaternion => AnyCurve::Quaternion(Curve::new(spec)?),
        })
    }

    pub fn spec(&self) -> &CurveSpec {
        dispatch!(self, c => &c.spec)
    }

    pub fn sample(&self, t: f64) -> CurveSample {
        dispatch!(self, c => {
            let m = c.point(t);
            CurveSample { t, rows: m.rows(), cols: m.cols(), point: m.to_real_vec(), residual: c.residual(&m) }
        })
    }

    /// `count` samples evenly spaced on `[t0, t1]`.
    pub fn samples(&self, t0: f64, t1: f64, count: usize) -> Vec<CurveSample> {
        match count {
            0 => Vec::new(),
            1 => vec![self.sample(t0)],
            _ => (0..count)
                .map(|i| self.sample(t0 + (t1 - t0) * i as f64 / (count - 1) as f64))
                .collect(),
        }
    }

    pub fn curvature(&self, t: f64) -> Result<f64> {
        dispatch!(self, c => c.curvature(t))
    }

    pub fn grassmann_curvature(&self, t: f64) -> Result<f64> {
        dispatch!(self, c => c.grassmann_curvature(t))
    }

    pub fn speed(&self) -> f64 {
        dispatch!(self, c => c.speed())
    }
}

/// Column names for a flattened `rows × cols` sample, e.g. `x_0_1_im`.
pub fn column_names(algebra: Algebra, rows: usize, cols: usize) -> Vec<String> {
    let parts: &[&str] = match algebra {
        Algebra::Real => &[""],
        Algebra::Complex => &["_re", "_im"],
        Algebra::Quaternion => &["_q0", "_q1", "_q2", "_q3"],
    };
    let mut out = Vec::with_capacity(rows * cols * parts.len());
    for r in 0..rows {
        for c in 0..cols {
            for p in parts {
                out.push(format!("x_{r}_{c}{p}"));
            }
        }
    }
    out
}
