//! Lie algebras so(n), su(n), sp(n), the 𝔭 ⊕ 𝔨 splittings of the Stiefel and
//! Grassmann distributions, and structure checks.
//!
//! Elements of the pair algebra 𝔤ₙ × 𝔤ₖ are [`ProductElement`]s; for the
//! distributions living on 𝔤ₙ alone the second component is a 0×0 matrix.
//! Coordinates are the real components of `first` followed by `second`, and
//! in those coordinates the trace form is half the Euclidean product, so
//! Euclidean projections are trace-form projections.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::{GeoError, Result};
use crate::linalg::{self, block_diag, off_diag, Matrix, TAU_GRP, TAU_SKEW};
use crate::random::{self, CorpusRng};
use crate::scalars::{Algebra, Scalar};

/// Singular values above this fraction of the largest count toward rank.
pub const RANK_TOL: f64 = 1e-9;

/// Skew-adjoint element of 𝔤ₙ, traceless over ℂ.
#[derive(Debug, Clone, PartialEq)]
pub struct AlgebraElement<T: Scalar>(Matrix<T>);

impl<T: Scalar> AlgebraElement<T> {
    pub fn new(m: Matrix<T>) -> Result<Self> {
        check_algebra(&m)?;
        Ok(AlgebraElement(m))
    }

    pub fn matrix(&self) -> &Matrix<T> {
        &self.0
    }

    pub fn into_matrix(self) -> Matrix<T> {
        self.0
    }

    pub fn n(&self) -> usize {
        self.0.rows()
    }

    pub fn bracket(&self, other: &Self) -> Result<Self> {
        if self.n() != other.n() {
            return Err(GeoError::Shape(format!("bracket of sizes {} and {}", self.n(), other.n())));
        }
        Ok(AlgebraElement(self.0.commutator(&other.0)))
    }

    pub fn trace_form(&self, other: &Self) -> Result<f64> {
        linalg::trace_form(&self.0, &other.0)
    }
}

/// Admission check for 𝔤ₙ.
pub fn check_algebra<T: Scalar>(m: &Matrix<T>) -> Result<()> {
    let res = m.skew_residual();
    if res > TAU_SKEW {
        return Err(GeoError::NotSkewAdjoint(res));
    }
    if T::ALGEBRA.traceless() {
        let tr = m.trace().abs();
        if tr > 1e-12 {
            return Err(GeoError::NotTraceless(tr));
        }
    }
    Ok(())
}

/// Pair `(first, second)` in 𝔤ₙ × 𝔤ₖ or Gₙ × Gₖ.
#[derive(Debug, Clone, PartialEq)]
pub struct ProductElement<T: Scalar> {
    pub first: Matrix<T>,
    pub second: Matrix<T>,
}

impl<T: Scalar> ProductElement<T> {
    pub fn new(first: Matrix<T>, second: Matrix<T>) -> Self {
        ProductElement { first, second }
    }

    /// Element with empty second component.
    pub fn single(first: Matrix<T>) -> Self {
        ProductElement { first, second: Matrix::zeros(0, 0) }
    }

    pub fn zeros(n: usize, k2: usize) -> Self {
        ProductElement::new(Matrix::zeros(n, n), Matrix::zeros(k2, k2))
    }

    pub fn identity(n: usize, k2: usize) -> Self {
        ProductElement::new(Matrix::identity(n), Matrix::identity(k2))
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.first.rows(), self.second.rows())
    }

    pub fn map(&self, f: impl Fn(&Matrix<T>) -> Matrix<T>) -> Self {
        ProductElement::new(f(&self.first), f(&self.second))
    }

    pub fn scale(&self, s: f64) -> Self {
        self.map(|m| m.scale(s))
    }

    pub fn adjoint(&self) -> Self {
        self.map(Matrix::adjoint)
    }

    pub fn exp(&self) -> Self {
        self.map(Matrix::expm)
    }

    pub fn bracket(&self, o: &Self) -> Self {
        ProductElement::new(self.first.commutator(&o.first), self.second.commutator(&o.second))
    }

    /// Sum of the trace forms of the two components.
    pub fn trace_form(&self, o: &Self) -> f64 {
        linalg::trace_form_unchecked(&self.first, &o.first)
            + linalg::trace_form_unchecked(&self.second, &o.second)
    }

    pub fn norm(&self) -> f64 {
        self.trace_form(self).max(0.0).sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.first.max_abs().max(self.second.max_abs())
    }

    pub fn skew_residual(&self) -> f64 {
        self.first.skew_residual().max(if self.second.rows() == 0 {
            0.0
        } else {
            self.second.skew_residual()
        })
    }

    pub fn unitary_residual(&self) -> f64 {
        self.first.unitary_residual().max(self.second.unitary_residual())
    }

    pub fn to_vec(&self) -> Vec<f64> {
        let mut v = self.first.to_real_vec();
        v.extend(self.second.to_real_vec());
        v
    }

    pub fn from_vec(n: usize, k2: usize, v: &[f64]) -> Self {
        let split = n * n * T::ALGEBRA.real_dim();
        ProductElement::new(
            Matrix::from_real_vec(n, n, &v[..split]),
            Matrix::from_real_vec(k2, k2, &v[split..]),
        )
    }
}

macro_rules! product_op {
    ($tr:ident, $m:ident) => {
        impl<T: Scalar> $tr for &ProductElement<T> {
            type Output = ProductElement<T>;
            fn $m(self, o: &ProductElement<T>) -> ProductElement<T> {
                ProductElement::new((&self.first).$m(&o.first), (&self.second).$m(&o.second))
            }
        }
        impl<T: Scalar> $tr for ProductElement<T> {
            type Output = ProductElement<T>;
            fn $m(self, o: ProductElement<T>) -> ProductElement<T> {
                (&self).$m(&o)
            }
        }
    };
}

product_op!(Add, add);
product_op!(Sub, sub);
product_op!(Mul, mul);

impl<T: Scalar> Neg for &ProductElement<T> {
    type Output = ProductElement<T>;
    fn neg(self) -> ProductElement<T> {
        self.scale(-1.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DistributionKind {
    /// 𝔭 = {[[A,B],[−B*,0]]} on 𝔤ₙ.
    Reduced,
    /// 𝔭 = {([[A,B],[−B*,0]], −A)} on 𝔤ₙ × 𝔤ₖ.
    Orthogonal,
    /// 𝔭 = {([[0,B],[−B*,0]], A)} on 𝔤ₙ × 𝔤ₖ.
    #[serde(rename = "quasigeodesic")]
    QuasiGeodesic,
    /// Symmetric pair split by σ(g) = DgD on 𝔤ₙ: 𝔭 = {[[0,B],[−B*,0]]}.
    Grassmann,
}

impl DistributionKind {
    pub const ALL: [DistributionKind; 4] = [
        DistributionKind::Reduced,
        DistributionKind::Orthogonal,
        DistributionKind::QuasiGeodesic,
        DistributionKind::Grassmann,
    ];

    pub fn is_product(self) -> bool {
        matches!(self, DistributionKind::Orthogonal | DistributionKind::QuasiGeodesic)
    }

    pub fn name(self) -> &'static str {
        match self {
            DistributionKind::Reduced => "reduced",
            DistributionKind::Orthogonal => "orthogonal",
            DistributionKind::QuasiGeodesic => "quasigeodesic",
            DistributionKind::Grassmann => "grassmann",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|d| d.name() == s)
            .ok_or_else(|| GeoError::Parse(format!("unknown distribution `{s}`")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Distribution {
    #[serde(rename = "dist")]
    pub kind: DistributionKind,
    pub n: usize,
    pub k: usize,
    pub algebra: Algebra,
}

impl Distribution {
    pub fn new(kind: DistributionKind, n: usize, k: usize, algebra: Algebra) -> Result<Self> {
        if k == 0 || k > n {
            return Err(GeoError::InvalidPartition { n, k });
        }
        Ok(Distribution { kind, n, k, algebra })
    }

    /// Size of the second factor (0 when the carrier is 𝔤ₙ alone).
    pub fn k2(&self) -> usize {
        if self.kind.is_product() {
            self.k
        } else {
            0
        }
    }
}

impl fmt::Display for Distribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({},{},{})", self.kind.name(), self.n, self.k, self.algebra)
    }
}

pub fn dim_algebra(algebra: Algebra, n: usize) -> usize {
    match algebra {
        Algebra::Real => n * n.saturating_sub(1) / 2,
        Algebra::Complex => (n * n).saturating_sub(1),
        Algebra::Quaternion => n * (2 * n + 1),
    }
}

fn unit<T: Scalar>(n: usize, i: usize, j: usize, v: T) -> Matrix<T> {
    let mut m = Matrix::zeros(n, n);
    m[(i, j)] = v;
    m
}

/// Basis of 𝔤ₙ: `E_ij − E_ji` (i<j), then for each imaginary unit `u` the
/// matrices `u(E_ij + E_ji)` (i<j) followed by diagonal generators (`u E_jj`
/// over ℍ, `i(E_jj − E_{j+1,j+1})` over ℂ).
pub fn algebra_basis<T: Scalar>(n: usize) -> Vec<Matrix<T>> {
    let mut out = Vec::with_capacity(dim_algebra(T::ALGEBRA, n));
    for i in 0..n {
        for j in i + 1..n {
            out.push(&unit(n, i, j, T::one()) - &unit(n, j, i, T::one()));
        }
    }
    for u in T::imaginary_units() {
        for i in 0..n {
            for j in i + 1..n {
                out.push(&unit(n, i, j, u) + &unit(n, j, i, u));
            }
        }
        if T::ALGEBRA.traceless() {
            for j in 0..n.saturating_sub(1) {
                out.push(&unit(n, j, j, u) - &unit(n, j + 1, j + 1, u));
            }
        } else {
            for j in 0..n {
                out.push(unit(n, j, j, u));
            }
        }
    }
    out
}

/// Real basis of `rows × cols` matrices.
pub fn matrix_basis<T: Scalar>(rows: usize, cols: usize) -> Vec<Matrix<T>> {
    let d = T::ALGEBRA.real_dim();
    let mut out = Vec::with_capacity(rows * cols * d);
    for r in 0..rows {
        for c in 0..cols {
            for comp in 0..d {
                let mut e = [0.0; 4];
                e[comp] = 1.0;
                let mut m = Matrix::zeros(rows, cols);
                m[(r, c)] = T::from_components(&e);
                out.push(m);
            }
        }
    }
    out
}

/// `i·diag((n−k)I_k, −k I_{n−k})`: the direction of su(n) orthogonal to
/// su(k) ⊕ su(n−k) and to the off-diagonal blocks.
pub fn trace_balancer<T: Scalar>(n: usize, k: usize) -> Option<Matrix<T>> {
    if !T::ALGEBRA.traceless() || k == 0 || k >= n {
        return None;
    }
    let u = T::imaginary_units()[0];
    Some(Matrix::from_fn(n, n, |r, c| {
        if r != c {
            T::zero()
        } else if r < k {
            u.scale((n - k) as f64)
        } else {
            u.scale(-(k as f64))
        }
    }))
}

#[derive(Debug, Clone)]
struct Subspace {
    /// Orthonormal columns in coordinates.
    q: DMatrix<f64>,
}

impl Subspace {
    fn span(vecs: &[Vec<f64>], dim: usize) -> Self {
        if vecs.is_empty() {
            return Subspace { q: DMatrix::zeros(dim, 0) };
        }
        let m = DMatrix::from_fn(dim, vecs.len(), |r, c| vecs[c][r]);
        let svd = m.svd(true, false);
        let u = svd.u.expect("left singular vectors requested");
        let smax = svd.singular_values.max();
        let keep: Vec<usize> = (0..svd.singular_values.len())
            .filter(|&i| smax > 0.0 && svd.singular_values[i] > RANK_TOL * smax)
            .collect();
        Subspace { q: u.select_columns(keep.iter()) }
    }

    fn dim(&self) -> usize {
        self.q.ncols()
    }

    fn project(&self, v: &DVector<f64>) -> DVector<f64> {
        &self.q * (self.q.transpose() * v)
    }
}

/// Rank of a set of coordinate vectors (singular values above
/// `RANK_TOL · σ_max`).
pub fn rank(vecs: &[Vec<f64>]) -> usize {
    let dim = vecs.first().map_or(0, Vec::len);
    Subspace::span(vecs, dim).dim()
}

/// The splitting data of one distribution.
#[derive(Debug, Clone)]
pub struct LieStructure<T: Scalar> {
    pub dist: Distribution,
    p: Vec<ProductElement<T>>,
    k: Vec<ProductElement<T>>,
    perp: Vec<ProductElement<T>>,
    p_space: Subspace,
    perp_space: Subspace,
    k_space: Subspace,
    g_space: Subspace,
    /// Maps coordinates to coefficients over a basis of 𝔭 followed by the
    /// complement along which `decompose` splits.
    splitter: DMatrix<f64>,
    coord_dim: usize,
}

impl<T: Scalar> LieStructure<T> {
    pub fn new(dist: Distribution) -> Result<Self> {
        if dist.algebra != T::ALGEBRA {
            return Err(GeoError::InvalidArgument(format!(
                "distribution over {} used with {} scalars",
                dist.algebra,
                T::ALGEBRA
            )));
        }
        let (n, k) = (dist.n, dist.k);
        Distribution::new(dist.kind, n, k, dist.algebra)?;
        let m = n - k;
        let gk = algebra_basis::<T>(k);
        let gm = algebra_basis::<T>(m);
        let bs = matrix_basis::<T>(k, m);
        let zk = Matrix::<T>::zeros(k, k);
        let zm = Matrix::<T>::zeros(m, m);
        let top = |a: &Matrix<T>| block_diag(a, &zm);
        let bottom = |d: &Matrix<T>| block_diag(&zk, d);
        let single = ProductElement::single;
        let pair = ProductElement::new;
        let z = trace_balancer::<T>(n, k);

        let (p, kk, perp, complement) = match dist.kind {
            DistributionKind::Reduced => {
                let p: Vec<_> = gk
                    .iter()
                    .map(|a| single(top(a)))
                    .chain(bs.iter().map(|b| single(off_diag(b))))
                    .collect();
                let kk: Vec<_> = gm.iter().map(|d| single(bottom(d))).collect();
                let mut perp = kk.clone();
                perp.extend(z.map(single));
                (p, kk, perp.clone(), perp)
            }
            DistributionKind::Orthogonal => {
                let p: Vec<_> = gk
                    .iter()
                    .map(|a| pair(top(a), a.scale(-1.0)))
                    .chain(bs.iter().map(|b| pair(off_diag(b), zk.clone())))
                    .collect();
                let kk: Vec<_> = gk
                    .iter()
                    .map(|c| pair(top(c), c.clone()))
                    .chain(gm.iter().map(|d| pair(bottom(d), zk.clone())))
                    .collect();
                let mut perp = kk.clone();
                perp.extend(z.map(|z| pair(z, zk.clone())));
                (p, kk, perp.clone(), perp)
            }
            DistributionKind::QuasiGeodesic => {
                let p: Vec<_> = bs
                    .iter()
                    .map(|b| pair(off_diag(b), zk.clone()))
                    .chain(gk.iter().map(|a| pair(Matrix::zeros(n, n), a.clone())))
                    .collect();
                let kk: Vec<_> = gk
                    .iter()
                    .map(|c| pair(top(c), c.clone()))
                    .chain(gm.iter().map(|d| pair(bottom(d), zk.clone())))
                    .collect();
                let zpair = z.map(|z| pair(z, zk.clone()));
                let perp: Vec<_> = gk
                    .iter()
                    .map(|e| pair(top(e), zk.clone()))
                    .chain(gm.iter().map(|f| pair(bottom(f), zk.clone())))
                    .chain(zpair.clone())
                    .collect();
                let mut complement = kk.clone();
                complement.extend(zpair);
                (p, kk, perp, complement)
            }
            DistributionKind::Grassmann => {
                let p: Vec<_> = bs.iter().map(|b| single(off_diag(b))).collect();
                let mut kk: Vec<_> = gk
                    .iter()
                    .map(|a| single(top(a)))
                    .chain(gm.iter().map(|c| single(bottom(c))))
                    .collect();
                kk.extend(z.map(single));
                (p, kk.clone(), kk.clone(), kk)
            }
        };

        let k2 = dist.k2();
        let coord_dim = (n * n + k2 * k2) * T::ALGEBRA.real_dim();
        let vecs = |set: &[ProductElement<T>]| set.iter().map(ProductElement::to_vec).collect::<Vec<_>>();
        let mut all = vecs(&p);
        all.extend(vecs(&complement));
        let g_basis: Vec<Vec<f64>> = algebra_basis::<T>(n)
            .into_iter()
            .map(|x| ProductElement::new(x, Matrix::zeros(k2, k2)).to_vec())
            .chain(
                algebra_basis::<T>(k2)
                    .into_iter()
                    .map(|x| ProductElement::new(Matrix::zeros(n, n), x).to_vec()),
            )
            .collect();
        let basis_mat = DMatrix::from_fn(coord_dim, all.len(), |r, c| all[c][r]);
        let splitter = basis_mat
            .pseudo_inverse(1e-12)
            .map_err(|e| GeoError::InvalidArgument(e.to_string()))?;
        Ok(LieStructure {
            dist,
            p_space: Subspace::span(&vecs(&p), coord_dim),
            perp_space: Subspace::span(&vecs(&perp), coord_dim),
            k_space: Subspace::span(&vecs(&kk), coord_dim),
            g_space: Subspace::span(&g_basis, coord_dim),
            p,
            k: kk,
            perp,
            splitter,
            coord_dim,
        })
    }

    pub fn p_basis(&self) -> &[ProductElement<T>] {
        &self.p
    }

    pub fn k_basis(&self) -> &[ProductElement<T>] {
        &self.k
    }

    /// Basis of the trace-form orthogonal complement of 𝔭.
    pub fn p_perp(&self) -> &[ProductElement<T>] {
        &self.perp
    }

    pub fn dim_g(&self) -> usize {
        dim_algebra(T::ALGEBRA, self.dist.n) + dim_algebra(T::ALGEBRA, self.dist.k2())
    }

    pub fn zero(&self) -> ProductElement<T> {
        ProductElement::zeros(self.dist.n, self.dist.k2())
    }

    pub fn identity(&self) -> ProductElement<T> {
        ProductElement::identity(self.dist.n, self.dist.k2())
    }

    fn check_carrier(&self, x: &ProductElement<T>) -> Result<DVector<f64>> {
        if x.dims() != (self.dist.n, self.dist.k2()) {
            return Err(GeoError::Shape(format!(
                "element of shape {:?} for {}",
                x.dims(),
                self.dist
            )));
        }
        let v = DVector::from_vec(x.to_vec());
        let off = (&v - self.g_space.project(&v)).norm();
        if off > TAU_SKEW {
            return Err(GeoError::NotInSubspace { space: "g", residual: off });
        }
        Ok(v)
    }

    fn combine(&self, set: &[ProductElement<T>], coeffs: &[f64]) -> ProductElement<T> {
        set.iter()
            .zip(coeffs)
            .fold(self.zero(), |acc, (b, c)| &acc + &b.scale(*c))
    }

    /// Splits `x` into its 𝔭 part and the remainder. For the reduced,
    /// orthogonal and Grassmann splittings the remainder lies in 𝔭⊥; for the
    /// quasi-geodesic one it lies in 𝔨 (plus the trace balancer over ℂ).
    pub fn decompose(&self, x: &ProductElement<T>) -> Result<(ProductElement<T>, ProductElement<T>)> {
        let v = self.check_carrier(x)?;
        let c = &self.splitter * v;
        let np = self.p.len();
        let p = self.combine(&self.p, &c.as_slice()[..np]);
        let rest = x - &p;
        Ok((p, rest))
    }

    /// 𝔭 part of the split without admission checks, for finite-difference
    /// data that is only approximately in 𝔤.
    pub fn p_component(&self, x: &ProductElement<T>) -> ProductElement<T> {
        let c = &self.splitter * DVector::from_vec(x.to_vec());
        self.combine(&self.p, &c.as_slice()[..self.p.len()])
    }

    fn residual(&self, space: &Subspace, x: &ProductElement<T>) -> f64 {
        let v = DVector::from_vec(x.to_vec());
        // Euclidean norm is √2 times the trace-form norm.
        (&v - space.project(&v)).norm() / std::f64::consts::SQRT_2
    }

    pub fn p_residual(&self, x: &ProductElement<T>) -> f64 {
        self.residual(&self.p_space, x)
    }

    pub fn perp_residual(&self, x: &ProductElement<T>) -> f64 {
        self.residual(&self.perp_space, x)
    }

    pub fn k_residual(&self, x: &ProductElement<T>) -> f64 {
        self.residual(&self.k_space, x)
    }

    /// Orthogonal projection onto 𝔭.
    pub fn project_p(&self, x: &ProductElement<T>) -> ProductElement<T> {
        let v = DVector::from_vec(x.to_vec());
        let (n, k2) = x.dims();
        ProductElement::from_vec(n, k2, self.p_space.project(&v).as_slice())
    }

    /// Orthogonal projection onto 𝔭⊥.
    pub fn project_perp(&self, x: &ProductElement<T>) -> ProductElement<T> {
        let v = DVector::from_vec(x.to_vec());
        let (n, k2) = x.dims();
        ProductElement::from_vec(n, k2, self.perp_space.project(&v).as_slice())
    }

    pub fn require_p(&self, x: &ProductElement<T>) -> Result<()> {
        self.check_carrier(x)?;
        let r = self.p_residual(x);
        if r > TAU_SKEW {
            return Err(GeoError::NotInSubspace { space: "p", residual: r });
        }
        Ok(())
    }

    pub fn require_perp(&self, x: &ProductElement<T>) -> Result<()> {
        self.check_carrier(x)?;
        let r = self.perp_residual(x);
        if r > TAU_SKEW {
            return Err(GeoError::NotInSubspace { space: "p_perp", residual: r });
        }
        Ok(())
    }

    fn random_in(&self, rng: &mut CorpusRng, set: &[ProductElement<T>]) -> ProductElement<T> {
        let c: Vec<f64> = set.iter().map(|_| random::normal(rng)).collect();
        self.combine(set, &c)
    }

    pub fn random_p(&self, rng: &mut CorpusRng) -> ProductElement<T> {
        self.random_in(rng, &self.p)
    }

    pub fn random_k(&self, rng: &mut CorpusRng) -> ProductElement<T> {
        self.random_in(rng, &self.k)
    }

    pub fn random_perp(&self, rng: &mut CorpusRng) -> ProductElement<T> {
        self.random_in(rng, &self.perp)
    }

    pub fn random_g(&self, rng: &mut CorpusRng) -> ProductElement<T> {
        ProductElement::new(
            random::algebra_element(rng, self.dist.n),
            random::algebra_element(rng, self.dist.k2()),
        )
    }

    pub fn random_group(&self, rng: &mut CorpusRng) -> ProductElement<T> {
        self.random_g(rng).exp()
    }

    /// Checks (i) [𝔭,𝔨] ⊆ 𝔭, (ii) 𝔨 ⊆ [𝔭,𝔭], (iii) 𝔭 + [𝔭,𝔭] = 𝔤, plus
    /// the facts the geodesic formula relies on: 𝔭⊥ ⟂ 𝔭, 𝔭⊥ is a
    /// subalgebra and [𝔭⊥,𝔭] ⊆ 𝔭.
    pub fn verify_structure(&self) -> StructureReport {
        let mut bracket_pk = 0.0f64;
        for p in &self.p {
            for k in &self.k {
                bracket_pk = bracket_pk.max(self.p_residual(&p.bracket(k)));
            }
        }
        let pp: Vec<ProductElement<T>> = self
            .p
            .iter()
            .enumerate()
            .flat_map(|(i, a)| self.p[i + 1..].iter().map(move |b| a.bracket(b)))
            .collect();
        let pp_space = Subspace::span(
            &pp.iter().map(ProductElement::to_vec).collect::<Vec<_>>(),
            self.coord_dim,
        );
        let k_in_pp = self
            .k
            .iter()
            .map(|k| self.residual(&pp_space, k))
            .fold(0.0, f64::max);
        let mut spanning: Vec<Vec<f64>> = self.p.iter().map(ProductElement::to_vec).collect();
        spanning.extend(pp.iter().map(ProductElement::to_vec));
        let span_rank = Subspace::span(&spanning, self.coord_dim).dim();

        let mut perp_orth = 0.0f64;
        let mut perp_sub = 0.0f64;
        let mut perp_p = 0.0f64;
        for a in &self.perp {
            for p in &self.p {
                perp_orth = perp_orth.max(a.trace_form(p).abs());
                perp_p = perp_p.max(self.p_residual(&a.bracket(p)));
            }
            for b in &self.perp {
                perp_sub = perp_sub.max(self.perp_residual(&a.bracket(b)));
            }
        }
        let dims = Dims {
            p: self.p_space.dim(),
            k: self.k_space.dim(),
            perp: self.perp_space.dim(),
            g: self.dim_g(),
        };
        let max_residual = [bracket_pk, k_in_pp, perp_orth, perp_sub, perp_p]
            .into_iter()
            .fold(0.0, f64::max);
        let tol = 1e-10;
        StructureReport {
            dist: self.dist,
            dims,
            bracket_pk,
            k_in_pp,
            span_rank,
            perp_orthogonal: perp_orth,
            perp_subalgebra: perp_sub,
            perp_bracket_p: perp_p,
            max_residual,
            bracket_pk_holds: bracket_pk < tol,
            k_in_pp_holds: k_in_pp < tol,
            bracket_generating: span_rank == dims.g,
            pass: max_residual < tol && span_rank == dims.g && dims.p + dims.perp == dims.g,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Dims {
    pub p: usize,
    pub k: usize,
    pub perp: usize,
    pub g: usize,
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct StructureReport {
    pub dist: Distribution,
    pub dims: Dims,
    /// (i) max distance of [𝔭,𝔨] from 𝔭.
    pub bracket_pk: f64,
    /// (ii) max distance of 𝔨 from span [𝔭,𝔭].
    pub k_in_pp: f64,
    /// (iii) rank of 𝔭 ∪ [𝔭,𝔭].
    pub span_rank: usize,
    pub perp_orthogonal: f64,
    pub perp_subalgebra: f64,
    pub perp_bracket_p: f64,
    pub max_residual: f64,
    pub bracket_pk_holds: bool,
    pub k_in_pp_holds: bool,
    pub bracket_generating: bool,
    pub pass: bool,
}

/// Whether 𝔨 ⊆ [𝔭,𝔭] can fail for a product distribution: brackets of 𝔭
/// then have second component in [𝔤ₖ,𝔤ₖ], which is zero when 𝔤ₖ = so(2)
/// while 𝔨 = {(diag(C,D), C)} is not.
pub fn isotropy_escapes_brackets(dist: &Distribution) -> bool {
    dist.kind.is_product() && dist.algebra == Algebra::Real && dist.k == 2
}

/// `g·I_{nk}` or `r·I_{nk}·s*`.
pub fn stiefel_project<T: Scalar>(g: &ProductElement<T>, k: usize) -> Result<Matrix<T>> {
    let n = g.first.rows();
    if k == 0 || k > n || !(g.second.rows() == 0 || g.second.rows() == k) {
        return Err(GeoError::InvalidPartition { n, k });
    }
    let res = g.unitary_residual();
    if res > TAU_GRP {
        return Err(GeoError::NotUnitary(res));
    }
    Ok(stiefel_project_unchecked(g, k))
}

pub(crate) fn stiefel_project_unchecked<T: Scalar>(g: &ProductElement<T>, k: usize) -> Matrix<T> {
    let left = g.first.left_cols(k);
    if g.second.rows() == 0 {
        left
    } else {
        &left * &g.second.adjoint()
    }
}
