//! Dense row-major matrices over ℝ, ℂ and ℍ.

mod expm;

use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use crate::error::{GeoError, Result};
use crate::scalars::{Algebra, Scalar};

pub use expm::{determinant, expm_field, lu_solve, Field, THETA_13};

/// Skewness admission tolerance.
pub const TAU_SKEW: f64 = 1e-10;
/// Group membership tolerance.
pub const TAU_GRP: f64 = 1e-10;

#[derive(Clone, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> std::fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "Matrix<{}> {}x{}", T::ALGEBRA, self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", &self.data[r * self.cols..(r + 1) * self.cols])?;
        }
        Ok(())
    }
}

impl<T: Scalar> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<T>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(GeoError::Shape(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn from_rows(rows: &[Vec<T>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(GeoError::Shape("ragged rows".into()));
        }
        Ok(Matrix { rows: rows.len(), cols, data: rows.concat() })
    }

    pub fn from_real(m: &Matrix<f64>) -> Self {
        m.map(T::from_real)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn data(&self) -> &[T] {
        &self.data
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(T) -> U) -> Matrix<U> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| f(*x)).collect() }
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)].conj())
    }

    pub fn scale(&self, s: f64) -> Self {
        self.map(|x| x.scale(s))
    }

    /// Entrywise `m_ij * alpha` (right scalar multiplication).
    pub fn scale_right(&self, alpha: T) -> Self {
        self.map(|x| x * alpha)
    }

    pub fn trace(&self) -> T {
        (0..self.rows.min(self.cols)).fold(T::zero(), |acc, i| acc + self[(i, i)])
    }

    pub fn frobenius_sqr(&self) -> f64 {
        self.data.iter().map(|x| x.norm_sqr()).sum()
    }

    pub fn frobenius(&self) -> f64 {
        self.frobenius_sqr().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0f64, |m, x| m.max(x.abs()))
    }

    /// Induced 1-norm (largest column sum of moduli).
    pub fn norm1(&self) -> f64 {
        (0..self.cols)
            .map(|c| (0..self.rows).map(|r| self[(r, c)].abs()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    pub fn commutator(&self, other: &Self) -> Self {
        &(self * other) - &(other * self)
    }

    pub fn column(&self, c: usize) -> Vec<T> {
        (0..self.rows).map(|r| self[(r, c)]).collect()
    }

    pub fn block(&self, r0: usize, c0: usize, nr: usize, nc: usize) -> Self {
        assert!(r0 + nr <= self.rows && c0 + nc <= self.cols, "block out of range");
        Self::from_fn(nr, nc, |r, c| self[(r0 + r, c0 + c)])
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, b: &Self) {
        assert!(r0 + b.rows <= self.rows && c0 + b.cols <= self.cols, "block out of range");
        for r in 0..b.rows {
            for c in 0..b.cols {
                self[(r0 + r, c0 + c)] = b[(r, c)];
            }
        }
    }

    /// First `k` columns.
    pub fn left_cols(&self, k: usize) -> Self {
        self.block(0, 0, self.rows, k)
    }

    pub fn split(&self, k: usize) -> Result<BlockSplit<T>> {
        if !self.is_square() || k > self.rows {
            return Err(GeoError::Shape(format!(
                "cannot split {}x{} at k = {k}",
                self.rows, self.cols
            )));
        }
        let m = self.rows - k;
        Ok(BlockSplit {
            k,
            a: self.block(0, 0, k, k),
            b: self.block(0, k, k, m),
            c: self.block(k, 0, m, k),
            d: self.block(k, k, m, m),
        })
    }

    /// Residual ‖M + M*‖ (max entry).
    pub fn skew_residual(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        (&self.adjoint() + self).max_abs()
    }

    /// Residual ‖M*M − I‖_F.
    pub fn unitary_residual(&self) -> f64 {
        (&(&self.adjoint() * self) - &Self::identity(self.cols)).frobenius()
    }

    pub fn is_skew(&self) -> bool {
        self.skew_residual() <= TAU_SKEW
    }

    pub fn expm(&self) -> Self {
        assert!(self.is_square(), "expm of a non-square matrix");
        T::expm(self)
    }

    /// Real coordinates in row-major order, components expanded.
    pub fn to_real_vec(&self) -> Vec<f64> {
        let d = T::ALGEBRA.real_dim();
        self.data.iter().flat_map(|x| x.components().into_iter().take(d)).collect()
    }

    pub fn from_real_vec(rows: usize, cols: usize, v: &[f64]) -> Self {
        let d = T::ALGEBRA.real_dim();
        assert_eq!(v.len(), rows * cols * d);
        Matrix { rows, cols, data: v.chunks(d).map(T::from_components).collect() }
    }

    pub fn algebra(&self) -> Algebra {
        T::ALGEBRA
    }
}

/// `exp(tM)`.
pub fn expm<T: Scalar>(m: &Matrix<T>, t: f64) -> Matrix<T> {
    m.scale(t).expm()
}

/// The four blocks `[[A, B], [C, D]]` of a square matrix split at `k`.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockSplit<T: Scalar> {
    pub k: usize,
    pub a: Matrix<T>,
    pub b: Matrix<T>,
    pub c: Matrix<T>,
    pub d: Matrix<T>,
}

impl<T: Scalar> BlockSplit<T> {
    pub fn assemble(&self) -> Result<Matrix<T>> {
        assemble(&self.a, &self.b, &self.c, &self.d)
    }
}

/// `[[A, B], [C, D]]`.
pub fn assemble<T: Scalar>(
    a: &Matrix<T>,
    b: &Matrix<T>,
    c: &Matrix<T>,
    d: &Matrix<T>,
) -> Result<Matrix<T>> {
    let k = a.rows;
    let m = d.rows;
    if !a.is_square()
        || !d.is_square()
        || b.shape() != (k, m)
        || c.shape() != (m, k)
    {
        return Err(GeoError::Shape(format!(
            "blocks {:?} {:?} {:?} {:?} do not tile",
            a.shape(),
            b.shape(),
            c.shape(),
            d.shape()
        )));
    }
    let mut out = Matrix::zeros(k + m, k + m);
    out.set_block(0, 0, a);
    out.set_block(0, k, b);
    out.set_block(k, 0, c);
    out.set_block(k, k, d);
    Ok(out)
}

/// `[[A, B], [−B*, D]]` with skew-adjoint `A`, `D`.
pub fn assemble_gn<T: Scalar>(a: &Matrix<T>, b: &Matrix<T>, d: &Matrix<T>) -> Result<Matrix<T>> {
    for blk in [a, d] {
        let res = blk.skew_residual();
        if res > TAU_SKEW {
            return Err(GeoError::NotSkewAdjoint(res));
        }
    }
    assemble(a, b, &(-&b.adjoint()), d)
}

/// `[[0, B], [−B*, 0]]`.
pub fn off_diag<T: Scalar>(b: &Matrix<T>) -> Matrix<T> {
    let (k, m) = b.shape();
    assemble(&Matrix::zeros(k, k), b, &(-&b.adjoint()), &Matrix::zeros(m, m))
        .expect("off-diagonal blocks always tile")
}

pub fn block_diag<T: Scalar>(a: &Matrix<T>, d: &Matrix<T>) -> Matrix<T> {
    let (k, m) = (a.rows, d.rows);
    assemble(a, &Matrix::zeros(k, m), &Matrix::zeros(m, k), d).expect("square diagonal blocks")
}

/// First `k` columns of the `n×n` identity.
pub fn i_nk<T: Scalar>(n: usize, k: usize) -> Matrix<T> {
    Matrix::from_fn(n, k, |r, c| if r == c { T::one() } else { T::zero() })
}

/// `diag(I_k, −I_{n−k})`.
pub fn reflection_d<T: Scalar>(n: usize, k: usize) -> Matrix<T> {
    Matrix::from_fn(n, n, |r, c| match (r == c, r < k) {
        (false, _) => T::zero(),
        (true, true) => T::one(),
        (true, false) => -T::one(),
    })
}

/// Identifies `s ∈ G_k` with `diag(s, I_{n−k}) ∈ G_n`.
pub fn embed_k<T: Scalar>(s: &Matrix<T>, n: usize) -> Matrix<T> {
    block_diag(s, &Matrix::identity(n - s.rows))
}

/// Trace form `−½ Re Tr(AB)`; over ℍ this equals `−¼ Re Tr(AB + (AB)*)`.
pub fn trace_form<T: Scalar>(a: &Matrix<T>, b: &Matrix<T>) -> Result<f64> {
    if !a.is_square() || a.shape() != b.shape() {
        return Err(GeoError::Shape(format!("{:?} vs {:?}", a.shape(), b.shape())));
    }
    for m in [a, b] {
        let res = m.skew_residual();
        if res > TAU_SKEW {
            return Err(GeoError::NotSkewAdjoint(res));
        }
    }
    Ok(trace_form_unchecked(a, b))
}

/// [`trace_form`] without admission checks, for inner loops.
pub fn trace_form_unchecked<T: Scalar>(a: &Matrix<T>, b: &Matrix<T>) -> f64 {
    let n = a.rows;
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            s += (a[(i, j)] * b[(j, i)]).re();
        }
    }
    -0.5 * s
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (r, c): (usize, usize)) -> &T {
        debug_assert!(r < self.rows && c < self.cols);
        &self.data[r * self.cols + c]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut T {
        debug_assert!(r < self.rows && c < self.cols);
        &mut self.data[r * self.cols + c]
    }
}

impl<T: Scalar> Add for &Matrix<T> {
    type Output = Matrix<T>;
    fn add(self, o: &Matrix<T>) -> Matrix<T> {
        assert_eq!(self.shape(), o.shape(), "add shape mismatch");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| *a + *b).collect(),
        }
    }
}

impl<T: Scalar> Sub for &Matrix<T> {
    type Output = Matrix<T>;
    fn sub(self, o: &Matrix<T>) -> Matrix<T> {
        assert_eq!(self.shape(), o.shape(), "sub shape mismatch");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| *a - *b).collect(),
        }
    }
}

impl<T: Scalar> Neg for &Matrix<T> {
    type Output = Matrix<T>;
    fn neg(self) -> Matrix<T> {
        self.map(|x| -x)
    }
}

impl<T: Scalar> Mul for &Matrix<T> {
    type Output = Matrix<T>;
    fn mul(self, o: &Matrix<T>) -> Matrix<T> {
        assert_eq!(self.cols, o.rows, "matmul shape mismatch");
        let mut out = Matrix::zeros(self.rows, o.cols);
        for r in 0..self.rows {
            for l in 0..self.cols {
                let a = self.data[r * self.cols + l];
                if a == T::zero() {
                    continue;
                }
                for c in 0..o.cols {
                    let v = a * o.data[l * o.cols + c];
                    out.data[r * o.cols + c] += v;
                }
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl<T: Scalar> $tr for Matrix<T> {
            type Output = Matrix<T>;
            fn $m(self, o: Matrix<T>) -> Matrix<T> {
                (&self).$m(&o)
            }
        }
        impl<T: Scalar> $tr<&Matrix<T>> for Matrix<T> {
            type Output = Matrix<T>;
            fn $m(self, o: &Matrix<T>) -> Matrix<T> {
                (&self).$m(o)
            }
        }
        impl<T: Scalar> $tr<Matrix<T>> for &Matrix<T> {
            type Output = Matrix<T>;
            fn $m(self, o: Matrix<T>) -> Matrix<T> {
                self.$m(&o)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl<T: Scalar> Neg for Matrix<T> {
    type Output = Matrix<T>;
    fn neg(self) -> Matrix<T> {
        -&self
    }
}
