//! Base scalar algebras: real numbers, complex numbers and quaternions.
//!
//! Every matrix in the crate is generic over [`Scalar`]. Quaternionic vector
//! spaces carry scalars on the right, so code that scales vectors over ℍ
//! multiplies entries as `v * alpha`, never `alpha * v`.

use std::fmt::{self, Debug};
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{GeoError, Result};
use crate::linalg::{expm_field, Matrix};

/// Tag for the three base algebras.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Algebra {
    Real,
    Complex,
    Quaternion,
}

impl Algebra {
    pub const ALL: [Algebra; 3] = [Algebra::Real, Algebra::Complex, Algebra::Quaternion];

    pub fn real_dim(self) -> usize {
        match self {
            Algebra::Real => 1,
            Algebra::Complex => 2,
            Algebra::Quaternion => 4,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Algebra::Real => "real",
            Algebra::Complex => "complex",
            Algebra::Quaternion => "quaternion",
        }
    }

    /// Complex matrices live in su(n), so traces must vanish.
    pub fn traceless(self) -> bool {
        matches!(self, Algebra::Complex)
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "real" => Ok(Algebra::Real),
            "complex" => Ok(Algebra::Complex),
            "quaternion" => Ok(Algebra::Quaternion),
            other => Err(GeoError::Parse(format!("unknown algebra `{other}`"))),
        }
    }
}

impl fmt::Display for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A quaternion `q0 + q1 i + q2 j + q3 k` with `i² = j² = k² = ijk = −1`.
#[derive(Clone, Copy, PartialEq, Default)]
pub struct Quaternion {
    pub q0: f64,
    pub q1: f64,
    pub q2: f64,
    pub q3: f64,
}

impl Quaternion {
    pub const ONE: Quaternion = Quaternion::new(1.0, 0.0, 0.0, 0.0);
    pub const I: Quaternion = Quaternion::new(0.0, 1.0, 0.0, 0.0);
    pub const J: Quaternion = Quaternion::new(0.0, 0.0, 1.0, 0.0);
    pub const K: Quaternion = Quaternion::new(0.0, 0.0, 0.0, 1.0);

    pub const fn new(q0: f64, q1: f64, q2: f64, q3: f64) -> Self {
        Quaternion { q0, q1, q2, q3 }
    }

    pub fn conj(self) -> Self {
        Quaternion::new(self.q0, -self.q1, -self.q2, -self.q3)
    }

    pub fn norm_sqr(self) -> f64 {
        self.q0 * self.q0 + self.q1 * self.q1 + self.q2 * self.q2 + self.q3 * self.q3
    }

    pub fn abs(self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn scale(self, s: f64) -> Self {
        Quaternion::new(self.q0 * s, self.q1 * s, self.q2 * s, self.q3 * s)
    }

    /// Symplectic embedding `q ↦ [[q0+q1 i, q2+q3 i], [−q2+q3 i, q0−q1 i]]`.
    ///
    /// This is a unital algebra homomorphism ℍ → M₂(ℂ) taking `conj(q)` to
    /// the adjoint and `|q|²` to the determinant.
    pub fn to_complex_2x2(self) -> [[Complex64; 2]; 2] {
        [
            [Complex64::new(self.q0, self.q1), Complex64::new(self.q2, self.q3)],
            [Complex64::new(-self.q2, self.q3), Complex64::new(self.q0, -self.q1)],
        ]
    }

    /// Inverse of [`to_complex_2x2`](Self::to_complex_2x2) on its image.
    ///
    /// The redundant entries are averaged; the returned defect measures how far
    /// the block is from quaternionic structure.
    pub fn from_complex_2x2(m: [[Complex64; 2]; 2]) -> (Self, f64) {
        let q0 = 0.5 * (m[0][0].re + m[1][1].re);
        let q1 = 0.5 * (m[0][0].im - m[1][1].im);
        let q2 = 0.5 * (m[0][1].re - m[1][0].re);
        let q3 = 0.5 * (m[0][1].im + m[1][0].im);
        let q = Quaternion::new(q0, q1, q2, q3);
        let back = q.to_complex_2x2();
        let mut defect = 0.0f64;
        for r in 0..2 {
            for c in 0..2 {
                defect = defect.max((back[r][c] - m[r][c]).norm());
            }
        }
        (q, defect)
    }
}

impl Debug for Quaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} + {}i + {}j + {}k)", self.q0, self.q1, self.q2, self.q3)
    }
}

impl Add for Quaternion {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Quaternion::new(self.q0 + o.q0, self.q1 + o.q1, self.q2 + o.q2, self.q3 + o.q3)
    }
}

impl Sub for Quaternion {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Quaternion::new(self.q0 - o.q0, self.q1 - o.q1, self.q2 - o.q2, self.q3 - o.q3)
    }
}

impl Neg for Quaternion {
    type Output = Self;
    fn neg(self) -> Self {
        Quaternion::new(-self.q0, -self.q1, -self.q2, -self.q3)
    }
}

impl Mul for Quaternion {
    type Output = Self;
    fn mul(self, b: Self) -> Self {
        let a = self;
        Quaternion::new(
            a.q0 * b.q0 - a.q1 * b.q1 - a.q2 * b.q2 - a.q3 * b.q3,
            a.q0 * b.q1 + a.q1 * b.q0 + a.q2 * b.q3 - a.q3 * b.q2,
            a.q0 * b.q2 - a.q1 * b.q3 + a.q2 * b.q0 + a.q3 * b.q1,
            a.q0 * b.q3 + a.q1 * b.q2 - a.q2 * b.q1 + a.q3 * b.q0,
        )
    }
}

impl AddAssign for Quaternion {
    fn add_assign(&mut self, o: Self) {
        *self = *self + o;
    }
}

impl SubAssign for Quaternion {
    fn sub_assign(&mut self, o: Self) {
        *self = *self - o;
    }
}

/// Operations shared by ℝ, ℂ and ℍ.
pub trait Scalar:
    Copy
    + Debug
    + PartialEq
    + Default
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + AddAssign
    + SubAssign
{
    const ALGEBRA: Algebra;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_real(x: f64) -> Self;
    fn conj(self) -> Self;
    fn re(self) -> f64;
    fn norm_sqr(self) -> f64;
    fn scale(self, s: f64) -> Self;

    fn abs(self) -> f64 {
        self.norm_sqr().sqrt()
    }

    /// Real coordinates, `ALGEBRA.real_dim()` of them.
    fn components(self) -> [f64; 4];
    fn from_components(c: &[f64]) -> Self;

    /// Unit imaginaries: none for ℝ, `i` for ℂ, `i, j, k` for ℍ.
    fn imaginary_units() -> Vec<Self>;

    /// `exp(m)` for a square matrix.
    fn expm(m: &Matrix<Self>) -> Matrix<Self>;

    /// Image under the complex representation (identity size for ℝ and ℂ,
    /// doubled size for ℍ).
    fn to_complex_matrix(m: &Matrix<Self>) -> Matrix<Complex64>;

    /// Pull a complex representation back; the second value is the structure
    /// defect (imaginary leakage for ℝ, quaternionic block defect for ℍ).
    fn from_complex_matrix(m: &Matrix<Complex64>) -> (Matrix<Self>, f64);
}

impl Scalar for f64 {
    const ALGEBRA: Algebra = Algebra::Real;

    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_real(x: f64) -> Self {
        x
    }
    fn conj(self) -> Self {
        self
    }
    fn re(self) -> f64 {
        self
    }
    fn norm_sqr(self) -> f64 {
        self * self
    }
    fn scale(self, s: f64) -> Self {
        self * s
    }
    fn components(self) -> [f64; 4] {
        [self, 0.0, 0.0, 0.0]
    }
    fn from_components(c: &[f64]) -> Self {
        c[0]
    }
    fn imaginary_units() -> Vec<Self> {
        Vec::new()
    }
    fn expm(m: &Matrix<Self>) -> Matrix<Self> {
        expm_field(m)
    }
    fn to_complex_matrix(m: &Matrix<Self>) -> Matrix<Complex64> {
        m.map(|x| Complex64::new(x, 0.0))
    }
    fn from_complex_matrix(m: &Matrix<Complex64>) -> (Matrix<Self>, f64) {
        let defect = m.data().iter().fold(0.0f64, |acc, z| acc.max(z.im.abs()));
        (m.map(|z| z.re), defect)
    }
}

impl Scalar for Complex64 {
    const ALGEBRA: Algebra = Algebra::Complex;

    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn from_real(x: f64) -> Self {
        Complex64::new(x, 0.0)
    }
    fn conj(self) -> Self {
        Complex64::conj(&self)
    }
    fn re(self) -> f64 {
        self.re
    }
    fn norm_sqr(self) -> f64 {
        Complex64::norm_sqr(&self)
    }
    fn scale(self, s: f64) -> Self {
        self * s
    }
    fn components(self) -> [f64; 4] {
        [self.re, self.im, 0.0, 0.0]
    }
    fn from_components(c: &[f64]) -> Self {
        Complex64::new(c[0], c[1])
    }
    fn imaginary_units() -> Vec<Self> {
        vec![Complex64::new(0.0, 1.0)]
    }
    fn expm(m: &Matrix<Self>) -> Matrix<Self> {
        expm_field(m)
    }
    fn to_complex_matrix(m: &Matrix<Self>) -> Matrix<Complex64> {
        m.clone()
    }
    fn from_complex_matrix(m: &Matrix<Complex64>) -> (Matrix<Self>, f64) {
        (m.clone(), 0.0)
    }
}

impl Scalar for Quaternion {
    const ALGEBRA: Algebra = Algebra::Quaternion;

    fn zero() -> Self {
        Quaternion::default()
    }
    fn one() -> Self {
        Quaternion::ONE
    }
    fn from_real(x: f64) -> Self {
        Quaternion::new(x, 0.0, 0.0, 0.0)
    }
    fn conj(self) -> Self {
        Quaternion::conj(self)
    }
    fn re(self) -> f64 {
        self.q0
    }
    fn norm_sqr(self) -> f64 {
        Quaternion::norm_sqr(self)
    }
    fn scale(self, s: f64) -> Self {
        Quaternion::scale(self, s)
    }
    fn components(self) -> [f64; 4] {
        [self.q0, self.q1, self.q2, self.q3]
    }
    fn from_components(c: &[f64]) -> Self {
        Quaternion::new(c[0], c[1], c[2], c[3])
    }
    fn imaginary_units() -> Vec<Self> {
        vec![Quaternion::I, Quaternion::J, Quaternion::K]
    }
    fn expm(m: &Matrix<Self>) -> Matrix<Self> {
        let c = expm_field(&Self::to_complex_matrix(m));
        Self::from_complex_matrix(&c).0
    }
    fn to_complex_matrix(m: &Matrix<Self>) -> Matrix<Complex64> {
        let mut out = Matrix::zeros(2 * m.rows(), 2 * m.cols());
        for r in 0..m.rows() {
            for c in 0..m.cols() {
                let b = m[(r, c)].to_complex_2x2();
                for (i, row) in b.iter().enumerate() {
                    for (j, z) in row.iter().enumerate() {
                        out[(2 * r + i, 2 * c + j)] = *z;
                    }
                }
            }
        }
        out
    }
    fn from_complex_matrix(m: &Matrix<Complex64>) -> (Matrix<Self>, f64) {
        let (rows, cols) = (m.rows() / 2, m.cols() / 2);
        let mut defect = 0.0f64;
        let mut out = Matrix::zeros(rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                let block = [
                    [m[(2 * r, 2 * c)], m[(2 * r, 2 * c + 1)]],
                    [m[(2 * r + 1, 2 * c)], m[(2 * r + 1, 2 * c + 1)]],
                ];
                let (q, d) = Quaternion::from_complex_2x2(block);
                defect = defect.max(d);
                out[(r, c)] = q;
            }
        }
        (out, defect)
    }
}

/// Quaternionic Hermitian product `(v, w) = Σ conj(v_l) w_l`.
pub fn inner_product<T: Scalar>(v: &[T], w: &[T]) -> T {
    v.iter()
        .zip(w)
        .fold(T::zero(), |acc, (a, b)| acc + a.conj() * *b)
}
