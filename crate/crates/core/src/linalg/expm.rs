//! Scaling and squaring with a degree-13 Padé approximant.

use std::ops::Div;

use num_complex::Complex64;

use super::Matrix;
use crate::scalars::Scalar;

/// Scalars with division, where LU factorisation makes sense.
pub trait Field: Scalar + Div<Output = Self> {}
impl Field for f64 {}
impl Field for Complex64 {}

/// Largest 1-norm for which Padé(13) is accurate to unit roundoff.
pub const THETA_13: f64 = 5.371920351148152;

const B: [f64; 14] = [
    64764752532480000.0,
    32382376266240000.0,
    7771770303897600.0,
    1187353796428800.0,
    129060195264000.0,
    10559470521600.0,
    670442572800.0,
    33522128640.0,
    1323241920.0,
    40840800.0,
    960960.0,
    16380.0,
    182.0,
    1.0,
];

pub fn expm_field<T: Field>(m: &Matrix<T>) -> Matrix<T> {
    let n = m.rows();
    if m.data().iter().all(|x| *x == T::zero()) {
        return Matrix::identity(n);
    }
    let norm = m.norm1();
    let s = if norm > THETA_13 { (norm / THETA_13).log2().ceil() as i32 } else { 0 };
    let a = m.scale(0.5f64.powi(s));

    let id = Matrix::identity(n);
    let a2 = &a * &a;
    let a4 = &a2 * &a2;
    let a6 = &a4 * &a2;
    let lin = |c: [f64; 4], m6: &Matrix<T>, m4: &Matrix<T>, m2: &Matrix<T>, m0: &Matrix<T>| {
        &(&(&m6.scale(c[0]) + &m4.scale(c[1])) + &m2.scale(c[2])) + &m0.scale(c[3])
    };

    let u_inner = &a6 * &lin([B[13], B[11], B[9], 0.0], &a6, &a4, &a2, &id);
    let u = &a * &(&u_inner + &lin([B[7], B[5], B[3], B[1]], &a6, &a4, &a2, &id));
    let v_inner = &a6 * &lin([B[12], B[10], B[8], 0.0], &a6, &a4, &a2, &id);
    let v = &v_inner + &lin([B[6], B[4], B[2], B[0]], &a6, &a4, &a2, &id);

    let mut r = lu_solve(&(&v - &u), &(&v + &u)).expect("Padé denominator is nonsingular");
    for _ in 0..s {
        r = &r * &r;
    }
    r
}

/// Solves `A X = B` by LU with partial pivoting; `None` if `A` is singular.
pub fn lu_solve<T: Field>(a: &Matrix<T>, b: &Matrix<T>) -> Option<Matrix<T>> {
    let n = a.rows();
    assert!(a.is_square() && b.rows() == n);
    let mut lu = a.clone();
    let mut x = b.clone();
    let nc = b.cols();
    for col in 0..n {
        let piv = (col..n)
            .max_by(|&i, &j| lu[(i, col)].abs().total_cmp(&lu[(j, col)].abs()))
            .unwrap();
        if lu[(piv, col)].abs() == 0.0 {
            return None;
        }
        if piv != col {
            for c in 0..n {
                let t = lu[(col, c)];
                lu[(col, c)] = lu[(piv, c)];
                lu[(piv, c)] = t;
            }
            for c in 0..nc {
                let t = x[(col, c)];
                x[(col, c)] = x[(piv, c)];
                x[(piv, c)] = t;
            }
        }
        let p = lu[(col, col)];
        for r in col + 1..n {
            let f = lu[(r, col)] / p;
            if f == T::zero() {
                continue;
            }
            for c in col..n {
                let v = f * lu[(col, c)];
                lu[(r, c)] -= v;
            }
            for c in 0..nc {
                let v = f * x[(col, c)];
                x[(r, c)] -= v;
            }
        }
    }
    for c in 0..nc {
        for r in (0..n).rev() {
            let mut acc = x[(r, c)];
            for l in r + 1..n {
                acc -= lu[(r, l)] * x[(l, c)];
            }
            x[(r, c)] = acc / lu[(r, r)];
        }
    }
    Some(x)
}

/// Determinant by LU with partial pivoting.
pub fn determinant<T: Field>(a: &Matrix<T>) -> T {
    let n = a.rows();
    assert!(a.is_square());
    let mut lu = a.clone();
    let mut det = T::one();
    for col in 0..n {
        let piv = (col..n)
            .max_by(|&i, &j| lu[(i, col)].abs().total_cmp(&lu[(j, col)].abs()))
            .unwrap();
        if lu[(piv, col)].abs() == 0.0 {
            return T::zero();
        }
        if piv != col {
            for c in 0..n {
                let t = lu[(col, c)];
                lu[(col, c)] = lu[(piv, c)];
                lu[(piv, c)] = t;
            }
            det = -det;
        }
        let p = lu[(col, col)];
        det = det * p;
        for r in col + 1..n {
            let f = lu[(r, col)] / p;
            for c in col..n {
                let v = f * lu[(col, c)];
                lu[(r, c)] -= v;
            }
        }
    }
    det
}
