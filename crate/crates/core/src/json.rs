//! Matrix JSON: `{"algebra":"complex","rows":2,"cols":1,"data":[[[1,0]],[[0,0]]]}`.
//! Scalars are a bare number (real), `[re, im]` or `[q0, q1, q2, q3]`; a bare
//! number is accepted for any algebra.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{GeoError, Result};
use crate::linalg::Matrix;
use crate::scalars::{Algebra, Scalar};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub algebra: Algebra,
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Vec<Value>>,
}

pub fn scalar_to_json<T: Scalar>(x: T) -> Value {
    let c = x.components();
    match T::ALGEBRA {
        Algebra::Real => Value::from(c[0]),
        Algebra::Complex => Value::from(vec![c[0], c[1]]),
        Algebra::Quaternion => Value::from(c.to_vec()),
    }
}

pub fn scalar_from_json<T: Scalar>(v: &Value) -> Result<T> {
    let d = T::ALGEBRA.real_dim();
    let comps: Vec<f64> = match v {
        Value::Number(n) => vec![n.as_f64().ok_or_else(|| GeoError::Parse(format!("bad number {n}")))?],
        Value::Array(items) if items.len() == d => items
            .iter()
            .map(|x| x.as_f64().ok_or_else(|| GeoError::Parse(format!("bad scalar component {x}"))))
            .collect::<Result<_>>()?,
        _ => {
            return Err(GeoError::Parse(format!(
                "expected a {} scalar, got {v}",
                T::ALGEBRA.name()
            )))
        }
    };
    let mut full = [0.0; 4];
    full[..comps.len()].copy_from_slice(&comps);
    Ok(T::from_components(&full[..d]))
}

pub fn matrix_to_json<T: Scalar>(m: &Matrix<T>) -> MatrixJson {
    MatrixJson {
        algebra: T::ALGEBRA,
        rows: m.rows(),
        cols: m.cols(),
        data: (0..m.rows())
            .map(|r| (0..m.cols()).map(|c| scalar_to_json(m[(r, c)])).collect())
            .collect(),
    }
}

pub fn matrix_from_json<T: Scalar>(j: &MatrixJson) -> Result<Matrix<T>> {
    if j.algebra != T::ALGEBRA {
        return Err(GeoError::Parse(format!(
            "matrix is {}, expected {}",
            j.algebra.name(),
            T::ALGEBRA.name()
        )));
    }
    if j.data.len() != j.rows || j.data.iter().any(|row| row.len() != j.cols) {
        return Err(GeoError::Shape(format!("data does not match {}x{}", j.rows, j.cols)));
    }
    let mut out = Vec::with_capacity(j.rows * j.cols);
    for row in &j.data {
        for v in row {
            out.push(scalar_from_json(v)?);
        }
    }
    Matrix::from_vec(j.rows, j.cols, out)
}

/// Parses a matrix from a JSON value.
pub fn parse_matrix<T: Scalar>(v: &Value) -> Result<Matrix<T>> {
    matrix_from_json(&serde_json::from_value(v.clone())?)
}
