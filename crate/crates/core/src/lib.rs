//! Closed-form extremal curves on Stiefel and Grassmann manifolds over ℝ, ℂ
//! and ℍ, with the structure, metric and curvature checks that certify them.

pub mod curve;
pub mod error;
pub mod geodesics;
pub mod grassmann;
pub mod json;
pub mod lie;
pub mod linalg;
pub mod metrics;
pub mod random;
pub mod scalars;
pub mod verify;

pub use error::{GeoError, Result};
pub use linalg::Matrix;
pub use scalars::{Algebra, Quaternion, Scalar};
