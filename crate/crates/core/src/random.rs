//! Seeded corpora. Each named corpus gets its own ChaCha stream derived from
//! the run seed, so suites are reproducible independently of call order.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::linalg::Matrix;
use crate::scalars::{Algebra, Scalar};

pub type CorpusRng = ChaCha8Rng;

fn fnv1a(label: &str) -> u64 {
    label.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| {
        (h ^ u64::from(b)).wrapping_mul(0x0000_0100_0000_01b3)
    })
}

pub fn rng(seed: u64, label: &str) -> CorpusRng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(fnv1a(label));
    r
}

pub fn normal(rng: &mut CorpusRng) -> f64 {
    rng.sample(StandardNormal)
}

pub fn scalar<T: Scalar>(rng: &mut CorpusRng) -> T {
    let d = T::ALGEBRA.real_dim();
    let c: Vec<f64> = (0..d).map(|_| normal(rng)).collect();
    T::from_components(&c)
}

/// Gaussian entries in every real component.
pub fn matrix<T: Scalar>(rng: &mut CorpusRng, rows: usize, cols: usize) -> Matrix<T> {
    Matrix::from_fn(rows, cols, |_, _| scalar(rng))
}

/// Gaussian skew-adjoint matrix (trace unconstrained).
pub fn skew<T: Scalar>(rng: &mut CorpusRng, n: usize) -> Matrix<T> {
    let m: Matrix<T> = matrix(rng, n, n);
    (&m - &m.adjoint()).scale(0.5)
}

/// Gaussian element of so(n), su(n) or sp(n).
pub fn algebra_element<T: Scalar>(rng: &mut CorpusRng, n: usize) -> Matrix<T> {
    let mut m = skew::<T>(rng, n);
    if T::ALGEBRA == Algebra::Complex && n > 0 {
        let shift = m.trace().scale(1.0 / n as f64);
        for i in 0..n {
            m[(i, i)] -= shift;
        }
    }
    m
}

/// Element of the connected group SO(n), SU(n) or Sp(n).
pub fn group_element<T: Scalar>(rng: &mut CorpusRng, n: usize) -> Matrix<T> {
    algebra_element::<T>(rng, n).scale(2.0).expm()
}

pub fn uniform(rng: &mut CorpusRng, lo: f64, hi: f64) -> f64 {
    rng.random_range(lo..hi)
}
