//! Seeded random objects for randomized subroutines and tests.

use crate::hopf::DualFunctional;
use crate::scalar::C64;
use nalgebra::{DMatrix, DVector};
use rand::Rng;

pub fn complex<R: Rng>(rng: &mut R) -> C64 {
    C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
}

pub fn vector<R: Rng>(rng: &mut R, n: usize) -> DVector<C64> {
    DVector::from_fn(n, |_, _| complex(rng))
}

pub fn functional<R: Rng>(rng: &mut R, n: usize) -> DualFunctional {
    DualFunctional::new(vector(rng, n))
}

pub fn matrix<R: Rng>(rng: &mut R, rows: usize, cols: usize) -> DMatrix<C64> {
    DMatrix::from_fn(rows, cols, |_, _| complex(rng))
}

pub fn hermitian<R: Rng>(rng: &mut R, n: usize) -> DMatrix<C64> {
    let a = matrix(rng, n, n);
    (&a + a.adjoint()) * C64::new(0.5, 0.0)
}

/// Positive definite matrix with smallest eigenvalue at least `floor`.
pub fn positive_definite<R: Rng>(rng: &mut R, n: usize, floor: f64) -> DMatrix<C64> {
    let a = matrix(rng, n, n);
    &a * a.adjoint() + DMatrix::identity(n, n) * C64::new(floor, 0.0)
}
