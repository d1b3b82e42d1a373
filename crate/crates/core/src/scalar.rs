use nalgebra::{DMatrix, DVector};
pub use num_complex::Complex64 as C64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);
pub const I: C64 = C64::new(0.0, 1.0);

/// Tolerance and seed shared by every operation that compares or randomizes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScalarContext {
    pub tolerance: f64,
    pub seed: u64,
}

impl Default for ScalarContext {
    fn default() -> Self {
        ScalarContext { tolerance: 1e-9, seed: 0 }
    }
}

impl ScalarContext {
    pub fn new(tolerance: f64, seed: u64) -> Self {
        assert!(tolerance > 0.0, "tolerance must be positive");
        ScalarContext { tolerance, seed }
    }

    pub fn with_seed(self, seed: u64) -> Self {
        ScalarContext { seed, ..self }
    }

    /// Deterministic generator for a named randomized subroutine.
    pub fn rng(&self, stream: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(stream);
        rng
    }
}

pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

pub fn max_abs_vec(v: &DVector<C64>) -> f64 {
    v.iter().fold(0.0, |m, z| m.max(z.norm()))
}

pub fn max_abs(m: &DMatrix<C64>) -> f64 {
    m.iter().fold(0.0, |acc, z| acc.max(z.norm()))
}

pub fn max_diff(a: &DMatrix<C64>, b: &DMatrix<C64>) -> f64 {
    assert_eq!(a.shape(), b.shape());
    a.iter().zip(b.iter()).fold(0.0, |m, (x, y)| m.max((x - y).norm()))
}

pub fn max_diff_vec(a: &DVector<C64>, b: &DVector<C64>) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b.iter()).fold(0.0, |m, (x, y)| m.max((x - y).norm()))
}

pub fn basis_vec(n: usize, i: usize) -> DVector<C64> {
    let mut v = DVector::zeros(n);
    v[i] = ONE;
    v
}

/// Entrywise complex conjugate (no transpose).
pub fn conj_vec(v: &DVector<C64>) -> DVector<C64> {
    v.map(|z| z.conj())
}

pub fn conj_mat(m: &DMatrix<C64>) -> DMatrix<C64> {
    m.map(|z| z.conj())
}
