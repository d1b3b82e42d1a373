//! Small dense linear-algebra helpers over `C64` built on nalgebra.

use crate::scalar::{C64, ONE, ZERO};
use nalgebra::{DMatrix, DVector, Schur, SymmetricEigen, SVD};

/// Orthonormal basis (as columns) of the null space of `a`.
///
/// Singular values below `rel_tol * max(1, σ_max)` count as zero.
pub fn null_space(a: &DMatrix<C64>, rel_tol: f64) -> DMatrix<C64> {
    let (rows, cols) = a.shape();
    if cols == 0 {
        return DMatrix::zeros(0, 0);
    }
    // Pad so the SVD returns a full right-singular basis.
    let padded = if rows < cols {
        let mut p = DMatrix::zeros(cols, cols);
        p.view_mut((0, 0), (rows, cols)).copy_from(a);
        p
    } else {
        a.clone()
    };
    let svd = SVD::new(padded, false, true);
    let v_t = svd.v_t.expect("v_t requested");
    let smax = svd.singular_values.iter().cloned().fold(0.0, f64::max);
    let cut = rel_tol * smax.max(1.0);
    let keep: Vec<usize> = (0..svd.singular_values.len())
        .filter(|&k| svd.singular_values[k] <= cut)
        .collect();
    let mut out = DMatrix::zeros(cols, keep.len());
    for (c, &k) in keep.iter().enumerate() {
        for j in 0..cols {
            out[(j, c)] = v_t[(k, j)].conj();
        }
    }
    out
}

/// Orthonormal basis of the column space of `a`.
pub fn range_basis(a: &DMatrix<C64>, rel_tol: f64) -> DMatrix<C64> {
    let (rows, _) = a.shape();
    let svd = SVD::new(a.clone(), true, false);
    let u = svd.u.expect("u requested");
    let smax = svd.singular_values.iter().cloned().fold(0.0, f64::max);
    let cut = rel_tol * smax.max(1.0);
    let keep: Vec<usize> = (0..svd.singular_values.len())
        .filter(|&k| svd.singular_values[k] > cut)
        .collect();
    let mut out = DMatrix::zeros(rows, keep.len());
    for (c, &k) in keep.iter().enumerate() {
        out.set_column(c, &u.column(k));
    }
    out
}

pub fn rank(a: &DMatrix<C64>, rel_tol: f64) -> usize {
    if a.nrows() == 0 || a.ncols() == 0 {
        return 0;
    }
    let sv = a.clone().singular_values();
    let smax = sv.iter().cloned().fold(0.0, f64::max);
    sv.iter().filter(|&&s| s > rel_tol * smax.max(1.0)).count()
}

/// Ratio of extreme singular values; infinite for singular input.
pub fn condition_number(a: &DMatrix<C64>) -> f64 {
    let sv = a.clone().singular_values();
    let smax = sv.iter().cloned().fold(0.0, f64::max);
    let smin = sv.iter().cloned().fold(f64::INFINITY, f64::min);
    if smin == 0.0 {
        f64::INFINITY
    } else {
        smax / smin
    }
}

pub fn solve(a: &DMatrix<C64>, b: &DVector<C64>) -> Option<DVector<C64>> {
    a.clone().lu().solve(b)
}

pub fn inverse(a: &DMatrix<C64>) -> Option<DMatrix<C64>> {
    a.clone().try_inverse()
}

/// Eigenvalues (ascending) and eigenvectors of a Hermitian matrix.
pub fn hermitian_eigen(a: &DMatrix<C64>) -> (Vec<f64>, DMatrix<C64>) {
    let h = (a + a.adjoint()) * C64::new(0.5, 0.0);
    let eig = SymmetricEigen::new(h);
    let n = eig.eigenvalues.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| eig.eigenvalues[x].total_cmp(&eig.eigenvalues[y]));
    let vals = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let mut vecs = DMatrix::zeros(n, n);
    for (c, &k) in order.iter().enumerate() {
        vecs.set_column(c, &eig.eigenvectors.column(k));
    }
    (vals, vecs)
}

/// f(A) for Hermitian A via its spectral decomposition.
pub fn hermitian_function(a: &DMatrix<C64>, f: impl Fn(f64) -> C64) -> DMatrix<C64> {
    let (vals, vecs) = hermitian_eigen(a);
    let d = DMatrix::from_diagonal(&DVector::from_iterator(vals.len(), vals.iter().map(|&x| f(x))));
    &vecs * d * vecs.adjoint()
}

/// Eigenvalues of a general complex square matrix (diagonal of its Schur form).
pub fn eigenvalues(a: &DMatrix<C64>) -> Vec<C64> {
    let (_, t) = Schur::new(a.clone()).unpack();
    (0..t.nrows()).map(|k| t[(k, k)]).collect()
}

/// Groups sorted reals into clusters whose consecutive gaps are ≤ `gap`.
/// Returns (mean, count) per cluster.
pub fn cluster_sorted(values: &[f64], gap: f64) -> Vec<(f64, usize)> {
    let mut out: Vec<(f64, usize)> = Vec::new();
    let mut last = f64::NEG_INFINITY;
    for &v in values {
        match out.last_mut() {
            Some((sum, count)) if v - last <= gap => {
                *sum += v;
                *count += 1;
            }
            _ => out.push((v, 1)),
        }
        last = v;
    }
    out.into_iter().map(|(s, k)| (s / k as f64, k)).collect()
}

/// Classical Gram–Schmidt with reorthogonalization; returns the accepted unit vectors.
pub fn gram_schmidt_accept(basis: &mut Vec<DVector<C64>>, v: &DVector<C64>, min_norm: f64) -> bool {
    let mut w = v.clone();
    for _ in 0..2 {
        for b in basis.iter() {
            let p = b.dotc(&w);
            w -= b * p;
        }
    }
    let nrm = w.norm();
    if nrm > min_norm {
        basis.push(w / C64::new(nrm, 0.0));
        true
    } else {
        false
    }
}

pub fn identity(n: usize) -> DMatrix<C64> {
    DMatrix::identity(n, n)
}

pub fn commutator(a: &DMatrix<C64>, b: &DMatrix<C64>) -> DMatrix<C64> {
    a * b - b * a
}

/// Frobenius inner product ⟨a, b⟩ = Tr(a† b).
pub fn frobenius(a: &DMatrix<C64>, b: &DMatrix<C64>) -> C64 {
    a.iter().zip(b.iter()).fold(ZERO, |s, (x, y)| s + x.conj() * y)
}

/// Matrix unit |i⟩⟨j| of size n.
pub fn matrix_unit(n: usize, i: usize, j: usize) -> DMatrix<C64> {
    let mut m = DMatrix::zeros(n, n);
    m[(i, j)] = ONE;
    m
}

/// Operator 2-norm distance of a matrix's columns from a subspace with orthonormal basis `q`.
pub fn distance_to_subspace(x: &DMatrix<C64>, q: &DMatrix<C64>) -> f64 {
    let proj = q * (q.adjoint() * x);
    let r = x - proj;
    if r.ncols() == 0 {
        return 0.0;
    }
    r.singular_values().iter().cloned().fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn null_space_of_rank_one() {
        let a = DMatrix::from_row_slice(1, 3, &[ONE, ONE, ZERO]);
        let ns = null_space(&a, 1e-10);
        assert_eq!(ns.ncols(), 2);
        assert!((&a * &ns).norm() < 1e-12);
    }

    #[test]
    fn clusters_merge_close_values() {
        let cl = cluster_sorted(&[0.0, 1e-8, 1.0, 1.0 + 1e-9, 3.0], 1e-6);
        assert_eq!(cl.iter().map(|c| c.1).collect::<Vec<_>>(), vec![2, 2, 1]);
    }

    #[test]
    fn hermitian_eigen_sorted() {
        let a = DMatrix::from_row_slice(2, 2, &[C64::new(2.0, 0.0), ZERO, ZERO, ONE]);
        let (vals, _) = hermitian_eigen(&a);
        assert_eq!(vals, vec![1.0, 2.0]);
    }
}
