//! Finite-dimensional Hopf *-algebras given by structure tensors, and their
//! convolution duals.
//!
//! Conventions: `mul[i][j][k]` is the coefficient of e_k in e_i·e_j, and
//! `comul[i][j][k]` the coefficient of e_j⊗e_k in Δ(e_i). The antipode matrix
//! K acts on coefficient columns, κ(e_j) = Σ_i K[i][j] e_i. The star is stored
//! as a matrix C with a* = C·conj(a).

use crate::error::{Error, Result};
use crate::linalg;
use crate::report::AxiomReport;
use crate::scalar::{basis_vec, conj_mat, conj_vec, max_diff, ScalarContext, C64, ONE, ZERO};
use crate::tensor::Tensor3;
use nalgebra::{DMatrix, DVector};
use std::collections::BTreeMap;

/// Raw structure tensors, without any validation.
#[derive(Debug, Clone, PartialEq)]
pub struct HopfTensors {
    pub labels: Vec<String>,
    pub mul: Tensor3,
    pub unit: DVector<C64>,
    pub comul: Tensor3,
    pub counit: DVector<C64>,
    pub antipode: DMatrix<C64>,
    pub antipode_inv: DMatrix<C64>,
    pub star: DMatrix<C64>,
}

#[derive(Debug, Clone)]
pub struct FiniteHopfStarAlgebra {
    t: HopfTensors,
    mul_sparse: Vec<Vec<(usize, C64)>>,
    comul_sparse: Vec<Vec<(usize, usize, C64)>>,
}

impl PartialEq for FiniteHopfStarAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.t == other.t
    }
}

/// Element of the dual: φ(e_i) = coeffs[i].
#[derive(Debug, Clone, PartialEq)]
pub struct DualFunctional {
    pub coeffs: DVector<C64>,
}

impl DualFunctional {
    pub fn new(coeffs: DVector<C64>) -> Self {
        DualFunctional { coeffs }
    }

    pub fn zeros(n: usize) -> Self {
        DualFunctional { coeffs: DVector::zeros(n) }
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn eval(&self, a: &DVector<C64>) -> C64 {
        self.coeffs.iter().zip(a.iter()).fold(ZERO, |s, (f, x)| s + f * x)
    }

    pub fn scale(&self, z: C64) -> Self {
        DualFunctional { coeffs: &self.coeffs * z }
    }

    pub fn add(&self, other: &Self) -> Self {
        DualFunctional { coeffs: &self.coeffs + &other.coeffs }
    }

    pub fn sub(&self, other: &Self) -> Self {
        DualFunctional { coeffs: &self.coeffs - &other.coeffs }
    }

    pub fn max_diff(&self, other: &Self) -> f64 {
        crate::scalar::max_diff_vec(&self.coeffs, &other.coeffs)
    }
}

/// Δ^(k) stored sparsely: for each basis input, the list of (output legs, coefficient).
#[derive(Debug, Clone)]
pub struct IteratedCoproduct {
    pub legs: usize,
    pub terms: Vec<Vec<(Vec<usize>, C64)>>,
}

impl IteratedCoproduct {
    pub fn to_map(&self, i: usize) -> BTreeMap<Vec<usize>, C64> {
        self.terms[i].iter().cloned().collect()
    }

    /// Max coefficient difference between two iterated coproducts of the same order.
    pub fn max_diff(&self, other: &IteratedCoproduct) -> f64 {
        let mut m: f64 = 0.0;
        for i in 0..self.terms.len() {
            let a = self.to_map(i);
            let b = other.to_map(i);
            for (k, v) in &a {
                m = m.max((v - b.get(k).copied().unwrap_or(ZERO)).norm());
            }
            for (k, v) in &b {
                if !a.contains_key(k) {
                    m = m.max(v.norm());
                }
            }
        }
        m
    }
}

impl FiniteHopfStarAlgebra {
    pub fn new(t: HopfTensors) -> Result<Self> {
        let n = t.unit.len();
        let bad = |what: &str| Err(Error::Dimension(format!("{what} does not match dimension {n}")));
        if n == 0 {
            return Err(Error::Dimension("algebra dimension must be positive".into()));
        }
        if t.labels.len() != n {
            return bad("labels");
        }
        if t.mul.shape() != [n, n, n] {
            return bad("mul");
        }
        if t.comul.shape() != [n, n, n] {
            return bad("comul");
        }
        if t.counit.len() != n {
            return bad("counit");
        }
        for (name, m) in [("antipode", &t.antipode), ("antipode_inv", &t.antipode_inv), ("star", &t.star)] {
            if m.shape() != (n, n) {
                return bad(name);
            }
        }
        let mut mul_sparse = vec![Vec::new(); n * n];
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let v = t.mul.get(i, j, k);
                    if v != ZERO {
                        mul_sparse[i * n + j].push((k, v));
                    }
                }
            }
        }
        let comul_sparse = t.comul.sparse_slices();
        Ok(FiniteHopfStarAlgebra { t, mul_sparse, comul_sparse })
    }

    pub fn dim(&self) -> usize {
        self.t.unit.len()
    }

    pub fn tensors(&self) -> &HopfTensors {
        &self.t
    }

    pub fn into_tensors(self) -> HopfTensors {
        self.t
    }

    pub fn labels(&self) -> &[String] {
        &self.t.labels
    }

    pub fn unit(&self) -> &DVector<C64> {
        &self.t.unit
    }

    pub fn counit(&self) -> &DVector<C64> {
        &self.t.counit
    }

    pub fn antipode(&self) -> &DMatrix<C64> {
        &self.t.antipode
    }

    pub fn antipode_inv(&self) -> &DMatrix<C64> {
        &self.t.antipode_inv
    }

    pub fn star_matrix(&self) -> &DMatrix<C64> {
        &self.t.star
    }

    pub fn basis(&self, i: usize) -> DVector<C64> {
        basis_vec(self.dim(), i)
    }

    /// Nonzero entries of e_i·e_j as (k, coefficient).
    pub fn mul_terms(&self, i: usize, j: usize) -> &[(usize, C64)] {
        &self.mul_sparse[i * self.dim() + j]
    }

    /// Nonzero entries of Δ(e_i) as (j, k, coefficient).
    pub fn comul_terms(&self, i: usize) -> &[(usize, usize, C64)] {
        &self.comul_sparse[i]
    }

    pub fn product(&self, a: &DVector<C64>, b: &DVector<C64>) -> DVector<C64> {
        let n = self.dim();
        let mut out = DVector::zeros(n);
        for i in 0..n {
            if a[i] == ZERO {
                continue;
            }
            for j in 0..n {
                if b[j] == ZERO {
                    continue;
                }
                let ab = a[i] * b[j];
                for &(k, v) in self.mul_terms(i, j) {
                    out[k] += ab * v;
                }
            }
        }
        out
    }

    pub fn star(&self, a: &DVector<C64>) -> DVector<C64> {
        &self.t.star * conj_vec(a)
    }

    pub fn kappa(&self, a: &DVector<C64>) -> DVector<C64> {
        &self.t.antipode * a
    }

    pub fn kappa_inv(&self, a: &DVector<C64>) -> DVector<C64> {
        &self.t.antipode_inv * a
    }

    pub fn counit_of(&self, a: &DVector<C64>) -> C64 {
        self.t.counit.iter().zip(a.iter()).fold(ZERO, |s, (e, x)| s + e * x)
    }

    /// Δ(a) as an n×n coefficient matrix: Δ(a) = Σ M[j][k] e_j⊗e_k.
    pub fn coproduct(&self, a: &DVector<C64>) -> DMatrix<C64> {
        let n = self.dim();
        let mut out = DMatrix::zeros(n, n);
        for i in 0..n {
            if a[i] == ZERO {
                continue;
            }
            for &(j, k, v) in self.comul_terms(i) {
                out[(j, k)] += a[i] * v;
            }
        }
        out
    }

    /// Δ^(k): A → A^{⊗(k+1)}, built by repeatedly splitting the first leg.
    pub fn iterated_coproduct(&self, k: usize) -> IteratedCoproduct {
        assert!(k >= 1, "iterated coproduct order must be at least 1");
        self.iterate(k, true)
    }

    /// Same as `iterated_coproduct`, but splitting the last leg each time.
    pub fn iterated_coproduct_right(&self, k: usize) -> IteratedCoproduct {
        assert!(k >= 1, "iterated coproduct order must be at least 1");
        self.iterate(k, false)
    }

    fn iterate(&self, k: usize, first: bool) -> IteratedCoproduct {
        let n = self.dim();
        let mut terms: Vec<Vec<(Vec<usize>, C64)>> = (0..n)
            .map(|i| self.comul_terms(i).iter().map(|&(p, q, v)| (vec![p, q], v)).collect())
            .collect();
        for _ in 1..k {
            terms = terms
                .into_iter()
                .map(|list| {
                    let mut acc: BTreeMap<Vec<usize>, C64> = BTreeMap::new();
                    for (legs, v) in list {
                        let split = if first { 0 } else { legs.len() - 1 };
                        for &(p, q, w) in self.comul_terms(legs[split]) {
                            let mut nl = Vec::with_capacity(legs.len() + 1);
                            nl.extend_from_slice(&legs[..split]);
                            nl.push(p);
                            nl.push(q);
                            nl.extend_from_slice(&legs[split + 1..]);
                            *acc.entry(nl).or_insert(ZERO) += v * w;
                        }
                    }
                    acc.into_iter().filter(|(_, v)| *v != ZERO).collect()
                })
                .collect();
        }
        IteratedCoproduct { legs: k + 1, terms }
    }

    // ---- dual side ----

    pub fn counit_functional(&self) -> DualFunctional {
        DualFunctional::new(self.t.counit.clone())
    }

    fn check_dual(&self, f: &DualFunctional) -> Result<()> {
        if f.dim() != self.dim() {
            return Err(Error::Dimension(format!(
                "functional of dimension {} on algebra of dimension {}",
                f.dim(),
                self.dim()
            )));
        }
        Ok(())
    }

    /// (φ⋆ψ)(e_i) = Σ_{j,k} d[i][j][k] φ_j ψ_k.
    pub fn convolve(&self, f: &DualFunctional, g: &DualFunctional) -> Result<DualFunctional> {
        self.check_dual(f)?;
        self.check_dual(g)?;
        let n = self.dim();
        let mut out = DVector::zeros(n);
        for i in 0..n {
            out[i] = self
                .comul_terms(i)
                .iter()
                .fold(ZERO, |s, &(j, k, v)| s + v * f.coeffs[j] * g.coeffs[k]);
        }
        Ok(DualFunctional::new(out))
    }

    /// Matrix L with φ⋆ψ = L·ψ.
    pub fn left_convolution_matrix(&self, f: &DualFunctional) -> DMatrix<C64> {
        let n = self.dim();
        let mut l = DMatrix::zeros(n, n);
        for i in 0..n {
            for &(j, k, v) in self.comul_terms(i) {
                l[(i, k)] += v * f.coeffs[j];
            }
        }
        l
    }

    pub fn convolution_inverse(&self, f: &DualFunctional, ctx: &ScalarContext) -> Result<DualFunctional> {
        self.check_dual(f)?;
        let l = self.left_convolution_matrix(f);
        let cond = linalg::condition_number(&l);
        if !(cond.is_finite() && cond < 1.0 / ctx.tolerance) {
            return Err(Error::NotConvolutionInvertible(cond));
        }
        let x = linalg::solve(&l, &self.t.counit).ok_or(Error::NotConvolutionInvertible(cond))?;
        let inv = DualFunctional::new(x);
        let eps = self.counit_functional();
        let r = self.convolve(&inv, f)?.max_diff(&eps).max(self.convolve(f, &inv)?.max_diff(&eps));
        if r > ctx.tolerance * cond.max(1.0) {
            return Err(Error::NotConvolutionInvertible(cond));
        }
        Ok(inv)
    }

    /// φ*(a) = conj(φ(κ(a)*)).
    pub fn dual_star(&self, f: &DualFunctional) -> DualFunctional {
        let n = self.dim();
        let y = &self.t.star * conj_mat(&self.t.antipode);
        let mut out = DVector::zeros(n);
        for i in 0..n {
            let s = y.column(i).iter().zip(f.coeffs.iter()).fold(ZERO, |s, (a, b)| s + a * b);
            out[i] = s.conj();
        }
        DualFunctional::new(out)
    }

    pub fn pair(&self, a: &DVector<C64>, f: &DualFunctional) -> C64 {
        f.eval(a)
    }

    // ---- verification ----

    pub fn verify_hopf_axioms(&self, ctx: &ScalarContext) -> AxiomReport {
        let n = self.dim();
        let tol = ctx.tolerance;
        let t = &self.t;
        let mut rep = AxiomReport::new();
        let e: Vec<DVector<C64>> = (0..n).map(|i| self.basis(i)).collect();
        let prods: Vec<DVector<C64>> = (0..n * n).map(|ij| self.product(&e[ij / n], &e[ij % n])).collect();

        let mut assoc: f64 = 0.0;
        for i in 0..n {
            for j in 0..n {
                let ij = &prods[i * n + j];
                for l in 0..n {
                    let lhs = self.product(ij, &e[l]);
                    let rhs = self.product(&e[i], &prods[j * n + l]);
                    assoc = assoc.max(crate::scalar::max_diff_vec(&lhs, &rhs));
                }
            }
        }
        rep.push("associativity", assoc, tol);

        let d2l = self.iterated_coproduct(2);
        let d2r = self.iterated_coproduct_right(2);
        rep.push("coassociativity", d2l.max_diff(&d2r), tol);

        let mut unit: f64 = 0.0;
        for i in 0..n {
            unit = unit.max(crate::scalar::max_diff_vec(&self.product(&t.unit, &e[i]), &e[i]));
            unit = unit.max(crate::scalar::max_diff_vec(&self.product(&e[i], &t.unit), &e[i]));
        }
        rep.push("unit", unit, tol);

        let mut counit: f64 = 0.0;
        for i in 0..n {
            let d = self.coproduct(&e[i]);
            let left = d.transpose() * &t.counit;
            let right = &d * &t.counit;
            counit = counit.max(crate::scalar::max_diff_vec(&left, &e[i]));
            counit = counit.max(crate::scalar::max_diff_vec(&right, &e[i]));
        }
        rep.push("counit", counit, tol);

        let dcache: Vec<DMatrix<C64>> = e.iter().map(|x| self.coproduct(x)).collect();
        let mut dmult: f64 = 0.0;
        for i in 0..n {
            for j in 0..n {
                let lhs = self.coproduct(&prods[i * n + j]);
                let rhs = self.tensor_square_product(&dcache[i], &dcache[j]);
                dmult = dmult.max(max_diff(&lhs, &rhs));
            }
        }
        rep.push("comultiplicativity", dmult, tol);

        let d1 = self.coproduct(&t.unit);
        let one_one = &t.unit * t.unit.transpose();
        rep.push("comul-unit", max_diff(&d1, &one_one), tol);

        let mut emult = (self.counit_of(&t.unit) - ONE).norm();
        for i in 0..n {
            for j in 0..n {
                let v = self.counit_of(&prods[i * n + j]) - t.counit[i] * t.counit[j];
                emult = emult.max(v.norm());
            }
        }
        rep.push("counit-multiplicativity", emult, tol);

        let mut dstar: f64 = 0.0;
        for i in 0..n {
            let lhs = self.coproduct(&self.star(&e[i]));
            let rhs = &t.star * conj_mat(&dcache[i]) * t.star.transpose();
            dstar = dstar.max(max_diff(&lhs, &rhs));
        }
        rep.push("comul-star", dstar, tol);

        let mut anti: f64 = 0.0;
        for i in 0..n {
            let mut l = DVector::zeros(n);
            let mut r = DVector::zeros(n);
            for &(p, q, v) in self.comul_terms(i) {
                l += self.product(&self.kappa(&e[p]), &e[q]) * v;
                r += self.product(&e[p], &self.kappa(&e[q])) * v;
            }
            let target = &t.unit * t.counit[i];
            anti = anti.max(crate::scalar::max_diff_vec(&l, &target));
            anti = anti.max(crate::scalar::max_diff_vec(&r, &target));
        }
        rep.push("antipode", anti, tol);

        let mut kam: f64 = 0.0;
        for i in 0..n {
            for j in 0..n {
                let lhs = self.kappa(&prods[i * n + j]);
                let rhs = self.product(&self.kappa(&e[j]), &self.kappa(&e[i]));
                kam = kam.max(crate::scalar::max_diff_vec(&lhs, &rhs));
            }
        }
        rep.push("antipode-antimultiplicative", kam, tol);

        let mut kks: f64 = 0.0;
        for i in 0..n {
            let x = self.kappa(&self.star(&self.kappa(&self.star(&e[i]))));
            kks = kks.max(crate::scalar::max_diff_vec(&x, &e[i]));
        }
        rep.push("antipode-star", kks, tol);

        let id = linalg::identity(n);
        let kinv = max_diff(&(&t.antipode_inv * &t.antipode), &id).max(max_diff(&(&t.antipode * &t.antipode_inv), &id));
        rep.push("antipode-inverse", kinv, tol);

        rep.push("star-involutive", max_diff(&(&t.star * conj_mat(&t.star)), &id), tol);

        let mut sam: f64 = 0.0;
        for i in 0..n {
            for j in 0..n {
                let lhs = self.star(&prods[i * n + j]);
                let rhs = self.product(&self.star(&e[j]), &self.star(&e[i]));
                sam = sam.max(crate::scalar::max_diff_vec(&lhs, &rhs));
            }
        }
        sam = sam.max(crate::scalar::max_diff_vec(&self.star(&t.unit), &t.unit));
        rep.push("star-antimultiplicative", sam, tol);
        rep
    }

    /// Product in A⊗A of two coefficient matrices.
    pub fn tensor_square_product(&self, x: &DMatrix<C64>, y: &DMatrix<C64>) -> DMatrix<C64> {
        let n = self.dim();
        let mut out = DMatrix::zeros(n, n);
        for a in 0..n {
            for b in 0..n {
                let xab = x[(a, b)];
                if xab == ZERO {
                    continue;
                }
                for c in 0..n {
                    for d in 0..n {
                        let ycd = y[(c, d)];
                        if ycd == ZERO {
                            continue;
                        }
                        let w = xab * ycd;
                        for &(p, u) in self.mul_terms(a, c) {
                            for &(q, v) in self.mul_terms(b, d) {
                                out[(p, q)] += w * u * v;
                            }
                        }
                    }
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn ctx() -> ScalarContext {
        ScalarContext::default()
    }

    #[test]
    fn function_algebra_of_z2_passes_with_zero_residuals() {
        let a = catalog::function_algebra(&catalog::cyclic(2));
        let rep = a.verify_hopf_axioms(&ctx());
        assert!(rep.passed(), "{rep}");
        assert_eq!(rep.max_residual(), 0.0);
    }

    #[test]
    fn perturbed_product_breaks_associativity() {
        let a = catalog::function_algebra(&catalog::cyclic(2));
        let mut t = a.into_tensors();
        let v = t.mul.get(0, 1, 1);
        t.mul.set(0, 1, 1, v + C64::new(0.1, 0.0));
        let b = FiniteHopfStarAlgebra::new(t).unwrap();
        let rep = b.verify_hopf_axioms(&ctx());
        assert!(!rep.passed());
        assert!(rep.residual("associativity") >= 0.05);
    }

    #[test]
    fn trivial_algebra_passes() {
        let a = catalog::function_algebra(&catalog::trivial_group());
        assert_eq!(a.dim(), 1);
        assert!(a.verify_hopf_axioms(&ctx()).passed());
    }

    #[test]
    fn dimension_mismatch_is_rejected() {
        let mut t = catalog::function_algebra(&catalog::cyclic(2)).into_tensors();
        t.counit = DVector::zeros(3);
        assert!(matches!(FiniteHopfStarAlgebra::new(t), Err(Error::Dimension(_))));
    }

    #[test]
    fn first_order_iterated_coproduct_is_comul() {
        let a = catalog::function_algebra(&catalog::symmetric3());
        let d1 = a.iterated_coproduct(1);
        for i in 0..a.dim() {
            for (legs, v) in &d1.terms[i] {
                assert_eq!(a.tensors().comul.get(i, legs[0], legs[1]), *v);
            }
            assert_eq!(d1.terms[i].len(), a.comul_terms(i).len());
        }
    }

    #[test]
    fn second_order_coproduct_independent_of_bracketing_on_c_z2() {
        let a = catalog::function_algebra(&catalog::cyclic(2));
        // Oracle: (Δ⊗id)Δ(δ_x) = Σ_{y,z} δ_y⊗δ_z⊗δ_{(yz)^{-1}x} by the group law.
        let d2 = a.iterated_coproduct(2);
        for x in 0..2 {
            let m = d2.to_map(x);
            assert_eq!(m.len(), 4);
            for y in 0..2 {
                for z in 0..2 {
                    assert_eq!(m[&vec![y, z, (x + y + z) % 2]], ONE);
                }
            }
        }
        assert_eq!(d2.max_diff(&a.iterated_coproduct_right(2)), 0.0);
    }

    #[test]
    fn grouplike_iterated_coproduct() {
        let a = catalog::group_algebra(&catalog::cyclic(3));
        let d2 = a.iterated_coproduct(2);
        for g in 0..3 {
            assert_eq!(d2.terms[g], vec![(vec![g, g, g], ONE)]);
        }
    }

    #[test]
    fn evaluation_functionals_convolve_by_group_law() {
        let g = catalog::cyclic(4);
        let a = catalog::function_algebra(&g);
        let ev = |x: usize| DualFunctional::new(basis_vec(4, x));
        for x in 0..4 {
            for y in 0..4 {
                let p = a.convolve(&ev(x), &ev(y)).unwrap();
                assert_eq!(p, ev(g.mul(x, y)));
            }
            let inv = a.convolution_inverse(&ev(x), &ctx()).unwrap();
            assert!(inv.max_diff(&ev(g.inv(x))) < 1e-12);
        }
    }

    #[test]
    fn counit_is_convolution_identity_and_self_adjoint() {
        let a = catalog::function_algebra(&catalog::symmetric3());
        let eps = a.counit_functional();
        let mut rng = ctx().rng(7);
        let f = crate::random::functional(&mut rng, a.dim());
        assert!(a.convolve(&f, &eps).unwrap().max_diff(&f) < 1e-14);
        assert!(a.convolve(&eps, &f).unwrap().max_diff(&f) < 1e-14);
        assert_eq!(a.dual_star(&eps), eps);
        let inv = a.convolution_inverse(&eps, &ctx()).unwrap();
        assert!(inv.max_diff(&eps) < 1e-14);
    }

    #[test]
    fn zero_functional_is_not_invertible() {
        let a = catalog::function_algebra(&catalog::cyclic(3));
        let z = DualFunctional::zeros(3);
        assert!(matches!(a.convolution_inverse(&z, &ctx()), Err(Error::NotConvolutionInvertible(_))));
    }

    #[test]
    fn pairing_gram_matrix_nondegenerate() {
        let a = catalog::function_algebra(&catalog::symmetric3());
        let n = a.dim();
        let gram = DMatrix::from_fn(n, n, |i, j| a.pair(&a.basis(i), &DualFunctional::new(basis_vec(n, j))));
        assert_eq!(linalg::rank(&gram, 1e-12), n);
        assert_eq!(a.pair(a.unit(), &a.counit_functional()), ONE);
    }
}
