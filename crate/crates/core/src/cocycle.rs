//! Dual 2-cocycles as functionals on A⊗A, quotient morphisms, induction, and
//! the W / v functionals.

use crate::catalog::{self, FiniteGroupData};
use crate::error::{Error, Result};
use crate::hopf::{DualFunctional, FiniteHopfStarAlgebra};
use crate::linalg;
use crate::report::AxiomReport;
use crate::scalar::{conj_mat, max_diff, ScalarContext, C64, ONE, ZERO};
use nalgebra::{DMatrix, DVector};

/// σ(e_i, e_j) = sigma[i][j]; the inverse is always recomputed by convolution inversion.
#[derive(Debug, Clone, PartialEq)]
pub struct DualCocycle {
    sigma: DMatrix<C64>,
    sigma_inv: DMatrix<C64>,
}

impl DualCocycle {
    pub fn new(host: &FiniteHopfStarAlgebra, sigma: DMatrix<C64>, ctx: &ScalarContext) -> Result<Self> {
        let n = host.dim();
        if sigma.shape() != (n, n) {
            return Err(Error::Dimension(format!("cocycle matrix must be {n}×{n}")));
        }
        let sigma_inv = convolution_inverse2(host, &sigma, ctx)?;
        Ok(DualCocycle { sigma, sigma_inv })
    }

    /// ε⊗ε.
    pub fn trivial(host: &FiniteHopfStarAlgebra) -> Self {
        let e = host.counit();
        let s = e * e.transpose();
        DualCocycle { sigma: s.clone(), sigma_inv: s }
    }

    pub fn sigma(&self) -> &DMatrix<C64> {
        &self.sigma
    }

    pub fn sigma_inv(&self) -> &DMatrix<C64> {
        &self.sigma_inv
    }

    pub fn dim(&self) -> usize {
        self.sigma.nrows()
    }

    /// σ(a, b) for algebra elements.
    pub fn eval(&self, a: &DVector<C64>, b: &DVector<C64>) -> C64 {
        (a.transpose() * &self.sigma * b)[(0, 0)]
    }

    /// The cocycle with the roles of σ and σ⁻¹ exchanged. It lives on any
    /// algebra with the same coalgebra, in particular on the twist by σ.
    pub fn inverse_cocycle(&self) -> DualCocycle {
        DualCocycle { sigma: self.sigma_inv.clone(), sigma_inv: self.sigma.clone() }
    }

    /// The functional σ⁻¹(e_k, ·).
    pub fn inverse_row(&self, k: usize) -> DualFunctional {
        DualFunctional::new(self.sigma_inv.row(k).transpose())
    }
}

/// Convolution on (A⊗A)*: (s⋆t)(i,j) = Σ d[i][p][q] d[j][r][s'] s(p,r) t(q,s').
pub fn convolve2(host: &FiniteHopfStarAlgebra, s: &DMatrix<C64>, t: &DMatrix<C64>) -> DMatrix<C64> {
    let n = host.dim();
    DMatrix::from_fn(n, n, |i, j| {
        let mut acc = ZERO;
        for &(p, q, u) in host.comul_terms(i) {
            for &(r, w, v) in host.comul_terms(j) {
                acc += u * v * s[(p, r)] * t[(q, w)];
            }
        }
        acc
    })
}

pub fn convolution_inverse2(host: &FiniteHopfStarAlgebra, s: &DMatrix<C64>, ctx: &ScalarContext) -> Result<DMatrix<C64>> {
    let n = host.dim();
    let nn = n * n;
    let mut l = DMatrix::zeros(nn, nn);
    for i in 0..n {
        for j in 0..n {
            for &(p, q, u) in host.comul_terms(i) {
                for &(r, w, v) in host.comul_terms(j) {
                    l[(i * n + j, q * n + w)] += u * v * s[(p, r)];
                }
            }
        }
    }
    let e = host.counit();
    let rhs = DVector::from_fn(nn, |ij, _| e[ij / n] * e[ij % n]);
    let x = linalg::solve(&l, &rhs).ok_or(Error::NotConvolutionInvertible(f64::INFINITY))?;
    let inv = DMatrix::from_fn(n, n, |i, j| x[i * n + j]);
    let eps2 = e * e.transpose();
    let r = max_diff(&convolve2(host, s, &inv), &eps2).max(max_diff(&convolve2(host, &inv, s), &eps2));
    if !(r <= ctx.tolerance) {
        return Err(Error::NotConvolutionInvertible(r));
    }
    Ok(inv)
}

/// ω*(x) = conj(ω((κ⊗κ)(x)*)) on A⊗A.
pub fn dual_star2(host: &FiniteHopfStarAlgebra, s: &DMatrix<C64>) -> DMatrix<C64> {
    let y = host.star_matrix() * conj_mat(host.antipode());
    conj_mat(&(y.transpose() * s * y))
}

/// Human-readable statement of the *-convention used on (A⊗A)*.
pub const TENSOR_STAR_CONVENTION: &str = "omega*(x) = conj(omega((kappa (x) kappa)(x)*))";

pub fn verify_cocycle(host: &FiniteHopfStarAlgebra, c: &DualCocycle, ctx: &ScalarContext) -> Result<AxiomReport> {
    let n = host.dim();
    if c.dim() != n {
        return Err(Error::Dimension("cocycle and host dimensions differ".into()));
    }
    let tol = ctx.tolerance;
    let e = host.counit();
    let eps2 = e * e.transpose();
    let inv_res = max_diff(&convolve2(host, &c.sigma, &c.sigma_inv), &eps2)
        .max(max_diff(&convolve2(host, &c.sigma_inv, &c.sigma), &eps2));
    if !(inv_res <= tol) {
        return Err(Error::InvalidInverse(inv_res));
    }
    let mut rep = AxiomReport::new();
    rep.push("cocycle-identity", cocycle_identity_residual(host, &c.sigma), tol);

    let one = host.unit();
    let mut norm: f64 = 0.0;
    for a in 0..n {
        let ea = host.basis(a);
        for m in [&c.sigma, &c.sigma_inv] {
            let right = (ea.transpose() * m * one)[(0, 0)];
            let left = (one.transpose() * m * &ea)[(0, 0)];
            norm = norm.max((right - e[a]).norm()).max((left - e[a]).norm());
        }
    }
    rep.push("normalization", norm, tol);
    rep.push("unitarity", max_diff(&dual_star2(host, &c.sigma), &c.sigma_inv), tol);
    rep.push("inverse", inv_res, tol);
    Ok(rep)
}

/// max over basis triples of |σ(b₁,c₁)σ(a,b₂c₂) − σ(a₁,b₁)σ(a₂b₂,c)|.
pub fn cocycle_identity_residual(host: &FiniteHopfStarAlgebra, s: &DMatrix<C64>) -> f64 {
    let n = host.dim();
    // sm[a][q][r] = σ(a, e_q e_r), ms[q][r][c] = σ(e_q e_r, c)
    let mut sm = vec![ZERO; n * n * n];
    let mut ms = vec![ZERO; n * n * n];
    for q in 0..n {
        for r in 0..n {
            for &(k, v) in host.mul_terms(q, r) {
                for a in 0..n {
                    sm[(a * n + q) * n + r] += v * s[(a, k)];
                    ms[(q * n + r) * n + a] += v * s[(k, a)];
                }
            }
        }
    }
    let mut worst: f64 = 0.0;
    for a in 0..n {
        for b in 0..n {
            for cc in 0..n {
                let mut lhs = ZERO;
                for &(p, q, u) in host.comul_terms(b) {
                    for &(r, w, v) in host.comul_terms(cc) {
                        lhs += u * v * s[(p, r)] * sm[(a * n + q) * n + w];
                    }
                }
                let mut rhs = ZERO;
                for &(p, q, u) in host.comul_terms(a) {
                    for &(r, w, v) in host.comul_terms(b) {
                        rhs += u * v * s[(p, r)] * ms[(q * n + w) * n + cc];
                    }
                }
                worst = worst.max((lhs - rhs).norm());
            }
        }
    }
    worst
}

/// σ(g,h) = β(g,h) on the grouplike basis of ℂ[G] for a bicharacter β of an abelian group.
pub fn from_bicharacter(g: &FiniteGroupData, beta: &DMatrix<C64>, ctx: &ScalarContext) -> Result<DualCocycle> {
    let n = g.order();
    check_table(g, beta, ctx)?;
    let tol = ctx.tolerance;
    for x in 0..n {
        for y in 0..n {
            if g.mul(x, y) != g.mul(y, x) {
                return Err(Error::InvalidBicharacter("group is not abelian".into()));
            }
            for z in 0..n {
                let r1 = (beta[(x, g.mul(y, z))] - beta[(x, y)] * beta[(x, z)]).norm();
                let r2 = (beta[(g.mul(x, y), z)] - beta[(x, z)] * beta[(y, z)]).norm();
                if r1 > tol || r2 > tol {
                    return Err(Error::InvalidBicharacter(format!("multiplicativity fails at ({x},{y},{z})")));
                }
            }
        }
    }
    DualCocycle::new(&catalog::group_algebra(g), beta.clone(), ctx)
}

/// σ(g,h) = ω(g,h) for a normalized unimodular 2-cocycle ω of any finite group.
pub fn from_group_cocycle(g: &FiniteGroupData, omega: &DMatrix<C64>, ctx: &ScalarContext) -> Result<DualCocycle> {
    let n = g.order();
    check_table(g, omega, ctx)?;
    let tol = ctx.tolerance;
    let e = g.identity();
    for x in 0..n {
        if (omega[(e, x)] - ONE).norm() > tol || (omega[(x, e)] - ONE).norm() > tol {
            return Err(Error::InvalidBicharacter(format!("group cocycle is not normalized at {x}")));
        }
        for y in 0..n {
            for z in 0..n {
                let l = omega[(x, y)] * omega[(g.mul(x, y), z)];
                let r = omega[(y, z)] * omega[(x, g.mul(y, z))];
                if (l - r).norm() > tol {
                    return Err(Error::InvalidBicharacter(format!("group cocycle identity fails at ({x},{y},{z})")));
                }
            }
        }
    }
    DualCocycle::new(&catalog::group_algebra(g), omega.clone(), ctx)
}

fn check_table(g: &FiniteGroupData, t: &DMatrix<C64>, ctx: &ScalarContext) -> Result<()> {
    let n = g.order();
    if t.shape() != (n, n) {
        return Err(Error::InvalidBicharacter(format!("table must be {n}×{n}")));
    }
    for x in 0..n {
        for y in 0..n {
            if (t[(x, y)].norm() - 1.0).abs() > ctx.tolerance {
                return Err(Error::InvalidBicharacter(format!("|β({x},{y})| ≠ 1")));
            }
        }
    }
    Ok(())
}

/// A surjective Hopf *-algebra map given by its matrix: π(e_a) = Σ_x pi[x][a] f_x.
#[derive(Debug, Clone, PartialEq)]
pub struct QuotientMorphism {
    pub pi: DMatrix<C64>,
}

impl QuotientMorphism {
    pub fn new(pi: DMatrix<C64>) -> Self {
        QuotientMorphism { pi }
    }

    pub fn identity(n: usize) -> Self {
        QuotientMorphism { pi: DMatrix::identity(n, n) }
    }

    pub fn apply(&self, a: &DVector<C64>) -> DVector<C64> {
        &self.pi * a
    }

    /// `other ∘ self` (first self, then other).
    pub fn then(&self, other: &QuotientMorphism) -> QuotientMorphism {
        QuotientMorphism { pi: &other.pi * &self.pi }
    }

    pub fn verify(&self, source: &FiniteHopfStarAlgebra, target: &FiniteHopfStarAlgebra, ctx: &ScalarContext) -> Result<AxiomReport> {
        let (m, n) = self.pi.shape();
        if n != source.dim() || m != target.dim() {
            return Err(Error::Dimension(format!(
                "morphism matrix {m}×{n} does not map dimension {} to {}",
                source.dim(),
                target.dim()
            )));
        }
        let tol = ctx.tolerance;
        let mut rep = AxiomReport::new();
        let img: Vec<DVector<C64>> = (0..n).map(|a| self.pi.column(a).into_owned()).collect();
        let mut prod: f64 = 0.0;
        for a in 0..n {
            for b in 0..n {
                let lhs = self.apply(&source.product(&source.basis(a), &source.basis(b)));
                let rhs = target.product(&img[a], &img[b]);
                prod = prod.max(crate::scalar::max_diff_vec(&lhs, &rhs));
            }
        }
        rep.push("product", prod, tol);
        rep.push("unit", crate::scalar::max_diff_vec(&self.apply(source.unit()), target.unit()), tol);
        let ce = self.pi.transpose() * target.counit();
        rep.push("counit", crate::scalar::max_diff_vec(&ce, source.counit()), tol);
        let mut co: f64 = 0.0;
        let mut st: f64 = 0.0;
        for a in 0..n {
            let lhs = target.coproduct(&img[a]);
            let rhs = &self.pi * source.coproduct(&source.basis(a)) * self.pi.transpose();
            co = co.max(max_diff(&lhs, &rhs));
            let s1 = self.apply(&source.star(&source.basis(a)));
            st = st.max(crate::scalar::max_diff_vec(&s1, &target.star(&img[a])));
        }
        rep.push("coproduct", co, tol);
        rep.push("star", st, tol);
        rep.push("antipode", max_diff(&(&self.pi * source.antipode()), &(target.antipode() * &self.pi)), tol);
        let deficit = m - linalg::rank(&self.pi, 1e-10).min(m);
        rep.push("surjectivity", deficit as f64, 0.0);
        Ok(rep)
    }
}

/// σ'(a,b) = σ(π(a), π(b)) on the source algebra.
pub fn induce(
    c: &DualCocycle,
    pi: &QuotientMorphism,
    source: &FiniteHopfStarAlgebra,
    target: &FiniteHopfStarAlgebra,
    ctx: &ScalarContext,
) -> Result<DualCocycle> {
    let rep = pi.verify(source, target, ctx)?;
    if !rep.passed() {
        return Err(Error::InvalidMorphism(rep.failing().join(", ")));
    }
    if c.dim() != target.dim() {
        return Err(Error::Dimension("cocycle does not live on the morphism target".into()));
    }
    let s = pi.pi.transpose() * &c.sigma * &pi.pi;
    DualCocycle::new(source, s, ctx)
}

/// W, W⁻¹, v, v⁻¹ of a cocycle.
#[derive(Debug, Clone)]
pub struct CocycleFunctionals {
    pub w: DualFunctional,
    pub w_inv: DualFunctional,
    pub v: DualFunctional,
    pub v_inv: DualFunctional,
}

/// W(a) = σ(a₁, κ(a₂)).
pub fn w_functional(host: &FiniteHopfStarAlgebra, c: &DualCocycle) -> DualFunctional {
    let n = host.dim();
    let k = host.antipode();
    let s = c.sigma();
    let w = DVector::from_fn(n, |i, _| {
        host.comul_terms(i).iter().fold(ZERO, |acc, &(p, q, d)| {
            acc + d * (0..n).fold(ZERO, |t, m| t + k[(m, q)] * s[(p, m)])
        })
    });
    DualFunctional::new(w)
}

/// W, W⁻¹ and v(a) = W⁻¹(a₁)W(κ⁻¹(a₂)) with its inverse.
pub fn cocycle_functionals(host: &FiniteHopfStarAlgebra, c: &DualCocycle, ctx: &ScalarContext) -> Result<CocycleFunctionals> {
    let w = w_functional(host, c);
    let w_inv = host.convolution_inverse(&w, ctx)?;
    let w_kinv = DualFunctional::new(host.antipode_inv().transpose() * &w.coeffs);
    let v = host.convolve(&w_inv, &w_kinv)?;
    let v_inv = host.convolution_inverse(&v, ctx)?;
    let one = host.unit();
    for (name, f) in [("W", &w), ("v", &v)] {
        let r = (f.eval(one) - ONE).norm();
        if r > ctx.tolerance {
            return Err(Error::Decomposition(format!("{name}(1) = 1 fails by {r:.3e}")));
        }
    }
    Ok(CocycleFunctionals { w, w_inv, v, v_inv })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::scalar::c;

    fn ctx() -> ScalarContext {
        ScalarContext::default()
    }

    /// Independent oracle: group 2-cocycle identity on grouplikes,
    /// β(h,k)β(g,hk) = β(g,h)β(gh,k).
    fn group_cocycle_defect(g: &FiniteGroupData, b: &DMatrix<C64>) -> f64 {
        let n = g.order();
        let mut m: f64 = 0.0;
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let l = b[(y, z)] * b[(x, g.mul(y, z))];
                    let r = b[(x, y)] * b[(g.mul(x, y), z)];
                    m = m.max((l - r).norm());
                }
            }
        }
        m
    }

    #[test]
    fn trivial_cocycle_passes() {
        let a = catalog::function_algebra(&catalog::symmetric3());
        let t = DualCocycle::trivial(&a);
        assert!(verify_cocycle(&a, &t, &ctx()).unwrap().passed());
        let f = cocycle_functionals(&a, &t, &ctx()).unwrap();
        assert!(f.w.max_diff(&a.counit_functional()) < 1e-14);
        assert!(f.v.max_diff(&a.counit_functional()) < 1e-14);
    }

    #[test]
    fn klein_bicharacter_is_valid_and_asymmetric() {
        let g = catalog::abelian(&[2, 2]);
        let beta = catalog::sign_bicharacter(&g);
        assert!(group_cocycle_defect(&g, &beta) == 0.0);
        let sig = from_bicharacter(&g, &beta, &ctx()).unwrap();
        let host = catalog::group_algebra(&g);
        assert!(verify_cocycle(&host, &sig, &ctx()).unwrap().passed());
        assert!((0..4).any(|x| (0..4).any(|y| beta[(x, y)] != beta[(y, x)])));
    }

    #[test]
    fn order_four_bicharacter_is_valid() {
        let g = catalog::abelian(&[4, 4]);
        let beta = catalog::power_bicharacter(&g, 4);
        assert!(group_cocycle_defect(&g, &beta) < 1e-15);
        let host = catalog::group_algebra(&g);
        let sig = from_bicharacter(&g, &beta, &ctx()).unwrap();
        assert!(verify_cocycle(&host, &sig, &ctx()).unwrap().passed());
        assert!(beta.iter().any(|z| (z - c(0.0, 1.0)).norm() < 1e-15));
    }

    #[test]
    fn unit_bicharacter_is_trivial_cocycle() {
        let g = catalog::abelian(&[2, 2]);
        let ones = DMatrix::from_element(4, 4, ONE);
        let sig = from_bicharacter(&g, &ones, &ctx()).unwrap();
        let host = catalog::group_algebra(&g);
        assert_eq!(sig, DualCocycle::trivial(&host));
    }

    #[test]
    fn non_bicharacter_rejected() {
        let g = catalog::abelian(&[2, 2]);
        let mut beta = catalog::sign_bicharacter(&g);
        beta[(1, 1)] = c(0.0, 1.0);
        assert!(matches!(from_bicharacter(&g, &beta, &ctx()), Err(Error::InvalidBicharacter(_))));
    }

    #[test]
    fn perturbed_cocycle_fails_identity() {
        let g = catalog::abelian(&[2, 2]);
        let host = catalog::group_algebra(&g);
        let mut s = catalog::sign_bicharacter(&g);
        s[(1, 2)] += c(0.1, 0.0);
        let sig = DualCocycle::new(&host, s, &ctx()).unwrap();
        let rep = verify_cocycle(&host, &sig, &ctx()).unwrap();
        assert!(!rep.passed());
        assert!(rep.residual("cocycle-identity") > 0.01);
    }

    #[test]
    fn w_on_grouplikes_and_v_signs() {
        let g = catalog::abelian(&[2, 2]);
        let host = catalog::group_algebra(&g);
        let beta = catalog::sign_bicharacter(&g);
        let sig = from_bicharacter(&g, &beta, &ctx()).unwrap();
        let f = cocycle_functionals(&host, &sig, &ctx()).unwrap();
        for x in 0..4 {
            // W(g) = β(g, g⁻¹); v(g) = W(g)⁻¹ W(g⁻¹)
            assert!((f.w.coeffs[x] - beta[(x, g.inv(x))]).norm() < 1e-14);
            let expect = beta[(g.inv(x), x)] / beta[(x, g.inv(x))];
            assert!((f.v.coeffs[x] - expect).norm() < 1e-14);
            assert!((f.v.coeffs[x].norm() - 1.0).abs() < 1e-14 && f.v.coeffs[x].im.abs() < 1e-14);
        }
    }

    #[test]
    fn induction_along_identity_and_of_trivial() {
        let g = catalog::abelian(&[2, 2]);
        let host = catalog::group_algebra(&g);
        let sig = from_bicharacter(&g, &catalog::sign_bicharacter(&g), &ctx()).unwrap();
        let id = QuotientMorphism::identity(4);
        assert_eq!(induce(&sig, &id, &host, &host, &ctx()).unwrap(), sig);
        let d4 = catalog::function_algebra(&catalog::dihedral(4));
        let (k, emb) = catalog::klein_in_dihedral(4);
        let ck = catalog::function_algebra(&k);
        let res = catalog::restriction_morphism(&catalog::dihedral(4), &k, &emb).unwrap();
        let t = induce(&DualCocycle::trivial(&ck), &res, &d4, &ck, &ctx()).unwrap();
        assert!(max_diff(t.sigma(), DualCocycle::trivial(&d4).sigma()) < 1e-15);
    }

    #[test]
    fn non_morphism_rejected() {
        let d4 = catalog::function_algebra(&catalog::dihedral(4));
        let (k, _) = catalog::klein_in_dihedral(4);
        let ck = catalog::function_algebra(&k);
        let mut pi = DMatrix::zeros(4, 8);
        for x in 0..4 {
            pi[(x, x)] = ONE; // {e, r, r², r³} is not the Klein subgroup
        }
        let bad = QuotientMorphism::new(pi);
        let err = induce(&DualCocycle::trivial(&ck), &bad, &d4, &ck, &ctx());
        assert!(matches!(err, Err(Error::InvalidMorphism(_))));
    }
}
