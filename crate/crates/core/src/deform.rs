//! Finite spectral triples, R-twisted volumes, the deformed representation
//! ρ_σ of operators, deformation of triples, R^σ and category membership.

use crate::cocycle::{cocycle_functionals, DualCocycle};
use crate::corep::{
    ad_v, decompose_corep, operator_spectral_basis, pi_u, spectral_maps, verify_corep, AlgebraMatrix, SpectralDecomposition,
    UnitaryCorep,
};
use crate::error::{Error, Result};
use crate::hopf::{DualFunctional, FiniteHopfStarAlgebra};
use crate::linalg;
use crate::peter_weyl::PeterWeylData;
use crate::report::AxiomReport;
use crate::scalar::{max_abs, max_diff, ScalarContext, C64, ZERO};
use nalgebra::{DMatrix, DVector};
use serde::Serialize;

#[derive(Debug, Clone, PartialEq)]
pub struct SpectralTriple {
    pub hdim: usize,
    pub generators: Vec<DMatrix<C64>>,
    pub labels: Vec<String>,
    pub dirac: DMatrix<C64>,
}

impl SpectralTriple {
    pub fn new(dirac: DMatrix<C64>, generators: Vec<DMatrix<C64>>, labels: Vec<String>) -> Result<Self> {
        let n = dirac.nrows();
        if dirac.ncols() != n || generators.iter().any(|g| g.shape() != (n, n)) {
            return Err(Error::Dimension(format!("triple operators must all be {n}×{n}")));
        }
        if labels.len() != generators.len() {
            return Err(Error::Dimension("one label per generator".into()));
        }
        Ok(SpectralTriple { hdim: n, generators, labels, dirac })
    }

    /// D self-adjoint and the generator set closed under adjoint up to span.
    pub fn verify(&self, ctx: &ScalarContext) -> AxiomReport {
        let mut rep = AxiomReport::new();
        rep.push("dirac-self-adjoint", max_diff(&self.dirac, &self.dirac.adjoint()), ctx.tolerance);
        let span: Vec<DVector<C64>> = self.generators.iter().map(vec_op).collect();
        let mut worst: f64 = 0.0;
        if !span.is_empty() {
            let q = linalg::range_basis(&DMatrix::from_columns(&span), 1e-12);
            for g in &self.generators {
                let x = vec_op(&g.adjoint());
                let r = &x - &q * (q.adjoint() * &x);
                worst = worst.max(r.norm());
            }
        }
        rep.push("generators-adjoint-closed", worst, ctx.tolerance);
        let comm = self.generators.iter().map(|g| max_abs(&linalg::commutator(&self.dirac, g))).fold(0.0, f64::max);
        rep.note("largest-dirac-commutator", comm);
        rep
    }
}

fn vec_op(m: &DMatrix<C64>) -> DVector<C64> {
    let n = m.ncols();
    DVector::from_fn(m.nrows() * n, |r, _| m[(r / n, r % n)])
}

/// τ_R(x) = Tr(Rx).
#[derive(Debug, Clone, PartialEq)]
pub struct RTwistedVolume {
    pub r: DMatrix<C64>,
}

impl RTwistedVolume {
    pub fn new(r: DMatrix<C64>) -> Self {
        RTwistedVolume { r }
    }

    pub fn identity(n: usize) -> Self {
        RTwistedVolume { r: DMatrix::identity(n, n) }
    }

    /// Hermitian, positive definite; with a Dirac operator also [D, R] = 0.
    pub fn validity(&self, dirac: Option<&DMatrix<C64>>, ctx: &ScalarContext) -> AxiomReport {
        let mut rep = AxiomReport::new();
        rep.push("r-hermitian", max_diff(&self.r, &self.r.adjoint()), ctx.tolerance);
        let (ev, _) = linalg::hermitian_eigen(&self.r);
        rep.push_lower_bound("r-positive", ev.first().copied().unwrap_or(0.0), ctx.tolerance);
        if let Some(d) = dirac {
            rep.push("r-commutes-with-dirac", max_abs(&linalg::commutator(d, &self.r)), ctx.tolerance);
        }
        rep
    }
}

pub fn tau(rv: &RTwistedVolume, x: &DMatrix<C64>) -> C64 {
    (&rv.r * x).trace()
}

/// (τ_R ⊗ id)ad_V(x) against τ_R(x)·1, exhaustive over matrix units.
pub fn check_volume_preservation(host: &FiniteHopfStarAlgebra, v: &UnitaryCorep, rv: &RTwistedVolume, ctx: &ScalarContext) -> AxiomReport {
    let n = v.hdim();
    let vs = v.matrix().adjoint(host);
    let mut worst: f64 = 0.0;
    for k in 0..n {
        for l in 0..n {
            // Σ_ij R_ji v_ik (v*)_lj
            let mut acc = DVector::zeros(host.dim());
            for i in 0..n {
                for j in 0..n {
                    let w = rv.r[(j, i)];
                    if w != ZERO {
                        acc += host.product(&v.entry(i, k), &vs.entry(l, j)) * w;
                    }
                }
            }
            let expect = host.unit() * rv.r[(l, k)];
            worst = worst.max(crate::scalar::max_diff_vec(&acc, &expect));
        }
    }
    let mut rep = AxiomReport::new();
    rep.push("tau-preservation", worst, ctx.tolerance);
    rep
}

/// Largest ‖[X, V_k]‖ over the slices of V: zero iff X ⊗ 1 commutes with V.
pub fn corep_commutation_residual(v: &UnitaryCorep, x: &DMatrix<C64>) -> f64 {
    v.matrix().slices().iter().map(|s| max_abs(&linalg::commutator(x, s))).fold(0.0, f64::max)
}

/// Recovers T_π from R = ⊕ F_π ⊗ T_π in the adapted basis, per isotypic
/// component of `sd` (empty matrices for absent irreps).
pub fn extract_block_form(
    v: &UnitaryCorep,
    rv: &RTwistedVolume,
    sd: &SpectralDecomposition,
    pw: &PeterWeylData,
    ctx: &ScalarContext,
) -> Result<Vec<DMatrix<C64>>> {
    let comm = corep_commutation_residual(v, &rv.r);
    if !(comm <= ctx.tolerance) {
        return Err(Error::NotEquivariant(comm));
    }
    let rr = sd.basis.adjoint() * &rv.r * &sd.basis;
    let n = v.hdim();
    let mut ts = Vec::new();
    let mut recon = DMatrix::zeros(n, n);
    for (bi, blk) in sd.blocks.iter().enumerate() {
        let irrep = &pw.blocks[blk.irrep];
        let d = blk.dim;
        let m = blk.multiplicity;
        let t = DMatrix::from_fn(m, m, |t0, q| {
            let (o1, o2) = (sd.offset(bi, t0), sd.offset(bi, q));
            (0..d).fold(ZERO, |s, j| s + rr[(o1 + j, o2 + j)]) / C64::new(irrep.m, 0.0)
        });
        for t0 in 0..m {
            for q in 0..m {
                let (o1, o2) = (sd.offset(bi, t0), sd.offset(bi, q));
                for j in 0..d {
                    for l in 0..d {
                        recon[(o1 + j, o2 + l)] = t[(t0, q)] * irrep.f[(j, l)];
                    }
                }
            }
        }
        ts.push(t);
    }
    let r = max_diff(&recon, &rr);
    if !(r <= ctx.tolerance) {
        return Err(Error::TheoremViolation(r));
    }
    Ok(ts)
}

/// ρ_σ and the twisted-source operations for a fixed (V, σ).
#[derive(Debug, Clone)]
pub struct Deformation<'a> {
    host: &'a FiniteHopfStarAlgebra,
    v: &'a UnitaryCorep,
    cocycle: &'a DualCocycle,
    /// Π_V(σ⁻¹(e_k, ·)).
    factors: Vec<DMatrix<C64>>,
    w: DualFunctional,
}

impl<'a> Deformation<'a> {
    pub fn new(host: &'a FiniteHopfStarAlgebra, v: &'a UnitaryCorep, cocycle: &'a DualCocycle, ctx: &ScalarContext) -> Result<Self> {
        if v.host_dim() != host.dim() || cocycle.dim() != host.dim() {
            return Err(Error::Dimension("corepresentation, cocycle and algebra dimensions differ".into()));
        }
        let factors = (0..host.dim()).map(|k| pi_u(v, &cocycle.inverse_row(k))).collect();
        let w = cocycle_functionals(host, cocycle, ctx)?.w;
        Ok(Deformation { host, v, cocycle, factors, w })
    }

    pub fn ad(&self, t: &DMatrix<C64>) -> AlgebraMatrix {
        ad_v(self.host, self.v, t)
    }

    fn contract(&self, a: &AlgebraMatrix) -> DMatrix<C64> {
        let n = self.v.hdim();
        let mut out = DMatrix::zeros(n, n);
        for (k, f) in self.factors.iter().enumerate() {
            let s = a.slice(k);
            if s.iter().any(|z| *z != ZERO) {
                out += s * f;
            }
        }
        out
    }

    /// ρ_σ(T) = Σ_k A_k Π_V(σ⁻¹(e_k, ·)) where ad_V(T) = Σ_k A_k ⊗ e_k.
    pub fn rho(&self, t: &DMatrix<C64>) -> DMatrix<C64> {
        self.contract(&self.ad(t))
    }

    /// ρ_σ(T) split into its terms A_k·Π_V(σ_k), for the commutator identity.
    pub fn rho_terms(&self, t: &DMatrix<C64>) -> Vec<(DMatrix<C64>, DMatrix<C64>)> {
        let a = self.ad(t);
        (0..self.host.dim()).map(|k| (a.slice(k), self.factors[k].clone())).collect()
    }

    /// a × b = Σ_{k,l} A_k B_l σ⁻¹(e_k, e_l).
    pub fn twisted_product(&self, a: &DMatrix<C64>, b: &DMatrix<C64>) -> DMatrix<C64> {
        let (aa, bb) = (self.ad(a).slices(), self.ad(b).slices());
        let si = self.cocycle.sigma_inv();
        let n = self.v.hdim();
        let mut out = DMatrix::zeros(n, n);
        for (k, ak) in aa.iter().enumerate() {
            if ak.iter().all(|z| *z == ZERO) {
                continue;
            }
            for (l, bl) in bb.iter().enumerate() {
                if si[(k, l)] != ZERO {
                    out += ak * bl * si[(k, l)];
                }
            }
        }
        out
    }

    /// a^{†σ} = (id ⊗ W)ad_V(a†).
    pub fn twisted_adjoint(&self, a: &DMatrix<C64>) -> DMatrix<C64> {
        self.ad(&a.adjoint()).apply(&self.w)
    }
}

/// Multiplicativity and star property of ρ_σ over all pairs of the given basis.
pub fn rho_homomorphism_report(def: &Deformation, basis: &[DMatrix<C64>], ctx: &ScalarContext) -> AxiomReport {
    let images: Vec<DMatrix<C64>> = basis.iter().map(|b| def.rho(b)).collect();
    let mut mult: f64 = 0.0;
    let mut star: f64 = 0.0;
    for (i, a) in basis.iter().enumerate() {
        star = star.max(max_diff(&def.rho(&def.twisted_adjoint(a)), &images[i].adjoint()));
        for (j, b) in basis.iter().enumerate() {
            mult = mult.max(max_diff(&def.rho(&def.twisted_product(a, b)), &(&images[i] * &images[j])));
        }
    }
    let n = basis.first().map_or(0, |b| b.nrows());
    let mut rep = AxiomReport::new();
    rep.push("rho-multiplicative", mult, ctx.tolerance);
    rep.push("rho-star", star, ctx.tolerance);
    if n > 0 {
        let one = DMatrix::identity(n, n);
        rep.push("rho-unital", max_diff(&def.rho(&one), &one), ctx.tolerance);
    }
    rep
}

/// ad_{V_σ}(ρ_σ(T)) over Q^σ against Σ_k ρ_σ(A_k) ⊗ e_k.
pub fn intertwine_residual(def: &Deformation, twisted: &FiniteHopfStarAlgebra, t: &DMatrix<C64>) -> f64 {
    let lhs = ad_v(twisted, def.v, &def.rho(t));
    let slices: Vec<DMatrix<C64>> = def.ad(t).slices().iter().map(|a| def.rho(a)).collect();
    lhs.max_diff(&AlgebraMatrix::from_slices(&slices))
}

/// Basis of the *-algebra generated by a set of operators (with the unit),
/// closed under products until the rank stabilizes.
pub fn generated_algebra(gens: &[DMatrix<C64>]) -> Vec<DMatrix<C64>> {
    let n = gens.first().map_or(0, |g| g.nrows());
    let mut basis: Vec<DVector<C64>> = Vec::new();
    let mut ops: Vec<DMatrix<C64>> = Vec::new();
    let push = |m: &DMatrix<C64>, basis: &mut Vec<DVector<C64>>, ops: &mut Vec<DMatrix<C64>>| {
        let scale = m.norm().max(1e-300);
        if linalg::gram_schmidt_accept(basis, &(vec_op(m) / C64::new(scale, 0.0)), 1e-9) {
            ops.push(m.clone());
        }
    };
    push(&DMatrix::identity(n, n), &mut basis, &mut ops);
    for g in gens {
        push(g, &mut basis, &mut ops);
        push(&g.adjoint(), &mut basis, &mut ops);
    }
    let mut start = 0;
    while start < ops.len() && ops.len() < n * n {
        let end = ops.len();
        for i in 0..end {
            for j in start.max(0)..end {
                if i >= start || j >= start {
                    let p = &ops[i] * &ops[j];
                    push(&p, &mut basis, &mut ops);
                    let q = &ops[j] * &ops[i];
                    push(&q, &mut basis, &mut ops);
                }
            }
        }
        if ops.len() == end {
            break;
        }
        start = end;
    }
    ops
}

/// Images of the generators with the generated algebra.
#[derive(Debug, Clone)]
pub struct DeformedAlgebra {
    pub images: Vec<DMatrix<C64>>,
    pub generated: bool,
    pub generated_dim: usize,
    pub original_generated_dim: usize,
}

#[derive(Debug, Clone)]
pub struct DeformedTriple {
    pub algebra: DeformedAlgebra,
    pub dirac: DMatrix<C64>,
    /// ‖P_π(a)‖ per generator and block.
    pub isotypic_norms: Vec<Vec<f64>>,
    pub transcript: AxiomReport,
}

/// Deforms the generators by ρ_σ, keeps H and D, and checks the commutator identity.
pub fn deform_triple(
    host: &FiniteHopfStarAlgebra,
    pw: &PeterWeylData,
    st: &SpectralTriple,
    v: &UnitaryCorep,
    c: &DualCocycle,
    ctx: &ScalarContext,
) -> Result<DeformedTriple> {
    let eq = corep_commutation_residual(v, &st.dirac);
    if !(eq <= ctx.tolerance) {
        return Err(Error::NotInCategory(eq));
    }
    let def = Deformation::new(host, v, c, ctx)?;
    let maps = spectral_maps(host, v, pw);
    let mut transcript = AxiomReport::new();
    transcript.push("corep-commutes-with-dirac", eq, ctx.tolerance);
    let mut images = Vec::new();
    let mut comm: f64 = 0.0;
    let mut recon: f64 = 0.0;
    let mut norms = Vec::new();
    for a in &st.generators {
        let img = def.rho(a);
        let lhs = linalg::commutator(&st.dirac, &img);
        let mut rhs = DMatrix::zeros(st.hdim, st.hdim);
        for (ak, pk) in def.rho_terms(a) {
            rhs += linalg::commutator(&st.dirac, &ak) * pk;
        }
        comm = comm.max(max_diff(&lhs, &rhs));
        let mut sum = DMatrix::zeros(st.hdim, st.hdim);
        let mut row = Vec::new();
        for bi in 0..pw.blocks.len() {
            let p = maps.apply_p(bi, a);
            row.push(p.norm());
            sum += p;
        }
        recon = recon.max(max_diff(&sum, a));
        norms.push(row);
        images.push(img);
    }
    transcript.push("commutator-identity", comm, ctx.tolerance);
    transcript.push("isotypic-reconstruction", recon, ctx.tolerance);
    let n = st.hdim;
    transcript.push("rho-unital", max_diff(&def.rho(&DMatrix::identity(n, n)), &DMatrix::identity(n, n)), ctx.tolerance);
    transcript.push("dirac-unchanged", if st.dirac == st.dirac.clone() { 0.0 } else { 1.0 }, 0.0);
    let mut nc: f64 = 0.0;
    for a in &images {
        for b in &images {
            nc = nc.max(max_abs(&linalg::commutator(a, b)));
        }
    }
    transcript.note("deformed-generator-commutator", nc);
    let gen = generated_algebra(&images);
    let orig = generated_algebra(&st.generators);
    Ok(DeformedTriple {
        algebra: DeformedAlgebra { images, generated: true, generated_dim: gen.len(), original_generated_dim: orig.len() },
        dirac: st.dirac.clone(),
        isotypic_norms: norms,
        transcript,
    })
}

/// R^σ = Π_V(v)† R Π_V(v).
pub fn r_sigma(rv: &RTwistedVolume, v: &UnitaryCorep, vf: &DualFunctional) -> RTwistedVolume {
    let p = pi_u(v, vf);
    RTwistedVolume { r: p.adjoint() * &rv.r * p }
}

/// Everything checked on the twisted side of a category object: R^σ valid,
/// τ_{R^σ} preserved by ad_{V_σ}, intertwining, and both double-twist recoveries.
pub fn twisted_object_report(
    host: &FiniteHopfStarAlgebra,
    twisted: &FiniteHopfStarAlgebra,
    pw: &PeterWeylData,
    v: &UnitaryCorep,
    c: &DualCocycle,
    st: &SpectralTriple,
    rv: &RTwistedVolume,
    ctx: &ScalarContext,
) -> Result<AxiomReport> {
    let tol = ctx.tolerance;
    let f = cocycle_functionals(host, c, ctx)?;
    let rs = r_sigma(rv, v, &f.v);
    let mut rep = AxiomReport::new();
    rep.extend("r-sigma", rs.validity(Some(&st.dirac), ctx));
    rep.extend("twisted", check_volume_preservation(twisted, v, &rs, ctx));
    let def = Deformation::new(host, v, c, ctx)?;
    let maps = spectral_maps(host, v, pw);
    let basis = operator_spectral_basis(&maps, pw).operators();
    let mut inter: f64 = 0.0;
    for t in basis.iter().chain(st.generators.iter()) {
        inter = inter.max(intertwine_residual(&def, twisted, t));
    }
    rep.push("intertwining", inter, tol);
    let back = DualCocycle::new(twisted, c.sigma_inv().clone(), ctx)?;
    let fb = cocycle_functionals(twisted, &back, ctx)?;
    let rr = r_sigma(&rs, v, &fb.v);
    rep.push("double-twist-r", max_diff(&rr.r, &rv.r), tol);
    let undo = Deformation::new(twisted, v, &back, ctx)?;
    let mut dbl: f64 = 0.0;
    for t in basis.iter().chain(st.generators.iter()) {
        dbl = dbl.max(max_diff(&undo.rho(&def.rho(t)), t));
    }
    rep.push("double-twist-rho", dbl, tol);
    rep.push("double-twist-dirac", if st.dirac == st.dirac.clone() { 0.0 } else { 1.0 }, 0.0);
    Ok(rep)
}

#[derive(Debug, Clone, Serialize)]
pub struct Verdict {
    pub passed: bool,
    pub residual: f64,
    pub report: AxiomReport,
}

impl Verdict {
    fn from(report: AxiomReport) -> Self {
        Verdict { passed: report.passed(), residual: report.max_residual(), report }
    }

    fn failed(detail: String) -> Self {
        let mut report = AxiomReport::new();
        report.push(&detail, f64::MAX, 0.0);
        Verdict { passed: false, residual: f64::MAX, report }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CategoryReport {
    pub corep_validity: Verdict,
    pub dirac_equivariance: Verdict,
    pub tau_preservation: Verdict,
    pub member: bool,
}

impl CategoryReport {
    pub fn failing(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        if !self.corep_validity.passed {
            out.push("corep-validity");
        }
        if !self.dirac_equivariance.passed {
            out.push("dirac-equivariance");
        }
        if !self.tau_preservation.passed {
            out.push("tau-preservation");
        }
        out
    }
}

/// Three independent verdicts for membership of (Q, V) in the category of
/// the triple with R-twisted volume.
pub fn check_membership(
    host: &FiniteHopfStarAlgebra,
    v: &UnitaryCorep,
    st: &SpectralTriple,
    rv: &RTwistedVolume,
    ctx: &ScalarContext,
) -> CategoryReport {
    let corep_validity = match verify_corep(host, v, ctx) {
        Ok(r) => Verdict::from(r),
        Err(e) => Verdict::failed(format!("corep-validity: {e}")),
    };
    let mut eq = AxiomReport::new();
    if v.hdim() == st.hdim {
        eq.push("corep-commutes-with-dirac", corep_commutation_residual(v, &st.dirac), ctx.tolerance);
    } else {
        eq.push("hilbert-dimension-match", 1.0, 0.0);
    }
    let dirac_equivariance = Verdict::from(eq);
    let mut tau_rep = rv.validity(Some(&st.dirac), ctx);
    if corep_validity.passed && v.hdim() == rv.r.nrows() {
        tau_rep.extend("", check_volume_preservation(host, v, rv, ctx));
    } else {
        tau_rep.push("tau-preservation", f64::MAX, ctx.tolerance);
    }
    let tau_preservation = Verdict::from(tau_rep);
    let member = corep_validity.passed && dirac_equivariance.passed && tau_preservation.passed;
    CategoryReport { corep_validity, dirac_equivariance, tau_preservation, member }
}

/// Membership of (Q, V) for (D, R) and of (Q^σ, V_σ) for (D, R^σ).
pub fn check_membership_with_twist(
    host: &FiniteHopfStarAlgebra,
    twisted: &FiniteHopfStarAlgebra,
    v: &UnitaryCorep,
    c: &DualCocycle,
    st: &SpectralTriple,
    rv: &RTwistedVolume,
    ctx: &ScalarContext,
) -> Result<(CategoryReport, CategoryReport)> {
    let before = check_membership(host, v, st, rv, ctx);
    let f = cocycle_functionals(host, c, ctx)?;
    let rs = r_sigma(rv, v, &f.v);
    let after = check_membership(twisted, v, st, &rs, ctx);
    Ok((before, after))
}

/// A decomposition for callers that only hold (host, V, pw).
pub fn adapted_decomposition(host: &FiniteHopfStarAlgebra, v: &UnitaryCorep, pw: &PeterWeylData, ctx: &ScalarContext) -> Result<SpectralDecomposition> {
    decompose_corep(host, v, pw, ctx)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::peter_weyl::{decompose, haar_state};
    use crate::scalar::{c, ONE};
    use crate::twist::twist_algebra;

    fn ctx() -> ScalarContext {
        ScalarContext::default()
    }

    #[test]
    fn tau_examples() {
        assert_eq!(tau(&RTwistedVolume::identity(4), &DMatrix::identity(4, 4)), c(4.0, 0.0));
        assert_eq!(tau(&RTwistedVolume::identity(4), &linalg::matrix_unit(4, 0, 1)), ZERO);
        let r = RTwistedVolume::new(DMatrix::from_diagonal(&DVector::from_vec(vec![c(1.0, 0.0), c(2.0, 0.0)])));
        let x = DMatrix::from_diagonal(&DVector::from_vec(vec![c(3.0, 0.0), c(4.0, 0.0)]));
        assert_eq!(tau(&r, &x), c(11.0, 0.0));
    }

    #[test]
    fn identity_volume_is_preserved() {
        let g = catalog::symmetric3();
        let a = catalog::function_algebra(&g);
        let v = catalog::regular_corep_function(&g);
        assert!(check_volume_preservation(&a, &v, &RTwistedVolume::identity(6), &ctx()).passed());
    }

    #[test]
    fn block_form_extraction() {
        let g = catalog::symmetric3();
        let a = catalog::function_algebra(&g);
        let v = catalog::regular_corep_function(&g);
        let h = haar_state(&a, &ctx()).unwrap();
        let pw = decompose(&a, &h, &ctx()).unwrap();
        let sd = decompose_corep(&a, &v, &pw, &ctx()).unwrap();
        let ts = extract_block_form(&v, &RTwistedVolume::new(DMatrix::identity(6, 6) * c(2.0, 0.0)), &sd, &pw, &ctx()).unwrap();
        for (t, b) in ts.iter().zip(&sd.blocks) {
            assert!(max_diff(t, &(DMatrix::identity(b.multiplicity, b.multiplicity) * c(2.0, 0.0))) < 1e-12);
        }
        // Constructed R = F ⊗ diag(1, 3) on the two-copy block.
        let two = sd.blocks.iter().position(|b| b.dim == 2).unwrap();
        let mut rr = DMatrix::identity(6, 6);
        let o = sd.offset(two, 1);
        for j in 0..2 {
            rr[(o + j, o + j)] = c(3.0, 0.0);
        }
        let r = &sd.basis * rr * sd.basis.adjoint();
        let ts = extract_block_form(&v, &RTwistedVolume::new(r), &sd, &pw, &ctx()).unwrap();
        let expect = DMatrix::from_diagonal(&DVector::from_vec(vec![ONE, c(3.0, 0.0)]));
        assert!(max_diff(&ts[two], &expect) < 1e-12);
        // Off-block perturbation is rejected and breaks preservation.
        let mut bad = DMatrix::identity(6, 6);
        bad[(0, 1)] = c(0.1, 0.0);
        bad[(1, 0)] = c(0.1, 0.0);
        let bad = RTwistedVolume::new(bad);
        assert!(matches!(extract_block_form(&v, &bad, &sd, &pw, &ctx()), Err(Error::NotEquivariant(_))));
        assert!(check_volume_preservation(&a, &v, &bad, &ctx()).residual("tau-preservation") > 0.01);
    }

    #[test]
    fn translations_deform_to_anticommuting_pair() {
        let (host, sig) = catalog::named_pair("cg-z2z2", "cg-z2z2/bicharacter").unwrap();
        let g = catalog::abelian(&[2, 2]);
        let v = catalog::regular_corep_group(&g);
        let t = catalog::translation(&g, 1);
        let s = catalog::translation(&g, 2);
        assert!(max_abs(&linalg::commutator(&t, &s)) < 1e-15);
        let def = Deformation::new(&host, &v, &sig, &ctx()).unwrap();
        let (rt, rs) = (def.rho(&t), def.rho(&s));
        assert!(max_abs(&(&rt * &rs + &rs * &rt)) < 1e-12);
        let trivial = DualCocycle::trivial(&host);
        let id = Deformation::new(&host, &v, &trivial, &ctx()).unwrap();
        assert!(max_diff(&id.rho(&t), &t) < 1e-15);
    }

    #[test]
    fn rho_is_homomorphism_for_gauged_cocycle() {
        let (host, sig) = catalog::named_pair("c-d6", "c-d6/klein-gauged").unwrap();
        let v = catalog::regular_corep_function(&catalog::dihedral(6));
        let def = Deformation::new(&host, &v, &sig, &ctx()).unwrap();
        let mut rng = ctx().rng(9);
        let basis: Vec<DMatrix<C64>> = (0..4).map(|_| crate::random::matrix(&mut rng, 12, 12)).collect();
        let rep = rho_homomorphism_report(&def, &basis, &ctx());
        assert!(rep.passed(), "{rep}");
        let tw = twist_algebra(&host, &sig, &ctx()).unwrap();
        assert!(intertwine_residual(&def, &tw.twisted, &basis[0]) < 1e-9);
    }

    #[test]
    fn generated_algebra_of_commuting_diagonals() {
        let d = DMatrix::from_diagonal(&DVector::from_vec(vec![ONE, ZERO, ZERO]));
        assert_eq!(generated_algebra(&[d]).len(), 2);
        let e = linalg::matrix_unit(2, 0, 1);
        assert_eq!(generated_algebra(&[e]).len(), 4);
    }
}
