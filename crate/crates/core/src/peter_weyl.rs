//! Haar state, block decomposition of the convolution dual into matrix
//! algebras, matrix coefficients of irreducible corepresentations, F-matrices
//! and the modular operator of the Haar state.

use crate::error::{Error, Result};
use crate::hopf::{DualFunctional, FiniteHopfStarAlgebra};
use crate::linalg;
use crate::random;
use crate::report::AxiomReport;
use crate::scalar::{max_diff, ScalarContext, C64, ONE, ZERO};
use nalgebra::{DMatrix, DVector};
use std::cmp::Ordering;

const CLUSTER_GAP: f64 = 1e-6;
const MAX_ATTEMPTS: u64 = 5;

#[derive(Debug, Clone, PartialEq)]
pub struct HaarState {
    pub coeffs: DVector<C64>,
}

impl HaarState {
    pub fn functional(&self) -> DualFunctional {
        DualFunctional::new(self.coeffs.clone())
    }

    pub fn eval(&self, a: &DVector<C64>) -> C64 {
        self.coeffs.iter().zip(a.iter()).fold(ZERO, |s, (h, x)| s + h * x)
    }
}

/// Solves (id⊗h)Δ(a) = h(a)1 = (h⊗id)Δ(a) and normalizes h(1) = 1.
pub fn haar_state(host: &FiniteHopfStarAlgebra, ctx: &ScalarContext) -> Result<HaarState> {
    let n = host.dim();
    let one = host.unit();
    let mut sys = DMatrix::zeros(2 * n * n, n);
    for i in 0..n {
        for &(j, k, d) in host.comul_terms(i) {
            // left invariance, row (i, j): Σ_k d[i][j][k] h_k − 1_j h_i
            sys[(i * n + j, k)] += d;
            // right invariance, row (i, k): Σ_j d[i][j][k] h_j − 1_k h_i
            sys[(n * n + i * n + k, j)] += d;
        }
        for j in 0..n {
            sys[(i * n + j, i)] -= one[j];
            sys[(n * n + i * n + j, i)] -= one[j];
        }
    }
    let ns = linalg::null_space(&sys, ctx.tolerance * 0.1);
    if ns.ncols() != 1 {
        return Err(Error::NotErgodic(ns.ncols()));
    }
    let h = ns.column(0).into_owned();
    let norm = h.iter().zip(one.iter()).fold(ZERO, |s, (a, b)| s + a * b);
    if norm.norm() < 1e-12 {
        return Err(Error::NotErgodic(0));
    }
    Ok(HaarState { coeffs: h / norm })
}

/// Max residual of left and right invariance, plus |h(1) − 1|.
pub fn haar_invariance_residual(host: &FiniteHopfStarAlgebra, h: &HaarState) -> f64 {
    let n = host.dim();
    let one = host.unit();
    let mut worst = (h.eval(one) - ONE).norm();
    for i in 0..n {
        let d = host.coproduct(&host.basis(i));
        let left = &d * &h.coeffs;
        let right = d.transpose() * &h.coeffs;
        let target = one * h.coeffs[i];
        worst = worst.max(crate::scalar::max_diff_vec(&left, &target));
        worst = worst.max(crate::scalar::max_diff_vec(&right, &target));
    }
    worst
}

/// One irreducible block: matrix units of the dual and the matching matrix coefficients.
#[derive(Debug, Clone)]
pub struct IrrepBlock {
    pub dim: usize,
    pub trivial: bool,
    pub central_idempotent: DualFunctional,
    /// m_pq at index p*dim + q.
    pub units: Vec<DualFunctional>,
    /// q_ij at index i*dim + j, with ⟨q_ij, m_pq⟩ = δ_ip δ_jq.
    pub coeffs: Vec<DVector<C64>>,
    pub f: DMatrix<C64>,
    pub m: f64,
    /// x_sm at index s*dim + m.
    pub x: Vec<DVector<C64>>,
    /// ρ_sm(·) = h(x_sm ·) at index s*dim + m.
    pub rho: Vec<DualFunctional>,
}

impl IrrepBlock {
    pub fn unit(&self, p: usize, q: usize) -> &DualFunctional {
        &self.units[p * self.dim + q]
    }

    pub fn coeff(&self, i: usize, j: usize) -> &DVector<C64> {
        &self.coeffs[i * self.dim + j]
    }

    pub fn rho(&self, s: usize, m: usize) -> &DualFunctional {
        &self.rho[s * self.dim + m]
    }

    /// ρ^π = Σ_s ρ_ss.
    pub fn rho_trace(&self) -> DualFunctional {
        let mut acc = DualFunctional::zeros(self.rho[0].dim());
        for s in 0..self.dim {
            acc = acc.add(self.rho(s, s));
        }
        acc
    }
}

#[derive(Debug, Clone)]
pub struct PeterWeylData {
    pub blocks: Vec<IrrepBlock>,
    /// Number of random central elements tried before success.
    pub attempts: usize,
}

impl PeterWeylData {
    pub fn block_dims(&self) -> Vec<usize> {
        self.blocks.iter().map(|b| b.dim).collect()
    }

    /// Matrix whose columns are all q^π_ij in (π, i, j) order.
    pub fn coefficient_matrix(&self) -> DMatrix<C64> {
        let cols: Vec<DVector<C64>> = self.blocks.iter().flat_map(|b| b.coeffs.iter().cloned()).collect();
        DMatrix::from_columns(&cols)
    }
}

fn poly_idempotent(
    host: &FiniteHopfStarAlgebra,
    z: &DualFunctional,
    unit: &DualFunctional,
    roots: &[f64],
    keep: usize,
) -> Result<DualFunctional> {
    let mut p = unit.clone();
    for (t, &mu) in roots.iter().enumerate() {
        if t == keep {
            continue;
        }
        let factor = z.sub(&unit.scale(C64::new(mu, 0.0))).scale(C64::new(1.0 / (roots[keep] - mu), 0.0));
        p = host.convolve(&p, &factor)?;
    }
    Ok(p)
}

fn clustered_eigenvalues(m: &DMatrix<C64>) -> Vec<(f64, usize)> {
    let mut ev: Vec<f64> = linalg::eigenvalues(m).iter().map(|z| z.re).collect();
    ev.sort_by(f64::total_cmp);
    linalg::cluster_sorted(&ev, CLUSTER_GAP)
}

fn self_adjoint_part(host: &FiniteHopfStarAlgebra, f: &DualFunctional) -> DualFunctional {
    f.add(&host.dual_star(f)).scale(C64::new(0.5, 0.0))
}

fn coeff_cmp(a: &DualFunctional, b: &DualFunctional) -> Ordering {
    for (x, y) in a.coeffs.iter().zip(b.coeffs.iter()) {
        for (u, v) in [(x.re, y.re), (x.im, y.im)] {
            if (u - v).abs() > 1e-9 {
                return u.total_cmp(&v);
            }
        }
    }
    Ordering::Equal
}

struct RawBlock {
    dim: usize,
    idem: DualFunctional,
    units: Vec<DualFunctional>,
}

fn try_decompose(host: &FiniteHopfStarAlgebra, rng: &mut rand_chacha::ChaCha8Rng) -> Result<Option<Vec<RawBlock>>> {
    let n = host.dim();
    let eps = host.counit_functional();
    // center: Σ_j (d[i][j][k] − d[i][k][j]) φ_j = 0
    let mut sys = DMatrix::zeros(n * n, n);
    for i in 0..n {
        for &(j, k, d) in host.comul_terms(i) {
            sys[(i * n + k, j)] += d;
            sys[(i * n + j, k)] -= d;
        }
    }
    let center = linalg::null_space(&sys, 1e-10);
    let r = random::vector(rng, center.ncols());
    let z = self_adjoint_part(host, &DualFunctional::new(&center * r));
    let clusters = clustered_eigenvalues(&host.left_convolution_matrix(&z));
    let roots: Vec<f64> = clusters.iter().map(|c| c.0).collect();
    let mut raw = Vec::new();
    for (bi, &(_, count)) in clusters.iter().enumerate() {
        let p = poly_idempotent(host, &z, &eps, &roots, bi)?;
        let lp = host.left_convolution_matrix(&p);
        let tr = lp.trace().re;
        let d = tr.round().max(0.0).sqrt().round() as usize;
        if (tr - (d * d) as f64).abs() > 1e-6 || d * d != count || d == 0 {
            return Ok(None);
        }
        let sub = linalg::range_basis(&lp, 1e-8);
        if sub.ncols() != d * d {
            return Ok(None);
        }
        let g = random::functional(rng, n);
        let y = host.convolve(&host.convolve(&p, &self_adjoint_part(host, &g))?, &p)?;
        let restricted = sub.adjoint() * host.left_convolution_matrix(&y) * &sub;
        let inner = clustered_eigenvalues(&restricted);
        if inner.len() != d || inner.iter().any(|c| c.1 != d) {
            return Ok(None);
        }
        let mus: Vec<f64> = inner.iter().map(|c| c.0).collect();
        let mut minimal = Vec::with_capacity(d);
        for s in 0..d {
            minimal.push(poly_idempotent(host, &y, &p, &mus, s)?);
        }
        // Orbit construction from the first minimal projection.
        let mut first_row = vec![minimal[0].clone()];
        for s in 1..d {
            let mut best: Option<(f64, DualFunctional)> = None;
            for j in 0..n {
                let delta = DualFunctional::new(crate::scalar::basis_vec(n, j));
                let x = host.convolve(&host.convolve(&minimal[0], &delta)?, &minimal[s])?;
                let nrm = x.coeffs.norm();
                if best.as_ref().map_or(true, |b| nrm > b.0 + 1e-12) {
                    best = Some((nrm, x));
                }
            }
            let (nrm, x) = best.expect("n ≥ 1");
            if nrm < 1e-8 {
                return Ok(None);
            }
            let xx = host.convolve(&x, &host.dual_star(&x))?;
            let e1 = &minimal[0].coeffs;
            let c = (e1.dotc(&xx.coeffs) / e1.dotc(e1)).re;
            if c <= 0.0 || xx.max_diff(&minimal[0].scale(C64::new(c, 0.0))) > 1e-8 * c.max(1.0) {
                return Ok(None);
            }
            first_row.push(x.scale(C64::new(1.0 / c.sqrt(), 0.0)));
        }
        let column: Vec<DualFunctional> = first_row.iter().map(|m| host.dual_star(m)).collect();
        let mut units = Vec::with_capacity(d * d);
        for s in 0..d {
            for t in 0..d {
                units.push(if s == 0 {
                    first_row[t].clone()
                } else {
                    host.convolve(&column[s], &first_row[t])?
                });
            }
        }
        raw.push(RawBlock { dim: d, idem: p, units });
    }
    if raw.iter().map(|b| b.dim * b.dim).sum::<usize>() != n {
        return Ok(None);
    }
    Ok(Some(raw))
}

/// Artin–Wedderburn decomposition of the convolution dual, matrix coefficients,
/// F-matrices and ρ-functionals; every invariant is checked before returning.
pub fn decompose(host: &FiniteHopfStarAlgebra, h: &HaarState, ctx: &ScalarContext) -> Result<PeterWeylData> {
    let n = host.dim();
    let hf = h.functional();
    let mut found = None;
    for attempt in 0..MAX_ATTEMPTS {
        let mut rng = ctx.rng(0x5057_0000 + attempt);
        if let Some(raw) = try_decompose(host, &mut rng)? {
            found = Some((raw, attempt as usize + 1));
            break;
        }
    }
    let (mut raw, attempts) =
        found.ok_or_else(|| Error::Decomposition(format!("no consistent block structure after {MAX_ATTEMPTS} attempts")))?;
    let is_trivial = |b: &RawBlock| b.dim == 1 && b.idem.max_diff(&hf) < 1e-6;
    raw.sort_by(|a, b| {
        is_trivial(b)
            .cmp(&is_trivial(a))
            .then(a.dim.cmp(&b.dim))
            .then_with(|| coeff_cmp(&a.idem, &b.idem))
    });

    let cols: Vec<DVector<C64>> = raw.iter().flat_map(|b| b.units.iter().map(|u| u.coeffs.clone())).collect();
    let units_mat = DMatrix::from_columns(&cols);
    let q = linalg::inverse(&units_mat.transpose())
        .ok_or_else(|| Error::Decomposition("matrix units do not span the dual".into()))?;

    let mut blocks = Vec::new();
    let mut col = 0;
    for b in raw {
        let d = b.dim;
        let coeffs: Vec<DVector<C64>> = (0..d * d).map(|k| q.column(col + k).into_owned()).collect();
        col += d * d;
        // G_jl = (1/d) Σ_i h(q_ij q_il*)
        let g = DMatrix::from_fn(d, d, |j, l| {
            let mut s = ZERO;
            for i in 0..d {
                s += h.eval(&host.product(&coeffs[i * d + j], &host.star(&coeffs[i * d + l])));
            }
            s / C64::new(d as f64, 0.0)
        });
        let ginv = linalg::inverse(&g).ok_or_else(|| Error::Decomposition("singular Schur Gram matrix".into()))?;
        let scale = (ginv.trace().re / g.trace().re).sqrt();
        let f = &g * C64::new(scale, 0.0);
        let m = scale * g.trace().re;
        let mut x = Vec::with_capacity(d * d);
        let mut rho = Vec::with_capacity(d * d);
        for s in 0..d {
            for mm in 0..d {
                let mut xs = DVector::zeros(n);
                for k in 0..d {
                    xs += host.star(&coeffs[k * d + mm]) * (f[(k, s)] * m);
                }
                let r = DVector::from_fn(n, |a, _| h.eval(&host.product(&xs, &host.basis(a))));
                x.push(xs);
                rho.push(DualFunctional::new(r));
            }
        }
        blocks.push(IrrepBlock {
            dim: d,
            trivial: d == 1 && b.idem.max_diff(&hf) < 1e-6,
            central_idempotent: b.idem,
            units: b.units,
            coeffs,
            f,
            m,
            x,
            rho,
        });
    }
    let pw = PeterWeylData { blocks, attempts };
    let rep = verify_peter_weyl(host, h, &pw, ctx);
    if !rep.passed() {
        return Err(Error::Decomposition(format!("invariants fail: {}", rep.failing().join(", "))));
    }
    Ok(pw)
}

/// All invariants of the decomposition, as residuals.
pub fn verify_peter_weyl(host: &FiniteHopfStarAlgebra, h: &HaarState, pw: &PeterWeylData, ctx: &ScalarContext) -> AxiomReport {
    let n = host.dim();
    let tol = ctx.tolerance;
    let mut rep = AxiomReport::new();
    let total: usize = pw.blocks.iter().map(|b| b.dim * b.dim).sum();
    rep.push("dimension-count", (total as f64 - n as f64).abs(), 0.0);

    let mut units_res: f64 = 0.0;
    let mut star_res: f64 = 0.0;
    let mut pair_res: f64 = 0.0;
    let mut corep_res: f64 = 0.0;
    for (bi, b) in pw.blocks.iter().enumerate() {
        let d = b.dim;
        for p in 0..d {
            for q in 0..d {
                star_res = star_res.max(host.dual_star(b.unit(p, q)).max_diff(b.unit(q, p)));
                for r in 0..d {
                    for s in 0..d {
                        let prod = host.convolve(b.unit(p, q), b.unit(r, s)).expect("same host");
                        let expect = if q == r { b.unit(p, s).clone() } else { DualFunctional::zeros(n) };
                        units_res = units_res.max(prod.max_diff(&expect));
                    }
                }
                let dq = host.coproduct(b.coeff(p, q));
                let mut rhs = DMatrix::zeros(n, n);
                for k in 0..d {
                    rhs += b.coeff(p, k) * b.coeff(k, q).transpose();
                }
                corep_res = corep_res.max(max_diff(&dq, &rhs));
            }
        }
        for (bj, c) in pw.blocks.iter().enumerate() {
            for i in 0..d {
                for j in 0..d {
                    for p in 0..c.dim {
                        for q in 0..c.dim {
                            let expect = if bi == bj && i == p && j == q { ONE } else { ZERO };
                            pair_res = pair_res.max((host.pair(b.coeff(i, j), c.unit(p, q)) - expect).norm());
                        }
                    }
                }
            }
        }
    }
    rep.push("matrix-units", units_res, tol);
    rep.push("matrix-units-star", star_res, tol);
    rep.push("pairing-duality", pair_res, tol);
    rep.push("coefficient-coproduct", corep_res, tol);

    let qm = pw.coefficient_matrix();
    let sv = qm.clone().singular_values();
    let smin = sv.iter().cloned().fold(f64::INFINITY, f64::min);
    rep.push_lower_bound("coefficients-span", smin, 1e-8);

    let mut schur: f64 = 0.0;
    let mut within: f64 = 0.0;
    let mut f_pos: f64 = f64::INFINITY;
    let mut f_trace: f64 = 0.0;
    let mut bio: f64 = 0.0;
    for (bi, b) in pw.blocks.iter().enumerate() {
        let d = b.dim;
        let (fe, _) = linalg::hermitian_eigen(&b.f);
        f_pos = f_pos.min(fe[0]);
        let finv = linalg::inverse(&b.f).unwrap_or_else(|| DMatrix::zeros(d, d));
        f_trace = f_trace.max((b.f.trace().re - b.m).abs()).max((finv.trace().re - b.m).abs());
        for (bj, c) in pw.blocks.iter().enumerate() {
            for i in 0..d {
                for j in 0..d {
                    for k in 0..c.dim {
                        for l in 0..c.dim {
                            let v = h.eval(&host.product(b.coeff(i, j), &host.star(c.coeff(k, l))));
                            if bi != bj {
                                schur = schur.max(v.norm());
                            } else {
                                let expect = if i == k { b.f[(j, l)] / C64::new(b.m, 0.0) } else { ZERO };
                                within = within.max((v - expect).norm());
                            }
                        }
                    }
                }
            }
            for s in 0..d {
                for m in 0..d {
                    for a in 0..c.dim {
                        for bb in 0..c.dim {
                            let expect = if bi == bj && s == a && m == bb { ONE } else { ZERO };
                            bio = bio.max((b.rho(s, m).eval(c.coeff(a, bb)) - expect).norm());
                        }
                    }
                }
            }
        }
    }
    rep.push("schur-orthogonality", schur, tol);
    rep.push("schur-within-block", within, tol);
    rep.push_lower_bound("f-positive", f_pos, 0.0);
    rep.push("f-trace", f_trace, tol);
    rep.push("rho-biorthogonality", bio, tol);
    let mut rho_units: f64 = 0.0;
    for b in &pw.blocks {
        for k in 0..b.dim * b.dim {
            rho_units = rho_units.max(b.rho[k].max_diff(&b.units[k]));
        }
    }
    rep.push("rho-equals-matrix-units", rho_units, tol);
    rep.push("haar-invariance", haar_invariance_residual(host, h), tol);
    rep
}

/// Per block: the family (ρ_sm) and ρ^π = Σ_s ρ_ss.
pub fn rho_functionals(pw: &PeterWeylData) -> Vec<(Vec<DualFunctional>, DualFunctional)> {
    pw.blocks.iter().map(|b| (b.rho.clone(), b.rho_trace())).collect()
}

/// Φ = S*S on L²(h) in the basis e_i, with Gram matrix G[i][j] = h(e_i* e_j).
#[derive(Debug, Clone)]
pub struct ModularData {
    pub gram: DMatrix<C64>,
    pub phi: DMatrix<C64>,
}

impl ModularData {
    /// Φ^{it} as a matrix on coefficient vectors.
    pub fn phi_power(&self, t: f64) -> DMatrix<C64> {
        let g_half = linalg::hermitian_function(&self.gram, |x| C64::new(x.sqrt(), 0.0));
        let g_mhalf = linalg::hermitian_function(&self.gram, |x| C64::new(1.0 / x.sqrt(), 0.0));
        let sym = &g_half * &self.phi * &g_mhalf;
        let p = linalg::hermitian_function(&sym, |x| C64::new(0.0, t * x.ln()).exp());
        g_mhalf * p * g_half
    }

    /// Matrix of Θ_t(a) = Φ^{it} L_a Φ^{-it}, with L_a left multiplication by a.
    pub fn theta(&self, host: &FiniteHopfStarAlgebra, a: &DVector<C64>, t: f64) -> DMatrix<C64> {
        let n = host.dim();
        let la = DMatrix::from_fn(n, n, |_, _| ZERO);
        let mut la = la;
        for j in 0..n {
            la.set_column(j, &host.product(a, &host.basis(j)));
        }
        self.phi_power(t) * la * self.phi_power(-t)
    }
}

pub fn modular_operator(host: &FiniteHopfStarAlgebra, h: &HaarState, ctx: &ScalarContext) -> Result<ModularData> {
    let n = host.dim();
    let e: Vec<DVector<C64>> = (0..n).map(|i| host.basis(i)).collect();
    let es: Vec<DVector<C64>> = e.iter().map(|x| host.star(x)).collect();
    let gram = DMatrix::from_fn(n, n, |i, j| h.eval(&host.product(&es[i], &e[j])));
    let hm = DMatrix::from_fn(n, n, |i, j| h.eval(&host.product(&e[j], &es[i])));
    let (gev, _) = linalg::hermitian_eigen(&gram);
    if gev[0] <= ctx.tolerance {
        return Err(Error::NotFaithful(gev[0]));
    }
    let phi = linalg::inverse(&gram).ok_or(Error::NotFaithful(gev[0]))? * hm;
    Ok(ModularData { gram, phi })
}

/// Φ restricted to span{q^π_ij : j} for each (π, i): invariance residual and
/// distance of the restricted matrix from F_π.
pub fn verify_modular(md: &ModularData, pw: &PeterWeylData, ctx: &ScalarContext) -> AxiomReport {
    let mut inv: f64 = 0.0;
    let mut fres: f64 = 0.0;
    for b in &pw.blocks {
        let d = b.dim;
        for i in 0..d {
            let cols: Vec<DVector<C64>> = (0..d).map(|j| b.coeff(i, j).clone()).collect();
            let qi = DMatrix::from_columns(&cols);
            let img = &md.phi * &qi;
            let pinv = qi.clone().pseudo_inverse(1e-12).expect("pseudo-inverse");
            let x = &pinv * &img;
            inv = inv.max(max_diff(&(&qi * &x), &img));
            fres = fres.max(max_diff(&x, &b.f));
        }
    }
    let mut rep = AxiomReport::new();
    rep.push("phi-preserves-spectral-subspaces", inv, ctx.tolerance);
    rep.push("phi-restricts-to-f", fres, ctx.tolerance);
    rep
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn ctx() -> ScalarContext {
        ScalarContext::default()
    }

    #[test]
    fn haar_on_function_algebra_is_uniform() {
        let a = catalog::function_algebra(&catalog::symmetric3());
        let h = haar_state(&a, &ctx()).unwrap();
        for i in 0..6 {
            assert!((h.coeffs[i] - C64::new(1.0 / 6.0, 0.0)).norm() < 1e-12);
        }
    }

    #[test]
    fn haar_on_group_algebra_is_identity_coefficient() {
        let g = catalog::dihedral(4);
        let a = catalog::group_algebra(&g);
        let h = haar_state(&a, &ctx()).unwrap();
        for x in 0..8 {
            let expect = if x == g.identity() { 1.0 } else { 0.0 };
            assert!((h.coeffs[x] - C64::new(expect, 0.0)).norm() < 1e-12);
        }
    }

    #[test]
    fn haar_on_trivial_algebra_is_counit() {
        let a = catalog::function_algebra(&catalog::trivial_group());
        let h = haar_state(&a, &ctx()).unwrap();
        assert!(h.functional().max_diff(&a.counit_functional()) < 1e-14);
    }

    #[test]
    fn algebra_without_unique_invariant_state_is_not_ergodic() {
        // Two copies of the trivial algebra with unit (1,1) and Δ(e_i) = e_i⊗e_i:
        // invariance forces h = 0.
        let mut t = catalog::group_algebra(&catalog::cyclic(2)).into_tensors();
        t.mul = crate::tensor::Tensor3::cube(2);
        t.mul.set(0, 0, 0, ONE);
        t.mul.set(1, 1, 1, ONE);
        t.unit = DVector::from_vec(vec![ONE, ONE]);
        let a = FiniteHopfStarAlgebra::new(t).unwrap();
        assert!(matches!(haar_state(&a, &ctx()), Err(Error::NotErgodic(0))));
    }

    #[test]
    fn blocks_of_c_z3_are_three_characters() {
        let a = catalog::function_algebra(&catalog::cyclic(3));
        let h = haar_state(&a, &ctx()).unwrap();
        let pw = decompose(&a, &h, &ctx()).unwrap();
        assert_eq!(pw.block_dims(), vec![1, 1, 1]);
        assert!(pw.blocks[0].trivial);
        // Characters of Z3 as coefficient vectors of C(Z3): q = (χ(x))_x.
        for b in &pw.blocks[1..] {
            let q = b.coeff(0, 0);
            let w = q[1] / q[0];
            assert!((w.powu(3) - ONE).norm() < 1e-12 && (w - ONE).norm() > 0.5);
            assert!((q[0] - ONE).norm() < 1e-12);
        }
    }

    #[test]
    fn blocks_of_c_s3_have_sizes_1_1_2() {
        let a = catalog::function_algebra(&catalog::symmetric3());
        let h = haar_state(&a, &ctx()).unwrap();
        let pw = decompose(&a, &h, &ctx()).unwrap();
        assert_eq!(pw.block_dims(), vec![1, 1, 2]);
        for b in &pw.blocks {
            assert!(max_diff(&b.f, &DMatrix::identity(b.dim, b.dim)) < 1e-9);
            assert!((b.m - b.dim as f64).abs() < 1e-9);
        }
    }

    #[test]
    fn rho_functionals_behave_as_matrix_units() {
        let a = catalog::group_algebra(&catalog::dihedral(4));
        let h = haar_state(&a, &ctx()).unwrap();
        let pw = decompose(&a, &h, &ctx()).unwrap();
        let fams = rho_functionals(&pw);
        for (bi, b) in pw.blocks.iter().enumerate() {
            let (_, total) = &fams[bi];
            let expect = if b.trivial { ONE } else { ZERO };
            assert!((total.eval(a.unit()) - expect).norm() < 1e-12);
            for (bj, c) in pw.blocks.iter().enumerate() {
                for (p, q, r, s) in [(0, 0, 0, 0), (0, b.dim - 1, c.dim - 1, 0)] {
                    let prod = a.convolve(b.rho(p, q), c.rho(r, s)).unwrap();
                    let expect = if bi == bj && q == r { b.rho(p, s).clone() } else { DualFunctional::zeros(8) };
                    assert!(prod.max_diff(&expect) < 1e-12);
                }
            }
        }
    }

    #[test]
    fn modular_operator_trivial_for_kac() {
        let a = catalog::function_algebra(&catalog::symmetric3());
        let h = haar_state(&a, &ctx()).unwrap();
        let pw = decompose(&a, &h, &ctx()).unwrap();
        let md = modular_operator(&a, &h, &ctx()).unwrap();
        assert!(max_diff(&md.phi, &DMatrix::identity(6, 6)) < 1e-12);
        assert!(verify_modular(&md, &pw, &ctx()).passed());
        let x = a.basis(2);
        let la = md.theta(&a, &x, 0.0);
        assert!(max_diff(&md.theta(&a, &x, 1.7), &la) < 1e-12);
    }

    #[test]
    fn decomposition_is_deterministic_under_seed() {
        let a = catalog::group_algebra(&catalog::dihedral(4));
        let h = haar_state(&a, &ctx()).unwrap();
        let p1 = decompose(&a, &h, &ctx()).unwrap();
        let p2 = decompose(&a, &h, &ctx()).unwrap();
        assert_eq!(p1.coefficient_matrix(), p2.coefficient_matrix());
    }
}
