//! Unitary corepresentations, the representation Π_U of the dual, the adjoint
//! coaction ad_V on operators, spectral projections and decomposition into
//! irreducibles.

use crate::error::{Error, Result};
use crate::hopf::{DualFunctional, FiniteHopfStarAlgebra};
use crate::linalg;
use crate::peter_weyl::PeterWeylData;
use crate::report::AxiomReport;
use crate::scalar::{max_diff, ScalarContext, C64, ONE, ZERO};
use nalgebra::{DMatrix, DVector};

/// An element of M_N ⊗ A, stored as N² rows (row-major (i, j)) of algebra
/// coefficient vectors.
#[derive(Debug, Clone, PartialEq)]
pub struct AlgebraMatrix {
    hdim: usize,
    coeffs: DMatrix<C64>,
}

impl AlgebraMatrix {
    pub fn zeros(hdim: usize, n: usize) -> Self {
        AlgebraMatrix { hdim, coeffs: DMatrix::zeros(hdim * hdim, n) }
    }

    pub fn from_coeffs(hdim: usize, coeffs: DMatrix<C64>) -> Self {
        assert_eq!(coeffs.nrows(), hdim * hdim);
        AlgebraMatrix { hdim, coeffs }
    }

    pub fn from_fn(hdim: usize, n: usize, f: impl Fn(usize, usize) -> DVector<C64>) -> Self {
        let mut m = Self::zeros(hdim, n);
        for i in 0..hdim {
            for j in 0..hdim {
                m.set_entry(i, j, &f(i, j));
            }
        }
        m
    }

    /// Σ_k slices[k] ⊗ e_k.
    pub fn from_slices(slices: &[DMatrix<C64>]) -> Self {
        let hdim = slices.first().map_or(0, |s| s.nrows());
        let mut coeffs = DMatrix::zeros(hdim * hdim, slices.len());
        for (k, s) in slices.iter().enumerate() {
            for i in 0..hdim {
                for j in 0..hdim {
                    coeffs[(i * hdim + j, k)] = s[(i, j)];
                }
            }
        }
        AlgebraMatrix { hdim, coeffs }
    }

    /// T ⊗ 1.
    pub fn scalar(t: &DMatrix<C64>, unit: &DVector<C64>) -> Self {
        let n = unit.len();
        let hdim = t.nrows();
        let mut m = Self::zeros(hdim, n);
        for i in 0..hdim {
            for j in 0..hdim {
                m.set_entry(i, j, &(unit * t[(i, j)]));
            }
        }
        m
    }

    pub fn hdim(&self) -> usize {
        self.hdim
    }

    pub fn host_dim(&self) -> usize {
        self.coeffs.ncols()
    }

    pub fn coeffs(&self) -> &DMatrix<C64> {
        &self.coeffs
    }

    pub fn entry(&self, i: usize, j: usize) -> DVector<C64> {
        self.coeffs.row(i * self.hdim + j).transpose()
    }

    pub fn set_entry(&mut self, i: usize, j: usize, v: &DVector<C64>) {
        self.coeffs.set_row(i * self.hdim + j, &v.transpose());
    }

    /// The operator A_k in Σ_k A_k ⊗ e_k.
    pub fn slice(&self, k: usize) -> DMatrix<C64> {
        let n = self.hdim;
        DMatrix::from_fn(n, n, |i, j| self.coeffs[(i * n + j, k)])
    }

    pub fn slices(&self) -> Vec<DMatrix<C64>> {
        (0..self.host_dim()).map(|k| self.slice(k)).collect()
    }

    /// (id ⊗ φ)(X).
    pub fn apply(&self, phi: &DualFunctional) -> DMatrix<C64> {
        let v = &self.coeffs * &phi.coeffs;
        let n = self.hdim;
        DMatrix::from_fn(n, n, |i, j| v[i * n + j])
    }

    /// Product in M_N(A).
    pub fn mul(&self, host: &FiniteHopfStarAlgebra, other: &AlgebraMatrix) -> AlgebraMatrix {
        let n = self.hdim;
        let mut out = Self::zeros(n, host.dim());
        let left: Vec<DVector<C64>> = (0..n * n).map(|r| self.coeffs.row(r).transpose()).collect();
        let right: Vec<DVector<C64>> = (0..n * n).map(|r| other.coeffs.row(r).transpose()).collect();
        for i in 0..n {
            for j in 0..n {
                let mut acc = DVector::zeros(host.dim());
                for k in 0..n {
                    let a = &left[i * n + k];
                    let b = &right[k * n + j];
                    if a.iter().all(|z| *z == ZERO) || b.iter().all(|z| *z == ZERO) {
                        continue;
                    }
                    acc += host.product(a, b);
                }
                out.set_entry(i, j, &acc);
            }
        }
        out
    }

    /// (X*)_ij = (X_ji)*.
    pub fn adjoint(&self, host: &FiniteHopfStarAlgebra) -> AlgebraMatrix {
        let n = self.hdim;
        Self::from_fn(n, host.dim(), |i, j| host.star(&self.entry(j, i)))
    }

    pub fn add(&self, other: &AlgebraMatrix) -> AlgebraMatrix {
        AlgebraMatrix { hdim: self.hdim, coeffs: &self.coeffs + &other.coeffs }
    }

    pub fn max_diff(&self, other: &AlgebraMatrix) -> f64 {
        max_diff(&self.coeffs, &other.coeffs)
    }
}

/// U = Σ e_ij ⊗ u_ij on ℂ^N.
#[derive(Debug, Clone, PartialEq)]
pub struct UnitaryCorep {
    u: AlgebraMatrix,
}

impl UnitaryCorep {
    pub fn new(u: AlgebraMatrix) -> Self {
        UnitaryCorep { u }
    }

    pub fn from_fn(hdim: usize, n: usize, f: impl Fn(usize, usize) -> DVector<C64>) -> Self {
        UnitaryCorep { u: AlgebraMatrix::from_fn(hdim, n, f) }
    }

    /// u_ij = δ_ij 1.
    pub fn trivial(host: &FiniteHopfStarAlgebra, hdim: usize) -> Self {
        UnitaryCorep { u: AlgebraMatrix::scalar(&DMatrix::identity(hdim, hdim), host.unit()) }
    }

    pub fn hdim(&self) -> usize {
        self.u.hdim()
    }

    pub fn host_dim(&self) -> usize {
        self.u.host_dim()
    }

    pub fn entry(&self, i: usize, j: usize) -> DVector<C64> {
        self.u.entry(i, j)
    }

    pub fn matrix(&self) -> &AlgebraMatrix {
        &self.u
    }

    /// B U B† for a unitary B on ℂ^N.
    pub fn conjugate_by(&self, b: &DMatrix<C64>) -> UnitaryCorep {
        let n = self.hdim();
        let slices: Vec<DMatrix<C64>> = self.u.slices().iter().map(|s| b * s * b.adjoint()).collect();
        if slices.is_empty() {
            return UnitaryCorep { u: AlgebraMatrix::zeros(n, 0) };
        }
        UnitaryCorep { u: AlgebraMatrix::from_slices(&slices) }
    }

    pub fn direct_sum(&self, other: &UnitaryCorep) -> UnitaryCorep {
        let (a, b) = (self.hdim(), other.hdim());
        let n = self.host_dim();
        UnitaryCorep::from_fn(a + b, n, |i, j| {
            if i < a && j < a {
                self.entry(i, j)
            } else if i >= a && j >= a {
                other.entry(i - a, j - a)
            } else {
                DVector::zeros(n)
            }
        })
    }
}

/// Corepresentation law Δ(u_ij) = Σ_k u_ik ⊗ u_kj and two-sided unitarity.
pub fn verify_corep(host: &FiniteHopfStarAlgebra, u: &UnitaryCorep, ctx: &ScalarContext) -> Result<AxiomReport> {
    if u.host_dim() != host.dim() {
        return Err(Error::Dimension(format!(
            "corepresentation entries have length {}, algebra dimension is {}",
            u.host_dim(),
            host.dim()
        )));
    }
    let n = u.hdim();
    let tol = ctx.tolerance;
    let mut law: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            let lhs = host.coproduct(&u.entry(i, j));
            let mut rhs = DMatrix::zeros(host.dim(), host.dim());
            for k in 0..n {
                rhs += u.entry(i, k) * u.entry(k, j).transpose();
            }
            law = law.max(max_diff(&lhs, &rhs));
        }
    }
    let id = AlgebraMatrix::scalar(&DMatrix::identity(n, n), host.unit());
    let us = u.matrix().adjoint(host);
    let mut rep = AxiomReport::new();
    rep.push("corep-law", law, tol);
    rep.push("unitarity-left", u.matrix().mul(host, &us).max_diff(&id), tol);
    rep.push("unitarity-right", us.mul(host, u.matrix()).max_diff(&id), tol);
    Ok(rep)
}

/// Π_U(ω) = (id ⊗ ω)U.
pub fn pi_u(u: &UnitaryCorep, omega: &DualFunctional) -> DMatrix<C64> {
    u.matrix().apply(omega)
}

/// ad_V(T) = V (T ⊗ 1) V*.
pub fn ad_v(host: &FiniteHopfStarAlgebra, v: &UnitaryCorep, t: &DMatrix<C64>) -> AlgebraMatrix {
    let n = v.hdim();
    let vs = v.matrix().adjoint(host);
    let mut left = AlgebraMatrix::zeros(n, host.dim());
    // (T ⊗ 1)·V* has entries Σ_l T_kl (V*)_lj.
    for k in 0..n {
        for j in 0..n {
            let mut acc = DVector::zeros(host.dim());
            for l in 0..n {
                if t[(k, l)] != ZERO {
                    acc += vs.entry(l, j) * t[(k, l)];
                }
            }
            left.set_entry(k, j, &acc);
        }
    }
    v.matrix().mul(host, &left)
}

/// All ad_V(E_kl) at once, as an (N²·N²)×n coefficient matrix: row block k*N+l
/// holds ad_V(E_kl).
fn ad_of_matrix_units(host: &FiniteHopfStarAlgebra, v: &UnitaryCorep) -> Vec<AlgebraMatrix> {
    let n = v.hdim();
    let vs = v.matrix().adjoint(host);
    let mut out = Vec::with_capacity(n * n);
    for k in 0..n {
        for l in 0..n {
            // ad_V(E_kl)_ij = v_ik (v*)_lj
            out.push(AlgebraMatrix::from_fn(n, host.dim(), |i, j| host.product(&v.entry(i, k), &vs.entry(l, j))));
        }
    }
    out
}

fn vec_op(m: &DMatrix<C64>) -> DVector<C64> {
    let n = m.nrows();
    DVector::from_fn(n * n, |r, _| m[(r / n, r % n)])
}

fn unvec(v: &DVector<C64>, n: usize) -> DMatrix<C64> {
    DMatrix::from_fn(n, n, |i, j| v[i * n + j])
}

/// Superoperator matrices (acting on row-major vec(T)) for P_π and E^π_sm.
#[derive(Debug, Clone)]
pub struct SpectralMaps {
    pub hdim: usize,
    /// P_π per block.
    pub p: Vec<DMatrix<C64>>,
    /// E^π_sm per block at index s*d + m.
    pub e: Vec<Vec<DMatrix<C64>>>,
}

impl SpectralMaps {
    pub fn apply_p(&self, block: usize, t: &DMatrix<C64>) -> DMatrix<C64> {
        unvec(&(&self.p[block] * vec_op(t)), self.hdim)
    }

    pub fn apply_e(&self, block: usize, s: usize, m: usize, d: usize, t: &DMatrix<C64>) -> DMatrix<C64> {
        unvec(&(&self.e[block][s * d + m] * vec_op(t)), self.hdim)
    }
}

pub fn spectral_maps(host: &FiniteHopfStarAlgebra, v: &UnitaryCorep, pw: &PeterWeylData) -> SpectralMaps {
    let n = v.hdim();
    let units = ad_of_matrix_units(host, v);
    let mut funcs: Vec<DVector<C64>> = Vec::new();
    for b in &pw.blocks {
        funcs.push(b.rho_trace().coeffs);
        funcs.extend(b.rho.iter().map(|r| r.coeffs.clone()));
    }
    let phi = DMatrix::from_columns(&funcs);
    let mut images: Vec<DMatrix<C64>> = (0..funcs.len()).map(|_| DMatrix::zeros(n * n, n * n)).collect();
    for (col, a) in units.iter().enumerate() {
        let vals = a.coeffs() * &phi;
        for (f, img) in images.iter_mut().enumerate() {
            img.set_column(col, &vals.column(f));
        }
    }
    let mut it = images.into_iter();
    let mut p = Vec::new();
    let mut e = Vec::new();
    for b in &pw.blocks {
        p.push(it.next().expect("projection"));
        e.push((0..b.dim * b.dim).map(|_| it.next().expect("refined map")).collect());
    }
    SpectralMaps { hdim: n, p, e }
}

/// Σ P_π = id, idempotence, orthogonality, and the composition law of the
/// E maps derived from coassociativity: E^π_sm E^π'_ij = δ_ππ' δ_mi E^π_sj.
/// The index pattern δ_mi E^π_is is measured and recorded as a note.
pub fn verify_spectral_maps(maps: &SpectralMaps, pw: &PeterWeylData, ctx: &ScalarContext) -> AxiomReport {
    let nn = maps.hdim * maps.hdim;
    let tol = ctx.tolerance;
    let zero = DMatrix::<C64>::zeros(nn, nn);
    let mut sum = zero.clone();
    let mut idem: f64 = 0.0;
    let mut orth: f64 = 0.0;
    for (a, pa) in maps.p.iter().enumerate() {
        sum += pa;
        for (b, pb) in maps.p.iter().enumerate() {
            let prod = pa * pb;
            if a == b {
                idem = idem.max(max_diff(&prod, pa));
            } else {
                orth = orth.max(max_diff(&prod, &zero));
            }
        }
    }
    let mut derived: f64 = 0.0;
    let mut literal: f64 = 0.0;
    for (a, ea) in maps.e.iter().enumerate() {
        let d = pw.blocks[a].dim;
        for (b, eb) in maps.e.iter().enumerate() {
            let d2 = pw.blocks[b].dim;
            for s in 0..d {
                for m in 0..d {
                    for i in 0..d2 {
                        for j in 0..d2 {
                            let prod = &ea[s * d + m] * &eb[i * d2 + j];
                            let same = a == b && m == i;
                            let expect = if same { &ea[s * d + j] } else { &zero };
                            derived = derived.max(max_diff(&prod, expect));
                            let lit = if same { &ea[i * d + s] } else { &zero };
                            literal = literal.max(max_diff(&prod, lit));
                        }
                    }
                }
            }
        }
    }
    let mut rep = AxiomReport::new();
    rep.push("projections-sum-to-identity", max_diff(&sum, &DMatrix::identity(nn, nn)), tol);
    rep.push("projection-idempotent", idem, tol);
    rep.push("projection-orthogonal", orth, tol);
    rep.push("e-composition", derived, tol);
    rep.note("e-composition-literal-index-pattern", literal);
    let ranks: usize = maps.p.iter().map(|p| linalg::rank(p, 1e-9)).sum();
    rep.push("image-dimension-count", (ranks as f64 - nn as f64).abs(), 0.0);
    rep
}

/// One isotypic component: e^π_ij at index i*d + j.
#[derive(Debug, Clone)]
pub struct CorepBlock {
    pub irrep: usize,
    pub dim: usize,
    pub multiplicity: usize,
    pub vectors: Vec<DVector<C64>>,
}

impl CorepBlock {
    pub fn vector(&self, i: usize, j: usize) -> &DVector<C64> {
        &self.vectors[i * self.dim + j]
    }
}

#[derive(Debug, Clone)]
pub struct SpectralDecomposition {
    pub blocks: Vec<CorepBlock>,
    /// Adapted unitary basis, columns in (π, i, j) order.
    pub basis: DMatrix<C64>,
}

impl SpectralDecomposition {
    pub fn multiplicities(&self) -> Vec<(usize, usize)> {
        self.blocks.iter().map(|b| (b.irrep, b.multiplicity)).collect()
    }

    /// Column offset of e^π_i1 in the adapted basis.
    pub fn offset(&self, block: usize, i: usize) -> usize {
        let before: usize = self.blocks[..block].iter().map(|b| b.dim * b.multiplicity).sum();
        before + i * self.blocks[block].dim
    }
}

pub fn decompose_corep(
    host: &FiniteHopfStarAlgebra,
    v: &UnitaryCorep,
    pw: &PeterWeylData,
    ctx: &ScalarContext,
) -> Result<SpectralDecomposition> {
    let n = v.hdim();
    let mut blocks = Vec::new();
    let mut cols = Vec::new();
    for (bi, b) in pw.blocks.iter().enumerate() {
        let p11 = pi_u(v, b.rho(0, 0));
        let mut heads: Vec<DVector<C64>> = Vec::new();
        for x in 0..n {
            let cand = p11.column(x).into_owned();
            linalg::gram_schmidt_accept(&mut heads, &cand, 1e-8);
        }
        let d = b.dim;
        let mut vectors = Vec::with_capacity(heads.len() * d);
        for h in &heads {
            for j in 0..d {
                vectors.push(if j == 0 { h.clone() } else { pi_u(v, b.rho(j, 0)) * h });
            }
        }
        cols.extend(vectors.iter().cloned());
        blocks.push(CorepBlock { irrep: bi, dim: d, multiplicity: heads.len(), vectors });
    }
    if cols.len() != n {
        return Err(Error::Decomposition(format!("adapted vectors count {} for dimension {n}", cols.len())));
    }
    let basis = DMatrix::from_columns(&cols);
    let sd = SpectralDecomposition { blocks, basis };
    let r = reconstruction_residual(host, v, pw, &sd);
    if !(r <= ctx.tolerance) {
        return Err(Error::Decomposition(format!("reconstruction residual {r:.3e}")));
    }
    let orth = max_diff(&(sd.basis.adjoint() * &sd.basis), &DMatrix::identity(n, n));
    if !(orth <= ctx.tolerance) {
        return Err(Error::Decomposition(format!("adapted basis not orthonormal: {orth:.3e}")));
    }
    Ok(sd)
}

/// Max deviation of B†VB from the pattern δ_ππ' δ_ii' q^π_jj'.
pub fn reconstruction_residual(host: &FiniteHopfStarAlgebra, v: &UnitaryCorep, pw: &PeterWeylData, sd: &SpectralDecomposition) -> f64 {
    let b = &sd.basis;
    let slices = v.matrix().slices();
    let conj: Vec<DMatrix<C64>> = slices.iter().map(|s| b.adjoint() * s * b).collect();
    let rotated = AlgebraMatrix::from_slices(&conj);
    let n = v.hdim();
    let mut label = Vec::with_capacity(n);
    for (bi, blk) in sd.blocks.iter().enumerate() {
        for i in 0..blk.multiplicity {
            for j in 0..blk.dim {
                label.push((bi, i, j));
            }
        }
    }
    let mut worst: f64 = 0.0;
    for (r, &(p1, i1, j1)) in label.iter().enumerate() {
        for (c, &(p2, i2, j2)) in label.iter().enumerate() {
            let expect = if p1 == p2 && i1 == i2 {
                pw.blocks[sd.blocks[p1].irrep].coeff(j1, j2).clone()
            } else {
                DVector::zeros(host.dim())
            };
            worst = worst.max(crate::scalar::max_diff_vec(&rotated.entry(r, c), &expect));
        }
    }
    worst
}

/// Π_U is a unital *-homomorphism on the matrix-unit functionals ρ^π_pq.
pub fn pi_u_homomorphism_report(host: &FiniteHopfStarAlgebra, u: &UnitaryCorep, pw: &PeterWeylData, ctx: &ScalarContext) -> AxiomReport {
    let n = u.hdim();
    let funcs: Vec<&DualFunctional> = pw.blocks.iter().flat_map(|b| b.rho.iter()).collect();
    let images: Vec<DMatrix<C64>> = funcs.iter().map(|f| pi_u(u, f)).collect();
    let mut mult: f64 = 0.0;
    let mut star: f64 = 0.0;
    for (a, fa) in funcs.iter().enumerate() {
        star = star.max(max_diff(&pi_u(u, &host.dual_star(fa)), &images[a].adjoint()));
        for (b, fb) in funcs.iter().enumerate() {
            let conv = host.convolve(fa, fb).expect("same host");
            mult = mult.max(max_diff(&pi_u(u, &conv), &(&images[a] * &images[b])));
        }
    }
    let mut rep = AxiomReport::new();
    rep.push("pi-multiplicative", mult, ctx.tolerance);
    rep.push("pi-star", star, ctx.tolerance);
    rep.push("pi-unital", max_diff(&pi_u(u, &host.counit_functional()), &DMatrix::identity(n, n)), ctx.tolerance);
    rep
}

/// Π_U(ρ^π_pr) in the adapted basis equals Σ_i |e^π_ip⟩⟨e^π_ir| and vanishes
/// on the other isotypic components; max entrywise residual.
pub fn rank_one_residual(u: &UnitaryCorep, pw: &PeterWeylData, sd: &SpectralDecomposition) -> f64 {
    let n = u.hdim();
    let mut worst: f64 = 0.0;
    for (bi, blk) in sd.blocks.iter().enumerate() {
        let irrep = &pw.blocks[blk.irrep];
        for p in 0..blk.dim {
            for r in 0..blk.dim {
                let m = sd.basis.adjoint() * pi_u(u, irrep.rho(p, r)) * &sd.basis;
                let mut expect = DMatrix::zeros(n, n);
                for i in 0..blk.multiplicity {
                    let o = sd.offset(bi, i);
                    expect[(o + p, o + r)] = ONE;
                }
                worst = worst.max(max_diff(&m, &expect));
            }
        }
    }
    worst
}

/// Basis e_{πis} of M_N adapted to ad_V: e_{πi1} run through a Gram–Schmidt
/// basis of E^π_11(M_N) and e_{πis} = E^π_s1(e_{πi1}).
#[derive(Debug, Clone)]
pub struct OperatorSpectralBasis {
    /// (block, i, s, operator)
    pub elements: Vec<(usize, usize, usize, DMatrix<C64>)>,
}

impl OperatorSpectralBasis {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn operators(&self) -> Vec<DMatrix<C64>> {
        self.elements.iter().map(|e| e.3.clone()).collect()
    }

    /// Coordinates of T in this basis.
    pub fn coordinates(&self, t: &DMatrix<C64>) -> Option<DVector<C64>> {
        let cols: Vec<DVector<C64>> = self.elements.iter().map(|e| vec_op(&e.3)).collect();
        linalg::solve(&DMatrix::from_columns(&cols), &vec_op(t))
    }
}

pub fn operator_spectral_basis(maps: &SpectralMaps, pw: &PeterWeylData) -> OperatorSpectralBasis {
    let n = maps.hdim;
    let mut elements = Vec::new();
    for (bi, b) in pw.blocks.iter().enumerate() {
        let d = b.dim;
        let e11 = &maps.e[bi][0];
        let mut heads: Vec<DVector<C64>> = Vec::new();
        for col in 0..n * n {
            linalg::gram_schmidt_accept(&mut heads, &e11.column(col).into_owned(), 1e-8);
        }
        for (i, h) in heads.iter().enumerate() {
            for s in 0..d {
                let v = if s == 0 { h.clone() } else { &maps.e[bi][s * d] * h };
                elements.push((bi, i, s, unvec(&v, n)));
            }
        }
    }
    OperatorSpectralBasis { elements }
}

/// ad_V(e_{πis}) = Σ_j e_{πij} ⊗ q^π_js, max residual over the basis.
pub fn ad_pattern_residual(host: &FiniteHopfStarAlgebra, v: &UnitaryCorep, pw: &PeterWeylData, basis: &OperatorSpectralBasis) -> f64 {
    let n = v.hdim();
    let mut worst: f64 = 0.0;
    for (bi, i, s, op) in &basis.elements {
        let b = &pw.blocks[*bi];
        let lhs = ad_v(host, v, op);
        let mut rhs = AlgebraMatrix::zeros(n, host.dim());
        for j in 0..b.dim {
            let eij = basis
                .elements
                .iter()
                .find(|e| e.0 == *bi && e.1 == *i && e.2 == j)
                .map(|e| &e.3)
                .expect("complete spectral basis");
            let q = b.coeff(j, *s);
            rhs = rhs.add(&AlgebraMatrix::from_fn(n, host.dim(), |a, c| q * eij[(a, c)]));
        }
        worst = worst.max(lhs.max_diff(&rhs));
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::peter_weyl::{decompose, haar_state};
    use crate::random;

    fn ctx() -> ScalarContext {
        ScalarContext::default()
    }

    fn setup(host: &FiniteHopfStarAlgebra) -> PeterWeylData {
        let h = haar_state(host, &ctx()).unwrap();
        decompose(host, &h, &ctx()).unwrap()
    }

    #[test]
    fn trivial_corep_passes_and_ad_is_scalar() {
        let a = catalog::function_algebra(&catalog::symmetric3());
        let u = UnitaryCorep::trivial(&a, 3);
        assert!(verify_corep(&a, &u, &ctx()).unwrap().passed());
        let mut rng = ctx().rng(1);
        let t = random::matrix(&mut rng, 3, 3);
        let ad = ad_v(&a, &u, &t);
        assert!(ad.max_diff(&AlgebraMatrix::scalar(&t, a.unit())) < 1e-14);
        assert!(max_diff(&pi_u(&u, &a.counit_functional()), &DMatrix::identity(3, 3)) < 1e-15);
    }

    #[test]
    fn regular_corep_of_function_algebra_passes() {
        let g = catalog::cyclic(2);
        let a = catalog::function_algebra(&g);
        let u = catalog::regular_corep_function(&g);
        assert!(verify_corep(&a, &u, &ctx()).unwrap().passed());
        // Oracle: evaluation at x gives the left translation matrix.
        for x in 0..2 {
            let ev = DualFunctional::new(crate::scalar::basis_vec(2, x));
            let m = pi_u(&u, &ev);
            for y in 0..2 {
                assert_eq!(m[(g.mul(x, y), y)], ONE);
            }
        }
    }

    #[test]
    fn non_unitary_perturbation_detected() {
        let g = catalog::cyclic(3);
        let a = catalog::function_algebra(&g);
        let u = catalog::regular_corep_function(&g);
        let mut m = u.matrix().clone();
        let e = m.entry(0, 0) * C64::new(1.2, 0.0);
        m.set_entry(0, 0, &e);
        let rep = verify_corep(&a, &UnitaryCorep::new(m), &ctx()).unwrap();
        assert!(rep.residual("unitarity-left") >= 0.1);
        assert!(!rep.passed());
    }

    #[test]
    fn ad_is_multiplicative_and_star_preserving() {
        let g = catalog::symmetric3();
        let a = catalog::function_algebra(&g);
        let v = catalog::regular_corep_function(&g);
        let mut rng = ctx().rng(2);
        assert!(ad_v(&a, &v, &DMatrix::identity(6, 6)).max_diff(&AlgebraMatrix::scalar(&DMatrix::identity(6, 6), a.unit())) < 1e-14);
        for _ in 0..50 {
            let s = random::matrix(&mut rng, 6, 6);
            let t = random::matrix(&mut rng, 6, 6);
            let lhs = ad_v(&a, &v, &(&s * &t));
            let rhs = ad_v(&a, &v, &s).mul(&a, &ad_v(&a, &v, &t));
            assert!(lhs.max_diff(&rhs) < 1e-12);
            let st = ad_v(&a, &v, &s.adjoint());
            assert!(st.max_diff(&ad_v(&a, &v, &s).adjoint(&a)) < 1e-12);
        }
    }

    #[test]
    fn spectral_maps_of_regular_c_z2() {
        let g = catalog::cyclic(2);
        let a = catalog::function_algebra(&g);
        let v = catalog::regular_corep_function(&g);
        let pw = setup(&a);
        let maps = spectral_maps(&a, &v, &pw);
        let rep = verify_spectral_maps(&maps, &pw, &ctx());
        assert!(rep.passed(), "{rep}");
        // Sign character: E_00 - E_11 is fixed, identity is killed.
        let sign = 1;
        let t = DMatrix::from_diagonal(&DVector::from_vec(vec![ONE, -ONE]));
        let swap = DMatrix::from_row_slice(2, 2, &[ZERO, ONE, ONE, ZERO]);
        assert!(max_diff(&maps.apply_p(sign, &swap), &DMatrix::zeros(2, 2)) < 1e-14);
        let img = maps.apply_p(sign, &t);
        assert!(max_diff(&img, &DMatrix::zeros(2, 2)) < 1e-14 || max_diff(&img, &t) < 1e-14);
        let dims: usize = maps.p.iter().map(|p| linalg::rank(p, 1e-9)).sum();
        assert_eq!(dims, 4);
    }

    #[test]
    fn trivial_corep_projections() {
        let a = catalog::function_algebra(&catalog::symmetric3());
        let pw = setup(&a);
        let u = UnitaryCorep::trivial(&a, 3);
        let maps = spectral_maps(&a, &u, &pw);
        for (bi, p) in maps.p.iter().enumerate() {
            let expect = if pw.blocks[bi].trivial { DMatrix::identity(9, 9) } else { DMatrix::zeros(9, 9) };
            assert!(max_diff(p, &expect) < 1e-12);
        }
        let sd = decompose_corep(&a, &u, &pw, &ctx()).unwrap();
        assert_eq!(sd.blocks[0].multiplicity, 3);
        assert!(sd.blocks[1..].iter().all(|b| b.multiplicity == 0));
    }

    #[test]
    fn regular_corep_multiplicity_equals_dimension() {
        let g = catalog::symmetric3();
        let a = catalog::function_algebra(&g);
        let v = catalog::regular_corep_function(&g);
        let pw = setup(&a);
        let sd = decompose_corep(&a, &v, &pw, &ctx()).unwrap();
        for b in &sd.blocks {
            assert_eq!(b.multiplicity, b.dim);
        }
        assert!(rank_one_residual(&v, &pw, &sd) < 1e-9);
        assert!(pi_u_homomorphism_report(&a, &v, &pw, &ctx()).passed());
    }

    #[test]
    fn two_copies_of_irrep_have_multiplicity_two() {
        let g = catalog::symmetric3();
        let a = catalog::function_algebra(&g);
        let v = catalog::regular_corep_function(&g);
        let pw = setup(&a);
        let sd = decompose_corep(&a, &v, &pw, &ctx()).unwrap();
        // Irreducible 2-dimensional corep built from the matrix coefficients.
        let two = pw.blocks.iter().position(|b| b.dim == 2).unwrap();
        let irr = UnitaryCorep::from_fn(2, 6, |i, j| pw.blocks[two].coeff(i, j).clone());
        assert!(verify_corep(&a, &irr, &ctx()).unwrap().passed());
        let doubled = irr.direct_sum(&irr);
        let sd2 = decompose_corep(&a, &doubled, &pw, &ctx()).unwrap();
        assert_eq!(sd2.blocks[two].multiplicity, 2);
        assert_eq!(sd.blocks[two].multiplicity, 2);
    }

    #[test]
    fn operator_spectral_basis_has_ad_pattern() {
        let g = catalog::symmetric3();
        let a = catalog::function_algebra(&g);
        let v = catalog::regular_corep_function(&g);
        let pw = setup(&a);
        let maps = spectral_maps(&a, &v, &pw);
        let basis = operator_spectral_basis(&maps, &pw);
        assert_eq!(basis.len(), 36);
        assert!(ad_pattern_residual(&a, &v, &pw, &basis) < 1e-9);
        let mut rng = ctx().rng(3);
        assert!(basis.coordinates(&random::matrix(&mut rng, 6, 6)).is_some());
    }
}
