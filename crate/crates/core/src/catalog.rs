//! Finite groups, their function and group algebras, and the named
//! algebras, cocycles, corepresentations, morphisms and triples used by the
//! command line and the test suites.

use crate::cocycle::{from_bicharacter, from_group_cocycle, induce, DualCocycle, QuotientMorphism};
use crate::corep::UnitaryCorep;
use crate::deform::{RTwistedVolume, SpectralTriple};
use crate::error::{Error, Result};
use crate::hopf::{FiniteHopfStarAlgebra, HopfTensors};
use crate::scalar::{basis_vec, c, ScalarContext, C64, ONE};
use crate::tensor::Tensor3;
use nalgebra::{DMatrix, DVector};
use std::f64::consts::PI;

/// A finite group by its multiplication table.
#[derive(Debug, Clone, PartialEq)]
pub struct FiniteGroupData {
    table: Vec<Vec<usize>>,
    inv: Vec<usize>,
    identity: usize,
    labels: Vec<String>,
    /// Cyclic factor orders when the group is a product of cyclic groups in
    /// the first-coordinate-fastest layout.
    factors: Option<Vec<usize>>,
}

impl FiniteGroupData {
    pub fn new(table: Vec<Vec<usize>>, labels: Vec<String>) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::InvalidGroup("empty table".into()));
        }
        if labels.len() != n {
            return Err(Error::InvalidGroup("one label per element".into()));
        }
        if table.iter().any(|row| row.len() != n || row.iter().any(|&z| z >= n)) {
            return Err(Error::InvalidGroup("table must be a square table of element indices".into()));
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x))
            .ok_or_else(|| Error::InvalidGroup("no identity element".into()))?;
        let mut inv = Vec::with_capacity(n);
        for x in 0..n {
            let y = (0..n)
                .find(|&y| table[x][y] == identity && table[y][x] == identity)
                .ok_or_else(|| Error::InvalidGroup(format!("element {x} has no inverse")))?;
            inv.push(y);
        }
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    if table[table[x][y]][z] != table[x][table[y][z]] {
                        return Err(Error::InvalidGroup(format!("associativity fails at ({x},{y},{z})")));
                    }
                }
            }
        }
        Ok(FiniteGroupData { table, inv, identity, labels, factors: None })
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.table[x][y]
    }

    pub fn inv(&self, x: usize) -> usize {
        self.inv[x]
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|x| (0..n).all(|y| self.mul(x, y) == self.mul(y, x)))
    }

    /// Coordinates of an element of a product of cyclic groups.
    pub fn coordinates(&self, x: usize) -> Option<Vec<usize>> {
        let ns = self.factors.as_ref()?;
        let mut rest = x;
        Some(
            ns.iter()
                .map(|&n| {
                    let a = rest % n;
                    rest /= n;
                    a
                })
                .collect(),
        )
    }
}

/// ℤ_{n0} × ℤ_{n1} × …, element a0 + n0·a1 + n0·n1·a2 + ….
pub fn abelian(ns: &[usize]) -> FiniteGroupData {
    assert!(ns.iter().all(|&n| n > 0), "cyclic factors must be non-trivial orders");
    let order: usize = ns.iter().product();
    let coords = |mut x: usize| -> Vec<usize> {
        ns.iter()
            .map(|&n| {
                let a = x % n;
                x /= n;
                a
            })
            .collect()
    };
    let index = |a: &[usize]| -> usize {
        let mut x = 0;
        let mut stride = 1;
        for (ai, n) in a.iter().zip(ns) {
            x += ai * stride;
            stride *= n;
        }
        x
    };
    let table = (0..order)
        .map(|x| {
            let a = coords(x);
            (0..order)
                .map(|y| {
                    let b = coords(y);
                    let s: Vec<usize> = a.iter().zip(&b).zip(ns).map(|((p, q), n)| (p + q) % n).collect();
                    index(&s)
                })
                .collect()
        })
        .collect();
    let labels = (0..order)
        .map(|x| {
            let a = coords(x);
            if a.len() == 1 {
                a[0].to_string()
            } else {
                format!("({})", a.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(","))
            }
        })
        .collect();
    let mut g = FiniteGroupData::new(table, labels).expect("product of cyclic groups");
    g.factors = Some(ns.to_vec());
    g
}

pub fn cyclic(n: usize) -> FiniteGroupData {
    abelian(&[n])
}

pub fn trivial_group() -> FiniteGroupData {
    abelian(&[1])
}

/// Dihedral group of order 2n, element r^k s^e at index k + n·e.
pub fn dihedral(n: usize) -> FiniteGroupData {
    assert!(n >= 1);
    let table = (0..2 * n)
        .map(|x| {
            let (k1, e1) = (x % n, x / n);
            (0..2 * n)
                .map(|y| {
                    let (k2, e2) = (y % n, y / n);
                    let k = if e1 == 0 { (k1 + k2) % n } else { (k1 + n - k2) % n };
                    k + n * ((e1 + e2) % 2)
                })
                .collect()
        })
        .collect();
    let labels = (0..2 * n)
        .map(|x| {
            let (k, e) = (x % n, x / n);
            match (k, e) {
                (0, 0) => "e".to_string(),
                (0, _) => "s".to_string(),
                (k, 0) => format!("r^{k}"),
                (k, _) => format!("r^{k}s"),
            }
        })
        .collect();
    FiniteGroupData::new(table, labels).expect("dihedral group")
}

/// S3 as permutations of {0,1,2}, identity at index 0, product p∘q.
pub fn symmetric3() -> FiniteGroupData {
    let perms: [[usize; 3]; 6] = [[0, 1, 2], [1, 0, 2], [0, 2, 1], [2, 1, 0], [1, 2, 0], [2, 0, 1]];
    let labels = ["e", "(01)", "(12)", "(02)", "(012)", "(021)"].iter().map(|s| s.to_string()).collect();
    let find = |p: [usize; 3]| perms.iter().position(|q| *q == p).unwrap();
    let table = perms
        .iter()
        .map(|p| perms.iter().map(|q| find([p[q[0]], p[q[1]], p[q[2]]])).collect())
        .collect();
    FiniteGroupData::new(table, labels).expect("S3")
}

/// C(G): basis δ_x with pointwise product and Δδ_x = Σ_y δ_y ⊗ δ_{y⁻¹x}.
pub fn function_algebra(g: &FiniteGroupData) -> FiniteHopfStarAlgebra {
    let n = g.order();
    let mut mul = Tensor3::cube(n);
    let mut comul = Tensor3::cube(n);
    let mut antipode = DMatrix::zeros(n, n);
    for x in 0..n {
        mul.set(x, x, x, ONE);
        for y in 0..n {
            comul.set(x, y, g.mul(g.inv(y), x), ONE);
        }
        antipode[(g.inv(x), x)] = ONE;
    }
    let t = HopfTensors {
        labels: g.labels().iter().map(|l| format!("d[{l}]")).collect(),
        mul,
        unit: DVector::from_element(n, ONE),
        comul,
        counit: basis_vec(n, g.identity()),
        antipode_inv: antipode.clone(),
        antipode,
        star: DMatrix::identity(n, n),
    };
    FiniteHopfStarAlgebra::new(t).expect("function algebra tensors are consistent")
}

/// ℂ[G]: basis λ_g with λ_g λ_h = λ_{gh}, grouplike coproduct, λ_g* = λ_{g⁻¹}.
pub fn group_algebra(g: &FiniteGroupData) -> FiniteHopfStarAlgebra {
    let n = g.order();
    let mut mul = Tensor3::cube(n);
    let mut comul = Tensor3::cube(n);
    let mut antipode = DMatrix::zeros(n, n);
    for x in 0..n {
        for y in 0..n {
            mul.set(x, y, g.mul(x, y), ONE);
        }
        comul.set(x, x, x, ONE);
        antipode[(g.inv(x), x)] = ONE;
    }
    let t = HopfTensors {
        labels: g.labels().iter().map(|l| format!("L[{l}]")).collect(),
        mul,
        unit: basis_vec(n, g.identity()),
        comul,
        counit: DVector::from_element(n, ONE),
        antipode_inv: antipode.clone(),
        star: antipode.clone(),
        antipode,
    };
    FiniteHopfStarAlgebra::new(t).expect("group algebra tensors are consistent")
}

/// Left regular corepresentation of C(G) on ℓ²(G): u_xy = δ_{x y⁻¹}.
pub fn regular_corep_function(g: &FiniteGroupData) -> UnitaryCorep {
    let n = g.order();
    UnitaryCorep::from_fn(n, n, |x, y| basis_vec(n, g.mul(x, g.inv(y))))
}

/// Grading corepresentation of ℂ[G] on ℓ²(G): u_xy = δ_xy λ_x.
pub fn regular_corep_group(g: &FiniteGroupData) -> UnitaryCorep {
    let n = g.order();
    UnitaryCorep::from_fn(n, n, |x, y| if x == y { basis_vec(n, x) } else { DVector::zeros(n) })
}

/// Left translation |y⟩ ↦ |xy⟩ on ℓ²(G).
pub fn translation(g: &FiniteGroupData, x: usize) -> DMatrix<C64> {
    let n = g.order();
    let mut m = DMatrix::zeros(n, n);
    for y in 0..n {
        m[(g.mul(x, y), y)] = ONE;
    }
    m
}

/// Right translation |y⟩ ↦ |y x⁻¹⟩ on ℓ²(G); commutes with left translations.
pub fn right_translation(g: &FiniteGroupData, x: usize) -> DMatrix<C64> {
    let n = g.order();
    let mut m = DMatrix::zeros(n, n);
    for y in 0..n {
        m[(g.mul(y, g.inv(x)), y)] = ONE;
    }
    m
}

/// Restriction C(G) → C(H) along an injective homomorphism H → G.
pub fn restriction_morphism(g: &FiniteGroupData, h: &FiniteGroupData, emb: &[usize]) -> Result<QuotientMorphism> {
    if emb.len() != h.order() || emb.iter().any(|&x| x >= g.order()) {
        return Err(Error::InvalidGroup("embedding must map every element of the subgroup into the group".into()));
    }
    for a in 0..h.order() {
        for b in 0..h.order() {
            if emb[h.mul(a, b)] != g.mul(emb[a], emb[b]) {
                return Err(Error::InvalidGroup(format!("embedding is not a homomorphism at ({a},{b})")));
            }
        }
        if emb[..a].contains(&emb[a]) {
            return Err(Error::InvalidGroup("embedding is not injective".into()));
        }
    }
    let mut pi = DMatrix::zeros(h.order(), g.order());
    for (a, &x) in emb.iter().enumerate() {
        pi[(a, x)] = ONE;
    }
    Ok(QuotientMorphism::new(pi))
}

/// ℤ2×ℤ2 = {e, r^{n/2}, s, r^{n/2}s} inside the dihedral group of order 2n (n even).
pub fn klein_in_dihedral(n: usize) -> (FiniteGroupData, Vec<usize>) {
    assert!(n % 2 == 0, "the rotation r^(n/2) needs n even");
    (abelian(&[2, 2]), vec![0, n / 2, n, n + n / 2])
}

/// χ_c(x) = Π_j exp(2πi c_j x_j / n_j) for c, x in a product of cyclic groups.
pub fn character(g: &FiniteGroupData, chi: usize, x: usize) -> C64 {
    let ns = g.factors.as_ref().expect("characters need a product of cyclic groups");
    let (a, b) = (g.coordinates(chi).unwrap(), g.coordinates(x).unwrap());
    let phase: f64 = a.iter().zip(&b).zip(ns).map(|((p, q), n)| 2.0 * PI * (p * q) as f64 / *n as f64).sum();
    C64::from_polar(1.0, phase)
}

/// Fourier isomorphism C(K) → ℂ[K̂], δ_x ↦ |K|⁻¹ Σ_χ conj(χ(x)) λ_χ, with K̂
/// identified with the same product of cyclic groups.
pub fn fourier_morphism(ns: &[usize]) -> (FiniteGroupData, QuotientMorphism) {
    let k = abelian(ns);
    let n = k.order();
    let pi = DMatrix::from_fn(n, n, |chi, x| character(&k, chi, x).conj() / n as f64);
    (k, QuotientMorphism::new(pi))
}

/// β(a, b) = exp(2πi a₂ b₁ / m) on ℤ_{n1} × ℤ_{n2} (a = (a₁, a₂)).
pub fn power_bicharacter(g: &FiniteGroupData, m: usize) -> DMatrix<C64> {
    let n = g.order();
    DMatrix::from_fn(n, n, |x, y| {
        let (a, b) = (g.coordinates(x).expect("product group"), g.coordinates(y).expect("product group"));
        assert!(a.len() == 2, "bicharacter needs two cyclic factors");
        C64::from_polar(1.0, 2.0 * PI * (a[1] * b[0]) as f64 / m as f64)
    })
}

/// β((a, b), (c, d)) = (−1)^{bc}.
pub fn sign_bicharacter(g: &FiniteGroupData) -> DMatrix<C64> {
    let mut b = power_bicharacter(g, 2);
    // Exact signs rather than cos(π).
    b.iter_mut().for_each(|z| *z = if z.re > 0.0 { ONE } else { -ONE });
    b
}

/// β(a, b)·exp(i(θ_a + θ_b − θ_{ab})): cohomologous to β, no longer a bicharacter.
pub fn gauged_cocycle(g: &FiniteGroupData, beta: &DMatrix<C64>, theta: &[f64]) -> DMatrix<C64> {
    let n = g.order();
    DMatrix::from_fn(n, n, |x, y| beta[(x, y)] * C64::from_polar(1.0, theta[x] + theta[y] - theta[g.mul(x, y)]))
}

pub const GAUGE_PHASES: [f64; 4] = [0.0, 0.7, -1.1, 2.3];

/// The sign cocycle on ℂ[K̂] pulled back to C(K), K = ℤ2×ℤ2.
pub fn klein_cocycle_on_function_algebra(ctx: &ScalarContext) -> Result<DualCocycle> {
    klein_chain(false, ctx).map(|(_, ck, _)| ck)
}

/// The three levels ℂ[K̂] → C(K) of the Klein construction, with the group
/// algebra cocycle either the sign bicharacter or its gauged version.
fn klein_chain(gauged: bool, ctx: &ScalarContext) -> Result<(DualCocycle, DualCocycle, QuotientMorphism)> {
    let (k, fourier) = fourier_morphism(&[2, 2]);
    let beta = sign_bicharacter(&k);
    let top = if gauged {
        from_group_cocycle(&k, &gauged_cocycle(&k, &beta, &GAUGE_PHASES), ctx)?
    } else {
        from_bicharacter(&k, &beta, ctx)?
    };
    let ck = induce(&top, &fourier, &function_algebra(&k), &group_algebra(&k), ctx)?;
    Ok((top, ck, fourier))
}

/// Cocycle on C(D_n) induced along restriction to the Klein subgroup.
pub fn klein_cocycle_on_dihedral(n: usize, gauged: bool, ctx: &ScalarContext) -> Result<DualCocycle> {
    let (_, ck, _) = klein_chain(gauged, ctx)?;
    let g = dihedral(n);
    let (k, emb) = klein_in_dihedral(n);
    let res = restriction_morphism(&g, &k, &emb)?;
    induce(&ck, &res, &function_algebra(&g), &function_algebra(&k), ctx)
}

/// Induction along the composite ℂ[K̂] ← C(K) ← C(D_n) in one step, for the
/// functoriality check against the two-step construction.
pub fn klein_cocycle_on_dihedral_composite(n: usize, ctx: &ScalarContext) -> Result<DualCocycle> {
    let (top, _, fourier) = klein_chain(false, ctx)?;
    let g = dihedral(n);
    let (k, emb) = klein_in_dihedral(n);
    let res = restriction_morphism(&g, &k, &emb)?;
    induce(&top, &res.then(&fourier), &function_algebra(&g), &group_algebra(&k), ctx)
}

fn group_by_name(name: &str) -> Option<FiniteGroupData> {
    Some(match name {
        "trivial" => trivial_group(),
        "z2" => cyclic(2),
        "z3" => cyclic(3),
        "z4" => cyclic(4),
        "z2z2" => abelian(&[2, 2]),
        "z4z4" => abelian(&[4, 4]),
        "s3" => symmetric3(),
        "d4" => dihedral(4),
        "d6" => dihedral(6),
        _ => return None,
    })
}

pub const ALGEBRAS: [(&str, &str); 13] = [
    ("trivial", "one-dimensional Hopf algebra"),
    ("c-z2", "functions on Z2"),
    ("c-z3", "functions on Z3"),
    ("c-z4", "functions on Z4"),
    ("c-z2z2", "functions on Z2xZ2"),
    ("c-s3", "functions on S3"),
    ("c-d4", "functions on the dihedral group of order 8"),
    ("c-d6", "functions on the dihedral group of order 12"),
    ("cg-z2", "group algebra of Z2"),
    ("cg-z3", "group algebra of Z3"),
    ("cg-z2z2", "group algebra of Z2xZ2"),
    ("cg-d4", "group algebra of the dihedral group of order 8"),
    ("cg-z4z4", "group algebra of Z4xZ4"),
];

pub const COCYCLES: [(&str, &str); 6] = [
    ("cg-z2z2/bicharacter", "sign bicharacter (-1)^(bc)"),
    ("cg-z4z4/bicharacter", "order-four bicharacter i^(bc)"),
    ("c-d4/klein", "sign cocycle induced through Fourier and restriction to the Klein subgroup"),
    ("c-d6/klein", "sign cocycle induced to the dihedral group of order 12"),
    ("c-d6/klein-gauged", "gauged sign cocycle induced to the dihedral group of order 12"),
    ("c-s3/trivial", "counit cocycle"),
];

pub const COREPS: [(&str, &str); 11] = [
    ("c-z2/regular", "left regular corepresentation"),
    ("c-z3/regular", "left regular corepresentation"),
    ("c-s3/regular", "left regular corepresentation"),
    ("c-d4/regular", "left regular corepresentation"),
    ("c-d6/regular", "left regular corepresentation"),
    ("cg-z2/regular", "grading corepresentation"),
    ("cg-z2z2/regular", "grading corepresentation"),
    ("cg-d4/regular", "grading corepresentation"),
    ("cg-z4z4/regular", "grading corepresentation"),
    ("cg-z2z2/hadamard", "grading corepresentation conjugated by the Hadamard matrix"),
    ("cg-z2z2/trivial3", "trivial corepresentation on C^3"),
];

pub const MORPHISMS: [(&str, &str); 3] = [
    ("c-d4/restrict-klein", "restriction C(D4) -> C(Z2xZ2)"),
    ("c-d6/restrict-klein", "restriction C(D6) -> C(Z2xZ2)"),
    ("c-z2z2/fourier", "Fourier isomorphism C(Z2xZ2) -> group algebra of Z2xZ2"),
];

pub const TRIPLES: [(&str, &str); 4] = [
    ("trivial-3", "C^3 with D = 0 over the trivial Hopf algebra"),
    ("z2z2-torus", "grading of C^4 by Z2xZ2 with translations"),
    ("z2z2-skew", "Hadamard corepresentation that does not commute with D"),
    ("d4-regular", "left regular corepresentation of C(D4) with a right-translation Dirac operator"),
];

fn split_name(name: &str) -> Option<(&str, &str)> {
    name.split_once('/')
}

pub fn named_algebra(name: &str) -> Result<FiniteHopfStarAlgebra> {
    let unknown = || Error::UnknownCatalogName(name.to_string());
    if name == "trivial" {
        return Ok(function_algebra(&trivial_group()));
    }
    if let Some(g) = name.strip_prefix("cg-") {
        return group_by_name(g).map(|g| group_algebra(&g)).ok_or_else(unknown);
    }
    if let Some(g) = name.strip_prefix("c-") {
        return group_by_name(g).map(|g| function_algebra(&g)).ok_or_else(unknown);
    }
    Err(unknown())
}

/// The group behind a named algebra.
pub fn named_group(alg: &str) -> Result<FiniteGroupData> {
    let g = alg.strip_prefix("cg-").or_else(|| alg.strip_prefix("c-")).unwrap_or(alg);
    group_by_name(g).ok_or_else(|| Error::UnknownCatalogName(alg.to_string()))
}

/// Named cocycle together with its host algebra name.
pub fn named_cocycle(name: &str, ctx: &ScalarContext) -> Result<(String, FiniteHopfStarAlgebra, DualCocycle)> {
    let (alg, _) = split_name(name).ok_or_else(|| Error::UnknownCatalogName(name.to_string()))?;
    let host = named_algebra(alg)?;
    let c = match name {
        "cg-z2z2/bicharacter" => {
            let g = abelian(&[2, 2]);
            from_bicharacter(&g, &sign_bicharacter(&g), ctx)?
        }
        "cg-z4z4/bicharacter" => {
            let g = abelian(&[4, 4]);
            from_bicharacter(&g, &power_bicharacter(&g, 4), ctx)?
        }
        "c-d4/klein" => klein_cocycle_on_dihedral(4, false, ctx)?,
        "c-d6/klein" => klein_cocycle_on_dihedral(6, false, ctx)?,
        "c-d6/klein-gauged" => klein_cocycle_on_dihedral(6, true, ctx)?,
        "c-s3/trivial" => DualCocycle::trivial(&host),
        _ => return Err(Error::UnknownCatalogName(name.to_string())),
    };
    Ok((alg.to_string(), host, c))
}

/// (algebra, cocycle) by names, checking that the cocycle lives on the algebra.
pub fn named_pair(alg: &str, cocycle: &str) -> Result<(FiniteHopfStarAlgebra, DualCocycle)> {
    let (host_name, host, c) = named_cocycle(cocycle, &ScalarContext::default())?;
    if host_name != alg {
        return Err(Error::Dimension(format!("cocycle `{cocycle}` lives on `{host_name}`, not `{alg}`")));
    }
    Ok((host, c))
}

pub fn cocycle_pairs() -> Vec<(&'static str, &'static str)> {
    COCYCLES.iter().map(|(n, _)| (split_name(n).unwrap().0, *n)).collect()
}

fn hadamard4() -> DMatrix<C64> {
    let h = DMatrix::from_row_slice(2, 2, &[ONE, ONE, ONE, -ONE]) * c(1.0 / 2f64.sqrt(), 0.0);
    h.kronecker(&h)
}

pub fn named_corep(name: &str) -> Result<(String, FiniteHopfStarAlgebra, UnitaryCorep)> {
    let (alg, kind) = split_name(name).ok_or_else(|| Error::UnknownCatalogName(name.to_string()))?;
    if !COREPS.iter().any(|(n, _)| *n == name) {
        return Err(Error::UnknownCatalogName(name.to_string()));
    }
    let host = named_algebra(alg)?;
    let g = named_group(alg)?;
    let u = match (alg.starts_with("cg-"), kind) {
        (false, "regular") => regular_corep_function(&g),
        (true, "regular") => regular_corep_group(&g),
        (true, "hadamard") => regular_corep_group(&g).conjugate_by(&hadamard4()),
        (true, "trivial3") => UnitaryCorep::trivial(&host, 3),
        _ => return Err(Error::UnknownCatalogName(name.to_string())),
    };
    Ok((alg.to_string(), host, u))
}

/// Named morphism with (source, target) algebras.
pub fn named_morphism(name: &str) -> Result<(FiniteHopfStarAlgebra, FiniteHopfStarAlgebra, QuotientMorphism)> {
    match name {
        "c-d4/restrict-klein" | "c-d6/restrict-klein" => {
            let n = if name.starts_with("c-d4") { 4 } else { 6 };
            let g = dihedral(n);
            let (k, emb) = klein_in_dihedral(n);
            Ok((function_algebra(&g), function_algebra(&k), restriction_morphism(&g, &k, &emb)?))
        }
        "c-z2z2/fourier" => {
            let (k, f) = fourier_morphism(&[2, 2]);
            Ok((function_algebra(&k), group_algebra(&k), f))
        }
        _ => Err(Error::UnknownCatalogName(name.to_string())),
    }
}

/// A triple with its symmetry, volume and (for deformation) a cocycle name.
#[derive(Debug, Clone)]
pub struct TripleSetup {
    pub name: String,
    pub algebra: String,
    pub host: FiniteHopfStarAlgebra,
    pub corep: UnitaryCorep,
    pub triple: SpectralTriple,
    pub volume: RTwistedVolume,
    pub cocycle: Option<String>,
}

fn real_diag(d: &[f64]) -> DMatrix<C64> {
    DMatrix::from_diagonal(&DVector::from_iterator(d.len(), d.iter().map(|&x| c(x, 0.0))))
}

pub fn named_triple(name: &str) -> Result<TripleSetup> {
    let labels = |v: &[&str]| v.iter().map(|s| s.to_string()).collect::<Vec<_>>();
    let setup = match name {
        "trivial-3" => {
            let host = named_algebra("trivial")?;
            let mut swap = DMatrix::zeros(3, 3);
            swap[(0, 1)] = ONE;
            swap[(1, 0)] = ONE;
            let triple = SpectralTriple::new(DMatrix::zeros(3, 3), vec![swap, real_diag(&[1.0, 2.0, 3.0])], labels(&["swap12", "diag123"]))?;
            TripleSetup {
                name: name.into(),
                algebra: "trivial".into(),
                corep: UnitaryCorep::trivial(&host, 3),
                host,
                triple,
                volume: RTwistedVolume::identity(3),
                cocycle: None,
            }
        }
        "z2z2-torus" | "z2z2-skew" => {
            let g = abelian(&[2, 2]);
            let host = group_algebra(&g);
            let gens = vec![translation(&g, 1), translation(&g, 2)];
            let (corep, dirac) = if name == "z2z2-torus" {
                (regular_corep_group(&g), real_diag(&[0.0, 1.0, 1.0, 2.0]))
            } else {
                (regular_corep_group(&g).conjugate_by(&hadamard4()), real_diag(&[0.0, 1.0, 2.0, 3.0]))
            };
            TripleSetup {
                name: name.into(),
                algebra: "cg-z2z2".into(),
                host,
                corep,
                triple: SpectralTriple::new(dirac, gens, labels(&["shift10", "shift01"]))?,
                volume: RTwistedVolume::identity(4),
                cocycle: Some("cg-z2z2/bicharacter".into()),
            }
        }
        "d4-regular" => {
            let g = dihedral(4);
            let host = function_algebra(&g);
            // Class sums {r, r³} and {s, r²s} of right translations.
            let dirac = [1usize, 3, 4, 6].iter().fold(DMatrix::zeros(8, 8), |acc, &x| acc + right_translation(&g, x));
            let point = |x: usize| {
                let mut m = DMatrix::zeros(8, 8);
                m[(x, x)] = ONE;
                m
            };
            TripleSetup {
                name: name.into(),
                algebra: "c-d4".into(),
                host,
                corep: regular_corep_function(&g),
                triple: SpectralTriple::new(dirac, vec![point(1), point(4)], labels(&["delta_r", "delta_s"]))?,
                volume: RTwistedVolume::identity(8),
                cocycle: Some("c-d4/klein".into()),
            }
        }
        _ => return Err(Error::UnknownCatalogName(name.to_string())),
    };
    Ok(setup)
}

/// (kind, name, description) for every catalog entry.
pub fn entries() -> Vec<(&'static str, &'static str, &'static str)> {
    let mut out = Vec::new();
    for (kind, list) in [
        ("algebra", &ALGEBRAS[..]),
        ("cocycle", &COCYCLES[..]),
        ("corep", &COREPS[..]),
        ("morphism", &MORPHISMS[..]),
        ("triple", &TRIPLES[..]),
    ] {
        out.extend(list.iter().map(|(n, d)| (kind, *n, *d)));
    }
    out
}
