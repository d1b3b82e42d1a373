//! Versioned JSON documents. Complex numbers are `[re, im]` pairs and tensors
//! nested row-major arrays; floats round-trip bit-exactly.

use crate::cocycle::{DualCocycle, QuotientMorphism};
use crate::corep::{AlgebraMatrix, UnitaryCorep};
use crate::deform::{RTwistedVolume, SpectralTriple};
use crate::error::{Error, Result};
use crate::hopf::{FiniteHopfStarAlgebra, HopfTensors};
use crate::peter_weyl::{HaarState, PeterWeylData};
use crate::report::AxiomReport;
use crate::scalar::{ScalarContext, C64};
use crate::tensor::Tensor3;
use nalgebra::{DMatrix, DVector};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

pub type Cx = [f64; 2];

pub const HOPF_FORMAT: &str = "hopf-algebra.v1";
pub const COCYCLE_FORMAT: &str = "cocycle.v1";
pub const MORPHISM_FORMAT: &str = "morphism.v1";
pub const COREP_FORMAT: &str = "corep.v1";
pub const TRIPLE_FORMAT: &str = "triple.v1";
pub const PETER_WEYL_FORMAT: &str = "peter-weyl.v1";
pub const TRANSCRIPT_FORMAT: &str = "twist-transcript.v1";
pub const CATEGORY_FORMAT: &str = "category-report.v1";
pub const VERIFICATION_FORMAT: &str = "verification-report.v1";

fn cx(z: C64) -> Cx {
    [z.re, z.im]
}

fn from_cx(p: Cx) -> C64 {
    C64::new(p[0], p[1])
}

pub fn vec_doc(v: &DVector<C64>) -> Vec<Cx> {
    v.iter().map(|z| cx(*z)).collect()
}

pub fn mat_doc(m: &DMatrix<C64>) -> Vec<Vec<Cx>> {
    (0..m.nrows()).map(|i| (0..m.ncols()).map(|j| cx(m[(i, j)])).collect()).collect()
}

fn tensor_doc(t: &Tensor3) -> Vec<Vec<Vec<Cx>>> {
    t.to_nested().into_iter().map(|a| a.into_iter().map(|b| b.into_iter().map(cx).collect()).collect()).collect()
}

fn parse_vec(v: &[Cx], n: usize, what: &str) -> Result<DVector<C64>> {
    if v.len() != n {
        return Err(Error::Dimension(format!("{what} has length {}, expected {n}", v.len())));
    }
    Ok(DVector::from_iterator(n, v.iter().map(|p| from_cx(*p))))
}

fn parse_mat(m: &[Vec<Cx>], rows: usize, cols: usize, what: &str) -> Result<DMatrix<C64>> {
    if m.len() != rows || m.iter().any(|r| r.len() != cols) {
        return Err(Error::Dimension(format!("{what} must be {rows}×{cols}")));
    }
    Ok(DMatrix::from_fn(rows, cols, |i, j| from_cx(m[i][j])))
}

fn parse_square(m: &[Vec<Cx>], what: &str) -> Result<DMatrix<C64>> {
    parse_mat(m, m.len(), m.len(), what)
}

fn parse_tensor(t: &[Vec<Vec<Cx>>], n: usize, what: &str) -> Result<Tensor3> {
    let nested: Vec<Vec<Vec<C64>>> = t.iter().map(|a| a.iter().map(|b| b.iter().map(|p| from_cx(*p)).collect()).collect()).collect();
    let out = Tensor3::from_nested(&nested).ok_or_else(|| Error::Dimension(format!("{what} is not a rectangular tensor")))?;
    if out.shape() != [n, n, n] {
        return Err(Error::Dimension(format!("{what} must be {n}×{n}×{n}")));
    }
    Ok(out)
}

fn check_format(found: &str, expected: &str) -> Result<()> {
    if found != expected {
        return Err(Error::Parse(format!("expected format `{expected}`, found `{found}`")));
    }
    Ok(())
}

pub fn to_json<T: Serialize>(doc: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(doc)?)
}

pub fn from_json<T: DeserializeOwned>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HopfDoc {
    pub format: String,
    pub dim: usize,
    pub labels: Vec<String>,
    pub mul: Vec<Vec<Vec<Cx>>>,
    pub comul: Vec<Vec<Vec<Cx>>>,
    pub unit: Vec<Cx>,
    pub counit: Vec<Cx>,
    pub antipode: Vec<Vec<Cx>>,
    pub antipode_inv: Vec<Vec<Cx>>,
    pub star: Vec<Vec<Cx>>,
}

impl HopfDoc {
    pub fn from_algebra(a: &FiniteHopfStarAlgebra) -> Self {
        let t = a.tensors();
        HopfDoc {
            format: HOPF_FORMAT.into(),
            dim: a.dim(),
            labels: t.labels.clone(),
            mul: tensor_doc(&t.mul),
            comul: tensor_doc(&t.comul),
            unit: vec_doc(&t.unit),
            counit: vec_doc(&t.counit),
            antipode: mat_doc(&t.antipode),
            antipode_inv: mat_doc(&t.antipode_inv),
            star: mat_doc(&t.star),
        }
    }

    /// Shape-checked structure tensors; the axioms are left to the verifier.
    pub fn to_algebra(&self) -> Result<FiniteHopfStarAlgebra> {
        check_format(&self.format, HOPF_FORMAT)?;
        let n = self.dim;
        let t = HopfTensors {
            labels: self.labels.clone(),
            mul: parse_tensor(&self.mul, n, "mul")?,
            comul: parse_tensor(&self.comul, n, "comul")?,
            unit: parse_vec(&self.unit, n, "unit")?,
            counit: parse_vec(&self.counit, n, "counit")?,
            antipode: parse_mat(&self.antipode, n, n, "antipode")?,
            antipode_inv: parse_mat(&self.antipode_inv, n, n, "antipode_inv")?,
            star: parse_mat(&self.star, n, n, "star")?,
        };
        FiniteHopfStarAlgebra::new(t)
    }
}

/// SHA-256 of the compact hopf-algebra.v1 serialization, lowercase hex.
pub fn host_hash(a: &FiniteHopfStarAlgebra) -> String {
    let bytes = serde_json::to_vec(&HopfDoc::from_algebra(a)).expect("serializable");
    Sha256::digest(&bytes).iter().map(|b| format!("{b:02x}")).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CocycleDoc {
    pub format: String,
    pub host_hash: String,
    pub sigma: Vec<Vec<Cx>>,
}

impl CocycleDoc {
    pub fn new(host: &FiniteHopfStarAlgebra, c: &DualCocycle) -> Self {
        CocycleDoc { format: COCYCLE_FORMAT.into(), host_hash: host_hash(host), sigma: mat_doc(c.sigma()) }
    }

    pub fn to_cocycle(&self, host: &FiniteHopfStarAlgebra, ctx: &ScalarContext) -> Result<DualCocycle> {
        check_format(&self.format, COCYCLE_FORMAT)?;
        if self.host_hash != host_hash(host) {
            return Err(Error::Parse("cocycle was written for a different algebra (host hash mismatch)".into()));
        }
        DualCocycle::new(host, parse_mat(&self.sigma, host.dim(), host.dim(), "sigma")?, ctx)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MorphismDoc {
    pub format: String,
    pub source_hash: String,
    pub target_hash: String,
    pub pi: Vec<Vec<Cx>>,
}

impl MorphismDoc {
    pub fn new(source: &FiniteHopfStarAlgebra, target: &FiniteHopfStarAlgebra, m: &QuotientMorphism) -> Self {
        MorphismDoc {
            format: MORPHISM_FORMAT.into(),
            source_hash: host_hash(source),
            target_hash: host_hash(target),
            pi: mat_doc(&m.pi),
        }
    }

    pub fn to_morphism(&self, source: &FiniteHopfStarAlgebra, target: &FiniteHopfStarAlgebra) -> Result<QuotientMorphism> {
        check_format(&self.format, MORPHISM_FORMAT)?;
        if self.source_hash != host_hash(source) || self.target_hash != host_hash(target) {
            return Err(Error::Parse("morphism was written for different algebras (host hash mismatch)".into()));
        }
        Ok(QuotientMorphism::new(parse_mat(&self.pi, target.dim(), source.dim(), "pi")?))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorepDoc {
    pub format: String,
    pub hdim: usize,
    pub host_dim: usize,
    /// u[i][j] = coefficients of u_ij.
    pub u: Vec<Vec<Vec<Cx>>>,
}

impl CorepDoc {
    pub fn new(u: &UnitaryCorep) -> Self {
        let n = u.hdim();
        CorepDoc {
            format: COREP_FORMAT.into(),
            hdim: n,
            host_dim: u.host_dim(),
            u: (0..n).map(|i| (0..n).map(|j| vec_doc(&u.entry(i, j))).collect()).collect(),
        }
    }

    pub fn to_corep(&self) -> Result<UnitaryCorep> {
        check_format(&self.format, COREP_FORMAT)?;
        let n = self.hdim;
        if self.u.len() != n || self.u.iter().any(|r| r.len() != n) {
            return Err(Error::Dimension(format!("u must be {n}×{n}")));
        }
        let mut m = AlgebraMatrix::zeros(n, self.host_dim);
        for i in 0..n {
            for j in 0..n {
                m.set_entry(i, j, &parse_vec(&self.u[i][j], self.host_dim, "corep entry")?);
            }
        }
        Ok(UnitaryCorep::new(m))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TripleDoc {
    pub format: String,
    pub hdim: usize,
    pub dirac: Vec<Vec<Cx>>,
    pub generators: Vec<Vec<Vec<Cx>>>,
    #[serde(default)]
    pub labels: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<Vec<Vec<Cx>>>,
}

impl TripleDoc {
    pub fn new(st: &SpectralTriple, r: Option<&RTwistedVolume>) -> Self {
        TripleDoc {
            format: TRIPLE_FORMAT.into(),
            hdim: st.hdim,
            dirac: mat_doc(&st.dirac),
            generators: st.generators.iter().map(mat_doc).collect(),
            labels: st.labels.clone(),
            r: r.map(|r| mat_doc(&r.r)),
        }
    }

    /// The triple and its volume (R = I when absent).
    pub fn to_triple(&self) -> Result<(SpectralTriple, RTwistedVolume)> {
        check_format(&self.format, TRIPLE_FORMAT)?;
        let n = self.hdim;
        let dirac = parse_mat(&self.dirac, n, n, "dirac")?;
        let gens = self.generators.iter().map(|g| parse_mat(g, n, n, "generator")).collect::<Result<Vec<_>>>()?;
        let labels = if self.labels.is_empty() { (0..gens.len()).map(|i| format!("a{i}")).collect() } else { self.labels.clone() };
        let r = match &self.r {
            Some(r) => RTwistedVolume::new(parse_mat(r, n, n, "r")?),
            None => RTwistedVolume::identity(n),
        };
        Ok((SpectralTriple::new(dirac, gens, labels)?, r))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BlockDoc {
    pub dim: usize,
    pub trivial: bool,
    pub m: f64,
    pub f: Vec<Vec<Cx>>,
    /// coefficients[i][j] = coordinates of q_ij.
    pub coefficients: Vec<Vec<Vec<Cx>>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PeterWeylDoc {
    pub format: String,
    pub haar: Vec<Cx>,
    pub blocks: Vec<BlockDoc>,
    pub report: AxiomReport,
}

impl PeterWeylDoc {
    pub fn new(h: &HaarState, pw: &PeterWeylData, report: AxiomReport) -> Self {
        let blocks = pw
            .blocks
            .iter()
            .map(|b| BlockDoc {
                dim: b.dim,
                trivial: b.trivial,
                m: b.m,
                f: mat_doc(&b.f),
                coefficients: (0..b.dim).map(|i| (0..b.dim).map(|j| vec_doc(b.coeff(i, j))).collect()).collect(),
            })
            .collect();
        PeterWeylDoc { format: PETER_WEYL_FORMAT.into(), haar: vec_doc(&h.coeffs), blocks, report }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TranscriptDoc {
    pub format: String,
    pub max_commutator: f64,
    pub report: AxiomReport,
}

impl TranscriptDoc {
    pub fn new(max_commutator: f64, report: AxiomReport) -> Self {
        TranscriptDoc { format: TRANSCRIPT_FORMAT.into(), max_commutator, report }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerdictDoc {
    pub passed: bool,
    pub report: AxiomReport,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CategoryDoc {
    pub format: String,
    pub corep_validity: VerdictDoc,
    pub dirac_equivariance: VerdictDoc,
    pub tau_preservation: VerdictDoc,
    pub member: bool,
    pub failing: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub twisted: Option<Box<CategoryDoc>>,
}

impl CategoryDoc {
    pub fn new(rep: &crate::deform::CategoryReport, twisted: Option<&crate::deform::CategoryReport>) -> Self {
        let verdict = |v: &crate::deform::Verdict| VerdictDoc { passed: v.passed, report: v.report.clone() };
        CategoryDoc {
            format: CATEGORY_FORMAT.into(),
            corep_validity: verdict(&rep.corep_validity),
            dirac_equivariance: verdict(&rep.dirac_equivariance),
            tau_preservation: verdict(&rep.tau_preservation),
            member: rep.member,
            failing: rep.failing().iter().map(|s| s.to_string()).collect(),
            twisted: twisted.map(|t| Box::new(CategoryDoc::new(t, None))),
        }
    }
}

/// One check of a verification suite.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteCheck {
    pub id: String,
    pub anchor: String,
    pub criterion: u32,
    pub residual: f64,
    pub threshold: f64,
    pub passed: bool,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub format: String,
    pub suite: String,
    pub tolerance: f64,
    pub seed: u64,
    pub checks: Vec<SuiteCheck>,
    pub passed: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<u64>,
}

impl VerificationReport {
    pub fn new(suite: &str, ctx: &ScalarContext, mut checks: Vec<SuiteCheck>) -> Self {
        checks.sort_by(|a, b| a.criterion.cmp(&b.criterion).then_with(|| a.id.cmp(&b.id)));
        let passed = checks.iter().all(|c| c.passed);
        VerificationReport {
            format: VERIFICATION_FORMAT.into(),
            suite: suite.into(),
            tolerance: ctx.tolerance,
            seed: ctx.seed,
            checks,
            passed,
            wall_time_ms: None,
        }
    }

    pub fn text(&self) -> String {
        let mut s = format!("suite {} (tolerance {:.1e}, seed {})\n", self.suite, self.tolerance, self.seed);
        for c in &self.checks {
            s.push_str(&format!(
                "{:<4} [{:>2}] {:<36} residual {:.3e} (threshold {:.1e})  {}\n",
                if c.passed { "ok" } else { "FAIL" },
                c.criterion,
                c.id,
                c.residual,
                c.threshold,
                c.anchor
            ));
            if !c.detail.is_empty() {
                s.push_str(&format!("          {}\n", c.detail));
            }
        }
        s.push_str(if self.passed { "overall: PASS\n" } else { "overall: FAIL\n" });
        s
    }
}

/// Parses a square complex matrix given as nested `[re, im]` rows.
pub fn parse_operator(rows: &[Vec<Cx>]) -> Result<DMatrix<C64>> {
    parse_square(rows, "operator")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use proptest::prelude::*;

    #[test]
    fn hopf_document_round_trips_bit_exactly() {
        let (host, c) = catalog::named_pair("c-d6", "c-d6/klein-gauged").unwrap();
        let tw = crate::twist::twist_algebra(&host, &c, &ScalarContext::default()).unwrap();
        let text = to_json(&HopfDoc::from_algebra(&tw.twisted)).unwrap();
        let back = from_json::<HopfDoc>(&text).unwrap().to_algebra().unwrap();
        assert!(back == tw.twisted);
    }

    #[test]
    fn cocycle_host_hash_is_checked() {
        let (host, c) = catalog::named_pair("cg-z2z2", "cg-z2z2/bicharacter").unwrap();
        let doc = CocycleDoc::new(&host, &c);
        let ctx = ScalarContext::default();
        assert_eq!(doc.to_cocycle(&host, &ctx).unwrap(), c);
        let other = catalog::named_algebra("c-z2z2").unwrap();
        assert!(matches!(doc.to_cocycle(&other, &ctx), Err(Error::Parse(_))));
    }

    #[test]
    fn corep_and_triple_round_trip() {
        let t = catalog::named_triple("z2z2-torus").unwrap();
        let back = from_json::<CorepDoc>(&to_json(&CorepDoc::new(&t.corep)).unwrap()).unwrap().to_corep().unwrap();
        assert_eq!(back, t.corep);
        let doc = TripleDoc::new(&t.triple, Some(&t.volume));
        let (st, r) = from_json::<TripleDoc>(&to_json(&doc).unwrap()).unwrap().to_triple().unwrap();
        assert_eq!(st, t.triple);
        assert_eq!(r, t.volume);
    }

    #[test]
    fn wrong_format_tag_is_a_parse_error() {
        let mut doc = HopfDoc::from_algebra(&catalog::named_algebra("c-z2").unwrap());
        doc.format = "hopf-algebra.v2".into();
        assert!(matches!(doc.to_algebra(), Err(Error::Parse(_))));
    }

    proptest! {
        #[test]
        fn complex_matrices_round_trip(vals in proptest::collection::vec(any::<f64>().prop_filter("finite", |x| x.is_finite()), 18)) {
            let m = DMatrix::from_fn(3, 3, |i, j| C64::new(vals[2 * (3 * i + j)], vals[2 * (3 * i + j) + 1]));
            let text = serde_json::to_string(&mat_doc(&m)).unwrap();
            let rows: Vec<Vec<Cx>> = serde_json::from_str(&text).unwrap();
            prop_assert_eq!(parse_operator(&rows).unwrap(), m);
        }

        #[test]
        fn verification_report_round_trips(res in 0.0f64..1.0, seed in any::<u64>()) {
            let ctx = ScalarContext::new(1e-9, seed);
            let check = SuiteCheck { id: "x".into(), anchor: "a".into(), criterion: 1, residual: res, threshold: 1e-9, passed: res <= 1e-9, detail: String::new() };
            let rep = VerificationReport::new("paper", &ctx, vec![check]);
            let back: VerificationReport = from_json(&to_json(&rep).unwrap()).unwrap();
            prop_assert_eq!(back, rep);
        }
    }
}
