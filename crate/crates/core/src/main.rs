use clap::{Args, Parser, Subcommand, ValueEnum};
use cqg_twist::catalog::{self, TripleSetup};
use cqg_twist::cocycle::{induce, verify_cocycle, DualCocycle, QuotientMorphism};
use cqg_twist::corep::{decompose_corep, verify_corep, UnitaryCorep};
use cqg_twist::deform::{check_membership, check_membership_with_twist, deform_triple, RTwistedVolume, SpectralTriple};
use cqg_twist::hopf::FiniteHopfStarAlgebra;
use cqg_twist::io::{
    from_json, mat_doc, to_json, vec_doc, CategoryDoc, CocycleDoc, CorepDoc, HopfDoc, MorphismDoc, PeterWeylDoc, TranscriptDoc, TripleDoc,
};
use cqg_twist::peter_weyl::{decompose, haar_invariance_residual, haar_state, verify_peter_weyl};
use cqg_twist::report::AxiomReport;
use cqg_twist::scalar::ScalarContext;
use cqg_twist::suite;
use cqg_twist::twist::{max_commutator, roundtrip, twist_algebra};
use cqg_twist::{Error, Result};
use serde_json::{json, Value};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

#[derive(Parser)]
#[command(name = "cqg-twist", version, about = "Finite quantum groups, cocycle twists and deformed spectral triples")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Comparison tolerance for every residual check.
    #[arg(long, global = true, default_value_t = 1e-9)]
    tolerance: f64,
    /// Seed for randomized subroutines.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Write the report to this path instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Include wall time in the verification report (breaks byte-identity across runs).
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

/// Inputs are file paths or `@name` catalog entries.
#[derive(Subcommand)]
enum Command {
    /// Verify the Hopf *-algebra axioms.
    CheckHopf { algebra: String },
    /// Compute the Haar state.
    Haar { algebra: String },
    /// Decompose into irreducible blocks with matrix coefficients and F matrices.
    PeterWeyl { algebra: String },
    /// Verify a dual 2-cocycle on an algebra.
    CheckCocycle { algebra: String, cocycle: String },
    /// Pull a cocycle on the target back along a quotient morphism.
    InduceCocycle {
        cocycle: String,
        morphism: String,
        #[arg(long)]
        source: Option<String>,
        #[arg(long)]
        target: Option<String>,
    },
    /// Twist an algebra by a cocycle.
    Twist {
        algebra: String,
        cocycle: String,
        /// Also write the twisted algebra as hopf-algebra.v1.
        #[arg(long)]
        algebra_out: Option<PathBuf>,
    },
    /// Twist by a cocycle and back by its inverse.
    Roundtrip { algebra: String, cocycle: String },
    /// Verify a unitary corepresentation and decompose it.
    CheckCorep { algebra: String, corep: String },
    /// Deform a spectral triple by a cocycle.
    DeformTriple {
        triple: String,
        #[arg(long)]
        algebra: Option<String>,
        #[arg(long)]
        corep: Option<String>,
        #[arg(long)]
        cocycle: Option<String>,
    },
    /// Check membership in the category of the triple, and after twisting when a cocycle is given.
    CheckMembership {
        triple: String,
        #[arg(long)]
        algebra: Option<String>,
        #[arg(long)]
        corep: Option<String>,
        #[arg(long)]
        cocycle: Option<String>,
    },
    /// Run a verification suite.
    Verify {
        #[arg(long, default_value = suite::SUITE_NAME)]
        suite: String,
    },
    /// Browse the built-in catalog.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
}

#[derive(Subcommand)]
enum CatalogAction {
    /// List all entries.
    List,
    /// Print an entry in its JSON format.
    Emit { name: String },
}

/// A command result: the document, a text rendering and the verdict.
struct Outcome {
    doc: Value,
    text: String,
    passed: bool,
}

impl Outcome {
    fn new(doc: Value, text: String, passed: bool) -> Self {
        Outcome { doc, text, passed }
    }

    fn report(doc: Value, rep: &AxiomReport) -> Self {
        Outcome { doc, text: rep.to_string(), passed: rep.passed() }
    }
}

fn value<T: serde::Serialize>(doc: &T) -> Result<Value> {
    Ok(serde_json::to_value(doc)?)
}

fn read(path: &str) -> Result<String> {
    Ok(std::fs::read_to_string(path)?)
}

fn catalog_name(input: &str) -> Option<&str> {
    input.strip_prefix('@')
}

fn load_algebra(input: &str) -> Result<FiniteHopfStarAlgebra> {
    match catalog_name(input) {
        Some(name) => catalog::named_algebra(name),
        None => from_json::<HopfDoc>(&read(input)?)?.to_algebra(),
    }
}

fn load_cocycle(input: &str, host: &FiniteHopfStarAlgebra, ctx: &ScalarContext) -> Result<DualCocycle> {
    match catalog_name(input) {
        Some(name) => {
            let (alg, own, c) = catalog::named_cocycle(name, ctx)?;
            if own != *host {
                return Err(Error::Parse(format!("cocycle `{name}` lives on `@{alg}`")));
            }
            Ok(c)
        }
        None => from_json::<CocycleDoc>(&read(input)?)?.to_cocycle(host, ctx),
    }
}

fn load_corep(input: &str, host: &FiniteHopfStarAlgebra) -> Result<UnitaryCorep> {
    let u = match catalog_name(input) {
        Some(name) => {
            let (alg, own, u) = catalog::named_corep(name)?;
            if own != *host {
                return Err(Error::Parse(format!("corepresentation `{name}` lives on `@{alg}`")));
            }
            u
        }
        None => from_json::<CorepDoc>(&read(input)?)?.to_corep()?,
    };
    if u.host_dim() != host.dim() {
        return Err(Error::Dimension("corepresentation entries do not match the algebra dimension".into()));
    }
    Ok(u)
}

/// Catalog triple with optional overrides, or a triple file with all parts given.
struct TripleInput {
    host: FiniteHopfStarAlgebra,
    corep: UnitaryCorep,
    triple: SpectralTriple,
    volume: RTwistedVolume,
    cocycle: Option<DualCocycle>,
}

fn load_triple(triple: &str, algebra: Option<&str>, corep: Option<&str>, cocycle: Option<&str>, ctx: &ScalarContext) -> Result<TripleInput> {
    let setup: Option<TripleSetup> = catalog_name(triple).map(catalog::named_triple).transpose()?;
    let (st, volume) = match &setup {
        Some(s) => (s.triple.clone(), s.volume.clone()),
        None => from_json::<TripleDoc>(&read(triple)?)?.to_triple()?,
    };
    let missing = |what: &str| Error::Parse(format!("a triple file needs --{what}"));
    let host = match (algebra, &setup) {
        (Some(a), _) => load_algebra(a)?,
        (None, Some(s)) => s.host.clone(),
        (None, None) => return Err(missing("algebra")),
    };
    let corep = match (corep, &setup) {
        (Some(c), _) => load_corep(c, &host)?,
        (None, Some(s)) if algebra.is_none() => s.corep.clone(),
        _ => return Err(missing("corep")),
    };
    let cocycle = match (cocycle, &setup) {
        (Some(c), _) => Some(load_cocycle(c, &host, ctx)?),
        (None, Some(s)) if algebra.is_none() => match &s.cocycle {
            Some(name) => Some(catalog::named_cocycle(name, ctx)?.2),
            None => Some(DualCocycle::trivial(&host)),
        },
        _ => None,
    };
    if corep.hdim() != st.hdim {
        return Err(Error::Dimension("corepresentation and triple act on different Hilbert spaces".into()));
    }
    Ok(TripleInput { host, corep, triple: st, volume, cocycle })
}

fn load_morphism(
    input: &str,
    source: Option<&str>,
    target: Option<&str>,
) -> Result<(FiniteHopfStarAlgebra, FiniteHopfStarAlgebra, QuotientMorphism)> {
    match catalog_name(input) {
        Some(name) => catalog::named_morphism(name),
        None => {
            let (s, t) = match (source, target) {
                (Some(s), Some(t)) => (load_algebra(s)?, load_algebra(t)?),
                _ => return Err(Error::Parse("a morphism file needs --source and --target".into())),
            };
            let m = from_json::<MorphismDoc>(&read(input)?)?.to_morphism(&s, &t)?;
            Ok((s, t, m))
        }
    }
}

fn emit(name: &str, ctx: &ScalarContext) -> Result<Value> {
    let kind = catalog::entries().into_iter().find(|(_, n, _)| *n == name).map(|(k, _, _)| k);
    match kind {
        Some("algebra") => value(&HopfDoc::from_algebra(&catalog::named_algebra(name)?)),
        Some("cocycle") => {
            let (_, host, c) = catalog::named_cocycle(name, ctx)?;
            value(&CocycleDoc::new(&host, &c))
        }
        Some("corep") => value(&CorepDoc::new(&catalog::named_corep(name)?.2)),
        Some("morphism") => {
            let (s, t, m) = catalog::named_morphism(name)?;
            value(&MorphismDoc::new(&s, &t, &m))
        }
        Some("triple") => {
            let s = catalog::named_triple(name)?;
            value(&TripleDoc::new(&s.triple, Some(&s.volume)))
        }
        _ => Err(Error::UnknownCatalogName(name.to_string())),
    }
}

fn run(cmd: &Command, common: &Common) -> Result<Outcome> {
    let ctx = ScalarContext::new(common.tolerance, common.seed);
    let ctx = &ctx;
    Ok(match cmd {
        Command::CheckHopf { algebra } => {
            let rep = load_algebra(algebra)?.verify_hopf_axioms(ctx);
            Outcome::report(value(&rep)?, &rep)
        }
        Command::Haar { algebra } => {
            let a = load_algebra(algebra)?;
            let h = haar_state(&a, ctx)?;
            let mut rep = AxiomReport::new();
            rep.push("invariance", haar_invariance_residual(&a, &h), ctx.tolerance);
            Outcome::report(json!({ "haar": vec_doc(&h.coeffs), "report": rep }), &rep)
        }
        Command::PeterWeyl { algebra } => {
            let a = load_algebra(algebra)?;
            let h = haar_state(&a, ctx)?;
            let pw = decompose(&a, &h, ctx)?;
            let rep = verify_peter_weyl(&a, &h, &pw, ctx);
            let text = format!("block dimensions {:?}\n{rep}", pw.block_dims());
            Outcome::new(value(&PeterWeylDoc::new(&h, &pw, rep.clone()))?, text, rep.passed())
        }
        Command::CheckCocycle { algebra, cocycle } => {
            let a = load_algebra(algebra)?;
            let rep = verify_cocycle(&a, &load_cocycle(cocycle, &a, ctx)?, ctx)?;
            Outcome::report(value(&rep)?, &rep)
        }
        Command::InduceCocycle { cocycle, morphism, source, target } => {
            let (s, t, m) = load_morphism(morphism, source.as_deref(), target.as_deref())?;
            let c = load_cocycle(cocycle, &t, ctx)?;
            let induced = induce(&c, &m, &s, &t, ctx)?;
            let rep = verify_cocycle(&s, &induced, ctx)?;
            let text = rep.to_string();
            Outcome::new(value(&CocycleDoc::new(&s, &induced))?, text, rep.passed())
        }
        Command::Twist { algebra, cocycle, algebra_out } => {
            let a = load_algebra(algebra)?;
            let tw = twist_algebra(&a, &load_cocycle(cocycle, &a, ctx)?, ctx)?;
            if let Some(path) = algebra_out {
                std::fs::write(path, to_json(&HopfDoc::from_algebra(&tw.twisted))?)?;
            }
            let (m, pair) = max_commutator(&tw.twisted);
            let text = format!("{}largest basis commutator {m:.3e} at {pair:?}\n", tw.transcript);
            Outcome::new(value(&TranscriptDoc::new(m, tw.transcript.clone()))?, text, tw.transcript.passed())
        }
        Command::Roundtrip { algebra, cocycle } => {
            let a = load_algebra(algebra)?;
            let rep = roundtrip(&a, &load_cocycle(cocycle, &a, ctx)?, ctx)?;
            Outcome::report(value(&rep)?, &rep)
        }
        Command::CheckCorep { algebra, corep } => {
            let a = load_algebra(algebra)?;
            let u = load_corep(corep, &a)?;
            let rep = verify_corep(&a, &u, ctx)?;
            let mult = if rep.passed() {
                let pw = decompose(&a, &haar_state(&a, ctx)?, ctx)?;
                let sd = decompose_corep(&a, &u, &pw, ctx)?;
                sd.blocks.iter().map(|b| json!({ "irrep": b.irrep, "dim": b.dim, "multiplicity": b.multiplicity })).collect()
            } else {
                Vec::new()
            };
            let text = format!("{rep}multiplicities {}\n", Value::Array(mult.clone()));
            Outcome::new(json!({ "report": rep, "multiplicities": mult }), text, rep.passed())
        }
        Command::DeformTriple { triple, algebra, corep, cocycle } => {
            let t = load_triple(triple, algebra.as_deref(), corep.as_deref(), cocycle.as_deref(), ctx)?;
            let c = t.cocycle.clone().unwrap_or_else(|| DualCocycle::trivial(&t.host));
            let pw = decompose(&t.host, &haar_state(&t.host, ctx)?, ctx)?;
            let d = deform_triple(&t.host, &pw, &t.triple, &t.corep, &c, ctx)?;
            let tw = twist_algebra(&t.host, &c, ctx)?;
            let (before, after) = check_membership_with_twist(&t.host, &tw.twisted, &t.corep, &c, &t.triple, &t.volume, ctx)?;
            let category = CategoryDoc::new(&before, Some(&after));
            let doc = json!({
                "generators": d.algebra.images.iter().map(mat_doc).collect::<Vec<_>>(),
                "labels": t.triple.labels,
                "dirac": mat_doc(&d.dirac),
                "generated_dim": d.algebra.generated_dim,
                "original_generated_dim": d.algebra.original_generated_dim,
                "transcript": d.transcript,
                "category": category,
            });
            let text = format!(
                "{}generated algebra dimension {} (original {})\nmember before twist {}, after twist {}\n",
                d.transcript, d.algebra.generated_dim, d.algebra.original_generated_dim, before.member, after.member
            );
            Outcome::new(doc, text, d.transcript.passed() && before.member == after.member)
        }
        Command::CheckMembership { triple, algebra, corep, cocycle } => {
            let t = load_triple(triple, algebra.as_deref(), corep.as_deref(), cocycle.as_deref(), ctx)?;
            let before = check_membership(&t.host, &t.corep, &t.triple, &t.volume, ctx);
            let after = match (&t.cocycle, before.member) {
                (Some(c), true) => {
                    let tw = twist_algebra(&t.host, c, ctx)?;
                    Some(check_membership_with_twist(&t.host, &tw.twisted, &t.corep, c, &t.triple, &t.volume, ctx)?.1)
                }
                _ => None,
            };
            let doc = CategoryDoc::new(&before, after.as_ref());
            let mut text = format!("member {}\nfailing {:?}\n", before.member, before.failing());
            if let Some(a) = &after {
                text.push_str(&format!("twisted member {}\n", a.member));
            }
            let passed = before.member && after.as_ref().is_none_or(|a| a.member);
            Outcome::new(value(&doc)?, text, passed)
        }
        Command::Verify { suite: name } => {
            if name != suite::SUITE_NAME {
                return Err(Error::UnknownCatalogName(format!("suite {name}")));
            }
            let start = Instant::now();
            let mut rep = suite::run_suite(ctx);
            if common.timing {
                rep.wall_time_ms = Some(start.elapsed().as_millis() as u64);
            }
            Outcome::new(value(&rep)?, rep.text(), rep.passed)
        }
        Command::Catalog { action: CatalogAction::List } => {
            let entries = catalog::entries();
            let text = entries.iter().map(|(k, n, d)| format!("{k:<9} {n:<22} {d}\n")).collect();
            let doc = entries.iter().map(|(k, n, d)| json!({ "kind": k, "name": n, "description": d })).collect();
            Outcome::new(Value::Array(doc), text, true)
        }
        Command::Catalog { action: CatalogAction::Emit { name } } => {
            let doc = emit(name, ctx)?;
            Outcome::new(doc.clone(), serde_json::to_string_pretty(&doc)? + "\n", true)
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if !(cli.common.tolerance > 0.0) {
        eprintln!("error: --tolerance must be positive");
        return ExitCode::from(2);
    }
    match run(&cli.command, &cli.common) {
        Ok(out) => {
            let body = match cli.common.format {
                Format::Json => serde_json::to_string_pretty(&out.doc).expect("serializable") + "\n",
                Format::Text => out.text,
            };
            let written = match &cli.common.out {
                Some(path) => std::fs::write(path, body),
                None => {
                    print!("{body}");
                    Ok(())
                }
            };
            if let Err(e) = written {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            ExitCode::from(if out.passed { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_input_error() { 2 } else { 1 })
        }
    }
}
