//! Acceptance run: every criterion at its stated tolerance, one line each.
//!
//! Criterion 5 asks for a basis commutator above 0.5 after twisting C(D4) by
//! a cocycle induced from the Klein subgroup. That twist is commutative (both
//! Klein subgroups of D4 are normal and the cocycle class is fixed by
//! conjugation), so the witness is implemented as stated and fails. The test
//! pins the failing set to exactly that criterion: any other failure, or a
//! pass of criterion 5, fails the test.

use cqg_twist::io::SuiteCheck;
use cqg_twist::scalar::ScalarContext;
use cqg_twist::suite::{run_criterion, CRITERIA};
use std::collections::BTreeSet;
use std::process::Command;

const KNOWN_UNATTAINABLE: [u32; 1] = [5];

fn cli(args: &[&str]) -> Vec<u8> {
    let out = Command::new(env!("CARGO_BIN_EXE_cqg-twist")).args(args).output().expect("binary runs");
    assert!(out.status.code().is_some_and(|c| c <= 1), "{}", String::from_utf8_lossy(&out.stderr));
    out.stdout
}

/// Byte-identical CLI output across two runs with the same seed.
fn cli_determinism() -> SuiteCheck {
    let runs = [
        vec!["verify", "--suite", "paper", "--seed", "11"],
        vec!["peter-weyl", "@c-d6", "--seed", "11"],
        vec!["twist", "@c-d6", "@c-d6/klein-gauged", "--seed", "11"],
        vec!["deform-triple", "@d4-regular", "--seed", "11"],
    ];
    let identical = runs.iter().all(|args| cli(args) == cli(args));
    SuiteCheck {
        id: "cli-byte-identical".into(),
        anchor: "identical seeds give byte-identical reports".into(),
        criterion: 13,
        residual: if identical { 0.0 } else { 1.0 },
        threshold: 0.0,
        passed: identical,
        detail: String::new(),
    }
}

#[test]
fn acceptance() {
    let ctx = ScalarContext::default();
    let mut failing = BTreeSet::new();
    for n in 1..=CRITERIA {
        let mut checks = run_criterion(n, &ctx);
        if n == 13 {
            checks.push(cli_determinism());
        }
        assert!(!checks.is_empty(), "criterion {n} has no checks");
        let passed = checks.iter().all(|c| c.passed);
        println!("criterion {n:>2}: {}", if passed { "PASS" } else { "FAIL" });
        for c in &checks {
            println!(
                "    {:<4} {:<32} residual {:.3e} threshold {:.1e}{}",
                if c.passed { "ok" } else { "FAIL" },
                c.id,
                c.residual,
                c.threshold,
                if c.detail.is_empty() { String::new() } else { format!("  ({})", c.detail) }
            );
        }
        if !passed {
            failing.insert(n);
        }
    }
    let expected: BTreeSet<u32> = KNOWN_UNATTAINABLE.into_iter().collect();
    assert_eq!(failing, expected, "failing criteria differ from the known unattainable set");
}
