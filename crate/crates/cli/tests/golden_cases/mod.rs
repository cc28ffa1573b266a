//! The golden-file suite: every subcommand on the corpus under
//! `tests/corpus`, run with the corpus as working directory.
#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::Command;

pub fn corpus_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/corpus")
}

pub fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

/// (golden file stem, arguments)
pub const CASES: &[(&str, &[&str])] = &[
    ("validate-span", &["validate", "span.json"]),
    ("validate-corrupted", &["validate", "corrupted.json"]),
    ("validate-dangling", &["validate", "dangling.json"]),
    ("validate-pair", &["validate", "pair.json"]),
    ("validate-factor", &["validate", "factor.json"]),
    ("validate-two-category", &["validate", "parallel-2cell.json"]),
    ("validate-two-functor", &["validate", "arrow-sets2.json"]),
    ("validate-quiver", &["validate", "a3.json"]),
    ("validate-cyclic-quiver", &["validate", "loop.json"]),
    ("product", &["product", "arrow", "span.json"]),
    ("inserter", &["inserter", "pair.json", "F", "G"]),
    ("iso-inserter", &["iso-inserter", "pair.json", "F", "G"]),
    ("equifier", &["equifier", "pair.json", "phi", "psi"]),
    (
        "pseudopullback-iso",
        &["pseudopullback", "iso.json", "F", "G", "--method", "both"],
    ),
    (
        "pseudopullback-pie",
        &["pseudopullback", "pair.json", "F", "G", "--method", "pie"],
    ),
    (
        "funcat-arrow-sets1",
        &["funcat", "C=arrow", "K=sets1", "--method", "both"],
    ),
    (
        "funcat-span",
        &[
            "funcat",
            "span.json",
            "sets1",
            "--method",
            "both",
            "--mode",
            "equivalence",
        ],
    ),
    ("funcat-budget", &["funcat", "chain3", "sets3", "--budget", "10"]),
    ("quiver-rep-a2", &["quiver-rep", "a2", "p=2", "d=1", "--method", "both"]),
    (
        "quiver-rep-a3",
        &["quiver-rep", "a3.json", "p=3", "d=1", "--method", "pie"],
    ),
    ("quiver-rep-square", &["quiver-rep", "square", "--method", "both"]),
    ("quiver-rep-cyclic", &["quiver-rep", "loop.json"]),
    ("quiver-rep-bad-field", &["quiver-rep", "a2", "p=4"]),
    ("laxlim", &["laxlim", "arrow-sets2.json", "--method", "both"]),
    ("oplaxlim", &["oplaxlim", "arrow-chain", "--method", "both"]),
    (
        "pseudolim",
        &["pseudolim", "cospan-sets1", "--method", "both", "--seedless"],
    ),
    ("weighted-terminal-shape", &["weighted", "terminal-sets2"]),
    ("weighted-arrow", &["weighted", "H=arrow-sets2.json"]),
    (
        "factorize-equifier",
        &[
            "factorize",
            "factor.json",
            "presentation=self",
            "case=equifier",
            "f=0<1",
            "phi=phi",
            "psi=psi",
        ],
    ),
    (
        "factorize-inserter",
        &[
            "factorize",
            "factor.json",
            "presentation=self",
            "case=inserter",
            "F=F",
            "G=G",
            "s=id_0",
            "t=0<1",
            "sigma=1->2:[0]",
            "phi=1->1:[0]",
        ],
    ),
    (
        "factorize-analysis",
        &[
            "factorize",
            "factor.json",
            "case=analysis",
            "F=F",
            "G=G",
            "object=ins(K=1;phi=1->1:[0])",
            "context=all",
        ],
    ),
    (
        "factorize-analysis-empty",
        &[
            "factorize",
            "factor.json",
            "case=analysis",
            "F=F",
            "G=G",
            "object=ins(K=0;phi=1->2:[0])",
            "context=none",
        ],
    ),
    ("cofinal-top", &["cofinal", "factor.json", "top"]),
    ("cofinal-bottom", &["cofinal", "factor.json", "bottom"]),
    ("filtered-chain", &["filtered", "chain3"]),
    ("filtered-discrete", &["filtered", "discrete2"]),
    ("compare-iso", &["compare", "walking-iso", "terminal"]),
    (
        "compare-equivalence",
        &["compare", "walking-iso", "terminal", "--mode", "equivalence"],
    ),
    ("text-report", &["funcat", "arrow", "sets1", "--output", "text"]),
    ("unknown-key", &["filtered", "X=chain3"]),
];

/// Runs one case and renders stdout, stderr and the exit status as one
/// string. Structured output unless the case asks otherwise.
pub fn run_case(args: &[&str]) -> String {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_fincat"));
    cmd.current_dir(corpus_dir()).args(args);
    if !args.contains(&"--output") {
        cmd.args(["--output", "structured"]);
    }
    let out = cmd.output().expect("run fincat");
    format!(
        "{}--- stderr\n{}--- exit {}\n",
        String::from_utf8_lossy(&out.stdout),
        String::from_utf8_lossy(&out.stderr),
        out.status.code().unwrap_or(-1)
    )
}

pub fn run_all() -> Vec<(&'static str, String)> {
    CASES.iter().map(|(name, args)| (*name, run_case(args))).collect()
}
