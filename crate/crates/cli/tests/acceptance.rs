//! Acceptance run: one PASS/FAIL line per criterion, exit status nonzero if any fails.
//!
//! Criteria 1–10 come from one `hcplx check --seed 7 --instances 1000 --format structured`
//! run of the binary under test; criterion 11 repeats that run, compares the
//! structured reports byte for byte and round-trips every fixture.

use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use hcplx_cli::format::{emit_complex, emit_pair, emit_strat, parse_complex, parse_pair, parse_strat};

const SEED: &str = "7";
const INSTANCES: &str = "1000";
const RUNTIME_LIMIT: Duration = Duration::from_secs(60);

const TITLES: [&str; 11] = [
    "intermediate complex: invariants and dim H(P) = oracle image dims",
    "five-way equivalence agrees in every degree",
    "Friedrichs kernel identity",
    "Kodaira decomposition and dim H = dim harmonic",
    "complementary links mirror harmonic dimensions",
    "Lefschetz image duality on surfaces with boundary",
    "intersection homology oracle",
    "p_g bracket table",
    "signatures, reversal, basis change, nondegeneracy",
    "index identity",
    "determinism and round-trip",
];

struct Row {
    criterion: usize,
    suite: String,
    cases: usize,
    failures: usize,
}

fn check_run() -> (String, Duration, bool) {
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_hcplx"))
        .args(["check", "--seed", SEED, "--instances", INSTANCES, "--format", "structured"])
        .output()
        .expect("run hcplx");
    (String::from_utf8(out.stdout).expect("utf-8 report"), start.elapsed(), out.status.success())
}

fn rows(report: &str) -> Vec<Row> {
    report
        .lines()
        .filter_map(|l| l.strip_prefix("row "))
        .map(|l| {
            let f: Vec<&str> = l.split(' ').collect();
            Row {
                criterion: f[0].parse().expect("criterion"),
                suite: f[1].to_string(),
                cases: f[2].parse().expect("cases"),
                failures: f[3].parse().expect("failures"),
            }
        })
        .collect()
}

fn fixtures() -> Vec<PathBuf> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    let mut paths: Vec<PathBuf> = std::fs::read_dir(dir).expect("fixtures").map(|e| e.expect("entry").path()).collect();
    paths.sort();
    paths
}

/// `None` when the fixture is canonical and survives parse∘emit unchanged.
fn round_trip(path: &Path) -> Option<String> {
    let text = match std::fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => return Some(e.to_string()),
    };
    let again = match path.extension().and_then(|e| e.to_str()) {
        Some("cplx") => parse_complex(&text).map(|c| emit_complex(&c)),
        Some("pair") => parse_pair(&text).map(|p| emit_pair(&p)),
        Some("strat") => parse_strat(&text).map(|x| emit_strat(&x)),
        _ => return Some("unknown extension".into()),
    };
    match again {
        Ok(t) if t == text => None,
        Ok(_) => Some("re-emitted text differs".into()),
        Err(e) => Some(e.to_string()),
    }
}

fn main() {
    let (first, elapsed, ok_first) = check_run();
    let (second, _, _) = check_run();
    let table = rows(&first);
    let mut all = true;
    for (k, title) in TITLES.iter().enumerate() {
        let criterion = k + 1;
        let row = table.iter().find(|r| r.criterion == criterion);
        let (mut pass, mut detail) = match row {
            Some(r) => {
                (r.failures == 0 && r.cases > 0, format!("{}: {} cases, {} failures", r.suite, r.cases, r.failures))
            }
            None => (false, "missing from the report".to_string()),
        };
        if criterion == 1 {
            pass &= elapsed < RUNTIME_LIMIT;
            detail += &format!(", full check {:.1}s", elapsed.as_secs_f64());
        }
        if criterion == 11 {
            let identical = first == second && !first.is_empty();
            let bad: Vec<String> =
                fixtures().iter().filter_map(|p| round_trip(p).map(|e| format!("{}: {e}", p.display()))).collect();
            pass &= identical && bad.is_empty();
            detail += &format!(
                ", reports identical: {identical}, fixtures round-tripped: {}/{}",
                fixtures().len() - bad.len(),
                fixtures().len()
            );
            for b in &bad {
                detail += &format!("; {b}");
            }
        }
        all &= pass;
        println!("criterion {criterion:>2} {}: {title} ({detail})", if pass { "PASS" } else { "FAIL" });
    }
    if !ok_first {
        println!("check run reported failures:");
        for l in first.lines().filter(|l| l.starts_with("failure ")) {
            println!("  {l}");
        }
    }
    if !(all && ok_first) {
        std::process::exit(1);
    }
}
