//! One pass/fail line per acceptance criterion. All comparisons are exact.
//!
//! Weight 8 of the dimension table runs only with FMES_HEAVY=1. The process
//! exits nonzero if a criterion disagrees with its expected status.

use std::collections::BTreeMap;
use std::process::Command;
use std::time::{Duration, Instant};

use fmes_cli::suites::{self, CheckRecord, Status, SuiteOptions, FMES_DIMS};
use fmes_core::quotient::{EchelonBasis, IdealKind, Quotient};

const OPTS: SuiteOptions = SuiteOptions { max_weight: 6, q_order: 25 };

struct Line {
    passed: bool,
    detail: String,
}

fn suite(names: &[&str], opts: &SuiteOptions) -> Vec<CheckRecord> {
    suites::run(names, opts).unwrap_or_else(|e| panic!("suites {names:?}: {e}"))
}

fn failures(records: &[CheckRecord]) -> Vec<&CheckRecord> {
    records.iter().filter(|r| r.status == Status::Fail).collect()
}

fn summarize(records: &[CheckRecord]) -> Line {
    let bad = failures(records);
    let detail = match bad.first() {
        None => format!("{} checks exact", records.len()),
        Some(r) => format!("{} of {} checks fail, first {}: {}", bad.len(), records.len(), r.id, r.residual),
    };
    Line { passed: bad.is_empty(), detail }
}

fn criterion_1() -> Line {
    let q = Quotient::global();
    let start = Instant::now();
    let low: Vec<usize> = (0..=6).map(|k| q.dim(IdealKind::SwapIdeal, k).unwrap()).collect();
    let t6 = start.elapsed();
    let d7 = q.dim(IdealKind::SwapIdeal, 7).unwrap();
    let t7 = start.elapsed();
    let mut passed =
        low == FMES_DIMS[..=6] && t6 < Duration::from_secs(60) && d7 == 41 && t7 < Duration::from_secs(600);
    let mut detail = format!("dims {low:?} in {:.1}s, k=7: {d7} in {:.1}s", t6.as_secs_f64(), t7.as_secs_f64());
    if std::env::var("FMES_HEAVY").is_ok_and(|v| v == "1") {
        let d8 = q.dim(IdealKind::SwapIdeal, 8).unwrap();
        passed &= d8 == 73;
        detail.push_str(&format!(", k=8: {d8}"));
    } else {
        detail.push_str(", k=8 skipped (FMES_HEAVY=1)");
    }
    Line { passed, detail }
}

fn criterion_2() -> Line {
    let records = suite(&["sl2"], &OPTS);
    let bad = failures(&records);
    let triple_ok = records
        .iter()
        .filter(|r| ["[W,D]", "[W,delta]", "[delta,D]"].iter().any(|p| r.id.starts_with(&format!("sl2/{p}"))))
        .all(|r| r.status == Status::Pass);
    let sum_ok = records.iter().filter(|r| r.id.contains("[delta4+delta5,D]")).all(|r| r.status == Status::Pass);
    let mut failing: Vec<&str> = bad.iter().map(|r| r.id.rsplit_once('/').map_or(&r.id[..], |x| x.0)).collect();
    failing.dedup();
    Line {
        passed: bad.is_empty(),
        detail: format!(
            "sl2 relations to weight 6 {}; [delta4+delta5,D] = 0 {}; failing: {}",
            if triple_ok { "exact" } else { "FAIL" },
            if sum_ok { "exact" } else { "FAIL" },
            if failing.is_empty() { "none".to_string() } else { failing.join(", ") }
        ),
    }
}

fn criterion_5() -> Line {
    let records = suite(&["euler"], &OPTS);
    let q = fmes_core::modular::euler_decomposition(2).unwrap().primitive;
    let mut line = summarize(&records);
    line.detail.push_str(&format!("; G(4) - 2/5 G(2)^2 = D({q}) mod I"));
    line
}

fn criterion_8() -> Line {
    let start = Instant::now();
    let records = suite(&["qseries"], &OPTS);
    let t = start.elapsed();
    let mut line = summarize(&records);
    line.passed &= t < Duration::from_secs(120);
    line.detail.push_str(&format!(", order 25 in {:.1}s", t.as_secs_f64()));
    line
}

fn criterion_11() -> Line {
    let records = suite(&["conjectures"], &OPTS);
    let findings: Vec<String> =
        records.iter().filter(|r| !r.id.contains("Fil0")).map(|r| format!("{}: {}", r.id, r.residual)).collect();
    let fil: Vec<&str> = records.iter().filter(|r| r.id.contains("Fil0")).map(|r| r.residual.as_str()).collect();
    Line {
        passed: records.iter().all(|r| r.status == Status::Finding),
        detail: format!("findings only; {}; Fil0 vs FMES [{}]", findings.join("; "), fil.join(", ")),
    }
}

fn strip_timing(v: &mut serde_json::Value) {
    match v {
        serde_json::Value::Object(m) => {
            m.remove("elapsed_ms");
            m.values_mut().for_each(strip_timing);
        }
        serde_json::Value::Array(a) => a.iter_mut().for_each(strip_timing),
        _ => {}
    }
}

fn fmes(args: &[&str]) -> String {
    let out = Command::new(env!("CARGO_BIN_EXE_fmes")).args(args).env_remove("FMES_CONFIG").output().expect("run fmes");
    String::from_utf8(out.stdout).expect("utf-8")
}

fn without_timing(json: &str) -> String {
    let mut v: serde_json::Value = serde_json::from_str(json).expect("json report");
    strip_timing(&mut v);
    serde_json::to_string(&v).unwrap()
}

fn criterion_12() -> Line {
    let mut notes = Vec::new();
    let mut passed = true;
    for args in [
        &["dims", "--ideal", "fmes", "--max-weight", "6", "--json"][..],
        &["verify", "--suite", "sl2", "--json"][..],
        &["verify", "--suite", "balanced", "--json"][..],
    ] {
        // one worker against four: completion order must not leak into the report
        let runs: Vec<String> =
            ["1", "4"].iter().map(|t| without_timing(&fmes(&[args, &["--threads", t]].concat()))).collect();
        let same = runs[0] == runs[1];
        passed &= same;
        notes.push(format!("{} {}", args[..3].join(" "), if same { "identical" } else { "DIFFERS" }));
    }
    let dirs = [tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap()];
    for d in &dirs {
        fmes(&["cache", "--dir", d.path().to_str().unwrap(), "--build", "5"]);
    }
    let mut files = 0;
    for kind in [IdealKind::SwapIdeal, IdealKind::Combined] {
        for k in 0..=5 {
            let name = format!("{}_w{k}.basis", kind.tag());
            let a = std::fs::read(dirs[0].path().join(&name)).unwrap_or_default();
            let b = std::fs::read(dirs[1].path().join(&name)).unwrap_or_default();
            let text = String::from_utf8(a.clone()).unwrap_or_default();
            let round = EchelonBasis::from_text(&text, kind, k).map(|x| x.to_text());
            let built = EchelonBasis::build(kind, k).to_text();
            passed &= !a.is_empty() && a == b && round.as_deref() == Ok(text.as_str()) && built == text;
            files += 1;
        }
    }
    notes.push(format!("{files} cache files bit-exact across builds and reload"));
    Line { passed, detail: notes.join(", ") }
}

type Criterion = (u32, &'static str, Box<dyn Fn() -> Line>);

fn main() {
    // criteria whose failure is analysed in the decisions ledger
    let expected_fail: [u32; 1] = [2];
    let criteria: Vec<Criterion> = vec![
        (1, "graded dimensions of FMES", Box::new(criterion_1)),
        (2, "sl2 structure", Box::new(criterion_2)),
        (3, "swap equivariance", Box::new(|| summarize(&suite(&["equivariance"], &OPTS)))),
        (4, "relations modulo the swap ideal", Box::new(|| summarize(&suite(&["relations"], &OPTS)))),
        (5, "Euler relation", Box::new(criterion_5)),
        (6, "quasimodular package", Box::new(|| summarize(&suite(&["ramanujan", "chazy", "cusp"], &OPTS)))),
        (7, "formal multiple zeta values", Box::new(|| summarize(&suite(&["eds"], &OPTS)))),
        (8, "q-series oracle", Box::new(criterion_8)),
        (9, "bimoulds", Box::new(|| summarize(&suite(&["bimould"], &OPTS)))),
        (10, "balanced setup", Box::new(|| summarize(&suite(&["balanced"], &OPTS)))),
        (11, "conjecture reports", Box::new(criterion_11)),
        (12, "determinism", Box::new(criterion_12)),
    ];
    let mut unexpected = BTreeMap::new();
    for (n, name, f) in &criteria {
        let start = Instant::now();
        let line = f();
        let status = if line.passed { "PASS" } else { "FAIL" };
        println!(
            "criterion {n:>2} {status} {name} (tolerance 0, {:.1}s): {}",
            start.elapsed().as_secs_f64(),
            line.detail
        );
        if line.passed == expected_fail.contains(n) {
            unexpected.insert(*n, status);
        }
    }
    if !unexpected.is_empty() {
        eprintln!("unexpected criterion status: {unexpected:?}");
        std::process::exit(1);
    }
}
