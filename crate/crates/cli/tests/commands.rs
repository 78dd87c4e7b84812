use std::process::Command;

use fmes_cli::{run, Outcome, EXIT_CHECK_FAILURE, EXIT_PASS, EXIT_RESOURCE, EXIT_USAGE};

fn fmes(args: &[&str]) -> Outcome {
    run(std::iter::once("fmes").chain(args.iter().copied()))
}

fn ok(args: &[&str]) -> String {
    let o = fmes(args);
    assert_eq!(o.code, EXIT_PASS, "{args:?}: {}", o.stderr);
    o.stdout
}

#[test]
fn expression_commands() {
    assert_eq!(ok(&["eval", "G[2]*G[3]"]), "G[5] + G[2,3] + G[3,2]\n");
    assert_eq!(ok(&["mul", "G[2]", "G[3]"]), "G[5] + G[2,3] + G[3,2]\n");
    assert_eq!(ok(&["swap", "G[{3},{0}]"]), "1/2*G[{1},{2}]\n");
    assert_eq!(ok(&["derive", "--op", "D", "G[1]"]), "G[{2},{1}]\n");
    assert_eq!(ok(&["derive", "--op", "W", "G[2]"]), "2*G[2]\n");
    assert_eq!(ok(&["derive", "--op", "delta", "G[{2},{1}]"]), "G[1]\n");
}

#[test]
fn normal_forms() {
    // G[3] ≡ swap(G[3]) modulo the swap ideal
    assert_eq!(ok(&["nf", "--ideal", "fmes", "G[3] - 1/2*G[{1},{2}]"]), "0\n");
    assert_ne!(ok(&["nf", "--ideal", "fmes", "G[3]"]), "0\n");
    assert_eq!(ok(&["nf", "--ideal", "zf", "G[3] - G[2,1]"]), "0\n");
    let o = fmes(&["nf", "--ideal", "fmes", "G[9]", "--echelon-max-weight", "8"]);
    assert_eq!(o.code, EXIT_RESOURCE, "{}", o.stderr);
}

#[test]
fn balanced_mode() {
    assert_eq!(ok(&["eval", "b1 b0 b1"]), "-G[{1,1},{0,1}] + G[{1,1},{1,0}]\n");
    assert_eq!(ok(&["eval", "--balanced", "b1 b0 b1"]), "b1 b0 b1\n");
    assert_eq!(ok(&["eval", "--balanced", "G[{2},{1}]"]), "b2 b0\n");
    assert_eq!(fmes(&["eval", "b0 b1"]).code, EXIT_USAGE);
}

#[test]
fn dimension_tables() {
    assert_eq!(ok(&["dims", "--ideal", "fmes", "--max-weight", "6"]), "0 1\n1 1\n2 2\n3 4\n4 7\n5 13\n6 23\n");
    assert_eq!(
        ok(&["dims", "--ideal", "zf", "--max-weight", "6", "--csv"]),
        "weight,dim\n0,1\n1,1\n2,2\n3,3\n4,4\n5,6\n6,8\n"
    );
    assert_eq!(ok(&["dims", "--ideal", "eds", "--max-weight", "6"]), "0 1\n1 1\n2 2\n3 3\n4 4\n5 6\n6 8\n");
    let json: serde_json::Value =
        serde_json::from_str(&ok(&["dims", "--ideal", "fmes", "--max-weight", "4", "--json"])).unwrap();
    assert_eq!(json["schema_version"], 1);
    assert_eq!(json["dims"][4]["dim"], 7);
}

#[test]
fn q_expansion() {
    // g(2) = Σ σ₁(n) qⁿ
    assert_eq!(ok(&["qexpand", "--order", "4", "G[2]"]), "0: 0\n1: 1\n2: 3\n3: 4\n4: 7\n");
    let json: Vec<String> =
        serde_json::from_str(&ok(&["qexpand", "--order", "3", "G[2] - 1/2*G[1]", "--json"])).unwrap();
    assert_eq!(json.len(), 4);
    assert_eq!(ok(&["qexpand", "--order", "1", "G[2]", "--csv"]), "n,coeff\n0,0\n1,1\n");
}

#[test]
fn exit_codes() {
    assert_eq!(fmes(&["verify", "--suite", "equivariance", "--max-weight", "4"]).code, EXIT_PASS);
    assert_eq!(fmes(&["verify", "--suite", "eds", "--max-weight", "6"]).code, EXIT_PASS);
    // [delta4,D] and [delta5,D] do not vanish individually
    let sl2 = fmes(&["verify", "--suite", "sl2", "--max-weight", "6"]);
    assert_eq!(sl2.code, EXIT_CHECK_FAILURE);
    assert!(sl2.stdout.contains("FAIL    sl2/[delta4,D] = 0/w03"));
    assert!(sl2
        .stdout
        .lines()
        .filter(|l| l.starts_with("FAIL"))
        .all(|l| l.contains("[delta4,D]") || l.contains("[delta5,D]")));
    assert_eq!(fmes(&["verify", "--suite", "conjectures", "--max-weight", "4"]).code, EXIT_PASS);
    assert_eq!(fmes(&["verify", "--suite", "nope"]).code, EXIT_USAGE);
    assert_eq!(fmes(&["eval", "G[2"]).code, EXIT_USAGE);
    assert_eq!(fmes(&["eval", "foo(G[2])"]).code, EXIT_USAGE);
    assert_eq!(fmes(&["eval", "G[5]*G[5]", "--max-weight", "8"]).code, EXIT_USAGE);
    assert_eq!(fmes(&["frobnicate"]).code, EXIT_USAGE);
    assert_eq!(fmes(&["derive", "--op", "Q", "G[1]"]).code, EXIT_USAGE);
    assert_eq!(fmes(&["dims", "--ideal", "fmes", "--max-weight", "10"]).code, EXIT_RESOURCE);
    assert_eq!(
        fmes(&["dims", "--ideal", "fmes", "--max-weight", "9", "--echelon-max-weight", "9", "--max-memory-mb", "100"])
            .code,
        EXIT_RESOURCE
    );
    assert_eq!(
        fmes(&["verify", "--suite", "dims", "--max-weight", "7", "--echelon-max-weight", "6"]).code,
        EXIT_RESOURCE
    );
    assert_eq!(fmes(&["--help"]).code, EXIT_PASS);
}

#[test]
fn verify_report_schema() {
    let out = fmes(&["verify", "--suite", "balanced", "--max-weight", "4", "--json"]);
    assert_eq!(out.code, EXIT_PASS);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["passed"], true);
    let checks = v["checks"].as_array().unwrap();
    assert!(!checks.is_empty());
    for c in checks {
        for key in ["id", "anchor", "status", "weight", "residual", "elapsed_ms"] {
            assert!(c.get(key).is_some(), "{key} missing in {c}");
        }
        assert_eq!(c["status"], "pass");
    }
    let ids: Vec<&str> = checks.iter().map(|c| c["id"].as_str().unwrap()).collect();
    let mut sorted = ids.clone();
    sorted.sort();
    assert_eq!(ids, sorted);
    let csv = ok(&["verify", "--suite", "bimould", "--csv"]);
    assert!(csv.starts_with("id,anchor,status,weight,residual,elapsed_ms\n"));
}

#[test]
fn cache_command() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    assert_eq!(ok(&["cache", "--dir", d, "--stats"]), "");
    let built = ok(&["cache", "--dir", d, "--build", "3"]);
    assert_eq!(built.lines().count(), 8);
    assert!(built.contains("swap_w3.basis"));
    assert!(built.contains("swap weight 3 rank 4"));
    let stats: serde_json::Value = serde_json::from_str(&ok(&["cache", "--dir", d, "--stats", "--json"])).unwrap();
    assert_eq!(stats["files"].as_array().unwrap().len(), 8);
    assert_eq!(ok(&["cache", "--dir", d, "--clear"]), format!("removed 8 files from {d}\n"));
    assert_eq!(ok(&["cache", "--dir", d, "--stats"]), "");
    assert_eq!(fmes(&["cache", "--stats"]).code, EXIT_USAGE);
}

fn binary(args: &[&str], config: Option<&std::path::Path>) -> (i32, String, String) {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_fmes"));
    cmd.args(args).env_remove("FMES_CONFIG");
    if let Some(p) = config {
        cmd.env("FMES_CONFIG", p);
    }
    let out = cmd.output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap(), String::from_utf8(out.stderr).unwrap())
}

#[test]
fn config_file_and_flag_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("fmes.toml");
    std::fs::write(&cfg, "max_weight = 3\nq_order = 2\nechelon_max_weight = 5\nthreads = 2\n").unwrap();
    let (code, out, _) = binary(&["dims", "--ideal", "fmes"], Some(&cfg));
    assert_eq!((code, out.as_str()), (0, "0 1\n1 1\n2 2\n3 4\n"));
    // flags win over the file
    let (_, out, _) = binary(&["dims", "--ideal", "fmes", "--max-weight", "4"], Some(&cfg));
    assert_eq!(out.lines().count(), 5);
    let c = cfg.to_str().unwrap();
    assert_eq!(binary(&["dims", "--ideal", "fmes", "--max-weight", "6", "--config", c], None).0, EXIT_RESOURCE);
    assert_eq!(
        binary(&["dims", "--ideal", "fmes", "--max-weight", "6", "--config", c, "--echelon-max-weight", "6"], None).0,
        0
    );
    assert_eq!(binary(&["qexpand", "G[2]", "--config", c], None).1, "0: 0\n1: 1\n2: 3\n");
    let bad = dir.path().join("bad.toml");
    std::fs::write(&bad, "max_wieght = 3\n").unwrap();
    let (code, _, err) = binary(&["dims", "--ideal", "fmes"], Some(&bad));
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("max_wieght"), "{err}");
}

#[test]
fn cache_directory_is_used_by_commands() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let (code, out, _) = binary(&["dims", "--ideal", "fmes", "--max-weight", "4", "--cache-dir", d], None);
    assert_eq!((code, out.as_str()), (0, "0 1\n1 1\n2 2\n3 4\n4 7\n"));
    assert!(dir.path().join("swap_w4.basis").exists());
    // a second run loads the files and prints the same table
    let (_, again, _) = binary(&["dims", "--ideal", "fmes", "--max-weight", "4", "--cache-dir", d], None);
    assert_eq!(again, out);
}
