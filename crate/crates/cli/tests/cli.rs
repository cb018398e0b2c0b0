use std::path::{Path, PathBuf};
use std::process::Command;

use measuring_lab_cli::spec::sha256_hex;
use serde_json::Value;

fn corpus() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

struct Run {
    code: i32,
    report: Value,
    stderr: String,
}

fn run(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_measuring-lab"))
        .current_dir(corpus())
        .env_remove("MEASURING_LAB_CACHE")
        .args(args)
        .output()
        .expect("binary runs");
    let report = serde_json::from_slice(&out.stdout).expect("stdout is a JSON report");
    Run { code: out.status.code().unwrap(), report, stderr: String::from_utf8_lossy(&out.stderr).into_owned() }
}

fn scratch(name: &str) -> PathBuf {
    let d = std::env::temp_dir().join(format!("measuring-lab-{}-{name}", std::process::id()));
    let _ = std::fs::remove_dir_all(&d);
    d
}

fn without_runtime(mut v: Value) -> Value {
    v.as_object_mut().unwrap().remove("runtime");
    v
}

#[test]
fn dual_numbers_pass_their_axioms() {
    let r = run(&["check", "dual_numbers.json"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert_eq!(r.report["verdict"], "PASS");
    assert_eq!(r.report["data"]["dim"], 2);
    assert!(r.stderr.lines().any(|l| l == "PASS algebra axioms"));
}

#[test]
fn broken_associativity_names_the_triple() {
    let r = run(&["check", "broken_assoc.json"]);
    assert_eq!(r.code, 1);
    let c = &r.report["checks"][0];
    assert_eq!(c["verdict"], "FAIL");
    assert_eq!(c["detail"]["indices"], serde_json::json!([1, 1, 1]));
}

#[test]
fn zero_dimensional_file_is_a_schema_error() {
    let r = run(&["check", "empty.json"]);
    assert_eq!(r.code, 2);
    assert_eq!(r.report["error"]["kind"], "SchemaError");
    let r = run(&["check", "not_json.json"]);
    assert_eq!(r.code, 2);
    assert_eq!(r.report["error"]["kind"], "ParseError");
}

#[test]
fn every_corpus_file_matches_its_manifest_verdict() {
    let text = std::fs::read_to_string(corpus().join("manifest.json")).unwrap();
    let manifest: Value = serde_json::from_str(&text).unwrap();
    for entry in manifest["files"].as_array().unwrap() {
        let file = entry["file"].as_str().unwrap();
        let bytes = std::fs::read(corpus().join(file)).unwrap();
        assert_eq!(entry["sha256"], sha256_hex(&bytes), "{file} changed without regenerating the manifest");
        let expect = entry["expect"].as_str().unwrap();
        if expect == "-" {
            continue;
        }
        let r = run(&["check", file]);
        match expect {
            "PASS" => assert_eq!(r.code, 0, "{file}: {}", r.stderr),
            "FAIL" => assert_eq!(r.code, 1, "{file}: {}", r.stderr),
            kind => assert_eq!(r.report["error"]["kind"], kind, "{file}"),
        }
    }
}

#[test]
fn references_may_not_leave_the_workspace() {
    let dir = scratch("escape");
    std::fs::create_dir_all(&dir).unwrap();
    let f = dir.join("m.json");
    std::fs::write(&f, r#"{"kind": "module", "over": "../k.json", "action": [["1"]]}"#).unwrap();
    let r = run(&["check", f.to_str().unwrap()]);
    assert_eq!(r.code, 2);
    assert!(r.report["error"]["message"].as_str().unwrap().contains("leaves the workspace"));
}

#[test]
fn dual_output_passes_check() {
    let dir = scratch("dual");
    std::fs::create_dir_all(&dir).unwrap();
    let out = dir.join("dual.json");
    let r = run(&["dual", "m2_coalgebra.json", "--emit", out.to_str().unwrap()]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let r = run(&["check", out.to_str().unwrap()]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert_eq!(r.report["data"]["dim"], 4);
    assert_eq!(r.report["data"]["commutative"], false);
}

#[test]
fn measuring_verification_agrees_on_both_routes() {
    let good = run(&["measure-verify", "identity_measuring.json"]);
    assert_eq!(good.code, 0);
    let bad = run(&["measure-verify", "bad_measuring.json"]);
    assert_eq!(bad.code, 1);
    let verdicts: Vec<&Value> = bad.report["checks"].as_array().unwrap().iter().map(|c| &c["verdict"]).collect();
    assert!(verdicts.iter().all(|v| *v == "FAIL"));
}

#[test]
fn pab_of_dual_numbers_stabilizes_at_degree_one() {
    for extra in [["--hints", "dual_numbers_to_k_hints.json"], ["--field", "F2"]] {
        let mut args = vec!["pab", "dual_numbers.json", "k.json", "--degree", "2"];
        args.extend(extra);
        let r = run(&args);
        assert_eq!(r.code, 0, "{}", r.stderr);
        assert_eq!(r.report["data"]["dim"], 2);
        assert_eq!(r.report["data"]["stabilization"]["dims"], serde_json::json!([1, 2, 2]));
        assert_eq!(r.report["data"]["stabilization"]["stable_from"], 1);
    }
}

#[test]
fn pab_of_the_ground_field_is_one_dimensional() {
    let r = run(&["pab", "k.json", "k.json", "--hints", "k_to_k_hints.json"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert_eq!(r.report["data"]["dim"], 1);
}

#[test]
fn pab_over_q_without_hints_exceeds_the_budget() {
    let r = run(&["pab", "dual_numbers.json", "k.json"]);
    assert_eq!(r.code, 3);
    assert_eq!(r.report["error"]["kind"], "BudgetExceeded");
}

#[test]
fn configured_budget_is_enforced() {
    let r = run(&["pab", "dual_numbers.json", "k.json", "--field", "F2", "--budget", "tiny_budget.toml"]);
    assert_eq!(r.code, 3);
}

#[test]
fn qmn_of_the_regular_module_is_the_cofree_comodule_on_the_dual() {
    let r = run(&["qmn", "dual_numbers_regular.json", "k_module.json", "--degree", "2", "--hints", "dual_numbers_to_k_hints.json"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let names: Vec<&str> = r.report["checks"].as_array().unwrap().iter().map(|c| c["name"].as_str().unwrap()).collect();
    assert!(names.contains(&"Q_n(A, N) ≅ P_n ⊗ N as comodules"));
    assert!(names.contains(&"P_n(A, k) ≅ A°"));
    assert_eq!(r.report["data"]["q_dim"], 2);
}

#[test]
fn census_counts_agree() {
    let r = run(&["census", "dual_numbers.json", "k.json", "divided_power_1.json", "--field", "F2"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert_eq!(r.report["data"]["measurings"], r.report["data"]["coalgebra_maps"]);
    assert_eq!(r.report["data"]["measurings"], 2);
}

#[test]
fn fib_adjoint_of_the_identity_instance_is_the_identity() {
    let r = run(&["fib", "adjoint", "fib_identity.json"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert_eq!(r.report["data"]["adjoint_is_identity"], true);
    for mode in ["groth", "factor", "dual", "chi"] {
        let r = run(&["fib", mode, "fib_chi_failure.json"]);
        assert_eq!(r.code, 0, "{mode}: {}", r.stderr);
    }
    let r = run(&["fib", "chi", "fib_chi_failure.json"]);
    assert_eq!(r.report["data"]["chi_invertible"], false);
}

#[test]
fn hopf_lift_over_c2() {
    let r = run(&["hopf", "lift", "c2_hopf_module.json", "--field", "F3", "--lax"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert_eq!(r.report["data"]["dim"], 2);
    assert_eq!(r.report["checks"].as_array().unwrap().len(), 2);
}

#[test]
fn short_truncations_are_reported() {
    let r = run(&["hopf", "lift", "c2_hopf_module.json", "--field", "F2", "--degree", "1"]);
    assert_eq!(r.code, 4);
    assert_eq!(r.report["error"]["kind"], "TruncationInsufficient");
}

#[test]
fn reports_are_deterministic() {
    let args = ["qmn", "dual_numbers_regular.json", "k_module.json", "--field", "F3"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.code, 0, "{}", a.stderr);
    assert_eq!(without_runtime(a.report), without_runtime(b.report));
}

#[test]
fn cache_hits_are_reverified_and_corrupt_entries_recomputed() {
    let dir = scratch("cache");
    let d = dir.to_str().unwrap();
    let args = ["pab", "dual_numbers.json", "k.json", "--field", "F2", "--cache-dir", d];
    let miss = run(&args);
    assert_eq!(miss.report["runtime"]["cache"], "miss");
    let hit = run(&args);
    assert_eq!(hit.report["runtime"]["cache"], "hit");
    assert_eq!(without_runtime(miss.report.clone()), without_runtime(hit.report));

    // rewrite the entry with a zero projection and a matching hash
    let entry_path = std::fs::read_dir(&dir).unwrap().next().unwrap().unwrap().path();
    let mut entry: Value = serde_json::from_str(&std::fs::read_to_string(&entry_path).unwrap()).unwrap();
    for row in entry["bundle"][0]["proj"].as_array_mut().unwrap() {
        for x in row.as_array_mut().unwrap() {
            *x = Value::String("0".into());
        }
    }
    let body = serde_json::to_string(&entry["bundle"]).unwrap();
    entry["bundle_sha256"] = Value::String(sha256_hex(body.as_bytes()));
    std::fs::write(&entry_path, serde_json::to_string(&entry).unwrap()).unwrap();
    let again = run(&args);
    assert_eq!(again.report["runtime"]["cache"], "miss");
    assert_eq!(without_runtime(miss.report.clone()), without_runtime(again.report));

    // a hash mismatch is a miss too
    std::fs::write(&entry_path, b"{}").unwrap();
    assert_eq!(run(&args).report["runtime"]["cache"], "miss");
}

#[test]
fn cache_env_var_overrides_the_flag() {
    let flag = scratch("flag");
    let env = scratch("env");
    let out = Command::new(env!("CARGO_BIN_EXE_measuring-lab"))
        .current_dir(corpus())
        .env("MEASURING_LAB_CACHE", &env)
        .args(["pab", "k.json", "k.json", "--hints", "k_to_k_hints.json", "--cache-dir", flag.to_str().unwrap()])
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(env.exists());
    assert!(!flag.exists());
}

#[test]
fn report_goes_to_out_when_given() {
    let dir = scratch("out");
    std::fs::create_dir_all(&dir).unwrap();
    let out = dir.join("r.json");
    let status = Command::new(env!("CARGO_BIN_EXE_measuring-lab"))
        .current_dir(corpus())
        .args(["check", "k.json", "--out", out.to_str().unwrap()])
        .output()
        .unwrap();
    assert!(status.status.success());
    assert!(status.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(out).unwrap()).unwrap();
    assert_eq!(v["inputs"][0]["path"], "k.json");
}
