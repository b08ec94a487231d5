use std::process::Command;

use serde_json::Value;

fn fuscat(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_fuscat"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().expect("exit code"),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn strip_timing(v: &mut Value) {
    if let Some(sections) = v.get_mut("sections").and_then(|s| s.as_array_mut()) {
        for s in sections {
            s["elapsed_ms"] = Value::from(0);
        }
    }
}

#[test]
fn verify_passes_at_p3_with_seven_sections() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let (code, stdout, _) = fuscat(&["verify", "--p", "3", "--out", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(stdout.contains("overall: pass"));
    let report: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(report["schema"], 1);
    assert_eq!(report["p"], 3);
    assert_eq!(report["overall"], "pass");
    let sections = report["sections"].as_array().unwrap();
    assert_eq!(sections.len(), 7);
    assert!(sections.iter().all(|s| s["status"] == "pass"));
    let pentagon = sections
        .iter()
        .find(|s| s["name"] == "pentagon coherence")
        .unwrap();
    assert_eq!(pentagon["payload"]["violations"], 0);
}

#[test]
fn verify_skips_pentagon_on_request() {
    let (code, stdout, _) = fuscat(&["verify", "--p", "5", "--skip-pentagon", "--json-only"]);
    assert_eq!(code, 0);
    let report: Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(report["overall"], "pass");
    let statuses: Vec<&str> = report["sections"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| s["status"].as_str().unwrap())
        .collect();
    assert_eq!(statuses.iter().filter(|&&s| s == "skipped").count(), 1);
    assert_eq!(statuses.iter().filter(|&&s| s == "pass").count(), 6);
}

#[test]
fn verify_rejects_bad_primes_and_oversized_groups() {
    let (code, _, stderr) = fuscat(&["verify", "--p", "4"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("odd prime"));
    let (code, _, stderr) = fuscat(&["verify", "--p", "17"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("max-group-order"));
    let (code, _, _) = fuscat(&["verify", "--p", "9"]);
    assert_eq!(code, 2);
}

#[test]
fn reports_are_deterministic_apart_from_timing() {
    let (code1, out1, _) = fuscat(&["verify", "--p", "3", "--skip-pentagon", "--json-only"]);
    let (code2, out2, _) = fuscat(&["verify", "--p", "3", "--skip-pentagon", "--json-only"]);
    assert_eq!(code1, 0);
    assert_eq!(code2, 0);
    let mut a: Value = serde_json::from_str(&out1).unwrap();
    let mut b: Value = serde_json::from_str(&out2).unwrap();
    strip_timing(&mut a);
    strip_timing(&mut b);
    assert_eq!(a, b);
}

#[test]
fn pentagon_subcommand_reports_zero_violations() {
    for sign in ["+", "-"] {
        let (code, stdout, _) = fuscat(&["pentagon", "--p", "3", "--tau-sign", sign]);
        assert_eq!(code, 0);
        let report: Value = serde_json::from_str(&stdout).unwrap();
        assert_eq!(report["violations"], 0);
        assert_eq!(report["tau"], *sign);
        assert!(report["equations"].as_u64().unwrap() > 0);
    }
}

#[test]
fn profile_subcommand_prints_the_dimension_tally() {
    let (code, stdout, _) = fuscat(&["profile", "--p", "3"]);
    assert_eq!(code, 0);
    let report: Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(report["profile"], serde_json::json!([[1, 6], [2, 3], [3, 2]]));
    assert_eq!(report["global_dim"], 36);
}

#[test]
fn modcats_subcommand_lists_four_classes_with_ranks() {
    let (code, stdout, _) = fuscat(&["modcats", "--p", "3"]);
    assert_eq!(code, 0);
    let report: Value = serde_json::from_str(&stdout).unwrap();
    let descriptors = report["search"]["descriptors"].as_array().unwrap();
    assert_eq!(descriptors.len(), 4);
    assert_eq!(report["search"]["exhaustive"], true);
    let mut ranks: Vec<u64> = report["ranks"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r.as_u64().unwrap())
        .collect();
    ranks.sort_unstable();
    assert_eq!(ranks, vec![2, 2, 6, 6]);
}

#[test]
fn rank_subcommand_defaults_to_the_base_pair() {
    let (code, stdout, _) = fuscat(&["rank", "--p", "3"]);
    assert_eq!(code, 0);
    let report: Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(report["rank"], 10);
    assert_eq!(report["coset_breakdown"].as_array().unwrap().len(), 4);
    let (code, stdout, _) = fuscat(&["rank", "--p", "3", "--left", "0", "--right", "4"]);
    assert_eq!(code, 0);
    let report: Value = serde_json::from_str(&stdout).unwrap();
    assert!(report["rank"].as_u64().unwrap() >= 2);
    let (code, _, stderr) = fuscat(&["rank", "--p", "3", "--left", "9"]);
    assert_eq!(code, 1);
    assert!(stderr.contains("out of range"));
}
