//! Behavioral tests of the command-line surface: file round-trips, report
//! determinism, exit codes, and cache coherence.

use std::path::{Path, PathBuf};
use std::process::Command;

use arank_cli::identity_io::{load_identities, save_identities, LoadedIdentity};
use arank_core::spectrum::{schoenhage_identity, strassen_identity};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_arank"))
}

fn fixture(rel: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(rel)
}

#[test]
fn identity_files_round_trip_canonically() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("ids.json");
    let ids = vec![
        LoadedIdentity {
            identity: schoenhage_identity(),
            assert_3tau_below: Some("2.516094".into()),
        },
        LoadedIdentity {
            identity: strassen_identity(),
            assert_3tau_below: None,
        },
    ];
    save_identities(&path, &ids).unwrap();
    let back = load_identities(&path).unwrap();
    assert!(back.warnings.is_empty());
    assert_eq!(back.identities.len(), 2);
    for (a, b) in ids.iter().zip(&back.identities) {
        assert_eq!(a.identity, b.identity);
        assert_eq!(a.assert_3tau_below, b.assert_3tau_below);
    }
}

#[test]
fn bundled_schoenhage_fixture_parses_as_documented() {
    let out = load_identities(&fixture("schoenhage.json")).unwrap();
    assert_eq!(out.identities.len(), 1);
    let id = &out.identities[0].identity;
    assert_eq!(id.lhs.terms().len(), 3);
    assert!(id.lhs.terms().iter().all(|t| t.volume() == 100));
    let rhs = id.rhs.terms();
    assert_eq!(rhs.len(), 2);
    assert_eq!((rhs[0].n, rhs[0].m, rhs[0].p, rhs[0].mult), (1, 1, 1, 132));
    assert_eq!((rhs[1].n, rhs[1].m, rhs[1].p, rhs[1].mult), (1, 1, 2, 5));
}

#[test]
fn malformed_entries_are_rejected_with_location() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(
        &path,
        r#"{"name":"bad","relation":"degeneration","lhs":[[2,0,1,1]],"rhs":[[1,1,1,7]]}"#,
    )
    .unwrap();
    let err = load_identities(&path).unwrap_err();
    let msg = err.to_string();
    assert!(msg.contains("entry 0"), "message was: {msg}");
}

#[test]
fn zero_multiplicity_warns_and_drops() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("warn.json");
    std::fs::write(
        &path,
        r#"{"name":"w","relation":"degeneration","lhs":[[2,2,2,1],[1,1,1,0]],"rhs":[[1,1,1,7]]}"#,
    )
    .unwrap();
    let out = load_identities(&path).unwrap();
    assert_eq!(out.warnings.len(), 1);
    assert_eq!(out.identities[0].identity.lhs.terms().len(), 1);
}

#[test]
fn json_reports_are_byte_identical_across_runs() {
    let run = || {
        bin()
            .args(["cw-table", "--q", "2..3", "--format", "json"])
            .output()
            .unwrap()
    };
    let a = run();
    let b = run();
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);

    let run_omega = || {
        bin()
            .args([
                "omega",
                fixture("strassen7.json").to_str().unwrap(),
                "--tol",
                "1e-2",
                "--format",
                "json",
            ])
            .output()
            .unwrap()
    };
    let a = run_omega();
    let b = run_omega();
    assert!(a.status.success(), "{}", String::from_utf8_lossy(&a.stderr));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn exit_codes_follow_the_contract() {
    // all pass → 0
    let ok = bin().args(["verify", "minrank", "--q", "2"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));

    // ledger failure → 1: corrupt one coefficient of a bundled decomposition
    let dir = tempfile::tempdir().unwrap();
    let corrupt = dir.path().join("corrupt.json");
    let text = std::fs::read_to_string(fixture("decompositions/cw_q2.json")).unwrap();
    let mut v: serde_json::Value = serde_json::from_str(&text).unwrap();
    v["terms"][1]["a"][0]["num"][0] = serde_json::Value::String("-1".into());
    std::fs::write(&corrupt, serde_json::to_string(&v).unwrap()).unwrap();
    let fail = bin()
        .args([
            "verify",
            "one-slice",
            "--decomposition",
            corrupt.to_str().unwrap(),
            "--weights",
            fixture("weights/minrank_q2.json").to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert_eq!(fail.status.code(), Some(1));
    let text = String::from_utf8_lossy(&fail.stdout);
    assert!(text.contains("FAIL"), "{text}");
    assert!(text.contains("order"), "failure must carry the residual location: {text}");

    // input error → 2
    let bad = bin().args(["omega", "/definitely/not/there.json"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn cache_reuses_only_on_exact_parameter_match() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache.jsonl");
    let run = |tol: &str| {
        bin()
            .args([
                "omega",
                fixture("strassen7.json").to_str().unwrap(),
                "--tol",
                tol,
                "--cache",
                cache.to_str().unwrap(),
                "--format",
                "json",
            ])
            .output()
            .unwrap()
    };
    let first = run("1e-2");
    assert!(first.status.success());
    assert_eq!(std::fs::read_to_string(&cache).unwrap().lines().count(), 1);

    // identical parameters: record reused, no new line appended
    let second = run("1e-2");
    assert!(second.status.success());
    assert_eq!(std::fs::read_to_string(&cache).unwrap().lines().count(), 1);
    let text = String::from_utf8_lossy(&second.stdout);
    assert!(text.contains("reused record"), "{text}");

    // different tolerance: a fresh record
    let third = run("2e-2");
    assert!(third.status.success());
    assert_eq!(std::fs::read_to_string(&cache).unwrap().lines().count(), 2);
    let text = String::from_utf8_lossy(&third.stdout);
    assert!(!text.contains("reused record"), "{text}");
}

#[test]
fn formats_render() {
    for fmt in ["json", "tsv", "md"] {
        let out = bin()
            .args(["bound", "toy", "--r", "3", "--s", "2", "--format", fmt])
            .output()
            .unwrap();
        assert!(out.status.success());
        assert!(!out.stdout.is_empty());
    }
}
