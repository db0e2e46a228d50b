use std::process::{Command, Output};

use fockforge::{list_checks, registry, run_check, CheckReport, Params, Status, SuiteReport, UsageError};
use serde_json::Value;

fn fockforge(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fockforge")).args(args).output().expect("binary runs")
}

fn report(out: &Output) -> CheckReport {
    serde_json::from_slice(&out.stdout).expect("stdout is one report")
}

#[test]
fn registry_has_twelve_named_checks() {
    let names: Vec<&str> = registry().iter().map(|c| c.name).collect();
    assert_eq!(
        names,
        [
            "heisenberg",
            "virasoro",
            "integral-virasoro",
            "lehn",
            "reflection",
            "expansion",
            "ybe",
            "wlattice",
            "kernel",
            "characters",
            "frenkel-kac",
            "adhm"
        ]
    );
    let rm: Vec<&str> = list_checks(Some("rmatrix")).iter().map(|c| c.name).collect();
    assert_eq!(rm, ["reflection", "expansion", "ybe"]);
    assert_eq!(list_checks(Some("vir")).len(), 3);
    assert!(list_checks(Some("zzz")).is_empty());
}

#[test]
fn list_modes() {
    let text = fockforge(&["list"]);
    assert!(text.status.success());
    let listing = String::from_utf8(text.stdout).unwrap();
    assert!(registry().iter().all(|c| listing.contains(c.name)));
    let json = fockforge(&["list", "--json"]);
    let parsed: Value = serde_json::from_slice(&json.stdout).unwrap();
    assert_eq!(parsed.as_array().unwrap().len(), 12);
    assert_eq!(parsed[6]["name"], "ybe");
    assert_eq!(parsed[6]["flags"][1]["name"], "--seed");
    let filtered: Value = serde_json::from_slice(&fockforge(&["list", "wl", "--json"]).stdout).unwrap();
    let names: Vec<&str> = filtered.as_array().unwrap().iter().map(|c| c["name"].as_str().unwrap()).collect();
    assert_eq!(names, ["wlattice", "kernel"]);
}

#[test]
fn virasoro_passes_at_degree_three() {
    let out = fockforge(&["check", "virasoro", "--max-degree", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r.status, Status::Pass);
    assert_eq!(r.parameters["max_degree"], 3);
    assert!(String::from_utf8(out.stderr).unwrap().starts_with("virasoro: pass"));
}

#[test]
fn char_g2_coefficients() {
    let out = fockforge(&["char", "--type", "G2", "--max", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r.witnesses, ["1", "1", "2", "4", "6"]);
    assert_eq!(r.parameters["affine"], "D4^(3)");
}

#[test]
fn ybe_echoes_seeded_parameters() {
    let out = fockforge(&["ybe", "--degree", "2", "--seed", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!((r.status, r.seed), (Status::Pass, 1));
    for key in ["a1", "a2", "a3", "e1", "e2", "max_degree", "convention"] {
        assert!(r.parameters.contains_key(key), "{key}");
    }
    let again = report(&fockforge(&["check", "ybe", "--max-degree", "2", "--seed", "1"]));
    assert_eq!(again, r);
    let other = run_check("ybe", &Params::degree(2).with_seed(2)).unwrap();
    assert_ne!(other.parameters, r.parameters);
}

#[test]
fn usage_errors_exit_with_two() {
    for args in [
        &["check", "nope"][..],
        &["check", "reflection", "--max-degree", "40"],
        &["char", "--type", "Q3"],
        &["check", "virasoro", "--bogus"],
        &["suite", "--profile", "huge"],
        &[],
    ] {
        assert_eq!(fockforge(args).status.code(), Some(2), "{args:?}");
    }
    assert_eq!(run_check("nope", &Params::default()), Err(UsageError::UnknownCheck("nope".into())));
}

#[test]
fn reports_are_deterministic_and_written_to_file() {
    let path = std::env::temp_dir().join(format!("fockforge-cli-{}.json", std::process::id()));
    let path_str = path.to_str().unwrap();
    let out = fockforge(&["check", "adhm", "--max-degree", "2", "--seed", "7", "--json", path_str]);
    assert_eq!(out.status.code(), Some(0));
    let written = std::fs::read(&path).unwrap();
    std::fs::remove_file(&path).unwrap();
    assert_eq!(written, out.stdout);
    let again = fockforge(&["check", "adhm", "--max-degree", "2", "--seed", "7"]);
    assert_eq!(again.stdout, out.stdout);
    assert_eq!(report(&out).seed, 7);
}

#[test]
fn quick_suite_writes_per_check_records() {
    let path = std::env::temp_dir().join(format!("fockforge-suite-{}.json", std::process::id()));
    let out = fockforge(&["suite", "--profile", "quick", "--json", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let suite: SuiteReport = serde_json::from_slice(&std::fs::read(&path).unwrap()).unwrap();
    std::fs::remove_file(&path).unwrap();
    assert_eq!(suite.checks.len(), 12);
    assert_eq!((suite.failed, suite.status), (0, Status::Pass));
    assert!(suite.checks.iter().all(|c| c.parameters.get("max_degree").and_then(Value::as_u64).is_some()));
    assert!(suite.checks.iter().filter(|c| c.check != "characters" && c.check != "frenkel-kac").all(|c| c.parameters["max_degree"].as_u64().unwrap() <= 3));
}
