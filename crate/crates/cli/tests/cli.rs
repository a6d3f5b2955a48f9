use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

use slring::algebra::{algebra_to_json, standard_algebra};

fn slring(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_slring"))
        .args(args)
        .output()
        .unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

fn without_timing(mut v: Value) -> Value {
    v["stats"]["ms"] = Value::from(0);
    v
}

#[test]
fn identity_suite_for_octonions_passes() {
    let out = slring(&["verify", "--task", "identity-suite", "--algebra", "O"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["task"], "identity-suite");
    assert_eq!(r["field"], "Q");
    for name in [
        "anti-involution",
        "alternativity",
        "composition",
        "unit-squares",
        "units-anticommute",
        "signature",
    ] {
        assert_eq!(r["results"][name]["pass"], true, "{name}");
    }
}

#[test]
fn sedenions_exit_with_mismatch() {
    let out = slring(&["verify", "--task", "identity-suite", "--algebra", "S"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["results"]["composition"]["pass"], false);
}

#[test]
fn input_errors_exit_two() {
    assert_eq!(
        slring(&["verify", "--task", "iota", "--algebra", "nope"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        slring(&["compute", "--task", "volume", "--algebra", "O"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        slring(&["verify", "--task", "th-associative", "--algebra", "O"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        slring(&["verify", "--task", "th-mult", "--algebra", "H", "--m", "2"])
            .status
            .code(),
        Some(2)
    );

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    fs::write(&bad, "{\n  \"name\": \"x\",\n  oops\n}\n").unwrap();
    let out = slring(&["check-algebra", "--algebra", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 3"), "{err}");
}

#[test]
fn algebra_files_are_accepted_everywhere_names_are() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("quaternions.json");
    fs::write(&path, algebra_to_json(&standard_algebra("H").unwrap())).unwrap();
    let p = path.to_str().unwrap();
    let out = slring(&["check-algebra", "--algebra", p]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["results"]["associative"]["actual"], "yes");
    let out = slring(&["compute", "--task", "sl-dim", "--algebra", p, "--m", "3"]);
    assert_eq!(json(&out)["results"]["dimension"]["actual"], "35");
}

#[test]
fn kernel_report_for_split_octonions() {
    let out = slring(&["verify", "--task", "kernel", "--algebra", "Osplit"]);
    let r = json(&out);
    assert_eq!(r["results"]["graph"]["actual"], "45");
    assert_eq!(r["results"]["kernel"]["actual"], "0");
    assert_eq!(r["results"]["image"]["actual"], "45");
}

#[test]
fn reports_match_across_thread_counts() {
    let run = |threads: &str| {
        let out = slring(&[
            "compute",
            "--task",
            "sl-dim",
            "--algebra",
            "Osplit",
            "--m",
            "2",
            "--threads",
            threads,
        ]);
        assert_eq!(out.status.code(), Some(0));
        without_timing(json(&out))
    };
    assert_eq!(run("1"), run("8"));
}

fn cache_files(dir: &Path) -> Vec<std::path::PathBuf> {
    fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .collect()
}

#[test]
fn cache_hits_and_recovers_from_corruption() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().to_str().unwrap();
    let args = [
        "compute",
        "--task",
        "sl-dim",
        "--algebra",
        "O",
        "--m",
        "2",
        "--cache-dir",
        cache,
    ];

    let first = json(&slring(&args));
    assert_eq!(first["cache"], false);
    let second = json(&slring(&args));
    assert_eq!(second["cache"], true);
    assert_eq!(second["results"], first["results"]);

    let files = cache_files(dir.path());
    assert_eq!(files.len(), 1);
    let entry: Value = serde_json::from_str(&fs::read_to_string(&files[0]).unwrap()).unwrap();
    assert_eq!(entry["ambient_dim"], 256);
    assert_eq!(entry["basis"].as_array().unwrap().len(), 45);
    for key in ["key", "checksum"] {
        assert!(entry[key].is_string());
    }

    fs::write(
        &files[0],
        fs::read_to_string(&files[0])
            .unwrap()
            .replacen("\"-1\"", "\"-2\"", 1),
    )
    .unwrap();
    let out = slring(&args);
    assert_eq!(out.status.code(), Some(0));
    let third = json(&out);
    assert_eq!(third["cache"], false);
    assert_eq!(third["results"], first["results"]);
    assert_eq!(json(&slring(&args))["cache"], true);
}

#[test]
fn markdown_and_out_file() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("iota.md");
    let out = slring(&[
        "verify",
        "--task",
        "iota",
        "--algebra",
        "H",
        "--format",
        "markdown",
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let text = fs::read_to_string(out_path).unwrap();
    assert!(
        text.contains("| minus-identity | pass | pass | yes |"),
        "{text}"
    );
}

#[test]
fn seeded_isometry_is_reproducible() {
    let args = [
        "verify",
        "--task",
        "isometry",
        "--algebra",
        "M2",
        "--seed",
        "9",
        "--samples",
        "20",
    ];
    let a = without_timing(json(&slring(&args)));
    assert_eq!(a, without_timing(json(&slring(&args))));
    assert_eq!(a["results"]["determinant-preserved"]["actual"], "200/200");
}

#[test]
fn list_algebras_as_json() {
    let v = json(&slring(&["list-algebras"]));
    let names: Vec<&str> = v
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x["name"].as_str().unwrap())
        .collect();
    for n in ["R", "C", "Rsplit", "H", "M2", "O", "Osplit", "BiO"] {
        assert!(names.contains(&n));
    }
}
