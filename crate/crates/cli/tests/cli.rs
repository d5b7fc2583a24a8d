use std::process::Command;

use serde_json::Value;

fn specball(args: &[&str]) -> (i32, Value, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_specball"))
        .args(args)
        .output()
        .unwrap();
    let stdout = String::from_utf8(out.stdout).unwrap();
    let value = serde_json::from_str(stdout.trim()).unwrap_or(Value::Null);
    (
        out.status.code().unwrap(),
        value,
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn write(dir: &tempfile::TempDir, name: &str, text: &str) -> String {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

const GAP: &str = r#"{"n":2,"rows":[[[0.8,0],[0,0]],[[0,0],[0,0]]]}"#;

#[test]
fn discontinuity_subcommand() {
    let dir = tempfile::tempdir().unwrap();
    let b = write(&dir, "b.json", GAP);
    let (code, v, _) = specball(&["discontinuity", "--input", &b]);
    assert_eq!(code, 0);
    assert_eq!(v["kobayashi"]["generic_limit"].as_f64(), Some(0.4));
    assert_eq!(v["eigenvalues_equal"], false);
}

#[test]
fn every_subcommand_emits_one_object() {
    let dir = tempfile::tempdir().unwrap();
    let a = write(
        &dir,
        "a.json",
        r#"{"n":2,"rows":[[[0.1,0],[0,0]],[[0,0],[0.2,0]]]}"#,
    );
    let n = write(
        &dir,
        "n.json",
        r#"{"n":2,"rows":[[[0,0],[1,0]],[[0,0],[0,0]]]}"#,
    );
    let b = write(&dir, "b.json", GAP);
    let runs: [&[&str]; 9] = [
        &["classify", "-i", &a],
        &["sigma", "-i", &a, "--target", &n],
        &["bounds", "-i", &a, "--target", &b],
        &["lemma8", "-i", &b],
        &["curve", "-i", &a, "--target", &n, "--kind", "zero-metric"],
        &[
            "curve",
            "-i",
            &a,
            "--target",
            &n,
            "--kind",
            "quadratic",
            "--samples",
            "20",
        ],
        &["hull", "-i", &a],
        &["discontinuity", "-i", &b, "--t", "0.2,-0.1"],
        &["sample", "--n", "2", "--samples", "3", "--seed", "5"],
    ];
    for args in runs {
        let (code, v, err) = specball(args);
        assert_eq!(code, 0, "{args:?}: {err}");
        assert_eq!(v["command"], args[0]);
    }
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let a = write(
        &dir,
        "a.json",
        r#"{"n":2,"rows":[[[0.1,0],[0,0]],[[0,0],[0.2,0]]]}"#,
    );
    let c = write(
        &dir,
        "c.json",
        r#"{"n":2,"rows":[[[0.1,0],[0,0]],[[0,0],[0.3,0]]]}"#,
    );
    let ragged = write(
        &dir,
        "r.json",
        r#"{"n":2,"rows":[[[0.1,0]],[[0,0],[0.3,0]]]}"#,
    );
    let big = write(&dir, "big.json", r#"{"n":1,"rows":[[[1.5,0]]]}"#);
    assert_eq!(specball(&["curve", "-i", &a, "--target", &c]).0, 2);
    let (code, _, err) = specball(&["hull", "-i", &ragged]);
    assert_eq!(code, 2);
    assert!(err.contains("rows[0]"), "{err}");
    assert_eq!(specball(&["discontinuity", "-i", &big]).0, 2);
    assert_eq!(specball(&["hull", "-i", "/nonexistent/matrix.json"]).0, 2);
    assert_eq!(specball(&["classify"]).0, 2);
}
