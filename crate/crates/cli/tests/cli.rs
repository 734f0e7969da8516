//! End-to-end runs of the `skewring` binary: exit codes, plain and JSON
//! output shapes, and the six verification suites against two field configs.

use std::path::PathBuf;
use std::process::{Command, Output};

fn scratch() -> PathBuf {
    let dir = std::env::temp_dir().join(format!("skewring-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn write_config(name: &str, text: &str) -> String {
    let path = scratch().join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_owned()
}

fn f4_config() -> String {
    write_config("f4.conf", "[field]\nkind = fq\np = 2\nmodulus = [1, 1, 1]\n")
}

fn f4_derived_config() -> String {
    write_config(
        "f4d.conf",
        "[field]\nkind = fq\np = 2\nmodulus = [1, 1, 1]\nderivation_c = g\n",
    )
}

fn gaussian_config() -> String {
    write_config("gauss.conf", "[field]\nkind = gaussian\nsigma = conj\n")
}

fn quaternions_config() -> String {
    write_config("quat.conf", "[field]\nkind = quaternions\n")
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_skewring"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn verify_suites_all_pass() {
    let configs = [f4_derived_config(), quaternions_config()];
    for config in &configs {
        for suite in [
            "nearring",
            "convexring",
            "productformula",
            "metro",
            "domains",
            "orearith",
        ] {
            let out = run(&["verify", "--config", config, "--suite", suite, "--seed", "3"]);
            let text = stdout(&out);
            assert_eq!(
                out.status.code(),
                Some(0),
                "suite {suite} on {config}:\n{text}"
            );
            assert!(text.contains(&format!("suite {suite}: passed")), "{text}");
        }
    }
}

#[test]
fn verify_rejects_unknown_suite() {
    let out = run(&[
        "verify",
        "--config",
        &f4_config(),
        "--suite",
        "frobnicate",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8(out.stderr).unwrap().contains("unknown suite"));
}

#[test]
fn exit_codes_distinguish_failure_kinds() {
    // Usage error: unknown flag, message on stderr.
    let out = run(&["eval", "--bogus"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(!out.stderr.is_empty());
    assert!(out.stdout.is_empty());

    // Operational error: unreadable config.
    let out = run(&[
        "eval",
        "--config",
        "/nonexistent.conf",
        "--expr",
        "T",
        "--at",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(1));

    // Mathematically undefined: evaluation at an excluded class.
    let out = run(&[
        "eval",
        "--config",
        &quaternions_config(),
        "--expr",
        "(T-{i})^-1",
        "--at",
        "j",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(
        stdout(&out),
        "undefined: point conjugate to a denominator root class\n"
    );

    // Mathematically undefined: skew inversion of a table with a zero value.
    let table = scratch().join("zero.json");
    std::fs::write(&table, r#"{"1":"0","g":"0","g+1":"0"}"#).unwrap();
    let out = run(&[
        "invert",
        "--config",
        &f4_config(),
        "--orbit",
        "1",
        "--table",
        table.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(stdout(&out), "not skew invertible\n");
}

#[test]
fn eval_and_domain_pinned_runs() {
    let quat = quaternions_config();
    let out = run(&["eval", "--config", &quat, "--expr", "(T-{i})^-1", "--at", "2j"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "-1/3i-2/3j\n");

    let gauss = gaussian_config();
    let out = run(&[
        "domain",
        "--config",
        &gauss,
        "--expr",
        "(T-{1+i})^-1",
        "--at",
        "i",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        stdout(&out),
        "excluded class: 1+i\ncomplete: true\nvalue at i: -1\n"
    );
}

#[test]
fn gcd_lcm_orbit_convex_outputs() {
    let f4 = f4_config();
    let out = run(&[
        "gcd",
        "--config",
        &f4,
        "--p",
        "(T^2+{g}*T)*(T+{g})",
        "--q",
        "(T+{1})*(T+{g})",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "gcrd: T + {g}\ngcld: T + {1}\n");

    let out = run(&["lcm", "--config", &f4, "--p", "T+{g}", "--q", "T+{1}"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "llcm: T^2 + {1}\nu: T + {g+1}\nv: T + {1}\n");

    let out = run(&["orbit", "--config", &f4, "--at", "g"]);
    assert_eq!(out.status.code(), Some(0));
    let points: Vec<String> = serde_json::from_str(&stdout(&out)).unwrap();
    let mut sorted = points.clone();
    sorted.sort();
    assert_eq!(sorted, ["1", "g", "g+1"]);

    let out = run(&["convex", "--config", &f4, "--orbit", "1", "--count"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "16\n");
}

#[test]
fn invert_round_trips_a_cycle() {
    // The 3-cycle on F_4* is its own skew inverse.
    let table = scratch().join("cycle.json");
    std::fs::write(&table, r#"{"1":"g","g":"g+1","g+1":"1"}"#).unwrap();
    let out = run(&[
        "invert",
        "--config",
        &f4_config(),
        "--orbit",
        "1",
        "--table",
        table.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let inverse: std::collections::BTreeMap<String, String> =
        serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(inverse["1"], "g");
    assert_eq!(inverse["g"], "g+1");
    assert_eq!(inverse["g+1"], "1");
}

#[test]
fn json_mode_shapes() {
    let quat = quaternions_config();
    let out = run(&[
        "--json",
        "eval",
        "--config",
        &quat,
        "--expr",
        "(T-{i})^-1",
        "--at",
        "2j",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["defined"], true);
    assert_eq!(v["value"], "-1/3i-2/3j");

    let out = run(&[
        "--json",
        "eval",
        "--config",
        &quat,
        "--expr",
        "(T-{i})^-1",
        "--at",
        "j",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["defined"], false);
    assert_eq!(v["value"], serde_json::Value::Null);

    let out = run(&[
        "--json",
        "convex",
        "--config",
        &f4_config(),
        "--orbit",
        "1",
        "--count",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["count"], 16);

    let out = run(&[
        "--json",
        "verify",
        "--config",
        &f4_config(),
        "--suite",
        "nearring",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["suite"], "nearring");
    assert_eq!(v["passed"], true);
    assert!(v["checks"].as_array().unwrap().len() >= 3);
}
