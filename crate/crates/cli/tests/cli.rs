use std::process::{Command, Output};

use serde_json::Value;

fn meadow(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_meadow"))
        .args(args)
        .env_remove("MEADOW_SEED")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

/// Runs and checks exit code and the exact standard output.
fn golden(args: &[&str], code: i32, expected: &str) {
    let o = meadow(args);
    assert_eq!(o.status.code(), Some(code), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(stdout(&o), expected, "{args:?}");
}

fn json(args: &[&str]) -> Value {
    serde_json::from_slice(&meadow(args).stdout).unwrap()
}

#[test]
fn transcripts() {
    golden(&["eval", "--structure", "q", "1/0"], 0, "undefined\n");
    golden(&["check", "--structure", "gf:5", "x != 0 -> x/x == 1"], 0, "valid\n");
    golden(&["eval", "--structure", "gf:5", "--bind", "x=3", "1/x"], 0, "2\n");
    golden(&["eval", "--structure", "q", "--bind", "x=1/2", "x + x"], 0, "1\n");
    golden(&["eval", "--structure", "q", "1/0 == 1 || 0 != 1"], 0, "undefined\n");
    golden(&["eval", "--structure", "q", "0 != 1 || 1/0 == 1"], 0, "holds\n");
    golden(&["eval", "--structure", "enl:gf:3", "--bind", "x=bot", "x + 1 == bot"], 0, "true\n");
    golden(&["eq", "--structure", "q", "(1/0 == 1) = (1/0 == 0)"], 0, "valid\n");
    golden(&["parse", "3"], 0, "(1+1)+1\n");
    golden(&["parse", "T || F && F"], 0, "T || F && F\n");
    golden(&["flatten", "1/x"], 0, "guard: (1*1)*x\nfracterm: (1*1)/(1*x)\n");
    golden(
        &["flatten", "--prop34", "1/x"],
        0,
        "guard: (1*1)*x\nfracterm: (1*1)/(1*x)\nprop34: ((1*1)*((1*1)*x))/((1*x)*((1*1)*x))\n",
    );
    golden(&["translate", "x == y"], 0, "x != bot && y != bot && x == y\n");
    golden(&["translate", "--mode", "false", "x == y"], 0, "x != bot && y != bot && x != y\n");
}

#[test]
fn refutations_exit_one() {
    golden(
        &["check", "--structure", "gf:2", "1+x*x+y*y+z*z+u*u != 0"],
        1,
        "refuted (denial-holds) at x=1, y=0, z=0, u=0\n",
    );
    golden(&["eq", "--structure", "gf:3", "(x/x == 1) = T"], 1, "refuted at x=0: left undefined, right holds\n");
    assert_eq!(meadow(&["axioms", "--suite", "cm", "--structure", "enl:tot0:gf:3"]).status.code(), Some(1));
}

#[test]
fn errors_exit_two_with_one_line() {
    for args in [
        &["parse", "1 +"][..],
        &["check", "--structure", "gf:4", "x == x"],
        &["eval", "--structure", "gf:5", "bot"],
        &["axioms", "--suite", "nope"],
        &["axioms", "--suite", "cm", "--structure", "gf:3"],
        &["eval", "--structure", "gf:5", "--bind", "x", "x"],
    ] {
        let o = meadow(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(o.stdout.is_empty(), "{args:?}");
        let err = String::from_utf8(o.stderr).unwrap();
        assert!(err.starts_with("error"), "{args:?}: {err}");
    }
    let o = meadow(&["check", "--structure", "gf:4", "x == x"]);
    assert_eq!(String::from_utf8(o.stderr).unwrap(), "error: structure `gf:4`: 4 is not prime\n");
}

#[test]
fn suite_json_shape() {
    let v = json(&["axioms", "--suite", "ftcpm", "--structure", "gf:7", "--json"]);
    assert_eq!(v["suite"], "ftcpm");
    assert_eq!(v["structure"], "gf:7");
    let entries = v["entries"].as_array().unwrap();
    assert_eq!(entries.len(), 11);
    assert!(entries.iter().all(|e| e["verdict"] == "valid"));
    assert_eq!(entries[0]["name"], "pm1");
}

#[test]
fn check_and_parse_json() {
    let v = json(&["check", "--json", "--structure", "gf:2", "x == 0"]);
    assert_eq!(
        v,
        serde_json::json!({
            "formula": "x == 0", "structure": "gf:2", "verdict": "refuted",
            "witness": {"x": "1"}, "status": "denial-holds"
        })
    );
    let v = json(&["parse", "--json", "1/x"]);
    assert_eq!(v["kind"], "term");
    assert_eq!(v["ast"], serde_json::json!({"op": "frac", "num": {"op": "one"}, "den": {"op": "var", "name": "x"}}));
    let v = json(&["flatten", "--json", "x/y"]);
    assert_eq!(v["numerator"], "x*1");
    assert_eq!(v["denominator"], "1*y");
    let v = json(&["translate", "--json", "x == y"]);
    assert_eq!(v["op"], "and");
}

#[test]
fn output_is_deterministic() {
    let runs = [
        &["check", "--structure", "q", "--samples", "300", "x*x + 1 != 0"][..],
        &["axioms", "--suite", "soundness", "--structure", "gf:2", "--count", "40", "--json"],
        &["axioms", "--suite", "invariance", "--structure", "gf:3", "--count", "40"],
    ];
    for args in runs {
        assert_eq!(meadow(args).stdout, meadow(args).stdout, "{args:?}");
    }
}

#[test]
fn seed_from_environment_and_flag() {
    let run = |env: Option<&str>, extra: &[&str]| {
        let mut c = Command::new(env!("CARGO_BIN_EXE_meadow"));
        c.args(["check", "--structure", "q", "--samples", "50"]).args(extra).arg("x*x + 1 != 0");
        match env {
            Some(s) => c.env("MEADOW_SEED", s),
            None => c.env_remove("MEADOW_SEED"),
        };
        String::from_utf8(c.output().unwrap().stdout).unwrap()
    };
    assert_eq!(run(None, &[]), "sampled-clean (50 samples, seed 0)\n");
    assert_eq!(run(Some("5"), &[]), "sampled-clean (50 samples, seed 5)\n");
    assert_eq!(run(Some("5"), &["--seed", "7"]), "sampled-clean (50 samples, seed 7)\n");
}
