use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn chnlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_chnlab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn chnlab_env(args: &[&str], key: &str, val: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_chnlab"))
        .args(args)
        .env(key, val)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| {
        panic!(
            "stdout is not JSON ({e}): {}",
            String::from_utf8_lossy(&o.stdout)
        )
    })
}

fn strip_timing(v: &mut Value) {
    match v {
        Value::Object(map) => {
            map.remove("elapsed_ms");
            map.values_mut().for_each(strip_timing);
        }
        Value::Array(items) => items.iter_mut().for_each(strip_timing),
        _ => {}
    }
}

fn untimed(o: &Output) -> Value {
    let mut v = json(o);
    strip_timing(&mut v);
    v
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn export_to(dir: &Path, name: &str) -> String {
    let path = dir.join(format!("{}.json", name.replace(':', "_")));
    let p = path.to_str().unwrap().to_string();
    let o = chnlab(&["export", "--r", name, "--out", &p]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    p
}

#[test]
fn documented_examples() {
    let o = chnlab(&[
        "check",
        "compatible",
        "--r",
        "cremmer_gervais_r",
        "--f",
        "cremmer_gervais_f",
    ]);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["pass"], true);

    let o = chnlab(&["derive", "dmat", "--f", "permutation:3"]);
    assert_eq!(code(&o), 0);
    let entries = &json(&o)["result"]["entries"];
    let expected: Value = serde_json::json!({"1|1": "1", "2|2": "1", "3|3": "1"});
    assert_eq!(entries, &expected);

    let o = chnlab(&[
        "verify",
        "chn",
        "--algebra",
        "rtt",
        "--r",
        "standard:2",
        "--k",
        "3",
        "--variant",
        "overline",
        "--mode",
        "exact",
    ]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["mode"], "exact");
    assert_eq!(v["parts"].as_array().unwrap().len(), 3);
}

#[test]
fn cremmer_gervais_dmatrix_is_diag_1_minus_i_1() {
    let o = chnlab(&["derive", "dmat", "--f", "cremmer_gervais_f"]);
    assert_eq!(code(&o), 0);
    let expected: Value = serde_json::json!({"1|1": "1", "2|2": "-i", "3|3": "1"});
    assert_eq!(json(&o)["result"]["entries"], expected);
}

#[test]
fn failing_checks_exit_with_one() {
    let o = chnlab(&["check", "hecke", "--r", "permutation:2"]);
    assert_eq!(code(&o), 1);
    assert_eq!(json(&o)["pass"], false);

    let o = chnlab(&[
        "check",
        "compatible",
        "--r",
        "standard:2",
        "--f",
        "cremmer_gervais_f",
    ]);
    assert_eq!(code(&o), 2, "dimension mismatch is an input error");
}

#[test]
fn malformed_input_exits_with_two_and_points_at_the_error() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(
        &bad,
        r#"{"n": 2, "arity": 2, "entries": {"1,1|1,1": "q + * 2"}}"#,
    )
    .unwrap();
    let o = chnlab(&["check", "yb", "--r", bad.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    let err = stderr(&o);
    assert!(err.contains("q + * 2\n    ^"), "{err}");

    let arity1 = dir.path().join("arity1.json");
    std::fs::write(&arity1, r#"{"n": 2, "arity": 1, "entries": {"1|1": "1"}}"#).unwrap();
    let o = chnlab(&["check", "yb", "--r", arity1.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("arity"));

    let not_json = dir.path().join("broken.json");
    std::fs::write(&not_json, "{\"n\": 2,").unwrap();
    assert_eq!(
        code(&chnlab(&["check", "yb", "--r", not_json.to_str().unwrap()])),
        2
    );

    assert_eq!(
        code(&chnlab(&["check", "yb", "--r", "standard:2", "--n", "3"])),
        2
    );
    assert_eq!(code(&chnlab(&["check", "yb", "--r", "no_such_builtin"])), 2);
    assert_eq!(
        code(&chnlab(&[
            "verify",
            "chn",
            "--algebra",
            "rtt",
            "--r",
            "standard:2",
            "--k",
            "5"
        ])),
        2
    );
    assert_eq!(
        code(&chnlab(&[
            "verify",
            "chn",
            "--algebra",
            "general",
            "--r",
            "standard:2"
        ])),
        2
    );
    assert_eq!(code(&chnlab(&["nonsense"])), 2);
    assert_eq!(
        code(&chnlab_env(
            &["check", "yb", "--r", "standard:2"],
            "CHNLAB_THREADS",
            "many"
        )),
        2
    );
}

#[test]
fn exported_builtins_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let r = export_to(dir.path(), "cremmer_gervais_r");
    let f = export_to(dir.path(), "cremmer_gervais_f");

    // b and y must be declared when read back from a file.
    let o = chnlab(&["check", "compatible", "--r", &r, "--f", &f]);
    assert_eq!(code(&o), 2);

    let from_file = chnlab(&[
        "--params",
        "b,y",
        "check",
        "compatible",
        "--r",
        &r,
        "--f",
        &f,
    ]);
    let builtin = chnlab(&[
        "check",
        "compatible",
        "--r",
        "cremmer_gervais_r",
        "--f",
        "cremmer_gervais_f",
    ]);
    assert_eq!(code(&from_file), 0, "{}", stderr(&from_file));
    assert_eq!(untimed(&from_file), untimed(&builtin));

    let s = export_to(dir.path(), "standard:2");
    let a = chnlab(&["verify", "chn", "--algebra", "rlrl", "--r", &s, "--k", "3"]);
    let b = chnlab(&[
        "verify",
        "chn",
        "--algebra",
        "rlrl",
        "--r",
        "standard:2",
        "--k",
        "3",
    ]);
    assert_eq!(code(&a), 0);
    assert_eq!(untimed(&a), untimed(&b));

    // Exporting the file again reproduces the builtin export.
    let again = chnlab(&["--params", "b,y", "export", "--r", &r]);
    let direct = chnlab(&["export", "--r", "cremmer_gervais_r"]);
    assert_eq!(again.stdout, direct.stdout);
}

#[test]
fn randomized_runs_are_reproducible() {
    let args = [
        "verify",
        "chn",
        "--algebra",
        "rtt",
        "--r",
        "standard:3",
        "--k",
        "3",
        "--mode",
        "randomized",
        "--seed",
        "11",
    ];
    let first = chnlab(&args);
    let second = chnlab(&args);
    assert_eq!(code(&first), 0);
    assert_eq!(untimed(&first), untimed(&second));
    let one_thread = chnlab_env(&args, "CHNLAB_THREADS", "1");
    assert_eq!(untimed(&first), untimed(&one_thread));

    let v = json(&first);
    assert_eq!(v["mode"], "randomized");
    assert_eq!(v["seed"], 11);
    let top = &v["parts"][2];
    assert_eq!(top["points"].as_array().unwrap().len(), 3);

    let mut other = args;
    other[11] = "12";
    let third = chnlab(&other);
    assert_ne!(
        untimed(&first)["parts"][2]["points"],
        untimed(&third)["parts"][2]["points"]
    );
}

#[test]
fn auto_mode_randomizes_only_large_cases() {
    let v = json(&chnlab(&[
        "verify",
        "chn",
        "--algebra",
        "rtt",
        "--r",
        "standard:3",
        "--k",
        "3",
    ]));
    let modes: Vec<&str> = v["parts"]
        .as_array()
        .unwrap()
        .iter()
        .map(|p| p["mode"].as_str().unwrap())
        .collect();
    assert_eq!(modes, ["exact", "exact", "randomized"]);
    let v = json(&chnlab(&[
        "verify",
        "chn",
        "--algebra",
        "rtt",
        "--r",
        "standard:2",
        "--k",
        "3",
    ]));
    assert_eq!(v["mode"], "exact");
}

#[test]
fn other_subcommands() {
    let o = chnlab(&["build", "antisym", "--r", "standard:2", "--k", "3"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["diagnostics"][0], "rank = 0");

    let o = chnlab(&["twist", "--r", "standard:2", "--f", "standard:2"]);
    assert_eq!(code(&o), 0);
    assert!(json(&o)["result"]["RFF"]["entries"].is_object());

    let o = chnlab(&[
        "verify",
        "classical",
        "--n",
        "4",
        "--seed",
        "2",
        "--flavor",
        "newton",
    ]);
    assert_eq!(code(&o), 0);
    let o = chnlab(&[
        "verify",
        "classical",
        "--n",
        "3",
        "--seed",
        "2",
        "--flavor",
        "symmetric",
        "--format",
        "text",
    ]);
    assert_eq!(code(&o), 0);
    assert!(String::from_utf8_lossy(&o.stdout).starts_with("PASS classical chn symmetric"));

    let o = chnlab(&[
        "verify",
        "bridge",
        "--r",
        "standard:2",
        "--f",
        "permutation:2",
        "--k",
        "3",
    ]);
    assert_eq!(code(&o), 0);
    assert_eq!(
        code(&chnlab(&[
            "verify",
            "bridge",
            "--r",
            "cremmer_gervais_r",
            "--f",
            "cremmer_gervais_f"
        ])),
        2
    );
}

#[test]
fn out_flag_writes_the_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let o = chnlab(&[
        "check",
        "yb",
        "--r",
        "standard:3",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0);
    assert!(o.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["check"], "yang-baxter");
}
