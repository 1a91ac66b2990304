//! End-to-end tests against the installed binary: pinned outputs, exit
//! codes, format selection, and the atomic --out path.

use std::process::{Command, Output};

fn genus(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_genus"))
        .args(args)
        .env_remove("GENUS_ENGINE_PRECISION")
        .output()
        .expect("binary should run")
}

fn stdout_json(out: &Output) -> serde_json::Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout should be JSON")
}

#[test]
fn first_correction_row_is_pinned() {
    let out = genus(&["zg", "--nu", "2", "--g", "1"]);
    let v = stdout_json(&out);
    assert_eq!(v["schema"], "1");
    assert_eq!(v["coeffs"], serde_json::json!(["2/3", "-4/3", "2/3"]));
    assert_eq!(v["pole_order"], 4);
}

#[test]
fn first_expansion_weight_is_pinned() {
    let out = genus(&["tg", "--G", "1"]);
    let v = stdout_json(&out);
    assert_eq!(v["values"], serde_json::json!(["1/24"]));
    assert_eq!(v["t2_flat_radical_display_differs"], true);
}

#[test]
fn double_scaling_terms_are_pinned() {
    let out = genus(&["ds", "--nu", "2", "--G", "2"]);
    let v = stdout_json(&out);
    assert_eq!(v["s_c"], "1/48");
    assert_eq!(v["caustic_slope_squared"], "-192");
    assert_eq!(v["terms"], serde_json::json!(["4/3", "392/9"]));
}

#[test]
fn emitted_json_reparses_identically() {
    let first = genus(&["eg", "--nu", "3", "--g", "2"]);
    let text = String::from_utf8(first.stdout.clone()).unwrap();
    let value: serde_json::Value = serde_json::from_str(&text).unwrap();
    let again = format!("{}\n", serde_json::to_string_pretty(&value).unwrap());
    assert_eq!(text, again);
    let second = genus(&["eg", "--nu", "3", "--g", "2"]);
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn usage_problems_exit_two() {
    for args in [
        &["zg", "--nu", "1", "--g", "1"][..],
        &["zg", "--nu", "2", "--g", "9"][..],
        &["zg", "--nu", "2"][..],
        &["counts", "--nu", "2", "--g", "0", "--jmax", "4", "--no-such-flag"][..],
        &["numcheck", "--nu", "2", "--N", "8", "--G", "0"][..],
        &["ds", "--nu", "3", "--G", "2", "--xi", "-1.0"][..],
        &["eqmeasure", "--nu", "2", "--z0", "1.5"][..],
        &["validate", "--gmax", "1"][..],
    ] {
        let out = genus(args);
        assert_eq!(out.status.code(), Some(2), "args {:?}", args);
    }
}

#[test]
fn precision_env_is_honored_and_flag_wins() {
    let bad_env = Command::new(env!("CARGO_BIN_EXE_genus"))
        .args(["plotdata", "--nu", "2", "--points", "3"])
        .env("GENUS_ENGINE_PRECISION", "not-a-number")
        .output()
        .unwrap();
    assert_eq!(bad_env.status.code(), Some(2));

    let flag_wins = Command::new(env!("CARGO_BIN_EXE_genus"))
        .args(["plotdata", "--nu", "2", "--points", "3", "--precision", "64"])
        .env("GENUS_ENGINE_PRECISION", "not-a-number")
        .output()
        .unwrap();
    assert!(flag_wins.status.success());

    let out_of_range = Command::new(env!("CARGO_BIN_EXE_genus"))
        .args(["plotdata", "--nu", "2", "--points", "3"])
        .env("GENUS_ENGINE_PRECISION", "8")
        .output()
        .unwrap();
    assert_eq!(out_of_range.status.code(), Some(2));
}

#[test]
fn csv_and_text_formats_render() {
    let csv = genus(&["counts", "--nu", "2", "--g", "0", "--jmax", "4", "--format", "csv"]);
    let text = String::from_utf8(csv.stdout).unwrap();
    assert!(text.contains("values[2],576"), "csv was:\n{text}");

    let table = genus(&["eqmeasure", "--nu", "2", "--z0", "1", "--grid", "3"]);
    let body = String::from_utf8(table.stdout).unwrap();
    assert!(body.starts_with("eta,density"), "default format should be csv");

    let aligned = genus(&["zg", "--nu", "2", "--g", "1", "--format", "text"]);
    let body = String::from_utf8(aligned.stdout).unwrap();
    assert!(body.contains("coeffs"), "text was:\n{body}");
}

#[test]
fn out_flag_writes_atomically() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("row.json");
    let direct = genus(&["zg", "--nu", "3", "--g", "2"]);
    let via_file = genus(&["zg", "--nu", "3", "--g", "2", "--out", path.to_str().unwrap()]);
    assert!(via_file.status.success());
    assert!(via_file.stdout.is_empty());
    assert_eq!(std::fs::read(&path).unwrap(), direct.stdout);
    let leftovers: Vec<_> = std::fs::read_dir(dir.path())
        .unwrap()
        .map(|e| e.unwrap().file_name())
        .collect();
    assert_eq!(leftovers, vec![std::ffi::OsString::from("row.json")]);
}

#[test]
fn counts_fall_back_to_the_order_flag() {
    let v = stdout_json(&genus(&["counts", "--nu", "2", "--g", "0", "--order", "3"]));
    assert_eq!(v["jmax"], 3);
    assert_eq!(
        v["values"],
        serde_json::json!(["1", "12", "576", "51840"])
    );
}
