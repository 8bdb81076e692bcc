//! End-to-end tests of the cartankit binary: exit codes, canonical JSON
//! output, and file round-trips.

use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::{json, Value};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_cartankit"))
}

fn write_tmp(name: &str, content: &Value) -> PathBuf {
    let dir = std::env::temp_dir().join("cartankit-cli-tests");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, content.to_string()).unwrap();
    path
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|_| {
        panic!(
            "stdout is not JSON: {:?}",
            String::from_utf8_lossy(&out.stdout)
        )
    })
}

fn real(x: &str) -> Value {
    json!({ "re": x })
}

fn sl2_file() -> PathBuf {
    // basis (H, E, F)
    let mat = |rows: Value| json!({ "rows": 2, "cols": 2, "entries": rows });
    write_tmp(
        "sl2.json",
        &json!({
            "ambient": 2,
            "basis": [
                mat(json!([[real("1"), real("0")], [real("0"), real("-1")]])),
                mat(json!([[real("0"), real("1")], [real("0"), real("0")]])),
                mat(json!([[real("0"), real("0")], [real("1"), real("0")]])),
            ],
        }),
    )
}

fn diag2_file() -> PathBuf {
    write_tmp(
        "diag2.json",
        &json!({
            "rows": 2, "cols": 2,
            "entries": [[real("2"), real("0")], [real("0"), real("1/2")]],
        }),
    )
}

#[test]
fn lie_rank_of_sl2() {
    let out = run(&["lie", sl2_file().to_str().unwrap(), "--rank"]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["rank"], json!(1));
    assert_eq!(v["seed"], json!(0));
}

#[test]
fn grp_acoeffs_matches_expected_output() {
    let out = run(&[
        "grp",
        "--corpus",
        "sl2",
        "--element",
        diag2_file().to_str().unwrap(),
        "--acoeffs",
    ]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["a"], json!(["0", "-9/4", "-9/4", "1"]));
    assert_eq!(v["r"], json!(1));
}

#[test]
fn grp_regular_and_in_c() {
    let elem = diag2_file();
    let out = run(&[
        "grp",
        "--corpus",
        "sl2",
        "--element",
        elem.to_str().unwrap(),
        "--regular",
    ]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["regular"], json!(true));
    assert_eq!(v["rank"], json!(1));

    // span H by basis index
    let out = run(&[
        "grp",
        "--corpus",
        "sl2",
        "--element",
        elem.to_str().unwrap(),
        "--in-c",
        "0",
    ]);
    assert!(out.status.success());
    assert_eq!(stdout_json(&out)["in_c"], json!(true));
}

#[test]
fn verify_single_check_passes() {
    let out = run(&["verify", "--check", "C4", "--seed", "7", "--samples", "40"]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v[0]["check"], json!("C4"));
    assert_eq!(v[0]["outcome"], json!("pass"));
    assert_eq!(v[0]["seed"], json!(7));
    // canonical reports pin runtime for byte-reproducibility
    assert_eq!(v[0]["runtime_ms"], json!(0));
}

#[test]
fn verify_output_is_byte_identical_across_runs() {
    let args = ["verify", "--check", "C9", "--seed", "42"];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn exit_code_input_error() {
    let out = run(&["lie", "/nonexistent/algebra.json", "--rank"]);
    assert_eq!(out.status.code(), Some(2));

    let bad = write_tmp("bad.json", &json!({ "ambient": 2 }));
    let out = run(&["lie", bad.to_str().unwrap(), "--rank"]);
    assert_eq!(out.status.code(), Some(2));
    let msg = String::from_utf8_lossy(&out.stderr);
    assert!(msg.contains("basis"), "stderr: {msg}");
}

#[test]
fn exit_code_split_failure() {
    // [[0,2],[1,0]] has characteristic polynomial t^2 - 2
    let x = write_tmp(
        "sqrt2.json",
        &json!({
            "rows": 2, "cols": 2,
            "entries": [[real("0"), real("2")], [real("1"), real("0")]],
        }),
    );
    let out = run(&[
        "lie",
        sl2_file().to_str().unwrap(),
        "--hull-single",
        x.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(3));
    let msg = String::from_utf8_lossy(&out.stderr);
    assert!(msg.contains("does not split"), "stderr: {msg}");
}

#[test]
fn exit_code_validation_rejection() {
    let not_det1 = write_tmp(
        "notdet1.json",
        &json!({
            "rows": 2, "cols": 2,
            "entries": [[real("2"), real("0")], [real("0"), real("1")]],
        }),
    );
    let out = run(&[
        "grp",
        "--corpus",
        "sl2",
        "--element",
        not_det1.to_str().unwrap(),
        "--validate",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let v = stdout_json(&out);
    assert_eq!(v["valid"], json!(false));
}

#[test]
fn seed_env_var_is_honored() {
    let out = bin()
        .args(["corpus", "--list"])
        .env("CARTANKIT_SEED", "99")
        .output()
        .unwrap();
    assert_eq!(stdout_json(&out)["seed"], json!(99));
    // explicit --seed wins
    let out = bin()
        .args(["corpus", "--list", "--seed", "5"])
        .env("CARTANKIT_SEED", "99")
        .output()
        .unwrap();
    assert_eq!(stdout_json(&out)["seed"], json!(5));
}

#[test]
fn emitted_algebra_json_reloads_equal() {
    // round-trip: a subspace emitted by --cartan can be fed back as the
    // vectors argument of --roots
    let sl2 = sl2_file();
    let out = run(&["lie", sl2.to_str().unwrap(), "--cartan"]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    let basis = &v["cartan"]["basis"]["entries"];
    let h_arg = write_tmp("h.json", &json!({ "vectors": basis }));
    let out = run(&[
        "lie",
        sl2.to_str().unwrap(),
        "--roots",
        h_arg.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let roots = stdout_json(&out);
    let dims: u64 = roots["root_datum"]["roots"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["dim"].as_u64().unwrap())
        .sum();
    assert_eq!(dims, 3);
}

#[test]
fn real_output_flag_drops_zero_imaginary_parts() {
    let out = run(&[
        "grp",
        "--corpus",
        "sl2",
        "--element",
        diag2_file().to_str().unwrap(),
        "--g1",
        "--real-output",
    ]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    let cell = &v["g1"]["basis"]["entries"][0][0];
    assert_eq!(cell, &json!({ "re": "1" }));
}

#[test]
fn text_mode_is_human_readable() {
    let out = run(&["lie", sl2_file().to_str().unwrap(), "--rank", "--text"]);
    assert!(out.status.success());
    let s = String::from_utf8_lossy(&out.stdout);
    assert!(s.contains("rank: 1"), "got {s}");
}

#[test]
fn lie_series_g0_and_predicates() {
    let sl2 = sl2_file();
    let out = run(&["lie", sl2.to_str().unwrap(), "--series"]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    // sl2 is perfect: both series are constant at the whole algebra
    assert_eq!(v["lower_central"].as_array().unwrap().len(), 1);
    assert_eq!(v["derived"].as_array().unwrap().len(), 1);

    let out = run(&["lie", sl2.to_str().unwrap(), "--nilpotent"]);
    assert_eq!(stdout_json(&out)["nilpotent"], json!(false));
    let out = run(&["lie", sl2.to_str().unwrap(), "--solvable"]);
    assert_eq!(stdout_json(&out)["solvable"], json!(false));

    // g^0 of span{E} is the whole algebra
    let out = run(&["lie", sl2.to_str().unwrap(), "--g0", "1"]);
    assert!(out.status.success());
    assert_eq!(stdout_json(&out)["dim"], json!(3));

    let out = run(&["lie", sl2.to_str().unwrap(), "--normalizer", "1"]);
    assert!(out.status.success());
    assert_eq!(stdout_json(&out)["normalizer"]["dim"], json!(2));
}

#[test]
fn grp_root_action_from_loaded_group_file() {
    // the sl2 context as a plain group file (no sampler) still supports
    // the membership and root-action operations
    let group = write_tmp(
        "sl2-group.json",
        &json!({
            "name": "sl2-file",
            "ambient": 2,
            "hint": "det1",
            "lie": serde_json::from_str::<Value>(
                &std::fs::read_to_string(sl2_file()).unwrap()
            ).unwrap(),
        }),
    );
    let w = write_tmp(
        "w.json",
        &json!({
            "rows": 2, "cols": 2,
            "entries": [[real("0"), real("1")], [real("-1"), real("0")]],
        }),
    );
    let out = run(&[
        "grp",
        group.to_str().unwrap(),
        "--element",
        w.to_str().unwrap(),
        "--root-action",
        "0",
    ]);
    assert!(
        out.status.success(),
        "{:?}",
        String::from_utf8_lossy(&out.stderr)
    );
    let v = stdout_json(&out);
    // roots sorted (-2), (0), (2); w swaps the outer two
    assert_eq!(v["permutation"], json!([2, 1, 0]));
}

#[test]
fn roots_of_nonsplit_subalgebra_exits_3() {
    // span{E + 2F} is a nilpotent line whose ad has eigenvalues 0, +-2*sqrt(2)
    let h = write_tmp(
        "nonsplit-h.json",
        &json!({ "vectors": [[real("0"), real("1"), real("2")]] }),
    );
    let out = run(&[
        "lie",
        sl2_file().to_str().unwrap(),
        "--roots",
        h.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(3));
    let msg = String::from_utf8_lossy(&out.stderr);
    assert!(msg.contains("does not split"), "stderr: {msg}");
    assert!(msg.contains("map #0"), "stderr: {msg}");
}

#[test]
fn in_c_requires_a_cartan_subalgebra() {
    // span{E} (basis index 1) is nilpotent but not a Cartan subalgebra
    let out = run(&[
        "grp",
        "--corpus",
        "sl2",
        "--element",
        diag2_file().to_str().unwrap(),
        "--in-c",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let msg = String::from_utf8_lossy(&out.stderr);
    assert!(msg.contains("Cartan"), "stderr: {msg}");
}
