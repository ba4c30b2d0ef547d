use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/tests/data").join(name)
}

fn persalg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_persalg"))
        .args(args)
        .env_remove("PERSALG_PRIME")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap().trim_end().to_string()
}

fn json_out(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

fn json_err(o: &Output) -> Value {
    serde_json::from_slice(&o.stderr).expect("stderr is JSON")
}

#[test]
fn op_prints_intervals() {
    let o = persalg(&["op", "gr_tensor", "[0,2)", "[0,3)"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "[0,2)");
    assert_eq!(stdout(&persalg(&["op", "sh_tensor", "[0,2)", "[3,4)"])), "0");
    assert_eq!(stdout(&persalg(&["op", "matlis_dual", "[1,3)"])), "(-3,-1]");
    assert_eq!(stdout(&persalg(&["op", "translate", "[0,1)", "-1/2"])), "[-1/2,1/2)");
    assert_eq!(stdout(&persalg(&["op", "hom_dim", "[1,3)", "[0,2)"])), "1");
}

#[test]
fn classify_down_ray() {
    let o = persalg(&["op", "classify", "(-inf,3)"]);
    assert_eq!(stdout(&o), r#"{"injective":true,"projective":false,"flat":false}"#);
}

#[test]
fn exit_codes() {
    let parse = persalg(&["op", "gr_tensor", "[0,2", "[0,3)"]);
    assert_eq!(parse.status.code(), Some(1));
    assert_eq!(json_err(&parse)["error"], "parse");

    let unsupported = persalg(&["op", "gr_tensor", "(0,2]", "[0,3)"]);
    assert_eq!(unsupported.status.code(), Some(2));
    assert_eq!(json_err(&unsupported)["error"], "unsupported_shape");

    let usage = persalg(&["op", "frobnicate", "[0,1)"]);
    assert_eq!(usage.status.code(), Some(1));
    assert_eq!(json_err(&usage)["error"], "usage");

    let arity = persalg(&["op", "classify", "[0,1)", "[0,2)"]);
    assert_eq!(arity.status.code(), Some(1));

    let bad = persalg(&["barcode", data("nonmonotone.filt").to_str().unwrap()]);
    assert_eq!(bad.status.code(), Some(1));
    assert_eq!(json_err(&bad)["error"], "non_monotone");

    let missing = persalg(&["barcode", "/nonexistent/file.filt"]);
    assert_eq!(missing.status.code(), Some(1));
    assert_eq!(json_err(&missing)["error"], "io");
}

#[test]
fn barcode_of_triangle() {
    let o = persalg(&["barcode", data("triangle.filt").to_str().unwrap()]);
    assert!(o.status.success());
    assert_eq!(
        stdout(&o),
        r#"{"degrees":{"0":["[0,inf)","[1,3)","[2,4)"],"1":["[5,6)"]}}"#
    );
    let pretty = persalg(&["--pretty", "barcode", data("triangle.filt").to_str().unwrap()]);
    assert_eq!(stdout(&pretty), "H0: [0,inf) [1,3) [2,4)\nH1: [5,6)");
}

#[test]
fn prime_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_persalg"))
        .args(["barcode", data("triangle.filt").to_str().unwrap()])
        .env("PERSALG_PRIME", "4")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(json_err(&o)["error"], "invalid_prime");
}

#[test]
fn kunneth_both_modes() {
    let (k, l) = (data("edge_012.filt"), data("edge_013.filt"));
    for mode in ["graded", "sheaf"] {
        let o = persalg(&["kunneth", k.to_str().unwrap(), l.to_str().unwrap(), "--mode", mode]);
        assert!(o.status.success(), "{mode}");
        let v = json_out(&o);
        assert_eq!(v["verdict"], true);
        assert_eq!(v["product"], v["predicted"]);
    }
    let graded = json_out(&persalg(&["kunneth", k.to_str().unwrap(), l.to_str().unwrap(), "--mode", "graded"]));
    assert_eq!(graded["product"]["degrees"]["1"], serde_json::json!(["[4,5)"]));
}

#[test]
fn uct_paths_agree() {
    let file = data("triangle.filt");
    let o = persalg(&["uct", file.to_str().unwrap(), "--coef", "[10,inf)", "--variance", "hom", "--mode", "graded"]);
    assert!(o.status.success());
    let v = json_out(&o);
    assert_eq!(v["agree"], true);
    assert_eq!(v["formula"]["degrees"]["2"], serde_json::json!(["[4,5)"]));
}

#[test]
fn product_round_trips_through_barcode() {
    let dir = std::env::temp_dir().join(format!("persalg-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let out = dir.join("product.filt");
    let (k, l) = (data("edge_012.filt"), data("edge_013.filt"));
    let o = persalg(&[
        "product",
        k.to_str().unwrap(),
        l.to_str().unwrap(),
        "--mode",
        "additive",
        "-o",
        out.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let b = json_out(&persalg(&["barcode", out.to_str().unwrap()]));
    let kunneth = json_out(&persalg(&["kunneth", k.to_str().unwrap(), l.to_str().unwrap(), "--mode", "graded"]));
    assert_eq!(b, kunneth["product"]);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn check_suite_passes_and_is_deterministic() {
    let o = persalg(&["check", "--cases", "500", "--seed", "7"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let v = json_out(&o);
    assert_eq!(v["seed"], 7);
    assert_eq!(v["passed"], true);
    assert_eq!(v["results"].as_array().unwrap().len(), 16);
    let a = persalg(&["check", "--cases", "10", "--seed", "3", "--prime", "3"]);
    let b = persalg(&["check", "--cases", "10", "--seed", "3", "--prime", "3"]);
    assert_eq!(a.stdout, b.stdout);
}
