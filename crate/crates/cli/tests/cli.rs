use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn catlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_catlab")).args(args).output().expect("binary runs")
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is one JSON document")
}

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "fixtures", name].iter().collect();
    p.to_string_lossy().into_owned()
}

#[test]
fn hilbert_of_x0sq_x1sq() {
    let out = catlab(&["hilbert", "--poly", "x0^2*x1^2"]);
    assert_eq!(out.status.code(), Some(0));
    let rep = report(&out);
    assert_eq!(rep["command"], "hilbert");
    assert_eq!(rep["results"]["hf"], serde_json::json!([1, 2, 3, 2, 1]));
    for key in ["command", "inputs", "results", "warnings", "seed", "version"] {
        assert!(rep.get(key).is_some(), "missing {key}");
    }
}

#[test]
fn certify_three_points_from_file() {
    let out = catlab(&["certify", "--poly-file", &fixture("three_points.txt"), "-r", "3"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let res = &report(&out)["results"];
    assert_eq!(res["s"], 3);
    assert_eq!(res["reduced"], "Reduced");
    assert_eq!(res["quotient_hf"], serde_json::json!([1, 2, 3, 3, 3, 3, 3, 3, 3, 3]));
    let terms = res["decomposition"]["terms"].as_array().unwrap();
    let points: Vec<&Value> = terms.iter().map(|t| &t["point"]).collect();
    assert_eq!(points, [&serde_json::json!(["1", "1"]), &serde_json::json!(["1", "0"]), &serde_json::json!(["0", "1"])]);
}

#[test]
fn compressed_six_three() {
    let out = catlab(&["compressed", "--case", "6,3"]);
    assert_eq!(out.status.code(), Some(0));
    let res = &report(&out)["results"];
    assert_eq!(res["r"], 14);
    assert_eq!(res["z_dim"], 70);
    assert_eq!(res["smoothable_dim"], 84);
}

#[test]
fn domain_errors_exit_two() {
    let out = catlab(&["decompose", "--poly", "x0^5*x1", "-r", "2"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(report(&out)["results"]["error"]["kind"], "NotReducedError");

    let out = catlab(&["certify", "--poly", "x0^6+x1^6+x0^3*x1^3+x0*x1^5", "-r", "2", "-i", "3"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(report(&out)["results"]["error"]["kind"], "NotInRankLocus");

    let out = catlab(&["compressed", "--case", "5,4"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(report(&out)["results"]["error"]["kind"], "EvenSocleUnsupported");
}

#[test]
fn exact_flag_rejects_irrational_points() {
    // (x0 + √2 x1)^4 + (x0 - √2 x1)^4
    let poly = "2*x0^4+24*x0^2*x1^2+8*x1^4";
    let out = catlab(&["decompose", "--poly", poly, "-r", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let res = &report(&out)["results"];
    assert_eq!(res["exact"], false);
    assert_eq!(res["residual"]["approx"], true);
    assert_eq!(res["terms"][0]["coefficient"]["precision_digits"], 12);

    let out = catlab(&["decompose", "--poly", poly, "-r", "2", "--exact"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(report(&out)["results"]["error"]["kind"], "ApproximateModeUnsupported");
}

#[test]
fn usage_errors_exit_one_with_grammar() {
    for args in [
        &["hilbert", "--poly", "x0^2+x1"][..],
        &["hilbert"][..],
        &["certify", "--poly", "x0^4"][..],
        &["frobnicate"][..],
    ] {
        let out = catlab(args);
        assert_eq!(out.status.code(), Some(1), "{args:?}");
        assert!(out.stdout.is_empty());
        assert!(String::from_utf8_lossy(&out.stderr).contains("polynomial :="), "{args:?}");
    }
}

#[test]
fn reports_are_deterministic() {
    let args = ["counterexample", "--case", "4,3", "-d", "5", "--seed", "7"];
    let a = catlab(&args);
    let b = catlab(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(report(&a)["seed"], 7);

    let args = ["certify", "--poly-file", &fixture("three_points.txt"), "-r", "3", "--seed", "99"];
    assert_eq!(catlab(&args).stdout, catlab(&args).stdout);
}

#[test]
fn text_mode_is_plain() {
    let out = catlab(&["hilbert", "--poly", "x0^2*x1^2", "--text"]);
    assert_eq!(out.status.code(), Some(0));
    let s = String::from_utf8(out.stdout).unwrap();
    assert!(s.contains("hf: [1, 2, 3, 2, 1]"));
    assert!(serde_json::from_str::<Value>(&s).is_err());
}

#[test]
fn rank_matrix_entries_are_rational_strings() {
    let out = catlab(&["rank", "--poly", "1/2*x0^2*x1^2", "-i", "2", "--matrix"]);
    let res = &report(&out)["results"];
    assert_eq!(res["rank"], 3);
    assert_eq!(res["matrix"][1], serde_json::json!(["0", "2", "0"]));
}
