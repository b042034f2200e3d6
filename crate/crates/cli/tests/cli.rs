use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;

use shearlab::notation::{parse_form, Bindings};
use shearlab::shear::{apply_shear, ShearData};
use shearlab::LieAlgebra;
use shearlab_cli::{run, Output};

const PSI: &str = "e1425 + e1436 + e2536 - e4567 + e4237 + e1267 + e1537";
const G: &str = "([l+m].17,[l].27,[m].37,-[l+m].47,-[l].57,-[m].67,0)";
const S5: &str = "(51,52,53,2.54,0)";

fn cli(args: &[&str]) -> Output {
    let mut full = vec!["shearlab"];
    full.extend_from_slice(args);
    run(full, false)
}

fn json(args: &[&str]) -> (Value, i32) {
    let mut with = args.to_vec();
    with.push("--json");
    let out = cli(&with);
    (serde_json::from_str(&out.stdout).expect("valid JSON"), out.code)
}

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("data")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

#[test]
fn algebra_check_examples() {
    let (r, code) = json(&["algebra-check", "(0,0,12)"]);
    assert_eq!(code, 0);
    assert_eq!(r["results"]["jacobi"]["passed"], true);
    assert_eq!(r["results"]["classification"]["nilpotent"], true);
    assert_eq!(r["results"]["classification"]["step_length"], 2);

    let (r, code) = json(&["algebra-check", S5]);
    assert_eq!(code, 0);
    assert_eq!(r["results"]["classification"]["solvable"], true);
    assert_eq!(r["results"]["classification"]["nilpotent"], false);

    let out = cli(&["algebra-check", "(0,12,0,23)"]);
    assert_eq!(out.code, 2);
    assert!(out.stdout.contains("d(d e4) = e123"), "{}", out.stdout);
    let (r, code) = json(&["algebra-check", "(0,12,0,23)"]);
    assert_eq!(code, 2);
    assert_eq!(r["results"]["jacobi"]["failures"][0]["dd"], "e123");
    assert_eq!(r["status"]["kind"], "jacobi-failure");
}

#[test]
fn shear_examples() {
    let base = ["shear", S5, "--x", "E4", "--alpha", "e4", "--a", "-1"];
    let with = |f0: &'static str| {
        let mut v = base.to_vec();
        v.extend(["--f0", f0]);
        v
    };
    let (r, code) = json(&with("e13"));
    assert_eq!(code, 0);
    assert_eq!(r["results"]["sheared"]["salamon"], "(51,52,53,13+2.54,0)");
    let (r, _) = json(&with("-2*e54"));
    assert_eq!(r["results"]["sheared"]["salamon"], "(51,52,53,0,0)");

    let (r, code) = json(&with("e14"));
    assert_eq!(code, 3);
    let conditions = r["results"]["shear"]["conditions"].as_array().unwrap();
    let closed = conditions.iter().find(|c| c["condition"] == "d eta0 = 0").unwrap();
    assert_eq!(closed["passed"], false);
    assert!(r["results"].get("sheared").is_none());
    // the table is printed in text mode too
    let out = cli(&with("e14"));
    assert!(out.stdout.contains("[FAIL] d eta0 = 0"));

    let mut v = with("e13");
    v.push("--validate-only");
    let (r, code) = json(&v);
    assert_eq!(code, 0);
    assert_eq!(r["results"]["shear"]["valid"], true);
    assert!(r["results"].get("sheared").is_none());
}

#[test]
fn shear_data_errors() {
    let out = cli(&["shear", S5, "--x", "E4", "--alpha", "2*e4", "--f0", "e13"]);
    assert_eq!(out.code, 3);
    let out = cli(&["shear", S5, "--x", "E4", "--alpha", "e4", "--f0", "e13", "--a", "0"]);
    assert_eq!(out.code, 3);
    let out = cli(&["shear", S5, "--x", "E1", "--alpha", "e1", "--f0", "e23"]);
    assert_eq!(out.code, 3, "span E1 is not an ideal");
    let out = cli(&["shear", S5, "--x", "E4", "--alpha", "e4", "--f0", "e1x"]);
    assert_eq!(out.code, 1);
    let out = cli(&["shear", "(0,12,0,23)", "--x", "E4", "--alpha", "e4", "--f0", "e12"]);
    assert_eq!(out.code, 2);
}

#[test]
fn twist_examples() {
    let (r, code) = json(&["twist", "(0,0,12)", "--alpha", "e3", "--f", "-e12"]);
    assert_eq!(code, 0);
    assert_eq!(r["results"]["twisted"]["salamon"], "(0,0,0)");
    let (r, _) = json(&["twist", "(0,0,0)", "--alpha", "e3", "--f", "e12"]);
    assert_eq!(r["results"]["twisted"]["salamon"], "(0,0,12)");
    let out = cli(&["twist", "(0,0,12)", "--alpha", "e3", "--f", "e13"]);
    assert_eq!(out.code, 3);
}

#[test]
fn form_ds_examples() {
    let (r, code) = json(&[
        "form-ds", G, "--set", "l=1", "--set", "m=2", "--x", "E1", "--alpha", "e1", "--f0", "e23", "--a", "-1",
        "--form", PSI,
    ]);
    assert_eq!(code, 0);
    assert_eq!(r["results"]["form_ds"]["ds"], "0");
    let (r, _) = json(&[
        "form-ds", "(0,0,0,0,0,0)", "--x", "E1", "--alpha", "e1", "--f0", "e12", "--form", "e12 + e34 + e56",
    ]);
    assert_eq!(r["results"]["form_ds"]["ds"], "0");
    // X ⌟ σ = 0: d_S is plain d
    let (r, _) = json(&["form-ds", S5, "--x", "E4", "--alpha", "e4", "--f0", "e13", "--form", "e15"]);
    assert_eq!(r["results"]["form_ds"]["ds"], r["results"]["form_ds"]["d"]);
    assert_eq!(r["results"]["form_ds"]["x_contraction"], "0");
}

#[test]
fn check_structure_examples() {
    let (r, code) = json(&["check-structure", G, "--set", "l=1", "--set", "m=2", "--type", "g2-cocal", "--psi", PSI]);
    assert_eq!(code, 0);
    assert_eq!(r["results"]["passed"], true);
    let (r, _) = json(&["check-structure", "(12,0,0,0,0,0)", "--type", "kahler"]);
    assert_eq!(r["results"]["passed"], true);
    let (r, _) = json(&[
        "check-structure",
        "(12,0,0,0,0,0)",
        "--type",
        "kahler",
        "--omega",
        "e12 + e34 + e56",
        "--metric",
        "1,0,0,0,0,0;0,1,0,0,0,0;0,0,1,0,0,0;0,0,0,1,0,0;0,0,0,0,1,0;0,0,0,0,0,1",
        "--j",
        "0,-1,0,0,0,0;1,0,0,0,0,0;0,0,0,-1,0,0;0,0,1,0,0,0;0,0,0,0,0,-1;0,0,0,0,1,0",
    ]);
    assert_eq!(r["results"]["passed"], true);
    let (r, _) = json(&["check-structure", "(0,0,0,0,13,0)", "--type", "kahler"]);
    assert_eq!(r["results"]["passed"], false);
    assert_eq!(r["results"]["kahler"]["integrable"], false);
    let (r, code) = json(&["check-structure", "(0,0,0,0,0,0)", "--type", "symplectic", "--omega", "e12+e34"]);
    assert_eq!(code, 0);
    assert_eq!(r["results"]["passed"], false);
    assert_eq!(r["results"]["symplectic"]["nondegenerate"], false);
    let (r, _) = json(&["check-structure", "(0,0,0,0,0,0)", "--type", "half-flat"]);
    assert_eq!(r["results"]["passed"], true);
    let (r, _) = json(&[
        "check-structure",
        "(0,0,0,0,0,0,0)",
        "--type",
        "g2-phi",
        "--phi",
        "e123 + e145 + e167 + e246 - e257 - e347 - e356",
    ]);
    assert_eq!(r["results"]["g2_phi"]["stable"], true);
    let out = cli(&["check-structure", "(0,0,0,0,0,0)", "--type", "symplectic"]);
    assert_eq!(out.code, 1, "missing --omega");
    let out = cli(&["check-structure", "(0,0,0,0,0,0)", "--type", "kahler", "--j", "1,0,0,0,0,0;0,1,0,0,0,0;0,0,1,0,0,0;0,0,0,1,0,0;0,0,0,0,1,0;0,0,0,0,0,1"]);
    assert_eq!(out.code, 1);
}

#[test]
fn search_examples() {
    let (r, code) = json(&[
        "search", S5, "--x", "E4", "--alpha", "e4", "--coefficients", "-1,0,1", "--max-terms", "1", "--support",
        "e12,e13,e15,e23,e25,e35",
    ]);
    assert_eq!(code, 0);
    let hits = r["results"]["hits"].as_array().unwrap();
    assert!(hits.iter().any(|h| h["f0"] == "e13"));

    let (r, _) = json(&[
        "search", G, "--set", "l=1", "--set", "m=2", "--x", "E1", "--alpha", "e1", "--preserve", PSI,
    ]);
    let hits = r["results"]["hits"].as_array().unwrap();
    assert!(hits.iter().any(|h| h["f0"] == "e23"));

    let (r, _) = json(&["search", S5, "--x", "E4", "--alpha", "e4", "--coefficients", "0", "--max-terms", "3"]);
    assert_eq!(r["results"]["count"], 1);
    assert_eq!(r["results"]["hits"][0]["f0"], "0");

    let (r, code) = json(&["search", G, "--set", "l=1", "--set", "m=2", "--x", "E1", "--alpha", "e1", "--max-terms", "15"]);
    assert_eq!(code, 4);
    assert_eq!(r["status"]["kind"], "search-cap-exceeded");
}

#[test]
fn shear_lines_examples() {
    let (r, code) = json(&["shear-lines", S5]);
    assert_eq!(code, 0);
    let spaces = r["results"]["shear_lines"]["eigenspaces"].as_array().unwrap();
    assert_eq!(spaces[0]["eigenvalues"][0], "-2");
    assert_eq!(spaces[0]["basis"][0], "E4");
    assert_eq!(spaces[1]["basis"].as_array().unwrap().len(), 3);
    let (r, _) = json(&["shear-lines", "(0,0,12)"]);
    assert_eq!(r["results"]["shear_lines"]["eigenspaces"][0]["basis"][0], "E3");
    let out = cli(&["shear-lines", "(32,13,21)"]);
    assert_eq!(out.code, 3);
}

#[test]
fn documents_and_substitution() {
    let (r, code) = json(&["algebra-check", &data("g_lambda_mu.json")]);
    assert_eq!(code, 0);
    assert_eq!(r["results"]["algebra"]["salamon"], "(3.17,27,2.37,3.74,75,2.76,0)");
    let (r, _) = json(&["algebra-check", &data("g_lambda_mu.json"), "--set", "m=-1"]);
    assert_eq!(r["results"]["algebra"]["salamon"], "(0,27,73,0,75,67,0)");
    let (r, _) = json(&["algebra-check", &data("five_dim.txt")]);
    assert_eq!(r["results"]["algebra"]["salamon"], S5);
    let (r, _) = json(&["algebra-check", &data("heisenberg_explicit.json")]);
    assert_eq!(r["results"]["algebra"]["salamon"], "(0,0,12)");
    let (r, _) = json(&["algebra-check", r#"{"dim": 10, "d": {"10": "e{1,2}"}}"#]);
    assert_eq!(r["results"]["algebra"]["salamon"], Value::Null);
    assert_eq!(r["results"]["algebra"]["d"]["10"], "e12");
    assert_eq!(r["results"]["classification"]["nilpotent"], true);

    assert_eq!(cli(&["algebra-check", G]).code, 1, "unbound parameter");
    assert_eq!(cli(&["algebra-check", "no/such/file"]).code, 1);
    assert_eq!(cli(&["algebra-check", r#"{"salamon": "(0,0,12)", "dim": 3}"#]).code, 1);
    assert_eq!(cli(&["algebra-check", "(0,0,12", "--json"]).code, 1);
    assert_eq!(cli(&["algebra-check", "(0,0,12)", "--set", "l"]).code, 1);
}

#[test]
fn usage_errors_and_help() {
    assert_eq!(cli(&["no-such-command"]).code, 1);
    assert_eq!(cli(&["shear", S5, "--x", "E4"]).code, 1);
    let help = cli(&["--help"]);
    assert_eq!(help.code, 0);
    assert!(help.stdout.contains("shear-lines"));
}

#[test]
fn output_is_deterministic() {
    let args = [
        "search", G, "--set", "l=1", "--set", "m=2", "--x", "E1", "--alpha", "e1", "--max-terms", "2", "--json",
    ];
    let a = cli(&args);
    let b = cli(&args);
    assert_eq!(a, b);
    let t1 = cli(&args[..args.len() - 1]);
    let t2 = cli(&args[..args.len() - 1]);
    assert_eq!(t1, t2);
}

#[test]
fn cli_matches_library() {
    let g = LieAlgebra::parse_salamon(S5).unwrap();
    let b = Bindings::new();
    for f0 in ["e13", "-2*e54", "e12 - e35", "1/2*e23"] {
        let data = ShearData::along_basis(5, 4, parse_form(f0, 5, Some(2), &b).unwrap()).unwrap();
        let lib = apply_shear(&g, &data).unwrap();
        let (r, _) = json(&["shear", S5, "--x", "E4", "--alpha", "e4", "--f0", f0]);
        assert_eq!(r["results"]["sheared"]["salamon"], lib.to_salamon().unwrap());
    }
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_shearlab");
    let status = |args: &[&str]| Command::new(bin).args(args).env("NO_COLOR", "1").output().unwrap();
    let ok = status(&["shear", S5, "--x", "E4", "--alpha", "e4", "--f0", "e13"]);
    assert_eq!(ok.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&ok.stdout).contains("sheared: (51,52,53,13+2.54,0)"));
    assert_eq!(status(&["algebra-check", "(0,12,0,23)"]).status.code(), Some(2));
    assert_eq!(status(&["twist", "(0,0,12)", "--alpha", "e3", "--f", "e13"]).status.code(), Some(3));
    assert_eq!(status(&["search", S5, "--x", "E4", "--alpha", "e4", "--max-terms", "6", "--cap", "5"]).status.code(), Some(4));
    assert_eq!(status(&["bogus"]).status.code(), Some(1));
}
