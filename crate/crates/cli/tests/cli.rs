use std::fs;
use std::path::Path;
use std::process::Command;

use permpoly::sbox::{self, Certificate, SboxFormat};
use permpoly::{interpolate, tabulate, FieldSpec, MapTable, Poly};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

const FIELDS: [&str; 5] = ["5", "7", "3^2:1,0,1", "2^4:1,1,0,0,1", "3^1:0,1|2:1,0,1"];

fn run(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_permpoly"))
        .args(args)
        .output()
        .expect("binary runs");
    (out.status.code().unwrap_or(-1), String::from_utf8(out.stdout).unwrap())
}

fn run_json(args: &[&str]) -> (i32, Value) {
    let (code, out) = run(args);
    (code, serde_json::from_str(&out).unwrap_or_else(|e| panic!("{out:?}: {e}")))
}

fn write_params(dir: &Path, name: &str, body: &str) -> String {
    let path = dir.join(name);
    fs::write(&path, body).unwrap();
    path.to_str().unwrap().to_owned()
}

fn random_permutation_poly(spec: &str, rng: &mut ChaCha8Rng) -> String {
    let f = FieldSpec::parse(spec).unwrap().ambient();
    let mut ranks: Vec<u32> = (0..f.size()).collect();
    ranks.shuffle(rng);
    interpolate(&MapTable::from_ranks(&f, &ranks).unwrap()).to_rank_string()
}

#[test]
fn invert_round_trips_random_permutations() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for spec in FIELDS {
        let f = FieldSpec::parse(spec).unwrap().ambient();
        for _ in 0..20 {
            let poly = random_permutation_poly(spec, &mut rng);
            let (code, out) = run_json(&["invert", "--field", spec, "--poly", &poly]);
            assert_eq!(code, 0, "{spec} {poly}");
            let inv = Poly::parse_ranks(&f, out["inverse_coeffs"].as_str().unwrap()).unwrap();
            let p = Poly::parse_ranks(&f, &poly).unwrap();
            for x in f.elements() {
                assert_eq!(inv.eval(p.eval(x)), x);
                assert_eq!(p.eval(inv.eval(x)), x);
            }
            let (code, out) = run_json(&["verify", "--field", spec, "--poly", &poly]);
            assert_eq!((code, out["is_pp"].as_bool()), (0, Some(true)));
        }
    }
}

#[test]
fn export_reimports_bit_exact() {
    let mut rng = ChaCha8Rng::seed_from_u64(29);
    let dir = tempfile::tempdir().unwrap();
    for spec in FIELDS {
        let f = FieldSpec::parse(spec).unwrap().ambient();
        let poly = random_permutation_poly(spec, &mut rng);
        let expected = tabulate(&Poly::parse_ranks(&f, &poly).unwrap());
        for (ext, format) in [("bin", SboxFormat::Binary), ("hex", SboxFormat::Hex)] {
            let out = dir.path().join(format!("s{}.{ext}", f.size()));
            let out_str = out.to_str().unwrap();
            let (code, report) = run_json(&["export-sbox", "--field", spec, "--poly", &poly, "--out", out_str]);
            assert_eq!(code, 0);
            assert_eq!(report["entries"].as_u64(), Some(f.size() as u64));

            let bytes = fs::read(&out).unwrap();
            assert_eq!(bytes, sbox::encode(&expected, format));
            assert_eq!(sbox::decode(&f, &bytes, format).unwrap(), expected);

            let cert: Certificate = serde_json::from_str(&fs::read_to_string(format!("{out_str}.json")).unwrap()).unwrap();
            assert_eq!(cert.poly, poly);
            let inv = tabulate(&Poly::parse_ranks(&f, &cert.inverse_coeffs).unwrap());
            assert!(inv.compose(&expected).unwrap().is_identity());
            assert!(!dir.path().join(format!("s{}.{ext}.partial", f.size())).exists());
        }
    }
}

#[test]
fn repeated_runs_print_identical_output() {
    let dir = tempfile::tempdir().unwrap();
    let params = write_params(
        dir.path(),
        "lin.json",
        r#"{"kind": "linearized", "field": "5^1:0,1|2:3,0,1", "g_coeffs": "0,1", "u_ranks": [1], "m_list": [1]}"#,
    );
    let commands: [&[&str]; 5] = [
        &["verify", "--field", "7", "--poly", "0,0,0,0,0,1"],
        &["invert", "--field", "3^2:1,0,1", "--poly", "0,0,0,1"],
        &["family", "--params", &params],
        &["identities", "--q", "5", "--d", "2"],
        &["selftest"],
    ];
    for args in commands {
        let first = run(args);
        assert_eq!(first, run(args), "{args:?}");
    }
}

#[test]
fn malformed_input_exits_2_without_writing() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("bad.bin");
    let out_str = out.to_str().unwrap();
    let cases: [&[&str]; 6] = [
        &["verify", "--field", "6", "--poly", "0,1"],
        &["verify", "--field", "5", "--poly", "0,9"],
        &["verify", "--field", "5", "--poly", "0,x"],
        &["invert", "--field", "3^2:1,0,0", "--poly", "0,1"],
        &["export-sbox", "--field", "5", "--poly", "0,7", "--out", out_str],
        &["export-sbox", "--field", "5", "--poly", "0,1", "--out", &format!("{}/s.txt", dir.path().display())],
    ];
    for args in cases {
        assert_eq!(run(args).0, 2, "{args:?}");
    }
    assert_eq!(fs::read_dir(dir.path()).unwrap().count(), 0);
}

#[test]
fn non_permutation_export_exits_1_without_writing() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("sq.hex");
    let (code, out_json) = run_json(&["export-sbox", "--field", "5", "--poly", "0,0,1", "--out", out.to_str().unwrap()]);
    assert_eq!((code, out_json["is_pp"].as_bool()), (1, Some(false)));
    assert_eq!(fs::read_dir(dir.path()).unwrap().count(), 0);
}

#[test]
fn bad_params_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let unknown = write_params(dir.path(), "a.json", r#"{"kind": "mystery", "field": "5"}"#);
    let extra = write_params(
        dir.path(),
        "b.json",
        r#"{"kind": "trace", "field": "3^1:0,1|2:1,0,1", "n": 2, "g_coeffs": "0,1", "extra": 1}"#,
    );
    let missing = dir.path().join("missing.json");
    for path in [unknown.as_str(), extra.as_str(), missing.to_str().unwrap()] {
        assert_eq!(run(&["family", "--params", path]).0, 2, "{path}");
    }
}

#[test]
fn family_verb_reports_conditions_and_inverse() {
    let dir = tempfile::tempdir().unwrap();
    let cyc = write_params(dir.path(), "c.json", r#"{"kind": "cyclotomic", "field": "7", "r": 1, "ell": 2, "h_coeffs": [3, 1]}"#);
    let (code, out) = run_json(&["family", "--params", &cyc]);
    assert_eq!(code, 0);
    assert_eq!(out["is_pp"], Value::Bool(true));
    assert_eq!(out["oracle_verified"], Value::Bool(true));

    let f = FieldSpec::parse("7").unwrap().base();
    let p = Poly::parse_ranks(&f, "0,3,0,0,1").unwrap();
    let inv = Poly::parse_ranks(&f, out["inverse_coeffs"].as_str().unwrap()).unwrap();
    assert!(tabulate(&inv).compose(&tabulate(&p)).unwrap().is_identity());

    let (code, auto) = run_json(&["invert", "--params", &cyc, "--method", "auto"]);
    assert_eq!(code, 0);
    assert_eq!(auto["method"], "cyclotomic");
    assert_eq!(auto["inverse_coeffs"], out["inverse_coeffs"]);

    let trace = write_params(dir.path(), "t.json", r#"{"kind": "trace", "field": "3^1:0,1|2:1,0,1", "n": 2, "g_coeffs": "0,1"}"#);
    let (code, out) = run_json(&["family", "--params", &trace]);
    assert_eq!(code, 0);
    assert_eq!(out["inverse_coeffs"], "0,0,0,2");
    assert_eq!(out["notes"][0], "formula_corrected");

    let bad = write_params(dir.path(), "n.json", r#"{"kind": "trace", "field": "3^1:0,1|2:1,0,1", "n": 2, "g_coeffs": "0,0,1"}"#);
    let (code, out) = run_json(&["family", "--params", &bad]);
    assert_eq!(code, 1);
    assert_eq!(out["is_pp"], Value::Bool(false));
    assert_eq!(out["inverse_coeffs"], Value::Null);
}

#[test]
fn cpp_verb_decides_complete_permutations() {
    let dir = tempfile::tempdir().unwrap();
    let field = "5^1:0,1|2:3,0,1";
    let params = |name: &str, u1: u32, m1: u32| {
        let body = format!(
            r#"{{"kind": "linearized", "field": "{field}", "g_coeffs": "0,1", "u_ranks": [{u1}], "m_list": [{m1}]}}"#
        );
        write_params(dir.path(), name, &body)
    };

    let (code, out) = run_json(&["cpp", "--params", &params("one.json", 1, 1)]);
    assert_eq!((code, out["is_cpp"].as_bool()), (0, Some(true)));
    assert_eq!(out["oracle_verified"], Value::Bool(true));
    // f = 2x^5 and f + x
    assert_eq!(run(&["verify", "--field", field, "--poly", "0,0,0,0,0,2"]).0, 0);
    assert_eq!(run(&["verify", "--field", field, "--poly", "0,1,0,0,0,2"]).0, 0);

    let (code, out) = run_json(&["cpp", "--params", &params("three.json", 3, 1)]);
    assert_eq!((code, out["is_cpp"].as_bool()), (1, Some(false)));
    let product = out["conditions"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["name"] == "product_nonzero")
        .unwrap();
    assert_eq!(product["holds"], Value::Bool(false));

    assert_eq!(run(&["cpp", "--params", &params("m3.json", 1, 3)]).0, 2);
}

#[test]
fn identities_and_selftest_pass() {
    let (code, out) = run_json(&["identities", "--q", "5", "--d", "2"]);
    assert_eq!(code, 0);
    assert_eq!(out["reconstruction"], Value::Bool(true));
    assert_eq!(out["identities_failed"].as_array().unwrap().len(), 0);
    assert_eq!(out["lines"].as_array().unwrap().len(), 2);

    let (code, out) = run_json(&["selftest"]);
    assert_eq!(code, 0);
    assert_eq!(out["passed"], Value::Bool(true));
}

#[test]
fn output_uses_spaced_separators() {
    assert_eq!(
        run(&["invert", "--field", "5", "--poly", "0,0,0,1", "--method", "auto"]),
        (0, "{\"method\": \"brute\", \"inverse_coeffs\": \"0,0,0,1\"}\n".to_string())
    );
}
