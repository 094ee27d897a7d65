use std::process::{Command, Output};

use serde_json::Value;

fn galrel(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_galrel"))
        .args(args)
        .env_remove("GALREL_PRECISION")
        .current_dir(concat!(env!("CARGO_MANIFEST_DIR"), "/../.."))
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut a = args.to_vec();
    a.extend(["--format", "json"]);
    let out = galrel(&a);
    let v = serde_json::from_slice(&out.stdout).expect("json output");
    (out.status.code().unwrap(), v)
}

#[test]
fn v4_has_one_relation() {
    let (code, v) = json(&["relations", "--group", "V4"]);
    assert_eq!(code, 0);
    let rels = v["data"]["relations"].as_array().unwrap();
    assert_eq!(rels.len(), 1);
    let c: Vec<i64> = rels[0]["coefficients"].as_array().unwrap().iter().map(|x| x.as_i64().unwrap()).collect();
    assert_eq!(c.iter().map(|x| x.abs()).collect::<Vec<_>>(), vec![1, 1, 1, 1, 2]);
    let (_, v) = json(&["relations", "--group", "C3"]);
    assert!(v["data"]["relations"].as_array().unwrap().is_empty());
}

#[test]
fn gaussian_invariants_row() {
    let (code, v) = json(&["invariants", "--field", "fixtures/qi.json"]);
    assert_eq!(code, 0);
    let row = &v["data"]["fields"][0];
    assert_eq!((row["r"].as_u64(), row["s"].as_u64(), row["unit_rank"].as_u64()), (Some(0), Some(1), Some(0)));
    assert_eq!(row["discriminant"], "-4");
    assert_eq!(row["w"]["value"], 4);
    assert_eq!(row["w"]["provenance"], "enumeration");
    assert_eq!(row["class_group"]["order"], 1);
    let g = row["genus"]["value"].as_f64().unwrap();
    assert!((g - (4.0 / std::f64::consts::PI).ln()).abs() < 1e-12);
    let q = &v["data"]["fields"][1];
    assert_eq!((q["r"].as_u64(), q["w"]["value"].as_u64(), q["genus"]["value"].as_f64()), (Some(1), Some(2), Some(0.0)));
}

#[test]
fn imaginary_quadratic_class_group() {
    let (_, v) = json(&["invariants", "--field", "fixtures/q_sqrtm23.json"]);
    assert_eq!(v["data"]["fields"][0]["class_group"]["invariants"], serde_json::json!([3]));
}

#[test]
fn verify_checks_pass_on_the_corpus() {
    for (ext, check, extra) in [
        ("q_sqrt2_sqrt3", "lambda", vec![]),
        ("q_zeta12", "torsion", vec!["--prime", "3"]),
        ("q_zeta8", "genus", vec![]),
        ("q_i_sqrtm23", "classgroup", vec!["--prime", "3"]),
        ("q_sqrt2_sqrt3", "zeta", vec![]),
    ] {
        let path = format!("fixtures/{ext}.json");
        let mut args = vec!["verify", "--ext", path.as_str(), "--check", check];
        args.extend(extra);
        let (code, v) = json(&args);
        assert_eq!(code, 0, "{ext} {check}: {v}");
        assert_eq!(v["status"], "pass");
    }
}

#[test]
fn genus_residual_is_tiny() {
    let (_, v) = json(&["verify", "--ext", "fixtures/q_zeta8.json", "--check", "genus"]);
    let r = &v["data"]["rows"][0]["report"]["residual"];
    assert!(r["value"].as_f64().unwrap().abs() + r["radius"].as_f64().unwrap() < 1e-15);
}

#[test]
fn brauer_rows_carry_provenance() {
    let (code, v) = json(&["verify", "--ext", "fixtures/q_i_sqrtm23.json", "--check", "brauer"]);
    assert_eq!(code, 0);
    for row in v["data"]["rows"][0]["report"]["rows"].as_array().unwrap() {
        for key in ["h", "regulator", "w"] {
            assert!(row["input"][key]["provenance"].is_string(), "{row}");
        }
    }
    // a tolerance below the certified radius is a check failure
    let (code, _) = json(&["verify", "--ext", "fixtures/q_i_sqrtm23.json", "--check", "brauer", "--tol", "1e-30"]);
    assert_eq!(code, 1);
}

#[test]
fn eta_check_reports_both_routes() {
    let (code, v) = json(&["verify", "--ext", "fixtures/q_sqrt2_sqrt3.json", "--check", "eta", "--variant", "trace"]);
    assert_eq!(code, 0);
    let row = &v["data"]["rows"][0];
    assert_eq!(row["status"], "report");
    assert_eq!(row["report"]["routes_agree"], true);
}

#[test]
fn eta_of_the_integers() {
    let (code, v) = json(&["eta", "--field", "fixtures/q.json", "--divisor", "[0]", "--tol", "1e-12"]);
    assert_eq!(code, 0);
    let e = v["data"]["eta"]["value"]["value"].as_f64().unwrap();
    assert!((e - 1.086434811213308).abs() < 1e-10);
    let (_, v) = json(&["eta", "--field", "fixtures/qi.json", "--divisor", "{\"infinite\": [0.25]}"]);
    assert_eq!(v["data"]["divisor"]["coeffs"][0]["value"], 0.25);
}

#[test]
fn exit_codes() {
    assert_eq!(galrel(&["relations", "--group", "nonsense"]).status.code(), Some(2));
    assert_eq!(galrel(&["invariants", "--field", "missing.json"]).status.code(), Some(2));
    assert_eq!(galrel(&["verify", "--ext", "fixtures/qi.json", "--check", "bogus"]).status.code(), Some(2));
    assert_eq!(galrel(&["eta", "--field", "fixtures/qi.json", "--divisor", "[1, 2]"]).status.code(), Some(2));
    assert_eq!(galrel(&["verify", "--ext", "fixtures/x3_minus_2.json", "--check", "classgroup"]).status.code(), Some(3));
    assert_eq!(galrel(&["verify", "--ext", "fixtures/q_zeta8.json", "--check", "torsion", "--prime", "2"]).status.code(), Some(3));
    let (code, v) = json(&["relations", "--group", "nonsense"]);
    assert_eq!(code, 2);
    assert!(v["error"].is_string());
}

#[test]
fn precision_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_galrel"))
        .args(["relations", "--group", "C2", "--format", "json"])
        .env("GALREL_PRECISION", "96")
        .output()
        .unwrap();
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["precision"], 96);
    let out = Command::new(env!("CARGO_BIN_EXE_galrel"))
        .args(["relations", "--group", "C2", "--format", "json", "--precision", "200"])
        .env("GALREL_PRECISION", "96")
        .output()
        .unwrap();
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["precision"], 200);
}

#[test]
fn reports_are_byte_identical() {
    for args in [
        vec!["invariants", "--field", "fixtures/q_zeta12.json"],
        vec!["verify", "--ext", "fixtures/q_zeta8.json", "--check", "eta"],
    ] {
        let a = galrel(&args).stdout;
        let b = galrel(&args).stdout;
        assert!(!a.is_empty());
        assert_eq!(a, b);
    }
}
