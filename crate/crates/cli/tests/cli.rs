use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn ccdiff(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ccdiff")).args(args).output().expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid json")
}

/// `x + Tr(x^3)` on GF(2^6) as univariate coefficients.
fn trace_sum_poly() -> String {
    let mut coeffs = vec!["0"; 49];
    for i in [1, 3, 6, 12, 24, 33, 48] {
        coeffs[i] = "1";
    }
    format!("poly:{}", coeffs.join(","))
}

#[test]
fn spectrum_profiles_of_trace_sum() {
    let func = trace_sum_poly();
    let cc = json_of(&ccdiff(&["spectrum", "--field", "gf(2^6)", "--func", &func, "--c-sweep"]));
    assert_eq!(cc["profile"], serde_json::json!({"26": 36, "28": 24, "40": 2}));
    let c = json_of(&ccdiff(&["spectrum", "--field", "gf(2^6)", "--func", &func, "--kind", "c"]));
    assert_eq!(c["profile"], serde_json::json!({"1": 2, "2": 60}));
}

#[test]
fn lut_file_input_matches_poly_input() {
    let dir = tempfile::tempdir().unwrap();
    let lut = dir.path().join("f.lut");
    let func = trace_sum_poly();
    let out = ccdiff(&["equiv", "apply", "--field", "gf(2^6)", "--func", &func, "--map", "/nonexistent"]);
    assert_eq!(out.status.code(), Some(1));
    // The identity product map reproduces the function itself.
    let map = dir.path().join("id.map");
    let mut text = String::from("2 6 6\n");
    for r in 0..12 {
        let row: Vec<&str> = (0..12).map(|c| if c == r { "1" } else { "0" }).collect();
        text.push_str(&row.join(" "));
        text.push('\n');
    }
    text.push_str("0 0\n");
    std::fs::write(&map, text).unwrap();
    let out = ccdiff(&[
        "equiv", "apply", "--field", "gf(2^6)", "--func", &func, "--map", map.to_str().unwrap(), "--format", "lut",
        "--out", lut.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let spec = format!("lutfile:{}", lut.display());
    let a = json_of(&ccdiff(&["spectrum", "--func", &spec, "--c-list", "2,3,7"]));
    let b = json_of(&ccdiff(&["spectrum", "--field", "gf(2^6)", "--func", &func, "--c-list", "2,3,7"]));
    assert_eq!(a["spectra"], b["spectra"]);
}

#[test]
fn c_equal_one_gives_identical_kinds() {
    for (field, func) in [("gf(3^2)", "poly:1,2,0,5,7"), ("gf(2^4)", "power:7")] {
        let base = ["ddt", "--field", field, "--func", func, "--c", "1", "--format", "csv"];
        let cc = ccdiff(&[&base[..], &["--kind", "cc"]].concat());
        let c = ccdiff(&[&base[..], &["--kind", "c"]].concat());
        assert!(cc.status.success());
        assert_eq!(cc.stdout, c.stdout);
    }
}

#[test]
fn work_limit_breach_exits_3_without_output() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("w.json");
    let out = ccdiff(&[
        "walsh", "--field", "gf(2^6)", "--func", "power:3", "--c", "3", "--m", "3", "--work-limit", "1000", "--out",
        out_path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(3));
    assert!(!Path::new(&out_path).exists());
}

#[test]
fn exit_codes_for_bad_input() {
    // c outside the codomain subfield.
    let out = ccdiff(&["spectrum", "--field", "gf(2^4)", "--func", "power:3", "--codomain", "2", "--c", "2"]);
    assert_eq!(out.status.code(), Some(2));
    let out = ccdiff(&["spectrum", "--field", "gf(2^4)", "--func", "power:3", "--c", "0"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    assert_eq!(ccdiff(&["spectrum", "--field", "gf(4^2)", "--func", "power:3"]).status.code(), Some(2));
    assert_eq!(ccdiff(&["spectrum", "--field", "gf(2^4", "--func", "power:3"]).status.code(), Some(1));
    assert_eq!(ccdiff(&["spectrum", "--bogus"]).status.code(), Some(1));
    assert_eq!(ccdiff(&["spectrum", "--field", "gf(2^4)", "--func", "cube"]).status.code(), Some(1));
    assert_eq!(ccdiff(&["--help"]).status.code(), Some(0));
}

#[test]
fn walsh_certificates_and_moments() {
    // x^3 at c = 3 is PccN on GF(27).
    let v = json_of(&ccdiff(&["walsh", "--field", "gf(3^3)", "--func", "power:3", "--c", "3", "--m", "1"]));
    assert_eq!(v["results"][0]["certificate"]["equality"], true);
    let v = json_of(&ccdiff(&["walsh", "--field", "gf(2^3)", "--func", "power:5", "--c-sweep", "--k", "2"]));
    assert_eq!(v["verified"], true);
    assert_eq!(v["results"].as_array().unwrap().len(), 6);
    let v = json_of(&ccdiff(&["walsh", "--field", "gf(3^2)", "--func", "power:2", "--c", "8", "--m", "2", "--per-a"]));
    assert_eq!(v["verified"], true);
    assert_eq!(ccdiff(&["walsh", "--field", "gf(3^2)", "--func", "power:2"]).status.code(), Some(1));
}

#[test]
fn swap_map_emits_inverse_lut() {
    let lut_text = ccdiff(&["equiv", "inverse", "--field", "gf(2^3)", "--func", "power:3", "--format", "lut"]);
    assert!(lut_text.status.success());
    assert_eq!(String::from_utf8(lut_text.stdout).unwrap().lines().count(), 9);
    let v = json_of(&ccdiff(&["equiv", "inverse", "--field", "gf(2^3)", "--func", "power:3"]));
    let lut: Vec<u64> = v["lut"].as_array().unwrap().iter().map(|x| x.as_u64().unwrap()).collect();
    let fifth = json_of(&ccdiff(&["equiv", "inverse", "--field", "gf(2^3)", "--func", "power:5"]));
    let fifth_inv: Vec<u64> = fifth["lut"].as_array().unwrap().iter().map(|x| x.as_u64().unwrap()).collect();
    // On GF(8) x^3 and x^5 are mutually inverse, so the two tables compose to the identity.
    for x in 0..8u64 {
        assert_eq!(fifth_inv[lut[x as usize] as usize], x);
    }
    let not_perm = ccdiff(&["equiv", "inverse", "--field", "gf(2^4)", "--func", "power:3"]);
    assert_eq!(not_perm.status.code(), Some(2));
}

#[test]
fn gold_graph_certificate_degrees() {
    let v = json_of(&ccdiff(&["equiv", "gold-graph", "--m", "4", "--i", "1", "--c", "1"]));
    let cert = &v["certificates"][0];
    assert_eq!(cert["degree_f"], 2);
    assert_eq!(cert["degree_f2"], 3);
    assert_eq!(cert["graph_matches"], true);
    assert_eq!(cert["spectra_equal"], true);
    let all = json_of(&ccdiff(&["equiv", "gold-graph", "--m", "4"]));
    assert_eq!(all["certificates"].as_array().unwrap().len(), 15);
}

#[test]
fn sweep_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sweep.json");
    let run = |seed: &str| {
        let out = ccdiff(&[
            "equiv", "sweep", "--field", "gf(2^4)", "--func", "power:7", "--c-list", "2,6", "--cases", "8", "--seed", seed,
            "--out", path.to_str().unwrap(),
        ]);
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
        std::fs::read(&path).unwrap()
    };
    let a = run("11");
    let b = run("11");
    assert_eq!(a, b);
    let v: Value = serde_json::from_slice(&a).unwrap();
    assert_eq!(v["all_preserved"], true);
}

#[test]
fn paper_filters_single_item() {
    let out = ccdiff(&["paper", "--only", "trace-sum-profile"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().filter(|l| l.starts_with("[PASS]")).count(), 1);
    let v = json_of(&ccdiff(&["paper", "--only", "walsh-moments", "--json"]));
    assert_eq!(v["verdicts"].as_array().unwrap().len(), 1);
    assert_eq!(ccdiff(&["paper", "--only", "no-such-item"]).status.code(), Some(1));
    let list = ccdiff(&["paper", "--list"]);
    assert_eq!(String::from_utf8(list.stdout).unwrap().lines().count(), 12);
}
