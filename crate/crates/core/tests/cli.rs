use std::process::{Command, Output};

use serde_json::Value;
use walsh_lab::cli::Document;

fn walsh_lab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_walsh-lab"))
        .args(args)
        .env_remove("WALSH_LAB_THREADS")
        .output()
        .expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn entries(v: &Value) -> Vec<(i64, u64)> {
    v["entries"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| (e["value"].as_i64().unwrap(), e["count"].as_u64().unwrap()))
        .collect()
}

#[test]
fn json_round_trip_is_byte_identical() {
    for args in [
        &["spectrum", "--m", "6", "--d", "19"][..],
        &["weights", "--m", "8", "--d", "7"],
        &["census", "--t", "6"],
        &["verify", "--theorem", "teven", "--t", "6"],
        &["scan", "--m", "6", "--check", "bound"],
        &["identities", "--m", "6", "--d", "19"],
    ] {
        let out = walsh_lab(args);
        assert_eq!(
            out.status.code(),
            Some(0),
            "{args:?}: {}",
            String::from_utf8_lossy(&out.stderr)
        );
        let text = String::from_utf8(out.stdout).unwrap();
        let doc: Document = serde_json::from_str(&text).unwrap();
        assert_eq!(doc.to_json() + "\n", text, "{args:?}");
    }
}

#[test]
fn top_level_keys_and_version() {
    let v = json_of(&walsh_lab(&["spectrum", "--m", "6", "--d", "19"]));
    let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
    for k in ["m", "d", "poly", "kind", "entries", "meta"] {
        assert!(keys.contains(&k), "missing {k}");
    }
    assert_eq!(v["poly"], "0x43");
    assert_eq!(v["kind"], "spectrum");
    assert_eq!(v["meta"]["version"], env!("CARGO_PKG_VERSION"));
    assert_eq!(entries(&v), vec![(-16, 6), (0, 48), (16, 10)]);
}

#[test]
fn verify_theorems() {
    let out = walsh_lab(&["verify", "--theorem", "todd", "--t", "3"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_of(&out)["meta"]["equal"], true);

    let out = walsh_lab(&["verify", "--theorem", "teven", "--t", "6"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["d"], 131);
    assert_eq!(entries(&v).len(), 7);

    // t = 2: no closed form, the spectrum is reported anyway
    let out = walsh_lab(&["verify", "--theorem", "teven", "--t", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["d"], 11);
    assert_eq!(v["meta"]["predicted"], Value::Null);
    assert_eq!(entries(&v).iter().map(|e| e.1).sum::<u64>(), 16);

    // t = 4 is outside the theorem's hypothesis
    assert_eq!(
        walsh_lab(&["verify", "--theorem", "teven", "--t", "4"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn verify_with_other_modulus() {
    // another primitive degree-6 modulus: X^6 + X^5 + 1
    let out = walsh_lab(&["verify", "--theorem", "todd", "--t", "3", "--poly", "0x61"]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert_eq!(json_of(&out)["poly"], "0x61");
}

#[test]
fn scan_sarwate_m6() {
    let out = walsh_lab(&["scan", "--m", "6", "--check", "sarwate", "--threads", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["d"], Value::Null);
    assert_eq!(v["meta"]["scanned"], 36);
    assert_eq!(v["meta"]["all_hold"], true);
    assert_eq!(v["meta"]["threads"], 2);
    let total: u64 = entries(&v).iter().map(|e| e.1).sum();
    assert_eq!(total, 36);
}

#[test]
fn scan_sample_is_reproducible() {
    let args = [
        "scan", "--m", "10", "--check", "sarwate", "--sample", "25", "--seed", "7",
    ];
    let a = walsh_lab(&args);
    let b = walsh_lab(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(json_of(&a)["meta"]["scanned"], 25);
}

#[test]
fn thread_count_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_walsh-lab"))
        .args(["scan", "--m", "6", "--check", "bound"])
        .env("WALSH_LAB_THREADS", "3")
        .output()
        .unwrap();
    assert_eq!(json_of(&out)["meta"]["threads"], 3);
}

#[test]
fn census_t6() {
    let v = json_of(&walsh_lab(&["census", "--t", "6"]));
    assert_eq!(entries(&v), vec![(0, 21), (1, 26), (2, 16), (6, 1)]);
    assert_eq!(v["meta"]["matches_closed_form"], true);
    assert_eq!(v["meta"]["conserved"], true);
}

#[test]
fn weights_m6_d19() {
    let v = json_of(&walsh_lab(&["weights", "--m", "6", "--d", "19"]));
    assert_eq!(entries(&v), vec![(0, 1), (24, 630), (32, 3087), (40, 378)]);
    assert_eq!(v["meta"]["min_distance"], 24);
    assert_eq!(v["meta"]["meets_conjecture_bound"], true);
}

#[test]
fn identities_residuals_vanish() {
    let out = walsh_lab(&["identities", "--m", "8", "--d", "7"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["meta"]["all_zero"], true);
    for (k, r) in v["meta"]["residuals"].as_object().unwrap() {
        assert_eq!(r, 0, "{k}");
    }
}

#[test]
fn csv_format_and_output_file() {
    let dir = std::env::temp_dir().join(format!("walsh-lab-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("spectrum.csv");
    let out = walsh_lab(&[
        "spectrum",
        "--m",
        "4",
        "--d",
        "1",
        "--format",
        "csv",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    let rows: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(rows, vec!["value,count", "0,15", "16,1"]);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn exit_codes() {
    let err_kind = |out: &Output| -> String {
        let line = String::from_utf8_lossy(&out.stderr)
            .lines()
            .last()
            .unwrap()
            .to_string();
        let v: Value = serde_json::from_str(&line).unwrap();
        v["error"].as_str().unwrap().to_string()
    };

    let out = walsh_lab(&["spectrum", "--m", "6"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(err_kind(&out), "usage");

    let out = walsh_lab(&["spectrum", "--m", "6", "--d", "19", "--poly", "0x7f"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(err_kind(&out), "rejected_modulus");

    let out = walsh_lab(&["weights", "--m", "6", "--d", "9"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(err_kind(&out), "not_coprime");

    let out = walsh_lab(&["identities", "--m", "6", "--d", "9"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(err_kind(&out), "not_coprime");

    let out = walsh_lab(&["scan", "--m", "7", "--check", "bound"]);
    assert_eq!(out.status.code(), Some(2));

    let out = walsh_lab(&["identities", "--m", "18", "--d", "5"]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(err_kind(&out), "resource");

    let out = walsh_lab(&["spectrum", "--m", "29", "--d", "3"]);
    assert_eq!(out.status.code(), Some(3));

    assert_eq!(walsh_lab(&["--help"]).status.code(), Some(0));
    assert_eq!(walsh_lab(&["--version"]).status.code(), Some(0));
}
