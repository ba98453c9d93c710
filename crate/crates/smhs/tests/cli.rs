use std::process::{Command, Output};

use serde_json::Value;

fn smhs(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_smhs")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = smhs(args);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn nums(v: &Value) -> Vec<i64> {
    v.as_array().unwrap().iter().map(|x| x.as_i64().unwrap()).collect()
}

#[test]
fn hilbert_mismatch_case() {
    let v = json(&["hilbert", "--m", "5", "--n", "5", "--K", "5", "--r", "3", "--D", "1", "--dc", "3", "--order", "6"]);
    assert_eq!(v["schema"], 1);
    assert_eq!(nums(&v["numerator"]), [175, -175, 50]);
    assert_eq!(v["denominator_power"], 1);
    assert_eq!(nums(&v["raw"]), [175, 0, 50, 50, 50, 50]);
    assert_eq!(v["validity"], "unreliable");
    assert_eq!(v["reg_degree"], 1);
}

#[test]
fn hilbert_r0_and_regularity() {
    let v = json(&["hilbert", "--r", "0", "--m", "2", "--n", "2", "--K", "3", "--D", "1", "--dc", "0"]);
    assert_eq!(nums(&v["series"]), [1]);
    let v = json(&["hilbert", "--m", "22", "--n", "22", "--K", "255", "--r", "6", "--dc", "1", "--order", "64"]);
    assert_eq!(v["reg_degree"], 46);
    assert_eq!(v["validity"], "conjectured_overdetermined");
}

#[test]
fn estimate_level_one() {
    let v = json(&["estimate", "--m", "16", "--n", "16", "--K", "143", "--r", "4", "--q", "16"]);
    assert!((v["log2_cost"].as_f64().unwrap() - 164.0).abs() <= 2.0);
    assert_eq!((v["a"].as_u64(), v["dreg"].as_u64(), v["dc"].as_u64()), (Some(5), Some(6), Some(1)));
    assert_eq!(v["fieldop_bits"].as_f64(), Some(4.0));
}

#[test]
fn estimate_without_guessing_adds_fieldop_bits() {
    let v = json(&["estimate", "--m", "16", "--n", "16", "--K", "143", "--r", "4", "--q", "16", "--a-max", "0", "--dc", "1"]);
    let p = smhs_core::GmrParams::new(16, 16, 143, 4, 1).unwrap();
    let base = smhs_core::estimator::complexity_at(&p, 1, &Default::default()).unwrap();
    assert_eq!(v["a"], 0);
    assert!((v["log2_cost"].as_f64().unwrap() - (base.log2_cost + 4.0)).abs() < 1e-9);
}

#[test]
fn verbose_estimate_lists_the_grid() {
    let v = json(&["estimate", "--m", "8", "--n", "8", "--K", "20", "--r", "2", "--q", "16", "--verbose"]);
    let grid = v["grid"].as_array().unwrap();
    assert!(!grid.is_empty());
    let best = grid.iter().filter_map(|g| g["log2_cost"].as_f64()).fold(f64::INFINITY, f64::min);
    assert_eq!(v["log2_cost"].as_f64(), Some(best));
}

#[test]
fn sweep_has_twenty_rows() {
    let out = smhs(&["sweep-r", "--m", "22", "--n", "22", "--q", "16", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "r,minors_cost,sm_cost,minors_dreg,sm_dreg");
    assert_eq!(lines.len(), 21);
    assert!(lines[6].starts_with("6,") && lines[6].ends_with(",49,46"));
}

#[test]
fn verify_proven_region_matches() {
    let v = json(&["verify", "--m", "5", "--n", "5", "--K", "25", "--r", "2", "--q", "31", "--dc", "1", "--dx-max", "3"]);
    let cells = v.as_array().unwrap();
    assert_eq!(cells.len(), 3);
    for c in cells {
        assert_eq!(c["schema"], 1);
        assert_eq!(c["match"], true);
        assert_eq!(c["observed_hf"], c["predicted"]);
        assert!(c["elapsed_ms"].is_u64());
    }
}

#[test]
fn strict_verify_exits_3_on_mismatch() {
    let args = ["verify", "--m", "5", "--n", "5", "--K", "5", "--r", "3", "--dc", "3", "--dx-max", "1"];
    assert_eq!(smhs(&args).status.code(), Some(0));
    let mut strict = args.to_vec();
    strict.push("--strict");
    let out = smhs(&strict);
    assert_eq!(out.status.code(), Some(3));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!((v[0]["observed_hf"].as_i64(), v[0]["predicted"].as_i64()), (Some(50), Some(0)));
}

fn without_elapsed(mut v: Value) -> Value {
    for c in v.as_array_mut().unwrap() {
        c.as_object_mut().unwrap().remove("elapsed_ms");
    }
    v
}

#[test]
fn verify_is_deterministic_and_csv_agrees_with_json() {
    let args = ["verify", "--m", "4", "--n", "4", "--K", "8", "--r", "2", "--dc-max", "2", "--dx-max", "2", "--seed", "5"];
    let a = json(&args);
    assert_eq!(without_elapsed(a.clone()), without_elapsed(json(&args)));
    let mut csv_args = args.to_vec();
    csv_args.extend(["--format", "csv"]);
    let out = smhs(&csv_args);
    let mut rdr = csv::Reader::from_reader(out.stdout.as_slice());
    let headers = rdr.headers().unwrap().clone();
    let rows: Vec<csv::StringRecord> = rdr.records().map(|r| r.unwrap()).collect();
    assert_eq!(rows.len(), a.as_array().unwrap().len());
    for (row, rec) in rows.iter().zip(a.as_array().unwrap()) {
        for (h, cell) in headers.iter().zip(row) {
            if h == "elapsed_ms" {
                continue;
            }
            let want = match h {
                "m" | "n" | "K" | "r" | "D" => rec["params"][h].to_string(),
                _ => rec[h].to_string(),
            };
            assert_eq!(cell, want, "{h}");
        }
    }
}

#[test]
fn trials_summary() {
    let v = json(&["trials", "--m", "4", "--n", "4", "--K", "8", "--r", "2", "--trials", "4", "--dc-max", "2"]);
    assert_eq!(v["trials"], 4);
    assert_eq!(v["cells"].as_array().unwrap().len(), 8);
    assert_eq!(v["matched"], 4);
}

#[test]
fn identities_pass() {
    let out = smhs(&["identities", "--format", "table"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8(out.stdout).unwrap().contains("saalschutz"));
}

#[test]
fn output_file_and_errors() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("h.json");
    let out = smhs(&["hilbert", "--dc", "1", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["kind"], "hilbert");

    let bad = dir.path().join("missing").join("x.json");
    let out = smhs(&["hilbert", "--out", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("missing"));
}

#[test]
fn usage_errors_exit_1() {
    assert_eq!(smhs(&["estimate", "--m", "16"]).status.code(), Some(1));
    assert_eq!(smhs(&["hilbert", "--m", "2", "--n", "2", "--r", "3"]).status.code(), Some(1));
    assert_eq!(smhs(&["hilbert", "--bogus"]).status.code(), Some(1));
    assert_eq!(smhs(&["verify", "--q", "32"]).status.code(), Some(1));
    assert_eq!(smhs(&["--help"]).status.code(), Some(0));
    assert_eq!(smhs(&["--version"]).status.code(), Some(0));
}

#[test]
fn capped_verify_is_a_computation_error() {
    let out = smhs(&["verify", "--dc", "3", "--dx-max", "3", "--max-cols", "1000"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("cap"));
}
