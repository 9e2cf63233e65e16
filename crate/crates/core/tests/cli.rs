use serde_json::Value;
use specrad::limit_laws::{product_law_cdf, LimitLaw, DEFAULT_CDF_TOL};
use specrad::norming::EnsembleSpec;
use specrad::samplers::run_monte_carlo;
use specrad::stats::ks_against_law;
use std::process::{Command, Output};

fn specrad(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_specrad"))
        .args(args)
        .env_remove("SPECRAD_SEED")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_str(&stdout(out)).expect("single JSON document")
}

fn csv_rows(text: &str) -> Vec<Vec<String>> {
    text.lines()
        .filter(|l| !l.starts_with('#'))
        .skip(1)
        .map(|l| l.split(',').map(String::from).collect())
        .collect()
}

#[test]
fn cdf_gumbel_at_zero() {
    let out = specrad(&["cdf", "--law", "gumbel", "--grid", "0:0:1"]);
    assert_eq!(stdout(&out), "x,cdf\n0,0.36787944117144233\n");
}

#[test]
fn cdf_tail_column() {
    let text = stdout(&specrad(&[
        "cdf",
        "--law",
        "spherical-h",
        "--grid",
        "10:10:1",
        "--with-tail",
    ]));
    let rows = csv_rows(&text);
    assert_eq!(rows[0][2], "0.01");
    assert!((rows[0][1].parse::<f64>().unwrap() - 0.99).abs() < 1e-4);
}

#[test]
fn cdf_product_law_is_pass_through() {
    let text = stdout(&specrad(&[
        "cdf",
        "--law",
        "product-alpha",
        "--alpha",
        "1",
        "--grid",
        "1:1:1",
    ]));
    let value: f64 = csv_rows(&text)[0][1].parse().unwrap();
    let library = product_law_cdf(1.0, 1.0, DEFAULT_CDF_TOL).unwrap().value;
    assert_eq!(value.to_bits(), library.to_bits());
}

#[test]
fn cdf_json_is_one_document() {
    let v = json(&specrad(&[
        "cdf", "--law", "normal", "--grid", "-1:1:5", "--format", "json",
    ]));
    assert_eq!(v["rows"].as_array().unwrap().len(), 5);
    assert_eq!(v["law"], "normal");
}

#[test]
fn cdf_rejects_bad_grid() {
    let out = specrad(&["cdf", "--law", "gumbel", "--grid", "3:1:4"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    assert_eq!(String::from_utf8_lossy(&out.stderr).lines().count(), 1);
}

#[test]
fn sample_is_deterministic() {
    let args = [
        "sample",
        "--ensemble",
        "spherical",
        "--n",
        "100",
        "--reps",
        "10",
        "--seed",
        "7",
    ];
    let a = specrad(&args).stdout;
    let b = specrad(&args).stdout;
    assert_eq!(a, b);
    let mut eight = args.to_vec();
    eight.extend(["--workers", "8"]);
    assert_eq!(a, specrad(&eight).stdout);
    assert!(String::from_utf8(a)
        .unwrap()
        .starts_with("replicate,raw,normalized\n"));
}

#[test]
fn sample_seed_from_environment() {
    let base = [
        "sample",
        "--ensemble",
        "spherical",
        "--n",
        "20",
        "--reps",
        "5",
    ];
    let env = Command::new(env!("CARGO_BIN_EXE_specrad"))
        .args(base)
        .env("SPECRAD_SEED", "99")
        .output()
        .unwrap();
    let mut flag = base.to_vec();
    flag.extend(["--seed", "99"]);
    assert_eq!(env.stdout, specrad(&flag).stdout);
    assert_ne!(env.stdout, specrad(&base).stdout);
}

#[test]
fn sample_truncated_support() {
    let text = stdout(&specrad(&[
        "sample",
        "--ensemble",
        "truncated",
        "--n",
        "300",
        "--p",
        "150",
        "--reps",
        "500",
        "--seed",
        "3",
    ]));
    let rows = csv_rows(&text);
    assert_eq!(rows.len(), 500);
    assert!(rows
        .iter()
        .all(|r| (0.0..=1.0).contains(&r[1].parse::<f64>().unwrap())));
}

#[test]
fn sample_product_marks_log_radius() {
    let text = stdout(&specrad(&[
        "sample",
        "--ensemble",
        "product",
        "--n",
        "5",
        "--k",
        "3",
        "--reps",
        "2",
        "--seed",
        "1",
    ]));
    assert!(text.starts_with("# raw=log_radius\nreplicate,raw,normalized\n"));
}

#[test]
fn sample_budget_exit_code() {
    let out = specrad(&[
        "sample",
        "--ensemble",
        "product",
        "--n",
        "1000",
        "--k",
        "1000",
        "--reps",
        "1001",
    ]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(String::from_utf8_lossy(&out.stderr).lines().count(), 1);
}

#[test]
fn sample_output_file() {
    let dir = std::env::temp_dir().join(format!("specrad-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("batch.csv");
    let out = specrad(&[
        "sample",
        "--ensemble",
        "spherical",
        "--n",
        "10",
        "--reps",
        "4",
        "--seed",
        "2",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    assert_eq!(csv_rows(&std::fs::read_to_string(&path).unwrap()).len(), 4);
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn ks_spherical_auto_law() {
    let v = json(&specrad(&[
        "ks",
        "--ensemble",
        "spherical",
        "--n",
        "2000",
        "--reps",
        "100000",
        "--seed",
        "5",
        "--workers",
        "4",
    ]));
    assert_eq!(v["law"], "spherical-h");
    for key in ["ensemble", "reps", "seed", "runtime_ms"] {
        assert!(!v[key].is_null(), "{key}");
    }
    for key in ["statistic", "location", "critical_005"] {
        assert!(v["ks"][key].is_number(), "{key}");
    }
}

#[test]
fn ks_product_auto_law_and_pass_through() {
    let v = json(&specrad(&[
        "ks",
        "--ensemble",
        "product",
        "--n",
        "200",
        "--k",
        "200",
        "--reps",
        "300",
        "--seed",
        "8",
    ]));
    assert_eq!(v["law"], "product-alpha");
    assert_eq!(v["alpha"].as_f64(), Some(1.0));
    let batch = run_monte_carlo(EnsembleSpec::product(200, 200).unwrap(), 300, 8, 1).unwrap();
    let library = ks_against_law(&batch, LimitLaw::ProductLaw { alpha: 1.0 }).unwrap();
    assert_eq!(v["ks"]["statistic"].as_f64(), Some(library.statistic));
}

#[test]
fn ks_without_timing_is_byte_reproducible() {
    let args = [
        "ks",
        "--ensemble",
        "truncated",
        "--n",
        "100",
        "--p",
        "50",
        "--reps",
        "500",
        "--no-timing",
    ];
    assert_eq!(specrad(&args).stdout, specrad(&args).stdout);
}

#[test]
fn ks_rejects_inconsistent_law() {
    let out = specrad(&[
        "ks",
        "--ensemble",
        "spherical",
        "--n",
        "20",
        "--reps",
        "10",
        "--law",
        "gumbel",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn converge_spherical_decreasing() {
    let text = stdout(&specrad(&[
        "converge",
        "--ensemble",
        "spherical",
        "--n-list",
        "20,200,2000",
        "--reps",
        "20000",
        "--seed",
        "1",
    ]));
    assert!(text.starts_with("n,ks,critical_005,runtime_ms\n"));
    let ks: Vec<f64> = csv_rows(&text)
        .iter()
        .map(|r| r[1].parse().unwrap())
        .collect();
    assert!(ks[0] > ks[1] && ks[1] > ks[2], "{ks:?}");
}

#[test]
fn converge_single_size_matches_ks() {
    let text = stdout(&specrad(&[
        "converge",
        "--ensemble",
        "truncated",
        "--n-list",
        "200",
        "--reps",
        "800",
        "--seed",
        "4",
    ]));
    let v = json(&specrad(&[
        "ks",
        "--ensemble",
        "truncated",
        "--n",
        "200",
        "--p",
        "100",
        "--reps",
        "800",
        "--seed",
        "4",
    ]));
    let row = &csv_rows(&text)[0];
    assert_eq!(
        row[1].parse::<f64>().unwrap(),
        v["ks"]["statistic"].as_f64().unwrap()
    );
}

#[test]
fn converge_malformed_list() {
    let out = specrad(&[
        "converge",
        "--ensemble",
        "spherical",
        "--n-list",
        "20;200",
        "--reps",
        "10",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn converge_product_json() {
    let v = json(&specrad(&[
        "converge",
        "--ensemble",
        "product",
        "--n-list",
        "10,20",
        "--k-ratio",
        "1",
        "--reps",
        "200",
        "--format",
        "json",
        "--no-timing",
    ]));
    assert_eq!(v["law"], "product-alpha");
    assert_eq!(v["rows"].as_array().unwrap().len(), 2);
    assert_eq!(v["rows"][1]["ensemble"]["k"], 20);
}

#[test]
fn norming_truncated() {
    let v = json(&specrad(&[
        "norming",
        "--ensemble",
        "truncated",
        "--n",
        "101",
        "--p",
        "26",
    ]));
    assert_eq!(v["c_n"].as_f64(), Some(0.5));
    assert_eq!(v["shift"], v["A_n"]);
}

#[test]
fn norming_small_k() {
    let v = json(&specrad(&[
        "norming",
        "--ensemble",
        "product",
        "--n",
        "1000",
        "--k",
        "1",
    ]));
    assert_eq!(v["regime"], "small-k");
    let direct = 2.0 * (1000.0 * 1000f64.ln()).sqrt();
    assert!((v["alpha_n"].as_f64().unwrap() / direct - 1.0).abs() < 1e-15);
}

#[test]
fn norming_large_k_scale() {
    let out = specrad(&[
        "norming",
        "--ensemble",
        "product",
        "--n",
        "50",
        "--k",
        "2500",
        "--regime",
        "large-k",
    ]);
    let text = stdout(&out);
    assert!(text.contains("\"scale\":3.5355339059"), "{text}");
}

#[test]
fn norming_uses_seventeen_digits() {
    let text = stdout(&specrad(&[
        "norming",
        "--ensemble",
        "spherical",
        "--n",
        "7",
    ]));
    assert!(text.contains("\"scale\":2.6457513110645907e0"), "{text}");
}

#[test]
fn truncated_ratio_warning_on_stderr() {
    let out = specrad(&[
        "norming",
        "--ensemble",
        "truncated",
        "--n",
        "1000",
        "--p",
        "10",
    ]);
    assert!(out.status.success());
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.starts_with("specrad: warning:"), "{err}");
    serde_json::from_slice::<Value>(&out.stdout).unwrap();
}
