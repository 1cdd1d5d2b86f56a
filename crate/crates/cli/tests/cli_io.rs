//! End-to-end checks of the command-line surface: schemas, exit codes,
//! config handling, quiet mode.

use std::path::PathBuf;
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_carleson"))
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("carleson-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn spectrum_schema_and_support() {
    let out = scratch("s4.json");
    let status = bin().args(["spectrum", "--dim", "4", "--out"]).arg(&out).status().unwrap();
    assert!(status.success());
    let doc: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(doc["schema_version"], 1);
    assert_eq!(doc["command"], "spectrum");
    assert_eq!(doc["parameters"]["dim"], 4);
    assert_eq!(doc["dim"], 4);
    let entries = doc["entries"].as_array().unwrap();
    let support: Vec<&str> = entries.iter().map(|e| e["n"].as_str().expect("n is a string")).collect();
    assert_eq!(support, ["1", "2", "4", "5", "8", "9", "10", "17", "18", "20"]);
    for e in entries {
        assert!(e["j"].is_u64() && e["l"].is_u64());
        assert_eq!(e["vector"].as_array().unwrap().len(), 4);
    }
}

#[test]
fn embedding_rejects_dim_one() {
    let out = bin().args(["embedding", "--dim", "1"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("outside [2, 256]"));
}

#[test]
fn unknown_flags_exit_two() {
    let out = bin().args(["embedding", "--dim", "8", "--no-such-flag"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = bin().args(["frobnicate"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn construction_suite_exits_zero_with_defaults() {
    let out_path = scratch("verify-c8.json");
    let out = bin()
        .args(["verify", "--suite", "construction", "--dim", "8", "--out"])
        .arg(&out_path)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let doc: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&out_path).unwrap()).unwrap();
    let checks = doc["checks"].as_array().unwrap();
    assert_eq!(checks.len(), 3);
    for c in checks {
        assert_eq!(c["verdict"], "pass", "check {} failed", c["name"]);
    }
}

#[test]
fn quiet_prints_only_the_path() {
    let out_path = scratch("quiet.json");
    let out = bin()
        .args(["embedding", "--dim", "4", "--quiet", "--out"])
        .arg(&out_path)
        .output()
        .unwrap();
    assert!(out.status.success());
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert_eq!(stdout.trim(), out_path.to_str().unwrap());
}

#[test]
fn config_file_applies_and_flags_override() {
    let cfg_path = scratch("config.json");
    std::fs::write(
        &cfg_path,
        r#"{"ramp": "smooth-cinf", "seed": 99, "max_rank": 4, "thresholds": {"l2": 5.0}}"#,
    )
    .unwrap();
    let out_path = scratch("cfg-run.json");
    let out = bin()
        .args(["verify", "--suite", "construction", "--dim", "8", "--config"])
        .arg(&cfg_path)
        .arg("--out")
        .arg(&out_path)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let doc: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&out_path).unwrap()).unwrap();
    assert_eq!(doc["parameters"]["ramp"], "smooth-cinf");
    assert_eq!(doc["parameters"]["seed"], 99);
    assert_eq!(doc["parameters"]["max_rank"], 4);
    let l2 = doc["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["name"] == "diagonal-direction-sum")
        .unwrap();
    assert_eq!(l2["threshold"], 5.0);
    // a flag on top of the config wins
    let out2_path = scratch("cfg-run2.json");
    let out = bin()
        .args(["verify", "--suite", "construction", "--dim", "8", "--ramp", "polynomial-c3", "--config"])
        .arg(&cfg_path)
        .arg("--out")
        .arg(&out2_path)
        .output()
        .unwrap();
    assert!(out.status.success());
    let doc: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&out2_path).unwrap()).unwrap();
    assert_eq!(doc["parameters"]["ramp"], "polynomial-c3");
}

#[test]
fn bad_config_exits_two() {
    let cfg_path = scratch("bad-config.json");
    std::fs::write(&cfg_path, r#"{"rampZ": 3}"#).unwrap();
    let out = bin().args(["embedding", "--dim", "4", "--config"]).arg(&cfg_path).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn experiment_csv_columns() {
    let out_path = scratch("exp.csv");
    let out = bin()
        .args(["experiment", "--dims", "8", "--quiet", "--out"])
        .arg(&out_path)
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = std::fs::read_to_string(&out_path).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "N,intensity,value_spectral,value_paper,ratio,ratio_over_sqrtlog"
    );
    let row = lines.next().unwrap();
    assert!(row.starts_with("8,"));
    assert_eq!(row.split(',').count(), 6);
    assert!(lines.next().is_none());
    // '.' decimal separator, no exponent-free locale surprises
    assert!(row.contains('.'));
}
