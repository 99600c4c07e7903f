//! Runs every config in `tests/golden` through the commands listed in
//! `manifest.toml` and compares canonical JSON. `UPDATE_GOLDEN=1` rewrites.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::{json, Value};

fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_drinfeld-smb"));
    c.env_remove("DRINFELD_SMB_BUDGET");
    c
}

fn run(cmd: &str, config: &Path, extra: &[&str]) -> Output {
    bin().arg(cmd).arg("--config").arg(config).args(extra).output().expect("spawn drinfeld-smb")
}

fn canonical(out: &Output) -> Value {
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("stdout is not JSON ({e}): {}", String::from_utf8_lossy(&out.stdout))
    });
    json!({ "exit_code": out.status.code(), "output": doc })
}

fn manifest() -> BTreeMap<String, Vec<String>> {
    toml::from_str(&fs::read_to_string(golden_dir().join("manifest.toml")).unwrap()).unwrap()
}

#[test]
fn golden_corpus() {
    let update = std::env::var_os("UPDATE_GOLDEN").is_some();
    let mut failures = Vec::new();
    for (name, commands) in manifest() {
        let config = golden_dir().join(format!("{name}.toml"));
        for cmd in commands {
            let got = canonical(&run(&cmd, &config, &[]));
            let path = golden_dir().join(format!("{name}__{cmd}.json"));
            if update {
                fs::write(&path, serde_json::to_string_pretty(&got).unwrap() + "\n").unwrap();
                continue;
            }
            let want: Value = serde_json::from_str(
                &fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing {}", path.display())),
            )
            .unwrap();
            if got != want {
                failures.push(format!("{name} {cmd}:\n{}", serde_json::to_string_pretty(&got).unwrap()));
            }
        }
    }
    assert!(failures.is_empty(), "golden mismatches:\n{}", failures.join("\n"));
}

fn result(name: &str, cmd: &str) -> (i32, Value) {
    let out = run(cmd, &golden_dir().join(format!("{name}.toml")), &[]);
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    (out.status.code().unwrap(), doc)
}

#[test]
fn verify_reports_fifteen_equal_entries() {
    let (code, doc) = result("m1_infinite", "verify");
    assert_eq!(code, 0);
    let r = &doc["result"];
    assert_eq!(r["equal"], true);
    let total = |k: &str| r[k].as_array().unwrap().iter().map(|e| e["mult"].as_u64().unwrap()).sum::<u64>();
    assert_eq!(total("oracle"), 15);
    assert_eq!(total("predicted"), 15);
}

#[test]
fn szpiro_holds_with_equality() {
    let (code, doc) = result("m1_infinite", "szpiro");
    assert_eq!(code, 0);
    let r = &doc["result"];
    assert_eq!((r["h_j"].as_str(), r["bound"].as_str(), r["holds"].as_bool()), (Some("3"), Some("3"), Some(true)));
}

#[test]
fn exit_code_contract() {
    assert_eq!(result("w_divides_u", "smb").1["error"]["message"], "w divides u: min-rule unsupported");
    assert_eq!(result("w_divides_u", "smb").0, 2);
    assert_eq!(result("bad_field", "smb").0, 2);
    assert_eq!(result("carlitz_square", "conductor").0, 3);
    assert_eq!(result("carlitz_square", "conductor").1["result"]["case"], "hypothesis_failed");
    assert_eq!(result("over_budget", "verify").0, 5);
}

#[test]
fn budget_precedence() {
    let config = golden_dir().join("over_budget.toml");
    assert_eq!(run("verify", &config, &["--budget", "4096"]).status.code(), Some(0));
    let env_only = golden_dir().join("m1_infinite.toml");
    let out = bin().env("DRINFELD_SMB_BUDGET", "8").args(["verify", "--config"]).arg(&env_only).output().unwrap();
    assert_eq!(out.status.code(), Some(5));
    // The config value beats the environment.
    let out = bin().env("DRINFELD_SMB_BUDGET", "1000000").args(["verify", "--config"]).arg(&config).output().unwrap();
    assert_eq!(out.status.code(), Some(5));
}

#[test]
fn identical_configs_give_identical_bytes() {
    let config = golden_dir().join("m3_bad_at_t.toml");
    for cmd in ["smb", "verify", "szpiro"] {
        for fmt in ["json", "md"] {
            let a = run(cmd, &config, &["--format", fmt]).stdout;
            let b = run(cmd, &config, &["--format", fmt]).stdout;
            assert_eq!(a, b, "{cmd} --format {fmt}");
        }
    }
}

#[test]
fn markdown_conductor_table() {
    let out = run("szpiro", &golden_dir().join("m1_infinite.toml"), &["--format", "md"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("| place | w(j) | case | 𝔣_w | deg·𝔣_w |"));
    assert!(text.contains("| infinite | -3 | C1_wild | 1 | 1 |"));
}

#[test]
fn batch_mode_names_outputs_by_hash() {
    let src = tempfile::tempdir().unwrap();
    let out = tempfile::tempdir().unwrap();
    for name in ["m1_infinite", "carlitz_square"] {
        fs::copy(golden_dir().join(format!("{name}.toml")), src.path().join(format!("{name}.toml"))).unwrap();
    }
    let status = bin().arg("conductor").arg("--config").arg(src.path()).arg("--out").arg(out.path()).output().unwrap();
    assert_eq!(status.status.code(), Some(3), "max exit code over the batch");
    let mut names: Vec<String> = fs::read_dir(out.path())
        .unwrap()
        .map(|e| e.unwrap().file_name().to_string_lossy().into_owned())
        .collect();
    names.sort();
    assert_eq!(names.len(), 2);
    for (n, stem) in names.iter().zip(["carlitz_square-", "m1_infinite-"]) {
        assert!(n.starts_with(stem) && n.ends_with(".json") && n.len() == stem.len() + 8 + 5, "{n}");
    }
    let single = run("conductor", &golden_dir().join("m1_infinite.toml"), &[]).stdout;
    assert_eq!(fs::read(out.path().join(&names[1])).unwrap(), single);
}
