//! End-to-end runs of the `pcm` binary.

use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use sha2::{Digest, Sha256};

fn pcm(args: &[&str]) -> Output {
    pcm_env(args, &[])
}

fn pcm_env(args: &[&str], env: &[(&str, &Path)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_pcm"));
    cmd.args(args).env_remove("PCM_RI_CACHE");
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn json_lines(out: &Output) -> Vec<Value> {
    stdout(out)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

fn read(path: impl AsRef<Path>) -> String {
    std::fs::read_to_string(path).unwrap()
}

const CONSISTENT: &str = r#"{"n": 3, "entries": [[1, 2, 4], ["1/2", 1, 2], ["1/4", "1/2", 1]]}"#;

#[test]
fn weigh_prints_the_four_alternative_vectors() {
    let out = pcm(&[
        "weigh",
        "--fixture",
        "right_left_four",
        "--norm",
        "sum100",
        "--json",
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let v: Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    let printed = [
        ("em", [18.44, 15.19, 43.64, 22.73]),
        ("invleft", [20.14, 12.89, 47.67, 19.29]),
    ];
    for (method, expected) in printed {
        let w = v["weights"][method].as_array().unwrap();
        for (got, want) in w.iter().zip(expected) {
            assert!(
                (got.as_f64().unwrap() - want).abs() < 0.005,
                "{method}: {got} vs {want}"
            );
        }
    }
    assert_eq!(v["normalization"], "sum100");
}

#[test]
fn weigh_table_lists_every_method() {
    let out = pcm(&["weigh", "--fixture", "right_left_four"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    for word in ["lambda_max", "CI", "CR", "em", "gm", "invleft", "rlgm"] {
        assert!(text.contains(word), "missing {word} in\n{text}");
    }
    assert_eq!(
        text.lines()
            .filter(|l| l.trim_start().starts_with(char::is_numeric))
            .count(),
        4
    );
}

#[test]
fn all_ones_matrix_gets_equal_weights() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(
        dir.path(),
        "ones.csv",
        "1,1,1,1\n1,1,1,1\n1,1,1,1\n1,1,1,1\n",
    );
    let out = pcm(&["weigh", &f, "--json"]);
    assert_eq!(code(&out), 0);
    let v: Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(v["ci"].as_f64().unwrap(), 0.0);
    for method in ["em", "gm", "invleft", "rlgm"] {
        for w in v["weights"][method].as_array().unwrap() {
            assert!((w.as_f64().unwrap() - 0.25).abs() < 1e-12);
        }
    }
}

#[test]
fn malformed_fraction_is_reported_with_its_position() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "bad.csv", "1,3\n1//3,1\n");
    let out = pcm(&["weigh", &f]);
    assert_eq!(code(&out), 2);
    let err = stderr(&out);
    assert!(err.contains("line 2") && err.contains("1//3"), "{err}");
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(code(&pcm(&["weigh", "--fixture", "no_such_matrix"])), 2);
    assert_eq!(
        code(&pcm(&[
            "weigh",
            "--fixture",
            "right_left_four",
            "--method",
            "xx"
        ])),
        2
    );
    assert_eq!(
        code(&pcm(&[
            "weigh",
            "--fixture",
            "right_left_four",
            "--norm",
            "sum7"
        ])),
        2
    );
    assert_eq!(
        code(&pcm(&[
            "audit",
            "--fixture",
            "group_first",
            "--property",
            "group"
        ])),
        2
    );
    assert_eq!(code(&pcm(&["frobnicate"])), 2);
}

#[test]
fn group_pair_is_incoherent_under_the_eigenvector() {
    let args = [
        "audit",
        "--fixture",
        "group_first",
        "--fixture",
        "group_second",
        "--property",
        "group",
    ];
    let em = pcm(&[&args[..], &["--method", "em"]].concat());
    assert_eq!(code(&em), 1);
    let records = json_lines(&em);
    assert_eq!(records.len(), 1);
    assert_eq!(records[0]["verdict"], "violated");
    assert_eq!(
        records[0]["input"],
        "fixture:group_first+fixture:group_second"
    );
    let gm = pcm(&[&args[..], &["--method", "gm"]].concat());
    assert_eq!(code(&gm), 0, "{}", stdout(&gm));
}

#[test]
fn consistent_matrices_pass_every_audit() {
    let dir = tempfile::tempdir().unwrap();
    let a = write(dir.path(), "a.json", CONSISTENT);
    let b = write(dir.path(), "b.json", CONSISTENT);
    let out = pcm(&[
        "audit",
        &a,
        &b,
        "--property",
        "all",
        "--method",
        "em,gm,invleft,rlgm",
    ]);
    assert_eq!(code(&out), 0, "{}\n{}", stdout(&out), stderr(&out));
    let records = json_lines(&out);
    // asymmetry once per matrix, group once per method, the rest per matrix and method
    assert_eq!(records.len(), 2 + 4 + 3 * 4 * 2);
    assert!(records.iter().all(|r| r["verdict"] == "satisfied"));
}

#[test]
fn inefficient_vector_comes_with_a_certificate() {
    let out = pcm(&[
        "audit",
        "--fixture",
        "inefficient_four",
        "--property",
        "efficiency",
    ]);
    assert_eq!(code(&out), 1);
    let records = json_lines(&out);
    let witness = &records[0]["witnesses"][0];
    assert_eq!(witness["kind"], "dominance");
    // re-check the certificate from its numbers
    let w: Vec<f64> = serde_json::from_value(witness["dominated"]["weights"].clone()).unwrap();
    let v: Vec<f64> = serde_json::from_value(witness["dominator"]["weights"].clone()).unwrap();
    let a = pcm_matrix("inefficient_four");
    let mut strict = false;
    for i in 0..4 {
        for j in 0..4 {
            let old = (a[i][j] - w[i] / w[j]).abs();
            let new = (a[i][j] - v[i] / v[j]).abs();
            assert!(new <= old + 1e-12 * a[i][j].max(1.0), "({i}, {j})");
            strict |= old - new > 1e-9;
        }
    }
    assert!(strict);
}

fn pcm_matrix(fixture: &str) -> Vec<Vec<f64>> {
    let a = pcm_core::fixtures::all_static()
        .into_iter()
        .find(|(n, _)| *n == fixture)
        .unwrap()
        .1;
    (0..a.n())
        .map(|i| (0..a.n()).map(|j| a.get(i, j)).collect())
        .collect()
}

#[test]
fn audit_outputs_are_reproducible_and_described() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "m.json", CONSISTENT);
    let run = |name: &str| {
        let out_dir = dir.path().join(name);
        let out = pcm(&[
            "audit",
            &input,
            "--fixture",
            "right_left_five",
            "--out",
            out_dir.to_str().unwrap(),
        ]);
        assert_eq!(code(&out), 1, "{}", stderr(&out));
        out_dir
    };
    let (first, second) = (run("one"), run("two"));
    for file in ["audit.jsonl", "audit_summary.csv"] {
        assert_eq!(read(first.join(file)), read(second.join(file)), "{file}");
    }
    let summary = read(first.join("audit_summary.csv"));
    assert!(summary.starts_with("schema_version,input,property,method,verdict,witnesses,cr\n"));
    assert_eq!(
        summary.lines().count() - 1,
        read(first.join("audit.jsonl")).lines().count()
    );

    let manifest: Value = serde_json::from_str(&read(first.join("manifest.json"))).unwrap();
    let inputs = manifest["inputs"].as_array().unwrap();
    assert_eq!(inputs.len(), 2);
    assert_eq!(inputs[0]["name"], input.as_str());
    assert_eq!(
        inputs[0]["sha256"],
        hex::encode(Sha256::digest(CONSISTENT.as_bytes()))
    );
    assert_eq!(inputs[1]["name"], "fixture:right_left_five");
    assert_eq!(manifest["tool_version"], env!("CARGO_PKG_VERSION"));
    assert_eq!(
        manifest["outputs"],
        serde_json::json!(["audit.jsonl", "audit_summary.csv"])
    );
    assert_eq!(manifest["command"][0], "audit");
    assert!(manifest["timestamp"].as_str().unwrap().ends_with('Z'));
}

#[test]
fn alpha_grid_is_used_by_the_scale_audit() {
    let out = pcm(&[
        "audit",
        "--fixture",
        "right_left_four",
        "--property",
        "scale",
        "--alpha-grid",
        "1,2",
    ]);
    assert_eq!(code(&out), 0);
    let out = pcm(&[
        "audit",
        "--fixture",
        "right_left_four",
        "--property",
        "scale",
        "--alpha-grid",
        "1,4",
    ]);
    assert_eq!(code(&out), 1);
}

#[test]
fn simulate_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write(
        dir.path(),
        "spec.json",
        r#"{"scheme": {"kind": "saaty_uniform"}, "n": 5, "trials": 3000, "seed": 9, "monotonicity": true}"#,
    );
    let run = |name: &str| {
        let out_dir = dir.path().join(name);
        let out = pcm(&["simulate", &spec, "--out", out_dir.to_str().unwrap()]);
        assert_eq!(code(&out), 0, "{}", stderr(&out));
        out_dir
    };
    let (a, b) = (run("a"), run("b"));
    for file in ["trials.csv", "summary.csv"] {
        assert_eq!(
            std::fs::read(a.join(file)).unwrap(),
            std::fs::read(b.join(file)).unwrap()
        );
    }
    assert_eq!(read(a.join("trials.csv")).lines().count(), 3001);
    let manifest: Value = serde_json::from_str(&read(a.join("manifest.json"))).unwrap();
    assert_eq!(manifest["seeds"], serde_json::json!([9]));

    // the seed override changes the draws
    let c = dir.path().join("c");
    assert_eq!(
        code(&pcm(&[
            "simulate",
            &spec,
            "--seed",
            "10",
            "--out",
            c.to_str().unwrap()
        ])),
        0
    );
    assert_ne!(read(a.join("trials.csv")), read(c.join("trials.csv")));
}

#[test]
fn simulate_rejects_zero_trials() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write(
        dir.path(),
        "spec.json",
        r#"{"scheme": {"kind": "unit_interval_ratio"}, "n": 4, "trials": 0, "seed": 1}"#,
    );
    let out = pcm(&[
        "simulate",
        &spec,
        "--out",
        dir.path().join("o").to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("trials"));
}

#[test]
fn random_index_estimates_grow_with_order() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("ri.json");
    let out = pcm(&[
        "ri",
        "--n",
        "3..9",
        "--trials",
        "100000",
        "--seed",
        "4",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    let estimates: Vec<Value> = serde_json::from_str(&read(&path)).unwrap();
    let ri: Vec<f64> = estimates
        .iter()
        .map(|e| e["ri"].as_f64().unwrap())
        .collect();
    assert_eq!(ri.len(), 7);
    assert!(ri.windows(2).all(|w| w[0] <= w[1]), "{ri:?}");
    assert!(dir.path().join("ri.json.manifest.json").exists());
}

#[test]
fn random_index_runs_repeat_and_warn_when_small() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a.json"), dir.path().join("b.json"));
    let out = pcm(&[
        "ri",
        "--n",
        "4",
        "--trials",
        "500",
        "--seed",
        "3",
        "--out",
        a.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    assert!(stderr(&out).contains("warning"));
    let out = pcm(&[
        "ri",
        "--n",
        "4",
        "--trials",
        "5000",
        "--seed",
        "3",
        "--out",
        b.to_str().unwrap(),
    ]);
    assert!(!stderr(&out).contains("warning"));
    pcm(&[
        "ri",
        "--n",
        "4",
        "--trials",
        "5000",
        "--seed",
        "3",
        "--out",
        a.to_str().unwrap(),
    ]);
    assert_eq!(read(&a), read(&b));
}

#[test]
fn cache_from_environment_feeds_later_commands() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache.json");
    let env = [("PCM_RI_CACHE", cache.as_path())];
    assert_eq!(
        code(&pcm_env(
            &["ri", "--n", "4", "--trials", "2000", "--seed", "8"],
            &env
        )),
        0
    );
    let estimates: Vec<Value> = serde_json::from_str(&read(&cache)).unwrap();
    let cached = estimates[0]["ri"].as_f64().unwrap();

    let with = pcm_env(&["weigh", "--fixture", "right_left_four", "--json"], &env);
    let v: Value = serde_json::from_str(stdout(&with).trim()).unwrap();
    assert_eq!(v["ri"].as_f64().unwrap(), cached);
    let without = pcm(&["weigh", "--fixture", "right_left_four", "--json"]);
    let v: Value = serde_json::from_str(stdout(&without).trim()).unwrap();
    assert_ne!(v["ri"].as_f64().unwrap(), cached);

    // orders the cache lacks still come from the built-in table
    let five = pcm_env(&["weigh", "--fixture", "right_left_five", "--json"], &env);
    let v: Value = serde_json::from_str(stdout(&five).trim()).unwrap();
    assert!(v["cr"].is_number());
}
