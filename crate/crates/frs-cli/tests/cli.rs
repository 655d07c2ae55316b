//! End-to-end runs of the frs binary: exit codes, outputs, determinism.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use frs_core::eval::EvalReport;
use frs_core::reduct::Reduct;

fn frs(dir: &Path) -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_frs"));
    cmd.current_dir(dir);
    cmd
}

fn write(dir: &Path, name: &str, content: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, content).unwrap();
    path
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

/// Three samples, one feature; the selector must keep that feature.
const HAND_CSV: &str = "f,label\n0,a\n1,b\n0.5,a\n";

/// Two informative features and one constant, linearly separable, sized for
/// ten folds.
fn separable_csv() -> String {
    let mut rows = String::from("x,y,flat,Result\n");
    for i in 0..6 {
        let jitter = (i % 3) as f64 * 0.05;
        rows.push_str(&format!("{},{},0.5,-1\n", 0.05 + jitter, 0.1 + jitter));
        rows.push_str(&format!("{},{},0.5,1\n", 0.9 - jitter, 0.85 - jitter));
    }
    rows
}

#[test]
fn select_reproduces_the_hand_worked_example() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "hand.csv", HAND_CSV);
    let out = frs(dir.path())
        .args(["select", "--data", "hand.csv", "--method", "frs", "-o", "out.json"])
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let reduct = Reduct::load(dir.path().join("out.json")).unwrap();
    assert_eq!(reduct.selected, vec!["f"]);
    assert_eq!(reduct.mode, "quickreduct");
    assert_eq!(reduct.gamma, Some(0.5));
    assert_eq!(reduct.gamma_full, Some(0.5));
    assert!(stdout_of(&out).contains("1 of 1 features"));
}

#[test]
fn select_defaults_the_output_path() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "hand.csv", HAND_CSV);
    let out = frs(dir.path())
        .args(["select", "--data", "hand.csv"])
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(dir.path().join("hand-frs.json").exists());
}

#[test]
fn missing_input_file_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let out = frs(dir.path())
        .args(["select", "--data", "nope.csv"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(!String::from_utf8_lossy(&out.stderr).is_empty());
}

#[test]
fn unknown_method_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "hand.csv", HAND_CSV);
    let out = frs(dir.path())
        .args(["select", "--data", "hand.csv", "--method", "pca"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("unknown selector"));
}

#[test]
fn evaluate_builds_the_full_grid() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "sep.csv", &separable_csv());
    let out = frs(dir.path())
        .args([
            "evaluate",
            "--data",
            "sep.csv",
            "--selectors",
            "frs,all-features",
            "--classifiers",
            "rf,smo",
            "--k-folds",
            "3",
            "--seed",
            "7",
            "-o",
            "report.json",
            "--csv",
            "cells.csv",
            "--chart",
            "chart.csv",
        ])
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let report = EvalReport::load(dir.path().join("report.json")).unwrap();
    assert_eq!(report.cells.len(), 4);
    assert_eq!(report.protocol, "cross-validation");
    assert_eq!(report.positive_labels, vec!["-1"]);
    for cell in &report.cells {
        assert!(cell.f_measure > 0.8, "{} x {}", cell.selector, cell.classifier);
    }
    let cells = std::fs::read_to_string(dir.path().join("cells.csv")).unwrap();
    assert_eq!(cells.lines().count(), 5);
    let chart = std::fs::read_to_string(dir.path().join("chart.csv")).unwrap();
    assert!(chart.starts_with("category,f_measure\n"));
}

#[test]
fn evaluate_is_byte_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "sep.csv", &separable_csv());
    let run = |name: &str| {
        let out = frs(dir.path())
            .args([
                "evaluate", "--data", "sep.csv", "--selectors", "frs", "--classifiers",
                "rf,mlp,smo", "--k-folds", "4", "--seed", "3", "-o", name,
            ])
            .output()
            .unwrap();
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
        std::fs::read(dir.path().join(name)).unwrap()
    };
    assert_eq!(run("a.json"), run("b.json"));
}

#[test]
fn out_of_sample_training_uses_the_train_table() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "sep.csv", &separable_csv());
    // same schema, slightly shifted values
    let train = separable_csv().replace("0.9", "0.88").replace("0.05,", "0.07,");
    write(dir.path(), "train.csv", &train);
    let out = frs(dir.path())
        .args([
            "evaluate", "--data", "sep.csv", "--train", "train.csv", "--selectors",
            "all-features", "--classifiers", "smo", "-o", "report.json",
        ])
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let report = EvalReport::load(dir.path().join("report.json")).unwrap();
    assert_eq!(report.protocol, "out-of-sample");
    assert_eq!(report.train_dataset.as_deref(), Some("train"));
    assert_eq!(report.cells[0].counts.total(), 12);
}

#[test]
fn intersect_finds_shared_features_under_aliases() {
    let dir = tempfile::tempdir().unwrap();
    let a = Reduct {
        dataset: "a".into(),
        mode: "quickreduct".into(),
        selected: vec!["Favicon".into(), "UrlLen".into(), "SFH".into()],
        gamma: None,
        gamma_full: None,
        trace: Vec::new(),
        scores: None,
    };
    a.save(dir.path().join("a.json")).unwrap();
    let b = Reduct {
        dataset: "b".into(),
        selected: vec!["ExtFavicon".into(), "UrlLen".into(), "Anchor".into()],
        ..a.clone()
    };
    b.save(dir.path().join("b.json")).unwrap();
    write(dir.path(), "aliases.csv", "Favicon,ExtFavicon\n");

    let out = frs(dir.path())
        .args([
            "intersect", "--reducts", "a.json,b.json", "--aliases", "aliases.csv", "-o",
            "universal.json",
        ])
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let combined = Reduct::load(dir.path().join("universal.json")).unwrap();
    assert_eq!(combined.selected, vec!["Favicon", "UrlLen"]);
    assert_eq!(combined.mode, "universal");
    assert_eq!(combined.dataset, "a+b");

    // the written file feeds straight back into evaluation as a selector
    let two = frs(dir.path())
        .args(["intersect", "--reducts", "a.json", "-o", "x.json"])
        .output()
        .unwrap();
    assert_eq!(two.status.code(), Some(2));
}

#[test]
fn disjoint_selections_intersect_to_nothing_successfully() {
    let dir = tempfile::tempdir().unwrap();
    let a = Reduct {
        dataset: "a".into(),
        mode: "ig".into(),
        selected: vec!["p".into()],
        gamma: None,
        gamma_full: None,
        trace: Vec::new(),
        scores: None,
    };
    a.save(dir.path().join("a.json")).unwrap();
    let b = Reduct { selected: vec!["q".into()], ..a.clone() };
    b.save(dir.path().join("b.json")).unwrap();
    let out = frs(dir.path())
        .args(["intersect", "--reducts", "a.json,b.json", "-o", "u.json"])
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(Reduct::load(dir.path().join("u.json")).unwrap().selected.is_empty());
}

#[test]
fn config_file_supplies_flags_and_flags_win() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "hand.csv", HAND_CSV);
    write(
        dir.path(),
        "run.json",
        r#"{"data": "hand.csv", "method": "ig", "output": "from-config.json"}"#,
    );
    let out = frs(dir.path())
        .args(["select", "--config", "run.json"])
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(Reduct::load(dir.path().join("from-config.json")).unwrap().mode, "ig");

    let out = frs(dir.path())
        .args(["select", "--config", "run.json", "--method", "frs", "-o", "override.json"])
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(
        Reduct::load(dir.path().join("override.json")).unwrap().mode,
        "quickreduct"
    );
}

#[test]
fn bad_config_file_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "run.json", r#"{"no_such_key": true}"#);
    let out = frs(dir.path())
        .args(["select", "--config", "run.json"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn thread_count_does_not_change_results() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "sep.csv", &separable_csv());
    let run = |threads: &str, name: &str| {
        let out = frs(dir.path())
            .env("FRS_THREADS", threads)
            .args(["select", "--data", "sep.csv", "--method", "frs", "-o", name])
            .output()
            .unwrap();
        assert!(out.status.success());
        std::fs::read(dir.path().join(name)).unwrap()
    };
    assert_eq!(run("1", "t1.json"), run("4", "t4.json"));
}

#[test]
fn normalize_rewrites_the_table_into_the_unit_interval() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "raw.csv", "a,b,label\n-1,10,yes\n1,30,no\n0,20,yes\n");
    let out = frs(dir.path())
        .args(["normalize", "--data", "raw.csv", "-o", "norm.csv"])
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = std::fs::read_to_string(dir.path().join("norm.csv")).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("a,b,label"));
    for line in lines {
        let fields: Vec<&str> = line.split(',').collect();
        for v in &fields[..2] {
            let v: f64 = v.parse().unwrap();
            assert!((0.0..=1.0).contains(&v), "{line}");
        }
        assert!(fields[2] == "yes" || fields[2] == "no");
    }
    assert!(stdout_of(&out).contains("3 samples, 2 features, 2 classes"));
}

#[test]
fn arff_tables_load_directly() {
    let dir = tempfile::tempdir().unwrap();
    write(
        dir.path(),
        "tiny.arff",
        "@relation tiny\n\
         @attribute f {0,1}\n\
         @attribute result {a,b}\n\
         @data\n0,a\n1,b\n0,a\n1,b\n",
    );
    let out = frs(dir.path())
        .args(["select", "--data", "tiny.arff", "--method", "frs", "-o", "out.json"])
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(Reduct::load(dir.path().join("out.json")).unwrap().selected, vec!["f"]);
}
