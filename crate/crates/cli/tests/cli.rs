use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn satforge(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_satforge"))
        .args(args)
        .current_dir(dir)
        .env_remove("SATFORGE_CORPUS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn construct_writes_graph_and_bound_line() {
    let tmp = tempfile::tempdir().unwrap();
    let o = satforge(&["construct", "--n", "9", "--out", "g"], tmp.path());
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "edges=12 bound=12 OK");
    let file = fs::read_to_string(tmp.path().join("g/construction_9.g6")).unwrap();
    assert_eq!(file.lines().count(), 1);

    let o = satforge(&["construct", "--n", "12"], tmp.path());
    assert!(stdout(&o).contains("edges=16 bound=16 OK"));

    let o = satforge(&["construct", "--n", "8"], tmp.path());
    assert_ne!(o.status.code(), Some(0));
}

#[test]
fn construct_range_lists_every_order() {
    let tmp = tempfile::tempdir().unwrap();
    let o = satforge(&["construct", "--n-range", "9..14", "--out", "g"], tmp.path());
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().filter(|l| l.ends_with(" OK")).count(), 6);
}

#[test]
fn check_reports_saturation_and_violations() {
    let tmp = tempfile::tempdir().unwrap();
    satforge(&["construct", "--n", "10", "--out", "."], tmp.path());
    let o = satforge(&["check", "construction_10.g6", "--k", "6"], tmp.path());
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("saturated"));

    // C6 itself
    fs::write(tmp.path().join("c6.g6"), "Ehhw\n").unwrap();
    let o = satforge(&["check", "c6.g6", "--k", "6"], tmp.path());
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("not-free"));

    fs::write(tmp.path().join("empty.g6"), "").unwrap();
    let o = satforge(&["check", "empty.g6"], tmp.path());
    assert_eq!(o.status.code(), Some(2));
    let o = satforge(&["check", "missing.g6"], tmp.path());
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn search_writes_results_and_summary() {
    let tmp = tempfile::tempdir().unwrap();
    let o = satforge(&["search", "--n", "5", "--k", "3", "--out", "c"], tmp.path());
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("sat=4"));
    let o = satforge(&["search", "--n", "5", "--k", "6", "--out", "c"], tmp.path());
    assert!(stdout(&o).contains("sat=10"));
    let summary = fs::read_to_string(tmp.path().join("c/summary.txt")).unwrap();
    assert_eq!(summary.lines().count(), 3);
    assert!(tmp.path().join("c/sat_5_3.g6").exists());
}

#[test]
fn search_budget_has_its_own_exit_code() {
    let tmp = tempfile::tempdir().unwrap();
    let o = satforge(
        &["search", "--n", "9", "--k", "6", "--out", "c", "--budget-nodes", "100"],
        tmp.path(),
    );
    assert_eq!(o.status.code(), Some(3));
    let summary = fs::read_to_string(tmp.path().join("c/summary.txt")).unwrap();
    assert!(summary.contains("budget-exhausted"));
}

#[test]
fn search_output_is_reproducible() {
    let tmp = tempfile::tempdir().unwrap();
    satforge(&["search", "--n-range", "6..8", "--k", "6", "--out", "a"], tmp.path());
    satforge(&["search", "--n-range", "6..8", "--k", "6", "--out", "b"], tmp.path());
    for f in ["summary.txt", "sat_6_6.g6", "sat_7_6.g6", "sat_8_6.g6"] {
        let a = fs::read(tmp.path().join("a").join(f)).unwrap();
        let b = fs::read(tmp.path().join("b").join(f)).unwrap();
        assert_eq!(a, b, "{f}");
    }
}

#[test]
fn audit_renders_branches() {
    let tmp = tempfile::tempdir().unwrap();
    satforge(&["construct", "--n", "9", "--out", "."], tmp.path());
    let o = satforge(&["audit", "construction_9.g6", "--dump-stages", "g,g5,f7"], tmp.path());
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("e=12 >= 4n/3-2 = 10"));
    assert!(out.contains("stage\tvertex\tlevel\tclass\tcharge"));
    assert!(out.lines().any(|l| l.starts_with("f7\t")));

    fs::write(tmp.path().join("k5.g6"), "D~{\n").unwrap();
    let o = satforge(&["audit", "k5.g6"], tmp.path());
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("10 >= 7.5"));

    fs::write(tmp.path().join("c6.g6"), "Ehhw\n").unwrap();
    let o = satforge(&["audit", "c6.g6"], tmp.path());
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn audit_reads_corpus_from_environment() {
    let tmp = tempfile::tempdir().unwrap();
    satforge(&["search", "--n-range", "6..8", "--k", "6", "--out", "c"], tmp.path());
    let o = Command::new(env!("CARGO_BIN_EXE_satforge"))
        .arg("audit")
        .current_dir(tmp.path())
        .env("SATFORGE_CORPUS", tmp.path().join("c"))
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).matches("result: PASS").count(), 3);
}

#[test]
fn table_rows_and_exact_column() {
    let tmp = tempfile::tempdir().unwrap();
    let o = satforge(&["table", "--n-range", "9..12"], tmp.path());
    assert_eq!(o.status.code(), Some(0));
    let rows: Vec<Vec<String>> = stdout(&o)
        .lines()
        .skip(1)
        .map(|l| l.split('\t').map(String::from).collect())
        .collect();
    let bounds: Vec<(&str, &str)> = rows.iter().map(|r| (r[1].as_str(), r[2].as_str())).collect();
    assert_eq!(bounds, [("10", "12"), ("12", "13"), ("13", "15"), ("14", "16")]);
    assert!(rows.iter().all(|r| r[4] == "-"));

    let o = satforge(&["table", "--n", "10"], tmp.path());
    assert_eq!(stdout(&o).lines().count(), 2);

    satforge(&["search", "--n", "8", "--k", "6", "--out", "c"], tmp.path());
    let o = Command::new(env!("CARGO_BIN_EXE_satforge"))
        .args(["table", "--n-range", "8..9"])
        .current_dir(tmp.path())
        .env("SATFORGE_CORPUS", tmp.path().join("c"))
        .output()
        .unwrap();
    let text = stdout(&o);
    assert!(text.lines().any(|l| l == "8\t9\t-\t-\t11"), "{text}");
}

#[test]
fn usage_errors_exit_two() {
    let tmp = tempfile::tempdir().unwrap();
    for args in [
        vec!["search", "--n-range", "7..5", "--k", "6"],
        vec!["check", "x.g6", "--k", "2"],
        vec!["table"],
        vec!["audit", "x.g6", "--dump-stages", "h9"],
    ] {
        assert_eq!(satforge(&args, tmp.path()).status.code(), Some(2), "{args:?}");
    }
}
