use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_metricide"))
        .args(args)
        .env_remove("METRICIDE_SEED")
        .output()
        .expect("binary runs")
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

/// Fixture corpus with `edit` applied to its text, written into `dir`.
fn edited_corpus(dir: &Path, edit: impl Fn(String) -> String) -> PathBuf {
    let text = std::fs::read_to_string(fixture("corpus.csv")).unwrap();
    let path = dir.join("corpus.csv");
    std::fs::write(&path, edit(text)).unwrap();
    path
}

#[test]
fn validate_accepts_the_fixture() {
    let o = run(&["validate", "--input", fixture("corpus.csv").to_str().unwrap()]);
    assert!(o.status.success(), "{}", stderr(&o));
    let out = String::from_utf8(o.stdout).unwrap();
    assert!(out.contains("BAGEL\tTGen\t"));
    assert!(out.contains("0 errors"));
}

#[test]
fn validate_flags_a_zero_rating() {
    let dir = tempfile::tempdir().unwrap();
    let path = edited_corpus(dir.path(), |t| {
        let mut lines: Vec<String> = t.lines().map(String::from).collect();
        // first informativeness rating of B001
        let edited = lines[1].replacen(",3,3,3,3,4,2,", ",0,3,3,3,4,2,", 1);
        assert_ne!(edited, lines[1]);
        lines[1] = edited;
        lines.join("\n") + "\n"
    });
    let o = run(&["validate", "--input", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("error:"), "{}", stderr(&o));
}

#[test]
fn validate_flags_a_pair_key_with_three_members() {
    let dir = tempfile::tempdir().unwrap();
    let path = edited_corpus(dir.path(), |t| {
        let mut lines: Vec<String> = t.lines().map(String::from).collect();
        let extra = lines[1].replacen("B001", "B999", 1);
        lines.push(extra);
        lines.join("\n") + "\n"
    });
    let o = run(&["validate", "--input", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("bagel-01"), "{}", stderr(&o));
}

#[test]
fn score_writes_every_metric() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&[
        "score",
        "--input",
        fixture("corpus.csv").to_str().unwrap(),
        "--embeddings",
        fixture("embeddings.txt").to_str().unwrap(),
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = std::fs::read_to_string(dir.path().join("scores.tsv")).unwrap();
    let rows: Vec<Vec<&str>> = text.lines().map(|l| l.split('\t').collect()).collect();
    assert_eq!(rows.len(), 33);
    assert_eq!(&rows[0][..3], ["instance_id", "dataset", "system"]);
    assert!(rows.iter().all(|r| r.len() == 3 + 21));
    assert!(rows[0].contains(&"sim") && rows[0].contains(&"ter"));
}

#[test]
fn sim_without_embeddings_names_the_flag() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&[
        "score",
        "--input",
        fixture("corpus.csv").to_str().unwrap(),
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("--embeddings"), "{}", stderr(&o));
}

#[test]
fn subset_of_metrics_needs_no_embeddings() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&[
        "score",
        "--input",
        fixture("corpus.csv").to_str().unwrap(),
        "--metrics",
        "bleu4,ter,re",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = std::fs::read_to_string(dir.path().join("scores.tsv")).unwrap();
    let header: Vec<&str> = text.lines().next().unwrap().split('\t').collect();
    let sim = header.iter().position(|h| *h == "sim").unwrap();
    assert!(text.lines().skip(1).all(|l| l.split('\t').nth(sim) == Some("NA")));
}

fn analyze_args(out: &Path) -> Vec<String> {
    [
        "analyze",
        "--input",
        fixture("corpus.csv").to_str().unwrap(),
        "--embeddings",
        fixture("embeddings.txt").to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
        "--quantize",
    ]
    .map(String::from)
    .to_vec()
}

fn seed_in_report(out: &Path) -> u64 {
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(out.join("report.json")).unwrap()).unwrap();
    report["config_echo"]["analysis"]["seed"].as_u64().unwrap()
}

#[test]
fn seed_comes_from_the_environment() {
    let dir = tempfile::tempdir().unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_metricide"))
        .args(analyze_args(dir.path()))
        .env("METRICIDE_SEED", "17")
        .output()
        .unwrap();
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(seed_in_report(dir.path()), 17);

    let o = Command::new(env!("CARGO_BIN_EXE_metricide"))
        .args(analyze_args(dir.path()))
        .args(["--seed", "3"])
        .env("METRICIDE_SEED", "17")
        .output()
        .unwrap();
    assert!(o.status.success());
    assert_eq!(seed_in_report(dir.path()), 3);
}

#[test]
fn analyze_writes_the_report_tree() {
    let dir = tempfile::tempdir().unwrap();
    let args = analyze_args(dir.path());
    let o = run(&args.iter().map(String::as_str).collect::<Vec<_>>());
    assert!(o.status.success(), "{}", stderr(&o));
    for f in [
        "scores.tsv",
        "report.json",
        "reliability.tsv",
        "system_summary.tsv",
        "system_tests.tsv",
        "correlations.tsv",
        "williams.tsv",
        "accuracy.tsv",
        "bins.tsv",
        "bin_correlations.tsv",
        "mr_split.tsv",
        "plots/metric_heatmap.csv",
        "plots/williams_grid.csv",
    ] {
        assert!(dir.path().join(f).is_file(), "missing {f}");
    }
    let acc = std::fs::read_to_string(dir.path().join("accuracy.tsv")).unwrap();
    assert!(acc.lines().any(|l| l.starts_with("minmax\t")));
    assert!(acc.lines().any(|l| l.starts_with("raw\t")));
}

#[test]
fn reuses_scores_from_a_previous_run() {
    let dir = tempfile::tempdir().unwrap();
    let args = analyze_args(dir.path());
    assert!(run(&args.iter().map(String::as_str).collect::<Vec<_>>())
        .status
        .success());
    let first = std::fs::read_to_string(dir.path().join("correlations.tsv")).unwrap();
    let again = tempfile::tempdir().unwrap();
    let scores = dir.path().join("scores.tsv");
    let o = run(&[
        "analyze",
        "--input",
        fixture("corpus.csv").to_str().unwrap(),
        "--scores",
        scores.to_str().unwrap(),
        "--out",
        again.path().to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(
        std::fs::read_to_string(again.path().join("correlations.tsv")).unwrap(),
        first
    );
}

#[test]
fn strict_turns_warnings_into_status_one() {
    // BAGEL has only inform MRs, so the MR-type split warns
    let dir = tempfile::tempdir().unwrap();
    let mut args = analyze_args(dir.path());
    args.push("--strict".into());
    let o = run(&args.iter().map(String::as_str).collect::<Vec<_>>());
    assert_eq!(o.status.code(), Some(1), "{}", stderr(&o));
    assert!(stderr(&o).contains("warning:"));
}

#[test]
fn rejects_an_alpha_outside_the_unit_interval() {
    let dir = tempfile::tempdir().unwrap();
    let mut args = analyze_args(dir.path());
    args.extend(["--alpha".into(), "1.5".into()]);
    let o = run(&args.iter().map(String::as_str).collect::<Vec<_>>());
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("--alpha"));
}
