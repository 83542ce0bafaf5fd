//! One line per acceptance criterion: PASS, FAIL or SKIPPED.
//!
//! Criteria 1–7 need nothing but the repository. Criteria 8–14 need the
//! released ratings converted to the corpus format; point `METRICIDE_DATA`
//! at that file (and optionally `METRICIDE_EMBEDDINGS` at a vector file)
//! to run them.

use std::collections::BTreeMap;
use std::panic::{self, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use metricide::corpus::{load_corpus, parse_mr, Corpus, Dimension, Format, LoadOptions};
use metricide::lexicon::{Dictionary, EmbeddingTable};
use metricide::meta_eval::{
    analyze, quantize, ranking_accuracy, AccuracyOptions, AnalysisConfig, AnalysisReport, Bin, Grouping, QuantStrategy,
};
use metricide::scorer::{score_corpus, ScoreConfig};
use metricide::stats::{icc_all, spearman, williams_test};
use metricide::textproc::tokenize;
use metricide::word_metrics::{bleu, lepor, meteor, nist, rouge_l, sim, ter, CiderScorer, LeporConfig, MeteorParams};
use metricide::{MetricField, MetricVector64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

enum Outcome {
    Pass(String),
    Fail(String),
    Skipped(String),
}

use Outcome::{Fail, Pass, Skipped};

fn verdict(ok: bool, detail: String) -> Outcome {
    if ok {
        Pass(detail)
    } else {
        Fail(detail)
    }
}

#[derive(Default)]
struct Tally {
    pass: usize,
    fail: usize,
    skipped: usize,
}

impl Tally {
    fn run(&mut self, id: u32, title: &str, f: impl FnOnce() -> Outcome) {
        let outcome = panic::catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Fail(format!("panicked: {msg}"))
        });
        let (tag, detail) = match outcome {
            Pass(d) => {
                self.pass += 1;
                ("PASS", d)
            }
            Fail(d) => {
                self.fail += 1;
                ("FAIL", d)
            }
            Skipped(d) => {
                self.skipped += 1;
                ("SKIPPED", d)
            }
        };
        println!("{tag} [{id:>2}] {title}: {detail}");
    }
}

fn repo_path(rel: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join(rel)
}

fn words(s: &str) -> Vec<String> {
    s.split_whitespace().map(String::from).collect()
}

// ---- 1 -------------------------------------------------------------------

fn identity_battery() -> Outcome {
    const VOCAB: &[&str] = &["x", "is", "a", "cheap", "pub", "the", "river", ".", ",", "near", "it"];
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let sentences: Vec<Vec<String>> = (0..500)
        .map(|_| {
            let n = rng.gen_range(4..24);
            (0..n)
                .map(|_| VOCAB[rng.gen_range(0..VOCAB.len())].to_string())
                .collect()
        })
        .collect();
    let start = Instant::now();
    let corpus: Vec<(Vec<String>, Vec<Vec<String>>)> = sentences.iter().map(|s| (s.clone(), vec![s.clone()])).collect();
    let cider = CiderScorer::new(&corpus).unwrap();
    let mut worst = 0.0_f64;
    for s in &sentences {
        let refs = std::slice::from_ref(s);
        let l = s.len() as f64;
        let mut dev = vec![
            ter::<f64, _>(s, refs).unwrap(),
            rouge_l::<f64, _>(s, refs).unwrap() - 1.0,
            lepor::<f64, _>(s, refs, &LeporConfig::default()).unwrap() - 1.0,
            cider.score::<f64, _>(s, refs).unwrap() - 10.0,
            meteor::<f64, _>(s, refs, None, &MeteorParams::default()).unwrap() - (1.0 - 0.5 / (l * l * l)),
        ];
        for n in 1..=4 {
            dev.push(bleu::<f64, _>(s, refs, n).unwrap() - 1.0);
        }
        worst = dev.into_iter().fold(worst, |w, d| w.max(d.abs()));
    }
    let elapsed = start.elapsed();
    verdict(
        worst < 1e-9 && elapsed < Duration::from_secs(5),
        format!(
            "500 sentences, max deviation {worst:.1e}, {:.2} s",
            elapsed.as_secs_f64()
        ),
    )
}

// ---- 2 -------------------------------------------------------------------

fn micro_corpus() -> Outcome {
    let fixtures = repo_path("../core/tests/fixtures");
    let read = |n: &str| std::fs::read_to_string(fixtures.join(n)).unwrap();
    let pairs: Value = serde_json::from_str(&read("micro_corpus.json")).unwrap();
    let expected: Value = serde_json::from_str(&read("micro_expected.json")).unwrap();
    let table = EmbeddingTable::parse(&read("micro_embeddings.txt"), Path::new("micro_embeddings.txt")).unwrap();
    let tok = |v: &Value| tokenize(v.as_str().unwrap()).tokens;
    let data: Vec<(Vec<String>, Vec<Vec<String>>)> = pairs
        .as_array()
        .unwrap()
        .iter()
        .map(|p| {
            (
                tok(&p["candidate"]),
                p["references"].as_array().unwrap().iter().map(tok).collect(),
            )
        })
        .collect();
    let cider = CiderScorer::new(&data).unwrap();
    let mut worst = 0.0_f64;
    let mut checked = 0;
    for ((p, (cand, refs)), e) in pairs
        .as_array()
        .unwrap()
        .iter()
        .zip(&data)
        .zip(expected.as_array().unwrap())
    {
        let mr = parse_mr(p["mr"].as_str().unwrap()).unwrap();
        let got: [(&str, f64); 11] = [
            ("ter", ter(cand, refs).unwrap()),
            ("bleu1", bleu(cand, refs, 1).unwrap()),
            ("bleu2", bleu(cand, refs, 2).unwrap()),
            ("bleu3", bleu(cand, refs, 3).unwrap()),
            ("bleu4", bleu(cand, refs, 4).unwrap()),
            ("rouge", rouge_l(cand, refs).unwrap()),
            ("nist", nist(cand, refs, 5).unwrap()),
            ("lepor", lepor(cand, refs, &LeporConfig::default()).unwrap()),
            ("cider", cider.score(cand, refs).unwrap()),
            ("meteor", meteor(cand, refs, None, &MeteorParams::default()).unwrap()),
            ("sim", sim(&mr, cand, &table).unwrap()),
        ];
        for (name, v) in got {
            worst = worst.max((v - e[name].as_f64().unwrap()).abs());
            checked += 1;
        }
    }
    let shift: f64 = ter(&words("c a b"), &[words("a b c")]).unwrap();
    verdict(
        worst < 1e-6 && shift == 1.0 / 3.0,
        format!("{checked} values, max deviation {worst:.1e}; TER [c,a,b]->[a,b,c] = {shift}"),
    )
}

// ---- 3 -------------------------------------------------------------------

fn brute_ranks(v: &[f64]) -> Vec<f64> {
    v.iter()
        .map(|&x| {
            let below = v.iter().filter(|&&y| y < x).count() as f64;
            let equal = v.iter().filter(|&&y| y == x).count() as f64;
            below + (equal + 1.0) / 2.0
        })
        .collect()
}

fn brute_pearson(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len() as f64;
    let (mx, my) = (x.iter().sum::<f64>() / n, y.iter().sum::<f64>() / n);
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (a, b) in x.iter().zip(y) {
        sxy += (a - mx) * (b - my);
        sxx += (a - mx) * (a - mx);
        syy += (b - my) * (b - my);
    }
    sxy / (sxx * syy).sqrt()
}

fn tied_vector(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    let pool: Vec<f64> = (0..rng.gen_range(2..=n)).map(|_| rng.gen_range(-5.0..5.0)).collect();
    (0..n).map(|_| pool[rng.gen_range(0..pool.len())]).collect()
}

fn spearman_oracle() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut worst = 0.0_f64;
    let mut defined = 0;
    for _ in 0..1000 {
        let n = rng.gen_range(3..40);
        let (x, y) = (tied_vector(&mut rng, n), tied_vector(&mut rng, n));
        let want = brute_pearson(&brute_ranks(&x), &brute_ranks(&y));
        match spearman(&x, &y) {
            Ok(r) => {
                worst = worst.max((r.rho - want).abs());
                defined += 1;
            }
            Err(_) if !want.is_finite() => {}
            Err(e) => return Fail(format!("rejected a defined case: {e}")),
        }
    }
    let mut worst_map = 0.0_f64;
    for _ in 0..100 {
        let n = rng.gen_range(5..60);
        let x: Vec<f64> = (0..n).map(|_| rng.gen_range(-2.0..2.0)).collect();
        let y = tied_vector(&mut rng, n);
        let (a, b) = (rng.gen_range(0.1..3.0), rng.gen_range(0.1..3.0));
        let fx: Vec<f64> = x.iter().map(|v| a * v * v * v + b * v + (v / 2.0).exp()).collect();
        worst_map = worst_map.max((spearman(&x, &y).unwrap().rho - spearman(&fx, &y).unwrap().rho).abs());
    }
    verdict(
        worst < 1e-12 && worst_map < 1e-12,
        format!("{defined}/1000 defined, max |Δ| {worst:.1e}; 100 monotone maps, max |Δ| {worst_map:.1e}"),
    )
}

// ---- 4 -------------------------------------------------------------------

fn williams() -> Outcome {
    let w = williams_test(0.5_f64, 0.3, 0.6, 100).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut worst = 0.0_f64;
    for _ in 0..200 {
        let r: [f64; 3] = [0; 3].map(|_| rng.gen_range(-0.9..0.9));
        let n = rng.gen_range(10..500);
        if let (Ok(a), Ok(b)) = (williams_test(r[0], r[1], r[2], n), williams_test(r[1], r[0], r[2], n)) {
            let scale = a.t.abs().max(1.0);
            worst = worst.max((a.t + b.t).abs() / scale).max((a.p_value - b.p_value).abs());
        }
    }
    verdict(
        (w.t - 2.530).abs() < 1e-3 && worst < 1e-12,
        format!("t = {:.4}; antisymmetry max relative |Δ| {worst:.1e}", w.t),
    )
}

// ---- 5 -------------------------------------------------------------------

fn icc_direct(m: &[[f64; 3]]) -> [f64; 3] {
    let (n, k) = (m.len() as f64, 3.0);
    let grand = m.iter().flatten().sum::<f64>() / (n * k);
    let row_mean = |r: &[f64; 3]| r.iter().sum::<f64>() / k;
    let ssr: f64 = m.iter().map(|r| k * (row_mean(r) - grand).powi(2)).sum();
    let ssc: f64 = (0..3)
        .map(|j| n * (m.iter().map(|r| r[j]).sum::<f64>() / n - grand).powi(2))
        .sum();
    let ssw: f64 = m
        .iter()
        .map(|r| r.iter().map(|v| (v - row_mean(r)).powi(2)).sum::<f64>())
        .sum();
    let bms = ssr / (n - 1.0);
    let wms = ssw / (n * (k - 1.0));
    let ems = (ssw - ssc) / ((n - 1.0) * (k - 1.0));
    let jms = ssc / (k - 1.0);
    [
        (bms - wms) / (bms + (k - 1.0) * wms),
        (bms - ems) / (bms + (k - 1.0) * ems + k * (jms - ems) / n),
        (bms - ems) / (bms + (jms - ems) / n),
    ]
}

fn icc_oracle() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut worst = 0.0_f64;
    let mut done = 0;
    while done < 20 {
        let m: Vec<[f64; 3]> = (0..5)
            .map(|_| {
                let base = rng.gen_range(1..=6) as f64;
                [0; 3].map(|_| (base + rng.gen_range(-1..=1) as f64).clamp(1.0, 6.0))
            })
            .collect();
        let want = icc_direct(&m);
        if want.iter().any(|v| !v.is_finite()) {
            continue;
        }
        for (g, w) in icc_all::<f64, _>(&m).unwrap().iter().zip(want) {
            worst = worst.max((g.icc - w).abs());
        }
        done += 1;
    }
    let agree = [
        [1.0, 1.0, 1.0],
        [4.0, 4.0, 4.0],
        [6.0, 6.0, 6.0],
        [2.0, 2.0, 2.0],
        [3.0, 3.0, 3.0],
    ];
    let ones = icc_all::<f64, _>(&agree).unwrap().map(|r| r.icc);
    verdict(
        worst < 1e-10 && ones.iter().all(|&v| (v - 1.0).abs() < 1e-12),
        format!("20 matrices, max |Δ| {worst:.1e}; all-agree ICC {ones:?}"),
    )
}

// ---- 6 -------------------------------------------------------------------

fn fixture_corpus() -> Corpus {
    load_corpus(
        &repo_path("tests/fixtures/corpus.csv"),
        Format::Csv,
        &LoadOptions::default(),
    )
    .unwrap()
    .corpus
}

fn with_metric(corpus: &Corpus, field: MetricField, f: impl Fn(usize) -> f64) -> Vec<MetricVector64> {
    (0..corpus.len())
        .map(|i| {
            let mut v = MetricVector64::default();
            v.set(field, Some(f(i)));
            v
        })
        .collect()
}

fn ranking() -> Outcome {
    let corpus = fixture_corpus();
    let opts = AccuracyOptions::default();
    let mut perfect = true;
    for dim in Dimension::ALL {
        let s = with_metric(&corpus, MetricField::Bleu1, |i| {
            f64::from(corpus.instances[i].median(dim))
        });
        let cell = ranking_accuracy(&corpus, &s, MetricField::Bleu1, dim, &opts).unwrap();
        perfect &= cell.accuracy == Some(100.0);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let raw: Vec<f64> = (0..corpus.len()).map(|_| rng.gen_range(0..6) as f64 / 5.0).collect();
    let dim = Dimension::Informativeness;
    let base = ranking_accuracy(
        &corpus,
        &with_metric(&corpus, MetricField::Rouge, |i| raw[i]),
        MetricField::Rouge,
        dim,
        &opts,
    )
    .unwrap()
    .correct;
    let invariant = (1..=20).all(|k| {
        let k = k as f64;
        let s = with_metric(&corpus, MetricField::Rouge, |i| (k * raw[i]).exp() + k * raw[i]);
        ranking_accuracy(&corpus, &s, MetricField::Rouge, dim, &opts)
            .unwrap()
            .correct
            == base
    });
    let mut ordered = true;
    for _ in 0..1000 {
        let n = rng.gen_range(1..50);
        let v: Vec<f64> = (0..n)
            .map(|_| (rng.gen_range(-3.0..3.0_f64) * 4.0).round() / 4.0)
            .collect();
        for strategy in [QuantStrategy::MinMax, QuantStrategy::EqFreq] {
            let q = quantize(&v, strategy, false).values;
            for i in 0..n {
                for j in 0..n {
                    ordered &= !(v[i] > v[j]) || q[i] >= q[j];
                    ordered &= v[i] != v[j] || q[i] == q[j];
                }
            }
        }
    }
    verdict(
        perfect && invariant && ordered,
        format!("median-as-metric 100%: {perfect}; monotone invariance: {invariant}; quantize order: {ordered}"),
    )
}

// ---- 7 -------------------------------------------------------------------

fn snapshot(root: &Path) -> BTreeMap<PathBuf, Vec<u8>> {
    let mut out = BTreeMap::new();
    let mut stack = vec![root.to_path_buf()];
    while let Some(dir) = stack.pop() {
        for entry in std::fs::read_dir(&dir).unwrap() {
            let path = entry.unwrap().path();
            if path.is_dir() {
                stack.push(path);
            } else {
                out.insert(
                    path.strip_prefix(root).unwrap().to_path_buf(),
                    std::fs::read(&path).unwrap(),
                );
            }
        }
    }
    out
}

fn determinism() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report");
    let run = || {
        let o = Command::new(env!("CARGO_BIN_EXE_metricide"))
            .args(["analyze", "--quantize", "--seed", "0", "--input"])
            .arg(repo_path("tests/fixtures/corpus.csv"))
            .arg("--embeddings")
            .arg(repo_path("tests/fixtures/embeddings.txt"))
            .arg("--out")
            .arg(&out)
            .output()
            .unwrap();
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
        snapshot(&out)
    };
    let (a, b) = (run(), run());
    let same = a == b;
    verdict(
        same && !a.is_empty(),
        format!("{} files compared, identical: {same}", a.len()),
    )
}

// ---- 8–14 ----------------------------------------------------------------

struct Released {
    corpus: Corpus,
    report: AnalysisReport<f64>,
    elapsed: Duration,
}

fn load_released() -> Result<Option<Released>, String> {
    let Some(path) = std::env::var_os("METRICIDE_DATA") else {
        return Ok(None);
    };
    let path = PathBuf::from(path);
    let start = Instant::now();
    let mut corpus = load_corpus(&path, Format::from_path(&path), &LoadOptions::default())
        .map_err(|e| format!("{}: {e}", path.display()))?
        .corpus;
    corpus.dictionary = Some(Dictionary::bundled());
    let config = match std::env::var_os("METRICIDE_EMBEDDINGS") {
        Some(p) => {
            corpus.embeddings = Some(EmbeddingTable::load(Path::new(&p)).map_err(|e| e.to_string())?);
            ScoreConfig::default()
        }
        None => ScoreConfig::with_metrics(MetricField::ALL.into_iter().filter(|&f| f != MetricField::Sim)),
    };
    let scores = score_corpus::<f64>(&corpus, &config).map_err(|e| e.to_string())?;
    let analysis = AnalysisConfig {
        quantize: true,
        ..AnalysisConfig::default()
    };
    let report = analyze(&corpus, &scores, &analysis).map_err(|e| e.to_string())?;
    Ok(Some(Released {
        corpus,
        report,
        elapsed: start.elapsed(),
    }))
}

/// Dataset name as spelled in the data, matched case-insensitively.
fn dataset<'a>(corpus: &'a Corpus, name: &str) -> Option<&'a str> {
    corpus.datasets().into_iter().find(|d| d.eq_ignore_ascii_case(name))
}

fn within(v: f64, target: f64, tol: f64) -> bool {
    (v - target).abs() <= tol
}

/// Word-based metrics compared against published numbers; sim is a
/// substitute measure and is left out.
fn replicated_wbms() -> impl Iterator<Item = MetricField> {
    MetricField::word_based().filter(|&f| f != MetricField::Sim)
}

fn oriented(f: MetricField, rho: f64) -> f64 {
    if f.is_reversed() {
        -rho
    } else {
        rho
    }
}

fn corpus_shape(r: &Released) -> Outcome {
    let counts: Vec<usize> = ["BAGEL", "SFRest", "SFHotel"]
        .iter()
        .map(|d| dataset(&r.corpus, d).map_or(0, |d| r.corpus.instances.iter().filter(|i| i.dataset == d).count()))
        .collect();
    verdict(
        counts == [404, 1181, 875] && r.corpus.len() == 2460,
        format!("{counts:?}, total {}", r.corpus.len()),
    )
}

fn tgen_bagel_means(r: &Released) -> Outcome {
    let Some(bagel) = dataset(&r.corpus, "BAGEL") else {
        return Fail("no BAGEL dataset".into());
    };
    let summary = r.report.system_summaries.iter().find(|s| s.dataset == bagel).unwrap();
    let Some(tgen) = summary.systems.iter().find(|s| s.system.eq_ignore_ascii_case("TGen")) else {
        return Fail("no TGen system in BAGEL".into());
    };
    let mean = |name: &str| {
        tgen.fields
            .iter()
            .find(|f| f.field == name)
            .and_then(|f| f.mean)
            .unwrap_or(f64::NAN)
    };
    let checks = [
        ("bleu1", 0.75, 0.03),
        ("rouge", 0.76, 0.04),
        ("re", 86.79, 3.0),
        ("wps", 10.08, 0.3),
    ];
    let ok = checks.iter().all(|&(n, t, tol)| within(mean(n), t, tol));
    let detail = checks
        .iter()
        .map(|&(n, _, _)| format!("{n} {:.3}", mean(n)))
        .collect::<Vec<_>>();
    verdict(ok, detail.join(", "))
}

fn tgen_bagel_correlations(r: &Released) -> Outcome {
    let Some(table) = r.report.correlation_tables.iter().find(|t| {
        t.group.grouping == Grouping::DatasetSystem
            && t.group
                .dataset
                .as_deref()
                .is_some_and(|d| d.eq_ignore_ascii_case("BAGEL"))
            && t.group
                .system
                .as_deref()
                .is_some_and(|s| s.eq_ignore_ascii_case("TGen"))
    }) else {
        return Fail("no BAGEL/TGen group".into());
    };
    let cell = |f: MetricField| &table.metrics[f.index()].dimensions[Dimension::Informativeness.index()];
    let (wps, prs) = (cell(MetricField::Wps), cell(MetricField::Prs));
    let (w, p) = (wps.rho.unwrap_or(f64::NAN), prs.rho.unwrap_or(f64::NAN));
    verdict(
        within(w, 0.33, 0.03) && wps.significant && within(p, -0.23, 0.04),
        format!("wps ρ {w:.3} (significant: {}), prs ρ {p:.3}", wps.significant),
    )
}

fn overall_icc(r: &Released) -> Outcome {
    let Some(all) = r
        .report
        .reliability
        .iter()
        .find(|x| x.scope == "all" && x.dimension.is_none())
    else {
        return Fail("no overall reliability".into());
    };
    let values: Vec<String> = all
        .models
        .iter()
        .map(|m| format!("{} {:.3}", m.model.name(), m.icc))
        .collect();
    verdict(all.models.iter().any(|m| within(m.icc, 0.45, 0.03)), values.join(", "))
}

fn accuracy(r: &Released) -> Outcome {
    let table = |name: &str, quantized: bool| {
        let d = dataset(&r.corpus, name)?;
        r.report
            .accuracy_tables
            .iter()
            .find(|t| t.dataset == d && t.dimension == Dimension::Informativeness && t.quantized.is_some() == quantized)
    };
    let Some(bagel) = table("BAGEL", false) else {
        return Fail("no raw BAGEL informativeness table".into());
    };
    let ter = bagel
        .metrics
        .iter()
        .find(|c| c.metric == Some(MetricField::Ter))
        .unwrap();
    let (t, rnd) = (
        ter.accuracy.unwrap_or(f64::NAN),
        bagel.random.accuracy.unwrap_or(f64::NAN),
    );
    let Some(sfrest) = table("SFRest", true) else {
        return Fail("no quantized SFRest informativeness table".into());
    };
    let missed: Vec<&str> = replicated_wbms()
        .filter(|&f| !sfrest.metrics[f.index()].significant)
        .map(MetricField::name)
        .collect();
    verdict(
        within(t, 45.05, 2.0) && within(rnd, 37.13, 3.0) && missed.is_empty(),
        format!("BAGEL TER {t:.2}%, random {rnd:.2}%; SFRest quantized not significant: {missed:?}"),
    )
}

fn bins(r: &Released) -> Outcome {
    let Some(b) = r
        .report
        .bin_tables
        .iter()
        .find(|b| b.scope == "all" && b.dimension == Dimension::Informativeness)
    else {
        return Fail("no overall informativeness bins".into());
    };
    let good = b
        .shares
        .iter()
        .find(|s| s.bin == Bin::Good)
        .map_or(f64::NAN, |s| s.share);
    let mut bad_low = Vec::new();
    let mut other_high = Vec::new();
    for f in replicated_wbms() {
        let c = &b.correlations[f.index()];
        let bad = c.bad.rho.map_or(f64::NAN, |v| oriented(f, v));
        let other = c.other.rho.map_or(f64::NAN, |v| oriented(f, v));
        if !(bad >= 0.25) {
            bad_low.push(format!("{} {bad:.2}", f.name()));
        }
        if !(other <= 0.22) {
            other_high.push(format!("{} {other:.2}", f.name()));
        }
    }
    verdict(
        within(good, 79.0, 2.0) && bad_low.is_empty() && other_high.is_empty(),
        format!("good share {good:.1}%; bad bin below 0.25: {bad_low:?}; other bin above 0.22: {other_high:?}"),
    )
}

fn runtime(r: &Released) -> Outcome {
    let s = r.elapsed.as_secs_f64();
    verdict(
        s < 60.0,
        format!("score + analyze of {} instances in {s:.1} s", r.corpus.len()),
    )
}

fn main() -> ExitCode {
    let mut tally = Tally::default();
    tally.run(1, "metric identity battery", identity_battery);
    tally.run(2, "hand-oracle micro-corpus", micro_corpus);
    tally.run(3, "Spearman against Pearson of ranks", spearman_oracle);
    tally.run(4, "Williams test", williams);
    tally.run(5, "ICC against direct sums of squares", icc_oracle);
    tally.run(6, "ranking accuracy properties", ranking);
    tally.run(7, "deterministic analyze output", determinism);

    let released = panic::catch_unwind(load_released).unwrap_or_else(|_| Err("loading panicked".into()));
    type Check = fn(&Released) -> Outcome;
    let conditional: [(u32, &str, Check); 7] = [
        (8, "corpus shape", corpus_shape),
        (9, "TGen/BAGEL system means", tgen_bagel_means),
        (
            10,
            "TGen/BAGEL correlations with informativeness",
            tgen_bagel_correlations,
        ),
        (11, "overall ICC", overall_icc),
        (12, "ranking accuracy against random", accuracy),
        (13, "informativeness bins", bins),
        (14, "end-to-end runtime", runtime),
    ];
    for (id, title, check) in conditional {
        tally.run(id, title, || match &released {
            Ok(Some(r)) => check(r),
            Ok(None) => Skipped("METRICIDE_DATA not set".into()),
            Err(e) => Fail(e.clone()),
        });
    }
    println!(
        "{} passed, {} failed, {} skipped",
        tally.pass, tally.fail, tally.skipped
    );
    if tally.fail > 0 {
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
