//! Meta-evaluation: how well the automatic metrics track human judgments.
//!
//! Every analysis takes the corpus plus one [`MetricVector`] per instance,
//! aligned by position. [`analyze`] runs all of them and assembles an
//! [`AnalysisReport`].

mod accuracy;
mod bins;
mod correlation;
mod mr_split;
mod output;
mod reliability;
mod summary;

pub use accuracy::{
    accuracy_tables, quantize, ranking_accuracy, AccuracyCell, AccuracyOptions, AccuracyTable, QuantStrategy,
    Quantized, SCALE_MAX, SCALE_MIN,
};
pub use bins::{bin_analysis, bin_of, Bin, BinAnalysis, BinCorrelation, BinShare};
pub use correlation::{
    correlation_table, correlation_tables, groups, BestMark, CorrelationTable, Group, Grouping, MetricCorrelations,
    MetricPair, WilliamsEntry, WilliamsMatrix,
};
pub use mr_split::{mr_type_split, MrSplit, MrSplitRow};
pub use output::render_tables;
pub use reliability::{reliability, Reliability};
pub use summary::{system_summary, FieldStat, FieldTest, SystemStats, SystemSummary};

use rayon::prelude::*;
use serde::Serialize;

use crate::corpus::{Corpus, Dimension};
use crate::error::{Error, Result};
use crate::metric::{MetricField, MetricVector};
use crate::scalar::Scalar;
use crate::stats::{spearman, ZeroMethod, DEFAULT_ALPHA, RANDOM_GENERATOR};

/// Label of the group spanning the whole corpus.
pub const ALL_DATA: &str = "all";

/// Smallest group that gets a correlation.
pub const MIN_GROUP: usize = 3;

#[derive(Debug, Clone, Serialize)]
pub struct AnalysisConfig {
    pub alpha: f64,
    /// Raw metric values closer than this count as tied.
    pub epsilon: f64,
    pub seed: u64,
    /// Add quantized ranking-accuracy tables.
    pub quantize: bool,
    pub quant_strategy: QuantStrategy,
    pub zero_method: ZeroMethod,
    pub random_generator: &'static str,
}

impl Default for AnalysisConfig {
    fn default() -> Self {
        AnalysisConfig {
            alpha: DEFAULT_ALPHA,
            epsilon: 0.0,
            seed: 0,
            quantize: false,
            quant_strategy: QuantStrategy::MinMax,
            zero_method: ZeroMethod::Wilcox,
            random_generator: RANDOM_GENERATOR,
        }
    }
}

/// Spearman ρ of one metric against one human dimension, with the number
/// of instances that had both values.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CorrCell<T> {
    pub n: usize,
    pub rho: Option<T>,
    pub p_value: Option<T>,
    pub significant: bool,
    /// Why `rho` is absent.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<&'static str>,
}

impl<T: Scalar> CorrCell<T> {
    pub fn compute(x: &[T], y: &[T], alpha: f64) -> Self {
        let n = x.len();
        if n < MIN_GROUP {
            return CorrCell::absent(n, "insufficient");
        }
        match spearman(x, y) {
            Ok(r) => CorrCell {
                n,
                rho: Some(r.rho),
                p_value: Some(r.p_value),
                significant: r.p_value.as_f64() < alpha,
                note: None,
            },
            Err(_) => CorrCell::absent(n, "constant"),
        }
    }

    pub fn absent(n: usize, note: &'static str) -> Self {
        CorrCell {
            n,
            rho: None,
            p_value: None,
            significant: false,
            note: Some(note),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct AnalysisReport<T> {
    pub config_echo: serde_json::Value,
    pub instances: usize,
    pub pairs: usize,
    pub reliability: Vec<Reliability<T>>,
    pub system_summaries: Vec<SystemSummary<T>>,
    pub correlation_tables: Vec<CorrelationTable<T>>,
    pub accuracy_tables: Vec<AccuracyTable<T>>,
    pub bin_tables: Vec<BinAnalysis<T>>,
    pub mr_type_split: Vec<MrSplit<T>>,
    pub warnings: Vec<String>,
}

/// Collected analysis-level warnings, also forwarded to the log.
#[derive(Debug, Default)]
pub struct Warnings(Vec<String>);

impl Warnings {
    pub fn push(&mut self, message: impl Into<String>) {
        let message = message.into();
        log::warn!("{message}");
        self.0.push(message);
    }

    pub fn extend(&mut self, other: Warnings) {
        self.0.extend(other.0);
    }

    pub fn into_vec(self) -> Vec<String> {
        self.0
    }

    pub fn as_slice(&self) -> &[String] {
        &self.0
    }
}

pub(crate) fn check_aligned<T>(corpus: &Corpus, scores: &[MetricVector<T>]) -> Result<()> {
    if corpus.is_empty() {
        return Err(Error::EmptyCorpus);
    }
    if corpus.len() != scores.len() {
        return Err(Error::InvalidInput(format!(
            "{} instances but {} metric vectors",
            corpus.len(),
            scores.len()
        )));
    }
    Ok(())
}

pub(crate) fn medians<T: Scalar>(corpus: &Corpus, dimension: Dimension) -> Vec<T> {
    corpus
        .instances
        .iter()
        .map(|i| T::of(f64::from(i.median(dimension))))
        .collect()
}

pub(crate) fn column<T: Scalar>(scores: &[MetricVector<T>], field: MetricField) -> Vec<Option<T>> {
    scores.iter().map(|v| v.get(field)).collect()
}

/// Values of `x` and `y` at `members` where `x` is present.
pub(crate) fn present<T: Scalar>(x: &[Option<T>], y: &[T], members: &[usize]) -> (Vec<T>, Vec<T>) {
    members.iter().filter_map(|&i| x[i].map(|v| (v, y[i]))).unzip()
}

/// Instance indices belonging to `dataset`, or all of them.
pub(crate) fn members(corpus: &Corpus, dataset: Option<&str>) -> Vec<usize> {
    corpus
        .instances
        .iter()
        .enumerate()
        .filter(|(_, inst)| dataset.is_none_or(|d| inst.dataset == d))
        .map(|(i, _)| i)
        .collect()
}

/// Runs every analysis. Independent groups are evaluated in parallel and
/// reassembled in a fixed order, so the report only depends on the inputs
/// and `config`.
pub fn analyze<T: Scalar>(
    corpus: &Corpus,
    scores: &[MetricVector<T>],
    config: &AnalysisConfig,
) -> Result<AnalysisReport<T>> {
    check_aligned(corpus, scores)?;
    let mut warnings = Warnings::default();

    let reliability = reliability(corpus, &mut warnings);
    let system_summaries = system_summary(corpus, scores, config.alpha, &mut warnings)?;
    let correlation_tables = correlation_tables(corpus, scores, config.alpha, &mut warnings)?;

    let accuracy_tables = if corpus.pairs().is_empty() {
        warnings.push("no pair_key groups of size 2: ranking accuracy skipped");
        Vec::new()
    } else {
        let mut tables = accuracy_tables(corpus, scores, config, false, &mut warnings)?;
        if config.quantize {
            tables.extend(accuracy_tables(corpus, scores, config, true, &mut warnings)?);
        }
        tables
    };

    let scopes: Vec<Option<&str>> = std::iter::once(None)
        .chain(corpus.datasets().into_iter().map(Some))
        .collect();
    let jobs: Vec<(Option<&str>, Dimension)> = scopes
        .iter()
        .flat_map(|&s| Dimension::ALL.into_iter().map(move |d| (s, d)))
        .collect();
    let bin_tables = jobs
        .par_iter()
        .map(|&(scope, dim)| bin_analysis(corpus, scores, scope, dim, config.alpha))
        .collect::<Result<Vec<_>>>()?;
    let split: Vec<(MrSplit<T>, Warnings)> = jobs
        .par_iter()
        .map(|&(scope, dim)| {
            let mut w = Warnings::default();
            mr_type_split(corpus, scores, scope, dim, config.alpha, &mut w).map(|s| (s, w))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut mr_type_split = Vec::with_capacity(split.len());
    for (s, w) in split {
        mr_type_split.push(s);
        warnings.extend(w);
    }

    Ok(AnalysisReport {
        config_echo: serde_json::to_value(config)?,
        instances: corpus.len(),
        pairs: corpus.pairs().len(),
        reliability,
        system_summaries,
        correlation_tables,
        accuracy_tables,
        bin_tables,
        mr_type_split,
        warnings: warnings.into_vec(),
    })
}
