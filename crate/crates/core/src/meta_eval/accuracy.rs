use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use super::{check_aligned, column, medians, members, AnalysisConfig, Warnings, ALL_DATA};
use crate::corpus::{Corpus, Dimension};
use crate::error::{Error, Result};
use crate::metric::{MetricField, MetricVector};
use crate::scalar::Scalar;
use crate::stats::{random_baseline, rank_with_ties, wilcoxon_signed_rank_with, WilcoxonMethod, ZeroMethod};

/// Bounds of the human rating scale that quantized scores are mapped onto.
pub const SCALE_MIN: u8 = 1;
pub const SCALE_MAX: u8 = 6;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum QuantStrategy {
    /// Linear map of [min, max] onto [1, 6], rounded half away from zero.
    #[default]
    MinMax,
    /// Six bins holding equal numbers of ranks.
    EqFreq,
}

impl QuantStrategy {
    pub fn name(self) -> &'static str {
        match self {
            QuantStrategy::MinMax => "minmax",
            QuantStrategy::EqFreq => "eqfreq",
        }
    }
}

impl std::str::FromStr for QuantStrategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "minmax" => Ok(QuantStrategy::MinMax),
            "eqfreq" => Ok(QuantStrategy::EqFreq),
            _ => Err(Error::InvalidInput(format!("unknown quantization strategy `{s}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quantized {
    pub values: Vec<u8>,
    /// Input was constant; every value was mapped to [`SCALE_MAX`].
    pub constant: bool,
}

/// Maps scores onto the 1–6 rating scale. With `reversed` the scores are
/// negated first so that 6 is always best. Weak order is preserved.
pub fn quantize<T: Scalar>(values: &[T], strategy: QuantStrategy, reversed: bool) -> Quantized {
    let v: Vec<f64> = values
        .iter()
        .map(|x| if reversed { -x.as_f64() } else { x.as_f64() })
        .collect();
    let lo = v.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = v.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if v.is_empty() {
        return Quantized {
            values: Vec::new(),
            constant: false,
        };
    }
    if lo == hi {
        return Quantized {
            values: vec![SCALE_MAX; v.len()],
            constant: true,
        };
    }
    let span = f64::from(SCALE_MAX - SCALE_MIN);
    let values = match strategy {
        QuantStrategy::MinMax => v
            .iter()
            .map(|&x| (f64::from(SCALE_MIN) + span * (x - lo) / (hi - lo)).round() as u8)
            .collect(),
        QuantStrategy::EqFreq => {
            let n = v.len() as f64;
            let bins = span + 1.0;
            rank_with_ties(&v)
                .into_iter()
                .map(|r| SCALE_MIN + ((bins * (r - 1.0) / n).floor() as u8).min(SCALE_MAX - SCALE_MIN))
                .collect()
        }
    };
    Quantized {
        values,
        constant: false,
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct AccuracyCell<T> {
    /// `None` for the random baseline.
    pub metric: Option<MetricField>,
    /// Pairs where the metric was present for both members.
    pub pairs: usize,
    pub correct: usize,
    /// Percentage of correctly ordered pairs.
    pub accuracy: Option<T>,
    /// Random-baseline accuracy over the same pairs.
    pub random_accuracy: Option<T>,
    /// Wilcoxon signed-rank p-value of per-pair correctness against the
    /// random baseline.
    pub p_value: Option<T>,
    /// Significantly more accurate than random.
    pub significant: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct AccuracyTable<T> {
    pub dataset: String,
    pub dimension: Dimension,
    pub quantized: Option<QuantStrategy>,
    pub pairs: usize,
    pub random: AccuracyCell<T>,
    pub metrics: Vec<AccuracyCell<T>>,
}

#[derive(Debug, Clone)]
pub struct AccuracyOptions {
    /// Restrict to pairs of one dataset.
    pub dataset: Option<String>,
    pub quantize: Option<QuantStrategy>,
    pub epsilon: f64,
    pub seed: u64,
    pub alpha: f64,
    pub zero_method: ZeroMethod,
}

impl Default for AccuracyOptions {
    fn default() -> Self {
        let c = AnalysisConfig::default();
        AccuracyOptions {
            dataset: None,
            quantize: None,
            epsilon: c.epsilon,
            seed: c.seed,
            alpha: c.alpha,
            zero_method: c.zero_method,
        }
    }
}

fn relation(a: f64, b: f64, epsilon: f64) -> Ordering {
    if (a - b).abs() <= epsilon {
        Ordering::Equal
    } else {
        a.total_cmp(&b)
    }
}

struct Setup<'a, T> {
    human: &'a [T],
    random: &'a [T],
    pairs: &'a [(usize, usize)],
    epsilon: f64,
    alpha: f64,
    zero_method: ZeroMethod,
}

impl<T: Scalar> Setup<'_, T> {
    fn correct(&self, values: &[T], (a, b): (usize, usize), reversed: bool) -> bool {
        let h = self.human[a].as_f64().total_cmp(&self.human[b].as_f64());
        let m = relation(values[a].as_f64(), values[b].as_f64(), self.epsilon);
        h == if reversed { m.reverse() } else { m }
    }

    fn random_cell(&self) -> AccuracyCell<T> {
        let correct = self
            .pairs
            .iter()
            .filter(|&&p| self.correct(self.random, p, false))
            .count();
        let acc = percent::<T>(correct, self.pairs.len());
        AccuracyCell {
            metric: None,
            pairs: self.pairs.len(),
            correct,
            accuracy: acc,
            random_accuracy: acc,
            p_value: None,
            significant: false,
        }
    }

    /// `reversed` flips the metric relation (lower is better).
    fn cell(&self, field: MetricField, values: &[Option<T>], reversed: bool) -> AccuracyCell<T> {
        let dense: Vec<T> = values.iter().map(|v| v.unwrap_or_else(T::nan)).collect();
        let pairs: Vec<(usize, usize)> = self
            .pairs
            .iter()
            .copied()
            .filter(|&(a, b)| values[a].is_some() && values[b].is_some())
            .collect();
        let hits: Vec<T> = pairs
            .iter()
            .map(|&p| {
                if self.correct(&dense, p, reversed) {
                    T::one()
                } else {
                    T::zero()
                }
            })
            .collect();
        let rand_hits: Vec<T> = pairs
            .iter()
            .map(|&p| {
                if self.correct(self.random, p, false) {
                    T::one()
                } else {
                    T::zero()
                }
            })
            .collect();
        let correct = hits.iter().filter(|&&h| h == T::one()).count();
        let rand_correct = rand_hits.iter().filter(|&&h| h == T::one()).count();
        let test = if pairs.is_empty() {
            None
        } else {
            wilcoxon_signed_rank_with(&hits, &rand_hits, self.zero_method, WilcoxonMethod::Auto).ok()
        };
        let p_value = test.map(|t| t.p_value);
        AccuracyCell {
            metric: Some(field),
            pairs: pairs.len(),
            correct,
            accuracy: percent(correct, pairs.len()),
            random_accuracy: percent(rand_correct, pairs.len()),
            p_value,
            significant: p_value.is_some_and(|p| p.as_f64() < self.alpha) && correct > rand_correct,
        }
    }
}

fn percent<T: Scalar>(k: usize, n: usize) -> Option<T> {
    (n > 0).then(|| T::of(100.0 * k as f64 / n as f64))
}

/// Quantizes `values` separately within each dataset. Absent values stay
/// absent. Returns the datasets whose values were constant.
fn quantize_by_dataset<T: Scalar>(
    corpus: &Corpus,
    values: &[Option<T>],
    strategy: QuantStrategy,
    reversed: bool,
) -> (Vec<Option<T>>, Vec<String>) {
    let mut out = vec![None; values.len()];
    let mut constant = Vec::new();
    for d in corpus.datasets() {
        let idx: Vec<usize> = members(corpus, Some(d))
            .into_iter()
            .filter(|&i| values[i].is_some())
            .collect();
        let raw: Vec<T> = idx.iter().filter_map(|&i| values[i]).collect();
        let q = quantize(&raw, strategy, reversed);
        if q.constant {
            constant.push(d.to_string());
        }
        for (&i, &v) in idx.iter().zip(&q.values) {
            out[i] = Some(T::of(f64::from(v)));
        }
    }
    (out, constant)
}

fn scoped_pairs(corpus: &Corpus, dataset: Option<&str>) -> Vec<(usize, usize)> {
    corpus
        .pairs()
        .into_iter()
        .filter(|&(a, _)| dataset.is_none_or(|d| corpus.instances[a].dataset == d))
        .collect()
}

/// Share of same-MR output pairs that `field` orders like the median human
/// ratings of `dimension`, ties included, against a seeded random score.
pub fn ranking_accuracy<T: Scalar>(
    corpus: &Corpus,
    scores: &[MetricVector<T>],
    field: MetricField,
    dimension: Dimension,
    options: &AccuracyOptions,
) -> Result<AccuracyCell<T>> {
    check_aligned(corpus, scores)?;
    let pairs = scoped_pairs(corpus, options.dataset.as_deref());
    if pairs.is_empty() {
        return Err(Error::InvalidInput("no output pairs to rank".into()));
    }
    let human = medians(corpus, dimension);
    let mut values = column(scores, field);
    let mut random = random_baseline::<T>(corpus.len(), options.seed);
    let mut epsilon = options.epsilon;
    let mut reversed = field.is_reversed();
    if let Some(strategy) = options.quantize {
        values = quantize_by_dataset(corpus, &values, strategy, reversed).0;
        let r: Vec<Option<T>> = random.iter().copied().map(Some).collect();
        random = quantize_by_dataset(corpus, &r, strategy, false)
            .0
            .into_iter()
            .flatten()
            .collect();
        epsilon = 0.0;
        reversed = false;
    }
    let setup = Setup {
        human: &human,
        random: &random,
        pairs: &pairs,
        epsilon,
        alpha: options.alpha,
        zero_method: options.zero_method,
    };
    Ok(setup.cell(field, &values, reversed))
}

/// Accuracy tables per dataset and over all data for every dimension and
/// every metric. With `quantized`, metric and random scores are first
/// quantized within each dataset using `config.quant_strategy`.
pub fn accuracy_tables<T: Scalar>(
    corpus: &Corpus,
    scores: &[MetricVector<T>],
    config: &AnalysisConfig,
    quantized: bool,
    warnings: &mut Warnings,
) -> Result<Vec<AccuracyTable<T>>> {
    check_aligned(corpus, scores)?;
    let strategy = quantized.then_some(config.quant_strategy);
    let mut columns: Vec<Vec<Option<T>>> = MetricField::ALL.into_iter().map(|f| column(scores, f)).collect();
    let mut random = random_baseline::<T>(corpus.len(), config.seed);
    let epsilon = if quantized { 0.0 } else { config.epsilon };
    if let Some(s) = strategy {
        for f in MetricField::ALL {
            let (q, constant) = quantize_by_dataset(corpus, &columns[f.index()], s, f.is_reversed());
            for d in constant {
                warnings.push(format!("{d}: {f} is constant, quantized to {SCALE_MAX}"));
            }
            columns[f.index()] = q;
        }
        let r: Vec<Option<T>> = random.iter().copied().map(Some).collect();
        random = quantize_by_dataset(corpus, &r, s, false)
            .0
            .into_iter()
            .flatten()
            .collect();
    }

    let mut scopes: Vec<Option<&str>> = corpus.datasets().into_iter().map(Some).collect();
    scopes.push(None);
    let mut out = Vec::new();
    for scope in scopes {
        let pairs = scoped_pairs(corpus, scope);
        let label = scope.unwrap_or(ALL_DATA).to_string();
        if pairs.is_empty() {
            warnings.push(format!("{label}: no output pairs, ranking accuracy skipped"));
            continue;
        }
        for dim in Dimension::ALL {
            let human = medians(corpus, dim);
            let setup = Setup {
                human: &human,
                random: &random,
                pairs: &pairs,
                epsilon,
                alpha: config.alpha,
                zero_method: config.zero_method,
            };
            let metrics = MetricField::ALL
                .into_iter()
                // quantized scales are already oriented higher-is-better
                .map(|f| setup.cell(f, &columns[f.index()], f.is_reversed() && !quantized))
                .collect();
            out.push(AccuracyTable {
                dataset: label.clone(),
                dimension: dim,
                quantized: strategy,
                pairs: pairs.len(),
                random: setup.random_cell(),
                metrics,
            });
        }
    }
    Ok(out)
}
