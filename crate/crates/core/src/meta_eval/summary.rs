use serde::Serialize;

use super::{check_aligned, column, medians, Warnings};
use crate::corpus::{Corpus, Dimension};
use crate::error::Result;
use crate::metric::{MetricField, MetricVector};
use crate::scalar::{mean, sample_sd, Scalar};
use crate::stats::mann_whitney_u;

#[derive(Debug, Clone, Serialize)]
pub struct FieldStat<T> {
    pub field: &'static str,
    pub n: usize,
    pub mean: Option<T>,
    pub sd: Option<T>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SystemStats<T> {
    pub system: String,
    pub n: usize,
    pub fields: Vec<FieldStat<T>>,
}

/// Mann–Whitney comparison of the two systems of a dataset on one field.
#[derive(Debug, Clone, Serialize)]
pub struct FieldTest<T> {
    pub field: &'static str,
    pub u: Option<T>,
    pub p_value: Option<T>,
    pub significant: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct SystemSummary<T> {
    pub dataset: String,
    pub systems: Vec<SystemStats<T>>,
    /// Present only for datasets with exactly two systems.
    pub tests: Option<Vec<FieldTest<T>>>,
}

/// Metric fields then the median human ratings, in report order.
fn field_columns<T: Scalar>(corpus: &Corpus, scores: &[MetricVector<T>]) -> Vec<(&'static str, Vec<Option<T>>)> {
    let mut out: Vec<(&'static str, Vec<Option<T>>)> = MetricField::ALL
        .into_iter()
        .map(|f| (f.name(), column(scores, f)))
        .collect();
    for dim in Dimension::ALL {
        out.push((dim.name(), medians(corpus, dim).into_iter().map(Some).collect()));
    }
    out
}

/// Mean and sample SD of every field per (dataset, system). Datasets with
/// exactly two systems also get a two-sided Mann–Whitney U test per field.
pub fn system_summary<T: Scalar>(
    corpus: &Corpus,
    scores: &[MetricVector<T>],
    alpha: f64,
    warnings: &mut Warnings,
) -> Result<Vec<SystemSummary<T>>> {
    check_aligned(corpus, scores)?;
    let columns = field_columns(corpus, scores);
    let mut out = Vec::new();
    for dataset in corpus.datasets() {
        let mut systems = Vec::new();
        let mut samples: Vec<Vec<Vec<T>>> = Vec::new();
        for system in corpus.systems(dataset) {
            let idx: Vec<usize> = corpus
                .instances
                .iter()
                .enumerate()
                .filter(|(_, i)| i.dataset == dataset && i.system == system)
                .map(|(i, _)| i)
                .collect();
            if idx.is_empty() {
                warnings.push(format!("{dataset}/{system}: empty group omitted"));
                continue;
            }
            let values: Vec<Vec<T>> = columns
                .iter()
                .map(|(_, col)| idx.iter().filter_map(|&i| col[i]).collect())
                .collect();
            let fields = columns
                .iter()
                .zip(&values)
                .map(|((name, _), v)| FieldStat {
                    field: name,
                    n: v.len(),
                    mean: mean(v),
                    sd: if v.is_empty() { None } else { sample_sd(v) },
                })
                .collect();
            systems.push(SystemStats {
                system: system.to_string(),
                n: idx.len(),
                fields,
            });
            samples.push(values);
        }
        let tests = (samples.len() == 2).then(|| {
            columns
                .iter()
                .enumerate()
                .map(|(f, (name, _))| match mann_whitney_u(&samples[0][f], &samples[1][f]) {
                    Ok(r) => FieldTest {
                        field: name,
                        u: Some(r.u),
                        p_value: Some(r.p_value),
                        significant: r.p_value.as_f64() < alpha,
                    },
                    Err(_) => FieldTest {
                        field: name,
                        u: None,
                        p_value: None,
                        significant: false,
                    },
                })
                .collect()
        });
        out.push(SystemSummary {
            dataset: dataset.to_string(),
            systems,
            tests,
        });
    }
    Ok(out)
}
