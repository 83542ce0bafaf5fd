use rayon::prelude::*;
use serde::Serialize;

use super::{check_aligned, column, medians, present, CorrCell, Warnings, ALL_DATA, MIN_GROUP};
use crate::corpus::{Corpus, Dimension};
use crate::error::Result;
use crate::metric::{MetricField, MetricVector};
use crate::scalar::Scalar;
use crate::stats::{spearman, williams_test};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Grouping {
    DatasetSystem,
    Dataset,
    System,
    All,
}

impl Grouping {
    pub fn name(self) -> &'static str {
        match self {
            Grouping::DatasetSystem => "dataset_system",
            Grouping::Dataset => "dataset",
            Grouping::System => "system",
            Grouping::All => "all",
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Group {
    pub grouping: Grouping,
    pub dataset: Option<String>,
    pub system: Option<String>,
    #[serde(skip)]
    pub members: Vec<usize>,
}

impl Group {
    pub fn label(&self) -> String {
        match (&self.dataset, &self.system) {
            (Some(d), Some(s)) => format!("{d}/{s}"),
            (Some(d), None) => d.clone(),
            (None, Some(s)) => s.clone(),
            (None, None) => ALL_DATA.to_string(),
        }
    }
}

/// Every (dataset, system), then every dataset, every system and the whole
/// corpus. Order follows first appearance in the corpus.
pub fn groups(corpus: &Corpus) -> Vec<Group> {
    let idx = |pred: &dyn Fn(&crate::corpus::Instance) -> bool| -> Vec<usize> {
        corpus
            .instances
            .iter()
            .enumerate()
            .filter(|(_, i)| pred(i))
            .map(|(i, _)| i)
            .collect()
    };
    let mut out = Vec::new();
    for d in corpus.datasets() {
        for s in corpus.systems(d) {
            out.push(Group {
                grouping: Grouping::DatasetSystem,
                dataset: Some(d.to_string()),
                system: Some(s.to_string()),
                members: idx(&|i| i.dataset == d && i.system == s),
            });
        }
    }
    for d in corpus.datasets() {
        out.push(Group {
            grouping: Grouping::Dataset,
            dataset: Some(d.to_string()),
            system: None,
            members: idx(&|i| i.dataset == d),
        });
    }
    let mut systems: Vec<&str> = Vec::new();
    for inst in &corpus.instances {
        if !systems.contains(&inst.system.as_str()) {
            systems.push(&inst.system);
        }
    }
    for s in systems {
        out.push(Group {
            grouping: Grouping::System,
            dataset: None,
            system: Some(s.to_string()),
            members: idx(&|i| i.system == s),
        });
    }
    out.push(Group {
        grouping: Grouping::All,
        dataset: None,
        system: None,
        members: (0..corpus.len()).collect(),
    });
    out
}

#[derive(Debug, Clone, Serialize)]
pub struct MetricCorrelations<T> {
    pub metric: MetricField,
    /// Indexed by [`Dimension::index`].
    pub dimensions: [CorrCell<T>; 3],
}

/// Strongest word-based and grammar-based metric for one dimension by |ρ|.
#[derive(Debug, Clone, Serialize)]
pub struct BestMark<T> {
    pub dimension: Dimension,
    pub wbm: Option<MetricField>,
    pub wbm_rho: Option<T>,
    pub gbm: Option<MetricField>,
    pub gbm_rho: Option<T>,
}

#[derive(Debug, Clone, Serialize)]
pub struct WilliamsEntry<T> {
    pub metric_a: MetricField,
    pub metric_b: MetricField,
    pub n: usize,
    pub t: Option<T>,
    pub p_value: Option<T>,
    /// The two metrics' correlations with the dimension do not differ
    /// significantly.
    pub indistinguishable: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct WilliamsMatrix<T> {
    pub dimension: Dimension,
    /// Pairs with `metric_a` before `metric_b` in report order.
    pub entries: Vec<WilliamsEntry<T>>,
}

/// Metric-against-metric Spearman ρ.
#[derive(Debug, Clone, Serialize)]
pub struct MetricPair<T> {
    pub metric_a: MetricField,
    pub metric_b: MetricField,
    pub n: usize,
    pub rho: Option<T>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CorrelationTable<T> {
    pub group: Group,
    pub n: usize,
    pub metrics: Vec<MetricCorrelations<T>>,
    pub best: Vec<BestMark<T>>,
    /// Only for (dataset, system) groups.
    pub williams: Option<Vec<WilliamsMatrix<T>>>,
    /// Only for (dataset, system) groups.
    pub metric_matrix: Option<Vec<MetricPair<T>>>,
}

fn best<T: Scalar>(rows: &[MetricCorrelations<T>], dim: Dimension, wbm: bool) -> (Option<MetricField>, Option<T>) {
    let mut out: Option<(MetricField, T)> = None;
    for row in rows.iter().filter(|r| r.metric.is_word_based() == wbm) {
        if let Some(rho) = row.dimensions[dim.index()].rho {
            if out.is_none_or(|(_, b)| rho.abs() > b.abs()) {
                out = Some((row.metric, rho));
            }
        }
    }
    (out.map(|o| o.0), out.map(|o| o.1))
}

fn both_present<T: Scalar>(a: &[Option<T>], b: &[Option<T>], members: &[usize]) -> Vec<usize> {
    members
        .iter()
        .copied()
        .filter(|&i| a[i].is_some() && b[i].is_some())
        .collect()
}

fn rho_over<T: Scalar>(x: &[Option<T>], y: &[T], idx: &[usize]) -> Option<T> {
    let (a, b) = present(x, y, idx);
    spearman(&a, &b).ok().map(|r| r.rho)
}

fn orientation<T: Scalar>(field: usize) -> T {
    if MetricField::ALL[field].is_reversed() {
        -T::one()
    } else {
        T::one()
    }
}

fn williams_matrix<T: Scalar>(
    columns: &[Vec<Option<T>>],
    human: &[T],
    members: &[usize],
    cells: &[MetricCorrelations<T>],
    dim: Dimension,
    alpha: f64,
) -> WilliamsMatrix<T> {
    let defined: Vec<usize> = (0..columns.len())
        .filter(|&f| cells[f].dimensions[dim.index()].rho.is_some())
        .collect();
    let mut entries = Vec::new();
    for (ai, &a) in defined.iter().enumerate() {
        for &b in &defined[ai + 1..] {
            let idx = both_present(&columns[a], &columns[b], members);
            let complete =
                idx.len() == cells[a].dimensions[dim.index()].n && idx.len() == cells[b].dimensions[dim.index()].n;
            let (r12, r13) = if complete {
                (
                    cells[a].dimensions[dim.index()].rho,
                    cells[b].dimensions[dim.index()].rho,
                )
            } else {
                (rho_over(&columns[a], human, &idx), rho_over(&columns[b], human, &idx))
            };
            let va: Vec<T> = idx.iter().filter_map(|&i| columns[a][i]).collect();
            let vb: Vec<T> = idx.iter().filter_map(|&i| columns[b][i]).collect();
            let r23 = spearman(&va, &vb).ok().map(|r| r.rho);
            // reversed-scale metrics are flipped so both correlations point the same way
            let (sa, sb) = (orientation::<T>(a), orientation::<T>(b));
            let test = match (r12, r13, r23) {
                (Some(r12), Some(r13), Some(r23)) => williams_test(sa * r12, sb * r13, sa * sb * r23, idx.len()).ok(),
                _ => None,
            };
            entries.push(WilliamsEntry {
                metric_a: MetricField::ALL[a],
                metric_b: MetricField::ALL[b],
                n: idx.len(),
                t: test.map(|w| w.t),
                p_value: test.map(|w| w.p_value),
                indistinguishable: test.is_none_or(|w| !(w.p_value.as_f64() < alpha)),
            });
        }
    }
    WilliamsMatrix {
        dimension: dim,
        entries,
    }
}

fn metric_matrix<T: Scalar>(columns: &[Vec<Option<T>>], members: &[usize]) -> Vec<MetricPair<T>> {
    let mut out = Vec::new();
    for a in 0..columns.len() {
        for b in a + 1..columns.len() {
            let idx = both_present(&columns[a], &columns[b], members);
            let va: Vec<T> = idx.iter().filter_map(|&i| columns[a][i]).collect();
            let vb: Vec<T> = idx.iter().filter_map(|&i| columns[b][i]).collect();
            out.push(MetricPair {
                metric_a: MetricField::ALL[a],
                metric_b: MetricField::ALL[b],
                n: idx.len(),
                rho: spearman(&va, &vb).ok().map(|r| r.rho),
            });
        }
    }
    out
}

/// Spearman ρ of every metric against every median human dimension over
/// one group, with pairwise deletion of absent metric values. Groups of
/// (dataset, system) also get Williams matrices and metric-vs-metric ρ.
pub fn correlation_table<T: Scalar>(
    corpus: &Corpus,
    scores: &[MetricVector<T>],
    group: &Group,
    alpha: f64,
) -> Result<CorrelationTable<T>> {
    check_aligned(corpus, scores)?;
    let columns: Vec<Vec<Option<T>>> = MetricField::ALL.into_iter().map(|f| column(scores, f)).collect();
    let humans: Vec<Vec<T>> = Dimension::ALL.into_iter().map(|d| medians(corpus, d)).collect();
    let members = &group.members;

    let metrics: Vec<MetricCorrelations<T>> = MetricField::ALL
        .into_iter()
        .map(|f| MetricCorrelations {
            metric: f,
            dimensions: Dimension::ALL.map(|d| {
                let (x, y) = present(&columns[f.index()], &humans[d.index()], members);
                CorrCell::compute(&x, &y, alpha)
            }),
        })
        .collect();
    let best = Dimension::ALL
        .into_iter()
        .map(|d| {
            let (wbm, wbm_rho) = best(&metrics, d, true);
            let (gbm, gbm_rho) = best(&metrics, d, false);
            BestMark {
                dimension: d,
                wbm,
                wbm_rho,
                gbm,
                gbm_rho,
            }
        })
        .collect();
    let detailed = group.grouping == Grouping::DatasetSystem;
    let williams = detailed.then(|| {
        Dimension::ALL
            .into_iter()
            .map(|d| williams_matrix(&columns, &humans[d.index()], members, &metrics, d, alpha))
            .collect()
    });
    let metric_matrix = detailed.then(|| metric_matrix(&columns, members));
    Ok(CorrelationTable {
        group: group.clone(),
        n: members.len(),
        metrics,
        best,
        williams,
        metric_matrix,
    })
}

/// [`correlation_table`] for every group from [`groups`] with at least
/// three instances.
pub fn correlation_tables<T: Scalar>(
    corpus: &Corpus,
    scores: &[MetricVector<T>],
    alpha: f64,
    warnings: &mut Warnings,
) -> Result<Vec<CorrelationTable<T>>> {
    check_aligned(corpus, scores)?;
    let all = groups(corpus);
    for g in all.iter().filter(|g| g.members.len() < MIN_GROUP) {
        warnings.push(format!(
            "correlation group {} has {} instances, skipped",
            g.label(),
            g.members.len()
        ));
    }
    all.par_iter()
        .filter(|g| g.members.len() >= MIN_GROUP)
        .map(|g| correlation_table(corpus, scores, g, alpha))
        .collect()
}
