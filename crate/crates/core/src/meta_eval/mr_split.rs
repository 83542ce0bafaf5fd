use serde::Serialize;

use super::{check_aligned, column, medians, members, present, CorrCell, Warnings, ALL_DATA};
use crate::corpus::{Corpus, Dimension};
use crate::error::Result;
use crate::metric::{MetricField, MetricVector};
use crate::scalar::Scalar;
use crate::stats::fisher_z_compare;

#[derive(Debug, Clone, Serialize)]
pub struct MrSplitRow<T> {
    pub metric: MetricField,
    pub inform: CorrCell<T>,
    pub other: CorrCell<T>,
    /// Fisher z comparison of the two independent correlations.
    pub z: Option<T>,
    pub p_value: Option<T>,
    pub significant: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct MrSplit<T> {
    pub scope: String,
    pub dimension: Dimension,
    pub inform_n: usize,
    pub other_n: usize,
    pub rows: Vec<MrSplitRow<T>>,
}

/// Correlations for instances whose MR is an inform act against all other
/// act types, compared with Fisher's z test.
pub fn mr_type_split<T: Scalar>(
    corpus: &Corpus,
    scores: &[MetricVector<T>],
    dataset: Option<&str>,
    dimension: Dimension,
    alpha: f64,
    warnings: &mut Warnings,
) -> Result<MrSplit<T>> {
    check_aligned(corpus, scores)?;
    let label = dataset.unwrap_or(ALL_DATA).to_string();
    let (inform, other): (Vec<usize>, Vec<usize>) = members(corpus, dataset)
        .into_iter()
        .partition(|&i| corpus.instances[i].mr.is_inform());
    if inform.is_empty() || other.is_empty() {
        warnings.push(format!(
            "{label}/{dimension}: MR-type split has a single group ({} inform, {} other)",
            inform.len(),
            other.len()
        ));
    }
    let human = medians::<T>(corpus, dimension);
    let rows = MetricField::ALL
        .into_iter()
        .map(|f| {
            let col = column(scores, f);
            let cell = |idx: &[usize]| {
                let (x, y) = present(&col, &human, idx);
                CorrCell::compute(&x, &y, alpha)
            };
            let (a, b) = (cell(&inform), cell(&other));
            let test = match (a.rho, b.rho) {
                (Some(r1), Some(r2)) => fisher_z_compare(r1, a.n, r2, b.n).ok(),
                _ => None,
            };
            MrSplitRow {
                metric: f,
                inform: a,
                other: b,
                z: test.map(|t| t.z),
                p_value: test.map(|t| t.p_value),
                significant: test.is_some_and(|t| t.p_value.as_f64() < alpha),
            }
        })
        .collect();
    Ok(MrSplit {
        scope: label,
        dimension,
        inform_n: inform.len(),
        other_n: other.len(),
        rows,
    })
}
