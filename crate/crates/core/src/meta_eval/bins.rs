use serde::Serialize;

use super::{check_aligned, column, medians, members, present, CorrCell, ALL_DATA};
use crate::corpus::{Corpus, Dimension};
use crate::error::Result;
use crate::metric::{MetricField, MetricVector};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Bin {
    /// Median ≤ 2.
    Bad,
    Average,
    /// Median ≥ 5.
    Good,
}

impl Bin {
    pub const ALL: [Bin; 3] = [Bin::Bad, Bin::Average, Bin::Good];

    pub fn name(self) -> &'static str {
        match self {
            Bin::Bad => "bad",
            Bin::Average => "average",
            Bin::Good => "good",
        }
    }
}

pub fn bin_of(median: u8) -> Bin {
    match median {
        ..=2 => Bin::Bad,
        5.. => Bin::Good,
        _ => Bin::Average,
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct BinShare<T> {
    pub bin: Bin,
    pub n: usize,
    /// Percentage of the scope's instances.
    pub share: T,
}

/// One metric's ρ within the bad bin next to its ρ over average and good
/// pooled.
#[derive(Debug, Clone, Serialize)]
pub struct BinCorrelation<T> {
    pub metric: MetricField,
    pub bad: CorrCell<T>,
    pub other: CorrCell<T>,
}

#[derive(Debug, Clone, Serialize)]
pub struct BinAnalysis<T> {
    pub scope: String,
    pub dimension: Dimension,
    pub n: usize,
    pub shares: Vec<BinShare<T>>,
    pub correlations: Vec<BinCorrelation<T>>,
}

/// Splits instances by their median rating on `dimension` and correlates
/// every metric within the bad bin and within average and good pooled.
/// Bins under three instances get cells marked `insufficient`.
pub fn bin_analysis<T: Scalar>(
    corpus: &Corpus,
    scores: &[MetricVector<T>],
    dataset: Option<&str>,
    dimension: Dimension,
    alpha: f64,
) -> Result<BinAnalysis<T>> {
    check_aligned(corpus, scores)?;
    let scope = members(corpus, dataset);
    let bins: Vec<Bin> = corpus.instances.iter().map(|i| bin_of(i.median(dimension))).collect();
    let n = scope.len();
    let shares = Bin::ALL
        .into_iter()
        .map(|b| {
            let k = scope.iter().filter(|&&i| bins[i] == b).count();
            BinShare {
                bin: b,
                n: k,
                share: if n == 0 {
                    T::zero()
                } else {
                    T::of(100.0 * k as f64 / n as f64)
                },
            }
        })
        .collect();
    let bad: Vec<usize> = scope.iter().copied().filter(|&i| bins[i] == Bin::Bad).collect();
    let other: Vec<usize> = scope.iter().copied().filter(|&i| bins[i] != Bin::Bad).collect();
    let human = medians::<T>(corpus, dimension);
    let correlations = MetricField::ALL
        .into_iter()
        .map(|f| {
            let col = column(scores, f);
            let cell = |idx: &[usize]| {
                let (x, y) = present(&col, &human, idx);
                CorrCell::compute(&x, &y, alpha)
            };
            BinCorrelation {
                metric: f,
                bad: cell(&bad),
                other: cell(&other),
            }
        })
        .collect();
    Ok(BinAnalysis {
        scope: dataset.unwrap_or(ALL_DATA).to_string(),
        dimension,
        n,
        shares,
        correlations,
    })
}
