use serde::Serialize;

use super::dist::f_upper;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum IccModel {
    /// ICC(1,1): one-way random effects, single rater.
    OneWay,
    /// ICC(2,1): two-way random effects, single rater.
    TwoWaySingle,
    /// ICC(2,k): two-way random effects, mean of k raters.
    TwoWayAverage,
}

impl IccModel {
    pub const ALL: [IccModel; 3] = [IccModel::OneWay, IccModel::TwoWaySingle, IccModel::TwoWayAverage];

    pub fn name(self) -> &'static str {
        match self {
            IccModel::OneWay => "one_way",
            IccModel::TwoWaySingle => "two_way_single",
            IccModel::TwoWayAverage => "two_way_average",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IccResult<T> {
    pub icc: T,
    pub model: IccModel,
    /// F statistic behind `p_value`.
    pub f: T,
    pub p_value: T,
}

struct Anova<T> {
    n: usize,
    k: usize,
    ms_rows: T,
    ms_cols: T,
    ms_error: T,
    ms_within: T,
}

fn anova<T: Scalar, R: AsRef<[T]>>(ratings: &[R]) -> Result<Anova<T>> {
    let n = ratings.len();
    if n < 2 {
        return Err(Error::InvalidInput("ICC needs at least 2 items".into()));
    }
    let k = ratings[0].as_ref().len();
    if k < 2 {
        return Err(Error::InvalidInput("ICC needs at least 2 raters".into()));
    }
    if let Some(i) = ratings.iter().position(|r| r.as_ref().len() != k) {
        return Err(Error::InvalidInput(format!(
            "rating matrix is incomplete: item {i} has {} ratings, expected {k}",
            ratings[i].as_ref().len()
        )));
    }
    if ratings.iter().flat_map(|r| r.as_ref()).any(|v| !v.is_finite()) {
        return Err(Error::InvalidInput("rating matrix has missing values".into()));
    }
    let (nt, kt) = (T::of_usize(n), T::of_usize(k));
    let grand = ratings.iter().flat_map(|r| r.as_ref()).copied().sum::<T>() / (nt * kt);
    let row_means: Vec<T> = ratings
        .iter()
        .map(|r| r.as_ref().iter().copied().sum::<T>() / kt)
        .collect();
    let col_means: Vec<T> = (0..k)
        .map(|j| ratings.iter().map(|r| r.as_ref()[j]).sum::<T>() / nt)
        .collect();
    let ss_total: T = ratings
        .iter()
        .flat_map(|r| r.as_ref())
        .map(|&v| (v - grand) * (v - grand))
        .sum();
    let ss_rows = kt * row_means.iter().map(|&m| (m - grand) * (m - grand)).sum::<T>();
    let ss_cols = nt * col_means.iter().map(|&m| (m - grand) * (m - grand)).sum::<T>();
    let ss_error = (ss_total - ss_rows - ss_cols).max(T::zero());
    let ss_within = (ss_total - ss_rows).max(T::zero());
    let df_rows = T::of_usize(n - 1);
    Ok(Anova {
        n,
        k,
        ms_rows: ss_rows / df_rows,
        ms_cols: ss_cols / T::of_usize(k - 1),
        ms_error: ss_error / T::of_usize((n - 1) * (k - 1)),
        ms_within: ss_within / T::of_usize(n * (k - 1)),
    })
}

fn ratio<T: Scalar>(num: T, den: T) -> T {
    if den == T::zero() {
        if num > T::zero() {
            T::infinity()
        } else {
            T::zero()
        }
    } else {
        num / den
    }
}

fn from_anova<T: Scalar>(a: &Anova<T>, model: IccModel) -> IccResult<T> {
    let (nt, kt) = (T::of_usize(a.n), T::of_usize(a.k));
    let one = T::one();
    let (icc, f, df2) = match model {
        IccModel::OneWay => (
            ratio(a.ms_rows - a.ms_within, a.ms_rows + (kt - one) * a.ms_within),
            ratio(a.ms_rows, a.ms_within),
            a.n * (a.k - 1),
        ),
        IccModel::TwoWaySingle => (
            ratio(
                a.ms_rows - a.ms_error,
                a.ms_rows + (kt - one) * a.ms_error + kt * (a.ms_cols - a.ms_error) / nt,
            ),
            ratio(a.ms_rows, a.ms_error),
            (a.n - 1) * (a.k - 1),
        ),
        IccModel::TwoWayAverage => (
            ratio(a.ms_rows - a.ms_error, a.ms_rows + (a.ms_cols - a.ms_error) / nt),
            ratio(a.ms_rows, a.ms_error),
            (a.n - 1) * (a.k - 1),
        ),
    };
    let p = f_upper(f.as_f64(), (a.n - 1) as f64, df2 as f64);
    IccResult {
        icc,
        model,
        f,
        p_value: T::of(p),
    }
}

/// Intra-class correlation of an items × raters matrix from the ANOVA mean
/// squares. The p-value is the F test of the item effect.
pub fn icc<T: Scalar, R: AsRef<[T]>>(ratings: &[R], model: IccModel) -> Result<IccResult<T>> {
    Ok(from_anova(&anova(ratings)?, model))
}

/// All three models from one ANOVA pass.
pub fn icc_all<T: Scalar, R: AsRef<[T]>>(ratings: &[R]) -> Result<[IccResult<T>; 3]> {
    let a = anova(ratings)?;
    Ok(IccModel::ALL.map(|m| from_anova(&a, m)))
}
