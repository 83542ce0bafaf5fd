use serde::Serialize;

use super::dist::normal_two_sided;
use super::rank::rank_with_ties;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Largest number of non-zero differences evaluated by exact enumeration.
pub const WILCOXON_EXACT_MAX_N: usize = 12;

/// Treatment of zero differences.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ZeroMethod {
    /// Drop zeros before ranking.
    #[default]
    Wilcox,
    /// Rank zeros with the rest, then drop them from the sums.
    Pratt,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WilcoxonMethod {
    /// Exact up to [`WILCOXON_EXACT_MAX_N`], normal approximation above.
    #[default]
    Auto,
    Exact,
    Normal,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WilcoxonResult<T> {
    /// min(W+, W-).
    pub w: T,
    pub p_value: T,
    /// Non-zero differences.
    pub n: usize,
    pub exact: bool,
    /// Every difference was zero; p is 1 by convention.
    pub all_zero: bool,
}

/// Two-sided Wilcoxon signed-rank test of paired samples.
pub fn wilcoxon_signed_rank<T: Scalar>(a: &[T], b: &[T]) -> Result<WilcoxonResult<T>> {
    wilcoxon_signed_rank_with(a, b, ZeroMethod::Wilcox, WilcoxonMethod::Auto)
}

pub fn wilcoxon_signed_rank_with<T: Scalar>(
    a: &[T],
    b: &[T],
    zeros: ZeroMethod,
    method: WilcoxonMethod,
) -> Result<WilcoxonResult<T>> {
    if a.len() != b.len() {
        return Err(Error::InvalidInput(format!(
            "paired samples differ in length ({} vs {})",
            a.len(),
            b.len()
        )));
    }
    let diffs: Vec<f64> = a.iter().zip(b).map(|(x, y)| x.as_f64() - y.as_f64()).collect();
    if diffs.iter().any(|d| d.is_nan()) {
        return Err(Error::InvalidInput("NaN in paired samples".into()));
    }
    let ranked: Vec<f64> = match zeros {
        ZeroMethod::Wilcox => diffs.iter().copied().filter(|&d| d != 0.0).collect(),
        ZeroMethod::Pratt => diffs.clone(),
    };
    let ranks = rank_with_ties(&ranked.iter().map(|d| d.abs()).collect::<Vec<_>>());
    let signed: Vec<(f64, f64)> = ranked
        .iter()
        .zip(&ranks)
        .filter(|(d, _)| **d != 0.0)
        .map(|(&d, &r)| (d, r))
        .collect();
    let n = signed.len();
    if n == 0 {
        log::warn!("Wilcoxon: all differences are zero, reporting p = 1");
        return Ok(WilcoxonResult {
            w: T::zero(),
            p_value: T::one(),
            n: 0,
            exact: false,
            all_zero: true,
        });
    }
    let w_plus: f64 = signed.iter().filter(|(d, _)| *d > 0.0).map(|(_, r)| r).sum();
    let total: f64 = signed.iter().map(|(_, r)| r).sum();
    let w = w_plus.min(total - w_plus);
    let exact = match method {
        WilcoxonMethod::Auto => n <= WILCOXON_EXACT_MAX_N,
        WilcoxonMethod::Exact => true,
        WilcoxonMethod::Normal => false,
    };
    let p = if exact {
        let doubled: Vec<usize> = signed.iter().map(|(_, r)| (r * 2.0).round() as usize).collect();
        exact_p(&doubled, (w * 2.0).round() as usize)
    } else {
        let mean = total / 2.0;
        let sd = (signed.iter().map(|(_, r)| r * r).sum::<f64>() / 4.0).sqrt();
        if sd == 0.0 {
            1.0
        } else {
            let z = ((mean - w).abs() - 0.5).max(0.0) / sd;
            normal_two_sided(z)
        }
    };
    Ok(WilcoxonResult {
        w: T::of(w),
        p_value: T::of(p),
        n,
        exact,
        all_zero: false,
    })
}

/// Two-sided exact p-value from the null distribution of the positive-rank
/// sum, counted over all sign assignments. Ranks are doubled to stay integral
/// under ties.
fn exact_p(doubled: &[usize], w2: usize) -> f64 {
    let total: usize = doubled.iter().sum();
    let mut counts = vec![0f64; total + 1];
    counts[0] = 1.0;
    for &r in doubled {
        for s in (r..=total).rev() {
            counts[s] += counts[s - r];
        }
    }
    let all = 2f64.powi(doubled.len() as i32);
    let tail: f64 = counts[..=w2.min(total)].iter().sum();
    (2.0 * tail / all).min(1.0)
}
