use serde::Serialize;

use super::dist::normal_two_sided;
use super::rank::rank_with_ties;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MannWhitneyResult<T> {
    /// min(U1, U2).
    pub u: T,
    pub p_value: T,
}

/// Two-sided Mann–Whitney U test, normal approximation with tie and
/// continuity correction.
pub fn mann_whitney_u<T: Scalar>(x: &[T], y: &[T]) -> Result<MannWhitneyResult<T>> {
    if x.is_empty() || y.is_empty() {
        return Err(Error::InvalidInput("Mann-Whitney U needs two non-empty samples".into()));
    }
    let pooled: Vec<f64> = x.iter().chain(y).map(|v| v.as_f64()).collect();
    if pooled.iter().any(|v| v.is_nan()) {
        return Err(Error::InvalidInput("NaN in Mann-Whitney sample".into()));
    }
    let ranks = rank_with_ties(&pooled);
    let (n1, n2) = (x.len() as f64, y.len() as f64);
    let n = n1 + n2;
    let r1: f64 = ranks[..x.len()].iter().sum();
    let u1 = r1 - n1 * (n1 + 1.0) / 2.0;
    let u = u1.min(n1 * n2 - u1);

    let mut sorted = pooled;
    sorted.sort_by(f64::total_cmp);
    let ties: f64 = sorted
        .chunk_by(|a, b| a == b)
        .map(|g| {
            let t = g.len() as f64;
            t * t * t - t
        })
        .sum();
    let var = n1 * n2 / 12.0 * ((n + 1.0) - ties / (n * (n - 1.0)));
    let p = if var <= 0.0 {
        1.0
    } else {
        let z = ((n1 * n2 / 2.0 - u).abs() - 0.5).max(0.0) / var.sqrt();
        normal_two_sided(z)
    };
    Ok(MannWhitneyResult {
        u: T::of(u),
        p_value: T::of(p),
    })
}
