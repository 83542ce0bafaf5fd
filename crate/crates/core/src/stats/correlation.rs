use serde::Serialize;

use super::dist::{normal_two_sided, student_t_two_sided};
use super::rank::rank_with_ties;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CorrelationResult<T> {
    pub rho: T,
    pub n: usize,
    pub p_value: T,
}

/// Pearson correlation. Errors on unequal lengths, fewer than two points or
/// a constant side.
pub fn pearson<T: Scalar>(x: &[T], y: &[T]) -> Result<T> {
    if x.len() != y.len() {
        return Err(Error::InvalidInput(format!(
            "paired samples differ in length ({} vs {})",
            x.len(),
            y.len()
        )));
    }
    if x.len() < 2 {
        return Err(Error::UndefinedCorrelation("fewer than two observations"));
    }
    let n = T::of_usize(x.len());
    let mx = x.iter().copied().sum::<T>() / n;
    let my = y.iter().copied().sum::<T>() / n;
    let (mut sxy, mut sxx, mut syy) = (T::zero(), T::zero(), T::zero());
    for (&a, &b) in x.iter().zip(y) {
        let (dx, dy) = (a - mx, b - my);
        sxy = sxy + dx * dy;
        sxx = sxx + dx * dx;
        syy = syy + dy * dy;
    }
    if sxx == T::zero() || syy == T::zero() {
        return Err(Error::UndefinedCorrelation("constant input"));
    }
    Ok((sxy / (sxx * syy).sqrt()).max(-T::one()).min(T::one()))
}

/// Spearman's rho (Pearson over tie-averaged ranks) with a two-sided
/// p-value from `t = rho * sqrt((n - 2) / (1 - rho²))` on n - 2 degrees of
/// freedom.
pub fn spearman<T: Scalar>(x: &[T], y: &[T]) -> Result<CorrelationResult<T>> {
    if x.len() != y.len() {
        return Err(Error::InvalidInput(format!(
            "paired samples differ in length ({} vs {})",
            x.len(),
            y.len()
        )));
    }
    let n = x.len();
    if n < 3 {
        return Err(Error::UndefinedCorrelation("fewer than three observations"));
    }
    if x.iter().chain(y).any(|v| v.is_nan()) {
        return Err(Error::InvalidInput("NaN in correlated values".into()));
    }
    let rho = pearson(&rank_with_ties(x), &rank_with_ties(y))?;
    let r = rho.as_f64();
    let p = if r.abs() >= 1.0 {
        0.0
    } else {
        let t = r * ((n as f64 - 2.0) / (1.0 - r * r)).sqrt();
        student_t_two_sided(t, n as f64 - 2.0)
    };
    Ok(CorrelationResult {
        rho,
        n,
        p_value: T::of(p),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FisherZResult<T> {
    pub z: T,
    pub p_value: T,
}

/// Compares correlations from two independent samples via Fisher's
/// z-transform. Each sample needs n ≥ 4.
pub fn fisher_z_compare<T: Scalar>(r1: T, n1: usize, r2: T, n2: usize) -> Result<FisherZResult<T>> {
    if n1 < 4 || n2 < 4 {
        return Err(Error::InvalidInput(
            "Fisher z comparison needs n >= 4 per sample".into(),
        ));
    }
    let bound = 1.0 - 1e-12;
    let z1 = r1.as_f64().clamp(-bound, bound).atanh();
    let z2 = r2.as_f64().clamp(-bound, bound).atanh();
    let se = (1.0 / (n1 as f64 - 3.0) + 1.0 / (n2 as f64 - 3.0)).sqrt();
    let z = (z1 - z2) / se;
    Ok(FisherZResult {
        z: T::of(z),
        p_value: T::of(normal_two_sided(z)),
    })
}
