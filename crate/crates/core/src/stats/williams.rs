use serde::Serialize;

use super::dist::student_t_two_sided;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WilliamsResult<T> {
    pub t: T,
    pub p_value: T,
}

/// Williams' test for the difference between dependent correlations r12
/// and r13 that share variable 1, given r23 and sample size n (n - 3 df).
pub fn williams_test<T: Scalar>(r12: T, r13: T, r23: T, n: usize) -> Result<WilliamsResult<T>> {
    if n < 4 {
        return Err(Error::InvalidInput(format!("Williams test needs n >= 4, got {n}")));
    }
    if [r12, r13, r23].iter().any(|r| !(r.abs() <= T::one())) {
        return Err(Error::InvalidInput("correlations must lie in [-1, 1]".into()));
    }
    let one = T::one();
    let two = T::of(2.0);
    let k = one - r12 * r12 - r13 * r13 - r23 * r23 + two * r12 * r13 * r23;
    if !(k > T::zero()) {
        return Err(Error::Degenerate(format!(
            "Williams determinant K = {k} is not positive"
        )));
    }
    let nm1 = T::of_usize(n - 1);
    let nm3 = T::of_usize(n - 3);
    let rbar = (r12 + r13) / two;
    let denom = two * k * nm1 / nm3 + rbar * rbar * (one - r23).powi(3);
    let t = (r12 - r13) * (nm1 * (one + r23) / denom).sqrt();
    let p = student_t_two_sided(t.as_f64(), (n - 3) as f64);
    Ok(WilliamsResult { t, p_value: T::of(p) })
}
