//! Distribution tails, evaluated in f64.

use statrs::distribution::{ContinuousCDF, FisherSnedecor, Normal, StudentsT};

/// Two-sided p-value of a Student-t statistic.
pub(crate) fn student_t_two_sided(t: f64, df: f64) -> f64 {
    if t.is_infinite() {
        return 0.0;
    }
    let dist = StudentsT::new(0.0, 1.0, df).expect("df > 0");
    (2.0 * dist.sf(t.abs())).clamp(0.0, 1.0)
}

/// Upper tail of the F distribution.
pub(crate) fn f_upper(f: f64, df1: f64, df2: f64) -> f64 {
    if f.is_infinite() {
        return 0.0;
    }
    if f <= 0.0 {
        return 1.0;
    }
    let dist = FisherSnedecor::new(df1, df2).expect("df > 0");
    dist.sf(f).clamp(0.0, 1.0)
}

/// Two-sided p-value of a standard normal statistic.
pub(crate) fn normal_two_sided(z: f64) -> f64 {
    let dist = Normal::new(0.0, 1.0).expect("unit normal");
    (2.0 * dist.sf(z.abs())).clamp(0.0, 1.0)
}
