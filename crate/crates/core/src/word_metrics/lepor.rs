use serde::Serialize;

use super::require_refs;
use crate::error::Result;
use crate::scalar::Scalar;

/// Position-difference contribution of a candidate token with no match in
/// the reference.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum UnmatchedPosition {
    /// Unmatched tokens add nothing to the position difference.
    #[default]
    Zero,
    /// Unmatched tokens add their relative candidate position `i / c`.
    HypPosition,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LeporConfig {
    /// Weight on recall in the harmonic mean.
    pub alpha: f64,
    /// Weight on precision in the harmonic mean.
    pub beta: f64,
    pub unmatched: UnmatchedPosition,
}

impl Default for LeporConfig {
    fn default() -> Self {
        LeporConfig {
            alpha: 1.0,
            beta: 1.0,
            unmatched: UnmatchedPosition::Zero,
        }
    }
}

fn single<T: Scalar>(cand: &[String], reference: &[String], cfg: &LeporConfig) -> T {
    let (c, r) = (cand.len(), reference.len());
    if c == 0 || r == 0 {
        return T::zero();
    }
    let (c_t, r_t) = (T::of_usize(c), T::of_usize(r));

    let lp = if c < r {
        (T::one() - r_t / c_t).exp()
    } else if c > r {
        (T::one() - c_t / r_t).exp()
    } else {
        T::one()
    };

    // Nearest-position one-to-one matching, candidate tokens left to right.
    let mut used = vec![false; r];
    let mut matched = 0usize;
    let mut pd_sum = T::zero();
    for (i, w) in cand.iter().enumerate() {
        let hyp_pos = T::of_usize(i + 1) / c_t;
        let nearest = (0..r)
            .filter(|&j| !used[j] && reference[j] == *w)
            .map(|j| (j, (hyp_pos - T::of_usize(j + 1) / r_t).abs()))
            .min_by(|a, b| a.1.partial_cmp(&b.1).expect("finite").then(a.0.cmp(&b.0)));
        match nearest {
            Some((j, d)) => {
                used[j] = true;
                matched += 1;
                pd_sum = pd_sum + d;
            }
            None => {
                if cfg.unmatched == UnmatchedPosition::HypPosition {
                    pd_sum = pd_sum + hyp_pos;
                }
            }
        }
    }
    if matched == 0 {
        return T::zero();
    }
    let npd = pd_sum / c_t;
    let pos_penalty = (-npd).exp();

    let m = T::of_usize(matched);
    let (p, rec) = (m / c_t, m / r_t);
    let (alpha, beta) = (T::of(cfg.alpha), T::of(cfg.beta));
    let harmonic = (alpha + beta) / (alpha / rec + beta / p);
    lp * pos_penalty * harmonic
}

/// LEPOR (unigram form): best over references of
/// `LP * exp(-NPD) * Harmonic(αR, βP)`.
pub fn lepor<T: Scalar, S: AsRef<[String]>>(cand: &[String], refs: &[S], cfg: &LeporConfig) -> Result<T> {
    require_refs(refs)?;
    Ok(refs
        .iter()
        .map(|r| single::<T>(cand, r.as_ref(), cfg))
        .fold(T::zero(), |a, b| if b > a { b } else { a }))
}
