use std::collections::BTreeMap;

use super::require_refs;
use crate::error::Result;
use crate::scalar::Scalar;
use crate::textproc::ngrams;

pub const NIST_DEFAULT_N: usize = 5;

/// Information weights `log2(count(g[..n-1]) / count(g))` from the pooled
/// reference n-gram counts; unigrams use the total reference word count as
/// numerator.
fn info_weights<'a, S: AsRef<[String]>>(refs: &'a [S], max_n: usize) -> Vec<BTreeMap<&'a [String], f64>> {
    let mut counts: Vec<BTreeMap<&'a [String], usize>> = vec![BTreeMap::new(); max_n + 1];
    let mut total_words = 0;
    for r in refs {
        let r = r.as_ref();
        total_words += r.len();
        for n in 1..=max_n {
            for (g, c) in ngrams(r, n) {
                *counts[n].entry(g).or_insert(0) += c;
            }
        }
    }
    let mut info = vec![BTreeMap::new(); max_n + 1];
    for n in 1..=max_n {
        for (&g, &c) in &counts[n] {
            let context = if n == 1 {
                total_words
            } else {
                counts[n - 1][&g[..n - 1]]
            };
            info[n].insert(g, (context as f64 / c as f64).log2());
        }
    }
    info
}

/// NIST score with `max_n` orders (5 by default).
///
/// For each order, information of the clipped matched n-grams is divided by
/// the candidate's n-gram count; orders are summed and scaled by
/// `exp(beta * ln²(min(c / r̄, 1)))`, beta chosen so the factor is 0.5 at
/// c / r̄ = 2/3, r̄ being the mean reference length.
pub fn nist<T: Scalar, S: AsRef<[String]>>(cand: &[String], refs: &[S], max_n: usize) -> Result<T> {
    require_refs(refs)?;
    if cand.is_empty() {
        return Ok(T::zero());
    }
    let info = info_weights(refs, max_n);
    let mut score = T::zero();
    for n in 1..=max_n {
        let total = cand.len().saturating_sub(n - 1);
        if total == 0 {
            break;
        }
        let ref_counts: Vec<_> = refs.iter().map(|r| ngrams(r.as_ref(), n)).collect();
        let mut gained = T::zero();
        for (g, c) in ngrams(cand, n) {
            let max_ref = ref_counts
                .iter()
                .map(|rc| rc.get(g).copied().unwrap_or(0))
                .max()
                .unwrap_or(0);
            let matched = c.min(max_ref);
            if matched > 0 {
                gained = gained + T::of_usize(matched) * T::of(info[n][g]);
            }
        }
        score = score + gained / T::of_usize(total);
    }
    let mean_ref = T::of_usize(refs.iter().map(|r| r.as_ref().len()).sum::<usize>()) / T::of_usize(refs.len());
    Ok(score * brevity_factor(T::of_usize(cand.len()) / mean_ref))
}

fn brevity_factor<T: Scalar>(ratio: T) -> T {
    if !(ratio < T::one()) {
        return T::one();
    }
    let beta = T::of(0.5f64.ln() / (2.0f64 / 3.0).ln().powi(2));
    (beta * ratio.ln().powi(2)).exp()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::textproc::tokenize;
    use approx::assert_abs_diff_eq;

    fn t(s: &str) -> Vec<String> {
        tokenize(s).tokens
    }

    #[test]
    fn no_overlap_is_zero() {
        assert_eq!(nist::<f64, _>(&t("a b"), &[t("c d")], 5).unwrap(), 0.0);
    }

    #[test]
    fn two_token_identity() {
        // unigram info log2(2/1) = 1 for both tokens; bigram info log2(1/1) = 0
        let v = nist::<f64, _>(&t("a b"), &[t("a b")], 5).unwrap();
        assert_abs_diff_eq!(v, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn brevity_factor_anchor() {
        assert_abs_diff_eq!(brevity_factor(2.0f64 / 3.0), 0.5, epsilon = 1e-12);
        assert_eq!(brevity_factor(1.5f64), 1.0);
    }

    #[test]
    fn info_uses_context_counts() {
        let refs = [t("a b a c")];
        let info = info_weights(&refs, 2);
        let a: &[String] = &refs[0][0..1];
        let ab: &[String] = &refs[0][0..2];
        assert_abs_diff_eq!(info[1][a], 1.0, epsilon = 1e-12); // 4 words / 2
        assert_abs_diff_eq!(info[2][ab], 1.0, epsilon = 1e-12); // count(a)=2 / count(a b)=1
    }
}
