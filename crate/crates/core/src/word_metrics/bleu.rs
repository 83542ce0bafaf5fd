use super::require_refs;
use crate::error::Result;
use crate::scalar::Scalar;
use crate::textproc::{ngrams, NgramCounts};

/// Stand-in match count for n-gram orders with no match, so the geometric
/// mean stays defined for short outputs.
pub const BLEU_EPSILON: f64 = 1e-9;

/// Clipped n-gram matches and candidate n-gram total.
fn clipped_counts<S: AsRef<[String]>>(cand: &[String], refs: &[S], n: usize) -> (usize, usize) {
    let cand_counts = ngrams(cand, n);
    let ref_counts: Vec<NgramCounts<'_>> = refs.iter().map(|r| ngrams(r.as_ref(), n)).collect();
    let mut matched = 0;
    for (g, &c) in &cand_counts {
        let max_ref = ref_counts
            .iter()
            .map(|rc| rc.get(g).copied().unwrap_or(0))
            .max()
            .unwrap_or(0);
        matched += c.min(max_ref);
    }
    (matched, cand.len().saturating_sub(n - 1))
}

/// Reference length closest to `c`; ties go to the shorter reference.
fn closest_ref_len<S: AsRef<[String]>>(c: usize, refs: &[S]) -> usize {
    refs.iter()
        .map(|r| r.as_ref().len())
        .min_by_key(|&r| (r.abs_diff(c), r))
        .unwrap_or(0)
}

fn brevity_penalty<T: Scalar>(c: usize, r: usize) -> T {
    if c >= r {
        T::one()
    } else {
        (T::one() - T::of_usize(r) / T::of_usize(c)).exp()
    }
}

fn combine<T: Scalar>(matched: &[usize], totals: &[usize], c: usize, r: usize) -> T {
    let eps = T::of(BLEU_EPSILON);
    let log_sum: T = matched
        .iter()
        .zip(totals)
        .map(|(&m, &t)| {
            let p = match (m, t) {
                (_, 0) => eps,
                (0, t) => eps / T::of_usize(t),
                (m, t) => T::of_usize(m) / T::of_usize(t),
            };
            p.ln()
        })
        .sum();
    let geo = (log_sum / T::of_usize(matched.len())).exp();
    brevity_penalty::<T>(c, r) * geo
}

/// Sentence-level BLEU-`max_n`.
///
/// Geometric mean of clipped n-gram precisions for n = 1..=max_n times the
/// brevity penalty against the closest reference length. An order with no
/// match (or no candidate n-grams at all) contributes precision
/// `BLEU_EPSILON / total` (resp. `BLEU_EPSILON`).
pub fn bleu<T: Scalar, S: AsRef<[String]>>(cand: &[String], refs: &[S], max_n: usize) -> Result<T> {
    require_refs(refs)?;
    assert!((1..=4).contains(&max_n), "BLEU order must be 1..=4");
    if cand.is_empty() {
        return Ok(T::zero());
    }
    let (matched, totals): (Vec<usize>, Vec<usize>) = (1..=max_n).map(|n| clipped_counts(cand, refs, n)).unzip();
    Ok(combine(
        &matched,
        &totals,
        cand.len(),
        closest_ref_len(cand.len(), refs),
    ))
}

/// Corpus-level BLEU from pooled clipped counts and lengths.
pub fn corpus_bleu<T: Scalar, C, S>(pairs: &[(C, Vec<S>)], max_n: usize) -> Result<T>
where
    C: AsRef<[String]>,
    S: AsRef<[String]>,
{
    let mut matched = vec![0; max_n];
    let mut totals = vec![0; max_n];
    let (mut c, mut r) = (0, 0);
    for (cand, refs) in pairs {
        require_refs(refs)?;
        let cand = cand.as_ref();
        for n in 1..=max_n {
            let (m, t) = clipped_counts(cand, refs, n);
            matched[n - 1] += m;
            totals[n - 1] += t;
        }
        c += cand.len();
        r += closest_ref_len(cand.len(), refs);
    }
    if c == 0 {
        return Ok(T::zero());
    }
    Ok(combine(&matched, &totals, c, r))
}

/// Clipped unigram precision, exposed for tests of the clipping rule.
#[cfg(test)]
pub(crate) fn modified_precision<S: AsRef<[String]>>(cand: &[String], refs: &[S], n: usize) -> (usize, usize) {
    clipped_counts(cand, refs, n)
}
