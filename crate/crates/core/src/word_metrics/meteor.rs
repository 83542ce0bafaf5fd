use super::require_refs;
use crate::error::Result;
use crate::lexicon::SynonymLexicon;
use crate::scalar::Scalar;
use crate::textproc::porter_stem;

/// Parameters of the METEOR score; defaults are (α, β, γ) = (0.9, 3.0, 0.5).
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct MeteorParams {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
}

impl Default for MeteorParams {
    fn default() -> Self {
        MeteorParams {
            alpha: 0.9,
            beta: 3.0,
            gamma: 0.5,
        }
    }
}

/// Staged one-to-one alignment: exact tokens, then Porter stems, then
/// synonyms from `lexicon`. Within a stage candidate tokens are taken left
/// to right; each picks the free reference position that crosses the
/// fewest existing links, leftmost on ties.
///
/// Returns `(candidate index, reference index)` links sorted by candidate
/// index.
pub fn meteor_alignment(
    cand: &[String],
    reference: &[String],
    lexicon: Option<&SynonymLexicon>,
) -> Vec<(usize, usize)> {
    let cand_stems: Vec<String> = cand.iter().map(|w| porter_stem(w)).collect();
    let ref_stems: Vec<String> = reference.iter().map(|w| porter_stem(w)).collect();

    let mut cand_used = vec![false; cand.len()];
    let mut ref_used = vec![false; reference.len()];
    let mut links: Vec<(usize, usize)> = Vec::new();

    let exact = |i: usize, j: usize| cand[i] == reference[j];
    let stem = |i: usize, j: usize| cand_stems[i] == ref_stems[j];
    let synonym = |i: usize, j: usize| lexicon.is_some_and(|l| l.are_synonyms(&cand[i], &reference[j]));
    let stages: [&dyn Fn(usize, usize) -> bool; 3] = [&exact, &stem, &synonym];

    for matches in stages {
        for i in 0..cand.len() {
            if cand_used[i] {
                continue;
            }
            let best = (0..reference.len())
                .filter(|&j| !ref_used[j] && matches(i, j))
                .min_by_key(|&j| {
                    let crossings = links.iter().filter(|&&(ci, rj)| (ci < i) != (rj < j)).count();
                    (crossings, j)
                });
            if let Some(j) = best {
                cand_used[i] = true;
                ref_used[j] = true;
                links.push((i, j));
            }
        }
    }
    links.sort_unstable();
    links
}

/// Minimal number of runs that are contiguous in both sentences.
fn chunk_count(links: &[(usize, usize)]) -> usize {
    if links.is_empty() {
        return 0;
    }
    1 + links
        .windows(2)
        .filter(|w| !(w[1].0 == w[0].0 + 1 && w[1].1 == w[0].1 + 1))
        .count()
}

fn score_alignment<T: Scalar>(m: usize, chunks: usize, c: usize, r: usize, params: &MeteorParams) -> T {
    if m == 0 {
        return T::zero();
    }
    let m_t = T::of_usize(m);
    let p = m_t / T::of_usize(c);
    let rec = m_t / T::of_usize(r);
    let alpha = T::of(params.alpha);
    let fmean = p * rec / (alpha * p + (T::one() - alpha) * rec);
    let penalty = T::of(params.gamma) * (T::of_usize(chunks) / m_t).powf(T::of(params.beta));
    fmean * (T::one() - penalty)
}

/// METEOR: best over references of `Fmean * (1 - γ (chunks / m)^β)`.
pub fn meteor<T: Scalar, S: AsRef<[String]>>(
    cand: &[String],
    refs: &[S],
    lexicon: Option<&SynonymLexicon>,
    params: &MeteorParams,
) -> Result<T> {
    require_refs(refs)?;
    let mut best = T::zero();
    for r in refs {
        let r = r.as_ref();
        let links = meteor_alignment(cand, r, lexicon);
        let v = score_alignment::<T>(links.len(), chunk_count(&links), cand.len(), r.len(), params);
        if v > best {
            best = v;
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::path::Path;

    fn t(s: &str) -> Vec<String> {
        s.split_whitespace().map(str::to_owned).collect()
    }

    #[test]
    fn single_word_identity() {
        let h = t("hello");
        let v = meteor::<f64, _>(&h, std::slice::from_ref(&h), None, &MeteorParams::default()).unwrap();
        assert_abs_diff_eq!(v, 0.5, epsilon = 1e-12);
    }

    #[test]
    fn identity_closed_form() {
        let s = t("the x is a cheap restaurant in the centre");
        let v = meteor::<f64, _>(&s, std::slice::from_ref(&s), None, &MeteorParams::default()).unwrap();
        let l = s.len() as f64;
        assert_abs_diff_eq!(v, 1.0 - 0.5 / (l * l * l), epsilon = 1e-12);
    }

    #[test]
    fn no_match() {
        let v = meteor::<f64, _>(&t("a b"), &[t("c d")], None, &MeteorParams::default()).unwrap();
        assert_eq!(v, 0.0);
    }

    #[test]
    fn stem_and_synonym_stages() {
        let links = meteor_alignment(&t("restaurants serve"), &t("restaurant serves"), None);
        assert_eq!(links, vec![(0, 0), (1, 1)]);

        let lex = SynonymLexicon::parse("cheap:inexpensive\n", Path::new("s")).unwrap();
        assert!(meteor_alignment(&t("cheap food"), &t("inexpensive food"), None).len() == 1);
        assert_eq!(
            meteor_alignment(&t("cheap food"), &t("inexpensive food"), Some(&lex)),
            vec![(0, 0), (1, 1)]
        );
    }

    #[test]
    fn chunks_and_crossings() {
        // a b c vs c a b: "a b" is one chunk, "c" another
        let links = meteor_alignment(&t("a b c"), &t("c a b"), None);
        assert_eq!(links, vec![(0, 1), (1, 2), (2, 0)]);
        assert_eq!(chunk_count(&links), 2);
        let v = meteor::<f64, _>(&t("a b c"), &[t("c a b")], None, &MeteorParams::default()).unwrap();
        assert_abs_diff_eq!(v, 1.0 - 0.5 * (2.0f64 / 3.0).powi(3), epsilon = 1e-12);
    }

    #[test]
    fn repeated_tokens_align_monotonically() {
        let s = t("x is near x and x");
        assert_eq!(
            meteor_alignment(&s, &s, None),
            (0..s.len()).map(|i| (i, i)).collect::<Vec<_>>()
        );
    }
}
