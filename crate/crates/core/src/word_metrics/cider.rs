use std::collections::BTreeMap;

use super::require_refs;
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::textproc::ngrams;

pub const CIDER_MAX_N: usize = 4;

/// Document frequencies over an evaluation corpus, computed once and
/// shared read-only across all candidates.
///
/// IDF is `ln(1 + N / df)`, `N` the number of instances and `df` the number
/// of instances whose reference set contains the n-gram. N-grams no
/// reference contains fall back to the number of instances whose candidate
/// contains them. Weights therefore depend on counts only through `N / df`
/// and are strictly positive.
#[derive(Debug, Clone)]
pub struct CiderScorer {
    ref_freq: Vec<BTreeMap<Vec<String>, usize>>,
    cand_freq: Vec<BTreeMap<Vec<String>, usize>>,
    n_docs: usize,
}

fn count_docs<'a, I>(freq: &mut BTreeMap<Vec<String>, usize>, docs: I, n: usize)
where
    I: IntoIterator<Item = &'a [String]>,
{
    let mut seen: BTreeMap<&[String], ()> = BTreeMap::new();
    for d in docs {
        for g in ngrams(d, n).into_keys() {
            seen.insert(g, ());
        }
    }
    for g in seen.into_keys() {
        *freq.entry(g.to_vec()).or_insert(0) += 1;
    }
}

impl CiderScorer {
    pub fn new<C, S>(corpus: &[(C, Vec<S>)]) -> Result<Self>
    where
        C: AsRef<[String]>,
        S: AsRef<[String]>,
    {
        if corpus.is_empty() {
            return Err(Error::EmptyCorpus);
        }
        let mut ref_freq = vec![BTreeMap::new(); CIDER_MAX_N + 1];
        let mut cand_freq = vec![BTreeMap::new(); CIDER_MAX_N + 1];
        for (cand, refs) in corpus {
            for n in 1..=CIDER_MAX_N {
                count_docs(&mut ref_freq[n], refs.iter().map(|r| r.as_ref()), n);
                count_docs(&mut cand_freq[n], std::iter::once(cand.as_ref()), n);
            }
        }
        Ok(CiderScorer {
            ref_freq,
            cand_freq,
            n_docs: corpus.len(),
        })
    }

    fn idf<T: Scalar>(&self, n: usize, g: &[String]) -> T {
        let df = self.ref_freq[n]
            .get(g)
            .or_else(|| self.cand_freq[n].get(g))
            .copied()
            .unwrap_or(1);
        (T::one() + T::of_usize(self.n_docs) / T::of_usize(df)).ln()
    }

    fn vector<'a, T: Scalar>(&self, tokens: &'a [String], n: usize) -> BTreeMap<&'a [String], T> {
        ngrams(tokens, n)
            .into_iter()
            .map(|(g, tf)| (g, T::of_usize(tf) * self.idf::<T>(n, g)))
            .collect()
    }

    /// Plain CIDEr of one candidate: 10 × mean over n = 1..=4 of the mean
    /// TF-IDF cosine against each reference.
    pub fn score<T: Scalar, S: AsRef<[String]>>(&self, cand: &[String], refs: &[S]) -> Result<T> {
        require_refs(refs)?;
        let mut total = T::zero();
        for n in 1..=CIDER_MAX_N {
            let cv = self.vector::<T>(cand, n);
            let mut sum = T::zero();
            for r in refs {
                let rv = self.vector::<T>(r.as_ref(), n);
                sum = sum + cosine(&cv, &rv);
            }
            total = total + sum / T::of_usize(refs.len());
        }
        Ok(T::of(10.0) * total / T::of_usize(CIDER_MAX_N))
    }
}

fn cosine<T: Scalar>(a: &BTreeMap<&[String], T>, b: &BTreeMap<&[String], T>) -> T {
    let norm = |v: &BTreeMap<&[String], T>| v.values().map(|&x| x * x).sum::<T>().sqrt();
    let (na, nb) = (norm(a), norm(b));
    if na == T::zero() || nb == T::zero() {
        return T::zero();
    }
    let dot: T = a.iter().filter_map(|(g, &x)| b.get(g).map(|&y| x * y)).sum();
    // guard rounding just above 1
    (dot / (na * nb)).min(T::one())
}

/// Scores every (candidate, references) pair of a corpus; IDF comes from
/// the corpus itself.
pub fn cider<T: Scalar, C, S>(corpus: &[(C, Vec<S>)]) -> Result<Vec<T>>
where
    C: AsRef<[String]>,
    S: AsRef<[String]>,
{
    let scorer = CiderScorer::new(corpus)?;
    corpus
        .iter()
        .map(|(cand, refs)| scorer.score(cand.as_ref(), refs))
        .collect()
}
