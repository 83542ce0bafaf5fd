use super::require_refs;
use crate::error::Result;
use crate::scalar::Scalar;

pub fn lcs_len<T: PartialEq>(a: &[T], b: &[T]) -> usize {
    let mut prev = vec![0; b.len() + 1];
    let mut cur = vec![0; b.len() + 1];
    for x in a {
        for (j, y) in b.iter().enumerate() {
            cur[j + 1] = if x == y { prev[j] + 1 } else { prev[j + 1].max(cur[j]) };
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    prev[b.len()]
}

/// ROUGE-L F1: best over references of `2PR / (P + R)` with
/// `P = LCS / |cand|`, `R = LCS / |ref|`.
pub fn rouge_l<T: Scalar, S: AsRef<[String]>>(cand: &[String], refs: &[S]) -> Result<T> {
    require_refs(refs)?;
    let mut best = T::zero();
    for r in refs {
        let r = r.as_ref();
        let lcs = lcs_len(cand, r);
        if lcs == 0 {
            continue;
        }
        let p = T::of_usize(lcs) / T::of_usize(cand.len());
        let rec = T::of_usize(lcs) / T::of_usize(r.len());
        let f = T::of(2.0) * p * rec / (p + rec);
        if f > best {
            best = f;
        }
    }
    Ok(best)
}
