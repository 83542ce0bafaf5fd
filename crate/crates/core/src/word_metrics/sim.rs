use crate::corpus::MeaningRepresentation;
use crate::error::Result;
use crate::lexicon::EmbeddingTable;
use crate::scalar::Scalar;
use crate::textproc::tokenize;

/// Bag of words verbalizing an MR: act type parts (`inform_nomatch` →
/// `inform`, `nomatch`), slot-name parts and tokenized slot values.
pub fn mr_tokens(mr: &MeaningRepresentation) -> Vec<String> {
    let mut out: Vec<String> = mr
        .act_type
        .split('_')
        .filter(|s| !s.is_empty())
        .map(str::to_lowercase)
        .collect();
    for slot in &mr.slots {
        out.extend(slot.name.split('_').filter(|s| !s.is_empty()).map(str::to_lowercase));
        if let Some(v) = &slot.value {
            out.extend(tokenize(v).words().map(str::to_owned));
        }
    }
    out
}

fn mean_vector<T: Scalar>(tokens: &[String], table: &EmbeddingTable) -> Option<Vec<T>> {
    let mut sum = vec![T::zero(); table.dim()];
    let mut found = 0usize;
    for v in tokens.iter().filter_map(|t| table.get(t)) {
        for (s, &x) in sum.iter_mut().zip(v) {
            *s = *s + T::of(x);
        }
        found += 1;
    }
    if found == 0 {
        return None;
    }
    let n = T::of_usize(found);
    Some(sum.into_iter().map(|s| s / n).collect())
}

/// Embedding cosine between the MR word bag and the output tokens, clamped
/// to [0, 1]. Zero when either side has no in-vocabulary token.
pub fn sim<T: Scalar>(mr: &MeaningRepresentation, cand: &[String], table: &EmbeddingTable) -> Result<T> {
    let mr_bag = mr_tokens(mr);
    let (Some(a), Some(b)) = (mean_vector::<T>(&mr_bag, table), mean_vector::<T>(cand, table)) else {
        return Ok(T::zero());
    };
    let dot: T = a.iter().zip(&b).map(|(&x, &y)| x * y).sum();
    let na = a.iter().map(|&x| x * x).sum::<T>().sqrt();
    let nb = b.iter().map(|&x| x * x).sum::<T>().sqrt();
    if na == T::zero() || nb == T::zero() {
        return Ok(T::zero());
    }
    Ok((dot / (na * nb)).max(T::zero()).min(T::one()))
}
