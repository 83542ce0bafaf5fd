use super::require_refs;
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::textproc::edit_distance;

/// Moves `hyp[start..start + len]` so it begins at index `dest` of the
/// sequence that remains after removing the block.
fn apply_shift<T: Clone>(hyp: &[T], start: usize, len: usize, dest: usize) -> Vec<T> {
    let block = &hyp[start..start + len];
    let mut rest: Vec<T> = hyp[..start].iter().chain(&hyp[start + len..]).cloned().collect();
    rest.splice(dest..dest, block.iter().cloned());
    rest
}

fn occurs_in<T: PartialEq>(needle: &[T], haystack: &[T]) -> bool {
    haystack.windows(needle.len()).any(|w| w == needle)
}

/// Total TER edits of `hyp` against one reference: Levenshtein edits after
/// greedy block shifts, plus one per shift.
///
/// Each round applies the single block move that lowers the remaining edit
/// distance the most. Candidate blocks are hypothesis spans that occur
/// somewhere in the reference (a block matching nothing cannot create
/// matches); they may have any length and move any distance. Equal gains
/// prefer the longer block, then the leftmost block, then the leftmost
/// destination.
pub fn ter_edits<T: PartialEq + Clone>(hyp: &[T], reference: &[T]) -> usize {
    let mut hyp = hyp.to_vec();
    let mut current = edit_distance(&hyp, reference);
    let mut shifts = 0;
    while current > 0 {
        // (gain, len, start, dest)
        let mut best: Option<(usize, usize, usize, usize)> = None;
        let n = hyp.len();
        for start in 0..n {
            for len in 1..=n - start {
                if !occurs_in(&hyp[start..start + len], reference) {
                    // longer blocks from this start cannot occur either
                    break;
                }
                for dest in 0..=n - len {
                    if dest == start {
                        continue;
                    }
                    let moved = apply_shift(&hyp, start, len, dest);
                    let d = edit_distance(&moved, reference);
                    if d >= current {
                        continue;
                    }
                    let gain = current - d;
                    let better = match best {
                        None => true,
                        Some((bg, bl, _, _)) => gain > bg || (gain == bg && len > bl),
                    };
                    if better {
                        best = Some((gain, len, start, dest));
                    }
                }
            }
        }
        let Some((gain, len, start, dest)) = best else {
            break;
        };
        hyp = apply_shift(&hyp, start, len, dest);
        current -= gain;
        shifts += 1;
    }
    current + shifts
}

/// Translation edit rate: minimum over references of
/// `ter_edits / reference length`. Lower is better.
pub fn ter<T: Scalar, S: AsRef<[String]>>(cand: &[String], refs: &[S]) -> Result<T> {
    require_refs(refs)?;
    let mut best: Option<T> = None;
    for r in refs {
        let r = r.as_ref();
        if r.is_empty() {
            return Err(Error::InvalidInput("TER reference is empty".into()));
        }
        let rate = T::of_usize(ter_edits(cand, r)) / T::of_usize(r.len());
        best = Some(match best {
            Some(b) if b <= rate => b,
            _ => rate,
        });
    }
    Ok(best.expect("at least one reference"))
}
