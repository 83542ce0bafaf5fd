//! Reference-based ("word-based") metrics. Each scores one candidate
//! against that instance's references; corpus means are plain averages of
//! the per-instance values.
//!
//! Every function takes tokens from [`crate::textproc::tokenize`] so all
//! metrics see identical tokenization.

mod bleu;
mod cider;
mod lepor;
mod meteor;
mod nist;
mod rouge;
mod sim;
mod ter;

pub use bleu::{bleu, corpus_bleu, BLEU_EPSILON};
pub use cider::{cider, CiderScorer, CIDER_MAX_N};
pub use lepor::{lepor, LeporConfig, UnmatchedPosition};
pub use meteor::{meteor, meteor_alignment, MeteorParams};
pub use nist::{nist, NIST_DEFAULT_N};
pub use rouge::{lcs_len, rouge_l};
pub use sim::{mr_tokens, sim};
pub use ter::{ter, ter_edits};

use crate::error::{Error, Result};

pub(crate) fn require_refs<S>(refs: &[S]) -> Result<()> {
    if refs.is_empty() {
        Err(Error::NoReferences)
    } else {
        Ok(())
    }
}
