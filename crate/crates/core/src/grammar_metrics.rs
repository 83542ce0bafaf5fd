//! Reference-less metrics computed from the output text alone:
//! readability, surface statistics and misspellings. The parse score is
//! ingested, not computed.

use serde::Serialize;

use crate::corpus::Instance;
use crate::error::{Error, Result};
use crate::lexicon::Dictionary;
use crate::scalar::Scalar;
use crate::textproc::{count_syllables, TokenSequence};

/// Syllables at which a word counts as a polysyllable.
pub const POLYSYLLABLE_MIN: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SurfaceStats<T> {
    /// Non-space characters of the raw output.
    pub len: T,
    pub words: usize,
    pub sentences: usize,
    pub syllables: usize,
    /// Alphabetic characters per word.
    pub cpw: T,
    pub wps: T,
    pub sps: T,
    pub spw: T,
    pub pol: usize,
    pub ppw: T,
}

/// Flesch Reading Ease over word tokens. `None` without words.
pub fn flesch_re<T: Scalar>(seq: &TokenSequence) -> Option<T> {
    let words: Vec<&str> = seq.words().collect();
    if words.is_empty() || seq.sentence_count() == 0 {
        return None;
    }
    let syllables: usize = words.iter().map(|w| count_syllables(w)).sum();
    let w = T::of_usize(words.len());
    Some(
        T::of(206.835)
            - T::of(1.015) * (w / T::of_usize(seq.sentence_count()))
            - T::of(84.6) * (T::of_usize(syllables) / w),
    )
}

pub fn surface_stats<T: Scalar>(seq: &TokenSequence, raw: &str) -> Result<SurfaceStats<T>> {
    let words: Vec<&str> = seq.words().collect();
    if words.is_empty() {
        return Err(Error::InvalidInput("utterance has no words".into()));
    }
    let sentences = seq.sentence_count();
    let syl: Vec<usize> = words.iter().map(|w| count_syllables(w)).collect();
    let syllables: usize = syl.iter().sum();
    let pol = syl.iter().filter(|&&s| s >= POLYSYLLABLE_MIN).count();
    let alpha_chars: usize = words
        .iter()
        .map(|w| w.chars().filter(|c| c.is_alphabetic()).count())
        .sum();
    let (nw, ns) = (T::of_usize(words.len()), T::of_usize(sentences));
    Ok(SurfaceStats {
        len: T::of_usize(raw.chars().filter(|c| !c.is_whitespace()).count()),
        words: words.len(),
        sentences,
        syllables,
        cpw: T::of_usize(alpha_chars) / nw,
        wps: nw / ns,
        sps: T::of_usize(syllables) / ns,
        spw: T::of_usize(syllables) / nw,
        pol,
        ppw: T::of_usize(pol) / nw,
    })
}

const CLITICS: &[&str] = &["n't", "'s", "'re", "'ll", "'ve", "'d", "'m"];

fn is_spelled(word: &str, dict: &Dictionary) -> bool {
    if dict.contains(word) {
        return true;
    }
    for c in CLITICS {
        if let Some(base) = word.strip_suffix(c) {
            // can't -> ca, won't -> wo
            let base = match (*c, base) {
                ("n't", "ca") => "can",
                ("n't", "wo") => "will",
                _ => base,
            };
            if !base.is_empty() && dict.contains(base) {
                return true;
            }
        }
    }
    false
}

/// Word tokens absent from `dict`. The placeholder `x` and tokens with
/// digits or no letters are never counted; hyphenated words count once if
/// any part is unknown.
pub fn misspellings(seq: &TokenSequence, dict: &Dictionary) -> usize {
    seq.words()
        .filter(|w| *w != "x")
        .filter(|w| !w.chars().any(|c| c.is_ascii_digit()))
        .filter(|w| w.chars().any(char::is_alphabetic))
        .filter(|w| {
            w.split('-')
                .filter(|p| !p.is_empty())
                .any(|p| p != "x" && !is_spelled(p, dict))
        })
        .count()
}

/// The externally computed parse score, passed through unchanged.
pub fn parse_score(instance: &Instance) -> Option<f64> {
    instance.parse_score
}
