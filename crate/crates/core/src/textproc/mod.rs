//! Tokenization and the other text primitives every metric shares.

mod porter;

use std::collections::BTreeMap;
use std::ops::Range;

pub use porter::porter_stem;

/// Punctuation split off the end of a whitespace-delimited chunk.
const SPLIT_PUNCT: &[char] = &['.', ',', '!', '?', ';', ':'];
const SENTENCE_END: &[char] = &['.', '!', '?'];

/// Lowercased tokens plus sentence spans over them.
///
/// `sentence_bounds` partitions `0..tokens.len()`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TokenSequence {
    pub tokens: Vec<String>,
    pub sentence_bounds: Vec<Range<usize>>,
}

impl TokenSequence {
    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    pub fn sentence_count(&self) -> usize {
        self.sentence_bounds.len()
    }

    /// Tokens that are not pure punctuation.
    pub fn words(&self) -> impl Iterator<Item = &str> {
        self.tokens.iter().map(String::as_str).filter(|t| !is_punct(t))
    }

    /// Tokens joined with single spaces.
    pub fn detokenize(&self) -> String {
        self.tokens.join(" ")
    }
}

/// True when every character of the token is one of `. , ! ? ; :`.
pub fn is_punct(token: &str) -> bool {
    !token.is_empty() && token.chars().all(|c| SPLIT_PUNCT.contains(&c))
}

fn is_sentence_end(token: &str) -> bool {
    token.len() == 1 && token.chars().all(|c| SENTENCE_END.contains(&c))
}

/// Lowercases, splits on whitespace and peels trailing `. , ! ? ; :` off
/// each chunk as separate tokens. Apostrophes and hyphens stay inside words.
///
/// A sentence ends after a run of `.`/`!`/`?` tokens; trailing text with no
/// terminator is one more sentence.
pub fn tokenize(text: &str) -> TokenSequence {
    let mut tokens = Vec::new();
    for chunk in text.split_whitespace() {
        let lower = chunk.to_lowercase();
        let body = lower.trim_end_matches(SPLIT_PUNCT);
        if !body.is_empty() {
            tokens.push(body.to_owned());
        }
        tokens.extend(lower[body.len()..].chars().map(String::from));
    }

    let mut sentence_bounds = Vec::new();
    let mut start = 0;
    for i in 0..tokens.len() {
        let closes = is_sentence_end(&tokens[i]) && tokens.get(i + 1).is_none_or(|next| !is_sentence_end(next));
        if closes {
            sentence_bounds.push(start..i + 1);
            start = i + 1;
        }
    }
    if start < tokens.len() {
        sentence_bounds.push(start..tokens.len());
    }
    TokenSequence {
        tokens,
        sentence_bounds,
    }
}

/// Multiset of n-grams, ordered so iteration is deterministic.
pub type NgramCounts<'a> = BTreeMap<&'a [String], usize>;

/// All contiguous `n`-token windows with multiplicities. Sentence bounds
/// are ignored.
///
/// # Panics
///
/// If `n == 0`.
pub fn ngrams(tokens: &[String], n: usize) -> NgramCounts<'_> {
    assert!(n >= 1, "n-gram order must be at least 1");
    let mut counts = NgramCounts::new();
    for w in tokens.windows(n) {
        *counts.entry(w).or_insert(0) += 1;
    }
    counts
}

fn is_vowel(c: char) -> bool {
    matches!(c, 'a' | 'e' | 'i' | 'o' | 'u' | 'y')
}

/// Vowel-group syllable heuristic.
///
/// Counts maximal runs of `a e i o u y`; drops one for a final `e` not
/// preceded by `l` when more than one group was found; never below 1.
/// Tokens without letters count as one syllable.
pub fn count_syllables(word: &str) -> usize {
    let letters: Vec<char> = word
        .chars()
        .filter(|c| c.is_alphabetic())
        .flat_map(char::to_lowercase)
        .collect();
    if letters.is_empty() {
        return 1;
    }
    let mut groups = 0;
    let mut in_group = false;
    for &c in &letters {
        let v = is_vowel(c);
        if v && !in_group {
            groups += 1;
        }
        in_group = v;
    }
    let n = letters.len();
    if groups > 1 && letters[n - 1] == 'e' && (n < 2 || letters[n - 2] != 'l') {
        groups -= 1;
    }
    groups.max(1)
}

/// Token-level Levenshtein distance with unit costs.
pub fn edit_distance<T: PartialEq>(a: &[T], b: &[T]) -> usize {
    if a.is_empty() {
        return b.len();
    }
    let mut prev: Vec<usize> = (0..=b.len()).collect();
    let mut cur = vec![0; b.len() + 1];
    for (i, x) in a.iter().enumerate() {
        cur[0] = i + 1;
        for (j, y) in b.iter().enumerate() {
            let sub = prev[j] + usize::from(x != y);
            cur[j + 1] = sub.min(prev[j + 1] + 1).min(cur[j] + 1);
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    prev[b.len()]
}
