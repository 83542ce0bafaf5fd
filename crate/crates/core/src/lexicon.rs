//! External word resources: embedding table (sim), dictionary (msp) and
//! synonym lexicon (METEOR stage 3).

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::path::Path;

use crate::error::{Error, Result};

/// Word → vector table, all vectors of one fixed dimension.
#[derive(Debug, Clone, Default)]
pub struct EmbeddingTable {
    dim: usize,
    vectors: HashMap<String, Vec<f64>>,
}

impl EmbeddingTable {
    pub fn new(dim: usize) -> Self {
        EmbeddingTable {
            dim,
            vectors: HashMap::new(),
        }
    }

    pub fn insert(&mut self, word: impl Into<String>, vector: Vec<f64>) -> Result<()> {
        if vector.len() != self.dim {
            return Err(Error::InvalidInput(format!(
                "embedding has dimension {}, table expects {}",
                vector.len(),
                self.dim
            )));
        }
        self.vectors.insert(word.into(), vector);
        Ok(())
    }

    pub fn get(&self, word: &str) -> Option<&[f64]> {
        self.vectors.get(word).map(Vec::as_slice)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    /// Parses `word v1 v2 ... vd` lines. Blank lines are skipped.
    pub fn parse(text: &str, origin: &Path) -> Result<Self> {
        let mut table: Option<EmbeddingTable> = None;
        for (i, line) in text.lines().enumerate() {
            let mut fields = line.split(' ').filter(|f| !f.is_empty());
            let Some(word) = fields.next() else { continue };
            let vector = fields
                .map(|f| f.parse::<f64>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|e| Error::Resource {
                    path: origin.to_owned(),
                    line: i + 1,
                    message: e.to_string(),
                })?;
            if vector.is_empty() {
                return Err(Error::Resource {
                    path: origin.to_owned(),
                    line: i + 1,
                    message: "word without vector".into(),
                });
            }
            let table = table.get_or_insert_with(|| EmbeddingTable::new(vector.len()));
            table.insert(word.to_lowercase(), vector).map_err(|e| Error::Resource {
                path: origin.to_owned(),
                line: i + 1,
                message: e.to_string(),
            })?;
        }
        Ok(table.unwrap_or_default())
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::parse(&text, path)
    }
}

/// Base forms whose regular `-s` plural is a misspelling.
const IRREGULAR_PLURAL_BASES: &[&str] = &[
    "child", "man", "woman", "person", "foot", "tooth", "goose", "mouse", "louse", "ox",
];

/// Lowercase word list used for misspelling counts.
///
/// Lookups fall back to regular English inflections (`-s`, `-es`, `-ies`,
/// `-ed`, `-ing`, `-'s`) of listed words, so the bundled base-form list
/// accepts "hotels" and "located" but not "childs".
#[derive(Debug, Clone, Default)]
pub struct Dictionary {
    words: HashSet<String>,
}

static BUNDLED_WORDS: &str = include_str!("../data/english_words.txt");

impl Dictionary {
    pub fn from_words<I, S>(words: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        Dictionary {
            words: words
                .into_iter()
                .map(|w| w.as_ref().trim().to_lowercase())
                .filter(|w| !w.is_empty())
                .collect(),
        }
    }

    /// The bundled public-domain English list (Webster's 2nd, ~235k words).
    pub fn bundled() -> Self {
        Self::from_words(BUNDLED_WORDS.lines())
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Ok(Self::from_words(text.lines()))
    }

    pub fn extend<I, S>(&mut self, words: I)
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        self.words
            .extend(words.into_iter().map(|w| w.as_ref().trim().to_lowercase()));
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    fn listed(&self, w: &str) -> bool {
        !w.is_empty() && self.words.contains(w)
    }

    pub fn contains(&self, word: &str) -> bool {
        if self.listed(word) {
            return true;
        }
        let w = word.strip_suffix("'s").unwrap_or(word);
        if w != word && self.listed(w) {
            return true;
        }
        if let Some(stem) = w.strip_suffix('s') {
            if !IRREGULAR_PLURAL_BASES.contains(&stem) && self.listed(stem) {
                return true;
            }
        }
        if let Some(stem) = w.strip_suffix("es") {
            if self.listed(stem) {
                return true;
            }
        }
        if let Some(stem) = w.strip_suffix("ies") {
            if self.listed(&format!("{stem}y")) {
                return true;
            }
        }
        for suffix in ["ed", "ing"] {
            if let Some(stem) = w.strip_suffix(suffix) {
                if stem.len() < 2 {
                    continue;
                }
                if self.listed(stem) || self.listed(&format!("{stem}e")) {
                    return true;
                }
                // stopped -> stop, planning -> plan
                let b = stem.as_bytes();
                if b.len() >= 3 && b[b.len() - 1] == b[b.len() - 2] && self.listed(&stem[..stem.len() - 1]) {
                    return true;
                }
                if suffix == "ed" {
                    if let Some(s) = stem.strip_suffix('i') {
                        if self.listed(&format!("{s}y")) {
                            return true;
                        }
                    }
                }
            }
        }
        false
    }
}

/// `word:syn1,syn2,...` per line. Symmetric: listing `a:b` also makes `b`
/// a synonym of `a`.
#[derive(Debug, Clone, Default)]
pub struct SynonymLexicon {
    groups: BTreeMap<String, BTreeSet<String>>,
}

impl SynonymLexicon {
    pub fn add(&mut self, a: &str, b: &str) {
        let (a, b) = (a.trim().to_lowercase(), b.trim().to_lowercase());
        if a.is_empty() || b.is_empty() || a == b {
            return;
        }
        self.groups.entry(a.clone()).or_default().insert(b.clone());
        self.groups.entry(b).or_default().insert(a);
    }

    pub fn are_synonyms(&self, a: &str, b: &str) -> bool {
        self.groups.get(a).is_some_and(|s| s.contains(b))
    }

    pub fn is_empty(&self) -> bool {
        self.groups.is_empty()
    }

    pub fn parse(text: &str, origin: &Path) -> Result<Self> {
        let mut lex = SynonymLexicon::default();
        for (i, line) in text.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let (word, syns) = line.split_once(':').ok_or_else(|| Error::Resource {
                path: origin.to_owned(),
                line: i + 1,
                message: "expected `word:syn1,syn2,...`".into(),
            })?;
            for syn in syns.split(',') {
                lex.add(word, syn);
            }
        }
        Ok(lex)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::parse(&text, path)
    }
}
