//! Corpus data model and ingestion.
//!
//! A corpus row carries one MR, one system output, its human references,
//! three raters' scores for each of the three dimensions and an optional
//! externally computed parse score.

mod load;
mod mr;
mod rating;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

pub use load::{
    load_corpus, parse_corpus, validate_file, validate_text, Format, LoadOptions, LoadOutcome, RowIssue,
    ValidationReport, REFERENCE_DELIMITER,
};
pub use mr::{parse_mr, MeaningRepresentation, Slot};
pub use rating::{median_rating, Dimension, RatingTriple, MAX_SCORE, MIN_SCORE};

use crate::lexicon::{Dictionary, EmbeddingTable};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Instance {
    pub instance_id: String,
    pub pair_key: Option<String>,
    pub dataset: String,
    pub system: String,
    pub mr: MeaningRepresentation,
    pub output: String,
    pub references: Vec<String>,
    /// Indexed by [`Dimension::index`].
    pub ratings: [RatingTriple; 3],
    pub parse_score: Option<f64>,
}

impl Instance {
    pub fn rating(&self, dimension: Dimension) -> &RatingTriple {
        &self.ratings[dimension.index()]
    }

    pub fn median(&self, dimension: Dimension) -> u8 {
        self.rating(dimension).median()
    }
}

/// Loaded instances plus the optional word resources metrics may need.
/// Immutable once built.
#[derive(Debug, Clone, Default)]
pub struct Corpus {
    pub instances: Vec<Instance>,
    pub embeddings: Option<EmbeddingTable>,
    pub dictionary: Option<Dictionary>,
}

impl Corpus {
    pub fn new(instances: Vec<Instance>) -> Self {
        Corpus {
            instances,
            embeddings: None,
            dictionary: None,
        }
    }

    pub fn len(&self) -> usize {
        self.instances.len()
    }

    pub fn is_empty(&self) -> bool {
        self.instances.is_empty()
    }

    pub fn datasets(&self) -> Vec<&str> {
        let mut out: Vec<&str> = Vec::new();
        for inst in &self.instances {
            if !out.contains(&inst.dataset.as_str()) {
                out.push(&inst.dataset);
            }
        }
        out
    }

    /// Systems of a dataset in first-appearance order.
    pub fn systems(&self, dataset: &str) -> Vec<&str> {
        let mut out: Vec<&str> = Vec::new();
        for inst in self.instances.iter().filter(|i| i.dataset == dataset) {
            if !out.contains(&inst.system.as_str()) {
                out.push(&inst.system);
            }
        }
        out
    }

    /// Instance counts per (dataset, system).
    pub fn counts(&self) -> BTreeMap<(String, String), usize> {
        let mut out = BTreeMap::new();
        for inst in &self.instances {
            *out.entry((inst.dataset.clone(), inst.system.clone())).or_insert(0) += 1;
        }
        out
    }

    /// Index pairs `(a, b)` of instances sharing a pair key, `a < b`, in the
    /// order the first member appears.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        let mut groups: BTreeMap<&str, Vec<usize>> = BTreeMap::new();
        for (i, inst) in self.instances.iter().enumerate() {
            if let Some(key) = &inst.pair_key {
                groups.entry(key).or_default().push(i);
            }
        }
        let mut pairs: Vec<(usize, usize)> = groups
            .into_values()
            .filter(|g| g.len() == 2)
            .map(|g| (g[0], g[1]))
            .collect();
        pairs.sort_unstable();
        pairs
    }
}
