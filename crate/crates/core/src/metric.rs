//! Metric identifiers and the per-instance vector of all 21 scores.

use std::fmt;
use std::ops::{Index, IndexMut};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// The 21 automatic metrics, in report column order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MetricField {
    Ter,
    Bleu1,
    Bleu2,
    Bleu3,
    Bleu4,
    Rouge,
    Nist,
    Lepor,
    Cider,
    Meteor,
    Sim,
    Re,
    Msp,
    Prs,
    Len,
    Wps,
    Sps,
    Cpw,
    Spw,
    Pol,
    Ppw,
}

pub const METRIC_COUNT: usize = 21;

impl MetricField {
    pub const ALL: [MetricField; METRIC_COUNT] = [
        MetricField::Ter,
        MetricField::Bleu1,
        MetricField::Bleu2,
        MetricField::Bleu3,
        MetricField::Bleu4,
        MetricField::Rouge,
        MetricField::Nist,
        MetricField::Lepor,
        MetricField::Cider,
        MetricField::Meteor,
        MetricField::Sim,
        MetricField::Re,
        MetricField::Msp,
        MetricField::Prs,
        MetricField::Len,
        MetricField::Wps,
        MetricField::Sps,
        MetricField::Cpw,
        MetricField::Spw,
        MetricField::Pol,
        MetricField::Ppw,
    ];

    pub fn name(self) -> &'static str {
        match self {
            MetricField::Ter => "ter",
            MetricField::Bleu1 => "bleu1",
            MetricField::Bleu2 => "bleu2",
            MetricField::Bleu3 => "bleu3",
            MetricField::Bleu4 => "bleu4",
            MetricField::Rouge => "rouge",
            MetricField::Nist => "nist",
            MetricField::Lepor => "lepor",
            MetricField::Cider => "cider",
            MetricField::Meteor => "meteor",
            MetricField::Sim => "sim",
            MetricField::Re => "re",
            MetricField::Msp => "msp",
            MetricField::Prs => "prs",
            MetricField::Len => "len",
            MetricField::Wps => "wps",
            MetricField::Sps => "sps",
            MetricField::Cpw => "cpw",
            MetricField::Spw => "spw",
            MetricField::Pol => "pol",
            MetricField::Ppw => "ppw",
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }

    /// Word-based (reference-comparing) metric, as opposed to grammar-based.
    pub fn is_word_based(self) -> bool {
        self.index() <= MetricField::Sim.index()
    }

    /// Lower is better.
    pub fn is_reversed(self) -> bool {
        self == MetricField::Ter
    }

    pub fn word_based() -> impl Iterator<Item = MetricField> {
        Self::ALL.into_iter().filter(|f| f.is_word_based())
    }

    pub fn grammar_based() -> impl Iterator<Item = MetricField> {
        Self::ALL.into_iter().filter(|f| !f.is_word_based())
    }
}

impl fmt::Display for MetricField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for MetricField {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().to_ascii_lowercase();
        MetricField::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::InvalidInput(format!("unknown metric `{s}`")))
    }
}

/// All metric values for one instance. `None` marks a metric that was
/// disabled, undefined for the utterance, or (prs) not supplied.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MetricVector<T> {
    values: [Option<T>; METRIC_COUNT],
}

impl<T: Scalar> Default for MetricVector<T> {
    fn default() -> Self {
        MetricVector {
            values: [None; METRIC_COUNT],
        }
    }
}

impl<T: Scalar> MetricVector<T> {
    pub fn get(&self, field: MetricField) -> Option<T> {
        self.values[field.index()]
    }

    pub fn set(&mut self, field: MetricField, value: Option<T>) {
        self.values[field.index()] = value;
    }

    pub fn iter(&self) -> impl Iterator<Item = (MetricField, Option<T>)> + '_ {
        MetricField::ALL.into_iter().map(|f| (f, self.get(f)))
    }

    /// Checks the documented value range of every present field.
    pub fn range_violations(&self) -> Vec<MetricField> {
        let zero = T::zero();
        let one = T::one();
        self.iter()
            .filter_map(|(f, v)| v.map(|v| (f, v)))
            .filter(|&(f, v)| {
                let ok = match f {
                    MetricField::Bleu1
                    | MetricField::Bleu2
                    | MetricField::Bleu3
                    | MetricField::Bleu4
                    | MetricField::Rouge
                    | MetricField::Lepor
                    | MetricField::Meteor
                    | MetricField::Sim => v >= zero && v <= one,
                    MetricField::Cider => v >= zero && v <= T::of(10.0),
                    // flesch can be negative, prs is external
                    MetricField::Re | MetricField::Prs => v.is_finite(),
                    _ => v >= zero,
                };
                !ok || v.is_nan()
            })
            .map(|(f, _)| f)
            .collect()
    }
}

impl<T> Index<MetricField> for MetricVector<T> {
    type Output = Option<T>;

    fn index(&self, field: MetricField) -> &Option<T> {
        &self.values[field as usize]
    }
}

impl<T> IndexMut<MetricField> for MetricVector<T> {
    fn index_mut(&mut self, field: MetricField) -> &mut Option<T> {
        &mut self.values[field as usize]
    }
}
