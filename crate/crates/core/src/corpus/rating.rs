use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Human rating dimension collected for each system output.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Dimension {
    Informativeness,
    Naturalness,
    Quality,
}

impl Dimension {
    pub const ALL: [Dimension; 3] = [Dimension::Informativeness, Dimension::Naturalness, Dimension::Quality];

    pub fn name(self) -> &'static str {
        match self {
            Dimension::Informativeness => "informativeness",
            Dimension::Naturalness => "naturalness",
            Dimension::Quality => "quality",
        }
    }

    /// Column prefix in the corpus files (`inf_1`, `nat_2`, `qual_3`).
    pub fn column_prefix(self) -> &'static str {
        match self {
            Dimension::Informativeness => "inf",
            Dimension::Naturalness => "nat",
            Dimension::Quality => "qual",
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for Dimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Dimension {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "informativeness" | "inf" | "inform" => Ok(Dimension::Informativeness),
            "naturalness" | "nat" | "natural" => Ok(Dimension::Naturalness),
            "quality" | "qual" => Ok(Dimension::Quality),
            _ => Err(Error::InvalidInput(format!("unknown rating dimension `{s}`"))),
        }
    }
}

pub const MIN_SCORE: u8 = 1;
pub const MAX_SCORE: u8 = 6;

/// Three raters' 1..=6 Likert scores for one dimension.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RatingTriple {
    scores: [u8; 3],
    dimension: Dimension,
}

impl RatingTriple {
    pub fn new(dimension: Dimension, scores: [u8; 3]) -> Result<Self> {
        if let Some(s) = scores.iter().find(|s| !(MIN_SCORE..=MAX_SCORE).contains(*s)) {
            return Err(Error::InvalidInput(format!(
                "{dimension} rating {s} outside [{MIN_SCORE},{MAX_SCORE}]"
            )));
        }
        Ok(RatingTriple { scores, dimension })
    }

    pub fn scores(&self) -> [u8; 3] {
        self.scores
    }

    pub fn dimension(&self) -> Dimension {
        self.dimension
    }

    pub fn median(&self) -> u8 {
        median_rating(self)
    }
}

/// Middle value of the sorted triple.
pub fn median_rating(r: &RatingTriple) -> u8 {
    let mut s = r.scores;
    s.sort_unstable();
    s[1]
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn triple(s: [u8; 3]) -> RatingTriple {
        RatingTriple::new(Dimension::Quality, s).unwrap()
    }

    #[test]
    fn medians() {
        assert_eq!(triple([4, 4, 4]).median(), 4);
        assert_eq!(triple([2, 6, 5]).median(), 5);
        assert_eq!(triple([1, 1, 6]).median(), 1);
    }

    #[test]
    fn out_of_range() {
        assert!(RatingTriple::new(Dimension::Quality, [0, 3, 3]).is_err());
        assert!(RatingTriple::new(Dimension::Quality, [3, 7, 3]).is_err());
    }

    proptest! {
        #[test]
        fn median_is_permutation_invariant(a in 1u8..=6, b in 1u8..=6, c in 1u8..=6) {
            let m = triple([a, b, c]).median();
            for p in [[a, c, b], [b, a, c], [b, c, a], [c, a, b], [c, b, a]] {
                prop_assert_eq!(triple(p).median(), m);
            }
            prop_assert!((1..=6).contains(&m));
        }
    }
}
