use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One attribute of a meaning representation. `value` is `None` for
/// flag-style slots such as `inform(kidsallowed)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Slot {
    pub name: String,
    pub value: Option<String>,
}

/// A dialogue act with its ordered slot list, e.g.
/// `inform(name=X, area=X, pricerange=moderate)`.
///
/// Equality ignores slot order and the raw text: two MRs are equal when
/// their act types match and their slots are equal as multisets.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MeaningRepresentation {
    pub act_type: String,
    pub slots: Vec<Slot>,
    pub raw: String,
}

impl MeaningRepresentation {
    /// True for `inform`, `inform_nomatch`, `inform_only_match`, ...
    pub fn is_inform(&self) -> bool {
        self.act_type.starts_with("inform")
    }

    fn sorted_slots(&self) -> Vec<&Slot> {
        let mut slots: Vec<&Slot> = self.slots.iter().collect();
        slots.sort();
        slots
    }
}

impl PartialEq for MeaningRepresentation {
    fn eq(&self, other: &Self) -> bool {
        self.act_type == other.act_type && self.sorted_slots() == other.sorted_slots()
    }
}

impl Eq for MeaningRepresentation {}

impl fmt::Display for MeaningRepresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(", self.act_type)?;
        for (i, slot) in self.slots.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            match &slot.value {
                Some(v) => write!(f, "{}={}", slot.name, v)?,
                None => f.write_str(&slot.name)?,
            }
        }
        f.write_str(")")
    }
}

impl std::str::FromStr for MeaningRepresentation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_mr(s)
    }
}

fn err(offset: usize, message: impl Into<String>) -> Error {
    Error::MrParse {
        offset,
        message: message.into(),
    }
}

/// Offset of the first non-whitespace byte of `s[start..end]`, and the
/// trimmed slice.
fn trimmed(s: &str, start: usize, end: usize) -> (usize, &str) {
    let piece = &s[start..end];
    let lead = piece.len() - piece.trim_start().len();
    (start + lead, piece.trim())
}

/// Parses `ACT '(' [SLOT (',' SLOT)*] ')'` with `SLOT := name ['=' value]`.
///
/// Whitespace around the act, `=`, `,` and the parentheses is dropped;
/// values keep their inner spaces (`name=the donatello`).
pub fn parse_mr(text: &str) -> Result<MeaningRepresentation> {
    let open = text
        .find('(')
        .ok_or_else(|| err(text.len(), "expected `(` after act type"))?;
    let (act_at, act) = trimmed(text, 0, open);
    if act.is_empty() {
        return Err(err(act_at, "empty act type"));
    }
    if let Some(i) = act.find(|c: char| c.is_whitespace() || c == ')' || c == ',' || c == '=') {
        return Err(err(act_at + i, "invalid character in act type"));
    }

    let close = text[open + 1..]
        .find(['(', ')'])
        .map(|i| open + 1 + i)
        .ok_or_else(|| err(text.len(), "unbalanced parentheses: missing `)`"))?;
    if text.as_bytes()[close] == b'(' {
        return Err(err(close, "nested `(` inside slot list"));
    }
    let tail = &text[close + 1..];
    if let Some(i) = tail.find(|c: char| !c.is_whitespace()) {
        return Err(err(close + 1 + i, "unexpected text after `)`"));
    }

    let mut slots = Vec::new();
    let body = &text[open + 1..close];
    if !body.trim().is_empty() {
        let mut start = open + 1;
        for piece in body.split(',') {
            let end = start + piece.len();
            slots.push(parse_slot(text, start, end)?);
            start = end + 1;
        }
    }

    Ok(MeaningRepresentation {
        act_type: act.to_owned(),
        slots,
        raw: text.to_owned(),
    })
}

fn parse_slot(text: &str, start: usize, end: usize) -> Result<Slot> {
    let piece = &text[start..end];
    let (name_end, value) = match piece.find('=') {
        Some(eq) => {
            let (value_at, value) = trimmed(text, start + eq + 1, end);
            if value.is_empty() {
                return Err(err(value_at, "empty slot value after `=`"));
            }
            (start + eq, Some(value.to_owned()))
        }
        None => (end, None),
    };
    let (name_at, name) = trimmed(text, start, name_end);
    if name.is_empty() {
        return Err(err(name_at, "empty slot name"));
    }
    Ok(Slot {
        name: name.to_owned(),
        value,
    })
}
