use std::collections::{BTreeMap, HashMap};
use std::path::Path;

use log::warn;
use serde::Serialize;
use unicode_normalization::UnicodeNormalization;

use super::{parse_mr, Corpus, Dimension, Instance, RatingTriple};
use crate::error::{Error, Result};

/// Separator between references inside the CSV `references` field.
pub const REFERENCE_DELIMITER: &str = "|~";

const REQUIRED_COLUMNS: &[&str] = &[
    "instance_id",
    "dataset",
    "system",
    "mr",
    "output",
    "references",
    "inf_1",
    "inf_2",
    "inf_3",
    "nat_1",
    "nat_2",
    "nat_3",
    "qual_1",
    "qual_2",
    "qual_3",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    /// Guess from the file extension; anything but `.json` is CSV.
    pub fn from_path(path: &Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some(e) if e.eq_ignore_ascii_case("json") => Format::Json,
            _ => Format::Csv,
        }
    }
}

impl std::str::FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            _ => Err(Error::InvalidInput(format!("unknown corpus format `{s}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct LoadOptions {
    /// Skip and log invalid rows instead of aborting.
    pub lenient: bool,
}

/// A row-level problem. `row` is the 1-based data row (CSV header excluded).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RowIssue {
    pub row: usize,
    pub column: Option<String>,
    pub message: String,
}

impl RowIssue {
    fn new(row: usize, column: Option<&str>, message: impl Into<String>) -> Self {
        RowIssue {
            row,
            column: column.map(str::to_owned),
            message: message.into(),
        }
    }

    fn into_error(self) -> Error {
        Error::Row {
            row: self.row,
            column: self.column,
            message: self.message,
        }
    }
}

impl std::fmt::Display for RowIssue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "row {}", self.row)?;
        if let Some(c) = &self.column {
            write!(f, ", column `{c}`")?;
        }
        write!(f, ": {}", self.message)
    }
}

#[derive(Debug)]
pub struct LoadOutcome {
    pub corpus: Corpus,
    /// Rows dropped in lenient mode.
    pub skipped: Vec<RowIssue>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ValidationReport {
    pub rows: usize,
    pub issues: Vec<RowIssue>,
    /// Valid instances per (dataset, system).
    pub counts: BTreeMap<String, BTreeMap<String, usize>>,
}

impl ValidationReport {
    pub fn is_clean(&self) -> bool {
        self.issues.is_empty()
    }
}

struct RawRow {
    fields: HashMap<String, String>,
    references: Vec<String>,
}

fn nfc(s: &str) -> String {
    s.nfc().collect()
}

fn read_csv(text: &str) -> Result<Vec<RawRow>> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::Headers)
        .from_reader(text.as_bytes());
    let headers: Vec<String> = reader.headers()?.iter().map(str::to_owned).collect();
    for col in REQUIRED_COLUMNS {
        if !headers.iter().any(|h| h == col) {
            return Err(Error::MissingColumn((*col).to_owned()));
        }
    }
    let mut rows = Vec::new();
    for record in reader.records() {
        let record = record?;
        let mut fields = HashMap::new();
        let mut references = Vec::new();
        for (h, v) in headers.iter().zip(record.iter()) {
            if h == "references" {
                references = v
                    .split(REFERENCE_DELIMITER)
                    .map(|r| nfc(r.trim()))
                    .filter(|r| !r.is_empty())
                    .collect();
            } else if !v.trim().is_empty() {
                fields.insert(h.clone(), nfc(v));
            }
        }
        rows.push(RawRow { fields, references });
    }
    Ok(rows)
}

fn read_json(text: &str) -> Result<Vec<Result<RawRow, RowIssue>>> {
    let values: Vec<serde_json::Value> = serde_json::from_str(text)?;
    Ok(values
        .into_iter()
        .enumerate()
        .map(|(i, v)| {
            let row = i + 1;
            let obj = v
                .as_object()
                .ok_or_else(|| RowIssue::new(row, None, "expected a JSON object"))?;
            let mut fields = HashMap::new();
            let mut references = Vec::new();
            for (k, v) in obj {
                if k == "references" {
                    let arr = v
                        .as_array()
                        .ok_or_else(|| RowIssue::new(row, Some("references"), "expected an array of strings"))?;
                    for r in arr {
                        let s = r
                            .as_str()
                            .ok_or_else(|| RowIssue::new(row, Some("references"), "expected an array of strings"))?;
                        if !s.trim().is_empty() {
                            references.push(nfc(s.trim()));
                        }
                    }
                    continue;
                }
                let s = match v {
                    serde_json::Value::Null => continue,
                    serde_json::Value::String(s) => s.clone(),
                    serde_json::Value::Number(n) => n.to_string(),
                    _ => {
                        return Err(RowIssue::new(row, Some(k), "expected a string or number"));
                    }
                };
                if !s.trim().is_empty() {
                    fields.insert(k.clone(), nfc(&s));
                }
            }
            Ok(RawRow { fields, references })
        })
        .collect())
}

fn score(raw: &RawRow, row: usize, column: &str) -> Result<u8, RowIssue> {
    let text = raw
        .fields
        .get(column)
        .ok_or_else(|| RowIssue::new(row, Some(column), "missing rating: expected 3 raters"))?;
    let value: f64 = text
        .trim()
        .parse()
        .map_err(|_| RowIssue::new(row, Some(column), format!("rating `{text}` is not a number")))?;
    if value.fract() != 0.0 || !(1.0..=6.0).contains(&value) {
        return Err(RowIssue::new(
            row,
            Some(column),
            format!("rating `{text}` outside the integer range [1,6]"),
        ));
    }
    Ok(value as u8)
}

fn build_instance(raw: &RawRow, row: usize) -> Result<Instance, RowIssue> {
    let text = |col: &str| -> Result<String, RowIssue> {
        raw.fields
            .get(col)
            .map(|s| s.trim().to_owned())
            .filter(|s| !s.is_empty())
            .ok_or_else(|| RowIssue::new(row, Some(col), "missing or empty value"))
    };
    let instance_id = text("instance_id")?;
    let dataset = text("dataset")?;
    let system = text("system")?;
    let mr_text = text("mr")?;
    let mr = parse_mr(&mr_text).map_err(|e| RowIssue::new(row, Some("mr"), e.to_string()))?;
    let output = text("output")?;
    if raw.references.is_empty() {
        return Err(RowIssue::new(
            row,
            Some("references"),
            "at least one reference is required",
        ));
    }
    if let Some(extra) = raw.fields.keys().find(|k| {
        Dimension::ALL.iter().any(|d| {
            k.strip_prefix(d.column_prefix())
                .and_then(|s| s.strip_prefix('_'))
                .and_then(|n| n.parse::<usize>().ok())
                .is_some_and(|n| n > 3 || n == 0)
        })
    }) {
        return Err(RowIssue::new(row, Some(extra), "expected exactly 3 raters"));
    }

    let mut ratings = Vec::with_capacity(3);
    for dim in Dimension::ALL {
        let p = dim.column_prefix();
        let scores = [
            score(raw, row, &format!("{p}_1"))?,
            score(raw, row, &format!("{p}_2"))?,
            score(raw, row, &format!("{p}_3"))?,
        ];
        ratings.push(RatingTriple::new(dim, scores).map_err(|e| RowIssue::new(row, None, e.to_string()))?);
    }
    let parse_score = match raw.fields.get("parse_score") {
        Some(s) => Some(
            s.trim()
                .parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| RowIssue::new(row, Some("parse_score"), format!("`{s}` is not a finite number")))?,
        ),
        None => None,
    };
    let pair_key = raw
        .fields
        .get("pair_key")
        .map(|s| s.trim().to_owned())
        .filter(|s| !s.is_empty());

    Ok(Instance {
        instance_id,
        pair_key,
        dataset,
        system,
        mr,
        output,
        references: raw.references.clone(),
        ratings: [ratings[0], ratings[1], ratings[2]],
        parse_score,
    })
}

/// Corpus-level checks: unique ids and well-formed pairs. Returns issues
/// keyed by the position in `rows`.
fn integrity_issues(rows: &[(usize, Instance)]) -> Vec<(usize, RowIssue)> {
    let mut issues = Vec::new();
    let mut seen: HashMap<&str, usize> = HashMap::new();
    for (pos, (row, inst)) in rows.iter().enumerate() {
        if let Some(first) = seen.insert(&inst.instance_id, *row) {
            issues.push((
                pos,
                RowIssue::new(
                    *row,
                    Some("instance_id"),
                    format!(
                        "duplicate instance_id `{}` (first seen at row {first})",
                        inst.instance_id
                    ),
                ),
            ));
        }
    }
    let mut groups: BTreeMap<&str, Vec<usize>> = BTreeMap::new();
    for (pos, (_, inst)) in rows.iter().enumerate() {
        if let Some(k) = &inst.pair_key {
            groups.entry(k).or_default().push(pos);
        }
    }
    for (key, members) in groups {
        let message = if members.len() != 2 {
            Some(format!(
                "pair_key `{key}` groups {} instances, expected 2",
                members.len()
            ))
        } else if rows[members[0]].1.system == rows[members[1]].1.system {
            Some(format!("pair_key `{key}` pairs two outputs of the same system"))
        } else if rows[members[0]].1.dataset != rows[members[1]].1.dataset {
            Some(format!("pair_key `{key}` spans two datasets"))
        } else {
            None
        };
        if let Some(message) = message {
            for pos in members {
                issues.push((pos, RowIssue::new(rows[pos].0, Some("pair_key"), message.clone())));
            }
        }
    }
    issues.sort_by_key(|(pos, _)| *pos);
    issues
}

fn read_rows(text: &str, format: Format) -> Result<Vec<Result<RawRow, RowIssue>>> {
    match format {
        Format::Csv => Ok(read_csv(text)?.into_iter().map(Ok).collect()),
        Format::Json => read_json(text),
    }
}

fn read_text(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::io(path, e))
}

/// Parses corpus text. In strict mode the first invalid row aborts; with
/// `lenient` invalid rows are skipped and reported in [`LoadOutcome::skipped`].
pub fn parse_corpus(text: &str, format: Format, options: &LoadOptions) -> Result<LoadOutcome> {
    let mut skipped = Vec::new();
    let mut rows = Vec::new();
    for (i, raw) in read_rows(text, format)?.into_iter().enumerate() {
        let row = i + 1;
        match raw.and_then(|raw| build_instance(&raw, row)) {
            Ok(inst) => rows.push((row, inst)),
            Err(issue) if options.lenient => {
                warn!("skipping {issue}");
                skipped.push(issue);
            }
            Err(issue) => return Err(issue.into_error()),
        }
    }

    let issues = integrity_issues(&rows);
    if let Some((_, first)) = issues.first() {
        if !options.lenient {
            return Err(first.clone().into_error());
        }
    }
    let mut drop = vec![false; rows.len()];
    for (pos, issue) in issues {
        if issue.column.as_deref() == Some("pair_key") {
            warn!("{issue}; pair key cleared");
            rows[pos].1.pair_key = None;
        } else {
            warn!("skipping {issue}");
            drop[pos] = true;
        }
        skipped.push(issue);
    }
    let instances = rows
        .into_iter()
        .zip(drop)
        .filter(|(_, d)| !d)
        .map(|((_, inst), _)| inst)
        .collect();
    Ok(LoadOutcome {
        corpus: Corpus::new(instances),
        skipped,
    })
}

/// Loads a corpus file; row order is preserved.
pub fn load_corpus(path: &Path, format: Format, options: &LoadOptions) -> Result<LoadOutcome> {
    parse_corpus(&read_text(path)?, format, options)
}

/// Collects every row-level violation instead of stopping at the first.
/// File-level problems (unreadable file, bad JSON, missing CSV column)
/// are still returned as `Err`.
pub fn validate_text(text: &str, format: Format) -> Result<ValidationReport> {
    let raws = read_rows(text, format)?;
    let total = raws.len();
    let mut issues = Vec::new();
    let mut rows = Vec::new();
    for (i, raw) in raws.into_iter().enumerate() {
        match raw.and_then(|raw| build_instance(&raw, i + 1)) {
            Ok(inst) => rows.push((i + 1, inst)),
            Err(issue) => issues.push(issue),
        }
    }
    issues.extend(integrity_issues(&rows).into_iter().map(|(_, i)| i));
    issues.sort_by_key(|i| i.row);
    let mut counts: BTreeMap<String, BTreeMap<String, usize>> = BTreeMap::new();
    for (_, inst) in &rows {
        *counts
            .entry(inst.dataset.clone())
            .or_default()
            .entry(inst.system.clone())
            .or_insert(0) += 1;
    }
    Ok(ValidationReport {
        rows: total,
        issues,
        counts,
    })
}

pub fn validate_file(path: &Path, format: Format) -> Result<ValidationReport> {
    validate_text(&read_text(path)?, format)
}
