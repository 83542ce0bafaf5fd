//! Computes the full [`MetricVector`] for every instance of a corpus.

use std::collections::{BTreeSet, HashMap};

use rayon::prelude::*;
use serde::Serialize;

use crate::corpus::Corpus;
use crate::error::{Error, Result};
use crate::grammar_metrics::{flesch_re, misspellings, parse_score, surface_stats};
use crate::lexicon::SynonymLexicon;
use crate::metric::{MetricField, MetricVector};
use crate::scalar::Scalar;
use crate::textproc::{tokenize, TokenSequence};
use crate::word_metrics::{
    bleu, lepor, meteor, nist, rouge_l, sim, ter, CiderScorer, LeporConfig, MeteorParams, NIST_DEFAULT_N,
};

#[derive(Debug, Clone, Serialize)]
pub struct ScoreConfig {
    pub metrics: BTreeSet<MetricField>,
    pub meteor: MeteorParams,
    pub lepor: LeporConfig,
    pub nist_n: usize,
    #[serde(skip)]
    pub synonyms: Option<SynonymLexicon>,
}

impl Default for ScoreConfig {
    fn default() -> Self {
        ScoreConfig {
            metrics: MetricField::ALL.into_iter().collect(),
            meteor: MeteorParams::default(),
            lepor: LeporConfig::default(),
            nist_n: NIST_DEFAULT_N,
            synonyms: None,
        }
    }
}

impl ScoreConfig {
    pub fn with_metrics(metrics: impl IntoIterator<Item = MetricField>) -> Self {
        ScoreConfig {
            metrics: metrics.into_iter().collect(),
            ..ScoreConfig::default()
        }
    }

    fn on(&self, f: MetricField) -> bool {
        self.metrics.contains(&f)
    }
}

struct Prepared {
    output: TokenSequence,
    refs: Vec<Vec<String>>,
}

/// Scores every instance. Results are in corpus order and do not depend on
/// the number of worker threads.
pub fn score_corpus<T: Scalar>(corpus: &Corpus, config: &ScoreConfig) -> Result<Vec<MetricVector<T>>> {
    if config.on(MetricField::Sim) && corpus.embeddings.is_none() {
        return Err(Error::MissingResource {
            what: "an embedding table for sim",
            flag: "--embeddings",
        });
    }
    if config.on(MetricField::Msp) && corpus.dictionary.is_none() {
        return Err(Error::MissingResource {
            what: "a dictionary for msp",
            flag: "--dictionary",
        });
    }

    let prepared: Vec<Prepared> = corpus
        .instances
        .par_iter()
        .map(|inst| Prepared {
            output: tokenize(&inst.output),
            refs: inst.references.iter().map(|r| tokenize(r).tokens).collect(),
        })
        .collect();

    let cider = if config.on(MetricField::Cider) && !prepared.is_empty() {
        let pairs: Vec<(&[String], Vec<&[String]>)> = prepared
            .iter()
            .map(|p| (p.output.tokens.as_slice(), p.refs.iter().map(Vec::as_slice).collect()))
            .collect();
        Some(CiderScorer::new(&pairs)?)
    } else {
        None
    };

    corpus
        .instances
        .par_iter()
        .zip(prepared.par_iter())
        .map(|(inst, prep)| {
            let cand = prep.output.tokens.as_slice();
            let refs = prep.refs.as_slice();
            let mut v = MetricVector::<T>::default();
            let on = |f| config.on(f);

            if on(MetricField::Ter) {
                v[MetricField::Ter] = Some(ter(cand, refs)?);
            }
            for (n, f) in [
                (1, MetricField::Bleu1),
                (2, MetricField::Bleu2),
                (3, MetricField::Bleu3),
                (4, MetricField::Bleu4),
            ] {
                if on(f) {
                    v[f] = Some(bleu(cand, refs, n)?);
                }
            }
            if on(MetricField::Rouge) {
                v[MetricField::Rouge] = Some(rouge_l(cand, refs)?);
            }
            if on(MetricField::Nist) {
                v[MetricField::Nist] = Some(nist(cand, refs, config.nist_n)?);
            }
            if on(MetricField::Lepor) {
                v[MetricField::Lepor] = Some(lepor(cand, refs, &config.lepor)?);
            }
            if let Some(scorer) = &cider {
                v[MetricField::Cider] = Some(scorer.score(cand, refs)?);
            }
            if on(MetricField::Meteor) {
                v[MetricField::Meteor] = Some(meteor(cand, refs, config.synonyms.as_ref(), &config.meteor)?);
            }
            if let (true, Some(table)) = (on(MetricField::Sim), &corpus.embeddings) {
                v[MetricField::Sim] = Some(sim(&inst.mr, cand, table)?);
            }

            if on(MetricField::Re) {
                v[MetricField::Re] = flesch_re(&prep.output);
            }
            if let (true, Some(dict)) = (on(MetricField::Msp), &corpus.dictionary) {
                v[MetricField::Msp] = Some(T::of_usize(misspellings(&prep.output, dict)));
            }
            if on(MetricField::Prs) {
                v[MetricField::Prs] = parse_score(inst).map(T::of);
            }
            if let Ok(s) = surface_stats::<T>(&prep.output, &inst.output) {
                let fields = [
                    (MetricField::Len, s.len),
                    (MetricField::Wps, s.wps),
                    (MetricField::Sps, s.sps),
                    (MetricField::Cpw, s.cpw),
                    (MetricField::Spw, s.spw),
                    (MetricField::Pol, T::of_usize(s.pol)),
                    (MetricField::Ppw, s.ppw),
                ];
                for (f, x) in fields {
                    if on(f) {
                        v[f] = Some(x);
                    }
                }
            }
            Ok(v)
        })
        .collect()
}

const ID_COLUMNS: [&str; 3] = ["instance_id", "dataset", "system"];

/// Per-instance scores as TSV: id columns, then the 21 metrics in report
/// order, `NA` where absent.
pub fn scores_to_tsv<T: Scalar>(corpus: &Corpus, scores: &[MetricVector<T>]) -> Result<String> {
    if corpus.len() != scores.len() {
        return Err(Error::InvalidInput(format!(
            "{} instances but {} metric vectors",
            corpus.len(),
            scores.len()
        )));
    }
    let mut w = csv::WriterBuilder::new()
        .delimiter(b'\t')
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    let header: Vec<&str> = ID_COLUMNS
        .into_iter()
        .chain(MetricField::ALL.iter().map(|f| f.name()))
        .collect();
    w.write_record(&header)?;
    for (inst, v) in corpus.instances.iter().zip(scores) {
        let mut row = vec![inst.instance_id.clone(), inst.dataset.clone(), inst.system.clone()];
        row.extend(
            v.iter()
                .map(|(_, x)| x.map_or_else(|| "NA".to_string(), |x| format!("{:?}", x.as_f64()))),
        );
        w.write_record(&row)?;
    }
    let bytes = w.into_inner().map_err(|e| csv::Error::from(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("UTF-8 input"))
}

/// Reads a table written by [`scores_to_tsv`] and aligns it with `corpus`
/// by instance id. Metric columns may be missing or in any order.
pub fn scores_from_tsv<T: Scalar>(text: &str, corpus: &Corpus) -> Result<Vec<MetricVector<T>>> {
    let mut r = csv::ReaderBuilder::new().delimiter(b'\t').from_reader(text.as_bytes());
    let headers = r.headers()?.clone();
    let id_col = headers
        .iter()
        .position(|h| h == "instance_id")
        .ok_or_else(|| Error::MissingColumn("instance_id".into()))?;
    let fields: Vec<(usize, MetricField)> = headers
        .iter()
        .enumerate()
        .filter_map(|(i, h)| h.parse::<MetricField>().ok().map(|f| (i, f)))
        .collect();
    let mut by_id: HashMap<String, MetricVector<T>> = HashMap::new();
    for (row, rec) in r.records().enumerate() {
        let rec = rec?;
        let mut v = MetricVector::default();
        for &(i, f) in &fields {
            let cell = rec.get(i).unwrap_or("NA").trim();
            if cell != "NA" && !cell.is_empty() {
                let x: f64 = cell
                    .parse()
                    .map_err(|_| Error::row(row + 1, Some(f.name()), format!("not a number: `{cell}`")))?;
                v[f] = Some(T::of(x));
            }
        }
        by_id.insert(rec.get(id_col).unwrap_or_default().to_string(), v);
    }
    corpus
        .instances
        .iter()
        .map(|inst| {
            by_id
                .remove(&inst.instance_id)
                .ok_or_else(|| Error::InvalidInput(format!("no scores for instance `{}`", inst.instance_id)))
        })
        .collect()
}
