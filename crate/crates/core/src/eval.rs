//! Scoring split-and-rephrase output against benchmark references.
//!
//! A prediction is a list of sentences. For BLEU its sentences are flattened
//! into one token sequence, as are the sentences of every reference; the
//! delimiter between sentences is never scored.

use std::fmt;
use std::io::BufRead;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::bleu::{corpus_bleu, sentence_bleu, BleuConfig};
use crate::corpus::{parse_line, split_on_delimiter};
use crate::error::{Error, Result};
use crate::normalize::Sentence;

pub type Prediction = Vec<Sentence>;

const SENTENCE_FINAL: [&str; 3] = [".", "!", "?"];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EvalInstance {
    pub complex: Sentence,
    /// Each reference is a decomposition into one or more sentences.
    pub references: Vec<Vec<Sentence>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BenchmarkFormat {
    /// The corpus TSV: one reference per line.
    WikisplitTsv,
    /// `complex TAB reference TAB reference ...` per line.
    WebsplitMultiref,
}

impl FromStr for BenchmarkFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "wikisplit-tsv" | "tsv" => Ok(BenchmarkFormat::WikisplitTsv),
            "websplit-multiref" | "multiref" => Ok(BenchmarkFormat::WebsplitMultiref),
            other => Err(Error::Config(format!(
                "unknown benchmark format `{other}` (expected wikisplit-tsv or websplit-multiref)"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Baseline {
    Source,
    SplitHalf,
}

impl FromStr for Baseline {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "source" => Ok(Baseline::Source),
            "split-half" | "splithalf" => Ok(Baseline::SplitHalf),
            other => Err(Error::Config(format!(
                "unknown baseline `{other}` (expected source or split-half)"
            ))),
        }
    }
}

/// The input, unchanged, as a one-sentence prediction.
pub fn baseline_source(complex: &Sentence) -> Prediction {
    vec![complex.clone()]
}

/// First half of the tokens (the larger half when the count is odd) plus a
/// period, then the second half.
pub fn baseline_split_half(complex: &Sentence) -> Result<Prediction> {
    let tokens = complex.tokens();
    if tokens.len() < 2 {
        return Err(Error::Degenerate(format!(
            "cannot split a {}-token sentence into two halves",
            tokens.len()
        )));
    }
    let mid = tokens.len().div_ceil(2);
    let mut first = tokens[..mid].to_vec();
    first.push(".".to_owned());
    let second = tokens[mid..].to_vec();
    Ok(vec![
        Sentence::new(first).expect("non-empty half"),
        Sentence::new(second).expect("non-empty half"),
    ])
}

pub fn run_baseline(baseline: Baseline, instances: &[EvalInstance]) -> Result<Vec<Prediction>> {
    instances
        .iter()
        .map(|inst| match baseline {
            Baseline::Source => Ok(baseline_source(&inst.complex)),
            Baseline::SplitHalf => baseline_split_half(&inst.complex),
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalReport {
    pub corpus_bleu_pct: f64,
    pub macro_sbleu_pct: f64,
    /// Predicted sentences per complex sentence (#S/C).
    pub sents_per_complex: f64,
    /// Predicted tokens per predicted sentence (#T/S).
    pub tokens_per_simple: f64,
    pub instance_count: usize,
    /// Instances whose unsmoothed sentence BLEU hit a zero precision.
    pub ill_defined_count: usize,
    pub total_sentences: usize,
    pub total_tokens: usize,
}

impl EvalReport {
    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

impl fmt::Display for EvalReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "instances    {:>8}", self.instance_count)?;
        writeln!(f, "BLEU         {:>8.1}", self.corpus_bleu_pct)?;
        writeln!(f, "sBLEU        {:>8.1}", self.macro_sbleu_pct)?;
        writeln!(f, "#S/C         {:>8.1}", self.sents_per_complex)?;
        writeln!(f, "#T/S         {:>8.1}", self.tokens_per_simple)?;
        writeln!(f, "ill-defined  {:>8}", self.ill_defined_count)
    }
}

fn flatten(sentences: &[Sentence]) -> Vec<String> {
    sentences
        .iter()
        .flat_map(|s| s.tokens().iter().cloned())
        .collect()
}

/// Corpus BLEU, macro sentence BLEU and length statistics of `predictions`
/// against `instances` (paired by position).
pub fn evaluate(
    predictions: &[Prediction],
    instances: &[EvalInstance],
    cfg: &BleuConfig,
) -> Result<EvalReport> {
    cfg.validate()?;
    if predictions.len() != instances.len() {
        return Err(Error::Input(format!(
            "{} predictions for {} benchmark instances",
            predictions.len(),
            instances.len()
        )));
    }
    if instances.is_empty() {
        return Err(Error::Input("nothing to evaluate".into()));
    }

    let pairs: Vec<(Vec<String>, Vec<Vec<String>>)> = predictions
        .iter()
        .zip(instances)
        .map(|(pred, inst)| {
            (
                flatten(pred),
                inst.references.iter().map(|r| flatten(r)).collect(),
            )
        })
        .collect();

    let corpus = corpus_bleu(&pairs, cfg)?;

    let mut sentence_scores = Vec::with_capacity(pairs.len());
    let mut ill_defined_count = 0;
    for (hyp, refs) in &pairs {
        let report = sentence_bleu(hyp, refs, cfg);
        ill_defined_count += usize::from(report.ill_defined);
        sentence_scores.push(report.score);
    }
    // summing in sorted order makes the mean independent of instance order
    sentence_scores.sort_by(f64::total_cmp);
    let macro_sbleu = sentence_scores.iter().sum::<f64>() / sentence_scores.len() as f64;

    let total_sentences: usize = predictions.iter().map(Vec::len).sum();
    let total_tokens: usize = predictions.iter().flatten().map(Sentence::len).sum();

    Ok(EvalReport {
        corpus_bleu_pct: corpus.score * 100.0,
        macro_sbleu_pct: macro_sbleu * 100.0,
        sents_per_complex: total_sentences as f64 / instances.len() as f64,
        tokens_per_simple: if total_sentences == 0 {
            0.0
        } else {
            total_tokens as f64 / total_sentences as f64
        },
        instance_count: instances.len(),
        ill_defined_count,
        total_sentences,
        total_tokens,
    })
}

/// Sentences of one tokenized multi-sentence text: split on the delimiter
/// token when it occurs, otherwise after each sentence-final punctuation
/// token.
pub fn parse_multi_sentence(text: &str, delimiter: &str) -> Vec<Sentence> {
    let tokens: Vec<&str> = text.split_whitespace().collect();
    if tokens.contains(&delimiter) {
        return split_on_delimiter(text, delimiter)
            .into_iter()
            .filter_map(Sentence::new)
            .collect();
    }
    let mut sentences = Vec::new();
    let mut current = Vec::new();
    for token in tokens {
        current.push(token.to_owned());
        if SENTENCE_FINAL.contains(&token) {
            sentences.extend(Sentence::new(std::mem::take(&mut current)));
        }
    }
    sentences.extend(Sentence::new(current));
    sentences
}

pub fn read_benchmark<R: BufRead>(
    source: R,
    format: BenchmarkFormat,
    delimiter: &str,
) -> Result<Vec<EvalInstance>> {
    let mut out = Vec::new();
    for (i, line) in source.lines().enumerate() {
        let line = line?;
        let line_no = i + 1;
        if line.trim().is_empty() {
            continue;
        }
        let instance = match format {
            BenchmarkFormat::WikisplitTsv => {
                let ex = parse_line(&line, line_no, delimiter)?;
                let [s1, s2] = ex.simples;
                EvalInstance {
                    complex: ex.complex,
                    references: vec![vec![s1, s2]],
                }
            }
            BenchmarkFormat::WebsplitMultiref => {
                let line = line.strip_suffix('\r').unwrap_or(&line);
                let mut fields = line.split('\t');
                let complex = fields
                    .next()
                    .and_then(Sentence::from_tokenized)
                    .ok_or_else(|| Error::format(line_no, "empty complex sentence"))?;
                let mut references = Vec::new();
                for field in fields {
                    let reference = parse_multi_sentence(field, delimiter);
                    if reference.is_empty() {
                        return Err(Error::format(line_no, "empty reference"));
                    }
                    references.push(reference);
                }
                if references.is_empty() {
                    return Err(Error::format(
                        line_no,
                        "expected at least one TAB-separated reference",
                    ));
                }
                EvalInstance {
                    complex,
                    references,
                }
            }
        };
        out.push(instance);
    }
    Ok(out)
}

/// One prediction per line. Blank lines are empty predictions, so line `i`
/// always pairs with instance `i`; a trailing newline does not add one.
pub fn read_predictions<R: BufRead>(source: R, delimiter: &str) -> Result<Vec<Prediction>> {
    source
        .lines()
        .map(|line| Ok(parse_multi_sentence(&line?, delimiter)))
        .collect()
}
