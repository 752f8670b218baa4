//! From mined candidates to a deduplicated, filtered, partitioned corpus.

mod filter;
mod partition;
mod select;
mod stats;
mod tsv;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use filter::{noise_filter, passes_threshold, threshold_filter, ProfanityList};
pub use partition::{partition, PartitionSizes, Partitions};
pub use select::select_best;
pub use stats::{compute_stats, CorpusStats};
pub use tsv::{format_line, parse_line, read_tsv, write_tsv, DEFAULT_DELIMITER};

pub(crate) use tsv::split_on_delimiter;

use crate::error::{Error, Result};
use crate::mining::{Direction, SplitCandidate};
use crate::normalize::Sentence;

/// Where in the stage order the `argmax` over candidates sharing a complex
/// sentence happens relative to the score threshold.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SelectionOrder {
    /// noise filter, then `argmax`, then threshold. Raising the threshold can
    /// only remove examples.
    #[default]
    SelectThenThreshold,
    /// threshold, then noise filter, then `argmax` among the survivors.
    ThresholdThenSelect,
}

impl FromStr for SelectionOrder {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "select-then-threshold" => Ok(SelectionOrder::SelectThenThreshold),
            "threshold-then-select" => Ok(SelectionOrder::ThresholdThenSelect),
            other => Err(Error::Config(format!(
                "unknown selection order `{other}` \
                 (expected select-then-threshold or threshold-then-select)"
            ))),
        }
    }
}

impl fmt::Display for SelectionOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SelectionOrder::SelectThenThreshold => "select-then-threshold",
            SelectionOrder::ThresholdThenSelect => "threshold-then-select",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MinerConfig {
    /// Minimum filter BLEU between the complex sentence and each simple one.
    pub delta: f64,
    pub max_consecutive_repeats: usize,
    /// In characters.
    pub max_token_length: usize,
    pub profanity: ProfanityList,
    pub partition_sizes: PartitionSizes,
    pub rng_seed: u64,
    pub delimiter: String,
    pub selection: SelectionOrder,
}

impl Default for MinerConfig {
    fn default() -> Self {
        MinerConfig {
            delta: 0.2,
            max_consecutive_repeats: 3,
            max_token_length: 25,
            profanity: ProfanityList::default(),
            partition_sizes: PartitionSizes::default(),
            rng_seed: 0,
            delimiter: DEFAULT_DELIMITER.to_owned(),
            selection: SelectionOrder::default(),
        }
    }
}

impl MinerConfig {
    pub fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.delta) {
            return Err(Error::Config(format!(
                "delta must be within [0, 1], got {}",
                self.delta
            )));
        }
        if self.delimiter.is_empty() || self.delimiter.contains(char::is_whitespace) {
            return Err(Error::Config(format!(
                "delimiter must be a single non-empty token, got {:?}",
                self.delimiter
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Provenance {
    pub page_id: u64,
    pub revision_pair: (u64, u64),
    pub direction: Direction,
}

/// A corpus record: one complex sentence and its two-sentence rewrite.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SplitExample {
    pub complex: Sentence,
    pub simples: [Sentence; 2],
    /// Not stored in the TSV format.
    pub provenance: Option<Provenance>,
}

impl SplitExample {
    pub fn new(complex: Sentence, simple_1: Sentence, simple_2: Sentence) -> Self {
        SplitExample {
            complex,
            simples: [simple_1, simple_2],
            provenance: None,
        }
    }

    pub fn sentences(&self) -> impl Iterator<Item = &Sentence> {
        std::iter::once(&self.complex).chain(self.simples.iter())
    }
}

impl From<SplitCandidate> for SplitExample {
    fn from(c: SplitCandidate) -> Self {
        SplitExample {
            complex: c.complex,
            simples: [c.simple_1, c.simple_2],
            provenance: Some(Provenance {
                page_id: c.page_id,
                revision_pair: c.revision_pair,
                direction: c.direction,
            }),
        }
    }
}

/// Candidate counts after each stage, in the order the stages ran.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct StageCounts {
    pub mined: usize,
    pub after_noise: usize,
    pub after_select: usize,
    pub after_threshold: usize,
    pub examples: usize,
}

/// Apply noise filtering, per-complex-sentence selection and the score
/// threshold in the configured order.
///
/// Selection groups candidates across the whole input, so this is the one
/// place the pipeline needs every candidate at once.
pub fn build_corpus(
    candidates: Vec<SplitCandidate>,
    cfg: &MinerConfig,
) -> (Vec<SplitExample>, StageCounts) {
    let mut counts = StageCounts {
        mined: candidates.len(),
        ..StageCounts::default()
    };
    let noise = |cands: Vec<SplitCandidate>| -> Vec<SplitCandidate> {
        cands.into_iter().filter(|c| noise_filter(c, cfg)).collect()
    };
    let selected = match cfg.selection {
        SelectionOrder::SelectThenThreshold => {
            let clean = noise(candidates);
            counts.after_noise = clean.len();
            let best = select_best(clean);
            counts.after_select = best.len();
            let kept = threshold_filter(best, cfg.delta);
            counts.after_threshold = kept.len();
            kept
        }
        SelectionOrder::ThresholdThenSelect => {
            let kept = threshold_filter(candidates, cfg.delta);
            counts.after_threshold = kept.len();
            let clean = noise(kept);
            counts.after_noise = clean.len();
            let best = select_best(clean);
            counts.after_select = best.len();
            best
        }
    };
    counts.examples = selected.len();
    (
        selected.into_iter().map(SplitExample::from).collect(),
        counts,
    )
}
