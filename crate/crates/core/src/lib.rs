//! Mining sentence-split rewrites from Wikipedia edit history.
//!
//! The pipeline reads a revision dump ([`ingest`]), turns each revision into
//! tokenized sentences ([`normalize`]), pairs a sentence that disappeared with
//! two adjacent sentences that appeared ([`mining`]), and filters, deduplicates
//! and partitions the results ([`corpus`]). [`bleu`] scores candidates and
//! system output; [`eval`] holds baselines and benchmark metrics.

pub mod bleu;
pub mod config;
pub mod corpus;
pub mod error;
pub mod eval;
pub mod ingest;
pub mod mining;
pub mod normalize;
pub mod pipeline;

pub use bleu::{corpus_bleu, sentence_bleu, BleuConfig, BleuReport, BleuStats, Smoothing};
pub use config::PipelineConfig;
pub use corpus::{build_corpus, MinerConfig, SplitExample, StageCounts};
pub use error::{Error, Result};
pub use eval::{evaluate, EvalInstance, EvalReport};
pub use ingest::{stream_dump, DumpFormat, IngestOptions, PageRevisionStream, RawRevision};
pub use mining::{mine_pair, Direction, SplitCandidate};
pub use normalize::{Normalizer, Sentence, SnapshotSentences};
pub use pipeline::{mine_dump, MineRun, Stage};
