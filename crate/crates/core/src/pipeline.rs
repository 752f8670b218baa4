//! Dump to corpus, with page-parallel mining.
//!
//! Pages are read sequentially and mined in fixed-size batches on a worker
//! pool. Results are collected in page order, so the candidate list (and
//! everything derived from it) does not depend on the number of workers.
//! Selection in [`build_corpus`] is the only step that needs all candidates at
//! once.

use std::io::BufRead;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::corpus::{build_corpus, MinerConfig, SplitExample, StageCounts};
use crate::error::{Error, Result};
use crate::ingest::{stream_dump, DumpFormat, IngestOptions, IngestStats, PageRevisionStream};
use crate::mining::{mine_pair, SplitCandidate};
use crate::normalize::Normalizer;

/// Pages per progress report.
pub const PROGRESS_INTERVAL: u64 = 10_000;
const BATCH_SIZE: usize = 500;

/// Which stage's output a mining run produces.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Stage {
    /// Every mined candidate, unfiltered.
    Candidates,
    #[default]
    Corpus,
}

impl std::str::FromStr for Stage {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "candidates" => Ok(Stage::Candidates),
            "corpus" => Ok(Stage::Corpus),
            other => Err(Error::Config(format!(
                "unknown stage `{other}` (expected candidates or corpus)"
            ))),
        }
    }
}

/// Candidates from every adjacent revision pair of one page.
pub fn mine_page(page: &PageRevisionStream, normalizer: &Normalizer) -> Vec<SplitCandidate> {
    let snapshots: Vec<_> = page
        .revisions
        .iter()
        .map(|rev| normalizer.snapshot_sentences(rev))
        .collect();
    snapshots
        .windows(2)
        .flat_map(|pair| mine_pair(&pair[0], &pair[1]))
        .collect()
}

#[derive(Debug, Clone, Default)]
pub struct MinedCandidates {
    pub candidates: Vec<SplitCandidate>,
    pub ingest: IngestStats,
}

/// Read a dump and mine every page. `progress` receives the running page
/// count every [`PROGRESS_INTERVAL`] pages.
pub fn mine_candidates<R: BufRead>(
    source: R,
    format: DumpFormat,
    options: IngestOptions,
    normalizer: &Normalizer,
    workers: usize,
    mut progress: impl FnMut(u64),
) -> Result<MinedCandidates> {
    if workers == 0 {
        return Err(Error::Config("workers must be at least 1".into()));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::Config(format!("cannot start {workers} workers: {e}")))?;

    let mut pages = stream_dump(source, format, options);
    let mut candidates = Vec::new();
    let mut done = 0u64;
    loop {
        let batch = pages
            .by_ref()
            .take(BATCH_SIZE)
            .collect::<Result<Vec<_>>>()?;
        if batch.is_empty() {
            break;
        }
        let mined: Vec<Vec<SplitCandidate>> = pool.install(|| {
            batch
                .par_iter()
                .map(|page| mine_page(page, normalizer))
                .collect()
        });
        candidates.extend(mined.into_iter().flatten());
        for _ in 0..batch.len() {
            done += 1;
            if done.is_multiple_of(PROGRESS_INTERVAL) {
                progress(done);
            }
        }
    }
    Ok(MinedCandidates {
        candidates,
        ingest: pages.stats().clone(),
    })
}

/// Everything a mining run needs besides the dump itself.
#[derive(Debug, Clone, Copy)]
pub struct MineRun<'a> {
    pub format: DumpFormat,
    pub ingest: IngestOptions,
    pub normalizer: &'a Normalizer,
    pub miner: &'a MinerConfig,
    pub stage: Stage,
    pub workers: usize,
}

#[derive(Debug, Clone, Default)]
pub struct MineOutput {
    pub examples: Vec<SplitExample>,
    pub counts: StageCounts,
    pub ingest: IngestStats,
}

/// Mine a dump and, for [`Stage::Corpus`], filter and select.
pub fn mine_dump<R: BufRead>(
    source: R,
    run: &MineRun<'_>,
    progress: impl FnMut(u64),
) -> Result<MineOutput> {
    run.miner.validate()?;
    let mined = mine_candidates(
        source,
        run.format,
        run.ingest,
        run.normalizer,
        run.workers,
        progress,
    )?;
    let (examples, counts) = match run.stage {
        Stage::Corpus => build_corpus(mined.candidates, run.miner),
        Stage::Candidates => {
            let counts = StageCounts {
                mined: mined.candidates.len(),
                examples: mined.candidates.len(),
                ..StageCounts::default()
            };
            (
                mined
                    .candidates
                    .into_iter()
                    .map(SplitExample::from)
                    .collect(),
                counts,
            )
        }
    };
    Ok(MineOutput {
        examples,
        counts,
        ingest: mined.ingest,
    })
}
