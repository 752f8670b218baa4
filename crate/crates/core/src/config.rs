//! Flat `key = value` run configuration.
//!
//! Blank lines and lines starting with `#` are ignored. Later assignments win,
//! so command-line overrides are applied with [`PipelineConfig::set`] after the
//! file is read.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::bleu::{BleuConfig, Smoothing};
use crate::corpus::{MinerConfig, ProfanityList, SelectionOrder};
use crate::error::{Error, Result};
use crate::ingest::{DumpFormat, IngestOptions};
use crate::normalize::{Abbreviations, Normalizer};

/// Every key accepted by [`PipelineConfig::set`], in the order they are echoed.
pub const KEYS: &[&str] = &[
    "input",
    "output",
    "format",
    "namespace",
    "workers",
    "abbreviations",
    "profanity",
    "delta",
    "max_consecutive_repeats",
    "max_token_length",
    "selection",
    "delimiter",
    "seed",
    "tune_size",
    "validation_size",
    "test_size",
    "bleu_max_order",
    "smoothing",
    "case_sensitive",
];

#[derive(Debug, Clone, PartialEq)]
pub struct PipelineConfig {
    pub input: Option<PathBuf>,
    pub output: Option<PathBuf>,
    pub format: DumpFormat,
    /// `None` mines every namespace.
    pub namespace: Option<i32>,
    pub workers: usize,
    /// Replaces the built-in English list when set.
    pub abbreviations: Option<PathBuf>,
    pub profanity: Option<PathBuf>,
    /// The profanity list is loaded separately; see [`PipelineConfig::miner`].
    pub miner: MinerConfig,
    /// Scoring used by evaluation. Mining always scores with the filter
    /// configuration.
    pub bleu: BleuConfig,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            input: None,
            output: None,
            format: DumpFormat::MediawikiXml,
            namespace: IngestOptions::default().namespace,
            workers: 1,
            abbreviations: None,
            profanity: None,
            miner: MinerConfig::default(),
            bleu: BleuConfig::default(),
        }
    }
}

fn parse_value<T: FromStr>(key: &str, value: &str) -> Result<T>
where
    T::Err: fmt::Display,
{
    value
        .parse()
        .map_err(|e| Error::Config(format!("invalid value `{value}` for `{key}`: {e}")))
}

fn optional_path(value: &str) -> Option<PathBuf> {
    (!value.is_empty()).then(|| PathBuf::from(value))
}

impl PipelineConfig {
    pub fn parse(text: &str) -> Result<Self> {
        let mut cfg = PipelineConfig::default();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                Error::Config(format!(
                    "line {}: expected `key = value`, got `{line}`",
                    i + 1
                ))
            })?;
            cfg.set(key.trim(), value.trim())
                .map_err(|e| Error::Config(format!("line {}: {}", i + 1, config_message(e))))?;
        }
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| Error::ConfigFile {
            path: path.to_owned(),
            source,
        })?;
        Self::parse(&text)
    }

    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        match key {
            "input" => self.input = optional_path(value),
            "output" => self.output = optional_path(value),
            "format" => self.format = value.parse()?,
            "namespace" => {
                self.namespace = match value {
                    "all" | "" => None,
                    n => Some(parse_value(key, n)?),
                }
            }
            "workers" => self.workers = parse_value(key, value)?,
            "abbreviations" => self.abbreviations = optional_path(value),
            "profanity" => self.profanity = optional_path(value),
            "delta" => self.miner.delta = parse_value(key, value)?,
            "max_consecutive_repeats" => {
                self.miner.max_consecutive_repeats = parse_value(key, value)?
            }
            "max_token_length" => self.miner.max_token_length = parse_value(key, value)?,
            "selection" => self.miner.selection = value.parse::<SelectionOrder>()?,
            "delimiter" => self.miner.delimiter = value.to_owned(),
            "seed" => self.miner.rng_seed = parse_value(key, value)?,
            "tune_size" => self.miner.partition_sizes.tune = parse_value(key, value)?,
            "validation_size" => self.miner.partition_sizes.validation = parse_value(key, value)?,
            "test_size" => self.miner.partition_sizes.test = parse_value(key, value)?,
            "bleu_max_order" => self.bleu.max_order = parse_value(key, value)?,
            "smoothing" => self.bleu.smoothing = value.parse::<Smoothing>()?,
            "case_sensitive" => self.bleu.case_sensitive = parse_value(key, value)?,
            other => return Err(Error::Config(format!("unknown key `{other}`"))),
        }
        Ok(())
    }

    /// The effective value of every key, in [`KEYS`] order.
    pub fn entries(&self) -> Vec<(&'static str, String)> {
        let path = |p: &Option<PathBuf>| {
            p.as_ref()
                .map(|p| p.display().to_string())
                .unwrap_or_default()
        };
        let m = &self.miner;
        KEYS.iter()
            .map(|&key| {
                let value = match key {
                    "input" => path(&self.input),
                    "output" => path(&self.output),
                    "format" => self.format.to_string(),
                    "namespace" => self
                        .namespace
                        .map_or_else(|| "all".to_owned(), |n| n.to_string()),
                    "workers" => self.workers.to_string(),
                    "abbreviations" => path(&self.abbreviations),
                    "profanity" => path(&self.profanity),
                    "delta" => m.delta.to_string(),
                    "max_consecutive_repeats" => m.max_consecutive_repeats.to_string(),
                    "max_token_length" => m.max_token_length.to_string(),
                    "selection" => m.selection.to_string(),
                    "delimiter" => m.delimiter.clone(),
                    "seed" => m.rng_seed.to_string(),
                    "tune_size" => m.partition_sizes.tune.to_string(),
                    "validation_size" => m.partition_sizes.validation.to_string(),
                    "test_size" => m.partition_sizes.test.to_string(),
                    "bleu_max_order" => self.bleu.max_order.to_string(),
                    "smoothing" => self.bleu.smoothing.to_string(),
                    "case_sensitive" => self.bleu.case_sensitive.to_string(),
                    _ => unreachable!("every key in KEYS is echoed"),
                };
                (key, value)
            })
            .collect()
    }

    pub fn validate(&self) -> Result<()> {
        if self.workers == 0 {
            return Err(Error::Config("workers must be at least 1".into()));
        }
        self.miner.validate()?;
        self.bleu.validate()?;
        for (key, path) in [
            ("input", &self.input),
            ("abbreviations", &self.abbreviations),
            ("profanity", &self.profanity),
        ] {
            if let Some(path) = path {
                if !path.exists() {
                    return Err(Error::Config(format!(
                        "{key} path {} does not exist",
                        path.display()
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn ingest_options(&self) -> IngestOptions {
        IngestOptions {
            namespace: self.namespace,
        }
    }

    pub fn normalizer(&self) -> Result<Normalizer> {
        let abbreviations = match &self.abbreviations {
            Some(path) => Abbreviations::load(path)?,
            None => Abbreviations::english(),
        };
        Ok(Normalizer::new(abbreviations))
    }

    /// The miner configuration with the profanity list read from disk.
    pub fn miner(&self) -> Result<MinerConfig> {
        let mut miner = self.miner.clone();
        if let Some(path) = &self.profanity {
            miner.profanity = ProfanityList::load(path)?;
        }
        Ok(miner)
    }
}

fn config_message(e: Error) -> String {
    match e {
        Error::Config(msg) => msg,
        other => other.to_string(),
    }
}

impl fmt::Display for PipelineConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (key, value) in self.entries() {
            writeln!(f, "{key} = {value}")?;
        }
        Ok(())
    }
}
