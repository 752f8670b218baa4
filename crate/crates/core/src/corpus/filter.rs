use std::collections::HashSet;
use std::path::Path;

use crate::error::{Error, Result};
use crate::mining::SplitCandidate;

use super::MinerConfig;

/// Keep candidates whose two filter scores are both at least `delta`.
pub fn threshold_filter(candidates: Vec<SplitCandidate>, delta: f64) -> Vec<SplitCandidate> {
    candidates
        .into_iter()
        .filter(|c| passes_threshold(c, delta))
        .collect()
}

pub fn passes_threshold(candidate: &SplitCandidate, delta: f64) -> bool {
    candidate.bleu_c_s1 >= delta && candidate.bleu_c_s2 >= delta
}

/// Case-folded words that mark an example as vandalism.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ProfanityList {
    words: HashSet<String>,
}

impl ProfanityList {
    pub fn parse(list: &str) -> Self {
        let words = list
            .lines()
            .map(|line| line.split('#').next().unwrap_or("").trim())
            .filter(|w| !w.is_empty())
            .map(str::to_lowercase)
            .collect();
        ProfanityList { words }
    }

    pub fn load(path: &Path) -> Result<Self> {
        std::fs::read_to_string(path)
            .map(|text| Self::parse(&text))
            .map_err(|source| Error::ConfigFile {
                path: path.to_owned(),
                source,
            })
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn matches(&self, token: &str) -> bool {
        !self.words.is_empty() && self.words.contains(&token.to_lowercase())
    }
}

fn longest_run(tokens: &[String]) -> usize {
    let mut longest = 0;
    let mut run = 0;
    let mut previous: Option<&String> = None;
    for token in tokens {
        run = if previous == Some(token) { run + 1 } else { 1 };
        longest = longest.max(run);
        previous = Some(token);
    }
    longest
}

pub(crate) fn sentence_is_clean(tokens: &[String], cfg: &MinerConfig) -> bool {
    longest_run(tokens) <= cfg.max_consecutive_repeats
        && tokens
            .iter()
            .all(|t| t.chars().count() <= cfg.max_token_length && !cfg.profanity.matches(t))
}

/// `false` if any of the three sentences repeats a token too many times in a
/// row, has an over-long token, or contains a listed word.
pub fn noise_filter(candidate: &SplitCandidate, cfg: &MinerConfig) -> bool {
    [&candidate.complex, &candidate.simple_1, &candidate.simple_2]
        .into_iter()
        .all(|s| sentence_is_clean(s.tokens(), cfg))
}
