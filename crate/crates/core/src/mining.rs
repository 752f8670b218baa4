//! Split detection between two adjacent snapshots of a page.
//!
//! A sentence `C` that disappeared from one snapshot is paired with two
//! adjacent new sentences `S1 S2` of the other snapshot when `C` and `S1`
//! start with the same three tokens, `C` and `S2` end with the same three
//! tokens, and `S1` and `S2` end differently. Both temporal directions are
//! searched: a sentence split in the newer revision, and two sentences joined
//! into one.

use std::collections::{HashMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::bleu::filter_bleu;
use crate::normalize::{Sentence, SnapshotSentences};

const ANCHOR: usize = 3;
const MIN_COMPLEX_TOKENS: usize = ANCHOR + 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    /// `C` in the older revision, `S1 S2` in the newer.
    Split,
    /// `C` in the newer revision, `S1 S2` in the older.
    Join,
}

impl Direction {
    pub fn flipped(self) -> Self {
        match self {
            Direction::Split => Direction::Join,
            Direction::Join => Direction::Split,
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::Split => "split",
            Direction::Join => "join",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SplitCandidate {
    pub complex: Sentence,
    pub simple_1: Sentence,
    pub simple_2: Sentence,
    pub bleu_c_s1: f64,
    pub bleu_c_s2: f64,
    pub page_id: u64,
    /// `(older revision id, newer revision id)`, whatever the direction.
    pub revision_pair: (u64, u64),
    pub direction: Direction,
    /// Index of `C` in its snapshot's sentence list.
    pub complex_position: usize,
    /// Index of `S1` in its snapshot's sentence list; `S2` follows it.
    pub simple_position: usize,
}

impl SplitCandidate {
    pub fn bleu_sum(&self) -> f64 {
        self.bleu_c_s1 + self.bleu_c_s2
    }

    pub fn min_bleu(&self) -> f64 {
        self.bleu_c_s1.min(self.bleu_c_s2)
    }
}

fn prefix(s: &[String]) -> &[String] {
    &s[..ANCHOR]
}

fn suffix(s: &[String]) -> &[String] {
    &s[s.len() - ANCHOR..]
}

/// The anchoring test on one `(C, S1, S2)` triple. Too-short sentences fail
/// rather than error.
pub fn trigram_conditions(complex: &Sentence, simple_1: &Sentence, simple_2: &Sentence) -> bool {
    let (c, s1, s2) = (complex.tokens(), simple_1.tokens(), simple_2.tokens());
    if c.len() < MIN_COMPLEX_TOKENS || s1.len() < ANCHOR || s2.len() < ANCHOR {
        return false;
    }
    prefix(c) == prefix(s1) && suffix(c) == suffix(s2) && suffix(s1) != suffix(s2)
}

/// `(C index, S1 index)` pairs with `C` drawn from `c_side` and the adjacent
/// `S1 S2` from `s_side`, in `(C, S1)` order.
fn search(c_side: &[Sentence], s_side: &[Sentence]) -> Vec<(usize, usize)> {
    let in_c_side: HashSet<&[String]> = c_side.iter().map(Sentence::tokens).collect();
    let in_s_side: HashSet<&[String]> = s_side.iter().map(Sentence::tokens).collect();

    let mut by_prefix: HashMap<&[String], Vec<usize>> = HashMap::new();
    for (j, pair) in s_side.windows(2).enumerate() {
        let (s1, s2) = (pair[0].tokens(), pair[1].tokens());
        if s1.len() < ANCHOR || s2.len() < ANCHOR {
            continue;
        }
        if in_c_side.contains(s1) || in_c_side.contains(s2) {
            continue;
        }
        by_prefix.entry(prefix(s1)).or_default().push(j);
    }
    if by_prefix.is_empty() {
        return Vec::new();
    }

    let mut found = Vec::new();
    for (i, c) in c_side.iter().enumerate() {
        let tokens = c.tokens();
        if tokens.len() < MIN_COMPLEX_TOKENS || in_s_side.contains(tokens) {
            continue;
        }
        let Some(starts) = by_prefix.get(prefix(tokens)) else {
            continue;
        };
        for &j in starts {
            if trigram_conditions(c, &s_side[j], &s_side[j + 1]) {
                found.push((i, j));
            }
        }
    }
    found
}

/// All split candidates between two adjacent snapshots of one page: splits
/// (older to newer) first, then joins, each in `(C, S1)` order.
pub fn mine_pair(older: &SnapshotSentences, newer: &SnapshotSentences) -> Vec<SplitCandidate> {
    let revision_pair = (older.revision_id, newer.revision_id);
    let mut out = Vec::new();
    for direction in [Direction::Split, Direction::Join] {
        let (c_side, s_side) = match direction {
            Direction::Split => (&older.sentences, &newer.sentences),
            Direction::Join => (&newer.sentences, &older.sentences),
        };
        for (i, j) in search(c_side, s_side) {
            let complex = &c_side[i];
            let (s1, s2) = (&s_side[j], &s_side[j + 1]);
            out.push(SplitCandidate {
                complex: complex.clone(),
                simple_1: s1.clone(),
                simple_2: s2.clone(),
                bleu_c_s1: filter_bleu(complex, s1),
                bleu_c_s2: filter_bleu(complex, s2),
                page_id: older.page_id,
                revision_pair,
                direction,
                complex_position: i,
                simple_position: j,
            });
        }
    }
    out
}
