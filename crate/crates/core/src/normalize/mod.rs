//! Raw wikitext to tokenized sentence lists.

mod markup;
mod segment;
mod tokenize;

use std::fmt;

use chrono::{DateTime, Utc};
use serde::{Deserialize, Serialize};

pub use markup::strip_markup;
pub use segment::{split_sentences, Abbreviations};
pub use tokenize::tokenize;

use crate::ingest::RawRevision;

/// A non-empty token sequence. Its surface text is the tokens joined by single
/// spaces.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<String>", into = "Vec<String>")]
pub struct Sentence {
    tokens: Vec<String>,
}

impl Sentence {
    /// `None` for an empty token list.
    pub fn new(tokens: Vec<String>) -> Option<Self> {
        if tokens.is_empty() {
            None
        } else {
            Some(Sentence { tokens })
        }
    }

    /// Run the tokenizer over `text`.
    pub fn tokenize(text: &str) -> Option<Self> {
        Self::new(tokenize(text))
    }

    /// Split already-tokenized text on whitespace.
    pub fn from_tokenized(text: &str) -> Option<Self> {
        Self::new(text.split_whitespace().map(str::to_owned).collect())
    }

    pub fn tokens(&self) -> &[String] {
        &self.tokens
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    /// Always false; kept for the `len`/`is_empty` convention.
    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    pub fn raw(&self) -> String {
        self.tokens.join(" ")
    }

    pub fn into_tokens(self) -> Vec<String> {
        self.tokens
    }
}

impl fmt::Display for Sentence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, token) in self.tokens.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            f.write_str(token)?;
        }
        Ok(())
    }
}

impl TryFrom<Vec<String>> for Sentence {
    type Error = &'static str;

    fn try_from(tokens: Vec<String>) -> Result<Self, Self::Error> {
        Sentence::new(tokens).ok_or("sentence has no tokens")
    }
}

impl From<Sentence> for Vec<String> {
    fn from(s: Sentence) -> Self {
        s.tokens
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SnapshotSentences {
    pub page_id: u64,
    pub revision_id: u64,
    pub timestamp: DateTime<Utc>,
    pub sentences: Vec<Sentence>,
}

/// Markup stripping, sentence splitting and tokenization with one
/// abbreviation list.
#[derive(Debug, Clone, Default)]
pub struct Normalizer {
    abbreviations: Abbreviations,
}

impl Normalizer {
    pub fn new(abbreviations: Abbreviations) -> Self {
        Normalizer { abbreviations }
    }

    pub fn abbreviations(&self) -> &Abbreviations {
        &self.abbreviations
    }

    /// Sentences of already-plain text.
    pub fn sentences(&self, text: &str) -> Vec<Sentence> {
        split_sentences(text, &self.abbreviations)
            .iter()
            .filter_map(|s| Sentence::tokenize(s))
            .collect()
    }

    pub fn snapshot_sentences(&self, revision: &RawRevision) -> SnapshotSentences {
        let sentences = if revision.is_blank() {
            Vec::new()
        } else {
            self.sentences(&strip_markup(&revision.wikitext))
        };
        SnapshotSentences {
            page_id: revision.page_id,
            revision_id: revision.revision_id,
            timestamp: revision.timestamp,
            sentences,
        }
    }
}
