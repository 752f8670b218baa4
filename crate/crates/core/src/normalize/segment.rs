use std::collections::HashSet;
use std::path::Path;

use crate::error::{Error, Result};

const DEFAULT_ENGLISH: &str = include_str!("abbreviations.txt");

const TERMINALS: [char; 3] = ['.', '!', '?'];
const CLOSERS: [char; 7] = ['"', '\'', ')', ']', '”', '’', '»'];
const OPENING_QUOTES: [char; 5] = ['"', '\'', '“', '‘', '«'];
const WORD_OPENERS: [char; 6] = ['(', '[', '"', '\'', '“', '‘'];

/// Words whose trailing period does not end a sentence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Abbreviations {
    entries: HashSet<String>,
}

impl Abbreviations {
    /// One abbreviation per line; `#` starts a comment. A missing final period
    /// is added.
    pub fn parse(list: &str) -> Self {
        let entries = list
            .lines()
            .map(|line| line.split('#').next().unwrap_or("").trim())
            .filter(|entry| !entry.is_empty())
            .map(|entry| {
                if entry.ends_with('.') {
                    entry.to_owned()
                } else {
                    format!("{entry}.")
                }
            })
            .collect();
        Abbreviations { entries }
    }

    pub fn english() -> Self {
        Self::parse(DEFAULT_ENGLISH)
    }

    pub fn empty() -> Self {
        Abbreviations {
            entries: HashSet::new(),
        }
    }

    pub fn load(path: &Path) -> Result<Self> {
        std::fs::read_to_string(path)
            .map(|text| Self::parse(&text))
            .map_err(|source| Error::ConfigFile {
                path: path.to_owned(),
                source,
            })
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// `word` includes its trailing period.
    pub fn contains(&self, word: &str) -> bool {
        let word = word.trim_start_matches(WORD_OPENERS);
        if self.entries.contains(word) {
            return true;
        }
        // initials: "J."
        let mut chars = word.chars();
        matches!(
            (chars.next(), chars.next(), chars.next()),
            (Some(c), Some('.'), None) if c.is_uppercase()
        )
    }
}

impl Default for Abbreviations {
    fn default() -> Self {
        Self::english()
    }
}

/// Split plain text into sentences.
///
/// A boundary is `.`, `!` or `?` (optionally followed by closing quotes or
/// brackets), then whitespace, then an uppercase letter, digit, or opening
/// quote. A period closing a listed abbreviation or an initial is not a
/// boundary. Returned sentences are trimmed; only inter-sentence whitespace is
/// dropped.
pub fn split_sentences(text: &str, abbreviations: &Abbreviations) -> Vec<String> {
    let mut sentences = Vec::new();
    let mut start = 0;
    let mut iter = text.char_indices().peekable();

    while let Some((i, c)) = iter.next() {
        if !TERMINALS.contains(&c) {
            continue;
        }
        // absorb the rest of the terminal cluster, e.g. `?!` or `."`
        let mut end = i + c.len_utf8();
        while let Some(&(j, next)) = iter.peek() {
            if TERMINALS.contains(&next) || CLOSERS.contains(&next) {
                end = j + next.len_utf8();
                iter.next();
            } else {
                break;
            }
        }
        let rest = &text[end..];
        let trimmed = rest.trim_start();
        if trimmed.len() == rest.len() {
            continue;
        }
        let Some(first) = trimmed.chars().next() else {
            continue;
        };
        if !(first.is_uppercase() || first.is_ascii_digit() || OPENING_QUOTES.contains(&first)) {
            continue;
        }
        if c == '.' && end == i + 1 {
            let word_start = text[..i].rfind(char::is_whitespace).map_or(0, |w| {
                w + text[w..].chars().next().map_or(1, char::len_utf8)
            });
            if abbreviations.contains(&text[word_start..=i]) {
                continue;
            }
        }
        let sentence = text[start..end].trim();
        if !sentence.is_empty() {
            sentences.push(sentence.to_owned());
        }
        start = text.len() - trimmed.len();
    }

    let tail = text[start..].trim();
    if !tail.is_empty() {
        sentences.push(tail.to_owned());
    }
    sentences
}

#[cfg(test)]
mod tests {
    use super::*;

    fn split(text: &str) -> Vec<String> {
        split_sentences(text, &Abbreviations::english())
    }

    #[test]
    fn basic_split() {
        assert_eq!(
            split("Hello world. Goodbye now."),
            ["Hello world.", "Goodbye now."]
        );
    }

    #[test]
    fn decimals_do_not_split() {
        assert_eq!(
            split("It cost 3.5 million. He paid."),
            ["It cost 3.5 million.", "He paid."]
        );
    }

    #[test]
    fn abbreviations_do_not_split() {
        assert_eq!(
            split("Dr. Smith arrived. He sat."),
            ["Dr. Smith arrived.", "He sat."]
        );
        assert_eq!(
            split("Troops from the U.S. Army came. J. R. Smith led them."),
            ["Troops from the U.S. Army came.", "J. R. Smith led them."]
        );
        assert_eq!(
            split_sentences("Dr. Smith arrived.", &Abbreviations::empty()),
            ["Dr.", "Smith arrived."]
        );
    }

    #[test]
    fn requires_capital_digit_or_quote_after_break() {
        assert_eq!(split("It ended. then more"), ["It ended. then more"]);
        assert_eq!(split("It ended. 1990 came."), ["It ended.", "1990 came."]);
        assert_eq!(
            split("He said \"Go.\" \"Now\" she said!"),
            ["He said \"Go.\"", "\"Now\" she said!"]
        );
        assert_eq!(split("Really?! Yes."), ["Really?!", "Yes."]);
    }

    #[test]
    fn no_trailing_punctuation_and_empty() {
        assert_eq!(split("no ending here"), ["no ending here"]);
        assert!(split("").is_empty());
        assert!(split("   ").is_empty());
    }

    #[test]
    fn abbreviation_file_syntax() {
        let abbr = Abbreviations::parse("# comment\nFoo.\nBar # trailing comment\n\n");
        assert_eq!(abbr.len(), 2);
        assert!(abbr.contains("Foo."));
        assert!(abbr.contains("Bar."));
        assert!(abbr.contains("(Foo."));
        assert!(!abbr.contains("foo."));
    }

    #[test]
    fn missing_abbreviation_file_is_config_error() {
        let err = Abbreviations::load(Path::new("/nonexistent/abbr.txt")).unwrap_err();
        assert_eq!(err.kind(), "config");
    }
}
