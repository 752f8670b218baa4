use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::SplitExample;

/// Counts and distinct counts of complex sentences, simple sentences, and the
/// tokens of the distinct complex sentences.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusStats {
    pub complex_count: usize,
    pub complex_unique: usize,
    pub simple_count: usize,
    pub simple_unique: usize,
    pub token_count: usize,
    pub token_unique: usize,
}

pub fn compute_stats(examples: &[SplitExample]) -> CorpusStats {
    let complexes: HashSet<&[String]> = examples.iter().map(|e| e.complex.tokens()).collect();
    let simples: HashSet<&[String]> = examples
        .iter()
        .flat_map(|e| e.simples.iter().map(|s| s.tokens()))
        .collect();
    let token_count = complexes.iter().map(|c| c.len()).sum();
    let token_types: HashSet<&String> = complexes.iter().flat_map(|c| c.iter()).collect();
    CorpusStats {
        complex_count: examples.len(),
        complex_unique: complexes.len(),
        simple_count: examples.iter().map(|e| e.simples.len()).sum(),
        simple_unique: simples.len(),
        token_count,
        token_unique: token_types.len(),
    }
}

impl fmt::Display for CorpusStats {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{:<4}{:>12}{:>12}", "", "Count", "Unique")?;
        writeln!(
            f,
            "{:<4}{:>12}{:>12}",
            "C", self.complex_count, self.complex_unique
        )?;
        writeln!(
            f,
            "{:<4}{:>12}{:>12}",
            "S'", self.simple_count, self.simple_unique
        )?;
        writeln!(
            f,
            "{:<4}{:>12}{:>12}",
            "t", self.token_count, self.token_unique
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::normalize::Sentence;

    fn ex(c: &str, s1: &str, s2: &str) -> SplitExample {
        let s = |t: &str| Sentence::from_tokenized(t).unwrap();
        SplitExample::new(s(c), s(s1), s(s2))
    }

    #[test]
    fn empty_corpus() {
        assert_eq!(compute_stats(&[]), CorpusStats::default());
    }

    #[test]
    fn single_example_hand_count() {
        let stats = compute_stats(&[ex("a b c d e", "a b c .", "c d e .")]);
        assert_eq!(
            stats,
            CorpusStats {
                complex_count: 1,
                complex_unique: 1,
                simple_count: 2,
                simple_unique: 2,
                token_count: 5,
                token_unique: 5,
            }
        );
    }

    #[test]
    fn shared_simple_sentence() {
        let stats = compute_stats(&[
            ex("a b c d e", "a b c .", "shared one ."),
            ex("x y z w", "x y z .", "shared one ."),
        ]);
        assert_eq!((stats.simple_count, stats.simple_unique), (4, 3));
    }

    #[test]
    fn tokens_counted_over_distinct_complex_sentences() {
        let stats = compute_stats(&[ex("a b a", "a b .", "b a ."), ex("a b a", "a b !", "b a !")]);
        assert_eq!((stats.complex_count, stats.complex_unique), (2, 1));
        assert_eq!((stats.token_count, stats.token_unique), (3, 2));
    }

    #[test]
    fn table_layout() {
        let table = compute_stats(&[ex("a b c d e", "a b c .", "c d e .")]).to_string();
        let lines: Vec<_> = table.lines().collect();
        assert_eq!(lines.len(), 4);
        assert!(lines[1].starts_with("C ") && lines[1].ends_with(" 1"));
        assert!(lines[2].starts_with("S'"));
        assert!(lines[3].starts_with("t ") && lines[3].trim_end().ends_with('5'));
    }
}
