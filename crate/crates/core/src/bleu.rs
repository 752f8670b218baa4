//! BLEU: clipped n-gram precision with a brevity penalty.
//!
//! Counts are kept as integers ([`BleuStats`]) so that corpus-level scores are
//! a plain sum over sentences and the final floating-point score is computed
//! once from exact ratios. The same machinery serves three uses: the mining
//! filter (single reference, missing orders skipped), corpus-level BLEU over a
//! multi-reference benchmark, and macro-averaged sentence BLEU.

use std::collections::HashMap;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::normalize::Sentence;

/// How zero or missing n-gram precisions enter the geometric mean.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Smoothing {
    /// Any zero precision (including an order the hypothesis is too short
    /// for) zeroes the score and marks the report ill-defined.
    None,
    /// Orders 2 and up use `(matched + 1) / (total + 1)`.
    Add1FromOrder2,
    /// Orders with no hypothesis n-grams are left out of the mean. A present
    /// order with zero matches still zeroes the score.
    SkipMissingOrders,
}

impl FromStr for Smoothing {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "none" => Ok(Smoothing::None),
            "add1" | "add1-from-order-2" => Ok(Smoothing::Add1FromOrder2),
            "skip" | "skip-missing" | "skip-missing-orders" => Ok(Smoothing::SkipMissingOrders),
            other => Err(Error::Config(format!(
                "unknown smoothing `{other}` (expected none, add1-from-order-2 or skip-missing-orders)"
            ))),
        }
    }
}

impl fmt::Display for Smoothing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Smoothing::None => "none",
            Smoothing::Add1FromOrder2 => "add1-from-order-2",
            Smoothing::SkipMissingOrders => "skip-missing-orders",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BleuConfig {
    pub max_order: usize,
    pub smoothing: Smoothing,
    pub case_sensitive: bool,
}

impl Default for BleuConfig {
    fn default() -> Self {
        BleuConfig {
            max_order: 4,
            smoothing: Smoothing::None,
            case_sensitive: true,
        }
    }
}

impl BleuConfig {
    /// Settings of the similarity filter used while mining.
    pub fn filter() -> Self {
        BleuConfig {
            smoothing: Smoothing::SkipMissingOrders,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.max_order == 0 {
            return Err(Error::Config("max_order must be at least 1".into()));
        }
        Ok(())
    }
}

/// Clipped matches over hypothesis n-grams for one order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct Precision {
    pub matched: u64,
    pub total: u64,
}

impl Precision {
    /// `None` when the hypothesis has no n-grams of this order.
    pub fn value(&self) -> Option<f64> {
        (self.total > 0).then(|| self.matched as f64 / self.total as f64)
    }
}

impl fmt::Display for Precision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.matched, self.total)
    }
}

/// Sufficient statistics for BLEU. Adding two values is the same as scoring
/// the concatenated corpus.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BleuStats {
    pub precisions: Vec<Precision>,
    pub hyp_length: u64,
    pub ref_length: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BleuReport {
    /// In `[0, 1]`.
    pub score: f64,
    pub precisions: Vec<Precision>,
    pub brevity_penalty: f64,
    pub hyp_length: u64,
    pub ref_length: u64,
    /// Unsmoothed scoring hit a zero precision; `score` is 0.
    pub ill_defined: bool,
}

fn ngram_counts<'a>(tokens: &'a [&'a str], n: usize) -> HashMap<&'a [&'a str], u64> {
    let mut counts = HashMap::new();
    if n == 0 || tokens.len() < n {
        return counts;
    }
    for gram in tokens.windows(n) {
        *counts.entry(gram).or_insert(0) += 1;
    }
    counts
}

fn clipped(hyp: &[&str], refs: &[Vec<&str>], n: usize) -> Precision {
    let hyp_counts = ngram_counts(hyp, n);
    let total = hyp.len().saturating_sub(n - 1) as u64;
    if hyp_counts.is_empty() {
        return Precision { matched: 0, total };
    }
    let mut max_ref: HashMap<&[&str], u64> = HashMap::new();
    for r in refs {
        for (gram, count) in ngram_counts(r, n) {
            if hyp_counts.contains_key(gram) {
                let slot = max_ref.entry(gram).or_insert(0);
                *slot = (*slot).max(count);
            }
        }
    }
    let matched = hyp_counts
        .iter()
        .map(|(gram, &count)| count.min(max_ref.get(gram).copied().unwrap_or(0)))
        .sum();
    Precision { matched, total }
}

fn folded<S: AsRef<str>>(tokens: &[S], case_sensitive: bool) -> Vec<String> {
    tokens
        .iter()
        .map(|t| {
            if case_sensitive {
                t.as_ref().to_owned()
            } else {
                t.as_ref().to_lowercase()
            }
        })
        .collect()
}

fn closest_ref_length(hyp_len: usize, ref_lengths: impl Iterator<Item = usize>) -> usize {
    ref_lengths
        .min_by_key(|&r| (r.abs_diff(hyp_len), r))
        .unwrap_or(0)
}

/// Modified n-gram precision of `hyp` against `refs`: hypothesis n-gram counts
/// clipped by the largest count in any single reference.
pub fn modified_precision<S, R>(hyp: &[S], refs: &[R], n: usize) -> Precision
where
    S: AsRef<str>,
    R: AsRef<[S]>,
{
    assert!(n >= 1, "n-gram order must be at least 1");
    let hyp: Vec<&str> = hyp.iter().map(AsRef::as_ref).collect();
    let refs: Vec<Vec<&str>> = refs
        .iter()
        .map(|r| r.as_ref().iter().map(AsRef::as_ref).collect())
        .collect();
    clipped(&hyp, &refs, n)
}

impl BleuStats {
    pub fn zero(max_order: usize) -> Self {
        BleuStats {
            precisions: vec![Precision::default(); max_order],
            hyp_length: 0,
            ref_length: 0,
        }
    }

    pub fn from_pair<S, R>(hyp: &[S], refs: &[R], cfg: &BleuConfig) -> Self
    where
        S: AsRef<str>,
        R: AsRef<[S]>,
    {
        let hyp_owned = folded(hyp, cfg.case_sensitive);
        let refs_owned: Vec<Vec<String>> = refs
            .iter()
            .map(|r| folded(r.as_ref(), cfg.case_sensitive))
            .collect();
        let hyp_view: Vec<&str> = hyp_owned.iter().map(String::as_str).collect();
        let refs_view: Vec<Vec<&str>> = refs_owned
            .iter()
            .map(|r| r.iter().map(String::as_str).collect())
            .collect();
        let precisions = (1..=cfg.max_order)
            .map(|n| clipped(&hyp_view, &refs_view, n))
            .collect();
        BleuStats {
            precisions,
            hyp_length: hyp_view.len() as u64,
            ref_length: closest_ref_length(hyp_view.len(), refs_view.iter().map(Vec::len)) as u64,
        }
    }

    pub fn brevity_penalty(&self) -> f64 {
        if self.hyp_length == 0 {
            0.0
        } else if self.hyp_length >= self.ref_length {
            1.0
        } else {
            (1.0 - self.ref_length as f64 / self.hyp_length as f64).exp()
        }
    }

    pub fn report(&self, smoothing: Smoothing) -> BleuReport {
        let brevity_penalty = self.brevity_penalty();
        let mut ill_defined = false;
        let mut log_sum = 0.0;
        let mut counted = 0usize;
        let mut zero = self.hyp_length == 0;

        for (i, p) in self.precisions.iter().enumerate() {
            let order = i + 1;
            let (num, den) = match smoothing {
                Smoothing::None => {
                    if p.matched == 0 || p.total == 0 {
                        ill_defined = true;
                        zero = true;
                        continue;
                    }
                    (p.matched, p.total)
                }
                Smoothing::Add1FromOrder2 if order >= 2 => (p.matched + 1, p.total + 1),
                Smoothing::Add1FromOrder2 => (p.matched, p.total),
                Smoothing::SkipMissingOrders => {
                    if p.total == 0 {
                        continue;
                    }
                    (p.matched, p.total)
                }
            };
            if num == 0 || den == 0 {
                zero = true;
                continue;
            }
            log_sum += (num as f64 / den as f64).ln();
            counted += 1;
        }

        let score = if zero || counted == 0 {
            0.0
        } else {
            brevity_penalty * (log_sum / counted as f64).exp()
        };
        BleuReport {
            score,
            precisions: self.precisions.clone(),
            brevity_penalty,
            hyp_length: self.hyp_length,
            ref_length: self.ref_length,
            ill_defined,
        }
    }
}

impl AddAssign<&BleuStats> for BleuStats {
    fn add_assign(&mut self, other: &BleuStats) {
        if self.precisions.len() < other.precisions.len() {
            self.precisions
                .resize(other.precisions.len(), Precision::default());
        }
        for (mine, theirs) in self.precisions.iter_mut().zip(&other.precisions) {
            mine.matched += theirs.matched;
            mine.total += theirs.total;
        }
        self.hyp_length += other.hyp_length;
        self.ref_length += other.ref_length;
    }
}

impl Add for BleuStats {
    type Output = BleuStats;

    fn add(mut self, other: BleuStats) -> BleuStats {
        self += &other;
        self
    }
}

impl Sum for BleuStats {
    fn sum<I: Iterator<Item = BleuStats>>(iter: I) -> Self {
        iter.fold(BleuStats::zero(0), Add::add)
    }
}

/// Sentence-level BLEU of `hyp` against one or more references.
pub fn sentence_bleu<S, R>(hyp: &[S], refs: &[R], cfg: &BleuConfig) -> BleuReport
where
    S: AsRef<str>,
    R: AsRef<[S]>,
{
    BleuStats::from_pair(hyp, refs, cfg).report(cfg.smoothing)
}

/// Corpus-level BLEU: per-order counts and lengths are summed over all pairs
/// before the score is formed.
pub fn corpus_bleu<S, H, R>(pairs: &[(H, Vec<R>)], cfg: &BleuConfig) -> Result<BleuReport>
where
    S: AsRef<str>,
    H: AsRef<[S]>,
    R: AsRef<[S]>,
{
    if pairs.is_empty() {
        return Err(Error::Input("corpus BLEU needs at least one pair".into()));
    }
    let mut total = BleuStats::zero(cfg.max_order);
    for (hyp, refs) in pairs {
        total += &BleuStats::from_pair(hyp.as_ref(), refs, cfg);
    }
    Ok(total.report(cfg.smoothing))
}

/// Similarity used to filter mined candidates: `simple` scored as the
/// hypothesis against `complex` as the only reference.
pub fn filter_bleu(complex: &Sentence, simple: &Sentence) -> f64 {
    sentence_bleu(simple.tokens(), &[complex.tokens()], &BleuConfig::filter()).score
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toks(s: &str) -> Vec<String> {
        s.split_whitespace().map(str::to_owned).collect()
    }

    const HYP: &str = "the cat sat on the mat";
    const REF: &str = "the cat sat on a mat";

    #[test]
    fn modified_precision_hand_counts() {
        let (hyp, r) = (toks(HYP), toks(REF));
        let expected = [(5, 6), (3, 5), (2, 4), (1, 3)];
        for (n, (m, t)) in (1..=4).zip(expected) {
            assert_eq!(
                modified_precision(&hyp, &[&r], n),
                Precision {
                    matched: m,
                    total: t
                },
                "order {n}"
            );
        }
    }

    #[test]
    fn precision_identity_and_short_hypothesis() {
        let h = toks("a b c");
        assert_eq!(
            modified_precision(&h, &[&h], 3),
            Precision {
                matched: 1,
                total: 1
            }
        );
        assert_eq!(
            modified_precision(&h, &[&h], 4),
            Precision {
                matched: 0,
                total: 0
            }
        );
        assert_eq!(
            Precision {
                matched: 0,
                total: 0
            }
            .value(),
            None
        );
    }

    #[test]
    fn clipping_uses_max_over_references() {
        let h = toks("the the the");
        let one = toks("the cat");
        let two = toks("the the dog");
        assert_eq!(modified_precision(&h, &[&one], 1).matched, 1);
        assert_eq!(modified_precision(&h, &[&one, &two], 1).matched, 2);
    }

    #[test]
    fn sentence_bleu_hand_value() {
        let cfg = BleuConfig::filter();
        let report = sentence_bleu(&toks(HYP), &[toks(REF)], &cfg);
        let expected = (5.0 / 6.0 * 3.0 / 5.0 * 0.5 * (1.0f64 / 3.0)).powf(0.25);
        assert!((report.score - expected).abs() < 1e-12);
        assert!((report.score - 0.5373).abs() < 5e-5);
        assert_eq!(report.brevity_penalty, 1.0);
    }

    #[test]
    fn identical_is_one() {
        let h = toks("just one more test sentence");
        for smoothing in [
            Smoothing::None,
            Smoothing::Add1FromOrder2,
            Smoothing::SkipMissingOrders,
        ] {
            let cfg = BleuConfig {
                smoothing,
                ..BleuConfig::default()
            };
            assert_eq!(sentence_bleu(&h, &[&h], &cfg).score, 1.0);
        }
    }

    #[test]
    fn unsmoothed_zero_precision_is_flagged() {
        let report = sentence_bleu(&toks("a b c"), &[toks("a b c d")], &BleuConfig::default());
        assert!(report.ill_defined);
        assert_eq!(report.score, 0.0);
        assert_eq!(report.precisions[3].total, 0);
    }

    #[test]
    fn skip_missing_orders_scores_short_sentences() {
        let report = sentence_bleu(&toks("a b c"), &[toks("a b c")], &BleuConfig::filter());
        assert_eq!(report.score, 1.0);
        assert!(!report.ill_defined);
        // a present order with no matches still zeroes the score
        let report = sentence_bleu(
            &toks("a b c x"),
            &[toks("a b y c x")],
            &BleuConfig::filter(),
        );
        assert_eq!(report.precisions[2].matched, 0);
        assert_eq!(report.score, 0.0);
    }

    #[test]
    fn add_one_smoothing() {
        let cfg = BleuConfig {
            smoothing: Smoothing::Add1FromOrder2,
            ..BleuConfig::default()
        };
        let report = sentence_bleu(&toks("a b c"), &[toks("a b c")], &cfg);
        // p1 = 3/3, p2 = 3/3, p3 = 2/2, p4 = 1/1
        assert_eq!(report.score, 1.0);
        let report = sentence_bleu(&toks("a x b y"), &[toks("a b")], &cfg);
        // p1 = 2/4, p2 = 1/4, p3 = 1/3, p4 = 1/2
        let expected = (0.5f64 * 0.25 * (1.0 / 3.0) * 0.5).powf(0.25);
        assert!((report.score - expected).abs() < 1e-12);
    }

    #[test]
    fn brevity_penalty_uses_closest_reference() {
        let hyp = toks("a b c d");
        // lengths 3 and 5 are equally close; the shorter wins
        let report = sentence_bleu(
            &hyp,
            &[toks("a b c"), toks("a b c d e")],
            &BleuConfig::filter(),
        );
        assert_eq!(report.ref_length, 3);
        assert_eq!(report.brevity_penalty, 1.0);
        let report = sentence_bleu(&hyp, &[toks("a b c d e f g h")], &BleuConfig::filter());
        assert_eq!(report.ref_length, 8);
        assert!((report.brevity_penalty - (-1.0f64).exp()).abs() < 1e-15);
    }

    #[test]
    fn case_folding() {
        let cfg = BleuConfig {
            case_sensitive: false,
            ..BleuConfig::filter()
        };
        assert_eq!(
            sentence_bleu(&toks("The Cat"), &[toks("the cat")], &cfg).score,
            1.0
        );
        assert_eq!(
            sentence_bleu(&toks("The Cat"), &[toks("the cat")], &BleuConfig::filter()).score,
            0.0
        );
    }

    #[test]
    fn corpus_two_pairs_hand_value() {
        let perfect = toks("one two three four five six");
        let pairs = vec![
            (perfect.clone(), vec![perfect.clone()]),
            (toks(HYP), vec![toks(REF)]),
        ];
        let report = corpus_bleu(&pairs, &BleuConfig::default()).unwrap();
        let got: Vec<_> = report
            .precisions
            .iter()
            .map(|p| (p.matched, p.total))
            .collect();
        assert_eq!(got, [(11, 12), (8, 10), (6, 8), (4, 6)]);
        let expected = (11.0f64 / 12.0 * 0.8 * 0.75 * (4.0 / 6.0)).powf(0.25);
        assert!((report.score - expected).abs() < 1e-12);
        assert!((report.score - 0.7782).abs() < 5e-5);
    }

    #[test]
    fn single_item_corpus_equals_sentence() {
        let cfg = BleuConfig::filter();
        let pairs = vec![(toks(HYP), vec![toks(REF)])];
        assert_eq!(
            corpus_bleu(&pairs, &cfg).unwrap(),
            sentence_bleu(&toks(HYP), &[toks(REF)], &cfg)
        );
    }

    #[test]
    fn empty_corpus_is_an_input_error() {
        let pairs: Vec<(Vec<String>, Vec<Vec<String>>)> = Vec::new();
        assert!(matches!(
            corpus_bleu(&pairs, &BleuConfig::default()),
            Err(Error::Input(_))
        ));
    }

    #[test]
    fn bleu_is_asymmetric() {
        let a = toks("a b c d e f");
        let b = toks("a b c d");
        let cfg = BleuConfig::filter();
        let ab = sentence_bleu(&a, &[&b], &cfg).score;
        let ba = sentence_bleu(&b, &[&a], &cfg).score;
        assert_ne!(ab, ba);
    }

    #[test]
    fn filter_bleu_extremes() {
        let c = Sentence::from_tokenized("a b c d .").unwrap();
        let other = Sentence::from_tokenized("x y z").unwrap();
        assert_eq!(filter_bleu(&c, &c), 1.0);
        assert_eq!(filter_bleu(&c, &other), 0.0);
    }

    #[test]
    fn smoothing_names_round_trip() {
        for s in [
            Smoothing::None,
            Smoothing::Add1FromOrder2,
            Smoothing::SkipMissingOrders,
        ] {
            assert_eq!(s.to_string().parse::<Smoothing>().unwrap(), s);
        }
        assert!("laplace".parse::<Smoothing>().is_err());
    }
}
