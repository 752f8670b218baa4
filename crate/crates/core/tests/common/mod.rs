//! Seeded synthetic revision dumps.
//!
//! Each page starts with filler sentences and a few long "complex" sentences.
//! Later revisions split one complex sentence into two, rephrasing a random
//! share of the words so that similarity scores spread across the threshold
//! range. Some revisions join a previous split back, and some complex
//! sentences are shared between pages so that selection has ties to break.

#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const NOUNS: &[&str] = &[
    "tower", "river", "church", "station", "bridge", "museum", "village", "garden", "harbour",
    "library", "castle", "market", "school", "mill", "valley", "forest", "council", "railway",
    "festival", "theatre",
];
const VERBS: &[&str] = &[
    "built",
    "restored",
    "opened",
    "closed",
    "moved",
    "expanded",
    "renamed",
    "painted",
    "designed",
    "funded",
    "visited",
    "described",
];
const ADJECTIVES: &[&str] = &[
    "old", "large", "small", "famous", "northern", "southern", "wooden", "stone", "modern",
    "historic", "quiet", "busy",
];
const FILLER: &[&str] = &[
    "It is one of the oldest buildings in the region.",
    "The area has a population of about 4,000 people.",
    "Dr. Smith wrote a short history of the site in 1911.",
    "Several [[local newspaper|newspapers]] covered the event.",
    "The name comes from an old word for '''meadow'''.",
    "Visitors arrive mostly in summer.",
];
const OPENERS: &[&str] = &["It", "This", "They", "Later it", "The work"];

#[derive(Debug, Clone)]
pub struct SynthRevision {
    pub revision_id: u64,
    pub timestamp: String,
    pub text: String,
}

#[derive(Debug, Clone)]
pub struct SynthPage {
    pub page_id: u64,
    pub title: String,
    pub ns: i32,
    pub revisions: Vec<SynthRevision>,
}

#[derive(Debug, Clone)]
pub struct DumpShape {
    pub pages: usize,
    pub revisions_per_page: usize,
    pub seed: u64,
    /// Share of pages outside the main namespace.
    pub off_namespace: f64,
}

impl Default for DumpShape {
    fn default() -> Self {
        DumpShape {
            pages: 100,
            revisions_per_page: 3,
            seed: 7,
            off_namespace: 0.0,
        }
    }
}

fn pick<'a>(rng: &mut ChaCha8Rng, words: &[&'a str]) -> &'a str {
    words.choose(rng).expect("non-empty word list")
}

fn capitalize(word: &str) -> String {
    let mut chars = word.chars();
    match chars.next() {
        Some(c) => c.to_uppercase().chain(chars).collect(),
        None => String::new(),
    }
}

/// A long sentence as words, the final period attached to the last word.
fn complex_words(rng: &mut ChaCha8Rng) -> Vec<String> {
    let mut words = vec![
        "The".to_owned(),
        pick(rng, ADJECTIVES).to_owned(),
        pick(rng, NOUNS).to_owned(),
        "was".to_owned(),
        pick(rng, VERBS).to_owned(),
        "in".to_owned(),
        rng.gen_range(1800..2000).to_string(),
    ];
    for _ in 0..rng.gen_range(0..4) {
        words.push(pick(rng, ADJECTIVES).to_owned());
    }
    words.extend(
        [
            "and",
            "the",
            pick(rng, NOUNS),
            "was",
            pick(rng, VERBS),
            "by",
            "the",
        ]
        .map(str::to_owned),
    );
    words.push(format!("{}.", pick(rng, NOUNS)));
    words
}

/// Two sentences anchored on the first three and last three tokens of
/// `complex`. `keep` is the chance each remaining word survives the rewrite.
fn split_words(rng: &mut ChaCha8Rng, complex: &[String], keep: f64) -> (String, String) {
    let mid = complex.len() / 2;
    let mut first: Vec<String> = complex[..3].to_vec();
    for word in &complex[3..mid] {
        first.push(if rng.gen_bool(keep) {
            word.clone()
        } else {
            pick(rng, ADJECTIVES).to_owned()
        });
    }
    // end differently from the second sentence
    first.push("today.".to_owned());

    let mut second = vec![pick(rng, OPENERS).to_owned()];
    let tail_start = complex.len() - 2;
    for word in &complex[mid..tail_start] {
        second.push(if rng.gen_bool(keep) {
            word.clone()
        } else {
            pick(rng, NOUNS).to_owned()
        });
    }
    second.extend(complex[tail_start..].iter().cloned());
    (first.join(" "), second.join(" "))
}

enum Block {
    Text(String),
    Complex {
        words: Vec<String>,
        split: Option<(String, String)>,
    },
}

fn render(blocks: &[Block]) -> String {
    let parts: Vec<String> = blocks
        .iter()
        .map(|b| match b {
            Block::Text(t) => t.clone(),
            Block::Complex { words, split: None } => words.join(" "),
            Block::Complex {
                split: Some((a, b)),
                ..
            } => format!("{a} {b}"),
        })
        .collect();
    parts.join(" ")
}

pub fn synthetic_pages(shape: &DumpShape) -> Vec<SynthPage> {
    let mut rng = ChaCha8Rng::seed_from_u64(shape.seed);
    let mut shared: Vec<Vec<String>> = Vec::new();
    let mut next_revision = 1000u64;
    let mut pages = Vec::with_capacity(shape.pages);

    for p in 0..shape.pages {
        let page_id = p as u64 + 1;
        let mut blocks = Vec::new();
        for _ in 0..rng.gen_range(1..3) {
            blocks.push(Block::Text(pick(&mut rng, FILLER).to_owned()));
        }
        for _ in 0..rng.gen_range(2..4) {
            let words = if !shared.is_empty() && rng.gen_bool(0.15) {
                shared.choose(&mut rng).unwrap().clone()
            } else {
                let w = complex_words(&mut rng);
                if shared.len() < 64 {
                    shared.push(w.clone());
                }
                w
            };
            blocks.push(Block::Complex { words, split: None });
            if rng.gen_bool(0.5) {
                blocks.push(Block::Text(pick(&mut rng, FILLER).to_owned()));
            }
        }
        if rng.gen_bool(0.05) {
            let long = "x".repeat(26);
            blocks.push(Block::Text(format!(
                "The code {long} is long and the very long token ends here."
            )));
        }

        let mut revisions = Vec::with_capacity(shape.revisions_per_page);
        let day0 = rng.gen_range(0..300);
        for r in 0..shape.revisions_per_page {
            if r > 0 {
                let complex_at: Vec<usize> = blocks
                    .iter()
                    .enumerate()
                    .filter(|(_, b)| matches!(b, Block::Complex { .. }))
                    .map(|(i, _)| i)
                    .collect();
                let at = *complex_at.choose(&mut rng).unwrap();
                let roll: f64 = rng.gen();
                if let Block::Complex { words, split } = &mut blocks[at] {
                    if split.is_some() && roll < 0.4 {
                        *split = None;
                    } else if roll < 0.9 {
                        let keep = rng.gen_range(0.0..1.0);
                        *split = Some(split_words(&mut rng, words, keep));
                    } else {
                        blocks.push(Block::Text(pick(&mut rng, FILLER).to_owned()));
                    }
                }
            }
            next_revision += rng.gen_range(1..5);
            revisions.push(SynthRevision {
                revision_id: next_revision,
                timestamp: format!(
                    "2015-{:02}-{:02}T{:02}:00:00Z",
                    1 + (day0 + r) / 28 % 12,
                    1 + (day0 + r) % 28,
                    r % 24
                ),
                text: render(&blocks),
            });
        }
        let ns = if rng.gen_bool(shape.off_namespace) {
            4
        } else {
            0
        };
        pages.push(SynthPage {
            page_id,
            title: format!("{} {}", capitalize(pick(&mut rng, NOUNS)), page_id),
            ns,
            revisions,
        });
    }
    pages
}

fn xml_escape(text: &str) -> String {
    text.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

pub fn to_xml(pages: &[SynthPage]) -> String {
    let mut out = String::from(
        "<mediawiki xml:lang=\"en\">\n  <siteinfo><sitename>Synth</sitename></siteinfo>\n",
    );
    for page in pages {
        out.push_str(&format!(
            "  <page>\n    <title>{}</title>\n    <ns>{}</ns>\n    <id>{}</id>\n",
            xml_escape(&page.title),
            page.ns,
            page.page_id
        ));
        // newest first, so readers must sort
        for rev in page.revisions.iter().rev() {
            out.push_str(&format!(
                "    <revision>\n      <id>{}</id>\n      <timestamp>{}</timestamp>\n      <text xml:space=\"preserve\">{}</text>\n    </revision>\n",
                rev.revision_id,
                rev.timestamp,
                xml_escape(&rev.text)
            ));
        }
        out.push_str("  </page>\n");
    }
    out.push_str("</mediawiki>\n");
    out
}

pub fn to_jsonl(pages: &[SynthPage]) -> String {
    let mut out = String::new();
    for page in pages {
        for rev in &page.revisions {
            let record = serde_json::json!({
                "page_id": page.page_id,
                "page_title": page.title,
                "ns": page.ns,
                "revision_id": rev.revision_id,
                "timestamp": rev.timestamp,
                "text": rev.text,
            });
            out.push_str(&record.to_string());
            out.push('\n');
        }
    }
    out
}

/// A page with the leaf-symptom sentence in its first revision and the
/// two-sentence rewrite in its second.
pub const LEAF_ORIGINAL: &str = "A classic leaf symptom is water-soaked lesions between the veins \
    which appear as angular leaf-spots where the lesion edge and vein meet.";
pub const LEAF_REWRITE: &str = "A classic leaf symptom is the appearance of angular, water-soaked \
    lesions between the veins. The angular appearance results where the lesion edge and vein meet.";

pub fn leaf_page(first: &str, second: &str) -> Vec<SynthPage> {
    let wrap = |body: &str| {
        format!(
            "'''Bacterial leaf spot''' affects [[tomato]] plants. {body} Copper sprays help.<ref>Extension notes</ref>"
        )
    };
    vec![SynthPage {
        page_id: 1,
        title: "Bacterial leaf spot".into(),
        ns: 0,
        revisions: vec![
            SynthRevision {
                revision_id: 500,
                timestamp: "2016-04-01T10:00:00Z".into(),
                text: wrap(first),
            },
            SynthRevision {
                revision_id: 501,
                timestamp: "2016-04-02T10:00:00Z".into(),
                text: wrap(second),
            },
        ],
    }]
}
