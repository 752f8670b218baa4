//! Streaming readers for MediaWiki full-history dumps.
//!
//! Two input formats are understood: the MediaWiki XML export layout
//! (`page > revision > timestamp/text`) and a line-oriented JSONL format with
//! one revision per line. Both yield one [`PageRevisionStream`] per page, with
//! revisions in `(timestamp, revision_id)` order. Only the page currently being
//! read is held in memory.

use std::collections::HashSet;
use std::fmt;
use std::io::BufRead;
use std::str::FromStr;

use chrono::{DateTime, Utc};
use quick_xml::events::{BytesStart, Event};
use quick_xml::Reader;
use serde::Deserialize;

use crate::error::{Error, Result};

/// Only the first few warning messages are kept; the count is always exact.
const MAX_WARNING_MESSAGES: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawRevision {
    pub page_id: u64,
    pub page_title: String,
    pub revision_id: u64,
    pub timestamp: DateTime<Utc>,
    pub wikitext: String,
}

impl RawRevision {
    /// Empty or whitespace-only text: a blanking edit or a suppressed revision.
    pub fn is_blank(&self) -> bool {
        self.wikitext.trim().is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PageRevisionStream {
    pub page_id: u64,
    pub page_title: String,
    pub revisions: Vec<RawRevision>,
}

impl PageRevisionStream {
    /// Consecutive `(older, newer)` revision pairs; `n` revisions give `n - 1` pairs.
    pub fn adjacent_pairs(&self) -> impl Iterator<Item = (&RawRevision, &RawRevision)> + '_ {
        adjacent_pairs(&self.revisions)
    }
}

pub fn adjacent_pairs(
    revisions: &[RawRevision],
) -> impl Iterator<Item = (&RawRevision, &RawRevision)> + '_ {
    revisions.windows(2).map(|w| (&w[0], &w[1]))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DumpFormat {
    MediawikiXml,
    Jsonl,
}

impl FromStr for DumpFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "mediawiki-xml" | "xml" => Ok(DumpFormat::MediawikiXml),
            "jsonl" => Ok(DumpFormat::Jsonl),
            other => Err(Error::Config(format!(
                "unknown dump format `{other}` (expected mediawiki-xml or jsonl)"
            ))),
        }
    }
}

impl fmt::Display for DumpFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DumpFormat::MediawikiXml => "mediawiki-xml",
            DumpFormat::Jsonl => "jsonl",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IngestOptions {
    /// Keep only pages in this namespace. Pages without an `ns` value are always kept.
    pub namespace: Option<i32>,
}

impl Default for IngestOptions {
    fn default() -> Self {
        IngestOptions { namespace: Some(0) }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct IngestStats {
    pub pages: u64,
    pub pages_skipped_namespace: u64,
    pub revisions: u64,
    pub revisions_skipped: u64,
    pub warnings: Vec<String>,
}

impl IngestStats {
    fn warn(&mut self, message: String) {
        self.revisions_skipped += 1;
        if self.warnings.len() < MAX_WARNING_MESSAGES {
            self.warnings.push(message);
        }
    }
}

fn parse_timestamp(raw: &str) -> Option<DateTime<Utc>> {
    DateTime::parse_from_rfc3339(raw.trim())
        .ok()
        .map(|t| t.with_timezone(&Utc))
}

/// Accumulates one page while its records are being read.
#[derive(Debug, Default)]
struct PageBuilder {
    page_id: Option<u64>,
    title: String,
    ns: Option<i32>,
    revisions: Vec<RawRevision>,
}

impl PageBuilder {
    fn finish(self, page_id: u64, stats: &mut IngestStats) -> PageRevisionStream {
        let mut revisions = self.revisions;
        for rev in &mut revisions {
            rev.page_id = page_id;
            rev.page_title.clone_from(&self.title);
        }
        revisions.sort_by(|a, b| {
            a.timestamp
                .cmp(&b.timestamp)
                .then(a.revision_id.cmp(&b.revision_id))
        });
        let mut seen = HashSet::with_capacity(revisions.len());
        revisions.retain(|rev| {
            let fresh = seen.insert(rev.revision_id);
            if !fresh {
                stats.warn(format!(
                    "page {page_id}: duplicate revision id {} dropped",
                    rev.revision_id
                ));
            }
            fresh
        });
        stats.pages += 1;
        stats.revisions += revisions.len() as u64;
        PageRevisionStream {
            page_id,
            page_title: self.title,
            revisions,
        }
    }

    fn namespace_allowed(&self, options: &IngestOptions) -> bool {
        match (options.namespace, self.ns) {
            (Some(wanted), Some(ns)) => wanted == ns,
            _ => true,
        }
    }
}

/// Open a dump for page-by-page reading.
pub fn stream_dump<R: BufRead>(
    source: R,
    format: DumpFormat,
    options: IngestOptions,
) -> DumpReader<R> {
    match format {
        DumpFormat::MediawikiXml => DumpReader::Xml(XmlPages::new(source, options)),
        DumpFormat::Jsonl => DumpReader::Jsonl(JsonlPages::new(source, options)),
    }
}

pub enum DumpReader<R: BufRead> {
    Xml(XmlPages<R>),
    Jsonl(JsonlPages<R>),
}

impl<R: BufRead> DumpReader<R> {
    pub fn stats(&self) -> &IngestStats {
        match self {
            DumpReader::Xml(r) => &r.stats,
            DumpReader::Jsonl(r) => &r.stats,
        }
    }
}

impl<R: BufRead> Iterator for DumpReader<R> {
    type Item = Result<PageRevisionStream>;

    fn next(&mut self) -> Option<Self::Item> {
        match self {
            DumpReader::Xml(r) => r.next(),
            DumpReader::Jsonl(r) => r.next(),
        }
    }
}

// ---------------------------------------------------------------------------
// MediaWiki XML

#[derive(Debug, Default)]
struct RevisionBuilder {
    id: Option<u64>,
    timestamp: Option<String>,
    text: Option<String>,
}

pub struct XmlPages<R: BufRead> {
    reader: Reader<R>,
    buf: Vec<u8>,
    path: Vec<String>,
    options: IngestOptions,
    stats: IngestStats,
    page: Option<PageBuilder>,
    revision: Option<RevisionBuilder>,
    capture: Option<String>,
    done: bool,
}

impl<R: BufRead> XmlPages<R> {
    fn new(source: R, options: IngestOptions) -> Self {
        let mut reader = Reader::from_reader(source);
        let config = reader.config_mut();
        config.trim_text(false);
        config.check_end_names = true;
        XmlPages {
            reader,
            buf: Vec::with_capacity(64 * 1024),
            path: Vec::new(),
            options,
            stats: IngestStats::default(),
            page: None,
            revision: None,
            capture: None,
            done: false,
        }
    }

    fn error(&self, message: impl Into<String>) -> Error {
        Error::Xml {
            offset: self.reader.buffer_position(),
            path: self.path.join("/"),
            message: message.into(),
        }
    }

    fn parent(&self) -> Option<&str> {
        self.path
            .len()
            .checked_sub(2)
            .map(|i| self.path[i].as_str())
    }

    fn on_start(&mut self, name: &str) -> Result<()> {
        self.path.push(name.to_owned());
        match (name, self.parent()) {
            ("page", _) => {
                if self.page.is_some() {
                    return Err(self.error("nested <page> element"));
                }
                self.page = Some(PageBuilder::default());
            }
            ("revision", Some("page")) => self.revision = Some(RevisionBuilder::default()),
            ("title" | "ns" | "id", Some("page")) => self.capture = Some(String::new()),
            ("id" | "timestamp" | "text", Some("revision")) => self.capture = Some(String::new()),
            _ => {}
        }
        Ok(())
    }

    /// Returns a finished page when `</page>` closes.
    fn on_end(&mut self) -> Result<Option<PageRevisionStream>> {
        let parent = self.parent().map(str::to_owned);
        let name = match self.path.last() {
            Some(name) => name.clone(),
            None => return Err(self.error("unbalanced end tag")),
        };
        let captured = self.capture.take();
        let mut finished = None;
        match (name.as_str(), parent.as_deref()) {
            ("title", Some("page")) => {
                if let Some(page) = self.page.as_mut() {
                    page.title = captured.unwrap_or_default();
                }
            }
            ("ns", Some("page")) => {
                let raw = captured.unwrap_or_default();
                let ns = raw
                    .trim()
                    .parse()
                    .map_err(|_| self.error(format!("invalid namespace `{raw}`")))?;
                if let Some(page) = self.page.as_mut() {
                    page.ns = Some(ns);
                }
            }
            ("id", Some("page")) => {
                let raw = captured.unwrap_or_default();
                let id = raw
                    .trim()
                    .parse()
                    .map_err(|_| self.error(format!("invalid page id `{raw}`")))?;
                if let Some(page) = self.page.as_mut() {
                    page.page_id = Some(id);
                }
            }
            ("id", Some("revision")) => {
                let raw = captured.unwrap_or_default();
                let id = raw
                    .trim()
                    .parse()
                    .map_err(|_| self.error(format!("invalid revision id `{raw}`")))?;
                if let Some(rev) = self.revision.as_mut() {
                    rev.id = Some(id);
                }
            }
            ("timestamp", Some("revision")) => {
                if let Some(rev) = self.revision.as_mut() {
                    rev.timestamp = captured;
                }
            }
            ("text", Some("revision")) => {
                if let Some(rev) = self.revision.as_mut() {
                    rev.text = captured;
                }
            }
            ("revision", Some("page")) => self.finish_revision()?,
            ("page", _) => {
                let page = self.page.take().unwrap_or_default();
                let page_id = page
                    .page_id
                    .ok_or_else(|| self.error("page without <id>"))?;
                if page.namespace_allowed(&self.options) {
                    finished = Some(page.finish(page_id, &mut self.stats));
                } else {
                    self.stats.pages_skipped_namespace += 1;
                }
            }
            _ => {}
        }
        self.path.pop();
        Ok(finished)
    }

    fn finish_revision(&mut self) -> Result<()> {
        let rev = self.revision.take().unwrap_or_default();
        let id = rev.id.ok_or_else(|| self.error("revision without <id>"))?;
        let raw_ts = rev.timestamp.unwrap_or_default();
        let Some(timestamp) = parse_timestamp(&raw_ts) else {
            self.stats
                .warn(format!("revision {id}: unparseable timestamp `{raw_ts}`"));
            return Ok(());
        };
        if let Some(page) = self.page.as_mut() {
            page.revisions.push(RawRevision {
                page_id: 0,
                page_title: String::new(),
                revision_id: id,
                timestamp,
                wikitext: rev.text.unwrap_or_default(),
            });
        }
        Ok(())
    }

    fn on_empty(&mut self, e: &BytesStart<'_>) -> Result<Option<PageRevisionStream>> {
        let name = element_name(e).map_err(|m| self.error(m))?;
        self.on_start(&name)?;
        self.on_end()
    }

    fn step(&mut self) -> Result<Option<PageRevisionStream>> {
        loop {
            self.buf.clear();
            let event = match self.reader.read_event_into(&mut self.buf) {
                Ok(event) => event.into_owned(),
                Err(e) => return Err(self.error(e.to_string())),
            };
            match event {
                Event::Start(ref e) => {
                    let name = element_name(e).map_err(|m| self.error(m))?;
                    self.on_start(&name)?;
                }
                Event::Empty(ref e) => {
                    if let Some(page) = self.on_empty(e)? {
                        return Ok(Some(page));
                    }
                }
                Event::End(_) => {
                    if let Some(page) = self.on_end()? {
                        return Ok(Some(page));
                    }
                }
                Event::Text(ref t) => {
                    if self.capture.is_some() {
                        let text = t.unescape().map_err(|e| self.error(e.to_string()))?;
                        if let Some(buf) = self.capture.as_mut() {
                            buf.push_str(&text);
                        }
                    }
                }
                Event::CData(ref c) => {
                    if self.capture.is_some() {
                        let text = std::str::from_utf8(c.as_ref())
                            .map_err(|e| self.error(e.to_string()))?
                            .to_owned();
                        if let Some(buf) = self.capture.as_mut() {
                            buf.push_str(&text);
                        }
                    }
                }
                Event::Eof => {
                    if !self.path.is_empty() {
                        return Err(self.error("unexpected end of input"));
                    }
                    return Ok(None);
                }
                _ => {}
            }
        }
    }
}

fn element_name(e: &BytesStart<'_>) -> std::result::Result<String, String> {
    std::str::from_utf8(e.local_name().as_ref())
        .map(str::to_owned)
        .map_err(|err| format!("non-UTF-8 element name: {err}"))
}

impl<R: BufRead> Iterator for XmlPages<R> {
    type Item = Result<PageRevisionStream>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.done {
            return None;
        }
        match self.step() {
            Ok(Some(page)) => Some(Ok(page)),
            Ok(None) => {
                self.done = true;
                None
            }
            Err(e) => {
                self.done = true;
                Some(Err(e))
            }
        }
    }
}

// ---------------------------------------------------------------------------
// JSONL

#[derive(Debug, Deserialize)]
struct JsonlRecord {
    page_id: u64,
    #[serde(default)]
    page_title: String,
    revision_id: u64,
    timestamp: String,
    #[serde(default)]
    text: Option<String>,
    #[serde(default)]
    ns: Option<i32>,
}

pub struct JsonlPages<R: BufRead> {
    lines: std::io::Lines<R>,
    line_no: usize,
    options: IngestOptions,
    stats: IngestStats,
    pending: Option<PageBuilder>,
    seen: HashSet<u64>,
    done: bool,
}

impl<R: BufRead> JsonlPages<R> {
    fn new(source: R, options: IngestOptions) -> Self {
        JsonlPages {
            lines: source.lines(),
            line_no: 0,
            options,
            stats: IngestStats::default(),
            pending: None,
            seen: HashSet::new(),
            done: false,
        }
    }

    fn flush(&mut self) -> Option<PageRevisionStream> {
        let page = self.pending.take()?;
        let page_id = page.page_id?;
        if page.namespace_allowed(&self.options) {
            Some(page.finish(page_id, &mut self.stats))
        } else {
            self.stats.pages_skipped_namespace += 1;
            None
        }
    }

    fn step(&mut self) -> Result<Option<PageRevisionStream>> {
        loop {
            let Some(line) = self.lines.next() else {
                return Ok(self.flush());
            };
            let line = line?;
            self.line_no += 1;
            if line.trim().is_empty() {
                continue;
            }
            let record: JsonlRecord = serde_json::from_str(&line)
                .map_err(|e| Error::format(self.line_no, e.to_string()))?;

            let mut emitted = None;
            let same_page = self
                .pending
                .as_ref()
                .is_some_and(|p| p.page_id == Some(record.page_id));
            if !same_page {
                if !self.seen.insert(record.page_id) {
                    return Err(Error::format(
                        self.line_no,
                        format!("records for page {} are not contiguous", record.page_id),
                    ));
                }
                emitted = self.flush();
                self.pending = Some(PageBuilder {
                    page_id: Some(record.page_id),
                    title: record.page_title.clone(),
                    ns: record.ns,
                    revisions: Vec::new(),
                });
            }

            match parse_timestamp(&record.timestamp) {
                Some(timestamp) => {
                    if let Some(page) = self.pending.as_mut() {
                        page.revisions.push(RawRevision {
                            page_id: record.page_id,
                            page_title: String::new(),
                            revision_id: record.revision_id,
                            timestamp,
                            wikitext: record.text.unwrap_or_default(),
                        });
                    }
                }
                None => self.stats.warn(format!(
                    "line {}: revision {}: unparseable timestamp `{}`",
                    self.line_no, record.revision_id, record.timestamp
                )),
            }

            if emitted.is_some() {
                return Ok(emitted);
            }
        }
    }
}

impl<R: BufRead> Iterator for JsonlPages<R> {
    type Item = Result<PageRevisionStream>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.done {
            return None;
        }
        match self.step() {
            Ok(Some(page)) => Some(Ok(page)),
            Ok(None) => {
                self.done = true;
                None
            }
            Err(e) => {
                self.done = true;
                Some(Err(e))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xml_pages(xml: &str) -> Vec<Result<PageRevisionStream>> {
        stream_dump(
            xml.as_bytes(),
            DumpFormat::MediawikiXml,
            IngestOptions::default(),
        )
        .collect()
    }

    fn revision(id: u64, ts: &str, text: &str) -> String {
        format!(
            "<revision><id>{id}</id><timestamp>{ts}</timestamp>\
             <contributor><username>x</username><id>999</id></contributor>\
             <text bytes=\"1\">{text}</text></revision>"
        )
    }

    fn page(id: u64, ns: i32, revisions: &[String]) -> String {
        format!(
            "<page><title>Page {id}</title><ns>{ns}</ns><id>{id}</id>{}</page>",
            revisions.concat()
        )
    }

    fn dump(pages: &[String]) -> String {
        format!(
            "<mediawiki xmlns=\"http://www.mediawiki.org/xml/export-0.10/\">\
             <siteinfo><sitename>Test</sitename></siteinfo>{}</mediawiki>",
            pages.concat()
        )
    }

    #[test]
    fn two_revisions_in_order() {
        let xml = dump(&[page(
            7,
            0,
            &[
                revision(1, "2010-01-01T00:00:00Z", "one"),
                revision(2, "2010-01-02T00:00:00Z", "two"),
            ],
        )]);
        let pages: Vec<_> = xml_pages(&xml).into_iter().map(Result::unwrap).collect();
        assert_eq!(pages.len(), 1);
        assert_eq!(pages[0].page_id, 7);
        assert_eq!(pages[0].page_title, "Page 7");
        let ids: Vec<_> = pages[0].revisions.iter().map(|r| r.revision_id).collect();
        assert_eq!(ids, [1, 2]);
        assert_eq!(pages[0].revisions[1].wikitext, "two");
        assert_eq!(pages[0].revisions[1].page_id, 7);
    }

    #[test]
    fn out_of_order_revisions_are_sorted() {
        let xml = dump(&[page(
            1,
            0,
            &[
                revision(5, "2012-05-01T00:00:00Z", "later"),
                revision(9, "2011-05-01T00:00:00Z", "earlier"),
            ],
        )]);
        let page = xml_pages(&xml).remove(0).unwrap();
        let texts: Vec<_> = page.revisions.iter().map(|r| r.wikitext.as_str()).collect();
        assert_eq!(texts, ["earlier", "later"]);
    }

    #[test]
    fn equal_timestamps_tie_break_on_revision_id() {
        let xml = dump(&[page(
            1,
            0,
            &[
                revision(30, "2012-05-01T00:00:00Z", "c"),
                revision(10, "2012-05-01T00:00:00Z", "a"),
                revision(20, "2012-05-01T00:00:00Z", "b"),
            ],
        )]);
        let page = xml_pages(&xml).remove(0).unwrap();
        let ids: Vec<_> = page.revisions.iter().map(|r| r.revision_id).collect();
        assert_eq!(ids, [10, 20, 30]);
    }

    #[test]
    fn entities_and_deleted_text() {
        let deleted = "<revision><id>2</id><timestamp>2010-01-02T00:00:00Z</timestamp>\
                       <text deleted=\"deleted\" /></revision>"
            .to_owned();
        let xml = dump(&[page(
            1,
            0,
            &[
                revision(
                    1,
                    "2010-01-01T00:00:00Z",
                    "A &amp;amp; B &lt;ref&gt;x&lt;/ref&gt;",
                ),
                deleted,
            ],
        )]);
        let page = xml_pages(&xml).remove(0).unwrap();
        assert_eq!(page.revisions[0].wikitext, "A &amp; B <ref>x</ref>");
        assert_eq!(page.revisions.len(), 2);
        assert!(page.revisions[1].is_blank());
    }

    #[test]
    fn namespace_filter() {
        let xml = dump(&[
            page(1, 0, &[revision(1, "2010-01-01T00:00:00Z", "a")]),
            page(2, 1, &[revision(2, "2010-01-01T00:00:00Z", "talk")]),
        ]);
        let mut reader = stream_dump(
            xml.as_bytes(),
            DumpFormat::MediawikiXml,
            IngestOptions::default(),
        );
        let ids: Vec<_> = reader.by_ref().map(|p| p.unwrap().page_id).collect();
        assert_eq!(ids, [1]);
        assert_eq!(reader.stats().pages_skipped_namespace, 1);

        let all: Vec<_> = stream_dump(
            xml.as_bytes(),
            DumpFormat::MediawikiXml,
            IngestOptions { namespace: None },
        )
        .map(|p| p.unwrap().page_id)
        .collect();
        assert_eq!(all, [1, 2]);
    }

    #[test]
    fn bad_timestamp_skips_revision_with_warning() {
        let xml = dump(&[page(
            1,
            0,
            &[
                revision(1, "yesterday", "a"),
                revision(2, "2010-01-01T00:00:00Z", "b"),
            ],
        )]);
        let mut reader = stream_dump(
            xml.as_bytes(),
            DumpFormat::MediawikiXml,
            IngestOptions::default(),
        );
        let page = reader.next().unwrap().unwrap();
        assert_eq!(page.revisions.len(), 1);
        assert_eq!(reader.stats().revisions_skipped, 1);
        assert!(reader.stats().warnings[0].contains("yesterday"));
    }

    #[test]
    fn malformed_xml_reports_position_and_path() {
        let xml =
            "<mediawiki><page><title>x</title><id>1</id><revision><id>1</id></page></mediawiki>";
        let err = xml_pages(xml).pop().unwrap().unwrap_err();
        match err {
            Error::Xml { offset, path, .. } => {
                assert!(offset > 0);
                assert!(path.starts_with("mediawiki/page"), "{path}");
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn truncated_xml_is_an_error() {
        let xml = "<mediawiki><page><title>x</title><id>1</id>";
        assert!(matches!(
            xml_pages(xml).pop().unwrap(),
            Err(Error::Xml { .. })
        ));
    }

    #[test]
    fn unknown_format_is_config_error() {
        assert!(matches!("csv".parse::<DumpFormat>(), Err(Error::Config(_))));
        assert_eq!("jsonl".parse::<DumpFormat>().unwrap(), DumpFormat::Jsonl);
    }

    fn jsonl_line(page: u64, rev: u64, ts: &str, text: &str) -> String {
        serde_json::json!({
            "page_id": page, "page_title": format!("P{page}"), "revision_id": rev,
            "timestamp": ts, "text": text,
        })
        .to_string()
    }

    #[test]
    fn jsonl_groups_contiguous_pages() {
        let input = [
            jsonl_line(1, 11, "2010-01-02T00:00:00Z", "b"),
            jsonl_line(1, 10, "2010-01-01T00:00:00Z", "a"),
            String::new(),
            jsonl_line(2, 20, "2010-01-01T00:00:00Z", "c"),
        ]
        .join("\n");
        let pages: Vec<_> = stream_dump(
            input.as_bytes(),
            DumpFormat::Jsonl,
            IngestOptions::default(),
        )
        .map(Result::unwrap)
        .collect();
        assert_eq!(pages.len(), 2);
        let ids: Vec<_> = pages[0].revisions.iter().map(|r| r.revision_id).collect();
        assert_eq!(ids, [10, 11]);
        assert_eq!(pages[1].page_title, "P2");
    }

    #[test]
    fn jsonl_interleaved_pages_rejected() {
        let input = [
            jsonl_line(1, 10, "2010-01-01T00:00:00Z", "a"),
            jsonl_line(2, 20, "2010-01-01T00:00:00Z", "b"),
            jsonl_line(1, 11, "2010-01-02T00:00:00Z", "c"),
        ]
        .join("\n");
        let results: Vec<_> = stream_dump(
            input.as_bytes(),
            DumpFormat::Jsonl,
            IngestOptions::default(),
        )
        .collect();
        match results.last().unwrap() {
            Err(Error::Format { line, .. }) => assert_eq!(*line, 3),
            other => panic!("expected format error, got {other:?}"),
        }
    }

    #[test]
    fn jsonl_bad_json_is_positioned() {
        let input = format!(
            "{}\nnot json\n",
            jsonl_line(1, 1, "2010-01-01T00:00:00Z", "a")
        );
        let results: Vec<_> = stream_dump(
            input.as_bytes(),
            DumpFormat::Jsonl,
            IngestOptions::default(),
        )
        .collect();
        assert!(matches!(
            results.last().unwrap(),
            Err(Error::Format { line: 2, .. })
        ));
    }

    #[test]
    fn adjacent_pair_counts() {
        let rev = |id| RawRevision {
            page_id: 1,
            page_title: String::new(),
            revision_id: id,
            timestamp: parse_timestamp("2010-01-01T00:00:00Z").unwrap(),
            wikitext: String::new(),
        };
        assert_eq!(adjacent_pairs(&[rev(1)]).count(), 0);
        let three = [rev(1), rev(2), rev(3)];
        let pairs: Vec<_> = adjacent_pairs(&three)
            .map(|(a, b)| (a.revision_id, b.revision_id))
            .collect();
        assert_eq!(pairs, [(1, 2), (2, 3)]);
    }
}
