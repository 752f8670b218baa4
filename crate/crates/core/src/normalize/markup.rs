//! Wikitext to plain prose.
//!
//! This is not a wikitext parser. It removes the constructs that would
//! otherwise leak into sentences (templates, references, tables, file and
//! category links, HTML) and keeps the visible text of links. Unbalanced
//! markup is dropped up to the end of its line.

use std::collections::HashMap;

/// Tags whose content is never prose.
const CONTENT_TAGS: &[&str] = &[
    "ref",
    "math",
    "gallery",
    "timeline",
    "score",
    "syntaxhighlight",
    "source",
    "references",
];

/// Link namespaces that render as media or metadata, not text.
const HIDDEN_LINK_PREFIXES: &[&str] = &["category:", "file:", "image:", "media:"];

const URL_SCHEMES: &[&str] = &["http://", "https://", "ftp://", "//", "mailto:", "news:"];

/// Strip wikitext and HTML markup, returning whitespace-collapsed plain text.
///
/// Idempotent: applying it to its own output changes nothing.
pub fn strip_markup(wikitext: &str) -> String {
    let mut current = strip_once(wikitext);
    loop {
        let next = strip_once(&current);
        if next == current {
            return current;
        }
        // every non-identity pass shrinks the text, so this terminates
        debug_assert!(next.len() <= current.len());
        current = next;
    }
}

fn strip_once(text: &str) -> String {
    let text = remove_comments(text);
    let text = remove_content_tags(&text);
    let text = remove_balanced(&text, "{{", "}}");
    let text = remove_balanced(&text, "{|", "|}");
    let text = strip_line_markup(&text);
    let text = replace_links(&text);
    let text = replace_external_links(&text);
    let text = remove_html_tags(&text);
    let text = remove_quote_runs(&text);
    let text = html_escape::decode_html_entities(&text);
    collapse_whitespace(&text)
}

fn end_of_line(s: &str, from: usize) -> usize {
    s[from..].find('\n').map_or(s.len(), |i| from + i)
}

fn remove_comments(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    let mut rest = 0;
    while let Some(i) = s[rest..].find("<!--") {
        let start = rest + i;
        out.push_str(&s[rest..start]);
        rest = match s[start + 4..].find("-->") {
            Some(j) => start + 4 + j + 3,
            None => end_of_line(s, start),
        };
    }
    out.push_str(&s[rest..]);
    out
}

/// Length of an opening `<name` if `s[at..]` starts one (case-insensitive),
/// followed by whitespace, `/` or `>`.
fn tag_open_len(lower: &str, at: usize, name: &str) -> Option<usize> {
    let tail = lower[at..].strip_prefix('<')?.strip_prefix(name)?;
    match tail.chars().next() {
        None | Some('>') | Some('/') => Some(1 + name.len()),
        Some(c) if c.is_whitespace() => Some(1 + name.len()),
        _ => None,
    }
}

fn remove_content_tags(s: &str) -> String {
    let lower = s.to_ascii_lowercase();
    let mut out = String::with_capacity(s.len());
    let mut rest = 0;
    let mut search = 0;
    while let Some(i) = lower[search..].find('<') {
        let start = search + i;
        let Some(name) = CONTENT_TAGS
            .iter()
            .find(|name| tag_open_len(&lower, start, name).is_some())
        else {
            search = start + 1;
            continue;
        };
        out.push_str(&s[rest..start]);
        let eol = end_of_line(s, start);
        rest = match lower[start..].find('>').map(|j| start + j) {
            None => eol,
            Some(gt) if lower[..gt].ends_with('/') => gt + 1,
            Some(gt) => {
                let close = format!("</{name}");
                match lower[gt..].find(&close) {
                    Some(j) => {
                        let close_start = gt + j;
                        lower[close_start..]
                            .find('>')
                            .map_or(eol.max(close_start), |k| close_start + k + 1)
                    }
                    None => end_of_line(s, gt),
                }
            }
        };
        search = rest;
    }
    out.push_str(&s[rest..]);
    out
}

/// Pair every `open` with its matching `close` (innermost first), returning
/// `open start -> close end`. Unmatched opens are absent from the map.
fn pair_delimiters(s: &str, open: &str, close: &str) -> (HashMap<usize, usize>, Vec<usize>) {
    let bytes = s.as_bytes();
    let (ob, cb) = (open.as_bytes(), close.as_bytes());
    let mut stack = Vec::new();
    let mut pairs = HashMap::new();
    let mut stray_closes = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        if bytes[i..].starts_with(ob) {
            stack.push(i);
            i += ob.len();
        } else if bytes[i..].starts_with(cb) {
            match stack.pop() {
                Some(o) => {
                    pairs.insert(o, i + cb.len());
                }
                None => stray_closes.push(i),
            }
            i += cb.len();
        } else {
            i += 1;
        }
    }
    (pairs, stray_closes)
}

/// Remove `open ... close` spans with nesting. An unclosed `open` removes the
/// rest of its line; a stray `close` is removed on its own.
fn remove_balanced(s: &str, open: &str, close: &str) -> String {
    if !s.contains(open) && !s.contains(close) {
        return s.to_owned();
    }
    let (pairs, stray) = pair_delimiters(s, open, close);
    let stray: std::collections::HashSet<usize> = stray.into_iter().collect();
    let mut out = String::with_capacity(s.len());
    let bytes = s.as_bytes();
    let mut i = 0;
    let mut copied = 0;
    while i < bytes.len() {
        if bytes[i..].starts_with(open.as_bytes()) {
            out.push_str(&s[copied..i]);
            i = pairs
                .get(&i)
                .copied()
                .unwrap_or_else(|| end_of_line(s, i).max(i + open.len()));
            copied = i;
        } else if stray.contains(&i) {
            out.push_str(&s[copied..i]);
            i += close.len();
            copied = i;
        } else {
            i += 1;
        }
    }
    out.push_str(&s[copied..]);
    out
}

fn is_heading(line: &str) -> bool {
    let t = line.trim();
    t.len() >= 2 && t.starts_with('=') && t.ends_with('=')
}

fn strip_line_markup(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for (n, line) in s.split('\n').enumerate() {
        if n > 0 {
            out.push('\n');
        }
        if is_heading(line) || line.trim_start().starts_with("----") {
            continue;
        }
        out.push_str(line.trim_start_matches(['*', '#', ':', ';']));
    }
    out
}

/// Visible text of an internal link body (the part between `[[` and `]]`).
fn link_label(inner: &str) -> String {
    let (pairs, _) = pair_delimiters(inner, "[[", "]]");
    // split on `|` outside nested links
    let mut pipes = Vec::new();
    let bytes = inner.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        if let Some(&end) = pairs.get(&i) {
            i = end;
            continue;
        }
        if bytes[i] == b'|' {
            pipes.push(i);
        }
        i += 1;
    }
    let target = &inner[..pipes.first().copied().unwrap_or(inner.len())];
    let namespace = target.trim_start_matches(':').trim_start().to_lowercase();
    if HIDDEN_LINK_PREFIXES
        .iter()
        .any(|p| namespace.starts_with(p))
    {
        return String::new();
    }
    let label = match pipes.last() {
        Some(&p) if !inner[p + 1..].trim().is_empty() => &inner[p + 1..],
        _ => target,
    };
    replace_links(label)
}

fn replace_links(s: &str) -> String {
    if !s.contains("[[") && !s.contains("]]") {
        return s.to_owned();
    }
    let (pairs, stray) = pair_delimiters(s, "[[", "]]");
    let stray: std::collections::HashSet<usize> = stray.into_iter().collect();
    let bytes = s.as_bytes();
    let mut out = String::with_capacity(s.len());
    let mut i = 0;
    let mut copied = 0;
    while i < bytes.len() {
        if bytes[i..].starts_with(b"[[") {
            out.push_str(&s[copied..i]);
            match pairs.get(&i) {
                Some(&end) => {
                    out.push_str(&link_label(&s[i + 2..end - 2]));
                    i = end;
                }
                None => i = end_of_line(s, i).max(i + 2),
            }
            copied = i;
        } else if stray.contains(&i) {
            out.push_str(&s[copied..i]);
            i += 2;
            copied = i;
        } else {
            i += 1;
        }
    }
    out.push_str(&s[copied..]);
    out
}

fn replace_external_links(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    let mut rest = 0;
    let mut search = 0;
    while let Some(i) = s[search..].find('[') {
        let start = search + i;
        let after = &s[start + 1..];
        if !URL_SCHEMES.iter().any(|scheme| {
            after
                .get(..scheme.len())
                .is_some_and(|p| p.eq_ignore_ascii_case(scheme))
        }) {
            search = start + 1;
            continue;
        }
        out.push_str(&s[rest..start]);
        let eol = end_of_line(s, start);
        rest = match s[start..eol].find(']') {
            Some(j) => {
                let inner = &s[start + 1..start + j];
                if let Some(space) = inner.find(char::is_whitespace) {
                    out.push_str(inner[space..].trim());
                }
                start + j + 1
            }
            None => eol,
        };
        search = rest;
    }
    out.push_str(&s[rest..]);
    out
}

fn remove_html_tags(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    let mut rest = 0;
    let mut search = 0;
    while let Some(i) = s[search..].find('<') {
        let start = search + i;
        let mut next = s[start + 1..].chars();
        let is_tag = match next.next() {
            Some(c) if c.is_ascii_alphabetic() || c == '!' => true,
            Some('/') => next.next().is_some_and(|c| c.is_ascii_alphabetic()),
            _ => false,
        };
        if !is_tag {
            search = start + 1;
            continue;
        }
        out.push_str(&s[rest..start]);
        let eol = end_of_line(s, start);
        rest = match s[start..eol].find('>') {
            Some(j) => {
                let tag = s[start + 1..start + j]
                    .trim_start_matches('/')
                    .to_ascii_lowercase();
                let name = tag
                    .split(|c: char| !c.is_ascii_alphanumeric())
                    .next()
                    .unwrap_or("");
                if matches!(name, "br" | "p" | "div" | "li" | "tr" | "td") {
                    out.push(' ');
                }
                start + j + 1
            }
            None => eol,
        };
        search = rest;
    }
    out.push_str(&s[rest..]);
    out
}

/// Drop runs of two or more apostrophes (italic/bold markers).
fn remove_quote_runs(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    let mut run = 0usize;
    for c in s.chars() {
        if c == '\'' {
            run += 1;
            continue;
        }
        if run == 1 {
            out.push('\'');
        }
        run = 0;
        out.push(c);
    }
    if run == 1 {
        out.push('\'');
    }
    out
}

fn collapse_whitespace(s: &str) -> String {
    s.split_whitespace().collect::<Vec<_>>().join(" ")
}
