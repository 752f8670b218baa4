//! One example per line: complex tokens, a TAB, then the two simple
//! sentences separated by the delimiter token. Tokens are joined by single
//! spaces; lines end with LF.

use std::io::{BufRead, Write};

use crate::error::{Error, Result};
use crate::normalize::Sentence;

use super::SplitExample;

pub const DEFAULT_DELIMITER: &str = "<::>";

fn check_tokens(s: &Sentence, delimiter: &str) -> Result<()> {
    for token in s.tokens() {
        if token == delimiter || token.contains(char::is_whitespace) || token.is_empty() {
            return Err(Error::Input(format!(
                "token {token:?} cannot be written to a corpus line"
            )));
        }
    }
    Ok(())
}

pub fn format_line(example: &SplitExample, delimiter: &str) -> Result<String> {
    for s in example.sentences() {
        check_tokens(s, delimiter)?;
    }
    Ok(format!(
        "{}\t{} {delimiter} {}",
        example.complex, example.simples[0], example.simples[1]
    ))
}

/// `line_no` is 1-based and only used in error messages.
pub fn parse_line(line: &str, line_no: usize, delimiter: &str) -> Result<SplitExample> {
    let line = line.strip_suffix('\r').unwrap_or(line);
    let fields: Vec<&str> = line.split('\t').collect();
    if fields.len() != 2 {
        return Err(Error::format(
            line_no,
            format!("expected exactly one TAB, found {}", fields.len() - 1),
        ));
    }
    let complex = Sentence::from_tokenized(fields[0])
        .ok_or_else(|| Error::format(line_no, "empty complex sentence"))?;
    let simples = split_on_delimiter(fields[1], delimiter);
    if simples.len() != 2 {
        return Err(Error::format(
            line_no,
            format!(
                "expected exactly one `{delimiter}` delimiter on the simple side, found {}",
                simples.len().saturating_sub(1)
            ),
        ));
    }
    let mut simples = simples.into_iter();
    let mut next = || {
        simples
            .next()
            .and_then(Sentence::new)
            .ok_or_else(|| Error::format(line_no, "empty simple sentence"))
    };
    let (s1, s2) = (next()?, next()?);
    Ok(SplitExample::new(complex, s1, s2))
}

/// Token groups separated by the delimiter token. An empty side yields an
/// empty group.
pub(crate) fn split_on_delimiter(text: &str, delimiter: &str) -> Vec<Vec<String>> {
    let mut groups = vec![Vec::new()];
    for token in text.split_whitespace() {
        if token == delimiter {
            groups.push(Vec::new());
        } else if let Some(last) = groups.last_mut() {
            last.push(token.to_owned());
        }
    }
    groups
}

pub fn write_tsv<W: Write>(examples: &[SplitExample], mut sink: W, delimiter: &str) -> Result<()> {
    for ex in examples {
        let line = format_line(ex, delimiter)?;
        sink.write_all(line.as_bytes())?;
        sink.write_all(b"\n")?;
    }
    sink.flush()?;
    Ok(())
}

/// Empty lines are skipped.
pub fn read_tsv<R: BufRead>(source: R, delimiter: &str) -> Result<Vec<SplitExample>> {
    let mut out = Vec::new();
    for (i, line) in source.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        out.push(parse_line(&line, i + 1, delimiter)?);
    }
    Ok(out)
}
