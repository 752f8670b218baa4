use std::io;
use std::path::PathBuf;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("I/O error: {0}")]
    Io(#[from] io::Error),

    /// Malformed XML in a dump. `path` is the slash-joined element stack.
    #[error("malformed XML at byte {offset} ({path}): {message}")]
    Xml {
        offset: u64,
        path: String,
        message: String,
    },

    /// A line-oriented input (JSONL dump, TSV corpus, benchmark) failed to parse.
    #[error("format error at line {line}: {message}")]
    Format { line: usize, message: String },

    #[error("configuration error: {0}")]
    Config(String),

    #[error("cannot read {path}: {source}")]
    ConfigFile {
        path: PathBuf,
        #[source]
        source: io::Error,
    },

    #[error("partition sizing error: {0}")]
    Sizing(String),

    #[error("input error: {0}")]
    Input(String),

    #[error("degenerate input: {0}")]
    Degenerate(String),
}

impl Error {
    /// Short machine-readable kind, used in single-line CLI error records.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Io(_) => "io",
            Error::Xml { .. } => "xml",
            Error::Format { .. } => "format",
            Error::Config(_) | Error::ConfigFile { .. } => "config",
            Error::Sizing(_) => "sizing",
            Error::Input(_) => "input",
            Error::Degenerate(_) => "degenerate",
        }
    }

    pub(crate) fn format(line: usize, message: impl Into<String>) -> Self {
        Error::Format {
            line,
            message: message.into(),
        }
    }
}
