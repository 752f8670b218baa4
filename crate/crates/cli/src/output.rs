//! Input digests, all-or-nothing output files and run manifests.

use std::fs::File;
use std::io::{self, BufReader, Read, Write};
use std::path::{Path, PathBuf};

use serde::Serialize;
use sha2::{Digest, Sha256};
use tempfile::NamedTempFile;

use crate::CliError;

/// Hashes everything read through it.
pub struct HashingReader {
    inner: Box<dyn Read>,
    hasher: Sha256,
    bytes: u64,
    name: String,
}

impl HashingReader {
    /// `None` or `-` reads standard input.
    pub fn open(path: Option<&Path>) -> Result<Self, CliError> {
        let (inner, name): (Box<dyn Read>, String) = match path {
            None => (Box::new(io::stdin()), "-".into()),
            Some(p) if p == Path::new("-") => (Box::new(io::stdin()), "-".into()),
            Some(p) => {
                let file = File::open(p).map_err(|source| CliError::io(p, source))?;
                (Box::new(file), p.display().to_string())
            }
        };
        Ok(HashingReader {
            inner,
            hasher: Sha256::new(),
            bytes: 0,
            name,
        })
    }

    pub fn buffered(self) -> BufReader<Self> {
        BufReader::with_capacity(1 << 16, self)
    }

    /// Reads whatever the consumer left unread, so the digest covers the
    /// whole input.
    pub fn finish(mut self) -> Result<InputDigest, CliError> {
        let name = self.name.clone();
        io::copy(&mut self, &mut io::sink()).map_err(|source| CliError::io(&name, source))?;
        Ok(InputDigest {
            path: self.name,
            sha256: hex::encode(self.hasher.finalize()),
            bytes: self.bytes,
        })
    }
}

impl Read for HashingReader {
    fn read(&mut self, buf: &mut [u8]) -> io::Result<usize> {
        let n = self.inner.read(buf)?;
        self.hasher.update(&buf[..n]);
        self.bytes += n as u64;
        Ok(n)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct InputDigest {
    pub path: String,
    pub sha256: String,
    pub bytes: u64,
}

pub fn digest_bytes(path: &Path, data: &[u8]) -> InputDigest {
    InputDigest {
        path: path.display().to_string(),
        sha256: hex::encode(Sha256::digest(data)),
        bytes: data.len() as u64,
    }
}

/// Files written together: nothing appears at the destination paths unless
/// every file was written, and files already moved into place are removed
/// if a later one fails.
#[derive(Default)]
pub struct OutputSet {
    files: Vec<(PathBuf, Vec<u8>)>,
}

impl OutputSet {
    pub fn add(&mut self, path: impl Into<PathBuf>, data: Vec<u8>) {
        self.files.push((path.into(), data));
    }

    pub fn digests(&self) -> Vec<InputDigest> {
        self.files.iter().map(|(p, d)| digest_bytes(p, d)).collect()
    }

    pub fn commit(self) -> Result<(), CliError> {
        let mut staged = Vec::with_capacity(self.files.len());
        for (path, data) in &self.files {
            let dir = match path.parent() {
                Some(d) if !d.as_os_str().is_empty() => d,
                _ => Path::new("."),
            };
            let mut tmp = NamedTempFile::new_in(dir).map_err(|e| CliError::io(path, e))?;
            tmp.write_all(data).map_err(|e| CliError::io(path, e))?;
            tmp.as_file()
                .sync_all()
                .map_err(|e| CliError::io(path, e))?;
            staged.push((tmp, path));
        }
        let mut placed: Vec<&PathBuf> = Vec::with_capacity(staged.len());
        for (tmp, path) in staged {
            if let Err(e) = tmp.persist(path) {
                for done in placed {
                    let _ = std::fs::remove_file(done);
                }
                return Err(CliError::io(path, e.error));
            }
            placed.push(path);
        }
        Ok(())
    }
}

/// Enough to rerun a command: the effective configuration, the seed, and
/// digests of what was read and written.
#[derive(Debug, Serialize)]
pub struct Manifest {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: &'static str,
    pub config: serde_json::Map<String, serde_json::Value>,
    pub seed: u64,
    pub inputs: Vec<InputDigest>,
    pub outputs: Vec<InputDigest>,
    pub counts: serde_json::Value,
}

impl Manifest {
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = serde_json::to_vec_pretty(self).expect("manifest serializes");
        out.push(b'\n');
        out
    }
}
