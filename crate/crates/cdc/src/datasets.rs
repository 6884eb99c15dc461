//! Input corpora: seeded synthetic random streams and concatenation of
//! local files into one stream with an offset manifest.

use std::fs::File;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};

use serde::Serialize;
use thiserror::Error;

use crate::rng;

#[derive(Debug, Error)]
pub enum DatasetError {
    #[error("cannot read {path}: {source}")]
    Io { path: PathBuf, source: io::Error },
}

/// What to chunk: a seeded random stream or a list of files read back to
/// back, no separators. Random output is a pure function of
/// `(seed, length)`; file order is the caller's list, verbatim.
#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum CorpusSpec {
    Random { seed: u64, length: u64 },
    Concat { files: Vec<PathBuf> },
}

impl CorpusSpec {
    pub fn load(&self) -> Result<Vec<u8>, DatasetError> {
        match self {
            CorpusSpec::Random { seed, length } => Ok(random_bytes(*seed, *length)),
            CorpusSpec::Concat { files } => {
                let mut data = Vec::new();
                for path in files {
                    read_into(path, &mut data)?;
                }
                Ok(data)
            }
        }
    }
}

/// `length` uniform bytes from the counter-based generator: block `k` of
/// eight bytes is SplitMix64 output `k` for `seed`, little-endian. Any
/// offset can be produced independently (see [`fill_random_at`]).
pub fn random_bytes(seed: u64, length: u64) -> Vec<u8> {
    let mut buf = vec![0u8; length as usize];
    fill_random_at(seed, 0, &mut buf);
    buf
}

/// Fills `buf` with the bytes of the random stream starting at `offset`.
pub fn fill_random_at(seed: u64, offset: u64, buf: &mut [u8]) {
    let mut position = offset;
    let mut written = 0usize;
    while written < buf.len() {
        let block_index = position / 8;
        let within = (position % 8) as usize;
        let word = rng::nth(seed, block_index).to_le_bytes();
        let take = (8 - within).min(buf.len() - written);
        buf[written..written + take].copy_from_slice(&word[within..within + take]);
        written += take;
        position += take as u64;
    }
}

/// Writes the random stream to `out` without materializing it.
pub fn write_random<W: Write>(seed: u64, length: u64, out: &mut W) -> io::Result<()> {
    const BLOCK: usize = 1 << 20;
    let mut buf = vec![0u8; BLOCK];
    let mut offset = 0u64;
    while offset < length {
        let take = ((length - offset) as usize).min(BLOCK);
        fill_random_at(seed, offset, &mut buf[..take]);
        out.write_all(&buf[..take])?;
        offset += take as u64;
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ManifestEntry {
    pub path: String,
    pub offset: u64,
    pub length: u64,
}

/// Per-file offsets of a concatenated corpus.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CorpusManifest {
    pub files: Vec<ManifestEntry>,
    pub total_length: u64,
}

/// Streams the files to `out` in the given order and records where each
/// one landed. An unreadable file aborts with its path.
pub fn concat_corpus<W: Write>(
    paths: &[PathBuf],
    out: &mut W,
) -> Result<CorpusManifest, DatasetError> {
    let mut files = Vec::with_capacity(paths.len());
    let mut offset = 0u64;
    for path in paths {
        let length = copy_file(path, out)?;
        files.push(ManifestEntry {
            path: path.display().to_string(),
            offset,
            length,
        });
        offset += length;
    }
    Ok(CorpusManifest {
        files,
        total_length: offset,
    })
}

fn copy_file<W: Write>(path: &Path, out: &mut W) -> Result<u64, DatasetError> {
    let wrap = |source: io::Error| DatasetError::Io {
        path: path.to_path_buf(),
        source,
    };
    let mut file = File::open(path).map_err(wrap)?;
    io::copy(&mut file, out).map_err(wrap)
}

fn read_into(path: &Path, data: &mut Vec<u8>) -> Result<(), DatasetError> {
    let wrap = |source: io::Error| DatasetError::Io {
        path: path.to_path_buf(),
        source,
    };
    File::open(path)
        .and_then(|mut f| f.read_to_end(data))
        .map_err(wrap)?;
    Ok(())
}
