//! The streaming chunker contract.
//!
//! A [`Chunker`] is the per-algorithm boundary state machine. It sees the
//! input as consecutive blocks of bytes and reports the end of the current
//! chunk as an index into the block it was found in. All state machines are
//! strictly incremental (no lookahead), so the boundaries an input produces
//! do not depend on how it is split into blocks.
//!
//! [`ChunkStream`] drives a boxed `Chunker` over a whole input, translating
//! per-block indices into absolute cut positions. A cut at position `p`
//! means `p` bytes have been consumed into finished chunks; the chunk ends
//! with byte `p - 1` (zero-indexed) and the next one starts at `p`.
//! [`RecordStream`] adds content fingerprinting on top and yields one
//! [`ChunkRecord`] per chunk.

use sha2::{Digest, Sha256};

use crate::error::StreamError;

/// Boundary state machine for one chunking algorithm.
///
/// `find_boundary` scans `data` and returns the index of the byte that ends
/// the current chunk, or `None` if the chunk continues past this block.
/// After a boundary the driver calls `reset`; a chunk never depends on
/// bytes of previous chunks.
pub trait Chunker {
    fn find_boundary(&mut self, data: &[u8]) -> Option<usize>;
    fn reset(&mut self);
}

/// Span of the trailing partial chunk reported by [`ChunkStream::finalize`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TrailingSpan {
    pub start: u64,
    pub length: u64,
}

/// Drives a [`Chunker`] over block-wise input, yielding absolute cut
/// positions. Tracks totals but not chunk contents.
pub struct ChunkStream {
    inner: Box<dyn Chunker>,
    consumed: u64,
    chunk_start: u64,
    chunks_emitted: u64,
    finalized: bool,
}

impl ChunkStream {
    pub fn new(inner: Box<dyn Chunker>) -> Self {
        ChunkStream {
            inner,
            consumed: 0,
            chunk_start: 0,
            chunks_emitted: 0,
            finalized: false,
        }
    }

    /// Feed one block; returns every cut position inside it, strictly
    /// increasing. An empty block returns an empty list and changes nothing.
    pub fn push_block(&mut self, block: &[u8]) -> Result<Vec<u64>, StreamError> {
        if self.finalized {
            return Err(StreamError::PushAfterFinalize);
        }
        let mut cuts = Vec::new();
        let mut offset = 0usize;
        while offset < block.len() {
            match self.inner.find_boundary(&block[offset..]) {
                Some(end) => {
                    let cut = self.consumed + (offset + end + 1) as u64;
                    cuts.push(cut);
                    self.chunk_start = cut;
                    self.chunks_emitted += 1;
                    self.inner.reset();
                    offset += end + 1;
                }
                None => break,
            }
        }
        self.consumed += block.len() as u64;
        Ok(cuts)
    }

    /// Ends the stream, reporting the bytes since the last cut (possibly
    /// zero) as the trailing chunk. The stream is unusable afterwards.
    pub fn finalize(&mut self) -> Result<TrailingSpan, StreamError> {
        if self.finalized {
            return Err(StreamError::DoubleFinalize);
        }
        self.finalized = true;
        Ok(TrailingSpan {
            start: self.chunk_start,
            length: self.consumed - self.chunk_start,
        })
    }

    pub fn bytes_consumed(&self) -> u64 {
        self.consumed
    }

    pub fn chunks_emitted(&self) -> u64 {
        self.chunks_emitted
    }
}

/// One emitted chunk: ordinal, length and content digest.
///
/// The fingerprint is SHA-256 of the chunk bytes, nothing else, so equal
/// content always maps to an equal fingerprint. The trailing chunk at end
/// of stream is emitted like any other but flagged, letting analysis drop
/// it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChunkRecord {
    pub ordinal: u64,
    pub length: u64,
    pub fingerprint: [u8; 32],
    pub trailing: bool,
}

impl ChunkRecord {
    pub fn fingerprint_hex(&self) -> String {
        hex::encode(self.fingerprint)
    }
}

/// [`ChunkStream`] plus per-chunk SHA-256, yielding [`ChunkRecord`]s.
pub struct RecordStream {
    stream: ChunkStream,
    hasher: Sha256,
    last_cut: u64,
    ordinal: u64,
}

impl RecordStream {
    pub fn new(inner: Box<dyn Chunker>) -> Self {
        RecordStream {
            stream: ChunkStream::new(inner),
            hasher: Sha256::new(),
            last_cut: 0,
            ordinal: 0,
        }
    }

    pub fn push_block(&mut self, block: &[u8]) -> Result<Vec<ChunkRecord>, StreamError> {
        let base = self.stream.bytes_consumed();
        let cuts = self.stream.push_block(block)?;
        let mut records = Vec::with_capacity(cuts.len());
        let mut hashed_upto = 0usize;
        for cut in cuts {
            let rel_end = (cut - base) as usize;
            self.hasher.update(&block[hashed_upto..rel_end]);
            hashed_upto = rel_end;
            let fingerprint = self.hasher.finalize_reset().into();
            records.push(ChunkRecord {
                ordinal: self.ordinal,
                length: cut - self.last_cut,
                fingerprint,
                trailing: false,
            });
            self.ordinal += 1;
            self.last_cut = cut;
        }
        self.hasher.update(&block[hashed_upto..]);
        Ok(records)
    }

    /// Emits the trailing chunk (zero length if the input ended exactly on
    /// a cut) and closes the stream.
    pub fn finalize(&mut self) -> Result<ChunkRecord, StreamError> {
        let span = self.stream.finalize()?;
        let fingerprint = self.hasher.finalize_reset().into();
        let record = ChunkRecord {
            ordinal: self.ordinal,
            length: span.length,
            fingerprint,
            trailing: true,
        };
        self.ordinal += 1;
        Ok(record)
    }

    pub fn bytes_consumed(&self) -> u64 {
        self.stream.bytes_consumed()
    }
}
