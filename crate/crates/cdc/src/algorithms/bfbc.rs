//! Byte-pair frequency based chunking: cut where the current two-byte
//! window matches one of a predefined set of divisor pairs, once past a
//! minimum chunk length.

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::ConfigError;
use crate::stream::Chunker;

/// One selected divisor: the byte pair, its occurrence count in the
/// source corpus, and its rank in the descending frequency list.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Divisor {
    pub pair: (u8, u8),
    pub count: u64,
    pub rank: usize,
}

/// Membership structure over the 65536 possible byte pairs, backed by an
/// 8 KiB bitset for constant-time lookups regardless of set size.
#[derive(Clone)]
pub struct DivisorSet {
    bits: Box<[u64; 1024]>,
    selected: Vec<Divisor>,
}

impl DivisorSet {
    /// Builds a set from explicit pairs (counts and ranks unknown).
    pub fn from_pairs(pairs: &[(u8, u8)]) -> Result<Self, ConfigError> {
        let divisors: Vec<Divisor> = pairs
            .iter()
            .enumerate()
            .map(|(rank, &pair)| Divisor { pair, count: 0, rank })
            .collect();
        Self::from_divisors(divisors)
    }

    /// Builds a set from the `k` most frequent pairs of a frequency list
    /// sorted descending by count.
    pub fn top_k(frequencies: &[((u8, u8), u64)], k: usize) -> Result<Self, ConfigError> {
        let divisors: Vec<Divisor> = frequencies
            .iter()
            .take(k)
            .enumerate()
            .map(|(rank, &(pair, count))| Divisor { pair, count, rank })
            .collect();
        Self::from_divisors(divisors)
    }

    pub fn from_divisors(selected: Vec<Divisor>) -> Result<Self, ConfigError> {
        if selected.is_empty() {
            return Err(ConfigError::EmptyDivisorSet);
        }
        let mut bits = Box::new([0u64; 1024]);
        for divisor in &selected {
            let index = pair_index(divisor.pair.0, divisor.pair.1);
            bits[index >> 6] |= 1 << (index & 63);
        }
        Ok(DivisorSet { bits, selected })
    }

    #[inline]
    pub fn contains(&self, prev: u8, current: u8) -> bool {
        let index = pair_index(prev, current);
        self.bits[index >> 6] >> (index & 63) & 1 == 1
    }

    pub fn divisors(&self) -> &[Divisor] {
        &self.selected
    }

    pub fn len(&self) -> usize {
        self.selected.len()
    }

    pub fn is_empty(&self) -> bool {
        self.selected.is_empty()
    }
}

#[inline]
fn pair_index(prev: u8, current: u8) -> usize {
    (prev as usize) << 8 | current as usize
}

impl std::fmt::Debug for DivisorSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("DivisorSet")
            .field("selected", &self.selected)
            .finish()
    }
}

impl Serialize for DivisorSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut state = serializer.serialize_struct("DivisorSet", 1)?;
        state.serialize_field("divisors", &self.selected)?;
        state.end()
    }
}

#[derive(Debug, Clone)]
pub struct BfbcChunker {
    divisors: DivisorSet,
    min_chunk: u64,
    pos: u64,
    prev: Option<u8>,
}

impl BfbcChunker {
    pub fn new(divisors: DivisorSet, min_chunk: u64) -> Result<Self, ConfigError> {
        if divisors.is_empty() {
            return Err(ConfigError::EmptyDivisorSet);
        }
        Ok(BfbcChunker {
            divisors,
            min_chunk,
            pos: 0,
            prev: None,
        })
    }
}

impl Chunker for BfbcChunker {
    fn find_boundary(&mut self, data: &[u8]) -> Option<usize> {
        for (i, &byte) in data.iter().enumerate() {
            self.pos += 1;
            if let Some(prev) = self.prev {
                if self.pos > self.min_chunk && self.divisors.contains(prev, byte) {
                    return Some(i);
                }
            }
            self.prev = Some(byte);
        }
        None
    }

    fn reset(&mut self) {
        self.pos = 0;
        self.prev = None;
    }
}
