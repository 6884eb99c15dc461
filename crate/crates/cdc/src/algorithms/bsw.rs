//! Basic sliding window chunking over a rolling hash (Rabin or Buzhash).
//! A cut is declared once the window is full and the low `mask_bits` bits
//! of the hash are zero.

use crate::error::ConfigError;
use crate::rolling::{BuzHasher, ByteTable, RabinHasher, WindowedHash};
use crate::stream::Chunker;

#[derive(Debug, Clone)]
pub struct BswChunker<H: WindowedHash> {
    hasher: H,
    mask: u64,
    pos: u64,
}

impl<H: WindowedHash> BswChunker<H> {
    pub fn with_hasher(hasher: H, mask_bits: u32) -> Result<Self, ConfigError> {
        if mask_bits == 0 || mask_bits > 63 {
            return Err(ConfigError::MaskBitsOutOfRange(mask_bits, "[1, 63]"));
        }
        Ok(BswChunker {
            hasher,
            mask: (1u64 << mask_bits) - 1,
            pos: 0,
        })
    }
}

impl<H: WindowedHash> Chunker for BswChunker<H> {
    fn find_boundary(&mut self, data: &[u8]) -> Option<usize> {
        let window = self.hasher.window() as u64;
        for (i, &byte) in data.iter().enumerate() {
            let hash = self.hasher.push(byte);
            self.pos += 1;
            if self.pos >= window && hash & self.mask == 0 {
                return Some(i);
            }
        }
        None
    }

    fn reset(&mut self) {
        self.pos = 0;
        self.hasher.reset();
    }
}

pub type RabinChunker = BswChunker<RabinHasher>;
pub type BuzhashChunker = BswChunker<BuzHasher>;

impl RabinChunker {
    pub fn new(window: usize, mask_bits: u32) -> Result<Self, ConfigError> {
        if window == 0 {
            return Err(ConfigError::WindowOutOfRange(window, "[1, ..)"));
        }
        BswChunker::with_hasher(RabinHasher::new(window), mask_bits)
    }
}

impl BuzhashChunker {
    pub fn new(window: usize, mask_bits: u32, table: ByteTable) -> Result<Self, ConfigError> {
        if window == 0 {
            return Err(ConfigError::WindowOutOfRange(window, "[1, ..)"));
        }
        BswChunker::with_hasher(BuzHasher::new(window, table), mask_bits)
    }
}
