//! Gear chunking, plain and with normalized chunking.
//!
//! Gear folds each byte into a 32-bit hash with one shift and one table
//! add; its window is implicit (a byte has left the hash after 32 shifts).
//! Because new bytes enter from the low end, the cut condition tests the
//! *most* significant bits: cut when `hash & mask == 0` for a mask of
//! `bits` high one-bits.
//!
//! Normalized chunking varies the mask with the length of the growing
//! chunk: `base + level` effective bits while the chunk is shorter than
//! the switch point, `base - level` from there on. Harder cuts early,
//! easier cuts late, which pulls the size distribution in around the
//! target.

use serde::Serialize;

use crate::error::ConfigError;
use crate::rolling::{gear_update, ByteTable};
use crate::stream::Chunker;

/// Mask with `bits` most-significant one-bits.
#[inline]
pub fn msb_mask(bits: u32) -> u32 {
    if bits == 0 {
        0
    } else {
        u32::MAX << (32 - bits)
    }
}

#[derive(Debug, Clone)]
pub struct GearChunker {
    table: ByteTable,
    mask: u32,
    hash: u32,
}

impl GearChunker {
    pub fn new(mask_bits: u32, table: ByteTable) -> Result<Self, ConfigError> {
        if mask_bits == 0 || mask_bits > 32 {
            return Err(ConfigError::MaskBitsOutOfRange(mask_bits, "[1, 32]"));
        }
        Ok(GearChunker {
            table,
            mask: msb_mask(mask_bits),
            hash: 0,
        })
    }
}

impl Chunker for GearChunker {
    fn find_boundary(&mut self, data: &[u8]) -> Option<usize> {
        for (i, &byte) in data.iter().enumerate() {
            self.hash = gear_update(self.hash, byte, &self.table);
            if self.hash & self.mask == 0 {
                return Some(i);
            }
        }
        None
    }

    fn reset(&mut self) {
        self.hash = 0;
    }
}

/// Two-mask normalization policy for Gear.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct NcPolicy {
    pub base_bits: u32,
    pub level: u8,
    pub switch_point: u64,
}

impl NcPolicy {
    pub fn new(base_bits: u32, level: u8, switch_point: u64) -> Result<Self, ConfigError> {
        if !(1..=3).contains(&level) {
            return Err(ConfigError::BadNormalizationLevel(level));
        }
        if base_bits <= level as u32 {
            return Err(ConfigError::NormalizationUnderflow {
                base: base_bits,
                level,
            });
        }
        if base_bits + level as u32 > 32 {
            return Err(ConfigError::MaskBitsOutOfRange(
                base_bits + level as u32,
                "[1, 32]",
            ));
        }
        Ok(NcPolicy {
            base_bits,
            level,
            switch_point,
        })
    }

    pub fn strict_bits(&self) -> u32 {
        self.base_bits + self.level as u32
    }

    pub fn loose_bits(&self) -> u32 {
        self.base_bits - self.level as u32
    }

    /// Effective mask bits for a chunk that currently holds `len` bytes.
    pub fn effective_bits(&self, len: u64) -> u32 {
        if len < self.switch_point {
            self.strict_bits()
        } else {
            self.loose_bits()
        }
    }
}

#[derive(Debug, Clone)]
pub struct NcGearChunker {
    table: ByteTable,
    strict_mask: u32,
    loose_mask: u32,
    switch_point: u64,
    hash: u32,
    pos: u64,
}

impl NcGearChunker {
    pub fn new(policy: NcPolicy, table: ByteTable) -> Result<Self, ConfigError> {
        Ok(NcGearChunker {
            table,
            strict_mask: msb_mask(policy.strict_bits()),
            loose_mask: msb_mask(policy.loose_bits()),
            switch_point: policy.switch_point,
            hash: 0,
            pos: 0,
        })
    }
}

impl Chunker for NcGearChunker {
    fn find_boundary(&mut self, data: &[u8]) -> Option<usize> {
        for (i, &byte) in data.iter().enumerate() {
            self.hash = gear_update(self.hash, byte, &self.table);
            self.pos += 1;
            let mask = if self.pos < self.switch_point {
                self.strict_mask
            } else {
                self.loose_mask
            };
            if self.hash & mask == 0 {
                return Some(i);
            }
        }
        None
    }

    fn reset(&mut self) {
        self.hash = 0;
        self.pos = 0;
    }
}
