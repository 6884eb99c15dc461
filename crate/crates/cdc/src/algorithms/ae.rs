//! Asymmetric extremum chunking.
//!
//! Tracks the running maximum of the current chunk and cuts at the first
//! position exactly `horizon` bytes past it, i.e. once the maximum has
//! survived a full fixed-size window to its right. No hashing involved.

use crate::error::ConfigError;
use crate::stream::Chunker;

#[derive(Debug, Clone)]
pub struct AeChunker {
    horizon: u64,
    pos: u64,
    max_val: u8,
    max_pos: u64,
}

impl AeChunker {
    pub fn new(horizon: u64) -> Result<Self, ConfigError> {
        if horizon == 0 {
            return Err(ConfigError::ZeroHorizon);
        }
        Ok(AeChunker {
            horizon,
            pos: 0,
            max_val: 0,
            max_pos: 0,
        })
    }
}

impl Chunker for AeChunker {
    fn find_boundary(&mut self, data: &[u8]) -> Option<usize> {
        for (i, &byte) in data.iter().enumerate() {
            self.pos += 1;
            if byte <= self.max_val {
                if self.pos == self.max_pos + self.horizon {
                    return Some(i);
                }
            } else {
                self.max_val = byte;
                self.max_pos = self.pos;
            }
        }
        None
    }

    fn reset(&mut self) {
        self.pos = 0;
        self.max_val = 0;
        self.max_pos = 0;
    }
}
