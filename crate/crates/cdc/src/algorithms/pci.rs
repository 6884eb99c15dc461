//! Parity check of interval: a sliding-window chunker that judges the
//! number of 1-bits in the window instead of a hash. The popcount rolls:
//! each step subtracts the evicted byte's bits and adds the new byte's.

use crate::error::ConfigError;
use crate::stream::Chunker;

#[derive(Debug, Clone)]
pub struct PciChunker {
    threshold: u32,
    ring: Vec<u8>,
    pos: u64,
    popcount: u32,
}

impl PciChunker {
    pub fn new(window: usize, threshold: u32) -> Result<Self, ConfigError> {
        if window == 0 {
            return Err(ConfigError::WindowOutOfRange(window, "[1, ..)"));
        }
        let capacity = window as u32 * 8;
        if threshold > capacity {
            return Err(ConfigError::ThresholdTooLarge {
                theta: threshold,
                capacity,
            });
        }
        Ok(PciChunker {
            threshold,
            ring: vec![0; window],
            pos: 0,
            popcount: 0,
        })
    }
}

impl Chunker for PciChunker {
    fn find_boundary(&mut self, data: &[u8]) -> Option<usize> {
        let window = self.ring.len() as u64;
        for (i, &byte) in data.iter().enumerate() {
            let slot = (self.pos % window) as usize;
            self.popcount += byte.count_ones();
            self.popcount -= self.ring[slot].count_ones();
            self.ring[slot] = byte;
            self.pos += 1;
            if self.pos >= window && self.popcount >= self.threshold {
                return Some(i);
            }
        }
        None
    }

    fn reset(&mut self) {
        self.pos = 0;
        self.popcount = 0;
        self.ring.fill(0);
    }
}
