//! Rapid asymmetric extremum chunking.
//!
//! The mirror image of AE: the fixed window comes first. The maximum of
//! the chunk's first `horizon` bytes becomes the threshold, and the first
//! later byte greater or equal to it marks the cut.

use crate::error::ConfigError;
use crate::stream::Chunker;

#[derive(Debug, Clone)]
pub struct RamChunker {
    horizon: u64,
    pos: u64,
    max_val: u8,
}

impl RamChunker {
    pub fn new(horizon: u64) -> Result<Self, ConfigError> {
        if horizon == 0 {
            return Err(ConfigError::ZeroHorizon);
        }
        Ok(RamChunker {
            horizon,
            pos: 0,
            max_val: 0,
        })
    }
}

impl Chunker for RamChunker {
    fn find_boundary(&mut self, data: &[u8]) -> Option<usize> {
        for (i, &byte) in data.iter().enumerate() {
            self.pos += 1;
            if self.pos <= self.horizon {
                if byte > self.max_val {
                    self.max_val = byte;
                }
            } else if byte >= self.max_val {
                return Some(i);
            }
        }
        None
    }

    fn reset(&mut self) {
        self.pos = 0;
        self.max_val = 0;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stream::ChunkStream;

    fn cuts(horizon: u64, data: &[u8]) -> Vec<u64> {
        let mut stream = ChunkStream::new(Box::new(RamChunker::new(horizon).unwrap()));
        stream.push_block(data).unwrap()
    }

    #[test]
    fn hand_traced_sequence() {
        // Window max is 200; 250 is the first byte to reach it.
        assert_eq!(cuts(2, &[5, 200, 3, 10, 250]), vec![5]);
    }

    #[test]
    fn all_equal_cuts_right_after_the_window() {
        assert_eq!(cuts(2, &[7, 7, 7, 7, 7, 7]), vec![3, 6]);
    }

    #[test]
    fn saturated_window_max_never_cut_by_smaller_tail() {
        // 255 in the window and only zeros after: no cut, the chunk grows
        // without bound.
        let mut data = vec![1, 255];
        data.extend_from_slice(&[0; 1000]);
        assert_eq!(cuts(2, &data), vec![]);
    }
}
