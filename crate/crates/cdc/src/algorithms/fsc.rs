//! Fixed-size chunking. Not content-defined; serves as the baseline.

use crate::error::ConfigError;
use crate::stream::Chunker;

#[derive(Debug, Clone)]
pub struct FixedChunker {
    size: u64,
    pos: u64,
}

impl FixedChunker {
    pub fn new(size: u64) -> Result<Self, ConfigError> {
        if size == 0 {
            return Err(ConfigError::ZeroFixedSize);
        }
        Ok(FixedChunker { size, pos: 0 })
    }
}

impl Chunker for FixedChunker {
    fn find_boundary(&mut self, data: &[u8]) -> Option<usize> {
        // Jumps straight to the cut; never inspects the bytes.
        let remaining = self.size - self.pos;
        if data.len() as u64 >= remaining {
            Some((remaining - 1) as usize)
        } else {
            self.pos += data.len() as u64;
            None
        }
    }

    fn reset(&mut self) {
        self.pos = 0;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stream::ChunkStream;

    #[test]
    fn zero_size_is_rejected() {
        assert_eq!(FixedChunker::new(0).unwrap_err(), ConfigError::ZeroFixedSize);
    }

    #[test]
    fn ten_bytes_fixed_four() {
        let mut stream = ChunkStream::new(Box::new(FixedChunker::new(4).unwrap()));
        assert_eq!(stream.push_block(&[0; 10]).unwrap(), vec![4, 8]);
        assert_eq!(stream.finalize().unwrap().length, 2);
    }

    #[test]
    fn larger_than_input_never_cuts() {
        let mut stream = ChunkStream::new(Box::new(FixedChunker::new(100).unwrap()));
        assert_eq!(stream.push_block(&[0; 10]).unwrap(), vec![]);
        assert_eq!(stream.finalize().unwrap().length, 10);
    }
}
