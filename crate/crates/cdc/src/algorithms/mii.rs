//! Minimal incremental interval chunking: cut after a run of `window`
//! strictly increasing byte-to-byte steps.

use crate::error::ConfigError;
use crate::stream::Chunker;

#[derive(Debug, Clone)]
pub struct MiiChunker {
    window: u32,
    run: u32,
    prev: Option<u8>,
}

impl MiiChunker {
    pub fn new(window: u32) -> Result<Self, ConfigError> {
        if window == 0 || window > 256 {
            return Err(ConfigError::WindowOutOfRange(window as usize, "[1, 256]"));
        }
        Ok(MiiChunker {
            window,
            run: 0,
            prev: None,
        })
    }
}

impl Chunker for MiiChunker {
    fn find_boundary(&mut self, data: &[u8]) -> Option<usize> {
        for (i, &byte) in data.iter().enumerate() {
            if let Some(prev) = self.prev {
                if byte > prev {
                    self.run += 1;
                    if self.run == self.window {
                        return Some(i);
                    }
                } else {
                    self.run = 0;
                }
            }
            self.prev = Some(byte);
        }
        None
    }

    fn reset(&mut self) {
        self.run = 0;
        self.prev = None;
    }
}
