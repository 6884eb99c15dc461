//! Rolling hash functions used by the sliding-window chunkers.
//!
//! Three functions are provided, each updatable in constant time as the
//! window slides by one byte:
//!
//! * Rabin: polynomial fingerprint `B_1·x^(w-1) + B_2·x^(w-2) + … + B_w`
//!   over the machine ring (64-bit unsigned with natural wraparound).
//! * Buzhash: cyclic polynomial `ρ^(w-1)(t[B_1]) ⊕ … ⊕ t[B_w]`, where `ρ`
//!   is a left bit-rotation and `t` a byte lookup table.
//! * Gear: `H' = (H << 1) + t[B]`, whose window is implicit: a byte stops
//!   influencing the hash after as many shifts as the hash has bits.
//!
//! Rabin and Buzhash need the window contents to subtract the outgoing
//! byte; the stateful hashers below keep a ring buffer for that.

use crate::rng::SplitMix64;

/// Multiplier for the Rabin polynomial. The rolling identity holds for any
/// fixed odd constant under wraparound arithmetic; this one is documented
/// here rather than claimed compatible with any other implementation.
pub const RABIN_X: u64 = 1_000_000_007;

/// Default seed for [`ByteTable`] generation.
pub const DEFAULT_TABLE_SEED: u64 = 0x00C0_FFEE_CDC0_1234;

/// Deterministic byte-to-word lookup tables shared by Buzhash and Gear.
///
/// Entries are drawn from a SplitMix64 stream: the first 256 outputs form
/// the 64-bit table, the next 256 (truncated) the 32-bit table. Same seed,
/// same table, bit for bit.
#[derive(Debug, Clone)]
pub struct ByteTable {
    seed: u64,
    narrow: [u32; 256],
    wide: [u64; 256],
}

impl ByteTable {
    pub fn new(seed: u64) -> Self {
        let mut rng = SplitMix64::new(seed);
        let mut wide = [0u64; 256];
        for slot in wide.iter_mut() {
            *slot = rng.next_u64();
        }
        let mut narrow = [0u32; 256];
        for slot in narrow.iter_mut() {
            *slot = rng.next_u64() as u32;
        }
        ByteTable { seed, narrow, wide }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    #[inline]
    pub fn narrow(&self, byte: u8) -> u32 {
        self.narrow[byte as usize]
    }

    #[inline]
    pub fn wide(&self, byte: u8) -> u64 {
        self.wide[byte as usize]
    }

    pub fn narrow_entries(&self) -> &[u32; 256] {
        &self.narrow
    }

    pub fn wide_entries(&self) -> &[u64; 256] {
        &self.wide
    }
}

impl Default for ByteTable {
    fn default() -> Self {
        ByteTable::new(DEFAULT_TABLE_SEED)
    }
}

/// From-scratch Rabin hash of a full window.
pub fn rabin_init(window: &[u8]) -> u64 {
    window
        .iter()
        .fold(0u64, |h, &b| h.wrapping_mul(RABIN_X).wrapping_add(b as u64))
}

/// One Rabin step: drop `out` (oldest byte), append `inc`.
/// `x_pow_w1` is `RABIN_X^(w-1)` in wrapping arithmetic, precomputed once.
#[inline]
pub fn rabin_roll(hash: u64, out: u8, inc: u8, x_pow_w1: u64) -> u64 {
    hash.wrapping_sub((out as u64).wrapping_mul(x_pow_w1))
        .wrapping_mul(RABIN_X)
        .wrapping_add(inc as u64)
}

/// `RABIN_X^(w-1)` with wraparound.
pub fn rabin_weight(window: usize) -> u64 {
    let mut pow = 1u64;
    for _ in 1..window {
        pow = pow.wrapping_mul(RABIN_X);
    }
    pow
}

/// From-scratch Buzhash of a full window.
pub fn buzhash_init(window: &[u8], table: &ByteTable) -> u32 {
    window
        .iter()
        .fold(0u32, |h, &b| h.rotate_left(1) ^ table.narrow(b))
}

/// One Buzhash step; the rotation count is the window size modulo 32.
#[inline]
pub fn buzhash_roll(hash: u32, out: u8, inc: u8, window: u32, table: &ByteTable) -> u32 {
    hash.rotate_left(1) ^ table.narrow(out).rotate_left(window) ^ table.narrow(inc)
}

/// One Gear step on the 32-bit hash.
#[inline]
pub fn gear_update(hash: u32, byte: u8, table: &ByteTable) -> u32 {
    (hash << 1).wrapping_add(table.narrow(byte))
}

/// One Gear step on the 64-bit hash.
#[inline]
pub fn gear64_update(hash: u64, byte: u8, table: &ByteTable) -> u64 {
    (hash << 1).wrapping_add(table.wide(byte))
}

/// Windowed rolling hash with the bookkeeping (ring buffer, warm-up)
/// needed to slide one byte at a time.
pub trait WindowedHash {
    /// Ingest one byte and return the hash of the window ending at it.
    fn push(&mut self, byte: u8) -> u64;
    fn window(&self) -> usize;
    fn reset(&mut self);
}

#[derive(Debug, Clone)]
pub struct RabinHasher {
    ring: Vec<u8>,
    filled: u64,
    hash: u64,
    x_pow_w1: u64,
}

impl RabinHasher {
    pub fn new(window: usize) -> Self {
        assert!(window >= 1, "window must be at least 1");
        RabinHasher {
            ring: vec![0; window],
            filled: 0,
            hash: 0,
            x_pow_w1: rabin_weight(window),
        }
    }
}

impl WindowedHash for RabinHasher {
    #[inline]
    fn push(&mut self, byte: u8) -> u64 {
        let w = self.ring.len() as u64;
        let slot = (self.filled % w) as usize;
        if self.filled < w {
            self.hash = self.hash.wrapping_mul(RABIN_X).wrapping_add(byte as u64);
        } else {
            let out = self.ring[slot];
            self.hash = rabin_roll(self.hash, out, byte, self.x_pow_w1);
        }
        self.ring[slot] = byte;
        self.filled += 1;
        self.hash
    }

    fn window(&self) -> usize {
        self.ring.len()
    }

    fn reset(&mut self) {
        self.filled = 0;
        self.hash = 0;
    }
}

#[derive(Debug, Clone)]
pub struct BuzHasher {
    table: ByteTable,
    ring: Vec<u8>,
    filled: u64,
    hash: u32,
}

impl BuzHasher {
    pub fn new(window: usize, table: ByteTable) -> Self {
        assert!(window >= 1, "window must be at least 1");
        BuzHasher {
            table,
            ring: vec![0; window],
            filled: 0,
            hash: 0,
        }
    }
}

impl WindowedHash for BuzHasher {
    #[inline]
    fn push(&mut self, byte: u8) -> u64 {
        let w = self.ring.len() as u64;
        let slot = (self.filled % w) as usize;
        if self.filled < w {
            self.hash = self.hash.rotate_left(1) ^ self.table.narrow(byte);
        } else {
            let out = self.ring[slot];
            self.hash = buzhash_roll(self.hash, out, byte, w as u32, &self.table);
        }
        self.ring[slot] = byte;
        self.filled += 1;
        self.hash as u64
    }

    fn window(&self) -> usize {
        self.ring.len()
    }

    fn reset(&mut self) {
        self.filled = 0;
        self.hash = 0;
    }
}
