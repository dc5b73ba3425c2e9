//! Deterministic byte stream expanded from a seed with SHA-256.
//!
//! Block i is `SHA-256(seed || be32(i))`; the stream is the concatenation of
//! blocks, consumed front to back. All sampling helpers use rejection so every
//! output is exactly uniform.

use sha2::{Digest, Sha256};

use crate::field::Field;

#[derive(Debug, Clone)]
pub struct SeededStream {
    seed: Vec<u8>,
    counter: u32,
    block: [u8; 32],
    pos: usize,
}

impl SeededStream {
    pub fn new(seed: &[u8]) -> Self {
        Self { seed: seed.to_vec(), counter: 0, block: [0; 32], pos: 32 }
    }

    /// Number of blocks generated so far.
    pub fn counter(&self) -> u32 {
        self.counter
    }

    fn refill(&mut self) {
        let mut h = Sha256::new();
        h.update(&self.seed);
        h.update(self.counter.to_be_bytes());
        self.block.copy_from_slice(&h.finalize());
        self.counter = self.counter.checked_add(1).expect("stream exhausted");
        self.pos = 0;
    }

    pub fn next_byte(&mut self) -> u8 {
        if self.pos == self.block.len() {
            self.refill();
        }
        let b = self.block[self.pos];
        self.pos += 1;
        b
    }

    pub fn bytes(&mut self, count: usize) -> Vec<u8> {
        (0..count).map(|_| self.next_byte()).collect()
    }

    /// Uniform integer in `[0, bound)` for `1 <= bound <= 256`.
    pub fn below(&mut self, bound: usize) -> usize {
        assert!((1..=256).contains(&bound), "bound {bound} outside 1..=256");
        let limit = 256 - 256 % bound;
        loop {
            let b = self.next_byte() as usize;
            if b < limit {
                return b % bound;
            }
        }
    }

    /// Uniform element of F_q.
    pub fn element(&mut self, field: &Field) -> u8 {
        self.below(field.q() as usize) as u8
    }

    /// Uniform element of F_q \ {0}.
    pub fn nonzero_element(&mut self, field: &Field) -> u8 {
        1 + self.below(field.q() as usize - 1) as u8
    }

    /// Uniform permutation of `0..n` by Fisher-Yates.
    pub fn permutation(&mut self, n: usize) -> Vec<u8> {
        assert!(n <= 256);
        let mut perm: Vec<u8> = (0..n).map(|i| i as u8).collect();
        for i in (1..n).rev() {
            let j = self.below(i + 1);
            perm.swap(i, j);
        }
        perm
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_block_is_hash_of_seed_and_zero_counter() {
        let mut s = SeededStream::new(b"abc");
        let mut h = Sha256::new();
        h.update(b"abc");
        h.update([0, 0, 0, 0]);
        assert_eq!(s.bytes(32), h.finalize().to_vec());
        assert_eq!(s.counter(), 1);
    }

    #[test]
    fn deterministic_and_seed_dependent() {
        assert_eq!(SeededStream::new(b"x").bytes(100), SeededStream::new(b"x").bytes(100));
        assert_ne!(SeededStream::new(b"x").bytes(32), SeededStream::new(b"y").bytes(32));
        assert!(SeededStream::new(b"x").bytes(0).is_empty());
    }

    #[test]
    fn reads_continue_across_calls() {
        let whole = SeededStream::new(b"split").bytes(80);
        let mut s = SeededStream::new(b"split");
        let mut parts = s.bytes(13);
        parts.extend(s.bytes(40));
        parts.extend(s.bytes(27));
        assert_eq!(parts, whole);
        assert_eq!(s.counter(), 3);
    }

    #[test]
    fn bounded_samples_stay_in_range() {
        let mut s = SeededStream::new(b"range");
        for bound in [1usize, 2, 3, 5, 7, 100, 255, 256] {
            for _ in 0..500 {
                assert!(s.below(bound) < bound);
            }
        }
        let f = Field::with_order(13).unwrap();
        for _ in 0..1000 {
            assert_ne!(s.nonzero_element(&f), 0);
            assert!(s.element(&f) < 13);
        }
    }

    #[test]
    fn permutations_are_bijections() {
        let mut s = SeededStream::new(b"perm");
        for n in [0usize, 1, 2, 17, 128, 256] {
            let mut p = s.permutation(n);
            p.sort_unstable();
            assert!(p.iter().enumerate().all(|(i, &v)| v as usize == i));
        }
    }
}
