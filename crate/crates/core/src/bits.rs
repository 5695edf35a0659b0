//! Packed bit vector shared by the primitives and randomness modules.

use serde::{Deserialize, Serialize};

/// A packed sequence of bits, least-significant index first within each word.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BitSequence {
    words: Vec<u64>,
    len: usize,
}

impl BitSequence {
    pub fn new() -> Self {
        BitSequence { words: Vec::new(), len: 0 }
    }

    pub fn with_capacity(bits: usize) -> Self {
        BitSequence { words: Vec::with_capacity(bits.div_ceil(64)), len: 0 }
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        let mut seq = Self::with_capacity(bits.len());
        for &b in bits {
            seq.push(b);
        }
        seq
    }

    /// Parses a string of ASCII `0`/`1` characters; other characters are skipped.
    pub fn from_ascii(s: &str) -> Self {
        let mut seq = Self::with_capacity(s.len());
        for c in s.chars() {
            match c {
                '0' => seq.push(false),
                '1' => seq.push(true),
                _ => {}
            }
        }
        seq
    }

    pub fn push(&mut self, bit: bool) {
        let word = self.len / 64;
        if word == self.words.len() {
            self.words.push(0);
        }
        if bit {
            self.words[word] |= 1u64 << (self.len % 64);
        }
        self.len += 1;
    }

    /// Appends the low `width` bits of `value`, most significant first.
    pub fn push_uint(&mut self, value: u64, width: u32) {
        for i in (0..width).rev() {
            self.push((value >> i) & 1 == 1);
        }
    }

    #[inline]
    pub fn get(&self, idx: usize) -> bool {
        debug_assert!(idx < self.len);
        (self.words[idx / 64] >> (idx % 64)) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn count_ones(&self) -> usize {
        let mut total: usize = self.words.iter().map(|w| w.count_ones() as usize).sum();
        // mask out unused high bits of the last word
        let tail = self.len % 64;
        if tail != 0 {
            let last = *self.words.last().unwrap();
            total -= (last >> tail).count_ones() as usize;
        }
        total
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }

    pub fn extend(&mut self, other: &BitSequence) {
        for b in other.iter() {
            self.push(b);
        }
    }

    /// Truncates to the first `len` bits.
    pub fn truncate(&mut self, len: usize) {
        if len >= self.len {
            return;
        }
        self.len = len;
        self.words.truncate(len.div_ceil(64));
        let tail = len % 64;
        if tail != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << tail) - 1;
            }
        }
    }

    pub fn to_ascii(&self) -> String {
        self.iter().map(|b| if b { '1' } else { '0' }).collect()
    }
}

impl Default for BitSequence {
    fn default() -> Self {
        Self::new()
    }
}
