//! Packed bit sequences with lexicographic ordering.
//!
//! Bits are stored most-significant-first inside each word, so comparing the
//! word slices of two equal-length strings is the same as comparing the bit
//! sequences left to right. Trailing bits of the last word are kept zero.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::Error;

#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct BitString {
    len: usize,
    words: Vec<u64>,
}

#[inline]
fn word_count(len: usize) -> usize {
    len.div_ceil(64)
}

impl BitString {
    pub fn new() -> Self {
        BitString::default()
    }

    /// All-zero string of the given length.
    pub fn zeros(len: usize) -> Self {
        BitString {
            len,
            words: vec![0; word_count(len)],
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, pos: usize) -> bool {
        debug_assert!(pos < self.len);
        (self.words[pos >> 6] >> (63 - (pos & 63))) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, pos: usize, value: bool) {
        debug_assert!(pos < self.len);
        let mask = 1u64 << (63 - (pos & 63));
        if value {
            self.words[pos >> 6] |= mask;
        } else {
            self.words[pos >> 6] &= !mask;
        }
    }

    pub fn push(&mut self, value: bool) {
        if self.len % 64 == 0 {
            self.words.push(0);
        }
        self.len += 1;
        if value {
            self.set(self.len - 1, true);
        }
    }

    /// Appends `count` copies of `value`.
    pub fn extend_repeat(&mut self, value: bool, count: usize) {
        for _ in 0..count {
            self.push(value);
        }
    }

    pub fn extend_from(&mut self, other: &BitString) {
        for i in 0..other.len {
            self.push(other.get(i));
        }
    }

    /// Appends the low `width` bits of `value`, most significant first.
    pub fn push_uint(&mut self, value: u64, width: u32) {
        for shift in (0..width).rev() {
            self.push((value >> shift) & 1 == 1);
        }
    }

    /// Reads `width` bits starting at `pos` as an unsigned integer.
    pub fn read_uint(&self, pos: usize, width: u32) -> u64 {
        debug_assert!(width <= 64 && pos + width as usize <= self.len);
        let mut v = 0u64;
        for i in 0..width as usize {
            v = (v << 1) | self.get(pos + i) as u64;
        }
        v
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Copy of the subrange `[start, end)`.
    pub fn slice(&self, start: usize, end: usize) -> BitString {
        debug_assert!(start <= end && end <= self.len);
        let mut out = BitString::zeros(end - start);
        for (k, pos) in (start..end).enumerate() {
            if self.get(pos) {
                out.set(k, true);
            }
        }
        out
    }

    /// Every bit flipped.
    pub fn complemented(&self) -> BitString {
        let mut words: Vec<u64> = self.words.iter().map(|w| !w).collect();
        let tail = self.len % 64;
        if tail != 0 {
            if let Some(last) = words.last_mut() {
                *last &= !0u64 << (64 - tail);
            }
        }
        BitString { len: self.len, words }
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }

    /// Packs the string into a `u64` with bit `p` of the result equal to
    /// position `p` of the string (least-significant-first). Requires
    /// `len <= 64`.
    pub fn to_lsb_u64(&self) -> u64 {
        assert!(self.len <= 64);
        if self.len == 0 {
            return 0;
        }
        self.words[0].reverse_bits()
    }

    /// Inverse of [`BitString::to_lsb_u64`].
    pub fn from_lsb_u64(len: usize, value: u64) -> BitString {
        assert!(len <= 64);
        let masked = if len == 64 {
            value
        } else {
            value & ((1u64 << len) - 1)
        };
        BitString {
            len,
            words: if len == 0 { vec![] } else { vec![masked.reverse_bits()] },
        }
    }
}

impl Ord for BitString {
    fn cmp(&self, other: &Self) -> Ordering {
        let common = self.len.min(other.len);
        let full = common / 64;
        match self.words[..full].cmp(&other.words[..full]) {
            Ordering::Equal => {}
            ord => return ord,
        }
        let tail = common % 64;
        if tail != 0 {
            let mask = !0u64 << (64 - tail);
            let a = self.words[full] & mask;
            let b = other.words[full] & mask;
            match a.cmp(&b) {
                Ordering::Equal => {}
                ord => return ord,
            }
        }
        self.len.cmp(&other.len)
    }
}

impl PartialOrd for BitString {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for bit in self.iter() {
            f.write_str(if bit { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitString({self})")
    }
}

impl FromStr for BitString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let mut out = BitString::zeros(0);
        for c in s.chars() {
            match c {
                '0' => out.push(false),
                '1' => out.push(true),
                other => return Err(Error::InvalidBitChar(other)),
            }
        }
        Ok(out)
    }
}

impl FromIterator<bool> for BitString {
    fn from_iter<T: IntoIterator<Item = bool>>(iter: T) -> Self {
        let mut out = BitString::new();
        for b in iter {
            out.push(b);
        }
        out
    }
}
