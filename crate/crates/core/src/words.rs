//! Binary words `D_n`, `E_n` and prefixes of the infinite leaf-indicator
//! word, built four different ways.

use std::fmt;
use std::str::FromStr;

use crate::metafib::{ruler, Shift};

/// Largest `n` accepted by [`word_d`] and [`word_e`]; `|D_25| = 2^26 - 1`.
pub const MAX_WORD_INDEX: u32 = 25;
/// Largest prefix length accepted by the infinite-word builders.
pub const MAX_PREFIX_LEN: usize = 1 << 22;

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
pub enum WordError {
    #[error("word index {0} exceeds the limit {MAX_WORD_INDEX}")]
    IndexTooLarge(u32),
    #[error("prefix length {0} exceeds the limit {MAX_PREFIX_LEN}")]
    PrefixTooLong(usize),
    #[error("invalid bit character {0:?}")]
    BadChar(char),
}

/// Finite word over `{0, 1}`, addressed from position 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct BitWord {
    bits: Vec<u8>,
}

impl BitWord {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_bits(bits: Vec<u8>) -> Self {
        assert!(bits.iter().all(|&b| b <= 1), "bits must be 0 or 1");
        BitWord { bits }
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    /// Bit at 1-based position `i`.
    pub fn get(&self, i: usize) -> Option<u8> {
        i.checked_sub(1).and_then(|j| self.bits.get(j).copied())
    }

    pub fn bits(&self) -> &[u8] {
        &self.bits
    }

    pub fn push(&mut self, bit: u8) {
        assert!(bit <= 1);
        self.bits.push(bit);
    }

    pub fn push_zeros(&mut self, count: usize) {
        self.bits.resize(self.bits.len() + count, 0);
    }

    pub fn extend_from(&mut self, other: &BitWord) {
        self.bits.extend_from_slice(&other.bits);
    }

    pub fn truncate(&mut self, len: usize) {
        self.bits.truncate(len);
    }

    pub fn reversed(&self) -> BitWord {
        BitWord {
            bits: self.bits.iter().rev().copied().collect(),
        }
    }

    pub fn count_ones(&self) -> usize {
        self.bits.iter().filter(|&&b| b == 1).count()
    }

    pub fn is_prefix_of(&self, other: &BitWord) -> bool {
        other.bits.starts_with(&self.bits)
    }

    /// 1-based positions holding a one.
    pub fn ones_positions(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits
            .iter()
            .enumerate()
            .filter(|(_, &b)| b == 1)
            .map(|(i, _)| i + 1)
    }
}

impl fmt::Display for BitWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            f.write_str(if b == 1 { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for BitWord {
    type Err = WordError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| match c {
                '0' => Ok(0),
                '1' => Ok(1),
                other => Err(WordError::BadChar(other)),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(BitWord::from_bits)
    }
}

/// `D_0 = 1`, `D_{n+1} = 0 D_n D_n`.
pub fn word_d(n: u32) -> Result<BitWord, WordError> {
    if n > MAX_WORD_INDEX {
        return Err(WordError::IndexTooLarge(n));
    }
    let mut w = BitWord::from_bits(vec![1]);
    for _ in 0..n {
        let mut next = BitWord::from_bits(Vec::with_capacity(2 * w.len() + 1));
        next.push(0);
        next.extend_from(&w);
        next.extend_from(&w);
        w = next;
    }
    Ok(w)
}

/// `E_0 = 1`, `E_{n+1} = E_n E_n 0`.
pub fn word_e(n: u32) -> Result<BitWord, WordError> {
    if n > MAX_WORD_INDEX {
        return Err(WordError::IndexTooLarge(n));
    }
    let mut w = BitWord::from_bits(vec![1]);
    for _ in 0..n {
        let copy = w.clone();
        w.extend_from(&copy);
        w.push(0);
    }
    Ok(w)
}

fn check_len(length: usize) -> Result<(), WordError> {
    if length > MAX_PREFIX_LEN {
        Err(WordError::PrefixTooLong(length))
    } else {
        Ok(())
    }
}

/// First `length` bits of `D_0 0^s D_0 0^s D_1 0^s D_2 0^s …`.
pub fn dword_prefix(s: Shift, length: usize) -> Result<BitWord, WordError> {
    check_len(length)?;
    let gap = s.0 as usize;
    let mut out = BitWord::from_bits(Vec::with_capacity(length + gap + 1));
    out.push(1);
    out.push_zeros(gap);
    let mut block = BitWord::from_bits(vec![1]);
    while out.len() < length {
        out.extend_from(&block);
        out.push_zeros(gap);
        if out.len() >= length {
            break;
        }
        let mut next = BitWord::from_bits(Vec::with_capacity(2 * block.len() + 1));
        next.push(0);
        next.extend_from(&block);
        next.extend_from(&block);
        block = next;
    }
    out.truncate(length);
    Ok(out)
}

/// `1 0^{g_1 - 1} 1 0^{g_2 - 1} … 1 0^{g_terms - 1}` with gaps
/// `g_j = ruler(j) + s·[j is a power of 2]`.
pub fn ruler_factorization(s: Shift, terms: usize) -> BitWord {
    let mut out = BitWord::new();
    for j in 1..=terms as u64 {
        let gap = ruler(j) + if j.is_power_of_two() { s.0 } else { 0 };
        out.push(1);
        out.push_zeros(gap as usize - 1);
    }
    out
}

/// Prefix of the fixed point of `0 -> 0`, `1 -> 110` starting from `1`.
pub fn morphism_fixed_point(length: usize) -> Result<BitWord, WordError> {
    check_len(length)?;
    let mut w = vec![1u8];
    while w.len() < length {
        let mut next = Vec::with_capacity(3 * w.len());
        for &b in &w {
            if b == 1 {
                next.extend_from_slice(&[1, 1, 0]);
            } else {
                next.push(0);
            }
            if next.len() >= length {
                break;
            }
        }
        debug_assert!(next.starts_with(&w[..w.len().min(next.len())]));
        w = next;
    }
    w.truncate(length);
    Ok(BitWord::from_bits(w))
}
