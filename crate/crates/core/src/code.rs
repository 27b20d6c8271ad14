//! Packed binary codes and Hamming-space comparison.

use std::fmt;

use crate::error::{Error, Result};

/// An `L`-bit code packed into 64-bit words.
///
/// Bit 0 is the leftmost (most significant) bit of the abstract sequence and
/// lives in the top bit of `words[0]`. Padding bits past `L` are always zero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BinaryCode {
    words: Vec<u64>,
    len: usize,
}

pub(crate) fn words_for(bits: usize) -> usize {
    bits.div_ceil(64)
}

impl BinaryCode {
    pub fn zeros(len: usize) -> Self {
        Self {
            words: vec![0; words_for(len)],
            len,
        }
    }

    pub fn from_bits(bits: &[bool]) -> Self {
        let mut code = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b {
                code.set(i, true);
            }
        }
        code
    }

    /// Parses a string of `0`/`1` characters.
    pub fn from_bit_str(s: &str) -> Result<Self> {
        let bits = s
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::Input(format!("invalid bit character '{other}'"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_bits(&bits))
    }

    pub(crate) fn from_words(words: Vec<u64>, len: usize) -> Result<Self> {
        if words.len() != words_for(len) {
            return Err(Error::Input(format!(
                "{} words cannot hold a {len}-bit code",
                words.len()
            )));
        }
        let code = Self { words, len };
        let tail = len % 64;
        if tail != 0 && code.words[code.words.len() - 1] & (u64::MAX >> tail) != 0 {
            return Err(Error::Input("padding bits past the code length are set".into()));
        }
        Ok(code)
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn bit(&self, i: usize) -> bool {
        assert!(i < self.len, "bit {i} out of range for {}-bit code", self.len);
        self.words[i / 64] >> (63 - i % 64) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit {i} out of range for {}-bit code", self.len);
        let mask = 1u64 << (63 - i % 64);
        if value {
            self.words[i / 64] |= mask;
        } else {
            self.words[i / 64] &= !mask;
        }
    }

    pub fn to_bits(&self) -> Vec<bool> {
        (0..self.len).map(|i| self.bit(i)).collect()
    }

    /// Writes `value` as a `width`-bit big-endian block starting at bit `offset`.
    pub(crate) fn write_block(&mut self, offset: usize, width: u32, value: u64) {
        for b in 0..width as usize {
            let bit = value >> (width as usize - 1 - b) & 1 == 1;
            self.set(offset + b, bit);
        }
    }

    /// Hexadecimal value of the code read as an `L`-bit unsigned integer,
    /// most significant nibble first, zero-padded to `ceil(L/4)` digits.
    pub fn to_hex(&self) -> String {
        let digits = self.len.div_ceil(4);
        let pad = digits * 4 - self.len;
        let mut out = String::with_capacity(digits);
        for d in 0..digits {
            let mut nibble = 0u32;
            for b in 0..4 {
                let pos = d * 4 + b;
                let bit = pos >= pad && self.bit(pos - pad);
                nibble = nibble << 1 | bit as u32;
            }
            out.push(char::from_digit(nibble, 16).expect("nibble"));
        }
        out
    }

    pub fn from_hex(hex: &str, len: usize) -> Result<Self> {
        let digits = len.div_ceil(4);
        if hex.len() != digits {
            return Err(Error::Input(format!(
                "{len}-bit code needs {digits} hex digits, got {}",
                hex.len()
            )));
        }
        let pad = digits * 4 - len;
        let mut code = Self::zeros(len);
        for (d, c) in hex.chars().enumerate() {
            let nibble = c
                .to_digit(16)
                .ok_or_else(|| Error::Input(format!("invalid hex digit '{c}'")))?;
            for b in 0..4 {
                let pos = d * 4 + b;
                let bit = nibble >> (3 - b) & 1 == 1;
                if pos < pad {
                    if bit {
                        return Err(Error::Input(format!("hex value overflows {len} bits")));
                    }
                } else {
                    code.set(pos - pad, bit);
                }
            }
        }
        Ok(code)
    }
}

impl fmt::Debug for BinaryCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BinaryCode({self})")
    }
}

impl fmt::Display for BinaryCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            f.write_str(if self.bit(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

fn check_lengths(a: &BinaryCode, b: &BinaryCode) -> Result<()> {
    if a.len != b.len {
        return Err(Error::Input(format!(
            "code length mismatch: {} vs {}",
            a.len, b.len
        )));
    }
    Ok(())
}

/// Popcount of `a XOR b`.
pub fn hamming_distance(a: &BinaryCode, b: &BinaryCode) -> Result<u32> {
    check_lengths(a, b)?;
    Ok(hamming_words(&a.words, &b.words))
}

#[inline]
pub(crate) fn hamming_words(a: &[u64], b: &[u64]) -> u32 {
    a.iter().zip(b).map(|(x, y)| (x ^ y).count_ones()).sum()
}

/// Fraction of matching bits, computed as `1 - hamming / L`.
pub fn hamming_similarity(a: &BinaryCode, b: &BinaryCode) -> Result<f64> {
    let d = hamming_distance(a, b)?;
    if a.len == 0 {
        return Err(Error::Input("similarity of zero-length codes".into()));
    }
    Ok(1.0 - d as f64 / a.len as f64)
}
