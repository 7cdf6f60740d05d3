//! Fixed-length binary chromosomes and the genetic operators acting on them.

use std::fmt;
use std::str::FromStr;

use rand::Rng;

use crate::error::{Error, Result};

const WORD_BITS: usize = 64;

/// A fixed-length binary chromosome.
///
/// Bits are packed into `u64` words, position `p` living at bit `p % 64` of
/// word `p / 64`. Padding bits past `len` are always zero, so derived
/// equality and popcount-based distances stay exact.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitString {
    words: Vec<u64>,
    len: usize,
}

fn word_count(len: usize) -> usize {
    len.div_ceil(WORD_BITS)
}

/// Mask selecting the valid bits of the last word.
fn tail_mask(len: usize) -> u64 {
    match len % WORD_BITS {
        0 => u64::MAX,
        r => (1u64 << r) - 1,
    }
}

fn check_len(len: usize) -> Result<()> {
    if len < 2 {
        return Err(Error::InvalidLength(len));
    }
    Ok(())
}

impl BitString {
    /// All-zeros string of the given length.
    pub fn zeros(len: usize) -> Result<Self> {
        check_len(len)?;
        Ok(Self {
            words: vec![0; word_count(len)],
            len,
        })
    }

    /// All-ones string of the given length.
    pub fn ones(len: usize) -> Result<Self> {
        Ok(Self::zeros(len)?.complement())
    }

    /// Each bit independently 0 or 1 with probability one half.
    pub fn random<R: Rng + ?Sized>(len: usize, rng: &mut R) -> Result<Self> {
        check_len(len)?;
        let mut words: Vec<u64> = (0..word_count(len)).map(|_| rng.gen()).collect();
        if let Some(last) = words.last_mut() {
            *last &= tail_mask(len);
        }
        Ok(Self { words, len })
    }

    pub fn from_bools(bits: &[bool]) -> Result<Self> {
        let mut out = Self::zeros(bits.len())?;
        for (p, &b) in bits.iter().enumerate() {
            out.set(p, b);
        }
        Ok(out)
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    /// Always false: a `BitString` holds at least two bits.
    #[inline]
    pub fn is_empty(&self) -> bool {
        false
    }

    #[inline]
    pub fn get(&self, pos: usize) -> bool {
        assert!(pos < self.len, "bit {pos} out of range for length {}", self.len);
        (self.words[pos / WORD_BITS] >> (pos % WORD_BITS)) & 1 == 1
    }

    #[inline]
    fn set(&mut self, pos: usize, bit: bool) {
        let (w, b) = (pos / WORD_BITS, pos % WORD_BITS);
        if bit {
            self.words[w] |= 1 << b;
        } else {
            self.words[w] &= !(1 << b);
        }
    }

    #[inline]
    fn flip(&mut self, pos: usize) {
        self.words[pos / WORD_BITS] ^= 1 << (pos % WORD_BITS);
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |p| self.get(p))
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn complement(&self) -> Self {
        let mut words: Vec<u64> = self.words.iter().map(|w| !w).collect();
        if let Some(last) = words.last_mut() {
            *last &= tail_mask(self.len);
        }
        Self {
            words,
            len: self.len,
        }
    }

    /// Unsigned integer value of `width` bits starting at `start`, first bit
    /// most significant.
    pub fn segment_value(&self, start: usize, width: usize) -> u64 {
        assert!(width <= 64 && start + width <= self.len);
        (start..start + width).fold(0u64, |acc, p| (acc << 1) | self.get(p) as u64)
    }

    /// Builds a string from concatenated MSB-first segments of `width` bits.
    pub fn from_segments(values: &[u64], width: usize) -> Result<Self> {
        let mut out = Self::zeros(values.len() * width)?;
        for (k, &v) in values.iter().enumerate() {
            for j in 0..width {
                let bit = (v >> (width - 1 - j)) & 1 == 1;
                out.set(k * width + j, bit);
            }
        }
        Ok(out)
    }

    fn check_same_len(&self, other: &Self) -> Result<()> {
        if self.len != other.len {
            return Err(Error::DimensionMismatch {
                expected: self.len,
                found: other.len,
            });
        }
        Ok(())
    }

    /// Number of positions where the two strings differ.
    pub fn hamming(&self, other: &Self) -> Result<usize> {
        self.check_same_len(other)?;
        Ok(self.hamming_unchecked(other))
    }

    #[inline]
    pub(crate) fn hamming_unchecked(&self, other: &Self) -> usize {
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a ^ b).count_ones() as usize)
            .sum()
    }

    /// Hamming distance divided by the chromosome length.
    pub fn normalized_difference(&self, other: &Self) -> Result<f64> {
        Ok(self.hamming(other)? as f64 / self.len as f64)
    }

    /// Splices `self[..cut] ++ other[cut..]` and `other[..cut] ++ self[cut..]`.
    pub fn crossover_at(&self, other: &Self, cut: usize) -> Result<(Self, Self)> {
        self.check_same_len(other)?;
        if cut == 0 || cut >= self.len {
            return Err(Error::InvalidParameter(format!(
                "cut point {cut} outside 1..{}",
                self.len
            )));
        }
        let mut c1 = self.words.clone();
        let mut c2 = other.words.clone();
        for (w, (x, y)) in c1.iter_mut().zip(c2.iter_mut()).enumerate() {
            let lo = w * WORD_BITS;
            // bits below `cut` stay with their parent, the rest swap
            let keep = if cut <= lo {
                0
            } else if cut >= lo + WORD_BITS {
                u64::MAX
            } else {
                (1u64 << (cut - lo)) - 1
            };
            let (a, b) = (*x, *y);
            *x = (a & keep) | (b & !keep);
            *y = (b & keep) | (a & !keep);
        }
        Ok((
            Self {
                words: c1,
                len: self.len,
            },
            Self {
                words: c2,
                len: self.len,
            },
        ))
    }

    /// One-point crossover with the cut drawn uniformly from `1..len`.
    pub fn one_point_crossover<R: Rng + ?Sized>(
        &self,
        other: &Self,
        rng: &mut R,
    ) -> Result<(Self, Self)> {
        self.check_same_len(other)?;
        let cut = rng.gen_range(1..self.len);
        self.crossover_at(other, cut)
    }

    /// Flips each bit independently with probability `rate`.
    ///
    /// A zero rate returns a copy without consuming any randomness.
    pub fn mutate<R: Rng + ?Sized>(&self, rate: f64, rng: &mut R) -> Result<Self> {
        if !(0.0..=1.0).contains(&rate) {
            return Err(Error::InvalidParameter(format!(
                "mutation rate {rate} outside [0, 1]"
            )));
        }
        let mut out = self.clone();
        if rate == 0.0 {
            return Ok(out);
        }
        for p in 0..self.len {
            if rng.gen_bool(rate) {
                out.flip(p);
            }
        }
        Ok(out)
    }
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.iter() {
            f.write_str(if b { "1" } else { "0" })?;
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

    fn from_str(s: &str) -> Result<Self> {
        let bits = s
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::Parse {
                    what: "bit string".into(),
                    message: format!("unexpected character {other:?}"),
                }),
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_bools(&bits)
    }
}
