//! Payload bits and their polar image.

use rand::Rng;

use crate::error::{Error, Result};

/// A block of payload bits, each 0 or 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct BitBlock(Vec<u8>);

impl BitBlock {
    pub fn new(bits: Vec<u8>) -> Result<Self> {
        if let Some(pos) = bits.iter().position(|&b| b > 1) {
            return Err(Error::Parameter(format!(
                "bit {pos} has value {}, expected 0 or 1",
                bits[pos]
            )));
        }
        Ok(BitBlock(bits))
    }

    /// Uniform random bits.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, len: usize) -> Self {
        BitBlock((0..len).map(|_| rng.random_range(0..=1u8)).collect())
    }

    pub fn zeros(len: usize) -> Self {
        BitBlock(vec![0; len])
    }

    pub fn as_slice(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn into_inner(self) -> Vec<u8> {
        self.0
    }

    /// Count positions where `self` and `other` differ.
    pub fn hamming_distance(&self, other: &BitBlock) -> Result<usize> {
        if self.len() != other.len() {
            return Err(Error::Dimension(format!(
                "bit blocks of length {} and {}",
                self.len(),
                other.len()
            )));
        }
        Ok(self.0.iter().zip(&other.0).filter(|(a, b)| a != b).count())
    }
}

impl TryFrom<Vec<u8>> for BitBlock {
    type Error = Error;

    fn try_from(bits: Vec<u8>) -> Result<Self> {
        BitBlock::new(bits)
    }
}

/// Polar (±1) image of a [`BitBlock`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PolarBlock(Vec<i8>);

impl PolarBlock {
    pub fn as_slice(&self) -> &[i8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Map bit 0 to -1 and bit 1 to +1.
#[inline]
pub fn polar(bit: u8) -> i8 {
    2 * bit as i8 - 1
}

pub fn bits_to_polar(bits: &BitBlock) -> PolarBlock {
    PolarBlock(bits.0.iter().map(|&b| polar(b)).collect())
}

pub fn polar_to_bits(symbols: &PolarBlock) -> BitBlock {
    BitBlock(symbols.0.iter().map(|&s| u8::from(s > 0)).collect())
}
