//! The classical 2-query baseline: codeword coordinates are all parities
//! <x, v> for v in {0,1}^n, and a bit is decoded by reading the two
//! coordinates labeled v and v + e_i for a uniform v.

use crate::channel::CorruptionPattern;
use crate::error::{Error, Result};
use crate::gf2::BitVector;
use crate::Rational;
use rand::Rng;

/// Length-2^n code; coordinate c is labeled by the vector v whose bit v_j
/// is bit (n-j) of c, so columns run 00..0, 00..1, ..., 11..1 in order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HadamardCode {
    message_len: u32,
}

impl HadamardCode {
    /// `message_len` is capped at 20: the codeword has 2^n coordinates and
    /// must stay materializable.
    pub fn new(message_len: u32) -> Result<Self> {
        if message_len == 0 {
            return Err(Error::InvalidParameter("message length must be >= 1".into()));
        }
        if message_len > 20 {
            return Err(Error::Capacity(format!(
                "2^{message_len} codeword coordinates exceed the supported size"
            )));
        }
        Ok(Self { message_len })
    }

    pub fn message_len(&self) -> u32 {
        self.message_len
    }

    pub fn codeword_len(&self) -> usize {
        1usize << self.message_len
    }

    /// Bit mask that flips v_index within a coordinate label.
    fn unit_mask(&self, index: u32) -> usize {
        1usize << (self.message_len - index)
    }

    /// The message packed so that bit j-1 of the result is x_j aligned
    /// with the label encoding: <x, v(c)> = parity(pack & c).
    fn pack_reversed(&self, x: &BitVector) -> usize {
        let n = self.message_len;
        let mut packed = 0usize;
        for j in 1..=n {
            if x.get(j as usize - 1) {
                packed |= 1usize << (n - j);
            }
        }
        packed
    }

    pub fn encode(&self, x: &BitVector) -> Result<BitVector> {
        if x.len() != self.message_len as usize {
            return Err(Error::DimensionMismatch {
                expected: self.message_len as usize,
                actual: x.len(),
            });
        }
        let packed = self.pack_reversed(x);
        let mut y = BitVector::zeros(self.codeword_len());
        for c in 0..self.codeword_len() {
            if (packed & c).count_ones() % 2 == 1 {
                y.set(c, true);
            }
        }
        Ok(y)
    }

    /// Read y at v and v + e_index for a uniform v; return the sum.
    /// Exactly two coordinates are read per call.
    pub fn local_decode<R: Rng + ?Sized>(
        &self,
        y: &BitVector,
        index: u32,
        rng: &mut R,
    ) -> Result<bool> {
        let (bit, _) = self.local_decode_traced(y, index, rng)?;
        Ok(bit)
    }

    /// Like [`Self::local_decode`], also reporting the two coordinates read.
    pub fn local_decode_traced<R: Rng + ?Sized>(
        &self,
        y: &BitVector,
        index: u32,
        rng: &mut R,
    ) -> Result<(bool, [usize; 2])> {
        self.check_index(index)?;
        if y.len() != self.codeword_len() {
            return Err(Error::DimensionMismatch {
                expected: self.codeword_len(),
                actual: y.len(),
            });
        }
        let v = rng.random_range(0..self.codeword_len());
        let w = v ^ self.unit_mask(index);
        Ok((y.get(v) ^ y.get(w), [v, w]))
    }

    /// Exact success probability for `index` by enumerating all 2^n
    /// choices of v.
    pub fn exact_success_prob(
        &self,
        pattern: &CorruptionPattern,
        x: &BitVector,
        index: u32,
    ) -> Result<Rational> {
        self.check_index(index)?;
        let y = pattern.apply(&self.encode(x)?)?;
        let want = x.get(index as usize - 1);
        let mask = self.unit_mask(index);
        let total = self.codeword_len();
        let good = (0..total)
            .filter(|&v| (y.get(v) ^ y.get(v ^ mask)) == want)
            .count();
        Ok(Rational::new(good as i64, total as i64))
    }

    fn check_index(&self, index: u32) -> Result<()> {
        if index == 0 || index > self.message_len {
            return Err(Error::IndexOutOfRange {
                index: index as usize,
                limit: self.message_len as usize,
            });
        }
        Ok(())
    }
}
