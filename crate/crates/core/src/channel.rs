//! Corruption patterns: which codeword coordinates the channel flips.
//!
//! Patterns fix their weight at exactly floor(delta * N) rather than
//! flipping each bit independently, matching the worst-case distance
//! budget of the decoding guarantee and keeping the bounds exact.

use crate::error::{Error, Result};
use crate::gf2::BitVector;
use crate::ldc::LdcCode;
use crate::Rational;
use rand::Rng;

/// A set of flipped codeword coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorruptionPattern {
    codeword_len: usize,
    flipped: Vec<usize>,
}

impl CorruptionPattern {
    /// Indices must be distinct and `< codeword_len`; they are sorted here.
    pub fn new(codeword_len: usize, mut flipped: Vec<usize>) -> Result<Self> {
        flipped.sort_unstable();
        if let Some(w) = flipped.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::Validation(format!(
                "duplicate flipped coordinate {}",
                w[0]
            )));
        }
        if let Some(&bad) = flipped.last().filter(|&&i| i >= codeword_len) {
            return Err(Error::IndexOutOfRange {
                index: bad,
                limit: codeword_len,
            });
        }
        Ok(Self {
            codeword_len,
            flipped,
        })
    }

    pub fn empty(codeword_len: usize) -> Self {
        Self {
            codeword_len,
            flipped: Vec::new(),
        }
    }

    pub fn codeword_len(&self) -> usize {
        self.codeword_len
    }

    pub fn weight(&self) -> usize {
        self.flipped.len()
    }

    pub fn flipped(&self) -> &[usize] {
        &self.flipped
    }

    pub fn contains(&self, coordinate: usize) -> bool {
        self.flipped.binary_search(&coordinate).is_ok()
    }

    /// Flip exactly the listed coordinates of `word`. Applying the same
    /// pattern twice restores the original.
    pub fn apply(&self, word: &BitVector) -> Result<BitVector> {
        if word.len() != self.codeword_len {
            return Err(Error::DimensionMismatch {
                expected: self.codeword_len,
                actual: word.len(),
            });
        }
        let mut out = word.clone();
        for &i in &self.flipped {
            out.flip(i);
        }
        Ok(out)
    }

    /// Text form: header `pattern N w`, then w sorted indices one per line.
    pub fn to_text(&self) -> String {
        let mut s = format!("pattern {} {}\n", self.codeword_len, self.flipped.len());
        for i in &self.flipped {
            s.push_str(&format!("{i}\n"));
        }
        s
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate();
        let (_, header) = lines.next().ok_or(Error::Parse {
            line: 1,
            message: "missing header".into(),
        })?;
        let fields: Vec<&str> = header.split_whitespace().collect();
        if fields.len() != 3 || fields[0] != "pattern" {
            return Err(Error::Parse {
                line: 1,
                message: format!("expected 'pattern N w', got {header:?}"),
            });
        }
        let n: usize = fields[1].parse().map_err(|_| Error::Parse {
            line: 1,
            message: format!("bad codeword length {:?}", fields[1]),
        })?;
        let w: usize = fields[2].parse().map_err(|_| Error::Parse {
            line: 1,
            message: format!("bad weight {:?}", fields[2]),
        })?;
        let mut flipped = Vec::with_capacity(w);
        for _ in 0..w {
            let (idx, line) = lines.next().ok_or(Error::Parse {
                line: w + 1,
                message: format!("expected {w} coordinate lines"),
            })?;
            flipped.push(line.trim().parse().map_err(|_| Error::Parse {
                line: idx + 1,
                message: format!("bad coordinate {line:?}"),
            })?);
        }
        Self::new(n, flipped)
    }
}

/// Exactly floor(delta * N) distinct coordinates drawn uniformly without
/// replacement. Deterministic given the rng state.
pub fn random_pattern(
    codeword_len: usize,
    delta: Rational,
    rng: &mut impl Rng,
) -> Result<CorruptionPattern> {
    if delta < Rational::from_integer(0) || delta >= Rational::from_integer(1) {
        return Err(Error::InvalidParameter(format!(
            "corruption fraction must lie in [0, 1), got {delta}"
        )));
    }
    let weight = pattern_weight(codeword_len, delta);
    let picked = rand::seq::index::sample(rng, codeword_len, weight).into_vec();
    CorruptionPattern::new(codeword_len, picked)
}

/// floor(delta * N) without intermediate overflow.
pub fn pattern_weight(codeword_len: usize, delta: Rational) -> usize {
    let num = *delta.numer() as i128;
    let den = *delta.denom() as i128;
    (num * codeword_len as i128 / den) as usize
}

/// Worst-case witness for the decoding bound: one flip in each of the
/// first `t` query classes of `index`, taking the lexicographically least
/// coordinate of each class. The decoder's success probability for this
/// index is then exactly 1 - t/k, for every message: a single flip in a
/// class always breaks its parity.
pub fn adversarial_spread(code: &LdcCode, index: u32, t: usize) -> Result<CorruptionPattern> {
    let classes = code.query_classes(index)?;
    if t > classes.len() {
        return Err(Error::InvalidParameter(format!(
            "requested {t} corrupted classes but index {index} has only {}",
            classes.len()
        )));
    }
    let flips = classes[..t].iter().map(|class| class[0]).collect();
    CorruptionPattern::new(code.params().codeword_len(), flips)
}
