//! Bit-packed vectors and matrices over the two-element field.
//!
//! GF(2) is hard-coded: every linear combination in this crate has unit
//! coefficients, so there is no field abstraction and no coefficient
//! storage. Values are immutable in practice (operations return new
//! values) and safe to share across threads.

use crate::error::{Error, Result};
use rand::Rng;

const WORD_BITS: usize = 64;

fn words_for(bits: usize) -> usize {
    bits.div_ceil(WORD_BITS)
}

/// A fixed-length bit vector. Pad bits past `len` are kept zero, so
/// derived equality and hashing are exact.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BitVector {
    len: usize,
    words: Vec<u64>,
}

impl BitVector {
    pub fn zeros(len: usize) -> Self {
        Self {
            len,
            words: vec![0; words_for(len)],
        }
    }

    /// Unit vector with the single set bit at `pos`.
    pub fn unit(len: usize, pos: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(pos, true);
        v
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b {
                v.set(i, true);
            }
        }
        v
    }

    /// Parse a string of `'0'`/`'1'` characters.
    pub fn parse_bits(s: &str) -> Result<Self> {
        let mut v = Self::zeros(s.len());
        for (i, c) in s.chars().enumerate() {
            match c {
                '0' => {}
                '1' => v.set(i, true),
                _ => {
                    return Err(Error::Validation(format!(
                        "expected '0' or '1', found {c:?} at position {i}"
                    )))
                }
            }
        }
        Ok(v)
    }

    /// Uniformly random vector drawn from `rng`.
    pub fn random(len: usize, rng: &mut impl Rng) -> Self {
        let mut v = Self::zeros(len);
        for w in v.words.iter_mut() {
            *w = rng.random();
        }
        v.clear_padding();
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit index {i} out of range (len {})", self.len);
        self.words[i / WORD_BITS] >> (i % WORD_BITS) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, bit: bool) {
        assert!(i < self.len, "bit index {i} out of range (len {})", self.len);
        let mask = 1u64 << (i % WORD_BITS);
        if bit {
            self.words[i / WORD_BITS] |= mask;
        } else {
            self.words[i / WORD_BITS] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len, "bit index {i} out of range (len {})", self.len);
        self.words[i / WORD_BITS] ^= 1u64 << (i % WORD_BITS);
    }

    pub fn xor_in_place(&mut self, other: &BitVector) {
        assert_eq!(self.len, other.len, "xor of unequal lengths");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Hamming distance: the number of coordinates where the vectors differ.
    pub fn hamming_distance(&self, other: &BitVector) -> usize {
        assert_eq!(self.len, other.len, "distance of unequal lengths");
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a ^ b).count_ones() as usize)
            .sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }

    fn clear_padding(&mut self) {
        let tail = self.len % WORD_BITS;
        if tail != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << tail) - 1;
            }
        }
    }
}

impl std::fmt::Display for BitVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for i in 0..self.len {
            write!(f, "{}", if self.get(i) { '1' } else { '0' })?;
        }
        Ok(())
    }
}

/// A bit matrix with row-major packed storage.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    stride: usize, // words per row
    words: Vec<u64>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        let stride = words_for(cols);
        Self {
            rows,
            cols,
            stride,
            words: vec![0; rows * stride],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        assert!(i < self.rows && j < self.cols, "entry ({i}, {j}) out of range");
        self.words[i * self.stride + j / WORD_BITS] >> (j % WORD_BITS) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, bit: bool) {
        assert!(i < self.rows && j < self.cols, "entry ({i}, {j}) out of range");
        let mask = 1u64 << (j % WORD_BITS);
        let w = &mut self.words[i * self.stride + j / WORD_BITS];
        if bit {
            *w |= mask;
        } else {
            *w &= !mask;
        }
    }

    /// Copy of row `i`.
    pub fn row(&self, i: usize) -> BitVector {
        assert!(i < self.rows, "row {i} out of range");
        BitVector {
            len: self.cols,
            words: self.words[i * self.stride..(i + 1) * self.stride].to_vec(),
        }
    }

    /// Column indices of the set bits in row `i`, ascending.
    pub fn row_support(&self, i: usize) -> Vec<usize> {
        (0..self.cols).filter(|&j| self.get(i, j)).collect()
    }

    /// Every bit flipped. Involution: complementing twice is the identity.
    pub fn complement(&self) -> BitMatrix {
        let mut out = self.clone();
        for w in out.words.iter_mut() {
            *w = !*w;
        }
        // Keep pad bits zero.
        let tail = self.cols % WORD_BITS;
        if tail != 0 {
            let mask = (1u64 << tail) - 1;
            for i in 0..self.rows {
                out.words[i * self.stride + self.stride - 1] &= mask;
            }
        }
        out
    }

    /// Coordinatewise parity of the selected columns, as a vector of
    /// length `rows`. The empty selection yields the zero vector.
    pub fn xor_columns<I>(&self, cols: I) -> Result<BitVector>
    where
        I: IntoIterator<Item = usize>,
    {
        let mut out = BitVector::zeros(self.rows);
        for j in cols {
            if j >= self.cols {
                return Err(Error::IndexOutOfRange {
                    index: j,
                    limit: self.cols,
                });
            }
            for i in 0..self.rows {
                if self.get(i, j) {
                    out.flip(i);
                }
            }
        }
        Ok(out)
    }

    /// One `'0'`/`'1'` line per row.
    pub fn dump(&self) -> String {
        let mut s = String::with_capacity(self.rows * (self.cols + 1));
        for i in 0..self.rows {
            for j in 0..self.cols {
                s.push(if self.get(i, j) { '1' } else { '0' });
            }
            s.push('\n');
        }
        s
    }

    /// Inverse of [`BitMatrix::dump`]. Rows must be nonempty and of equal
    /// length.
    pub fn parse(s: &str) -> Result<Self> {
        let lines: Vec<&str> = s.lines().filter(|l| !l.is_empty()).collect();
        if lines.is_empty() {
            return Err(Error::Parse {
                line: 1,
                message: "empty matrix".into(),
            });
        }
        let cols = lines[0].len();
        let mut m = BitMatrix::zeros(lines.len(), cols);
        for (i, line) in lines.iter().enumerate() {
            if line.len() != cols {
                return Err(Error::Parse {
                    line: i + 1,
                    message: format!("expected {cols} columns, found {}", line.len()),
                });
            }
            for (j, c) in line.chars().enumerate() {
                match c {
                    '0' => {}
                    '1' => m.set(i, j, true),
                    _ => {
                        return Err(Error::Parse {
                            line: i + 1,
                            message: format!("expected '0' or '1', found {c:?}"),
                        })
                    }
                }
            }
        }
        Ok(m)
    }
}

/// The row vector x times M over GF(2): output coordinate j is the parity
/// of the dot product of x with column j. Linear in x.
pub fn vec_mat_mul(x: &BitVector, m: &BitMatrix) -> Result<BitVector> {
    if x.len() != m.rows {
        return Err(Error::DimensionMismatch {
            expected: m.rows,
            actual: x.len(),
        });
    }
    // xM is the XOR of the rows selected by x, word by word.
    let mut out = BitVector::zeros(m.cols);
    for i in 0..m.rows {
        if x.get(i) {
            let row = &m.words[i * m.stride..(i + 1) * m.stride];
            for (o, w) in out.words.iter_mut().zip(row) {
                *o ^= w;
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha12Rng;

    fn naive_mul(x: &BitVector, m: &BitMatrix) -> BitVector {
        let mut out = BitVector::zeros(m.cols());
        for j in 0..m.cols() {
            let mut acc = false;
            for i in 0..m.rows() {
                acc ^= x.get(i) && m.get(i, j);
            }
            out.set(j, acc);
        }
        out
    }

    fn random_matrix(rows: usize, cols: usize, rng: &mut impl Rng) -> BitMatrix {
        let mut m = BitMatrix::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, rng.random());
            }
        }
        m
    }

    #[test]
    fn mul_agrees_with_naive() {
        let mut rng = ChaCha12Rng::seed_from_u64(11);
        for _ in 0..200 {
            let rows = rng.random_range(1..=64);
            let cols = rng.random_range(1..=64);
            let m = random_matrix(rows, cols, &mut rng);
            let x = BitVector::random(rows, &mut rng);
            assert_eq!(vec_mat_mul(&x, &m).unwrap(), naive_mul(&x, &m));
        }
    }

    #[test]
    fn mul_of_zero_is_zero() {
        let m = BitMatrix::zeros(4, 9);
        let x = BitVector::zeros(4);
        assert_eq!(vec_mat_mul(&x, &m).unwrap(), BitVector::zeros(9));
    }

    #[test]
    fn mul_dimension_mismatch() {
        let m = BitMatrix::zeros(4, 9);
        let x = BitVector::zeros(5);
        assert!(matches!(
            vec_mat_mul(&x, &m),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn xor_columns_edge_cases() {
        let mut rng = ChaCha12Rng::seed_from_u64(5);
        let m = random_matrix(7, 21, &mut rng);
        // Empty selection: zero vector.
        assert_eq!(m.xor_columns([]).unwrap(), BitVector::zeros(7));
        // Single column: the column itself.
        let col3: Vec<bool> = (0..7).map(|i| m.get(i, 3)).collect();
        assert_eq!(m.xor_columns([3]).unwrap(), BitVector::from_bools(&col3));
        // Out of range.
        assert!(matches!(
            m.xor_columns([21]),
            Err(Error::IndexOutOfRange { .. })
        ));
    }

    #[test]
    fn complement_involution() {
        let mut rng = ChaCha12Rng::seed_from_u64(7);
        let m = random_matrix(7, 21, &mut rng);
        assert_eq!(m.complement().complement(), m);
        let z = BitMatrix::zeros(3, 5);
        let ones = z.complement();
        assert!((0..3).all(|i| (0..5).all(|j| ones.get(i, j))));
    }

    #[test]
    fn dump_parse_roundtrip() {
        let mut rng = ChaCha12Rng::seed_from_u64(9);
        let m = random_matrix(6, 15, &mut rng);
        assert_eq!(BitMatrix::parse(&m.dump()).unwrap(), m);
        assert!(BitMatrix::parse("01\n012\n").is_err());
        assert!(BitMatrix::parse("01\n0x\n").is_err());
    }

    #[test]
    fn hamming_basics() {
        let a = BitVector::parse_bits("0110100").unwrap();
        assert_eq!(a.hamming_distance(&a), 0);
        let b = BitVector::parse_bits("0010101").unwrap();
        assert_eq!(a.hamming_distance(&b), 2);
    }

    proptest! {
        // xor_columns over a symmetric difference equals the XOR of the
        // two individual column sums.
        #[test]
        fn xor_columns_symmetric_difference(seed in 0u64..10_000) {
            let mut rng = ChaCha12Rng::seed_from_u64(seed);
            let m = random_matrix(8, 20, &mut rng);
            let pick = |rng: &mut ChaCha12Rng| -> Vec<usize> {
                (0..20).filter(|_| rng.random()).collect()
            };
            let s: Vec<usize> = pick(&mut rng);
            let t: Vec<usize> = pick(&mut rng);
            let sym: Vec<usize> = (0..20)
                .filter(|j| s.contains(j) != t.contains(j))
                .collect();
            let mut lhs = m.xor_columns(s).unwrap();
            lhs.xor_in_place(&m.xor_columns(t).unwrap());
            prop_assert_eq!(lhs, m.xor_columns(sym).unwrap());
        }

        // f(x + x') = f(x) + f(x')
        #[test]
        fn mul_linearity(seed in 0u64..10_000) {
            let mut rng = ChaCha12Rng::seed_from_u64(seed);
            let m = random_matrix(10, 17, &mut rng);
            let x = BitVector::random(10, &mut rng);
            let y = BitVector::random(10, &mut rng);
            let mut xy = x.clone();
            xy.xor_in_place(&y);
            let mut rhs = vec_mat_mul(&x, &m).unwrap();
            rhs.xor_in_place(&vec_mat_mul(&y, &m).unwrap());
            prop_assert_eq!(vec_mat_mul(&xy, &m).unwrap(), rhs);
        }

        // Triangle inequality for Hamming distance.
        #[test]
        fn hamming_triangle(seed in 0u64..10_000) {
            let mut rng = ChaCha12Rng::seed_from_u64(seed);
            let a = BitVector::random(33, &mut rng);
            let b = BitVector::random(33, &mut rng);
            let c = BitVector::random(33, &mut rng);
            prop_assert!(a.hamming_distance(&c) <= a.hamming_distance(&b) + b.hamming_distance(&c));
        }
    }
}
