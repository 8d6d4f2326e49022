//! The code itself: generator matrix, decoder tables, encoder, and the
//! ρ-query local decoder with exact success-probability analysis.
//!
//! For an odd query count ρ >= 3 and block size u, set n = ρu + 1. The
//! generator is the bitwise complement of the incidence matrix of the
//! complete u-uniform hypergraph on `{1..n}`; column j of the generator
//! has a 1 in row i exactly when vertex i avoids the j-th u-subset. The
//! coordinates avoiding vertex i (the support T_i of row i, of size
//! λN with λ = 1 - u/n) split into k = C(n-2, u-1) classes of ρ
//! coordinates each, one class per parallel class of a factorization of
//! the complete hypergraph on the remaining n-1 vertices. Each class XORs
//! to the i-th unit vector — ρ is odd — so reading one uniformly chosen
//! class recovers bit i with probability 1 on uncorrupted words and with
//! probability at least 1 - (corrupted classes)/k in general.

mod hadamard;

pub use hadamard::HadamardCode;

use std::collections::BTreeMap;

use crate::baranyai::{baranyai_flow, round_robin_factorization, BaranyaiPartition};
use crate::channel::CorruptionPattern;
use crate::combinatorics::{binom, binom_usize, incidence_matrix, rank_lex};
use crate::error::{Error, Result};
use crate::gf2::{vec_mat_mul, BitMatrix, BitVector};
use crate::Rational;
use rand::Rng;

/// Binary entropy in bits: -s log2 s - (1-s) log2 (1-s).
pub fn binary_entropy(s: f64) -> f64 {
    if s <= 0.0 || s >= 1.0 {
        return 0.0;
    }
    -s * s.log2() - (1.0 - s) * (1.0 - s).log2()
}

/// Derived parameters of a code instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodeParams {
    query_count: u32,
    block_size: u32,
    message_len: u32,
    codeword_len: usize,
    support_fraction: Rational,
    class_count: usize,
}

impl CodeParams {
    pub fn new(query_count: u32, block_size: u32) -> Result<Self> {
        if query_count < 3 || query_count % 2 == 0 {
            return Err(Error::InvalidParameter(format!(
                "query count must be an odd integer >= 3, got {query_count}"
            )));
        }
        if block_size == 0 {
            return Err(Error::InvalidParameter("block size must be >= 1".into()));
        }
        let message_len = query_count
            .checked_mul(block_size)
            .and_then(|p| p.checked_add(1))
            .ok_or_else(|| Error::Capacity("message length overflows u32".into()))?;
        let codeword_len = binom_usize(message_len as u64, block_size as u64)?;
        let support_fraction = Rational::new(
            (message_len - block_size) as i64,
            message_len as i64,
        );
        let class_count = binom_usize((message_len - 2) as u64, (block_size - 1) as u64)?;
        let support_size = binom((message_len - 1) as u64, block_size as u64)?;
        // λN is an integer and equals C(n-1, u); the classes per index are
        // C(n-2, u-1) = λN/ρ. Both identities are forced by the choice
        // n = ρu + 1; their failure would be a construction bug.
        assert_eq!(
            (message_len - block_size) as u128 * codeword_len as u128,
            support_size as u128 * message_len as u128,
            "support size must equal λN exactly"
        );
        assert_eq!(
            class_count as u64 * query_count as u64,
            support_size,
            "class count times query count must equal the support size"
        );
        Ok(Self {
            query_count,
            block_size,
            message_len,
            codeword_len,
            support_fraction,
            class_count,
        })
    }

    /// ρ: coordinates read per decode.
    pub fn query_count(&self) -> u32 {
        self.query_count
    }

    /// u: size of the subsets labeling codeword coordinates.
    pub fn block_size(&self) -> u32 {
        self.block_size
    }

    /// n = ρu + 1.
    pub fn message_len(&self) -> u32 {
        self.message_len
    }

    /// N = C(n, u).
    pub fn codeword_len(&self) -> usize {
        self.codeword_len
    }

    /// λ = 1 - u/n, the fraction of coordinates avoiding a given index.
    pub fn support_fraction(&self) -> Rational {
        self.support_fraction
    }

    /// k = C(n-2, u-1): decoder classes per index.
    pub fn class_count(&self) -> usize {
        self.class_count
    }

    /// |T_i| = λN = C(n-1, u).
    pub fn support_size(&self) -> usize {
        self.class_count * self.query_count as usize
    }

    /// H(1/ρ) · n, the exponent of the codeword-length bound.
    pub fn rate_bound_exponent(&self) -> f64 {
        binary_entropy(1.0 / self.query_count as f64) * self.message_len as f64
    }

    /// 2^{H(1/ρ) n}: the codeword length never exceeds this.
    pub fn rate_bound(&self) -> f64 {
        self.rate_bound_exponent().exp2()
    }

    /// 1 - ρδ/λ: the guaranteed decoding success floor at corruption
    /// fraction δ.
    pub fn success_floor(&self, delta: Rational) -> Rational {
        Rational::from_integer(1)
            - Rational::from_integer(self.query_count as i64) * delta / self.support_fraction
    }

    /// 1 - ρ²δ/(ρ-1): the weaker closed-form floor, implied by λ > 1 - 1/ρ.
    pub fn coarse_success_floor(&self, delta: Rational) -> Rational {
        let rho = self.query_count as i64;
        Rational::from_integer(1) - Rational::new(rho * rho, rho - 1) * delta
    }
}

/// Per-index query sets: T_i (all coordinates avoiding vertex i) and its
/// partition into classes of ρ coordinates, each XOR-ing to unit vector i.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecoderTables {
    per_index: Vec<IndexTable>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct IndexTable {
    support: Vec<usize>,
    classes: Vec<Vec<usize>>,
}

/// A built code: parameters, generator matrix, decoder tables.
///
/// Immutable after construction; decoding is pure given the caller's rng,
/// so concurrent decodes are safe.
#[derive(Debug, Clone)]
pub struct LdcCode {
    params: CodeParams,
    generator: BitMatrix,
    tables: DecoderTables,
}

impl LdcCode {
    /// Build with an internally constructed factorization: the circle
    /// method for u = 2, the flow construction otherwise. Any valid
    /// factorization yields the same guarantees.
    pub fn build(query_count: u32, block_size: u32) -> Result<Self> {
        let params = CodeParams::new(query_count, block_size)?;
        let m = params.message_len() - 1;
        let partition = if block_size == 2 {
            round_robin_factorization(m)?
        } else {
            baranyai_flow(m, block_size)?
        };
        Self::build_with_partition(query_count, block_size, &partition)
    }

    /// Build from a caller-supplied factorization of the complete
    /// hypergraph on `{1..n-1}`. The partition is verified, and the
    /// decoding identity (every class XORs to the right unit vector) is
    /// checked eagerly for every index and class; any failure aborts
    /// construction.
    pub fn build_with_partition(
        query_count: u32,
        block_size: u32,
        partition: &BaranyaiPartition,
    ) -> Result<Self> {
        let params = CodeParams::new(query_count, block_size)?;
        let n = params.message_len();
        let expected_vertices: Vec<u32> = (1..n).collect();
        if partition.vertices() != expected_vertices.as_slice()
            || partition.block_size() != block_size
        {
            return Err(Error::Validation(format!(
                "expected a partition of the {}-subsets of {{1..{}}}",
                block_size,
                n - 1
            )));
        }
        let verdict = partition.verify();
        if !verdict.is_valid() {
            return Err(Error::Validation(format!(
                "supplied partition fails verification: {verdict}"
            )));
        }

        let generator = incidence_matrix(n, block_size)?.complement();

        let mut per_index = Vec::with_capacity(n as usize);
        for i in 1..=n {
            // Order-preserving relabeling of {1..n-1} onto {1..n} \ {i}.
            let map: BTreeMap<u32, u32> = (1..n)
                .map(|j| (j, if j < i { j } else { j + 1 }))
                .collect();
            let relabeled = partition.relabel(&map)?;
            let mut classes = Vec::with_capacity(relabeled.class_count());
            for class in relabeled.classes() {
                let mut ranks = Vec::with_capacity(class.blocks().len());
                for block in class.blocks() {
                    ranks.push(rank_lex(block, n)? as usize);
                }
                ranks.sort_unstable();
                classes.push(ranks);
            }
            let mut support: Vec<usize> = classes.iter().flatten().copied().collect();
            support.sort_unstable();
            per_index.push(IndexTable { support, classes });
        }

        let code = Self {
            params,
            generator,
            tables: DecoderTables { per_index },
        };
        code.validate()?;
        Ok(code)
    }

    /// Re-check every structural invariant. Run on every construction and
    /// on every load, so a bad factorization or a tampered file becomes an
    /// immediate hard error instead of a statistical anomaly.
    fn validate(&self) -> Result<()> {
        let n = self.params.message_len() as usize;
        let rho = self.params.query_count() as usize;
        let k = self.params.class_count();
        let total = self.params.codeword_len();

        let expected_generator =
            incidence_matrix(self.params.message_len(), self.params.block_size())?.complement();
        if self.generator != expected_generator {
            return Err(Error::Validation(
                "generator is not the complemented incidence matrix".into(),
            ));
        }
        if self.tables.per_index.len() != n {
            return Err(Error::Validation(format!(
                "expected {n} decoder tables, found {}",
                self.tables.per_index.len()
            )));
        }
        for (i0, table) in self.tables.per_index.iter().enumerate() {
            if table.support != self.generator.row_support(i0) {
                return Err(Error::Validation(format!(
                    "support of index {} does not match generator row",
                    i0 + 1
                )));
            }
            if table.classes.len() != k {
                return Err(Error::Validation(format!(
                    "index {}: expected {k} classes, found {}",
                    i0 + 1,
                    table.classes.len()
                )));
            }
            let mut coords: Vec<usize> = Vec::with_capacity(table.support.len());
            for (j, class) in table.classes.iter().enumerate() {
                if class.len() != rho {
                    return Err(Error::Validation(format!(
                        "index {} class {j}: expected {rho} coordinates, found {}",
                        i0 + 1,
                        class.len()
                    )));
                }
                if class.iter().any(|&c| c >= total) {
                    return Err(Error::Validation(format!(
                        "index {} class {j}: coordinate out of range",
                        i0 + 1
                    )));
                }
                let unit = BitVector::unit(n, i0);
                let sum = self.generator.xor_columns(class.iter().copied())?;
                if sum != unit {
                    return Err(Error::Validation(format!(
                        "decoding identity failed at index {}, class {j}",
                        i0 + 1
                    )));
                }
                coords.extend_from_slice(class);
            }
            coords.sort_unstable();
            if coords != table.support {
                return Err(Error::Validation(format!(
                    "classes of index {} do not partition its support",
                    i0 + 1
                )));
            }
        }
        Ok(())
    }

    pub fn params(&self) -> &CodeParams {
        &self.params
    }

    pub fn generator(&self) -> &BitMatrix {
        &self.generator
    }

    fn index0(&self, index: u32) -> Result<usize> {
        if index == 0 || index > self.params.message_len() {
            return Err(Error::IndexOutOfRange {
                index: index as usize,
                limit: self.params.message_len() as usize,
            });
        }
        Ok(index as usize - 1)
    }

    /// T_i: all coordinates the decoder may read for `index` (1-based).
    pub fn support(&self, index: u32) -> Result<&[usize]> {
        Ok(&self.tables.per_index[self.index0(index)?].support)
    }

    /// The k query classes of `index` (1-based), each ρ sorted coordinates.
    pub fn query_classes(&self, index: u32) -> Result<&[Vec<usize>]> {
        Ok(&self.tables.per_index[self.index0(index)?].classes)
    }

    /// C(x) = xG.
    pub fn encode(&self, x: &BitVector) -> Result<BitVector> {
        vec_mat_mul(x, &self.generator)
    }

    /// Recover bit `index` (1-based) from `y` by reading one uniformly
    /// chosen query class — exactly ρ coordinates. Deterministic given the
    /// rng state.
    pub fn local_decode<R: Rng + ?Sized>(
        &self,
        y: &BitVector,
        index: u32,
        rng: &mut R,
    ) -> Result<bool> {
        let i0 = self.index0(index)?;
        self.check_word(y)?;
        let j = rng.random_range(0..self.params.class_count());
        let mut bit = false;
        for &coord in &self.tables.per_index[i0].classes[j] {
            bit ^= y.get(coord);
        }
        Ok(bit)
    }

    /// Like [`Self::local_decode`], also reporting the coordinates read,
    /// in read order. The trace is the decoder's actual read path, so its
    /// length is the decoder's query count.
    pub fn local_decode_traced<R: Rng + ?Sized>(
        &self,
        y: &BitVector,
        index: u32,
        rng: &mut R,
    ) -> Result<(bool, Vec<usize>)> {
        let i0 = self.index0(index)?;
        self.check_word(y)?;
        let j = rng.random_range(0..self.params.class_count());
        let mut bit = false;
        let mut reads = Vec::with_capacity(self.params.query_count() as usize);
        for &coord in &self.tables.per_index[i0].classes[j] {
            bit ^= y.get(coord);
            reads.push(coord);
        }
        Ok((bit, reads))
    }

    /// The exact probability (over the decoder's class choice) that
    /// decoding `index` succeeds when `pattern` is applied to the codeword
    /// of `x`. Full enumeration over all k classes — no sampling. Classes
    /// whose corrupted coordinates cancel (an even number of flips) count
    /// as successes, so this can exceed the 1 - bad/k floor.
    pub fn exact_success_prob(
        &self,
        pattern: &CorruptionPattern,
        x: &BitVector,
        index: u32,
    ) -> Result<Rational> {
        let i0 = self.index0(index)?;
        let y = pattern.apply(&self.encode(x)?)?;
        let want = x.get(i0);
        let good = self.tables.per_index[i0]
            .classes
            .iter()
            .filter(|class| {
                let mut bit = false;
                for &coord in class.iter() {
                    bit ^= y.get(coord);
                }
                bit == want
            })
            .count();
        Ok(Rational::new(
            good as i64,
            self.params.class_count() as i64,
        ))
    }

    fn check_word(&self, y: &BitVector) -> Result<()> {
        if y.len() != self.params.codeword_len() {
            return Err(Error::DimensionMismatch {
                expected: self.params.codeword_len(),
                actual: y.len(),
            });
        }
        Ok(())
    }

    /// Text form: a manifest line, the generator dump, then per index the
    /// k query classes (ρ space-separated ranks per line).
    pub fn to_text(&self) -> String {
        let p = &self.params;
        let mut s = format!(
            "ldc {} {} {} {} {} {}\n",
            p.query_count(),
            p.block_size(),
            p.message_len(),
            p.codeword_len(),
            p.support_fraction(),
            p.class_count()
        );
        s.push_str(&self.generator.dump());
        for table in &self.tables.per_index {
            for class in &table.classes {
                let line: Vec<String> = class.iter().map(|c| c.to_string()).collect();
                s.push_str(&line.join(" "));
                s.push('\n');
            }
        }
        s
    }

    /// Inverse of [`Self::to_text`]. Self-validating: all structural
    /// invariants are re-checked before the code is returned.
    pub fn from_text(text: &str) -> Result<Self> {
        let lines: Vec<&str> = text.lines().collect();
        if lines.is_empty() {
            return Err(Error::Parse {
                line: 1,
                message: "empty file".into(),
            });
        }
        let fields: Vec<&str> = lines[0].split_whitespace().collect();
        if fields.len() != 7 || fields[0] != "ldc" {
            return Err(Error::Parse {
                line: 1,
                message: format!("expected 'ldc rho u n N lambda k', got {:?}", lines[0]),
            });
        }
        let num = |s: &str, what: &str| -> Result<u64> {
            s.parse().map_err(|_| Error::Parse {
                line: 1,
                message: format!("bad {what}: {s:?}"),
            })
        };
        let small = |s: &str, what: &str| -> Result<u32> {
            s.parse().map_err(|_| Error::Parse {
                line: 1,
                message: format!("bad {what}: {s:?}"),
            })
        };
        let rho = small(fields[1], "query count")?;
        let u = small(fields[2], "block size")?;
        let params = CodeParams::new(rho, u)?;
        let n = params.message_len() as usize;
        let claimed_n = num(fields[3], "message length")?;
        let claimed_len = num(fields[4], "codeword length")?;
        let claimed_lambda: Rational = fields[5].parse().map_err(|_| Error::Parse {
            line: 1,
            message: format!("bad support fraction: {:?}", fields[5]),
        })?;
        let claimed_k = num(fields[6], "class count")?;
        if claimed_n != params.message_len() as u64
            || claimed_len != params.codeword_len() as u64
            || claimed_lambda != params.support_fraction()
            || claimed_k != params.class_count() as u64
        {
            return Err(Error::Validation(
                "manifest parameters are inconsistent with rho and u".into(),
            ));
        }

        let k = params.class_count();
        let expected_lines = 1 + n + n * k;
        if lines.len() < expected_lines {
            return Err(Error::Parse {
                line: lines.len(),
                message: format!("expected {expected_lines} lines, found {}", lines.len()),
            });
        }
        if lines[expected_lines..].iter().any(|l| !l.trim().is_empty()) {
            return Err(Error::Parse {
                line: expected_lines + 1,
                message: "unexpected trailing content".into(),
            });
        }

        let generator = BitMatrix::parse(&lines[1..=n].join("\n")).map_err(|e| match e {
            Error::Parse { line, message } => Error::Parse {
                line: line + 1,
                message,
            },
            other => other,
        })?;
        if generator.rows() != n || generator.cols() != params.codeword_len() {
            return Err(Error::Validation(format!(
                "generator must be {n} x {}, found {} x {}",
                params.codeword_len(),
                generator.rows(),
                generator.cols()
            )));
        }

        let mut per_index = Vec::with_capacity(n);
        let mut lineno = 1 + n;
        for _ in 0..n {
            let mut classes = Vec::with_capacity(k);
            for _ in 0..k {
                lineno += 1;
                let mut class = lines[lineno - 1]
                    .split_whitespace()
                    .map(|t| {
                        t.parse::<usize>().map_err(|_| Error::Parse {
                            line: lineno,
                            message: format!("bad coordinate {t:?}"),
                        })
                    })
                    .collect::<Result<Vec<usize>>>()?;
                // Classes are sets; keep the canonical sorted form so the
                // least coordinate of a class is always class[0].
                class.sort_unstable();
                classes.push(class);
            }
            let mut support: Vec<usize> = classes.iter().flatten().copied().collect();
            support.sort_unstable();
            per_index.push(IndexTable { support, classes });
        }

        let code = Self {
            params,
            generator,
            tables: DecoderTables { per_index },
        };
        code.validate()?;
        Ok(code)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::CorruptionPattern;
    use crate::rng::trial_rng;
    use proptest::prelude::*;

    #[test]
    fn params_examples() {
        let p = CodeParams::new(3, 2).unwrap();
        assert_eq!(p.message_len(), 7);
        assert_eq!(p.codeword_len(), 21);
        assert_eq!(p.support_fraction(), Rational::new(5, 7));
        assert_eq!(p.class_count(), 5);
        assert_eq!(p.support_size(), 15);

        let p = CodeParams::new(3, 1).unwrap();
        assert_eq!(p.message_len(), 4);
        assert_eq!(p.codeword_len(), 4);
        assert_eq!(p.support_fraction(), Rational::new(3, 4));
        assert_eq!(p.class_count(), 1);

        let p = CodeParams::new(5, 2).unwrap();
        assert_eq!(p.message_len(), 11);
        assert_eq!(p.codeword_len(), 55);
        assert_eq!(p.support_fraction(), Rational::new(9, 11));
        assert_eq!(p.class_count(), 9);
        assert_eq!(p.query_count(), 5);
    }

    #[test]
    fn params_reject_bad_query_counts() {
        assert!(CodeParams::new(1, 2).is_err());
        assert!(CodeParams::new(2, 2).is_err());
        assert!(CodeParams::new(4, 2).is_err());
        assert!(CodeParams::new(0, 2).is_err());
        assert!(CodeParams::new(3, 0).is_err());
    }

    #[test]
    fn floors_and_entropy() {
        let p = CodeParams::new(3, 2).unwrap();
        let delta = Rational::new(1, 21);
        assert_eq!(p.success_floor(delta), Rational::new(4, 5));
        assert_eq!(p.coarse_success_floor(delta), Rational::new(11, 14));
        // The fine floor beats the coarse floor because λ > 1 - 1/ρ.
        assert!(p.support_fraction() > Rational::new(2, 3));
        assert!((binary_entropy(1.0 / 3.0) - 0.9183).abs() < 1e-4);
    }

    #[test]
    fn smallest_code_generator_is_complemented_identity() {
        let code = LdcCode::build(3, 1).unwrap();
        let g = code.generator();
        assert_eq!((g.rows(), g.cols()), (4, 4));
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(g.get(i, j), i != j);
            }
        }
        // One class per index: the three coordinates other than i.
        for i in 1..=4u32 {
            let classes = code.query_classes(i).unwrap();
            assert_eq!(classes.len(), 1);
            let expected: Vec<usize> =
                (0..4).filter(|&j| j != (i as usize - 1)).collect();
            assert_eq!(classes[0], expected);
        }
    }

    #[test]
    fn encode_is_linear_with_unit_vectors_reading_rows() {
        let code = LdcCode::build(3, 2).unwrap();
        let n = code.params().message_len() as usize;
        let zero = BitVector::zeros(n);
        assert_eq!(
            code.encode(&zero).unwrap(),
            BitVector::zeros(code.params().codeword_len())
        );
        let e7 = BitVector::unit(n, 6);
        assert_eq!(code.encode(&e7).unwrap(), code.generator().row(6));

        let mut e12 = BitVector::unit(n, 0);
        e12.xor_in_place(&BitVector::unit(n, 1));
        let mut expected = code.generator().row(0);
        expected.xor_in_place(&code.generator().row(1));
        assert_eq!(code.encode(&e12).unwrap(), expected);
    }

    #[test]
    fn uncorrupted_decoding_is_always_correct() {
        let code = LdcCode::build(3, 2).unwrap();
        let n = code.params().message_len();
        for trial in 0..20 {
            let mut rng = trial_rng(77, trial);
            let x = BitVector::random(n as usize, &mut rng);
            let y = code.encode(&x).unwrap();
            for i in 1..=n {
                let bit = code.local_decode(&y, i, &mut rng).unwrap();
                assert_eq!(bit, x.get(i as usize - 1));
            }
        }
    }

    #[test]
    fn single_flip_breaks_exactly_one_class() {
        let code = LdcCode::build(3, 2).unwrap();
        let n = code.params().message_len() as usize;
        let x = BitVector::zeros(n);
        // Flip the coordinate of subset {1,2} (rank 0).
        let pattern = CorruptionPattern::new(code.params().codeword_len(), vec![0]).unwrap();
        let y = pattern.apply(&code.encode(&x).unwrap()).unwrap();
        // Index 7: the decode is wrong exactly when the sampled class
        // contains the flipped coordinate.
        for trial in 0..40 {
            let (bit, reads) = code
                .local_decode_traced(&y, 7, &mut trial_rng(5, trial))
                .unwrap();
            assert_eq!(bit, reads.contains(&0));
        }
        assert_eq!(
            code.exact_success_prob(&pattern, &x, 7).unwrap(),
            Rational::new(4, 5)
        );
        // Indices inside {1,2} never read that coordinate.
        assert_eq!(
            code.exact_success_prob(&pattern, &x, 1).unwrap(),
            Rational::from_integer(1)
        );
    }

    #[test]
    fn empty_pattern_success_is_one() {
        let code = LdcCode::build(3, 2).unwrap();
        let x = BitVector::random(7, &mut trial_rng(1, 1));
        let empty = CorruptionPattern::empty(21);
        for i in 1..=7 {
            assert_eq!(
                code.exact_success_prob(&empty, &x, i).unwrap(),
                Rational::from_integer(1)
            );
        }
    }

    #[test]
    fn index_bounds_checked() {
        let code = LdcCode::build(3, 1).unwrap();
        let y = BitVector::zeros(4);
        let mut rng = trial_rng(0, 0);
        assert!(code.local_decode(&y, 0, &mut rng).is_err());
        assert!(code.local_decode(&y, 5, &mut rng).is_err());
        let short = BitVector::zeros(3);
        assert!(matches!(
            code.local_decode(&short, 1, &mut rng),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn build_rejects_foreign_partition() {
        // A partition of the wrong vertex set must be refused.
        let p = round_robin_factorization(8).unwrap();
        assert!(LdcCode::build_with_partition(3, 2, &p).is_err());
    }

    #[test]
    fn text_roundtrip_and_tamper_detection() {
        let code = LdcCode::build(3, 2).unwrap();
        let text = code.to_text();
        let back = LdcCode::from_text(&text).unwrap();
        assert_eq!(back.generator(), code.generator());
        assert_eq!(back.params(), code.params());

        // Flip one generator bit: the load must fail validation.
        let mut tampered: Vec<String> = text.lines().map(String::from).collect();
        tampered[1] = tampered[1].replacen('1', "0", 1);
        assert!(LdcCode::from_text(&tampered.join("\n")).is_err());

        // Swap two coordinates across classes: still a partition of T_i,
        // but the decoding identity breaks.
        let mut lines: Vec<String> = text.lines().map(String::from).collect();
        let a = lines[8].clone();
        let b = lines[9].clone();
        let a_first = a.split(' ').next().unwrap().to_string();
        let b_first = b.split(' ').next().unwrap().to_string();
        lines[8] = a.replacen(&a_first, &b_first, 1);
        lines[9] = b.replacen(&b_first, &a_first, 1);
        assert!(LdcCode::from_text(&lines.join("\n")).is_err());
    }

    proptest! {
        // The exact success probability depends only on the pattern, not
        // on the transmitted message: corruption is additive over GF(2).
        #[test]
        fn exact_success_prob_ignores_message(seed in 0u64..500) {
            let code = LdcCode::build(3, 2).unwrap();
            let mut rng = trial_rng(123, seed);
            let pattern =
                crate::channel::random_pattern(21, Rational::new(1, 7), &mut rng).unwrap();
            let x1 = BitVector::random(7, &mut rng);
            let x2 = BitVector::random(7, &mut rng);
            for i in 1..=7 {
                prop_assert_eq!(
                    code.exact_success_prob(&pattern, &x1, i).unwrap(),
                    code.exact_success_prob(&pattern, &x2, i).unwrap()
                );
            }
        }
    }
}
