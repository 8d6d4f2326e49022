//! Exact binomial arithmetic and lexicographic ranking of u-element subsets.
//!
//! Vertex labels are 1-based throughout (matching the usual way the edges of
//! a complete hypergraph are written down); subset ranks and matrix column
//! indices are 0-based.

use crate::error::{Error, Result};
use crate::gf2::BitMatrix;

/// C(m, u), exact. Fails loudly instead of wrapping.
pub fn binom(m: u64, u: u64) -> Result<u64> {
    if u > m {
        return Ok(0);
    }
    let k = u.min(m - u);
    let mut acc: u128 = 1;
    for i in 1..=k {
        acc = acc
            .checked_mul((m - k + i) as u128)
            .ok_or_else(|| Error::Capacity(format!("C({m}, {u}) overflows")))?;
        // Exact: after this step acc = C(m - k + i, i).
        acc /= i as u128;
    }
    u64::try_from(acc).map_err(|_| Error::Capacity(format!("C({m}, {u}) exceeds u64")))
}

/// `binom` narrowed to usize, for container sizes.
pub fn binom_usize(m: u64, u: u64) -> Result<usize> {
    let v = binom(m, u)?;
    usize::try_from(v).map_err(|_| Error::Capacity(format!("C({m}, {u}) exceeds usize")))
}

/// A sorted u-element subset of `{1..m}`: one edge of the complete
/// u-uniform hypergraph, and the label of one column of its incidence
/// matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct KSubset {
    elements: Vec<u32>,
}

impl KSubset {
    /// Elements must be strictly increasing and 1-based.
    pub fn new(elements: Vec<u32>) -> Result<Self> {
        if elements.is_empty() {
            return Err(Error::Validation("subset must be nonempty".into()));
        }
        if elements[0] == 0 {
            return Err(Error::Validation("vertex labels are 1-based".into()));
        }
        if !elements.windows(2).all(|w| w[0] < w[1]) {
            return Err(Error::Validation(format!(
                "elements must be strictly increasing, got {elements:?}"
            )));
        }
        Ok(Self { elements })
    }

    /// Like [`KSubset::new`] but sorts first and rejects duplicates.
    pub fn from_unsorted(mut elements: Vec<u32>) -> Result<Self> {
        elements.sort_unstable();
        Self::new(elements)
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        // Invariant: constructors reject empty element lists.
        false
    }

    pub fn elements(&self) -> &[u32] {
        &self.elements
    }

    pub fn contains(&self, v: u32) -> bool {
        self.elements.binary_search(&v).is_ok()
    }

    pub fn max(&self) -> u32 {
        *self.elements.last().unwrap()
    }
}

impl std::fmt::Display for KSubset {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut first = true;
        for v in &self.elements {
            if !first {
                write!(f, " ")?;
            }
            write!(f, "{v}")?;
            first = false;
        }
        Ok(())
    }
}

/// 0-based position of `s` in the lexicographic order of all sorted
/// u-subsets of `{1..m}`. Inverse of [`unrank_lex`].
pub fn rank_lex(s: &KSubset, m: u32) -> Result<u64> {
    if s.max() > m {
        return Err(Error::Validation(format!(
            "subset {s} is not contained in {{1..{m}}}"
        )));
    }
    let u = s.len() as u64;
    let mut rank = 0u64;
    let mut prev = 0u32;
    for (t, &v) in s.elements().iter().enumerate() {
        // Count subsets that agree on the first t elements but pick a
        // smaller value here.
        for w in prev + 1..v {
            rank += binom((m - w) as u64, u - t as u64 - 1)?;
        }
        prev = v;
    }
    Ok(rank)
}

/// The u-subset of `{1..m}` with lexicographic rank `r`.
pub fn unrank_lex(r: u64, m: u32, u: u32) -> Result<KSubset> {
    if u == 0 || u > m {
        return Err(Error::InvalidParameter(format!(
            "need 1 <= u <= m, got u={u}, m={m}"
        )));
    }
    let total = binom(m as u64, u as u64)?;
    if r >= total {
        return Err(Error::IndexOutOfRange {
            index: r as usize,
            limit: total as usize,
        });
    }
    let mut rest = r;
    let mut elements = Vec::with_capacity(u as usize);
    let mut v = 1u32;
    for t in 0..u {
        loop {
            let below = binom((m - v) as u64, (u - t - 1) as u64)?;
            if rest < below {
                elements.push(v);
                v += 1;
                break;
            }
            rest -= below;
            v += 1;
        }
    }
    Ok(KSubset { elements })
}

/// Iterator over all k-element subsets of `{0..n-1}` in lexicographic
/// order, yielded as sorted index vectors. `k = 0` yields the empty set.
pub fn combinations(n: usize, k: usize) -> Combinations {
    Combinations {
        n,
        k,
        state: None,
        done: k > n,
    }
}

pub struct Combinations {
    n: usize,
    k: usize,
    state: Option<Vec<usize>>,
    done: bool,
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        match &mut self.state {
            None => {
                let first: Vec<usize> = (0..self.k).collect();
                self.state = Some(first.clone());
                Some(first)
            }
            Some(cur) => {
                // Find the rightmost position that can still advance.
                let mut t = self.k;
                while t > 0 && cur[t - 1] == self.n - self.k + t - 1 {
                    t -= 1;
                }
                if t == 0 {
                    self.done = true;
                    return None;
                }
                cur[t - 1] += 1;
                for j in t..self.k {
                    cur[j] = cur[j - 1] + 1;
                }
                Some(cur.clone())
            }
        }
    }
}

/// Incidence matrix of the complete u-uniform hypergraph on `{1..m}`:
/// rows are vertices, columns are u-subsets in lexicographic order, and
/// bit (i, j) is set iff vertex i lies in the j-th subset.
///
/// Every column has exactly u ones; every row has exactly C(m-1, u-1).
pub fn incidence_matrix(m: u32, u: u32) -> Result<BitMatrix> {
    if u == 0 || u > m {
        return Err(Error::InvalidParameter(format!(
            "need 1 <= u <= m, got u={u}, m={m}"
        )));
    }
    let cols = binom_usize(m as u64, u as u64)?;
    (m as usize)
        .checked_mul(cols)
        .ok_or_else(|| Error::Capacity(format!("{m} x {cols} incidence matrix too large")))?;
    let mut a = BitMatrix::zeros(m as usize, cols);
    for (j, subset) in combinations(m as usize, u as usize).enumerate() {
        for v in subset {
            a.set(v, j, true);
        }
    }
    Ok(a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn binom_values() {
        assert_eq!(binom(6, 2).unwrap(), 15);
        assert_eq!(binom(7, 2).unwrap(), 21);
        assert_eq!(binom(9, 0).unwrap(), 1);
        assert_eq!(binom(0, 0).unwrap(), 1);
        assert_eq!(binom(3, 5).unwrap(), 0);
        assert_eq!(binom(52, 5).unwrap(), 2_598_960);
    }

    #[test]
    fn binom_overflow_is_loud() {
        let err = binom(400, 200).unwrap_err();
        assert!(matches!(err, Error::Capacity(_)));
    }

    #[test]
    fn binom_large_but_representable() {
        // C(64, 32) is within an order of magnitude of u64::MAX and must stay exact.
        assert_eq!(binom(64, 32).unwrap(), 1_832_624_140_942_590_534);
    }

    fn ks(elems: &[u32]) -> KSubset {
        KSubset::new(elems.to_vec()).unwrap()
    }

    #[test]
    fn rank_matches_column_labels() {
        assert_eq!(rank_lex(&ks(&[1, 2]), 6).unwrap(), 0);
        assert_eq!(rank_lex(&ks(&[5, 6]), 6).unwrap(), 14);
        assert_eq!(rank_lex(&ks(&[1, 2, 3]), 9).unwrap(), 0);
    }

    #[test]
    fn unrank_matches_column_labels() {
        assert_eq!(unrank_lex(0, 6, 2).unwrap(), ks(&[1, 2]));
        assert_eq!(unrank_lex(14, 6, 2).unwrap(), ks(&[5, 6]));
        assert_eq!(unrank_lex(2, 4, 1).unwrap(), ks(&[3]));
    }

    #[test]
    fn unrank_out_of_range() {
        assert!(matches!(
            unrank_lex(15, 6, 2),
            Err(Error::IndexOutOfRange { .. })
        ));
    }

    #[test]
    fn invalid_subsets_rejected() {
        assert!(KSubset::new(vec![]).is_err());
        assert!(KSubset::new(vec![0, 1]).is_err());
        assert!(KSubset::new(vec![2, 2]).is_err());
        assert!(KSubset::new(vec![3, 1]).is_err());
        assert!(rank_lex(&ks(&[5, 9]), 6).is_err());
    }

    #[test]
    fn roundtrip_exhaustive_small() {
        for m in 1..=12u32 {
            for u in 1..=m {
                let total = binom(m as u64, u as u64).unwrap();
                let mut prev: Option<KSubset> = None;
                for r in 0..total {
                    let s = unrank_lex(r, m, u).unwrap();
                    assert_eq!(rank_lex(&s, m).unwrap(), r);
                    if let Some(p) = &prev {
                        assert!(p < &s, "lexicographic order broken at rank {r}");
                    }
                    prev = Some(s);
                }
            }
        }
    }

    #[test]
    fn combinations_match_unrank() {
        for (j, c) in combinations(6, 2).enumerate() {
            let shifted: Vec<u32> = c.iter().map(|&v| v as u32 + 1).collect();
            assert_eq!(KSubset::new(shifted).unwrap(), unrank_lex(j as u64, 6, 2).unwrap());
        }
        assert_eq!(combinations(5, 0).count(), 1);
        assert_eq!(combinations(4, 5).count(), 0);
    }

    #[test]
    fn incidence_uniformity_and_regularity() {
        for m in 1..=16u32 {
            for u in 1..=m {
                let a = incidence_matrix(m, u).unwrap();
                let row_ones = binom((m - 1) as u64, (u - 1) as u64).unwrap();
                for i in 0..a.rows() {
                    assert_eq!(a.row(i).count_ones() as u64, row_ones, "row {i} of K_{m}^{u}");
                }
                for j in 0..a.cols() {
                    let col_ones = (0..a.rows()).filter(|&i| a.get(i, j)).count();
                    assert_eq!(col_ones, u as usize, "column {j} of K_{m}^{u}");
                }
            }
        }
    }

    #[test]
    fn incidence_spot_values() {
        // Column {1,2} of K_6^2 contains vertices 1 and 2 only.
        let a = incidence_matrix(6, 2).unwrap();
        assert!(a.get(0, 0));
        assert!(a.get(1, 0));
        assert!(!a.get(2, 0));
        // K_u^u has a single all-ones column.
        let b = incidence_matrix(4, 4).unwrap();
        assert_eq!(b.cols(), 1);
        assert!((0..4).all(|i| b.get(i, 0)));
    }

    proptest! {
        #[test]
        fn roundtrip_random(m in 1u32..=30, seed in 0u64..1_000_000) {
            let u = 1 + (seed % m as u64) as u32;
            let total = binom(m as u64, u as u64).unwrap();
            let r = seed.wrapping_mul(0x9E3779B97F4A7C15) % total;
            let s = unrank_lex(r, m, u).unwrap();
            prop_assert_eq!(rank_lex(&s, m).unwrap(), r);
            prop_assert_eq!(s.len(), u as usize);
        }
    }
}
