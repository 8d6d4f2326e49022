//! Backtracking oracle: builds a factorization by repeatedly extracting a
//! perfect matching via exact-cover search over the not-yet-used subsets.
//!
//! This deliberately shares no construction machinery with the flow-based
//! method in the parent module; its whole purpose is to cross-validate it
//! on small instances. On anything large it declares a timeout rather than
//! guess.

use super::{BaranyaiPartition, ParallelClass};
use crate::combinatorics::{binom_usize, combinations, KSubset};
use crate::error::{Error, Result};

const DEFAULT_STEP_BUDGET: u64 = 50_000_000;

pub fn exact_cover_factorization(m: u32, u: u32) -> Result<BaranyaiPartition> {
    exact_cover_factorization_with_budget(m, u, DEFAULT_STEP_BUDGET)
}

pub fn exact_cover_factorization_with_budget(
    m: u32,
    u: u32,
    step_budget: u64,
) -> Result<BaranyaiPartition> {
    if u == 0 || u > m {
        return Err(Error::InvalidParameter(format!(
            "need 1 <= u <= m, got u={u}, m={m}"
        )));
    }
    if m % u != 0 {
        return Err(Error::Divisibility { m, u });
    }
    if m > 64 {
        return Err(Error::Capacity(format!(
            "exact-cover oracle packs vertex sets into u64 masks; m={m} > 64"
        )));
    }
    let count = binom_usize(m as u64, u as u64)?;
    let mut masks = Vec::with_capacity(count);
    let mut by_vertex: Vec<Vec<usize>> = vec![Vec::new(); m as usize];
    for (id, subset) in combinations(m as usize, u as usize).enumerate() {
        let mut mask = 0u64;
        for &v in &subset {
            mask |= 1 << v;
            by_vertex[v].push(id);
        }
        masks.push(mask);
    }
    let full_mask = if m == 64 { u64::MAX } else { (1u64 << m) - 1 };

    let mut search = Search {
        masks: &masks,
        by_vertex: &by_vertex,
        full_mask,
        used: vec![false; count],
        remaining: count,
        classes: Vec::new(),
        current: Vec::new(),
        covered: 0,
        steps: 0,
        budget: step_budget,
    };
    match search.run()? {
        true => {
            let u_usize = u as usize;
            let classes = search
                .classes
                .iter()
                .map(|ids| {
                    let blocks = ids
                        .iter()
                        .map(|&id| {
                            let elems: Vec<u32> = (0..m)
                                .filter(|&v| masks[id] >> v & 1 == 1)
                                .map(|v| v + 1)
                                .collect();
                            debug_assert_eq!(elems.len(), u_usize);
                            KSubset::new(elems).expect("mask decodes to a valid subset")
                        })
                        .collect();
                    ParallelClass::new(blocks)
                })
                .collect();
            BaranyaiPartition::new((1..=m).collect(), u, classes)
        }
        // Unreachable for u | m (a factorization always exists and the
        // class-symmetry pruning below is exhaustive), but never lie.
        false => Err(Error::Validation(
            "exact-cover search exhausted without finding a factorization".into(),
        )),
    }
}

struct Search<'a> {
    masks: &'a [u64],
    by_vertex: &'a [Vec<usize>],
    full_mask: u64,
    used: Vec<bool>,
    remaining: usize,
    classes: Vec<Vec<usize>>,
    current: Vec<usize>,
    covered: u64,
    steps: u64,
    budget: u64,
}

impl Search<'_> {
    /// Ok(true): factorization found (in `classes`). Ok(false): this branch
    /// is exhausted. Err: step budget ran out.
    fn run(&mut self) -> Result<bool> {
        if self.covered == self.full_mask {
            let done = std::mem::take(&mut self.current);
            self.classes.push(done);
            self.covered = 0;
            let res = self.run();
            if !matches!(res, Ok(false)) {
                return res;
            }
            self.current = self.classes.pop().unwrap();
            self.covered = self.full_mask;
            return Ok(false);
        }
        if self.remaining == 0 {
            // Complete classes account for a multiple of m vertex slots,
            // so an exhausted pool always lands on a class boundary.
            debug_assert_eq!(self.covered, 0);
            return Ok(true);
        }
        if self.covered == 0 {
            // Start of a class. Classes are interchangeable, so the block
            // containing vertex 1 can be pinned to the lexicographically
            // least unused candidate: any solution can be reordered so that
            // the class using it comes next.
            let Some(&id) = self.by_vertex[0].iter().find(|&&id| !self.used[id]) else {
                // Subsets remain but none contains vertex 1: dead end.
                return Ok(false);
            };
            return self.descend(id);
        }
        let v = (!self.covered & self.full_mask).trailing_zeros() as usize;
        for idx in 0..self.by_vertex[v].len() {
            let id = self.by_vertex[v][idx];
            if self.used[id] || self.masks[id] & self.covered != 0 {
                continue;
            }
            let res = self.descend(id)?;
            if res {
                return Ok(true);
            }
        }
        Ok(false)
    }

    fn descend(&mut self, id: usize) -> Result<bool> {
        self.steps += 1;
        if self.steps > self.budget {
            return Err(Error::OracleTimeout { steps: self.steps });
        }
        self.used[id] = true;
        self.remaining -= 1;
        self.covered |= self.masks[id];
        self.current.push(id);
        let res = self.run();
        if matches!(res, Ok(false)) {
            self.current.pop();
            self.covered &= !self.masks[id];
            self.remaining += 1;
            self.used[id] = false;
        }
        res
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unique_factorization_of_k4() {
        let p = exact_cover_factorization(4, 2).unwrap();
        assert!(p.verify().is_valid());
        let blocks: Vec<Vec<Vec<u32>>> = p
            .classes()
            .iter()
            .map(|c| c.blocks().iter().map(|b| b.elements().to_vec()).collect())
            .collect();
        assert_eq!(
            blocks,
            vec![
                vec![vec![1, 2], vec![3, 4]],
                vec![vec![1, 3], vec![2, 4]],
                vec![vec![1, 4], vec![2, 3]],
            ]
        );
    }

    #[test]
    fn trivial_single_block() {
        let p = exact_cover_factorization(3, 3).unwrap();
        assert_eq!(p.class_count(), 1);
        assert!(p.verify().is_valid());
    }

    #[test]
    fn pairs_on_six_vertices() {
        let p = exact_cover_factorization(6, 2).unwrap();
        assert_eq!(p.class_count(), 5);
        assert!(p.verify().is_valid());
    }

    #[test]
    fn triples_on_nine_vertices() {
        let p = exact_cover_factorization(9, 3).unwrap();
        assert_eq!(p.class_count(), 28);
        assert!(p.verify().is_valid());
    }

    #[test]
    fn budget_exhaustion_is_declared() {
        let err = exact_cover_factorization_with_budget(12, 2, 3).unwrap_err();
        assert!(matches!(err, Error::OracleTimeout { .. }));
    }

    #[test]
    fn non_divisible_rejected() {
        assert!(matches!(
            exact_cover_factorization(7, 2),
            Err(Error::Divisibility { .. })
        ));
    }
}
