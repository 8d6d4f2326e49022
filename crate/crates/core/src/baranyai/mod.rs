//! Partitions of the complete u-uniform hypergraph into parallel classes.
//!
//! When u divides m, the C(m,u) u-subsets of `{1..m}` can be split into
//! k = C(m-1,u-1) classes such that each class is a perfect matching of
//! the vertex set. Three routes are provided:
//!
//! * [`round_robin_factorization`] — the deterministic circle method for
//!   u = 2;
//! * [`baranyai_flow`] — the general construction, which introduces one
//!   vertex per stage and routes it through an integral max-flow;
//! * [`exact_cover_factorization`] — an independent backtracking oracle
//!   for cross-validation on small instances.
//!
//! Partitions are immutable once built and shareable across threads.
//! Construction itself is single-threaded (the stage loop is sequential).

mod exact_cover;
mod maxflow;

pub use exact_cover::{exact_cover_factorization, exact_cover_factorization_with_budget};

use std::collections::BTreeMap;

use crate::combinatorics::{binom, binom_usize, combinations, KSubset};
use crate::error::{Error, Result};
use maxflow::FlowNetwork;

/// One parallel class: pairwise disjoint u-subsets covering every vertex
/// exactly once. Blocks are kept in ascending order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParallelClass {
    blocks: Vec<KSubset>,
}

impl ParallelClass {
    pub fn new(mut blocks: Vec<KSubset>) -> Self {
        blocks.sort();
        Self { blocks }
    }

    pub fn blocks(&self) -> &[KSubset] {
        &self.blocks
    }
}

/// A partition of all u-subsets of a vertex set into parallel classes.
///
/// The vertex set is usually `{1..m}` but relabeling can move a partition
/// onto any label set. Structural validity is checked by [`Self::verify`],
/// not enforced by construction, so that broken inputs can be diagnosed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BaranyaiPartition {
    vertices: Vec<u32>,
    block_size: u32,
    classes: Vec<ParallelClass>,
}

impl BaranyaiPartition {
    /// `vertices` must be sorted, distinct and 1-based.
    pub fn new(vertices: Vec<u32>, block_size: u32, classes: Vec<ParallelClass>) -> Result<Self> {
        if vertices.is_empty() || vertices[0] == 0 {
            return Err(Error::Validation("vertex labels are 1-based".into()));
        }
        if !vertices.windows(2).all(|w| w[0] < w[1]) {
            return Err(Error::Validation(
                "vertex set must be sorted and duplicate-free".into(),
            ));
        }
        if block_size == 0 {
            return Err(Error::InvalidParameter("block size must be positive".into()));
        }
        Ok(Self {
            vertices,
            block_size,
            classes,
        })
    }

    pub fn vertices(&self) -> &[u32] {
        &self.vertices
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn block_size(&self) -> u32 {
        self.block_size
    }

    pub fn classes(&self) -> &[ParallelClass] {
        &self.classes
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    /// Full structural check; see [`Violation`] for what is reported.
    pub fn verify(&self) -> Verdict {
        let mut violations = Vec::new();
        let m = self.vertices.len() as u64;
        let u = self.block_size as u64;

        let expected_classes = binom(m - 1, u - 1).unwrap_or(u64::MAX);
        if self.classes.len() as u64 != expected_classes {
            violations.push(Violation::WrongClassCount {
                expected: expected_classes,
                actual: self.classes.len(),
            });
        }

        // (a) every class is a perfect matching of the vertex set
        for (ci, class) in self.classes.iter().enumerate() {
            let mut coverage: BTreeMap<u32, usize> =
                self.vertices.iter().map(|&v| (v, 0)).collect();
            for (bi, block) in class.blocks().iter().enumerate() {
                if block.len() != self.block_size as usize {
                    violations.push(Violation::WrongBlockSize {
                        class: ci,
                        block: bi,
                        expected: self.block_size as usize,
                        actual: block.len(),
                    });
                }
                for &v in block.elements() {
                    match coverage.get_mut(&v) {
                        Some(c) => *c += 1,
                        None => violations.push(Violation::ForeignVertex {
                            class: ci,
                            block: bi,
                            vertex: v,
                        }),
                    }
                }
            }
            for (&v, &times) in &coverage {
                if times != 1 {
                    violations.push(Violation::VertexCoverage {
                        class: ci,
                        vertex: v,
                        times,
                    });
                }
            }
        }

        // (b) every u-subset of the vertex set occurs in exactly one class
        let mut seen: BTreeMap<&KSubset, usize> = BTreeMap::new();
        for (ci, class) in self.classes.iter().enumerate() {
            for block in class.blocks() {
                if let Some(&first) = seen.get(block) {
                    violations.push(Violation::DuplicateSubset {
                        subset: block.clone(),
                        classes: (first, ci),
                    });
                } else {
                    seen.insert(block, ci);
                }
            }
        }
        if u <= m {
            for combo in combinations(self.vertices.len(), self.block_size as usize) {
                let subset =
                    KSubset::new(combo.iter().map(|&i| self.vertices[i]).collect()).unwrap();
                if !seen.contains_key(&subset) {
                    violations.push(Violation::MissingSubset { subset });
                }
            }
        }

        Verdict { violations }
    }

    /// Structure-preserving relabeling of the vertex set. The map must be
    /// total on the current vertices and injective; labels stay 1-based.
    pub fn relabel(&self, map: &BTreeMap<u32, u32>) -> Result<BaranyaiPartition> {
        let mut images = Vec::with_capacity(self.vertices.len());
        for &v in &self.vertices {
            let &w = map.get(&v).ok_or_else(|| {
                Error::Validation(format!("relabeling map is missing vertex {v}"))
            })?;
            if w == 0 {
                return Err(Error::Validation("relabeled vertices must stay 1-based".into()));
            }
            images.push(w);
        }
        let mut sorted = images.clone();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Validation("relabeling map is not injective".into()));
        }
        let classes = self
            .classes
            .iter()
            .map(|class| {
                let blocks = class
                    .blocks()
                    .iter()
                    .map(|b| {
                        KSubset::from_unsorted(
                            b.elements().iter().map(|v| map[v]).collect(),
                        )
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(ParallelClass::new(blocks))
            })
            .collect::<Result<Vec<_>>>()?;
        BaranyaiPartition::new(sorted, self.block_size, classes)
    }

    /// Text form: header `baranyai m u k`, then one line per class with
    /// blocks separated by `|` and elements space-separated ascending.
    pub fn to_text(&self) -> String {
        let mut s = format!(
            "baranyai {} {} {}\n",
            self.vertices.len(),
            self.block_size,
            self.classes.len()
        );
        for class in &self.classes {
            let line: Vec<String> = class.blocks().iter().map(|b| b.to_string()).collect();
            s.push_str(&line.join("|"));
            s.push('\n');
        }
        s
    }

    /// Inverse of [`Self::to_text`]. The vertex set is recovered as the
    /// union of all block labels and must have the size the header claims.
    pub fn from_text(text: &str) -> Result<BaranyaiPartition> {
        let mut lines = text.lines().enumerate();
        let (_, header) = lines.next().ok_or(Error::Parse {
            line: 1,
            message: "missing header".into(),
        })?;
        let fields: Vec<&str> = header.split_whitespace().collect();
        if fields.len() != 4 || fields[0] != "baranyai" {
            return Err(Error::Parse {
                line: 1,
                message: format!("expected 'baranyai m u k', got {header:?}"),
            });
        }
        let parse_num = |s: &str, what: &str| {
            s.parse::<u32>().map_err(|_| Error::Parse {
                line: 1,
                message: format!("bad {what}: {s:?}"),
            })
        };
        let m = parse_num(fields[1], "vertex count")?;
        let u = parse_num(fields[2], "block size")?;
        let k = parse_num(fields[3], "class count")?;

        let mut classes = Vec::with_capacity(k as usize);
        let mut vertex_union = std::collections::BTreeSet::new();
        for _ in 0..k {
            let (idx, line) = lines.next().ok_or(Error::Parse {
                line: k as usize + 1,
                message: format!("expected {k} class lines"),
            })?;
            let lineno = idx + 1;
            let mut blocks = Vec::new();
            for chunk in line.split('|') {
                let elems = chunk
                    .split_whitespace()
                    .map(|t| {
                        t.parse::<u32>().map_err(|_| Error::Parse {
                            line: lineno,
                            message: format!("bad vertex label {t:?}"),
                        })
                    })
                    .collect::<Result<Vec<u32>>>()?;
                let block = KSubset::new(elems).map_err(|e| Error::Parse {
                    line: lineno,
                    message: e.to_string(),
                })?;
                vertex_union.extend(block.elements().iter().copied());
                blocks.push(block);
            }
            classes.push(ParallelClass::new(blocks));
        }
        if let Some((idx, line)) = lines.find(|(_, l)| !l.trim().is_empty()) {
            return Err(Error::Parse {
                line: idx + 1,
                message: format!("unexpected trailing content: {line:?}"),
            });
        }
        let vertices: Vec<u32> = vertex_union.into_iter().collect();
        if vertices.len() != m as usize {
            return Err(Error::Validation(format!(
                "header claims {m} vertices but blocks mention {}",
                vertices.len()
            )));
        }
        BaranyaiPartition::new(vertices, u, classes)
    }
}

/// Outcome of [`BaranyaiPartition::verify`].
#[derive(Debug, Clone)]
pub struct Verdict {
    violations: Vec<Violation>,
}

impl Verdict {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violations(&self) -> &[Violation] {
        &self.violations
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_valid() {
            return write!(f, "valid");
        }
        writeln!(f, "invalid ({} violations)", self.violations.len())?;
        for v in &self.violations {
            writeln!(f, "  {v}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    WrongClassCount {
        expected: u64,
        actual: usize,
    },
    WrongBlockSize {
        class: usize,
        block: usize,
        expected: usize,
        actual: usize,
    },
    /// A block mentions a vertex outside the partition's vertex set.
    ForeignVertex {
        class: usize,
        block: usize,
        vertex: u32,
    },
    /// A vertex is covered `times != 1` times within one class.
    VertexCoverage {
        class: usize,
        vertex: u32,
        times: usize,
    },
    DuplicateSubset {
        subset: KSubset,
        classes: (usize, usize),
    },
    MissingSubset {
        subset: KSubset,
    },
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Violation::WrongClassCount { expected, actual } => {
                write!(f, "expected {expected} classes, found {actual}")
            }
            Violation::WrongBlockSize {
                class,
                block,
                expected,
                actual,
            } => write!(
                f,
                "class {class} block {block}: expected size {expected}, found {actual}"
            ),
            Violation::ForeignVertex {
                class,
                block,
                vertex,
            } => write!(f, "class {class} block {block}: foreign vertex {vertex}"),
            Violation::VertexCoverage {
                class,
                vertex,
                times,
            } => write!(f, "class {class}: vertex {vertex} covered {times} times"),
            Violation::DuplicateSubset { subset, classes } => write!(
                f,
                "subset {{{subset}}} appears in classes {} and {}",
                classes.0, classes.1
            ),
            Violation::MissingSubset { subset } => {
                write!(f, "subset {{{subset}}} not covered by any class")
            }
        }
    }
}

/// Circle-method one-factorization of the complete graph on `{1..m}`
/// (u = 2, m even): vertex m is fixed and the others rotate.
///
/// The circle is arranged so that round 0 reads off the consecutive pairs
/// {1,2}, {3,4}, ..., {m-1,m}; each later round advances the rotation by
/// one step. Deterministic: the same m always yields the same classes in
/// the same order.
pub fn round_robin_factorization(m: u32) -> Result<BaranyaiPartition> {
    if m < 2 || m % 2 != 0 {
        return Err(Error::Divisibility { m, u: 2 });
    }
    let ring = m - 1;
    // inv[label] = vertex sitting at that circle position.
    let mut inv = vec![0u32; ring as usize];
    inv[0] = ring;
    for t in 1..=(m - 2) / 2 {
        inv[t as usize] = 2 * t - 1;
        inv[(ring - t) as usize] = 2 * t;
    }
    let mut classes = Vec::with_capacity(ring as usize);
    for r in 0..ring {
        let mut blocks = Vec::with_capacity(m as usize / 2);
        blocks.push(KSubset::from_unsorted(vec![m, inv[r as usize]])?);
        for i in 1..=(m - 2) / 2 {
            let a = inv[((r + i) % ring) as usize];
            let b = inv[((r + ring - i) % ring) as usize];
            blocks.push(KSubset::from_unsorted(vec![a, b])?);
        }
        classes.push(ParallelClass::new(blocks));
    }
    BaranyaiPartition::new((1..=m).collect(), 2, classes)
}

/// General factorization of the complete u-uniform hypergraph on `{1..m}`,
/// u | m, by the stagewise integral-flow construction.
///
/// Vertices are introduced one at a time. Each class holds m/u partial
/// blocks ("parts"); the invariant maintained after s stages is that every
/// set A of already-placed vertices occurs as a part exactly C(m-s, u-|A|)
/// times across all classes. Routing the next vertex through a max flow
/// (class nodes capacity 1, part-value nodes with demand
/// C(m-s-1, u-|A|-1)) preserves the invariant; a fractional flow of value
/// (u-|A|)/(m-s) per part certifies feasibility, and integrality of max
/// flow turns it into a concrete choice. The output is valid but not
/// canonical: tie-breaking inside the flow is unspecified.
pub fn baranyai_flow(m: u32, u: u32) -> Result<BaranyaiPartition> {
    if u == 0 || u > m {
        return Err(Error::InvalidParameter(format!(
            "need 1 <= u <= m, got u={u}, m={m}"
        )));
    }
    if m % u != 0 {
        return Err(Error::Divisibility { m, u });
    }
    binom_usize(m as u64, u as u64)?; // capacity check up front
    let k = binom_usize((m - 1) as u64, (u - 1) as u64)?;
    let parts_per_class = (m / u) as usize;

    let mut classes: Vec<Vec<Vec<u32>>> = vec![vec![Vec::new(); parts_per_class]; k];
    for s in 0..m {
        absorb_next_vertex(&mut classes, m, u, s)?;
        if m <= 12 {
            debug_assert!(
                stage_invariant_holds(&classes, m, u, s + 1),
                "stage invariant violated after placing vertex {}",
                s + 1
            );
        }
    }

    let final_classes = classes
        .into_iter()
        .map(|parts| {
            let blocks = parts
                .into_iter()
                .map(|p| {
                    assert_eq!(p.len(), u as usize, "incomplete part after the last stage");
                    KSubset::new(p).expect("parts are built sorted")
                })
                .collect();
            ParallelClass::new(blocks)
        })
        .collect();
    BaranyaiPartition::new((1..=m).collect(), u, final_classes)
}

/// One stage of [`baranyai_flow`]: place vertex s+1 into exactly one part
/// of every class, respecting the per-value demands.
fn absorb_next_vertex(
    classes: &mut [Vec<Vec<u32>>],
    m: u32,
    u: u32,
    s: u32,
) -> Result<()> {
    let k = classes.len();
    let next = s + 1;

    // Distinct incomplete part values, with their demands.
    let mut value_ids: BTreeMap<Vec<u32>, usize> = BTreeMap::new();
    let mut values: Vec<Vec<u32>> = Vec::new();
    for parts in classes.iter() {
        for part in parts {
            if part.len() < u as usize && !value_ids.contains_key(part) {
                value_ids.insert(part.clone(), values.len());
                values.push(part.clone());
            }
        }
    }
    let mut demands = Vec::with_capacity(values.len());
    for value in &values {
        demands.push(binom(
            (m - s - 1) as u64,
            (u as u64) - (value.len() as u64) - 1,
        )?);
    }
    // Each class absorbs the new vertex exactly once, so the demands must
    // add up to the class count; anything else is a fatal bug.
    let total: u64 = demands.iter().sum();
    assert_eq!(
        total, k as u64,
        "demands at stage {s} sum to {total}, expected {k}"
    );

    // source = 0, sink = 1, classes at 2.., values at 2 + k ..
    let mut net = FlowNetwork::new(2 + k + values.len());
    let class_node = |c: usize| 2 + c;
    let value_node = |v: usize| 2 + k + v;
    for c in 0..k {
        net.add_edge(0, class_node(c), 1);
    }
    let mut class_edges: Vec<Vec<(usize, maxflow::EdgeRef)>> = Vec::with_capacity(k);
    for (c, parts) in classes.iter().enumerate() {
        let mut seen = Vec::new();
        let mut edges = Vec::new();
        for part in parts {
            if part.len() < u as usize {
                let vid = value_ids[part];
                if !seen.contains(&vid) {
                    seen.push(vid);
                    edges.push((vid, net.add_edge(class_node(c), value_node(vid), 1)));
                }
            }
        }
        class_edges.push(edges);
    }
    for (vid, &demand) in demands.iter().enumerate() {
        net.add_edge(value_node(vid), 1, demand);
    }

    let flow = net.max_flow(0, 1);
    assert_eq!(
        flow, k as u64,
        "flow infeasible at stage {s}: pushed {flow} of {k}; this must never happen"
    );

    for (c, edges) in class_edges.iter().enumerate() {
        let &(vid, _) = edges
            .iter()
            .find(|(_, e)| net.residual(*e) == 0)
            .expect("a saturating flow selects one value per class");
        let chosen = &values[vid];
        // Equal parts within a class are interchangeable; take the first.
        let part = classes[c]
            .iter_mut()
            .find(|p| p.as_slice() == chosen.as_slice())
            .expect("selected value exists in the class");
        part.push(next); // next exceeds all placed vertices, so order holds
    }
    Ok(())
}

/// Check the stage invariant: after `placed` vertices, every part value A
/// occurs exactly C(m - placed, u - |A|) times across all classes.
fn stage_invariant_holds(classes: &[Vec<Vec<u32>>], m: u32, u: u32, placed: u32) -> bool {
    let mut counts: BTreeMap<&[u32], u64> = BTreeMap::new();
    for parts in classes {
        for part in parts {
            *counts.entry(part.as_slice()).or_insert(0) += 1;
        }
    }
    counts.iter().all(|(value, &count)| {
        let expected = binom((m - placed) as u64, (u as u64) - (value.len() as u64));
        expected.map(|e| e == count).unwrap_or(false)
    })
}
