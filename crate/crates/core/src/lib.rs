//! Locally decodable codes from one-factorizations of complete hypergraphs.
//!
//! The pipeline implemented here:
//!
//! 1. [`combinatorics`] enumerates and ranks the u-element subsets of
//!    `{1..m}` (the edges of the complete hypergraph) and builds incidence
//!    matrices.
//! 2. [`baranyai`] partitions all u-subsets into parallel classes, each a
//!    perfect matching of the vertex set. Two independent constructions
//!    (round-robin rotation for pairs, an integral-flow method in general)
//!    plus a backtracking oracle cross-check each other.
//! 3. [`gf2`] supplies bit-packed linear algebra over the two-element field.
//! 4. [`ldc`] assembles the code: the generator matrix is the complemented
//!    incidence matrix, and the parallel classes become the decoder's query
//!    sets. A ρ-query local decoder recovers any message bit by reading one
//!    random class.
//! 5. [`channel`] produces corruption patterns, both random and adversarial,
//!    so the decoding guarantee can be checked exactly.
//!
//! All randomness is caller-supplied and seeded; see [`rng`] for the
//! deterministic per-trial derivation used in experiments.

pub mod baranyai;
pub mod channel;
pub mod combinatorics;
mod error;
pub mod gf2;
pub mod ldc;
pub mod rng;

pub use error::{Error, Result};

/// Exact rational arithmetic used for probabilities and code parameters.
pub type Rational = num_rational::Ratio<i64>;
