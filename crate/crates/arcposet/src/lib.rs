//! Arc diagrams on a line of labeled vertices, rook matrices in one-line
//! notation, and the partial order they share.
//!
//! The library is organized around one bijection: an arc diagram on `n`
//! vertices (equivalently, a set partition of `{1..n}`) corresponds to a
//! strictly upper-triangular rook matrix, an arc `(i, j)` meaning "column `j`
//! holds value `i`". Cover moves on diagrams (sliding an arc endpoint,
//! uncrossing a pair, adding an arc) match length-increment moves on rooks,
//! so the diagram poset can be studied with rook tools and vice versa.
//!
//! Modules:
//!
//! - [`arc_diagrams`]: diagrams, set partitions, depth/crossing statistics,
//!   the two index statistics `t` and `c`, native cover generation, and
//!   exhaustive enumeration.
//! - [`rook_monoid`]: rooks, the length statistic and its two formulas,
//!   generator moves and cover characterizations, order oracles per
//!   universe, idempotents and rank strata, and the diagram/rook bijection.
//! - [`poset`]: generic finite-poset machinery (transitive reduction,
//!   grading, intervals, lattice tests, Möbius function, isomorphism
//!   testing, EL-labeling verification, DOT and JSON export).
//! - [`theorems`]: orchestrated, reproducible structure checks returning
//!   serializable reports.
//! - [`qstirling`]: exact q-polynomials: the bracket generating function,
//!   its recurrence, Garsia-Remmel q-Stirling numbers, staircase rook
//!   polynomials, and the identities tying them together.
//! - [`report`]: the shared check-report type the CLI serializes.

#![forbid(unsafe_code)]

pub mod arc_diagrams;
pub mod poset;
pub mod qstirling;
pub mod report;
pub mod rook_monoid;
pub mod theorems;

mod bitmat;
mod error;

pub use error::{Error, ParseError};
