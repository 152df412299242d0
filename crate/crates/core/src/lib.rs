//! Size bounds, extremal constructions and exhaustive search for bipartite
//! graphs without 4-cycles (girth 6) or without 4- and 6-cycles (girth 8).
//!
//! - [`graph`]: the bipartite graph type, girth, paths of length 3, pruning
//!   and contraction.
//! - [`bounds`]: exact evaluation and integer inversion of the size bounds.
//! - [`constructions`]: the families that meet them, including `PG(2, q)` and
//!   the symplectic quadrangle `W(q)`.
//! - [`meanineq`]: the two-sided mean inequality on nonnegative matrices that
//!   underlies the girth-8 bound.
//! - [`search`]: exhaustive branch-and-bound for small extremal values.
//!
//! The crate is `no_std` and needs only `alloc`.
#![cfg_attr(not(any(test, feature = "std")), no_std)]
#![deny(unsafe_code)]

extern crate alloc;

pub mod bounds;
pub mod constructions;
pub mod geometry;
pub mod graph;
pub mod meanineq;
pub mod search;

pub use bounds::{BoundReport, GirthTarget, Method};
pub use graph::{BipartiteGraph, Edge, GirthReport, SimpleGraph, Vertex};
pub use meanineq::{IneqVerdict, NonnegMatrix};
pub use search::{SearchCertificate, SearchLimits};
