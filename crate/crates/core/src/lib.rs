//! Diameter-2-critical graphs.
//!
//! A graph is diameter-2-critical (D2C) when its diameter is 2 and deleting any
//! edge raises the diameter. This crate provides:
//!
//! - [`graph`], [`graph6`], [`canon`]: small bit-parallel graphs, graph6 I/O and
//!   canonical labelling;
//! - [`d2c`]: edge criticality, the D2C test, dominating edges and the vertex
//!   partition around a dominating edge;
//! - [`certificate`]: the X/Y split, the injective edge-to-non-edge assignment,
//!   the induced orientation and the edge-count bounds they certify;
//! - [`families`]: constructors and recognizers for the extremal families;
//! - [`enumerate`]: isomorph-free generation and the extremal census;
//! - [`analysis`]: one-stop per-graph records as emitted by the CLI.

pub mod analysis;
pub mod bits;
pub mod canon;
pub mod certificate;
pub mod d2c;
pub mod enumerate;
pub mod error;
pub mod families;
pub mod graph;
pub mod graph6;
mod par;

pub use par::parallel_enabled;

pub use bits::VertexSet;
pub use canon::{are_isomorphic, canonical_form, CanonicalForm};
pub use error::{Error, Result};
pub use graph::{Diameter, Graph, VertexPair};
pub use graph6::{parse_graph6, to_graph6};

/// `floor(n^2 / 4)`, the Murty-Simon bound.
#[inline]
pub const fn murty_simon_bound(n: usize) -> usize {
    n * n / 4
}

/// `floor((n-1)^2 / 4) + 1`, the strengthened bound for non-bipartite graphs.
#[inline]
pub const fn strengthened_bound(n: usize) -> usize {
    if n == 0 {
        1
    } else {
        (n - 1) * (n - 1) / 4 + 1
    }
}
