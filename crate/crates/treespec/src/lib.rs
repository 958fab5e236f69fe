//! Exact arithmetic toolkit for spanning-tree counts of multigraphs and for
//! the constructive side of the tree spectrum: which numbers of spanning
//! trees are realized by planar graphs with few vertices.
//!
//! The crate is organized around one object: a *witness*, a planar graph `G`
//! together with a marked edge `e`, carrying the vector
//! `(t, u) = (tau(G/e), tau(G - e))` of spanning-tree counts after
//! contracting and after deleting the marked edge. Three local surgeries
//! (subdividing the marked edge, stacking a triangle on it, stacking a
//! triangle and moving the mark) act on that vector as integer 2x2 matrices,
//! so families of graphs become families of matrix words.
//!
//! Modules:
//! - [`algebra`]: exact 2x2 integer matrices, the surgery matrices, extended
//!   gcd, and closed-form word counts.
//! - [`graph`]: multigraphs, exact spanning-tree counts (fraction-free
//!   determinant and brute-force enumeration), contraction/deletion, census
//!   of small-graph tree counts, and the text/DOT/JSON formats.
//! - [`witness`]: witness graphs, the three surgeries, word building, and
//!   cycle gluing.
//! - [`spectrum`]: enumeration and decoding of the vectors reachable by
//!   surgery words, and pigeonhole extraction of large tree-count sets.
//! - [`regular`]: assembly of arbitrarily many k-regular graphs on a common
//!   vertex count with pairwise distinct tree counts.
//! - [`modular`]: word search in SL2 over Z/N hitting any residue of the
//!   tree count, with graph-backed certificates of O(log N) size.
//! - [`cfrac`]: continued fractions as matrix words, modular evaluation, and
//!   certificates for denominators with small partial quotients.

pub mod algebra;
pub mod cfrac;
pub mod graph;
pub mod modular;
pub mod regular;
pub mod spectrum;
pub mod witness;
