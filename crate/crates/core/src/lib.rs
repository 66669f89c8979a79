//! Strong δ-hyperbolicity for finite directed graphs and for Cayley-graph
//! balls of finitely generated monoids.
//!
//! The crate is organised bottom-up:
//!
//! * [`digraph`]: finite digraphs as semimetric spaces (distances, balls,
//!   strongly connected components, the sink and bidirection constructions).
//! * [`hyperbolicity`]: exact minimal thinness constant δ* over all geodesic
//!   triangles, plus the triangle / polygon quasi-inequality constants.
//! * [`tessellation`]: directed 2-complexes, 2-paths, parallel-path filling,
//!   triangle subdivision and Dehn-function estimation.
//! * [`monoid`]: presentations, rewriting-based word-problem oracles, Cayley
//!   balls, the example monoids and the zero / Rees-quotient constructions.
//! * [`greens`]: Green's relations: exact computation on finite tables and
//!   bounded-search deciders driven by the hyperbolicity constants.

pub mod digraph;
pub mod error;
pub mod greens;
pub mod hyperbolicity;
pub mod monoid;
pub mod rational;
pub mod tessellation;

pub use digraph::{
    all_pairs_distances, DistanceMatrix, Digraph, Edge, ExtDistance, Path, VertexId,
};
pub use error::{Error, Result};
