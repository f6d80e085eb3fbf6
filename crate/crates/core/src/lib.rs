//! Biclique graphs of small graphs.
//!
//! The crate enumerates bicliques (maximal induced complete bipartite
//! subgraphs), builds biclique graphs `KB(H)`, reduces false twins, checks
//! the diamond/gem condition on induced P3s, removes degree-2 vertices of
//! biclique graphs constructively, and sweeps exhaustive atlases of small
//! connected graphs to check counts and gather evidence on open questions.

pub mod atlas;
pub mod bicliques;
pub mod cli;
pub mod conditions;
pub mod error;
pub mod graph;
pub mod kb;
pub mod lab;
pub mod removal;
pub mod twins;

pub use error::{Error, Result};
pub use graph::{Graph, VertexSet};
