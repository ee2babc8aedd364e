//! Annotated graph parameters, a model checker for CMSO with parameter-bounded
//! set quantifiers and disjoint-paths atoms, and experiment harnesses around
//! boundaried graphs and tree decompositions. Everything is exact and aimed at
//! small graphs.

pub mod decomp;
pub mod error;
pub mod eval;
pub mod folio;
pub mod graph;
pub mod lab;
pub mod logic;
pub mod minors;
pub mod params;
pub mod rewrite;
pub mod vset;

pub use error::{Error, Result};
pub use vset::VertexSet;
