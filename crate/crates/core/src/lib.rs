//! Minimal presentations and Betti tables of 0-dimensional persistent homology
//! of poset-filtered graphs.

pub mod bench;
pub mod betti2d;
pub mod collapse;
pub mod dendrogram;
pub mod error;
pub mod fixtures;
pub mod gen;
pub mod grade;
pub mod graph;
pub mod io;
pub mod minpres;
pub mod multicritical;
pub mod oracle;
pub mod partition;
pub mod scalar;

pub use betti2d::{betti_r2, witness_grade, BettiReport};
pub use dendrogram::Backend;
pub use error::{
    DendrogramError, GradeError, GraphError, MultiCriticalError, OracleError, ParseError,
};
pub use grade::{FinitePoset, Grade, Poset};
pub use graph::FilteredGraph;
pub use minpres::{minimal_presentation, BettiTable, SparsePresentation};
pub use multicritical::{minimal_join_edges, one_criticalize, MultiCriticalGraph, Provenance};
pub use scalar::{Extended, Rational};
