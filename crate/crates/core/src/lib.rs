//! Graph inverse semigroups, their orthogonal completions and the
//! Cuntz-Krieger quotient, with two independent concrete models used to
//! cross-check the symbolic one.

pub mod branching;
pub mod bratteli;
pub mod ck;
pub mod element;
pub mod eval;
pub mod graph;
pub mod groupoid;
pub mod lenz;
pub mod omega;
pub mod ortho;
pub mod props;
pub mod report;
pub mod samples;
pub mod syntax;

pub use ck::{CkElement, CkError, CkSemigroup};
pub use element::{GisElement, GreenRelation};
pub use graph::{DirectedGraph, EdgeId, GraphError, Path, VertexId};
pub use lenz::{ArrowWitness, Lenz, LenzError};
pub use ortho::{OrthoError, OrthoSet};
