//! Exact computation on G-independent hypercubes.
//!
//! `Q(G)` is the family of independent sets of a graph `G` on `[n]`, ordered
//! by inclusion. The crate enumerates it, evaluates closed forms for the path
//! `P_n`, computes widths with Dilworth certificates, and runs the batch
//! audits exposed by the `gcube` binary.

pub mod bigreal;
pub mod chains;
pub mod cube;
pub mod error;
pub mod experiments;
pub mod formulas;
pub mod graph;
pub mod set;
pub mod width;

pub use cube::Family;
pub use error::{Error, Result};
pub use graph::{Graph, PartSpec};
pub use set::{VertexSet, MAX_VERTICES};
pub use width::WidthReport;

/// Exact non-negative integer count.
pub type BigCount = num_bigint::BigUint;
