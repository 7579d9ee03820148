//! Power, enhanced power and difference graphs of finite abelian groups with
//! exactly two Sylow subgroups, and reconstruction of the group from an
//! unlabeled difference graph.

pub mod abelian;
mod bits;
pub mod classes;
pub mod error;
pub mod graph;
pub mod group_graphs;
pub mod harness;
pub mod io;
pub mod reconstruct;

pub use abelian::{make_group, GroupElement, GroupSpec, Params, SylowSpec};
pub use error::{Error, Result};
pub use graph::SimpleGraph;
pub use group_graphs::{difference_graph, LabeledDiffGraph};
pub use io::{parse_group_spec, GraphFile};
pub use reconstruct::{reconstruct, ReconstructionReport};
