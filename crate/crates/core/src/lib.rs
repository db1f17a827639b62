//! Power graphs and directed power graphs of finite groups.
//!
//! * [`groups`]: Cayley-table groups, the catalog spec language, element arithmetic.
//! * [`powergraph`]: simple graphs and digraphs, and the power-graph builders.
//! * [`analysis`]: closed-twin classes, root counts, maximal cyclic subgroups, covers.
//! * [`isocheck`]: canonical forms and isomorphism tests.
//! * [`reconstruct`]: recovering arc directions from an unlabeled power graph.
//! * [`catalog`]: the nilpotent catalog and the isomorphism sweeps over it.
//! * [`graphio`]: edge-list and DOT formats.

pub mod analysis;
pub mod catalog;
pub mod graphio;
pub mod groups;
pub mod isocheck;
pub mod powergraph;
pub mod reconstruct;

pub use groups::{FiniteGroup, GroupSpec};
pub use powergraph::{directed_power_graph, power_graph, DiGraph, Graph};
