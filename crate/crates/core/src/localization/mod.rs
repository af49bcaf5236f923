//! Torus localization on moduli of genus-zero stable maps to the line: the
//! graph sums for closed descendant invariants and for disk invariants.

pub mod formula;
pub mod graph;
pub mod psi;

pub use formula::{
    closed_descendant, disk_factor, graph_contributions, graph_sum, open_invariant, open_via_closed,
    DiskFactor, GraphContribution, MarkingSpec,
};
pub use graph::{enumerate_graphs, graphs_to_json, labeled_graphs, DecoratedGraph, GraphClass};
pub use psi::{edge_factor, psi_integral, psi_integral_by_string_equation, vertex_integral, VertexPoint};
