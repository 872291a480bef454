//! Hypergraphs, hypergraph states and the reference catalog.

mod catalog;
mod hypergraph;
mod state;

pub use catalog::{Catalog, CatalogEntry, Expected};
pub use hypergraph::{mask_vertices, vertex_mask, Hypergraph};
pub use state::{
    apply_controlled_z, apply_controlled_z_mut, build_hypergraph_state, ghz_state, hypergraph_signs, infer_hypergraph,
    mobius_transform, plus_state, state_from_signs, StateVector,
};
pub(crate) use state::apply_1q;

/// Largest register handled by state construction and analysis.
pub const MAX_QUBITS: usize = 12;
