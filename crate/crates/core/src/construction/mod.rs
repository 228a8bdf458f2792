//! Manifold-building operations on [`ManifoldState`], the catalog of
//! building blocks and the named pipelines.

mod catalog;
mod ops;
mod pipelines;
mod state;

pub use catalog::{catalog_block, catalog_entries, parse_block_name, CatalogEntry};
pub use ops::{
    blow_up, blow_up_at_intersection, declare_fact, declare_minimal, declare_simply_connected, internal_sum,
    knot_surgery, luttinger, rename_surface, resolve, symplectic_sum, LuttingerSpec, BOUNDARY_TOUCHING,
};
pub use pipelines::{run_named_pipeline, x56_route, x57_route, PipelineRun, PIPELINES};
pub use state::{GroupKnowledge, ManifoldState, ProvenanceEntry, Tag, TorusLoops, TrackedSurface};
