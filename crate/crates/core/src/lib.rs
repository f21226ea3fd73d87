//! Half-integral packing and covering of non-null cycles in group-labeled graphs.

pub mod cuts;
pub mod cycles;
pub mod decomposition;
pub mod driver;
pub mod error;
pub mod generate;
mod flow;
pub mod graph;
pub mod group;
pub mod oracle;
pub mod paths;

pub use cycles::{
    find_consistent_labeling, is_clean, non_null_path_exists, untangle, verify_gfvs, ConsistentLabeling, GfvsCertificate,
    LabelingOutcome,
};
pub use error::{EpError, Result};
pub use graph::{
    blocks_and_cut_vertices, induced_subgraph, is_non_null_cycle, walk_value, ArcId, Direction, LabeledGraph, Separation,
    Step, VertexId, VertexSet, Walk,
};
pub use group::{GroupElement, GroupSpec};
