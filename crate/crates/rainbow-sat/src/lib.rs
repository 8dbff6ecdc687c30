//! Rainbow saturation toolkit: coloured graphs, rainbow-subgraph search,
//! saturation verification and closure, structural classification,
//! combinatorial designs, and the explicit saturated constructions.

pub mod constructions;
pub mod designs;
pub mod embed;
pub mod families;
pub mod graph;
pub mod saturation;
pub mod structure;

pub use constructions::{ConstructError, ConstructionOutput};
pub use embed::{creates_rainbow, find_copy, find_rainbow_copy, Embedding};
pub use graph::{ColoredGraph, GraphError, ParseError, Pattern};
pub use saturation::{
    exact_sat, exact_sat_uncolored, saturation_closure, verify_saturated, SatError,
    SaturationCertificate,
};
pub use structure::{classify, find_special_edge, profile, GrowthClass, GrowthTag, SpecialEdge};
