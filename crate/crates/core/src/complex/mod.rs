//! Triangle presentations and the local structure of the 2-complexes they
//! describe: vertices, links, nerves, geodesics, fundamental groups and
//! isomorphisms.

mod presentation;
mod triangle;

pub mod geodesic;
pub mod graph;
pub mod iso;
pub mod nerve;
pub mod pi1;
pub mod vertex;

pub use geodesic::{local_geodesic_check, orient_geodesic};
pub use graph::{is_moebius_kantor, SimpleGraph};
pub use iso::complex_isomorphic;
pub use nerve::{nerve, Nerve, NerveType};
pub use pi1::{group_presentation, GroupPresentation};
pub use presentation::{
    parse_triples, ArityViolation, Occurrence, PresentationJson, Side, TrianglePresentation, ValidationMode,
    ValidationReport,
};
pub use triangle::{Reading, Triangle};
pub use vertex::{link_graph, vertex_partition, EdgeEnd, LinkGraph, VertexPartition};
