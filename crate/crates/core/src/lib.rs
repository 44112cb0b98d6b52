//! Strong geodetic sets.
//!
//! A set `S` of vertices is *strong geodetic* when one shortest path can be
//! fixed for every pair of `S` so that the fixed paths together visit every
//! vertex. This crate computes the minimum size `sg(G)` exactly on small
//! graphs, builds certified optimal witnesses for complete Apollonian
//! networks through their Sierpiński inner duals, and generates the layered
//! gadget that ties `sg` to the domination number.

pub mod apollonian;
pub mod domination;
pub mod error;
pub mod generators;
pub mod geodesic;
pub mod graph;
pub mod io;
pub mod reduction;
pub mod sierpinski;
pub mod solver;
pub mod witness;

pub use error::{Error, Result};
pub use geodesic::{all_geodesics, count_geodesics, GeodesicList, GeodesicPath};
pub use graph::{bfs_distances, simplicial_vertices, DistanceRow, Graph, VertexId};
pub use solver::{
    find_assignment, geodetic_number, sg_lower_bound, strong_geodetic_number, CoverOutcome,
    SearchStats, SgSolution, SolveLimits, Status,
};
pub use witness::{verify_witness, AssignedGeodesic, CoverWitness, Violation};
