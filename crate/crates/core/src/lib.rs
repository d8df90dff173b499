//! Dimer models on biperiodic planar graphs.
pub mod check;
pub mod embed;
pub mod error;
pub mod exact;
mod geometry;
pub mod gf2;
pub mod graph;
pub mod kasteleyn;
pub mod laurent;
pub mod mahler;
pub mod oracle;
pub mod plane;
pub mod torus;
pub mod treecount;

pub use error::{Error, Result};
pub use graph::{BipartiteGraph, Graph};
pub use kasteleyn::{kasteleyn_signs, partition_planar, partition_toroidal, Calibration, KasteleynSystem};
pub use laurent::LaurentPoly2;
pub use mahler::{mahler_2d, MahlerResult};
pub use plane::{PlaneBipartite, PlaneGraph};
pub use torus::{BipartiteTorusGraph, ToroidalGraph};
