//! Circular nowhere-zero flows and edge-colorings of regular graphs, with
//! exact rational arithmetic and re-checkable certificates.

pub mod certificates;
pub mod colorings;
pub mod families;
pub mod flows;
pub mod graph;
pub mod rational;
pub mod valuations;
