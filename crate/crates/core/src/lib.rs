//! Accessibility ramp generation: site rasterization, ramp routing, solid
//! geometry, code-compliance checking and export.

pub mod compliance;
pub mod env;
pub mod export;
pub mod geom2d;
pub mod geometry;
pub mod grid;
pub mod params;
pub mod pathfinder;
pub mod pipeline;
pub mod vec3;
