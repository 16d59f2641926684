//! Solid actualisation of a ramp path: deck slab, railings and columns.

pub mod mesh;
pub mod railings;
pub mod supports;
pub mod sweep;

use thiserror::Error;

pub use mesh::TriMesh;
pub use railings::{build_railings, RailingPart, Side};
pub use supports::{build_supports, SupportPlacement, SupportStatus};

use crate::env::Obstacle;
use crate::params::GeomParams;
use crate::pathfinder::clearance::foldover_station;
use crate::pathfinder::RampPath;
use crate::vec3::Vec3;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeomError {
    #[error("deck sweep folds over itself at station {station}")]
    SelfIntersectingSweep { station: usize },
    #[error("path has fewer than two distinct plan stations")]
    DegeneratePath,
}

/// Rectangular deck section, top face at the centre-line elevation.
pub fn deck_profile(width: f64, thickness: f64) -> Vec<(f64, f64)> {
    let h = width / 2.0;
    vec![(-h, -thickness), (h, -thickness), (h, 0.0), (-h, 0.0)]
}

pub fn build_deck(path: &RampPath, params: &GeomParams) -> Result<TriMesh, GeomError> {
    if path.stations.len() < 2 {
        return Err(GeomError::DegeneratePath);
    }
    if let Some(station) = foldover_station(path, params.deck_width) {
        return Err(GeomError::SelfIntersectingSweep { station });
    }
    let centre: Vec<Vec3> = path.stations.iter().map(|s| Vec3::new(s.x, s.y, s.z)).collect();
    sweep::sweep(
        "deck",
        &params.materials.path,
        &centre,
        &deck_profile(params.deck_width, params.deck_thickness),
    )
}

/// Everything built for one path, plus what it was built from.
#[derive(Debug, Clone, PartialEq)]
pub struct RampModel {
    pub deck: TriMesh,
    pub railings: Vec<TriMesh>,
    pub railing_parts: Vec<RailingPart>,
    pub supports: Vec<TriMesh>,
    pub support_log: Vec<SupportPlacement>,
    pub path: RampPath,
    pub params: GeomParams,
}

impl RampModel {
    /// Deck, then railings in emission order, then supports.
    pub fn solids(&self) -> impl Iterator<Item = &TriMesh> {
        std::iter::once(&self.deck).chain(&self.railings).chain(&self.supports)
    }

    pub fn triangle_count(&self) -> usize {
        self.solids().map(|m| m.triangles.len()).sum()
    }
}

pub fn assemble_model(
    path: &RampPath,
    params: &GeomParams,
    ground_z: f64,
    obstacles: &[Obstacle],
) -> Result<RampModel, GeomError> {
    let deck = build_deck(path, params)?;
    let (railings, railing_parts): (Vec<_>, Vec<_>) = build_railings(path, params)?.into_iter().unzip();
    let (supports, support_log) = build_supports(path, ground_z, params, obstacles);
    Ok(RampModel {
        deck,
        railings,
        railing_parts,
        supports,
        support_log,
        path: path.clone(),
        params: params.clone(),
    })
}
