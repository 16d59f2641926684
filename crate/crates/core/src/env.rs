//! Site description: boundary, prism obstacles and the two ramp endpoints.
//!
//! Sites are exchanged as a small JSON document:
//!
//! ```json
//! {
//!   "boundary": [[0, 0], [12, 0], [12, 6], [0, 6]],
//!   "obstacles": [{ "polygon": [[4, 0], [5, 0], [5, 2], [4, 2]], "base_z": 0, "top_z": 3 }],
//!   "start": [1, 3, 0],
//!   "end": [11, 3, 0.4],
//!   "ground_z": 0
//! }
//! ```
//!
//! Obstacles are vertical prisms, a polygon footprint spanning `[base_z, top_z]`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geom2d::{self, Point2};
use crate::vec3::Vec3;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum EnvError {
    #[error("malformed environment: {0}")]
    MalformedInput(String),
    #[error("invalid boundary: {0}")]
    InvalidBoundary(String),
    #[error("invalid obstacle #{index}: {reason}")]
    InvalidObstacle { index: usize, reason: String },
    #[error("{which} point lies outside the site boundary")]
    EndpointOutsideBoundary { which: &'static str },
    #[error("{which} point lies inside obstacle #{obstacle}")]
    EndpointInsideObstacle { which: &'static str, obstacle: usize },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Obstacle {
    pub footprint: Vec<Point2>,
    pub base_z: f64,
    pub top_z: f64,
}

impl Obstacle {
    pub fn contains_xy(&self, p: Point2) -> bool {
        geom2d::point_in_polygon(p, &self.footprint)
    }
}

/// A validated site. `end.z >= start.z` always holds; `endpoints_swapped`
/// records whether the file listed them the other way round.
#[derive(Debug, Clone, PartialEq)]
pub struct EnvironmentSpec {
    pub boundary: Vec<Point2>,
    pub obstacles: Vec<Obstacle>,
    pub start: Vec3,
    pub end: Vec3,
    pub ground_z: f64,
    pub endpoints_swapped: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct ObstacleFile {
    pub polygon: Vec<[f64; 2]>,
    pub base_z: f64,
    pub top_z: f64,
}

/// Wire form of the environment document.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct EnvironmentFile {
    pub boundary: Vec<[f64; 2]>,
    #[serde(default)]
    pub obstacles: Vec<ObstacleFile>,
    pub start: [f64; 3],
    pub end: [f64; 3],
    #[serde(default)]
    pub ground_z: f64,
}

fn ring(points: &[[f64; 2]]) -> Vec<Point2> {
    points.iter().map(|p| Point2::new(p[0], p[1])).collect()
}

fn all_finite(file: &EnvironmentFile) -> bool {
    let pts = file.boundary.iter().flatten();
    let obs = file
        .obstacles
        .iter()
        .flat_map(|o| o.polygon.iter().flatten().chain([&o.base_z, &o.top_z]));
    pts.chain(obs)
        .chain(file.start.iter())
        .chain(file.end.iter())
        .chain(std::iter::once(&file.ground_z))
        .all(|v| v.is_finite())
}

impl EnvironmentFile {
    pub fn validate(&self) -> Result<EnvironmentSpec, EnvError> {
        if !all_finite(self) {
            return Err(EnvError::MalformedInput("non-finite coordinate".into()));
        }
        let boundary = ring(&self.boundary);
        if boundary.len() < 3 {
            return Err(EnvError::InvalidBoundary(format!(
                "{} vertices, need at least 3",
                boundary.len()
            )));
        }
        if geom2d::signed_area(&boundary).abs() < 1e-12 {
            return Err(EnvError::InvalidBoundary("zero area".into()));
        }
        if !geom2d::is_simple(&boundary) {
            return Err(EnvError::InvalidBoundary("self-intersecting".into()));
        }

        let mut obstacles = Vec::with_capacity(self.obstacles.len());
        for (index, o) in self.obstacles.iter().enumerate() {
            let footprint = ring(&o.polygon);
            let reason = if footprint.len() < 3 {
                Some("fewer than 3 vertices")
            } else if geom2d::signed_area(&footprint).abs() < 1e-12 {
                Some("zero area")
            } else if !geom2d::is_simple(&footprint) {
                Some("self-intersecting footprint")
            } else if o.top_z <= o.base_z {
                Some("top_z must exceed base_z")
            } else {
                None
            };
            if let Some(reason) = reason {
                return Err(EnvError::InvalidObstacle {
                    index,
                    reason: reason.into(),
                });
            }
            obstacles.push(Obstacle {
                footprint,
                base_z: o.base_z,
                top_z: o.top_z,
            });
        }

        let mut start = Vec3::new(self.start[0], self.start[1], self.start[2]);
        let mut end = Vec3::new(self.end[0], self.end[1], self.end[2]);
        for (which, p) in [("start", start), ("end", end)] {
            let xy = Point2::new(p.x, p.y);
            let strictly_inside = geom2d::point_in_polygon(xy, &boundary)
                && geom2d::distance_to_boundary(xy, &boundary) > 0.0;
            if !strictly_inside {
                return Err(EnvError::EndpointOutsideBoundary { which });
            }
            if let Some(obstacle) = obstacles.iter().position(|o| o.contains_xy(xy)) {
                return Err(EnvError::EndpointInsideObstacle { which, obstacle });
            }
            if p.z < self.ground_z {
                return Err(EnvError::MalformedInput(format!("{which} point is below ground_z")));
            }
        }

        let endpoints_swapped = end.z < start.z;
        if endpoints_swapped {
            std::mem::swap(&mut start, &mut end);
        }

        Ok(EnvironmentSpec {
            boundary,
            obstacles,
            start,
            end,
            ground_z: self.ground_z,
            endpoints_swapped,
        })
    }
}

impl EnvironmentSpec {
    pub fn rise(&self) -> f64 {
        self.end.z - self.start.z
    }

    /// Back to wire form, restoring the original endpoint order.
    pub fn to_file(&self) -> EnvironmentFile {
        let (start, end) = if self.endpoints_swapped {
            (self.end, self.start)
        } else {
            (self.start, self.end)
        };
        EnvironmentFile {
            boundary: self.boundary.iter().map(|p| [p.x, p.y]).collect(),
            obstacles: self
                .obstacles
                .iter()
                .map(|o| ObstacleFile {
                    polygon: o.footprint.iter().map(|p| [p.x, p.y]).collect(),
                    base_z: o.base_z,
                    top_z: o.top_z,
                })
                .collect(),
            start: [start.x, start.y, start.z],
            end: [end.x, end.y, end.z],
            ground_z: self.ground_z,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("environment serializes")
    }
}

pub fn parse_environment(text: &str) -> Result<EnvironmentSpec, EnvError> {
    let file: EnvironmentFile =
        serde_json::from_str(text).map_err(|e| EnvError::MalformedInput(e.to_string()))?;
    file.validate()
}
