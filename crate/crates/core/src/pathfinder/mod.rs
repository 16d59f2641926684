//! Route planning: flat A*, elevation assignment, the switchback lattice and
//! the slope sweep that ties them together.

pub mod astar;
pub mod clearance;
pub mod heights;
pub mod lattice;
pub mod optimize;
pub mod path;
pub mod smooth;
pub mod validate;
pub mod visibility;

use thiserror::Error;

pub use astar::{astar_2d, StepCost};
pub use heights::{assign_heights, HeightError};
pub use lattice::{search_3d, LatticeProblem, LatticeStats};
pub use optimize::{optimize_slope, Candidate, SweepOutcome};
pub use path::{CellPath, RampPath, Route, SegmentKind, Station};
pub use smooth::smooth_path;
pub use validate::{validate_path, PathLimits, Violation};

use crate::geom2d::Point2;
use crate::grid::{Cell, ColumnIndex, GridMatrix};
use crate::params::{LandingMode, SearchParams};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PathError {
    #[error("no collision-free route connects start and end")]
    NoPath,
    #[error("the {which} point is too close to an obstacle or the site edge for the deck")]
    EndpointObstructed { which: &'static str },
    #[error("no feasible ramp: {0}")]
    NoFeasibleRamp(String),
    #[error("invalid manual landings: {0}")]
    InvalidManualLandings(String),
}

/// Prepared search context for one environment and parameter set.
pub struct Planner {
    pub inflated: GridMatrix,
    pub index: ColumnIndex,
    pub start: Cell,
    pub end: Cell,
    pub start_z: f64,
    pub end_z: f64,
    pub params: SearchParams,
    connected: bool,
    flat: Result<(CellPath, Vec<Point2>), PathError>,
}

impl Planner {
    pub fn new(
        grid: &GridMatrix,
        start: Cell,
        end: Cell,
        start_z: f64,
        end_z: f64,
        params: SearchParams,
    ) -> Result<Self, PathError> {
        let inflated = grid.inflate(params.deck_width / 2.0);
        let index = inflated.column_index();
        let t = params.deck_thickness;
        let hc = params.clearance;
        for (which, c, z) in [("start", start, start_z), ("end", end, end_z)] {
            let (lo, hi) = inflated.bands_spanning(z - t, z + hc);
            if index.any_blocked(c, lo, hi) {
                return Err(PathError::EndpointObstructed { which });
            }
        }
        let (lo, hi) = inflated.bands_spanning(start_z.min(end_z) - t, start_z.max(end_z) + hc);
        let reach = astar::bfs_steps(&inflated.free_anywhere(lo, hi), end);
        let connected = reach[start.j * inflated.nx + start.i] != u32::MAX;
        let flat = if connected {
            let plane = inflated.free_over(lo, hi);
            astar_2d(&plane, start, end, params.connectivity, inflated.resolution).map(|cells| {
                let pulled = visibility::pull_string(&cells.polyline(&inflated), &plane, &inflated);
                let poly = visibility::consolidate_corners(&pulled, &plane, &inflated, params.deck_width / 2.0);
                (cells, poly)
            })
        } else {
            Err(PathError::NoPath)
        };
        Ok(Self {
            inflated,
            index,
            start,
            end,
            start_z,
            end_z,
            params,
            connected,
            flat,
        })
    }

    pub fn rise(&self) -> f64 {
        self.end_z - self.start_z
    }

    pub fn is_connected(&self) -> bool {
        self.connected
    }

    /// The flat A* route over the envelope of all deck elevations, if any.
    pub fn flat_route(&self) -> Option<&CellPath> {
        self.flat.as_ref().ok().map(|f| &f.0)
    }

    /// The flat route straightened by line of sight.
    pub fn flat_polyline(&self) -> Option<&[Point2]> {
        self.flat.as_ref().ok().map(|f| f.1.as_slice())
    }

    pub fn limits(&self, path: &RampPath) -> PathLimits {
        PathLimits {
            max_slope: path.slope_used,
            max_rise: self.params.max_rise,
            landing_length: self.params.landing_length,
            layer_separation: self.params.layer_separation(),
            cell: self.inflated.resolution,
        }
    }

    /// Why `path` cannot be built here, or `None` when it is acceptable.
    pub fn rejection(&self, path: &RampPath) -> Option<String> {
        let p = &self.params;
        if let Some(v) = validate_path(path, &self.limits(path)).first() {
            return Some(format!("path invariant violated: {v:?}"));
        }
        if let Some(arc) =
            clearance::occupancy_conflict(path, &self.inflated, &self.index, p.deck_thickness, p.clearance)
        {
            return Some(format!("deck envelope hits an obstacle at {arc:.2} m"));
        }
        if let Some((a, b)) =
            clearance::self_exclusion_conflict(path, p.leg_spacing(), p.layer_separation(), self.inflated.resolution)
        {
            return Some(format!("path runs too close to itself between {a:.2} m and {b:.2} m"));
        }
        if let Some(i) = clearance::foldover_station(path, p.deck_width) {
            return Some(format!("deck would fold over at station {i}"));
        }
        None
    }

    /// Best path for one candidate slope, before smoothing.
    pub fn plan_at_slope(&self, slope: f64) -> Result<RampPath, PathError> {
        match self.plan_planar(slope)? {
            Ok(path) => Ok(path),
            Err(why) => self.plan_lattice(slope, &why),
        }
    }

    /// Height assignment along the flat route. The inner error says why the
    /// flat route is not enough.
    pub fn plan_planar(&self, slope: f64) -> Result<Result<RampPath, String>, PathError> {
        if !self.connected {
            return Err(PathError::NoPath);
        }
        let p = &self.params;
        let Ok((_, poly)) = &self.flat else {
            return Ok(Err("no flat route clears the whole elevation range".to_string()));
        };
        Ok(match assign_heights(poly, self.start_z, self.rise(), slope, p) {
            Ok(path) => match self.rejection(&path) {
                None => Ok(path),
                Some(why) => Err(why),
            },
            Err(HeightError::InvalidManualLandings(m)) => return Err(PathError::InvalidManualLandings(m)),
            Err(e) => Err(e.to_string()),
        })
    }

    /// Switchback lattice search, used once the flat route has failed for `why`.
    pub fn plan_lattice(&self, slope: f64, why: &str) -> Result<RampPath, PathError> {
        let p = &self.params;
        if matches!(p.landing_mode, LandingMode::Manual(_)) {
            return Err(PathError::NoFeasibleRamp(format!(
                "{why}; manual landings need a flat route"
            )));
        }
        let problem = LatticeProblem {
            grid: &self.inflated,
            index: &self.index,
            start: self.start,
            end: self.end,
            start_z: self.start_z,
            end_z: self.end_z,
        };
        match search_3d(&problem, slope, p) {
            Ok((path, _)) => match self.rejection(&path) {
                None => Ok(path),
                Some(w) => Err(PathError::NoFeasibleRamp(format!("{why}; lattice route rejected: {w}"))),
            },
            Err(PathError::NoFeasibleRamp(m)) => Err(PathError::NoFeasibleRamp(format!("{why}; {m}"))),
            Err(e) => Err(e),
        }
    }

    /// Smooth `path` according to the configured path type.
    pub fn smooth(&self, path: &RampPath) -> RampPath {
        let p = &self.params;
        let radius = smooth::fillet_radius(p.inter_path_distance, p.deck_width);
        smooth_path(path, p.path_type, radius, |c| self.rejection(c).is_none())
    }
}
