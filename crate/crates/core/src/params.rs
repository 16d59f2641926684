//! Generation parameters. Every field has an ADA-derived default, and a
//! partial JSON document overrides only the fields it names.

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
#[error("invalid parameter `{field}`: {reason}")]
pub struct ParamError {
    pub field: &'static str,
    pub reason: String,
}

fn bad(field: &'static str, reason: impl Into<String>) -> ParamError {
    ParamError {
        field,
        reason: reason.into(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Connectivity {
    #[serde(rename = "4")]
    Four,
    #[serde(rename = "8")]
    Eight,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PathType {
    Straight,
    Curve,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RailingType {
    SingleSquare,
    SingleRounded,
    DoubleRounded,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LandingMode {
    Automatic,
    /// Arc-length positions (m) where intermediate landings begin.
    Manual(Vec<f64>),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PathParams {
    pub slope: f64,
    pub slope_min: f64,
    pub slope_max: f64,
    pub slope_step: f64,
    pub thickness: f64,
    pub width: f64,
    pub inter_path_distance: f64,
    /// Minimum empty space above the deck.
    pub height: f64,
    pub landings: LandingMode,
    #[serde(rename = "type")]
    pub path_type: PathType,
    pub max_rise: f64,
    pub landing_length: f64,
    pub connectivity: Connectivity,
}

impl Default for PathParams {
    fn default() -> Self {
        Self {
            slope: 1.0 / 12.0,
            slope_min: 1.0 / 20.0,
            slope_max: 1.0 / 12.0,
            slope_step: 1.0 / 240.0,
            thickness: 0.15,
            width: 0.915,
            inter_path_distance: 0.3,
            height: 2.1,
            landings: LandingMode::Automatic,
            path_type: PathType::Straight,
            max_rise: 0.76,
            landing_length: 1.525,
            connectivity: Connectivity::Eight,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RailingParams {
    /// Height of the top rail centreline above the deck surface.
    pub height: f64,
    pub thickness: f64,
    /// Maximum spacing between posts.
    pub density: f64,
    #[serde(rename = "type")]
    pub kind: RailingType,
}

impl Default for RailingParams {
    fn default() -> Self {
        Self {
            height: 0.9,
            thickness: 0.04,
            density: 1.5,
            kind: RailingType::SingleRounded,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SupportParams {
    pub thickness: f64,
    /// Maximum spacing between columns; 0 disables supports.
    pub density: f64,
}

impl Default for SupportParams {
    fn default() -> Self {
        Self {
            thickness: 0.2,
            density: 2.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct MaterialParams {
    pub path: String,
    pub railing: String,
    pub support: String,
}

impl Default for MaterialParams {
    fn default() -> Self {
        Self {
            path: "concrete".into(),
            railing: "steel".into(),
            support: "steel".into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GridParams {
    pub resolution: f64,
    pub z_quantum: f64,
    /// The lattice extends this far above the end elevation.
    pub headroom: f64,
}

impl Default for GridParams {
    fn default() -> Self {
        Self {
            resolution: 0.1,
            z_quantum: 0.05,
            headroom: 3.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OptimizerParams {
    pub w_slope: f64,
    pub w_length: f64,
    /// Node budget for one lattice search.
    pub max_expansions: usize,
}

impl Default for OptimizerParams {
    fn default() -> Self {
        Self {
            w_slope: 1.0,
            w_length: 1.0,
            max_expansions: 300_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RampParams {
    pub path: PathParams,
    pub railing: RailingParams,
    pub supports: SupportParams,
    pub materials: MaterialParams,
    pub grid: GridParams,
    pub optimizer: OptimizerParams,
}

fn positive(field: &'static str, v: f64) -> Result<(), ParamError> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(bad(field, format!("must be > 0, got {v}")))
    }
}

impl RampParams {
    pub fn from_json(text: &str) -> Result<Self, ParamError> {
        let p: RampParams = serde_json::from_str(text).map_err(|e| bad("params", e.to_string()))?;
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<(), ParamError> {
        let p = &self.path;
        positive("path.slope_min", p.slope_min)?;
        if !(p.slope_min <= p.slope && p.slope <= p.slope_max) {
            return Err(bad("path.slope", "must satisfy slope_min <= slope <= slope_max"));
        }
        positive("path.slope_step", p.slope_step)?;
        positive("path.thickness", p.thickness)?;
        positive("path.width", p.width)?;
        if !(p.inter_path_distance >= 0.0 && p.inter_path_distance.is_finite()) {
            return Err(bad("path.inter_path_distance", "must be >= 0"));
        }
        positive("path.height", p.height)?;
        positive("path.max_rise", p.max_rise)?;
        positive("path.landing_length", p.landing_length)?;
        if let LandingMode::Manual(stations) = &p.landings {
            if stations.iter().any(|s| !s.is_finite()) {
                return Err(bad("path.landings", "stations must be finite"));
            }
        }
        let r = &self.railing;
        positive("railing.height", r.height)?;
        positive("railing.thickness", r.thickness)?;
        positive("railing.density", r.density)?;
        if 3.0 * r.thickness > p.width {
            return Err(bad("railing.thickness", "railings do not fit on the deck"));
        }
        let s = &self.supports;
        positive("supports.thickness", s.thickness)?;
        if !(s.density >= 0.0 && s.density.is_finite()) {
            return Err(bad("supports.density", "must be >= 0 (0 disables supports)"));
        }
        for (field, name) in [
            ("materials.path", &self.materials.path),
            ("materials.railing", &self.materials.railing),
            ("materials.support", &self.materials.support),
        ] {
            if name.is_empty() || name.chars().any(char::is_whitespace) {
                return Err(bad(field, "material names must be non-empty without whitespace"));
            }
        }
        positive("grid.resolution", self.grid.resolution)?;
        positive("grid.z_quantum", self.grid.z_quantum)?;
        if !(self.grid.headroom >= p.height) {
            return Err(bad("grid.headroom", "must be at least the path clearance height"));
        }
        let o = &self.optimizer;
        if !(o.w_slope >= 0.0 && o.w_length >= 0.0) || (o.w_slope == 0.0 && o.w_length == 0.0) {
            return Err(bad("optimizer", "weights must be >= 0 and not both zero"));
        }
        if o.max_expansions == 0 {
            return Err(bad("optimizer.max_expansions", "must be > 0"));
        }
        Ok(())
    }

    pub fn search_params(&self) -> SearchParams {
        let p = &self.path;
        SearchParams {
            desired_slope: p.slope,
            slope_min: p.slope_min,
            slope_max: p.slope_max,
            slope_step: p.slope_step,
            connectivity: p.connectivity,
            clearance: p.height,
            inter_path_distance: p.inter_path_distance,
            max_rise: p.max_rise,
            landing_length: p.landing_length,
            landing_mode: p.landings.clone(),
            path_type: p.path_type,
            w_slope: self.optimizer.w_slope,
            w_length: self.optimizer.w_length,
            deck_width: p.width,
            deck_thickness: p.thickness,
            max_expansions: self.optimizer.max_expansions,
        }
    }

    pub fn geom_params(&self) -> GeomParams {
        GeomParams {
            deck_width: self.path.width,
            deck_thickness: self.path.thickness,
            railing: self.railing.clone(),
            supports: self.supports.clone(),
            materials: self.materials.clone(),
        }
    }
}

/// Everything the planner needs, flattened.
#[derive(Debug, Clone, PartialEq)]
pub struct SearchParams {
    pub desired_slope: f64,
    pub slope_min: f64,
    pub slope_max: f64,
    pub slope_step: f64,
    pub connectivity: Connectivity,
    pub clearance: f64,
    pub inter_path_distance: f64,
    pub max_rise: f64,
    pub landing_length: f64,
    pub landing_mode: LandingMode,
    pub path_type: PathType,
    pub w_slope: f64,
    pub w_length: f64,
    pub deck_width: f64,
    pub deck_thickness: f64,
    pub max_expansions: usize,
}

impl Default for SearchParams {
    fn default() -> Self {
        RampParams::default().search_params()
    }
}

impl SearchParams {
    /// Vertical separation two decks need to share a footprint.
    pub fn layer_separation(&self) -> f64 {
        self.clearance + self.deck_thickness
    }

    /// Centre-line spacing below which parallel legs conflict.
    pub fn leg_spacing(&self) -> f64 {
        self.deck_width + self.inter_path_distance
    }

    /// Slopes visited by the sweep, `slope_min` upward in `slope_step` increments.
    pub fn slope_candidates(&self) -> Vec<f64> {
        let n = ((self.slope_max - self.slope_min) / self.slope_step + 1e-9).floor() as usize;
        let mut out: Vec<f64> = (0..=n)
            .map(|k| self.slope_min + k as f64 * self.slope_step)
            .collect();
        if let Some(last) = out.last_mut() {
            if (self.slope_max - *last).abs() < 1e-12 {
                *last = self.slope_max;
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GeomParams {
    pub deck_width: f64,
    pub deck_thickness: f64,
    pub railing: RailingParams,
    pub supports: SupportParams,
    pub materials: MaterialParams,
}

impl Default for GeomParams {
    fn default() -> Self {
        RampParams::default().geom_params()
    }
}
