//! Rasterized occupancy lattice built from an [`EnvironmentSpec`].
//!
//! Cells are half-open boxes `[origin + i·r, origin + (i+1)·r)` in plan and
//! `[ground + k·q_z, ground + (k+1)·q_z)` vertically. A cell is blocked when its
//! plan centre lies outside the site boundary, or when the centre lies inside an
//! obstacle footprint and the band overlaps the obstacle's height range.

use thiserror::Error;

use crate::env::EnvironmentSpec;
use crate::geom2d::{self, Point2};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GridError {
    #[error("invalid grid parameters: {0}")]
    InvalidParameters(String),
    #[error("resolution {resolution} m leaves fewer than 3 free cells across the site")]
    ResolutionTooCoarse { resolution: f64 },
    #[error("{which} point falls in a blocked cell ({i}, {j}, {k})")]
    EndpointCellBlocked {
        which: &'static str,
        i: usize,
        j: usize,
        k: usize,
    },
}

/// Plan-view cell index. Ordering is by `i`, then `j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cell {
    pub i: usize,
    pub j: usize,
}

impl Cell {
    pub const fn new(i: usize, j: usize) -> Self {
        Self { i, j }
    }
}

/// A single 2D occupancy layer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Plane {
    pub nx: usize,
    pub ny: usize,
    blocked: Vec<bool>,
}

impl Plane {
    pub fn new(nx: usize, ny: usize) -> Self {
        Self {
            nx,
            ny,
            blocked: vec![false; nx * ny],
        }
    }

    pub fn from_fn(nx: usize, ny: usize, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let mut p = Plane::new(nx, ny);
        for j in 0..ny {
            for i in 0..nx {
                p.blocked[j * nx + i] = f(i, j);
            }
        }
        p
    }

    pub fn is_blocked(&self, c: Cell) -> bool {
        self.blocked[c.j * self.nx + c.i]
    }

    pub fn set_blocked(&mut self, c: Cell, v: bool) {
        self.blocked[c.j * self.nx + c.i] = v;
    }

    pub fn contains(&self, i: i64, j: i64) -> bool {
        i >= 0 && j >= 0 && (i as usize) < self.nx && (j as usize) < self.ny
    }

    pub fn free_count(&self) -> usize {
        self.blocked.iter().filter(|b| !**b).count()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GridMatrix {
    pub origin: Point2,
    pub resolution: f64,
    pub z_quantum: f64,
    pub ground_z: f64,
    pub nx: usize,
    pub ny: usize,
    pub nz: usize,
    occupancy: Vec<bool>,
}

impl GridMatrix {
    /// Grid with every cell free; mostly useful for tests and synthetic maps.
    pub fn empty(nx: usize, ny: usize, nz: usize, resolution: f64, z_quantum: f64) -> Self {
        Self {
            origin: Point2::new(0.0, 0.0),
            resolution,
            z_quantum,
            ground_z: 0.0,
            nx,
            ny,
            nz,
            occupancy: vec![false; nx * ny * nz],
        }
    }

    fn idx(&self, i: usize, j: usize, k: usize) -> usize {
        (k * self.ny + j) * self.nx + i
    }

    pub fn is_blocked(&self, i: usize, j: usize, k: usize) -> bool {
        self.occupancy[self.idx(i, j, k)]
    }

    pub fn set_blocked(&mut self, i: usize, j: usize, k: usize, v: bool) {
        let idx = self.idx(i, j, k);
        self.occupancy[idx] = v;
    }

    /// Block a full column, every band.
    pub fn block_column(&mut self, i: usize, j: usize) {
        for k in 0..self.nz {
            self.set_blocked(i, j, k, true);
        }
    }

    pub fn blocked_count(&self) -> usize {
        self.occupancy.iter().filter(|b| **b).count()
    }

    pub fn blocked_count_at(&self, k: usize) -> usize {
        let n = self.nx * self.ny;
        self.occupancy[k * n..(k + 1) * n].iter().filter(|b| **b).count()
    }

    pub fn cell_center(&self, c: Cell) -> Point2 {
        Point2::new(
            self.origin.x + (c.i as f64 + 0.5) * self.resolution,
            self.origin.y + (c.j as f64 + 0.5) * self.resolution,
        )
    }

    /// Half-open cell lookup; `None` outside the grid.
    pub fn cell_of(&self, p: Point2) -> Option<Cell> {
        let fi = ((p.x - self.origin.x) / self.resolution).floor();
        let fj = ((p.y - self.origin.y) / self.resolution).floor();
        if fi < 0.0 || fj < 0.0 || fi >= self.nx as f64 || fj >= self.ny as f64 {
            return None;
        }
        Some(Cell::new(fi as usize, fj as usize))
    }

    /// Band containing elevation `z`, clamped into the grid.
    pub fn band_of(&self, z: f64) -> usize {
        let k = ((z - self.ground_z) / self.z_quantum).floor();
        if k <= 0.0 {
            0
        } else {
            (k as usize).min(self.nz - 1)
        }
    }

    /// Band range covering the open interval `(z_lo, z_hi)`.
    pub fn bands_spanning(&self, z_lo: f64, z_hi: f64) -> (usize, usize) {
        let lo = self.band_of(z_lo);
        let hi_raw = ((z_hi - self.ground_z) / self.z_quantum).ceil() - 1.0;
        let hi = if hi_raw <= 0.0 {
            0
        } else {
            (hi_raw as usize).min(self.nz - 1)
        };
        (lo, hi.max(lo))
    }

    pub fn plane(&self, k: usize) -> Plane {
        Plane::from_fn(self.nx, self.ny, |i, j| self.is_blocked(i, j, k))
    }

    /// Blocked where any band in `k_lo..=k_hi` is blocked.
    pub fn free_over(&self, k_lo: usize, k_hi: usize) -> Plane {
        Plane::from_fn(self.nx, self.ny, |i, j| {
            (k_lo..=k_hi).any(|k| self.is_blocked(i, j, k))
        })
    }

    /// Blocked only where every band in `k_lo..=k_hi` is blocked.
    pub fn free_anywhere(&self, k_lo: usize, k_hi: usize) -> Plane {
        Plane::from_fn(self.nx, self.ny, |i, j| {
            (k_lo..=k_hi).all(|k| self.is_blocked(i, j, k))
        })
    }

    /// Horizontal dilation of every band: a cell becomes blocked when a blocked
    /// cell (or the grid edge) has its centre closer than `radius + r/2`.
    pub fn inflate(&self, radius: f64) -> GridMatrix {
        let r = self.resolution;
        let reach = radius + 0.5 * r;
        let span = (reach / r).ceil() as i64;
        let mut offsets = Vec::new();
        for dj in -span..=span {
            for di in -span..=span {
                if ((di * di + dj * dj) as f64).sqrt() * r < reach {
                    offsets.push((di, dj));
                }
            }
        }
        let mut out = self.clone();
        let n = self.nx * self.ny;
        let mut prev: Option<usize> = None;
        for k in 0..self.nz {
            let src = &self.occupancy[k * n..(k + 1) * n];
            if let Some(pk) = prev {
                if self.occupancy[pk * n..(pk + 1) * n] == *src {
                    let (a, b) = out.occupancy.split_at_mut(k * n);
                    b[..n].copy_from_slice(&a[pk * n..(pk + 1) * n]);
                    continue;
                }
            }
            for j in 0..self.ny {
                for i in 0..self.nx {
                    let hit = offsets.iter().any(|&(di, dj)| {
                        let (ii, jj) = (i as i64 + di, j as i64 + dj);
                        if ii < 0 || jj < 0 || ii >= self.nx as i64 || jj >= self.ny as i64 {
                            return true;
                        }
                        src[jj as usize * self.nx + ii as usize]
                    });
                    out.occupancy[k * n + j * self.nx + i] = hit;
                }
            }
            prev = Some(k);
        }
        out
    }

    /// Per-column prefix counts for O(1) band-range queries.
    pub fn column_index(&self) -> ColumnIndex {
        let stride = self.nz + 1;
        let mut prefix = vec![0u32; self.nx * self.ny * stride];
        for j in 0..self.ny {
            for i in 0..self.nx {
                let base = (j * self.nx + i) * stride;
                for k in 0..self.nz {
                    prefix[base + k + 1] = prefix[base + k] + self.is_blocked(i, j, k) as u32;
                }
            }
        }
        ColumnIndex {
            nx: self.nx,
            stride,
            prefix,
        }
    }
}

#[derive(Debug, Clone)]
pub struct ColumnIndex {
    nx: usize,
    stride: usize,
    prefix: Vec<u32>,
}

impl ColumnIndex {
    pub fn any_blocked(&self, c: Cell, k_lo: usize, k_hi: usize) -> bool {
        let base = (c.j * self.nx + c.i) * self.stride;
        self.prefix[base + k_hi + 1] > self.prefix[base + k_lo]
    }
}

pub fn rasterize(
    env: &EnvironmentSpec,
    resolution: f64,
    z_quantum: f64,
    z_max: f64,
) -> Result<GridMatrix, GridError> {
    if !(resolution > 0.0 && resolution.is_finite()) {
        return Err(GridError::InvalidParameters("resolution must be > 0".into()));
    }
    if !(z_quantum > 0.0 && z_quantum.is_finite()) {
        return Err(GridError::InvalidParameters("z quantum must be > 0".into()));
    }
    if !(z_max > env.end.z) {
        return Err(GridError::InvalidParameters(format!(
            "z_max {z_max} must lie above the end elevation {}",
            env.end.z
        )));
    }
    let (lo, hi) = geom2d::bounds(&env.boundary);
    let nx = (((hi.x - lo.x) / resolution) - 1e-9).ceil().max(1.0) as usize;
    let ny = (((hi.y - lo.y) / resolution) - 1e-9).ceil().max(1.0) as usize;
    let nz = (((z_max - env.ground_z) / z_quantum) - 1e-9).ceil().max(1.0) as usize;
    let mut grid = GridMatrix {
        origin: lo,
        resolution,
        z_quantum,
        ground_z: env.ground_z,
        nx,
        ny,
        nz,
        occupancy: vec![false; nx * ny * nz],
    };

    for j in 0..ny {
        for i in 0..nx {
            let c = grid.cell_center(Cell::new(i, j));
            if !geom2d::point_in_polygon(c, &env.boundary) {
                grid.block_column(i, j);
                continue;
            }
            for o in env.obstacles.iter().filter(|o| o.contains_xy(c)) {
                for k in 0..nz {
                    let z0 = env.ground_z + k as f64 * z_quantum;
                    if z0 < o.top_z && z0 + z_quantum > o.base_z {
                        grid.set_blocked(i, j, k, true);
                    }
                }
            }
        }
    }

    let plane = grid.plane(0);
    let widest_row = (0..ny)
        .map(|j| (0..nx).filter(|&i| !plane.is_blocked(Cell::new(i, j))).count())
        .max()
        .unwrap_or(0);
    let widest_col = (0..nx)
        .map(|i| (0..ny).filter(|&j| !plane.is_blocked(Cell::new(i, j))).count())
        .max()
        .unwrap_or(0);
    if widest_row.min(widest_col) < 3 {
        return Err(GridError::ResolutionTooCoarse { resolution });
    }
    Ok(grid)
}

/// Cells holding the start and end points.
pub fn locate_endpoints(env: &EnvironmentSpec, grid: &GridMatrix) -> Result<(Cell, Cell), GridError> {
    let locate = |which: &'static str, p: crate::vec3::Vec3| -> Result<Cell, GridError> {
        let k = grid.band_of(p.z);
        match grid.cell_of(Point2::new(p.x, p.y)) {
            Some(c) if !grid.is_blocked(c.i, c.j, k) => Ok(c),
            Some(c) => Err(GridError::EndpointCellBlocked { which, i: c.i, j: c.j, k }),
            None => Err(GridError::EndpointCellBlocked { which, i: usize::MAX, j: usize::MAX, k }),
        }
    };
    Ok((locate("start", env.start)?, locate("end", env.end)?))
}
