//! Exact search over a 4-connected lattice whose state carries elevation and
//! landing bookkeeping. Unlike the flat route it can fold a ramp back on
//! itself (switchbacks) or stack it over its own lower legs.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use super::astar::bfs_steps;
use super::path::{RampPath, Route, SegmentKind, Station};
use super::PathError;
use crate::grid::{Cell, ColumnIndex, GridMatrix};
use crate::params::SearchParams;

const DIRS: [(i32, i32); 4] = [(1, 0), (0, 1), (-1, 0), (0, -1)];
const NO_DIR: u8 = 4;

/// Inputs shared by every slope candidate.
pub struct LatticeProblem<'a> {
    /// Occupancy already dilated by half the deck width.
    pub grid: &'a GridMatrix,
    pub index: &'a ColumnIndex,
    pub start: Cell,
    pub end: Cell,
    pub start_z: f64,
    pub end_z: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LatticeStats {
    pub expansions: usize,
    pub generated: usize,
    /// The path is a shortest one on the lattice.
    pub exact: bool,
}

/// Integer step counts derived from the physical parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LatticeCounts {
    /// Ramp steps needed to gain the rise.
    pub ramp_steps: u32,
    /// Longest flight between landings.
    pub flight_max: u32,
    /// Shortest landing.
    pub landing: u32,
    /// Straight steps required between two turns.
    pub turn_gap: u32,
    /// Straight steps required next to the ends of the path and around a
    /// ramp/turn junction.
    pub end_gap: u32,
    /// Slope actually produced on the lattice.
    pub slope: f64,
}

impl LatticeCounts {
    pub fn new(rise: f64, slope: f64, r: f64, p: &SearchParams) -> Result<Self, PathError> {
        let up = |x: f64| (x - 1e-9).ceil().max(0.0) as u32;
        let (ramp_steps, slope_eff, flight_max) = if rise <= 1e-12 {
            (0, 0.0, u32::MAX)
        } else {
            let n = up(rise / (slope * r)).max(1);
            let s = rise / (n as f64 * r);
            let f = (p.max_rise / (s * r) + 1e-9).floor() as u32;
            if f == 0 {
                return Err(PathError::NoFeasibleRamp(format!(
                    "max rise {} m is below one lattice step of {:.4} m",
                    p.max_rise,
                    s * r
                )));
            }
            (n, s, f)
        };
        Ok(Self {
            ramp_steps,
            flight_max,
            landing: up(p.landing_length / r).max(1),
            turn_gap: up(p.deck_width / r).max(1),
            end_gap: up(p.deck_width / (2.0 * r)).max(1),
            slope: slope_eff,
        })
    }

    /// Least steps still needed to finish, ignoring plan geometry.
    fn remaining(&self, n: &Node) -> u32 {
        let rem = self.ramp_steps - n.run as u32;
        let l = self.landing;
        let f = self.flight_max;
        if n.ramping {
            if rem == 0 {
                return l;
            }
            let left = f - n.flight as u32;
            if rem <= left {
                rem + l
            } else {
                let more = (rem - left).div_ceil(f);
                rem + (more + 1) * l
            }
        } else {
            let finish = l.saturating_sub(n.landing as u32);
            if rem == 0 {
                finish
            } else {
                finish + rem + rem.div_ceil(f) * l
            }
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct Node {
    i: u16,
    j: u16,
    dir: u8,
    ramping: bool,
    turned: bool,
    run: u16,
    flight: u16,
    landing: u16,
    seg: u16,
    g: u32,
    parent: u32,
}

/// How one search phase explores the lattice.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Phase {
    /// Heuristic weight; 1 keeps the search exact.
    pub weight: u32,
    /// Merge nodes with equal lattice state; loses exactness, bounds memory.
    pub merge_states: bool,
    pub budget: usize,
}

/// Exact search first; if its budget runs out, a weighted search that merges
/// equal lattice states. The result records whether it is provably shortest.
pub fn search_3d(
    problem: &LatticeProblem<'_>,
    slope: f64,
    params: &SearchParams,
) -> Result<(RampPath, LatticeStats), PathError> {
    let exact = Phase {
        weight: 1,
        merge_states: false,
        budget: params.max_expansions,
    };
    match search_phase(problem, slope, params, exact) {
        Err(PathError::NoFeasibleRamp(m)) if m.contains("stopped") => {
            let wide = Phase {
                weight: 2,
                merge_states: true,
                budget: params.max_expansions,
            };
            search_phase(problem, slope, params, wide).map(|(p, mut st)| {
                st.exact = false;
                (p, st)
            })
        }
        other => other,
    }
}

impl Node {
    fn state_key(&self) -> u128 {
        let mut k = self.i as u128;
        for v in [self.j, self.run, self.flight, self.landing, self.seg] {
            k = (k << 16) | v as u128;
        }
        (k << 4) | ((self.dir as u128) << 2) | ((self.ramping as u128) << 1) | self.turned as u128
    }
}

pub fn search_phase(
    problem: &LatticeProblem<'_>,
    slope: f64,
    params: &SearchParams,
    phase: Phase,
) -> Result<(RampPath, LatticeStats), PathError> {
    let grid = problem.grid;
    let r = grid.resolution;
    let rise = problem.end_z - problem.start_z;
    if rise < -1e-12 {
        return Err(PathError::NoFeasibleRamp("end lies below start".into()));
    }
    let c = LatticeCounts::new(rise, slope, r, params)?;
    if c.ramp_steps >= u16::MAX as u32 || grid.nx >= u16::MAX as usize || grid.ny >= u16::MAX as usize {
        return Err(PathError::NoFeasibleRamp("lattice too large".into()));
    }
    let t = params.deck_thickness;
    let hc = params.clearance;
    let sep = params.layer_separation();
    let ex = params.leg_spacing() / r;
    let ex2 = ex * ex;
    let z_of = |run: u16| {
        if c.ramp_steps == 0 {
            problem.start_z
        } else {
            problem.start_z + rise * run as f64 / c.ramp_steps as f64
        }
    };
    let clear = |cell: Cell, z0: f64, z1: f64| {
        let (lo, hi) = grid.bands_spanning(z0.min(z1) - t, z0.max(z1) + hc);
        !problem.index.any_blocked(cell, lo, hi)
    };
    if !clear(problem.start, problem.start_z, problem.start_z) {
        return Err(PathError::EndpointObstructed { which: "start" });
    }
    if !clear(problem.end, problem.end_z, problem.end_z) {
        return Err(PathError::EndpointObstructed { which: "end" });
    }

    let (klo, khi) = grid.bands_spanning(problem.start_z - t, problem.end_z + hc);
    let geo = bfs_steps(&grid.free_anywhere(klo, khi), problem.end);
    let at = |i: u16, j: u16| j as usize * grid.nx + i as usize;
    if geo[at(problem.start.i as u16, problem.start.j as u16)] == u32::MAX {
        return Err(PathError::NoPath);
    }
    let (ei, ej) = (problem.end.i as u16, problem.end.j as u16);
    let h = |n: &Node| -> u32 {
        let g = geo[at(n.i, n.j)];
        if g == u32::MAX {
            return u32::MAX;
        }
        let manhattan = n.i.abs_diff(ei) as u32 + n.j.abs_diff(ej) as u32;
        let mut v = g.max(c.remaining(n));
        if (v + manhattan) % 2 == 1 {
            v += 1;
        }
        v
    };

    let landing_cap = c.landing.max(c.end_gap) as u16;
    let seg_cap = c.turn_gap.max(c.end_gap) as u16;
    let mut nodes: Vec<Node> = Vec::with_capacity(1 << 16);
    let mut open = BinaryHeap::new();
    let root = Node {
        i: problem.start.i as u16,
        j: problem.start.j as u16,
        dir: NO_DIR,
        ramping: false,
        turned: false,
        run: 0,
        flight: 0,
        landing: 0,
        seg: 0,
        g: 0,
        parent: u32::MAX,
    };
    // key: f ascending, deeper first, straight before turning, ramp before
    // landing, then cell order and creation order
    open.push(Reverse((phase.weight * h(&root), Reverse(0u32), 0u8, 0u8, root.i, root.j, 0u32)));
    nodes.push(root);
    let mut stats = LatticeStats { expansions: 0, generated: 0, exact: phase.weight == 1 && !phase.merge_states };
    let mut seen: std::collections::HashSet<u128> = std::collections::HashSet::new();

    while let Some(Reverse((_, _, _, _, _, _, id))) = open.pop() {
        let n = nodes[id as usize];
        if n.i == ei
            && n.j == ej
            && n.run as u32 == c.ramp_steps
            && !n.ramping
            && n.landing as u32 >= c.landing
            && (!n.turned || n.seg as u32 >= c.end_gap)
        {
            stats.generated = nodes.len();
            let path = reconstruct(&nodes, id, grid, c.slope, &z_of);
            return Ok((path, stats));
        }
        stats.expansions += 1;
        if stats.expansions > phase.budget {
            return Err(PathError::NoFeasibleRamp(format!(
                "lattice search stopped after {} expansions",
                phase.budget
            )));
        }
        let z = z_of(n.run);
        for (d, &(di, dj)) in DIRS.iter().enumerate() {
            let d = d as u8;
            if n.dir != NO_DIR && (d + 2) % 4 == n.dir {
                continue;
            }
            let ni = n.i as i32 + di;
            let nj = n.j as i32 + dj;
            if ni < 0 || nj < 0 || ni >= grid.nx as i32 || nj >= grid.ny as i32 {
                continue;
            }
            let turning = n.dir != NO_DIR && d != n.dir;
            if turning {
                let gap = if n.turned { c.turn_gap } else { c.end_gap };
                if n.ramping || (n.seg as u32) < gap || (n.landing as u32) < c.end_gap {
                    continue;
                }
            }
            for ramp in [true, false] {
                let mut m = Node {
                    i: ni as u16,
                    j: nj as u16,
                    dir: d,
                    ramping: ramp,
                    turned: n.turned || turning,
                    run: n.run,
                    flight: 0,
                    landing: 0,
                    seg: if turning { 1 } else { (n.seg + 1).min(seg_cap) },
                    g: n.g + 1,
                    parent: id,
                };
                if ramp {
                    if n.run as u32 >= c.ramp_steps || turning {
                        continue;
                    }
                    if n.ramping {
                        if n.flight as u32 >= c.flight_max {
                            continue;
                        }
                        m.flight = n.flight + 1;
                    } else {
                        if (n.landing as u32) < c.landing || (n.turned && (n.seg as u32) < c.end_gap) {
                            continue;
                        }
                        m.flight = 1;
                    }
                    m.run = n.run + 1;
                } else {
                    m.landing = if n.ramping { 1 } else { (n.landing + 1).min(landing_cap) };
                }
                let cell = Cell::new(m.i as usize, m.j as usize);
                let z1 = z_of(m.run);
                if !clear(cell, z, z1) {
                    continue;
                }
                if conflicts(&nodes, id, &m, z1, ex2, sep, &z_of) {
                    continue;
                }
                let hm = h(&m);
                if hm == u32::MAX {
                    continue;
                }
                if phase.merge_states && !seen.insert(m.state_key() ^ ((m.g as u128) << 100)) {
                    continue;
                }
                let key = (
                    m.g + phase.weight * hm,
                    Reverse(m.g),
                    turning as u8,
                    (!ramp) as u8,
                    m.i,
                    m.j,
                    nodes.len() as u32,
                );
                nodes.push(m);
                open.push(Reverse(key));
            }
        }
    }
    Err(PathError::NoFeasibleRamp(format!(
        "no lattice layout gains {:.3} m within the site at slope {:.5}",
        rise, c.slope
    )))
}

/// Does `m` come too close to an earlier part of its own path?
fn conflicts(nodes: &[Node], mut id: u32, m: &Node, z: f64, ex2: f64, sep: f64, z_of: &impl Fn(u16) -> f64) -> bool {
    while id != u32::MAX {
        let a = &nodes[id as usize];
        let dx = a.i as f64 - m.i as f64;
        let dy = a.j as f64 - m.j as f64;
        let d2 = dx * dx + dy * dy;
        if d2 < ex2 && (z - z_of(a.run)).abs() < sep - 1e-9 {
            let arc = (m.g - a.g) as f64;
            if arc * arc > 2.0 * d2 {
                return true;
            }
        }
        id = a.parent;
    }
    false
}

fn reconstruct(nodes: &[Node], goal: u32, grid: &GridMatrix, slope: f64, z_of: &impl Fn(u16) -> f64) -> RampPath {
    let mut chain = Vec::new();
    let mut id = goal;
    while id != u32::MAX {
        chain.push(nodes[id as usize]);
        id = nodes[id as usize].parent;
    }
    chain.reverse();

    let mut seen = std::collections::HashSet::new();
    let layered = !chain.iter().all(|n| seen.insert((n.i, n.j)));

    let mut stations: Vec<Station> = Vec::with_capacity(chain.len());
    let mut dirs: Vec<u8> = Vec::with_capacity(chain.len());
    for (k, n) in chain.iter().enumerate() {
        let p = grid.cell_center(Cell::new(n.i as usize, n.j as usize));
        let kind = if k > 0 && n.run > chain[k - 1].run {
            SegmentKind::Ramp
        } else {
            SegmentKind::Landing
        };
        let st = Station { x: p.x, y: p.y, z: z_of(n.run), kind };
        // drop the previous station when it is the middle of a straight,
        // same-kind run
        if stations.len() >= 2 && dirs.last() == Some(&n.dir) && stations.last().unwrap().kind == kind {
            *stations.last_mut().unwrap() = st;
        } else {
            stations.push(st);
            dirs.push(n.dir);
        }
    }
    RampPath::from_stations(stations, slope, layered, Route::Lattice)
}
