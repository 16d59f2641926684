//! Flat A* over a plan-view occupancy layer.

use std::cmp::{Ordering, Reverse};
use std::collections::BinaryHeap;
use std::f64::consts::SQRT_2;

use super::path::CellPath;
use super::PathError;
use crate::grid::{Cell, Plane};
use crate::params::Connectivity;

/// Exact step-count cost: `orth + diag·√2` grid units.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct StepCost {
    pub orth: u32,
    pub diag: u32,
}

impl StepCost {
    pub fn value(self) -> f64 {
        self.orth as f64 + self.diag as f64 * SQRT_2
    }

    fn add(self, o: StepCost) -> StepCost {
        StepCost {
            orth: self.orth + o.orth,
            diag: self.diag + o.diag,
        }
    }
}

impl PartialOrd for StepCost {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for StepCost {
    fn cmp(&self, other: &Self) -> Ordering {
        if self == other {
            return Ordering::Equal;
        }
        self.value().total_cmp(&other.value())
    }
}

/// Octile distance for 8-connectivity, Manhattan for 4.
pub fn heuristic(a: Cell, b: Cell, conn: Connectivity) -> StepCost {
    let dx = a.i.abs_diff(b.i) as u32;
    let dy = a.j.abs_diff(b.j) as u32;
    match conn {
        Connectivity::Four => StepCost { orth: dx + dy, diag: 0 },
        Connectivity::Eight => StepCost {
            orth: dx.max(dy) - dx.min(dy),
            diag: dx.min(dy),
        },
    }
}

/// Neighbour offsets with their step cost. Diagonals require both
/// orthogonal neighbours to be free.
pub fn neighbors(plane: &Plane, c: Cell, conn: Connectivity) -> Vec<(Cell, StepCost)> {
    const ORTH: [(i64, i64); 4] = [(-1, 0), (0, -1), (0, 1), (1, 0)];
    const DIAG: [(i64, i64); 4] = [(-1, -1), (-1, 1), (1, -1), (1, 1)];
    let free = |i: i64, j: i64| plane.contains(i, j) && !plane.is_blocked(Cell::new(i as usize, j as usize));
    let (ci, cj) = (c.i as i64, c.j as i64);
    let mut out = Vec::with_capacity(8);
    for (di, dj) in ORTH {
        if free(ci + di, cj + dj) {
            out.push((
                Cell::new((ci + di) as usize, (cj + dj) as usize),
                StepCost { orth: 1, diag: 0 },
            ));
        }
    }
    if conn == Connectivity::Eight {
        for (di, dj) in DIAG {
            if free(ci + di, cj + dj) && free(ci + di, cj) && free(ci, cj + dj) {
                out.push((
                    Cell::new((ci + di) as usize, (cj + dj) as usize),
                    StepCost { orth: 0, diag: 1 },
                ));
            }
        }
    }
    out
}

/// Expanded node and its heuristic, in expansion order.
pub type Trace = Vec<(Cell, StepCost)>;

pub fn astar_2d(
    plane: &Plane,
    start: Cell,
    end: Cell,
    conn: Connectivity,
    resolution: f64,
) -> Result<CellPath, PathError> {
    astar_2d_traced(plane, start, end, conn, resolution, None)
}

pub fn astar_2d_traced(
    plane: &Plane,
    start: Cell,
    end: Cell,
    conn: Connectivity,
    resolution: f64,
    mut trace: Option<&mut Trace>,
) -> Result<CellPath, PathError> {
    if plane.is_blocked(start) || plane.is_blocked(end) {
        return Err(PathError::NoPath);
    }
    let n = plane.nx * plane.ny;
    let idx = |c: Cell| c.j * plane.nx + c.i;
    let mut best: Vec<Option<StepCost>> = vec![None; n];
    let mut parent: Vec<u32> = vec![u32::MAX; n];
    let mut closed = vec![false; n];
    let mut open = BinaryHeap::new();
    best[idx(start)] = Some(StepCost::default());
    open.push(Reverse((heuristic(start, end, conn), start, StepCost::default())));

    while let Some(Reverse((_, cell, g))) = open.pop() {
        let ci = idx(cell);
        if closed[ci] || best[ci] != Some(g) {
            continue;
        }
        closed[ci] = true;
        if let Some(t) = trace.as_deref_mut() {
            t.push((cell, heuristic(cell, end, conn)));
        }
        if cell == end {
            let mut cells = vec![end];
            let mut cur = ci;
            while parent[cur] != u32::MAX {
                cur = parent[cur] as usize;
                cells.push(Cell::new(cur % plane.nx, cur / plane.nx));
            }
            cells.reverse();
            return Ok(CellPath {
                cells,
                orth_steps: g.orth,
                diag_steps: g.diag,
                length: g.value() * resolution,
            });
        }
        for (nb, step) in neighbors(plane, cell, conn) {
            let ni = idx(nb);
            if closed[ni] {
                continue;
            }
            let ng = g.add(step);
            if best[ni].map_or(true, |b| ng < b) {
                best[ni] = Some(ng);
                parent[ni] = ci as u32;
                open.push(Reverse((ng.add(heuristic(nb, end, conn)), nb, ng)));
            }
        }
    }
    Err(PathError::NoPath)
}

/// 4-connected breadth-first distances (in steps) from `from` over free cells.
pub fn bfs_steps(plane: &Plane, from: Cell) -> Vec<u32> {
    let mut dist = vec![u32::MAX; plane.nx * plane.ny];
    if plane.is_blocked(from) {
        return dist;
    }
    let mut queue = std::collections::VecDeque::new();
    dist[from.j * plane.nx + from.i] = 0;
    queue.push_back(from);
    while let Some(c) = queue.pop_front() {
        let d = dist[c.j * plane.nx + c.i];
        for (nb, _) in neighbors(plane, c, Connectivity::Four) {
            let ni = nb.j * plane.nx + nb.i;
            if dist[ni] == u32::MAX {
                dist[ni] = d + 1;
                queue.push_back(nb);
            }
        }
    }
    dist
}
