//! Seeded search comparisons shared by the pathfinding tests and the
//! acceptance run. Each returns how many instances it compared.

use std::collections::HashSet;

use rampgen_core::grid::{Cell, GridMatrix, Plane};
use rampgen_core::params::{Connectivity, SearchParams};
use rampgen_core::pathfinder::astar::{astar_2d_traced, heuristic, Trace};
use rampgen_core::pathfinder::lattice::{search_3d, LatticeCounts, LatticeProblem};
use rampgen_core::pathfinder::PathError;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{dijkstra, dijkstra_all, exhaustive_lattice, graph_neighbors, lattice_counts, steps_value, LatticeInstance};

fn random_plane(rng: &mut ChaCha8Rng) -> Plane {
    let nx = rng.gen_range(2..=12);
    let ny = rng.gen_range(2..=12);
    let density = rng.gen_range(0.0..0.45);
    Plane::from_fn(nx, ny, |_, _| rng.gen_bool(density))
}

fn random_free(rng: &mut ChaCha8Rng, p: &Plane) -> Option<Cell> {
    let free: Vec<Cell> = (0..p.ny)
        .flat_map(|j| (0..p.nx).map(move |i| Cell::new(i, j)))
        .filter(|&c| !p.is_blocked(c))
        .collect();
    (!free.is_empty()).then(|| free[rng.gen_range(0..free.len())])
}

/// A* against Dijkstra on 100 random grids up to 12x12, both connectivities.
/// Also checks the heuristic at every expanded node against the true
/// remaining cost.
pub fn astar_suite() -> Result<usize, String> {
    let mut compared = 0;
    for seed in 0..100u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let plane = random_plane(&mut rng);
        let (Some(a), Some(b)) = (random_free(&mut rng, &plane), random_free(&mut rng, &plane)) else {
            continue;
        };
        for conn in [Connectivity::Eight, Connectivity::Four] {
            let want = dijkstra(&plane, a, b, conn);
            let mut trace = Trace::new();
            let got = astar_2d_traced(&plane, a, b, conn, 1.0, Some(&mut trace));
            match (got, want) {
                (Ok(p), Some(w)) => {
                    if (p.orth_steps, p.diag_steps) != w {
                        return Err(format!("seed {seed} {conn:?}: cost {:?} vs {w:?}", (p.orth_steps, p.diag_steps)));
                    }
                    if p.cells.first() != Some(&a) || p.cells.last() != Some(&b) {
                        return Err(format!("seed {seed}: wrong endpoints"));
                    }
                    let mut seen = HashSet::new();
                    if !p.cells.iter().all(|c| seen.insert(*c)) {
                        return Err(format!("seed {seed}: repeated cell"));
                    }
                    for w2 in p.cells.windows(2) {
                        if !graph_neighbors(&plane, w2[0], conn).iter().any(|(c, _)| *c == w2[1]) {
                            return Err(format!("seed {seed}: {:?} -> {:?} is not an edge", w2[0], w2[1]));
                        }
                    }
                    let to_goal = dijkstra_all(&plane, b, conn);
                    for (cell, h) in &trace {
                        let Some(rest) = to_goal[cell.j * plane.nx + cell.i] else {
                            return Err(format!("seed {seed}: expanded {cell:?} cannot reach the goal"));
                        };
                        if h.value() > steps_value(rest) + 1e-12 || *h != heuristic(*cell, b, conn) {
                            return Err(format!("seed {seed}: inadmissible heuristic at {cell:?}"));
                        }
                    }
                    compared += 1;
                }
                (Err(PathError::NoPath), None) => {}
                (got, want) => return Err(format!("seed {seed} {conn:?}: astar {got:?} vs dijkstra {want:?}")),
            }
        }
    }
    if compared < 100 {
        return Err(format!("only {compared} solvable comparisons"));
    }
    Ok(compared)
}

/// Coarse lattice settings small enough for exhaustive search.
pub fn coarse_params() -> SearchParams {
    SearchParams {
        landing_length: 2.0,
        deck_width: 1.0,
        inter_path_distance: 1.0,
        max_rise: 0.5,
        clearance: 2.0,
        deck_thickness: 0.1,
        max_expansions: 2_000_000,
        ..SearchParams::default()
    }
}

/// The 3D lattice search against exhaustive search on exactly 20 feasible
/// seeded instances up to 8x8x6. Up to 10 infeasible ones are also checked
/// for having no path within 16 steps.
pub fn lattice_suite() -> Result<usize, String> {
    let params = coarse_params();
    let mut matched = 0;
    let mut infeasible_checked = 0;
    for seed in 0..400u64 {
        if matched == 20 {
            break;
        }
        let mut rng = ChaCha8Rng::seed_from_u64(1000 + seed);
        let (nx, ny, nz) = (rng.gen_range(4..=8), rng.gen_range(3..=8), 6);
        let mut grid = GridMatrix::empty(nx, ny, nz, 1.0, 0.5);
        for _ in 0..rng.gen_range(0..=8) {
            let (i, j) = (rng.gen_range(0..nx), rng.gen_range(0..ny));
            let k0 = rng.gen_range(0..nz);
            let k1 = rng.gen_range(k0..nz);
            for k in k0..=k1 {
                grid.set_blocked(i, j, k, true);
            }
        }
        let start = Cell::new(rng.gen_range(0..nx), rng.gen_range(0..ny));
        let end = Cell::new(rng.gen_range(0..nx), rng.gen_range(0..ny));
        let rise = [0.25, 0.5, 0.75, 1.0][rng.gen_range(0..4)];
        let slope = [0.25, 0.5][rng.gen_range(0..2)];

        let inst = LatticeInstance {
            grid: &grid,
            start,
            end,
            start_z: 0.0,
            end_z: rise,
            slope,
            params: &params,
        };
        let index = grid.column_index();
        let prob = LatticeProblem {
            grid: &grid,
            index: &index,
            start,
            end,
            start_z: 0.0,
            end_z: rise,
        };
        let ours = LatticeCounts::new(rise, slope, 1.0, &params).map_err(|e| format!("seed {seed}: {e}"))?;
        let theirs = lattice_counts(rise, slope, 1.0, &params);
        if (ours.ramp_steps, ours.flight_max, ours.landing, ours.turn_gap, ours.end_gap)
            != (theirs.ramp, theirs.flight, theirs.landing, theirs.turn_gap, theirs.end_gap)
        {
            return Err(format!("seed {seed}: lattice step counts differ"));
        }
        match search_3d(&prob, slope, &params) {
            Ok((path, stats)) => {
                if !stats.exact {
                    return Err(format!("seed {seed}: search fell back to the inexact phase"));
                }
                let steps = path.planar_length.round() as u32;
                if (path.planar_length - steps as f64).abs() > 1e-9 || (path.rise() - rise).abs() > 1e-12 {
                    return Err(format!("seed {seed}: path is off the lattice"));
                }
                let best = exhaustive_lattice(&inst, steps);
                if best != Some(steps) {
                    return Err(format!("seed {seed}: search found {steps} steps, exhaustive {best:?}"));
                }
                matched += 1;
            }
            Err(_) if infeasible_checked < 10 => {
                if let Some(n) = exhaustive_lattice(&inst, 16) {
                    return Err(format!("seed {seed}: search failed but a {n}-step path exists"));
                }
                infeasible_checked += 1;
            }
            Err(_) => {}
        }
    }
    if matched != 20 {
        return Err(format!("only {matched} feasible instances in the seed schedule"));
    }
    Ok(matched)
}
