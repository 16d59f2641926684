//! Reference implementations used to check the production code. Each one is
//! written from the problem statement, deliberately simpler and slower than
//! the code under test.

#![allow(dead_code)]

pub mod suites;

use std::collections::{BTreeMap, HashMap};

use rampgen_core::grid::{Cell, GridMatrix, Plane};
use rampgen_core::params::{Connectivity, SearchParams};

// ---------------------------------------------------------------- planar graph

/// Exact path cost as (orthogonal steps, diagonal steps).
pub type Steps = (u32, u32);

pub fn steps_value(s: Steps) -> f64 {
    s.0 as f64 + s.1 as f64 * std::f64::consts::SQRT_2
}

fn free(plane: &Plane, i: i64, j: i64) -> bool {
    plane.contains(i, j) && !plane.is_blocked(Cell::new(i as usize, j as usize))
}

/// Grid-graph edges: unit orthogonal moves, plus diagonals whose two flanking
/// orthogonal cells are both free.
pub fn graph_neighbors(plane: &Plane, c: Cell, conn: Connectivity) -> Vec<(Cell, Steps)> {
    let (i, j) = (c.i as i64, c.j as i64);
    let mut out = Vec::new();
    for (di, dj) in [(1, 0), (-1, 0), (0, 1), (0, -1)] {
        if free(plane, i + di, j + dj) {
            out.push((Cell::new((i + di) as usize, (j + dj) as usize), (1, 0)));
        }
    }
    if conn == Connectivity::Eight {
        for (di, dj) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
            if free(plane, i + di, j + dj) && free(plane, i + di, j) && free(plane, i, j + dj) {
                out.push((Cell::new((i + di) as usize, (j + dj) as usize), (0, 1)));
            }
        }
    }
    out
}

/// Single-source Dijkstra with a plain O(V²) selection loop.
pub fn dijkstra_all(plane: &Plane, from: Cell, conn: Connectivity) -> Vec<Option<Steps>> {
    let n = plane.nx * plane.ny;
    let at = |c: Cell| c.j * plane.nx + c.i;
    let mut dist: Vec<Option<Steps>> = vec![None; n];
    let mut done = vec![false; n];
    if plane.is_blocked(from) {
        return dist;
    }
    dist[at(from)] = Some((0, 0));
    loop {
        let mut pick: Option<usize> = None;
        for k in 0..n {
            if done[k] {
                continue;
            }
            if let Some(d) = dist[k] {
                if pick.map_or(true, |p| steps_value(d) < steps_value(dist[p].unwrap())) {
                    pick = Some(k);
                }
            }
        }
        let Some(u) = pick else { break };
        done[u] = true;
        let du = dist[u].unwrap();
        let cu = Cell::new(u % plane.nx, u / plane.nx);
        for (v, (o, d)) in graph_neighbors(plane, cu, conn) {
            let cand = (du.0 + o, du.1 + d);
            let vi = at(v);
            if dist[vi].map_or(true, |old| steps_value(cand) < steps_value(old) - 1e-12) {
                dist[vi] = Some(cand);
            }
        }
    }
    dist
}

pub fn dijkstra(plane: &Plane, from: Cell, to: Cell, conn: Connectivity) -> Option<Steps> {
    dijkstra_all(plane, from, conn)[to.j * plane.nx + to.i]
}

// ------------------------------------------------------------------ polygons

/// Winding-number containment; independent of the crossing-number test the
/// rasterizer uses.
pub fn winding_contains(ring: &[[f64; 2]], p: [f64; 2]) -> bool {
    let mut wn = 0i32;
    let n = ring.len();
    for k in 0..n {
        let a = ring[k];
        let b = ring[(k + 1) % n];
        let is_left = (b[0] - a[0]) * (p[1] - a[1]) - (p[0] - a[0]) * (b[1] - a[1]);
        if a[1] <= p[1] {
            if b[1] > p[1] && is_left > 0.0 {
                wn += 1;
            }
        } else if b[1] <= p[1] && is_left < 0.0 {
            wn -= 1;
        }
    }
    wn != 0
}

// ------------------------------------------------------------------- lattice

/// Step counts for the elevation lattice, derived from the physical inputs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Counts {
    pub ramp: u32,
    pub flight: u32,
    pub landing: u32,
    pub turn_gap: u32,
    pub end_gap: u32,
}

pub fn lattice_counts(rise: f64, slope: f64, r: f64, p: &SearchParams) -> Counts {
    let up = |x: f64| ((x - 1e-9).ceil().max(0.0) as u32).max(1);
    let (ramp, flight) = if rise <= 1e-12 {
        (0, u32::MAX)
    } else {
        let n = up(rise / (slope * r));
        let step_rise = rise / n as f64;
        (n, (p.max_rise / step_rise + 1e-9).floor() as u32)
    };
    Counts {
        ramp,
        flight,
        landing: up(p.landing_length / r),
        turn_gap: up(p.deck_width / r),
        end_gap: up(p.deck_width / (2.0 * r)),
    }
}

#[derive(Debug, Clone, Copy)]
struct LNode {
    i: i64,
    j: i64,
    dir: Option<usize>,
    ramping: bool,
    turned: bool,
    run: u32,
    flight: u32,
    landing: u32,
    seg: u32,
}

pub struct LatticeInstance<'a> {
    pub grid: &'a GridMatrix,
    pub start: Cell,
    pub end: Cell,
    pub start_z: f64,
    pub end_z: f64,
    pub slope: f64,
    pub params: &'a SearchParams,
}

struct Dfs<'a> {
    inst: &'a LatticeInstance<'a>,
    c: Counts,
    rise: f64,
    ex2: f64,
    sep: f64,
    path: Vec<LNode>,
    solutions: u64,
}

impl Dfs<'_> {
    fn z(&self, run: u32) -> f64 {
        if self.c.ramp == 0 {
            self.inst.start_z
        } else {
            self.inst.start_z + self.rise * run as f64 / self.c.ramp as f64
        }
    }

    fn clear(&self, i: i64, j: i64, z0: f64, z1: f64) -> bool {
        let g = self.inst.grid;
        let p = self.inst.params;
        let (lo, hi) = g.bands_spanning(z0.min(z1) - p.deck_thickness, z0.max(z1) + p.clearance);
        (lo..=hi).all(|k| !g.is_blocked(i as usize, j as usize, k))
    }

    fn is_goal(&self, n: &LNode) -> bool {
        n.i == self.inst.end.i as i64
            && n.j == self.inst.end.j as i64
            && n.run == self.c.ramp
            && !n.ramping
            && n.landing >= self.c.landing
            && (!n.turned || n.seg >= self.c.end_gap)
    }

    fn lower_bound(&self, n: &LNode) -> u32 {
        let m = (n.i - self.inst.end.i as i64).unsigned_abs() + (n.j - self.inst.end.j as i64).unsigned_abs();
        (m as u32).max(self.c.ramp - n.run)
    }

    fn conflicts(&self, m: &LNode, z: f64) -> bool {
        let g = self.path.len() as i64;
        self.path.iter().enumerate().any(|(k, a)| {
            let d2 = ((a.i - m.i).pow(2) + (a.j - m.j).pow(2)) as f64;
            let arc = (g - k as i64) as f64;
            d2 < self.ex2 && (z - self.z(a.run)).abs() < self.sep - 1e-9 && arc * arc > 2.0 * d2
        })
    }

    fn children(&self, n: &LNode) -> Vec<LNode> {
        let g = self.inst.grid;
        let mut out = Vec::new();
        for (d, (di, dj)) in [(1i64, 0i64), (0, 1), (-1, 0), (0, -1)].into_iter().enumerate() {
            if n.dir.is_some_and(|nd| (d + 2) % 4 == nd) {
                continue;
            }
            let (ni, nj) = (n.i + di, n.j + dj);
            if ni < 0 || nj < 0 || ni >= g.nx as i64 || nj >= g.ny as i64 {
                continue;
            }
            let turning = n.dir.is_some_and(|nd| nd != d);
            if turning {
                let gap = if n.turned { self.c.turn_gap } else { self.c.end_gap };
                if n.ramping || n.seg < gap || n.landing < self.c.end_gap {
                    continue;
                }
            }
            for ramp in [true, false] {
                let mut m = LNode {
                    i: ni,
                    j: nj,
                    dir: Some(d),
                    ramping: ramp,
                    turned: n.turned || turning,
                    run: n.run,
                    flight: 0,
                    landing: 0,
                    seg: if turning { 1 } else { n.seg + 1 },
                };
                if ramp {
                    if n.run >= self.c.ramp || turning {
                        continue;
                    }
                    if n.ramping {
                        if n.flight >= self.c.flight {
                            continue;
                        }
                        m.flight = n.flight + 1;
                    } else {
                        if n.landing < self.c.landing || (n.turned && n.seg < self.c.end_gap) {
                            continue;
                        }
                        m.flight = 1;
                    }
                    m.run = n.run + 1;
                } else {
                    m.landing = if n.ramping { 1 } else { n.landing + 1 };
                }
                let (z0, z1) = (self.z(n.run), self.z(m.run));
                if !self.clear(ni, nj, z0, z1) || self.conflicts(&m, z1) {
                    continue;
                }
                out.push(m);
            }
        }
        out
    }

    /// True once a goal at exactly depth `limit` is found.
    fn search(&mut self, limit: u32) -> bool {
        let n = *self.path.last().unwrap();
        let g = self.path.len() as u32 - 1;
        if self.is_goal(&n) {
            return g == limit;
        }
        if g + self.lower_bound(&n) > limit {
            return false;
        }
        for m in self.children(&n) {
            self.path.push(m);
            let found = self.search(limit);
            self.path.pop();
            if found {
                return true;
            }
        }
        false
    }
}

/// Shortest lattice path length in steps, by iterative deepening over every
/// move sequence. `None` if nothing exists up to `max_steps`.
pub fn exhaustive_lattice(inst: &LatticeInstance<'_>, max_steps: u32) -> Option<u32> {
    let r = inst.grid.resolution;
    let rise = inst.end_z - inst.start_z;
    let c = lattice_counts(rise, inst.slope, r, inst.params);
    if c.ramp > 0 && c.flight == 0 {
        return None;
    }
    let p = inst.params;
    let ex = (p.deck_width + p.inter_path_distance) / r;
    let root = LNode {
        i: inst.start.i as i64,
        j: inst.start.j as i64,
        dir: None,
        ramping: false,
        turned: false,
        run: 0,
        flight: 0,
        landing: 0,
        seg: 0,
    };
    let mut dfs = Dfs {
        inst,
        c,
        rise,
        ex2: ex * ex,
        sep: p.clearance + p.deck_thickness,
        path: vec![root],
        solutions: 0,
    };
    if !dfs.clear(root.i, root.j, inst.start_z, inst.start_z)
        || !dfs.clear(inst.end.i as i64, inst.end.j as i64, inst.end_z, inst.end_z)
    {
        return None;
    }
    (dfs.lower_bound(&root)..=max_steps).find(|&limit| dfs.search(limit))
}

// ---------------------------------------------------------------- path checks

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Pt {
    pub x: f64,
    pub y: f64,
    pub z: f64,
    /// Station recorded as the end of a ramp segment.
    pub ramp: bool,
}

impl Pt {
    fn plan_dist(&self, o: &Pt) -> f64 {
        (self.x - o.x).hypot(self.y - o.y)
    }
}

/// Stations from a report's `path.stations` array.
pub fn stations_from_json(v: &serde_json::Value) -> Vec<Pt> {
    v.as_array()
        .expect("stations array")
        .iter()
        .map(|s| Pt {
            x: s["x"].as_f64().unwrap(),
            y: s["y"].as_f64().unwrap(),
            z: s["z"].as_f64().unwrap(),
            ramp: s["kind"] == "ramp",
        })
        .collect()
}

#[derive(Debug, Clone, Copy)]
pub struct PathRules {
    pub slope_used: f64,
    pub max_rise: f64,
    pub landing_length: f64,
    /// Both ends of the path must sit on a level landing.
    pub terminal_landings: bool,
    /// Vertical gap two decks sharing a footprint need (clearance + thickness).
    pub separation: f64,
    pub deck_width: f64,
    pub cell: f64,
}

/// Every invariant violation found, as human-readable strings.
pub fn path_violations(st: &[Pt], rules: &PathRules) -> Vec<String> {
    const EPS: f64 = 1e-9;
    let mut out = Vec::new();
    if st.len() < 2 {
        return vec!["fewer than two stations".into()];
    }
    for k in 1..st.len() {
        let dz = st[k].z - st[k - 1].z;
        let run = st[k].plan_dist(&st[k - 1]);
        if dz < -EPS {
            out.push(format!("z decreases into station {k}"));
        }
        if dz > EPS && !st[k].ramp {
            out.push(format!("rise on a landing segment at station {k}"));
        }
        if dz > EPS && dz > (rules.slope_used + EPS) * run {
            out.push(format!("slope {:.6} at station {k}", dz / run));
        }
    }

    // maximal level and rising stretches, classified by geometry
    let mut stretches: Vec<(bool, usize, f64, f64)> = Vec::new();
    for k in 1..st.len() {
        let dz = st[k].z - st[k - 1].z;
        let run = st[k].plan_dist(&st[k - 1]);
        let level = dz.abs() <= EPS;
        match stretches.last_mut() {
            Some(s) if s.0 == level => {
                s.2 += run;
                s.3 += dz;
            }
            _ => stretches.push((level, k, run, dz)),
        }
    }
    let last = stretches.len() - 1;
    for (n, &(level, k, len, dz)) in stretches.iter().enumerate() {
        let terminal = n == 0 || n == last;
        if level {
            let short = len < rules.landing_length - EPS;
            if short && (!terminal || rules.terminal_landings) {
                out.push(format!("landing from station {k} is {len:.4} m long"));
            }
        } else {
            if dz > rules.max_rise + EPS {
                out.push(format!("{dz:.4} m rise without a landing from station {k}"));
            }
            if terminal && rules.terminal_landings {
                out.push(format!("path {} on a slope", if n == 0 { "starts" } else { "ends" }));
            }
        }
    }

    // shared footprints: points far apart along the path but in the same plan
    // cell must be stacked at least `separation` apart
    let step = rules.cell / 4.0;
    let mut samples: Vec<(f64, f64, f64, f64)> = Vec::new();
    let mut arc = 0.0;
    for w in st.windows(2) {
        let len = w[0].plan_dist(&w[1]);
        let n = (len / step).ceil().max(1.0) as usize;
        for q in 0..n {
            let t = q as f64 / n as f64;
            samples.push((
                w[0].x + (w[1].x - w[0].x) * t,
                w[0].y + (w[1].y - w[0].y) * t,
                w[0].z + (w[1].z - w[0].z) * t,
                arc + len * t,
            ));
        }
        arc += len;
    }
    let l = st.last().unwrap();
    samples.push((l.x, l.y, l.z, arc));
    let mut cells: HashMap<(i64, i64), Vec<usize>> = HashMap::new();
    for (k, s) in samples.iter().enumerate() {
        let key = ((s.0 / rules.cell).floor() as i64, (s.1 / rules.cell).floor() as i64);
        cells.entry(key).or_default().push(k);
    }
    let min_arc = rules.deck_width + 2.0 * rules.cell;
    let mut worst: BTreeMap<(i64, i64), f64> = BTreeMap::new();
    for (key, ids) in &cells {
        for (x, &a) in ids.iter().enumerate() {
            for &b in &ids[x + 1..] {
                let (sa, sb) = (samples[a], samples[b]);
                if (sb.3 - sa.3).abs() > min_arc && (sb.2 - sa.2).abs() < rules.separation - EPS {
                    let e = worst.entry(*key).or_insert(f64::INFINITY);
                    *e = e.min((sb.2 - sa.2).abs());
                }
            }
        }
    }
    for (key, dz) in worst {
        out.push(format!("cell {key:?} shared by decks {dz:.4} m apart"));
    }
    out
}

// -------------------------------------------------------------------- meshes

/// Shared-vertex triangle soup.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Soup {
    pub name: String,
    pub verts: Vec<[f64; 3]>,
    pub tris: Vec<[usize; 3]>,
}

/// Closed, consistently oriented 2-manifold: every directed edge appears
/// exactly once and its reverse exactly once.
pub fn closed_manifold(s: &Soup) -> bool {
    let mut edges: HashMap<(usize, usize), u32> = HashMap::new();
    for t in &s.tris {
        if t[0] == t[1] || t[1] == t[2] || t[0] == t[2] {
            return false;
        }
        for (a, b) in [(t[0], t[1]), (t[1], t[2]), (t[2], t[0])] {
            *edges.entry((a, b)).or_default() += 1;
        }
    }
    edges.iter().all(|(&(a, b), &n)| n == 1 && edges.get(&(b, a)) == Some(&1))
}

/// Divergence-theorem volume.
pub fn volume(s: &Soup) -> f64 {
    s.tris
        .iter()
        .map(|t| {
            let [a, b, c] = [s.verts[t[0]], s.verts[t[1]], s.verts[t[2]]];
            (a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0])
                + a[2] * (b[0] * c[1] - b[1] * c[0]))
                / 6.0
        })
        .sum()
}

pub fn soup_of(m: &rampgen_core::geometry::TriMesh) -> Soup {
    Soup {
        name: m.name.clone(),
        verts: m.vertices.iter().map(|v| [v.x, v.y, v.z]).collect(),
        tris: m.triangles.iter().map(|t| [t[0] as usize, t[1] as usize, t[2] as usize]).collect(),
    }
}

/// Wavefront OBJ reader for the subset the exporter writes: `o`, `v`, `f`
/// with 1-based global indices; `usemtl` tags are collected per object.
pub fn parse_obj(text: &str) -> Result<Vec<(Soup, String)>, String> {
    let mut verts: Vec<[f64; 3]> = Vec::new();
    let mut objects: Vec<(String, String, Vec<[usize; 3]>, usize)> = Vec::new();
    for (ln, line) in text.lines().enumerate() {
        let mut it = line.split_whitespace();
        match it.next() {
            None | Some("#") | Some("mtllib") => {}
            Some("o") => objects.push((it.collect::<Vec<_>>().join(" "), String::new(), Vec::new(), verts.len())),
            Some("usemtl") => {
                let o = objects.last_mut().ok_or(format!("line {}: usemtl before o", ln + 1))?;
                o.1 = it.next().unwrap_or_default().to_string();
            }
            Some("v") => {
                let c: Vec<f64> = it.map(|t| t.parse::<f64>().map_err(|e| e.to_string())).collect::<Result<_, _>>()?;
                if c.len() != 3 {
                    return Err(format!("line {}: vertex with {} coordinates", ln + 1, c.len()));
                }
                verts.push([c[0], c[1], c[2]]);
            }
            Some("f") => {
                let idx: Vec<usize> = it
                    .map(|t| t.split('/').next().unwrap().parse::<usize>().map_err(|e| e.to_string()))
                    .collect::<Result<_, _>>()?;
                if idx.len() != 3 || idx.iter().any(|&i| i == 0 || i > verts.len()) {
                    return Err(format!("line {}: bad face", ln + 1));
                }
                let o = objects.last_mut().ok_or(format!("line {}: face before o", ln + 1))?;
                o.2.push([idx[0] - 1, idx[1] - 1, idx[2] - 1]);
            }
            Some(other) => return Err(format!("line {}: unexpected record `{other}`", ln + 1)),
        }
    }
    // each object owns the vertices from its `o` line to the next one
    let starts: Vec<usize> = objects.iter().map(|o| o.3).chain([verts.len()]).collect();
    Ok(objects
        .into_iter()
        .enumerate()
        .map(|(k, (name, mtl, tris, start))| {
            let end = starts[k + 1];
            let soup = Soup {
                name,
                verts: verts[start..end].to_vec(),
                tris: tris.iter().map(|t| [t[0] - start, t[1] - start, t[2] - start]).collect(),
            };
            (soup, mtl)
        })
        .collect())
}

/// Binary STL reader: header text, declared count, and the triangles.
pub fn parse_stl(bytes: &[u8]) -> Result<(String, Vec<[[f32; 3]; 3]>), String> {
    if bytes.len() < 84 {
        return Err("shorter than the 84-byte preamble".into());
    }
    let header = String::from_utf8_lossy(&bytes[..80]).trim_end_matches(['\0', ' ']).to_string();
    let n = u32::from_le_bytes(bytes[80..84].try_into().unwrap()) as usize;
    if bytes.len() != 84 + 50 * n {
        return Err(format!("{} bytes for {n} triangles", bytes.len()));
    }
    let f = |o: usize| f32::from_le_bytes(bytes[o..o + 4].try_into().unwrap());
    let tris = (0..n)
        .map(|t| {
            let base = 84 + 50 * t + 12;
            let v = |k: usize| [f(base + 12 * k), f(base + 12 * k + 4), f(base + 12 * k + 8)];
            [v(0), v(1), v(2)]
        })
        .collect();
    Ok((header, tris))
}

pub fn stl_volume(tris: &[[[f32; 3]; 3]]) -> f64 {
    tris.iter()
        .map(|t| {
            let [a, b, c] = t.map(|v| v.map(|x| x as f64));
            (a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0])
                + a[2] * (b[0] * c[1] - b[1] * c[0]))
                / 6.0
        })
        .sum()
}

/// Per-solid (name, material, vertex count, triangle count) from mesh JSON.
pub fn mesh_json_counts(text: &str) -> Result<Vec<(String, String, usize, usize)>, String> {
    let v: serde_json::Value = serde_json::from_str(text).map_err(|e| e.to_string())?;
    let solids = v["solids"].as_array().ok_or("no solids array")?;
    solids
        .iter()
        .map(|s| {
            let verts = s["vertices"].as_array().ok_or("no vertices")?.len();
            let idx = s["indices"].as_array().ok_or("no indices")?.len();
            if verts % 3 != 0 || idx % 3 != 0 {
                return Err("arrays not multiples of three".to_string());
            }
            Ok((
                s["name"].as_str().unwrap_or_default().to_string(),
                s["material"].as_str().unwrap_or_default().to_string(),
                verts / 3,
                idx / 3,
            ))
        })
        .collect()
}
