//! Boundaries of cell sets: contour tracing, pinch splitting, cycle
//! geometry, cycle merging, and an independent brute-force oracle for the
//! outermost-boundary property.
//!
//! The outermost boundary of a component is characterized edge by edge: a
//! boundary edge `e` is *outermost* when, for every simple cycle `C` of the
//! graph formed by the component's boundary edges, `e` lies on `C` or outside
//! of it. The fast path computes the same set by wall-following the outer
//! contour; the oracle checks the characterization directly by enumerating
//! every simple cycle.

use std::collections::{BTreeMap, BTreeSet};

use crate::grid::{cell, corner, Cell, CellSet, Config, Corner, Edge, Mode, Orientation};
use crate::{Error, Result};

/// Position of a point relative to a closed cycle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Region {
    Interior,
    On,
    Exterior,
}

/// A simple rectilinear cycle on lattice corners, stored in canonical form:
/// counterclockwise, starting at the lexicographically smallest corner, with
/// no closing repeat.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cycle {
    corners: Vec<Corner>,
}

impl Cycle {
    /// Validates and canonicalizes a corner sequence: at least four distinct
    /// corners, consecutive corners one lattice step apart (wrapping around).
    pub fn new(mut corners: Vec<Corner>) -> Result<Cycle> {
        if corners.len() < 4 {
            return Err(Error::InvalidInput(format!(
                "a cycle needs at least 4 corners, got {}",
                corners.len()
            )));
        }
        let distinct: BTreeSet<Corner> = corners.iter().copied().collect();
        if distinct.len() != corners.len() {
            return Err(Error::InvalidInput(
                "cycle corners must be distinct".to_string(),
            ));
        }
        for k in 0..corners.len() {
            let p = corners[k];
            let q = corners[(k + 1) % corners.len()];
            if !p.adjacent(q) {
                return Err(Error::InvalidInput(format!(
                    "cycle corners {p:?} and {q:?} are not one lattice step apart"
                )));
            }
        }
        let area2 = signed_area2(&corners);
        if area2 == 0 {
            return Err(Error::InvalidInput(
                "cycle encloses zero area".to_string(),
            ));
        }
        if area2 < 0 {
            corners.reverse();
        }
        let min_pos = corners
            .iter()
            .enumerate()
            .min_by_key(|(_, c)| **c)
            .map(|(k, _)| k)
            .expect("cycle is nonempty");
        corners.rotate_left(min_pos);
        Ok(Cycle { corners })
    }

    /// Corners in counterclockwise order, starting at the smallest.
    pub fn corners(&self) -> &[Corner] {
        &self.corners
    }

    pub fn len(&self) -> usize {
        self.corners.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn corner_set(&self) -> BTreeSet<Corner> {
        self.corners.iter().copied().collect()
    }

    pub fn contains_corner(&self, c: Corner) -> bool {
        self.corners.contains(&c)
    }

    /// Edges in traversal order (one per corner, wrapping around).
    pub fn edges(&self) -> Vec<Edge> {
        (0..self.corners.len())
            .map(|k| {
                Edge::between(self.corners[k], self.corners[(k + 1) % self.corners.len()])
                    .expect("validated cycle has unit steps")
            })
            .collect()
    }

    pub fn edge_set(&self) -> BTreeSet<Edge> {
        self.edges().into_iter().collect()
    }

    /// Twice the signed area; positive because the cycle is counterclockwise.
    pub fn signed_area2(&self) -> i64 {
        signed_area2(&self.corners)
    }

    /// Inclusive bounding box of the corner set.
    pub fn bbox(&self) -> (Corner, Corner) {
        let min_a = self.corners.iter().map(|c| c.a).min().unwrap();
        let max_a = self.corners.iter().map(|c| c.a).max().unwrap();
        let min_b = self.corners.iter().map(|c| c.b).min().unwrap();
        let max_b = self.corners.iter().map(|c| c.b).max().unwrap();
        (corner(min_a, min_b), corner(max_a, max_b))
    }

    /// Classifies a point given in doubled coordinates (so corners are
    /// even/even and cell centers odd/odd) against the cycle by parity
    /// ray-casting. Exact integer arithmetic throughout.
    pub fn classify_point_doubled(&self, p: (i64, i64)) -> Region {
        let (px, py) = p;
        let mut crossings = 0u64;
        for e in self.edges() {
            let ((x1, y1), (x2, y2)) = e.endpoints_doubled();
            match e.orientation {
                Orientation::Horizontal => {
                    if py == y1 && x1 <= px && px <= x2 {
                        return Region::On;
                    }
                }
                Orientation::Vertical => {
                    if px == x1 && y1 <= py && py <= y2 {
                        return Region::On;
                    }
                    if x1 > px && y1 <= py && py < y2 {
                        crossings += 1;
                    }
                }
            }
        }
        if crossings % 2 == 1 {
            Region::Interior
        } else {
            Region::Exterior
        }
    }

    pub fn classify_corner(&self, c: Corner) -> Region {
        self.classify_point_doubled(c.doubled())
    }

    /// Classifies a cell by its center; never `On` because centers are
    /// odd/odd in doubled coordinates while cycle edges run along even lines.
    pub fn classify_cell_center(&self, c: Cell) -> Region {
        self.classify_point_doubled(c.center_doubled())
    }

    /// All cells whose squares lie inside the cycle, by row scanline over
    /// the cycle's vertical edges.
    pub fn interior_cells(&self) -> CellSet {
        let mut rows: BTreeMap<i64, Vec<i64>> = BTreeMap::new();
        for e in self.edges() {
            if e.orientation == Orientation::Vertical {
                rows.entry(e.origin.b).or_default().push(e.origin.a);
            }
        }
        let mut out = CellSet::new();
        for (j, mut xs) in rows {
            xs.sort_unstable();
            debug_assert!(xs.len() % 2 == 0, "simple cycle crosses each row evenly");
            for pair in xs.chunks(2) {
                for i in pair[0]..pair[1] {
                    out.insert(cell(i, j));
                }
            }
        }
        out
    }
}

fn signed_area2(corners: &[Corner]) -> i64 {
    let n = corners.len();
    (0..n)
        .map(|k| {
            let p = corners[k];
            let q = corners[(k + 1) % n];
            p.a * q.b - q.a * p.b
        })
        .sum()
}

/// A closed walk on lattice corners whose edges are pairwise distinct and in
/// which no corner appears more than twice. Produced by contour tracing;
/// corners that appear twice are pinch points where cycles meet.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Circuit {
    corners: Vec<Corner>,
}

impl Circuit {
    pub fn new(corners: Vec<Corner>) -> Result<Circuit> {
        if corners.len() < 4 {
            return Err(Error::InvalidInput(format!(
                "a circuit needs at least 4 corners, got {}",
                corners.len()
            )));
        }
        for k in 0..corners.len() {
            let p = corners[k];
            let q = corners[(k + 1) % corners.len()];
            if !p.adjacent(q) {
                return Err(Error::InvalidInput(format!(
                    "circuit corners {p:?} and {q:?} are not one lattice step apart"
                )));
            }
        }
        let mut counts: BTreeMap<Corner, usize> = BTreeMap::new();
        for c in &corners {
            let n = counts.entry(*c).or_insert(0);
            *n += 1;
            if *n > 2 {
                return Err(Error::PinchLimitExceeded { corner: *c });
            }
        }
        let mut edges = BTreeSet::new();
        for k in 0..corners.len() {
            let e = Edge::between(corners[k], corners[(k + 1) % corners.len()])?;
            if !edges.insert(e) {
                return Err(Error::Postcondition {
                    what: "circuit edges are distinct",
                    details: format!("edge {e:?} traversed twice"),
                });
            }
        }
        Ok(Circuit { corners })
    }

    pub fn corners(&self) -> &[Corner] {
        &self.corners
    }

    pub fn len(&self) -> usize {
        self.corners.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn edge_set(&self) -> BTreeSet<Edge> {
        (0..self.corners.len())
            .map(|k| {
                Edge::between(self.corners[k], self.corners[(k + 1) % self.corners.len()])
                    .expect("validated circuit has unit steps")
            })
            .collect()
    }

    /// Splits the walk into simple cycles at repeated corners. Returns the
    /// cycles (sorted canonically) and the sorted pinch corners where two
    /// cycles meet.
    pub fn split_into_cycles(&self) -> Result<(Vec<Cycle>, Vec<Corner>)> {
        let mut cycles = Vec::new();
        let mut meeting = BTreeSet::new();
        let mut stack: Vec<Corner> = Vec::new();
        let mut at: BTreeMap<Corner, usize> = BTreeMap::new();
        for &c in &self.corners {
            if let Some(&k) = at.get(&c) {
                // Close off the loop that started at the first visit.
                let piece: Vec<Corner> = stack[k..].to_vec();
                for dropped in stack.drain(k + 1..) {
                    at.remove(&dropped);
                }
                cycles.push(Cycle::new(piece)?);
                meeting.insert(c);
            } else {
                at.insert(c, stack.len());
                stack.push(c);
            }
        }
        cycles.push(Cycle::new(stack)?);
        cycles.sort();
        Ok((cycles, meeting.into_iter().collect()))
    }
}

/// The outermost boundary of a component: its cycles (one, unless pinch
/// corners split it) and the pinch corners where cycles meet.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OutermostBoundary {
    pub cycles: Vec<Cycle>,
    pub meeting_points: Vec<Corner>,
}

impl OutermostBoundary {
    /// Union of all cycle edges.
    pub fn edge_set(&self) -> BTreeSet<Edge> {
        self.cycles.iter().flat_map(|c| c.edges()).collect()
    }

    /// Union of all cycle corners.
    pub fn corner_set(&self) -> BTreeSet<Corner> {
        self.cycles.iter().flat_map(|c| c.corners().iter().copied()).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Dir {
    E,
    N,
    W,
    S,
}

impl Dir {
    fn step(self, c: Corner) -> Corner {
        match self {
            Dir::E => corner(c.a + 1, c.b),
            Dir::N => corner(c.a, c.b + 1),
            Dir::W => corner(c.a - 1, c.b),
            Dir::S => corner(c.a, c.b - 1),
        }
    }

    fn left(self) -> Dir {
        match self {
            Dir::E => Dir::N,
            Dir::N => Dir::W,
            Dir::W => Dir::S,
            Dir::S => Dir::E,
        }
    }

    fn right(self) -> Dir {
        match self {
            Dir::E => Dir::S,
            Dir::S => Dir::W,
            Dir::W => Dir::N,
            Dir::N => Dir::E,
        }
    }
}

/// The two cells ahead of a walker that has just arrived at `v` heading `d`:
/// (ahead-left, ahead-right) quadrants of `v`.
fn ahead_quadrants(v: Corner, d: Dir) -> (Cell, Cell) {
    let Corner { a, b } = v;
    match d {
        Dir::E => (cell(a, b), cell(a, b - 1)),
        Dir::N => (cell(a - 1, b), cell(a, b)),
        Dir::W => (cell(a - 1, b - 1), cell(a - 1, b)),
        Dir::S => (cell(a, b - 1), cell(a - 1, b - 1)),
    }
}

/// Traces the outer contour of a nonempty, corner-connected cell set by
/// wall-following with the cells on the walker's left, starting eastward
/// from the lower-left corner of the bottom-most (then left-most) cell.
/// The result walks counterclockwise around the unbounded face; pinch
/// corners appear twice.
pub fn trace_contour(cells: &CellSet) -> Result<Circuit> {
    if cells.is_empty() {
        return Err(Error::EmptyComponent);
    }
    let start_cell = *cells.iter().min_by_key(|c| (c.j, c.i)).unwrap();
    let start = corner(start_cell.i, start_cell.j);
    let limit = 4 * cells.len() + 4;
    let mut walk = Vec::new();
    let mut pos = start;
    let mut dir = Dir::E;
    loop {
        walk.push(pos);
        if walk.len() > limit {
            return Err(Error::Postcondition {
                what: "contour trace terminates",
                details: format!(
                    "walk exceeded {limit} corners on a set of {} cells",
                    cells.len()
                ),
            });
        }
        pos = dir.step(pos);
        let (ahead_left, ahead_right) = ahead_quadrants(pos, dir);
        dir = if cells.contains(&ahead_right) {
            dir.right()
        } else if cells.contains(&ahead_left) {
            dir
        } else {
            dir.left()
        };
        if pos == start {
            break;
        }
    }
    Circuit::new(walk)
}

/// Traces the outer contour of a cell set that is known to bound a single
/// cycle (no pinch corners); errors loudly otherwise.
pub fn trace_single_cycle(cells: &CellSet) -> Result<Cycle> {
    let circuit = trace_contour(cells)?;
    let (mut cycles, meeting) = circuit.split_into_cycles()?;
    if cycles.len() != 1 || !meeting.is_empty() {
        return Err(Error::Postcondition {
            what: "contour is a single cycle",
            details: format!(
                "got {} cycles with meeting points {meeting:?}",
                cycles.len()
            ),
        });
    }
    Ok(cycles.pop().unwrap())
}

/// All edges with exactly one incident cell in `cells`.
pub fn boundary_edges(cells: &CellSet) -> BTreeSet<Edge> {
    let mut out = BTreeSet::new();
    for c in cells {
        for e in c.edges() {
            let (p, q) = e.cells();
            if cells.contains(&p) != cells.contains(&q) {
                out.insert(e);
            }
        }
    }
    out
}

/// Computes the outermost boundary of the `mode`-connected component `comp`
/// of `cfg`. Validates that `comp` is nonempty, occupied, and connected in
/// the given mode. In plus mode the result is always a single cycle, and
/// this is checked loudly.
pub fn outermost_boundary(cfg: &Config, comp: &CellSet, mode: Mode) -> Result<OutermostBoundary> {
    if comp.is_empty() {
        return Err(Error::EmptyComponent);
    }
    if let Some(c) = comp.iter().find(|c| cfg.is_vacant(**c)) {
        return Err(Error::NotOccupied { cell: *c });
    }
    if !crate::grid::is_connected(comp, mode) {
        return Err(Error::NotConnected { mode });
    }
    let circuit = trace_contour(comp)?;
    let (cycles, meeting_points) = circuit.split_into_cycles()?;
    if mode == Mode::Plus && (cycles.len() != 1 || !meeting_points.is_empty()) {
        return Err(Error::Postcondition {
            what: "edge-connected component has a single outermost cycle",
            details: format!(
                "got {} cycles with meeting points {meeting_points:?}",
                cycles.len()
            ),
        });
    }
    Ok(OutermostBoundary { cycles, meeting_points })
}

/// Merges two cycles that bound overlapping or edge-touching regions into
/// the single cycle bounding the union of their closed interiors. Equal
/// cycles merge to themselves; cycles sharing fewer than two corners cannot
/// be merged.
pub fn merge_cycles(a: &Cycle, b: &Cycle) -> Result<Cycle> {
    if a == b {
        return Ok(a.clone());
    }
    let shared = a.corner_set().intersection(&b.corner_set()).count();
    if shared < 2 {
        return Err(Error::MergeTooFewSharedPoints { shared });
    }
    let mut region = a.interior_cells();
    region.extend(b.interior_cells());
    trace_single_cycle(&region)
}

/// Enumerates every simple cycle of the undirected graph whose edges are
/// `edges` (unit lattice edges). Intended for small graphs; errors when the
/// edge count exceeds `max_edges`.
pub fn corner_graph_cycles(edges: &BTreeSet<Edge>, max_edges: usize) -> Result<Vec<Cycle>> {
    if edges.len() > max_edges {
        return Err(Error::TooLarge {
            what: "corner graph edge count",
            size: edges.len(),
            limit: max_edges,
        });
    }
    let mut adj: BTreeMap<Corner, Vec<Corner>> = BTreeMap::new();
    for e in edges {
        let (p, q) = e.endpoints();
        adj.entry(p).or_default().push(q);
        adj.entry(q).or_default().push(p);
    }
    for list in adj.values_mut() {
        list.sort_unstable();
    }
    let mut cycles = Vec::new();
    let vertices: Vec<Corner> = adj.keys().copied().collect();
    // Each simple cycle is discovered exactly once: rooted at its smallest
    // corner, oriented so the second corner is smaller than the last.
    for &root in &vertices {
        let mut path = vec![root];
        let mut on_path: BTreeSet<Corner> = [root].into_iter().collect();
        // Depth-first over neighbor indices.
        let mut iters: Vec<usize> = vec![0];
        while !path.is_empty() {
            let u = *path.last().unwrap();
            let k = *iters.last().unwrap();
            let neighbors = &adj[&u];
            if k >= neighbors.len() {
                path.pop();
                iters.pop();
                on_path.remove(&u);
                continue;
            }
            *iters.last_mut().unwrap() += 1;
            let w = neighbors[k];
            if w == root && path.len() >= 3 {
                if path[1] < *path.last().unwrap() {
                    cycles.push(Cycle::new(path.clone())?);
                }
            } else if w > root && !on_path.contains(&w) {
                path.push(w);
                on_path.insert(w);
                iters.push(0);
            }
        }
    }
    cycles.sort();
    Ok(cycles)
}

/// Brute-force oracle for the outermost-boundary characterization: the set
/// of boundary edges `e` of `comp` such that every simple cycle of the
/// boundary-edge graph either contains `e` or leaves it strictly outside.
/// Guarded to small components.
pub fn outermost_edges_by_oracle(comp: &CellSet, max_cells: usize) -> Result<BTreeSet<Edge>> {
    if comp.len() > max_cells {
        return Err(Error::TooLarge {
            what: "component cell count for boundary oracle",
            size: comp.len(),
            limit: max_cells,
        });
    }
    let bedges = boundary_edges(comp);
    let cycles = corner_graph_cycles(&bedges, 4 * max_cells)?;
    let with_sets: Vec<(BTreeSet<Edge>, &Cycle)> =
        cycles.iter().map(|c| (c.edge_set(), c)).collect();
    let mut out = BTreeSet::new();
    for &e in &bedges {
        let mid = e.midpoint_doubled();
        let outermost = with_sets.iter().all(|(set, cyc)| {
            set.contains(&e) || cyc.classify_point_doubled(mid) != Region::Interior
        });
        if outermost {
            out.insert(e);
        }
    }
    Ok(out)
}

/// Single-edge form of the oracle. Edges that are not boundary edges of
/// `comp` are never outermost.
pub fn is_edge_outermost_by_oracle(comp: &CellSet, e: Edge, max_cells: usize) -> Result<bool> {
    if !boundary_edges(comp).contains(&e) {
        return Ok(false);
    }
    Ok(outermost_edges_by_oracle(comp, max_cells)?.contains(&e))
}
