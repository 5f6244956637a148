//! Lattice primitives: cells, corners, edges, configurations, components.
//!
//! A cell `(i, j)` is the closed unit square `[i, i+1] x [j, j+1]`; its
//! corners are the four integer points of that square and its center is
//! `(i + 1/2, j + 1/2)`. All geometry in this crate stays on the half-integer
//! grid, so exact arithmetic uses coordinates doubled to plain integers.

use std::collections::{BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Adjacency mode between cells.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Mode {
    /// Cells are adjacent when they share at least a corner (8 neighbors).
    Star,
    /// Cells are adjacent when they share an edge (4 neighbors).
    Plus,
}

impl std::fmt::Display for Mode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Mode::Star => "star",
            Mode::Plus => "plus",
        })
    }
}

/// A unit square of the tiling, indexed by its lower-left corner.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Cell {
    pub i: i64,
    pub j: i64,
}

/// A lattice point `(a, b)`; corner of up to four cells.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Corner {
    pub a: i64,
    pub b: i64,
}

/// Axis orientation of a unit edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Orientation {
    Horizontal,
    Vertical,
}

/// A unit edge of the lattice in canonical form: `origin` is the
/// lexicographically smaller endpoint, so a horizontal edge runs from
/// `(a, b)` to `(a+1, b)` and a vertical edge from `(a, b)` to `(a, b+1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Edge {
    pub origin: Corner,
    pub orientation: Orientation,
}

/// A finite set of cells with deterministic (sorted) iteration order.
pub type CellSet = BTreeSet<Cell>;

pub fn cell(i: i64, j: i64) -> Cell {
    Cell { i, j }
}

pub fn corner(a: i64, b: i64) -> Corner {
    Corner { a, b }
}

impl Cell {
    /// The four edge-sharing neighbors, in the fixed scan order E, N, W, S.
    pub fn plus_neighbors(self) -> [Cell; 4] {
        let Cell { i, j } = self;
        [cell(i + 1, j), cell(i, j + 1), cell(i - 1, j), cell(i, j - 1)]
    }

    /// The eight corner-sharing neighbors, in the fixed scan order
    /// E, N, W, S, NE, NW, SW, SE.
    pub fn star_neighbors(self) -> [Cell; 8] {
        let Cell { i, j } = self;
        [
            cell(i + 1, j),
            cell(i, j + 1),
            cell(i - 1, j),
            cell(i, j - 1),
            cell(i + 1, j + 1),
            cell(i - 1, j + 1),
            cell(i - 1, j - 1),
            cell(i + 1, j - 1),
        ]
    }

    /// Neighbors for the given mode as a slice-backed array.
    pub fn neighbors(self, mode: Mode) -> Vec<Cell> {
        match mode {
            Mode::Plus => self.plus_neighbors().to_vec(),
            Mode::Star => self.star_neighbors().to_vec(),
        }
    }

    /// True when `other` is adjacent to `self` in the given mode.
    pub fn adjacent(self, other: Cell, mode: Mode) -> bool {
        let di = (self.i - other.i).abs();
        let dj = (self.j - other.j).abs();
        match mode {
            Mode::Plus => di + dj == 1,
            Mode::Star => di.max(dj) == 1,
        }
    }

    /// The four corners of the square, counterclockwise from the lower left.
    pub fn corners(self) -> [Corner; 4] {
        let Cell { i, j } = self;
        [
            corner(i, j),
            corner(i + 1, j),
            corner(i + 1, j + 1),
            corner(i, j + 1),
        ]
    }

    /// The four edges of the square, in the order bottom, right, top, left.
    pub fn edges(self) -> [Edge; 4] {
        let Cell { i, j } = self;
        [
            Edge::horizontal(corner(i, j)),
            Edge::vertical(corner(i + 1, j)),
            Edge::horizontal(corner(i, j + 1)),
            Edge::vertical(corner(i, j)),
        ]
    }

    /// Center of the square in doubled coordinates (exact).
    pub fn center_doubled(self) -> (i64, i64) {
        (2 * self.i + 1, 2 * self.j + 1)
    }

    /// The edge shared with an edge-adjacent cell.
    pub fn shared_edge(self, other: Cell) -> Result<Edge> {
        let Cell { i, j } = self;
        let e = match (other.i - i, other.j - j) {
            (1, 0) => Edge::vertical(corner(i + 1, j)),
            (-1, 0) => Edge::vertical(corner(i, j)),
            (0, 1) => Edge::horizontal(corner(i, j + 1)),
            (0, -1) => Edge::horizontal(corner(i, j)),
            _ => {
                return Err(Error::InvalidInput(format!(
                    "cells {self:?} and {other:?} share no edge"
                )))
            }
        };
        Ok(e)
    }
}

impl Corner {
    /// The corner in doubled coordinates.
    pub fn doubled(self) -> (i64, i64) {
        (2 * self.a, 2 * self.b)
    }

    /// True when `other` is one lattice step away.
    pub fn adjacent(self, other: Corner) -> bool {
        (self.a - other.a).abs() + (self.b - other.b).abs() == 1
    }
}

impl Edge {
    pub fn horizontal(origin: Corner) -> Edge {
        Edge { origin, orientation: Orientation::Horizontal }
    }

    pub fn vertical(origin: Corner) -> Edge {
        Edge { origin, orientation: Orientation::Vertical }
    }

    /// The canonical edge between two corners one step apart.
    pub fn between(p: Corner, q: Corner) -> Result<Edge> {
        let (lo, hi) = if p <= q { (p, q) } else { (q, p) };
        if hi.a == lo.a + 1 && hi.b == lo.b {
            Ok(Edge::horizontal(lo))
        } else if hi.a == lo.a && hi.b == lo.b + 1 {
            Ok(Edge::vertical(lo))
        } else {
            Err(Error::InvalidInput(format!(
                "corners {p:?} and {q:?} are not one lattice step apart"
            )))
        }
    }

    /// Both endpoints, canonical (smaller) first.
    pub fn endpoints(self) -> (Corner, Corner) {
        let Corner { a, b } = self.origin;
        match self.orientation {
            Orientation::Horizontal => (self.origin, corner(a + 1, b)),
            Orientation::Vertical => (self.origin, corner(a, b + 1)),
        }
    }

    /// The two cells incident to the edge, lexicographically smaller first:
    /// a horizontal edge at `(a, b)` separates `(a, b-1)` from `(a, b)`; a
    /// vertical edge at `(a, b)` separates `(a-1, b)` from `(a, b)`.
    pub fn cells(self) -> (Cell, Cell) {
        let Corner { a, b } = self.origin;
        match self.orientation {
            Orientation::Horizontal => (cell(a, b - 1), cell(a, b)),
            Orientation::Vertical => (cell(a - 1, b), cell(a, b)),
        }
    }

    /// Edge midpoint in doubled coordinates (exact).
    pub fn midpoint_doubled(self) -> (i64, i64) {
        let (x, y) = self.origin.doubled();
        match self.orientation {
            Orientation::Horizontal => (x + 1, y),
            Orientation::Vertical => (x, y + 1),
        }
    }

    /// Both endpoints in doubled coordinates, smaller first.
    pub fn endpoints_doubled(self) -> ((i64, i64), (i64, i64)) {
        let (p, q) = self.endpoints();
        (p.doubled(), q.doubled())
    }
}

/// An axis-aligned window of cells: `x <= i < x + w`, `y <= j < y + h`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Rect {
    pub x: i64,
    pub y: i64,
    pub w: i64,
    pub h: i64,
}

impl Rect {
    pub fn new(x: i64, y: i64, w: i64, h: i64) -> Rect {
        Rect { x, y, w, h }
    }

    pub fn contains(&self, c: Cell) -> bool {
        c.i >= self.x && c.i < self.x + self.w && c.j >= self.y && c.j < self.y + self.h
    }

    /// The cell at the (floored) center of the window.
    pub fn center(&self) -> Cell {
        cell(self.x + (self.w - 1) / 2, self.y + (self.h - 1) / 2)
    }

    /// All cells of the window in row-major order (lowest row first).
    pub fn cells(&self) -> impl Iterator<Item = Cell> + '_ {
        let r = *self;
        (r.y..r.y + r.h).flat_map(move |j| (r.x..r.x + r.w).map(move |i| cell(i, j)))
    }
}

/// A finite occupancy configuration. Every cell outside `occupied` is vacant,
/// so components of occupied cells are always finite.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Config {
    occupied: CellSet,
    window: Option<Rect>,
}

impl Config {
    /// A configuration from its occupied cells, with no declared window.
    pub fn new(occupied: impl IntoIterator<Item = Cell>) -> Config {
        Config { occupied: occupied.into_iter().collect(), window: None }
    }

    /// A configuration with a declared window; every occupied cell must lie
    /// inside it.
    pub fn with_window(occupied: impl IntoIterator<Item = Cell>, window: Rect) -> Result<Config> {
        let occupied: CellSet = occupied.into_iter().collect();
        if let Some(c) = occupied.iter().find(|c| !window.contains(**c)) {
            return Err(Error::InvalidInput(format!(
                "occupied cell {c:?} lies outside the window {window:?}"
            )));
        }
        Ok(Config { occupied, window: Some(window) })
    }

    pub fn occupied(&self) -> &CellSet {
        &self.occupied
    }

    pub fn window(&self) -> Option<Rect> {
        self.window
    }

    pub fn is_occupied(&self, c: Cell) -> bool {
        self.occupied.contains(&c)
    }

    pub fn is_vacant(&self, c: Cell) -> bool {
        !self.is_occupied(c)
    }
}

/// The mode-connected component of occupied cells containing `seed`, found by
/// breadth-first search in the fixed neighbor order. A vacant seed yields the
/// empty set.
pub fn component(cfg: &Config, seed: Cell, mode: Mode) -> CellSet {
    let mut comp = CellSet::new();
    if cfg.is_vacant(seed) {
        return comp;
    }
    let mut queue = VecDeque::new();
    comp.insert(seed);
    queue.push_back(seed);
    while let Some(c) = queue.pop_front() {
        let star;
        let plus;
        let neighbors: &[Cell] = match mode {
            Mode::Star => {
                star = c.star_neighbors();
                &star
            }
            Mode::Plus => {
                plus = c.plus_neighbors();
                &plus
            }
        };
        for &n in neighbors {
            if cfg.is_occupied(n) && comp.insert(n) {
                queue.push_back(n);
            }
        }
    }
    comp
}

/// True when `cells` is nonempty and connected under `mode`.
pub fn is_connected(cells: &CellSet, mode: Mode) -> bool {
    let Some(&first) = cells.iter().next() else { return false };
    let mut seen = CellSet::new();
    let mut queue = VecDeque::new();
    seen.insert(first);
    queue.push_back(first);
    while let Some(c) = queue.pop_front() {
        let star;
        let plus;
        let neighbors: &[Cell] = match mode {
            Mode::Star => {
                star = c.star_neighbors();
                &star
            }
            Mode::Plus => {
                plus = c.plus_neighbors();
                &plus
            }
        };
        for &n in neighbors {
            if cells.contains(&n) && seen.insert(n) {
                queue.push_back(n);
            }
        }
    }
    seen.len() == cells.len()
}

/// The halo of a component: all vacant cells sharing at least a corner with
/// some cell of `comp`. Disjoint from the occupied set by construction.
pub fn halo(cfg: &Config, comp: &CellSet) -> CellSet {
    debug_assert!(comp.iter().all(|c| cfg.is_occupied(*c)));
    let mut out = CellSet::new();
    for c in comp {
        for n in c.star_neighbors() {
            if cfg.is_vacant(n) {
                out.insert(n);
            }
        }
    }
    out
}
