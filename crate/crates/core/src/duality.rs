//! The two dual surrounding-cycle constructions.
//!
//! Around a finite corner-connected (star) component of occupied cells there
//! is a unique edge-connected (plus) cycle of vacant cells; around a finite
//! edge-connected component there is a unique corner-connected cycle of
//! vacant cells. Each construction returns the cell cycle together with a
//! full trace of the intermediate objects, and every structural claim the
//! construction relies on is asserted loudly rather than assumed.
//!
//! The star-side construction works on a shifted copy of the lattice: each
//! boundary corner `(a, b)` indexes the unit square centered on that corner.
//! In that shifted frame, square `(a, b)` occupies the primal region
//! `[a - 1/2, a + 1/2] x [b - 1/2, b + 1/2]`, and a shifted-frame corner
//! `(x, y)` sits at the center of the primal cell `(x - 1, y - 1)`.

use std::collections::BTreeSet;

use crate::boundary::{
    outermost_boundary, trace_single_cycle, Cycle, OutermostBoundary, Region,
};
use crate::grid::{cell, halo, Cell, CellSet, Config, Edge, Mode};
use crate::{Error, Result};

/// A cyclic sequence of distinct cells, consecutive ones (cyclically)
/// adjacent in the tagged mode. Canonical form: starts at the
/// lexicographically smallest cell and runs counterclockwise (positive
/// signed area of the center polygon; lexicographic tiebreak when the
/// polygon is degenerate).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SCycle {
    cells: Vec<Cell>,
    mode: Mode,
}

impl SCycle {
    /// Validates distinctness and cyclic mode-adjacency, then canonicalizes.
    pub fn new(cells: Vec<Cell>, mode: Mode) -> Result<SCycle> {
        if cells.len() < 3 {
            return Err(Error::InvalidInput(format!(
                "a cell cycle needs at least 3 cells, got {}",
                cells.len()
            )));
        }
        let distinct: BTreeSet<Cell> = cells.iter().copied().collect();
        if distinct.len() != cells.len() {
            return Err(Error::InvalidInput(
                "cell cycle entries must be distinct".to_string(),
            ));
        }
        for k in 0..cells.len() {
            let p = cells[k];
            let q = cells[(k + 1) % cells.len()];
            if !p.adjacent(q, mode) {
                return Err(Error::InvalidInput(format!(
                    "cells {p:?} and {q:?} are consecutive but not {mode}-adjacent"
                )));
            }
        }
        Ok(Self::from_cells_unchecked(cells, mode))
    }

    /// Canonicalizes without validating; for oracle-generated candidates and
    /// deliberately malformed test inputs.
    pub fn from_cells_unchecked(mut cells: Vec<Cell>, mode: Mode) -> SCycle {
        let area2 = center_polygon_area2(&cells);
        if area2 < 0 {
            cells.reverse();
        }
        rotate_to_min(&mut cells);
        if area2 == 0 {
            // Degenerate polygon: pick the lexicographically smaller of the
            // two orientations.
            let mut reversed = cells.clone();
            reversed.reverse();
            rotate_to_min(&mut reversed);
            if reversed < cells {
                cells = reversed;
            }
        }
        SCycle { cells, mode }
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn contains(&self, c: Cell) -> bool {
        self.cells.contains(&c)
    }

    pub fn cell_set(&self) -> CellSet {
        self.cells.iter().copied().collect()
    }
}

fn rotate_to_min(cells: &mut [Cell]) {
    if let Some(min_pos) = cells
        .iter()
        .enumerate()
        .min_by_key(|(_, c)| **c)
        .map(|(k, _)| k)
    {
        cells.rotate_left(min_pos);
    }
}

/// Twice the signed area of the polygon through the cell centers, computed
/// on doubled coordinates (so the value is 4x the real area; only the sign
/// is used).
fn center_polygon_area2(cells: &[Cell]) -> i64 {
    let n = cells.len();
    (0..n)
        .map(|k| {
            let (px, py) = cells[k].center_doubled();
            let (qx, qy) = cells[(k + 1) % n].center_doubled();
            px * qy - qx * py
        })
        .sum()
}

/// Construction trace for the plus cycle around a corner-connected
/// component.
#[derive(Debug, Clone)]
pub struct StarDualTrace {
    /// The component itself.
    pub component: CellSet,
    /// Its outermost boundary (possibly several cycles meeting at pinch
    /// corners).
    pub outer_boundary: OutermostBoundary,
    /// One shifted-frame square per distinct boundary corner; square
    /// `(a, b)` is centered on primal corner `(a, b)`.
    pub vertex_squares: CellSet,
    /// The single outermost cycle of `vertex_squares`, in shifted-frame
    /// corners; corner `(x, y)` sits at the center of primal cell
    /// `(x - 1, y - 1)`.
    pub dual_boundary: Cycle,
    /// Vacant cells sharing a corner with the component and lying outside
    /// every cycle of `outer_boundary`.
    pub exterior_halo: CellSet,
}

/// Construction trace for the star cycle around an edge-connected
/// component.
#[derive(Debug, Clone)]
pub struct PlusDualTrace {
    /// The component itself.
    pub component: CellSet,
    /// Its single outermost boundary cycle.
    pub boundary: Cycle,
    /// Vacant cells sharing a corner with the component and lying strictly
    /// outside `boundary`.
    pub exterior_halo: CellSet,
    /// For each boundary edge in cycle order, the vacant cell just across
    /// it.
    pub halo_by_edge: Vec<(Edge, Cell)>,
    /// For each boundary edge, the cycle around its across-cell's local
    /// vacant group.
    pub local_cycles: Vec<Cycle>,
    /// Every region-growing step the merge performed, in order.
    pub merge_log: Vec<MergeStep>,
    /// The final enclosing cycle after all merges.
    pub final_cycle: Cycle,
}

/// One step of the iterative merge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MergeStep {
    /// The boundary edge was still on the working cycle: its across-cell's
    /// whole local group was absorbed.
    Group {
        edge: Edge,
        across: Cell,
        added: Vec<Cell>,
    },
    /// The boundary edge was already strictly inside: a single exterior
    /// halo neighbor of the across-cell was absorbed.
    Single { edge: Edge, across: Cell, added: Cell },
}

fn describe_log(log: &[MergeStep]) -> String {
    let mut out = String::new();
    for (k, step) in log.iter().enumerate() {
        match step {
            MergeStep::Group { edge, across, added } => {
                out.push_str(&format!(
                    "step {k}: group at {edge:?} across {across:?} added {added:?}; "
                ));
            }
            MergeStep::Single { edge, across, added } => {
                out.push_str(&format!(
                    "step {k}: single at {edge:?} across {across:?} added {added:?}; "
                ));
            }
        }
    }
    out
}

/// Rejects a set that is not a maximal `mode`-component of `cfg`: some
/// occupied cell outside the set is adjacent to it.
fn ensure_maximal(cfg: &Config, comp: &CellSet, mode: Mode) -> Result<()> {
    for c in comp {
        for n in c.neighbors(mode) {
            if cfg.is_occupied(n) && !comp.contains(&n) {
                return Err(Error::InvalidInput(format!(
                    "cell {n:?} is occupied and {mode}-adjacent to the set but not in it; \
                     pass the full component"
                )));
            }
        }
    }
    Ok(())
}

/// Vacant cells sharing a corner with the component that lie outside every
/// cycle of its outermost boundary (enclosed pockets are excluded).
pub fn exterior_halo_star(cfg: &Config, comp: &CellSet, b: &OutermostBoundary) -> CellSet {
    halo(cfg, comp)
        .into_iter()
        .filter(|c| {
            b.cycles
                .iter()
                .all(|cy| cy.classify_cell_center(*c) == Region::Exterior)
        })
        .collect()
}

/// One shifted-frame square per distinct corner of the boundary: square
/// `(a, b)` is the unit square centered on primal corner `(a, b)`.
pub fn vertex_squares(b: &OutermostBoundary) -> CellSet {
    b.corner_set().iter().map(|c| cell(c.a, c.b)).collect()
}

/// Builds the plus-connected cycle of vacant cells surrounding a finite
/// corner-connected component: take the component's outermost boundary,
/// cover its corners with centered squares, trace the single outermost
/// cycle of that cover, and read the cycle's corners back as primal cells.
pub fn dual_plus_cycle(cfg: &Config, comp: &CellSet) -> Result<(SCycle, StarDualTrace)> {
    let outer = outermost_boundary(cfg, comp, Mode::Star)?;
    ensure_maximal(cfg, comp, Mode::Star)?;
    let squares = vertex_squares(&outer);
    let shifted_cfg = Config::new(squares.iter().copied());
    let shifted_boundary =
        outermost_boundary(&shifted_cfg, &squares, Mode::Plus).map_err(|e| match e {
            Error::NotConnected { .. } => Error::Postcondition {
                what: "corner-cover squares form one edge-connected piece",
                details: format!("cover {squares:?}"),
            },
            other => other,
        })?;
    let dual_boundary = shifted_boundary.cycles.into_iter().next().expect("one cycle");
    // Shifted-frame corner (x, y) is the center of primal cell (x-1, y-1).
    let ring: Vec<Cell> = dual_boundary
        .corners()
        .iter()
        .map(|c| cell(c.a - 1, c.b - 1))
        .collect();
    let scycle = SCycle::new(ring, Mode::Plus)?;
    let exterior_halo = exterior_halo_star(cfg, comp, &outer);
    if let Some(bad) = scycle.cells().iter().find(|c| !exterior_halo.contains(c)) {
        return Err(Error::Postcondition {
            what: "surrounding ring lies in the exterior halo",
            details: format!("ring cell {bad:?} is not an exterior halo cell"),
        });
    }
    Ok((
        scycle,
        StarDualTrace {
            component: comp.clone(),
            outer_boundary: outer,
            vertex_squares: squares,
            dual_boundary,
            exterior_halo,
        },
    ))
}

/// Splits the halo of an edge-connected component against its boundary
/// cycle: returns the exterior halo cells, and for each boundary edge in
/// cycle order the vacant cell just across it.
pub fn exterior_halo_plus(
    cfg: &Config,
    comp: &CellSet,
    b: &Cycle,
) -> (CellSet, Vec<(Edge, Cell)>) {
    let exterior: CellSet = halo(cfg, comp)
        .into_iter()
        .filter(|c| b.classify_cell_center(*c) == Region::Exterior)
        .collect();
    let by_edge = b
        .edges()
        .into_iter()
        .map(|e| {
            let (p, q) = e.cells();
            let w = if comp.contains(&p) { q } else { p };
            (e, w)
        })
        .collect();
    (exterior, by_edge)
}

/// The cycle around `w` joined with its edge-sharing neighbors inside the
/// exterior halo. The attached boundary edge is asserted to lie on the
/// result.
pub fn local_cycle(exterior_halo: &CellSet, w: Cell, attached: Edge) -> Result<Cycle> {
    if !exterior_halo.contains(&w) {
        return Err(Error::Postcondition {
            what: "across-cell of a boundary edge is in the exterior halo",
            details: format!("cell {w:?} attached to {attached:?}"),
        });
    }
    let mut group: CellSet = [w].into_iter().collect();
    for n in w.plus_neighbors() {
        if exterior_halo.contains(&n) {
            group.insert(n);
        }
    }
    let cyc = trace_single_cycle(&group)?;
    if !cyc.edge_set().contains(&attached) {
        return Err(Error::Postcondition {
            what: "local cycle passes through its attached boundary edge",
            details: format!("edge {attached:?} missing from the cycle around {group:?}"),
        });
    }
    Ok(cyc)
}

/// Grows the component's boundary cycle outward, one boundary edge at a
/// time, until it encloses the whole exterior halo. For each boundary edge
/// still on the working cycle, the across-cell's local group is absorbed;
/// for an edge already strictly inside, any of the across-cell's neighbors
/// still strictly outside are absorbed one at a time (each must touch the
/// working cycle along a full edge and belong to the exterior halo —
/// occupied neighbors from other components are left alone). Returns the
/// final cycle, the per-edge local cycles, and the merge log.
pub fn iterative_merge(
    cfg: &Config,
    comp: &CellSet,
    boundary: &Cycle,
    exterior_halo: &CellSet,
    halo_by_edge: &[(Edge, Cell)],
) -> Result<(Cycle, Vec<Cycle>, Vec<MergeStep>)> {
    let mut region = boundary.interior_cells();
    debug_assert!(region.is_superset(comp));
    let mut current = boundary.clone();
    let mut current_edges = current.edge_set();
    let mut local_cycles = Vec::with_capacity(halo_by_edge.len());
    let mut log: Vec<MergeStep> = Vec::new();
    let mut covered = CellSet::new();

    let fail = |what: &'static str, details: String, log: &[MergeStep]| Error::Postcondition {
        what,
        details: format!("{details}; merge log: {}", describe_log(log)),
    };

    for &(e, w) in halo_by_edge {
        let d = local_cycle(exterior_halo, w, e)?;
        let group = d.interior_cells();
        covered.extend(group.iter().copied());
        local_cycles.push(d);
        if current_edges.contains(&e) {
            region.extend(group.iter().copied());
            current = trace_single_cycle(&region)
                .map_err(|err| fail("group absorption keeps a single cycle", err.to_string(), &log))?;
            current_edges = current.edge_set();
            log.push(MergeStep::Group {
                edge: e,
                across: w,
                added: group.into_iter().collect(),
            });
        } else {
            if current.classify_point_doubled(e.midpoint_doubled()) != Region::Interior {
                return Err(fail(
                    "boundary edge absent from the working cycle lies strictly inside it",
                    format!("edge {e:?}"),
                    &log,
                ));
            }
            let (p, q) = e.cells();
            let x = if comp.contains(&p) { p } else { q };
            for y in w.plus_neighbors() {
                if y == x || current.classify_cell_center(y) != Region::Exterior {
                    continue;
                }
                let g = w.shared_edge(y)?;
                if !current_edges.contains(&g) {
                    return Err(fail(
                        "exterior neighbor of an across-cell touches the working cycle on an edge",
                        format!("cell {y:?} next to {w:?}, shared edge {g:?}"),
                        &log,
                    ));
                }
                if exterior_halo.contains(&y) {
                    region.insert(y);
                    current = trace_single_cycle(&region).map_err(|err| {
                        fail("single-cell absorption keeps a single cycle", err.to_string(), &log)
                    })?;
                    current_edges = current.edge_set();
                    log.push(MergeStep::Single { edge: e, across: w, added: y });
                }
                // Neighbors outside the exterior halo (vacant cells with no
                // corner on the component, or occupied cells of other
                // components) stay outside; the final containment checks
                // below do not involve them.
            }
        }
    }

    // Every exterior halo cell must have been covered by some local group.
    if let Some(missing) = exterior_halo.iter().find(|c| !covered.contains(c)) {
        return Err(fail(
            "every exterior halo cell lies in some local group",
            format!("cell {missing:?} uncovered"),
            &log,
        ));
    }
    // Every edge of the final cycle borders an exterior halo cell.
    let halo_edges: BTreeSet<Edge> = exterior_halo
        .iter()
        .flat_map(|c| c.edges())
        .collect();
    if let Some(bad) = current.edges().into_iter().find(|f| !halo_edges.contains(f)) {
        return Err(fail(
            "final cycle uses only edges of exterior halo cells",
            format!("edge {bad:?}"),
            &log,
        ));
    }
    // The original boundary now lies strictly inside.
    if let Some(bad) = boundary
        .edges()
        .into_iter()
        .find(|f| current.classify_point_doubled(f.midpoint_doubled()) != Region::Interior)
    {
        return Err(fail(
            "component boundary lies strictly inside the final cycle",
            format!("edge {bad:?}"),
            &log,
        ));
    }
    // The component and its whole halo sit strictly inside.
    for c in comp.iter().chain(halo(cfg, comp).iter()) {
        if current.classify_cell_center(*c) != Region::Interior {
            return Err(fail(
                "component and halo lie strictly inside the final cycle",
                format!("cell {c:?}"),
                &log,
            ));
        }
    }
    Ok((current, local_cycles, log))
}

/// Reads the star cycle of cells off the final cycle: each edge borders
/// exactly one exterior halo cell; consecutive duplicates collapse
/// (cyclically).
pub fn extract_scycle(final_cycle: &Cycle, exterior_halo: &CellSet) -> Result<SCycle> {
    let mut seq: Vec<Cell> = Vec::new();
    for e in final_cycle.edges() {
        let (p, q) = e.cells();
        let z = match (exterior_halo.contains(&p), exterior_halo.contains(&q)) {
            (true, false) => p,
            (false, true) => q,
            (true, true) => {
                return Err(Error::Postcondition {
                    what: "final-cycle edge borders exactly one exterior halo cell",
                    details: format!("edge {e:?} borders both {p:?} and {q:?}"),
                })
            }
            (false, false) => {
                return Err(Error::Postcondition {
                    what: "final-cycle edge borders exactly one exterior halo cell",
                    details: format!("edge {e:?} borders neither incident cell"),
                })
            }
        };
        if seq.last() != Some(&z) {
            seq.push(z);
        }
    }
    while seq.len() > 1 && seq.first() == seq.last() {
        seq.pop();
    }
    SCycle::new(seq, Mode::Star).map_err(|err| Error::Postcondition {
        what: "extracted ring is a valid corner-connected cell cycle",
        details: err.to_string(),
    })
}

/// Builds the star-connected cycle of vacant cells surrounding a finite
/// edge-connected component: trace its boundary, split the halo, grow the
/// boundary over the exterior halo by iterative merging, and read the cell
/// ring off the final cycle.
pub fn dual_star_cycle(cfg: &Config, comp: &CellSet) -> Result<(SCycle, PlusDualTrace)> {
    let b = outermost_boundary(cfg, comp, Mode::Plus)?;
    ensure_maximal(cfg, comp, Mode::Plus)?;
    let boundary = b.cycles.into_iter().next().expect("one cycle");
    let (exterior_halo, halo_by_edge) = exterior_halo_plus(cfg, comp, &boundary);
    let (final_cycle, local_cycles, merge_log) =
        iterative_merge(cfg, comp, &boundary, &exterior_halo, &halo_by_edge)?;
    let scycle = extract_scycle(&final_cycle, &exterior_halo)?;
    Ok((
        scycle,
        PlusDualTrace {
            component: comp.clone(),
            boundary,
            exterior_halo,
            halo_by_edge,
            local_cycles,
            merge_log,
            final_cycle,
        },
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boundary::boundary_edges;
    use crate::grid::{component, corner};

    fn cells(list: &[(i64, i64)]) -> CellSet {
        list.iter().map(|&(i, j)| cell(i, j)).collect()
    }

    fn ring(list: &[(i64, i64)], mode: Mode) -> SCycle {
        SCycle::new(list.iter().map(|&(i, j)| cell(i, j)).collect(), mode).unwrap()
    }

    fn star_comp(cfg: &Config, seed: (i64, i64)) -> CellSet {
        component(cfg, cell(seed.0, seed.1), Mode::Star)
    }

    fn plus_comp(cfg: &Config, seed: (i64, i64)) -> CellSet {
        component(cfg, cell(seed.0, seed.1), Mode::Plus)
    }

    #[test]
    fn scycle_canonicalizes_rotation_and_orientation() {
        let a = ring(&[(0, 0), (1, 0), (1, 1), (0, 1)], Mode::Plus);
        let b = ring(&[(1, 1), (1, 0), (0, 0), (0, 1)], Mode::Plus);
        let c = ring(&[(0, 1), (1, 1), (1, 0), (0, 0)], Mode::Plus);
        assert_eq!(a, b);
        assert_eq!(a, c);
        assert_eq!(a.cells()[0], cell(0, 0));
    }

    #[test]
    fn scycle_rejects_duplicates_and_bad_adjacency() {
        assert!(SCycle::new(vec![cell(0, 0), cell(1, 0), cell(0, 0)], Mode::Plus).is_err());
        // Diagonal steps are not edge-adjacent.
        assert!(SCycle::new(vec![cell(0, 0), cell(1, 1), cell(1, 0), cell(0, 1)], Mode::Plus)
            .is_err());
        assert!(SCycle::new(vec![cell(0, 0), cell(1, 0)], Mode::Star).is_err());
    }

    #[test]
    fn single_cell_plus_ring_is_the_eight_ring() {
        let cfg = Config::new([cell(0, 0)]);
        let comp = star_comp(&cfg, (0, 0));
        let (ring_out, trace) = dual_plus_cycle(&cfg, &comp).unwrap();
        assert_eq!(
            trace.vertex_squares,
            cells(&[(0, 0), (1, 0), (0, 1), (1, 1)])
        );
        assert_eq!(trace.dual_boundary.len(), 8);
        assert_eq!(trace.exterior_halo.len(), 8);
        let expected = ring(
            &[
                (-1, -1),
                (0, -1),
                (1, -1),
                (1, 0),
                (1, 1),
                (0, 1),
                (-1, 1),
                (-1, 0),
            ],
            Mode::Plus,
        );
        assert_eq!(ring_out, expected);
    }

    #[test]
    fn domino_plus_ring_is_the_ten_ring() {
        let cfg = Config::new([cell(0, 0), cell(1, 0)]);
        let comp = star_comp(&cfg, (0, 0));
        let (ring_out, trace) = dual_plus_cycle(&cfg, &comp).unwrap();
        assert_eq!(trace.vertex_squares.len(), 6);
        let expected = ring(
            &[
                (-1, -1),
                (0, -1),
                (1, -1),
                (2, -1),
                (2, 0),
                (2, 1),
                (1, 1),
                (0, 1),
                (-1, 1),
                (-1, 0),
            ],
            Mode::Plus,
        );
        assert_eq!(ring_out, expected);
        assert_eq!(ring_out.cell_set(), halo(&cfg, &comp));
    }

    #[test]
    fn diagonal_pair_plus_ring_is_the_twelve_ring() {
        let cfg = Config::new([cell(0, 0), cell(1, 1)]);
        let comp = star_comp(&cfg, (0, 0));
        let (ring_out, trace) = dual_plus_cycle(&cfg, &comp).unwrap();
        // One covered square per distinct boundary corner; the pinch corner
        // is shared.
        assert_eq!(trace.vertex_squares.len(), 7);
        assert_eq!(trace.exterior_halo.len(), 12);
        let expected = ring(
            &[
                (-1, -1),
                (0, -1),
                (1, -1),
                (1, 0),
                (2, 0),
                (2, 1),
                (2, 2),
                (1, 2),
                (0, 2),
                (0, 1),
                (-1, 1),
                (-1, 0),
            ],
            Mode::Plus,
        );
        assert_eq!(ring_out, expected);
    }

    #[test]
    fn hollow_ring_exterior_halo_excludes_the_enclosed_center() {
        let occupied: Vec<Cell> = (0..3)
            .flat_map(|i| (0..3).map(move |j| cell(i, j)))
            .filter(|c| *c != cell(1, 1))
            .collect();
        let cfg = Config::new(occupied);
        let comp = star_comp(&cfg, (0, 0));
        let b = outermost_boundary(&cfg, &comp, Mode::Star).unwrap();
        let ext = exterior_halo_star(&cfg, &comp, &b);
        assert_eq!(ext.len(), 16);
        assert!(!ext.contains(&cell(1, 1)));
    }

    #[test]
    fn single_cell_star_ring_and_final_cycle() {
        let cfg = Config::new([cell(0, 0)]);
        let comp = plus_comp(&cfg, (0, 0));
        let (ring_out, trace) = dual_star_cycle(&cfg, &comp).unwrap();
        // Final cycle = perimeter of the 3x3 block around the cell.
        let block: CellSet = (-1..2).flat_map(|i| (-1..2).map(move |j| cell(i, j))).collect();
        assert_eq!(trace.final_cycle, trace_single_cycle(&block).unwrap());
        assert_eq!(trace.final_cycle.len(), 12);
        let expected = ring(
            &[
                (-1, -1),
                (0, -1),
                (1, -1),
                (1, 0),
                (1, 1),
                (0, 1),
                (-1, 1),
                (-1, 0),
            ],
            Mode::Star,
        );
        assert_eq!(ring_out, expected);
        // Four group merges, no single-cell absorptions.
        assert_eq!(trace.merge_log.len(), 4);
        assert!(trace
            .merge_log
            .iter()
            .all(|s| matches!(s, MergeStep::Group { .. })));
    }

    #[test]
    fn single_cell_local_cycle_is_a_three_strip() {
        let cfg = Config::new([cell(0, 0)]);
        let comp = plus_comp(&cfg, (0, 0));
        let b = outermost_boundary(&cfg, &comp, Mode::Plus).unwrap();
        let boundary = &b.cycles[0];
        let (ext, _) = exterior_halo_plus(&cfg, &comp, boundary);
        let top = Edge::horizontal(corner(0, 1));
        let cyc = local_cycle(&ext, cell(0, 1), top).unwrap();
        let strip = cells(&[(-1, 1), (0, 1), (1, 1)]);
        assert_eq!(cyc, trace_single_cycle(&strip).unwrap());
        assert!(cyc.edge_set().contains(&top));
    }

    #[test]
    fn domino_star_ring_and_block_final_cycle() {
        let cfg = Config::new([cell(0, 0), cell(1, 0)]);
        let comp = plus_comp(&cfg, (0, 0));
        let (ring_out, trace) = dual_star_cycle(&cfg, &comp).unwrap();
        let block: CellSet = (-1..3).flat_map(|i| (-1..2).map(move |j| cell(i, j))).collect();
        assert_eq!(trace.final_cycle, trace_single_cycle(&block).unwrap());
        assert_eq!(trace.final_cycle.len(), 14);
        assert_eq!(ring_out.len(), 10);
        assert_eq!(ring_out.cell_set(), halo(&cfg, &comp));
        // The second bottom edge is already inside when processed, so its
        // stranded corner neighbor is absorbed one cell at a time.
        assert!(trace
            .merge_log
            .iter()
            .any(|s| matches!(s, MergeStep::Single { .. })));
    }

    #[test]
    fn l_tromino_star_ring_is_the_eleven_ring() {
        let cfg = Config::new([cell(0, 0), cell(1, 0), cell(0, 1)]);
        let comp = plus_comp(&cfg, (0, 0));
        let (ring_out, trace) = dual_star_cycle(&cfg, &comp).unwrap();
        let expected = ring(
            &[
                (-1, -1),
                (0, -1),
                (1, -1),
                (2, -1),
                (2, 0),
                (2, 1),
                (1, 2),
                (0, 2),
                (-1, 2),
                (-1, 1),
                (-1, 0),
            ],
            Mode::Star,
        );
        assert_eq!(ring_out, expected);
        // The in-notch halo cell is enclosed but not part of the ring.
        assert!(trace.exterior_halo.contains(&cell(1, 1)));
        assert!(!ring_out.contains(cell(1, 1)));
    }

    #[test]
    fn pocketed_component_final_cycle_matches_direct_contour() {
        // A U-shape: the pocket cell is exterior halo reached through the
        // pocket mouth.
        let occupied = [cell(0, 0), cell(1, 0), cell(2, 0), cell(0, 1), cell(2, 1)];
        let cfg = Config::new(occupied);
        let comp = plus_comp(&cfg, (0, 0));
        assert_eq!(comp.len(), 5);
        let (ring_out, trace) = dual_star_cycle(&cfg, &comp).unwrap();
        let mut union = comp.clone();
        union.extend(trace.exterior_halo.iter().copied());
        assert_eq!(trace.final_cycle, trace_single_cycle(&union).unwrap());
        // Pocket cell is absorbed into the interior, not part of the ring.
        assert!(trace.exterior_halo.contains(&cell(1, 1)));
        assert!(!ring_out.contains(cell(1, 1)));
        // Every local cycle passes through its boundary edge.
        for ((e, _), d) in trace.halo_by_edge.iter().zip(&trace.local_cycles) {
            assert!(d.edge_set().contains(e));
        }
    }

    #[test]
    fn isolated_cell_between_occupied_diagonals_gets_a_four_ring() {
        // The component is the center cell; its four diagonal neighbors are
        // occupied (separate components), so the ring is the four
        // edge-neighbors, consecutive ones sharing only corners.
        let cfg = Config::new([cell(1, 1), cell(0, 0), cell(2, 0), cell(0, 2), cell(2, 2)]);
        let comp = plus_comp(&cfg, (1, 1));
        assert_eq!(comp, cells(&[(1, 1)]));
        let (ring_out, trace) = dual_star_cycle(&cfg, &comp).unwrap();
        let expected = ring(&[(1, 0), (2, 1), (1, 2), (0, 1)], Mode::Star);
        assert_eq!(ring_out, expected);
        // The final cycle is the 12-edge contour of the plus-pentomino
        // region made of the component and its ring.
        assert_eq!(trace.final_cycle.len(), 12);
        let pentomino = cells(&[(1, 1), (1, 0), (0, 1), (2, 1), (1, 2)]);
        assert_eq!(trace.final_cycle, trace_single_cycle(&pentomino).unwrap());
    }

    #[test]
    fn ring_boundary_matches_final_cycle_even_with_pinches() {
        // Same configuration: the ring's own outermost boundary (star mode)
        // pinches at the component's corners yet stays a single cycle equal
        // to the final cycle.
        let cfg = Config::new([cell(1, 1), cell(0, 0), cell(2, 0), cell(0, 2), cell(2, 2)]);
        let comp = plus_comp(&cfg, (1, 1));
        let (ring_out, trace) = dual_star_cycle(&cfg, &comp).unwrap();
        let ring_cfg = Config::new(ring_out.cell_set());
        let rb = outermost_boundary(&ring_cfg, &ring_out.cell_set(), Mode::Star).unwrap();
        assert_eq!(rb.cycles.len(), 1);
        assert_eq!(rb.cycles[0].edge_set(), trace.final_cycle.edge_set());
    }

    #[test]
    fn non_maximal_component_is_rejected() {
        let cfg = Config::new([cell(0, 0), cell(1, 0)]);
        let partial = cells(&[(0, 0)]);
        assert!(matches!(
            dual_star_cycle(&cfg, &partial).unwrap_err(),
            Error::InvalidInput(_)
        ));
        assert!(matches!(
            dual_plus_cycle(&cfg, &partial).unwrap_err(),
            Error::InvalidInput(_)
        ));
    }

    #[test]
    fn empty_component_is_rejected() {
        let cfg = Config::new([cell(5, 5)]);
        let empty = CellSet::new();
        assert!(matches!(
            dual_plus_cycle(&cfg, &empty).unwrap_err(),
            Error::EmptyComponent
        ));
        assert!(matches!(
            dual_star_cycle(&cfg, &empty).unwrap_err(),
            Error::EmptyComponent
        ));
    }

    #[test]
    fn every_boundary_edge_has_one_across_cell() {
        let cfg = Config::new([cell(0, 0), cell(1, 0), cell(1, 1)]);
        let comp = plus_comp(&cfg, (0, 0));
        let b = outermost_boundary(&cfg, &comp, Mode::Plus).unwrap();
        let boundary = &b.cycles[0];
        let (_, by_edge) = exterior_halo_plus(&cfg, &comp, boundary);
        assert_eq!(by_edge.len(), boundary.len());
        assert_eq!(
            boundary.edge_set(),
            boundary_edges(&comp),
            "every boundary edge of this convex-ish component is outermost"
        );
        for (e, w) in by_edge {
            assert!(cfg.is_vacant(w));
            let (p, q) = e.cells();
            assert!(p == w || q == w);
        }
    }
}
