//! Executable certificates for the surrounding-cycle constructions.
//!
//! Every guaranteed property is re-derived here from first principles —
//! membership, adjacency, vacancy, containment, clearance — rather than
//! trusted from the construction code, so a report is independent evidence.
//! Exhaustive cycle enumeration provides a brute-force uniqueness oracle on
//! small instances, and a seeded trial driver batches randomized
//! configurations deterministically.

use std::collections::BTreeSet;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::boundary::{outermost_boundary, Cycle, OutermostBoundary, Region};
use crate::duality::{dual_plus_cycle, dual_star_cycle, SCycle};
use crate::grid::{component, halo, Cell, CellSet, Config, Corner, Edge, Mode, Rect};
use crate::{Error, Result};

/// One named predicate outcome. A failed check always carries a witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub witness: Option<String>,
}

/// The outcome of one property suite on one configuration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropertyReport {
    pub checks: Vec<Check>,
    /// True when the origin cell was vacant, so there was nothing to check.
    /// A skipped report is never counted as a pass.
    pub skipped: bool,
}

impl PropertyReport {
    fn skipped_report() -> Self {
        PropertyReport { checks: Vec::new(), skipped: true }
    }

    /// Conjunction of all checks.
    pub fn overall(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    /// Line-delimited rendering: one check per line.
    pub fn to_lines(&self) -> Vec<String> {
        if self.skipped {
            return vec!["skipped: vacant origin".to_string()];
        }
        self.checks
            .iter()
            .map(|c| {
                if c.passed {
                    format!("check {}: pass", c.name)
                } else {
                    format!(
                        "check {}: FAIL witness={}",
                        c.name,
                        c.witness.as_deref().unwrap_or("-")
                    )
                }
            })
            .collect()
    }
}

/// Accumulates checks; a check's witness is `None` exactly when it passed.
struct ReportBuilder {
    checks: Vec<Check>,
}

impl ReportBuilder {
    fn new() -> Self {
        ReportBuilder { checks: Vec::new() }
    }

    fn push(&mut self, name: &'static str, witness: Option<String>) {
        let witness = witness.map(|w| w.replace('\n', " "));
        self.checks.push(Check { name, passed: witness.is_none(), witness });
    }

    fn finish(self) -> PropertyReport {
        PropertyReport { checks: self.checks, skipped: false }
    }
}

fn scycle_witnesses(cfg: &Config, s: &SCycle) -> [Option<String>; 3] {
    let cells = s.cells();
    let distinct = {
        let set: BTreeSet<Cell> = cells.iter().copied().collect();
        if set.len() == cells.len() {
            None
        } else {
            Some(format!("{} cells but only {} distinct", cells.len(), set.len()))
        }
    };
    let adjacency = (cells.len() < 3)
        .then(|| format!("only {} cells", cells.len()))
        .or_else(|| {
            (0..cells.len()).find_map(|k| {
                let p = cells[k];
                let q = cells[(k + 1) % cells.len()];
                (!p.adjacent(q, s.mode()))
                    .then(|| format!("consecutive cells {p:?} and {q:?} not {}-adjacent", s.mode()))
            })
        });
    let vacancy = cells
        .iter()
        .find(|c| cfg.is_occupied(**c))
        .map(|c| format!("cell {c:?} occupied"));
    [distinct, adjacency, vacancy]
}

/// Checks that a candidate cell cycle is structurally valid and vacant in
/// the given configuration.
pub fn check_scycle(cfg: &Config, s: &SCycle) -> PropertyReport {
    let [distinct, adjacency, vacancy] = scycle_witnesses(cfg, s);
    let mut rb = ReportBuilder::new();
    rb.push("cells-distinct", distinct);
    rb.push("cells-cyclically-adjacent", adjacency);
    rb.push("cells-vacant", vacancy);
    rb.finish()
}

/// An axis-aligned segment in doubled coordinates.
type Seg = ((i64, i64), (i64, i64));

fn point_seg_dist2(p: (i64, i64), s: Seg) -> i64 {
    let ((x1, y1), (x2, y2)) = s;
    let cx = p.0.clamp(x1.min(x2), x1.max(x2));
    let cy = p.1.clamp(y1.min(y2), y1.max(y2));
    (p.0 - cx) * (p.0 - cx) + (p.1 - cy) * (p.1 - cy)
}

/// Squared distance between two axis-aligned segments, exact in doubled
/// coordinates. Axis-aligned segments intersect exactly when their bounding
/// boxes do; otherwise the minimum is attained at an endpoint.
fn seg_pair_dist2(a: Seg, b: Seg) -> i64 {
    let (ax1, ax2) = ((a.0 .0).min(a.1 .0), (a.0 .0).max(a.1 .0));
    let (ay1, ay2) = ((a.0 .1).min(a.1 .1), (a.0 .1).max(a.1 .1));
    let (bx1, bx2) = ((b.0 .0).min(b.1 .0), (b.0 .0).max(b.1 .0));
    let (by1, by2) = ((b.0 .1).min(b.1 .1), (b.0 .1).max(b.1 .1));
    if ax1 <= bx2 && bx1 <= ax2 && ay1 <= by2 && by1 <= ay2 {
        return 0;
    }
    point_seg_dist2(a.0, b)
        .min(point_seg_dist2(a.1, b))
        .min(point_seg_dist2(b.0, a))
        .min(point_seg_dist2(b.1, a))
}

/// The shifted-frame cycle as segments in doubled primal coordinates:
/// shifted corner `(x, y)` sits at primal point `(x - 1/2, y - 1/2)`.
fn shifted_cycle_segments(dual: &Cycle) -> Vec<Seg> {
    let pts: Vec<(i64, i64)> = dual
        .corners()
        .iter()
        .map(|c| (2 * c.a - 1, 2 * c.b - 1))
        .collect();
    (0..pts.len())
        .map(|k| (pts[k], pts[(k + 1) % pts.len()]))
        .collect()
}

fn boundary_segments(b: &OutermostBoundary) -> Vec<Seg> {
    b.cycles
        .iter()
        .flat_map(|cy| cy.edges())
        .map(|e| e.endpoints_doubled())
        .collect()
}

/// Minimum squared doubled distance between the shifted-frame cycle and the
/// component boundary; a real clearance of 1/2 corresponds to the value 1.
fn min_clearance2_doubled(dual: &Cycle, outer: &OutermostBoundary) -> i64 {
    let dual_segs = shifted_cycle_segments(dual);
    min_segs_dist2(&dual_segs, &boundary_segments(outer))
}

fn min_segs_dist2(a: &[Seg], b: &[Seg]) -> i64 {
    let mut best = i64::MAX;
    for sa in a {
        for sb in b {
            best = best.min(seg_pair_dist2(*sa, *sb));
        }
    }
    best
}

/// Minimum squared doubled distance between a ring's center polygon and a
/// component's outermost boundary; a real clearance of 1/2 corresponds to
/// the value 1. For a constructed ring this equals the shifted-frame
/// distance, since the center polygon and the shifted-frame cycle coincide.
pub fn ring_clearance2_doubled(ring: &SCycle, outer: &OutermostBoundary) -> i64 {
    let pts: Vec<(i64, i64)> = ring.cells().iter().map(|c| c.center_doubled()).collect();
    let ring_segs: Vec<Seg> = (0..pts.len())
        .map(|k| (pts[k], pts[(k + 1) % pts.len()]))
        .collect();
    min_segs_dist2(&ring_segs, &boundary_segments(outer))
}

/// Runs the full property suite for the plus ring around the star component
/// of `origin`: ring validity, halo membership, single outermost boundary,
/// containment of the component and halo, exact half-unit clearance, and
/// the structural properties of the component's boundary cycles.
pub fn check_theorem_star(cfg: &Config, origin: Cell) -> PropertyReport {
    let comp = component(cfg, origin, Mode::Star);
    if comp.is_empty() {
        return PropertyReport::skipped_report();
    }
    let mut rb = ReportBuilder::new();
    let (ring, trace) = match dual_plus_cycle(cfg, &comp) {
        Ok(v) => v,
        Err(e) => {
            rb.push("construction", Some(e.to_string()));
            return rb.finish();
        }
    };
    rb.push("construction", None);

    let [distinct, adjacency, vacancy] = scycle_witnesses(cfg, &ring);
    rb.push("ring-cells-distinct", distinct);
    rb.push("ring-cells-cyclically-adjacent", adjacency);
    rb.push("ring-cells-vacant", vacancy);

    let h = halo(cfg, &comp);
    rb.push(
        "ring-in-halo",
        ring.cells()
            .iter()
            .find(|c| !h.contains(c))
            .map(|c| format!("ring cell {c:?} shares no corner with the component")),
    );
    rb.push(
        "ring-in-exterior-halo",
        ring.cells()
            .iter()
            .find(|c| !trace.exterior_halo.contains(c))
            .map(|c| format!("ring cell {c:?} not in the exterior halo")),
    );

    let ring_cells = ring.cell_set();
    let ring_cfg = Config::new(ring_cells.iter().copied());
    let ring_boundary = match outermost_boundary(&ring_cfg, &ring_cells, Mode::Plus) {
        Ok(b) if b.cycles.len() == 1 => {
            rb.push("ring-boundary-single-cycle", None);
            Some(b.cycles.into_iter().next().expect("one cycle"))
        }
        Ok(b) => {
            rb.push(
                "ring-boundary-single-cycle",
                Some(format!("{} cycles", b.cycles.len())),
            );
            None
        }
        Err(e) => {
            rb.push("ring-boundary-single-cycle", Some(e.to_string()));
            None
        }
    };

    rb.push(
        "ring-contains-component-and-halo",
        match &ring_boundary {
            Some(cy) => comp
                .iter()
                .chain(h.iter())
                .find(|c| {
                    !ring_cells.contains(c) && cy.classify_cell_center(**c) != Region::Interior
                })
                .map(|c| format!("cell {c:?} neither on the ring nor strictly inside it")),
            None => Some("no single ring boundary to test against".to_string()),
        },
    );

    let clearance2 = min_clearance2_doubled(&trace.dual_boundary, &trace.outer_boundary);
    rb.push(
        "ring-clearance",
        (clearance2 < 1).then(|| {
            format!("squared doubled clearance {clearance2} < 1 (real clearance < 1/2)")
        }),
    );

    let cycles = &trace.outer_boundary.cycles;
    rb.push("boundary-cycles-share-at-most-one-corner", {
        let mut witness = None;
        'outer: for (k, a) in cycles.iter().enumerate() {
            let ca = a.corner_set();
            for b in &cycles[k + 1..] {
                let shared = b.corners().iter().filter(|c| ca.contains(c)).count();
                if shared > 1 {
                    witness = Some(format!("two boundary cycles share {shared} corners"));
                    break 'outer;
                }
            }
        }
        witness
    });
    rb.push("boundary-interiors-disjoint", {
        let interiors: Vec<CellSet> = cycles.iter().map(|c| c.interior_cells()).collect();
        let mut witness = None;
        'outer: for (k, a) in interiors.iter().enumerate() {
            for b in &interiors[k + 1..] {
                if let Some(c) = a.intersection(b).next() {
                    witness = Some(format!("cell {c:?} interior to two boundary cycles"));
                    break 'outer;
                }
            }
        }
        witness
    });
    rb.push("boundary-connected", {
        let mut adjacency: std::collections::BTreeMap<Corner, Vec<Corner>> =
            std::collections::BTreeMap::new();
        for cy in cycles {
            for e in cy.edges() {
                let (p, q) = e.endpoints();
                adjacency.entry(p).or_default().push(q);
                adjacency.entry(q).or_default().push(p);
            }
        }
        let mut seen: BTreeSet<Corner> = BTreeSet::new();
        if let Some((&start, _)) = adjacency.iter().next() {
            let mut queue = vec![start];
            seen.insert(start);
            while let Some(v) = queue.pop() {
                for &n in &adjacency[&v] {
                    if seen.insert(n) {
                        queue.push(n);
                    }
                }
            }
        }
        (seen.len() != adjacency.len()).then(|| {
            format!(
                "boundary corner graph has {} of {} corners reachable",
                seen.len(),
                adjacency.len()
            )
        })
    });
    rb.finish()
}

/// Runs the full property suite for the star ring around the plus component
/// of `origin`: ring validity, halo membership, the ring's own boundary
/// being a single cycle equal to the final merge cycle, containment, local
/// cycle coverage, and the final cycle's vacancy/enclosure properties.
pub fn check_theorem_plus(cfg: &Config, origin: Cell) -> PropertyReport {
    let comp = component(cfg, origin, Mode::Plus);
    if comp.is_empty() {
        return PropertyReport::skipped_report();
    }
    let mut rb = ReportBuilder::new();
    let (ring, trace) = match dual_star_cycle(cfg, &comp) {
        Ok(v) => v,
        Err(e) => {
            rb.push("construction", Some(e.to_string()));
            return rb.finish();
        }
    };
    rb.push("construction", None);

    let [distinct, adjacency, vacancy] = scycle_witnesses(cfg, &ring);
    rb.push("ring-cells-distinct", distinct);
    rb.push("ring-cells-cyclically-adjacent", adjacency);
    rb.push("ring-cells-vacant", vacancy);

    let h = halo(cfg, &comp);
    rb.push(
        "ring-in-halo",
        ring.cells()
            .iter()
            .find(|c| !h.contains(c))
            .map(|c| format!("ring cell {c:?} shares no corner with the component")),
    );

    let ring_cells = ring.cell_set();
    let ring_cfg = Config::new(ring_cells.iter().copied());
    let ring_boundary = match outermost_boundary(&ring_cfg, &ring_cells, Mode::Star) {
        Ok(b) if b.cycles.len() == 1 => {
            rb.push("ring-boundary-single-cycle", None);
            Some(b.cycles.into_iter().next().expect("one cycle"))
        }
        Ok(b) => {
            rb.push(
                "ring-boundary-single-cycle",
                Some(format!("{} cycles", b.cycles.len())),
            );
            None
        }
        Err(e) => {
            rb.push("ring-boundary-single-cycle", Some(e.to_string()));
            None
        }
    };
    rb.push(
        "ring-boundary-matches-final-cycle",
        match &ring_boundary {
            Some(cy) if cy.edge_set() == trace.final_cycle.edge_set() => None,
            Some(cy) => {
                let ring_edges = cy.edge_set();
                let final_edges = trace.final_cycle.edge_set();
                let diff = ring_edges.symmetric_difference(&final_edges).next();
                Some(format!("edge sets differ, e.g. {diff:?}"))
            }
            None => Some("no single ring boundary to compare".to_string()),
        },
    );
    rb.push(
        "ring-contains-component-and-halo",
        match &ring_boundary {
            Some(cy) => comp
                .iter()
                .chain(h.iter())
                .find(|c| {
                    !ring_cells.contains(c) && cy.classify_cell_center(**c) != Region::Interior
                })
                .map(|c| format!("cell {c:?} neither on the ring nor strictly inside it")),
            None => Some("no single ring boundary to test against".to_string()),
        },
    );

    rb.push("local-cycles-cover-exterior-halo", {
        let mut covered = CellSet::new();
        for d in &trace.local_cycles {
            covered.extend(d.interior_cells());
        }
        trace
            .exterior_halo
            .iter()
            .find(|c| !covered.contains(c))
            .map(|c| format!("exterior halo cell {c:?} in no local cycle"))
    });
    rb.push(
        "local-cycles-contain-their-edges",
        trace
            .halo_by_edge
            .iter()
            .zip(&trace.local_cycles)
            .find(|((e, _), d)| !d.edge_set().contains(e))
            .map(|((e, _), _)| format!("boundary edge {e:?} not on its local cycle")),
    );
    rb.push(
        "final-cycle-contains-component-and-halo",
        comp.iter()
            .chain(h.iter())
            .find(|c| trace.final_cycle.classify_cell_center(**c) != Region::Interior)
            .map(|c| format!("cell {c:?} not strictly inside the final cycle")),
    );
    rb.push("final-cycle-edges-vacant", {
        let halo_edges: BTreeSet<Edge> =
            trace.exterior_halo.iter().flat_map(|c| c.edges()).collect();
        trace
            .final_cycle
            .edges()
            .into_iter()
            .find(|e| !halo_edges.contains(e))
            .map(|e| format!("final-cycle edge {e:?} borders no exterior halo cell"))
    });
    rb.push(
        "final-cycle-encloses-boundary",
        trace
            .boundary
            .edges()
            .into_iter()
            .find(|e| {
                trace.final_cycle.classify_point_doubled(e.midpoint_doubled()) != Region::Interior
            })
            .map(|e| format!("component boundary edge {e:?} not strictly inside the final cycle")),
    );
    rb.finish()
}

/// Exhaustive-enumeration guard: cell sets larger than this are rejected.
pub const ENUMERATION_LIMIT: usize = 20;

/// All canonical cell cycles (length at least 3) whose cells lie in the
/// given set, by depth-first search rooted at each cycle's smallest cell.
pub fn enumerate_scycles(cells: &CellSet, mode: Mode) -> Result<Vec<SCycle>> {
    if cells.len() > ENUMERATION_LIMIT {
        return Err(Error::TooLarge {
            what: "cell set for cycle enumeration",
            size: cells.len(),
            limit: ENUMERATION_LIMIT,
        });
    }
    let mut found: BTreeSet<SCycle> = BTreeSet::new();
    let mut path: Vec<Cell> = Vec::new();
    let mut on_path = CellSet::new();
    for &root in cells.iter() {
        path.push(root);
        on_path.insert(root);
        dfs_cycles(cells, mode, root, &mut path, &mut on_path, &mut found);
        path.pop();
        on_path.remove(&root);
    }
    Ok(found.into_iter().collect())
}

fn dfs_cycles(
    cells: &CellSet,
    mode: Mode,
    root: Cell,
    path: &mut Vec<Cell>,
    on_path: &mut CellSet,
    found: &mut BTreeSet<SCycle>,
) {
    let current = *path.last().expect("nonempty path");
    for next in current.neighbors(mode) {
        if next == root && path.len() >= 3 && path[1] < current {
            found.insert(SCycle::from_cells_unchecked(path.clone(), mode));
        }
        if next > root && cells.contains(&next) && !on_path.contains(&next) {
            path.push(next);
            on_path.insert(next);
            dfs_cycles(cells, mode, root, path, on_path, found);
            path.pop();
            on_path.remove(&next);
        }
    }
}

/// A seeded batch of randomized configurations on a window.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrialPlan {
    pub window: Rect,
    pub p: f64,
    pub seed: u64,
    pub trials: u64,
}

/// Which property suites a trial batch runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Star,
    Plus,
    Both,
}

/// Occupies each window cell independently with probability `p`, reading
/// the cells in row-major window order from stream `stream` of the seeded
/// generator. Identical inputs give identical configurations.
pub fn random_config(window: Rect, p: f64, seed: u64, stream: u64) -> Config {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    let occupied: Vec<Cell> = window.cells().filter(|_| rng.random_bool(p)).collect();
    Config::with_window(occupied, window).expect("window cells lie in the window")
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Outcome {
    Pass,
    Skip,
    Fail { check: &'static str, witness: String },
}

fn outcome_of(report: &PropertyReport) -> Outcome {
    if report.skipped {
        return Outcome::Skip;
    }
    match report.checks.iter().find(|c| !c.passed) {
        Some(c) => Outcome::Fail {
            check: c.name,
            witness: c.witness.clone().unwrap_or_default(),
        },
        None => Outcome::Pass,
    }
}

/// First failure within a trial batch.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub trial: u64,
    pub check: &'static str,
    pub witness: String,
}

/// Pass/fail/skip tallies for one suite across a batch.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SuiteCounts {
    pub pass: u64,
    pub fail: u64,
    pub skip: u64,
    pub first_failure: Option<Failure>,
}

impl SuiteCounts {
    fn add(&mut self, trial: u64, outcome: Outcome) {
        match outcome {
            Outcome::Pass => self.pass += 1,
            Outcome::Skip => self.skip += 1,
            Outcome::Fail { check, witness } => {
                self.fail += 1;
                if self.first_failure.is_none() {
                    self.first_failure = Some(Failure { trial, check, witness });
                }
            }
        }
    }
}

/// Deterministic summary of a trial batch.
#[derive(Debug, Clone, PartialEq)]
pub struct TrialSummary {
    pub plan: TrialPlan,
    pub star: Option<SuiteCounts>,
    pub plus: Option<SuiteCounts>,
}

impl TrialSummary {
    /// True when no executed suite recorded a failure.
    pub fn ok(&self) -> bool {
        self.star.iter().chain(self.plus.iter()).all(|c| c.fail == 0)
    }
}

impl fmt::Display for TrialSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w = self.plan.window;
        writeln!(
            f,
            "window={}x{}@({},{}) p={} seed={} trials={}",
            w.w, w.h, w.x, w.y, self.plan.p, self.plan.seed, self.plan.trials
        )?;
        for (name, counts) in [("star", &self.star), ("plus", &self.plus)] {
            if let Some(c) = counts {
                writeln!(f, "{name}: pass={} fail={} skip={}", c.pass, c.fail, c.skip)?;
                if let Some(fail) = &c.first_failure {
                    writeln!(
                        f,
                        "{name} first-failure: trial={} check={} witness={}",
                        fail.trial, fail.check, fail.witness
                    )?;
                }
            }
        }
        write!(f, "result: {}", if self.ok() { "ok" } else { "FAIL" })
    }
}

/// Runs the requested property suites over `plan.trials` independent
/// seeded configurations in parallel, with the origin at the window's
/// center cell. The summary is deterministic for a given plan: trials are
/// indexed by generator stream, and aggregation follows trial order.
///
/// The thread count honors the `PERC_DUALITY_THREADS` environment variable
/// when set to a positive integer.
pub fn run_trials(plan: &TrialPlan, which: Suite) -> TrialSummary {
    assert!(
        plan.trials >= 1 && (0.0..=1.0).contains(&plan.p),
        "trial plan needs trials >= 1 and p in [0, 1]"
    );
    let origin = plan.window.center();
    let run_star = matches!(which, Suite::Star | Suite::Both);
    let run_plus = matches!(which, Suite::Plus | Suite::Both);
    let per_trial = |trial: u64| {
        let cfg = random_config(plan.window, plan.p, plan.seed, trial);
        let star = run_star.then(|| outcome_of(&check_theorem_star(&cfg, origin)));
        let plus = run_plus.then(|| outcome_of(&check_theorem_plus(&cfg, origin)));
        (star, plus)
    };
    let outcomes: Vec<(Option<Outcome>, Option<Outcome>)> = with_thread_override(|| {
        (0..plan.trials).into_par_iter().map(per_trial).collect()
    });
    let mut star = run_star.then(SuiteCounts::default);
    let mut plus = run_plus.then(SuiteCounts::default);
    for (trial, (s, p)) in outcomes.into_iter().enumerate() {
        if let (Some(counts), Some(outcome)) = (star.as_mut(), s) {
            counts.add(trial as u64, outcome);
        }
        if let (Some(counts), Some(outcome)) = (plus.as_mut(), p) {
            counts.add(trial as u64, outcome);
        }
    }
    TrialSummary { plan: *plan, star, plus }
}

fn with_thread_override<T: Send>(f: impl FnOnce() -> T + Send) -> T {
    let threads = std::env::var("PERC_DUALITY_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .filter(|n| *n >= 1);
    match threads {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .expect("thread pool")
            .install(f),
        None => f(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::cell;

    fn cfg_of(list: &[(i64, i64)]) -> Config {
        Config::new(list.iter().map(|&(i, j)| cell(i, j)))
    }

    #[test]
    fn eight_ring_passes_scycle_checks() {
        let cfg = cfg_of(&[(0, 0)]);
        let comp = component(&cfg, cell(0, 0), Mode::Star);
        let (ring, _) = dual_plus_cycle(&cfg, &comp).unwrap();
        let report = check_scycle(&cfg, &ring);
        assert!(report.overall(), "{:?}", report.to_lines());
    }

    #[test]
    fn random_config_density_within_three_sigma() {
        // Binomial bound: n = 4096, p = 0.5, sigma = sqrt(n/4) = 32.
        let cfg = random_config(Rect::new(0, 0, 64, 64), 0.5, 11, 0);
        let n = cfg.occupied().len() as f64;
        assert!((n - 2048.0).abs() <= 96.0, "density {n} outside 3 sigma");
    }

    #[test]
    fn center_polygon_clearance_equals_shifted_frame_clearance() {
        for cells in [
            vec![(0, 0)],
            vec![(0, 0), (1, 0)],
            vec![(0, 0), (1, 1)],
            vec![(0, 0), (1, 0), (1, 1), (2, 2)],
        ] {
            let cfg = cfg_of(&cells);
            let comp = component(&cfg, cell(0, 0), Mode::Star);
            let (ring, trace) = dual_plus_cycle(&cfg, &comp).unwrap();
            assert_eq!(
                ring_clearance2_doubled(&ring, &trace.outer_boundary),
                min_clearance2_doubled(&trace.dual_boundary, &trace.outer_boundary),
            );
        }
    }

    #[test]
    fn four_diamond_cells_fail_plus_adjacency_but_pass_star() {
        let cfg = cfg_of(&[(0, 0)]);
        let cells = vec![cell(1, 0), cell(0, 1), cell(-1, 0), cell(0, -1)];
        let as_plus = SCycle::from_cells_unchecked(cells.clone(), Mode::Plus);
        let plus_report = check_scycle(&cfg, &as_plus);
        assert!(!plus_report.overall());
        assert!(plus_report
            .checks
            .iter()
            .any(|c| c.name == "cells-cyclically-adjacent" && !c.passed));
        let as_star = SCycle::new(cells, Mode::Star).unwrap();
        assert!(check_scycle(&cfg, &as_star).overall());
    }

    #[test]
    fn occupying_a_ring_cell_fails_the_vacancy_check() {
        let cfg = cfg_of(&[(0, 0)]);
        let comp = component(&cfg, cell(0, 0), Mode::Star);
        let (ring, _) = dual_plus_cycle(&cfg, &comp).unwrap();
        let mut occupied: Vec<Cell> = cfg.occupied().iter().copied().collect();
        occupied.push(ring.cells()[0]);
        let mutated = Config::new(occupied);
        let report = check_scycle(&mutated, &ring);
        let vacancy = report
            .checks
            .iter()
            .find(|c| c.name == "cells-vacant")
            .unwrap();
        assert!(!vacancy.passed);
        assert!(vacancy.witness.is_some());
    }

    #[test]
    fn dropping_a_ring_cell_fails_the_adjacency_check() {
        let cfg = cfg_of(&[(0, 0)]);
        let comp = component(&cfg, cell(0, 0), Mode::Plus);
        let (ring, _) = dual_star_cycle(&cfg, &comp).unwrap();
        let mut cells: Vec<Cell> = ring.cells().to_vec();
        // Remove an edge-midpoint cell: its diagonal neighbors are 2 apart.
        let gap = cells
            .iter()
            .position(|c| *c == cell(1, 0))
            .expect("ring passes through (1,0)");
        cells.remove(gap);
        let mutated = SCycle::from_cells_unchecked(cells, Mode::Star);
        let report = check_scycle(&cfg, &mutated);
        assert!(report
            .checks
            .iter()
            .any(|c| c.name == "cells-cyclically-adjacent" && !c.passed));
    }

    #[test]
    fn single_cell_star_suite_passes() {
        let cfg = cfg_of(&[(0, 0)]);
        let report = check_theorem_star(&cfg, cell(0, 0));
        assert!(!report.skipped);
        assert!(report.overall(), "{:?}", report.to_lines());
        assert!(report.to_lines().iter().all(|l| l.ends_with("pass")));
    }

    #[test]
    fn single_cell_plus_suite_passes() {
        let cfg = cfg_of(&[(0, 0)]);
        let report = check_theorem_plus(&cfg, cell(0, 0));
        assert!(report.overall(), "{:?}", report.to_lines());
    }

    #[test]
    fn diagonal_pair_star_suite_passes_with_pinch() {
        let cfg = cfg_of(&[(0, 0), (1, 1)]);
        let report = check_theorem_star(&cfg, cell(0, 0));
        assert!(report.overall(), "{:?}", report.to_lines());
    }

    #[test]
    fn l_tromino_plus_suite_passes() {
        let cfg = cfg_of(&[(0, 0), (1, 0), (0, 1)]);
        let report = check_theorem_plus(&cfg, cell(0, 0));
        assert!(report.overall(), "{:?}", report.to_lines());
    }

    #[test]
    fn isolated_cell_between_diagonals_passes_both_suites() {
        let cfg = cfg_of(&[(1, 1), (0, 0), (2, 0), (0, 2), (2, 2)]);
        let star = check_theorem_star(&cfg, cell(1, 1));
        assert!(star.overall(), "{:?}", star.to_lines());
        let plus = check_theorem_plus(&cfg, cell(1, 1));
        assert!(plus.overall(), "{:?}", plus.to_lines());
    }

    #[test]
    fn vacant_origin_skips() {
        let cfg = cfg_of(&[(5, 5)]);
        let report = check_theorem_star(&cfg, cell(0, 0));
        assert!(report.skipped);
        assert_eq!(report.to_lines(), vec!["skipped: vacant origin".to_string()]);
    }

    #[test]
    fn enumeration_finds_the_unique_ring_cycle() {
        let cfg = cfg_of(&[(0, 0)]);
        let comp = component(&cfg, cell(0, 0), Mode::Star);
        let (ring, _) = dual_plus_cycle(&cfg, &comp).unwrap();
        let h = halo(&cfg, &comp);
        let cycles = enumerate_scycles(&h, Mode::Plus).unwrap();
        assert_eq!(cycles, vec![ring]);
    }

    #[test]
    fn enumeration_corner_cases() {
        let collinear: CellSet = [cell(0, 0), cell(1, 0), cell(2, 0)].into_iter().collect();
        assert!(enumerate_scycles(&collinear, Mode::Plus).unwrap().is_empty());
        assert!(enumerate_scycles(&collinear, Mode::Star).unwrap().is_empty());
        assert!(enumerate_scycles(&CellSet::new(), Mode::Plus).unwrap().is_empty());
        let too_big: CellSet = (0..(ENUMERATION_LIMIT as i64 + 1)).map(|i| cell(i, 0)).collect();
        assert!(matches!(
            enumerate_scycles(&too_big, Mode::Plus).unwrap_err(),
            Error::TooLarge { .. }
        ));
    }

    #[test]
    fn segment_distance_is_exact() {
        // Crossing segments.
        assert_eq!(seg_pair_dist2(((0, -2), (0, 2)), ((-2, 0), (2, 0))), 0);
        // Touching at an endpoint.
        assert_eq!(seg_pair_dist2(((0, 0), (2, 0)), ((2, 0), (2, 2))), 0);
        // Parallel, one unit apart in doubled coordinates.
        assert_eq!(seg_pair_dist2(((0, 0), (2, 0)), ((0, 1), (2, 1))), 1);
        // Diagonal endpoint gap.
        assert_eq!(seg_pair_dist2(((0, 0), (2, 0)), ((3, 1), (3, 3))), 2);
        // Point on segment.
        assert_eq!(point_seg_dist2((1, 0), ((0, 0), (2, 0))), 0);
    }

    #[test]
    fn single_cell_clearance_is_exactly_half() {
        let cfg = cfg_of(&[(0, 0)]);
        let comp = component(&cfg, cell(0, 0), Mode::Star);
        let (_, trace) = dual_plus_cycle(&cfg, &comp).unwrap();
        assert_eq!(
            min_clearance2_doubled(&trace.dual_boundary, &trace.outer_boundary),
            1
        );
    }

    #[test]
    fn trials_are_deterministic() {
        let plan = TrialPlan {
            window: Rect::new(0, 0, 5, 5),
            p: 0.5,
            seed: 7,
            trials: 40,
        };
        let a = run_trials(&plan, Suite::Both).to_string();
        let b = run_trials(&plan, Suite::Both).to_string();
        assert_eq!(a, b);
        assert!(a.ends_with("result: ok"), "{a}");
    }

    #[test]
    fn zero_probability_skips_every_trial() {
        let plan = TrialPlan {
            window: Rect::new(0, 0, 4, 4),
            p: 0.0,
            seed: 1,
            trials: 10,
        };
        let summary = run_trials(&plan, Suite::Star);
        let star = summary.star.unwrap();
        assert_eq!((star.pass, star.fail, star.skip), (0, 0, 10));
        assert!(summary.plus.is_none());
    }

    #[test]
    fn full_window_passes_both_suites() {
        let plan = TrialPlan {
            window: Rect::new(0, 0, 4, 3),
            p: 1.0,
            seed: 3,
            trials: 1,
        };
        let summary = run_trials(&plan, Suite::Both);
        assert!(summary.ok(), "{summary}");
        assert_eq!(summary.star.unwrap().pass, 1);
        assert_eq!(summary.plus.unwrap().pass, 1);
    }

    #[test]
    fn random_config_is_seed_and_stream_stable() {
        let w = Rect::new(0, 0, 6, 6);
        let a = random_config(w, 0.4, 11, 2);
        let b = random_config(w, 0.4, 11, 2);
        assert_eq!(a.occupied(), b.occupied());
        let c = random_config(w, 0.4, 11, 3);
        assert_ne!(a.occupied(), c.occupied());
    }
}
