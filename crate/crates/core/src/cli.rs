//! Command-line interface: configuration I/O, seeded generation, the
//! construction and verification subcommands, and SVG/ASCII rendering.
//!
//! Two configuration formats are supported and auto-detected on input:
//!
//! * **Grid text** — one character per cell, `#` occupied, `.` vacant, plus
//!   at most one origin marker: `@` (occupied origin) or `o` (vacant
//!   origin). The top row is the highest `j`; the bottom-left character is
//!   cell `(0, 0)`. Grid text cannot express negative coordinates.
//! * **JSON** — `{"occupied": [[i, j], ...], "window": [x, y, w, h] |
//!   null, "origin": [i, j] | null}`, any coordinates.
//!
//! Exit codes: 0 success, 1 verification or construction failure, 2 usage
//! and input errors.

use std::fmt::Write as _;
use std::io::Read as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::boundary::{outermost_boundary, Cycle, OutermostBoundary};
use crate::duality::{dual_plus_cycle, dual_star_cycle, MergeStep, SCycle};
use crate::grid::{cell, component, Cell, Config, Corner, Edge, Mode, Orientation, Rect};
use crate::verify::{random_config, run_trials, Suite, TrialPlan};
use crate::{Error, Result};

/// A configuration together with its optional origin cell.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigDoc {
    pub config: Config,
    pub origin: Option<Cell>,
}

// ---------------------------------------------------------------------------
// Grid-text format

/// Parses grid text. The grid's extent becomes the configuration window.
pub fn parse_grid(text: &str) -> Result<ConfigDoc> {
    let rows: Vec<&str> = text.lines().collect();
    if rows.is_empty() || rows[0].is_empty() {
        return Err(Error::Parse {
            line: 1,
            col: 1,
            msg: "empty grid".to_string(),
        });
    }
    let width = rows[0].chars().count();
    let height = rows.len();
    let mut occupied: Vec<Cell> = Vec::new();
    let mut origin: Option<Cell> = None;
    for (r, row) in rows.iter().enumerate() {
        let line = r + 1;
        let mut cols = 0usize;
        for (c, ch) in row.chars().enumerate() {
            cols += 1;
            let here = cell(c as i64, (height - 1 - r) as i64);
            match ch {
                '#' => occupied.push(here),
                '.' => {}
                '@' | 'o' => {
                    if origin.is_some() {
                        return Err(Error::Parse {
                            line,
                            col: c + 1,
                            msg: "second origin marker".to_string(),
                        });
                    }
                    origin = Some(here);
                    if ch == '@' {
                        occupied.push(here);
                    }
                }
                other => {
                    return Err(Error::Parse {
                        line,
                        col: c + 1,
                        msg: format!("illegal character {other:?}"),
                    })
                }
            }
        }
        if cols != width {
            return Err(Error::Parse {
                line,
                col: cols + 1,
                msg: format!("row has {cols} columns, expected {width}"),
            });
        }
    }
    let window = Rect::new(0, 0, width as i64, height as i64);
    Ok(ConfigDoc {
        config: Config::with_window(occupied, window)?,
        origin,
    })
}

/// Serializes to grid text (with a trailing newline). The printed region is
/// the window when present, otherwise the anchored bounding box of the
/// occupied cells and origin. Negative coordinates are not representable.
pub fn serialize_grid(doc: &ConfigDoc) -> Result<String> {
    let region = match doc.config.window() {
        Some(w) => w,
        None => {
            let cells = doc.config.occupied().iter().copied().chain(doc.origin);
            let (mut max_i, mut max_j) = (0i64, 0i64);
            let (mut min_i, mut min_j) = (0i64, 0i64);
            for c in cells {
                min_i = min_i.min(c.i);
                min_j = min_j.min(c.j);
                max_i = max_i.max(c.i);
                max_j = max_j.max(c.j);
            }
            if min_i < 0 || min_j < 0 {
                return Err(Error::InvalidInput(
                    "grid text cannot represent negative coordinates; use the JSON format"
                        .to_string(),
                ));
            }
            Rect::new(0, 0, max_i + 1, max_j + 1)
        }
    };
    if region.x < 0 || region.y < 0 {
        return Err(Error::InvalidInput(
            "grid text cannot represent a window with negative anchor; use the JSON format"
                .to_string(),
        ));
    }
    if region.x > 0 || region.y > 0 {
        return Err(Error::InvalidInput(
            "grid text is anchored at (0, 0); use the JSON format for offset windows".to_string(),
        ));
    }
    for c in doc.config.occupied().iter().chain(doc.origin.iter()) {
        if !region.contains(*c) {
            return Err(Error::InvalidInput(format!(
                "cell {c:?} lies outside the printable region"
            )));
        }
    }
    let mut out = String::new();
    for j in (region.y..region.y + region.h).rev() {
        for i in region.x..region.x + region.w {
            let here = cell(i, j);
            let ch = match (doc.origin == Some(here), doc.config.is_occupied(here)) {
                (true, true) => '@',
                (true, false) => 'o',
                (false, true) => '#',
                (false, false) => '.',
            };
            out.push(ch);
        }
        out.push('\n');
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// JSON format

#[derive(Serialize, Deserialize)]
struct JsonConfig {
    occupied: Vec<[i64; 2]>,
    window: Option<[i64; 4]>,
    origin: Option<[i64; 2]>,
}

/// Parses the JSON configuration format.
pub fn parse_json(text: &str) -> Result<ConfigDoc> {
    let raw: JsonConfig = serde_json::from_str(text)?;
    let occupied = raw.occupied.iter().map(|&[i, j]| cell(i, j));
    let config = match raw.window {
        Some([x, y, w, h]) => Config::with_window(occupied, Rect::new(x, y, w, h))?,
        None => Config::new(occupied),
    };
    Ok(ConfigDoc {
        config,
        origin: raw.origin.map(|[i, j]| cell(i, j)),
    })
}

/// Serializes to the JSON configuration format (deterministic: occupied
/// cells in sorted order).
pub fn to_json(doc: &ConfigDoc) -> String {
    let raw = JsonConfig {
        occupied: doc.config.occupied().iter().map(|c| [c.i, c.j]).collect(),
        window: doc.config.window().map(|w| [w.x, w.y, w.w, w.h]),
        origin: doc.origin.map(|c| [c.i, c.j]),
    };
    serde_json::to_string(&raw).expect("plain data serializes")
}

/// Parses either supported format, detecting JSON by a leading `{`.
pub fn parse_config_text(text: &str) -> Result<ConfigDoc> {
    if text.trim_start().starts_with('{') {
        parse_json(text)
    } else {
        parse_grid(text)
    }
}

// ---------------------------------------------------------------------------
// Origin resolution

/// The origin used by component-based subcommands: the explicit marker if
/// present, else the window's center cell, else the center of the occupied
/// bounding box. `None` only for an empty, windowless configuration.
pub fn resolve_origin(doc: &ConfigDoc) -> Option<Cell> {
    if let Some(o) = doc.origin {
        return Some(o);
    }
    if let Some(w) = doc.config.window() {
        return Some(w.center());
    }
    let occ = doc.config.occupied();
    if occ.is_empty() {
        return None;
    }
    let min_i = occ.iter().map(|c| c.i).min().unwrap();
    let max_i = occ.iter().map(|c| c.i).max().unwrap();
    let min_j = occ.iter().map(|c| c.j).min().unwrap();
    let max_j = occ.iter().map(|c| c.j).max().unwrap();
    Some(cell((min_i + max_i).div_euclid(2), (min_j + max_j).div_euclid(2)))
}

// ---------------------------------------------------------------------------
// Command-line definition

#[derive(Parser)]
#[command(
    name = "perc-duality",
    version,
    about = "Occupied-component boundaries on the unit-square tiling and the \
             vacant cell cycles that surround them"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a seeded random configuration on a window.
    Gen(GenArgs),
    /// List the occupied component containing the origin.
    Component(ComponentArgs),
    /// Trace the outermost boundary of the origin's component.
    Boundary(ComponentArgs),
    /// Build the edge-connected vacant ring around the origin's
    /// corner-connected component.
    DualPlus(DualArgs),
    /// Build the corner-connected vacant ring around the origin's
    /// edge-connected component.
    DualStar(DualArgs),
    /// Run seeded randomized property suites and report a summary.
    Verify(VerifyArgs),
    /// Render the configuration with boundary and ring overlays.
    Render(RenderArgs),
}

fn parse_window(s: &str) -> std::result::Result<Rect, String> {
    let (w, h) = s
        .split_once('x')
        .ok_or_else(|| format!("expected WxH, got {s:?}"))?;
    let w: i64 = w.parse().map_err(|_| format!("bad width in {s:?}"))?;
    let h: i64 = h.parse().map_err(|_| format!("bad height in {s:?}"))?;
    if w < 1 || h < 1 {
        return Err("window needs positive width and height".to_string());
    }
    Ok(Rect::new(0, 0, w, h))
}

fn parse_probability(s: &str) -> std::result::Result<f64, String> {
    let p: f64 = s.parse().map_err(|_| format!("bad probability {s:?}"))?;
    if (0.0..=1.0).contains(&p) {
        Ok(p)
    } else {
        Err("probability must lie in [0, 1]".to_string())
    }
}

#[derive(Args)]
struct GenArgs {
    /// Window size as WxH, anchored at (0, 0).
    #[arg(long, value_parser = parse_window, default_value = "16x16")]
    window: Rect,
    /// Occupancy probability per cell.
    #[arg(long, value_parser = parse_probability, default_value_t = 0.5)]
    p: f64,
    /// Generator seed.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output format.
    #[arg(long, value_enum, default_value_t = TextFormat::Text)]
    format: TextFormat,
}

#[derive(Args)]
struct ComponentArgs {
    /// Input configuration file ('-' for stdin).
    #[arg(short, long)]
    input: PathBuf,
    /// Adjacency mode.
    #[arg(long, value_enum, default_value_t = ModeArg::Star)]
    mode: ModeArg,
    /// Output format.
    #[arg(long, value_enum, default_value_t = TextFormat::Text)]
    format: TextFormat,
}

#[derive(Args)]
struct DualArgs {
    /// Input configuration file ('-' for stdin).
    #[arg(short, long)]
    input: PathBuf,
    /// Also print the full construction trace.
    #[arg(long)]
    trace: bool,
    /// Output format.
    #[arg(long, value_enum, default_value_t = TextFormat::Text)]
    format: TextFormat,
}

#[derive(Args)]
struct VerifyArgs {
    /// Window size as WxH, anchored at (0, 0).
    #[arg(long, value_parser = parse_window, default_value = "16x16")]
    window: Rect,
    /// Occupancy probability per cell.
    #[arg(long, value_parser = parse_probability, default_value_t = 0.5)]
    p: f64,
    /// Generator seed.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Number of independent trials.
    #[arg(long, default_value_t = 1000, value_parser = clap::value_parser!(u64).range(1..))]
    trials: u64,
    /// Which property suites to run.
    #[arg(long, value_enum, default_value_t = SuiteArg::Both)]
    mode: SuiteArg,
}

#[derive(Args)]
struct RenderArgs {
    /// Input configuration file ('-' for stdin).
    #[arg(short, long)]
    input: PathBuf,
    /// Which rings to overlay.
    #[arg(long, value_enum, default_value_t = SuiteArg::Both)]
    mode: SuiteArg,
    /// Output format.
    #[arg(long, value_enum, default_value_t = RenderFormat::Svg)]
    format: RenderFormat,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Star,
    Plus,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Star => Mode::Star,
            ModeArg::Plus => Mode::Plus,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SuiteArg {
    Star,
    Plus,
    Both,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Suite {
        match s {
            SuiteArg::Star => Suite::Star,
            SuiteArg::Plus => Suite::Plus,
            SuiteArg::Both => Suite::Both,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TextFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum RenderFormat {
    Svg,
    Text,
}

// ---------------------------------------------------------------------------
// Dispatch

/// Parses the process arguments and runs the selected subcommand; returns
/// the process exit code.
pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match dispatch(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code_for(&e)
        }
    }
}

/// Input and usage problems exit 2; a failure of a guaranteed property
/// (verification or construction postcondition) exits 1.
fn exit_code_for(e: &Error) -> i32 {
    match e {
        Error::Postcondition { .. }
        | Error::PinchLimitExceeded { .. }
        | Error::MergeTooFewSharedPoints { .. } => 1,
        _ => 2,
    }
}

fn dispatch(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::Gen(args) => cmd_gen(args),
        Command::Component(args) => cmd_component(args),
        Command::Boundary(args) => cmd_boundary(args),
        Command::DualPlus(args) => cmd_dual(args, Mode::Plus),
        Command::DualStar(args) => cmd_dual(args, Mode::Star),
        Command::Verify(args) => cmd_verify(args),
        Command::Render(args) => cmd_render(args),
    }
}

fn read_input(path: &Path) -> Result<String> {
    if path == Path::new("-") {
        let mut buf = String::new();
        std::io::stdin().read_to_string(&mut buf)?;
        Ok(buf)
    } else {
        Ok(std::fs::read_to_string(path)?)
    }
}

fn load_doc(path: &Path) -> Result<ConfigDoc> {
    parse_config_text(&read_input(path)?)
}

fn required_origin(doc: &ConfigDoc) -> Result<Cell> {
    resolve_origin(doc).ok_or_else(|| {
        Error::InvalidInput(
            "configuration has no origin marker, window, or occupied cells to infer an origin"
                .to_string(),
        )
    })
}

fn fmt_cell(c: Cell) -> String {
    format!("({},{})", c.i, c.j)
}

fn fmt_corner(c: Corner) -> String {
    format!("({},{})", c.a, c.b)
}

fn fmt_edge(e: Edge) -> String {
    let tag = match e.orientation {
        Orientation::Horizontal => 'h',
        Orientation::Vertical => 'v',
    };
    format!("{tag}({},{})", e.origin.a, e.origin.b)
}

fn fmt_cells<'a>(cells: impl IntoIterator<Item = &'a Cell>) -> String {
    cells
        .into_iter()
        .map(|c| fmt_cell(*c))
        .collect::<Vec<_>>()
        .join(" ")
}

fn fmt_corners(corners: &[Corner]) -> String {
    corners.iter().map(|c| fmt_corner(*c)).collect::<Vec<_>>().join(" ")
}

fn cells_json<'a>(cells: impl IntoIterator<Item = &'a Cell>) -> serde_json::Value {
    serde_json::Value::Array(
        cells
            .into_iter()
            .map(|c| serde_json::json!([c.i, c.j]))
            .collect(),
    )
}

fn corners_json(corners: &[Corner]) -> serde_json::Value {
    serde_json::Value::Array(
        corners
            .iter()
            .map(|c| serde_json::json!([c.a, c.b]))
            .collect(),
    )
}

fn cmd_gen(args: GenArgs) -> Result<i32> {
    let config = random_config(args.window, args.p, args.seed, 0);
    let doc = ConfigDoc {
        config,
        origin: Some(args.window.center()),
    };
    match args.format {
        TextFormat::Text => print!("{}", serialize_grid(&doc)?),
        TextFormat::Json => println!("{}", to_json(&doc)),
    }
    Ok(0)
}

fn cmd_component(args: ComponentArgs) -> Result<i32> {
    let doc = load_doc(&args.input)?;
    let origin = required_origin(&doc)?;
    let mode: Mode = args.mode.into();
    let comp = component(&doc.config, origin, mode);
    match args.format {
        TextFormat::Text => {
            println!(
                "component mode={mode} origin={} size={}",
                fmt_cell(origin),
                comp.len()
            );
            if !comp.is_empty() {
                println!("cells: {}", fmt_cells(comp.iter()));
            }
        }
        TextFormat::Json => {
            println!(
                "{}",
                serde_json::json!({
                    "mode": mode.to_string(),
                    "origin": [origin.i, origin.j],
                    "size": comp.len(),
                    "cells": cells_json(comp.iter()),
                })
            );
        }
    }
    Ok(0)
}

fn cmd_boundary(args: ComponentArgs) -> Result<i32> {
    let doc = load_doc(&args.input)?;
    let origin = required_origin(&doc)?;
    let mode: Mode = args.mode.into();
    let comp = component(&doc.config, origin, mode);
    let b = outermost_boundary(&doc.config, &comp, mode)?;
    match args.format {
        TextFormat::Text => {
            println!(
                "boundary mode={mode} cycles={} meeting-points={}",
                b.cycles.len(),
                b.meeting_points.len()
            );
            for (k, cy) in b.cycles.iter().enumerate() {
                println!("cycle {} len={}: {}", k + 1, cy.len(), fmt_corners(cy.corners()));
            }
            if !b.meeting_points.is_empty() {
                println!("meeting: {}", fmt_corners(&b.meeting_points));
            }
        }
        TextFormat::Json => {
            println!(
                "{}",
                serde_json::json!({
                    "mode": mode.to_string(),
                    "cycles": b.cycles.iter().map(|c| corners_json(c.corners())).collect::<Vec<_>>(),
                    "meeting_points": corners_json(&b.meeting_points),
                })
            );
        }
    }
    Ok(0)
}

fn cmd_dual(args: DualArgs, ring_mode: Mode) -> Result<i32> {
    let doc = load_doc(&args.input)?;
    let origin = required_origin(&doc)?;
    match ring_mode {
        Mode::Plus => {
            let comp = component(&doc.config, origin, Mode::Star);
            let (ring, trace) = dual_plus_cycle(&doc.config, &comp)?;
            match args.format {
                TextFormat::Text => {
                    println!("ring mode=plus len={}", ring.len());
                    println!("cells: {}", fmt_cells(ring.cells()));
                    if args.trace {
                        println!("component size={}: {}", comp.len(), fmt_cells(comp.iter()));
                        print_boundary_trace(&trace.outer_boundary);
                        println!(
                            "vertex-squares len={}: {}",
                            trace.vertex_squares.len(),
                            fmt_cells(trace.vertex_squares.iter())
                        );
                        println!(
                            "shifted-boundary len={}: {}",
                            trace.dual_boundary.len(),
                            fmt_corners(trace.dual_boundary.corners())
                        );
                        println!(
                            "exterior-halo len={}: {}",
                            trace.exterior_halo.len(),
                            fmt_cells(trace.exterior_halo.iter())
                        );
                    }
                }
                TextFormat::Json => {
                    let mut v = serde_json::json!({
                        "mode": "plus",
                        "ring": cells_json(ring.cells()),
                    });
                    if args.trace {
                        v["component"] = cells_json(comp.iter());
                        v["boundary_cycles"] = serde_json::Value::Array(
                            trace
                                .outer_boundary
                                .cycles
                                .iter()
                                .map(|c| corners_json(c.corners()))
                                .collect(),
                        );
                        v["meeting_points"] = corners_json(&trace.outer_boundary.meeting_points);
                        v["vertex_squares"] = cells_json(trace.vertex_squares.iter());
                        v["shifted_boundary"] = corners_json(trace.dual_boundary.corners());
                        v["exterior_halo"] = cells_json(trace.exterior_halo.iter());
                    }
                    println!("{v}");
                }
            }
        }
        Mode::Star => {
            let comp = component(&doc.config, origin, Mode::Plus);
            let (ring, trace) = dual_star_cycle(&doc.config, &comp)?;
            match args.format {
                TextFormat::Text => {
                    println!("ring mode=star len={}", ring.len());
                    println!("cells: {}", fmt_cells(ring.cells()));
                    if args.trace {
                        println!("component size={}: {}", comp.len(), fmt_cells(comp.iter()));
                        println!(
                            "boundary len={}: {}",
                            trace.boundary.len(),
                            fmt_corners(trace.boundary.corners())
                        );
                        println!(
                            "exterior-halo len={}: {}",
                            trace.exterior_halo.len(),
                            fmt_cells(trace.exterior_halo.iter())
                        );
                        println!("local-cycles: {}", trace.local_cycles.len());
                        println!("merge-log:");
                        for step in &trace.merge_log {
                            match step {
                                MergeStep::Group { edge, across, added } => println!(
                                    "  group edge={} across={} added={}",
                                    fmt_edge(*edge),
                                    fmt_cell(*across),
                                    fmt_cells(added.iter())
                                ),
                                MergeStep::Single { edge, across, added } => println!(
                                    "  single edge={} across={} added={}",
                                    fmt_edge(*edge),
                                    fmt_cell(*across),
                                    fmt_cell(*added)
                                ),
                            }
                        }
                        println!(
                            "final-cycle len={}: {}",
                            trace.final_cycle.len(),
                            fmt_corners(trace.final_cycle.corners())
                        );
                    }
                }
                TextFormat::Json => {
                    let mut v = serde_json::json!({
                        "mode": "star",
                        "ring": cells_json(ring.cells()),
                    });
                    if args.trace {
                        v["component"] = cells_json(comp.iter());
                        v["boundary"] = corners_json(trace.boundary.corners());
                        v["exterior_halo"] = cells_json(trace.exterior_halo.iter());
                        v["final_cycle"] = corners_json(trace.final_cycle.corners());
                        v["merge_log"] = serde_json::Value::Array(
                            trace
                                .merge_log
                                .iter()
                                .map(|s| match s {
                                    MergeStep::Group { edge, across, added } => serde_json::json!({
                                        "kind": "group",
                                        "edge": fmt_edge(*edge),
                                        "across": [across.i, across.j],
                                        "added": cells_json(added.iter()),
                                    }),
                                    MergeStep::Single { edge, across, added } => serde_json::json!({
                                        "kind": "single",
                                        "edge": fmt_edge(*edge),
                                        "across": [across.i, across.j],
                                        "added": [added.i, added.j],
                                    }),
                                })
                                .collect(),
                        );
                    }
                    println!("{v}");
                }
            }
        }
    }
    Ok(0)
}

fn print_boundary_trace(b: &OutermostBoundary) {
    println!(
        "boundary cycles={} meeting-points={}",
        b.cycles.len(),
        b.meeting_points.len()
    );
    for (k, cy) in b.cycles.iter().enumerate() {
        println!("cycle {} len={}: {}", k + 1, cy.len(), fmt_corners(cy.corners()));
    }
    if !b.meeting_points.is_empty() {
        println!("meeting: {}", fmt_corners(&b.meeting_points));
    }
}

fn cmd_verify(args: VerifyArgs) -> Result<i32> {
    let plan = TrialPlan {
        window: args.window,
        p: args.p,
        seed: args.seed,
        trials: args.trials,
    };
    let summary = run_trials(&plan, args.mode.into());
    println!("{summary}");
    Ok(if summary.ok() { 0 } else { 1 })
}

// ---------------------------------------------------------------------------
// Rendering

pub struct Overlays {
    pub boundaries: Vec<Cycle>,
    pub plus_ring: Option<SCycle>,
    pub star_ring: Option<SCycle>,
}

/// Collects the overlays for a scene: boundary cycles of the origin's
/// components plus the surrounding rings for the requested sides. A vacant
/// or missing origin yields an empty overlay set.
pub fn build_overlays(doc: &ConfigDoc, which: Suite) -> Result<Overlays> {
    let mut overlays = Overlays {
        boundaries: Vec::new(),
        plus_ring: None,
        star_ring: None,
    };
    let origin = match resolve_origin(doc) {
        Some(o) if doc.config.is_occupied(o) => o,
        _ => return Ok(overlays),
    };
    if matches!(which, Suite::Star | Suite::Both) {
        let comp = component(&doc.config, origin, Mode::Star);
        let (ring, trace) = dual_plus_cycle(&doc.config, &comp)?;
        overlays.boundaries.extend(trace.outer_boundary.cycles);
        overlays.plus_ring = Some(ring);
    }
    if matches!(which, Suite::Plus | Suite::Both) {
        let comp = component(&doc.config, origin, Mode::Plus);
        let (ring, trace) = dual_star_cycle(&doc.config, &comp)?;
        overlays.boundaries.push(trace.boundary);
        overlays.star_ring = Some(ring);
    }
    Ok(overlays)
}

struct Bounds {
    lo_x: i64,
    lo_y: i64,
    hi_x: i64,
    hi_y: i64,
}

fn scene_bounds(doc: &ConfigDoc, overlays: &Overlays) -> Bounds {
    let mut b = Bounds { lo_x: 0, lo_y: 0, hi_x: 1, hi_y: 1 };
    if let Some(w) = doc.config.window() {
        b = Bounds { lo_x: w.x, lo_y: w.y, hi_x: w.x + w.w, hi_y: w.y + w.h };
    }
    let mut add_cell = |c: Cell| {
        b.lo_x = b.lo_x.min(c.i);
        b.lo_y = b.lo_y.min(c.j);
        b.hi_x = b.hi_x.max(c.i + 1);
        b.hi_y = b.hi_y.max(c.j + 1);
    };
    for c in doc.config.occupied().iter().copied().chain(doc.origin) {
        add_cell(c);
    }
    for ring in overlays.plus_ring.iter().chain(overlays.star_ring.iter()) {
        for c in ring.cells() {
            add_cell(*c);
        }
    }
    b.lo_x -= 1;
    b.lo_y -= 1;
    b.hi_x += 1;
    b.hi_y += 1;
    b
}

const COLOR_OCCUPIED: &str = "#9a9a9a";
const COLOR_PLUS_RING: &str = "#1f6fd6";
const COLOR_STAR_RING: &str = "#e08a1e";
const COLOR_BOUNDARY: &str = "#000000";
const SVG_SCALE: i64 = 24;

/// Renders the scene as a standalone SVG document: occupied cells gray,
/// edge-connected ring cells blue, corner-connected ring cells orange,
/// boundary polylines black, one polygon per cycle.
pub fn render_svg(doc: &ConfigDoc, overlays: &Overlays) -> String {
    let b = scene_bounds(doc, overlays);
    let s = SVG_SCALE;
    let px = |x: i64| (x - b.lo_x) * s;
    let py = |y: i64| (b.hi_y - y) * s;
    let width = (b.hi_x - b.lo_x) * s;
    let height = (b.hi_y - b.lo_y) * s;
    let mut out = String::new();
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width}\" height=\"{height}\" \
         viewBox=\"0 0 {width} {height}\">"
    );
    let _ = writeln!(out, "<rect width=\"{width}\" height=\"{height}\" fill=\"#ffffff\"/>");
    // Cell fills.
    let fill_cell = |out: &mut String, c: Cell, color: &str, opacity: &str| {
        let _ = writeln!(
            out,
            "<rect x=\"{}\" y=\"{}\" width=\"{s}\" height=\"{s}\" fill=\"{color}\" \
             fill-opacity=\"{opacity}\"/>",
            px(c.i),
            py(c.j + 1)
        );
    };
    for c in doc.config.occupied() {
        fill_cell(&mut out, *c, COLOR_OCCUPIED, "1");
    }
    if let Some(ring) = &overlays.plus_ring {
        for c in ring.cells() {
            fill_cell(&mut out, *c, COLOR_PLUS_RING, "0.45");
        }
    }
    if let Some(ring) = &overlays.star_ring {
        for c in ring.cells() {
            fill_cell(&mut out, *c, COLOR_STAR_RING, "0.45");
        }
    }
    // Lattice grid.
    for x in b.lo_x..=b.hi_x {
        let _ = writeln!(
            out,
            "<line x1=\"{0}\" y1=\"0\" x2=\"{0}\" y2=\"{height}\" stroke=\"#dddddd\" \
             stroke-width=\"1\"/>",
            px(x)
        );
    }
    for y in b.lo_y..=b.hi_y {
        let _ = writeln!(
            out,
            "<line x1=\"0\" y1=\"{0}\" x2=\"{width}\" y2=\"{0}\" stroke=\"#dddddd\" \
             stroke-width=\"1\"/>",
            py(y)
        );
    }
    // Boundary cycles: one polygon per cycle.
    for cy in &overlays.boundaries {
        let points = cy
            .corners()
            .iter()
            .map(|c| format!("{},{}", px(c.a), py(c.b)))
            .collect::<Vec<_>>()
            .join(" ");
        let _ = writeln!(
            out,
            "<polygon points=\"{points}\" fill=\"none\" stroke=\"{COLOR_BOUNDARY}\" \
             stroke-width=\"2\"/>"
        );
    }
    // Ring center polygons.
    let ring_polygon = |out: &mut String, ring: &SCycle, color: &str| {
        let points = ring
            .cells()
            .iter()
            .map(|c| {
                let (cx, cy) = c.center_doubled();
                format!("{},{}", (cx - 2 * b.lo_x) * s / 2, (2 * b.hi_y - cy) * s / 2)
            })
            .collect::<Vec<_>>()
            .join(" ");
        let _ = writeln!(
            out,
            "<polygon points=\"{points}\" fill=\"none\" stroke=\"{color}\" stroke-width=\"2\" \
             stroke-dasharray=\"6 3\"/>"
        );
    };
    if let Some(ring) = &overlays.plus_ring {
        ring_polygon(&mut out, ring, COLOR_PLUS_RING);
    }
    if let Some(ring) = &overlays.star_ring {
        ring_polygon(&mut out, ring, COLOR_STAR_RING);
    }
    // Origin marker.
    if let Some(o) = doc.origin {
        let (cx, cy) = o.center_doubled();
        let _ = writeln!(
            out,
            "<circle cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"#000000\" fill-opacity=\"0.6\"/>",
            (cx - 2 * b.lo_x) * s / 2,
            (2 * b.hi_y - cy) * s / 2,
            s / 5
        );
    }
    out.push_str("</svg>\n");
    out
}

/// Renders the scene as an ASCII overlay: ring cells replace the vacant
/// dot, the origin marker wins over everything.
pub fn render_ascii(doc: &ConfigDoc, overlays: &Overlays) -> String {
    let b = scene_bounds(doc, overlays);
    let mut out = String::new();
    let _ = writeln!(
        out,
        "legend: # occupied, . vacant, P plus-ring, S star-ring, & both rings, @/o origin"
    );
    for j in (b.lo_y..b.hi_y).rev() {
        for i in b.lo_x..b.hi_x {
            let here = cell(i, j);
            let in_plus = overlays
                .plus_ring
                .as_ref()
                .is_some_and(|r| r.contains(here));
            let in_star = overlays
                .star_ring
                .as_ref()
                .is_some_and(|r| r.contains(here));
            let ch = if doc.origin == Some(here) {
                if doc.config.is_occupied(here) { '@' } else { 'o' }
            } else if in_plus && in_star {
                '&'
            } else if in_plus {
                'P'
            } else if in_star {
                'S'
            } else if doc.config.is_occupied(here) {
                '#'
            } else {
                '.'
            };
            out.push(ch);
        }
        out.push('\n');
    }
    out
}

fn cmd_render(args: RenderArgs) -> Result<i32> {
    let doc = load_doc(&args.input)?;
    let overlays = build_overlays(&doc, args.mode.into())?;
    match args.format {
        RenderFormat::Svg => print!("{}", render_svg(&doc, &overlays)),
        RenderFormat::Text => print!("{}", render_ascii(&doc, &overlays)),
    }
    Ok(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::CellSet;

    #[test]
    fn grid_rows_map_top_row_to_highest_j() {
        let doc = parse_grid("#.\n.#\n").unwrap();
        let expected: CellSet = [cell(0, 1), cell(1, 0)].into_iter().collect();
        assert_eq!(doc.config.occupied(), &expected);
        assert_eq!(doc.config.window(), Some(Rect::new(0, 0, 2, 2)));
        assert_eq!(doc.origin, None);
    }

    #[test]
    fn grid_round_trips_text_and_doc() {
        let t = "#.o\n.#.\n##.\n";
        let doc = parse_grid(t).unwrap();
        assert_eq!(doc.origin, Some(cell(2, 2)));
        assert_eq!(serialize_grid(&doc).unwrap(), t);
        let again = parse_grid(&serialize_grid(&doc).unwrap()).unwrap();
        assert_eq!(again, doc);
    }

    #[test]
    fn grid_origin_marker_occupies_when_at_sign() {
        let doc = parse_grid("@#\n").unwrap();
        assert!(doc.config.is_occupied(cell(0, 0)));
        assert_eq!(doc.origin, Some(cell(0, 0)));
    }

    #[test]
    fn grid_parse_errors_carry_position() {
        match parse_grid("#.\n#\n").unwrap_err() {
            Error::Parse { line, col, .. } => assert_eq!((line, col), (2, 2)),
            other => panic!("unexpected {other:?}"),
        }
        match parse_grid("#x\n").unwrap_err() {
            Error::Parse { line, col, .. } => assert_eq!((line, col), (1, 2)),
            other => panic!("unexpected {other:?}"),
        }
        match parse_grid("@o\n").unwrap_err() {
            Error::Parse { line, col, .. } => assert_eq!((line, col), (1, 2)),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(parse_grid(""), Err(Error::Parse { .. })));
    }

    #[test]
    fn grid_rejects_negative_coordinates_on_serialize() {
        let doc = ConfigDoc {
            config: Config::new([cell(-1, 0)]),
            origin: None,
        };
        assert!(matches!(
            serialize_grid(&doc),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn json_round_trips_with_negative_coordinates() {
        let doc = ConfigDoc {
            config: Config::with_window(
                [cell(-3, -2), cell(0, 0)],
                Rect::new(-5, -5, 10, 10),
            )
            .unwrap(),
            origin: Some(cell(0, 0)),
        };
        let text = to_json(&doc);
        let back = parse_json(&text).unwrap();
        assert_eq!(back, doc);
    }

    #[test]
    fn format_autodetection_picks_json_by_brace() {
        let json = r#"{"occupied": [[0, 0]], "window": null, "origin": null}"#;
        let doc = parse_config_text(json).unwrap();
        assert!(doc.config.is_occupied(cell(0, 0)));
        let grid = parse_config_text("#\n").unwrap();
        assert_eq!(grid.config.occupied(), doc.config.occupied());
    }

    #[test]
    fn origin_resolution_prefers_marker_then_window_then_bbox() {
        let marked = parse_grid("#o\n").unwrap();
        assert_eq!(resolve_origin(&marked), Some(cell(1, 0)));
        let windowed = parse_grid("##\n##\n").unwrap();
        assert_eq!(resolve_origin(&windowed), Some(cell(0, 0)));
        let bare = ConfigDoc {
            config: Config::new([cell(4, 4), cell(6, 6)]),
            origin: None,
        };
        assert_eq!(resolve_origin(&bare), Some(cell(5, 5)));
        let empty = ConfigDoc { config: Config::new([]), origin: None };
        assert_eq!(resolve_origin(&empty), None);
    }

    #[test]
    fn window_argument_parses_and_validates() {
        assert_eq!(parse_window("16x16").unwrap(), Rect::new(0, 0, 16, 16));
        assert_eq!(parse_window("3x7").unwrap(), Rect::new(0, 0, 3, 7));
        assert!(parse_window("0x3").is_err());
        assert!(parse_window("axb").is_err());
        assert!(parse_window("12").is_err());
        assert!(parse_probability("1.5").is_err());
        assert!(parse_probability("0.25").is_ok());
    }

    #[test]
    fn svg_render_contains_one_polygon_per_cycle() {
        let doc = parse_grid("...\n.@.\n...\n").unwrap();
        let overlays = build_overlays(&doc, Suite::Both).unwrap();
        let svg = render_svg(&doc, &overlays);
        assert!(svg.starts_with("<svg "));
        assert!(svg.trim_end().ends_with("</svg>"));
        // One star-side boundary cycle, one plus-side boundary cycle, and
        // one center polygon per ring.
        assert_eq!(svg.matches("<polygon ").count(), 4);
        assert_eq!(svg.matches("</svg>").count(), 1);
    }

    #[test]
    fn ascii_render_marks_rings() {
        let doc = parse_grid("...\n.@.\n...\n").unwrap();
        let overlays = build_overlays(&doc, Suite::Both).unwrap();
        let text = render_ascii(&doc, &overlays);
        let grid: String = text.lines().skip(1).collect::<Vec<_>>().join("\n");
        // Both rings coincide on the 8 surrounding cells.
        assert_eq!(grid.matches('&').count(), 8);
        assert_eq!(grid.matches('@').count(), 1);
    }

    #[test]
    fn vacant_origin_renders_without_overlays() {
        let doc = parse_grid("#.\n.o\n").unwrap();
        let overlays = build_overlays(&doc, Suite::Both).unwrap();
        assert!(overlays.plus_ring.is_none());
        assert!(overlays.star_ring.is_none());
        assert!(overlays.boundaries.is_empty());
    }
}
