//! `tilepump`: classify generators, draw stages, run tile systems, dump window movies and
//! try to pump a window of a run into another one.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use tilepump_core::atam::{
    placements_from_json, placements_to_json, replay, run, AssemblySequence, Halt, Policy, Region, RunLimits, Step,
    TileSystem,
};
use tilepump_core::fractal::{
    classify, find_free_point_witnesses, point_cap, scale, stage_with_cap, FractalClass, FreePointWitnesses, Generator,
};
use tilepump_core::grid::{connected_components, BoundingExtents, Point, PointSet};
use tilepump_core::pump::{anchor_variants, refute, AnchorVariant, RefuteError, RefuteOutcome, SequenceSource};
use tilepump_core::render::{render_svg, RenderSpec};
use tilepump_core::systems::{position_system, GlueMode};
use tilepump_core::windows::{bond_forming, closed_window, extract_movie, select_anchor, ClosedWindow};

const NO_MATCH: u8 = 3;
const NOT_APPLICABLE: u8 = 4;
const VALIDATION: u8 = 2;

#[derive(Parser)]
#[command(name = "tilepump", version, about = "Self-similar fractals, tile assembly runs and window-movie pumping")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the classification of a generator as JSON.
    Classify {
        #[arg(long)]
        gen: PathBuf,
    },
    /// Draw `scale(stage(gen, s), c)` as SVG.
    Stage {
        #[arg(long)]
        gen: PathBuf,
        #[arg(long, default_value_t = 1)]
        stage: u32,
        #[arg(long = "scale", default_value_t = 1)]
        scale: i64,
        #[command(flatten)]
        draw: DrawArgs,
    },
    /// Run a tile system and print one `x y tile` line per step.
    Simulate {
        #[arg(long)]
        tas: PathBuf,
        #[command(flatten)]
        run: RunArgs,
        /// Write the step list here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also draw the final assembly.
        #[arg(long)]
        svg: Option<PathBuf>,
        #[arg(long, default_value_t = 8)]
        cell: u32,
    },
    /// Print the movie of a window on a run, tab separated.
    Movie {
        #[arg(long)]
        tas: PathBuf,
        #[command(flatten)]
        run: RunArgs,
        /// Square window `c,s,g,e,f,p,q`.
        #[arg(long, conflicts_with = "rect", required_unless_present = "rect")]
        window: Option<String>,
        /// Rectangle `x0,y0,x1,y1`, inclusive.
        #[arg(long)]
        rect: Option<String>,
        /// Keep only the events whose glues bond in the final assembly.
        #[arg(long)]
        bond_forming: bool,
        /// Use this JSON step list instead of running.
        #[arg(long)]
        steps: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Look for two windows with matching bond-forming movies and splice them.
    Refute {
        #[arg(long)]
        tas: PathBuf,
        #[arg(long)]
        gen: PathBuf,
        #[arg(long = "scale", default_value_t = 1)]
        scale: i64,
        #[arg(long, default_value_t = 3)]
        smax: u32,
        #[arg(long, value_enum, default_value_t = PolicyArg::Lex)]
        policy: PolicyArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Place only these tiles, smallest attachable position first.
        #[arg(long, conflicts_with = "steps")]
        intended: Option<PathBuf>,
        /// Use this JSON step list instead of running.
        #[arg(long)]
        steps: Option<PathBuf>,
        /// Report path; standard output when absent.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        svg: Option<PathBuf>,
        #[arg(long, default_value_t = 8)]
        cell: u32,
        /// Accepted for scripts; window enumeration runs on one thread.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Write a one-tile-per-position system for a scaled stage.
    Craft {
        #[arg(long)]
        gen: PathBuf,
        #[arg(long = "scale", default_value_t = 1)]
        scale: i64,
        #[arg(long, default_value_t = 3)]
        stage: u32,
        #[arg(long, value_enum, default_value_t = GlueArg::Unique)]
        glues: GlueArg,
        #[arg(long)]
        out: PathBuf,
        /// Also write the intended tile of every position.
        #[arg(long)]
        intended: Option<PathBuf>,
    },
}

#[derive(Args)]
struct RunArgs {
    #[arg(long, value_enum, default_value_t = PolicyArg::Lex)]
    policy: PolicyArg,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Step cap; defaults to the point budget.
    #[arg(long)]
    cap: Option<usize>,
    /// Inclusive rectangle `x0,y0,x1,y1` the run may fill.
    #[arg(long)]
    region: Option<String>,
}

#[derive(Args)]
struct DrawArgs {
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value_t = 8)]
    cell: u32,
}

#[derive(Clone, Copy, ValueEnum)]
enum PolicyArg {
    Lex,
    Random,
}

#[derive(Clone, Copy, ValueEnum)]
enum GlueArg {
    Unique,
    Shared,
}

impl RunArgs {
    fn policy(&self) -> Policy {
        policy(self.policy, self.seed)
    }

    fn limits(&self) -> Result<RunLimits> {
        let cap = self.cap.unwrap_or_else(point_cap);
        let region = self.region.as_deref().map(parse_rect).transpose()?;
        Ok(RunLimits { step_cap: cap, region: region.map(|(x0, y0, x1, y1)| Region::Rect { x0, y0, x1, y1 }) })
    }
}

fn policy(arg: PolicyArg, seed: u64) -> Policy {
    match arg {
        PolicyArg::Lex => Policy::Lexicographic,
        PolicyArg::Random => Policy::SeededRandom(seed),
    }
}

fn numbers(text: &str, count: usize, what: &str) -> Result<Vec<i64>> {
    let values: Vec<i64> = text
        .split(',')
        .map(|v| v.trim().parse::<i64>())
        .collect::<Result<_, _>>()
        .with_context(|| format!("{what} must be {count} comma-separated integers"))?;
    if values.len() != count {
        bail!("{what} must be {count} comma-separated integers, got {}", values.len());
    }
    Ok(values)
}

fn parse_rect(text: &str) -> Result<(i64, i64, i64, i64)> {
    let v = numbers(text, 4, "a rectangle")?;
    Ok((v[0], v[1], v[2], v[3]))
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn load_generator(path: &Path) -> Result<Generator> {
    Generator::from_json(&read(path)?).with_context(|| format!("loading generator {}", path.display()))
}

fn load_system(path: &Path) -> Result<TileSystem> {
    TileSystem::from_json(&read(path)?).with_context(|| format!("loading tile system {}", path.display()))
}

fn load_steps(sys: &TileSystem, path: &Path) -> Result<Vec<Step>> {
    let items = placements_from_json(sys.tiles(), &read(path)?).with_context(|| format!("loading {}", path.display()))?;
    Ok(items.into_iter().map(|(position, tile)| Step { position, tile }).collect())
}

fn emit(text: &str, out: Option<&Path>) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("reports serialize");
    text.push('\n');
    text
}

#[derive(Serialize)]
struct ComponentWitnesses {
    size: usize,
    witnesses: FreePointWitnesses,
}

#[derive(Serialize)]
struct ClassifyReport {
    class: FractalClass,
    components: Vec<ComponentWitnesses>,
    anchors: Vec<AnchorVariant>,
}

fn cmd_classify(gen: &Path) -> Result<ExitCode> {
    let gen = load_generator(gen)?;
    let components = connected_components(gen.points())
        .into_iter()
        .map(|c| ComponentWitnesses { size: c.len(), witnesses: find_free_point_witnesses(&gen, &c) })
        .collect();
    let report = ClassifyReport { class: classify(&gen), components, anchors: anchor_variants(&gen, 1) };
    emit(&to_json(&report), None)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_stage(gen: &Path, s: u32, c: i64, draw: &DrawArgs) -> Result<ExitCode> {
    let gen = load_generator(gen)?;
    if c < 1 {
        bail!("--scale must be at least 1");
    }
    let points = scale(&stage_with_cap(&gen, s, point_cap())?, c);
    let svg = render_svg(&RenderSpec::new(draw.cell).layer(points, "#202020"))?;
    emit(&svg, draw.out.as_deref())?;
    Ok(ExitCode::SUCCESS)
}

fn step_dump(sys: &TileSystem, steps: &[Step]) -> String {
    steps.iter().map(|s| format!("{} {} {}\n", s.position.x, s.position.y, sys.tiles().tile(s.tile).name)).collect()
}

fn cmd_simulate(tas: &Path, args: &RunArgs, out: Option<&Path>, svg: Option<&Path>, cell: u32) -> Result<ExitCode> {
    let sys = load_system(tas)?;
    let seq = run(&sys, args.policy(), &args.limits()?);
    emit(&step_dump(&sys, &seq.steps), out)?;
    if let Some(path) = svg {
        let picture = render_svg(&RenderSpec::new(cell).layer(seq.result.domain(), "#202020"))?;
        emit(&picture, Some(path))?;
    }
    Ok(ExitCode::SUCCESS)
}

fn movie_window(window: Option<&str>, rect: Option<&str>) -> Result<ClosedWindow> {
    if let Some(text) = window {
        let v = numbers(text, 7, "--window")?;
        let s = u32::try_from(v[1]).context("the stage must be non-negative")?;
        return Ok(closed_window(v[0], s, v[2], Point::new(v[3], v[4]), Point::new(v[5], v[6]))?);
    }
    let (x0, y0, x1, y1) = parse_rect(rect.context("give --window or --rect")?)?;
    Ok(ClosedWindow::rectangle(x0, y0, x1, y1)?)
}

struct MovieArgs<'a> {
    window: Option<&'a str>,
    rect: Option<&'a str>,
    bond_forming: bool,
    steps: Option<&'a Path>,
    out: Option<&'a Path>,
}

fn cmd_movie(tas: &Path, args: &RunArgs, movie: &MovieArgs<'_>) -> Result<ExitCode> {
    let sys = load_system(tas)?;
    let w = movie_window(movie.window, movie.rect)?;
    let seq = match movie.steps {
        Some(path) => {
            let steps = load_steps(&sys, path)?;
            let result = replay(&sys, &steps).map_err(|e| anyhow::anyhow!("step {} does not attach: {}", e.index, e.reason))?;
            AssemblySequence { steps, result, halt: Halt::Terminal }
        }
        None => run(&sys, args.policy(), &args.limits()?),
    };
    let full = extract_movie(&sys, &seq, &w);
    let text = if movie.bond_forming {
        bond_forming(&full, &seq.result, sys.tiles()).dump(&w)
    } else {
        full.dump(&w)
    };
    emit(&text, movie.out)?;
    Ok(ExitCode::SUCCESS)
}

struct RefuteArgs<'a> {
    c: i64,
    s_max: u32,
    policy: Policy,
    intended: Option<&'a Path>,
    steps: Option<&'a Path>,
    out: Option<&'a Path>,
    svg: Option<&'a Path>,
    cell: u32,
}

fn extents(w: &ClosedWindow) -> BoundingExtents {
    BoundingExtents::of(&w.inside()).expect("windows are non-empty")
}

fn cmd_refute(tas: &Path, gen: &Path, args: &RefuteArgs<'_>) -> Result<ExitCode> {
    let sys = load_system(tas)?;
    let gen = load_generator(gen)?;
    let source = match (args.intended, args.steps) {
        (Some(path), _) => SequenceSource::Guided(load_steps(&sys, path)?.into_iter().map(|s| (s.position, s.tile)).collect()),
        (None, Some(path)) => SequenceSource::Given(load_steps(&sys, path)?),
        (None, None) => SequenceSource::Run(args.policy),
    };
    let outcome = match refute(&sys, &gen, args.c, args.s_max, source) {
        Ok(outcome) => outcome,
        Err(RefuteError::NotPierFractal) => {
            eprintln!("not applicable: {}", RefuteError::NotPierFractal);
            return Ok(ExitCode::from(NOT_APPLICABLE));
        }
        Err(e) => return Err(e.into()),
    };
    emit(&to_json(&outcome), args.out)?;
    match &outcome {
        RefuteOutcome::Refuted(report) => {
            if let Some(path) = args.svg {
                let missing: PointSet = report.missing.iter().copied().collect();
                let extra: PointSet = report.extra.iter().copied().collect();
                let mut spec = RenderSpec::new(args.cell)
                    .layer(report.spliced.clone(), "#202020")
                    .layer(missing, "#d62728")
                    .layer(extra, "#1f77b4");
                if let Some((w, w_prime)) = &report.windows {
                    spec = spec.overlay(extents(w), "#2ca02c", false).overlay(extents(w_prime), "#ff7f0e", true);
                }
                emit(&render_svg(&spec)?, Some(path))?;
            }
            Ok(ExitCode::SUCCESS)
        }
        RefuteOutcome::NoMatch(_) => Ok(ExitCode::from(NO_MATCH)),
    }
}

fn cmd_craft(gen: &Path, c: i64, s: u32, glues: GlueArg, out: &Path, intended: Option<&Path>) -> Result<ExitCode> {
    let gen = load_generator(gen)?;
    let crafted = match glues {
        GlueArg::Unique => position_system(&gen, c, s, GlueMode::Unique)?,
        GlueArg::Shared => match select_anchor(&gen, c) {
            Ok(anchor) => position_system(&gen, c, s, GlueMode::Shared(&anchor))?,
            Err(e) => {
                eprintln!("not applicable: {e}");
                return Ok(ExitCode::from(NOT_APPLICABLE));
            }
        },
    };
    emit(&crafted.system.to_json(), Some(out))?;
    if let Some(path) = intended {
        let map: &BTreeMap<Point, usize> = &crafted.intended;
        emit(&placements_to_json(crafted.system.tiles(), map.iter().map(|(&p, &t)| (p, t))), Some(path))?;
    }
    Ok(ExitCode::SUCCESS)
}

fn dispatch(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Classify { gen } => cmd_classify(&gen),
        Command::Stage { gen, stage, scale, draw } => cmd_stage(&gen, stage, scale, &draw),
        Command::Simulate { tas, run, out, svg, cell } => cmd_simulate(&tas, &run, out.as_deref(), svg.as_deref(), cell),
        Command::Movie { tas, run, window, rect, bond_forming, steps, out } => {
            let movie = MovieArgs {
                window: window.as_deref(),
                rect: rect.as_deref(),
                bond_forming,
                steps: steps.as_deref(),
                out: out.as_deref(),
            };
            cmd_movie(&tas, &run, &movie)
        }
        Command::Refute { tas, gen, scale, smax, policy: p, seed, intended, steps, out, svg, cell, jobs: _ } => {
            let args = RefuteArgs {
                c: scale,
                s_max: smax,
                policy: policy(p, seed),
                intended: intended.as_deref(),
                steps: steps.as_deref(),
                out: out.as_deref(),
                svg: svg.as_deref(),
                cell,
            };
            cmd_refute(&tas, &gen, &args)
        }
        Command::Craft { gen, scale, stage, glues, out, intended } => {
            cmd_craft(&gen, scale, stage, glues, &out, intended.as_deref())
        }
    }
}

fn main() -> ExitCode {
    match dispatch(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(VALIDATION)
        }
    }
}
