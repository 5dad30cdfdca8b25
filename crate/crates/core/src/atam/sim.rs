//! Frontiers, assembly sequences, replay and strict self-assembly checks.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{Assembly, TileId, TileSystem};
use crate::grid::{Direction, Point, PointSet};

/// Total bond strength `tile` would receive at empty position `p`.
pub fn attach_strength(sys: &TileSystem, a: &Assembly, p: Point, tile: TileId) -> u32 {
    let t = sys.tiles().tile(tile);
    Direction::ALL
        .into_iter()
        .filter_map(|d| {
            let u = a.get(p.step(d))?;
            Some(t.glue(d).bond(sys.tiles().tile(u).glue(d.inverse())))
        })
        .sum()
}

/// Tiles that can attach at empty position `p`, in name order.
fn candidates(sys: &TileSystem, a: &Assembly, p: Point) -> Vec<TileId> {
    if a.contains(p) {
        return Vec::new();
    }
    let mut ids: Vec<TileId> = Vec::new();
    for d in Direction::ALL {
        if let Some(u) = a.get(p.step(d)) {
            let facing = sys.tiles().tile(u).glue(d.inverse());
            if facing.strength > 0 {
                ids.extend_from_slice(sys.tiles().exposing(d, facing));
            }
        }
    }
    ids.sort_unstable();
    ids.dedup();
    ids.retain(|&t| attach_strength(sys, a, p, t) >= sys.temperature());
    ids
}

/// Empty positions where some tile attaches stably, with those tiles.
pub fn frontier(a: &Assembly, sys: &TileSystem) -> BTreeMap<Point, Vec<TileId>> {
    let empty: BTreeSet<Point> = a.iter().flat_map(|(p, _)| p.neighbors()).filter(|q| !a.contains(*q)).collect();
    empty
        .into_iter()
        .filter_map(|p| {
            let c = candidates(sys, a, p);
            (!c.is_empty()).then_some((p, c))
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Policy {
    /// Smallest frontier position, then smallest tile name.
    Lexicographic,
    /// Uniform frontier position, then uniform tile, from a seeded stream.
    SeededRandom(u64),
}

impl fmt::Display for Policy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Policy::Lexicographic => f.write_str("lex"),
            Policy::SeededRandom(s) => write!(f, "random:{s}"),
        }
    }
}

/// Positions a run may fill.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Region {
    /// Inclusive rectangle.
    Rect { x0: i64, y0: i64, x1: i64, y1: i64 },
    Points(PointSet),
}

impl Region {
    pub fn contains(&self, p: Point) -> bool {
        match self {
            Region::Rect { x0, y0, x1, y1 } => (*x0..=*x1).contains(&p.x) && (*y0..=*y1).contains(&p.y),
            Region::Points(s) => s.contains(&p),
        }
    }

    pub fn size(&self) -> u128 {
        match self {
            Region::Rect { x0, y0, x1, y1 } => {
                let w = (x1 - x0 + 1).max(0) as u128;
                let h = (y1 - y0 + 1).max(0) as u128;
                w * h
            }
            Region::Points(s) => s.len() as u128,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunLimits {
    pub step_cap: usize,
    pub region: Option<Region>,
}

impl RunLimits {
    pub fn steps(step_cap: usize) -> Self {
        RunLimits { step_cap, region: None }
    }

    pub fn within(region: Region) -> Self {
        let cap = usize::try_from(region.size()).unwrap_or(usize::MAX);
        RunLimits { step_cap: cap, region: Some(region) }
    }

    fn allows(&self, p: Point) -> bool {
        self.region.as_ref().is_none_or(|r| r.contains(p))
    }
}

/// Why a run stopped.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Halt {
    /// No tile can attach anywhere.
    Terminal,
    StepCap,
    /// Attachment is still possible, but only outside the region.
    RegionCap,
    /// A guided run could not place any further intended tile.
    GuideExhausted,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Step {
    pub position: Point,
    pub tile: TileId,
}

/// Steps taken from the seed, and the assembly they produce.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AssemblySequence {
    pub steps: Vec<Step>,
    pub result: Assembly,
    pub halt: Halt,
}

impl AssemblySequence {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }
}

/// Incrementally maintained frontier split by region membership.
struct Growth<'a> {
    sys: &'a TileSystem,
    asm: Assembly,
    inside: BTreeMap<Point, Vec<TileId>>,
    outside: BTreeSet<Point>,
}

impl<'a> Growth<'a> {
    fn new(sys: &'a TileSystem, limits: &RunLimits) -> Self {
        let asm = sys.seed().clone();
        let mut inside = BTreeMap::new();
        let mut outside = BTreeSet::new();
        for (p, c) in frontier(&asm, sys) {
            if limits.allows(p) {
                inside.insert(p, c);
            } else {
                outside.insert(p);
            }
        }
        Growth { sys, asm, inside, outside }
    }

    fn place(&mut self, step: Step, limits: &RunLimits) {
        self.asm.insert(step.position, step.tile);
        self.inside.remove(&step.position);
        self.outside.remove(&step.position);
        for q in step.position.neighbors() {
            if self.asm.contains(q) {
                continue;
            }
            let c = candidates(self.sys, &self.asm, q);
            if limits.allows(q) {
                if c.is_empty() {
                    self.inside.remove(&q);
                } else {
                    self.inside.insert(q, c);
                }
            } else if c.is_empty() {
                self.outside.remove(&q);
            } else {
                self.outside.insert(q);
            }
        }
    }

    fn stopped(&self) -> Halt {
        if self.outside.is_empty() {
            Halt::Terminal
        } else {
            Halt::RegionCap
        }
    }
}

pub fn run(sys: &TileSystem, policy: Policy, limits: &RunLimits) -> AssemblySequence {
    let mut growth = Growth::new(sys, limits);
    let mut rng = match policy {
        Policy::SeededRandom(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
        Policy::Lexicographic => None,
    };
    let mut steps = Vec::new();
    let halt = loop {
        if growth.inside.is_empty() {
            break growth.stopped();
        }
        if steps.len() >= limits.step_cap {
            break Halt::StepCap;
        }
        let step = match rng.as_mut() {
            None => {
                let (&position, tiles) = growth.inside.iter().next().expect("frontier is non-empty");
                Step { position, tile: tiles[0] }
            }
            Some(rng) => {
                let k = rng.gen_range(0..growth.inside.len());
                let (&position, tiles) = growth.inside.iter().nth(k).expect("index within frontier");
                Step { position, tile: tiles[rng.gen_range(0..tiles.len())] }
            }
        };
        growth.place(step, limits);
        steps.push(step);
    };
    AssemblySequence { steps, result: growth.asm, halt }
}

/// Places only the intended tile at each position, smallest attachable position first.
pub fn run_guided(sys: &TileSystem, intended: &BTreeMap<Point, TileId>, limits: &RunLimits) -> AssemblySequence {
    let mut growth = Growth::new(sys, limits);
    let mut steps = Vec::new();
    let halt = loop {
        if growth.inside.is_empty() {
            break growth.stopped();
        }
        if steps.len() >= limits.step_cap {
            break Halt::StepCap;
        }
        let pick = growth.inside.iter().find_map(|(&p, tiles)| {
            let want = intended.get(&p)?;
            tiles.binary_search(want).ok().map(|_| Step { position: p, tile: *want })
        });
        let Some(step) = pick else {
            break Halt::GuideExhausted;
        };
        growth.place(step, limits);
        steps.push(step);
    };
    AssemblySequence { steps, result: growth.asm, halt }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ReplayFailure {
    Occupied,
    InsufficientStrength { got: u32, needed: u32 },
    UnknownTile,
}

impl fmt::Display for ReplayFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ReplayFailure::Occupied => f.write_str("position already occupied"),
            ReplayFailure::InsufficientStrength { got, needed } => {
                write!(f, "bond strength {got} below temperature {needed}")
            }
            ReplayFailure::UnknownTile => f.write_str("tile is not in the tile set"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("step {index} is invalid: {reason}")]
pub struct ReplayError {
    pub index: usize,
    pub reason: ReplayFailure,
}

/// Re-applies `steps` from the seed, checking every attachment.
pub fn replay(sys: &TileSystem, steps: &[Step]) -> Result<Assembly, ReplayError> {
    let mut asm = sys.seed().clone();
    for (index, step) in steps.iter().enumerate() {
        let fail = |reason| ReplayError { index, reason };
        if sys.tiles().get(step.tile).is_none() {
            return Err(fail(ReplayFailure::UnknownTile));
        }
        if asm.contains(step.position) {
            return Err(fail(ReplayFailure::Occupied));
        }
        let got = attach_strength(sys, &asm, step.position, step.tile);
        if got < sys.temperature() {
            return Err(fail(ReplayFailure::InsufficientStrength { got, needed: sys.temperature() }));
        }
        asm.insert(step.position, step.tile);
    }
    Ok(asm)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    /// Every run ended with exactly the target inside the region.
    Consistent { runs: usize },
    Counterexample { policy: Policy, missing: Vec<Point>, extra: Vec<Point> },
    /// A run hit its step cap before finishing.
    Inconclusive { policy: Policy },
}

/// Runs each policy to completion within `region` and compares domains with `target` there.
pub fn strictly_self_assembles(sys: &TileSystem, target: &PointSet, region: &Region, policies: &[Policy]) -> Verdict {
    let wanted: PointSet = target.iter().copied().filter(|&p| region.contains(p)).collect();
    let limits = RunLimits::within(region.clone());
    for &policy in policies {
        let seq = run(sys, policy, &limits);
        if seq.halt == Halt::StepCap {
            return Verdict::Inconclusive { policy };
        }
        let got: PointSet = seq.result.domain().into_iter().filter(|&p| region.contains(p)).collect();
        if got != wanted {
            return Verdict::Counterexample {
                policy,
                missing: wanted.difference(&got).copied().collect(),
                extra: got.difference(&wanted).copied().collect(),
            };
        }
    }
    Verdict::Consistent { runs: policies.len() }
}
