//! Running a system, pumping one window into another and comparing with the target shape.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::search::{find_matching_windows_for, PairLabel, SearchError};
use super::variants::{anchor_variants, Anchor, Justification};
use super::{splice, SpliceError, SpliceInput};
use crate::atam::{replay, run, run_guided, AssemblySequence, Halt, Policy, Region, RunLimits, Step, TileId, TileSystem};
use crate::fractal::{scale, stage, Generator, StageError};
use crate::grid::{BoundingExtents, Point, PointSet};
use crate::windows::{window_side, ClosedWindow, WindowError};

/// Printed in every report: a finite run cannot show that the infinite shape assembles.
pub const DESK_SCALE_NOTE: &str =
    "finite-region approximation: a missing match here does not mean the system strictly self-assembles the fractal";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RefuteError {
    #[error("no anchor applies: the generator is not a pier fractal and no corollary variant holds")]
    NotPierFractal,
    #[error("given steps do not replay: step {index}")]
    InvalidSequence { index: usize },
    #[error(transparent)]
    Stage(#[from] StageError),
    #[error(transparent)]
    Window(#[from] WindowError),
    #[error(transparent)]
    Search(#[from] SearchError),
    #[error(transparent)]
    Splice(#[from] SpliceError),
}

/// Where the assembly sequence comes from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SequenceSource {
    Run(Policy),
    /// Attach only the given tile at each position.
    Guided(BTreeMap<Point, TileId>),
    /// An explicit step list, checked by replay.
    Given(Vec<Step>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WindowSummary {
    pub extents: BoundingExtents,
    pub cells: usize,
}

impl From<&ClosedWindow> for WindowSummary {
    fn from(w: &ClosedWindow) -> Self {
        let inside = w.inside();
        WindowSummary { extents: BoundingExtents::of(&inside).expect("windows are non-empty"), cells: inside.len() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunSummary {
    pub steps: usize,
    pub halt: Halt,
    /// The run stopped on its step cap rather than on the region.
    pub truncated: bool,
    pub matches_target: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VariantSummary {
    pub justification: Justification,
    pub anchor: Anchor,
    pub windows_checked: usize,
    pub distinct_submovies: usize,
    pub pigeonhole_bound: String,
    pub matched: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RefutationReport {
    pub justification: Justification,
    pub anchor: Anchor,
    pub pair: PairLabel,
    pub i: u32,
    pub j: u32,
    pub c_vec: Point,
    pub w: WindowSummary,
    pub w_prime: WindowSummary,
    pub gamma_steps: usize,
    pub replay_ok: bool,
    pub mirrored: bool,
    pub missing: Vec<Point>,
    pub extra: Vec<Point>,
    pub distinct_submovies: usize,
    /// Decimal, since it may not fit in a JSON number.
    pub pigeonhole_bound: String,
    pub run: RunSummary,
    pub note: String,
    /// The spliced assembly, for rendering; left out of the JSON.
    #[serde(skip)]
    pub spliced: PointSet,
    #[serde(skip)]
    pub windows: Option<(ClosedWindow, ClosedWindow)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NoMatchReport {
    pub variants: Vec<VariantSummary>,
    pub run: RunSummary,
    pub note: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "kebab-case")]
pub enum RefuteOutcome {
    Refuted(Box<RefutationReport>),
    NoMatch(NoMatchReport),
}

fn sequence(sys: &TileSystem, source: SequenceSource, region: Region) -> Result<AssemblySequence, RefuteError> {
    let limits = RunLimits::within(region);
    Ok(match source {
        SequenceSource::Run(policy) => run(sys, policy, &limits),
        SequenceSource::Guided(intended) => run_guided(sys, &intended, &limits),
        SequenceSource::Given(steps) => {
            let result = replay(sys, &steps).map_err(|e| RefuteError::InvalidSequence { index: e.index })?;
            AssemblySequence { steps, result, halt: Halt::Terminal }
        }
    })
}

/// Tries each anchor variant in order and splices at the first match whose result leaves the target.
pub fn refute(
    sys: &TileSystem,
    gen: &Generator,
    c: i64,
    s_max: u32,
    source: SequenceSource,
) -> Result<RefuteOutcome, RefuteError> {
    let variants = anchor_variants(gen, c);
    if variants.is_empty() {
        return Err(RefuteError::NotPierFractal);
    }
    let g = gen.side();
    let side = window_side(c, g, s_max)?.checked_mul(g * g).ok_or(WindowError::Overflow)?;
    let seq = sequence(sys, source, Region::Rect { x0: 0, y0: 0, x1: side - 1, y1: side - 1 })?;
    let target = scale(&stage(gen, s_max)?, c);
    let run = RunSummary {
        steps: seq.len(),
        halt: seq.halt,
        truncated: seq.halt == Halt::StepCap,
        matches_target: seq.result.domain() == target,
    };

    let mut summaries = Vec::new();
    for variant in variants {
        let search = find_matching_windows_for(sys, &seq, &variant.anchor, c, g, s_max)?;
        summaries.push(VariantSummary {
            justification: variant.justification,
            anchor: variant.anchor.clone(),
            windows_checked: search.windows_checked,
            distinct_submovies: search.distinct_submovies,
            pigeonhole_bound: search.bound.to_string(),
            matched: search.found.is_some(),
        });
        let Some(found) = search.found else {
            continue;
        };
        let input = SpliceInput { sequence: &seq, w: &found.w, w_prime: &found.w_prime, c_vec: found.c_vec };
        let spliced = splice(sys, &input)?;
        let domain = spliced.result.domain();
        let missing: Vec<Point> = target.difference(&domain).copied().collect();
        let extra: Vec<Point> = domain.difference(&target).copied().collect();
        if missing.is_empty() && extra.is_empty() {
            continue;
        }
        let (i, j) = found.label.stages();
        return Ok(RefuteOutcome::Refuted(Box::new(RefutationReport {
            justification: variant.justification,
            anchor: variant.anchor,
            pair: found.label,
            i,
            j,
            c_vec: found.c_vec,
            w: (&found.w).into(),
            w_prime: (&found.w_prime).into(),
            gamma_steps: spliced.gamma_steps.len(),
            replay_ok: spliced.replay_ok,
            mirrored: spliced.mirrored,
            missing,
            extra,
            distinct_submovies: search.distinct_submovies,
            pigeonhole_bound: search.bound.to_string(),
            run,
            note: DESK_SCALE_NOTE.to_owned(),
            spliced: domain,
            windows: Some((found.w, found.w_prime)),
        })));
    }
    Ok(RefuteOutcome::NoMatch(NoMatchReport { variants: summaries, run, note: DESK_SCALE_NOTE.to_owned() }))
}
