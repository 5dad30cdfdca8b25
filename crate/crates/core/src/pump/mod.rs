//! Splicing one window's interior into another along matching bond-forming movies,
//! and the refutation driver built on it.

mod refute;
mod search;
mod variants;

pub use refute::{refute, NoMatchReport, RefutationReport, RefuteError, RefuteOutcome, SequenceSource};
pub use search::{
    find_matching_windows, find_matching_windows_for, pigeonhole_bound, seed_condition, MatchSearch, PairLabel,
    WindowMatch,
};
pub use variants::{anchor_variants, Anchor, AnchorVariant, Justification};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::atam::{replay, Assembly, AssemblySequence, ReplayFailure, Step, TileSystem};
use crate::grid::{Point, PointSet};
use crate::windows::{
    bond_forming, extract_movie, is_enclosed, movies_equal_up_to, BondFormingSubmovie, ClosedWindow, MovieShift,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Precondition {
    /// The shift is `(0,0)`.
    ZeroShift,
    /// The second bond-forming movie is not the first one shifted.
    MovieMismatch,
    /// `w + c` is not inside `w'`.
    NotEnclosed,
    /// Some seed tile is inside one window and outside the other, or the seed straddles them.
    SeedSplit,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpliceError {
    #[error("splice precondition failed: {0:?}")]
    PreconditionViolated(Precondition),
    #[error("spliced sequence failed to replay at step {index}: {reason}")]
    ReplayFailed { index: usize, reason: ReplayFailure },
    #[error("spliced sequence produced the wrong domain")]
    ResultMismatch,
}

pub struct SpliceInput<'a> {
    pub sequence: &'a AssemblySequence,
    pub w: &'a ClosedWindow,
    pub w_prime: &'a ClosedWindow,
    pub c_vec: Point,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpliceResult {
    pub gamma_steps: Vec<Step>,
    pub result: Assembly,
    pub replay_ok: bool,
    /// Whether the seed sat inside both windows, so the outer part was moved by `−c` instead.
    pub mirrored: bool,
}

/// Where each seed tile sits relative to a window: all inside, all outside, or split.
fn seed_side(seed: &Assembly, w: &ClosedWindow) -> Option<bool> {
    let mut sides = seed.iter().map(|(p, _)| w.contains(p));
    let first = sides.next()?;
    sides.all(|s| s == first).then_some(first)
}

/// One half of the splice: the steps it draws from, which of them it keeps, and its shift.
struct Part<'a> {
    keep: &'a PointSet,
    shift: Point,
    movie: &'a BondFormingSubmovie,
    next: usize,
}

impl Part<'_> {
    /// Adds the kept steps before step index `target` of `steps` and then `target` itself.
    fn advance_to(&mut self, target: usize, steps: &[Step], gamma: &mut Vec<Step>) {
        if target < self.next {
            return;
        }
        for step in &steps[self.next..target] {
            if self.keep.contains(&step.position) {
                gamma.push(Step { position: step.position + self.shift, tile: step.tile });
            }
        }
        let step = steps[target];
        gamma.push(Step { position: step.position + self.shift, tile: step.tile });
        self.next = target + 1;
    }

    fn finish(&mut self, steps: &[Step], gamma: &mut Vec<Step>) {
        for step in &steps[self.next.min(steps.len())..] {
            if self.keep.contains(&step.position) {
                gamma.push(Step { position: step.position + self.shift, tile: step.tile });
            }
        }
        self.next = steps.len();
    }
}

/// Builds the assembly `α'_O ∪ (α_I + c)` as a replayed sequence.
///
/// When the seed lies inside both windows the roles swap: `α_I` stays put and `α'_O − c`
/// grows around it, which is the same assembly moved by `−c`.
pub fn splice(sys: &TileSystem, input: &SpliceInput<'_>) -> Result<SpliceResult, SpliceError> {
    let SpliceInput { sequence, w, w_prime, c_vec } = *input;
    let violated = |p| Err(SpliceError::PreconditionViolated(p));
    if c_vec == Point::ORIGIN {
        return violated(Precondition::ZeroShift);
    }
    if !is_enclosed(&w.translate(c_vec), w_prime) {
        return violated(Precondition::NotEnclosed);
    }
    let mirrored = match (seed_side(sys.seed(), w), seed_side(sys.seed(), w_prime)) {
        (Some(false), Some(false)) => false,
        (Some(true), Some(true)) => true,
        _ => return violated(Precondition::SeedSplit),
    };
    let tiles = sys.tiles();
    let m = bond_forming(&extract_movie(sys, sequence, w), &sequence.result, tiles);
    let m_prime = bond_forming(&extract_movie(sys, sequence, w_prime), &sequence.result, tiles);
    match movies_equal_up_to(&m, &m_prime) {
        Some(MovieShift::By(v)) if v == c_vec => {}
        Some(MovieShift::Indeterminate) => {}
        _ => return violated(Precondition::MovieMismatch),
    }

    let domain = sequence.result.domain();
    let inside_w: PointSet = domain.iter().copied().filter(|&p| w.contains(p)).collect();
    let outside_w_prime: PointSet = domain.iter().copied().filter(|&p| !w_prime.contains(p)).collect();

    // `fixed` keeps its positions, `moved` is shifted; normally α'_O is fixed and α_I moves by c
    let (mut fixed, mut moved) = if mirrored {
        (
            Part { keep: &inside_w, shift: Point::ORIGIN, movie: &m, next: 0 },
            Part { keep: &outside_w_prime, shift: -c_vec, movie: &m_prime, next: 0 },
        )
    } else {
        (
            Part { keep: &outside_w_prime, shift: Point::ORIGIN, movie: &m_prime, next: 0 },
            Part { keep: &inside_w, shift: c_vec, movie: &m, next: 0 },
        )
    };

    let steps = &sequence.steps;
    let mut gamma = Vec::new();
    for k in 0..m.len() {
        let event = &fixed.movie.events[k];
        if fixed.keep.contains(&event.position) {
            // step index 0 means a seed tile, which is already present
            if event.step > 0 {
                fixed.advance_to(event.step - 1, steps, &mut gamma);
            }
        } else {
            let step = moved.movie.events[k].step;
            if step > 0 {
                moved.advance_to(step - 1, steps, &mut gamma);
            }
        }
    }
    // the remaining interior steps, then everything left of the fixed part
    moved.finish(steps, &mut gamma);
    fixed.finish(steps, &mut gamma);

    let result = replay(sys, &gamma).map_err(|e| SpliceError::ReplayFailed { index: e.index, reason: e.reason })?;
    let expected: PointSet = fixed
        .keep
        .iter()
        .map(|&p| p + fixed.shift)
        .chain(moved.keep.iter().map(|&p| p + moved.shift))
        .collect();
    let seed_count = sys.seed().len();
    let disjoint = inside_w.iter().all(|&p| !outside_w_prime.contains(&(p + c_vec)));
    if result.domain() != expected || result.len() != gamma.len() + seed_count || !disjoint {
        return Err(SpliceError::ResultMismatch);
    }
    Ok(SpliceResult { gamma_steps: gamma, result, replay_ok: true, mirrored })
}
