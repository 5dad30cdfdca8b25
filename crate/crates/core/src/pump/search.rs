//! Looking for two windows whose bond-forming submovies agree up to translation.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::variants::Anchor;
use crate::atam::{Assembly, AssemblySequence, TileSystem};
use crate::grid::Point;
use crate::windows::{
    alignment_offset, bond_forming, enclosure_holds, extract_movie, is_enclosed, movies_equal_up_to,
    stage_translation, window_side, BondFormingSubmovie, ClosedWindow, CutAnchor, MovieShift, WindowAnchor, WindowError,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error(transparent)]
    Window(#[from] WindowError),
    #[error("stages {i}->{j}: bond-line shift {lines} disagrees with the table shift {table}")]
    AlignmentDisagrees { i: u32, j: u32, lines: Point, table: Point },
    #[error("stages {i}->{j}: the enclosure bound and the geometric test disagree")]
    EnclosureDisagrees { i: u32, j: u32 },
    #[error("{distinct} distinct submovies exceed the bound {bound}")]
    PigeonholeExceeded { distinct: usize, bound: u128 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PairLabel {
    /// Windows `w_i` and `w_j` of one anchor at two stages.
    Stages { i: u32, j: u32 },
    /// Two same-size windows of one stage on equivalent cuts.
    Cuts { stage: u32, cuts: (i64, i64) },
}

impl PairLabel {
    pub fn stages(&self) -> (u32, u32) {
        match *self {
            PairLabel::Stages { i, j } => (i, j),
            PairLabel::Cuts { stage, .. } => (stage, stage),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WindowMatch {
    pub label: PairLabel,
    pub w: ClosedWindow,
    pub w_prime: ClosedWindow,
    pub c_vec: Point,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatchSearch {
    pub found: Option<WindowMatch>,
    pub windows_checked: usize,
    /// Non-empty bond-forming submovies seen, counted up to translation.
    pub distinct_submovies: usize,
    pub bound: u128,
}

/// `t^(2L) · (2L)!` for a bond line of `line` edges, saturating.
pub fn pigeonhole_bound(t_glue: usize, line: u64) -> u128 {
    let events = 2 * u128::from(line);
    let mut total = (t_glue as u128).saturating_pow(u32::try_from(events).unwrap_or(u32::MAX));
    for k in 2..=events {
        total = total.saturating_mul(k);
    }
    total
}

/// The seed is inside both windows or outside both.
pub fn seed_condition(seed: &Assembly, w: &ClosedWindow, w_prime: &ClosedWindow) -> bool {
    let inside: Vec<(bool, bool)> = seed.iter().map(|(p, _)| (w.contains(p), w_prime.contains(p))).collect();
    inside.iter().all(|&s| s == (false, false)) || inside.iter().all(|&s| s == (true, true))
}

fn submovie(sys: &TileSystem, seq: &AssemblySequence, w: &ClosedWindow) -> BondFormingSubmovie {
    bond_forming(&extract_movie(sys, seq, w), &seq.result, sys.tiles())
}

fn matches(m: &BondFormingSubmovie, m_prime: &BondFormingSubmovie, c_vec: Point) -> bool {
    movies_equal_up_to(m, m_prime) == Some(MovieShift::By(c_vec))
}

fn check_bound(sys: &TileSystem, movies: &[&BondFormingSubmovie], line: u64) -> Result<(usize, u128), SearchError> {
    // a window no bond reaches has no bond line to count
    let distinct = movies.iter().filter(|m| m.len() > 0).map(|m| m.translation_key()).collect::<HashSet<_>>().len();
    let bound = pigeonhole_bound(sys.tiles().distinct_glue_count(), line);
    if distinct as u128 > bound {
        return Err(SearchError::PigeonholeExceeded { distinct, bound });
    }
    Ok((distinct, bound))
}

/// Smallest `j`, then smallest `i`, whose submovies match along the anchor's bond lines.
pub fn find_matching_windows(
    sys: &TileSystem,
    seq: &AssemblySequence,
    anchor: &WindowAnchor,
    c: i64,
    g: i64,
    s_max: u32,
) -> Result<MatchSearch, SearchError> {
    let stages: Vec<u32> = (2..=s_max).collect();
    let windows = stages.iter().map(|&s| anchor.window(c, g, s)).collect::<Result<Vec<_>, _>>()?;
    let movies: Vec<BondFormingSubmovie> = windows.iter().map(|w| submovie(sys, seq, w)).collect();
    let (distinct, bound) = check_bound(sys, &movies.iter().collect::<Vec<_>>(), c as u64)?;
    let mut found = None;
    'pairs: for (bj, &j) in stages.iter().enumerate() {
        for (bi, &i) in stages[..bj].iter().enumerate() {
            let c_vec = anchor.translation(c, g, i, j)?;
            let enclosed = is_enclosed(&windows[bi].translate(c_vec), &windows[bj]);
            if anchor.is_square() {
                let offset = alignment_offset(anchor.pier_direction, anchor.along(), c, g, i, j)?;
                let table = stage_translation(c, g, i, j, anchor.free_point, anchor.pier)? + offset;
                if table != c_vec {
                    return Err(SearchError::AlignmentDisagrees { i, j, lines: c_vec, table });
                }
                if enclosure_holds(c, g, i, j, offset)? != enclosed {
                    return Err(SearchError::EnclosureDisagrees { i, j });
                }
            }
            if enclosed
                && seed_condition(sys.seed(), &windows[bi], &windows[bj])
                && matches(&movies[bi], &movies[bj], c_vec)
            {
                found = Some(WindowMatch {
                    label: PairLabel::Stages { i, j },
                    w: windows[bi].clone(),
                    w_prime: windows[bj].clone(),
                    c_vec,
                });
                break 'pairs;
            }
        }
    }
    Ok(MatchSearch { found, windows_checked: windows.len(), distinct_submovies: distinct, bound })
}

fn find_matching_cut_windows(
    sys: &TileSystem,
    seq: &AssemblySequence,
    anchor: &CutAnchor,
    c: i64,
    g: i64,
    s_max: u32,
) -> Result<MatchSearch, SearchError> {
    // the bonds of a cut window lie on one side of it, so that side's length bounds the line
    let line = window_side(c, g, s_max)?.checked_mul(g).ok_or(WindowError::Overflow)? as u64;
    let mut seen = Vec::new();
    let mut found = None;
    for s in 2..=s_max {
        let (w, w_prime, c_vec) = anchor.pair(c, g, s)?;
        let (m, m_prime) = (submovie(sys, seq, &w), submovie(sys, seq, &w_prime));
        let hit = found.is_none()
            && is_enclosed(&w.translate(c_vec), &w_prime)
            && seed_condition(sys.seed(), &w, &w_prime)
            && matches(&m, &m_prime, c_vec);
        if hit {
            found = Some(WindowMatch { label: PairLabel::Cuts { stage: s, cuts: anchor.cuts }, w, w_prime, c_vec });
        }
        seen.push(m);
        seen.push(m_prime);
    }
    let (distinct, bound) = check_bound(sys, &seen.iter().collect::<Vec<_>>(), line)?;
    Ok(MatchSearch { found, windows_checked: seen.len(), distinct_submovies: distinct, bound })
}

/// [`find_matching_windows`] for any anchor kind.
pub fn find_matching_windows_for(
    sys: &TileSystem,
    seq: &AssemblySequence,
    anchor: &Anchor,
    c: i64,
    g: i64,
    s_max: u32,
) -> Result<MatchSearch, SearchError> {
    match anchor {
        Anchor::Window(a) => find_matching_windows(sys, seq, a, c, g, s_max),
        Anchor::Cut(a) => find_matching_cut_windows(sys, seq, a, c, g, s_max),
    }
}
