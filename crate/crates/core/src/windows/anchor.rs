//! Where to put the windows: a pier sub-block inside a block whose other sides are free,
//! so every window meets the fractal along one straight line of bonds.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{block_origin, power_sum, window_side, ClosedWindow, CutEdge, WindowError};
use crate::fractal::{
    bridges, classify, equivalent_columns, equivalent_horizontal_cuts, equivalent_rows, equivalent_vertical_cuts,
    Bridge, BridgeKind, Generator, Pier, PierKind, Symmetry,
};
use crate::grid::{is_connected, Direction, Point, PointSet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AnchorError {
    #[error("the generator does not define a pier fractal")]
    NotPierFractal,
    #[error("no pier and free point give a window with a single bond line")]
    NoValidAnchor,
    #[error(transparent)]
    Window(#[from] WindowError),
}

/// Pier `(p,q)`, free point `(e,f)` and the bridge point `(a,b)` fixing the bond line.
///
/// `footprint` lists the sub-blocks of block `(e,f)` the window covers; it is just the pier
/// for square windows and a whole pier-like sub-configuration otherwise.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WindowAnchor {
    pub pier: Point,
    pub free_point: Point,
    pub pier_direction: Direction,
    pub bridge_point: Point,
    pub footprint: Vec<Point>,
}

/// The window side that carries the bond line: the one facing the pier's neighbor.
pub fn line_side(pointing: Direction) -> Direction {
    pointing.inverse()
}

/// Bridge point for a pier pointing `pointing`, when the bridge it depends on is unique.
fn bridge_point(gen: &Generator, pointing: Direction) -> Option<Point> {
    let g = gen.side();
    let kind = if pointing.is_vertical() { BridgeKind::Vertical } else { BridgeKind::Horizontal };
    let found: Vec<Bridge> = bridges(gen.points()).into_iter().filter(|b| b.kind == kind).collect();
    let [bridge] = &found[..] else {
        return None;
    };
    let k = bridge.index;
    Some(match pointing {
        Direction::N => Point::new(k, 0),
        Direction::E => Point::new(0, k),
        Direction::S => Point::new(k, g - 1),
        Direction::W => Point::new(g - 1, k),
    })
}

impl WindowAnchor {
    pub fn new(gen: &Generator, pier: Point, pointing: Direction, free_point: Point, footprint: Vec<Point>) -> Option<Self> {
        let bridge_point = bridge_point(gen, pointing)?;
        Some(WindowAnchor { pier, free_point, pier_direction: pointing, bridge_point, footprint })
    }

    pub fn is_square(&self) -> bool {
        self.footprint == [self.pier]
    }

    /// `a` for north and south pointing piers, `b` for east and west ones.
    pub fn along(&self) -> i64 {
        if self.pier_direction.is_vertical() {
            self.bridge_point.x
        } else {
            self.bridge_point.y
        }
    }

    /// `w_s`: the square `W_s^c(e,f,p,q)`, or the union of the footprint's sub-blocks.
    pub fn window(&self, c: i64, g: i64, s: u32) -> Result<ClosedWindow, WindowError> {
        let side = window_side(c, g, s)?;
        if self.is_square() {
            return ClosedWindow::square(block_origin(c, s, g, self.free_point, self.pier)?, side);
        }
        let mut inside = PointSet::new();
        for &sub in &self.footprint {
            let o = block_origin(c, s, g, self.free_point, sub)?;
            inside.extend((0..side).flat_map(|dx| (0..side).map(move |dy| o + Point::new(dx, dy))));
        }
        ClosedWindow::from_points(inside)
    }

    /// The `c` cut edges expected to carry bonds, in order along the line.
    pub fn bond_line(&self, c: i64, g: i64, s: u32) -> Result<Vec<CutEdge>, WindowError> {
        let o = block_origin(c, s, g, self.free_point, self.pier)?;
        let side = window_side(c, g, s)?;
        let run = c * self.along() * power_sum(g, 0, s as i64 - 3)?;
        let outward = line_side(self.pier_direction);
        let start = match self.pier_direction {
            Direction::N => o + Point::new(run, 0),
            Direction::S => o + Point::new(run, side - 1),
            Direction::E => o + Point::new(0, run),
            Direction::W => o + Point::new(side - 1, run),
        };
        let step = if self.pier_direction.is_vertical() { Point::new(1, 0) } else { Point::new(0, 1) };
        Ok((0..c).map(|t| CutEdge { inside: start + step * t, outward }).collect())
    }

    /// Shift carrying the stage-`i` bond line onto the stage-`j` one.
    pub fn translation(&self, c: i64, g: i64, i: u32, j: u32) -> Result<Point, WindowError> {
        if i < 2 || j <= i {
            return Err(WindowError::StageOrder { i, j });
        }
        Ok(self.bond_line(c, g, j)?[0].inside - self.bond_line(c, g, i)?[0].inside)
    }

    /// Checks the single-line property against the infinite scaled fractal for `s` = 2 and 3.
    pub fn verify(&self, gen: &Generator, c: i64) -> Result<bool, WindowError> {
        let g = gen.side();
        for s in 2..=3 {
            let w = match self.window(c, g, s) {
                Ok(w) => w,
                Err(WindowError::InsideWithHole | WindowError::DisconnectedInside) => return Ok(false),
                Err(e) => return Err(e),
            };
            if fractal_bonds(gen, c, &w) != self.bond_line(c, g, s)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Cut edges of `w` whose two endpoints both lie in the scaled fractal.
pub fn fractal_bonds(gen: &Generator, c: i64, w: &ClosedWindow) -> Vec<CutEdge> {
    w.cut_edges()
        .into_iter()
        .filter(|e| gen.scaled_contains(c, e.inside) && gen.scaled_contains(c, e.outside()))
        .collect()
}

/// Free point from the parallel-pier construction, with whether the `p > 0` branch applied.
fn parallel_free_point(gen: &Generator, pier: &Pier) -> Option<(bool, Point)> {
    let g = gen.side();
    let t = Symmetry::all().find(|t| t.apply_direction(pier.pointing) == Direction::N)?;
    let canon = gen.transformed(t);
    let p = t.apply(pier.location, g).x;
    let column = if p == 0 { 1 } else { p - 1 };
    let y = (0..g - 1).find(|&y| canon.contains(Point::new(column, y)) && !canon.contains(Point::new(column, y + 1)))?;
    Some((p > 0, t.inverse().apply(Point::new(column, y), g)))
}

/// Free point from the orthogonal-pier construction, with whether the `p < g−1` branch applied.
fn orthogonal_free_point(gen: &Generator, pier: &Pier) -> Option<(bool, Point)> {
    let g = gen.side();
    let t = Symmetry::all()
        .find(|t| t.apply_direction(pier.pointing) == Direction::E && t.apply(pier.location, g).y == g - 1)?;
    let canon = gen.transformed(t);
    let p = t.apply(pier.location, g).x;
    let (column, rows) = if p < g - 1 { (p, g - 2) } else { (0, g - 1) };
    let y = (0..rows).find(|&y| canon.contains(Point::new(column, y)) && !canon.contains(Point::new(column, y + 1)))?;
    Some((p < g - 1, t.inverse().apply(Point::new(column, y), g)))
}

fn constructed(gen: &Generator, piers: &[Pier], kind: PierKind, build: fn(&Generator, &Pier) -> Option<(bool, Point)>) -> Vec<WindowAnchor> {
    let mut found: Vec<(bool, Point, WindowAnchor)> = piers
        .iter()
        .filter(|p| p.kind == kind)
        .filter_map(|p| {
            let (preferred, ef) = build(gen, p)?;
            let anchor = WindowAnchor::new(gen, p.location, p.pointing, ef, vec![p.location])?;
            Some((!preferred, p.location, anchor))
        })
        .collect();
    found.sort_by_key(|(rank, loc, _)| (*rank, *loc));
    found.into_iter().map(|(_, _, a)| a).collect()
}

/// Tries every free point of the generator in order for a fixed pier and footprint.
pub fn search_free_point(
    gen: &Generator,
    c: i64,
    pier: Point,
    pointing: Direction,
    footprint: &[Point],
) -> Result<Option<WindowAnchor>, WindowError> {
    for &ef in gen.points() {
        let Some(anchor) = WindowAnchor::new(gen, pier, pointing, ef, footprint.to_vec()) else {
            return Ok(None);
        };
        if anchor.verify(gen, c)? {
            return Ok(Some(anchor));
        }
    }
    Ok(None)
}

/// Main anchor of a pier fractal: a real pier first, then the single-bridge constructions.
pub fn select_anchor(gen: &Generator, c: i64) -> Result<WindowAnchor, AnchorError> {
    if c < 1 {
        return Err(WindowError::OutOfRange { name: "c", value: c }.into());
    }
    let class = classify(gen);
    if !class.is_pier_fractal {
        return Err(AnchorError::NotPierFractal);
    }
    let piers = &class.piers;
    let real = piers
        .iter()
        .filter(|p| p.kind == PierKind::Real)
        .filter_map(|p| WindowAnchor::new(gen, p.location, p.pointing, p.location, vec![p.location]));
    let candidates: Vec<WindowAnchor> = real
        .chain(constructed(gen, piers, PierKind::ParallelSingleBridge, parallel_free_point))
        .chain(constructed(gen, piers, PierKind::OrthogonalSingleBridge, orthogonal_free_point))
        .collect();
    for anchor in candidates {
        if anchor.verify(gen, c)? {
            return Ok(anchor);
        }
    }
    for p in piers.iter().filter(|p| p.kind != PierKind::DoubleBridge) {
        if let Some(anchor) = search_free_point(gen, c, p.location, p.pointing, &[p.location])? {
            return Ok(anchor);
        }
    }
    Err(AnchorError::NoValidAnchor)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CutAxis {
    /// Cuts between adjacent columns.
    Vertical,
    /// Cuts between adjacent rows.
    Horizontal,
}

/// Two equivalent cuts `k1 < k2` of the sub-blocks of `block`; each stage-`s` window is a
/// `c·g^(s−1)` square starting just past the cut and extending `toward`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CutAnchor {
    pub block: Point,
    pub cuts: (i64, i64),
    pub axis: CutAxis,
    pub toward: Direction,
}

impl CutAnchor {
    pub fn window(&self, c: i64, g: i64, s: u32, k: i64) -> Result<ClosedWindow, WindowError> {
        let small = window_side(c, g, s)?;
        let big = small.checked_mul(g).ok_or(WindowError::Overflow)?;
        let corner = block_origin(c, s, g, self.block, Point::ORIGIN)?;
        let edge = (k + 1) * small;
        let origin = match self.toward {
            Direction::E => corner + Point::new(edge, 0),
            Direction::W => corner + Point::new(edge - big, 0),
            Direction::N => corner + Point::new(0, edge),
            Direction::S => corner + Point::new(0, edge - big),
        };
        ClosedWindow::square(origin, big)
    }

    /// Both windows of stage `s` and the shift from the first onto the second.
    pub fn pair(&self, c: i64, g: i64, s: u32) -> Result<(ClosedWindow, ClosedWindow, Point), WindowError> {
        let w = self.window(c, g, s, self.cuts.0)?;
        let w2 = self.window(c, g, s, self.cuts.1)?;
        let d = (self.cuts.1 - self.cuts.0) * window_side(c, g, s)?;
        let shift = match self.axis {
            CutAxis::Vertical => Point::new(d, 0),
            CutAxis::Horizontal => Point::new(0, d),
        };
        Ok((w, w2, shift))
    }

    /// Both windows meet the fractal only on the cut side, in the same places up to the shift.
    pub fn verify(&self, gen: &Generator, c: i64) -> Result<bool, WindowError> {
        let g = gen.side();
        for s in 2..=3 {
            let (w, w2, shift) = self.pair(c, g, s)?;
            let first = fractal_bonds(gen, c, &w);
            let second = fractal_bonds(gen, c, &w2);
            let one_sided = first.iter().all(|e| e.outward == self.toward.inverse());
            let moved: Vec<CutEdge> = first.iter().map(|e| e.translate(shift)).collect();
            if first.is_empty() || !one_sided || moved != second {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Window pairs on equivalent cuts lying on one side of every bridge across them.
pub fn cut_anchors(gen: &Generator, c: i64) -> Result<Vec<CutAnchor>, WindowError> {
    if !is_connected(gen.points()).unwrap_or(false) {
        return Ok(Vec::new());
    }
    let all = bridges(gen.points());
    let mut out = Vec::new();
    for axis in [CutAxis::Vertical, CutAxis::Horizontal] {
        let (columns, cuts, kind, directions) = match axis {
            CutAxis::Vertical => (
                equivalent_columns(gen),
                equivalent_vertical_cuts(gen),
                BridgeKind::Vertical,
                [Direction::E, Direction::W],
            ),
            CutAxis::Horizontal => (
                equivalent_rows(gen),
                equivalent_horizontal_cuts(gen),
                BridgeKind::Horizontal,
                [Direction::N, Direction::S],
            ),
        };
        if columns.is_empty() {
            continue;
        }
        let lines: Vec<i64> = all.iter().filter(|b| b.kind == kind).map(|b| b.index).collect();
        for (k1, k2) in cuts {
            for toward in directions {
                let past_all = |k: i64| match toward {
                    Direction::E | Direction::N => lines.iter().all(|&x| k >= x),
                    _ => lines.iter().all(|&x| k < x),
                };
                if !(past_all(k1) && past_all(k2)) {
                    continue;
                }
                for &block in gen.points() {
                    let anchor = CutAnchor { block, cuts: (k1, k2), axis, toward };
                    if anchor.verify(gen, c)? {
                        out.push(anchor);
                        break;
                    }
                }
            }
        }
    }
    Ok(out)
}
