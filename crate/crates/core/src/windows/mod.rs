//! Closed windows over the lattice, the square windows cut out of a scaled fractal,
//! and the arithmetic that lines two of them up.

mod anchor;
mod movie;

pub use anchor::{
    cut_anchors, fractal_bonds, line_side, search_free_point, select_anchor, AnchorError, CutAnchor, CutAxis,
    WindowAnchor,
};
pub use movie::{
    bond_forming, extract_movie, movies_equal_up_to, BondFormingSubmovie, MovieEvent, MovieShift, WindowMovie,
};

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::grid::{is_connected, Direction, Point, PointSet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WindowError {
    #[error("{name} = {value} is out of range")]
    OutOfRange { name: &'static str, value: i64 },
    #[error("stage pair ({i},{j}) needs 1 < i < j")]
    StageOrder { i: u32, j: u32 },
    #[error("window arithmetic overflows 64-bit coordinates")]
    Overflow,
    #[error("a window needs a non-empty inside")]
    EmptyInside,
    #[error("the window inside is not connected")]
    DisconnectedInside,
    #[error("the window inside encloses a hole")]
    InsideWithHole,
}

/// An axis-aligned square of lattice points.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Square {
    pub origin: Point,
    pub side: i64,
}

impl Square {
    pub fn contains(&self, p: Point) -> bool {
        (self.origin.x..self.origin.x + self.side).contains(&p.x)
            && (self.origin.y..self.origin.y + self.side).contains(&p.y)
    }

    pub fn points(&self) -> impl Iterator<Item = Point> + '_ {
        (0..self.side).flat_map(move |dx| (0..self.side).map(move |dy| self.origin + Point::new(dx, dy)))
    }
}

/// A grid edge crossing a window's cut, named by its inside endpoint and the outward direction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CutEdge {
    pub inside: Point,
    pub outward: Direction,
}

impl CutEdge {
    pub fn outside(&self) -> Point {
        self.inside.step(self.outward)
    }

    pub fn translate(self, by: Point) -> CutEdge {
        CutEdge { inside: self.inside + by, outward: self.outward }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Shape {
    Square(Square),
    Cells(PointSet),
}

/// A cut of the lattice into a finite inside and an infinite outside.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosedWindow {
    shape: Shape,
}

impl ClosedWindow {
    pub fn square(origin: Point, side: i64) -> Result<Self, WindowError> {
        if side < 1 {
            return Err(WindowError::OutOfRange { name: "side", value: side });
        }
        Ok(ClosedWindow { shape: Shape::Square(Square { origin, side }) })
    }

    /// Inclusive rectangle; a square one is kept in square form.
    pub fn rectangle(x0: i64, y0: i64, x1: i64, y1: i64) -> Result<Self, WindowError> {
        if x1 < x0 || y1 < y0 {
            return Err(WindowError::EmptyInside);
        }
        if x1 - x0 == y1 - y0 {
            return ClosedWindow::square(Point::new(x0, y0), x1 - x0 + 1);
        }
        ClosedWindow::from_points((x0..=x1).flat_map(|x| (y0..=y1).map(move |y| Point::new(x, y))).collect())
    }

    /// A general inside: non-empty, connected and without holes, so the outside is one infinite piece.
    pub fn from_points(inside: PointSet) -> Result<Self, WindowError> {
        if inside.is_empty() {
            return Err(WindowError::EmptyInside);
        }
        if !is_connected(&inside).unwrap_or(false) {
            return Err(WindowError::DisconnectedInside);
        }
        if has_hole(&inside) {
            return Err(WindowError::InsideWithHole);
        }
        Ok(ClosedWindow { shape: Shape::Cells(inside) })
    }

    pub fn as_square(&self) -> Option<Square> {
        match &self.shape {
            Shape::Square(sq) => Some(*sq),
            Shape::Cells(_) => None,
        }
    }

    pub fn contains(&self, p: Point) -> bool {
        match &self.shape {
            Shape::Square(sq) => sq.contains(p),
            Shape::Cells(set) => set.contains(&p),
        }
    }

    pub fn len(&self) -> usize {
        match &self.shape {
            Shape::Square(sq) => (sq.side * sq.side) as usize,
            Shape::Cells(set) => set.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn inside(&self) -> PointSet {
        match &self.shape {
            Shape::Square(sq) => sq.points().collect(),
            Shape::Cells(set) => set.clone(),
        }
    }

    /// All edges with exactly one endpoint inside, sorted.
    pub fn cut_edges(&self) -> Vec<CutEdge> {
        let mut out = Vec::new();
        match &self.shape {
            Shape::Square(sq) => {
                let (o, n) = (sq.origin, sq.side);
                for t in 0..n {
                    out.push(CutEdge { inside: o + Point::new(t, 0), outward: Direction::S });
                    out.push(CutEdge { inside: o + Point::new(t, n - 1), outward: Direction::N });
                    out.push(CutEdge { inside: o + Point::new(0, t), outward: Direction::W });
                    out.push(CutEdge { inside: o + Point::new(n - 1, t), outward: Direction::E });
                }
            }
            Shape::Cells(set) => {
                for &p in set {
                    for d in Direction::ALL {
                        if !set.contains(&p.step(d)) {
                            out.push(CutEdge { inside: p, outward: d });
                        }
                    }
                }
            }
        }
        out.sort();
        out
    }

    pub fn translate(&self, by: Point) -> ClosedWindow {
        let shape = match &self.shape {
            Shape::Square(sq) => Shape::Square(Square { origin: sq.origin + by, side: sq.side }),
            Shape::Cells(set) => Shape::Cells(set.iter().map(|&p| p + by).collect()),
        };
        ClosedWindow { shape }
    }
}

fn has_hole(inside: &PointSet) -> bool {
    let Some(ext) = crate::grid::BoundingExtents::of(inside) else {
        return false;
    };
    let (x0, x1, y0, y1) = (ext.l - 1, ext.r + 1, ext.b - 1, ext.t + 1);
    let in_box = |p: Point| (x0..=x1).contains(&p.x) && (y0..=y1).contains(&p.y);
    let start = Point::new(x0, y0);
    let mut seen = PointSet::from([start]);
    let mut queue = VecDeque::from([start]);
    while let Some(p) = queue.pop_front() {
        for q in p.neighbors() {
            if in_box(q) && !inside.contains(&q) && seen.insert(q) {
                queue.push_back(q);
            }
        }
    }
    let box_cells = ((x1 - x0 + 1) * (y1 - y0 + 1)) as usize;
    seen.len() + inside.len() != box_cells
}

/// `inside(w) ⊆ inside(outer)`.
pub fn is_enclosed(w: &ClosedWindow, outer: &ClosedWindow) -> bool {
    if let (Some(a), Some(b)) = (w.as_square(), outer.as_square()) {
        return b.contains(a.origin) && b.contains(a.origin + Point::new(a.side - 1, a.side - 1));
    }
    match &w.shape {
        Shape::Square(sq) => sq.points().all(|p| outer.contains(p)),
        Shape::Cells(set) => set.iter().all(|&p| outer.contains(p)),
    }
}

fn power(g: i64, k: u32) -> Result<i64, WindowError> {
    g.checked_pow(k).ok_or(WindowError::Overflow)
}

fn mul(a: i64, b: i64) -> Result<i64, WindowError> {
    a.checked_mul(b).ok_or(WindowError::Overflow)
}

fn add(a: i64, b: i64) -> Result<i64, WindowError> {
    a.checked_add(b).ok_or(WindowError::Overflow)
}

/// `g^from + … + g^to`, zero when `to < from`.
pub(crate) fn power_sum(g: i64, from: u32, to: i64) -> Result<i64, WindowError> {
    let mut total = 0i64;
    let mut k = from as i64;
    while k <= to {
        total = add(total, power(g, k as u32)?)?;
        k += 1;
    }
    Ok(total)
}

fn check_digits(g: i64, digits: &[(&'static str, i64)]) -> Result<(), WindowError> {
    if g < 2 {
        return Err(WindowError::OutOfRange { name: "g", value: g });
    }
    for &(name, value) in digits {
        if !(0..g).contains(&value) {
            return Err(WindowError::OutOfRange { name, value });
        }
    }
    Ok(())
}

fn check_scale(c: i64) -> Result<(), WindowError> {
    if c < 1 {
        return Err(WindowError::OutOfRange { name: "c", value: c });
    }
    Ok(())
}

fn check_stage(s: u32) -> Result<(), WindowError> {
    if s < 2 {
        return Err(WindowError::OutOfRange { name: "s", value: s as i64 });
    }
    Ok(())
}

fn check_pair(i: u32, j: u32) -> Result<(), WindowError> {
    if i < 2 || j <= i {
        return Err(WindowError::StageOrder { i, j });
    }
    Ok(())
}

/// Side length `c·g^(s−2)` of the stage-`s` window.
pub fn window_side(c: i64, g: i64, s: u32) -> Result<i64, WindowError> {
    check_scale(c)?;
    check_stage(s)?;
    mul(c, power(g, s - 2)?)
}

/// Southwest corner of the sub-block `sub` of block `block` at stage `s`.
pub fn block_origin(c: i64, s: u32, g: i64, block: Point, sub: Point) -> Result<Point, WindowError> {
    check_scale(c)?;
    check_stage(s)?;
    check_digits(g, &[("e", block.x), ("f", block.y), ("p", sub.x), ("q", sub.y)])?;
    let big = mul(c, power(g, s - 1)?)?;
    let small = mul(c, power(g, s - 2)?)?;
    Ok(Point::new(
        add(mul(big, block.x)?, mul(small, sub.x)?)?,
        add(mul(big, block.y)?, mul(small, sub.y)?)?,
    ))
}

/// The square of side `c·g^(s−2)` at block `(e,f)`, sub-block `(p,q)`.
pub fn square_inside(c: i64, s: u32, g: i64, block: Point, sub: Point) -> Result<PointSet, WindowError> {
    Ok(closed_window(c, s, g, block, sub)?.inside())
}

pub fn closed_window(c: i64, s: u32, g: i64, block: Point, sub: Point) -> Result<ClosedWindow, WindowError> {
    let origin = block_origin(c, s, g, block, sub)?;
    ClosedWindow::square(origin, window_side(c, g, s)?)
}

/// Vector from the southwest corner of the stage-`i` window to that of the stage-`j` window.
pub fn stage_translation(c: i64, g: i64, i: u32, j: u32, block: Point, sub: Point) -> Result<Point, WindowError> {
    check_pair(i, j)?;
    Ok(block_origin(c, j, g, block, sub)? - block_origin(c, i, g, block, sub)?)
}

/// Extra shift lining up the bond line of the stage-`i` window with the stage-`j` one.
///
/// `along` is the bridge coordinate: column `a` for north and south pointing piers, row `b` otherwise.
pub fn alignment_offset(
    pointing: Direction,
    along: i64,
    c: i64,
    g: i64,
    i: u32,
    j: u32,
) -> Result<Point, WindowError> {
    check_scale(c)?;
    check_pair(i, j)?;
    check_digits(g, &[("a_or_b", along)])?;
    let run = mul(mul(along, c)?, power_sum(g, i - 2, j as i64 - 3)?)?;
    let growth = mul(c, power(g, j - 2)? - power(g, i - 2)?)?;
    Ok(match pointing {
        Direction::N => Point::new(run, 0),
        Direction::E => Point::new(0, run),
        Direction::S => Point::new(run, growth),
        Direction::W => Point::new(growth, run),
    })
}

/// Whether the stage-`i` window moved onto the stage-`j` corner and then by `offset` stays inside.
///
/// Shifts are taken as non-negative, so a negative component is never enclosed.
pub fn enclosure_holds(c: i64, g: i64, i: u32, j: u32, offset: Point) -> Result<bool, WindowError> {
    check_scale(c)?;
    check_pair(i, j)?;
    let m = mul(c, power(g, j - 2)? - power(g, i - 2)?)?;
    Ok((0..=m).contains(&offset.x) && (0..=m).contains(&offset.y))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rect(x: std::ops::RangeInclusive<i64>, y: std::ops::RangeInclusive<i64>) -> PointSet {
        x.flat_map(|a| y.clone().map(move |b| Point::new(a, b))).collect()
    }

    #[test]
    fn square_insides() {
        let p = |x, y| Point::new(x, y);
        assert_eq!(square_inside(1, 3, 4, p(0, 1), p(3, 2)).unwrap(), rect(12..=15, 24..=27));
        assert_eq!(square_inside(1, 2, 4, p(0, 1), p(3, 2)).unwrap(), PointSet::from([p(3, 6)]));
        assert_eq!(square_inside(2, 2, 2, p(0, 0), p(0, 0)).unwrap(), rect(0..=1, 0..=1));
        assert!(matches!(square_inside(1, 1, 4, p(0, 0), p(0, 0)), Err(WindowError::OutOfRange { name: "s", .. })));
        assert!(matches!(square_inside(1, 2, 4, p(4, 0), p(0, 0)), Err(WindowError::OutOfRange { name: "e", .. })));
        assert!(matches!(square_inside(0, 2, 4, p(0, 0), p(0, 0)), Err(WindowError::OutOfRange { name: "c", .. })));
    }

    #[test]
    fn cut_edge_counts() {
        for n in 1..6 {
            let w = ClosedWindow::square(Point::new(-2, 3), n).unwrap();
            assert_eq!(w.cut_edges().len() as i64, 4 * n);
            let general = ClosedWindow::from_points(w.inside()).unwrap();
            assert_eq!(general.cut_edges(), w.cut_edges());
        }
    }

    #[test]
    fn general_insides_are_validated() {
        assert_eq!(ClosedWindow::from_points(PointSet::new()), Err(WindowError::EmptyInside));
        let apart = PointSet::from([Point::new(0, 0), Point::new(2, 0)]);
        assert_eq!(ClosedWindow::from_points(apart), Err(WindowError::DisconnectedInside));
        let mut ring = rect(0..=2, 0..=2);
        ring.remove(&Point::new(1, 1));
        assert_eq!(ClosedWindow::from_points(ring), Err(WindowError::InsideWithHole));
        let ell = PointSet::from([Point::new(0, 0), Point::new(1, 0), Point::new(0, 1)]);
        assert_eq!(ClosedWindow::from_points(ell).unwrap().cut_edges().len(), 8);
    }

    #[test]
    fn translations() {
        let p = |x, y| Point::new(x, y);
        assert_eq!(stage_translation(1, 4, 2, 3, p(0, 1), p(3, 2)).unwrap(), p(9, 18));
        assert_eq!(stage_translation(1, 3, 2, 3, p(1, 0), p(0, 1)).unwrap(), p(6, 2));
        assert!(stage_translation(1, 4, 3, 3, p(0, 1), p(3, 2)).is_err());
    }

    #[test]
    fn alignment_offsets() {
        assert_eq!(alignment_offset(Direction::E, 1, 1, 4, 2, 3).unwrap(), Point::new(0, 1));
        let sum: i64 = [3, 4, 5, 6].iter().map(|&k| 3i64.pow(k)).sum();
        assert_eq!(alignment_offset(Direction::N, 2, 1, 3, 5, 9).unwrap(), Point::new(2 * sum, 0));
        assert_eq!(alignment_offset(Direction::N, 2, 1, 3, 5, 9).unwrap(), Point::new(2160, 0));
        assert_eq!(alignment_offset(Direction::N, 0, 3, 4, 2, 5).unwrap(), Point::ORIGIN);
        assert_eq!(alignment_offset(Direction::E, 0, 3, 4, 2, 5).unwrap(), Point::ORIGIN);
        // south and west pointing piers add the full size difference on the other axis
        assert_eq!(alignment_offset(Direction::S, 1, 1, 4, 2, 3).unwrap(), Point::new(1, 3));
        assert_eq!(alignment_offset(Direction::W, 1, 1, 4, 2, 3).unwrap(), Point::new(3, 1));
        assert!(alignment_offset(Direction::N, 4, 1, 4, 2, 3).is_err());
    }

    #[test]
    fn enclosure_examples() {
        assert!(enclosure_holds(1, 4, 2, 3, Point::new(0, 1)).unwrap());
        assert!(!enclosure_holds(1, 4, 2, 3, Point::new(0, 4)).unwrap());
        assert!(enclosure_holds(1, 4, 2, 3, Point::new(3, 3)).unwrap());
        assert!(!enclosure_holds(1, 4, 2, 3, Point::new(-1, 0)).unwrap());
    }

    #[test]
    fn enclosed_windows() {
        let w = ClosedWindow::square(Point::new(0, 0), 3).unwrap();
        assert!(is_enclosed(&w, &w));
        assert!(!is_enclosed(&w, &w.translate(Point::new(5, 0))));
        let (ef, pq) = (Point::new(0, 1), Point::new(3, 2));
        let small = closed_window(1, 2, 4, ef, pq).unwrap();
        let large = closed_window(1, 3, 4, ef, pq).unwrap();
        let shift = stage_translation(1, 4, 2, 3, ef, pq).unwrap()
            + alignment_offset(Direction::E, 2, 1, 4, 2, 3).unwrap();
        assert!(is_enclosed(&small.translate(shift), &large));
        let ell = ClosedWindow::from_points(PointSet::from([Point::new(0, 0), Point::new(1, 0)])).unwrap();
        assert!(is_enclosed(&ell, &w));
        assert!(!is_enclosed(&w, &ell));
    }

    fn params() -> impl Strategy<Value = (i64, i64, u32, u32, Point, Point, Point)> {
        (2i64..=4, 1i64..=2, 2u32..=4).prop_flat_map(|(g, c, i)| {
            let m = c * g.pow(3);
            (
                Just(g),
                Just(c),
                Just(i),
                (i + 1)..=5u32,
                (0..g, 0..g).prop_map(Point::from),
                (0..g, 0..g).prop_map(Point::from),
                (-2..=m + 2, -2..=m + 2).prop_map(Point::from),
            )
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]
        #[test]
        fn enclosure_matches_set_inclusion((g, c, i, j, ef, pq, off) in params()) {
            let small = square_inside(c, i, g, ef, pq).unwrap();
            let large = square_inside(c, j, g, ef, pq).unwrap();
            let t = stage_translation(c, g, i, j, ef, pq).unwrap() + off;
            let moved: PointSet = small.iter().map(|&p| p + t).collect();
            prop_assert_eq!(enclosure_holds(c, g, i, j, off).unwrap(), moved.is_subset(&large));
        }

        #[test]
        fn corners_line_up((g, c, i, j, ef, pq, _off) in params()) {
            let corner = |s| *square_inside(c, s, g, ef, pq).unwrap().first().unwrap();
            prop_assert_eq!(corner(i) + stage_translation(c, g, i, j, ef, pq).unwrap(), corner(j));
        }
    }
}
