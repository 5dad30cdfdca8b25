//! Integer lattice geometry: points, directions, full grid graphs and connectivity.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// A lattice point. Ordered by `x`, then `y`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
pub struct Point {
    pub x: i64,
    pub y: i64,
}

impl Point {
    pub const ORIGIN: Point = Point { x: 0, y: 0 };

    pub const fn new(x: i64, y: i64) -> Self {
        Point { x, y }
    }

    pub fn step(self, d: Direction) -> Point {
        self + d.unit()
    }

    pub fn neighbors(self) -> impl Iterator<Item = Point> {
        Direction::ALL.into_iter().map(move |d| self.step(d))
    }

    pub fn manhattan(self, other: Point) -> i64 {
        (self.x - other.x).abs() + (self.y - other.y).abs()
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

impl Add for Point {
    type Output = Point;
    fn add(self, o: Point) -> Point {
        Point::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Point {
    type Output = Point;
    fn sub(self, o: Point) -> Point {
        Point::new(self.x - o.x, self.y - o.y)
    }
}

impl Neg for Point {
    type Output = Point;
    fn neg(self) -> Point {
        Point::new(-self.x, -self.y)
    }
}

impl Mul<i64> for Point {
    type Output = Point;
    fn mul(self, k: i64) -> Point {
        Point::new(self.x * k, self.y * k)
    }
}

impl From<(i64, i64)> for Point {
    fn from((x, y): (i64, i64)) -> Self {
        Point::new(x, y)
    }
}

/// Finite point sets are kept sorted so every traversal is deterministic.
pub type PointSet = BTreeSet<Point>;

pub fn translate(set: &PointSet, by: Point) -> PointSet {
    set.iter().map(|&p| p + by).collect()
}

/// One of the four lattice directions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Direction {
    N,
    E,
    S,
    W,
}

impl Direction {
    pub const ALL: [Direction; 4] = [Direction::N, Direction::E, Direction::S, Direction::W];

    /// Directions sorted by their unit vectors, `x` first: (-1,0), (0,-1), (0,1), (1,0).
    pub const BY_UNIT_VECTOR: [Direction; 4] = [Direction::W, Direction::S, Direction::N, Direction::E];

    pub fn unit(self) -> Point {
        match self {
            Direction::N => Point::new(0, 1),
            Direction::E => Point::new(1, 0),
            Direction::S => Point::new(0, -1),
            Direction::W => Point::new(-1, 0),
        }
    }

    pub fn inverse(self) -> Direction {
        match self {
            Direction::N => Direction::S,
            Direction::E => Direction::W,
            Direction::S => Direction::N,
            Direction::W => Direction::E,
        }
    }

    pub fn from_unit(v: Point) -> Option<Direction> {
        Direction::ALL.into_iter().find(|d| d.unit() == v)
    }

    pub fn is_vertical(self) -> bool {
        matches!(self, Direction::N | Direction::S)
    }

    pub fn name(self) -> &'static str {
        match self {
            Direction::N => "north",
            Direction::E => "east",
            Direction::S => "south",
            Direction::W => "west",
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Direction::N => "N",
            Direction::E => "E",
            Direction::S => "S",
            Direction::W => "W",
        };
        f.write_str(s)
    }
}

pub fn step(p: Point, d: Direction) -> Point {
    p.step(d)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GridError {
    #[error("points {0} and {1} are not adjacent")]
    NotAdjacent(Point, Point),
    #[error("point set is empty")]
    Empty,
    #[error("point {0} is not in the set")]
    NotInSet(Point),
}

/// An undirected unit edge, smaller endpoint first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct GridEdge {
    a: Point,
    b: Point,
}

impl GridEdge {
    pub fn new(p: Point, q: Point) -> Result<Self, GridError> {
        if p.manhattan(q) != 1 {
            return Err(GridError::NotAdjacent(p, q));
        }
        let (a, b) = if p <= q { (p, q) } else { (q, p) };
        Ok(GridEdge { a, b })
    }

    pub fn from_side(p: Point, d: Direction) -> Self {
        GridEdge::new(p, p.step(d)).expect("a point and its neighbor are adjacent")
    }

    pub fn a(&self) -> Point {
        self.a
    }

    pub fn b(&self) -> Point {
        self.b
    }

    pub fn is_horizontal(&self) -> bool {
        self.a.y == self.b.y
    }

    pub fn translate(&self, by: Point) -> GridEdge {
        GridEdge { a: self.a + by, b: self.b + by }
    }
}

/// Bounding box of a finite point set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundingExtents {
    pub l: i64,
    pub r: i64,
    pub b: i64,
    pub t: i64,
}

impl BoundingExtents {
    pub fn of<'a>(points: impl IntoIterator<Item = &'a Point>) -> Option<Self> {
        let mut it = points.into_iter();
        let first = it.next()?;
        let mut e = BoundingExtents { l: first.x, r: first.x, b: first.y, t: first.y };
        for p in it {
            e.l = e.l.min(p.x);
            e.r = e.r.max(p.x);
            e.b = e.b.min(p.y);
            e.t = e.t.max(p.y);
        }
        Some(e)
    }

    pub fn width(&self) -> i64 {
        self.r - self.l + 1
    }

    pub fn height(&self) -> i64 {
        self.t - self.b + 1
    }

    pub fn union(&self, o: &BoundingExtents) -> BoundingExtents {
        BoundingExtents { l: self.l.min(o.l), r: self.r.max(o.r), b: self.b.min(o.b), t: self.t.max(o.t) }
    }

    pub fn contains(&self, p: Point) -> bool {
        (self.l..=self.r).contains(&p.x) && (self.b..=self.t).contains(&p.y)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridGraph {
    pub vertices: Vec<Point>,
    pub edges: Vec<GridEdge>,
}

/// Edges join exactly the unit-distance pairs of `v`.
pub fn full_grid_graph(v: &PointSet) -> GridGraph {
    let mut edges = Vec::new();
    for &p in v {
        for d in [Direction::E, Direction::N] {
            let q = p.step(d);
            if v.contains(&q) {
                edges.push(GridEdge { a: p, b: q });
            }
        }
    }
    edges.sort();
    GridGraph { vertices: v.iter().copied().collect(), edges }
}

fn flood(v: &PointSet, start: Point, seen: &mut PointSet) -> PointSet {
    let mut comp = PointSet::new();
    let mut queue = VecDeque::from([start]);
    seen.insert(start);
    while let Some(p) = queue.pop_front() {
        comp.insert(p);
        for q in p.neighbors() {
            if v.contains(&q) && seen.insert(q) {
                queue.push_back(q);
            }
        }
    }
    comp
}

pub fn connected_components(v: &PointSet) -> Vec<PointSet> {
    let mut seen = PointSet::new();
    let mut out = Vec::new();
    // BTreeSet iteration visits each component first at its smallest member.
    for &p in v {
        if !seen.contains(&p) {
            out.push(flood(v, p, &mut seen));
        }
    }
    out
}

pub fn is_connected(v: &PointSet) -> Result<bool, GridError> {
    let first = *v.iter().next().ok_or(GridError::Empty)?;
    let mut seen = PointSet::new();
    Ok(flood(v, first, &mut seen).len() == v.len())
}

pub fn simple_path_exists(v: &PointSet, a: Point, b: Point) -> Result<bool, GridError> {
    for p in [a, b] {
        if !v.contains(&p) {
            return Err(GridError::NotInSet(p));
        }
    }
    let mut seen = PointSet::new();
    Ok(flood(v, a, &mut seen).contains(&b))
}

/// Edges whose removal disconnects their component.
pub fn bridge_edges(v: &PointSet) -> Vec<GridEdge> {
    let graph = full_grid_graph(v);
    let components = connected_components(v).len();
    graph
        .edges
        .iter()
        .copied()
        .filter(|e| count_components_without(v, *e) > components)
        .collect()
}

fn count_components_without(v: &PointSet, removed: GridEdge) -> usize {
    let mut seen = PointSet::new();
    let mut count = 0;
    for &start in v {
        if seen.contains(&start) {
            continue;
        }
        count += 1;
        let mut queue = VecDeque::from([start]);
        seen.insert(start);
        while let Some(p) = queue.pop_front() {
            for q in p.neighbors() {
                if !v.contains(&q) || seen.contains(&q) {
                    continue;
                }
                if GridEdge::new(p, q).map(|e| e == removed).unwrap_or(false) {
                    continue;
                }
                seen.insert(q);
                queue.push_back(q);
            }
        }
    }
    count
}

/// The side of `v` reachable from `from` without crossing `edge`.
pub fn side_of_edge(v: &PointSet, edge: GridEdge, from: Point) -> PointSet {
    let mut seen = PointSet::from([from]);
    let mut queue = VecDeque::from([from]);
    while let Some(p) = queue.pop_front() {
        for q in p.neighbors() {
            if v.contains(&q) && !seen.contains(&q) && GridEdge::new(p, q).ok() != Some(edge) {
                seen.insert(q);
                queue.push_back(q);
            }
        }
    }
    seen
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(pts: &[(i64, i64)]) -> PointSet {
        pts.iter().map(|&p| p.into()).collect()
    }

    #[test]
    fn step_examples() {
        assert_eq!(step(Point::new(0, 0), Direction::N), Point::new(0, 1));
        assert_eq!(step(Point::new(3, 2), Direction::E), Point::new(4, 2));
        let p = Point::new(-7, 11);
        assert_eq!(step(step(p, Direction::N), Direction::S), p);
    }

    #[test]
    fn unit_vector_order() {
        let units: Vec<Point> = Direction::BY_UNIT_VECTOR.iter().map(|d| d.unit()).collect();
        let mut sorted = units.clone();
        sorted.sort();
        assert_eq!(units, sorted);
    }

    #[test]
    fn grid_graph_examples() {
        let g = full_grid_graph(&set(&[(0, 0)]));
        assert_eq!((g.vertices.len(), g.edges.len()), (1, 0));
        let g = full_grid_graph(&set(&[(0, 0), (1, 0), (0, 1)]));
        assert_eq!((g.vertices.len(), g.edges.len()), (3, 2));
        let g = full_grid_graph(&set(&[(0, 0), (2, 0)]));
        assert_eq!((g.vertices.len(), g.edges.len()), (2, 0));
    }

    #[test]
    fn connectivity_examples() {
        assert!(is_connected(&set(&[(0, 0), (1, 0), (0, 1)])).unwrap());
        assert!(!is_connected(&set(&[(0, 0), (2, 0)])).unwrap());
        assert!(is_connected(&set(&[(5, 5)])).unwrap());
        assert_eq!(is_connected(&PointSet::new()), Err(GridError::Empty));
    }

    #[test]
    fn component_examples() {
        assert_eq!(connected_components(&set(&[(0, 0), (2, 0)])), vec![set(&[(0, 0)]), set(&[(2, 0)])]);
        assert_eq!(
            connected_components(&set(&[(0, 0), (1, 0), (3, 0), (3, 1)])),
            vec![set(&[(0, 0), (1, 0)]), set(&[(3, 0), (3, 1)])]
        );
        let l = set(&[(0, 0), (1, 0), (1, 1)]);
        assert_eq!(connected_components(&l), vec![l.clone()]);
    }

    #[test]
    fn path_examples() {
        let s = set(&[(0, 0), (1, 0)]);
        assert!(simple_path_exists(&s, Point::new(0, 0), Point::new(1, 0)).unwrap());
        let s = set(&[(0, 0), (2, 0)]);
        assert!(!simple_path_exists(&s, Point::new(0, 0), Point::new(2, 0)).unwrap());
        assert!(simple_path_exists(&s, Point::new(2, 0), Point::new(2, 0)).unwrap());
        assert_eq!(
            simple_path_exists(&s, Point::new(0, 0), Point::new(9, 9)),
            Err(GridError::NotInSet(Point::new(9, 9)))
        );
    }

    #[test]
    fn edge_is_canonical() {
        let e = GridEdge::new(Point::new(1, 0), Point::new(0, 0)).unwrap();
        assert_eq!(e.a(), Point::new(0, 0));
        assert_eq!(e, GridEdge::new(Point::new(0, 0), Point::new(1, 0)).unwrap());
        assert!(GridEdge::new(Point::new(0, 0), Point::new(1, 1)).is_err());
    }

    #[test]
    fn extents() {
        let e = BoundingExtents::of(&set(&[(2, 3), (-1, 5), (4, 0)])).unwrap();
        assert_eq!(e, BoundingExtents { l: -1, r: 4, b: 0, t: 5 });
        assert!(BoundingExtents::of(&PointSet::new()).is_none());
    }

    #[test]
    fn bridges_of_dumbbell() {
        // two 2x2 blocks joined by a single horizontal edge
        let s = set(&[(0, 0), (1, 0), (0, 1), (1, 1), (2, 0), (3, 0), (2, 1), (3, 1)]);
        let cut = bridge_edges(&s);
        assert_eq!(cut.len(), 0);
        let s = set(&[(0, 0), (1, 0), (0, 1), (1, 1), (2, 1), (3, 1), (3, 0), (4, 0), (4, 1)]);
        let cut = bridge_edges(&s);
        assert_eq!(cut, vec![GridEdge::new(Point::new(1, 1), Point::new(2, 1)).unwrap(),
                             GridEdge::new(Point::new(2, 1), Point::new(3, 1)).unwrap()]);
    }
}
