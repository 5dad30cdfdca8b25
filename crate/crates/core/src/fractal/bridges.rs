//! Bridges and piers.

use serde::{Deserialize, Serialize};

use super::Generator;
use crate::grid::{simple_path_exists, BoundingExtents, Direction, Point, PointSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BridgeKind {
    Horizontal,
    Vertical,
}

/// The extreme pair of a row (horizontal) or column (vertical) spanning the whole set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bridge {
    pub kind: BridgeKind,
    /// `y` of a horizontal bridge, `x` of a vertical one.
    pub index: i64,
    pub endpoints: (Point, Point),
    pub connected: bool,
}

impl Bridge {
    pub fn contains(&self, p: Point) -> bool {
        self.endpoints.0 == p || self.endpoints.1 == p
    }
}

/// Horizontal bridges by row, then vertical bridges by column.
pub fn bridges(s: &PointSet) -> Vec<Bridge> {
    let Some(ext) = BoundingExtents::of(s) else {
        return Vec::new();
    };
    let mut out = Vec::new();
    for y in ext.b..=ext.t {
        let (a, b) = (Point::new(ext.l, y), Point::new(ext.r, y));
        if s.contains(&a) && s.contains(&b) {
            let connected = simple_path_exists(s, a, b).unwrap_or(false);
            out.push(Bridge { kind: BridgeKind::Horizontal, index: y, endpoints: (a, b), connected });
        }
    }
    for x in ext.l..=ext.r {
        let (a, b) = (Point::new(x, ext.b), Point::new(x, ext.t));
        if s.contains(&a) && s.contains(&b) {
            let connected = simple_path_exists(s, a, b).unwrap_or(false);
            out.push(Bridge { kind: BridgeKind::Vertical, index: x, endpoints: (a, b), connected });
        }
    }
    out
}

/// Number of horizontal and vertical bridges, without connectivity work.
pub fn bridge_counts(s: &PointSet) -> (usize, usize) {
    let Some(ext) = BoundingExtents::of(s) else {
        return (0, 0);
    };
    let h = (ext.b..=ext.t)
        .filter(|&y| s.contains(&Point::new(ext.l, y)) && s.contains(&Point::new(ext.r, y)))
        .count();
    let v = (ext.l..=ext.r)
        .filter(|&x| s.contains(&Point::new(x, ext.b)) && s.contains(&Point::new(x, ext.t)))
        .count();
    (h, v)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PierKind {
    Real,
    ParallelSingleBridge,
    OrthogonalSingleBridge,
    DoubleBridge,
}

/// A point with exactly one neighbor in the set. It points away from that neighbor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Pier {
    pub location: Point,
    pub pointing: Direction,
    pub kind: PierKind,
}

impl Pier {
    pub fn neighbor(&self) -> Point {
        self.location.step(self.pointing.inverse())
    }
}

pub fn piers(gen: &Generator) -> Vec<Pier> {
    piers_of(gen.points())
}

pub fn piers_of(s: &PointSet) -> Vec<Pier> {
    let all_bridges = bridges(s);
    let mut out = Vec::new();
    for &p in s {
        let occupied: Vec<Direction> = Direction::ALL.into_iter().filter(|&d| s.contains(&p.step(d))).collect();
        let [toward] = occupied[..] else {
            continue;
        };
        let pointing = toward.inverse();
        let member_of: Vec<&Bridge> = all_bridges.iter().filter(|b| b.contains(p)).collect();
        let kind = match member_of[..] {
            [] => PierKind::Real,
            [b] => {
                let along = matches!(b.kind, BridgeKind::Vertical) == pointing.is_vertical();
                if along {
                    PierKind::ParallelSingleBridge
                } else {
                    PierKind::OrthogonalSingleBridge
                }
            }
            _ => PierKind::DoubleBridge,
        };
        out.push(Pier { location: p, pointing, kind });
    }
    out
}
