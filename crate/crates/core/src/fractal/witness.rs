//! Free-point witnesses for components cut off from a connected bridge.

use serde::{Deserialize, Serialize};

use super::bridges::{bridges, BridgeKind};
use super::Generator;
use crate::grid::{connected_components, BoundingExtents, Direction, Point, PointSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Witness {
    Found(Point),
    NotApplicable,
}

impl Witness {
    pub fn point(self) -> Option<Point> {
        match self {
            Witness::Found(p) => Some(p),
            Witness::NotApplicable => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FreePointWitnesses {
    /// North-free point outside the component and below the top row.
    pub north: Witness,
    /// East-free point of the top row, outside the component and the right column.
    pub north_east: Witness,
    /// East-free point outside the component and the right column.
    pub east: Witness,
}

/// Component of `pts` holding a path between the ends of the first connected bridge of `kind`.
fn bridge_component(pts: &PointSet, kind: BridgeKind) -> Option<PointSet> {
    let bridge = bridges(pts).into_iter().find(|b| b.kind == kind && b.connected)?;
    connected_components(pts).into_iter().find(|c| c.contains(&bridge.endpoints.0))
}

/// Runs each witness construction on `component`; hypotheses that fail give `NotApplicable`.
pub fn find_free_point_witnesses(gen: &Generator, component: &PointSet) -> FreePointWitnesses {
    let pts = gen.points();
    let is_component = connected_components(pts).iter().any(|c| c == component);
    let (Some(ext), Some(cext), true) = (BoundingExtents::of(pts), BoundingExtents::of(component), is_component)
    else {
        return FreePointWitnesses {
            north: Witness::NotApplicable,
            north_east: Witness::NotApplicable,
            east: Witness::NotApplicable,
        };
    };
    let touches_top = cext.t == ext.t;
    let touches_bottom = cext.b == ext.b;
    let touches_left = cext.l == ext.l;
    let touches_right = cext.r == ext.r;

    let north = (|| {
        if !touches_top || touches_left {
            return None;
        }
        let path = bridge_component(pts, BridgeKind::Horizontal)?;
        let low = component.iter().filter(|p| p.y == cext.b).min()?;
        let below = path.iter().filter(|p| p.x == low.x && p.y < cext.b).max_by_key(|p| p.y)?;
        (!pts.contains(&below.step(Direction::N))).then_some(*below)
    })();

    let north_east = (|| {
        if !touches_right || !touches_top || touches_bottom {
            return None;
        }
        let path = bridge_component(pts, BridgeKind::Vertical)?;
        let top = path.iter().filter(|p| p.y == ext.t).max_by_key(|p| p.x)?;
        (!pts.contains(&top.step(Direction::E)) && top.x != ext.r).then_some(*top)
    })();

    let east = (|| {
        if !touches_right || touches_bottom {
            return None;
        }
        let path = bridge_component(pts, BridgeKind::Vertical)?;
        let left = component.iter().filter(|p| p.x == cext.l).min_by_key(|p| p.y)?;
        let before = path.iter().filter(|p| p.y == left.y && p.x < cext.l).max_by_key(|p| p.x)?;
        (!pts.contains(&before.step(Direction::E))).then_some(*before)
    })();

    let wrap = |w: Option<Point>| w.map_or(Witness::NotApplicable, Witness::Found);
    FreePointWitnesses { north: wrap(north), north_east: wrap(north_east), east: wrap(east) }
}
