//! The eight symmetries of a g x g square.

use crate::grid::{Direction, Point};

/// Transpose first (if `swap`), then mirror each axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Symmetry {
    pub swap: bool,
    pub flip_x: bool,
    pub flip_y: bool,
}

impl Symmetry {
    pub const IDENTITY: Symmetry = Symmetry { swap: false, flip_x: false, flip_y: false };

    pub fn all() -> impl Iterator<Item = Symmetry> {
        (0..8u8).map(|k| Symmetry { swap: k & 4 != 0, flip_x: k & 2 != 0, flip_y: k & 1 != 0 })
    }

    pub fn apply(self, p: Point, g: i64) -> Point {
        let (x, y) = if self.swap { (p.y, p.x) } else { (p.x, p.y) };
        Point::new(if self.flip_x { g - 1 - x } else { x }, if self.flip_y { g - 1 - y } else { y })
    }

    pub fn apply_direction(self, d: Direction) -> Direction {
        let u = d.unit();
        let (x, y) = if self.swap { (u.y, u.x) } else { (u.x, u.y) };
        let v = Point::new(if self.flip_x { -x } else { x }, if self.flip_y { -y } else { y });
        Direction::from_unit(v).expect("symmetries map unit vectors to unit vectors")
    }

    pub fn inverse(self) -> Symmetry {
        Symmetry::all()
            .find(|t| {
                [Point::new(0, 1), Point::new(1, 0), Point::new(2, 5)]
                    .into_iter()
                    .all(|p| t.apply(self.apply(p, 9), 9) == p)
            })
            .expect("the dihedral group is closed under inverses")
    }

    /// Whether horizontal features (rows) become vertical ones (columns).
    pub fn swaps_axes(self) -> bool {
        self.swap
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverses_undo() {
        for t in Symmetry::all() {
            let inv = t.inverse();
            for x in 0..4 {
                for y in 0..4 {
                    let p = Point::new(x, y);
                    assert_eq!(inv.apply(t.apply(p, 4), 4), p);
                }
            }
            for d in Direction::ALL {
                assert_eq!(inv.apply_direction(t.apply_direction(d)), d);
            }
        }
    }

    #[test]
    fn directions_follow_points() {
        for t in Symmetry::all() {
            for d in Direction::ALL {
                let p = Point::new(2, 2);
                assert_eq!(t.apply(p.step(d), 5), t.apply(p, 5).step(t.apply_direction(d)));
            }
        }
    }
}
