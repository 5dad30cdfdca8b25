//! Window movies: the glues an assembly sequence places on a window's cut, in order.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::ClosedWindow;
use crate::atam::{Assembly, AssemblySequence, Glue, TileSet, TileSystem};
use crate::grid::{Direction, Point};

/// One glue showing up on the cut: the tile at `position` exposes `glue` on `side`.
///
/// `step` is 0 for seed tiles and `k + 1` for the `k`-th attachment.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct MovieEvent {
    pub step: usize,
    pub position: Point,
    pub side: Direction,
    pub glue: Glue,
}

impl MovieEvent {
    /// The endpoint of the crossing edge that lies inside `w`.
    pub fn inside_endpoint(&self, w: &ClosedWindow) -> Point {
        if w.contains(self.position) {
            self.position
        } else {
            self.position.step(self.side)
        }
    }

    pub fn shifted(&self, by: Point) -> MovieEvent {
        MovieEvent { position: self.position + by, ..self.clone() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct WindowMovie {
    pub events: Vec<MovieEvent>,
}

/// The events of a movie whose glues end up in a positive-strength bond.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct BondFormingSubmovie {
    pub events: Vec<MovieEvent>,
}

/// Tab-separated lines: step, inside x, inside y, dx, dy, label, strength.
fn dump_events(events: &[MovieEvent], w: &ClosedWindow) -> String {
    let mut out = String::new();
    for e in events {
        let q = e.inside_endpoint(w);
        let u = e.side.unit();
        let _ = writeln!(out, "{}\t{}\t{}\t{}\t{}\t{}\t{}", e.step, q.x, q.y, u.x, u.y, e.glue.label, e.glue.strength);
    }
    out
}

impl WindowMovie {
    pub fn len(&self) -> usize {
        self.events.len()
    }

    pub fn is_empty(&self) -> bool {
        self.events.is_empty()
    }

    pub fn dump(&self, w: &ClosedWindow) -> String {
        dump_events(&self.events, w)
    }
}

impl BondFormingSubmovie {
    pub fn len(&self) -> usize {
        self.events.len()
    }

    pub fn is_empty(&self) -> bool {
        self.events.is_empty()
    }

    pub fn dump(&self, w: &ClosedWindow) -> String {
        dump_events(&self.events, w)
    }

    pub fn shifted(&self, by: Point) -> BondFormingSubmovie {
        BondFormingSubmovie { events: self.events.iter().map(|e| e.shifted(by)).collect() }
    }

    /// Positions relative to the first event and no step indices: equal keys mean equal up to translation.
    pub fn translation_key(&self) -> Vec<(Point, Direction, Glue)> {
        let base = self.events.first().map_or(Point::ORIGIN, |e| e.position);
        self.events.iter().map(|e| (e.position - base, e.side, e.glue.clone())).collect()
    }
}

fn push_events(out: &mut Vec<MovieEvent>, sys: &TileSystem, w: &ClosedWindow, step: usize, p: Point, tile: usize) {
    let inside = w.contains(p);
    let t = sys.tiles().tile(tile);
    for d in Direction::BY_UNIT_VECTOR {
        if w.contains(p.step(d)) != inside {
            out.push(MovieEvent { step, position: p, side: d, glue: t.glue(d).clone() });
        }
    }
}

/// Every side of every placed tile that lies on the cut of `w`, null glues included.
///
/// Seed tiles come first in position order; sides of one tile are ordered by unit vector.
pub fn extract_movie(sys: &TileSystem, seq: &AssemblySequence, w: &ClosedWindow) -> WindowMovie {
    let mut events = Vec::new();
    for (p, t) in sys.seed().iter() {
        push_events(&mut events, sys, w, 0, p, t);
    }
    for (k, s) in seq.steps.iter().enumerate() {
        push_events(&mut events, sys, w, k + 1, s.position, s.tile);
    }
    WindowMovie { events }
}

/// Keeps the events whose glue binds the tile found across the cut in `last`.
pub fn bond_forming(movie: &WindowMovie, last: &Assembly, tiles: &TileSet) -> BondFormingSubmovie {
    let events = movie
        .events
        .iter()
        .filter(|e| {
            last.get(e.position.step(e.side))
                .is_some_and(|u| e.glue.bond(tiles.tile(u).glue(e.side.inverse())) > 0)
        })
        .cloned()
        .collect();
    BondFormingSubmovie { events }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MovieShift {
    By(Point),
    /// Both submovies are empty, so any shift matches.
    Indeterminate,
}

/// The shift taking `m1` onto `m2` event for event, if there is one.
pub fn movies_equal_up_to(m1: &BondFormingSubmovie, m2: &BondFormingSubmovie) -> Option<MovieShift> {
    match (m1.events.first(), m2.events.first()) {
        (None, None) => Some(MovieShift::Indeterminate),
        (Some(a), Some(b)) => {
            let v = b.position - a.position;
            let same = m1.len() == m2.len()
                && m1
                    .events
                    .iter()
                    .zip(&m2.events)
                    .all(|(x, y)| x.position + v == y.position && x.side == y.side && x.glue == y.glue);
            same.then_some(MovieShift::By(v))
        }
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::atam::{run, Policy, Region, RunLimits, TileType};
    use proptest::prelude::*;

    fn line(tau: u32) -> TileSystem {
        let a = TileType::new("A").with(Direction::E, Glue::new("a", tau)).with(Direction::W, Glue::new("a", tau));
        TileSystem::new(vec![a], &[(Point::ORIGIN, "A")], tau).unwrap()
    }

    fn line_run(sys: &TileSystem) -> AssemblySequence {
        run(sys, Policy::Lexicographic, &RunLimits::within(Region::Rect { x0: 0, y0: 0, x1: 9, y1: 0 }))
    }

    #[test]
    fn untouched_window_gives_empty_movie() {
        let sys = line(1);
        let w = ClosedWindow::square(Point::new(3, 5), 2).unwrap();
        assert!(extract_movie(&sys, &line_run(&sys), &w).is_empty());
    }

    #[test]
    fn line_crosses_west_then_east() {
        let sys = line(1);
        let seq = line_run(&sys);
        let w = ClosedWindow::rectangle(2, 0, 3, 0).unwrap();
        let movie = extract_movie(&sys, &seq, &w);
        let sides: Vec<(usize, Point, Direction)> = movie.events.iter().map(|e| (e.step, e.position, e.side)).collect();
        assert_eq!(
            sides,
            vec![
                (1, Point::new(1, 0), Direction::E),
                (2, Point::new(2, 0), Direction::W),
                (2, Point::new(2, 0), Direction::S),
                (2, Point::new(2, 0), Direction::N),
                (3, Point::new(3, 0), Direction::S),
                (3, Point::new(3, 0), Direction::N),
                (3, Point::new(3, 0), Direction::E),
                (4, Point::new(4, 0), Direction::W),
            ]
        );
        let bonds = bond_forming(&movie, &seq.result, sys.tiles());
        assert_eq!(bonds.len(), 4);
        assert_eq!(
            bonds.dump(&w),
            "1\t2\t0\t1\t0\ta\t1\n2\t2\t0\t-1\t0\ta\t1\n3\t3\t0\t1\t0\ta\t1\n4\t3\t0\t-1\t0\ta\t1\n"
        );
    }

    #[test]
    fn single_cell_window_orders_four_sides() {
        let sys = line(1);
        let seq = line_run(&sys);
        let w = ClosedWindow::square(Point::new(5, 0), 1).unwrap();
        let movie = extract_movie(&sys, &seq, &w);
        let at_five: Vec<Point> = movie.events.iter().filter(|e| e.position == Point::new(5, 0)).map(|e| e.side.unit()).collect();
        assert_eq!(at_five, vec![Point::new(-1, 0), Point::new(0, -1), Point::new(0, 1), Point::new(1, 0)]);
        assert!(movie.events.windows(2).all(|p| p[0].step <= p[1].step));
    }

    #[test]
    fn unmatched_glue_is_not_bond_forming() {
        // B arrives east of A through a strength-2 glue above, but their shared sides disagree
        let a = TileType::new("A").with(Direction::E, Glue::new("x", 1)).with(Direction::N, Glue::new("up", 2));
        let top = TileType::new("T").with(Direction::S, Glue::new("up", 2)).with(Direction::E, Glue::new("r", 2));
        let corner = TileType::new("C").with(Direction::W, Glue::new("r", 2)).with(Direction::S, Glue::new("d", 2));
        let b = TileType::new("B").with(Direction::N, Glue::new("d", 2)).with(Direction::W, Glue::new("y", 1));
        let sys = TileSystem::new(vec![a, top, corner, b], &[(Point::ORIGIN, "A")], 2).unwrap();
        let seq = run(&sys, Policy::Lexicographic, &RunLimits::steps(10));
        assert_eq!(seq.result.len(), 4);
        let w = ClosedWindow::square(Point::ORIGIN, 1).unwrap();
        let movie = extract_movie(&sys, &seq, &w);
        let bonds = bond_forming(&movie, &seq.result, sys.tiles());
        assert!(movie.events.iter().any(|e| e.glue == Glue::new("x", 1)));
        assert_eq!(bonds.events.iter().map(|e| e.glue.label.as_str()).collect::<Vec<_>>(), vec!["up", "up"]);
        let far = ClosedWindow::square(Point::new(7, 7), 1).unwrap();
        assert!(bond_forming(&extract_movie(&sys, &seq, &far), &seq.result, sys.tiles()).is_empty());
    }

    #[test]
    fn line_bonds_are_the_whole_movie_on_crossings() {
        let sys = line(1);
        let seq = line_run(&sys);
        let w = ClosedWindow::rectangle(2, -1, 3, 1).unwrap();
        let movie = extract_movie(&sys, &seq, &w);
        let bonds = bond_forming(&movie, &seq.result, sys.tiles());
        assert_eq!(bonds.events, movie.events);
        assert_eq!(bond_forming(&WindowMovie { events: bonds.events.clone() }, &seq.result, sys.tiles()), bonds);
    }

    #[test]
    fn shift_comparisons() {
        let e = |x, label: &str| MovieEvent { step: 1, position: Point::new(x, 0), side: Direction::E, glue: Glue::new(label, 1) };
        let m = BondFormingSubmovie { events: vec![e(1, "a"), e(2, "b")] };
        assert_eq!(movies_equal_up_to(&m, &m.shifted(Point::new(4, 0))), Some(MovieShift::By(Point::new(4, 0))));
        let relabeled = BondFormingSubmovie { events: vec![e(1, "a"), e(2, "c")] };
        assert_eq!(movies_equal_up_to(&m, &relabeled), None);
        let shorter = BondFormingSubmovie { events: vec![e(1, "a")] };
        assert_eq!(movies_equal_up_to(&m, &shorter), None);
        assert_eq!(movies_equal_up_to(&m, &BondFormingSubmovie::default()), None);
        let empty = BondFormingSubmovie::default();
        assert_eq!(movies_equal_up_to(&empty, &empty), Some(MovieShift::Indeterminate));
        assert_eq!(m.translation_key(), m.shifted(Point::new(-3, 8)).translation_key());
    }

    fn arb_event() -> impl Strategy<Value = MovieEvent> {
        (0usize..20, -20i64..20, -20i64..20, 0usize..4, "[a-c]", 1u32..3).prop_map(|(step, x, y, d, label, s)| {
            MovieEvent { step, position: Point::new(x, y), side: Direction::ALL[d], glue: Glue::new(label, s) }
        })
    }

    proptest! {
        #[test]
        fn shifted_copies_match(events in proptest::collection::vec(arb_event(), 1..12), vx in -50i64..50, vy in -50i64..50) {
            let m = BondFormingSubmovie { events };
            let v = Point::new(vx, vy);
            prop_assert_eq!(movies_equal_up_to(&m, &m.shifted(v)), Some(MovieShift::By(v)));
        }
    }
}
