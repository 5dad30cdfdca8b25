//! Small tile systems with known behavior: east-growing lines and one-tile-per-position
//! systems built from a fractal stage.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::atam::{replay, AssemblySequence, Glue, Halt, Step, TileId, TileSystem, TileSystemError, TileType};
use crate::fractal::{scale, stage, Generator, StageError};
use crate::grid::{Direction, GridEdge, Point};
use crate::windows::{WindowAnchor, WindowError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SystemsError {
    #[error(transparent)]
    Stage(#[from] StageError),
    #[error(transparent)]
    Window(#[from] WindowError),
    #[error(transparent)]
    TileSystem(#[from] TileSystemError),
    #[error("bond line edge {0:?} leaves the target shape")]
    LineOutsideShape(GridEdge),
}

/// One tile `A` with glue `a` of strength `tau` on its east and west sides, seeded at the origin.
pub fn periodic_line(tau: u32) -> TileSystem {
    let glue = Glue::new("a", tau);
    let a = TileType::new("A").with(Direction::E, glue.clone()).with(Direction::W, glue);
    TileSystem::new(vec![a], &[(Point::ORIGIN, "A")], tau).expect("the line system is valid")
}

/// Two line tiles with the same glues, and a run of `{0..9}×{0}` with `B` at x = 6, 7.
pub fn two_tile_line() -> (TileSystem, AssemblySequence) {
    let glue = Glue::new("a", 1);
    let tile = |name: &str| TileType::new(name).with(Direction::E, glue.clone()).with(Direction::W, glue.clone());
    let sys = TileSystem::new(vec![tile("A"), tile("B")], &[(Point::ORIGIN, "A")], 1).expect("valid");
    let (a, b) = (sys.tiles().id("A").expect("A"), sys.tiles().id("B").expect("B"));
    let steps: Vec<Step> = (1..=9)
        .map(|x| Step { position: Point::new(x, 0), tile: if (6..=7).contains(&x) { b } else { a } })
        .collect();
    let result = replay(&sys, &steps).expect("the line replays");
    (sys, AssemblySequence { steps, result, halt: Halt::Terminal })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GlueMode<'a> {
    /// Every edge of the shape gets its own glue.
    Unique,
    /// Like `Unique`, but the `t`-th edge of the anchor's bond line carries `pump_t` at every stage.
    Shared(&'a WindowAnchor),
}

/// A temperature-1 system with one tile type per position of a scaled stage.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CraftedSystem {
    pub system: TileSystem,
    /// The tile each position should receive.
    pub intended: BTreeMap<Point, TileId>,
}

fn edge_label(edge: GridEdge) -> String {
    let a = edge.a();
    let kind = if edge.is_horizontal() { 'h' } else { 'v' };
    format!("{kind}{}_{}", a.x, a.y)
}

/// Builds the tile `t{x}_{y}` for every point of `scale(stage(gen, s), c)`, seeded at the origin.
pub fn position_system(
    gen: &Generator,
    c: i64,
    s: u32,
    mode: GlueMode<'_>,
) -> Result<CraftedSystem, SystemsError> {
    let shape = scale(&stage(gen, s)?, c);
    let mut labels: BTreeMap<GridEdge, String> = BTreeMap::new();
    for &p in &shape {
        for d in [Direction::E, Direction::N] {
            let q = p.step(d);
            if shape.contains(&q) {
                let edge = GridEdge::from_side(p, d);
                labels.insert(edge, edge_label(edge));
            }
        }
    }
    if let GlueMode::Shared(anchor) = mode {
        for stage_index in 2..=s {
            for (t, cut) in anchor.bond_line(c, gen.side(), stage_index)?.into_iter().enumerate() {
                let edge = GridEdge::from_side(cut.inside, cut.outward);
                let label = labels.get_mut(&edge).ok_or(SystemsError::LineOutsideShape(edge))?;
                *label = format!("pump_{t}");
            }
        }
    }
    let tiles: Vec<TileType> = shape
        .iter()
        .map(|&p| {
            Direction::ALL.into_iter().fold(TileType::new(format!("t{}_{}", p.x, p.y)), |tile, d| {
                match labels.get(&GridEdge::from_side(p, d)) {
                    Some(label) => tile.with(d, Glue::new(label.clone(), 1)),
                    None => tile,
                }
            })
        })
        .collect();
    let system = TileSystem::new(tiles, &[(Point::ORIGIN, "t0_0")], 1)?;
    let intended = shape
        .iter()
        .map(|&p| (p, system.tiles().id(&format!("t{}_{}", p.x, p.y)).expect("every position has a tile")))
        .collect();
    Ok(CraftedSystem { system, intended })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::atam::{run, run_guided, Policy, Region, RunLimits};
    use crate::fractal::corpus;
    use crate::windows::select_anchor;

    #[test]
    fn line_grows_east() {
        let sys = periodic_line(2);
        let seq = run(&sys, Policy::Lexicographic, &RunLimits::within(Region::Rect { x0: 0, y0: 0, x1: 9, y1: 0 }));
        assert_eq!(seq.result.len(), 10);
        let (_, seq) = two_tile_line();
        assert_eq!(seq.result.len(), 10);
    }

    #[test]
    fn crafted_systems_build_the_stage() {
        let gen = corpus::sierpinski();
        for c in 1..=2 {
            let anchor = select_anchor(&gen, c).unwrap();
            let shape = scale(&stage(&gen, 3).unwrap(), c);
            for mode in [GlueMode::Unique, GlueMode::Shared(&anchor)] {
                let crafted = position_system(&gen, c, 3, mode).unwrap();
                assert_eq!(crafted.system.tiles().len(), shape.len());
                let side = c * 8 - 1;
                let limits = RunLimits::within(Region::Rect { x0: 0, y0: 0, x1: side, y1: side });
                let seq = run_guided(&crafted.system, &crafted.intended, &limits);
                assert_eq!(seq.result.domain(), shape);
            }
            let unique = position_system(&gen, c, 3, GlueMode::Unique).unwrap();
            let seq = run(&unique.system, Policy::Lexicographic, &RunLimits::steps(10_000));
            assert_eq!(seq.result.domain(), shape);
            assert_eq!(seq.halt, Halt::Terminal);
        }
    }
}
