//! Classification predicates and the structural witnesses behind them.

use serde::{Deserialize, Serialize};

use super::bridges::{bridge_counts, bridges, piers, Bridge, BridgeKind, Pier};
use super::{stage, Generator, StageError};
use crate::grid::{bridge_edges, connected_components, full_grid_graph, is_connected, side_of_edge, Direction, Point, PointSet};

/// A connected part of the generator joined to the rest by one edge.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PierLike {
    pub points: Vec<Point>,
    /// The member of `points` the single edge touches.
    pub attachment: Point,
    /// Direction from the outside endpoint of the edge toward `attachment`.
    pub pointing: Direction,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FractalClass {
    pub g: i64,
    pub connected: bool,
    pub acyclic: bool,
    pub nhb: usize,
    pub nvb: usize,
    pub bridges: Vec<Bridge>,
    pub piers: Vec<Pier>,
    pub is_pier_fractal: bool,
    pub is_tree_fractal: bool,
    pub is_pinch_point_fractal: bool,
    pub satisfies_cor_multiple_bridges: bool,
    pub satisfies_cor_pier_like: bool,
    pub satisfies_cor_equiv_columns: bool,
    pub equivalent_columns: Vec<(i64, i64)>,
    pub equivalent_vertical_cuts: Vec<(i64, i64)>,
    pub equivalent_rows: Vec<(i64, i64)>,
    pub equivalent_horizontal_cuts: Vec<(i64, i64)>,
    pub pier_like: Vec<PierLike>,
}

/// Forest test: edges = vertices - components.
pub fn is_acyclic(s: &PointSet) -> bool {
    let graph = full_grid_graph(s);
    graph.edges.len() + connected_components(s).len() == s.len()
}

pub fn classify(gen: &Generator) -> FractalClass {
    let g = gen.side();
    let pts = gen.points();
    let connected = is_connected(pts).unwrap_or(false);
    let acyclic = is_acyclic(pts);
    let all_bridges = bridges(pts);
    let nhb = all_bridges.iter().filter(|b| b.kind == BridgeKind::Horizontal).count();
    let nvb = all_bridges.len() - nhb;
    let pier_list = piers(gen);
    let single = nhb == 1 && nvb == 1;

    let corner = |x, y| gen.contains(Point::new(x, y));
    let pinch = corner(0, 0)
        && corner(0, g - 1)
        && corner(g - 1, 0)
        && (1..g).all(|x| !corner(x, g - 1))
        && (1..g).all(|y| !corner(g - 1, y))
        && connected;

    let vertical_pier = pier_list.iter().any(|p| p.pointing.is_vertical());
    let horizontal_pier = pier_list.iter().any(|p| !p.pointing.is_vertical());
    let multiple = connected && ((nvb == 1 && vertical_pier) || (nhb == 1 && horizontal_pier));

    let pier_like = pier_like_subconfigurations(gen);
    let vertical_like = pier_like.iter().any(|p| p.pointing.is_vertical());
    let horizontal_like = pier_like.iter().any(|p| !p.pointing.is_vertical());
    let like = connected && ((nvb == 1 && vertical_like) || (nhb == 1 && horizontal_like));

    let cols = equivalent_columns(gen);
    let vcuts = equivalent_vertical_cuts(gen);
    let rows = equivalent_rows(gen);
    let hcuts = equivalent_horizontal_cuts(gen);
    let v_bridge_cols: Vec<i64> = bridge_indices(&all_bridges, BridgeKind::Vertical);
    let h_bridge_rows: Vec<i64> = bridge_indices(&all_bridges, BridgeKind::Horizontal);
    let equiv = connected
        && ((!cols.is_empty() && vcuts.iter().any(|&(a, b)| same_side(a, b, &v_bridge_cols)))
            || (!rows.is_empty() && hcuts.iter().any(|&(a, b)| same_side(a, b, &h_bridge_rows))));

    FractalClass {
        g,
        connected,
        acyclic,
        nhb,
        nvb,
        bridges: all_bridges,
        is_pier_fractal: connected && single && !pier_list.is_empty(),
        is_tree_fractal: connected && acyclic && single,
        is_pinch_point_fractal: pinch,
        piers: pier_list,
        satisfies_cor_multiple_bridges: multiple,
        satisfies_cor_pier_like: like,
        satisfies_cor_equiv_columns: equiv,
        equivalent_columns: cols,
        equivalent_vertical_cuts: vcuts,
        equivalent_rows: rows,
        equivalent_horizontal_cuts: hcuts,
        pier_like,
    }
}

fn bridge_indices(all: &[Bridge], kind: BridgeKind) -> Vec<i64> {
    all.iter().filter(|b| b.kind == kind).map(|b| b.index).collect()
}

/// Cut `k` lies between lines `k` and `k+1`; it is east of bridge line `x` when `k >= x`.
pub(crate) fn same_side(k1: i64, k2: i64, bridge_lines: &[i64]) -> bool {
    let east = |k: i64| bridge_lines.iter().all(|&x| k >= x);
    let west = |k: i64| bridge_lines.iter().all(|&x| k < x);
    (east(k1) && east(k2)) || (west(k1) && west(k2))
}

/// `P(s)`: stage `s` is a tree with exactly one bridge of each orientation.
pub fn stage_tree_predicate(gen: &Generator, s: u32) -> Result<bool, StageError> {
    let xs = stage(gen, s)?;
    let connected = is_connected(&xs).unwrap_or(false);
    Ok(connected && full_grid_graph(&xs).edges.len() + 1 == xs.len() && bridge_counts(&xs) == (1, 1))
}

fn equal_pairs(lines: &[Vec<i64>]) -> Vec<(i64, i64)> {
    let mut out = Vec::new();
    for (i, a) in lines.iter().enumerate() {
        for (j, b) in lines.iter().enumerate().skip(i + 1) {
            if !a.is_empty() && a == b {
                out.push((i as i64, j as i64));
            }
        }
    }
    out
}

/// Column y-sets, indexed by x.
fn column_sets(gen: &Generator) -> Vec<Vec<i64>> {
    (0..gen.side()).map(|x| gen.column(x).into_iter().collect()).collect()
}

fn row_sets(gen: &Generator) -> Vec<Vec<i64>> {
    (0..gen.side()).map(|y| gen.row(y).into_iter().collect()).collect()
}

/// Rows `y` joining column `k` to column `k+1`.
pub(crate) fn vertical_cut(gen: &Generator, k: i64) -> Vec<i64> {
    (0..gen.side())
        .filter(|&y| gen.contains(Point::new(k, y)) && gen.contains(Point::new(k + 1, y)))
        .collect()
}

pub(crate) fn horizontal_cut(gen: &Generator, k: i64) -> Vec<i64> {
    (0..gen.side())
        .filter(|&x| gen.contains(Point::new(x, k)) && gen.contains(Point::new(x, k + 1)))
        .collect()
}

/// Pairs of columns with identical y-sets.
pub fn equivalent_columns(gen: &Generator) -> Vec<(i64, i64)> {
    equal_pairs(&column_sets(gen))
}

/// Pairs of non-empty vertical cuts with identical y-sets; a cut is named by its left column.
pub fn equivalent_vertical_cuts(gen: &Generator) -> Vec<(i64, i64)> {
    let cuts: Vec<Vec<i64>> = (0..gen.side() - 1).map(|k| vertical_cut(gen, k)).collect();
    equal_pairs(&cuts)
}

pub fn equivalent_rows(gen: &Generator) -> Vec<(i64, i64)> {
    equal_pairs(&row_sets(gen))
}

pub fn equivalent_horizontal_cuts(gen: &Generator) -> Vec<(i64, i64)> {
    let cuts: Vec<Vec<i64>> = (0..gen.side() - 1).map(|k| horizontal_cut(gen, k)).collect();
    equal_pairs(&cuts)
}

/// Every connected subset with exactly one edge to the rest of the generator.
///
/// Such a subset is one side of an edge whose removal disconnects its component,
/// so both sides of every such edge are reported, ordered by edge then by side.
pub fn pier_like_subconfigurations(gen: &Generator) -> Vec<PierLike> {
    let pts = gen.points();
    let mut out = Vec::new();
    for edge in bridge_edges(pts) {
        for (attachment, outside) in [(edge.a(), edge.b()), (edge.b(), edge.a())] {
            let side = side_of_edge(pts, edge, attachment);
            let pointing = Direction::from_unit(attachment - outside).expect("edge endpoints are adjacent");
            out.push(PierLike { points: side.into_iter().collect(), attachment, pointing });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fractal::corpus;

    #[test]
    fn sierpinski_class() {
        let c = classify(&corpus::sierpinski());
        assert!(c.is_pier_fractal && c.is_tree_fractal && c.is_pinch_point_fractal);
        assert!(c.equivalent_columns.is_empty());
        assert!(!c.satisfies_cor_equiv_columns);
    }

    #[test]
    fn multiple_bridges_class() {
        let c = classify(&corpus::multiple_bridges());
        assert_eq!((c.nhb, c.nvb), (3, 1));
        assert!(c.piers.iter().any(|p| p.pointing == Direction::N));
        assert!(c.satisfies_cor_multiple_bridges);
        assert!(!c.is_pier_fractal);
    }

    #[test]
    fn pier_like_class() {
        let gen = corpus::pier_like();
        let c = classify(&gen);
        assert_eq!((c.nhb, c.nvb), (5, 1));
        assert!(c.piers.is_empty());
        assert!(c.connected);
        assert!(c.satisfies_cor_pier_like);
        let block: Vec<Point> = [(3, 5), (3, 6), (4, 5), (4, 6)].into_iter().map(Point::from).collect();
        assert!(c
            .pier_like
            .iter()
            .any(|p| p.points == block && p.attachment == Point::new(3, 5) && p.pointing == Direction::N));
    }

    #[test]
    fn equivalent_column_class() {
        let gen = corpus::equivalent_columns();
        let c = classify(&gen);
        assert!(c.piers.is_empty());
        assert!(c.equivalent_columns.contains(&(2, 3)));
        assert!(c.equivalent_vertical_cuts.contains(&(2, 3)));
        assert!(c.equivalent_vertical_cuts.contains(&(1, 2)));
        assert_eq!(c.nvb, 1);
        assert!(c.satisfies_cor_equiv_columns);
        let without: PointSet = gen.points().iter().copied().filter(|&p| p != Point::new(4, 1)).collect();
        let smaller = Generator::new(5, without).unwrap();
        assert!(equivalent_columns(&smaller).contains(&(2, 3)));
        assert!(!equivalent_vertical_cuts(&smaller).contains(&(2, 3)));
    }

    #[test]
    fn tree_predicate_examples() {
        let s = corpus::sierpinski();
        assert!(stage_tree_predicate(&s, 1).unwrap());
        assert!(stage_tree_predicate(&s, 3).unwrap());
        let cyclic = Generator::new(3, [(0, 0), (1, 0), (0, 1), (1, 1), (2, 2)].map(Point::from)).unwrap();
        assert!(!stage_tree_predicate(&cyclic, 1).unwrap());
    }

    #[test]
    fn singleton_pier_like() {
        let gen = corpus::sierpinski();
        let like = pier_like_subconfigurations(&gen);
        for p in piers(&gen) {
            assert!(like.iter().any(|l| l.points == vec![p.location] && l.pointing == p.pointing));
        }
    }

    #[test]
    fn block_on_a_line() {
        // a 2x2 block at the end of a path, joined by one edge
        let gen = Generator::new(
            4,
            [(0, 0), (1, 0), (2, 0), (3, 0), (2, 1), (2, 2), (3, 2), (2, 3), (3, 3)].map(Point::from),
        )
        .unwrap();
        let like = pier_like_subconfigurations(&gen);
        let block: Vec<Point> = [(2, 2), (2, 3), (3, 2), (3, 3)].into_iter().map(Point::from).collect();
        assert!(like.iter().any(|l| l.points == block && l.attachment == Point::new(2, 2)));
    }
}
