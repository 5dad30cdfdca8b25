//! Binding graphs and exact global minimum cuts.

use super::{Assembly, TileSet};
use crate::grid::{Direction, Point};

/// Vertices are the assembly's positions in sorted order; edges carry bond strength.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BindingGraph {
    pub vertices: Vec<Point>,
    pub edges: Vec<(usize, usize, u32)>,
}

pub fn binding_graph(a: &Assembly, tiles: &TileSet) -> BindingGraph {
    let vertices: Vec<Point> = a.iter().map(|(p, _)| p).collect();
    let index = |p: Point| vertices.binary_search(&p).ok();
    let mut edges = Vec::new();
    for (i, (p, t)) in a.iter().enumerate() {
        for d in [Direction::E, Direction::N] {
            let q = p.step(d);
            if let (Some(u), Some(j)) = (a.get(q), index(q)) {
                let w = tiles.tile(t).glue(d).bond(tiles.tile(u).glue(d.inverse()));
                if w > 0 {
                    edges.push((i, j, w));
                }
            }
        }
    }
    BindingGraph { vertices, edges }
}

/// Largest vertex count handled by bipartition enumeration.
pub const EXHAUSTIVE_LIMIT: usize = 20;

/// Weight of a lightest cut; `None` for graphs with fewer than two vertices.
pub fn min_cut_weight(g: &BindingGraph) -> Option<u64> {
    if g.vertices.len() <= EXHAUSTIVE_LIMIT {
        min_cut_exhaustive(g)
    } else {
        stoer_wagner(g)
    }
}

/// Every cut-set weighs at least `tau`.
pub fn is_stable(g: &BindingGraph, tau: u32) -> bool {
    min_cut_weight(g).is_none_or(|w| w >= u64::from(tau))
}

/// Enumerates all bipartitions in Gray-code order, one vertex move per step.
pub fn min_cut_exhaustive(g: &BindingGraph) -> Option<u64> {
    let n = g.vertices.len();
    if n < 2 {
        return None;
    }
    assert!(n <= 30, "bipartition enumeration is limited to small graphs");
    let mut adj: Vec<Vec<(usize, u64)>> = vec![Vec::new(); n];
    for &(a, b, w) in &g.edges {
        adj[a].push((b, u64::from(w)));
        adj[b].push((a, u64::from(w)));
    }
    // the last vertex stays on side 0, so every proper bipartition is seen exactly once
    let mut side = vec![false; n];
    let mut cut: i64 = 0;
    let mut best = u64::MAX;
    for k in 1u64..(1u64 << (n - 1)) {
        let v = k.trailing_zeros() as usize;
        for &(u, w) in &adj[v] {
            if side[u] == side[v] {
                cut += w as i64;
            } else {
                cut -= w as i64;
            }
        }
        side[v] = !side[v];
        best = best.min(cut as u64);
    }
    Some(best)
}

/// Stoer-Wagner global minimum cut on a dense weight matrix.
pub fn stoer_wagner(g: &BindingGraph) -> Option<u64> {
    let n = g.vertices.len();
    if n < 2 {
        return None;
    }
    let mut w = vec![vec![0u64; n]; n];
    for &(a, b, s) in &g.edges {
        w[a][b] += u64::from(s);
        w[b][a] += u64::from(s);
    }
    let mut active: Vec<usize> = (0..n).collect();
    let mut best = u64::MAX;
    while active.len() > 1 {
        let mut key = vec![0u64; n];
        let mut added = vec![false; n];
        let mut prev = active[0];
        for round in 0..active.len() {
            let next = *active
                .iter()
                .filter(|&&v| !added[v])
                .max_by_key(|&&v| (key[v], std::cmp::Reverse(v)))
                .expect("an unvisited vertex remains");
            added[next] = true;
            if round == active.len() - 1 {
                best = best.min(key[next]);
                for &u in &active {
                    w[prev][u] += w[next][u];
                    w[u][prev] = w[prev][u];
                }
                w[prev][prev] = 0;
                active.retain(|&v| v != next);
            } else {
                for &u in &active {
                    if !added[u] {
                        key[u] += w[next][u];
                    }
                }
                prev = next;
            }
        }
    }
    Some(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::atam::{Glue, TileType};
    use proptest::prelude::*;

    fn graph(n: usize, edges: &[(usize, usize, u32)]) -> BindingGraph {
        BindingGraph { vertices: (0..n as i64).map(|i| Point::new(i, 0)).collect(), edges: edges.to_vec() }
    }

    #[test]
    fn small_cases() {
        assert_eq!(min_cut_weight(&graph(1, &[])), None);
        assert_eq!(min_cut_weight(&graph(2, &[(0, 1, 1)])), Some(1));
        assert!(!is_stable(&graph(2, &[(0, 1, 1)]), 2));
        assert!(is_stable(&graph(1, &[]), 2));
        // 2x2 ring of strength-1 bonds
        let ring = graph(4, &[(0, 1, 1), (1, 2, 1), (2, 3, 1), (3, 0, 1)]);
        assert_eq!(min_cut_weight(&ring), Some(2));
        assert!(is_stable(&ring, 2));
        assert_eq!(min_cut_weight(&graph(3, &[(0, 1, 5)])), Some(0));
    }

    #[test]
    fn block_assembly_is_stable_at_two() {
        let g = Glue::new("g", 1);
        let t = TileType::new("t")
            .with(Direction::N, g.clone())
            .with(Direction::E, g.clone())
            .with(Direction::S, g.clone())
            .with(Direction::W, g);
        let tiles = TileSet::new(vec![t]).unwrap();
        let mut a = Assembly::new();
        for p in [(0, 0), (1, 0), (0, 1), (1, 1)] {
            a.insert(p.into(), 0);
        }
        let bg = binding_graph(&a, &tiles);
        assert_eq!(bg.edges.len(), 4);
        assert!(is_stable(&bg, 2));
        assert!(!is_stable(&bg, 3));
    }

    #[test]
    fn mismatched_neighbors_do_not_bind() {
        let a = TileType::new("a").with(Direction::E, Glue::new("x", 1));
        let b = TileType::new("b").with(Direction::W, Glue::new("y", 1));
        let tiles = TileSet::new(vec![a, b]).unwrap();
        let mut asm = Assembly::new();
        asm.insert(Point::new(0, 0), 0);
        asm.insert(Point::new(1, 0), 1);
        assert!(binding_graph(&asm, &tiles).edges.is_empty());
    }

    fn arb_graph() -> impl Strategy<Value = BindingGraph> {
        (2usize..12).prop_flat_map(|n| {
            proptest::collection::vec((0..n, 0..n, 1u32..4), 0..30).prop_map(move |raw| {
                let edges = raw.into_iter().filter(|(a, b, _)| a != b).collect::<Vec<_>>();
                graph(n, &edges)
            })
        })
    }

    proptest! {
        #[test]
        fn stoer_wagner_agrees_with_enumeration(g in arb_graph()) {
            prop_assert_eq!(stoer_wagner(&g), min_cut_exhaustive(&g));
        }
    }
}
