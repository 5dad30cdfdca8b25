//! Discrete self-similar fractals: generators, stages, scaling and membership.

mod bridges;
mod classify;
mod symmetry;
mod witness;

pub use bridges::{bridge_counts, bridges, piers, piers_of, Bridge, BridgeKind, Pier, PierKind};
pub use classify::{
    classify, equivalent_columns, equivalent_horizontal_cuts, equivalent_rows, equivalent_vertical_cuts,
    is_acyclic, pier_like_subconfigurations, stage_tree_predicate, FractalClass, PierLike,
};
pub use symmetry::Symmetry;
pub use witness::{find_free_point_witnesses, FreePointWitnesses, Witness};

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::grid::{Point, PointSet};

/// Default bound on the number of points a stage may hold.
pub const DEFAULT_POINT_CAP: usize = 1_000_000;

/// Environment variable overriding [`DEFAULT_POINT_CAP`].
pub const POINT_CAP_ENV: &str = "TILEPUMP_CAP";

pub fn point_cap() -> usize {
    std::env::var(POINT_CAP_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_POINT_CAP)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeneratorError {
    #[error("side length must exceed 1, got {0}")]
    SideTooSmall(i64),
    #[error("the origin must belong to the generator")]
    MissingOrigin,
    #[error("point {0} lies outside the {1}x{1} square")]
    OutOfRange(Point, i64),
    #[error("the generator may not fill the whole square")]
    Full,
    #[error("row {0} is empty")]
    EmptyRow(i64),
    #[error("column {0} is empty")]
    EmptyColumn(i64),
    #[error("point {0} is listed more than once")]
    Duplicate(Point),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StageError {
    #[error("stage index must be at least 1")]
    StageZero,
    #[error("stage {stage} needs {needed} points, above the cap of {cap}")]
    CapExceeded { stage: u32, needed: u128, cap: usize },
}

/// Stage-one point set of a fractal, validated.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Generator {
    g: i64,
    points: PointSet,
}

pub fn validate_generator(g: i64, points: PointSet) -> Result<Generator, GeneratorError> {
    if g <= 1 {
        return Err(GeneratorError::SideTooSmall(g));
    }
    if let Some(&p) = points.iter().find(|p| !(0..g).contains(&p.x) || !(0..g).contains(&p.y)) {
        return Err(GeneratorError::OutOfRange(p, g));
    }
    if !points.contains(&Point::ORIGIN) {
        return Err(GeneratorError::MissingOrigin);
    }
    if points.len() as i64 == g * g {
        return Err(GeneratorError::Full);
    }
    let rows: BTreeSet<i64> = points.iter().map(|p| p.y).collect();
    if let Some(y) = (0..g).find(|y| !rows.contains(y)) {
        return Err(GeneratorError::EmptyRow(y));
    }
    let cols: BTreeSet<i64> = points.iter().map(|p| p.x).collect();
    if let Some(x) = (0..g).find(|x| !cols.contains(x)) {
        return Err(GeneratorError::EmptyColumn(x));
    }
    Ok(Generator { g, points })
}

impl Generator {
    pub fn new(g: i64, points: impl IntoIterator<Item = Point>) -> Result<Self, GeneratorError> {
        let mut set = PointSet::new();
        for p in points {
            if !set.insert(p) {
                return Err(GeneratorError::Duplicate(p));
            }
        }
        validate_generator(g, set)
    }

    pub fn side(&self) -> i64 {
        self.g
    }

    pub fn points(&self) -> &PointSet {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, p: Point) -> bool {
        self.points.contains(&p)
    }

    /// Sorted y coordinates of column `x`.
    pub fn column(&self, x: i64) -> BTreeSet<i64> {
        self.points.iter().filter(|p| p.x == x).map(|p| p.y).collect()
    }

    /// Sorted x coordinates of row `y`.
    pub fn row(&self, y: i64) -> BTreeSet<i64> {
        self.points.iter().filter(|p| p.y == y).map(|p| p.x).collect()
    }

    /// Membership in the infinite fractal: every base-`g` digit pair is a generator point.
    pub fn fractal_contains(&self, p: Point) -> bool {
        if p.x < 0 || p.y < 0 {
            return false;
        }
        let (mut x, mut y) = (p.x, p.y);
        while x > 0 || y > 0 {
            if !self.points.contains(&Point::new(x % self.g, y % self.g)) {
                return false;
            }
            x /= self.g;
            y /= self.g;
        }
        true
    }

    /// Membership in the infinite fractal after replacing each point by a `c`x`c` block.
    pub fn scaled_contains(&self, c: i64, p: Point) -> bool {
        p.x >= 0 && p.y >= 0 && self.fractal_contains(Point::new(p.x / c, p.y / c))
    }

    /// Membership in stage `s`.
    pub fn stage_contains(&self, s: u32, p: Point) -> bool {
        match self.g.checked_pow(s) {
            Some(side) => p.x < side && p.y < side && self.fractal_contains(p),
            None => self.fractal_contains(p),
        }
    }

    pub fn transformed(&self, t: Symmetry) -> Generator {
        Generator { g: self.g, points: self.points.iter().map(|&p| t.apply(p, self.g)).collect() }
    }
}

/// Stage `s` under the configured point cap.
pub fn stage(gen: &Generator, s: u32) -> Result<PointSet, StageError> {
    stage_with_cap(gen, s, point_cap())
}

pub fn stage_with_cap(gen: &Generator, s: u32, cap: usize) -> Result<PointSet, StageError> {
    if s == 0 {
        return Err(StageError::StageZero);
    }
    let needed = (gen.len() as u128).checked_pow(s).unwrap_or(u128::MAX);
    if needed > cap as u128 {
        return Err(StageError::CapExceeded { stage: s, needed, cap });
    }
    let mut current = gen.points.clone();
    let mut offset = gen.g;
    for _ in 1..s {
        let mut next = PointSet::new();
        for &copy in &gen.points {
            let shift = copy * offset;
            next.extend(current.iter().map(|&p| p + shift));
        }
        current = next;
        offset *= gen.g;
    }
    Ok(current)
}

/// Replace every point by a `c`x`c` block.
pub fn scale(set: &PointSet, c: i64) -> PointSet {
    assert!(c >= 1, "scale factor must be positive");
    let mut out = PointSet::new();
    for p in set {
        for dx in 0..c {
            for dy in 0..c {
                out.insert(Point::new(p.x * c + dx, p.y * c + dy));
            }
        }
    }
    out
}

/// On-disk generator description.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorFile {
    pub g: i64,
    pub points: Vec<[i64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Debug, Error)]
pub enum GeneratorFileError {
    #[error("malformed generator JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Invalid(#[from] GeneratorError),
}

impl Generator {
    pub fn from_json(text: &str) -> Result<Generator, GeneratorFileError> {
        let file: GeneratorFile = serde_json::from_str(text)?;
        Ok(Generator::new(file.g, file.points.iter().map(|&[x, y]| Point::new(x, y)))?)
    }

    pub fn to_json(&self) -> String {
        let file = GeneratorFile {
            g: self.g,
            points: self.points.iter().map(|p| [p.x, p.y]).collect(),
            note: None,
        };
        serde_json::to_string(&file).expect("generator serializes")
    }
}

/// Reference generators used throughout tests and demos.
pub mod corpus {
    use super::Generator;
    use crate::grid::Point;

    fn build(g: i64, pts: &[(i64, i64)]) -> Generator {
        Generator::new(g, pts.iter().map(|&p| Point::from(p))).expect("corpus generator is valid")
    }

    pub fn sierpinski() -> Generator {
        build(2, &[(0, 0), (1, 0), (0, 1)])
    }

    /// Five-wide pier fractal with one pier of every kind.
    pub fn pier_taxonomy() -> Generator {
        build(5, &[
            (0, 0), (0, 1), (1, 1), (2, 1), (3, 1), (3, 0), (4, 0),
            (3, 2), (3, 3), (4, 3), (4, 4), (1, 2), (1, 3), (1, 4),
        ])
    }

    /// Four-wide pier fractal without real piers.
    pub fn single_bridge_piers() -> Generator {
        build(4, &[(0, 0), (0, 1), (0, 2), (0, 3), (1, 2), (2, 2), (3, 2)])
    }

    /// Three h-bridges, one v-bridge, a north-pointing pier.
    pub fn multiple_bridges() -> Generator {
        build(5, &[
            (0, 0), (1, 0), (2, 0), (3, 0), (4, 0),
            (0, 1), (0, 2), (0, 3), (0, 4),
            (2, 1), (2, 2), (4, 1), (4, 2),
        ])
    }

    /// No piers; a 2x2 block hangs off a ring by one vertical edge.
    pub fn pier_like() -> Generator {
        build(7, &[
            (0, 0), (0, 1), (0, 2), (0, 3), (0, 4), (1, 0), (2, 0), (3, 0),
            (3, 1), (3, 2), (3, 3), (3, 4), (1, 4), (2, 4),
            (4, 2),
            (5, 0), (5, 1), (5, 2), (5, 3), (5, 4),
            (6, 0), (6, 1), (6, 2), (6, 3), (6, 4),
            (3, 5), (4, 5), (3, 6), (4, 6),
        ])
    }

    /// No piers, equivalent columns 2 and 3 with equivalent cuts east of the only v-bridge.
    pub fn equivalent_columns() -> Generator {
        build(5, &[
            (0, 0), (0, 1),
            (1, 0), (1, 1), (1, 2), (1, 3), (1, 4),
            (2, 1), (2, 3), (2, 4),
            (3, 1), (3, 3), (3, 4),
            (4, 1), (4, 2), (4, 3), (4, 4),
        ])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts(v: &[(i64, i64)]) -> PointSet {
        v.iter().map(|&p| p.into()).collect()
    }

    #[test]
    fn validation_examples() {
        assert!(validate_generator(2, pts(&[(0, 0), (1, 0), (0, 1)])).is_ok());
        assert_eq!(validate_generator(2, pts(&[(1, 0), (0, 1)])), Err(GeneratorError::MissingOrigin));
        assert_eq!(validate_generator(3, pts(&[(0, 0), (1, 1)])), Err(GeneratorError::EmptyRow(2)));
        assert_eq!(validate_generator(1, pts(&[(0, 0)])), Err(GeneratorError::SideTooSmall(1)));
        assert_eq!(
            validate_generator(2, pts(&[(0, 0), (1, 0), (0, 1), (1, 1)])),
            Err(GeneratorError::Full)
        );
        assert_eq!(
            validate_generator(2, pts(&[(0, 0), (2, 0)])),
            Err(GeneratorError::OutOfRange(Point::new(2, 0), 2))
        );
        assert_eq!(validate_generator(3, pts(&[(0, 0), (1, 2), (0, 1)])), Err(GeneratorError::EmptyColumn(2)));
    }

    #[test]
    fn duplicates_rejected() {
        let err = Generator::from_json(r#"{"g":2,"points":[[0,0],[1,0],[0,1],[1,0]]}"#).unwrap_err();
        assert!(matches!(err, GeneratorFileError::Invalid(GeneratorError::Duplicate(p)) if p == Point::new(1, 0)));
        assert!(matches!(Generator::from_json("{"), Err(GeneratorFileError::Json(_))));
    }

    #[test]
    fn json_round_trip() {
        let g = corpus::pier_taxonomy();
        assert_eq!(Generator::from_json(&g.to_json()).unwrap(), g);
    }

    #[test]
    fn sierpinski_stages() {
        let g = corpus::sierpinski();
        assert_eq!(stage(&g, 1).unwrap(), *g.points());
        let s2 = stage(&g, 2).unwrap();
        assert_eq!(s2, pts(&[(0, 0), (1, 0), (0, 1), (2, 0), (3, 0), (2, 1), (0, 2), (1, 2), (0, 3)]));
        assert_eq!(stage(&g, 3).unwrap().len(), 27);
        assert_eq!(stage(&corpus::single_bridge_piers(), 3).unwrap().len(), 343);
    }

    #[test]
    fn stage_cap_guard() {
        let g = corpus::sierpinski();
        assert_eq!(
            stage_with_cap(&g, 3, 26),
            Err(StageError::CapExceeded { stage: 3, needed: 27, cap: 26 })
        );
        assert_eq!(stage_with_cap(&g, 0, 10), Err(StageError::StageZero));
    }

    #[test]
    fn scale_examples() {
        assert_eq!(scale(&pts(&[(0, 0)]), 2), pts(&[(0, 0), (1, 0), (0, 1), (1, 1)]));
        let x = pts(&[(3, 1), (0, 0)]);
        assert_eq!(scale(&x, 1), x);
        let want: PointSet = (3..6).flat_map(|x| (0..3).map(move |y| Point::new(x, y))).collect();
        assert_eq!(scale(&pts(&[(1, 0)]), 3), want);
    }

    #[test]
    fn membership_matches_stage() {
        for g in [corpus::sierpinski(), corpus::pier_taxonomy(), corpus::single_bridge_piers()] {
            let s3 = stage(&g, 3).unwrap();
            let side = g.side().pow(3);
            for x in -1..side + 1 {
                for y in -1..side + 1 {
                    let p = Point::new(x, y);
                    assert_eq!(g.stage_contains(3, p), s3.contains(&p), "{p}");
                }
            }
            let scaled = scale(&s3, 2);
            for p in &scaled {
                assert!(g.scaled_contains(2, *p));
            }
        }
    }
}
