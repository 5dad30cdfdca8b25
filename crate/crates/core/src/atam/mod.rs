//! The abstract Tile Assembly Model.

mod io;
mod sim;
mod stability;

pub use sim::{
    attach_strength, frontier, replay, run, run_guided, strictly_self_assembles, AssemblySequence, Halt, Policy,
    Region, ReplayError, ReplayFailure, RunLimits, Step, Verdict,
};
pub use io::{placements_from_json, placements_to_json};
pub use stability::{binding_graph, is_stable, min_cut_exhaustive, min_cut_weight, stoer_wagner, BindingGraph};

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::grid::{is_connected, Direction, Point, PointSet};

/// A side label. Two abutting glues bond when label and strength agree and strength is positive.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
pub struct Glue {
    pub label: String,
    pub strength: u32,
}

impl Glue {
    pub fn new(label: impl Into<String>, strength: u32) -> Self {
        Glue { label: label.into(), strength }
    }

    pub fn null() -> Self {
        Glue::default()
    }

    pub fn is_null(&self) -> bool {
        self.label.is_empty() && self.strength == 0
    }

    /// Strength of the bond this glue forms with `other`, zero when they do not bind.
    pub fn bond(&self, other: &Glue) -> u32 {
        if self.strength > 0 && self == other {
            self.strength
        } else {
            0
        }
    }
}

impl fmt::Display for Glue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.label, self.strength)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct TileType {
    pub name: String,
    pub north: Glue,
    pub east: Glue,
    pub south: Glue,
    pub west: Glue,
}

impl TileType {
    pub fn new(name: impl Into<String>) -> Self {
        TileType {
            name: name.into(),
            north: Glue::null(),
            east: Glue::null(),
            south: Glue::null(),
            west: Glue::null(),
        }
    }

    pub fn with(mut self, side: Direction, glue: Glue) -> Self {
        *self.glue_mut(side) = glue;
        self
    }

    pub fn glue(&self, side: Direction) -> &Glue {
        match side {
            Direction::N => &self.north,
            Direction::E => &self.east,
            Direction::S => &self.south,
            Direction::W => &self.west,
        }
    }

    pub fn glue_mut(&mut self, side: Direction) -> &mut Glue {
        match side {
            Direction::N => &mut self.north,
            Direction::E => &mut self.east,
            Direction::S => &mut self.south,
            Direction::W => &mut self.west,
        }
    }
}

/// Index of a tile type inside its [`TileSet`]; ids follow name order.
pub type TileId = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TileSystemError {
    #[error("tile name {0:?} is used twice")]
    DuplicateTile(String),
    #[error("unknown tile {0:?}")]
    UnknownTile(String),
    #[error("temperature must be at least 1")]
    ZeroTemperature,
    #[error("the seed is empty")]
    EmptySeed,
    #[error("seed position {0} is listed twice")]
    DuplicateSeedPosition(Point),
    #[error("the seed is not connected")]
    DisconnectedSeed,
    #[error("the seed is not stable at temperature {0}")]
    UnstableSeed(u32),
    #[error("malformed tile system JSON: {0}")]
    Json(String),
}

/// Tile types sorted by name, with a lookup from (side, glue) to the tiles exposing it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TileSet {
    tiles: Vec<TileType>,
    by_name: HashMap<String, TileId>,
    by_glue: HashMap<(Direction, Glue), Vec<TileId>>,
}

impl TileSet {
    pub fn new(mut tiles: Vec<TileType>) -> Result<Self, TileSystemError> {
        tiles.sort_by(|a, b| a.name.cmp(&b.name));
        let mut by_name = HashMap::new();
        let mut by_glue: HashMap<(Direction, Glue), Vec<TileId>> = HashMap::new();
        for (id, t) in tiles.iter().enumerate() {
            if by_name.insert(t.name.clone(), id).is_some() {
                return Err(TileSystemError::DuplicateTile(t.name.clone()));
            }
            for d in Direction::ALL {
                let glue = t.glue(d);
                if glue.strength > 0 {
                    by_glue.entry((d, glue.clone())).or_default().push(id);
                }
            }
        }
        Ok(TileSet { tiles, by_name, by_glue })
    }

    pub fn len(&self) -> usize {
        self.tiles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tiles.is_empty()
    }

    pub fn get(&self, id: TileId) -> Option<&TileType> {
        self.tiles.get(id)
    }

    pub fn tile(&self, id: TileId) -> &TileType {
        &self.tiles[id]
    }

    pub fn id(&self, name: &str) -> Option<TileId> {
        self.by_name.get(name).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = &TileType> {
        self.tiles.iter()
    }

    /// Tiles whose `side` carries exactly `glue` (positive strength only).
    pub fn exposing(&self, side: Direction, glue: &Glue) -> &[TileId] {
        self.by_glue.get(&(side, glue.clone())).map(Vec::as_slice).unwrap_or(&[])
    }

    /// Distinct positive-strength glues over all sides of all tiles.
    pub fn distinct_glue_count(&self) -> usize {
        let mut seen: Vec<&Glue> = self
            .tiles
            .iter()
            .flat_map(|t| Direction::ALL.into_iter().map(move |d| t.glue(d)))
            .filter(|g| g.strength > 0)
            .collect();
        seen.sort();
        seen.dedup();
        seen.len()
    }
}

/// A partial tiling of the lattice by tile ids.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Assembly {
    tiles: BTreeMap<Point, TileId>,
}

impl Assembly {
    pub fn new() -> Self {
        Assembly::default()
    }

    pub fn from_map(tiles: BTreeMap<Point, TileId>) -> Self {
        Assembly { tiles }
    }

    pub fn get(&self, p: Point) -> Option<TileId> {
        self.tiles.get(&p).copied()
    }

    pub fn contains(&self, p: Point) -> bool {
        self.tiles.contains_key(&p)
    }

    pub fn insert(&mut self, p: Point, t: TileId) -> Option<TileId> {
        self.tiles.insert(p, t)
    }

    pub fn len(&self) -> usize {
        self.tiles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tiles.is_empty()
    }

    pub fn domain(&self) -> PointSet {
        self.tiles.keys().copied().collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Point, TileId)> + '_ {
        self.tiles.iter().map(|(&p, &t)| (p, t))
    }

    pub fn as_map(&self) -> &BTreeMap<Point, TileId> {
        &self.tiles
    }
}

/// Tile set, seed assembly and temperature.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TileSystem {
    tiles: TileSet,
    seed: Assembly,
    temperature: u32,
}

impl TileSystem {
    pub fn new(tiles: Vec<TileType>, seed: &[(Point, &str)], temperature: u32) -> Result<Self, TileSystemError> {
        let set = TileSet::new(tiles)?;
        let mut asm = Assembly::new();
        for &(p, name) in seed {
            let id = set.id(name).ok_or_else(|| TileSystemError::UnknownTile(name.to_string()))?;
            if asm.insert(p, id).is_some() {
                return Err(TileSystemError::DuplicateSeedPosition(p));
            }
        }
        TileSystem::from_parts(set, asm, temperature)
    }

    pub fn from_parts(tiles: TileSet, seed: Assembly, temperature: u32) -> Result<Self, TileSystemError> {
        if temperature == 0 {
            return Err(TileSystemError::ZeroTemperature);
        }
        if seed.is_empty() {
            return Err(TileSystemError::EmptySeed);
        }
        if !is_connected(&seed.domain()).unwrap_or(false) {
            return Err(TileSystemError::DisconnectedSeed);
        }
        if !is_stable(&binding_graph(&seed, &tiles), temperature) {
            return Err(TileSystemError::UnstableSeed(temperature));
        }
        Ok(TileSystem { tiles, seed, temperature })
    }

    pub fn tiles(&self) -> &TileSet {
        &self.tiles
    }

    pub fn seed(&self) -> &Assembly {
        &self.seed
    }

    pub fn temperature(&self) -> u32 {
        self.temperature
    }
}
