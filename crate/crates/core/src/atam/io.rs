//! JSON form of tile systems.

use serde::{Deserialize, Serialize};

use super::{Assembly, Glue, TileId, TileSet, TileSystem, TileSystemError, TileType};
use crate::grid::Point;

fn is_null(g: &Glue) -> bool {
    g.is_null()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
struct TileEntry {
    name: String,
    #[serde(default, skip_serializing_if = "is_null")]
    north: Glue,
    #[serde(default, skip_serializing_if = "is_null")]
    east: Glue,
    #[serde(default, skip_serializing_if = "is_null")]
    south: Glue,
    #[serde(default, skip_serializing_if = "is_null")]
    west: Glue,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
struct SeedEntry {
    x: i64,
    y: i64,
    tile: String,
}

/// Serialized layout: temperature, tiles, seed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
struct TileSystemFile {
    temperature: u32,
    tiles: Vec<TileEntry>,
    seed: Vec<SeedEntry>,
}

impl TileSystem {
    pub fn from_json(text: &str) -> Result<TileSystem, TileSystemError> {
        let file: TileSystemFile = serde_json::from_str(text).map_err(|e| TileSystemError::Json(e.to_string()))?;
        let tiles = file
            .tiles
            .into_iter()
            .map(|t| TileType { name: t.name, north: t.north, east: t.east, south: t.south, west: t.west })
            .collect();
        let seed: Vec<(Point, &str)> = file.seed.iter().map(|s| (Point::new(s.x, s.y), s.tile.as_str())).collect();
        TileSystem::new(tiles, &seed, file.temperature)
    }

    /// Canonical form: tiles by name, seed by position, null sides omitted, trailing newline.
    pub fn to_json(&self) -> String {
        let file = TileSystemFile {
            temperature: self.temperature(),
            tiles: self
                .tiles()
                .iter()
                .map(|t| TileEntry {
                    name: t.name.clone(),
                    north: t.north.clone(),
                    east: t.east.clone(),
                    south: t.south.clone(),
                    west: t.west.clone(),
                })
                .collect(),
            seed: seed_entries(self.tiles(), self.seed()),
        };
        let mut out = serde_json::to_string_pretty(&file).expect("tile systems serialize");
        out.push('\n');
        out
    }
}

fn seed_entries(tiles: &TileSet, seed: &Assembly) -> Vec<SeedEntry> {
    placements_entries(tiles, seed.iter())
}

fn placements_entries(tiles: &TileSet, items: impl Iterator<Item = (Point, TileId)>) -> Vec<SeedEntry> {
    items.map(|(p, t)| SeedEntry { x: p.x, y: p.y, tile: tiles.tile(t).name.clone() }).collect()
}

/// A list of `{x, y, tile}` records, in the given order. Used for step lists and intended tilings.
pub fn placements_to_json(tiles: &TileSet, items: impl Iterator<Item = (Point, TileId)>) -> String {
    let mut out = serde_json::to_string_pretty(&placements_entries(tiles, items)).expect("placements serialize");
    out.push('\n');
    out
}

pub fn placements_from_json(tiles: &TileSet, text: &str) -> Result<Vec<(Point, TileId)>, TileSystemError> {
    let entries: Vec<SeedEntry> = serde_json::from_str(text).map_err(|e| TileSystemError::Json(e.to_string()))?;
    entries
        .into_iter()
        .map(|e| {
            let id = tiles.id(&e.tile).ok_or(TileSystemError::UnknownTile(e.tile))?;
            Ok((Point::new(e.x, e.y), id))
        })
        .collect()
}
