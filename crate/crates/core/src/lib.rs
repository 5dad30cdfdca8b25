//! Tile assembly simulation, self-similar fractal analysis and window-movie pumping.

pub mod atam;
pub mod fractal;
pub mod grid;
pub mod pump;
pub mod render;
pub mod systems;
pub mod windows;
