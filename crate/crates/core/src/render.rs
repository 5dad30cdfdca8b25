//! SVG pictures of point sets, with optional window outlines.

use std::collections::BTreeMap;
use std::fmt::Write;

use thiserror::Error;

use crate::grid::{BoundingExtents, Point, PointSet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RenderError {
    #[error("cell size must be at least 1")]
    ZeroCell,
    #[error("nothing to draw")]
    Empty,
}

/// Cells filled with one color. Later layers paint over earlier ones.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Layer {
    pub points: PointSet,
    pub fill: String,
}

/// An unfilled rectangle around a lattice region.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Overlay {
    pub extents: BoundingExtents,
    pub stroke: String,
    pub dashed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RenderSpec {
    pub cell: u32,
    pub layers: Vec<Layer>,
    pub overlays: Vec<Overlay>,
}

impl RenderSpec {
    pub fn new(cell: u32) -> Self {
        RenderSpec { cell, layers: Vec::new(), overlays: Vec::new() }
    }

    pub fn layer(mut self, points: PointSet, fill: &str) -> Self {
        self.layers.push(Layer { points, fill: fill.to_owned() });
        self
    }

    pub fn overlay(mut self, extents: BoundingExtents, stroke: &str, dashed: bool) -> Self {
        self.overlays.push(Overlay { extents, stroke: stroke.to_owned(), dashed });
        self
    }
}

/// One `rect` per filled cell, y growing upward, one cell of margin.
pub fn render_svg(spec: &RenderSpec) -> Result<String, RenderError> {
    if spec.cell == 0 {
        return Err(RenderError::ZeroCell);
    }
    let mut fills: BTreeMap<Point, &str> = BTreeMap::new();
    for layer in &spec.layers {
        for &p in &layer.points {
            fills.insert(p, &layer.fill);
        }
    }
    let cells = BoundingExtents::of(fills.keys());
    let boxes = spec.overlays.iter().map(|o| o.extents).reduce(|a, b| a.union(&b));
    let ext = match (cells, boxes) {
        (Some(a), Some(b)) => a.union(&b),
        (Some(a), None) | (None, Some(a)) => a,
        (None, None) => return Err(RenderError::Empty),
    };
    let k = i64::from(spec.cell);
    let width = (ext.width() + 2) * k;
    let height = (ext.height() + 2) * k;
    let px = |x: i64| (x - ext.l + 1) * k;
    let py = |y: i64| (ext.t - y + 1) * k;

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    );
    let _ = writeln!(out, r##"<rect class="background" x="0" y="0" width="{width}" height="{height}" fill="#ffffff"/>"##);
    for (p, fill) in &fills {
        let _ = writeln!(out, r#"<rect x="{}" y="{}" width="{k}" height="{k}" fill="{fill}"/>"#, px(p.x), py(p.y));
    }
    for o in &spec.overlays {
        let e = o.extents;
        let dash = if o.dashed { format!(r#" stroke-dasharray="{k}""#) } else { String::new() };
        let _ = writeln!(
            out,
            r#"<rect class="window" x="{}" y="{}" width="{}" height="{}" fill="none" stroke="{}" stroke-width="{}"{dash}/>"#,
            px(e.l),
            py(e.t),
            e.width() * k,
            e.height() * k,
            o.stroke,
            (k / 4).max(1),
        );
    }
    out.push_str("</svg>\n");
    Ok(out)
}
