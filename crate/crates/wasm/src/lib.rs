//! Browser bindings: draw a stage, classify a generator, outline the anchor windows.

use wasm_bindgen::prelude::*;

use tilepump_core::fractal::{classify, point_cap, scale, stage_with_cap, Generator};
use tilepump_core::grid::BoundingExtents;
use tilepump_core::render::{render_svg, RenderSpec};
use tilepump_core::windows::select_anchor;

const INK: &str = "#202020";

fn generator(json: &str) -> Result<Generator, String> {
    Generator::from_json(json).map_err(|e| e.to_string())
}

/// `scale(stage(gen, s), c)` as SVG.
pub fn stage_picture(gen_json: &str, s: u32, c: i64, cell: u32) -> Result<String, String> {
    let gen = generator(gen_json)?;
    if c < 1 {
        return Err("the scale must be at least 1".into());
    }
    let points = scale(&stage_with_cap(&gen, s, point_cap()).map_err(|e| e.to_string())?, c);
    render_svg(&RenderSpec::new(cell).layer(points, INK)).map_err(|e| e.to_string())
}

/// The classification as pretty JSON.
pub fn classification(gen_json: &str) -> Result<String, String> {
    let gen = generator(gen_json)?;
    serde_json::to_string_pretty(&classify(&gen)).map_err(|e| e.to_string())
}

/// Stage `s` with the anchor windows of stages 2 through `s` outlined.
pub fn window_picture(gen_json: &str, s: u32, c: i64, cell: u32) -> Result<String, String> {
    let gen = generator(gen_json)?;
    let anchor = select_anchor(&gen, c).map_err(|e| e.to_string())?;
    if s < 2 {
        return Err("windows start at stage 2".into());
    }
    let points = scale(&stage_with_cap(&gen, s, point_cap()).map_err(|e| e.to_string())?, c);
    let mut spec = RenderSpec::new(cell).layer(points, INK);
    for k in 2..=s {
        let w = anchor.window(c, gen.side(), k).map_err(|e| e.to_string())?;
        let extents = BoundingExtents::of(&w.inside()).ok_or("empty window")?;
        spec = spec.overlay(extents, if k == s { "#ff7f0e" } else { "#2ca02c" }, k != s);
    }
    render_svg(&spec).map_err(|e| e.to_string())
}

#[wasm_bindgen(js_name = stageSvg)]
pub fn stage_svg(gen_json: &str, s: u32, c: i32, cell: u32) -> Result<String, JsError> {
    stage_picture(gen_json, s, c.into(), cell).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = classifyJson)]
pub fn classify_json(gen_json: &str) -> Result<String, JsError> {
    classification(gen_json).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = windowSvg)]
pub fn window_svg(gen_json: &str, s: u32, c: i32, cell: u32) -> Result<String, JsError> {
    window_picture(gen_json, s, c.into(), cell).map_err(|e| JsError::new(&e))
}
