//! Browser bindings. Each exported function has a plain Rust counterpart
//! returning `Result<String, String>` so it can be tested natively.

use wasm_bindgen::prelude::*;

use toric_ko::ext_charts::{ext_m, ext_s0};
use toric_ko::library::{self, BUNDLED};
use toric_ko::problem::{parse_spec, render_spec};
use toric_ko::render::render_svg;
use toric_ko::report::{compute, report_json};

/// JSON list of `{name, description, text}` for the bundled examples.
pub fn examples_json() -> String {
    let list: Vec<_> = BUNDLED
        .iter()
        .map(|b| serde_json::json!({ "name": b.name, "description": b.description, "text": b.text }))
        .collect();
    serde_json::Value::Array(list).to_string()
}

/// Full JSON report for an input file.
pub fn analyze_text(spec_text: &str) -> Result<String, String> {
    let spec = parse_spec(spec_text).map_err(|e| e.to_string())?;
    let comp = compute(&spec).map_err(|e| e.to_string())?;
    Ok(report_json(&comp.report))
}

/// SVG of the assembled E2 page for an input file.
pub fn e2_svg(spec_text: &str) -> Result<String, String> {
    let spec = parse_spec(spec_text).map_err(|e| e.to_string())?;
    let comp = compute(&spec).map_err(|e| e.to_string())?;
    Ok(render_svg(&comp.report.results.chart))
}

/// SVG of `Ext(S0)` (`kind = "s0"`) or `Ext(M)` (`kind = "m"`).
pub fn base_svg(kind: &str, max_stem: i64, max_filt: i64) -> Result<String, String> {
    let (stems, filt) = (max_stem.clamp(0, 64), max_filt.clamp(0, 32));
    match kind {
        "s0" => Ok(render_svg(&ext_s0(stems, filt))),
        "m" => Ok(render_svg(&ext_m(stems, filt))),
        other => Err(format!("unknown chart `{other}`; use s0 or m")),
    }
}

/// Input file for a random polygon.
pub fn polygon_text(m: usize, seed: u64) -> Result<String, String> {
    if !(3..=40).contains(&m) {
        return Err("polygon size must be between 3 and 40".to_string());
    }
    Ok(render_spec(&library::seeded_polygon(m, seed, false)))
}

#[wasm_bindgen]
pub fn bundled_examples() -> String {
    examples_json()
}

#[wasm_bindgen]
pub fn analyze(spec_text: &str) -> Result<String, JsValue> {
    analyze_text(spec_text).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn e2_chart_svg(spec_text: &str) -> Result<String, JsValue> {
    e2_svg(spec_text).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn base_chart_svg(kind: &str, max_stem: i32, max_filt: i32) -> Result<String, JsValue> {
    base_svg(kind, max_stem.into(), max_filt.into()).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn polygon_example(m: u32, seed: u32) -> Result<String, JsValue> {
    polygon_text(m as usize, seed.into()).map_err(|e| JsValue::from_str(&e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn base_chart_kinds() {
        assert!(base_svg("s0", 8, 4).unwrap().starts_with("<svg"));
        assert!(base_svg("x", 8, 4).is_err());
    }

    #[test]
    fn polygon_bounds() {
        assert!(polygon_text(2, 0).is_err());
        assert!(polygon_text(6, 9).unwrap().contains("facet:"));
    }
}
