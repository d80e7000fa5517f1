//! WebAssembly entry points for the static demo page in `www/`.

use serde_json::{json, Value};
use sl3::cli::parse_diagram;
use sl3::complex::homology_report;
use sl3::web::kuperberg_bracket;
use sl3::BigradedHomology;
use wasm_bindgen::prelude::*;

/// Largest diagram the page will attempt; the cube has `2^n` vertices.
pub const MAX_CROSSINGS: usize = 8;

/// Bracket, flattening list and homology of a PD code, as one JSON value.
pub fn analyze_value(pd: &str) -> Result<Value, String> {
    let d = parse_diagram(pd).map_err(|e| e.to_string())?;
    if d.len() > MAX_CROSSINGS {
        return Err(format!(
            "{} crossings; the demo stops at {MAX_CROSSINGS}",
            d.len()
        ));
    }
    let mut flattenings = Vec::new();
    for mask in 0..1u64 << d.len() {
        let w = d.flatten_mask(mask).map_err(|e| e.to_string())?;
        let j: Vec<usize> = (0..d.len()).filter(|c| mask >> c & 1 == 1).collect();
        let b = kuperberg_bracket(&w).map_err(|e| e.to_string())?;
        flattenings.push(json!({
            "J": j,
            "vertices": w.vertices().len(),
            "loops": w.loop_count(),
            "bracket": b.to_string(),
        }));
    }
    let report = homology_report(&d).map_err(|e| e.to_string())?;
    let table = BigradedHomology::from_entries(&report.homology).to_string();
    let signs: String = d.crossing_signs().iter().map(|s| s.symbol()).collect();
    Ok(json!({
        "diagram": report.diagram,
        "signs": signs,
        "bracket": report.bracket,
        "flattenings": flattenings,
        "homology": report.homology,
        "table": table,
        "euler_check": report.euler_check,
    }))
}

#[wasm_bindgen]
pub fn analyze(pd: &str) -> Result<String, JsError> {
    analyze_value(pd)
        .map(|v| v.to_string())
        .map_err(|e| JsError::new(&e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trefoil() {
        let v = analyze_value("X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)").unwrap();
        assert_eq!(v["flattenings"].as_array().unwrap().len(), 8);
        assert_eq!(v["signs"], "+++");
        assert_eq!(v["euler_check"], true);
        assert!(v["table"].as_str().unwrap().contains("Z/3"));
    }

    #[test]
    fn unknot_and_errors() {
        let v = analyze_value("O").unwrap();
        assert_eq!(v["bracket"], "q^-2 + 1 + q^2");
        assert!(analyze_value("X(1,2").is_err());
        let big = (0..9)
            .map(|k| format!("X({},{},{},{})", 2 * k + 1, 2 * k + 2, 2 * k + 2, 2 * k + 1))
            .collect::<Vec<_>>()
            .join(" ");
        assert!(analyze_value(&big).unwrap_err().contains("stops at"));
    }
}
