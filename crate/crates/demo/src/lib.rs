//! Browser bindings: spectrum report, unreliability curve and dominance
//! comparison for a graph given as a builder spec or graph6 text.

use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use umrg::graph6::{from_graph6, to_graph6};
use umrg::spectrum::{compare, cutset_spectrum, is_superconnected, tree_number};
use umrg::{Family, Graph};

/// Largest curve resolution accepted from the page.
pub const MAX_POINTS: usize = 2001;

fn parse_graph(text: &str) -> Result<Graph, String> {
    let text = text.trim();
    match text.parse::<Family>() {
        Ok(family) => family.build().map_err(|e| e.to_string()),
        Err(_) => from_graph6(text).map_err(|e| format!("`{text}` is neither a builder spec nor graph6: {e}")),
    }
}

pub fn spectrum_report_json(spec: &str) -> Result<Value, String> {
    let g = parse_graph(spec)?;
    let s = cutset_spectrum(&g).map_err(|e| e.to_string())?;
    Ok(json!({
        "graph6": to_graph6(&g),
        "nodes": g.node_count(),
        "edges": g.edge_count(),
        "spectrum": s.counts,
        "edge_connectivity": s.edge_connectivity(),
        "tree_number": tree_number(&g).to_string(),
        "superconnected": is_superconnected(&g).map_err(|e| e.to_string())?,
    }))
}

pub fn unreliability_curve_json(spec: &str, points: usize) -> Result<Value, String> {
    if !(2..=MAX_POINTS).contains(&points) {
        return Err(format!("points must lie in 2..={MAX_POINTS}"));
    }
    let g = parse_graph(spec)?;
    let s = cutset_spectrum(&g).map_err(|e| e.to_string())?;
    let table = s.polynomial().table(points);
    Ok(json!({
        "graph6": to_graph6(&g),
        "rho": table.iter().map(|p| p.0).collect::<Vec<_>>(),
        "unreliability": table.iter().map(|p| p.1).collect::<Vec<_>>(),
    }))
}

pub fn compare_graphs_json(a: &str, b: &str) -> Result<Value, String> {
    let (ga, gb) = (parse_graph(a)?, parse_graph(b)?);
    let sa = cutset_spectrum(&ga).map_err(|e| e.to_string())?;
    let sb = cutset_spectrum(&gb).map_err(|e| e.to_string())?;
    let cmp = compare(&sa, &sb).map_err(|e| e.to_string())?;
    Ok(json!({
        "a": { "graph6": to_graph6(&ga), "spectrum": sa.counts },
        "b": { "graph6": to_graph6(&gb), "spectrum": sb.counts },
        "comparison": cmp,
    }))
}

fn to_js(result: Result<Value, String>) -> Result<String, JsError> {
    result.map(|v| v.to_string()).map_err(|e| JsError::new(&e))
}

/// JSON with the spectrum, edge connectivity, tree number and
/// superconnectivity of the graph.
#[wasm_bindgen]
pub fn spectrum_report(spec: &str) -> Result<String, JsError> {
    to_js(spectrum_report_json(spec))
}

/// JSON with `points` evenly spaced failure probabilities and the matching
/// unreliability values.
#[wasm_bindgen]
pub fn unreliability_curve(spec: &str, points: usize) -> Result<String, JsError> {
    to_js(unreliability_curve_json(spec, points))
}

/// JSON with both spectra and the coefficient-dominance comparison.
#[wasm_bindgen]
pub fn compare_graphs(a: &str, b: &str) -> Result<String, JsError> {
    to_js(compare_graphs_json(a, b))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn report_for_k44() {
        let v = spectrum_report_json("complete_bipartite:4,4").unwrap();
        assert_eq!(v["spectrum"][5], 96);
        assert_eq!(v["tree_number"], "4096");
        assert_eq!(v["edge_connectivity"], 4);
        assert_eq!(spectrum_report_json("G?~vf_").unwrap(), v);
    }

    #[test]
    fn curve_has_requested_points_and_endpoints() {
        let v = unreliability_curve_json("cycle:5", 11).unwrap();
        let u = v["unreliability"].as_array().unwrap();
        assert_eq!(u.len(), 11);
        assert_eq!(u[0], 0.0);
        assert_eq!(u[10], 1.0);
        assert!(unreliability_curve_json("cycle:5", 1).is_err());
    }

    #[test]
    fn comparison_of_equal_size_graphs() {
        let v = compare_graphs_json("complete_bipartite:4,4", "moebius:4").unwrap_err();
        assert!(v.contains("edge"), "{v}");
        let v = compare_graphs_json("moebius:4", "cycle:8").unwrap_err();
        assert!(!v.is_empty());
        // the Moebius ladder on six nodes is K_{3,3}
        let v = compare_graphs_json("complete_bipartite:3,3", "moebius:3").unwrap();
        assert_eq!(v["a"]["spectrum"].as_array().unwrap().len(), 10);
        assert_eq!(v["comparison"]["dominates"], true);
        assert_eq!(v["comparison"]["first_divergence"], Value::Null);
        let v = compare_graphs_json("complete_bipartite:4,4", "G?Fnvs").unwrap();
        assert_eq!(v["comparison"]["dominates"], true);
    }

    #[test]
    fn bad_input_is_reported() {
        assert!(spectrum_report_json("not a graph!").is_err());
    }
}
