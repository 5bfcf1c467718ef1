//! WebAssembly bindings for the browser demo in `www/`.
//!
//! Every export takes plain strings and returns a JSON object with an `ok`
//! field, so the page needs no generated types.

use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use pcml_core::equivalence::decide_universal_equivalence;
use pcml_core::structure::annihilator_generators;
use pcml_core::{parse_lie, Graph, PCAlgebra, Vertex};

fn respond(result: Result<Value, String>) -> String {
    match result {
        Ok(mut v) => {
            v["ok"] = json!(true);
            v.to_string()
        }
        Err(e) => json!({ "ok": false, "error": e }).to_string(),
    }
}

fn graph(text: &str, label: &str) -> Result<Graph, String> {
    Graph::parse(text).map_err(|e| format!("{label}: {e}"))
}

/// Vertices, edges and vertex roles of a tree, with its `T'` and `T*`
/// given by the original vertex numbers they keep.
fn tree_view(t: &Graph) -> Result<Value, String> {
    let classes = t.classify_vertices();
    let prime = t.t_prime().map_err(|e| e.to_string())?;
    let star = t.t_star().map_err(|e| e.to_string())?;
    let edges: Vec<[Vertex; 2]> = t.edges().into_iter().map(|(a, b)| [a, b]).collect();
    Ok(json!({
        "vertices": t.n(),
        "edges": edges,
        "endpoints": classes.endpoints,
        "unnecessary": classes.unnecessary_endpoints,
        "t_prime": prime.origin,
        "t_star": star.origin,
        "canonical": star.graph.tree_canonical_form().map_err(|e| e.to_string())?,
    }))
}

/// Canonical form of `expr` in the ring defined by `graph_text`.
#[wasm_bindgen]
pub fn normal_form(graph_text: &str, expr: &str) -> String {
    respond((|| {
        let alg = PCAlgebra::new(graph(graph_text, "graph")?);
        let e = parse_lie(expr).map_err(|e| e.to_string())?;
        let p = alg.normal_form(&e).map_err(|e| e.to_string())?;
        Ok(json!({ "normal_form": p.to_string(), "terms": p.len() }))
    })())
}

/// Universal equivalence of two trees, with both trees for drawing.
#[wasm_bindgen]
pub fn decide(first: &str, second: &str) -> String {
    respond((|| {
        let t1 = graph(first, "first tree")?;
        let t2 = graph(second, "second tree")?;
        let v = decide_universal_equivalence(&t1, &t2).map_err(|e| e.to_string())?;
        Ok(json!({
            "equivalent": v.equivalent,
            "certificate": [v.certificate.0, v.certificate.1],
            "trees": [tree_view(&t1)?, tree_view(&t2)?],
        }))
    })())
}

/// Generators of the annihilator of `[xi, xj]`.
#[wasm_bindgen]
pub fn annihilator(graph_text: &str, i: u32, j: u32) -> String {
    respond((|| {
        let alg = PCAlgebra::new(graph(graph_text, "graph")?);
        alg.graph().check_vertex(i).map_err(|e| e.to_string())?;
        alg.graph().check_vertex(j).map_err(|e| e.to_string())?;
        let ideal = annihilator_generators(&alg, i, j).map_err(|e| e.to_string())?;
        let gens: Vec<String> = ideal.generators.iter().map(ToString::to_string).collect();
        Ok(json!({ "generators": gens, "text": ideal.to_string() }))
    })())
}
