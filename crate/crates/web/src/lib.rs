//! Browser bindings for the demo page in `www/`.
//!
//! Every export takes the graph as text in the usual file format, so the
//! page stays stateless. The plain functions are what the wrappers call and
//! what the native tests exercise.

use serde::Serialize;
use wasm_bindgen::prelude::*;

use grism_core::eval::Evaluator;
use grism_core::lenz::EquivFailure;
use grism_core::omega::OmegaModel;
use grism_core::{DirectedGraph, Lenz, Path};

fn graph(text: &str) -> Result<DirectedGraph, String> {
    DirectedGraph::parse(text).map_err(|e| format!("graph: {e}"))
}

/// Evaluates an expression and prints the result.
pub fn eval_text(graph_text: &str, expr: &str) -> Result<String, String> {
    let g = graph(graph_text)?;
    let v = Evaluator::new(&g).eval_str(expr).map_err(|e| e.to_string())?;
    Ok(v.display(&g).to_string())
}

/// Reduces an expression's orthogonal set to canonical form.
pub fn canon_text(graph_text: &str, expr: &str) -> Result<String, String> {
    let g = graph(graph_text)?;
    let set = Evaluator::new(&g).eval_str(expr).map_err(|e| e.to_string())?.to_set();
    Ok(Lenz::new(&g).reduce(&set).display(&g).to_string())
}

#[derive(Serialize)]
pub struct EquivAnswer {
    pub equivalent: bool,
    pub direction: Option<&'static str>,
    pub witness: Option<String>,
}

pub fn equiv_answer(graph_text: &str, left: &str, right: &str) -> Result<EquivAnswer, String> {
    let g = graph(graph_text)?;
    let ev = Evaluator::new(&g);
    let a = ev.eval_str(left).map_err(|e| e.to_string())?.to_set();
    let b = ev.eval_str(right).map_err(|e| e.to_string())?.to_set();
    let failure = Lenz::new(&g).bi_arrow_witness(&a, &b).map_err(|e| e.to_string())?;
    Ok(match failure {
        None => EquivAnswer {
            equivalent: true,
            direction: None,
            witness: None,
        },
        Some(f) => {
            let (dir, w) = match &f {
                EquivFailure::LeftToRight(w) => ("left-to-right", w),
                EquivFailure::RightToLeft(w) => ("right-to-left", w),
            };
            EquivAnswer {
                equivalent: false,
                direction: Some(dir),
                witness: Some(w.witness_element().display(&g).to_string()),
            }
        }
    })
}

/// A cylinder drawn as a sub-interval of `[0, 1)` at its range vertex.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Interval {
    pub vertex: String,
    pub path: String,
    pub lo: f64,
    pub hi: f64,
}

#[derive(Serialize)]
pub struct Piece {
    pub domain: Interval,
    pub image: Interval,
}

/// Each vertex's infinite paths fill `[0, 1)`, split evenly among the
/// edges arriving at it, recursively.
pub fn interval(g: &DirectedGraph, p: &Path) -> Interval {
    let (mut lo, mut width) = (0.0, 1.0);
    for &e in p.edges() {
        let into = g.edges_into(g.target(e));
        let i = into.iter().position(|&f| f == e).expect("edge arrives at its target");
        width /= into.len() as f64;
        lo += i as f64 * width;
    }
    Interval {
        vertex: g.vertex_name(p.range()).to_string(),
        path: g.display_path(p).to_string(),
        lo,
        hi: lo + width,
    }
}

/// The cylinder map of an expression as domain/image interval pairs.
pub fn cylinder_pieces(graph_text: &str, expr: &str) -> Result<Vec<Piece>, String> {
    let g = graph(graph_text)?;
    let om = OmegaModel::new(&g).map_err(|e| e.to_string())?;
    let set = Evaluator::new(&g).eval_str(expr).map_err(|e| e.to_string())?.to_set();
    let map = om.from_ortho_set(&set);
    Ok(map
        .pairs()
        .map(|(x, y)| Piece {
            domain: interval(&g, y),
            image: interval(&g, x),
        })
        .collect())
}

fn js<T: Serialize>(r: Result<T, String>) -> Result<String, JsValue> {
    r.map(|v| serde_json::to_string(&v).expect("plain data serializes"))
        .map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn eval(graph_text: &str, expr: &str) -> Result<String, JsValue> {
    eval_text(graph_text, expr).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn canon(graph_text: &str, expr: &str) -> Result<String, JsValue> {
    canon_text(graph_text, expr).map_err(|e| JsValue::from_str(&e))
}

/// JSON: `{equivalent, direction, witness}`.
#[wasm_bindgen]
pub fn equiv(graph_text: &str, left: &str, right: &str) -> Result<String, JsValue> {
    js(equiv_answer(graph_text, left, right))
}

/// JSON array of `{domain, image}` intervals.
#[wasm_bindgen]
pub fn cylinders(graph_text: &str, expr: &str) -> Result<String, JsValue> {
    js(cylinder_pieces(graph_text, expr))
}
