//! Small graphs used throughout the test suites, the CLI and the demo.

use crate::graph::DirectedGraph;

/// One vertex `v` with `n` loops named `a`, `b`, `c`, ... (n <= 26).
pub fn polycyclic(n: usize) -> DirectedGraph {
    assert!(n <= 26, "at most 26 named loops");
    let names: Vec<String> = (0..n).map(|i| ((b'a' + i as u8) as char).to_string()).collect();
    DirectedGraph::new(
        ["v"],
        names.iter().map(|e| (e.clone(), "v".to_string(), "v".to_string())),
    )
    .expect("valid polycyclic graph")
}

/// Vertices `u`, `v` with edges `e1, e2: u -> v` and `f1, f2: v -> u`.
pub fn two_vertex() -> DirectedGraph {
    DirectedGraph::from_parts(
        &["u", "v"],
        &[
            ("e1", "u", "v"),
            ("e2", "u", "v"),
            ("f1", "v", "u"),
            ("f2", "v", "u"),
        ],
    )
    .expect("valid two-vertex graph")
}

/// Three levels `r <- p <- q` with doubled edges `g1, g2: p -> r` and
/// `h1, h2: q -> p`.
pub fn bratteli_b() -> DirectedGraph {
    DirectedGraph::from_parts(
        &["r", "p", "q"],
        &[
            ("g1", "p", "r"),
            ("g2", "p", "r"),
            ("h1", "q", "p"),
            ("h2", "q", "p"),
        ],
    )
    .expect("valid Bratteli graph")
}

/// A single vertex and no edges.
pub fn lone_vertex() -> DirectedGraph {
    DirectedGraph::from_parts(&["v"], &[]).expect("valid graph")
}

/// Vertex `v` with a loop `a` and two further incoming edges from sources
/// `s` and `t` (in-degrees: v = 3, s = t = 0).
pub fn mixed_sources() -> DirectedGraph {
    DirectedGraph::from_parts(
        &["s", "t", "v"],
        &[("a", "v", "v"), ("c", "s", "v"), ("d", "t", "v")],
    )
    .expect("valid graph")
}

/// `v <- u` with `v` carrying two loops and `u` one loop (in-degrees 3 and 1).
pub fn mixed_in_degree_one() -> DirectedGraph {
    DirectedGraph::from_parts(
        &["u", "v"],
        &[("a", "v", "v"), ("b", "v", "v"), ("e", "u", "v"), ("l", "u", "u")],
    )
    .expect("valid graph")
}

/// Vertices `u`, `w` each with one loop, both feeding `v`: `e: u -> v`,
/// `f: w -> v`. Admits finite strong branching systems.
pub fn fan() -> DirectedGraph {
    DirectedGraph::from_parts(
        &["u", "v", "w"],
        &[("e", "u", "v"), ("f", "w", "v"), ("l", "u", "u"), ("m", "w", "w")],
    )
    .expect("valid graph")
}
