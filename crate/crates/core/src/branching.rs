//! Finite branching systems and the representations they induce.
//!
//! A system assigns a finite set `X_v` to each vertex and an injective map
//! `X_{d(e)} -> X_{r(e)}` to each edge. It is strong when, at every vertex,
//! the images of the incoming edges are pairwise disjoint and cover `X_v`.
//! A path acts by composing its edge maps and `x y⁻¹` acts as
//! `θ(x) ∘ θ(y)⁻¹`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::ck::CkElement;
use crate::element::GisElement;
use crate::graph::{DirectedGraph, EdgeId, Path, VertexId};
use crate::ortho::OrthoSet;

/// A point of the disjoint union of the carriers: vertex and index into the
/// carrier's label list.
pub type Point = (VertexId, usize);

/// A partial injection of the disjoint union of the carriers.
pub type PartialInjection = BTreeMap<Point, Point>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BranchingError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("the system is not strong: {0}")]
    NotStrong(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BranchingSystem {
    labels: Vec<Vec<String>>,
    /// Per edge, `from index -> to index`. Duplicated sources are kept so
    /// validation can report them.
    maps: Vec<Vec<(usize, usize)>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StrongReport {
    pub issues: Vec<String>,
    /// Explanation when finite carriers cannot satisfy the strong condition
    /// on this graph at all.
    pub cardinality_note: Option<String>,
}

impl StrongReport {
    pub fn is_strong(&self) -> bool {
        self.issues.is_empty()
    }
}

impl BranchingSystem {
    /// Builds a system from per-vertex labels and per-edge `(from, to)`
    /// label pairs.
    pub fn new(
        graph: &DirectedGraph,
        carriers: &[(&str, &[&str])],
        maps: &[(&str, &[(&str, &str)])],
    ) -> Result<BranchingSystem, BranchingError> {
        let mut text = String::new();
        for (v, elems) in carriers {
            text.push_str(&format!("carrier {v} {}\n", elems.join(" ")));
        }
        for (e, pairs) in maps {
            for (from, to) in pairs.iter() {
                text.push_str(&format!("map {e} {from} {to}\n"));
            }
        }
        BranchingSystem::parse(graph, &text)
    }

    /// Reads `carrier <vertex> <elem>...` and `map <edge> <from> <to>`
    /// lines. `#` starts a comment. Carriers must be declared before the
    /// maps that use them.
    pub fn parse(graph: &DirectedGraph, text: &str) -> Result<BranchingSystem, BranchingError> {
        let mut labels: Vec<Vec<String>> = vec![Vec::new(); graph.vertex_count()];
        let mut declared = vec![false; graph.vertex_count()];
        let mut maps: Vec<Vec<(usize, usize)>> = vec![Vec::new(); graph.edge_count()];
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let err = |message: String| BranchingError::Syntax { line, message };
            let content = raw.split('#').next().unwrap_or("").trim();
            let words: Vec<&str> = content.split_whitespace().collect();
            match words.as_slice() {
                [] => {}
                ["carrier", v, elems @ ..] => {
                    let v = graph.vertex(v).map_err(|e| err(e.to_string()))?;
                    if declared[v.0 as usize] {
                        return Err(err(format!("carrier of {} declared twice", graph.vertex_name(v))));
                    }
                    declared[v.0 as usize] = true;
                    let mut seen = BTreeSet::new();
                    for x in elems {
                        if !seen.insert(*x) {
                            return Err(err(format!("element {x} repeated")));
                        }
                        labels[v.0 as usize].push(x.to_string());
                    }
                }
                ["map", e, from, to] => {
                    let e = graph.edge(e).map_err(|e| err(e.to_string()))?;
                    let (d, r) = (graph.source(e), graph.target(e));
                    let find = |v: VertexId, x: &str| {
                        labels[v.0 as usize].iter().position(|l| l == x).ok_or_else(|| {
                            err(format!("{x} is not in the carrier of {}", graph.vertex_name(v)))
                        })
                    };
                    let pair = (find(d, from)?, find(r, to)?);
                    maps[e.0 as usize].push(pair);
                }
                _ => {
                    return Err(err(format!("expected `carrier <vertex> <elem>...` or `map <edge> <from> <to>`, got `{content}`")))
                }
            }
        }
        Ok(BranchingSystem { labels, maps })
    }

    pub fn label(&self, p: Point) -> &str {
        &self.labels[p.0 .0 as usize][p.1]
    }

    pub fn carrier_size(&self, v: VertexId) -> usize {
        self.labels[v.0 as usize].len()
    }

    pub fn validate_strong(&self, graph: &DirectedGraph) -> StrongReport {
        let mut issues = Vec::new();
        let vname = |v: VertexId| graph.vertex_name(v).to_string();
        for v in graph.vertices() {
            if self.labels[v.0 as usize].is_empty() {
                issues.push(format!("carrier of {} is empty", vname(v)));
            }
        }
        for e in graph.edges() {
            let name = graph.edge_name(e);
            let (d, r) = (graph.source(e), graph.target(e));
            let pairs = &self.maps[e.0 as usize];
            let mut seen_from = BTreeMap::new();
            for &(from, to) in pairs {
                if let Some(&old) = seen_from.get(&from) {
                    if old != to {
                        issues.push(format!("map {name} sends {} to two elements", self.labels[d.0 as usize][from]));
                    }
                }
                seen_from.insert(from, to);
            }
            for (i, x) in self.labels[d.0 as usize].iter().enumerate() {
                if !seen_from.contains_key(&i) {
                    issues.push(format!("map {name} is undefined on {x}"));
                }
            }
            let mut hit: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
            for (&from, &to) in &seen_from {
                hit.entry(to).or_default().push(from);
            }
            for (to, froms) in hit.iter().filter(|(_, f)| f.len() > 1) {
                let shown: Vec<&str> = froms.iter().map(|&i| self.labels[d.0 as usize][i].as_str()).collect();
                issues.push(format!(
                    "map {name} is not injective: {} all go to {}",
                    shown.join(", "),
                    self.labels[r.0 as usize][*to]
                ));
            }
        }
        for v in graph.vertices() {
            let mut owner: BTreeMap<usize, EdgeId> = BTreeMap::new();
            let mut images = 0;
            for &e in graph.edges_into(v) {
                images += self.carrier_size(graph.source(e));
                let tos: BTreeSet<usize> = self.maps[e.0 as usize].iter().map(|&(_, t)| t).collect();
                for t in tos {
                    if let Some(&other) = owner.get(&t) {
                        issues.push(format!(
                            "images of {} and {} meet at {}",
                            graph.edge_name(other),
                            graph.edge_name(e),
                            self.labels[v.0 as usize][t]
                        ));
                    } else {
                        owner.insert(t, e);
                    }
                }
            }
            let missed: Vec<&str> = self.labels[v.0 as usize]
                .iter()
                .enumerate()
                .filter(|(i, _)| !owner.contains_key(i))
                .map(|(_, l)| l.as_str())
                .collect();
            if !missed.is_empty() {
                issues.push(format!("{} not covered at {}", missed.join(", "), vname(v)));
            }
            if images != self.carrier_size(v) {
                issues.push(format!(
                    "|X_{}| = {} but the incoming edges bring {} elements",
                    vname(v),
                    self.carrier_size(v),
                    images
                ));
            }
        }
        StrongReport {
            issues,
            cardinality_note: cardinality_obstruction(graph),
        }
    }

    /// Returns a handle for computing representations once the system is
    /// strong.
    pub fn strong<'a>(&'a self, graph: &'a DirectedGraph) -> Result<StrongSystem<'a>, BranchingError> {
        let report = self.validate_strong(graph);
        if let Some(first) = report.issues.first() {
            return Err(BranchingError::NotStrong(first.clone()));
        }
        Ok(StrongSystem { graph, system: self })
    }
}

/// With non-empty finite carriers the strong condition forces
/// `|X_v| = Σ |X_{d(e)}|` over edges into `v`. If every in-degree is at
/// least 2 then a smallest carrier would be at least twice its own size.
pub fn cardinality_obstruction(graph: &DirectedGraph) -> Option<String> {
    if graph.vertex_count() > 0 && graph.all_in_degrees_at_least_two() {
        Some(
            "every in-degree is at least 2, so a smallest carrier X would need |X| >= 2|X|: \
             no strong system with non-empty finite carriers exists on this graph"
                .to_string(),
        )
    } else {
        None
    }
}

/// A system known to be strong.
#[derive(Debug, Clone, Copy)]
pub struct StrongSystem<'a> {
    graph: &'a DirectedGraph,
    system: &'a BranchingSystem,
}

impl<'a> StrongSystem<'a> {
    pub fn system(&self) -> &'a BranchingSystem {
        self.system
    }

    fn edge_map(&self, e: EdgeId) -> BTreeMap<usize, usize> {
        self.system.maps[e.0 as usize].iter().copied().collect()
    }

    /// `θ(x)`: a total injection `X_{d(x)} -> X_{r(x)}`.
    pub fn path_map(&self, x: &Path) -> PartialInjection {
        let d = x.domain();
        let mut out = PartialInjection::new();
        for i in 0..self.system.carrier_size(d) {
            let mut cur = i;
            for &e in x.edges().iter().rev() {
                cur = self.edge_map(e)[&cur];
            }
            out.insert((d, i), (x.range(), cur));
        }
        out
    }

    pub fn identity_on(&self, v: VertexId) -> PartialInjection {
        (0..self.system.carrier_size(v)).map(|i| ((v, i), (v, i))).collect()
    }

    pub fn represent(&self, s: &GisElement) -> PartialInjection {
        let Some((x, y)) = s.paths() else {
            return PartialInjection::new();
        };
        let tx = self.path_map(x);
        self.path_map(y)
            .into_iter()
            .map(|(from, to)| (to, tx[&from]))
            .collect()
    }

    /// Union of the representations of the members; the members are
    /// orthogonal, so the union is again a partial injection.
    pub fn represent_ortho(&self, a: &OrthoSet) -> PartialInjection {
        a.iter().flat_map(|s| self.represent(s)).collect()
    }

    pub fn represent_ck(&self, a: &CkElement) -> PartialInjection {
        self.represent_ortho(a.rep())
    }

    pub fn display<'b>(&'b self, f: &'b PartialInjection) -> InjectionDisplay<'b> {
        InjectionDisplay {
            graph: self.graph,
            system: self.system,
            map: f,
        }
    }
}

/// `f ∘ g` for partial injections.
pub fn compose(f: &PartialInjection, g: &PartialInjection) -> PartialInjection {
    g.iter()
        .filter_map(|(from, mid)| f.get(mid).map(|to| (*from, *to)))
        .collect()
}

pub struct InjectionDisplay<'a> {
    graph: &'a DirectedGraph,
    system: &'a BranchingSystem,
    map: &'a PartialInjection,
}

impl fmt::Display for InjectionDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (from, to)) in self.map.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(
                f,
                "{}:{} -> {}:{}",
                self.graph.vertex_name(from.0),
                self.system.label(*from),
                self.graph.vertex_name(to.0),
                self.system.label(*to)
            )?;
        }
        f.write_str("}")
    }
}
