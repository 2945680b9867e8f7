//! Finite directed multigraphs and the paths of the free category they
//! generate.
//!
//! Paths compose right-to-left: a path `x1 x2 ... xn` requires
//! `d(x_i) = r(x_{i+1})`, its range is `r(x1)` and its domain is `d(xn)`.
//! Vertex and edge ids are opaque strings. Internally they are interned as
//! indices into the lexicographically sorted id lists, so index order is id
//! order.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use thiserror::Error;

/// Characters that may not appear in vertex or edge ids because the element
/// grammar uses them.
pub const RESERVED_CHARS: &[char] = &['*', '^', '{', '}', ';', '.', '(', ')', '|', '#', ','];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexId(pub u32);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeId(pub u32);

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("undeclared vertex `{0}`")]
    UndeclaredVertex(String),
    #[error("duplicate id `{0}`")]
    DuplicateId(String),
    #[error("invalid id `{0}`")]
    InvalidId(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown edge `{0}`")]
    UnknownEdge(String),
    #[error("paths do not match: domain {left} is not the range {right}")]
    Mismatch { left: String, right: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct Edge {
    name: String,
    source: VertexId,
    target: VertexId,
}

/// A finite directed multigraph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirectedGraph {
    vertices: Vec<String>,
    edges: Vec<Edge>,
    in_edges: Vec<Vec<EdgeId>>,
    out_edges: Vec<Vec<EdgeId>>,
    vertex_index: HashMap<String, VertexId>,
    edge_index: HashMap<String, EdgeId>,
}

fn check_id(id: &str, is_edge: bool) -> Result<(), GraphError> {
    let bad = id.is_empty()
        || id.chars().any(|c| c.is_whitespace() || RESERVED_CHARS.contains(&c))
        || (is_edge && (id == "0" || id.starts_with("1_")));
    if bad {
        Err(GraphError::InvalidId(id.to_string()))
    } else {
        Ok(())
    }
}

impl DirectedGraph {
    /// Builds a graph from vertex ids and `(edge, source, target)` triples.
    pub fn new<V, E>(vertices: V, edges: E) -> Result<Self, GraphError>
    where
        V: IntoIterator,
        V::Item: Into<String>,
        E: IntoIterator<Item = (String, String, String)>,
    {
        let mut vertex_names: Vec<String> = Vec::new();
        let mut seen = BTreeSet::new();
        for v in vertices {
            let v = v.into();
            check_id(&v, false)?;
            if !seen.insert(v.clone()) {
                return Err(GraphError::DuplicateId(v));
            }
            vertex_names.push(v);
        }
        vertex_names.sort();
        let vertex_index: HashMap<String, VertexId> = vertex_names
            .iter()
            .enumerate()
            .map(|(i, v)| (v.clone(), VertexId(i as u32)))
            .collect();

        let mut raw: Vec<(String, VertexId, VertexId)> = Vec::new();
        let mut edge_seen = BTreeSet::new();
        for (name, source, target) in edges {
            check_id(&name, true)?;
            if !edge_seen.insert(name.clone()) {
                return Err(GraphError::DuplicateId(name));
            }
            let s = *vertex_index
                .get(&source)
                .ok_or(GraphError::UndeclaredVertex(source))?;
            let t = *vertex_index
                .get(&target)
                .ok_or(GraphError::UndeclaredVertex(target))?;
            raw.push((name, s, t));
        }
        raw.sort_by(|a, b| a.0.cmp(&b.0));

        let mut in_edges = vec![Vec::new(); vertex_names.len()];
        let mut out_edges = vec![Vec::new(); vertex_names.len()];
        let mut edge_index = HashMap::new();
        let edges: Vec<Edge> = raw
            .into_iter()
            .enumerate()
            .map(|(i, (name, source, target))| {
                let id = EdgeId(i as u32);
                in_edges[target.0 as usize].push(id);
                out_edges[source.0 as usize].push(id);
                edge_index.insert(name.clone(), id);
                Edge {
                    name,
                    source,
                    target,
                }
            })
            .collect();

        Ok(DirectedGraph {
            vertices: vertex_names,
            edges,
            in_edges,
            out_edges,
            vertex_index,
            edge_index,
        })
    }

    /// Convenience constructor from string slices, used heavily in tests.
    pub fn from_parts(vertices: &[&str], edges: &[(&str, &str, &str)]) -> Result<Self, GraphError> {
        DirectedGraph::new(
            vertices.iter().map(|v| v.to_string()),
            edges
                .iter()
                .map(|(e, s, t)| (e.to_string(), s.to_string(), t.to_string())),
        )
    }

    /// Parses the line-oriented graph file format:
    ///
    /// ```text
    /// # comment
    /// vertex v
    /// edge a v v
    /// ```
    pub fn parse(text: &str) -> Result<Self, GraphError> {
        let mut vertices: Vec<String> = Vec::new();
        let mut declared = BTreeSet::new();
        let mut edges = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let content = raw.split('#').next().unwrap_or("");
            let tokens: Vec<&str> = content.split_whitespace().collect();
            match tokens.as_slice() {
                [] => {}
                ["vertex", id] => {
                    check_id(id, false).map_err(|e| GraphError::Syntax {
                        line,
                        message: e.to_string(),
                    })?;
                    if !declared.insert(id.to_string()) {
                        return Err(GraphError::DuplicateId(id.to_string()));
                    }
                    vertices.push(id.to_string());
                }
                ["edge", id, source, target] => {
                    for v in [source, target] {
                        if !declared.contains(*v) {
                            return Err(GraphError::UndeclaredVertex(v.to_string()));
                        }
                    }
                    check_id(id, true).map_err(|e| GraphError::Syntax {
                        line,
                        message: e.to_string(),
                    })?;
                    edges.push((id.to_string(), source.to_string(), target.to_string()));
                }
                ["vertex", ..] => {
                    return Err(GraphError::Syntax {
                        line,
                        message: "expected `vertex <id>`".into(),
                    })
                }
                ["edge", ..] => {
                    return Err(GraphError::Syntax {
                        line,
                        message: "expected `edge <id> <source> <target>`".into(),
                    })
                }
                [other, ..] => {
                    return Err(GraphError::Syntax {
                        line,
                        message: format!("unknown directive `{other}`"),
                    })
                }
            }
        }
        DirectedGraph::new(vertices, edges)
    }

    /// Serializes back into the graph file format.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for v in &self.vertices {
            out.push_str(&format!("vertex {v}\n"));
        }
        for e in &self.edges {
            out.push_str(&format!(
                "edge {} {} {}\n",
                e.name,
                self.vertex_name(e.source),
                self.vertex_name(e.target)
            ));
        }
        out
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.vertices.len() as u32).map(VertexId)
    }

    pub fn edges(&self) -> impl Iterator<Item = EdgeId> + '_ {
        (0..self.edges.len() as u32).map(EdgeId)
    }

    pub fn vertex(&self, name: &str) -> Result<VertexId, GraphError> {
        self.vertex_index
            .get(name)
            .copied()
            .ok_or_else(|| GraphError::UnknownVertex(name.to_string()))
    }

    pub fn edge(&self, name: &str) -> Result<EdgeId, GraphError> {
        self.edge_index
            .get(name)
            .copied()
            .ok_or_else(|| GraphError::UnknownEdge(name.to_string()))
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertices[v.0 as usize]
    }

    pub fn edge_name(&self, e: EdgeId) -> &str {
        &self.edges[e.0 as usize].name
    }

    /// `d(e)`
    pub fn source(&self, e: EdgeId) -> VertexId {
        self.edges[e.0 as usize].source
    }

    /// `r(e)`
    pub fn target(&self, e: EdgeId) -> VertexId {
        self.edges[e.0 as usize].target
    }

    /// Edges with target `v`, in id order.
    pub fn edges_into(&self, v: VertexId) -> &[EdgeId] {
        &self.in_edges[v.0 as usize]
    }

    /// Edges with source `v`, in id order.
    pub fn edges_out_of(&self, v: VertexId) -> &[EdgeId] {
        &self.out_edges[v.0 as usize]
    }

    pub fn in_degree(&self, v: VertexId) -> usize {
        self.in_edges[v.0 as usize].len()
    }

    pub fn out_degree(&self, v: VertexId) -> usize {
        self.out_edges[v.0 as usize].len()
    }

    /// In-degree by vertex name.
    pub fn in_degree_of(&self, name: &str) -> Result<usize, GraphError> {
        Ok(self.in_degree(self.vertex(name)?))
    }

    pub fn min_in_degree(&self) -> Option<usize> {
        self.vertices().map(|v| self.in_degree(v)).min()
    }

    /// True when every vertex has in-degree at least 2, the standing
    /// hypothesis for the Cuntz-Krieger constructions.
    pub fn all_in_degrees_at_least_two(&self) -> bool {
        self.vertex_count() > 0 && self.vertices().all(|v| self.in_degree(v) >= 2)
    }

    /// The path consisting of a single edge.
    pub fn edge_path(&self, e: EdgeId) -> Path {
        Path {
            edges: vec![e],
            range: self.target(e),
            domain: self.source(e),
        }
    }

    /// Builds a path from a sequence of edge names, checking the matching
    /// condition.
    pub fn path(&self, names: &[&str]) -> Result<Path, GraphError> {
        let ids = names
            .iter()
            .map(|n| self.edge(n))
            .collect::<Result<Vec<_>, _>>()?;
        self.path_from_edges(&ids)
    }

    pub fn path_from_edges(&self, ids: &[EdgeId]) -> Result<Path, GraphError> {
        let (first, rest) = match ids.split_first() {
            Some(split) => split,
            None => {
                return Err(GraphError::Syntax {
                    line: 0,
                    message: "empty edge sequence; use an empty path at a vertex".into(),
                })
            }
        };
        let mut path = self.edge_path(*first);
        for &e in rest {
            path = self.extend(&path, e)?;
        }
        Ok(path)
    }

    /// `p · e`, appending one edge on the right.
    pub fn extend(&self, p: &Path, e: EdgeId) -> Result<Path, GraphError> {
        if p.domain != self.target(e) {
            return Err(GraphError::Mismatch {
                left: self.vertex_name(p.domain).to_string(),
                right: self.vertex_name(self.target(e)).to_string(),
            });
        }
        Ok(p.push_unchecked(e, self.source(e)))
    }

    /// Every one-edge extension `p · e`, in edge id order.
    pub fn one_step_extensions<'a>(&'a self, p: &'a Path) -> impl Iterator<Item = (EdgeId, Path)> + 'a {
        self.edges_into(p.domain)
            .iter()
            .map(move |&e| (e, p.push_unchecked(e, self.source(e))))
    }

    /// All extensions `p · q` with `|q| = steps`.
    pub fn extensions_of_length(&self, p: &Path, steps: usize) -> Vec<Path> {
        let mut layer = vec![p.clone()];
        for _ in 0..steps {
            layer = layer
                .iter()
                .flat_map(|q| self.one_step_extensions(q).map(|(_, r)| r).collect::<Vec<_>>())
                .collect();
        }
        layer
    }

    /// All paths of length at most `max_len`, including empty paths, filtered
    /// by optional range (`target`) and domain (`source`) vertices. The
    /// output is ordered by length, then edge ids, then vertex.
    pub fn enumerate_paths(
        &self,
        max_len: usize,
        source: Option<VertexId>,
        target: Option<VertexId>,
    ) -> Vec<Path> {
        let mut all = Vec::new();
        let mut layer: Vec<Path> = match target {
            Some(t) => vec![Path::empty(t)],
            None => self.vertices().map(Path::empty).collect(),
        };
        for len in 0..=max_len {
            all.extend(layer.iter().cloned());
            if len == max_len {
                break;
            }
            layer = layer
                .iter()
                .flat_map(|p| self.one_step_extensions(p).map(|(_, q)| q).collect::<Vec<_>>())
                .collect();
        }
        if let Some(s) = source {
            all.retain(|p| p.domain == s);
        }
        all.sort_by(|a, b| a.len_lex_cmp(b));
        all
    }

    /// A vertex reachable from every vertex by a (possibly empty) path, if
    /// one exists. The least such vertex by id is returned.
    pub fn has_root(&self) -> Option<VertexId> {
        // A root is reachable from every vertex; search backwards from each
        // candidate along incoming edges.
        self.vertices().find(|&root| {
            let mut seen = vec![false; self.vertex_count()];
            let mut queue = VecDeque::from([root]);
            seen[root.0 as usize] = true;
            while let Some(v) = queue.pop_front() {
                for &e in self.edges_into(v) {
                    let s = self.source(e);
                    if !seen[s.0 as usize] {
                        seen[s.0 as usize] = true;
                        queue.push_back(s);
                    }
                }
            }
            seen.iter().all(|&b| b)
        })
    }

    /// Whether some path runs from `from` to `to`, i.e. has domain `from`
    /// and range `to`.
    pub fn reaches(&self, from: VertexId, to: VertexId) -> bool {
        let mut seen = vec![false; self.vertex_count()];
        let mut queue = VecDeque::from([from]);
        seen[from.0 as usize] = true;
        while let Some(v) = queue.pop_front() {
            if v == to {
                return true;
            }
            for &e in self.edges_out_of(v) {
                let t = self.target(e);
                if !seen[t.0 as usize] {
                    seen[t.0 as usize] = true;
                    queue.push_back(t);
                }
            }
        }
        false
    }

    /// Vertices that are the domain of arbitrarily long paths, equivalently
    /// those `v` for which some right-infinite path continues from `v`.
    pub fn live_vertices(&self) -> Vec<bool> {
        // Iteratively discard vertices whose every incoming edge starts at a
        // discarded vertex.
        let mut live = vec![true; self.vertex_count()];
        loop {
            let mut changed = false;
            for v in self.vertices() {
                if live[v.0 as usize]
                    && !self
                        .edges_into(v)
                        .iter()
                        .any(|&e| live[self.source(e).0 as usize])
                {
                    live[v.0 as usize] = false;
                    changed = true;
                }
            }
            if !changed {
                return live;
            }
        }
    }

    pub fn display_path<'a>(&'a self, p: &'a Path) -> PathDisplay<'a> {
        PathDisplay { graph: self, path: p }
    }
}

/// A finite path, either the empty path `1_v` or a non-empty edge sequence.
///
/// Field order makes the derived ordering compare edge sequences first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    edges: Vec<EdgeId>,
    range: VertexId,
    domain: VertexId,
}

/// Result of [`Path::prefix_comparable`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PrefixOrder {
    Equal,
    /// `x = y z`
    LeftExtendsRight(Path),
    /// `y = x z`
    RightExtendsLeft(Path),
    Incomparable,
}

impl Path {
    pub fn empty(v: VertexId) -> Path {
        Path {
            edges: Vec::new(),
            range: v,
            domain: v,
        }
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// `r(p)`: the target of the leftmost edge.
    pub fn range(&self) -> VertexId {
        self.range
    }

    /// `d(p)`: the source of the rightmost edge.
    pub fn domain(&self) -> VertexId {
        self.domain
    }

    pub fn edges(&self) -> &[EdgeId] {
        &self.edges
    }

    pub(crate) fn push_unchecked(&self, e: EdgeId, new_domain: VertexId) -> Path {
        let mut edges = Vec::with_capacity(self.edges.len() + 1);
        edges.extend_from_slice(&self.edges);
        edges.push(e);
        Path {
            edges,
            range: self.range,
            domain: new_domain,
        }
    }

    /// `self · other`, defined when `d(self) = r(other)`.
    pub fn concat(&self, other: &Path) -> Option<Path> {
        if self.domain != other.range {
            return None;
        }
        let mut edges = Vec::with_capacity(self.edges.len() + other.edges.len());
        edges.extend_from_slice(&self.edges);
        edges.extend_from_slice(&other.edges);
        Some(Path {
            edges,
            range: self.range,
            domain: other.domain,
        })
    }

    /// If `self = prefix · z`, returns `z`.
    pub fn strip_prefix(&self, prefix: &Path) -> Option<Path> {
        if self.range != prefix.range || !self.edges.starts_with(&prefix.edges) {
            return None;
        }
        Some(Path {
            edges: self.edges[prefix.edges.len()..].to_vec(),
            range: prefix.domain,
            domain: self.domain,
        })
    }

    pub fn is_prefix_of(&self, other: &Path) -> bool {
        self.range == other.range && other.edges.starts_with(&self.edges)
    }

    pub fn prefix_comparable(&self, other: &Path) -> PrefixOrder {
        if self == other {
            PrefixOrder::Equal
        } else if let Some(z) = self.strip_prefix(other) {
            PrefixOrder::LeftExtendsRight(z)
        } else if let Some(z) = other.strip_prefix(self) {
            PrefixOrder::RightExtendsLeft(z)
        } else {
            PrefixOrder::Incomparable
        }
    }

    pub fn is_comparable(&self, other: &Path) -> bool {
        self.is_prefix_of(other) || other.is_prefix_of(self)
    }

    /// The path with its last edge removed, together with that edge.
    pub fn split_last(&self, graph: &DirectedGraph) -> Option<(Path, EdgeId)> {
        let (&last, rest) = self.edges.split_last()?;
        Some((
            Path {
                edges: rest.to_vec(),
                range: self.range,
                domain: graph.target(last),
            },
            last,
        ))
    }

    /// Length first, then edge ids, then vertex.
    pub fn len_lex_cmp(&self, other: &Path) -> std::cmp::Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.edges.cmp(&other.edges))
            .then_with(|| self.range.cmp(&other.range))
    }
}

pub struct PathDisplay<'a> {
    graph: &'a DirectedGraph,
    path: &'a Path,
}

impl fmt::Display for PathDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.path.is_empty() {
            write!(f, "1_{}", self.graph.vertex_name(self.path.range))
        } else {
            for &e in &self.path.edges {
                f.write_str(self.graph.edge_name(e))?;
            }
            Ok(())
        }
    }
}
