//! Decision procedures for the Lenz arrow relation and the congruence it
//! induces on orthogonal sets.
//!
//! `a -> (b_1, ..., b_n)` holds when every non-zero element below `a` has a
//! non-zero meet with some `b_j`. In `P_G` non-zero meets only occur between
//! comparable elements, and the elements below `x*y^-1` are exactly
//! `(x p)*(y p)^-1`, so the relation is decided by a search over extension
//! paths `p`. A node whose element lies below some target is pruned; a node
//! comparable with no target is a counterexample; otherwise every comparable
//! target sits strictly below the node, which bounds the search depth by the
//! longest target path.

use std::collections::{BTreeMap, VecDeque};

use thiserror::Error;

use crate::element::GisElement;
use crate::graph::{DirectedGraph, EdgeId, Path};
use crate::ortho::OrthoSet;

pub const DEFAULT_MAX_ARROW_DEPTH: usize = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LenzError {
    #[error("the arrow relation is only defined between non-zero elements")]
    ZeroInput,
    #[error("arrow search exceeded the depth cap of {0}")]
    DepthExceeded(usize),
    #[error("cover member is not below the covered element")]
    NotBelow,
}

/// Outcome of deciding `a -> B`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ArrowWitness {
    Holds,
    /// `(x p)*(y p)^-1` is a non-zero element below the source that meets no
    /// target. Shortest such `p`, least by edge ids among those.
    Fails(Path),
}

impl ArrowWitness {
    pub fn holds(&self) -> bool {
        matches!(self, ArrowWitness::Holds)
    }
}

/// A failed set-level arrow: `source` is the element of the left set whose
/// arrow fails, with the extension path witnessing the failure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArrowFailure {
    pub source: GisElement,
    pub path: Path,
}

impl ArrowFailure {
    /// The element below `source` that meets nothing on the other side.
    pub fn witness_element(&self) -> GisElement {
        let (x, y) = self.source.paths().expect("non-zero source");
        GisElement::Pair(
            x.concat(&self.path).expect("r(p) = d(x)"),
            y.concat(&self.path).expect("r(p) = d(y)"),
        )
    }
}

/// Which direction of a bi-arrow failed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EquivFailure {
    LeftToRight(ArrowFailure),
    RightToLeft(ArrowFailure),
}

#[derive(Debug, Clone, Copy)]
pub struct Lenz<'g> {
    graph: &'g DirectedGraph,
    max_depth: usize,
}

impl<'g> Lenz<'g> {
    pub fn new(graph: &'g DirectedGraph) -> Self {
        Lenz {
            graph,
            max_depth: DEFAULT_MAX_ARROW_DEPTH,
        }
    }

    pub fn with_max_depth(mut self, max_depth: usize) -> Self {
        self.max_depth = max_depth;
        self
    }

    pub fn graph(&self) -> &'g DirectedGraph {
        self.graph
    }

    /// Decides `a -> targets`.
    pub fn arrow(&self, a: &GisElement, targets: &[GisElement]) -> Result<ArrowWitness, LenzError> {
        let (x, y) = a.paths().ok_or(LenzError::ZeroInput)?;
        if targets.iter().any(GisElement::is_zero) {
            return Err(LenzError::ZeroInput);
        }
        // Breadth-first over extensions in edge id order, so the first
        // counterexample found is the least by length then ids.
        let mut queue = VecDeque::from([Path::empty(x.domain())]);
        while let Some(p) = queue.pop_front() {
            let c = GisElement::Pair(
                x.concat(&p).expect("r(p) = d(x)"),
                y.concat(&p).expect("r(p) = d(y)"),
            );
            if targets.iter().any(|b| c.leq(b)) {
                continue;
            }
            if !targets.iter().any(|b| b.leq(&c)) {
                return Ok(ArrowWitness::Fails(p));
            }
            if p.len() >= self.max_depth {
                return Err(LenzError::DepthExceeded(self.max_depth));
            }
            // With no edges into d(p) the node itself is the only element
            // left on this branch, and it already meets a target.
            queue.extend(self.graph.one_step_extensions(&p).map(|(_, q)| q));
        }
        Ok(ArrowWitness::Holds)
    }

    /// `A -> B`: every member of `A` arrows into `B`.
    pub fn arrow_sets(&self, a: &OrthoSet, b: &OrthoSet) -> Result<bool, LenzError> {
        Ok(self.arrow_sets_witness(a, b)?.is_none())
    }

    pub fn arrow_sets_witness(&self, a: &OrthoSet, b: &OrthoSet) -> Result<Option<ArrowFailure>, LenzError> {
        let targets: Vec<GisElement> = b.iter().cloned().collect();
        for s in a {
            if let ArrowWitness::Fails(path) = self.arrow(s, &targets)? {
                return Ok(Some(ArrowFailure {
                    source: s.clone(),
                    path,
                }));
            }
        }
        Ok(None)
    }

    pub fn bi_arrow(&self, a: &OrthoSet, b: &OrthoSet) -> Result<bool, LenzError> {
        Ok(self.bi_arrow_witness(a, b)?.is_none())
    }

    pub fn bi_arrow_witness(&self, a: &OrthoSet, b: &OrthoSet) -> Result<Option<EquivFailure>, LenzError> {
        if let Some(f) = self.arrow_sets_witness(a, b)? {
            return Ok(Some(EquivFailure::LeftToRight(f)));
        }
        Ok(self.arrow_sets_witness(b, a)?.map(EquivFailure::RightToLeft))
    }

    /// Whether `members`, each below `a`, form a cover of `a`.
    pub fn is_cover(&self, a: &GisElement, members: &[GisElement]) -> Result<bool, LenzError> {
        if a.is_zero() || members.iter().any(GisElement::is_zero) {
            return Err(LenzError::ZeroInput);
        }
        if !members.iter().all(|m| m.leq(a)) {
            return Err(LenzError::NotBelow);
        }
        Ok(self.arrow(a, members)?.holds())
    }

    /// `A ≼ B`: `A <= B` and `B -> A`.
    pub fn preceq(&self, a: &OrthoSet, b: &OrthoSet) -> Result<bool, LenzError> {
        Ok(a.ortho_leq(b) && self.arrow_sets(b, a)?)
    }

    /// The congruence on `D(P_G)`, decided as the bi-arrow relation.
    pub fn equiv(&self, a: &OrthoSet, b: &OrthoSet) -> Result<bool, LenzError> {
        self.bi_arrow(a, b)
    }

    /// Contracts complete one-edge families `{(x a)(y a)^-1 : a into d(x)}`
    /// to `x*y^-1` until none remain. Among the available families the one
    /// with the longest `x`, then the least `(x, y)`, is contracted first.
    pub fn reduce(&self, a: &OrthoSet) -> OrthoSet {
        let g = self.graph;
        let mut elems: Vec<GisElement> = a.iter().cloned().collect();
        loop {
            let mut families: BTreeMap<(Path, Path), Vec<EdgeId>> = BTreeMap::new();
            for s in &elems {
                let (x, y) = s.paths().expect("non-zero");
                let (Some((xb, ea)), Some((yb, eb))) = (x.split_last(g), y.split_last(g)) else {
                    continue;
                };
                if ea == eb {
                    families.entry((xb, yb)).or_default().push(ea);
                }
            }
            let best = families
                .into_iter()
                .filter(|((xb, _), edges)| {
                    let into = g.edges_into(xb.domain());
                    !into.is_empty() && edges.len() == into.len()
                })
                .map(|(key, _)| key)
                .max_by(|(x1, y1), (x2, y2)| {
                    x1.len()
                        .cmp(&x2.len())
                        .then_with(|| (x2, y2).cmp(&(x1, y1)))
                });
            let Some((xb, yb)) = best else {
                return OrthoSet::from_trusted(elems.into_iter().collect());
            };
            elems.retain(|s| {
                let (x, y) = s.paths().expect("non-zero");
                !(x.len() == xb.len() + 1
                    && y.len() == yb.len() + 1
                    && xb.is_prefix_of(x)
                    && yb.is_prefix_of(y)
                    && x.edges().last() == y.edges().last())
            });
            elems.push(GisElement::Pair(xb, yb));
        }
    }
}
