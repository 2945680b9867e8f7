//! Partial bijections of the space of right-infinite paths.
//!
//! A pair `(x, y)` with `d(x) = d(y)` acts on infinite paths by
//! `y w ↦ x w`. A [`CylinderMap`] is a finite list of such pairs with
//! pairwise disjoint domain cylinders and pairwise disjoint image cylinders.
//! Infinite paths are never built: every question is answered after
//! refining pairs to a uniform domain depth, which is sound once every
//! vertex has in-degree at least 2 (distinct paths of equal length then
//! name disjoint, non-empty cylinders).

use std::collections::BTreeSet;

use thiserror::Error;

use crate::ck::{require_in_degree_two, CkError};
use crate::element::GisElement;
use crate::graph::{DirectedGraph, Path};
use crate::ortho::OrthoSet;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OmegaError {
    #[error(transparent)]
    Precondition(#[from] CkError),
    #[error("prefix of length {got} is too short; need at least {needed}")]
    PrefixTooShort { needed: usize, got: usize },
    #[error("refinement depth {requested} is below the longest domain path {needed}")]
    DepthTooSmall { requested: usize, needed: usize },
    #[error("pairs overlap on the {0} side")]
    Overlap(&'static str),
    #[error("pair paths have different domains")]
    DomainMismatch,
}

/// A finite description of a partial bijection `⋃ y_i G^ω → ⋃ x_i G^ω`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct CylinderMap {
    /// `(image path, domain path)`
    pairs: BTreeSet<(Path, Path)>,
}

impl CylinderMap {
    pub fn empty() -> CylinderMap {
        CylinderMap::default()
    }

    pub fn pairs(&self) -> impl Iterator<Item = &(Path, Path)> {
        self.pairs.iter()
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn max_domain_len(&self) -> usize {
        self.pairs.iter().map(|(_, y)| y.len()).max().unwrap_or(0)
    }

    pub fn invert(&self) -> CylinderMap {
        CylinderMap {
            pairs: self.pairs.iter().map(|(x, y)| (y.clone(), x.clone())).collect(),
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct OmegaModel<'g> {
    graph: &'g DirectedGraph,
}

impl<'g> OmegaModel<'g> {
    pub fn new(graph: &'g DirectedGraph) -> Result<Self, OmegaError> {
        require_in_degree_two(graph)?;
        Ok(OmegaModel { graph })
    }

    pub fn graph(&self) -> &'g DirectedGraph {
        self.graph
    }

    pub fn from_ortho_set(&self, a: &OrthoSet) -> CylinderMap {
        CylinderMap {
            pairs: a
                .iter()
                .map(|s| {
                    let (x, y) = s.paths().expect("non-zero");
                    (x.clone(), y.clone())
                })
                .collect(),
        }
    }

    pub fn from_element(&self, s: &GisElement) -> CylinderMap {
        self.from_ortho_set(&OrthoSet::iota(s))
    }

    /// Validates a raw pair list.
    pub fn from_pairs<I: IntoIterator<Item = (Path, Path)>>(&self, pairs: I) -> Result<CylinderMap, OmegaError> {
        let list: Vec<(Path, Path)> = pairs.into_iter().collect();
        for (i, (x, y)) in list.iter().enumerate() {
            if x.domain() != y.domain() {
                return Err(OmegaError::DomainMismatch);
            }
            for (u, v) in &list[i + 1..] {
                if x.is_comparable(u) {
                    return Err(OmegaError::Overlap("image"));
                }
                if y.is_comparable(v) {
                    return Err(OmegaError::Overlap("domain"));
                }
            }
        }
        Ok(CylinderMap {
            pairs: list.into_iter().collect(),
        })
    }

    /// The identity on `v G^ω`.
    pub fn identity_at(&self, v: crate::graph::VertexId) -> CylinderMap {
        let one = Path::empty(v);
        CylinderMap {
            pairs: BTreeSet::from([(one.clone(), one)]),
        }
    }

    /// Replaces each pair `(x, y)` by `(x p, y p)` for all `p` making
    /// `|y p| = depth`. The represented partial bijection is unchanged.
    pub fn refine(&self, m: &CylinderMap, depth: usize) -> Result<CylinderMap, OmegaError> {
        let needed = m.max_domain_len();
        if depth < needed {
            return Err(OmegaError::DepthTooSmall {
                requested: depth,
                needed,
            });
        }
        let mut pairs = BTreeSet::new();
        for (x, y) in &m.pairs {
            for p in self
                .graph
                .extensions_of_length(&Path::empty(y.domain()), depth - y.len())
            {
                pairs.insert((
                    x.concat(&p).expect("r(p) = d(x)"),
                    y.concat(&p).expect("r(p) = d(y)"),
                ));
            }
        }
        Ok(CylinderMap { pairs })
    }

    pub fn maps_equal(&self, m1: &CylinderMap, m2: &CylinderMap) -> bool {
        let depth = m1.max_domain_len().max(m2.max_domain_len());
        let r1 = self.refine(m1, depth).expect("depth is the maximum");
        let r2 = self.refine(m2, depth).expect("depth is the maximum");
        r1 == r2
    }

    /// `m1 ∘ m2`: apply `m2`, then `m1`.
    pub fn compose(&self, m1: &CylinderMap, m2: &CylinderMap) -> CylinderMap {
        let needed = m1.max_domain_len();
        let mut pairs = BTreeSet::new();
        for (x2, y2) in &m2.pairs {
            let steps = needed.saturating_sub(x2.len());
            for p in self.graph.extensions_of_length(&Path::empty(x2.domain()), steps) {
                let mid = x2.concat(&p).expect("r(p) = d(x2)");
                let start = y2.concat(&p).expect("r(p) = d(y2)");
                // Domains of m1 are disjoint, so at most one strips.
                if let Some((x1, z)) = m1
                    .pairs
                    .iter()
                    .find_map(|(x1, y1)| mid.strip_prefix(y1).map(|z| (x1, z)))
                {
                    pairs.insert((x1.concat(&z).expect("r(z) = d(y1) = d(x1)"), start));
                }
            }
        }
        CylinderMap { pairs }
    }

    /// Applies the map to a finite prefix of an infinite path. The prefix
    /// must be at least as long as every domain path so that membership is
    /// decided.
    pub fn apply(&self, m: &CylinderMap, prefix: &Path) -> Result<Option<Path>, OmegaError> {
        let needed = m.max_domain_len();
        if prefix.len() < needed {
            return Err(OmegaError::PrefixTooShort {
                needed,
                got: prefix.len(),
            });
        }
        Ok(m.pairs.iter().find_map(|(x, y)| {
            prefix
                .strip_prefix(y)
                .map(|rest| x.concat(&rest).expect("r(rest) = d(y) = d(x)"))
        }))
    }
}

/// Whether the natural action sends `s` to the empty partial bijection.
/// Defined for every graph: `x*y^-1` acts on `y G^ω`, which is empty exactly
/// when no infinite path continues from `d(y)`.
pub fn action_is_empty(graph: &DirectedGraph, s: &GisElement) -> bool {
    match s.paths() {
        None => true,
        Some((_, y)) => !graph.live_vertices()[y.domain().0 as usize],
    }
}
