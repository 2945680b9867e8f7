//! The Cuntz-Krieger semigroup `CK_G = D(P_G) / ≡`.
//!
//! Classes are stored by a reduced representative; equality always falls
//! back to the bi-arrow decision when the representatives differ.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::element::GisElement;
use crate::graph::{DirectedGraph, Path};
use crate::lenz::{Lenz, LenzError};
use crate::ortho::OrthoSet;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CkError {
    #[error("CK_G needs every vertex to have in-degree at least 2; `{0}` has in-degree {1}")]
    GraphPrecondition(String, usize),
    #[error("graph has no vertices")]
    EmptyGraph,
    #[error("no orthogonal representatives: {0} and {1} overlap")]
    NoOrthogonalRepresentatives(String, String),
    #[error("expected an idempotent class")]
    NotIdempotent,
    #[error("cannot refine below a vertex of in-degree 0")]
    CannotRefine,
    #[error(transparent)]
    Lenz(#[from] LenzError),
}

/// An element of `CK_G`, held by a reduced orthogonal representative.
#[derive(Debug, Clone, Hash, PartialOrd, Ord, PartialEq, Eq)]
pub struct CkElement {
    rep: OrthoSet,
}

impl CkElement {
    pub fn rep(&self) -> &OrthoSet {
        &self.rep
    }

    pub fn is_zero(&self) -> bool {
        self.rep.is_empty()
    }

    pub fn is_idempotent(&self) -> bool {
        self.rep.is_idempotent()
    }

    pub fn display<'a>(&'a self, graph: &'a DirectedGraph) -> CkDisplay<'a> {
        CkDisplay { graph, elem: self }
    }
}

pub struct CkDisplay<'a> {
    graph: &'a DirectedGraph,
    elem: &'a CkElement,
}

impl fmt::Display for CkDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ck{}", self.elem.rep.display(self.graph))
    }
}

/// Checks the standing hypothesis for `CK_G`, `O_G` and the bisection model.
pub fn require_in_degree_two(graph: &DirectedGraph) -> Result<(), CkError> {
    if graph.vertex_count() == 0 {
        return Err(CkError::EmptyGraph);
    }
    match graph.vertices().find(|&v| graph.in_degree(v) < 2) {
        Some(v) => Err(CkError::GraphPrecondition(
            graph.vertex_name(v).to_string(),
            graph.in_degree(v),
        )),
        None => Ok(()),
    }
}

/// Refines every element of `set` so that all domain paths have length
/// `depth`. Requires `depth` at least the longest domain path.
pub(crate) fn refine_domains(graph: &DirectedGraph, set: &OrthoSet, depth: usize) -> BTreeSet<GisElement> {
    set.iter()
        .flat_map(|s| {
            let (_, y) = s.paths().expect("non-zero");
            s.refine(graph, depth - y.len())
        })
        .collect()
}

#[derive(Debug, Clone, Copy)]
pub struct CkSemigroup<'g> {
    lenz: Lenz<'g>,
}

impl<'g> CkSemigroup<'g> {
    pub fn new(graph: &'g DirectedGraph) -> Result<Self, CkError> {
        require_in_degree_two(graph)?;
        Ok(CkSemigroup {
            lenz: Lenz::new(graph),
        })
    }

    pub fn with_max_arrow_depth(mut self, depth: usize) -> Self {
        self.lenz = self.lenz.with_max_depth(depth);
        self
    }

    pub fn graph(&self) -> &'g DirectedGraph {
        self.lenz.graph()
    }

    pub fn lenz(&self) -> &Lenz<'g> {
        &self.lenz
    }

    pub fn class_of(&self, rep: &OrthoSet) -> CkElement {
        CkElement {
            rep: self.lenz.reduce(rep),
        }
    }

    pub fn zero(&self) -> CkElement {
        CkElement {
            rep: OrthoSet::empty(),
        }
    }

    pub fn delta(&self, s: &GisElement) -> CkElement {
        self.class_of(&OrthoSet::iota(s))
    }

    pub fn equal(&self, a: &CkElement, b: &CkElement) -> Result<bool, CkError> {
        if a.rep == b.rep {
            return Ok(true);
        }
        Ok(self.lenz.equiv(&a.rep, &b.rep)?)
    }

    pub fn multiply(&self, a: &CkElement, b: &CkElement) -> CkElement {
        self.class_of(&a.rep.product(&b.rep))
    }

    pub fn inverse(&self, a: &CkElement) -> CkElement {
        self.class_of(&a.rep.inverse())
    }

    /// Join of two classes. When the representatives are not orthogonal as
    /// they stand, both are refined to a common domain depth; at that depth
    /// two pieces either coincide, are orthogonal, or witness that the union
    /// is not a partial bijection, so no deeper search is needed.
    pub fn join(&self, a: &CkElement, b: &CkElement) -> Result<CkElement, CkError> {
        let g = self.graph();
        if let Ok(u) = a.rep.ortho_join(&b.rep) {
            return Ok(self.class_of(&u));
        }
        let depth = a
            .rep
            .iter()
            .chain(b.rep.iter())
            .map(|s| s.paths().expect("non-zero").1.len())
            .max()
            .unwrap_or(0);
        let mut union = refine_domains(g, &a.rep, depth);
        union.extend(refine_domains(g, &b.rep, depth));
        let union: Vec<GisElement> = union.into_iter().collect();
        match OrthoSet::new_in(g, union) {
            Ok(set) => Ok(self.class_of(&set)),
            Err(crate::ortho::OrthoError::NotOrthogonal(s, t)) => {
                Err(CkError::NoOrthogonalRepresentatives(s, t))
            }
        }
    }

    pub fn join_all<'a, I: IntoIterator<Item = &'a CkElement>>(&self, items: I) -> Result<CkElement, CkError> {
        items
            .into_iter()
            .try_fold(self.zero(), |acc, x| self.join(&acc, x))
    }

    /// The idempotent class as a set of paths of uniform length `depth`.
    fn support_at(&self, e: &CkElement, depth: usize) -> Result<BTreeSet<Path>, CkError> {
        let g = self.graph();
        let mut out = BTreeSet::new();
        for s in e.rep.iter() {
            let (x, _) = s.paths().expect("non-zero");
            let pieces = s.refine(g, depth - x.len());
            if pieces.is_empty() {
                return Err(CkError::CannotRefine);
            }
            out.extend(pieces.into_iter().map(|p| p.paths().expect("non-zero").0.clone()));
        }
        Ok(out)
    }

    fn common_supports(&self, e: &CkElement, f: &CkElement) -> Result<(BTreeSet<Path>, BTreeSet<Path>), CkError> {
        if !e.is_idempotent() || !f.is_idempotent() {
            return Err(CkError::NotIdempotent);
        }
        let depth = e
            .rep
            .iter()
            .chain(f.rep.iter())
            .map(|s| s.paths().expect("non-zero").0.len())
            .max()
            .unwrap_or(0);
        Ok((self.support_at(e, depth)?, self.support_at(f, depth)?))
    }

    fn class_of_support<'a, I: IntoIterator<Item = &'a Path>>(&self, paths: I) -> CkElement {
        let set = paths.into_iter().cloned().map(GisElement::idempotent).collect();
        self.class_of(&OrthoSet::from_trusted(set))
    }

    pub fn idempotent_meet(&self, e: &CkElement, f: &CkElement) -> Result<CkElement, CkError> {
        let (se, sf) = self.common_supports(e, f)?;
        Ok(self.class_of_support(se.intersection(&sf)))
    }

    pub fn idempotent_difference(&self, e: &CkElement, f: &CkElement) -> Result<CkElement, CkError> {
        let (se, sf) = self.common_supports(e, f)?;
        Ok(self.class_of_support(se.difference(&sf)))
    }

    /// Union of idempotent classes; always defined, unlike general joins.
    pub fn idempotent_union(&self, e: &CkElement, f: &CkElement) -> Result<CkElement, CkError> {
        let (se, sf) = self.common_supports(e, f)?;
        Ok(self.class_of_support(se.union(&sf)))
    }
}
