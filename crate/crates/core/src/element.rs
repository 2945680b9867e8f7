//! The graph inverse semigroup `P_G`.
//!
//! A non-zero element is a pair of paths `(x, y)` with a common domain
//! vertex, written `x*y^-1`. The product is driven entirely by prefix
//! comparability:
//!
//! ```text
//! x y^-1 . u v^-1 = (x z) v^-1   if u = y z
//!                 = x (v z)^-1   if y = u z
//!                 = 0            otherwise
//! ```

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::graph::{DirectedGraph, Path, VertexId};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ElementError {
    #[error("operation is undefined on the zero element")]
    ZeroInput,
    #[error("element is not an idempotent")]
    NotIdempotent,
    #[error("paths do not share a domain vertex")]
    DomainMismatch,
}

/// An element of `P_G`: zero, or `x*y^-1` with `d(x) = d(y)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GisElement {
    Zero,
    Pair(Path, Path),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum GreenRelation {
    L,
    R,
    H,
    D,
    /// `s <=_J t`
    JLeq,
}

impl GisElement {
    /// `x*y^-1`, checking that the paths share a domain.
    pub fn pair(x: Path, y: Path) -> Result<GisElement, ElementError> {
        if x.domain() != y.domain() {
            return Err(ElementError::DomainMismatch);
        }
        Ok(GisElement::Pair(x, y))
    }

    /// The idempotent `x*x^-1`.
    pub fn idempotent(x: Path) -> GisElement {
        GisElement::Pair(x.clone(), x)
    }

    /// The maximal idempotent `1_v*1_v^-1`.
    pub fn vertex_identity(v: VertexId) -> GisElement {
        GisElement::idempotent(Path::empty(v))
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, GisElement::Zero)
    }

    pub fn paths(&self) -> Option<(&Path, &Path)> {
        match self {
            GisElement::Zero => None,
            GisElement::Pair(x, y) => Some((x, y)),
        }
    }

    pub fn is_idempotent(&self) -> bool {
        match self {
            GisElement::Zero => true,
            GisElement::Pair(x, y) => x == y,
        }
    }

    pub fn multiply(&self, other: &GisElement) -> GisElement {
        let ((x, y), (u, v)) = match (self.paths(), other.paths()) {
            (Some(s), Some(t)) => (s, t),
            _ => return GisElement::Zero,
        };
        if let Some(z) = u.strip_prefix(y) {
            let xz = x.concat(&z).expect("d(x) = d(y) = r(z)");
            GisElement::Pair(xz, v.clone())
        } else if let Some(z) = y.strip_prefix(u) {
            let vz = v.concat(&z).expect("d(v) = d(u) = r(z)");
            GisElement::Pair(x.clone(), vz)
        } else {
            GisElement::Zero
        }
    }

    pub fn inverse(&self) -> GisElement {
        match self {
            GisElement::Zero => GisElement::Zero,
            GisElement::Pair(x, y) => GisElement::Pair(y.clone(), x.clone()),
        }
    }

    /// `s^-1 s = y*y^-1`
    pub fn domain_idempotent(&self) -> GisElement {
        match self {
            GisElement::Zero => GisElement::Zero,
            GisElement::Pair(_, y) => GisElement::idempotent(y.clone()),
        }
    }

    /// `s s^-1 = x*x^-1`
    pub fn range_idempotent(&self) -> GisElement {
        match self {
            GisElement::Zero => GisElement::Zero,
            GisElement::Pair(x, _) => GisElement::idempotent(x.clone()),
        }
    }

    /// Natural partial order. On success returns the path `p` with
    /// `x = u p` and `y = v p`; zero lies below everything with witness
    /// `None`.
    pub fn natural_leq(&self, other: &GisElement) -> Option<Option<Path>> {
        match (self.paths(), other.paths()) {
            (None, _) => Some(None),
            (Some(_), None) => None,
            (Some((x, y)), Some((u, v))) => {
                let p = x.strip_prefix(u)?;
                let q = y.strip_prefix(v)?;
                (p == q).then_some(Some(p))
            }
        }
    }

    pub fn leq(&self, other: &GisElement) -> bool {
        self.natural_leq(other).is_some()
    }

    pub fn is_comparable(&self, other: &GisElement) -> bool {
        self.leq(other) || other.leq(self)
    }

    /// Greatest lower bound. Non-zero elements with a non-zero common lower
    /// bound are comparable, so the meet is the smaller one or zero.
    pub fn meet(&self, other: &GisElement) -> GisElement {
        if self.leq(other) {
            self.clone()
        } else if other.leq(self) {
            other.clone()
        } else {
            GisElement::Zero
        }
    }

    pub fn compatible(&self, other: &GisElement) -> bool {
        self.inverse().multiply(other).is_idempotent()
            && self.multiply(&other.inverse()).is_idempotent()
    }

    pub fn orthogonal(&self, other: &GisElement) -> bool {
        self.inverse().multiply(other).is_zero() && self.multiply(&other.inverse()).is_zero()
    }

    /// Green's relations. `D` compares domain vertices and `J` reachability;
    /// free categories have no non-trivial isomorphisms to account for.
    pub fn greens(
        &self,
        other: &GisElement,
        relation: GreenRelation,
        graph: &DirectedGraph,
    ) -> Result<bool, ElementError> {
        let ((x, y), (u, v)) = match (self.paths(), other.paths()) {
            (Some(s), Some(t)) => (s, t),
            _ => return Err(ElementError::ZeroInput),
        };
        Ok(match relation {
            GreenRelation::L => y == v,
            GreenRelation::R => x == u,
            GreenRelation::H => x == u && y == v,
            GreenRelation::D => x.domain() == u.domain(),
            GreenRelation::JLeq => graph.reaches(x.domain(), u.domain()),
        })
    }

    /// `1_v*1_v^-1` with `v = r(x)`: the unique maximal idempotent above
    /// `s s^-1`.
    pub fn maximal_idempotent_over(&self) -> Result<GisElement, ElementError> {
        match self {
            GisElement::Zero => Err(ElementError::ZeroInput),
            GisElement::Pair(x, _) => Ok(GisElement::vertex_identity(x.range())),
        }
    }

    /// The idempotents covered by `x*x^-1`: `(x a)(x a)^-1` for each edge
    /// `a` into `d(x)`.
    pub fn covered_idempotents(&self, graph: &DirectedGraph) -> Result<Vec<GisElement>, ElementError> {
        match self {
            GisElement::Zero => Err(ElementError::ZeroInput),
            GisElement::Pair(x, y) if x == y => Ok(graph
                .one_step_extensions(x)
                .map(|(_, xa)| GisElement::idempotent(xa))
                .collect()),
            GisElement::Pair(..) => Err(ElementError::NotIdempotent),
        }
    }

    /// `|x|` for the idempotent `x*x^-1`.
    pub fn weight(&self) -> Result<usize, ElementError> {
        match self {
            GisElement::Zero => Err(ElementError::ZeroInput),
            GisElement::Pair(x, y) if x == y => Ok(x.len()),
            GisElement::Pair(..) => Err(ElementError::NotIdempotent),
        }
    }

    /// Refinement of `x*y^-1` into `{(x p)(y p)^-1 : |p| = steps}`.
    pub fn refine(&self, graph: &DirectedGraph, steps: usize) -> Vec<GisElement> {
        match self {
            GisElement::Zero => Vec::new(),
            GisElement::Pair(x, y) => graph
                .extensions_of_length(&Path::empty(x.domain()), steps)
                .into_iter()
                .map(|p| {
                    GisElement::Pair(
                        x.concat(&p).expect("matching"),
                        y.concat(&p).expect("matching"),
                    )
                })
                .collect(),
        }
    }

    pub fn display<'a>(&'a self, graph: &'a DirectedGraph) -> ElementDisplay<'a> {
        ElementDisplay {
            graph,
            element: self,
        }
    }
}

/// All non-zero elements whose two paths have length at most `max_len`.
pub fn enumerate_elements(graph: &DirectedGraph, max_len: usize) -> Vec<GisElement> {
    let paths = graph.enumerate_paths(max_len, None, None);
    let mut out = Vec::new();
    for x in &paths {
        for y in paths.iter().filter(|y| y.domain() == x.domain()) {
            out.push(GisElement::Pair(x.clone(), y.clone()));
        }
    }
    out
}

/// All non-zero idempotents `x*x^-1` with `|x| <= max_len`.
pub fn enumerate_idempotents(graph: &DirectedGraph, max_len: usize) -> Vec<GisElement> {
    graph
        .enumerate_paths(max_len, None, None)
        .into_iter()
        .map(GisElement::idempotent)
        .collect()
}

pub struct ElementDisplay<'a> {
    graph: &'a DirectedGraph,
    element: &'a GisElement,
}

impl fmt::Display for ElementDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.element {
            GisElement::Zero => f.write_str("0"),
            GisElement::Pair(x, y) => write!(
                f,
                "{}*{}^-1",
                self.graph.display_path(x),
                self.graph.display_path(y)
            ),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::samples;

    fn el(g: &DirectedGraph, x: &str, y: &str) -> GisElement {
        crate::syntax::parse_element(g, &format!("{x}*{y}^-1")).unwrap()
    }

    #[test]
    fn products() {
        let g = samples::polycyclic(2);
        assert_eq!(el(&g, "a", "b").multiply(&el(&g, "b", "1_v")), el(&g, "a", "1_v"));
        assert_eq!(el(&g, "1_v", "a").multiply(&el(&g, "a", "1_v")), el(&g, "1_v", "1_v"));
        assert_eq!(el(&g, "1_v", "a").multiply(&el(&g, "b", "1_v")), GisElement::Zero);
        assert_eq!(GisElement::Zero.multiply(&el(&g, "a", "a")), GisElement::Zero);
    }

    #[test]
    fn inverses() {
        let g = samples::polycyclic(2);
        assert_eq!(el(&g, "a", "b").inverse(), el(&g, "b", "a"));
        assert_eq!(GisElement::Zero.inverse(), GisElement::Zero);
        let e = el(&g, "ab", "ab");
        assert_eq!(e.inverse(), e);
    }

    #[test]
    fn order_and_meets() {
        let g = samples::polycyclic(2);
        let s = el(&g, "ab", "bb");
        let t = el(&g, "a", "b");
        assert_eq!(s.natural_leq(&t), Some(Some(g.path(&["b"]).unwrap())));
        assert!(t.leq(&t));
        assert!(!el(&g, "a", "a").leq(&el(&g, "b", "b")));
        assert_eq!(t.meet(&s), s);
        assert_eq!(t.meet(&t), t);
        assert_eq!(el(&g, "a", "a").meet(&el(&g, "b", "b")), GisElement::Zero);
    }

    #[test]
    fn compatibility() {
        let g = samples::polycyclic(2);
        assert!(el(&g, "a", "a").orthogonal(&el(&g, "b", "b")));
        let s = el(&g, "a", "b");
        assert!(s.compatible(&s));
        assert!(s.compatible(&el(&g, "ab", "bb")));
        assert!(!s.orthogonal(&el(&g, "ab", "bb")));
    }

    #[test]
    fn greens_relations() {
        let g = samples::polycyclic(2);
        let s = el(&g, "a", "b");
        let t = el(&g, "b", "b");
        assert!(s.greens(&t, GreenRelation::L, &g).unwrap());
        assert!(!s.greens(&t, GreenRelation::R, &g).unwrap());
        for x in enumerate_elements(&g, 2) {
            assert!(x.greens(&el(&g, "1_v", "1_v"), GreenRelation::D, &g).unwrap());
        }
        assert_eq!(
            GisElement::Zero.greens(&t, GreenRelation::D, &g),
            Err(ElementError::ZeroInput)
        );

        let d = DirectedGraph::from_parts(&["u", "w"], &[("a", "u", "u"), ("b", "w", "w")]).unwrap();
        let su = el(&d, "a", "a");
        let sw = el(&d, "b", "b");
        assert!(!su.greens(&sw, GreenRelation::JLeq, &d).unwrap());
        assert!(su.greens(&su, GreenRelation::JLeq, &d).unwrap());
    }

    #[test]
    fn j_order_follows_paths() {
        // e: u -> v. The element e*e^-1 has domain u; 1_v has domain v.
        let g = DirectedGraph::from_parts(&["u", "v"], &[("e", "u", "v")]).unwrap();
        let at_u = el(&g, "e", "e");
        let at_v = el(&g, "1_v", "1_v");
        // e*e^-1 <= 1_v, so it is J-below.
        assert!(at_u.greens(&at_v, GreenRelation::JLeq, &g).unwrap());
        assert!(!at_v.greens(&at_u, GreenRelation::JLeq, &g).unwrap());
    }

    #[test]
    fn maximal_idempotents() {
        let g = samples::polycyclic(2);
        let one = el(&g, "1_v", "1_v");
        assert_eq!(el(&g, "ab", "ab").maximal_idempotent_over().unwrap(), one);
        assert_eq!(one.maximal_idempotent_over().unwrap(), one);
        let t = DirectedGraph::from_parts(&["u", "v"], &[("e1", "u", "v")]).unwrap();
        assert_eq!(
            el(&t, "e1", "e1").maximal_idempotent_over().unwrap(),
            el(&t, "1_v", "1_v")
        );
        assert_eq!(GisElement::Zero.maximal_idempotent_over(), Err(ElementError::ZeroInput));
    }

    #[test]
    fn covers() {
        let g = samples::polycyclic(2);
        assert_eq!(
            el(&g, "1_v", "1_v").covered_idempotents(&g).unwrap(),
            vec![el(&g, "a", "a"), el(&g, "b", "b")]
        );
        assert_eq!(
            el(&g, "a", "a").covered_idempotents(&g).unwrap(),
            vec![el(&g, "aa", "aa"), el(&g, "ab", "ab")]
        );
        let lone = samples::lone_vertex();
        assert!(el(&lone, "1_v", "1_v").covered_idempotents(&lone).unwrap().is_empty());
        assert_eq!(
            el(&g, "a", "b").covered_idempotents(&g),
            Err(ElementError::NotIdempotent)
        );
    }

    #[test]
    fn weights() {
        let g = samples::polycyclic(2);
        assert_eq!(el(&g, "1_v", "1_v").weight(), Ok(0));
        assert_eq!(el(&g, "ab", "ab").weight(), Ok(2));
        assert_eq!(el(&g, "a", "a").weight(), Ok(1));
        assert_eq!(GisElement::Zero.weight(), Err(ElementError::ZeroInput));
        assert_eq!(el(&g, "a", "b").weight(), Err(ElementError::NotIdempotent));
    }

    #[test]
    fn pair_checks_domains() {
        let g = samples::two_vertex();
        let e1 = g.path(&["e1"]).unwrap();
        let f1 = g.path(&["f1"]).unwrap();
        assert_eq!(GisElement::pair(e1, f1), Err(ElementError::DomainMismatch));
    }
}
