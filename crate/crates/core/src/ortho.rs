//! The orthogonal completion `D(P_G)`: finite sets of pairwise orthogonal
//! non-zero elements under setwise multiplication.
//!
//! The zero of `D(P_G)` is the empty set; zero itself is never stored.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::element::GisElement;
use crate::graph::DirectedGraph;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OrthoError {
    #[error("elements {0} and {1} are not orthogonal")]
    NotOrthogonal(String, String),
}

impl OrthoError {
    fn pair(graph: Option<&DirectedGraph>, a: &GisElement, b: &GisElement) -> Self {
        match graph {
            Some(g) => OrthoError::NotOrthogonal(a.display(g).to_string(), b.display(g).to_string()),
            None => OrthoError::NotOrthogonal(format!("{a:?}"), format!("{b:?}")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct OrthoSet {
    elems: BTreeSet<GisElement>,
}

fn first_clash<'a>(elems: &'a [&'a GisElement]) -> Option<(&'a GisElement, &'a GisElement)> {
    for (i, a) in elems.iter().enumerate() {
        for b in &elems[i + 1..] {
            if !a.orthogonal(b) {
                return Some((a, b));
            }
        }
    }
    None
}

impl OrthoSet {
    pub fn empty() -> OrthoSet {
        OrthoSet::default()
    }

    /// Builds a set, dropping zeros and rejecting any non-orthogonal pair,
    /// including repeated elements.
    pub fn new<I: IntoIterator<Item = GisElement>>(elems: I) -> Result<OrthoSet, OrthoError> {
        OrthoSet::build(elems, None)
    }

    /// As [`OrthoSet::new`], with error messages rendered against `graph`.
    pub fn new_in<I: IntoIterator<Item = GisElement>>(
        graph: &DirectedGraph,
        elems: I,
    ) -> Result<OrthoSet, OrthoError> {
        OrthoSet::build(elems, Some(graph))
    }

    fn build<I: IntoIterator<Item = GisElement>>(
        elems: I,
        graph: Option<&DirectedGraph>,
    ) -> Result<OrthoSet, OrthoError> {
        let list: Vec<GisElement> = elems.into_iter().filter(|e| !e.is_zero()).collect();
        let refs: Vec<&GisElement> = list.iter().collect();
        if let Some((a, b)) = first_clash(&refs) {
            return Err(OrthoError::pair(graph, a, b));
        }
        Ok(OrthoSet {
            elems: list.into_iter().collect(),
        })
    }

    pub(crate) fn from_trusted(elems: BTreeSet<GisElement>) -> OrthoSet {
        debug_assert!(elems.iter().all(|e| !e.is_zero()));
        OrthoSet { elems }
    }

    /// `{0, s}`, or the zero set for `s = 0`.
    pub fn iota(s: &GisElement) -> OrthoSet {
        let mut elems = BTreeSet::new();
        if !s.is_zero() {
            elems.insert(s.clone());
        }
        OrthoSet { elems }
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &GisElement> {
        self.elems.iter()
    }

    pub fn contains(&self, s: &GisElement) -> bool {
        self.elems.contains(s)
    }

    pub fn is_idempotent(&self) -> bool {
        self.elems.iter().all(GisElement::is_idempotent)
    }

    /// Setwise product `{a b != 0}`; orthogonality is preserved.
    pub fn product(&self, other: &OrthoSet) -> OrthoSet {
        let elems = self
            .elems
            .iter()
            .flat_map(|a| other.elems.iter().map(move |b| a.multiply(b)))
            .filter(|s| !s.is_zero())
            .collect();
        OrthoSet { elems }
    }

    pub fn inverse(&self) -> OrthoSet {
        OrthoSet {
            elems: self.elems.iter().map(GisElement::inverse).collect(),
        }
    }

    /// `A <= B` iff every `a` lies below some `b`.
    pub fn ortho_leq(&self, other: &OrthoSet) -> bool {
        self.elems
            .iter()
            .all(|a| other.elems.iter().any(|b| a.leq(b)))
    }

    pub fn is_orthogonal_to(&self, other: &OrthoSet) -> bool {
        self.elems
            .iter()
            .all(|a| other.elems.iter().all(|b| a.orthogonal(b)))
    }

    /// `A v B = A u B`, defined when the union is orthogonal.
    pub fn ortho_join(&self, other: &OrthoSet) -> Result<OrthoSet, OrthoError> {
        self.join_inner(other, None)
    }

    pub fn ortho_join_in(&self, graph: &DirectedGraph, other: &OrthoSet) -> Result<OrthoSet, OrthoError> {
        self.join_inner(other, Some(graph))
    }

    fn join_inner(&self, other: &OrthoSet, graph: Option<&DirectedGraph>) -> Result<OrthoSet, OrthoError> {
        for a in &self.elems {
            for b in &other.elems {
                if !a.orthogonal(b) {
                    return Err(OrthoError::pair(graph, a, b));
                }
            }
        }
        Ok(OrthoSet {
            elems: self.elems.union(&other.elems).cloned().collect(),
        })
    }

    pub fn display<'a>(&'a self, graph: &'a DirectedGraph) -> OrthoDisplay<'a> {
        OrthoDisplay { graph, set: self }
    }
}

impl<'a> IntoIterator for &'a OrthoSet {
    type Item = &'a GisElement;
    type IntoIter = std::collections::btree_set::Iter<'a, GisElement>;

    fn into_iter(self) -> Self::IntoIter {
        self.elems.iter()
    }
}

pub struct OrthoDisplay<'a> {
    graph: &'a DirectedGraph,
    set: &'a OrthoSet,
}

impl fmt::Display for OrthoDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, e) in self.set.elems.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{}", e.display(self.graph))?;
        }
        f.write_str("}")
    }
}

/// All orthogonal sets whose elements have paths of length at most
/// `max_len` and whose size is at most `max_size` (the empty set included).
pub fn enumerate_ortho_sets(graph: &DirectedGraph, max_len: usize, max_size: usize) -> Vec<OrthoSet> {
    let elems = crate::element::enumerate_elements(graph, max_len);
    let mut out = vec![OrthoSet::empty()];
    let mut frontier: Vec<(usize, Vec<usize>)> = vec![(0, Vec::new())];
    for _ in 0..max_size {
        let mut next = Vec::new();
        for (start, chosen) in &frontier {
            for i in *start..elems.len() {
                if chosen.iter().all(|&j| elems[j].orthogonal(&elems[i])) {
                    let mut c = chosen.clone();
                    c.push(i);
                    out.push(OrthoSet::from_trusted(c.iter().map(|&j| elems[j].clone()).collect()));
                    next.push((i + 1, c));
                }
            }
        }
        frontier = next;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::samples;
    use crate::syntax::{parse_element, parse_element_list};

    fn set(g: &DirectedGraph, s: &str) -> OrthoSet {
        OrthoSet::new_in(g, parse_element_list(g, s).unwrap()).unwrap()
    }

    #[test]
    fn products() {
        let g = samples::polycyclic(2);
        let ab = set(&g, "{a*a^-1; b*b^-1}");
        assert_eq!(ab.product(&set(&g, "{a*a^-1}")), set(&g, "{a*a^-1}"));
        assert_eq!(ab.product(&OrthoSet::empty()), OrthoSet::empty());
    }

    #[test]
    fn rejects_overlapping_ranges() {
        let g = samples::polycyclic(2);
        let list = parse_element_list(&g, "{1_v*a^-1; 1_v*b^-1}").unwrap();
        let err = OrthoSet::new_in(&g, list).unwrap_err();
        assert_eq!(
            err,
            OrthoError::NotOrthogonal("1_v*a^-1".into(), "1_v*b^-1".into())
        );
    }

    #[test]
    fn order() {
        let g = samples::polycyclic(2);
        let ab = set(&g, "{a*a^-1; b*b^-1}");
        assert!(set(&g, "{aa*aa^-1}").ortho_leq(&ab));
        assert!(OrthoSet::empty().ortho_leq(&ab));
        assert!(!ab.ortho_leq(&set(&g, "{a*a^-1}")));
    }

    #[test]
    fn joins() {
        let g = samples::polycyclic(2);
        let a = set(&g, "{a*a^-1}");
        let b = set(&g, "{b*b^-1}");
        assert_eq!(a.ortho_join(&b).unwrap(), set(&g, "{a*a^-1; b*b^-1}"));
        assert_eq!(a.ortho_join(&OrthoSet::empty()).unwrap(), a);
        assert!(a.ortho_join_in(&g, &a).is_err());
    }

    #[test]
    fn iota_is_a_homomorphism() {
        let g = samples::polycyclic(2);
        let s = parse_element(&g, "a*b^-1").unwrap();
        assert_eq!(OrthoSet::iota(&s), set(&g, "{a*b^-1}"));
        assert!(OrthoSet::iota(&GisElement::Zero).is_empty());
        let elems = crate::element::enumerate_elements(&g, 1);
        for s in &elems {
            for t in &elems {
                assert_eq!(
                    OrthoSet::iota(s).product(&OrthoSet::iota(t)),
                    OrthoSet::iota(&s.multiply(t))
                );
            }
        }
    }

    #[test]
    fn display() {
        let g = samples::polycyclic(2);
        assert_eq!(set(&g, "{b*b^-1; a*a^-1}").display(&g).to_string(), "{a*a^-1; b*b^-1}");
        assert_eq!(OrthoSet::empty().display(&g).to_string(), "{}");
    }

    #[test]
    fn enumeration_counts() {
        let g = samples::polycyclic(2);
        // 1 empty + 9 singletons + 2 orthogonal pairs at path length <= 1
        assert_eq!(enumerate_ortho_sets(&g, 1, 2).len(), 12);
    }
}
