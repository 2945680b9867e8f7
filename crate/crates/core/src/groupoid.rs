//! Compact-open bisections of the path-space groupoid.
//!
//! The groupoid has arrows `(x w, k, y w)` with `k = |y| - |x|`, and the
//! basis set `Z(x, y)` collects all of them for a fixed pair of coterminal
//! paths. A [`Bisection`] is a finite union of pairwise orthogonal basis
//! sets. Equality is decided after refining every pair on its range side to
//! a common length, independently of the cylinder-map model.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::ck::{require_in_degree_two, CkElement, CkError};
use crate::element::GisElement;
use crate::graph::{DirectedGraph, Path, PrefixOrder};
use crate::ortho::OrthoSet;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupoidError {
    #[error(transparent)]
    Precondition(#[from] CkError),
    #[error("Z({0}) has paths with different domains")]
    DomainMismatch(String),
    #[error("Z({0}) and Z({1}) overlap without one containing the other")]
    Overlap(String, String),
}

/// The basis set `Z(x, y)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Basis {
    x: Path,
    y: Path,
}

impl Basis {
    pub fn new(x: Path, y: Path) -> Option<Basis> {
        (x.domain() == y.domain()).then_some(Basis { x, y })
    }

    pub fn x(&self) -> &Path {
        &self.x
    }

    pub fn y(&self) -> &Path {
        &self.y
    }

    /// The shift carried by every arrow in the set.
    pub fn k(&self) -> i64 {
        self.y.len() as i64 - self.x.len() as i64
    }

    pub fn element(&self) -> GisElement {
        GisElement::pair(self.x.clone(), self.y.clone()).expect("basis pairs are coterminal")
    }

    pub fn display<'a>(&'a self, graph: &'a DirectedGraph) -> BasisDisplay<'a> {
        BasisDisplay { graph, basis: self }
    }
}

pub struct BasisDisplay<'a> {
    graph: &'a DirectedGraph,
    basis: &'a Basis,
}

impl fmt::Display for BasisDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Z({}, {})",
            self.graph.display_path(&self.basis.x),
            self.graph.display_path(&self.basis.y)
        )
    }
}

/// Product of basis sets. The set `Z(x,y) Z(u,v)` is nonempty only when
/// `y` and `u` are prefix-comparable:
/// `Z(x, v z)` when `y = u z` and `Z(x z, v)` when `u = y z`.
pub fn z_product(p: &Basis, q: &Basis) -> Option<Basis> {
    match p.y.prefix_comparable(&q.x) {
        PrefixOrder::Equal => Some(Basis {
            x: p.x.clone(),
            y: q.y.clone(),
        }),
        PrefixOrder::LeftExtendsRight(z) => Some(Basis {
            x: p.x.clone(),
            y: q.y.concat(&z)?,
        }),
        PrefixOrder::RightExtendsLeft(z) => Some(Basis {
            x: p.x.concat(&z)?,
            y: q.y.clone(),
        }),
        PrefixOrder::Incomparable => None,
    }
}

/// Intersection of basis sets: the smaller one if the pairs are comparable
/// in the natural order, empty otherwise.
pub fn z_intersect(p: &Basis, q: &Basis) -> Option<Basis> {
    let (a, b) = (p.element(), q.element());
    if a.leq(&b) {
        Some(p.clone())
    } else if b.leq(&a) {
        Some(q.clone())
    } else {
        None
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Bisection {
    pieces: BTreeSet<Basis>,
}

impl Bisection {
    pub fn empty() -> Bisection {
        Bisection::default()
    }

    pub fn pieces(&self) -> impl Iterator<Item = &Basis> {
        self.pieces.iter()
    }

    pub fn len(&self) -> usize {
        self.pieces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pieces.is_empty()
    }

    pub fn max_range_len(&self) -> usize {
        self.pieces.iter().map(|b| b.x.len()).max().unwrap_or(0)
    }

    pub fn display<'a>(&'a self, graph: &'a DirectedGraph) -> BisectionDisplay<'a> {
        BisectionDisplay { graph, bisection: self }
    }
}

pub struct BisectionDisplay<'a> {
    graph: &'a DirectedGraph,
    bisection: &'a Bisection,
}

impl fmt::Display for BisectionDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.bisection.is_empty() {
            return f.write_str("∅");
        }
        for (i, b) in self.bisection.pieces.iter().enumerate() {
            if i > 0 {
                f.write_str(" ∪ ")?;
            }
            write!(f, "{}", b.display(self.graph))?;
        }
        Ok(())
    }
}

/// Bisection calculus over a graph whose in-degrees are all at least 2.
/// Under that hypothesis two basis sets are disjoint exactly when their
/// pairs are incomparable, and a union of basis sets is a bisection exactly
/// when the pairs are pairwise orthogonal.
#[derive(Debug, Clone, Copy)]
pub struct AmpleModel<'g> {
    graph: &'g DirectedGraph,
}

impl<'g> AmpleModel<'g> {
    pub fn new(graph: &'g DirectedGraph) -> Result<Self, GroupoidError> {
        require_in_degree_two(graph)?;
        Ok(AmpleModel { graph })
    }

    pub fn graph(&self) -> &'g DirectedGraph {
        self.graph
    }

    fn show(&self, b: &Basis) -> String {
        format!("{}, {}", self.graph.display_path(&b.x), self.graph.display_path(&b.y))
    }

    /// Builds a bisection from raw pairs, rejecting mismatched domains and
    /// any two pieces that are not orthogonal.
    pub fn bisection<I: IntoIterator<Item = (Path, Path)>>(&self, pairs: I) -> Result<Bisection, GroupoidError> {
        let mut pieces: Vec<Basis> = Vec::new();
        for (x, y) in pairs {
            let b = match Basis::new(x.clone(), y.clone()) {
                Some(b) => b,
                None => {
                    let shown = format!("{}, {}", self.graph.display_path(&x), self.graph.display_path(&y));
                    return Err(GroupoidError::DomainMismatch(shown));
                }
            };
            if let Some(c) = pieces.iter().find(|c| !c.element().orthogonal(&b.element())) {
                return Err(GroupoidError::Overlap(self.show(c), self.show(&b)));
            }
            pieces.push(b);
        }
        Ok(Bisection {
            pieces: pieces.into_iter().collect(),
        })
    }

    /// `θ(x y⁻¹) = Z(x, y)`, and `θ(0) = ∅`.
    pub fn theta(&self, s: &GisElement) -> Bisection {
        let pieces = s
            .paths()
            .map(|(x, y)| Basis {
                x: x.clone(),
                y: y.clone(),
            })
            .into_iter()
            .collect();
        Bisection { pieces }
    }

    pub fn theta_set(&self, a: &OrthoSet) -> Bisection {
        Bisection {
            pieces: a.iter().flat_map(|s| self.theta(s).pieces).collect(),
        }
    }

    pub fn theta_bar(&self, a: &CkElement) -> Bisection {
        self.theta_set(a.rep())
    }

    pub fn multiply(&self, b1: &Bisection, b2: &Bisection) -> Bisection {
        let pieces = b1
            .pieces
            .iter()
            .flat_map(|p| b2.pieces.iter().filter_map(move |q| z_product(p, q)))
            .collect();
        Bisection { pieces }
    }

    pub fn inverse(&self, b: &Bisection) -> Bisection {
        Bisection {
            pieces: b
                .pieces
                .iter()
                .map(|p| Basis {
                    x: p.y.clone(),
                    y: p.x.clone(),
                })
                .collect(),
        }
    }

    /// Union of two bisections. Nested pieces are absorbed into the larger
    /// one; any other overlap means the union is not a bisection.
    pub fn union(&self, b1: &Bisection, b2: &Bisection) -> Result<Bisection, GroupoidError> {
        let all: Vec<&Basis> = b1.pieces.iter().chain(b2.pieces.iter()).collect();
        let mut kept: BTreeSet<Basis> = BTreeSet::new();
        for (i, p) in all.iter().enumerate() {
            let pe = p.element();
            let absorbed = all.iter().enumerate().any(|(j, q)| {
                let qe = q.element();
                pe.leq(&qe) && (pe != qe || j < i)
            });
            if !absorbed {
                kept.insert((*p).clone());
            }
        }
        let list: Vec<&Basis> = kept.iter().collect();
        for (i, p) in list.iter().enumerate() {
            for q in &list[i + 1..] {
                if !p.element().orthogonal(&q.element()) {
                    return Err(GroupoidError::Overlap(self.show(p), self.show(q)));
                }
            }
        }
        Ok(Bisection { pieces: kept })
    }

    /// Replaces each `Z(x, y)` by the pieces `Z(x p, y p)` with
    /// `|x p| = depth`. The underlying set of arrows is unchanged.
    pub fn normalize(&self, b: &Bisection, depth: usize) -> Bisection {
        assert!(depth >= b.max_range_len(), "depth below the longest range path");
        let mut pieces = BTreeSet::new();
        for p in &b.pieces {
            for ext in self
                .graph
                .extensions_of_length(&Path::empty(p.x.domain()), depth - p.x.len())
            {
                pieces.insert(Basis {
                    x: p.x.concat(&ext).expect("r(ext) = d(x)"),
                    y: p.y.concat(&ext).expect("r(ext) = d(y)"),
                });
            }
        }
        Bisection { pieces }
    }

    pub fn equal(&self, b1: &Bisection, b2: &Bisection) -> bool {
        let depth = b1.max_range_len().max(b2.max_range_len());
        self.normalize(b1, depth) == self.normalize(b2, depth)
    }
}
