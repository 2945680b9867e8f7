//! Bratteli graphs and the local inverse monoid at their root.
//!
//! Only finite graphs can be loaded, and a finite graph always has sources
//! on its top level. Such a graph is read as the truncation of a Bratteli
//! graph at its top level `H`: sources are allowed on level `H`, and weight
//! axioms that talk about all weights are only checked up to `H`.

use std::collections::VecDeque;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::element::GisElement;
use crate::graph::{DirectedGraph, Path, VertexId};
use crate::report::LawCheck;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum BratteliViolation {
    /// The root is not a sink, or some other vertex is.
    B1(String),
    /// A source below the top level.
    B2(String),
    /// A vertex with no path to the root, hence no level.
    B3(String),
    /// An edge that does not drop exactly one level.
    B4(String),
}

impl fmt::Display for BratteliViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BratteliViolation::B1(m) => write!(f, "B1: {m}"),
            BratteliViolation::B2(m) => write!(f, "B2: {m}"),
            BratteliViolation::B3(m) => write!(f, "B3: {m}"),
            BratteliViolation::B4(m) => write!(f, "B4: {m}"),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LocalMonoidError {
    #[error("path ranges must both be the root")]
    RangeNotRoot,
    #[error("paths have different domains")]
    DomainMismatch,
    #[error("zero has no weight")]
    Zero,
    #[error("element is not in the local monoid at the root")]
    NotLocal,
}

#[derive(Debug, Clone)]
pub struct BratteliGraph<'g> {
    graph: &'g DirectedGraph,
    root: VertexId,
    levels: Vec<usize>,
    height: usize,
}

/// Checks (B1)-(B4), computing levels as distance to the root.
pub fn validate_bratteli(graph: &DirectedGraph, root: VertexId) -> Result<BratteliGraph<'_>, Vec<BratteliViolation>> {
    let mut violations = Vec::new();
    let name = |v: VertexId| graph.vertex_name(v).to_string();

    if graph.out_degree(root) != 0 {
        violations.push(BratteliViolation::B1(format!("root {} is not a sink", name(root))));
    }
    for v in graph.vertices().filter(|&v| v != root && graph.out_degree(v) == 0) {
        violations.push(BratteliViolation::B1(format!("{} is a second sink", name(v))));
    }

    let mut level: Vec<Option<usize>> = vec![None; graph.vertex_count()];
    level[root.0 as usize] = Some(0);
    let mut queue = VecDeque::from([root]);
    while let Some(w) = queue.pop_front() {
        let next = level[w.0 as usize].expect("queued vertices have levels") + 1;
        for &e in graph.edges_into(w) {
            let s = graph.source(e);
            if level[s.0 as usize].is_none() {
                level[s.0 as usize] = Some(next);
                queue.push_back(s);
            }
        }
    }
    for v in graph.vertices().filter(|v| level[v.0 as usize].is_none()) {
        violations.push(BratteliViolation::B3(format!("{} has no path to the root", name(v))));
    }
    let height = level.iter().flatten().copied().max().unwrap_or(0);

    for e in graph.edges() {
        if let (Some(from), Some(to)) = (level[graph.source(e).0 as usize], level[graph.target(e).0 as usize]) {
            if from != to + 1 {
                violations.push(BratteliViolation::B4(format!(
                    "edge {} runs from level {from} to level {to}",
                    graph.edge_name(e)
                )));
            }
        }
    }

    for v in graph.vertices() {
        if let Some(l) = level[v.0 as usize] {
            if l < height && graph.in_degree(v) == 0 {
                violations.push(BratteliViolation::B2(format!("{} is a source on level {l}", name(v))));
            }
        }
    }

    if violations.is_empty() {
        Ok(BratteliGraph {
            graph,
            root,
            levels: level.into_iter().map(|l| l.expect("checked")).collect(),
            height,
        })
    } else {
        Err(violations)
    }
}

impl<'g> BratteliGraph<'g> {
    pub fn graph(&self) -> &'g DirectedGraph {
        self.graph
    }

    pub fn root(&self) -> VertexId {
        self.root
    }

    pub fn level(&self, v: VertexId) -> usize {
        self.levels[v.0 as usize]
    }

    /// The top level, where the finite graph is cut off.
    pub fn height(&self) -> usize {
        self.height
    }

    pub fn vertices_at(&self, n: usize) -> Vec<VertexId> {
        self.graph.vertices().filter(|&v| self.level(v) == n).collect()
    }

    /// `x y⁻¹` as a member of the local monoid at the root.
    pub fn local_monoid_element(&self, x: Path, y: Path) -> Result<GisElement, LocalMonoidError> {
        if x.range() != self.root || y.range() != self.root {
            return Err(LocalMonoidError::RangeNotRoot);
        }
        GisElement::pair(x, y).map_err(|_| LocalMonoidError::DomainMismatch)
    }

    pub fn identity(&self) -> GisElement {
        GisElement::vertex_identity(self.root)
    }

    pub fn is_local(&self, s: &GisElement) -> bool {
        match s.paths() {
            None => true,
            Some((x, y)) => x.range() == self.root && y.range() == self.root,
        }
    }

    /// The common length of the two paths.
    pub fn mu(&self, s: &GisElement) -> Result<usize, LocalMonoidError> {
        let (x, y) = s.paths().ok_or(LocalMonoidError::Zero)?;
        if !self.is_local(s) {
            return Err(LocalMonoidError::NotLocal);
        }
        debug_assert_eq!(x.len(), y.len(), "levels force equal lengths");
        Ok(x.len().max(y.len()))
    }

    /// Non-zero local elements with weight at most `max_weight`, by weight.
    pub fn elements_up_to(&self, max_weight: usize) -> Vec<GisElement> {
        let paths = self.graph.enumerate_paths(max_weight, None, Some(self.root));
        let mut out = Vec::new();
        for x in &paths {
            for y in paths.iter().filter(|y| y.domain() == x.domain()) {
                out.push(GisElement::Pair(x.clone(), y.clone()));
            }
        }
        out.sort_by(|a, b| {
            let (x, y) = a.paths().expect("non-zero");
            let (u, v) = b.paths().expect("non-zero");
            x.len_lex_cmp(u).then_with(|| y.len_lex_cmp(v))
        });
        out
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct BmReport {
    pub max_weight: usize,
    /// Weight up to which the checks ran: `max_weight` capped at the height.
    pub checked_weight: usize,
    pub checks: Vec<LawCheck>,
}

impl BmReport {
    pub fn passed(&self) -> bool {
        crate::report::all_passed(&self.checks)
    }
}

fn is_lt(s: &GisElement, t: &GisElement) -> bool {
    s != t && s.leq(t)
}

/// Checks the weight and Bratteli-monoid axioms on every non-zero local
/// element of weight at most `min(max_weight, height)`. Green's relations
/// are computed by search inside that finite set, so the D = J check is
/// independent of the path description of D.
///
/// A graph of height 0 has an empty level 1, which no Bratteli graph allows;
/// non-emptiness of weight 1 is therefore demanded even then.
pub fn check_bm_axioms(b: &BratteliGraph<'_>, max_weight: usize) -> BmReport {
    let w = max_weight.min(b.height());
    let above = (max_weight + 1).min(b.height());
    let elems = b.elements_up_to(above);
    let within: Vec<&GisElement> = elems.iter().filter(|s| b.mu(s).unwrap() <= w).collect();
    let mu = |s: &GisElement| b.mu(s).expect("non-zero local element");
    let show = |s: &GisElement| s.display(b.graph()).to_string();

    let mut w1 = LawCheck::new("W1: s < t implies mu(s) > mu(t)");
    let mut bm5 = LawCheck::new("BM5: s < t interpolates one weight below t");
    for s in &within {
        for t in &within {
            if is_lt(s, t) {
                w1.record(mu(s) > mu(t), || format!("{} < {}", show(s), show(t)));
                bm5.record(
                    within
                        .iter()
                        .any(|u| s.leq(u) && is_lt(u, t) && mu(u) == mu(t) + 1),
                    || format!("nothing between {} and {}", show(s), show(t)),
                );
            }
        }
    }

    // Green's relations by search in the finite set.
    let n = within.len();
    let mut d_rel = vec![vec![false; n]; n];
    for i in 0..n {
        for j in 0..n {
            let (s, t) = (within[i], within[j]);
            d_rel[i][j] = within.iter().any(|u| {
                s.range_idempotent() == u.range_idempotent() && u.domain_idempotent() == t.domain_idempotent()
            });
        }
    }
    let mut identity = vec![b.identity()];
    identity.retain(|e| !within.contains(&e));
    let monoid: Vec<&GisElement> = within.iter().copied().chain(identity.iter()).collect();
    let j_leq = |s: &GisElement, t: &GisElement| {
        monoid
            .iter()
            .any(|a| monoid.iter().any(|c| a.multiply(t).multiply(c) == *s))
    };
    let mut w2 = LawCheck::new("W2: D-related elements share a weight");
    let mut dj = LawCheck::new("D = J");
    let mut bm1 = LawCheck::new("BM1: combinatorial");
    for i in 0..n {
        for j in 0..n {
            let (s, t) = (within[i], within[j]);
            if d_rel[i][j] {
                w2.record(mu(s) == mu(t), || format!("{} D {}", show(s), show(t)));
            } else {
                w2.checked += 1;
            }
            let j_rel = j_leq(s, t) && j_leq(t, s);
            dj.record(j_rel == d_rel[i][j], || format!("{} and {}", show(s), show(t)));
            let h = s.range_idempotent() == t.range_idempotent() && s.domain_idempotent() == t.domain_idempotent();
            bm1.record(!h || s == t, || format!("{} H {}", show(s), show(t)));
        }
    }

    let mut bm2 = LawCheck::new("BM2: unambiguous");
    let mut max_rule = LawCheck::new("mu(st) = max(mu(s), mu(t)) when st != 0");
    for s in &within {
        for t in &within {
            let common = within.iter().any(|u| u.leq(s) && u.leq(t));
            bm2.record(!common || s.is_comparable(t), || format!("{} and {}", show(s), show(t)));
            let st = s.multiply(t);
            if !st.is_zero() {
                max_rule.record(mu(&st) == mu(s).max(mu(t)), || {
                    format!("{} . {}", show(s), show(t))
                });
            }
        }
    }

    let mut bm3 = LawCheck::new("BM3: no 0-minimal idempotents");
    for e in within.iter().filter(|s| s.is_idempotent() && mu(s) < b.height()) {
        bm3.record(
            elems.iter().any(|f| f.is_idempotent() && is_lt(f, e)),
            || format!("{} is 0-minimal", show(e)),
        );
    }

    let mut bm4 = LawCheck::new("BM4: mu^-1(0) = {1}, each mu^-1(n) finite and non-empty");
    let weight_zero: Vec<&GisElement> = elems.iter().filter(|s| mu(s) == 0).collect();
    bm4.record(weight_zero == vec![&b.identity()], || "weight 0 is not exactly the identity".into());
    let demanded = max_weight.min(b.height().max(1));
    for k in 1..=demanded {
        let found = b
            .graph()
            .enumerate_paths(k, None, Some(b.root()))
            .iter()
            .any(|p| p.len() == k);
        bm4.record(found, || format!("no element of weight {k}"));
    }

    BmReport {
        max_weight,
        checked_weight: w,
        checks: vec![w1, w2, bm1, bm2, bm3, bm4, bm5, dj, max_rule],
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::samples;
    use crate::syntax::parse_path;

    #[test]
    fn instance_b_is_valid() {
        let g = samples::bratteli_b();
        let b = validate_bratteli(&g, g.vertex("r").unwrap()).unwrap();
        assert_eq!(b.height(), 2);
        assert_eq!(b.vertices_at(1), vec![g.vertex("p").unwrap()]);
    }

    #[test]
    fn named_violations() {
        let g = samples::polycyclic(2);
        let errs = validate_bratteli(&g, g.vertex("v").unwrap()).unwrap_err();
        assert!(errs.iter().any(|e| matches!(e, BratteliViolation::B1(_))));

        let skip = DirectedGraph::from_parts(
            &["r", "p", "q"],
            &[("g", "p", "r"), ("h", "q", "p"), ("k", "q", "r")],
        )
        .unwrap();
        let errs = validate_bratteli(&skip, skip.vertex("r").unwrap()).unwrap_err();
        assert_eq!(errs, vec![BratteliViolation::B4("edge h runs from level 1 to level 1".into())]);

        let stray = DirectedGraph::from_parts(&["r", "p", "s"], &[("g", "p", "r"), ("l", "s", "s")]).unwrap();
        let errs = validate_bratteli(&stray, stray.vertex("r").unwrap()).unwrap_err();
        assert!(errs.iter().any(|e| matches!(e, BratteliViolation::B3(_))));

        let early = DirectedGraph::from_parts(
            &["r", "p", "q", "s"],
            &[("g", "p", "r"), ("h", "q", "p"), ("k", "s", "r")],
        )
        .unwrap();
        let errs = validate_bratteli(&early, early.vertex("r").unwrap()).unwrap_err();
        assert_eq!(errs, vec![BratteliViolation::B2("s is a source on level 1".into())]);
    }

    #[test]
    fn local_elements_and_weights() {
        let g = samples::bratteli_b();
        let b = validate_bratteli(&g, g.vertex("r").unwrap()).unwrap();
        let p = |s: &str| parse_path(&g, s).unwrap();
        let s = b.local_monoid_element(p("g1h1"), p("g2h2")).unwrap();
        assert_eq!(b.mu(&s), Ok(2));
        assert_eq!(b.mu(&b.local_monoid_element(p("1_r"), p("1_r")).unwrap()), Ok(0));
        assert_eq!(b.mu(&b.local_monoid_element(p("g1"), p("g2")).unwrap()), Ok(1));
        assert_eq!(
            b.local_monoid_element(p("g1"), p("g1h1")),
            Err(LocalMonoidError::DomainMismatch)
        );
        assert_eq!(b.local_monoid_element(p("h1"), p("h1")), Err(LocalMonoidError::RangeNotRoot));
        assert_eq!(b.mu(&GisElement::Zero), Err(LocalMonoidError::Zero));
        // 1 + 4 + 16
        assert_eq!(b.elements_up_to(2).len(), 21);
    }

    #[test]
    fn axioms_hold_on_instance_b() {
        let g = samples::bratteli_b();
        let b = validate_bratteli(&g, g.vertex("r").unwrap()).unwrap();
        for w in 0..=3 {
            let report = check_bm_axioms(&b, w);
            assert!(report.passed(), "{report:?}");
        }
    }

    #[test]
    fn empty_first_level_fails_bm4() {
        let g = samples::lone_vertex();
        let b = validate_bratteli(&g, g.vertex("v").unwrap()).unwrap();
        let report = check_bm_axioms(&b, 2);
        let failing: Vec<&str> = report
            .checks
            .iter()
            .filter(|c| !c.passed())
            .map(|c| c.name.as_str())
            .collect();
        assert_eq!(failing.len(), 1);
        assert!(failing[0].starts_with("BM4"));
    }
}
