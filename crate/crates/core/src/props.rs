//! Property suites run by `grism props`.
//!
//! Every suite enumerates a bounded slice of the structure (paths of length
//! at most `depth`, orthogonal sets of at most two elements) and checks its
//! laws exhaustively on that slice. Reports are deterministic.

use serde::Serialize;

use crate::bratteli::{check_bm_axioms, validate_bratteli};
use crate::branching::{compose, BranchingSystem};
use crate::ck::{require_in_degree_two, CkSemigroup};
use crate::element::{enumerate_elements, enumerate_idempotents, GisElement, GreenRelation};
use crate::graph::{DirectedGraph, VertexId};
use crate::groupoid::{z_product, AmpleModel, Basis};
use crate::lenz::{Lenz, DEFAULT_MAX_ARROW_DEPTH};
use crate::omega::{action_is_empty, OmegaModel};
use crate::ortho::{enumerate_ortho_sets, OrthoSet};
use crate::report::LawCheck;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    GisLaws,
    #[serde(rename = "lemma-1-7")]
    Lemma17,
    #[serde(rename = "lemma-2-9")]
    Lemma29,
    #[serde(rename = "lemma-3-8")]
    Lemma38,
    #[serde(rename = "thm-3-13")]
    Thm313,
    #[serde(rename = "thm-3-20")]
    Thm320,
    CkLaws,
    Bratteli,
    Branching,
}

impl Suite {
    pub const ALL: [Suite; 9] = [
        Suite::GisLaws,
        Suite::Lemma17,
        Suite::Lemma29,
        Suite::Lemma38,
        Suite::Thm313,
        Suite::Thm320,
        Suite::CkLaws,
        Suite::Bratteli,
        Suite::Branching,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::GisLaws => "gis-laws",
            Suite::Lemma17 => "lemma-1-7",
            Suite::Lemma29 => "lemma-2-9",
            Suite::Lemma38 => "lemma-3-8",
            Suite::Thm313 => "thm-3-13",
            Suite::Thm320 => "thm-3-20",
            Suite::CkLaws => "ck-laws",
            Suite::Bratteli => "bratteli",
            Suite::Branching => "branching",
        }
    }

    pub fn from_name(name: &str) -> Option<Suite> {
        Suite::ALL.into_iter().find(|s| s.name() == name)
    }

    pub fn summary(self) -> &'static str {
        match self {
            Suite::GisLaws => "inverse-semigroup laws, meets, covers and Green's relations",
            Suite::Lemma17 => "E*-unitary and unambiguous order",
            Suite::Lemma29 => "0-minimal idempotents, 0-disjunctivity and pseudofiniteness against in-degrees",
            Suite::Lemma38 => "bi-arrow against brute-force common refinement",
            Suite::Thm313 => "Cuntz-Krieger classes against cylinder maps",
            Suite::Thm320 => "Cuntz-Krieger classes against groupoid bisections",
            Suite::CkLaws => "joins, covers and boolean operations in CK_G",
            Suite::Bratteli => "Bratteli graph axioms and weight function",
            Suite::Branching => "strong representation from a branching system",
        }
    }
}

#[derive(Debug, Clone)]
pub struct PropsOptions {
    pub depth: usize,
    pub max_arrow_depth: usize,
    /// Needed by the branching suite.
    pub system: Option<BranchingSystem>,
}

impl Default for PropsOptions {
    fn default() -> Self {
        PropsOptions {
            depth: 2,
            max_arrow_depth: DEFAULT_MAX_ARROW_DEPTH,
            system: None,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Fact {
    pub name: String,
    pub value: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub schema: u32,
    pub suite: Suite,
    pub depth: usize,
    pub vertices: usize,
    pub edges: usize,
    /// Set when the suite could not run on this graph.
    pub precondition: Option<String>,
    pub facts: Vec<Fact>,
    pub checks: Vec<LawCheck>,
    pub passed: bool,
}

struct Builder {
    report: SuiteReport,
}

impl Builder {
    fn new(suite: Suite, graph: &DirectedGraph, depth: usize) -> Builder {
        Builder {
            report: SuiteReport {
                schema: SCHEMA_VERSION,
                suite,
                depth,
                vertices: graph.vertex_count(),
                edges: graph.edge_count(),
                precondition: None,
                facts: Vec::new(),
                checks: Vec::new(),
                passed: false,
            },
        }
    }

    fn fact(&mut self, name: &str, value: impl Into<String>) {
        self.report.facts.push(Fact {
            name: name.into(),
            value: value.into(),
        });
    }

    fn check(&mut self, c: LawCheck) {
        self.report.checks.push(c);
    }

    fn blocked(mut self, why: String) -> SuiteReport {
        self.report.precondition = Some(why);
        self.report.passed = false;
        self.report
    }

    fn finish(mut self) -> SuiteReport {
        self.report.passed = self.report.precondition.is_none() && crate::report::all_passed(&self.report.checks);
        self.report
    }
}

pub fn run_suite(graph: &DirectedGraph, suite: Suite, opts: &PropsOptions) -> SuiteReport {
    let b = Builder::new(suite, graph, opts.depth);
    match suite {
        Suite::GisLaws => gis_laws(graph, opts, b),
        Suite::Lemma17 => lemma_1_7(graph, opts, b),
        Suite::Lemma29 => lemma_2_9(graph, opts, b),
        Suite::Lemma38 => lemma_3_8(graph, opts, b),
        Suite::Thm313 => thm_3_13(graph, opts, b),
        Suite::Thm320 => thm_3_20(graph, opts, b),
        Suite::CkLaws => ck_laws(graph, opts, b),
        Suite::Bratteli => bratteli(graph, opts, b),
        Suite::Branching => branching(graph, opts, b),
    }
}

fn show(g: &DirectedGraph, s: &GisElement) -> String {
    s.display(g).to_string()
}

fn show_set(g: &DirectedGraph, a: &OrthoSet) -> String {
    a.display(g).to_string()
}

fn strictly_below(f: &GisElement, e: &GisElement) -> bool {
    f != e && f.leq(e)
}

fn gis_laws(g: &DirectedGraph, opts: &PropsOptions, mut b: Builder) -> SuiteReport {
    let elems = enumerate_elements(g, opts.depth);
    let mut with_zero = elems.clone();
    with_zero.push(GisElement::Zero);
    b.fact("elements", elems.len().to_string());

    let mut assoc = LawCheck::new("associativity");
    for s in &with_zero {
        for t in &with_zero {
            let st = s.multiply(t);
            for u in &with_zero {
                assoc.record(st.multiply(u) == s.multiply(&t.multiply(u)), || {
                    format!("({}, {}, {})", show(g, s), show(g, t), show(g, u))
                });
            }
        }
    }
    b.check(assoc);

    let mut regular = LawCheck::new("s = s s^-1 s and s^-1 = s^-1 s s^-1");
    for s in &with_zero {
        let i = s.inverse();
        regular.record(
            s.multiply(&i).multiply(s) == *s && i.multiply(s).multiply(&i) == i,
            || show(g, s),
        );
    }
    b.check(regular);

    let idems: Vec<&GisElement> = with_zero.iter().filter(|s| s.multiply(s) == **s).collect();
    let mut idem_shape = LawCheck::new("idempotents are exactly 0 and x*x^-1");
    for s in &with_zero {
        idem_shape.record(idems.contains(&s) == s.is_idempotent(), || show(g, s));
    }
    b.check(idem_shape);

    let mut commute = LawCheck::new("idempotents commute");
    for e in &idems {
        for f in &idems {
            commute.record(e.multiply(f) == f.multiply(e), || format!("{} and {}", show(g, e), show(g, f)));
        }
    }
    b.check(commute);

    let mut order = LawCheck::new("s <= t iff s = t s^-1 s");
    let mut meets = LawCheck::new("meet is the greatest common lower bound");
    let mut orth = LawCheck::new("orthogonal iff both path pairs are prefix-incomparable");
    let mut compat = LawCheck::new("elements below a common element are compatible");
    let mut combinatorial = LawCheck::new("H is equality");
    let mut greens = LawCheck::new("L, R and D agree with their definitions");
    for s in &elems {
        for t in &elems {
            order.record(s.leq(t) == (*s == t.multiply(&s.inverse()).multiply(s)), || {
                format!("{} and {}", show(g, s), show(g, t))
            });
            let lower: Vec<&GisElement> = with_zero.iter().filter(|u| u.leq(s) && u.leq(t)).collect();
            let m = s.meet(t);
            meets.record(lower.contains(&&m) && lower.iter().all(|u| u.leq(&m)), || {
                format!("meet of {} and {}", show(g, s), show(g, t))
            });
            let (x, y) = s.paths().expect("non-zero");
            let (u, v) = t.paths().expect("non-zero");
            orth.record(
                s.orthogonal(t) == (!x.is_comparable(u) && !y.is_comparable(v)),
                || format!("{} and {}", show(g, s), show(g, t)),
            );
            let l = s.domain_idempotent() == t.domain_idempotent();
            let r = s.range_idempotent() == t.range_idempotent();
            combinatorial.record(!(l && r) || s == t, || format!("{} H {}", show(g, s), show(g, t)));
            let d = elems.iter().any(|w| {
                s.range_idempotent() == w.range_idempotent() && w.domain_idempotent() == t.domain_idempotent()
            });
            let ok = s.greens(t, GreenRelation::L, g) == Ok(l)
                && s.greens(t, GreenRelation::R, g) == Ok(r)
                && s.greens(t, GreenRelation::H, g) == Ok(l && r)
                && s.greens(t, GreenRelation::D, g) == Ok(d);
            greens.record(ok, || format!("{} and {}", show(g, s), show(g, t)));
        }
    }
    for w in &elems {
        let below: Vec<&GisElement> = elems.iter().filter(|s| s.leq(w)).collect();
        for s in &below {
            for t in &below {
                compat.record(s.compatible(t), || format!("{} and {}", show(g, s), show(g, t)));
            }
        }
    }
    b.check(order);
    b.check(meets);
    b.check(orth);
    b.check(compat);
    b.check(combinatorial);
    b.check(greens);

    let deep = enumerate_idempotents(g, opts.depth + 2);
    let mut covers = LawCheck::new("covered idempotents are orthogonal and exactly the covers");
    let mut height = LawCheck::new("x*x^-1 has |x| + 1 idempotents above it");
    let mut maximal = LawCheck::new("maximal idempotent lies above s s^-1");
    for e in enumerate_idempotents(g, opts.depth) {
        let hat = e.covered_idempotents(g).expect("non-zero idempotent");
        let n = e.weight().expect("idempotent");
        let brute: Vec<&GisElement> = deep
            .iter()
            .filter(|f| f.weight().unwrap() <= n + 1 && strictly_below(f, &e))
            .filter(|f| !deep.iter().any(|h| strictly_below(f, h) && strictly_below(h, &e)))
            .collect();
        let pairwise = hat
            .iter()
            .enumerate()
            .all(|(i, f)| hat[i + 1..].iter().all(|h| f.orthogonal(h)));
        covers.record(
            pairwise && brute.len() == hat.len() && brute.iter().all(|f| hat.contains(f)),
            || show(g, &e),
        );
        let above = deep.iter().filter(|f| e.leq(f)).count();
        height.record(above == n + 1, || format!("{} has {above}", show(g, &e)));
        maximal.record(e.leq(&e.maximal_idempotent_over().unwrap()), || show(g, &e));
    }
    b.check(covers);
    b.check(height);
    b.check(maximal);
    b.finish()
}

fn lemma_1_7(g: &DirectedGraph, opts: &PropsOptions, mut b: Builder) -> SuiteReport {
    let elems = enumerate_elements(g, opts.depth);
    let mut unitary = LawCheck::new("E*-unitary: 0 != e <= s with e idempotent forces s idempotent");
    let mut unambiguous = LawCheck::new("unambiguous: a non-zero common lower bound forces comparability");
    let mut idem = LawCheck::new("idempotents: e f != 0 forces comparability");
    for s in &elems {
        for t in &elems {
            if s.is_idempotent() && s.leq(t) {
                unitary.record(t.is_idempotent(), || format!("{} <= {}", show(g, s), show(g, t)));
            } else {
                unitary.checked += 1;
            }
            let common = elems.iter().any(|u| u.leq(s) && u.leq(t));
            unambiguous.record(!common || s.is_comparable(t), || format!("{} and {}", show(g, s), show(g, t)));
            if s.is_idempotent() && t.is_idempotent() {
                idem.record(s.multiply(t).is_zero() || s.is_comparable(t), || {
                    format!("{} and {}", show(g, s), show(g, t))
                });
            }
        }
    }
    b.check(unitary);
    b.check(unambiguous);
    b.check(idem);
    b.finish()
}

/// Some non-zero idempotent of weight at most `depth` has no non-zero
/// idempotent strictly below it among weights up to `depth + 1`.
pub fn has_zero_minimal_idempotent(g: &DirectedGraph, depth: usize) -> bool {
    let idems = enumerate_idempotents(g, depth + 1);
    idems
        .iter()
        .filter(|e| e.weight().unwrap() <= depth)
        .any(|e| !idems.iter().any(|f| strictly_below(f, e)))
}

/// 0-disjunctivity restricted to `f` of weight at most `depth` and `e`,
/// `e'` of weight at most `depth + 1`.
pub fn is_zero_disjunctive(g: &DirectedGraph, depth: usize) -> bool {
    let idems = enumerate_idempotents(g, depth + 1);
    idems.iter().filter(|f| f.weight().unwrap() <= depth).all(|f| {
        idems.iter().filter(|e| strictly_below(e, f)).all(|e| {
            idems
                .iter()
                .any(|e2| strictly_below(e2, f) && e.multiply(e2).is_zero())
        })
    })
}

/// Pseudofiniteness restricted to `e` of weight at most `depth`: below each
/// `f < e` lies some idempotent covered by `e`, and `e` covers finitely many.
/// Covers are found by search, not from the closed form.
pub fn is_pseudofinite(g: &DirectedGraph, depth: usize) -> bool {
    let idems = enumerate_idempotents(g, depth + 2);
    idems.iter().filter(|e| e.weight().unwrap() <= depth).all(|e| {
        let covered: Vec<&GisElement> = idems
            .iter()
            .filter(|f| strictly_below(f, e))
            .filter(|f| !idems.iter().any(|h| strictly_below(f, h) && strictly_below(h, e)))
            .collect();
        idems
            .iter()
            .filter(|f| strictly_below(f, e))
            .all(|f| covered.iter().any(|c| f.leq(c)))
    })
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn lemma_2_9(g: &DirectedGraph, opts: &PropsOptions, mut b: Builder) -> SuiteReport {
    let d = opts.depth;
    let degrees: Vec<usize> = g.vertices().map(|v| g.in_degree(v)).collect();
    let some_source = degrees.contains(&0);
    let zero_or_two = degrees.iter().all(|&k| k == 0 || k >= 2);

    let minimal = has_zero_minimal_idempotent(g, d);
    let disjunctive = is_zero_disjunctive(g, d);
    let pseudo = is_pseudofinite(g, d);
    b.fact("0-minimal idempotents exist", yes_no(minimal));
    b.fact("0-disjunctive", yes_no(disjunctive));
    b.fact("pseudofinite", yes_no(pseudo));
    if let Some(v) = g.vertices().find(|&v| g.in_degree(v) == 1) {
        b.fact("in-degree 1 at", g.vertex_name(v));
    }
    if let Some(v) = g.vertices().find(|&v| g.in_degree(v) == 0) {
        b.fact("in-degree 0 at", g.vertex_name(v));
    }

    let mut c1 = LawCheck::new("0-minimal idempotents exist iff some vertex has in-degree 0");
    c1.record(minimal == some_source, || format!("search says {}", yes_no(minimal)));
    let mut c2 = LawCheck::new("0-disjunctive iff every in-degree is 0 or at least 2");
    c2.record(disjunctive == zero_or_two, || format!("search says {}", yes_no(disjunctive)));
    let mut c3 = LawCheck::new("pseudofinite iff every in-degree is finite");
    c3.record(pseudo, || "search found an idempotent with no cover above".into());
    b.check(c1);
    b.check(c2);
    b.check(c3);
    b.finish()
}

/// Arrow `a -> C` by exhaustive enumeration of the elements below `a`. Only
/// extensions up to the longest path in `C` need inspecting: a longer
/// element lies below one of that length, which meets some member of `C`
/// only by lying below it.
pub fn brute_arrow(g: &DirectedGraph, a: &GisElement, c: &OrthoSet) -> bool {
    let Some((x, _)) = a.paths() else {
        return true;
    };
    let reach = c
        .iter()
        .map(|s| s.paths().map(|(u, v)| u.len().max(v.len())).unwrap_or(0))
        .max()
        .unwrap_or(0);
    let steps = reach.saturating_sub(x.len()) + 1;
    (0..=steps).all(|k| {
        a.refine(g, k)
            .iter()
            .all(|s| c.iter().any(|t| !s.meet(t).is_zero()))
    })
}

fn brute_arrow_sets(g: &DirectedGraph, a: &OrthoSet, c: &OrthoSet) -> bool {
    a.iter().all(|s| brute_arrow(g, s, c))
}

/// Searches for an orthogonal set `C` with at most `max_size` members,
/// each lying below a member of both `A` and `B`, such that `A -> C` and
/// `B -> C`. This is the definition of `A ≡ B` with `C` bounded.
pub fn exists_common_refinement(g: &DirectedGraph, a: &OrthoSet, b: &OrthoSet, max_len: usize, max_size: usize) -> bool {
    refinement_search(g, &enumerate_elements(g, max_len), a, b, max_size)
}

fn refinement_search(g: &DirectedGraph, universe: &[GisElement], a: &OrthoSet, b: &OrthoSet, max_size: usize) -> bool {
    if a.is_empty() || b.is_empty() {
        return a.is_empty() && b.is_empty();
    }
    let candidates: Vec<&GisElement> = universe
        .iter()
        .filter(|c| a.iter().any(|s| c.leq(s)) && b.iter().any(|t| c.leq(t)))
        .collect();
    let mut stack: Vec<(usize, Vec<usize>)> = vec![(0, Vec::new())];
    while let Some((start, chosen)) = stack.pop() {
        if !chosen.is_empty() {
            let set = OrthoSet::new(chosen.iter().map(|&i| candidates[i].clone())).expect("orthogonal by construction");
            if brute_arrow_sets(g, a, &set) && brute_arrow_sets(g, b, &set) {
                return true;
            }
        }
        if chosen.len() == max_size {
            continue;
        }
        for i in start..candidates.len() {
            if chosen.iter().all(|&j| candidates[j].orthogonal(candidates[i])) {
                let mut next = chosen.clone();
                next.push(i);
                stack.push((i + 1, next));
            }
        }
    }
    false
}

fn lemma_3_8(g: &DirectedGraph, opts: &PropsOptions, mut b: Builder) -> SuiteReport {
    let lenz = Lenz::new(g).with_max_depth(opts.max_arrow_depth);
    let pool = enumerate_ortho_sets(g, opts.depth, 2);
    b.fact("sets", pool.len().to_string());
    let mut agree = LawCheck::new("bi-arrow agrees with a common refinement of at most 3 elements");
    let mut equivalent = 0;
    let universe = enumerate_elements(g, opts.depth + 1);
    for a in &pool {
        for c in &pool {
            let fast = match lenz.bi_arrow(a, c) {
                Ok(v) => v,
                Err(e) => {
                    agree.fail(format!("{} and {}: {e}", show_set(g, a), show_set(g, c)));
                    continue;
                }
            };
            equivalent += usize::from(fast);
            let slow = refinement_search(g, &universe, a, c, 3);
            agree.record(fast == slow, || format!("{} and {}", show_set(g, a), show_set(g, c)));
        }
    }
    b.fact("equivalent pairs", equivalent.to_string());
    b.check(agree);
    b.finish()
}

fn pool_for_models(g: &DirectedGraph, depth: usize) -> Vec<OrthoSet> {
    enumerate_ortho_sets(g, depth, 2)
}

fn thm_3_13(g: &DirectedGraph, opts: &PropsOptions, mut b: Builder) -> SuiteReport {
    let mut restricted = LawCheck::new("the action sends no non-zero element to the empty map iff no vertex has in-degree 0");
    let empties = enumerate_elements(g, opts.depth).iter().any(|s| action_is_empty(g, s));
    let some_source = g.vertices().any(|v| g.in_degree(v) == 0);
    restricted.record(empties == some_source, || format!("empty images found: {}", yes_no(empties)));
    b.check(restricted);

    let om = match OmegaModel::new(g) {
        Ok(m) => m,
        Err(e) => return b.blocked(e.to_string()),
    };
    let ck = CkSemigroup::new(g).expect("same precondition").with_max_arrow_depth(opts.max_arrow_depth);
    let pool = pool_for_models(g, opts.depth);
    let maps: Vec<_> = pool.iter().map(|a| om.from_ortho_set(a)).collect();
    b.fact("sets", pool.len().to_string());

    let mut agree = LawCheck::new("A ≡ B iff their cylinder maps are equal");
    let mut product = LawCheck::new("map of A B is the composite of the maps");
    let mut inverse = LawCheck::new("map of A^-1 is the inverse map");
    let mut refine = LawCheck::new("refining a map one level deeper leaves it unchanged");
    let mut injective = LawCheck::new("theta is injective on elements");
    for (i, a) in pool.iter().enumerate() {
        inverse.record(om.maps_equal(&om.from_ortho_set(&a.inverse()), &maps[i].invert()), || show_set(g, a));
        let deeper = om.refine(&maps[i], maps[i].max_domain_len() + 1).expect("deeper than needed");
        refine.record(om.maps_equal(&maps[i], &deeper), || show_set(g, a));
        for (j, c) in pool.iter().enumerate() {
            match ck.lenz().equiv(a, c) {
                Ok(eq) => agree.record(eq == om.maps_equal(&maps[i], &maps[j]), || {
                    format!("{} and {}", show_set(g, a), show_set(g, c))
                }),
                Err(e) => agree.fail(e.to_string()),
            }
            product.record(
                om.maps_equal(&om.from_ortho_set(&a.product(c)), &om.compose(&maps[i], &maps[j])),
                || format!("{} . {}", show_set(g, a), show_set(g, c)),
            );
        }
    }
    let elems = enumerate_elements(g, opts.depth);
    for s in &elems {
        for t in &elems {
            if s != t {
                injective.record(!om.maps_equal(&om.from_element(s), &om.from_element(t)), || {
                    format!("{} and {}", show(g, s), show(g, t))
                });
            }
        }
    }
    b.check(agree);
    b.check(product);
    b.check(inverse);
    b.check(refine);
    b.check(injective);
    b.finish()
}

fn thm_3_20(g: &DirectedGraph, opts: &PropsOptions, mut b: Builder) -> SuiteReport {
    let am = match AmpleModel::new(g) {
        Ok(m) => m,
        Err(e) => return b.blocked(e.to_string()),
    };
    let om = OmegaModel::new(g).expect("same precondition");
    let ck = CkSemigroup::new(g).expect("same precondition").with_max_arrow_depth(opts.max_arrow_depth);

    let mut basis = LawCheck::new("Z(x,y) Z(u,v) matches composition of cylinder maps");
    let mut shift = LawCheck::new("k = |y| - |x| is additive");
    let mut meet = LawCheck::new("Z(x,y) ∩ Z(u,v) is the basis set of the meet");
    let elems = enumerate_elements(g, opts.depth + 1);
    let pairs: Vec<Basis> = elems
        .iter()
        .map(|s| {
            let (x, y) = s.paths().expect("non-zero");
            Basis::new(x.clone(), y.clone()).expect("coterminal")
        })
        .collect();
    for (p, s) in pairs.iter().zip(&elems) {
        for (q, t) in pairs.iter().zip(&elems) {
            let composed = om.compose(&om.from_element(s), &om.from_element(t));
            let zp = z_product(p, q);
            let as_map = zp.as_ref().map(|r| om.from_element(&r.element())).unwrap_or_default();
            basis.record(om.maps_equal(&as_map, &composed), || format!("{} . {}", show(g, s), show(g, t)));
            if let Some(r) = &zp {
                shift.record(r.k() == p.k() + q.k(), || format!("{} . {}", show(g, s), show(g, t)));
            }
            let m = crate::groupoid::z_intersect(p, q).map(|r| r.element()).unwrap_or(GisElement::Zero);
            meet.record(m == s.meet(t), || format!("{} and {}", show(g, s), show(g, t)));
        }
    }
    b.check(basis);
    b.check(shift);
    b.check(meet);

    let pool = pool_for_models(g, opts.depth);
    b.fact("sets", pool.len().to_string());
    let bis: Vec<_> = pool.iter().map(|a| am.theta_set(a)).collect();
    let mut agree = LawCheck::new("A ≡ B iff their bisections are equal");
    let mut product = LawCheck::new("bisection of A B is the product of the bisections");
    let mut union = LawCheck::new("bisection of a join is the union");
    for (i, a) in pool.iter().enumerate() {
        for (j, c) in pool.iter().enumerate() {
            match ck.lenz().equiv(a, c) {
                Ok(eq) => agree.record(eq == am.equal(&bis[i], &bis[j]), || {
                    format!("{} and {}", show_set(g, a), show_set(g, c))
                }),
                Err(e) => agree.fail(e.to_string()),
            }
            product.record(
                am.equal(&am.theta_set(&a.product(c)), &am.multiply(&bis[i], &bis[j])),
                || format!("{} . {}", show_set(g, a), show_set(g, c)),
            );
            if let Ok(joined) = a.ortho_join(c) {
                let ok = am
                    .union(&bis[i], &bis[j])
                    .map(|u| am.equal(&u, &am.theta_set(&joined)))
                    .unwrap_or(false);
                union.record(ok, || format!("{} | {}", show_set(g, a), show_set(g, c)));
            }
        }
    }
    b.check(agree);
    b.check(product);
    b.check(union);
    b.finish()
}

fn ck_laws(g: &DirectedGraph, opts: &PropsOptions, mut b: Builder) -> SuiteReport {
    let ck = match CkSemigroup::new(g) {
        Ok(c) => c.with_max_arrow_depth(opts.max_arrow_depth),
        Err(e) => return b.blocked(e.to_string()),
    };
    let eq = |x: &crate::ck::CkElement, y: &crate::ck::CkElement| ck.equal(x, y).unwrap_or(false);

    let mut cover = LawCheck::new("delta(1_v) is the join of the covered idempotents");
    for v in g.vertices() {
        let one = GisElement::vertex_identity(v);
        let hat: Vec<_> = one.covered_idempotents(g).unwrap().iter().map(|e| ck.delta(e)).collect();
        let ok = ck.join_all(&hat).map(|j| eq(&j, &ck.delta(&one))).unwrap_or(false);
        cover.record(ok, || g.vertex_name(v).to_string());
    }
    b.check(cover);

    let elems = enumerate_elements(g, opts.depth);
    let mut injective = LawCheck::new("delta is injective");
    for s in &elems {
        for t in &elems {
            if s != t {
                injective.record(!eq(&ck.delta(s), &ck.delta(t)), || format!("{} and {}", show(g, s), show(g, t)));
            }
        }
    }
    b.check(injective);

    let pool = pool_for_models(g, opts.depth);
    let classes: Vec<_> = pool.iter().map(|a| ck.class_of(a)).collect();
    let mut generated = LawCheck::new("every class is the join of the delta-images of its representative");
    for (a, c) in pool.iter().zip(&classes) {
        let parts: Vec<_> = a.iter().map(|s| ck.delta(s)).collect();
        let ok = ck.join_all(&parts).map(|j| eq(&j, c)).unwrap_or(false);
        generated.record(ok, || show_set(g, a));
    }
    b.check(generated);

    let mut exists = LawCheck::new("orthogonal sets have a join");
    let mut distrib = LawCheck::new("multiplication distributes over joins");
    let singles: Vec<(GisElement, crate::ck::CkElement)> = elems.iter().map(|s| (s.clone(), ck.delta(s))).collect();
    for (s, ds) in &singles {
        for (t, dt) in &singles {
            if !s.orthogonal(t) {
                continue;
            }
            let j = ck.join(ds, dt);
            exists.record(j.is_ok(), || format!("{} | {}", show(g, s), show(g, t)));
            let Ok(j) = j else { continue };
            for c in &classes {
                let left = ck.multiply(c, &j);
                let right = ck.join(&ck.multiply(c, ds), &ck.multiply(c, dt));
                let l_ok = right.map(|r| eq(&left, &r)).unwrap_or(false);
                let left2 = ck.multiply(&j, c);
                let right2 = ck.join(&ck.multiply(ds, c), &ck.multiply(dt, c));
                let r_ok = right2.map(|r| eq(&left2, &r)).unwrap_or(false);
                distrib.record(l_ok && r_ok, || {
                    format!("{} with {} | {}", c.display(g), show(g, s), show(g, t))
                });
            }
        }
    }
    b.check(exists);
    b.check(distrib);

    let idem: Vec<_> = classes.iter().filter(|c| c.is_idempotent()).collect();
    let mut boolean = LawCheck::new("meet, difference and union of idempotent classes");
    for e in &idem {
        for f in &idem {
            let m = ck.idempotent_meet(e, f).unwrap();
            let d = ck.idempotent_difference(e, f).unwrap();
            let u = ck.idempotent_union(e, f).unwrap();
            let ok = eq(&m, &ck.multiply(e, f))
                && eq(&m, &ck.idempotent_meet(f, e).unwrap())
                && ck.idempotent_meet(&m, &d).unwrap().is_zero()
                && ck.join(&m, &d).map(|x| eq(&x, e)).unwrap_or(false)
                && eq(&ck.idempotent_meet(&u, e).unwrap(), e)
                && eq(&ck.idempotent_union(&d, f).unwrap(), &u);
            boolean.record(ok, || format!("{} and {}", e.display(g), f.display(g)));
        }
    }
    b.check(boolean);
    b.finish()
}

fn bratteli(g: &DirectedGraph, opts: &PropsOptions, mut b: Builder) -> SuiteReport {
    let sinks: Vec<VertexId> = g.vertices().filter(|&v| g.out_degree(v) == 0).collect();
    let root = match sinks.as_slice() {
        [r] => *r,
        _ => match g.has_root() {
            Some(r) => r,
            None => return b.blocked("no vertex is reachable from every vertex".into()),
        },
    };
    b.fact("root", g.vertex_name(root));
    let bg = match validate_bratteli(g, root) {
        Ok(bg) => bg,
        Err(violations) => {
            let shown: Vec<String> = violations.iter().map(|v| v.to_string()).collect();
            return b.blocked(shown.join("; "));
        }
    };
    b.fact("height", bg.height().to_string());
    let report = check_bm_axioms(&bg, opts.depth);
    b.fact("checked weight", report.checked_weight.to_string());
    for c in report.checks {
        b.check(c);
    }
    b.finish()
}

fn branching(g: &DirectedGraph, opts: &PropsOptions, mut b: Builder) -> SuiteReport {
    let Some(system) = &opts.system else {
        return b.blocked("the branching suite needs a system file (--system)".into());
    };
    let report = system.validate_strong(g);
    if let Some(note) = &report.cardinality_note {
        b.fact("cardinality", note.clone());
    }
    let mut strong = LawCheck::new("system is strong");
    if report.issues.is_empty() {
        strong.record(true, String::new);
    }
    for issue in &report.issues {
        strong.fail(issue.clone());
    }
    b.check(strong);
    let Ok(ss) = system.strong(g) else {
        return b.finish();
    };

    let elems = enumerate_elements(g, opts.depth);
    let mut identity = LawCheck::new("1_v acts as the identity on X_v");
    for v in g.vertices() {
        identity.record(ss.represent(&GisElement::vertex_identity(v)) == ss.identity_on(v), || {
            g.vertex_name(v).to_string()
        });
    }
    b.check(identity);
    let mut hom = LawCheck::new("represent(s t) = represent(s) represent(t)");
    for s in &elems {
        for t in &elems {
            hom.record(ss.represent(&s.multiply(t)) == compose(&ss.represent(s), &ss.represent(t)), || {
                format!("{} . {}", show(g, s), show(g, t))
            });
        }
    }
    b.check(hom);
    let mut joins = LawCheck::new("each idempotent acts as the join of its covers");
    for e in enumerate_idempotents(g, opts.depth) {
        let hat = OrthoSet::new(e.covered_idempotents(g).unwrap()).expect("covers are orthogonal");
        if hat.is_empty() {
            continue;
        }
        joins.record(ss.represent_ortho(&hat) == ss.represent(&e), || show(g, &e));
    }
    b.check(joins);

    let lenz = Lenz::new(g).with_max_depth(opts.max_arrow_depth);
    let pool = pool_for_models(g, opts.depth.min(1));
    let mut classes = LawCheck::new("equivalent sets act identically");
    let ck = require_in_degree_two(g).ok().map(|_| CkSemigroup::new(g).unwrap());
    for a in &pool {
        for c in &pool {
            if lenz.equiv(a, c).unwrap_or(false) {
                let same = match &ck {
                    Some(ck) => ss.represent_ck(&ck.class_of(a)) == ss.represent_ck(&ck.class_of(c)),
                    None => ss.represent_ortho(a) == ss.represent_ortho(c),
                };
                classes.record(same, || format!("{} and {}", show_set(g, a), show_set(g, c)));
            }
        }
    }
    b.check(classes);
    b.finish()
}
