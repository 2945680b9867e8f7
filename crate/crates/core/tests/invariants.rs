use proptest::prelude::*;

use grism_core::element::enumerate_elements;
use grism_core::eval::{Evaluator, Value};
use grism_core::omega::OmegaModel;
use grism_core::ortho::enumerate_ortho_sets;
use grism_core::syntax::{parse_element, parse_element_list};
use grism_core::{samples, CkSemigroup, DirectedGraph, GisElement, Lenz, OrthoSet};

/// Up to three vertices and six edges with one-letter names.
fn graph_strategy() -> impl Strategy<Value = DirectedGraph> {
    (1usize..=3)
        .prop_flat_map(|n| (Just(n), prop::collection::vec((0..n, 0..n), 0..=6)))
        .prop_map(|(n, edges)| {
            let vertices: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
            let named = edges
                .iter()
                .enumerate()
                .map(|(i, &(s, t))| (((b'a' + i as u8) as char).to_string(), vertices[s].clone(), vertices[t].clone()));
            DirectedGraph::new(vertices.clone(), named).unwrap()
        })
}

fn with_elements() -> impl Strategy<Value = (DirectedGraph, Vec<GisElement>)> {
    graph_strategy().prop_map(|g| {
        let elems = enumerate_elements(&g, 2);
        (g, elems)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn graph_text_round_trips(g in graph_strategy()) {
        let again = DirectedGraph::parse(&g.to_text()).unwrap();
        prop_assert_eq!(again.to_text(), g.to_text());
    }

    #[test]
    fn elements_print_and_parse_back((g, elems) in with_elements()) {
        for s in &elems {
            let text = s.display(&g).to_string();
            prop_assert_eq!(&parse_element(&g, &text).unwrap(), s, "{}", text);
        }
    }

    #[test]
    fn sets_print_and_parse_back((g, elems) in with_elements(), picks in prop::collection::vec(any::<prop::sample::Index>(), 1..4)) {
        prop_assume!(!elems.is_empty());
        let mut chosen: Vec<GisElement> = Vec::new();
        for i in picks {
            let s = i.get(&elems);
            if chosen.iter().all(|t| t.orthogonal(s)) {
                chosen.push(s.clone());
            }
        }
        let set = OrthoSet::new(chosen).unwrap();
        let text = set.display(&g).to_string();
        let parsed = OrthoSet::new(parse_element_list(&g, &text).unwrap()).unwrap();
        prop_assert_eq!(parsed, set);
    }

    #[test]
    fn product_is_associative((_g, elems) in with_elements(), i in any::<prop::sample::Index>(), j in any::<prop::sample::Index>(), k in any::<prop::sample::Index>()) {
        prop_assume!(!elems.is_empty());
        let (s, t, u) = (i.get(&elems), j.get(&elems), k.get(&elems));
        prop_assert_eq!(s.multiply(t).multiply(u), s.multiply(&t.multiply(u)));
        prop_assert_eq!(s.multiply(&s.inverse()).multiply(s), s.clone());
    }
}

fn qualifying() -> Vec<DirectedGraph> {
    vec![samples::polycyclic(2), samples::polycyclic(3), samples::two_vertex()]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn reduce_is_an_idempotent_normal_form(which in 0usize..3, i in any::<prop::sample::Index>()) {
        let g = &qualifying()[which];
        let pool = enumerate_ortho_sets(g, 2, 2);
        let a = i.get(&pool);
        let lenz = Lenz::new(g);
        let r = lenz.reduce(a);
        prop_assert!(lenz.equiv(&r, a).unwrap());
        prop_assert_eq!(lenz.reduce(&r), r);
    }

    #[test]
    fn equivalence_is_a_congruence(which in 0usize..3, i in any::<prop::sample::Index>(), j in any::<prop::sample::Index>()) {
        let g = &qualifying()[which];
        let pool = enumerate_ortho_sets(g, 1, 2);
        let (a, c) = (i.get(&pool), j.get(&pool));
        let lenz = Lenz::new(g);
        let b = lenz.reduce(a);
        prop_assert!(lenz.equiv(&a.product(c), &b.product(c)).unwrap());
        prop_assert!(lenz.equiv(&c.product(a), &c.product(&b)).unwrap());
        prop_assert!(lenz.equiv(&a.inverse(), &b.inverse()).unwrap());
    }

    #[test]
    fn refining_a_cylinder_map_keeps_it(which in 0usize..3, i in any::<prop::sample::Index>(), extra in 0usize..3) {
        let g = &qualifying()[which];
        let om = OmegaModel::new(g).unwrap();
        let pool = enumerate_ortho_sets(g, 2, 2);
        let m = om.from_ortho_set(i.get(&pool));
        let deeper = om.refine(&m, m.max_domain_len() + extra).unwrap();
        prop_assert!(om.maps_equal(&m, &deeper));
        prop_assert_eq!(om.compose(&m, &m.invert()).is_empty(), m.is_empty());
    }
}

#[test]
fn classes_print_and_parse_back() {
    for g in qualifying() {
        let ck = CkSemigroup::new(&g).unwrap();
        let ev = Evaluator::new(&g);
        for a in enumerate_ortho_sets(&g, 1, 2) {
            let c = ck.class_of(&a);
            let text = c.display(&g).to_string();
            match ev.eval_str(&text).unwrap() {
                Value::Ck(back) => assert_eq!(back, c, "{text}"),
                other => panic!("{text} came back as {}", other.display(&g)),
            }
        }
    }
}
