use palgraph::graph::canon::canonical_form;
use palgraph::graph::graph6::{parse_graph6, write_graph6};
use palgraph::hairing::{dehair, hair_k, predict_class_of_hairing};
use palgraph::poly::{classify, substitute_hairing};
use palgraph::spectral::char_poly;
use palgraph::tensor::{product_charpoly, tensor_product};
use palgraph::Graph;
use proptest::prelude::*;

fn graph(max_order: usize) -> impl Strategy<Value = Graph> {
    (1..=max_order).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        proptest::collection::vec(any::<bool>(), pairs.len()).prop_map(move |keep| {
            let edges: Vec<(usize, usize)> =
                pairs.iter().zip(&keep).filter(|(_, &k)| k).map(|(&e, _)| e).collect();
            Graph::from_edges(n, &edges).unwrap()
        })
    })
}

fn permuted(max_order: usize) -> impl Strategy<Value = (Graph, Vec<usize>)> {
    graph(max_order).prop_flat_map(|g| {
        let n = g.order();
        (Just(g), Just((0..n).collect::<Vec<_>>()).prop_shuffle())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn graph6_round_trip(g in graph(20)) {
        prop_assert_eq!(parse_graph6(&write_graph6(&g).unwrap()).unwrap(), g);
    }

    #[test]
    fn relabeling_preserves_invariants((g, perm) in permuted(9)) {
        let h = g.relabel(&perm);
        prop_assert_eq!(char_poly(&g).unwrap(), char_poly(&h).unwrap());
        prop_assert_eq!(canonical_form(&g).unwrap().code, canonical_form(&h).unwrap().code);
        prop_assert_eq!(dehair(&g).is_hairing(), dehair(&h).is_hairing());
    }

    #[test]
    fn hairing_identities(g in graph(7), k in 1u32..=3) {
        let h = hair_k(&g, k as usize);
        prop_assert_eq!(h.order(), g.order() * (k as usize + 1));
        prop_assert_eq!(char_poly(&h).unwrap(), substitute_hairing(&char_poly(&g).unwrap(), k).unwrap());
        prop_assert_eq!(h.is_bipartite(), g.is_bipartite());
        if k == 1 {
            prop_assert_eq!(classify(&char_poly(&h).unwrap()).unwrap(), predict_class_of_hairing(&g));
            let cert = dehair(&h);
            let core = &cert.certificate().expect("a hairing is recognized").core_graph;
            prop_assert_eq!(canonical_form(core).unwrap().code, canonical_form(&g).unwrap().code);
        }
    }

    #[test]
    fn tensor_laws(a in graph(4), b in graph(4)) {
        let ab = tensor_product(&a, &b);
        let ba = tensor_product(&b, &a);
        prop_assert_eq!(ab.order(), a.order() * b.order());
        prop_assert_eq!(ab.size(), 2 * a.size() * b.size());
        prop_assert_eq!(canonical_form(&ab).unwrap().code, canonical_form(&ba).unwrap().code);
        let expected = product_charpoly(&char_poly(&a).unwrap(), &char_poly(&b).unwrap()).unwrap();
        prop_assert_eq!(char_poly(&ab).unwrap(), expected);
        prop_assert_eq!(ab.is_bipartite(), a.is_bipartite() || b.is_bipartite());
    }
}
