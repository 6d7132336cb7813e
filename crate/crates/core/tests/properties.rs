//! Cross-module properties on random inputs.

use macmahon::hopf::phi_symbolic;
use macmahon::*;
use proptest::prelude::*;

fn graph_strategy(n_max: usize) -> impl Strategy<Value = WeightedGraph> {
    (1..=n_max)
        .prop_flat_map(|n| {
            let pairs = n * (n - 1) / 2;
            (
                proptest::collection::vec(1u32..=3, n),
                proptest::collection::vec(any::<bool>(), pairs),
            )
        })
        .prop_map(|(w, keep)| {
            let n = w.len();
            let all = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b)));
            let edges: Vec<_> = all.zip(keep).filter(|(_, k)| *k).map(|(e, _)| e).collect();
            WeightedGraph::with_scalar_weights(&w, &edges).unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn both_routes_recover_the_egdp(n in 1usize..=7, r in 1usize..=2, seed in any::<u64>()) {
        let f = random_forest(n, 3, r, seed).unwrap();
        let truth = egdp(&f).unwrap();
        prop_assert_eq!(&recover_egdp_hopf(&cmf(&f).unwrap()).unwrap(), &truth);
        if r == 1 {
            let w = f.total_weight().coords()[0];
            let beta = beta_table(&f).unwrap();
            let got = recover_egdp_explicit(&beta, n as u32, w, f.num_edges() as u32).unwrap();
            prop_assert_eq!(got, truth);
        }
    }

    #[test]
    fn truncation_matches_coloring_oracle(g in graph_strategy(5), k in 1usize..=3) {
        prop_assert_eq!(cmf(&g).unwrap().truncate(k).unwrap(), coloring_oracle(&g, k).unwrap());
    }

    #[test]
    fn cmf_of_disjoint_union(a in graph_strategy(4), b in graph_strategy(3)) {
        let u = a.disjoint_union(&b).unwrap();
        prop_assert_eq!(cmf(&u).unwrap(), cmf(&a).unwrap().mul(&cmf(&b).unwrap()).unwrap());
    }

    #[test]
    fn antipode_is_an_involution(g in graph_strategy(5)) {
        let x = cmf(&g).unwrap();
        prop_assert_eq!(antipode(&antipode(&x)), x);
    }

    #[test]
    fn stats_read_off_forests(n in 1usize..=8, seed in any::<u64>()) {
        let f = random_forest(n, 4, 1, seed).unwrap();
        let s = recover_stats(&cmf(&f).unwrap()).unwrap();
        prop_assert_eq!(s.n as usize, f.n());
        prop_assert_eq!(s.e as usize, f.num_edges());
        prop_assert_eq!(s.c as usize, f.num_components());
        prop_assert_eq!(&s.w, &f.total_weight());
    }

    #[test]
    fn gamma_of_any_graph_is_a_laurent_image(g in graph_strategy(5)) {
        // for non-forests recovery must not silently succeed with a wrong answer
        let x = cmf(&g).unwrap();
        match recover_egdp_hopf(&x) {
            Ok(p) => {
                prop_assert!(g.is_forest());
                prop_assert_eq!(p, egdp(&g).unwrap());
            }
            Err(_) => prop_assert!(!g.is_forest()),
        }
        prop_assert!(phi_symbolic(&x).is_ok());
    }
}
