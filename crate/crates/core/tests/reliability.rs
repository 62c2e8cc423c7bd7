mod common;

use common::factorial;
use connmat::reliability::{
    alpha_via_pathsets, alpha_via_reliability, complete_graph, pathset_counts, pathset_polynomial,
    quotient_graph, reliability_polynomial, Multigraph, PivotRule, ReliabilityOptions,
};
use connmat::{enumerate_partitions, Integer, Limits};
use num_traits::{One, Zero};
use proptest::prelude::*;

fn graph_strategy() -> impl Strategy<Value = Multigraph> {
    (1usize..=5).prop_flat_map(|nodes| {
        prop::collection::vec((0..nodes, 0..nodes, 1usize..=3), 0..6).prop_map(move |edges| {
            let mut g = Multigraph::new(nodes);
            let mut total = 0;
            for (u, v, k) in edges {
                if u != v && total + k <= 10 {
                    g.add_edges(u, v, k).unwrap();
                    total += k;
                }
            }
            g
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn boundary_values_and_pathset_identity(g in graph_strategy(), seed in any::<u64>()) {
        let limits = Limits::default();
        let r = reliability_polynomial::<Integer>(&g, &ReliabilityOptions::default(), &limits).unwrap();
        let counts = pathset_counts(&g, &limits).unwrap();
        prop_assert_eq!(&pathset_polynomial::<Integer>(&counts), &r);
        prop_assert!(r.degree().is_none_or(|d| d <= g.edge_count()));
        if g.is_connected() && g.node_count() > 1 {
            prop_assert!(r.eval(&Integer::one()).is_one());
            prop_assert!(r.eval(&Integer::zero()).is_zero());
        }
        let random = ReliabilityOptions { pivot: PivotRule::Random { seed }, memoize: false };
        prop_assert_eq!(reliability_polynomial::<Integer>(&g, &random, &limits).unwrap(), r);
    }
}

#[test]
fn leading_coefficient_of_every_quotient_is_a_factorial() {
    let limits = Limits::default();
    let opts = ReliabilityOptions::default();
    for n in 1..=6 {
        for a in enumerate_partitions(n, &limits).unwrap() {
            let sizes = a.block_sizes();
            let g_expected: usize = (0..sizes.len())
                .flat_map(|i| (i + 1..sizes.len()).map(move |j| (i, j)))
                .map(|(i, j)| sizes[i] * sizes[j])
                .sum();
            let g = quotient_graph(n, &a).unwrap();
            assert_eq!(g.edge_count(), g_expected);
            let r = reliability_polynomial::<Integer>(&g, &opts, &limits).unwrap();
            assert_eq!(r.degree(), Some(g_expected), "{a}");
            assert_eq!(
                r.coeff(g_expected).magnitude(),
                Integer::from(factorial(a.num_blocks() - 1)).magnitude()
            );
        }
    }
}

#[test]
fn alternating_pathset_sum_is_alpha() {
    let limits = Limits::default();
    let opts = ReliabilityOptions::default();
    for a in enumerate_partitions(4, &limits).unwrap() {
        assert_eq!(
            alpha_via_pathsets::<Integer>(4, &a, &limits).unwrap(),
            alpha_via_reliability::<Integer>(4, &a, &opts, &limits).unwrap()
        );
    }
}

#[test]
fn pathset_guard() {
    let limits = Limits { max_pathset_edges: 5, ..Limits::default() };
    assert!(pathset_counts(&complete_graph(4), &limits).is_err());
}
