//! Property tests for the structural invariants.

use proptest::prelude::*;
use rand::Rng;

use sparselim::dominates;
use sparselim::graphs::{WeightTarget, WeightedGraph};
use sparselim::rde::Objective;
use sparselim::solvers::brute::{mwis_bruteforce, mwm_bruteforce};
use sparselim::solvers::solve_sparse_exact;
use sparselim::solvers::treedp::{tree_bonus, BoundaryCondition};
use sparselim::stream::rng_for;
use sparselim::weights::WeightSpec;
use sparselim::EmpiricalDist;

fn pool_strategy(max_len: usize) -> impl Strategy<Value = EmpiricalDist> {
    prop::collection::vec(0.0f64..10.0, 1..max_len)
        .prop_map(|v| EmpiricalDist::from_values(v).unwrap())
}

proptest! {
    #[test]
    fn kolmogorov_distance_is_a_metric(
        a in pool_strategy(120),
        b in pool_strategy(120),
        c in pool_strategy(120),
    ) {
        let ab = a.kolmogorov_distance(&b);
        let bc = b.kolmogorov_distance(&c);
        let ac = a.kolmogorov_distance(&c);
        prop_assert!((0.0..=1.0).contains(&ab));
        prop_assert!((ab - b.kolmogorov_distance(&a)).abs() < 1e-15);
        prop_assert!(ac <= ab + bc + 1e-12, "triangle violated: {ac} > {ab} + {bc}");
        prop_assert_eq!(a.kolmogorov_distance(&a), 0.0);
    }

    #[test]
    fn mutual_dominance_means_equal_distribution(
        values in prop::collection::vec(0.0f64..10.0, 1..400),
        shuffle_seed in 0u64..1000,
    ) {
        // the same multiset in a different order is mutually dominating and
        // at Kolmogorov distance zero
        let a = EmpiricalDist::from_values(values.clone()).unwrap();
        let mut shuffled = values;
        let k = shuffle_seed as usize % shuffled.len();
        shuffled.rotate_left(k);
        let b = EmpiricalDist::from_values(shuffled).unwrap();
        prop_assert!(dominates(&a, &b, 0.0) && dominates(&b, &a, 0.0));
        prop_assert_eq!(a.kolmogorov_distance(&b), 0.0);
    }

    #[test]
    fn mutual_dominance_implies_zero_distance(
        a in pool_strategy(200),
        b in pool_strategy(200),
    ) {
        if dominates(&a, &b, 0.0) && dominates(&b, &a, 0.0) {
            prop_assert_eq!(a.kolmogorov_distance(&b), 0.0);
        }
    }

    #[test]
    fn quantile_is_monotone(a in pool_strategy(200), q1 in 0.0f64..1.0, q2 in 0.0f64..1.0) {
        let (lo, hi) = if q1 <= q2 { (q1, q2) } else { (q2, q1) };
        prop_assert!(a.quantile(lo).unwrap() <= a.quantile(hi).unwrap());
    }

    #[test]
    fn weight_samples_are_non_negative_and_cdf_monotone(
        seed in 0u64..500,
        z in 0.0f64..=1.0,
        t1 in -1.0f64..5.0,
        t2 in -1.0f64..5.0,
    ) {
        for spec in [
            WeightSpec::exponential(),
            WeightSpec::bernoulli(z).unwrap(),
            WeightSpec::one(),
        ] {
            let mut rng = rng_for(seed, 7, 0);
            prop_assert!(spec.sample(&mut rng) >= 0.0);
            let (lo, hi) = if t1 <= t2 { (t1, t2) } else { (t2, t1) };
            prop_assert!(spec.cdf(lo) <= spec.cdf(hi));
            prop_assert_eq!(spec.cdf(-0.5), 0.0);
        }
    }

    #[test]
    fn solvers_agree_and_produce_feasible_sets(seed in 0u64..300) {
        let n = 5 + (seed as usize % 10);
        let mut g = WeightedGraph::gen_gnp(n, 1.8, 9000 + seed).unwrap();
        g.assign_weights(WeightSpec::exponential(), WeightTarget::Nodes, 9100 + seed);
        g.assign_weights(WeightSpec::exponential(), WeightTarget::Edges, 9200 + seed);

        let is_ref = mwis_bruteforce(&g).unwrap();
        is_ref.validate(&g).unwrap();
        if let Ok(is) = solve_sparse_exact(&g, Objective::IndependentSet) {
            is.validate(&g).unwrap();
            prop_assert!((is.value - is_ref.value).abs() < 1e-9);
        }

        let m_ref = mwm_bruteforce(&g).unwrap();
        m_ref.validate(&g).unwrap();
        if let Ok(m) = solve_sparse_exact(&g, Objective::Matching) {
            m.validate(&g).unwrap();
            prop_assert!((m.value - m_ref.value).abs() < 1e-9);
        }
    }

    #[test]
    fn generated_graphs_are_simple(seed in 0u64..200) {
        // generation already validates simplicity; cross-check the invariant
        // by rebuilding from the edge list
        let g = WeightedGraph::gen_gnp(60, 2.0, 9300 + seed).unwrap();
        prop_assert!(WeightedGraph::from_edges(g.n(), &g.edges()).is_ok());
        let r = WeightedGraph::gen_regular(20, 3, 9400 + seed).unwrap();
        prop_assert!((0..20u32).all(|v| r.degree(v) == 3));
    }

    #[test]
    fn tree_bonus_is_between_zero_and_the_root_weight(seed in 0u64..400) {
        let n = 2 + (seed as usize % 12);
        let mut rng = rng_for(9500, 0, seed);
        let edges: Vec<(u32, u32)> =
            (1..n as u32).map(|i| (rng.gen_range(0..i), i)).collect();
        let mut g = WeightedGraph::from_edges(n, &edges).unwrap();
        g.assign_weights(WeightSpec::exponential(), WeightTarget::Nodes, 9600 + seed);
        let b = tree_bonus(&g, 0, Objective::IndependentSet, &BoundaryCondition::new()).unwrap();
        prop_assert!(b.bonus >= 0.0);
        prop_assert!(b.bonus <= g.node_weight(0) + 1e-12);
    }
}

#[test]
fn edge_list_round_trip_property() {
    for seed in 0..20u64 {
        let mut g = WeightedGraph::gen_gnp(40, 2.5, 9700 + seed).unwrap();
        g.assign_weights(WeightSpec::exponential(), WeightTarget::Edges, 9800 + seed);
        let mut buf = Vec::new();
        g.write_edge_list(&mut buf).unwrap();
        let back = WeightedGraph::read_edge_list(&buf[..]).unwrap();
        assert_eq!(back.edges(), g.edges());
        for (u, v) in g.edges() {
            assert_eq!(back.edge_weight(u, v).to_bits(), g.edge_weight(u, v).to_bits());
        }
    }
}
