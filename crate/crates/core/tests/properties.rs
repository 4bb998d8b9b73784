use std::collections::BTreeSet;

use graphcap::delsarte::{krawtchouk, KrawtchoukParams};
use graphcap::graph::{
    find_homomorphism, power_graph, semimetric, seq_distance, strong_power, ExtendedDistance,
    SequenceWord,
};
use graphcap::invariants::{
    caro_wei, chromatic_number, fractional_chromatic, independence_number, randomized_greedy_code,
    verify_code,
};
use graphcap::rates::{best_envelope, delta_grid, r_gv, r_lp1, EnvelopeConfig};
use graphcap::{Graph, Limits};
use num_rational::BigRational;
use proptest::prelude::*;

fn arb_graph(max_vertices: usize) -> impl Strategy<Value = Graph> {
    (2..=max_vertices).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let pairs = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
            let edges: Vec<_> = pairs
                .zip(bits)
                .filter(|(_, b)| *b)
                .map(|(e, _)| e)
                .collect();
            Graph::from_edges(n, edges, "random").unwrap()
        })
    })
}

fn graph_with_words(
    max_vertices: usize,
    len: usize,
) -> impl Strategy<Value = (Graph, Vec<usize>, Vec<usize>, Vec<usize>)> {
    arb_graph(max_vertices).prop_flat_map(move |g| {
        let v = g.vertex_count();
        let word = proptest::collection::vec(0..v, len);
        (Just(g), word.clone(), word.clone(), word)
    })
}

fn edge_set(g: &Graph) -> BTreeSet<(usize, usize)> {
    g.edges().collect()
}

fn alpha_exhaustive(g: &Graph) -> usize {
    let n = g.vertex_count();
    (0u32..1 << n)
        .filter(|&m| g.edges().all(|(u, v)| m >> u & 1 == 0 || m >> v & 1 == 0))
        .map(|m| m.count_ones() as usize)
        .max()
        .unwrap()
}

fn ln_binomial(n: usize, k: usize) -> f64 {
    (0..k)
        .map(|i| ((n - i) as f64).ln() - ((i + 1) as f64).ln())
        .sum()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn semimetric_is_symmetric_and_additive((g, x, y, z) in graph_with_words(6, 4)) {
        let wx = SequenceWord::new(x.clone(), &g).unwrap();
        let wy = SequenceWord::new(y.clone(), &g).unwrap();
        let wz = SequenceWord::new(z, &g).unwrap();
        let dxy = seq_distance(&g, &wx, &wy).unwrap();
        prop_assert_eq!(dxy, seq_distance(&g, &wy, &wx).unwrap());
        prop_assert_eq!(dxy == 0, x == y);
        let sum = x.iter().zip(&y).fold(ExtendedDistance::ZERO, |acc, (&a, &b)| {
            acc + semimetric(&g, a, b).unwrap()
        });
        prop_assert_eq!(dxy, sum);
        // every finite coordinate distance is 0 or 1, so the sum is the
        // Hamming distance whenever it is finite
        if let Some(d) = dxy.finite() {
            prop_assert_eq!(d as usize, x.iter().zip(&y).filter(|(a, b)| a != b).count());
        }
        let dyz = seq_distance(&g, &wy, &wz).unwrap();
        let dxz = seq_distance(&g, &wx, &wz).unwrap();
        // finite distances are Hamming distances, which obey the triangle
        // inequality; infinite ones need not
        if dxz.is_finite() {
            if let (Some(a), Some(b)) = (dxy.finite(), dyz.finite()) {
                prop_assert!(dxz.finite().unwrap() <= a + b);
            }
        }
    }

    #[test]
    fn power_graph_is_monotone_in_d(g in arb_graph(4), n in 1usize..=3) {
        let limits = Limits::default();
        let mut previous = BTreeSet::new();
        for d in 0..=n {
            let edges = edge_set(&power_graph(&g, n, d, &limits).unwrap());
            prop_assert!(previous.is_subset(&edges));
            previous = edges;
        }
        prop_assert_eq!(previous, edge_set(&strong_power(&g, n, &limits).unwrap()));
        prop_assert!(edge_set(&power_graph(&g, n, 0, &limits).unwrap()).is_empty());
    }

    #[test]
    fn colorings_are_homomorphisms_to_cliques(g in arb_graph(7)) {
        let limits = Limits::default();
        let chi = chromatic_number(&g, &limits).unwrap();
        let target = Graph::complete(chi).unwrap();
        let hom = find_homomorphism(&g, &target).unwrap().expect("a chi-coloring exists");
        prop_assert!(hom.verify(&g, &target));
        if chi > 1 {
            let smaller = Graph::complete(chi - 1).unwrap();
            prop_assert!(find_homomorphism(&g, &smaller).unwrap().is_none());
        }
    }

    #[test]
    fn branch_and_bound_matches_exhaustive_search(g in arb_graph(12)) {
        let limits = Limits::default();
        let found = independence_number(&g, &limits).unwrap();
        g.check_independent(&found.witness).unwrap();
        let alpha = alpha_exhaustive(&g);
        prop_assert_eq!(found.size, alpha);
        let alpha_q = BigRational::from_integer(alpha.into());
        prop_assert!(caro_wei(&g) <= alpha_q);
        let chi_f = fractional_chromatic(&g, &limits).unwrap();
        let v = BigRational::from_integer(g.vertex_count().into());
        prop_assert!(v / chi_f <= alpha_q);
    }

    #[test]
    fn gv_never_exceeds_lp1(q in 1.05f64..12.0, delta in 0.0f64..=1.0) {
        let gv = r_gv(q, delta).unwrap();
        let lp = r_lp1(q, delta).unwrap();
        prop_assert!(gv >= 0.0 && lp >= 0.0);
        prop_assert!(gv <= lp + 1e-12, "q={} delta={} gv={} lp={}", q, delta, gv, lp);
        prop_assert!(lp <= q.ln() + 1e-12);
    }

    #[test]
    fn krawtchouk_reciprocity(n in 1usize..=14, q in 1.5f64..5.0, seed in any::<u64>()) {
        let p = KrawtchoukParams::new(n, q).unwrap();
        let ell = (seed % (n as u64 + 1)) as usize;
        let x = ((seed >> 16) % (n as u64 + 1)) as usize;
        // (q-1)^x C(n,x) K_ell(x) = (q-1)^ell C(n,ell) K_x(ell)
        let left = krawtchouk(ell, x as f64, &p).unwrap();
        let right = krawtchouk(x, ell as f64, &p).unwrap();
        let ln_scale = (ell as f64 - x as f64) * (q - 1.0).ln() + ln_binomial(n, ell) - ln_binomial(n, x);
        let expected = right * ln_scale.exp();
        prop_assert!((left - expected).abs() <= 1e-9 * (1.0 + left.abs().max(expected.abs())));
    }
}

#[test]
fn envelopes_keep_lower_below_upper() {
    let limits = Limits::default();
    let grid = delta_grid(0.0, 1.0, 0.01).unwrap();
    for g in [
        Graph::cycle(5).unwrap(),
        Graph::cycle(7).unwrap(),
        Graph::complete(3).unwrap(),
        Graph::kneser(5, 2).unwrap(),
        Graph::cycle(4).unwrap(),
    ] {
        let env = best_envelope(&g, &grid, &EnvelopeConfig::default(), &limits).unwrap();
        assert!(env.max_gap_violation() <= 1e-12, "{}", g.label());
        for (lo, up) in env.lower.iter().zip(&env.upper) {
            if let (Some(lo), Some(up)) = (lo, up) {
                assert!(lo.rate_nats <= up.rate_nats + 1e-12);
            }
        }
        // both envelopes are non-increasing in delta
        for side in [&env.lower, &env.upper] {
            let values: Vec<f64> = side.iter().flatten().map(|p| p.rate_nats).collect();
            assert!(
                values.windows(2).all(|w| w[1] <= w[0] + 1e-12),
                "{}",
                g.label()
            );
        }
    }
}

#[test]
fn greedy_codes_are_independent_for_many_seeds() {
    let limits = Limits::default();
    for (g, n, d, s) in [
        (Graph::complete(2).unwrap(), 6, 2, vec![0]),
        (Graph::cycle(5).unwrap(), 3, 1, vec![0, 2]),
        (Graph::complete(3).unwrap(), 4, 2, vec![1]),
    ] {
        for seed in 0..100 {
            let run = randomized_greedy_code(&g, n, d, &s, seed, 10_000, &limits).unwrap();
            verify_code(&g, &run.final_set, d).unwrap();
            assert!(!run.final_set.is_empty());
        }
    }
}
