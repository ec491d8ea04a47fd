mod common;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::{brute_force_degeneracy, brute_force_degeneracy_of, random_graph};
use recolour_core::colouring::{format_colouring, parse_colouring};
use recolour_core::corpus::random_colouring;
use recolour_core::degeneracy::{augment_to_maximal_independent, degenerate_partition};
use recolour_core::recolour::{kempe_swap_via_scratch, KempeComponent};
use recolour_core::sequence::{format_sequence, parse_sequence};
use recolour_core::{
    apply_sequence, degeneracy, degeneracy_ordering, eliminate_top_colour, find_path_non_regular,
    parse_edge_list, reverse_sequence, to_edge_list, Colour, Colouring, Graph, RecolouringSequence,
    Step,
};

/// Seeded random graph: `(n, edge probability, seed)`.
fn graph_strategy(max_n: usize) -> impl Strategy<Value = (Graph, u64)> {
    (1..=max_n, 0.05f64..0.8, any::<u64>()).prop_map(|(n, p, seed)| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (random_graph(n, p, &mut rng), seed)
    })
}

fn walk(g: &Graph, start: &Colouring, len: usize, rng: &mut ChaCha8Rng) -> RecolouringSequence {
    use rand::Rng;
    let mut current = start.as_slice().to_vec();
    let mut steps = Vec::new();
    for _ in 0..len {
        let v = rng.gen_range(0..g.n());
        let free: Vec<Colour> = (1..=start.k())
            .filter(|&c| c != current[v] && g.neighbours(v).iter().all(|&w| current[w] != c))
            .collect();
        if let Some(&c) = free.first() {
            current[v] = c;
            steps.push(Step::new(v, c));
        }
    }
    steps.into()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn edge_list_round_trip((g, _) in graph_strategy(12)) {
        prop_assert_eq!(parse_edge_list(&to_edge_list(&g)).unwrap(), g);
    }

    #[test]
    fn neighbourhoods_are_symmetric((g, _) in graph_strategy(12)) {
        for u in g.vertices() {
            for &w in g.neighbours(u) {
                prop_assert!(g.neighbours(w).contains(&u));
            }
        }
    }

    #[test]
    fn ordering_witnesses_brute_force_degeneracy((g, _) in graph_strategy(10)) {
        let ordering = degeneracy_ordering(&g);
        let d = ordering.degeneracy();
        prop_assert_eq!(d, brute_force_degeneracy(&g));
        prop_assert_eq!(degeneracy(&g), d);
        for (i, &v) in ordering.order().iter().enumerate() {
            let earlier = ordering.order()[..i].iter().filter(|&&w| g.has_edge(v, w)).count();
            prop_assert!(earlier <= d);
        }
    }

    #[test]
    fn partition_parts_respect_budgets((g, seed) in graph_strategy(9), r in 1usize..=4) {
        let k = degeneracy(&g);
        prop_assume!(k + 1 >= r);
        // Spread k - r + 1 over r parts using the seed.
        let mut budgets = vec![0; r];
        for i in 0..k + 1 - r {
            budgets[(seed as usize >> (i % 16)) % r] += 1;
        }
        let p = degenerate_partition(&g, k, &budgets).unwrap();
        for (part, &b) in p.parts().iter().zip(&budgets) {
            prop_assert!(part.is_empty() || brute_force_degeneracy_of(&g, part) <= b);
        }
        if budgets[0] == 0 {
            let q = augment_to_maximal_independent(&g, &p).unwrap();
            let first = &q.parts()[0];
            for &u in first {
                prop_assert!(first.iter().all(|&w| !g.has_edge(u, w)));
            }
            for v in g.vertices().filter(|v| !first.contains(v)) {
                prop_assert!(first.iter().any(|&w| g.has_edge(v, w)));
            }
            for (part, &b) in q.parts().iter().zip(&budgets).skip(1) {
                prop_assert!(part.is_empty() || brute_force_degeneracy_of(&g, part) <= b);
            }
        }
    }

    #[test]
    fn reverse_returns_to_start((g, seed) in graph_strategy(12), len in 0usize..40, extra in 0u32..3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let k = g.max_degree() as Colour + 1 + extra;
        let a = random_colouring(&g, k, &mut rng).unwrap();
        let seq = walk(&g, &a, len, &mut rng);
        let end = apply_sequence(&g, &a, &seq).unwrap();
        let back = reverse_sequence(&g, &a, &seq).unwrap();
        prop_assert_eq!(back.len(), seq.len());
        prop_assert_eq!(apply_sequence(&g, &end, &back).unwrap(), a);
    }

    #[test]
    fn double_kempe_swap_is_identity((g, seed) in graph_strategy(12), anchor in any::<usize>(), pick in any::<u32>()) {
        prop_assume!(g.max_degree() > 0);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let used = g.max_degree() as Colour + 1;
        let c = random_colouring(&g, used, &mut rng).unwrap();
        let c = Colouring::new(used + 1, c.into_vec()).unwrap();
        let anchor = anchor % g.n();
        let i = c.colour(anchor);
        let j = (i + pick % (used - 1)) % used + 1;
        let comp = KempeComponent::around(&g, &c, anchor, j);
        let once = kempe_swap_via_scratch(&g, &c, &comp, used + 1).unwrap();
        let js = comp.vertices().iter().filter(|&&v| c.colour(v) == j).count();
        prop_assert_eq!(once.len(), 2 * js + (comp.vertices().len() - js));
        let swapped = apply_sequence(&g, &c, &once).unwrap();
        for v in g.vertices() {
            let expected = match c.colour(v) {
                x if comp.vertices().contains(&v) && x == i => j,
                x if comp.vertices().contains(&v) && x == j => i,
                x => x,
            };
            prop_assert_eq!(swapped.colour(v), expected);
        }
        let back = KempeComponent::around(&g, &swapped, anchor, i);
        let twice = kempe_swap_via_scratch(&g, &swapped, &back, used + 1).unwrap();
        prop_assert_eq!(apply_sequence(&g, &swapped, &twice).unwrap(), c);
    }

    #[test]
    fn elimination_stays_within_bounds((g, seed) in graph_strategy(14)) {
        let delta = g.max_degree();
        prop_assume!(delta >= 1 && degeneracy(&g) < delta);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let top = delta as Colour + 1;
        let c = random_colouring(&g, top, &mut rng).unwrap();
        let e = eliminate_top_colour(&g, &c).unwrap();
        let n = g.n();
        prop_assert_eq!(apply_sequence(&g, &c, &e.sequence).unwrap(), e.colouring.clone());
        prop_assert_eq!(e.colouring.count_of(top), 0);
        prop_assert!(e.sequence.len() <= n * n);
        prop_assert!(e.sequence.recolour_counts(n).iter().all(|&x| x <= n));
        prop_assert!(e.rounds.len() <= n);
    }

    #[test]
    fn non_regular_paths_validate((g, seed) in graph_strategy(14)) {
        prop_assume!(g.is_connected() && !g.is_regular() && g.max_degree() >= 3);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let top = g.max_degree() as Colour + 1;
        let a = random_colouring(&g, top, &mut rng).unwrap();
        let b = random_colouring(&g, top, &mut rng).unwrap();
        let path = find_path_non_regular(&g, &a, &b).unwrap();
        prop_assert_eq!(apply_sequence(&g, &a, &path.sequence).unwrap(), b);
        prop_assert!(path.sequence.len() <= 10 * g.n() * g.n());
        prop_assert_eq!(
            path.forward_steps + path.middle_steps + path.backward_steps,
            path.sequence.len()
        );
    }

    #[test]
    fn text_formats_round_trip((g, seed) in graph_strategy(10), len in 0usize..20) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let k = g.max_degree() as Colour + 1;
        let c = random_colouring(&g, k, &mut rng).unwrap();
        prop_assert_eq!(parse_colouring(&format_colouring(&c)).unwrap(), c.clone());
        let seq = walk(&g, &c, len, &mut rng);
        prop_assert_eq!(parse_sequence(&format_sequence(&seq)).unwrap(), seq);
    }
}
