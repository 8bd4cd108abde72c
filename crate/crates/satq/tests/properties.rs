//! Property tests for the invariants the pipeline is built around.

use proptest::prelude::*;

use satq::encoder::{build_conflict_graph, encode, qubo_energy, Bitstring};
use satq::postprocess::{
    classify, complete_witnesses, logical_postprocess, subproblem_postprocess, Classification,
    PostprocessConfig,
};
use satq::samplers::{brute_force_minimize, mix_seed};
use satq::sat::{
    evaluate, generate_random_3sat, parse_dimacs, satisfied_by_partial, write_dimacs, Assignment,
    CnfFormula, PartialAssignment,
};

fn formula_strategy() -> impl Strategy<Value = CnfFormula> {
    (3usize..=8, 1usize..=8, any::<u64>())
        .prop_map(|(n, m, seed)| generate_random_3sat(n, m, seed).unwrap())
}

proptest! {
    #[test]
    fn total_assignment_evaluation_matches_partial_view(
        f in formula_strategy(),
        seed in any::<u64>(),
    ) {
        let n = f.num_variables();
        let values: Vec<bool> = (0..n).map(|j| (mix_seed(seed, j as u64) & 1) == 1).collect();
        let a = Assignment(values);
        let total = evaluate(&f, &a).unwrap();
        let partial = satisfied_by_partial(&f, &a.as_partial()).unwrap();
        prop_assert_eq!(total, partial);
    }

    #[test]
    fn partial_satisfaction_is_monotone_under_extension(
        f in formula_strategy(),
        seed in any::<u64>(),
    ) {
        let n = f.num_variables();
        let base: Vec<Option<bool>> = (0..n)
            .map(|j| match mix_seed(seed, j as u64) % 3 {
                0 => Some(true),
                1 => Some(false),
                _ => None,
            })
            .collect();
        let extended: Vec<Option<bool>> = base
            .iter()
            .enumerate()
            .map(|(j, v)| v.or_else(|| {
                (mix_seed(seed, (n + j) as u64) & 1 == 1).then_some(true)
            }))
            .collect();
        let p = PartialAssignment(base);
        let q = PartialAssignment(extended);
        if satisfied_by_partial(&f, &p).unwrap() {
            prop_assert!(satisfied_by_partial(&f, &q).unwrap());
        }
    }

    #[test]
    fn independent_set_energy_counts_set_bits(f in formula_strategy(), seed in any::<u64>()) {
        let g = build_conflict_graph(&f).unwrap();
        let q = encode(&f).unwrap();
        let dim = g.vertex_count();
        // Greedily build an independent set in a seed-dependent order.
        let mut x = Bitstring::zeros(dim);
        let mut order: Vec<usize> = (0..dim).collect();
        order.sort_by_key(|&i| mix_seed(seed, i as u64));
        for i in order {
            let conflicts = g
                .edges()
                .iter()
                .any(|&(a, b)| (a == i && x.get(b)) || (b == i && x.get(a)));
            if !conflicts {
                x.set(i, true);
            }
        }
        let energy = qubo_energy(&q, &x).unwrap();
        prop_assert_eq!(energy, -(x.count_ones() as f64));
    }

    #[test]
    fn penalty_dominance_for_adjacent_flips(f in formula_strategy(), seed in any::<u64>()) {
        let g = build_conflict_graph(&f).unwrap();
        let q = encode(&f).unwrap();
        let dim = g.vertex_count();
        let mut x = bitstring_from_seed(dim, seed);
        for i in 0..dim {
            if x.get(i) {
                continue;
            }
            let neighbors_set = g
                .edges()
                .iter()
                .filter(|&&(a, b)| (a == i && x.get(b)) || (b == i && x.get(a)))
                .count();
            let before = qubo_energy(&q, &x).unwrap();
            x.set(i, true);
            let after = qubo_energy(&q, &x).unwrap();
            x.set(i, false);
            let delta = after - before;
            prop_assert_eq!(delta, -1.0 + 2.0 * neighbors_set as f64);
            if neighbors_set >= 1 {
                prop_assert!(delta >= 1.0);
            }
        }
    }

    #[test]
    fn dimacs_round_trip(f in formula_strategy()) {
        prop_assert_eq!(parse_dimacs(&write_dimacs(&f)).unwrap(), f);
    }

    #[test]
    fn logical_postprocess_is_monotone_and_preserves_correct(
        f in formula_strategy(),
        seed in any::<u64>(),
    ) {
        let dim = f.num_literals();
        let x = bitstring_from_seed(dim, seed);
        let y = logical_postprocess(&x, &f).unwrap();
        for i in 0..dim {
            prop_assert!(!x.get(i) || y.get(i), "bit {} was unset", i);
        }
        if classify(&x, &f).unwrap() == Classification::Correct {
            prop_assert_eq!(classify(&y, &f).unwrap(), Classification::Correct);
        }
    }

    #[test]
    fn subproblem_postprocess_never_increases_energy(
        f in formula_strategy(),
        seed in any::<u64>(),
        block_size in 1usize..=9,
    ) {
        let q = encode(&f).unwrap();
        let x = bitstring_from_seed(q.dimension(), seed);
        let cfg = PostprocessConfig { block_size, max_passes: 3 };
        let y = subproblem_postprocess(&q, &x, &cfg).unwrap();
        prop_assert!(qubo_energy(&q, &y).unwrap() <= qubo_energy(&q, &x).unwrap() + 1e-9);
    }

    #[test]
    fn complete_witnesses_preserves_correctness(
        f in formula_strategy(),
        seed in any::<u64>(),
    ) {
        let x = bitstring_from_seed(f.num_literals(), seed);
        if classify(&x, &f).unwrap() == Classification::Correct {
            let y = complete_witnesses(&x, &f).unwrap();
            for i in 0..x.len() {
                prop_assert!(!x.get(i) || y.get(i));
            }
            prop_assert_eq!(classify(&y, &f).unwrap(), Classification::Correct);
            // Every clause carries a witness afterwards.
            for k in 0..f.num_clauses() {
                prop_assert!((0..3).any(|t| y.get(3 * k + t)));
            }
        }
    }

    #[test]
    fn ground_states_of_small_satisfiable_formulas_are_correct(
        n in 3usize..=5,
        m in 1usize..=4,
        seed in any::<u64>(),
    ) {
        let f = generate_random_3sat(n, m, seed).unwrap();
        let q = encode(&f).unwrap();
        let (min, argmins) = brute_force_minimize(&q).unwrap();
        let (sat, _) = satq::sat::dpll_satisfiable(&f);
        prop_assert_eq!(min == -(m as f64), sat);
        if sat {
            for x in &argmins {
                prop_assert_eq!(classify(x, &f).unwrap(), Classification::Correct);
            }
        }
    }
}

fn bitstring_from_seed(len: usize, seed: u64) -> Bitstring {
    Bitstring::from_bits((0..len).map(|i| (mix_seed(seed, i as u64) & 1) as u8).collect()).unwrap()
}
