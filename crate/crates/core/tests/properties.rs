use ea_lab::chain::{build_chain, evolve, optimal_mass, phi_map};
use ea_lab::ea::{ea_step, EaState};
use ea_lab::rng::rng_from_seed;
use ea_lab::{
    Algorithm, BitString, CrossoverKind, EaConfig, MutationKind, Problem, Strategy as Plan,
};
use proptest::prelude::*;

fn bits(n: usize) -> impl Strategy<Value = BitString> {
    proptest::collection::vec(any::<bool>(), n).prop_map(|v| BitString::from_bools(&v))
}

fn config() -> impl Strategy<Value = EaConfig> {
    let algo = prop_oneof![Just(Algorithm::TwoColonTwo), Just(Algorithm::TwoPlusTwo)];
    let problem = prop_oneof![Just(Problem::LeadingOnes), Just(Problem::OneMax)];
    let mutation = prop_oneof![Just(MutationKind::OneBit), Just(MutationKind::Bitwise)];
    let rep = prop_oneof![
        Just(None),
        (0usize..6, 0.0f64..1.0).prop_map(|(k, pc)| Some((Some(CrossoverKind::ALL[k]), pc))),
        (0usize..5).prop_map(|k| Some((None, k as f64))),
    ];
    (algo, problem, mutation, rep).prop_map(|(a, p, m, r)| {
        let c = EaConfig::new(a, p, m);
        match r {
            None => c,
            Some((Some(kind), pc)) => c.with_crossover(kind, pc),
            Some((None, k)) => c.with_strategy(Plan::ALL[k as usize]),
        }
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn index_round_trip(s in bits(37)) {
        prop_assert_eq!(BitString::from_index(20, s.to_index() & 0xfffff).to_index(), s.to_index() & 0xfffff);
        prop_assert_eq!(s.to_string().parse::<BitString>().unwrap(), s.clone());
        prop_assert_eq!(s.count_ones() + s.count_zeros(), 37);
    }

    #[test]
    fn hamming_matches_diff_positions(a in bits(70), b in bits(70)) {
        let d = a.diff_positions(&b);
        prop_assert_eq!(d.len(), a.hamming(&b));
        prop_assert_eq!(d.first().copied(), a.first_diff(&b));
    }

    #[test]
    fn plus_selection_never_loses_the_best(c in config(), a in bits(9), b in bits(9), seed in any::<u64>()) {
        let c = EaConfig { algorithm: Algorithm::TwoPlusTwo, ..c };
        let mut rng = rng_from_seed(seed);
        let mut st = EaState::pair(a, b).unwrap();
        for _ in 0..20 {
            let next = ea_step(&c, &st, &mut rng);
            prop_assert!(next.best_fitness(c.problem) >= st.best_fitness(c.problem));
            st = next;
        }
    }

    #[test]
    fn slot_selection_keeps_each_slot_monotone(c in config(), a in bits(9), b in bits(9), seed in any::<u64>()) {
        let c = EaConfig { algorithm: Algorithm::TwoColonTwo, ..c };
        let mut rng = rng_from_seed(seed);
        let mut st = EaState::pair(a, b).unwrap();
        for _ in 0..20 {
            let next = ea_step(&c, &st, &mut rng);
            let (old, new) = (st.members(), next.members());
            for k in 0..2 {
                prop_assert!(c.problem.evaluate(new[k]) >= c.problem.evaluate(old[k]));
            }
            st = next;
        }
    }

    #[test]
    fn phi_preserves_optimality(a in bits(6), b in bits(6)) {
        let st = EaState::pair(a, b).unwrap();
        for p in Problem::ALL {
            prop_assert_eq!(phi_map(p, &st).is_all_ones(), st.is_optimal());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn chains_are_stochastic_and_absorbing(c in config(), n in 2usize..4) {
        let m = build_chain(&c, n).unwrap();
        prop_assert!(m.max_row_sum_error() < 1e-12);
        prop_assert!(m.optimum_is_closed());
        let mut pi = m.space().uniform();
        let mut last = optimal_mass(&m, &pi);
        for _ in 0..10 {
            pi = evolve(&m, &pi, 1).unwrap();
            prop_assert!((pi.iter().sum::<f64>() - 1.0).abs() < 1e-9);
            let now = optimal_mass(&m, &pi);
            prop_assert!(now >= last - 1e-15);
            last = now;
        }
    }
}
