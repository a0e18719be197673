use ea_lab::chain::{build_chain, efht_uniform};
use ea_lab::montecarlo::estimate_efht;
use ea_lab::{
    Algorithm, CrossoverKind, EaConfig, Error, MutationKind, Problem, Strategy, TiePolicy,
};

const RUNS: u64 = 100_000;

fn configs() -> Vec<EaConfig> {
    let mut out = Vec::new();
    for problem in Problem::ALL {
        for mutation in [MutationKind::OneBit, MutationKind::Bitwise] {
            for algo in [Algorithm::OnePlusOne, Algorithm::OnePlusOneStrict] {
                out.push(EaConfig::new(algo, problem, mutation));
            }
            for algo in [Algorithm::TwoColonTwo, Algorithm::TwoPlusTwo] {
                let base = EaConfig::new(algo, problem, mutation);
                out.push(base);
                for kind in CrossoverKind::ALL {
                    out.push(base.with_crossover(kind, 0.5));
                }
                for s in [Strategy::Mr1a, Strategy::Mr3] {
                    out.push(base.with_strategy(s));
                }
            }
            out.push(
                EaConfig::new(Algorithm::TwoColonTwo, problem, mutation)
                    .with_crossover(CrossoverKind::OneBit, 0.5)
                    .with_tie_policy(TiePolicy::PreferOffspring),
            );
        }
    }
    out
}

#[test]
fn simulation_agrees_with_exact_chain() {
    let mut checked = 0;
    let mut failures = Vec::new();
    for n in 2..=4 {
        for (k, config) in configs().into_iter().enumerate() {
            let exact = match build_chain(&config, n).and_then(|m| efht_uniform(&m)) {
                Ok(e) => e,
                Err(Error::NotAbsorbing { .. }) => continue,
                Err(e) => panic!("{}: {e}", config.fingerprint()),
            };
            let est = estimate_efht(&config, n, RUNS, 9000 + k as u64, None).unwrap();
            assert_eq!(est.censored, 0);
            checked += 1;
            if (est.mean - exact).abs() > 4.0 * est.stderr {
                failures.push(format!(
                    "{} n={n}: {} +- {} vs {exact}",
                    config.fingerprint(),
                    est.mean,
                    est.stderr
                ));
            }
        }
    }
    assert!(checked > 100, "only {checked} configurations checked");
    assert!(failures.is_empty(), "{failures:#?}");
}

#[test]
fn stderr_shrinks_when_runs_double() {
    let config = EaConfig::new(
        Algorithm::TwoColonTwo,
        Problem::OneMax,
        MutationKind::OneBit,
    )
    .with_crossover(CrossoverKind::OneBit, 0.5);
    let a = estimate_efht(&config, 8, 20_000, 3, None).unwrap();
    let b = estimate_efht(&config, 8, 40_000, 4, None).unwrap();
    let ratio = a.stderr / b.stderr;
    assert!((1.2..=1.7).contains(&ratio), "ratio {ratio}");
}
