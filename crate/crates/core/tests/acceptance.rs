//! Acceptance suite. Each test prints one `PASS`/`FAIL` line and fails on `FAIL`.
//! Run with `cargo test -p ea-lab-core --test acceptance -- --nocapture`.

use ea_lab::chain::{
    audit_config, build_chain, efht_uniform, phi_map, theorem_instance, trajectory,
    transition_audit, TransitionMatrix,
};
use ea_lab::exact::{
    cfht_opo_onemax, cfht_strict_opo_leadingones, cfht_table, check_cfht_inequalities,
    equal_lo_lower_bound, n01_fraction_upper_bound, pair_marginals, ref_dcfht_leadingones,
    ref_dcfht_onemax, theorem_bound, TheoremId,
};
use ea_lab::montecarlo::{estimate_efht, gap_with_stderr, EfhtEstimate};
use ea_lab::{
    Algorithm, BitString, CrossoverKind, EaConfig, EaState, MutationKind, Problem, Strategy,
};

const EXACT_TOL: f64 = 1e-9;
const MARGINAL_TOL: f64 = 1e-10;
const TRUNCATION_TOL: f64 = 1e-12;
const CALIBRATION_SE: f64 = 4.0;
const SAMPLED_SE: f64 = 3.0;

fn verdict(criterion: u32, title: &str, failures: &[String]) {
    let status = if failures.is_empty() { "PASS" } else { "FAIL" };
    println!("criterion {criterion:>2} {status}: {title}");
    for f in failures.iter().take(20) {
        println!("    {f}");
    }
    if failures.len() > 20 {
        println!("    ... {} more", failures.len() - 20);
    }
    assert!(
        failures.is_empty(),
        "criterion {criterion} failed: {} issue(s)",
        failures.len()
    );
}

fn two_colon_two(problem: Problem, pc: f64) -> EaConfig {
    let c = EaConfig::new(Algorithm::TwoColonTwo, problem, MutationKind::OneBit);
    if pc > 0.0 {
        c.with_crossover(CrossoverKind::OneBit, pc)
    } else {
        c
    }
}

fn pair_of(chain: &TransitionMatrix, x: usize) -> (BitString, BitString) {
    let st = chain.space().state(x);
    let m = st.members();
    (m[0].clone(), m[1].clone())
}

fn exact_efht(config: &EaConfig, n: usize) -> f64 {
    efht_uniform(&build_chain(config, n).unwrap()).unwrap()
}

fn combined_se(a: &EfhtEstimate, b: &EfhtEstimate) -> f64 {
    a.stderr.hypot(b.stderr)
}

fn seed_of(label: &str) -> u64 {
    ea_lab::rng::hash_label(label)
}

#[test]
fn criterion_01_oracle_triangle() {
    let mut failures = Vec::new();
    for problem in Problem::ALL {
        for n in 2..=4 {
            let m = build_chain(&two_colon_two(problem, 0.0), n).unwrap();
            let table = cfht_table(problem, n);
            let avg = (0..m.len())
                .map(|x| {
                    let (a, b) = pair_of(&m, x);
                    table.get(a.count_zeros(), b.count_zeros())
                })
                .sum::<f64>()
                / m.len() as f64;
            let e = efht_uniform(&m).unwrap();
            if (e - avg).abs() > EXACT_TOL {
                failures.push(format!("{problem:?} n={n}: chain {e} table {avg}"));
            }
        }
    }
    verdict(
        1,
        "chain EFHT equals table average (2:2, mutation only)",
        &failures,
    );
}

#[test]
fn criterion_02_closed_form_dcfht() {
    let mut failures = Vec::new();
    for n in 1..=6 {
        let size = 1u64 << n;
        for problem in Problem::ALL {
            let mut total = 0.0;
            for i in 0..size {
                for j in 0..size {
                    let st =
                        EaState::pair(BitString::from_index(n, i), BitString::from_index(n, j))
                            .unwrap();
                    let zeros = phi_map(problem, &st).count_zeros();
                    total += match problem {
                        Problem::LeadingOnes => cfht_strict_opo_leadingones(n, zeros),
                        Problem::OneMax => cfht_opo_onemax(n, zeros),
                    }
                    .unwrap();
                }
            }
            let brute = total / (size * size) as f64;
            let closed = match problem {
                Problem::LeadingOnes => ref_dcfht_leadingones(n),
                Problem::OneMax => ref_dcfht_onemax(n),
            };
            if (brute - closed).abs() > EXACT_TOL {
                failures.push(format!("{problem:?} n={n}: brute {brute} closed {closed}"));
            }
        }
    }
    verdict(
        2,
        "reference DCFHT closed forms match enumeration, n <= 6",
        &failures,
    );
}

#[test]
fn criterion_03_monte_carlo_calibration() {
    let config = EaConfig::new(
        Algorithm::OnePlusOneStrict,
        Problem::LeadingOnes,
        MutationKind::OneBit,
    );
    let est = estimate_efht(&config, 10, 100_000, seed_of("calibration"), None).unwrap();
    let mut failures = Vec::new();
    if (est.mean - 50.0).abs() > CALIBRATION_SE * est.stderr || est.is_censored() {
        failures.push(format!(
            "mean {} stderr {} (target 50)",
            est.mean, est.stderr
        ));
    }
    println!("    mean {:.4} +- {:.4}", est.mean, est.stderr);
    verdict(
        3,
        "(1+1_>) LeadingOnes n=10 sample mean near n^2/2",
        &failures,
    );
}

#[test]
fn criterion_04_bound_sandwiches() {
    let mut failures = Vec::new();
    let mut checked = 0;
    for problem in Problem::ALL {
        for kind in [CrossoverKind::OnePoint, CrossoverKind::Uniform] {
            let theorems: &[TheoremId] = match (problem, kind) {
                (Problem::LeadingOnes, CrossoverKind::OnePoint) => &[TheoremId::T2, TheoremId::T3],
                (Problem::LeadingOnes, _) => &[TheoremId::T2, TheoremId::T4],
                (Problem::OneMax, CrossoverKind::OnePoint) => &[TheoremId::T5],
                (Problem::OneMax, _) => &[TheoremId::T5, TheoremId::T6],
            };
            for mutation in [MutationKind::OneBit, MutationKind::Bitwise] {
                for n in 2..=4 {
                    for pc in [0.0, 0.5] {
                        let mut c = EaConfig::new(Algorithm::TwoPlusTwo, problem, mutation);
                        if pc > 0.0 {
                            c = c.with_crossover(kind, pc);
                        }
                        let e = exact_efht(&c, n);
                        for &t in theorems {
                            let b = theorem_bound(t, n, pc).unwrap().compare(e, EXACT_TOL);
                            checked += 1;
                            if b.verdict != Some(true) {
                                failures.push(format!(
                                    "{t} {} n={n} pc={pc}: E={e} lower={:?} upper={:?}",
                                    c.fingerprint(),
                                    b.lower,
                                    b.upper
                                ));
                            }
                        }
                    }
                }
            }
        }
    }
    println!("    {checked} comparisons");
    verdict(4, "(2+2) exact EFHT inside the bound sandwiches", &failures);
}

/// Exact and sampled checks of `E_mut < E_cross <= E_mut / (1 - p_c)` and of
/// the gap increment for one problem.
fn crossover_slowdown(problem: Problem, increment: TheoremId) -> Vec<String> {
    let mut failures = Vec::new();
    let pcs = [0.1, 0.5, 0.9];
    for n in [3, 4] {
        let em = exact_efht(&two_colon_two(problem, 0.0), n);
        for pc in pcs {
            let ec = exact_efht(&two_colon_two(problem, pc), n);
            if !(em < ec && ec <= em / (1.0 - pc)) {
                failures.push(format!("exact n={n} pc={pc}: E_mut={em} E_cross={ec}"));
            }
        }
    }
    for n in (10..=60).step_by(10) {
        let runs = 10_000;
        let base = two_colon_two(problem, 0.0);
        let label = |c: &EaConfig| seed_of(&format!("{}#{n}", c.fingerprint()));
        let mutation = estimate_efht(&base, n, runs, label(&base), None).unwrap();
        for pc in pcs {
            let config = two_colon_two(problem, pc);
            let cross = estimate_efht(&config, n, runs, label(&config), None).unwrap();
            let se = combined_se(&cross, &mutation);
            let (ec, em) = (cross.mean, mutation.mean);
            if cross.is_censored() || mutation.is_censored() {
                failures.push(format!("n={n} pc={pc}: censored runs"));
            }
            if ec + SAMPLED_SE * se <= em {
                failures.push(format!(
                    "n={n} pc={pc}: E_cross {ec} not above E_mut {em} (se {se})"
                ));
            }
            let upper_se = cross.stderr.hypot(mutation.stderr / (1.0 - pc));
            if ec > em / (1.0 - pc) + SAMPLED_SE * upper_se {
                failures.push(format!(
                    "n={n} pc={pc}: E_cross {ec} above E_mut/(1-pc) {}",
                    em / (1.0 - pc)
                ));
            }
            let (gap, gap_se) = gap_with_stderr(&cross, &mutation, pc).unwrap();
            let inc = theorem_bound(increment, n, pc).unwrap().lower.unwrap();
            let inc_gap = inc / n as f64 * (1.0 - pc) / pc;
            println!("    n={n} pc={pc}: E_mut {em:.2} E_cross {ec:.2} gap {gap:.4}+-{gap_se:.4} increment {inc_gap:.4}");
            if gap + SAMPLED_SE * gap_se < inc_gap {
                failures.push(format!(
                    "n={n} pc={pc}: gap {gap} +- {gap_se} below increment {inc_gap}"
                ));
            }
        }
    }
    failures
}

#[test]
fn criterion_05_leadingones_crossover_slowdown() {
    let failures = crossover_slowdown(Problem::LeadingOnes, TheoremId::T7Gap);
    verdict(
        5,
        "LeadingOnes crossover slowdown and gap increment",
        &failures,
    );
}

#[test]
fn criterion_06_onemax_crossover_slowdown() {
    let failures = crossover_slowdown(Problem::OneMax, TheoremId::T8Gap);
    verdict(6, "OneMax crossover slowdown and gap increment", &failures);
}

#[test]
fn criterion_07_strategies_beat_mutation() {
    let mut failures = Vec::new();
    let base = two_colon_two(Problem::LeadingOnes, 0.0);
    let exact_points: [(Strategy, &[usize]); 3] = [
        (Strategy::Mr1a, &[3, 4, 5]),
        (Strategy::Mr3, &[3, 4, 5]),
        (Strategy::Mr2, &[8]),
    ];
    for (s, ns) in exact_points {
        for &n in ns {
            let em = exact_efht(&base, n);
            let es = exact_efht(&base.with_strategy(s), n);
            println!(
                "    exact {} n={n}: strategy {es:.6} mutation {em:.6}",
                s.name()
            );
            if es > em + EXACT_TOL {
                failures.push(format!("exact {} n={n}: {es} > {em}", s.name()));
            }
        }
    }
    for n in [16, 32, 64] {
        let runs = 10_000;
        let mutation =
            estimate_efht(&base, n, runs, seed_of(&format!("mr-base#{n}")), None).unwrap();
        for s in Strategy::ALL {
            if n < s.min_n() {
                continue;
            }
            let c = base.with_strategy(s);
            let est = estimate_efht(
                &c,
                n,
                runs,
                seed_of(&format!("{}#{n}", c.fingerprint())),
                None,
            )
            .unwrap();
            let se = combined_se(&est, &mutation);
            println!(
                "    sampled {} n={n}: {:.2} vs {:.2} (se {se:.2})",
                s.name(),
                est.mean,
                mutation.mean
            );
            if est.is_censored() || est.mean > mutation.mean + SAMPLED_SE * se {
                failures.push(format!(
                    "sampled {} n={n}: {} > {}",
                    s.name(),
                    est.mean,
                    mutation.mean
                ));
            }
        }
    }
    verdict(7, "strategies no slower than mutation only", &failures);
}

fn members_where(
    chain: &TransitionMatrix,
    pi: &[f64],
    f: impl Fn(&BitString, &BitString) -> f64,
) -> f64 {
    pi.iter()
        .enumerate()
        .map(|(x, &p)| {
            let (a, b) = pair_of(chain, x);
            p * f(&a, &b)
        })
        .sum()
}

#[test]
fn criterion_08_proposition_suites() {
    let mut failures = Vec::new();
    for problem in Problem::ALL {
        for n in 2..=200 {
            let v = check_cfht_inequalities(problem, n);
            if let Some(first) = v.first() {
                failures.push(format!(
                    "inequalities {problem:?} n={n}: {} violation(s), first {} at i={} delta={}: {} vs {}",
                    v.len(),
                    first.id.name(),
                    first.i,
                    first.delta,
                    first.lhs,
                    first.rhs
                ));
            }
        }
    }
    let n = 3;
    for pc in [0.0, 0.4, 0.5, 0.9] {
        let m = build_chain(&two_colon_two(Problem::OneMax, pc), n).unwrap();
        for (t, pi) in trajectory(&m, &m.space().uniform(), 50)
            .unwrap()
            .iter()
            .enumerate()
        {
            let (f00, f01) = pair_marginals(n, pc, t as u32).unwrap();
            for pos in 1..=n {
                let e00 = members_where(&m, pi, |a, b| f64::from(!a.get(pos) && !b.get(pos)));
                let e01 = members_where(&m, pi, |a, b| f64::from(!a.get(pos) && b.get(pos)));
                if (e00 - f00).abs() > MARGINAL_TOL || (e01 - f01).abs() > MARGINAL_TOL {
                    failures.push(format!("marginals pc={pc} t={t} pos={pos}"));
                }
            }
        }
    }
    for n in [3, 4] {
        for pc in [0.0, 0.5, 0.9] {
            let lo = build_chain(&two_colon_two(Problem::LeadingOnes, pc), n).unwrap();
            let om = build_chain(&two_colon_two(Problem::OneMax, pc), n).unwrap();
            let lo_traj = trajectory(&lo, &lo.space().uniform(), 50).unwrap();
            let om_traj = trajectory(&om, &om.space().uniform(), 50).unwrap();
            let (mut lo_bad, mut n01_bad) = (Vec::new(), Vec::new());
            for t in 0..=50 {
                let equal = members_where(&lo, &lo_traj[t], |a, b| {
                    f64::from(a.leading_ones() == b.leading_ones() && a.leading_ones() < n)
                });
                if equal_lo_lower_bound(n, pc, t as u32).unwrap() > equal + EXACT_TOL {
                    lo_bad.push(t);
                }
                let frac = members_where(&om, &om_traj[t], |a, b| {
                    let n01 = (1..=n).filter(|&q| !a.get(q) && b.get(q)).count();
                    let n00 = (1..=n).filter(|&q| !a.get(q) && !b.get(q)).count();
                    if n01 + n00 == 0 {
                        1.0
                    } else {
                        n01 as f64 / (n01 + n00) as f64
                    }
                });
                if n01_fraction_upper_bound(n, pc, t as u32).unwrap() < frac - EXACT_TOL {
                    n01_bad.push(t);
                }
            }
            if !lo_bad.is_empty() {
                failures.push(format!(
                    "equal-LO bound n={n} pc={pc}: fails at t={lo_bad:?}"
                ));
            }
            if !n01_bad.is_empty() {
                failures.push(format!(
                    "N01 fraction bound n={n} pc={pc}: below exact at {} of 51 steps",
                    n01_bad.len()
                ));
            }
        }
    }
    verdict(
        8,
        "inequalities, marginals and distribution brackets",
        &failures,
    );
}

#[test]
fn criterion_09_gmcst_instances() {
    let mut failures = Vec::new();
    for (theorem, pc) in [
        (TheoremId::T2, 0.5),
        (TheoremId::T4, 0.5),
        (TheoremId::T6, 0.5),
    ] {
        let kind = ea_lab::chain::default_crossover(theorem).unwrap();
        let inst = theorem_instance(theorem, 3, pc, kind, MutationKind::OneBit).unwrap();
        let r = inst.run(10_000_000, TRUNCATION_TOL).unwrap();
        println!(
            "    {theorem} n=3 pc={pc}: E={:.6} implied={:.6} residual={:.2e} steps={}",
            r.report.e_tau,
            r.implied_bound,
            r.report.residual_mass,
            r.report.steps.len()
        );
        if !r.passed() {
            failures.push(format!(
                "{theorem}: per-step {:?} first failure {:?} final {} reference {}",
                r.report.per_step_pass(),
                r.report.first_failure().map(|s| s.t),
                r.final_holds,
                r.ref_matches
            ));
        }
        if r.report.residual_mass >= TRUNCATION_TOL {
            failures.push(format!("{theorem}: residual {}", r.report.residual_mass));
        }
    }
    verdict(
        9,
        "switching theorem instances with analytic slack",
        &failures,
    );
}

#[test]
fn criterion_10_transition_audit() {
    let mut failures = Vec::new();
    for problem in Problem::ALL {
        for pc in [0.0, 0.5, 1.0] {
            let d = transition_audit(&audit_config(problem, pc), 3).unwrap();
            if let Some(first) = d.first() {
                failures.push(format!(
                    "{problem:?} pc={pc}: {} discrepancies, first {:?}",
                    d.len(),
                    first
                ));
            }
        }
    }
    verdict(10, "transition rows match the closed-form laws", &failures);
}
