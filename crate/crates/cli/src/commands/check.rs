use anyhow::Result;
use clap::{Args, Subcommand};
use ea_lab::chain::{
    audit_config, build_chain, default_crossover, efht_uniform, equal_lo_mass, n01_fraction,
    position_marginals, theorem_instance, trajectory, transition_audit, RESIDUAL_TOL,
};
use ea_lab::exact::{
    check_cfht_inequalities, equal_lo_lower_bound, n01_fraction_upper_bound, pair_marginals,
    theorem_bound, TheoremId,
};
use ea_lab::{Algorithm, CrossoverKind, EaConfig, MutationKind, Problem};

use crate::failure::Failure;
use crate::opts::PcGrid;

const TOL: f64 = 1e-9;
const MARGINAL_TOL: f64 = 1e-10;
const STEPS: usize = 50;

#[derive(Subcommand, Debug)]
pub enum CheckCommand {
    /// CFHT inequalities and distribution formulas against exact evolution.
    Props {
        /// Largest n for the inequality scan.
        #[arg(long, default_value_t = 200)]
        n_max: usize,
    },
    /// Runtime bounds against exact (2+2)-EA EFHTs.
    Bounds {
        #[arg(long, default_value_t = 4)]
        n_max: usize,
        #[arg(long = "pcs", default_value = "0,0.5,0.9")]
        pcs: PcGrid,
    },
    /// Switching-theorem instances with the analytic slack.
    Gmcst(GmcstArgs),
    /// Transition rows against the closed-form laws.
    Audit {
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long = "pc", default_value = "0,0.5,1")]
        pcs: PcGrid,
        /// Defaults to both problems.
        #[arg(long)]
        problem: Option<Problem>,
    },
}

#[derive(Args, Debug)]
pub struct GmcstArgs {
    /// 2..6 (or t2..t6); all by default.
    #[arg(long)]
    pub theorem: Option<String>,
    /// 2..4 by default.
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long, default_value_t = 0.5)]
    pub pc: f64,
    /// Defaults to the operator the theorem is usually stated with.
    #[arg(long)]
    pub crossover: Option<CrossoverKind>,
    #[arg(long, default_value = "onebit")]
    pub mutation: MutationKind,
    /// Per-step rows to print for each instance.
    #[arg(long, default_value_t = 10)]
    pub show_steps: usize,
    #[arg(long, default_value_t = 10_000_000)]
    pub horizon: usize,
    #[arg(long, default_value_t = 1e-12)]
    pub tail_eps: f64,
}

/// Collects check outcomes and prints one line per check.
#[derive(Default)]
struct Report {
    failed: usize,
    passed: usize,
}

impl Report {
    fn record(&mut self, name: &str, issues: &[String]) {
        if issues.is_empty() {
            self.passed += 1;
            println!("PASS {name}");
        } else {
            self.failed += 1;
            println!("FAIL {name}: {} issue(s)", issues.len());
            for i in issues.iter().take(10) {
                println!("    {i}");
            }
            if issues.len() > 10 {
                println!("    ... {} more", issues.len() - 10);
            }
        }
    }

    fn finish(self) -> Result<()> {
        println!("{} passed, {} failed", self.passed, self.failed);
        if self.failed > 0 {
            return Err(Failure::ChecksFailed(self.failed).into());
        }
        Ok(())
    }
}

fn two_colon_two(problem: Problem, pc: f64) -> EaConfig {
    let c = EaConfig::new(Algorithm::TwoColonTwo, problem, MutationKind::OneBit);
    if pc > 0.0 {
        c.with_crossover(CrossoverKind::OneBit, pc)
    } else {
        c
    }
}

fn props(n_max: usize) -> Result<()> {
    if n_max < 2 {
        return Err(Failure::Usage("--n-max must be at least 2".into()).into());
    }
    let mut report = Report::default();
    for problem in Problem::ALL {
        let issues: Vec<String> = (2..=n_max)
            .flat_map(|n| {
                check_cfht_inequalities(problem, n)
                    .into_iter()
                    .map(move |v| {
                        format!(
                            "n={n} {} i={} delta={}: {} vs {}",
                            v.id.name(),
                            v.i,
                            v.delta,
                            v.lhs,
                            v.rhs
                        )
                    })
            })
            .collect();
        report.record(&format!("inequalities {problem} n=2..{n_max}"), &issues);
    }
    let n = 3;
    for pc in [0.0, 0.4, 0.5, 0.9] {
        let m = build_chain(&two_colon_two(Problem::OneMax, pc), n)?;
        let mut issues = Vec::new();
        for (t, pi) in trajectory(&m, &m.space().uniform(), STEPS)?
            .iter()
            .enumerate()
        {
            let (f00, f01) = pair_marginals(n, pc, t as u32)?;
            for pos in 1..=n {
                let (e00, e01) = position_marginals(&m, pi, pos)?;
                if (e00 - f00).abs() > MARGINAL_TOL || (e01 - f01).abs() > MARGINAL_TOL {
                    issues.push(format!(
                        "t={t} pos={pos}: exact ({e00}, {e01}) formula ({f00}, {f01})"
                    ));
                }
            }
        }
        report.record(&format!("pair marginals n={n} pc={pc}"), &issues);
    }
    for n in [3, 4] {
        for pc in [0.0, 0.5, 0.9] {
            let lo = build_chain(&two_colon_two(Problem::LeadingOnes, pc), n)?;
            let om = build_chain(&two_colon_two(Problem::OneMax, pc), n)?;
            let (mut eq_issues, mut n01_issues) = (Vec::new(), Vec::new());
            let lo_traj = trajectory(&lo, &lo.space().uniform(), STEPS)?;
            let om_traj = trajectory(&om, &om.space().uniform(), STEPS)?;
            for t in 0..=STEPS {
                let exact = equal_lo_mass(&lo, &lo_traj[t])?;
                let bound = equal_lo_lower_bound(n, pc, t as u32)?;
                if bound > exact + TOL {
                    eq_issues.push(format!("t={t}: bound {bound} > exact {exact}"));
                }
                let exact = n01_fraction(&om, &om_traj[t])?;
                let bound = n01_fraction_upper_bound(n, pc, t as u32)?;
                if bound < exact - TOL {
                    n01_issues.push(format!("t={t}: bound {bound} < exact {exact}"));
                }
            }
            report.record(&format!("equal-LO lower bound n={n} pc={pc}"), &eq_issues);
            report.record(
                &format!("N01 fraction upper bound n={n} pc={pc}"),
                &n01_issues,
            );
        }
    }
    report.finish()
}

fn bounds(n_max: usize, pcs: &[f64]) -> Result<()> {
    if !(2..=6).contains(&n_max) {
        return Err(Failure::Usage("--n-max must lie in 2..=6".into()).into());
    }
    let mut report = Report::default();
    for problem in Problem::ALL {
        for kind in [CrossoverKind::OnePoint, CrossoverKind::Uniform] {
            let theorems: &[TheoremId] = match (problem, kind) {
                (Problem::LeadingOnes, CrossoverKind::OnePoint) => &[TheoremId::T2, TheoremId::T3],
                (Problem::LeadingOnes, _) => &[TheoremId::T2, TheoremId::T4],
                (Problem::OneMax, CrossoverKind::OnePoint) => &[TheoremId::T5],
                (Problem::OneMax, _) => &[TheoremId::T5, TheoremId::T6],
            };
            for mutation in [MutationKind::OneBit, MutationKind::Bitwise] {
                let mut issues = Vec::new();
                for n in 2..=n_max {
                    for &pc in pcs.iter().filter(|&&p| p < 1.0) {
                        let mut c = EaConfig::new(Algorithm::TwoPlusTwo, problem, mutation);
                        if pc > 0.0 {
                            c = c.with_crossover(kind, pc);
                        }
                        let e = efht_uniform(&build_chain(&c, n)?)?;
                        for &t in theorems {
                            let b = theorem_bound(t, n, pc)?.compare(e, TOL);
                            if b.verdict != Some(true) {
                                issues.push(format!(
                                    "{t} n={n} pc={pc}: E={e} lower={:?} upper={:?}",
                                    b.lower, b.upper
                                ));
                            }
                        }
                    }
                }
                report.record(&format!("2p2 {problem} {kind} {mutation}"), &issues);
            }
        }
    }
    report.finish()
}

fn parse_theorem(s: &str) -> Result<TheoremId> {
    let key = if s.chars().all(|c| c.is_ascii_digit()) {
        format!("t{s}")
    } else {
        s.to_string()
    };
    let t: TheoremId = key
        .parse()
        .map_err(|e: ea_lab::Error| Failure::Usage(e.to_string()))?;
    if !matches!(
        t,
        TheoremId::T2 | TheoremId::T3 | TheoremId::T4 | TheoremId::T5 | TheoremId::T6
    ) {
        return Err(Failure::Usage(format!("{t} has no switching-theorem instance")).into());
    }
    Ok(t)
}

fn gmcst(args: &GmcstArgs) -> Result<()> {
    let theorems = match &args.theorem {
        Some(s) => vec![parse_theorem(s)?],
        None => vec![
            TheoremId::T2,
            TheoremId::T3,
            TheoremId::T4,
            TheoremId::T5,
            TheoremId::T6,
        ],
    };
    let ns = match args.n {
        Some(n) => vec![n],
        None => vec![2, 3, 4],
    };
    let mut report = Report::default();
    for &t in &theorems {
        let kind = match args.crossover {
            Some(k) => k,
            None => default_crossover(t)?,
        };
        for &n in &ns {
            let inst = theorem_instance(t, n, args.pc, kind, args.mutation)?;
            let r = inst.run(args.horizon, args.tail_eps)?;
            println!(
                "{t} n={n} pc={} {kind} {}: side {:?}, {} steps",
                args.pc,
                args.mutation,
                r.report.side,
                r.report.steps.len()
            );
            println!(
                "    {:>4} {:>14} {:>14} {:>14} {:>14} ok",
                "t", "lhs", "rhs", "rho", "analytic"
            );
            for s in r.report.steps.iter().take(args.show_steps) {
                println!(
                    "    {:>4} {:>14.8} {:>14.8} {:>14.8} {:>14.8} {}",
                    s.t,
                    s.lhs,
                    s.rhs,
                    s.rho,
                    s.analytic.unwrap_or(f64::NAN),
                    match s.holds {
                        Some(true) => "yes",
                        Some(false) => "NO",
                        None => "-",
                    }
                );
            }
            println!(
                "    E[tau] {:.10}  E[tau'] {:.10} (closed form {:.10})  implied bound {:.10}  residual {:.2e}  identity error {:.2e}",
                r.report.e_tau,
                r.report.e_tau_ref,
                r.ref_closed_form,
                r.implied_bound,
                r.report.residual_mass,
                r.report.identity_error
            );
            let mut issues = Vec::new();
            if let Some(s) = r.report.first_failure() {
                issues.push(format!(
                    "{} step(s) fail, first at t={}: rho {} analytic {:?}",
                    r.report.failed_steps, s.t, s.rho, s.analytic
                ));
            }
            if !r.final_holds {
                issues.push(format!(
                    "final inequality: E {} vs {}",
                    r.report.e_tau, r.implied_bound
                ));
            }
            if !r.ref_matches {
                issues.push("reference DCFHT differs from its closed form".into());
            }
            if r.report.truncated {
                issues.push(format!(
                    "truncated with residual mass {}",
                    r.report.residual_mass
                ));
            }
            if r.report.identity_error > RESIDUAL_TOL {
                issues.push(format!("identity error {}", r.report.identity_error));
            }
            report.record(&format!("gmcst {t} n={n} pc={}", args.pc), &issues);
        }
    }
    report.finish()
}

fn audit(n: usize, pcs: &[f64], problem: Option<Problem>) -> Result<()> {
    let problems = problem
        .map(|p| vec![p])
        .unwrap_or_else(|| Problem::ALL.to_vec());
    let mut report = Report::default();
    for p in problems {
        for &pc in pcs {
            let issues: Vec<String> = transition_audit(&audit_config(p, pc), n)?
                .iter()
                .map(|d| format!("{d:?}"))
                .collect();
            report.record(&format!("audit {p} n={n} pc={pc}"), &issues);
        }
    }
    report.finish()
}

pub fn run(cmd: &CheckCommand) -> Result<()> {
    match cmd {
        CheckCommand::Props { n_max } => props(*n_max),
        CheckCommand::Bounds { n_max, pcs } => bounds(*n_max, &pcs.0),
        CheckCommand::Gmcst(args) => gmcst(args),
        CheckCommand::Audit { n, pcs, problem } => audit(*n, &pcs.0, *problem),
    }
}
