use std::path::PathBuf;

use anyhow::Result;
use clap::{Args, ValueEnum};
use ea_lab::exact::{theorem_bound, TheoremId};
use ea_lab::montecarlo::{sweep, ComparisonRecord, GridPoint, SweepSpec};
use ea_lab::{Algorithm, CrossoverKind, EaConfig, MutationKind, Problem, Strategy};

use crate::commands::sweep::{check_censoring, to_record};
use crate::opts::{NGrid, PcGrid};
use crate::output::{create, json_path, now, write_file};
use crate::record::{to_json, write_csv, ExperimentRecord};
use crate::svg::{Chart, Panel, Series};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Figure {
    /// Estimated EFHT per crossover probability.
    Efht,
    /// Normalized slowdown `(E_cross - E_mut) (1 - p_c) / (n p_c)`.
    Gap,
    /// Normalized ratio `E_cross (1 - p_c) / E_mut`.
    Ratio,
    /// Estimated EFHT of the crossover strategies.
    Mr,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum YScale {
    Auto,
    Linear,
    Log,
}

#[derive(Args, Debug)]
pub struct FigureArgs {
    #[arg(value_enum)]
    pub figure: Figure,
    /// Sizes, e.g. 10:100:10.
    #[arg(long = "n", default_value = "10:100:10")]
    pub ns: NGrid,
    /// Crossover probabilities; 0 is always added as the baseline.
    #[arg(long = "pcs", default_value = "0,0.1,0.5,0.9")]
    pub pcs: PcGrid,
    #[arg(long, default_value_t = 1000)]
    pub runs: u64,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub cutoff: Option<u64>,
    /// Directory for `<figure>.csv` and `<figure>.svg`.
    #[arg(long, default_value = ".")]
    pub out_dir: PathBuf,
    #[arg(long, value_enum, default_value = "auto")]
    pub y_scale: YScale,
    #[arg(long)]
    pub json: bool,
    #[arg(long)]
    pub force: bool,
    #[arg(long)]
    pub no_timestamp: bool,
}

fn base(problem: Problem) -> EaConfig {
    EaConfig::new(Algorithm::TwoColonTwo, problem, MutationKind::OneBit)
        .with_crossover(CrossoverKind::OneBit, 0.5)
}

fn strategies(problem: Problem) -> Vec<Strategy> {
    match problem {
        Problem::LeadingOnes => vec![Strategy::Mr1a, Strategy::Mr1b, Strategy::Mr1, Strategy::Mr2],
        Problem::OneMax => vec![Strategy::Mr3],
    }
}

fn series_label(r: &ComparisonRecord) -> String {
    match r.point {
        GridPoint::Pc(0.0) => "mutation only".into(),
        GridPoint::Pc(pc) => format!("p_c = {pc}"),
        GridPoint::Strategy(s) => s.name().to_uppercase(),
    }
}

/// Records and chart series of one problem panel.
fn panel(args: &FigureArgs, problem: Problem, seed: u64) -> Result<(Vec<ExperimentRecord>, Panel)> {
    let mut pcs = args.pcs.0.clone();
    if !pcs.contains(&0.0) {
        pcs.insert(0, 0.0);
    }
    let (pcs, strats) = match args.figure {
        Figure::Mr => (vec![0.0], strategies(problem)),
        _ => (pcs, vec![]),
    };
    let spec = SweepSpec {
        base: base(problem),
        ns: args.ns.0.clone(),
        pcs,
        strategies: strats,
        runs: args.runs,
        master_seed: seed,
        cutoff: args.cutoff,
    };
    let results = sweep(&spec)?;
    check_censoring(&results, true)?;
    let id = format!("{:?}", args.figure).to_lowercase();
    let mut records = Vec::new();
    let mut series: Vec<Series> = Vec::new();
    for r in &results {
        let mut rec = to_record(&id, r, seed);
        let pc = match r.point {
            GridPoint::Pc(pc) => pc,
            GridPoint::Strategy(_) => 0.0,
        };
        let y = match args.figure {
            Figure::Efht | Figure::Mr => Some(rec.value),
            Figure::Gap => {
                let Some((g, _)) = r.gap else { continue };
                let inc = match problem {
                    Problem::LeadingOnes => TheoremId::T7Gap,
                    Problem::OneMax => TheoremId::T8Gap,
                };
                rec.lower_bound = theorem_bound(inc, r.n, pc)
                    .ok()
                    .and_then(|b| b.lower)
                    .map(|l| l * (1.0 - pc) / (r.n as f64 * pc));
                Some(g)
            }
            Figure::Ratio => {
                let Some((q, _)) = r.ratio else { continue };
                rec.upper_bound = Some(1.0);
                Some(q)
            }
        };
        let label = series_label(r);
        if let Some(y) = y {
            match series.iter_mut().find(|s| s.label == label) {
                Some(s) => s.points.push((r.n as f64, y)),
                None => series.push(Series {
                    label,
                    points: vec![(r.n as f64, y)],
                }),
            }
        }
        records.push(rec);
    }
    Ok((
        records,
        Panel {
            title: problem.to_string(),
            series,
        },
    ))
}

pub fn run(args: &FigureArgs) -> Result<()> {
    let seed = args.seed.unwrap_or_else(|| {
        eprintln!("warning: no --seed given, using 0; pin a seed for numbers you publish");
        0
    });
    let id = format!("{:?}", args.figure).to_lowercase();
    let csv_path = args.out_dir.join(format!("{id}.csv"));
    let svg_path = args.out_dir.join(format!("{id}.svg"));
    let mut targets = vec![csv_path.clone(), svg_path.clone()];
    if args.json {
        targets.push(json_path(&csv_path));
    }
    if !args.force {
        if let Some(p) = targets.iter().find(|p| p.exists()) {
            anyhow::bail!("{} already exists (use --force to overwrite)", p.display());
        }
    }

    let mut records = Vec::new();
    let mut panels = Vec::new();
    for problem in Problem::ALL {
        let (r, p) = panel(args, problem, seed)?;
        records.extend(r);
        panels.push(p);
    }
    let ts = (!args.no_timestamp).then(now);
    write_csv(create(&csv_path, args.force)?, &records, ts)?;
    if args.json {
        write_file(
            &json_path(&csv_path),
            args.force,
            to_json(&records, ts)?.as_bytes(),
        )?;
    }
    let (title, y_label, auto_log) = match args.figure {
        Figure::Efht => ("Estimated EFHT, (2:2)-EA one-bit crossover", "EFHT", true),
        Figure::Gap => ("Normalized crossover slowdown", "gap", false),
        Figure::Ratio => ("Normalized EFHT ratio", "ratio", false),
        Figure::Mr => ("Estimated EFHT of crossover strategies", "EFHT", true),
    };
    let chart = Chart {
        title: title.into(),
        x_label: "n".into(),
        y_label: y_label.into(),
        log_y: match args.y_scale {
            YScale::Auto => auto_log,
            YScale::Linear => false,
            YScale::Log => true,
        },
        panels,
    };
    write_file(&svg_path, args.force, chart.render().as_bytes())?;
    eprintln!("wrote {} and {}", csv_path.display(), svg_path.display());
    Ok(())
}
