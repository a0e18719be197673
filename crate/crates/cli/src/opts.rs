use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use anyhow::{bail, Context, Result};
use clap::Args;
use ea_lab::{Algorithm, CrossoverKind, EaConfig, MutationKind, Problem, Strategy, TiePolicy};

use crate::failure::Failure;

/// Flags that describe one EA configuration.
#[derive(Args, Clone, Debug)]
pub struct EaArgs {
    /// 1p1, 1p1s, 2c2 or 2p2.
    #[arg(long, default_value = "2c2")]
    pub algo: Algorithm,
    /// leadingones or onemax.
    #[arg(long, default_value = "leadingones")]
    pub problem: Problem,
    /// onebit or bitwise.
    #[arg(long, default_value = "onebit")]
    pub mutation: MutationKind,
    /// onepoint, uniform, onebit, onediffbit, firstdiffbit or firstdiffpoint.
    #[arg(long)]
    pub crossover: Option<CrossoverKind>,
    /// Crossover probability; 0 runs the mutation-only EA.
    #[arg(long)]
    pub pc: Option<f64>,
    /// Crossover/mutation selection strategy (mr1a, mr1b, mr1, mr2, mr3).
    #[arg(long, conflicts_with = "pc")]
    pub strategy: Option<Strategy>,
    /// (2:2) tie handling: keep or prefer.
    #[arg(long, default_value = "keep")]
    pub tie: TiePolicy,
}

impl EaArgs {
    pub fn config(&self) -> Result<EaConfig> {
        let base = EaConfig::new(self.algo, self.problem, self.mutation).with_tie_policy(self.tie);
        let config = match (self.strategy, self.pc.unwrap_or(0.0), self.crossover) {
            (Some(s), _, _) => base.with_strategy(s),
            (None, 0.0, _) => base,
            (None, pc, Some(kind)) => base.with_crossover(kind, pc),
            (None, _, None) => {
                return Err(Failure::Usage("--pc > 0 needs --crossover".into()).into())
            }
        };
        Ok(config)
    }
}

/// Output flags shared by the record-producing commands.
#[derive(Args, Clone, Debug)]
pub struct OutputArgs {
    /// Write CSV here instead of standard output.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
    /// Also write the records as JSON (`<output>.json`, or to standard output).
    #[arg(long)]
    pub json: bool,
    /// Overwrite existing output files.
    #[arg(long)]
    pub force: bool,
    /// Leave out the timestamp column.
    #[arg(long)]
    pub no_timestamp: bool,
}

/// Sampling flags.
#[derive(Args, Clone, Debug)]
pub struct SampleArgs {
    /// Independent runs per estimate.
    #[arg(long, default_value_t = 1000)]
    pub runs: u64,
    /// Master seed (default 0).
    #[arg(long)]
    pub seed: Option<u64>,
    /// Per-run iteration cap (default 1000 n^2).
    #[arg(long)]
    pub cutoff: Option<u64>,
    /// Exit with status 4 when any run hits the cutoff.
    #[arg(long)]
    pub strict: bool,
}

impl SampleArgs {
    pub fn seed(&self) -> u64 {
        self.seed.unwrap_or_else(|| {
            eprintln!("warning: no --seed given, using 0; pin a seed for numbers you publish");
            0
        })
    }
}

/// Grid of sizes: `a:b:step`, `a:b`, `a` or a comma list of those.
#[derive(Clone, Debug, PartialEq)]
pub struct NGrid(pub Vec<usize>);

/// Grid of probabilities with the same syntax as [`NGrid`].
#[derive(Clone, Debug, PartialEq)]
pub struct PcGrid(pub Vec<f64>);

fn parse_num<T: FromStr>(s: &str) -> Result<T, String> {
    s.trim()
        .parse()
        .map_err(|_| format!("{s:?} is not a number"))
}

impl FromStr for NGrid {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let mut out = Vec::new();
        for part in s.split(',') {
            let f: Vec<&str> = part.split(':').collect();
            match f.as_slice() {
                [a] => out.push(parse_num(a)?),
                [a, b] | [a, b, _] => {
                    let (a, b): (usize, usize) = (parse_num(a)?, parse_num(b)?);
                    let step: usize = if f.len() == 3 { parse_num(f[2])? } else { 1 };
                    if step == 0 || b < a {
                        return Err(format!("bad range {part:?}"));
                    }
                    out.extend((a..=b).step_by(step));
                }
                _ => return Err(format!("bad range {part:?}")),
            }
        }
        if out.is_empty() || out.contains(&0) {
            return Err(format!("{s:?} must list sizes >= 1"));
        }
        Ok(NGrid(out))
    }
}

impl FromStr for PcGrid {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let mut out = Vec::new();
        for part in s.split(',') {
            let f: Vec<&str> = part.split(':').collect();
            match f.as_slice() {
                [a] => out.push(parse_num(a)?),
                [a, b, step] => {
                    let (a, b, step): (f64, f64, f64) =
                        (parse_num(a)?, parse_num(b)?, parse_num(step)?);
                    if step <= 0.0 || b < a {
                        return Err(format!("bad range {part:?}"));
                    }
                    let count = ((b - a) / step + 1e-9).floor() as usize;
                    out.extend((0..=count).map(|k| ((a + k as f64 * step) * 1e12).round() / 1e12));
                }
                _ => return Err(format!("bad range {part:?}")),
            }
        }
        if out.iter().any(|p| !(0.0..=1.0).contains(p)) {
            return Err(format!("{s:?} must lie in [0, 1]"));
        }
        Ok(PcGrid(out))
    }
}

/// Parses a flat `key = value` file into flag tokens. `true`/`false` toggle
/// switches; `#` starts a comment.
pub fn config_tokens(path: &Path) -> Result<Vec<OsString>> {
    let text = fs::read_to_string(path)
        .with_context(|| format!("reading config file {}", path.display()))?;
    let mut out = Vec::new();
    for (no, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            bail!(Failure::Usage(format!(
                "{}:{}: expected key=value",
                path.display(),
                no + 1
            )));
        };
        let key = key.trim().replace('_', "-");
        match value.trim() {
            "true" => out.push(format!("--{key}").into()),
            "false" => {}
            v => {
                out.push(format!("--{key}").into());
                out.push(v.into());
            }
        }
    }
    Ok(out)
}

/// Inserts the tokens of a `--config FILE` argument after the subcommand
/// names so that explicit flags, which come later, take precedence.
pub fn expand_config(args: Vec<OsString>) -> Result<Vec<OsString>> {
    let pos = args.iter().position(|a| a == "--config");
    let inline = args
        .iter()
        .position(|a| a.to_str().is_some_and(|s| s.starts_with("--config=")));
    let (path, rest) = match (pos, inline) {
        (Some(i), _) => {
            let Some(path) = args.get(i + 1) else {
                bail!(Failure::Usage("--config needs a file".into()));
            };
            let path = PathBuf::from(path);
            let mut rest = args.clone();
            rest.drain(i..=i + 1);
            (path, rest)
        }
        (None, Some(i)) => {
            let s = args[i].to_str().unwrap_or_default();
            let path = PathBuf::from(&s["--config=".len()..]);
            let mut rest = args.clone();
            rest.remove(i);
            (path, rest)
        }
        (None, None) => return Ok(args),
    };
    let tokens = config_tokens(&path)?;
    let at = 1 + rest
        .iter()
        .skip(1)
        .take_while(|a| !a.to_string_lossy().starts_with('-'))
        .count();
    let mut out = rest[..at].to_vec();
    out.extend(tokens);
    out.extend_from_slice(&rest[at..]);
    Ok(out)
}
