use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use anyhow::Result;
use clap::Args;
use ea_lab::chain::{build_chain, write_triplets};

use crate::opts::EaArgs;
use crate::output::create;

#[derive(Args, Debug)]
pub struct ExportArgs {
    #[command(flatten)]
    pub ea: EaArgs,
    #[arg(long)]
    pub n: usize,
    /// Triplet file; standard output when absent.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
    #[arg(long)]
    pub force: bool,
}

pub fn run(args: &ExportArgs) -> Result<()> {
    let chain = build_chain(&args.ea.config()?, args.n)?;
    match &args.output {
        Some(path) => {
            let mut w = BufWriter::new(create(path, args.force)?);
            write_triplets(&chain, &mut w)?;
            w.flush()?;
        }
        None => write_triplets(&chain, BufWriter::new(io::stdout().lock()))?,
    }
    Ok(())
}
