use std::fs::{self, File, OpenOptions};
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use anyhow::{Context, Result};

use crate::opts::OutputArgs;
use crate::record::{to_json, write_csv, ExperimentRecord};

/// Opens `path` for writing; refuses to replace an existing file unless `force`.
pub fn create(path: &Path, force: bool) -> Result<File> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    }
    let mut opts = OpenOptions::new();
    opts.write(true);
    if force {
        opts.create(true).truncate(true);
    } else {
        opts.create_new(true);
    }
    opts.open(path).with_context(|| {
        if path.exists() && !force {
            format!(
                "{} already exists (use --force to overwrite)",
                path.display()
            )
        } else {
            format!("opening {}", path.display())
        }
    })
}

pub fn write_file(path: &Path, force: bool, contents: &[u8]) -> Result<()> {
    let mut f = create(path, force)?;
    f.write_all(contents)?;
    Ok(())
}

pub fn json_path(path: &Path) -> PathBuf {
    path.with_extension("json")
}

pub fn now() -> u64 {
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0)
}

/// Emits records per the output flags: CSV to `--output` or standard output,
/// JSON beside the CSV file or instead of CSV on standard output.
pub fn emit(records: &[ExperimentRecord], out: &OutputArgs) -> Result<()> {
    let ts = (!out.no_timestamp).then(now);
    match &out.output {
        Some(path) => {
            let mut buf = Vec::new();
            write_csv(&mut buf, records, ts)?;
            if out.json {
                let jp = json_path(path);
                if !out.force && jp.exists() {
                    anyhow::bail!("{} already exists (use --force to overwrite)", jp.display());
                }
                write_file(path, out.force, &buf)?;
                write_file(&jp, out.force, to_json(records, ts)?.as_bytes())?;
            } else {
                write_file(path, out.force, &buf)?;
            }
        }
        None if out.json => io::stdout().write_all(to_json(records, ts)?.as_bytes())?,
        None => write_csv(io::stdout().lock(), records, ts)?,
    }
    Ok(())
}
