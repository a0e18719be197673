use std::fmt;

/// Outcomes that map to a specific exit status.
#[derive(Debug)]
pub enum Failure {
    /// Bad flags or flag values.
    Usage(String),
    /// An estimate had runs stopped at the cutoff.
    Censored(String),
    /// A check suite reported failures.
    ChecksFailed(usize),
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Usage(m) => write!(f, "{m}"),
            Failure::Censored(m) => write!(f, "censored estimate: {m}"),
            Failure::ChecksFailed(k) => write!(f, "{k} check(s) failed"),
        }
    }
}

impl std::error::Error for Failure {}

pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_SIZE_LIMIT: i32 = 3;
pub const EXIT_CENSORED: i32 = 4;

/// Exit status for an error returned by a command.
pub fn exit_code(err: &anyhow::Error) -> i32 {
    if let Some(f) = err.downcast_ref::<Failure>() {
        return match f {
            Failure::Usage(_) => EXIT_USAGE,
            Failure::Censored(_) => EXIT_CENSORED,
            Failure::ChecksFailed(_) => EXIT_FAILED,
        };
    }
    match err.downcast_ref::<ea_lab::Error>() {
        Some(ea_lab::Error::SizeLimit { .. } | ea_lab::Error::EnumerationLimit(_)) => {
            EXIT_SIZE_LIMIT
        }
        Some(ea_lab::Error::InvalidConfig(_) | ea_lab::Error::InvalidArgument(_)) => EXIT_USAGE,
        _ => EXIT_FAILED,
    }
}
