// SPDX-License-Identifier: Apache-2.0

use std::path::PathBuf;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] darboux_core::Error),
    #[error("cannot write {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("malformed OBJ at line {line}: {reason}")]
    Obj { line: usize, reason: &'static str },
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type CliResult<T> = Result<T, CliError>;

impl CliError {
    pub(crate) fn io(path: &std::path::Path, source: std::io::Error) -> Self {
        Self::Io {
            path: path.to_path_buf(),
            source,
        }
    }

    /// Exit status: 2 for rejected parameters, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Invalid(_) => 2,
            Self::Core(e) => {
                use darboux_core::Error as E;
                match e {
                    E::BelowThreshold { .. }
                    | E::InvalidParameter(_)
                    | E::InvalidPolychromatic(_)
                    | E::NonzeroA => 2,
                    _ => 1,
                }
            }
            _ => 1,
        }
    }
}

/// Human message for parameter errors, naming the violated bound.
pub fn describe(err: &darboux_core::Error) -> String {
    match err {
        darboux_core::Error::BelowThreshold {
            u,
            threshold,
            bound,
        } => match *bound {
            "a" => format!("a must be ≤ u = {u}; got a = {threshold}"),
            b => format!(
                "u must be ≥ {} = {threshold:.7}…; got u = {u}",
                pretty_bound(b)
            ),
        },
        other => other.to_string(),
    }
}

fn pretty_bound(bound: &str) -> &str {
    match bound {
        "v*sqrt(n^2-1)" => "v·sqrt(n²−1)",
        other => other,
    }
}
