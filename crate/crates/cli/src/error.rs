use std::path::Path;

use rb_renorm::birkhoff::BirkhoffError;
use rb_renorm::graph::GraphError;
use rb_renorm::hopf::HopfError;
use rb_renorm::motive::MotiveError;
use rb_renorm::rb::RbError;
use rb_renorm::symanzik::SymanzikError;
use serde_json::{json, Value};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {message}")]
    Io { path: String, message: String },
    #[error("{0}")]
    Json(String),
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Hopf(#[from] HopfError),
    #[error(transparent)]
    Rb(#[from] RbError),
    #[error(transparent)]
    Birkhoff(#[from] BirkhoffError),
    #[error(transparent)]
    Symanzik(#[from] SymanzikError),
    #[error(transparent)]
    Motive(#[from] MotiveError),
}

impl CliError {
    pub fn code(&self) -> &'static str {
        match self {
            CliError::Io { .. } => "io",
            CliError::Json(_) => "json",
            CliError::Input(_) => "input",
            CliError::Graph(_) => "graph",
            CliError::Hopf(_) => "hopf",
            CliError::Rb(_) => "rb",
            CliError::Birkhoff(_) => "birkhoff",
            CliError::Symanzik(_) => "symanzik",
            CliError::Motive(_) => "motive",
        }
    }

    pub fn to_json(&self) -> Value {
        json!({"error": {"code": self.code(), "message": self.to_string()}})
    }
}

pub fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io { path: path.display().to_string(), message: e.to_string() })
}

pub fn read_json(path: &Path) -> Result<Value, CliError> {
    serde_json::from_str(&read(path)?).map_err(|e| CliError::Json(format!("{}: {e}", path.display())))
}
