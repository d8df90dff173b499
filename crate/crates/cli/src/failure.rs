use dimerlab::Error;
use serde_json::json;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] Error),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("{0}")]
    Io(String),

    /// Carries the rendered report so it still reaches stdout.
    #[error("invariant checks failed")]
    CheckFailed(String),
}

impl CliError {
    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Config(_) => "config",
            CliError::Io(_) => "io",
            CliError::CheckFailed(_) => "check_failed",
            CliError::Core(e) => match e {
                Error::Parse(_) | Error::UnknownVertex(_) => "parse",
                Error::InvalidGraph(_)
                | Error::Disconnected
                | Error::Crossing(_)
                | Error::NotCellular(_)
                | Error::Unbalanced { .. } => "invalid_graph",
                Error::SizeCap { .. } => "size_cap",
                Error::NonConvergence { .. } => "non_convergence",
                Error::ZeroPolynomial
                | Error::ZeroArgument
                | Error::Reconstruction(_)
                | Error::Breakdown(_) => "numerical",
                Error::Inconsistent(_) | Error::Calibration(_) => "internal",
                Error::InvalidArgument(_) => "config",
            },
        }
    }

    pub fn exit_code(&self) -> u8 {
        match self.kind() {
            "config" => 2,
            "parse" => 3,
            "io" => 3,
            "invalid_graph" => 4,
            "size_cap" => 5,
            "non_convergence" => 6,
            "numerical" => 7,
            "internal" => 8,
            _ => 9,
        }
    }

    /// One-line JSON error record for stderr.
    pub fn record(&self) -> String {
        let mut record = json!({
            "error": self.kind(),
            "message": self.to_string(),
            "exit_code": self.exit_code(),
        });
        if let CliError::Core(Error::NonConvergence { value, difference, points }) = self {
            record["best_estimate"] = json!(value);
            record["difference"] = json!(difference);
            record["grid_points"] = json!(points);
        }
        record.to_string()
    }
}
