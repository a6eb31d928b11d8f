use kanforge::bundles::BundleError;
use kanforge::chains::ChainError;
use kanforge::charclass::CharClassError;
use kanforge::homotopy::HomotopyError;
use kanforge::simplicial::SimplicialError;
use kanforge::smooth::SmoothError;
use kanforge::BudgetExceeded;

/// Everything that stops a command before it can produce a verdict.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{origin}: {detail}")]
    Parse { origin: String, detail: String },
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Budget(#[from] BudgetExceeded),
}

impl CliError {
    pub fn parse(origin: &str, detail: impl Into<String>) -> Self {
        CliError::Parse {
            origin: origin.to_string(),
            detail: detail.into(),
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Budget(_) => 3,
            _ => 2,
        }
    }
}

impl From<SimplicialError> for CliError {
    fn from(e: SimplicialError) -> Self {
        match e {
            SimplicialError::Budget(b) => CliError::Budget(b),
            SimplicialError::Invalid(r) => CliError::Input(
                r.violations
                    .iter()
                    .map(ToString::to_string)
                    .collect::<Vec<_>>()
                    .join("; "),
            ),
            e => CliError::Input(e.to_string()),
        }
    }
}

impl From<ChainError> for CliError {
    fn from(e: ChainError) -> Self {
        match e {
            ChainError::Budget(b) => CliError::Budget(b),
            ChainError::Simplicial(s) => s.into(),
            e => CliError::Input(e.to_string()),
        }
    }
}

impl From<HomotopyError> for CliError {
    fn from(e: HomotopyError) -> Self {
        match e {
            HomotopyError::Budget(b) => CliError::Budget(b),
            HomotopyError::Simplicial(s) => s.into(),
            e => CliError::Input(e.to_string()),
        }
    }
}

impl From<BundleError> for CliError {
    fn from(e: BundleError) -> Self {
        match e {
            BundleError::Budget(b) => CliError::Budget(b),
            BundleError::Simplicial(s) => s.into(),
            BundleError::Homotopy(h) => h.into(),
            BundleError::Chain(c) => c.into(),
            e => CliError::Input(e.to_string()),
        }
    }
}

impl From<CharClassError> for CliError {
    fn from(e: CharClassError) -> Self {
        match e {
            CharClassError::Bundle(b) => b.into(),
            CharClassError::Chain(c) => c.into(),
            e => CliError::Input(e.to_string()),
        }
    }
}

impl From<SmoothError> for CliError {
    fn from(e: SmoothError) -> Self {
        CliError::Input(e.to_string())
    }
}
