use measuring_lab::algcore::AlgError;
use measuring_lab::exactlin::LinError;
use measuring_lab::fibcat::FibError;
use measuring_lab::hopf::HopfError;
use measuring_lab::measuring::MeasError;
use measuring_lab::modcomod::ModError;
use thiserror::Error;

/// Everything a command can fail with. The variant decides the exit code.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot parse {path}: {message}")]
    Parse { path: String, message: String },
    #[error("schema error in {path}: {message}")]
    Schema { path: String, message: String },
    #[error("{what} fails: {detail}")]
    Check { what: String, detail: String, indices: Option<Vec<usize>> },
    #[error("budget exceeded: {0}")]
    Budget(String),
    #[error("truncation insufficient: {0}")]
    Truncation(String),
    #[error("{0}")]
    Io(String),
    #[error("{0}")]
    Other(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Check { .. } => 1,
            CliError::Parse { .. } | CliError::Schema { .. } => 2,
            CliError::Budget(_) => 3,
            CliError::Truncation(_) => 4,
            CliError::Io(_) | CliError::Other(_) => 5,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Parse { .. } => "ParseError",
            CliError::Schema { .. } => "SchemaError",
            CliError::Check { .. } => "CheckFailure",
            CliError::Budget(_) => "BudgetExceeded",
            CliError::Truncation(_) => "TruncationInsufficient",
            CliError::Io(_) => "IoError",
            CliError::Other(_) => "Error",
        }
    }

    pub fn schema(path: &str, message: impl Into<String>) -> CliError {
        CliError::Schema { path: path.to_string(), message: message.into() }
    }

    pub fn check(what: impl Into<String>, detail: impl ToString) -> CliError {
        CliError::Check { what: what.into(), detail: detail.to_string(), indices: None }
    }

    fn at(what: &str, detail: impl ToString, indices: Vec<usize>) -> CliError {
        CliError::Check { what: what.into(), detail: detail.to_string(), indices: Some(indices) }
    }
}

impl From<MeasError> for CliError {
    fn from(e: MeasError) -> CliError {
        match e {
            MeasError::BudgetExceeded { .. } => CliError::Budget(e.to_string()),
            MeasError::TruncationInsufficient { .. } => CliError::Truncation(e.to_string()),
            MeasError::Alg(a) => a.into(),
            MeasError::Mod(m) => m.into(),
            other => CliError::check("measuring computation", other),
        }
    }
}

impl From<AlgError> for CliError {
    fn from(e: AlgError) -> CliError {
        let what = "algebra structure";
        match e {
            AlgError::AssociativityFailure(i, j, k) => CliError::at(what, e, vec![i, j, k]),
            AlgError::UnitFailure(_, i) | AlgError::CoassociativityFailure(i) | AlgError::CounitFailure(_, i) => {
                CliError::at(what, e, vec![i])
            }
            other => CliError::check(what, other),
        }
    }
}

impl From<ModError> for CliError {
    fn from(e: ModError) -> CliError {
        match e {
            ModError::Alg(a) => a.into(),
            ModError::ActionAssociativityFailure(a, b, m) => CliError::at("module structure", e, vec![a, b, m]),
            ModError::ActionUnitFailure(i) | ModError::CoactionCoassociativityFailure(i) | ModError::CoactionCounitFailure(i) => {
                CliError::at("module structure", e, vec![i])
            }
            other => CliError::check("module structure", other),
        }
    }
}

impl From<LinError> for CliError {
    fn from(e: LinError) -> CliError {
        CliError::Other(e.to_string())
    }
}

impl From<FibError> for CliError {
    fn from(e: FibError) -> CliError {
        match e {
            FibError::TooLarge { .. } => CliError::Budget(e.to_string()),
            other => CliError::check("finite category instance", other),
        }
    }
}

impl From<HopfError> for CliError {
    fn from(e: HopfError) -> CliError {
        match e {
            HopfError::Meas(m) => m.into(),
            HopfError::Alg(a) => a.into(),
            HopfError::Mod(m) => m.into(),
            HopfError::DiagramFailure { diagram, indices } => {
                let detail = format!("diagram {diagram} fails at {indices:?}");
                CliError::Check { what: diagram, detail, indices: Some(indices) }
            }
            other => CliError::check("Hopf structure", other),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> CliError {
        CliError::Io(e.to_string())
    }
}
