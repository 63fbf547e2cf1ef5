use sympar::catalogue::CatalogueError;
use sympar::matgroup::GroupError;
use sympar::reflection::ReflectionError;
use thiserror::Error;

/// Failures that stop a command before a report exists.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("input error: {0}")]
    Input(String),
    #[error("resource cap: {0}")]
    Cap(String),
    #[error("internal error: {0}")]
    Internal(String),
}

impl CliError {
    /// 1 is reserved for reports that disagree with the tables.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Cap(_) => 2,
            CliError::Input(_) => 3,
            CliError::Internal(_) => 1,
        }
    }
}

impl From<GroupError> for CliError {
    fn from(e: GroupError) -> Self {
        match e {
            GroupError::EnumerationCap { .. } => CliError::Cap(format!(
                "{e}; use --mode table, raise --cap-enumeration, or pass --force-full-lattice"
            )),
            GroupError::OrbitCap { .. } => CliError::Cap(format!("{e}; raise --cap-orbit")),
            GroupError::DimensionMismatch { .. } => CliError::Input(e.to_string()),
            _ => CliError::Internal(e.to_string()),
        }
    }
}

impl From<ReflectionError> for CliError {
    fn from(e: ReflectionError) -> Self {
        match e {
            ReflectionError::Group(g) => g.into(),
            ReflectionError::Linalg(l) => CliError::Internal(l.to_string()),
        }
    }
}

impl From<CatalogueError> for CliError {
    fn from(e: CatalogueError) -> Self {
        match e {
            CatalogueError::Group(g) => g.into(),
            CatalogueError::Reflection(r) => r.into(),
            CatalogueError::UnknownGroup(_) | CatalogueError::Parameter(_) | CatalogueError::Cyclo(_) => {
                CliError::Input(e.to_string())
            }
            CatalogueError::Data(_) | CatalogueError::Linalg(_) => CliError::Internal(e.to_string()),
        }
    }
}
