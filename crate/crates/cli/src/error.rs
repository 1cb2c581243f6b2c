use demuskin::catalog::CatalogError;
use demuskin::io::{IoError, SCHEMA_VERSION};
use demuskin::normal_forms::NormalFormError;
use demuskin::pquot::PquotError;
use demuskin::words::WordError;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// Malformed input: bad flags, JSON or schema version.
    #[error("{0}")]
    Schema(String),
    #[error("{0}")]
    Domain(String),
    #[error("{0}")]
    Resource(String),
    #[error("{0}")]
    Io(String),
}

#[derive(Serialize)]
struct Diagnostic<'a> {
    schema_version: u32,
    error: &'a str,
    message: String,
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Schema(_) => 1,
            CliError::Domain(_) | CliError::Io(_) => 2,
            CliError::Resource(_) => 3,
        }
    }

    /// One-line JSON for stderr.
    pub fn diagnostic(&self) -> String {
        let error = match self {
            CliError::Schema(_) => "schema",
            CliError::Domain(_) => "domain",
            CliError::Resource(_) => "resource",
            CliError::Io(_) => "io",
        };
        let d = Diagnostic {
            schema_version: SCHEMA_VERSION,
            error,
            message: self.to_string(),
        };
        serde_json::to_string(&d).expect("diagnostic serializes")
    }
}

impl From<CatalogError> for CliError {
    fn from(e: CatalogError) -> Self {
        match e {
            CatalogError::ExponentTooLarge(_) => CliError::Resource(e.to_string()),
            e => CliError::Domain(e.to_string()),
        }
    }
}

impl From<PquotError> for CliError {
    fn from(e: PquotError) -> Self {
        match e {
            PquotError::Resource(_) => CliError::Resource(e.to_string()),
            PquotError::Json(_) => CliError::Schema(e.to_string()),
            PquotError::Catalog(c) => c.into(),
            e => CliError::Domain(e.to_string()),
        }
    }
}

impl From<WordError> for CliError {
    fn from(e: WordError) -> Self {
        CliError::Domain(e.to_string())
    }
}

impl From<NormalFormError> for CliError {
    fn from(e: NormalFormError) -> Self {
        CliError::Domain(e.to_string())
    }
}

impl From<IoError> for CliError {
    fn from(e: IoError) -> Self {
        CliError::Schema(e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Schema(e.to_string())
    }
}
