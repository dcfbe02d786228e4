use catalog::CatalogError;
use continuation::ContinuationError;
use stability::StabilityError;
use thiserror::Error;
use vortex_model::ModelError;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error(transparent)]
    Continuation(#[from] ContinuationError),
    #[error(transparent)]
    Stability(#[from] StabilityError),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
}
