use std::path::PathBuf;

use thiserror::Error;

use crate::bicomplex::Violation;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed scalar {0:?}")]
    Scalar(String),

    #[error("ambient dimensions differ: {left} vs {right}")]
    AmbientMismatch { left: usize, right: usize },

    #[error("subspace is not contained in the ambient subspace")]
    NotContained,

    #[error("invalid bicomplex: {}", .0.iter().map(ToString::to_string).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<Violation>),

    #[error("{0} structure absent")]
    StructureAbsent(&'static str),

    #[error("generator w{generator}: d(w{generator}) has a (0,2) component, the complex structure is not integrable")]
    NotIntegrable { generator: usize },

    #[error("generator {generator}: d(d({generator})) != 0")]
    NotClosed { generator: String },

    #[error("malformed structure equations: {0}")]
    Equations(String),

    #[error("malformed part: {0}")]
    MalformedPart(String),

    #[error("decomposition failed verification: {0}")]
    Decomposition(String),

    #[error("frolicher pages need r_max >= 1")]
    PageLimit,

    #[error("{path}:{line}: {message}")]
    Parse { path: String, line: usize, message: String },

    #[error("unknown format {0:?}")]
    UnknownFormat(String),

    #[error("unknown preset {0:?}")]
    UnknownPreset(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error("thread pool: {0}")]
    ThreadPool(#[from] rayon::ThreadPoolBuildError),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io { path: path.into(), source }
    }
}
