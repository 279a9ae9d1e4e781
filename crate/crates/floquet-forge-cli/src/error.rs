use std::fmt;
use std::path::PathBuf;

/// Failure of a scenario run, mapped onto the process exit code.
#[derive(Debug)]
pub enum RunError {
    /// Malformed or incomplete configuration. `key` names the offending entry.
    Config {
        key: Option<String>,
        message: String,
    },
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    /// Resonances, missing roots and other failures of the computation.
    Physics(floquet_forge::Error),
}

impl RunError {
    pub fn key(key: &str, message: impl Into<String>) -> Self {
        RunError::Config {
            key: Some(key.to_string()),
            message: message.into(),
        }
    }

    pub fn syntax(message: impl Into<String>) -> Self {
        RunError::Config {
            key: None,
            message: message.into(),
        }
    }

    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        RunError::Io {
            path: path.into(),
            source,
        }
    }

    /// Library errors that reject the inputs count as configuration errors.
    pub fn from_lib(key: Option<&str>, e: floquet_forge::Error) -> Self {
        if e.is_physics() {
            RunError::Physics(e)
        } else {
            RunError::Config {
                key: key.map(str::to_string),
                message: e.to_string(),
            }
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::Config { .. } | RunError::Io { .. } => 1,
            RunError::Physics(_) => 2,
        }
    }
}

impl fmt::Display for RunError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RunError::Config {
                key: Some(k),
                message,
            } => write!(f, "config error: key `{k}`: {message}"),
            RunError::Config { key: None, message } => write!(f, "config error: {message}"),
            RunError::Io { path, source } => write!(f, "io error: {}: {source}", path.display()),
            RunError::Physics(e) => write!(f, "physics error: {e}"),
        }
    }
}

impl std::error::Error for RunError {}

impl From<floquet_forge::Error> for RunError {
    fn from(e: floquet_forge::Error) -> Self {
        RunError::from_lib(None, e)
    }
}
