use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(String),

    #[error(transparent)]
    Physics(#[from] paritybus::Error),

    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
}

impl CliError {
    /// Process exit status: 2 parse, 3 physics, 4 convergence, 1 I/O.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Physics(e) if e.is_convergence_failure() => 4,
            CliError::Physics(_) => 3,
            CliError::Io { .. } => 1,
        }
    }

    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io { path: path.into(), source }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes_by_category() {
        assert_eq!(CliError::Config("x".into()).exit_code(), 2);
        let near = paritybus::Error::NearResonance {
            qubit: 1,
            lower: 0,
            upper: 1,
            detuning: 0.0,
        };
        assert_eq!(CliError::from(near).exit_code(), 3);
        let drift = paritybus::Error::TraceDrift { drift: 1.0, tol: 1e-8 };
        assert_eq!(CliError::from(drift).exit_code(), 4);
        let io = CliError::io("f", std::io::Error::new(std::io::ErrorKind::NotFound, "gone"));
        assert_eq!(io.exit_code(), 1);
    }
}
