use std::fmt;

#[derive(Debug)]
pub enum CliError {
    /// bad flags or config; exit 1
    Config(String),
    /// a computation or check did not meet its tolerance; exit 2
    Convergence(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) => 1,
            CliError::Convergence(_) => 2,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Config(m) => write!(f, "configuration error: {m}"),
            CliError::Convergence(m) => write!(f, "convergence failure: {m}"),
        }
    }
}

impl From<lifshitz::Error> for CliError {
    fn from(e: lifshitz::Error) -> Self {
        match e {
            lifshitz::Error::Convergence(_) => CliError::Convergence(e.to_string()),
            _ => CliError::Config(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Config(format!("i/o: {e}"))
    }
}
