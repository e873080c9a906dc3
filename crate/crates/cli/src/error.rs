use jjdirac_core::ConfigError;
use jjdirac_decoherence::DecoherenceError;
use jjdirac_diracmap::DiracError;
use jjdirac_dynamics::DynamicsError;
use jjdirac_rwa::RwaError;
use thiserror::Error;

/// Every failure maps to one machine-parsable category, printed as
/// `category: detail` on a single line.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("config-error: {0}")]
    Config(String),
    #[error("usage-error: {0}")]
    Usage(String),
    #[error("solver-error: {0}")]
    Solver(String),
    #[error("resonance-error: {0}")]
    Resonance(String),
    #[error("dirac-error: {0}")]
    Dirac(String),
    #[error("dynamics-error: {0}")]
    Dynamics(String),
    #[error("decoherence-error: {0}")]
    Decoherence(String),
    #[error("io-error: {0}")]
    Io(String),
    #[error("golden-mismatch: {0}")]
    Golden(String),
}

impl CliError {
    pub fn category(&self) -> &'static str {
        match self {
            CliError::Config(_) => "config-error",
            CliError::Usage(_) => "usage-error",
            CliError::Solver(_) => "solver-error",
            CliError::Resonance(_) => "resonance-error",
            CliError::Dirac(_) => "dirac-error",
            CliError::Dynamics(_) => "dynamics-error",
            CliError::Decoherence(_) => "decoherence-error",
            CliError::Io(_) => "io-error",
            CliError::Golden(_) => "golden-mismatch",
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) | CliError::Usage(_) => 2,
            _ => 1,
        }
    }

    /// The message with newlines folded so it stays on one line.
    pub fn line(&self) -> String {
        self.to_string().replace('\n', " ")
    }
}

impl From<ConfigError> for CliError {
    fn from(e: ConfigError) -> Self {
        CliError::Config(e.to_string())
    }
}

impl From<RwaError> for CliError {
    fn from(e: RwaError) -> Self {
        match e {
            RwaError::SmallDenominator { .. } | RwaError::OffResonance(_) => CliError::Resonance(e.to_string()),
            _ => CliError::Solver(e.to_string()),
        }
    }
}

impl From<DiracError> for CliError {
    fn from(e: DiracError) -> Self {
        CliError::Dirac(e.to_string())
    }
}

impl From<DynamicsError> for CliError {
    fn from(e: DynamicsError) -> Self {
        CliError::Dynamics(e.to_string())
    }
}

impl From<DecoherenceError> for CliError {
    fn from(e: DecoherenceError) -> Self {
        CliError::Decoherence(e.to_string())
    }
}

impl From<jjdirac_flux::EigenError> for CliError {
    fn from(e: jjdirac_flux::EigenError) -> Self {
        CliError::Solver(e.to_string())
    }
}

impl From<jjdirac_phase::PhaseError> for CliError {
    fn from(e: jjdirac_phase::PhaseError) -> Self {
        CliError::Solver(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}
