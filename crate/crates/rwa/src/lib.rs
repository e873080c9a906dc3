//! Rotating-wave term collection.
//!
//! Interaction terms are sums of rotating monomials. Ordered products are
//! integrated symbolically, bus modes are eliminated against their vacuum,
//! and only secular words survive.

pub mod algebra;
pub mod effective;
pub mod integrate;
pub mod interactions;
pub mod oracle;
pub mod pipeline;
pub mod resonance;

#[cfg(test)]
pub(crate) mod testutil;

pub use algebra::{DriveId, FreqTable, FreqVec, InteractionTerm, Ladder, Mode, ModeLabel, RotatingMonomial, Word};
pub use effective::{closed_form, run_stage, Pauli, PauliForm, StageResult};
pub use integrate::{collect_secular, ordered_integral, Census, EffectiveCoupling, IntegrationSettings};
pub use interactions::{build_interactions, Drive, EngineInputs, ModeParams, QubitCouplings, Stage};
pub use pipeline::{effective_hamiltonian, inputs_from_config, EffectiveReport};
pub use resonance::{resonant_drives, validate_resonance, ResonanceReport};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RwaError {
    #[error("no drive for axis {0}")]
    MissingDrive(String),
    #[error("mode {0} not configured")]
    MissingMode(String),
    #[error("qubit {0} not configured")]
    MissingQubit(u8),
    #[error("small denominator: partial sum {partial_sum} = {value_ghz} GHz below floor {floor_ghz} GHz")]
    SmallDenominator {
        partial_sum: String,
        value_ghz: f64,
        floor_ghz: f64,
    },
    #[error("resonance conditions violated: {0}")]
    OffResonance(String),
    #[error("upstream: {0}")]
    Upstream(String),
}
