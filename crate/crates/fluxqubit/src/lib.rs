//! Four-junction flux qubit: static Hamiltonian in the junction-charge
//! basis, lowest eigenpairs, two-level matrix elements, the rotated
//! couplings fed to the RWA engine, and circulating currents.

pub mod banded;
pub mod hamiltonian;
pub mod lanczos;
pub mod solution;
pub mod sweep;

pub use hamiltonian::{build_h_q0, ChargeGrid};
pub use lanczos::EigenError;
pub use solution::{
    rotated_couplings, solve_spectrum, summarize, CirculatingCurrent, FluxQubitSolution,
    MatrixElements, QubitSummary, RotatedCouplings,
};
pub use sweep::{spectrum_sweep, SpectrumRow};
