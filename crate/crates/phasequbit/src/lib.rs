//! Phase qubits and shared junctions as harmonic modes.
//!
//! A mode with effective stiffness E = E_J cos φ0 + E_r has
//! λ = (2E_C/E)^{1/4} and ω = √(8E_C E).

pub mod oracle;

use jjdirac_core::config::{BusModel, SimulationConfig};
use jjdirac_core::units::josephson_inductance_ph;
use jjdirac_core::{Axis, FluxQubitParams, PhaseQubitParams, SharedJunctionParams};
use serde::Serialize;
use thiserror::Error;

pub use oracle::{oracle_diagonalize, OracleResult};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PhaseError {
    #[error("bias ratio {0} at or beyond the critical current")]
    Overbiased(f64),
    #[error("non-positive effective stiffness {0} GHz")]
    Unstable(f64),
    #[error("oracle basis size {0} below 30")]
    BasisTooSmall(usize),
    #[error("oracle not converged: ω changes by {0:e} relative on enlarging the basis")]
    NotConverged(f64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ModeRole {
    /// Phase qubit p.
    Phase,
    /// Shared junction P on a spatial axis.
    SharedP,
    /// Shared junction O.
    SharedO,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PhaseMode {
    pub role: ModeRole,
    pub lambda: f64,
    pub omega_ghz: f64,
    /// E_J cos φ0 + E_r, GHz.
    pub stiffness_ghz: f64,
    pub ec_ghz: f64,
    pub ej_ghz: f64,
}

/// Closed forms for a junction with E_J, E_C, bias sin φ0 and extra
/// inductive energy E_r.
pub fn harmonic_mode(
    role: ModeRole,
    ej: f64,
    ec: f64,
    bias: f64,
    er: f64,
) -> Result<PhaseMode, PhaseError> {
    if !(bias.abs() < 1.0) {
        return Err(PhaseError::Overbiased(bias));
    }
    let stiffness = ej * bias.asin().cos() + er;
    if !(stiffness > 0.0) {
        return Err(PhaseError::Unstable(stiffness));
    }
    Ok(PhaseMode {
        role,
        lambda: (2.0 * ec / stiffness).powf(0.25),
        omega_ghz: (8.0 * ec * stiffness).sqrt(),
        stiffness_ghz: stiffness,
        ec_ghz: ec,
        ej_ghz: ej,
    })
}

/// Phase qubit closed by shared junction `bus`: E_r = E_rp from L_rp = L_p + L_JP.
pub fn quantize_phase(p: &PhaseQubitParams, bus: &SharedJunctionParams) -> Result<PhaseMode, PhaseError> {
    harmonic_mode(ModeRole::Phase, p.ej_ghz, p.ec_ghz(), p.bias, p.e_rp_ghz(bus))
}

/// Shared junction. `Approximate` drops both the bias and the inductive
/// term; `Inductive` keeps E_JP cos γ0 + E_Lp (E_Lp of the attached phase
/// qubit, absent for O).
pub fn quantize_shared(
    bus: &SharedJunctionParams,
    role: ModeRole,
    model: BusModel,
    e_lp: Option<f64>,
) -> Result<PhaseMode, PhaseError> {
    match model {
        BusModel::Approximate => harmonic_mode(role, bus.ej_ghz, bus.ec_ghz, 0.0, 0.0),
        BusModel::Inductive => {
            harmonic_mode(role, bus.ej_ghz, bus.ec_ghz, bus.bias, e_lp.unwrap_or(0.0))
        }
    }
}

/// L_J = Φ0²/(4π²E_J) in pH.
pub fn junction_inductance(ej_ghz: f64) -> f64 {
    josephson_inductance_ph(ej_ghz)
}

/// Ring inductance L_r = L_g + Σ L_JP + L_JO for flux qubit `l` in the given
/// dimension, and Λ = L_r/L_J.
pub fn ring_inductance(config: &SimulationConfig, l: u8, q: &FluxQubitParams) -> (f64, f64) {
    let axes: Vec<Axis> = match (config.dimension, l) {
        (3, 1) => vec![Axis::X, Axis::Z],
        (1, _) => vec![Axis::X],
        (_, 1) => vec![Axis::X],
        _ => vec![Axis::Y],
    };
    let mut lr = q.lg_ph;
    for a in axes {
        if let Some(b) = config.bus(a) {
            lr += b.l_j_ph();
        }
    }
    if config.dimension > 1 {
        if let Some(o) = &config.bus_o {
            lr += o.l_j_ph();
        }
    }
    (lr, lr / q.l_j_ph())
}

/// All modes of a config: phase qubits x, y, z, buses X, Y, Z and O.
#[derive(Debug, Clone, Serialize)]
pub struct ModeTable {
    pub phase: [Option<PhaseMode>; 3],
    pub bus: [Option<PhaseMode>; 3],
    pub bus_o: Option<PhaseMode>,
    /// Bus modes evaluated with the other model, for comparison.
    pub bus_alt: [Option<PhaseMode>; 3],
    /// E_Lp per axis, GHz.
    pub e_lp: [Option<f64>; 3],
}

impl ModeTable {
    pub fn rows(&self) -> Vec<(String, PhaseMode)> {
        let mut out = Vec::new();
        for a in Axis::ALL {
            if let Some(m) = self.phase[a.index()] {
                out.push((a.lower().to_string(), m));
            }
        }
        for a in Axis::ALL {
            if let Some(m) = self.bus[a.index()] {
                out.push((a.upper().to_string(), m));
            }
        }
        if let Some(m) = self.bus_o {
            out.push(("O".to_string(), m));
        }
        out
    }
}

pub fn quantize_all(config: &SimulationConfig) -> Result<ModeTable, PhaseError> {
    let model = config.numerics.bus_model;
    let alt = match model {
        BusModel::Approximate => BusModel::Inductive,
        BusModel::Inductive => BusModel::Approximate,
    };
    let mut table = ModeTable {
        phase: [None; 3],
        bus: [None; 3],
        bus_o: None,
        bus_alt: [None; 3],
        e_lp: [None; 3],
    };
    for &a in config.axes() {
        let (Some(p), Some(b)) = (config.phase(a), config.bus(a)) else {
            continue;
        };
        let i = a.index();
        table.e_lp[i] = Some(p.e_lp_ghz());
        table.phase[i] = Some(quantize_phase(p, b)?);
        table.bus[i] = Some(quantize_shared(b, ModeRole::SharedP, model, Some(p.e_lp_ghz()))?);
        table.bus_alt[i] = Some(quantize_shared(b, ModeRole::SharedP, alt, Some(p.e_lp_ghz()))?);
    }
    if let Some(o) = &config.bus_o {
        table.bus_o = Some(quantize_shared(o, ModeRole::SharedO, model, None)?);
    }
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn textbook_plasma_frequency() {
        let m = harmonic_mode(ModeRole::SharedO, 8000.0, 0.5, 0.0, 0.0).unwrap();
        assert!((m.omega_ghz - (8.0f64 * 8000.0 * 0.5).sqrt()).abs() < 1e-12);
        // λ⁴ · stiffness = 2E_C
        assert!((m.lambda.powi(4) * m.stiffness_ghz - 1.0).abs() < 1e-12);
    }

    #[test]
    fn overbias_rejected() {
        assert_eq!(
            harmonic_mode(ModeRole::Phase, 850.0, 1e-3, 1.0, 0.0),
            Err(PhaseError::Overbiased(1.0))
        );
    }

    #[test]
    fn lambda_grows_with_bias() {
        let mut last = 0.0;
        for bias in [0.0, 0.5, 0.9, 0.95, 0.99, 0.999] {
            let m = harmonic_mode(ModeRole::Phase, 850.0, 850e-6, bias, 2706.0).unwrap();
            assert!(m.lambda > last);
            last = m.lambda;
        }
    }

    #[test]
    fn inductance_scaling() {
        let l = junction_inductance(8000.0);
        assert!((junction_inductance(16000.0) * 2.0 - l).abs() < 1e-12 * l);
        assert!(junction_inductance(1e12) < 1e-6);
    }
}
