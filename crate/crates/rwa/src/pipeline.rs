//! Config → engine inputs → effective Hamiltonian for every stage.

use crate::algebra::DriveId;
use crate::effective::{closed_form, run_stage, StageResult};
use crate::integrate::IntegrationSettings;
use crate::interactions::{Drive, EngineInputs, ModeParams, QubitCouplings, Stage};
use crate::resonance::{resonant_drives, validate_resonance, ResonanceReport};
use crate::RwaError;
use jjdirac_core::config::DenominatorMode;
use jjdirac_core::SimulationConfig;
use jjdirac_flux::{summarize, QubitSummary};
use jjdirac_phase::{quantize_all, PhaseMode};
use serde::Serialize;

fn mode_params(m: &PhaseMode) -> ModeParams {
    ModeParams {
        lambda: m.lambda,
        omega_ghz: m.omega_ghz,
        stiffness_ghz: m.stiffness_ghz,
    }
}

fn couplings(s: &QubitSummary) -> QubitCouplings {
    QubitCouplings {
        big_z: s.couplings.big_z,
        big_x: s.couplings.big_x,
    }
}

/// Solved flux qubits plus the engine inputs derived from them.
#[derive(Debug, Clone)]
pub struct Upstream {
    pub qubits: Vec<QubitSummary>,
    pub inputs: EngineInputs,
}

/// Solve both flux qubits, quantize all modes and attach drives. Explicit
/// pulses in a qubit section replace the generated ones for that qubit.
pub fn inputs_from_config(config: &SimulationConfig) -> Result<Upstream, RwaError> {
    let up = |e: &dyn std::fmt::Display| RwaError::Upstream(e.to_string());
    let n = &config.numerics;
    let mut qubits = Vec::new();
    for l in 1..=2u8 {
        if let Some(p) = config.qubit(l) {
            qubits.push(summarize(p, l, n.n_max, n.current_correction).map_err(|e| up(&e))?);
        }
    }
    let q1 = qubits.iter().find(|q| q.l == 1).ok_or(RwaError::MissingQubit(1))?;
    let table = quantize_all(config).map_err(|e| up(&e))?;
    let mut inputs = EngineInputs {
        dimension: config.dimension,
        qubit1: couplings(q1),
        qubit2: qubits.iter().find(|q| q.l == 2).map(couplings),
        phase: table.phase.map(|m| m.as_ref().map(mode_params)),
        bus: table.bus.map(|m| m.as_ref().map(mode_params)),
        bus_o: table.bus_o.as_ref().map(mode_params),
        e_l: table.e_lp,
        drives: vec![],
    };
    let auto = resonant_drives(&inputs, &config.drive);
    let mut drives = Vec::new();
    for l in 1..=2u8 {
        let explicit = config.qubit(l).map(|q| q.drives.as_slice()).unwrap_or(&[]);
        if explicit.is_empty() {
            drives.extend(auto.iter().copied().filter(|d| d.id.qubit == l));
        } else {
            drives.extend(explicit.iter().map(|p| Drive {
                id: DriveId::new(l, p.target),
                amplitude: p.amplitude,
                omega_ghz: p.omega_ghz,
                phase: p.phase,
            }));
        }
    }
    inputs.drives = drives;
    Ok(Upstream { qubits, inputs })
}

/// Per-stage comparison with the closed forms.
#[derive(Debug, Clone, Serialize)]
pub struct ClosedFormCheck {
    pub stage: String,
    /// (operator, [re, im] MHz).
    pub closed_form_mhz: Vec<(String, [f64; 2])>,
    pub hierarchy_deviation: f64,
    pub exact_deviation: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct EffectiveReport {
    pub inputs: EngineInputs,
    pub resonance: ResonanceReport,
    /// Default-mode results (as configured).
    pub stages: Vec<StageResult>,
    pub checks: Vec<ClosedFormCheck>,
}

impl EffectiveReport {
    pub fn stage(&self, stage: Stage) -> Option<&StageResult> {
        self.stages.iter().find(|s| s.stage == stage)
    }
}

fn to_mhz_rows(rows: Vec<(String, jjdirac_core::linalg::C64)>) -> Vec<(String, [f64; 2])> {
    rows.into_iter().map(|(s, c)| (s, [c.re * 1e3, c.im * 1e3])).collect()
}

/// Effective couplings for every stage of the configured dimension.
pub fn effective_for_inputs(
    inputs: &EngineInputs,
    config: &SimulationConfig,
) -> Result<EffectiveReport, RwaError> {
    let resonance = validate_resonance(inputs, &config.drive);
    if !resonance.all_ok() {
        let bad: Vec<_> = resonance.checks.iter().filter(|c| !c.ok).map(|c| c.label).collect();
        return Err(RwaError::OffResonance(bad.join("; ")));
    }
    let n = &config.numerics;
    let secular = n.secular_mhz * 1e-3;
    let settings = |mode| IntegrationSettings {
        mode,
        eps_den_ghz: n.eps_den_ghz,
    };
    let mut stages = Vec::new();
    let mut checks = Vec::new();
    for stage in Stage::for_dimension(config.dimension) {
        let exact = run_stage(inputs, stage, &settings(DenominatorMode::Exact), secular)?;
        let hier = run_stage(inputs, stage, &settings(DenominatorMode::Hierarchy), secular)?;
        let closed = closed_form(inputs, stage)?;
        checks.push(ClosedFormCheck {
            stage: stage.name(),
            closed_form_mhz: to_mhz_rows(closed.rows()),
            hierarchy_deviation: hier.pauli().relative_distance(&closed),
            exact_deviation: exact.pauli().relative_distance(&closed),
        });
        stages.push(match n.denominators {
            DenominatorMode::Exact => exact,
            DenominatorMode::Hierarchy => hier,
        });
    }
    Ok(EffectiveReport {
        inputs: inputs.clone(),
        resonance,
        stages,
        checks,
    })
}

pub fn effective_hamiltonian(config: &SimulationConfig) -> Result<EffectiveReport, RwaError> {
    let up = inputs_from_config(config)?;
    effective_for_inputs(&up.inputs, config)
}
