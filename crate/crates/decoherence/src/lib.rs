//! Γ1, Γφ, Γ2 and the transition-time comparison.
//!
//! Rates are in 1/µs (written MHz), times in µs. Γ1 is evaluated in SI:
//! Γ1 = ⟨Q⟩²(Cg/C)² ω Re Z/ħ + ⟨I⟩² M² ω Re Y/ħ with ω = 2π f10.

use jjdirac_core::constants::SI;
use jjdirac_core::{Axis, FluxQubitParams, NoiseConfig, SimulationConfig};
use jjdirac_flux::{solve_spectrum, ChargeGrid, EigenError};
use jjdirac_phase::PhaseMode;
use rayon::prelude::*;
use serde::Serialize;
use std::f64::consts::TAU;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DecoherenceError {
    #[error("1/f band needs omega_t > omega_c > 0 (got {omega_t}, {omega_c})")]
    Band { omega_t: f64, omega_c: f64 },
    #[error("flux-qubit solve failed: {0}")]
    Solver(String),
    #[error("{0}")]
    Missing(String),
}

impl From<EigenError> for DecoherenceError {
    fn from(e: EigenError) -> Self {
        Self::Solver(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, DecoherenceError>;

/// What Γ1 and Γφ need from a qubit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TransitionData {
    pub f10_ghz: f64,
    /// Current element entering the flux channel, nA.
    pub current_na: f64,
    /// |⟨0|Q|1⟩| in units of e.
    pub charge_e: f64,
    /// ∂f10/∂f1, GHz per flux quantum.
    pub sensitivity_ghz: f64,
}

const FD_STEP: f64 = 1e-4;

fn transition_at(p: &FluxQubitParams, n_max: usize, correction: bool, offdiagonal: bool) -> Result<TransitionData> {
    let sol = solve_spectrum(p, ChargeGrid::new(n_max))?;
    let cur = sol.circulating_current(correction);
    let m = sol.matrix_elements();
    Ok(TransitionData {
        f10_ghz: sol.gap(),
        current_na: if offdiagonal { cur.i_ge } else { 0.5 * (cur.i_ee - cur.i_gg).abs() },
        charge_e: 2.0 * m.x_complex[3].norm(),
        sensitivity_ghz: 0.0,
    })
}

fn gap(p: &FluxQubitParams, n_max: usize) -> Result<f64> {
    Ok(solve_spectrum(p, ChargeGrid::new(n_max))?.gap())
}

impl TransitionData {
    /// Solve the flux qubit; ∂f10/∂f1 by a central difference of step 1e-4.
    pub fn from_flux_qubit(p: &FluxQubitParams, n_max: usize, correction: bool, offdiagonal: bool) -> Result<Self> {
        let mut t = transition_at(p, n_max, correction, offdiagonal)?;
        let up = gap(&p.with_f1(p.f1 + FD_STEP), n_max)?;
        let down = gap(&p.with_f1(p.f1 - FD_STEP), n_max)?;
        t.sensitivity_ghz = (up - down) / (2.0 * FD_STEP);
        Ok(t)
    }

    /// Harmonic mode with φ = λ(a + a†): |⟨0|n|1⟩| = 1/(2λ), no flux
    /// channel and no first-order flux sensitivity.
    pub fn from_phase_mode(m: &PhaseMode) -> Self {
        Self {
            f10_ghz: m.omega_ghz,
            current_na: 0.0,
            charge_e: 2.0 / (2.0 * m.lambda),
            sensitivity_ghz: 0.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RelaxationRates {
    pub charge: f64,
    pub flux: f64,
    pub total: f64,
}

pub fn relaxation_rate(t: &TransitionData, env: &NoiseConfig) -> RelaxationRates {
    let omega = TAU * t.f10_ghz * 1e9;
    let hbar = SI.hbar;
    let q = t.charge_e * SI.electron_charge;
    let i = t.current_na * 1e-9;
    let m = env.m_ph * 1e-12;
    // 1/s → 1/µs
    let charge = q * q * env.cg_over_c.powi(2) * omega * env.re_z_ohm / hbar * 1e-6;
    let flux = i * i * m * m * omega * env.re_y_siemens / hbar * 1e-6;
    RelaxationRates {
        charge,
        flux,
        total: charge + flux,
    }
}

/// Σ|A_i| √(α_i ln(ωt/ωc)) with A_i = 2π ∂f10/∂x_i in rad/µs.
pub fn dephasing_rate(channels: &[(f64, f64)], env: &NoiseConfig) -> Result<f64> {
    let (wt, wc) = (env.omega_t_ghz, env.omega_c_ghz);
    if !(wc > 0.0 && wt > wc) {
        return Err(DecoherenceError::Band { omega_t: wt, omega_c: wc });
    }
    let log = (wt / wc).ln();
    Ok(channels
        .iter()
        .map(|&(a_ghz, alpha)| (TAU * a_ghz * 1e3).abs() * (alpha * log).sqrt())
        .sum())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QubitBudget {
    pub label: String,
    pub transition: TransitionData,
    pub gamma1: RelaxationRates,
    pub gamma_phi: f64,
    pub gamma2: f64,
    pub t1_us: f64,
    pub t2_us: f64,
}

pub fn qubit_budget(label: &str, t: &TransitionData, env: &NoiseConfig) -> Result<QubitBudget> {
    let g1 = relaxation_rate(t, env);
    let gphi = dephasing_rate(&[(t.sensitivity_ghz, env.alpha_flux)], env)?;
    let g2 = g1.total / 2.0 + gphi;
    Ok(QubitBudget {
        label: label.into(),
        transition: *t,
        gamma1: g1,
        gamma_phi: gphi,
        gamma2: g2,
        t1_us: 1.0 / g1.total,
        t2_us: 1.0 / g2,
    })
}

/// Half a sideband Rabi cycle at coupling Ω̃ (MHz): π/(2·2πΩ̃) = 1/(4Ω̃) µs.
pub fn transition_time_us(omega_tilde_mhz: f64) -> f64 {
    1.0 / (4.0 * omega_tilde_mhz.abs())
}

pub const CLAIM_RATIO: f64 = 3.0;
pub const MICROSECOND_T2: f64 = 1.0;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AxisFeasibility {
    pub axis: String,
    pub omega_tilde_mhz: f64,
    pub transition_us: f64,
    pub ratio: f64,
    pub satisfied: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DecoherenceReport {
    pub qubits: Vec<QubitBudget>,
    /// Qubit with the shortest T2.
    pub limiting: String,
    pub gamma1: f64,
    pub gamma_phi: f64,
    pub gamma2: f64,
    pub t1_us: f64,
    pub t2_us: f64,
    pub axes: Vec<AxisFeasibility>,
    pub claim_satisfied: bool,
    pub microsecond_threshold_met: bool,
    pub annotation: String,
}

/// Compare the shortest T2 with the transition time on each axis.
pub fn feasibility(qubits: Vec<QubitBudget>, omega_tilde: &[(Axis, f64)]) -> Result<DecoherenceReport> {
    let worst = qubits
        .iter()
        .min_by(|a, b| a.t2_us.total_cmp(&b.t2_us))
        .ok_or_else(|| DecoherenceError::Missing("no qubit to budget".into()))?
        .clone();
    let axes: Vec<AxisFeasibility> = omega_tilde
        .iter()
        .map(|&(ax, w)| {
            let tt = transition_time_us(w);
            let ratio = worst.t2_us / tt;
            AxisFeasibility {
                axis: ax.lower().into(),
                omega_tilde_mhz: w,
                transition_us: tt,
                ratio,
                satisfied: ratio > CLAIM_RATIO,
            }
        })
        .collect();
    let claim = !axes.is_empty() && axes.iter().all(|a| a.satisfied);
    let us = worst.t2_us >= MICROSECOND_T2;
    let annotation = format!(
        "T2 = {:.6e} us ({}); {} than {CLAIM_RATIO}x the transition time on all axes",
        worst.t2_us,
        if us { "reaches 1 us" } else { "below 1 us" },
        if claim { "longer" } else { "not longer" }
    );
    Ok(DecoherenceReport {
        limiting: worst.label.clone(),
        gamma1: worst.gamma1.total,
        gamma_phi: worst.gamma_phi,
        gamma2: worst.gamma2,
        t1_us: worst.t1_us,
        t2_us: worst.t2_us,
        qubits,
        axes,
        claim_satisfied: claim,
        microsecond_threshold_met: us,
        annotation,
    })
}

/// Budget both flux qubits of the config against the mapped couplings.
pub fn feasibility_report(config: &SimulationConfig, omega_tilde: &[(Axis, f64)]) -> Result<DecoherenceReport> {
    let n = &config.numerics;
    let env = &config.noise;
    let mut qubits = Vec::new();
    for l in 1..=2u8 {
        if let Some(p) = config.qubit(l) {
            let t = TransitionData::from_flux_qubit(p, n.n_max, n.current_correction, env.offdiagonal_current)?;
            qubits.push(qubit_budget(&format!("flux{l}"), &t, env)?);
        }
    }
    feasibility(qubits, omega_tilde)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweetSpot {
    pub f1: Vec<f64>,
    pub gap_ghz: Vec<f64>,
    /// Γφ from the grid's own central differences (interior points).
    pub gamma_phi: Vec<f64>,
    pub gap_extremum: usize,
    pub gamma_phi_minimum: usize,
    pub colocated: bool,
}

/// Gap and Γφ over an f1 grid; checks that min Γφ sits at the gap extremum.
pub fn sweet_spot(p: &FluxQubitParams, f1: &[f64], n_max: usize, env: &NoiseConfig) -> Result<SweetSpot> {
    let gaps: Vec<f64> = f1.par_iter().map(|&f| gap(&p.with_f1(f), n_max)).collect::<Result<_>>()?;
    let n = gaps.len();
    if n < 3 {
        return Err(DecoherenceError::Missing("sweet-spot grid needs 3 points".into()));
    }
    let mut gphi = vec![f64::NAN; n];
    for i in 1..n - 1 {
        let a = (gaps[i + 1] - gaps[i - 1]) / (f1[i + 1] - f1[i - 1]);
        gphi[i] = dephasing_rate(&[(a, env.alpha_flux)], env)?;
    }
    let interior = 1..n - 1;
    // extremum: interior point where the discrete slope changes sign, else global min
    let ext = interior
        .clone()
        .find(|&i| (gaps[i] - gaps[i - 1]) * (gaps[i + 1] - gaps[i]) <= 0.0)
        .unwrap_or_else(|| (0..n).min_by(|&a, &b| gaps[a].total_cmp(&gaps[b])).unwrap());
    let gmin = interior.min_by(|&a, &b| gphi[a].total_cmp(&gphi[b])).unwrap();
    Ok(SweetSpot {
        f1: f1.to_vec(),
        gap_ghz: gaps,
        gamma_phi: gphi,
        gap_extremum: ext,
        gamma_phi_minimum: gmin,
        colocated: ext.abs_diff(gmin) <= 1,
    })
}

/// f1 at which f3 = ½ for this f2.
pub fn symmetric_f1(p: &FluxQubitParams) -> f64 {
    0.5 - 0.5 * p.f2
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CoherenceRow {
    pub f1: f64,
    pub t1_us: f64,
    pub t2_us: f64,
}

/// T1, T2 along an f1 grid (the parameter column of the coherence CSV).
pub fn coherence_sweep(
    p: &FluxQubitParams,
    f1: &[f64],
    n_max: usize,
    correction: bool,
    env: &NoiseConfig,
) -> Result<Vec<CoherenceRow>> {
    f1.par_iter()
        .map(|&f| {
            let t = TransitionData::from_flux_qubit(&p.with_f1(f), n_max, correction, env.offdiagonal_current)?;
            let b = qubit_budget("", &t, env)?;
            Ok(CoherenceRow {
                f1: f,
                t1_us: b.t1_us,
                t2_us: b.t2_us,
            })
        })
        .collect()
}
