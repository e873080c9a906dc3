//! Drive frequencies and phases that make the wanted sidebands secular.

use crate::algebra::DriveId;
use crate::interactions::{Drive, EngineInputs};
use jjdirac_core::config::DriveAmplitudes;
use jjdirac_core::hierarchy::{check_hierarchy, HierarchyInput, HierarchyWarning};
use serde::Serialize;
use std::f64::consts::{FRAC_PI_2, PI};

/// Residuals above this (GHz) are flagged.
pub const RESONANCE_TOL_GHZ: f64 = 1e-6;

/// One frequency condition: target = Σ signed mode frequencies must equal
/// the drive frequency, with a prescribed phase and amplitude.
#[derive(Debug, Clone, Serialize)]
pub struct Condition {
    pub label: &'static str,
    pub drive: DriveId,
    pub target_ghz: f64,
    pub phase: f64,
    pub amplitude: f64,
}

fn wrap(phi: f64) -> f64 {
    let mut p = phi.rem_euclid(2.0 * PI);
    if p > PI {
        p -= 2.0 * PI;
    }
    p
}

impl Condition {
    /// A negative target is realized as |target| with the phase negated.
    pub fn drive_for(&self) -> Drive {
        let (omega, phase) = if self.target_ghz < 0.0 {
            (-self.target_ghz, -self.phase)
        } else {
            (self.target_ghz, self.phase)
        };
        Drive {
            id: self.drive,
            amplitude: self.amplitude,
            omega_ghz: omega,
            phase,
        }
    }
}

/// The conditions that apply in the given dimension.
pub fn conditions(inputs: &EngineInputs, amps: &DriveAmplitudes) -> Vec<Condition> {
    let mut out = vec![Condition {
        label: "+2X0(1) - w3(1) = 0",
        drive: DriveId::new(1, 3),
        target_ghz: inputs.two_x0(),
        phase: 0.0,
        amplitude: amps.nm,
    }];
    let omega = |i: usize| inputs.phase[i].map(|m| m.omega_ghz);
    if inputs.dimension == 1 {
        if let Some(wx) = omega(0) {
            out.push(Condition {
                label: "+w_x - w1(1) = 0",
                drive: DriveId::new(1, 1),
                target_ghz: wx,
                phase: FRAC_PI_2,
                amplitude: amps.nx,
            });
        }
        return out;
    }
    let Some(two_z0) = inputs.two_z0() else {
        return out;
    };
    if inputs.dimension >= 3 {
        if let Some(wz) = omega(2) {
            out.push(Condition {
                label: "+w_z - w3(2) = 0",
                drive: DriveId::new(2, 3),
                target_ghz: wz,
                phase: -FRAC_PI_2,
                amplitude: amps.nz,
            });
        }
    }
    if let Some(wy) = omega(1) {
        out.push(Condition {
            label: "+2Z0(2) + w_y - w1(1) = 0",
            drive: DriveId::new(1, 1),
            target_ghz: two_z0 + wy,
            phase: 0.0,
            amplitude: amps.ny,
        });
        out.push(Condition {
            label: "+2Z0(2) - w_y - w2(1) = 0",
            drive: DriveId::new(1, 2),
            target_ghz: two_z0 - wy,
            phase: PI,
            amplitude: amps.ny,
        });
    }
    if let Some(wx) = omega(0) {
        out.push(Condition {
            label: "+2Z0(2) + w_x - w1(2) = 0",
            drive: DriveId::new(2, 1),
            target_ghz: two_z0 + wx,
            phase: -FRAC_PI_2,
            amplitude: amps.nx,
        });
        out.push(Condition {
            label: "+2Z0(2) - w_x - w2(2) = 0",
            drive: DriveId::new(2, 2),
            target_ghz: two_z0 - wx,
            phase: FRAC_PI_2,
            amplitude: amps.nx,
        });
    }
    out
}

/// Drives solving every applicable condition exactly.
pub fn resonant_drives(inputs: &EngineInputs, amps: &DriveAmplitudes) -> Vec<Drive> {
    conditions(inputs, amps).iter().map(Condition::drive_for).collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct ConditionCheck {
    pub label: &'static str,
    pub drive: DriveId,
    pub expected_ghz: f64,
    pub actual_ghz: Option<f64>,
    pub residual_ghz: f64,
    pub expected_phase: f64,
    pub phase_residual: f64,
    pub ok: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct ResonanceReport {
    pub checks: Vec<ConditionCheck>,
    #[serde(serialize_with = "warnings_as_text")]
    pub warnings: Vec<HierarchyWarning>,
}

fn warnings_as_text<S: serde::Serializer>(w: &[HierarchyWarning], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(w.iter().map(|w| w.to_string()))
}

impl ResonanceReport {
    pub fn all_ok(&self) -> bool {
        self.checks.iter().all(|c| c.ok)
    }

    pub fn max_residual(&self) -> f64 {
        self.checks.iter().map(|c| c.residual_ghz).fold(0.0, f64::max)
    }
}

pub fn validate_resonance(inputs: &EngineInputs, amps: &DriveAmplitudes) -> ResonanceReport {
    let checks = conditions(inputs, amps)
        .iter()
        .map(|c| {
            let want = c.drive_for();
            match inputs.drive(c.drive) {
                Some(d) => {
                    let residual = (d.omega_ghz - want.omega_ghz).abs();
                    let phase_residual = wrap(d.phase - want.phase).abs();
                    ConditionCheck {
                        label: c.label,
                        drive: c.drive,
                        expected_ghz: want.omega_ghz,
                        actual_ghz: Some(d.omega_ghz),
                        residual_ghz: residual,
                        expected_phase: want.phase,
                        phase_residual,
                        ok: residual < RESONANCE_TOL_GHZ && phase_residual < 1e-9,
                    }
                }
                None => ConditionCheck {
                    label: c.label,
                    drive: c.drive,
                    expected_ghz: want.omega_ghz,
                    actual_ghz: None,
                    residual_ghz: f64::INFINITY,
                    expected_phase: want.phase,
                    phase_residual: f64::INFINITY,
                    ok: false,
                },
            }
        })
        .collect();
    let h = HierarchyInput {
        omega_o: inputs.bus_o.map(|m| m.omega_ghz),
        omega_bus: inputs.bus.map(|m| m.map(|m| m.omega_ghz)),
        two_x0: Some(inputs.two_x0()),
    };
    ResonanceReport {
        checks,
        warnings: check_hierarchy(&h),
    }
}
