//! Engine inputs and the per-stage interaction terms.

use crate::algebra::{factors, DriveId, FreqTable, InteractionTerm, Mode, RotatingMonomial, Sym};
use crate::RwaError;
use jjdirac_core::Axis;
use serde::Serialize;
use std::f64::consts::FRAC_PI_2;

/// The rotated couplings Z_i, X_i (GHz) of one flux qubit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QubitCouplings {
    pub big_z: [f64; 4],
    pub big_x: [f64; 4],
}

/// A harmonic mode as seen by the engine.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ModeParams {
    pub lambda: f64,
    pub omega_ghz: f64,
    /// Effective stiffness E (GHz); λ²/ω = 1/(2E).
    pub stiffness_ghz: f64,
}

impl ModeParams {
    pub fn from_stiffness(ec: f64, e: f64) -> Self {
        Self {
            lambda: (2.0 * ec / e).powf(0.25),
            omega_ghz: (8.0 * ec * e).sqrt(),
            stiffness_ghz: e,
        }
    }
}

/// ½n e^{i(ωt+φ)} + H.C on one drive line.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Drive {
    pub id: DriveId,
    pub amplitude: f64,
    pub omega_ghz: f64,
    pub phase: f64,
}

/// Everything the engine needs, in GHz.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EngineInputs {
    pub dimension: u8,
    pub qubit1: QubitCouplings,
    pub qubit2: Option<QubitCouplings>,
    /// Phase qubits x, y, z.
    pub phase: [Option<ModeParams>; 3],
    /// Shared junctions X, Y, Z.
    pub bus: [Option<ModeParams>; 3],
    pub bus_o: Option<ModeParams>,
    /// E_Lp per axis.
    pub e_l: [Option<f64>; 3],
    pub drives: Vec<Drive>,
}

/// Which effective term a set of interactions produces.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Stage {
    /// First order: drive-linear qubit terms.
    Mass,
    /// 1+1D second order: qubit 1, bus X, phase qubit x.
    Momentum1D,
    /// 2+1D and 3+1D third order on one axis.
    Momentum(Axis),
}

impl Stage {
    pub fn order(self) -> usize {
        match self {
            Stage::Mass => 1,
            Stage::Momentum1D => 2,
            Stage::Momentum(_) => 3,
        }
    }

    pub fn name(self) -> String {
        match self {
            Stage::Mass => "H_I1".into(),
            Stage::Momentum1D => "H_I2".into(),
            Stage::Momentum(a) => format!("H_I3{}", a.lower()),
        }
    }

    pub fn for_dimension(dim: u8) -> Vec<Stage> {
        let mut v = vec![Stage::Mass];
        if dim == 1 {
            v.push(Stage::Momentum1D);
        } else {
            v.extend(Axis::for_dimension(dim).iter().map(|&a| Stage::Momentum(a)));
        }
        v
    }
}

pub fn phase_mode(a: Axis) -> Mode {
    match a {
        Axis::X => Mode::Px,
        Axis::Y => Mode::Py,
        Axis::Z => Mode::Pz,
    }
}

pub fn bus_mode(a: Axis) -> Mode {
    match a {
        Axis::X => Mode::BX,
        Axis::Y => Mode::BY,
        Axis::Z => Mode::BZ,
    }
}

impl EngineInputs {
    pub fn qubit(&self, l: u8) -> Option<&QubitCouplings> {
        if l == 1 {
            Some(&self.qubit1)
        } else {
            self.qubit2.as_ref()
        }
    }

    pub fn mode(&self, m: Mode) -> Option<&ModeParams> {
        match m {
            Mode::Px => self.phase[0].as_ref(),
            Mode::Py => self.phase[1].as_ref(),
            Mode::Pz => self.phase[2].as_ref(),
            Mode::BX => self.bus[0].as_ref(),
            Mode::BY => self.bus[1].as_ref(),
            Mode::BZ => self.bus[2].as_ref(),
            Mode::O => self.bus_o.as_ref(),
        }
    }

    pub fn drive(&self, id: DriveId) -> Option<&Drive> {
        self.drives.iter().find(|d| d.id == id)
    }

    /// 2X0 of qubit 1 and 2Z0 of qubit 2, GHz.
    pub fn two_x0(&self) -> f64 {
        2.0 * self.qubit1.big_x[0]
    }

    pub fn two_z0(&self) -> Option<f64> {
        self.qubit2.map(|q| 2.0 * q.big_z[0])
    }

    pub fn freq_table(&self) -> FreqTable {
        let mut t = FreqTable::new();
        t.set(Sym::Q1, self.two_x0());
        t.set(Sym::Q2, self.two_z0().unwrap_or(0.0));
        for m in Mode::ALL {
            if let Some(p) = self.mode(m) {
                t.set(Sym::Mode(m), p.omega_ghz);
            }
        }
        for d in &self.drives {
            t.set(Sym::Drive(d.id), d.omega_ghz);
        }
        t
    }

    /// Copy with every drive amplitude multiplied by `s` on the given lines.
    pub fn with_drive_scale(&self, ids: &[DriveId], s: f64) -> Self {
        let mut out = self.clone();
        for d in &mut out.drives {
            if ids.contains(&d.id) {
                d.amplitude *= s;
            }
        }
        out
    }

    fn need_mode(&self, m: Mode) -> Result<ModeParams, RwaError> {
        self.mode(m)
            .copied()
            .ok_or_else(|| RwaError::MissingMode(m.name().to_string()))
    }

    fn need_qubit(&self, l: u8) -> Result<QubitCouplings, RwaError> {
        self.qubit(l).copied().ok_or(RwaError::MissingQubit(l))
    }

    fn need_e_l(&self, a: Axis) -> Result<f64, RwaError> {
        self.e_l[a.index()].ok_or_else(|| RwaError::MissingMode(a.lower().to_string()))
    }

    /// Σ over the listed drive lines of (½n e^{i(ωt+φ)} + H.C); error when
    /// none of them is present.
    fn drive_sum(&self, ids: &[DriveId], axis: &str) -> Result<Vec<RotatingMonomial>, RwaError> {
        let mut out = Vec::new();
        for id in ids {
            if let Some(d) = self.drive(*id) {
                out.extend(factors::drive(d.id, d.amplitude, d.phase));
            }
        }
        if out.is_empty() {
            return Err(RwaError::MissingDrive(axis.to_string()));
        }
        Ok(out)
    }
}

fn mode_factor(inputs: &EngineInputs, m: Mode) -> Result<Vec<RotatingMonomial>, RwaError> {
    Ok(factors::boson(m, inputs.need_mode(m)?.lambda))
}

/// Drive lines feeding each momentum stage.
pub fn stage_drives(stage: Stage) -> Vec<DriveId> {
    match stage {
        Stage::Mass => (1..=2)
            .flat_map(|q| (1..=3).map(move |l| DriveId::new(q, l)))
            .collect(),
        Stage::Momentum1D => vec![DriveId::new(1, 1)],
        Stage::Momentum(Axis::X) => vec![DriveId::new(2, 1), DriveId::new(2, 2)],
        Stage::Momentum(Axis::Y) => vec![DriveId::new(1, 1), DriveId::new(1, 2)],
        Stage::Momentum(Axis::Z) => vec![DriveId::new(2, 3)],
    }
}

/// Interaction terms I_1, I_2(, I_3) of a stage.
pub fn build_interactions(inputs: &EngineInputs, stage: Stage) -> Result<Vec<InteractionTerm>, RwaError> {
    use factors::*;
    let drives = stage_drives(stage);
    match stage {
        Stage::Mass => {
            // (Z1 σz + X1 σx)·drive + (Z3 σz + X3 σx)·ω·drive(φ − π/2), per qubit
            let mut monomials = Vec::new();
            for l in 1..=2u8 {
                let Some(q) = inputs.qubit(l) else { continue };
                let (sz, sx) = if l == 1 {
                    (q1_sigma_z(), q1_sigma_x())
                } else {
                    (q2_sigma_z(), q2_sigma_x())
                };
                for d in inputs.drives.iter().filter(|d| d.id.qubit == l) {
                    let lin = drive(d.id, d.amplitude, d.phase);
                    let vel = drive(d.id, d.amplitude, d.phase - FRAC_PI_2);
                    for (coef, op, dr) in [
                        (q.big_z[1], &sz, &lin),
                        (q.big_x[1], &sx, &lin),
                        (q.big_z[3] * d.omega_ghz, &sz, &vel),
                        (q.big_x[3] * d.omega_ghz, &sx, &vel),
                    ] {
                        if coef != 0.0 {
                            let t = InteractionTerm::product("I", &[scalar(coef), op.clone(), dr.clone()]);
                            monomials.extend(t.monomials);
                        }
                    }
                }
            }
            Ok(vec![InteractionTerm {
                name: "I".into(),
                monomials,
            }])
        }
        Stage::Momentum1D => {
            let q1 = inputs.need_qubit(1)?;
            let e_l = inputs.need_e_l(Axis::X)?;
            let i1 = InteractionTerm::product(
                "I1",
                &[
                    scalar(q1.big_x[2]),
                    q1_sigma_x(),
                    mode_factor(inputs, Mode::BX)?,
                    inputs.drive_sum(&drives, "x")?,
                ],
            );
            let i2 = InteractionTerm::product(
                "I2",
                &[scalar(-e_l), mode_factor(inputs, Mode::Px)?, mode_factor(inputs, Mode::BX)?],
            );
            Ok(vec![i1, i2])
        }
        Stage::Momentum(axis) => {
            let q1 = inputs.need_qubit(1)?;
            let q2 = inputs.need_qubit(2)?;
            let e_l = inputs.need_e_l(axis)?;
            let p = phase_mode(axis);
            let b = bus_mode(axis);
            let o = mode_factor(inputs, Mode::O)?;
            let dsum = inputs.drive_sum(&drives, axis.lower())?;
            let (i1, i2) = match axis {
                Axis::X => (
                    vec![scalar(-q1.big_x[2]), q1_sigma_x(), mode_factor(inputs, b)?, o.clone()],
                    vec![scalar(q2.big_x[2]), q2_sigma_x(), o, dsum],
                ),
                Axis::Y => (
                    vec![scalar(-q1.big_x[2]), q1_sigma_x(), o.clone(), dsum],
                    vec![scalar(q2.big_x[2]), q2_sigma_x(), mode_factor(inputs, b)?, o],
                ),
                Axis::Z => (
                    vec![scalar(-q1.big_x[2]), q1_sigma_x(), mode_factor(inputs, b)?, o.clone()],
                    vec![scalar(q2.big_z[2]), q2_sigma_z(), o, dsum],
                ),
            };
            let i3 = vec![scalar(-e_l), mode_factor(inputs, p)?, mode_factor(inputs, b)?];
            Ok(vec![
                InteractionTerm::product("I1", &i1),
                InteractionTerm::product("I2", &i2),
                InteractionTerm::product("I3", &i3),
            ])
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::sample_inputs;

    #[test]
    fn one_dimensional_terms_have_eight_monomials() {
        let inputs = sample_inputs(1);
        let terms = build_interactions(&inputs, Stage::Momentum1D).unwrap();
        let n: usize = terms.iter().map(|t| t.monomials.len()).sum();
        // σx alone expands into two projectors; count σx as one letter
        assert_eq!(terms[0].monomials.len() / 2 + terms[1].monomials.len(), 8);
        assert_eq!(n, 12);
        for t in &terms {
            assert!(t.is_hermitian(1e-15));
            for m in &t.monomials {
                assert_eq!(m.frequency, m.implied_frequency());
            }
        }
    }

    #[test]
    fn every_stage_is_hermitian_and_consistent() {
        let inputs = sample_inputs(3);
        for stage in Stage::for_dimension(3) {
            for t in build_interactions(&inputs, stage).unwrap() {
                assert!(t.is_hermitian(1e-15), "{:?} {}", stage, t.name);
                for m in &t.monomials {
                    assert_eq!(m.frequency, m.implied_frequency());
                }
            }
        }
    }

    #[test]
    fn missing_drive_is_reported() {
        let mut inputs = sample_inputs(3);
        inputs.drives.retain(|d| d.id.qubit != 2 || d.id.line == 3);
        let err = build_interactions(&inputs, Stage::Momentum(Axis::X)).unwrap_err();
        assert!(matches!(err, RwaError::MissingDrive(ref a) if a == "x"));
    }
}
