//! Stage runner, Pauli projection of effective words and the hand-written
//! closed forms used as cross-checks.

use crate::algebra::{Ladder, Mode, Unit, Word};
use crate::integrate::{collect_secular, ordered_integral, orderings, Census, EffectiveCoupling, IntegrationSettings};
use crate::interactions::{bus_mode, build_interactions, phase_mode, EngineInputs, Stage};
use crate::RwaError;
use jjdirac_core::config::DenominatorMode;
use jjdirac_core::linalg::{C64, I, ONE, ZERO};
use jjdirac_core::Axis;
use rayon::prelude::*;
use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl fmt::Display for Pauli {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Pauli::I => "1",
            Pauli::X => "sx",
            Pauli::Y => "sy",
            Pauli::Z => "sz",
        };
        write!(f, "{s}")
    }
}

/// (qubit-1 Pauli, qubit-2 Pauli, remaining boson string).
pub type PauliKey = (Pauli, Pauli, Vec<(Mode, Ladder)>);

/// Coefficients (GHz) of Pauli-string ⊗ boson-word operators.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct PauliForm(pub BTreeMap<PauliKey, C64>);

impl PauliForm {
    pub fn add(&mut self, key: PauliKey, c: C64) {
        *self.0.entry(key).or_insert(ZERO) += c;
    }

    pub fn get(&self, p1: Pauli, p2: Pauli, bosons: &[(Mode, Ladder)]) -> C64 {
        self.0
            .get(&(p1, p2, bosons.to_vec()))
            .copied()
            .unwrap_or(ZERO)
    }

    pub fn max_abs(&self) -> f64 {
        self.0.values().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// max |a − b| / max(|a|, |b|) over the union of keys.
    pub fn relative_distance(&self, other: &PauliForm) -> f64 {
        let mut keys: Vec<&PauliKey> = self.0.keys().collect();
        keys.extend(other.0.keys());
        let diff = keys
            .iter()
            .map(|k| {
                let a = self.0.get(*k).copied().unwrap_or(ZERO);
                let b = other.0.get(*k).copied().unwrap_or(ZERO);
                (a - b).norm()
            })
            .fold(0.0, f64::max);
        let scale = self.max_abs().max(other.max_abs());
        if scale == 0.0 {
            0.0
        } else {
            diff / scale
        }
    }

    /// Drop entries below `tol` times the largest.
    pub fn pruned(&self, tol: f64) -> PauliForm {
        let cut = tol * self.max_abs();
        PauliForm(self.0.iter().filter(|(_, c)| c.norm() > cut).map(|(k, c)| (k.clone(), *c)).collect())
    }

    pub fn rows(&self) -> Vec<(String, C64)> {
        self.0
            .iter()
            .map(|((p1, p2, b), c)| {
                let mut s = format!("{p1}(1) {p2}(2)");
                for (m, l) in b {
                    let op = if *l == Ladder::Create { "a+" } else { "a-" };
                    s.push_str(&format!(" {op}_{}", m.name()));
                }
                (s, *c)
            })
            .collect()
    }
}

/// Qubit-1 frame units (x basis) as Pauli combinations.
fn q1_pauli(u: Option<Unit>) -> Vec<(Pauli, C64)> {
    let h = C64::new(0.5, 0.0);
    match u.map(|u| (u.row, u.col)) {
        None => vec![(Pauli::I, ONE)],
        Some((0, 0)) => vec![(Pauli::I, h), (Pauli::X, h)],
        Some((1, 1)) => vec![(Pauli::I, h), (Pauli::X, -h)],
        // ρ+ = (σz − iσy)/2
        Some((0, 1)) => vec![(Pauli::Z, h), (Pauli::Y, -I * h)],
        _ => vec![(Pauli::Z, h), (Pauli::Y, I * h)],
    }
}

/// Qubit-2 frame units (z basis) as Pauli combinations.
fn q2_pauli(u: Option<Unit>) -> Vec<(Pauli, C64)> {
    let h = C64::new(0.5, 0.0);
    match u.map(|u| (u.row, u.col)) {
        None => vec![(Pauli::I, ONE)],
        Some((0, 0)) => vec![(Pauli::I, h), (Pauli::Z, h)],
        Some((1, 1)) => vec![(Pauli::I, h), (Pauli::Z, -h)],
        // σ+ = (σx + iσy)/2
        Some((0, 1)) => vec![(Pauli::X, h), (Pauli::Y, I * h)],
        _ => vec![(Pauli::X, h), (Pauli::Y, -I * h)],
    }
}

pub fn word_to_pauli(word: &Word, coefficient: C64, form: &mut PauliForm) {
    for (p1, c1) in q1_pauli(word.q1) {
        for (p2, c2) in q2_pauli(word.q2) {
            form.add((p1, p2, word.bosons.clone()), coefficient * c1 * c2);
        }
    }
}

/// Pauli form (GHz) of a coupling list (MHz).
pub fn couplings_to_pauli(couplings: &[EffectiveCoupling]) -> PauliForm {
    let mut form = PauliForm::default();
    for c in couplings {
        word_to_pauli(&c.word, c.coefficient() * 1e-3, &mut form);
    }
    form.pruned(1e-13)
}

/// Engine output for one stage.
#[derive(Debug, Clone, Serialize)]
pub struct StageResult {
    pub stage: Stage,
    pub name: String,
    pub mode: DenominatorMode,
    pub couplings: Vec<EffectiveCoupling>,
    pub census: Census,
}

impl StageResult {
    pub fn pauli(&self) -> PauliForm {
        couplings_to_pauli(&self.couplings)
    }
}

/// Run all orderings of a stage, then secular collection.
pub fn run_stage(
    inputs: &EngineInputs,
    stage: Stage,
    settings: &IntegrationSettings,
    secular_ghz: f64,
) -> Result<StageResult, RwaError> {
    let terms = build_interactions(inputs, stage)?;
    let table = inputs.freq_table();
    let names: Vec<String> = terms.iter().map(|t| t.name.clone()).collect();
    let order = stage.order();
    let perms = if order == 1 { vec![vec![0]] } else { orderings(order) };
    let expanded: Vec<_> = perms
        .par_iter()
        .map(|o| ordered_integral(&terms, o, &table, settings))
        .collect::<Result<Vec<_>, _>>()?;
    let products: Vec<_> = expanded.into_iter().flatten().collect();
    let leading = settings.mode == DenominatorMode::Hierarchy;
    let (couplings, census) = collect_secular(&products, &names, &table, secular_ghz, leading);
    Ok(StageResult {
        stage,
        name: stage.name(),
        mode: settings.mode,
        couplings,
        census,
    })
}

/// Closed forms (GHz). The first-order term carries the ½ of the
/// drive's ½n e^{±iωt} split, which the engine reproduces.
pub fn closed_form(inputs: &EngineInputs, stage: Stage) -> Result<PauliForm, RwaError> {
    let mut f = PauliForm::default();
    let amp = |q: u8, l: u8| {
        inputs
            .drive(crate::algebra::DriveId::new(q, l))
            .map(|d| (d.amplitude, d.omega_ghz))
            .ok_or_else(|| RwaError::MissingDrive(format!("{l}({q})")))
    };
    let ej = |m: Mode| {
        inputs
            .mode(m)
            .map(|p| p.stiffness_ghz)
            .ok_or_else(|| RwaError::MissingMode(m.name().into()))
    };
    let q1 = inputs.qubit1;
    match stage {
        Stage::Mass => {
            let (nm, w3) = amp(1, 3)?;
            f.add((Pauli::Z, Pauli::I, vec![]), C64::new(0.5 * q1.big_z[1] * nm, 0.0));
            f.add((Pauli::Y, Pauli::I, vec![]), C64::new(0.5 * w3 * q1.big_z[3] * nm, 0.0));
        }
        Stage::Momentum1D => {
            let (n1, _) = amp(1, 1)?;
            let e_l = inputs.e_l[0].ok_or_else(|| RwaError::MissingMode("x".into()))?;
            let lx = inputs.mode(Mode::Px).ok_or_else(|| RwaError::MissingMode("x".into()))?.lambda;
            let g = 0.5 * q1.big_x[2] * e_l / ej(Mode::BX)? * lx * n1;
            // g σx i(a − a†)
            f.add((Pauli::X, Pauli::I, vec![(Mode::Px, Ladder::Annihilate)]), I * g);
            f.add((Pauli::X, Pauli::I, vec![(Mode::Px, Ladder::Create)]), -I * g);
        }
        Stage::Momentum(axis) => {
            let q2 = inputs.qubit2.ok_or(RwaError::MissingQubit(2))?;
            let e_l = inputs.e_l[axis.index()].ok_or_else(|| RwaError::MissingMode(axis.lower().into()))?;
            let p = phase_mode(axis);
            let lp = inputs.mode(p).ok_or_else(|| RwaError::MissingMode(p.name().into()))?.lambda;
            let (n, c2, p2) = match axis {
                Axis::X => (amp(2, 1)?.0, q2.big_x[2], Pauli::X),
                Axis::Y => (amp(1, 1)?.0, q2.big_x[2], Pauli::Y),
                Axis::Z => (amp(2, 3)?.0, q2.big_z[2], Pauli::Z),
            };
            let g = 0.5 * q1.big_x[2] * c2 * e_l / (ej(Mode::O)? * ej(bus_mode(axis))?) * lp * n;
            // g σx σ_p i(a† − a)
            f.add((Pauli::X, p2, vec![(p, Ladder::Create)]), I * g);
            f.add((Pauli::X, p2, vec![(p, Ladder::Annihilate)]), -I * g);
        }
    }
    Ok(f.pruned(0.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::sample_inputs;

    fn hierarchy() -> IntegrationSettings {
        IntegrationSettings {
            mode: DenominatorMode::Hierarchy,
            eps_den_ghz: 0.1,
        }
    }

    #[test]
    fn stages_match_closed_forms_in_hierarchy_mode() {
        for dim in [1u8, 3] {
            let inputs = sample_inputs(dim);
            for stage in Stage::for_dimension(dim) {
                let r = run_stage(&inputs, stage, &hierarchy(), 1e-3).unwrap();
                let engine = r.pauli();
                let closed = closed_form(&inputs, stage).unwrap();
                let d = engine.relative_distance(&closed);
                assert!(d < 1e-12, "{stage:?}: {d:e}\nengine {:?}\nclosed {:?}", engine.rows(), closed.rows());
            }
        }
    }
}
