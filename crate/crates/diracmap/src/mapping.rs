//! Engine couplings → H_eff on the qubit subspace → H_I → standard form.
//!
//! Momentum couplings are read at unit quadrature: a term κ σx σ_p i(a† − a)
//! becomes κ α_p, so cp_p is the coupling in MHz and p̂ carries the scale
//! 1/2Δ_p.

use crate::{
    alpha, assemble_standard, beta, diagonal_transform, lorentz_boost, mass_angle, project, with_cp0,
    Boosted, DiracError, DiracMatrix,
};
use jjdirac_core::linalg::{c, kron, max_abs, sigma_x, sigma_y, sigma_z, CMat, I};
use jjdirac_core::Axis;
use jjdirac_rwa::algebra::{Ladder, Mode};
use jjdirac_rwa::effective::{Pauli, PauliForm};
use jjdirac_rwa::interactions::{bus_mode, phase_mode, Stage};
use jjdirac_rwa::EffectiveReport;
use serde::Serialize;

/// One derived number and the coupling it came from.
#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct Tagged {
    pub quantity: String,
    pub value: f64,
    pub source: String,
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct DiracParameters {
    pub dimension: u8,
    pub mc2: f64,
    pub cp0: f64,
    /// Signed, after D(ϑ) and the boost; zero on absent axes.
    pub cp: [f64; 3],
    pub delta_p: [f64; 3],
    pub omega_tilde: [f64; 3],
    /// c = 2Δ_p Ω̃_p in Δ_p·MHz.
    pub c: [f64; 3],
    pub omega: f64,
    pub az: f64,
    pub theta: f64,
    pub provenance: Vec<Tagged>,
}

/// The same quantities in their literal closed forms, for
/// comparison only (MHz, without the 2π).
#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct PrintedForms {
    pub cp: [Option<f64>; 3],
    pub cp0: Option<f64>,
    pub mc2: f64,
}

#[derive(Debug, Clone)]
pub struct MappedDirac {
    pub params: DiracParameters,
    pub printed: PrintedForms,
    pub h_eff: DiracMatrix,
    pub h_i: DiracMatrix,
    /// H_I plus the cp0 term.
    pub h_pre_boost: DiracMatrix,
    pub boosted: Option<Boosted>,
    pub standard: DiracMatrix,
    /// |σy| left on qubit 1 after D(ϑ), relative to the mass.
    pub sigma_y_residual: f64,
    /// Largest engine coefficient (MHz) not mapped to a Dirac generator.
    pub unmapped_mhz: f64,
    pub boost_error: Option<String>,
    /// σx⊗σz left after the boost beyond the rescaled cp_z/cosh(2az);
    /// in 3+1D the cp0 generator coincides with α_z.
    pub cp0_residual: Option<f64>,
}

fn axis_pauli(a: Axis) -> Pauli {
    match a {
        Axis::X => Pauli::X,
        Axis::Y => Pauli::Y,
        Axis::Z => Pauli::Z,
    }
}

/// κ of κ σx σ_p i(a† − a) (MHz) plus its non-Hermitian remainder.
fn quadrature_coupling(form: &PauliForm, p2: Pauli, m: Mode) -> (f64, f64) {
    let up = form.get(Pauli::X, p2, &[(m, Ladder::Create)]) * 1e3;
    let down = form.get(Pauli::X, p2, &[(m, Ladder::Annihilate)]) * 1e3;
    // up = iκ, down = −iκ
    let k = (-I * up + I * down) * 0.5;
    let rest = (up + down).norm() * 0.5;
    (k.re, rest.max(k.im.abs()))
}

pub fn map_parameters(report: &EffectiveReport, cp0: f64) -> Result<MappedDirac, DiracError> {
    let inputs = &report.inputs;
    let dim = inputs.dimension;
    let mass = report.stage(Stage::Mass).ok_or(DiracError::MissingMass)?.pauli();
    let a = mass.get(Pauli::Z, Pauli::I, &[]).re * 1e3;
    let b = mass.get(Pauli::Y, Pauli::I, &[]).re * 1e3;
    let mut unmapped: f64 = mass
        .0
        .iter()
        .filter(|(k, _)| !(k.1 == Pauli::I && k.2.is_empty() && matches!(k.0, Pauli::Z | Pauli::Y)))
        .map(|(_, v)| v.norm() * 1e3)
        .fold(0.0, f64::max);
    let theta = mass_angle(a, b);
    let mut prov = vec![
        Tagged { quantity: "mass sz".into(), value: a, source: "H_I1 sz(1)".into() },
        Tagged { quantity: "mass sy".into(), value: b, source: "H_I1 sy(1)".into() },
    ];

    let n = if dim == 1 { 2 } else { 4 };
    let lift = |m2: CMat| if n == 2 { m2 } else { kron(&m2, &jjdirac_core::linalg::identity(2)) };
    let mut h_eff = lift(sigma_z() * c(a, 0.0) + sigma_y() * c(b, 0.0));
    let mut delta = [0.0; 3];
    let axes: Vec<Axis> = match dim {
        1 => vec![Axis::X],
        2 => vec![Axis::X, Axis::Y],
        _ => Axis::ALL.to_vec(),
    };
    for &ax in &axes {
        let stage = if dim == 1 { Stage::Momentum1D } else { Stage::Momentum(ax) };
        let res = report
            .stage(stage)
            .ok_or_else(|| DiracError::MissingAxis(ax.lower().into()))?;
        let form = res.pauli();
        let pm = phase_mode(ax);
        let p2 = if dim == 1 { Pauli::I } else { axis_pauli(ax) };
        let (k, rest) = quadrature_coupling(&form, p2, pm);
        if k == 0.0 && form.0.is_empty() {
            return Err(DiracError::MissingAxis(ax.lower().into()));
        }
        let i = ax.index();
        delta[i] = inputs.mode(pm).map(|m| m.lambda).unwrap_or(0.0);
        let total: f64 = form.0.values().map(|v| v.norm() * 1e3).fold(0.0, f64::max);
        let others = form
            .0
            .iter()
            .filter(|(key, _)| !(key.0 == Pauli::X && key.1 == p2 && key.2.len() == 1 && key.2[0].0 == pm))
            .map(|(_, v)| v.norm() * 1e3)
            .fold(rest, f64::max);
        unmapped = unmapped.max(others.min(total));
        let gen = if dim == 1 { sigma_x() } else { alpha(4, i) };
        h_eff += gen * c(k, 0.0);
        prov.push(Tagged {
            quantity: format!("kappa_{}", ax.lower()),
            value: k,
            source: format!("{} sx(1) {}(2) i(a+ - a-)_{}", stage.name(), p2, pm.name()),
        });
    }
    let h_eff = DiracMatrix { matrix: h_eff };
    let h_i = diagonal_transform(&h_eff, theta);

    let b_i = if n == 2 { sigma_z() } else { beta(4) };
    let mc2_i = project(&h_i.matrix, &b_i).re;
    let sy = if n == 2 { sigma_y() } else { kron(&sigma_y(), &jjdirac_core::linalg::identity(2)) };
    let omega = (a * a + b * b).sqrt();
    let sigma_y_residual = if omega > 0.0 { project(&h_i.matrix, &sy).norm() / omega } else { 0.0 };

    let (h_pre, boosted, boost_error) = if n == 4 {
        let pre = with_cp0(&h_i, cp0);
        match lorentz_boost(&pre, mc2_i, cp0) {
            Ok(bst) => (pre, Some(bst), None),
            Err(e) => (pre, None, Some(e.to_string())),
        }
    } else {
        (h_i.clone(), None, if cp0 != 0.0 { Some("cp0 has no generator in 1+1D".into()) } else { None })
    };
    let (mc2, cp, az) = match &boosted {
        Some(bst) => (bst.mc2, bst.cp, bst.az),
        None => {
            let cp = if n == 2 {
                [project(&h_pre.matrix, &sigma_x()).re, 0.0, 0.0]
            } else {
                [0, 1, 2].map(|i| project(&h_pre.matrix, &alpha(4, i)).re)
            };
            (mc2_i, cp, 0.0)
        }
    };
    let cp0_residual = boosted.as_ref().map(|bst| {
        let cpz = project(&h_i.matrix, &alpha(4, 2)).re;
        (project(&bst.h.matrix, &crate::cp0_generator()).re - cpz / (2.0 * bst.az).cosh()).abs()
    });
    let standard = assemble_standard(mc2, cp, dim);
    let omega_tilde = cp.map(f64::abs);
    let mut cvel = [0.0; 3];
    for i in 0..3 {
        cvel[i] = 2.0 * delta[i] * omega_tilde[i];
    }
    prov.push(Tagged { quantity: "cp0".into(), value: cp0, source: "config dirac.cp0_mhz".into() });

    let printed = printed_forms(report);
    Ok(MappedDirac {
        params: DiracParameters {
            dimension: dim,
            mc2,
            cp0,
            cp,
            delta_p: delta,
            omega_tilde,
            c: cvel,
            omega,
            az,
            theta,
            provenance: prov,
        },
        printed,
        h_eff,
        h_i,
        h_pre_boost: h_pre,
        boosted,
        standard,
        sigma_y_residual,
        unmapped_mhz: unmapped,
        boost_error,
        cp0_residual,
    })
}

fn printed_forms(report: &EffectiveReport) -> PrintedForms {
    let inp = &report.inputs;
    let q1 = inp.qubit1;
    let n_of = |q: u8, l: u8| inp.drive(jjdirac_rwa::algebra::DriveId::new(q, l)).map(|d| d.amplitude);
    let e_o = inp.mode(Mode::O).map(|m| m.stiffness_ghz);
    let mut cp = [None; 3];
    if let (Some(q2), Some(eo)) = (inp.qubit2, e_o) {
        for ax in Axis::ALL {
            let i = ax.index();
            let n = match ax {
                Axis::X => n_of(2, 1),
                Axis::Y => n_of(1, 1),
                Axis::Z => n_of(2, 3),
            };
            let l = inp.mode(phase_mode(ax)).map(|m| m.lambda);
            let ej = inp.mode(bus_mode(ax)).map(|m| m.stiffness_ghz);
            if let (Some(n), Some(l), Some(ej), Some(el)) = (n, l, ej, inp.e_l[i]) {
                cp[i] = Some(l * n * q1.big_x[2] * q2.big_x[2] * el / (eo * ej) * 1e3);
            }
        }
    }
    let nm = n_of(1, 3).unwrap_or(0.0);
    PrintedForms {
        cp,
        cp0: e_o.map(|eo| q1.big_x[1] * q1.big_z[1] / eo * 1e3),
        mc2: q1.big_z[1] * nm * 1e3,
    }
}

/// Re-assemble H_I from the parameters and compare with the mapped one.
pub fn standard_defect(m: &MappedDirac) -> f64 {
    let target = match &m.boosted {
        Some(b) => b.h.matrix.clone(),
        None => m.h_pre_boost.matrix.clone(),
    };
    max_abs(&(&target - &m.standard.matrix))
}
