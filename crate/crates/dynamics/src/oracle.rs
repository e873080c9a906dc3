//! Velocity-integration oracle: ψ stepped with a Padé exponential,
//! ⟨α_i⟩ integrated by composite Simpson, then one Richardson step.

use crate::{validate_times, DiracSystem, DynamicsError, Result, SpinorState, Trajectory};
use jjdirac_core::linalg::{c, expm, CMat, CVec};
use jjdirac_core::units::to_angular;
use serde::Serialize;

#[derive(Debug, Clone, Serialize)]
pub struct OracleReport {
    pub trajectory: Trajectory,
    pub steps_per_period: usize,
    pub total_steps: usize,
    pub max_norm_defect: f64,
    /// Largest |Richardson − fine Simpson| relative to the trajectory scale.
    pub richardson_gap: f64,
    pub warning: Option<String>,
}

fn velocities(alphas: &[CMat], psi: &CVec) -> [f64; 3] {
    let mut v = [0.0; 3];
    for (i, a) in alphas.iter().enumerate() {
        v[i] = (psi.adjoint() * a * psi)[(0, 0)].re;
    }
    v
}

/// ∫₀ᵗ ⟨ψ(s)|α_i|ψ(s)⟩ ds at every requested time (any order; each segment
/// continues from the previous one).
pub fn zb_oracle(
    sys: &DiracSystem,
    psi: &SpinorState,
    times: &[f64],
    steps_per_period: usize,
) -> Result<OracleReport> {
    if steps_per_period < 64 {
        return Err(DynamicsError::TooFewSteps(steps_per_period));
    }
    if psi.len() != sys.size() {
        return Err(DynamicsError::SpinorLength {
            got: psi.len(),
            want: sys.size(),
        });
    }
    validate_times(times)?;
    let e_max = sys.max_energy();
    // tremor period 1/(2E); with H = 0 nothing moves and any step will do
    let h_target = if e_max > 0.0 {
        1.0 / (2.0 * e_max) / steps_per_period as f64
    } else {
        times.iter().fold(0.0, |m: f64, t| m.max(t.abs())).max(1.0) / steps_per_period as f64
    };
    let h_ang = &sys.h * c(to_angular(1.0), 0.0);

    let mut state = psi.vector().clone();
    let mut t_now = 0.0;
    let mut x = [0.0; 3];
    let mut traj = Trajectory {
        times: times.to_vec(),
        position: Vec::with_capacity(times.len()),
        max_imag: 0.0,
    };
    let mut defect: f64 = 0.0;
    let mut gap: f64 = 0.0;
    let mut total = 0;
    let mut cache: Option<(f64, CMat)> = None;
    for &t in times {
        let len = t - t_now;
        if len != 0.0 {
            // multiple of 4 so the coarse Simpson pass has an even count
            let m = ((len.abs() / h_target).ceil() as usize).max(4).div_ceil(4) * 4;
            let hs = len / m as f64;
            let u = match &cache {
                Some((h, u)) if *h == hs => u.clone(),
                _ => {
                    let u = expm(&(&h_ang * c(0.0, -hs)));
                    cache = Some((hs, u.clone()));
                    u
                }
            };
            // restart each segment from exp(−iH t_start)ψ0 so step errors
            // do not compound over the whole run
            if t_now != 0.0 {
                state = expm(&(&h_ang * c(0.0, -t_now))) * psi.vector();
            }
            let mut nodes = Vec::with_capacity(m + 1);
            nodes.push(velocities(&sys.alphas, &state));
            for _ in 0..m {
                state = &u * &state;
                defect = defect.max((state.norm() - 1.0).abs());
                nodes.push(velocities(&sys.alphas, &state));
            }
            total += m;
            for i in 0..sys.axes() {
                let simpson = |stride: usize| {
                    let k = m / stride;
                    let mut s = nodes[0][i] + nodes[m][i];
                    for j in 1..k {
                        s += nodes[j * stride][i] * if j % 2 == 1 { 4.0 } else { 2.0 };
                    }
                    s * hs * stride as f64 / 3.0
                };
                let fine = simpson(1);
                let coarse = simpson(2);
                let rich = fine + (fine - coarse) / 15.0;
                gap = gap.max((rich - fine).abs());
                x[i] += rich;
            }
            t_now = t;
        }
        traj.position.push(x);
    }
    let scale = traj.max_abs().max(f64::MIN_POSITIVE);
    let rel_gap = gap / scale;
    let warning = (rel_gap > 1e-8).then(|| format!("step size too coarse: Richardson gap {rel_gap:.2e}"));
    Ok(OracleReport {
        trajectory: traj,
        steps_per_period,
        total_steps: total,
        max_norm_defect: defect,
        richardson_gap: rel_gap,
        warning,
    })
}
