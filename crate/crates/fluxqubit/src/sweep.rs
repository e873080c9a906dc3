//! Bias sweeps of the flux-qubit spectrum, parallel over bias points.

use crate::lanczos::EigenError;
use crate::solution::{solve_spectrum, LEVELS};
use crate::hamiltonian::ChargeGrid;
use jjdirac_core::FluxQubitParams;
use rayon::prelude::*;

pub const SPECTRUM_HEADER: &str =
    "f1,E0,E1,E2,E3,gap,z0,x0,z1,x1,z2,x2,z3,x3,I_gg,I_ee";

#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumRow {
    pub f1: f64,
    pub energies: [f64; LEVELS],
    pub gap: f64,
    pub z: [f64; 4],
    pub x: [f64; 4],
    pub i_gg: f64,
    pub i_ee: f64,
}

impl SpectrumRow {
    pub fn values(&self) -> Vec<f64> {
        let mut v = vec![self.f1];
        v.extend(self.energies);
        v.push(self.gap);
        for i in 0..4 {
            v.push(self.z[i]);
            v.push(self.x[i]);
        }
        v.push(self.i_gg);
        v.push(self.i_ee);
        v
    }
}

pub fn spectrum_point(
    params: &FluxQubitParams,
    f1: f64,
    n_max: usize,
    current_correction: bool,
) -> Result<SpectrumRow, EigenError> {
    let p = params.with_f1(f1);
    let sol = solve_spectrum(&p, ChargeGrid::new(n_max))?;
    let m = sol.matrix_elements();
    let cur = sol.circulating_current(current_correction);
    Ok(SpectrumRow {
        f1,
        energies: std::array::from_fn(|i| sol.energies[i]),
        gap: sol.gap(),
        z: m.z,
        x: m.x,
        i_gg: cur.i_gg,
        i_ee: cur.i_ee,
    })
}

/// Evenly spaced grid of `n` points over [start, stop].
pub fn linspace(start: f64, stop: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![start];
    }
    (0..n)
        .map(|i| start + (stop - start) * i as f64 / (n - 1) as f64)
        .collect()
}

pub fn spectrum_sweep(
    params: &FluxQubitParams,
    f1_values: &[f64],
    n_max: usize,
    current_correction: bool,
) -> Result<Vec<SpectrumRow>, EigenError> {
    f1_values
        .par_iter()
        .map(|&f1| spectrum_point(params, f1, n_max, current_correction))
        .collect()
}

/// Finite-difference ∂(E1 − E0)/∂f1 in GHz per Φ0 (central, step h).
pub fn gap_slope(params: &FluxQubitParams, n_max: usize, h: f64) -> Result<f64, EigenError> {
    let grid = ChargeGrid::new(n_max);
    let up = solve_spectrum(&params.with_f1(params.f1 + h), grid)?.gap();
    let dn = solve_spectrum(&params.with_f1(params.f1 - h), grid)?.gap();
    Ok((up - dn) / (2.0 * h))
}
