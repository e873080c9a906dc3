//! Two-level reduction of the flux qubit: eigenpairs, matrix elements,
//! rotated couplings and circulating currents.

use crate::hamiltonian::{
    build_h_q0, cos_l, current_bracket, h_q0_operator, n_a, sin_l, spectrum_lower_bound,
    ChargeGrid,
};
use crate::lanczos::{lowest_eigenpairs, EigenError};
use jjdirac_core::linalg::{CVec, C64};
use jjdirac_core::units::current_scale_na;
use jjdirac_core::FluxQubitParams;
use std::f64::consts::PI;

/// Number of eigenpairs kept.
pub const LEVELS: usize = 4;

#[derive(Debug, Clone)]
pub struct FluxQubitSolution {
    pub params: FluxQubitParams,
    pub grid: ChargeGrid,
    /// Lowest eigenvalues, GHz, ascending.
    pub energies: Vec<f64>,
    pub ground: CVec,
    pub excited: CVec,
    pub residual: f64,
}

/// Charge reflection k → −k composed with complex conjugation commutes
/// with every operator here. Rotate `v` onto its invariant line
/// (v(−k) = v(k)*), then fix the sign by the largest real component.
pub fn fix_reflection_gauge(grid: &ChargeGrid, v: &mut CVec) {
    let s: C64 = (0..grid.dim()).map(|i| v[i] * v[grid.reflected(i)]).sum();
    if s.norm() > 1e-12 {
        let rot = C64::from_polar(1.0, -0.5 * s.arg());
        v.iter_mut().for_each(|z| *z *= rot);
    }
    let mut best = 0;
    let mut mag = -1.0;
    for (i, z) in v.iter().enumerate() {
        if z.re.abs() > mag * (1.0 + 1e-10) {
            mag = z.re.abs();
            best = i;
        }
    }
    if v[best].re < 0.0 {
        v.iter_mut().for_each(|z| *z = -*z);
    }
}

pub fn solve_spectrum(
    params: &FluxQubitParams,
    grid: ChargeGrid,
) -> Result<FluxQubitSolution, EigenError> {
    let h = build_h_q0(params, &grid);
    let pairs = lowest_eigenpairs(&h, LEVELS, spectrum_lower_bound(params))?;
    let mut vecs = pairs.vectors;
    for v in vecs.iter_mut() {
        fix_reflection_gauge(&grid, v);
    }
    // Rayleigh quotients through the same operator path as z0, so that the
    // reported gap and the Pauli decomposition share rounding.
    let op = h_q0_operator(params);
    let energies = vecs
        .iter()
        .map(|v| op.element(params, &grid, v, v).re)
        .collect();
    Ok(FluxQubitSolution {
        params: params.clone(),
        grid,
        energies,
        ground: vecs[0].clone(),
        excited: vecs[1].clone(),
        residual: pairs.residual,
    })
}

/// z_i = (⟨e|O_i|e⟩ − ⟨g|O_i|g⟩)/2 and x_i = ⟨e|O_i|g⟩ for
/// O_0 = H_q0, O_1 = sin_l, O_2 = cos_l, O_3 = N_a.
///
/// In the reflection gauge x_0..x_2 are real and x_3 is purely imaginary;
/// `x[3]` holds Im⟨e|N_a|g⟩ and `x_complex` the raw values.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MatrixElements {
    pub z: [f64; 4],
    pub x: [f64; 4],
    pub x_complex: [C64; 4],
}

impl FluxQubitSolution {
    pub fn gap(&self) -> f64 {
        self.energies[1] - self.energies[0]
    }

    pub fn matrix_elements(&self) -> MatrixElements {
        let p = &self.params;
        let ops = [h_q0_operator(p), sin_l(p), cos_l(p), n_a()];
        let mut z = [0.0; 4];
        let mut x = [0.0; 4];
        let mut xc = [C64::new(0.0, 0.0); 4];
        for (i, op) in ops.iter().enumerate() {
            let ee = op.element(p, &self.grid, &self.excited, &self.excited).re;
            let gg = op.element(p, &self.grid, &self.ground, &self.ground).re;
            z[i] = 0.5 * (ee - gg);
            xc[i] = op.element(p, &self.grid, &self.excited, &self.ground);
            x[i] = if i == 3 { xc[i].im } else { xc[i].re };
        }
        MatrixElements {
            z,
            x,
            x_complex: xc,
        }
    }

    /// ⟨g|I|g⟩, ⟨e|I|e⟩, ⟨g|I|e⟩ in nA.
    pub fn circulating_current(&self, with_correction: bool) -> CirculatingCurrent {
        let p = &self.params;
        let scale = current_scale_na(p.ej_ghz) * p.beta / (1.0 + 2.0 * p.beta);
        let op = current_bracket(p, with_correction);
        let gg = op.element(p, &self.grid, &self.ground, &self.ground).re * scale;
        let ee = op.element(p, &self.grid, &self.excited, &self.excited).re * scale;
        let ge = op.element(p, &self.grid, &self.ground, &self.excited) * scale;
        CirculatingCurrent {
            i_gg: gg,
            i_ee: ee,
            i_ge: ge.norm(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CirculatingCurrent {
    pub i_gg: f64,
    pub i_ee: f64,
    /// |⟨g|I|e⟩|.
    pub i_ge: f64,
}

/// θ_l, rotated elements zr_i/xr_i and couplings Z_i = m zr_i, X_i = m xr_i
/// (m = μ_l for i = 1, 2; ν_l for i = 3; 1 for i = 0, so that X_0, Z_0 stay
/// the GHz half-splittings).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RotatedCouplings {
    pub theta: f64,
    pub zr: [f64; 4],
    pub xr: [f64; 4],
    pub mu: f64,
    pub nu: f64,
    pub big_z: [f64; 4],
    pub big_x: [f64; 4],
}

pub fn rotated_couplings(m: &MatrixElements, params: &FluxQubitParams, l: u8) -> RotatedCouplings {
    let (z0, x0) = (m.z[0], m.x[0]);
    let theta = (z0 / (z0 * z0 + x0 * x0).sqrt()).clamp(-1.0, 1.0).acos();
    let (s, c) = theta.sin_cos();
    let mut zr = [0.0; 4];
    let mut xr = [0.0; 4];
    for i in 0..4 {
        let (z, x) = (m.z[i], m.x[i]);
        if l == 1 {
            zr[i] = x * c - z * s;
            xr[i] = x * s + z * c;
        } else {
            zr[i] = z * c + x * s;
            xr[i] = z * s - x * c;
        }
    }
    let mu = 2.0 * params.alpha * params.ej_ghz * (PI * params.f1).cos();
    let nu = 2.0 * params.beta / (1.0 + 4.0 * params.beta);
    let factor = |i: usize| match i {
        0 => 1.0,
        3 => nu,
        _ => mu,
    };
    let big_z = std::array::from_fn(|i| factor(i) * zr[i]);
    let big_x = std::array::from_fn(|i| factor(i) * xr[i]);
    RotatedCouplings {
        theta,
        zr,
        xr,
        mu,
        nu,
        big_z,
        big_x,
    }
}

/// Everything downstream needs from one flux qubit.
#[derive(Debug, Clone)]
pub struct QubitSummary {
    pub l: u8,
    pub energies: Vec<f64>,
    pub elements: MatrixElements,
    pub couplings: RotatedCouplings,
    pub current: CirculatingCurrent,
}

impl QubitSummary {
    /// Qubit splitting 2X_0 (l = 1) or 2Z_0 (l = 2), GHz.
    pub fn splitting(&self) -> f64 {
        if self.l == 1 {
            2.0 * self.couplings.big_x[0]
        } else {
            2.0 * self.couplings.big_z[0]
        }
    }
}

pub fn summarize(
    params: &FluxQubitParams,
    l: u8,
    n_max: usize,
    current_correction: bool,
) -> Result<QubitSummary, EigenError> {
    let sol = solve_spectrum(params, ChargeGrid::new(n_max))?;
    let elements = sol.matrix_elements();
    Ok(QubitSummary {
        l,
        energies: sol.energies.clone(),
        couplings: rotated_couplings(&elements, params, l),
        current: sol.circulating_current(current_correction),
        elements,
    })
}
