//! Static flux-qubit Hamiltonian and its operators in the junction-charge
//! basis |k1, k2⟩, |k_i| ≤ n_max.
//!
//! Conventions: e^{iφ_j}|k_j⟩ = |k_j + 1⟩, N_a = k1 − k2, N_s = k1 + k2,
//! φ_a = (φ1 − φ2)/2, φ_s = (φ1 + φ2)/2. Hence
//! cosφ_a cosφ_s = (cosφ1 + cosφ2)/2, e^{2iφ_s} shifts (k1, k2) by (+1, +1)
//! and e^{2iφ_a} by (+1, −1).

use crate::banded::BandedHermitian;
use jjdirac_core::linalg::{CVec, C64};
use jjdirac_core::FluxQubitParams;
use std::f64::consts::PI;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ChargeGrid {
    pub n_max: usize,
}

impl ChargeGrid {
    pub fn new(n_max: usize) -> Self {
        Self { n_max }
    }

    pub fn side(&self) -> usize {
        2 * self.n_max + 1
    }

    pub fn dim(&self) -> usize {
        self.side() * self.side()
    }

    pub fn index(&self, k1: i64, k2: i64) -> Option<usize> {
        let n = self.n_max as i64;
        if k1.abs() > n || k2.abs() > n {
            return None;
        }
        Some(((k1 + n) as usize) * self.side() + (k2 + n) as usize)
    }

    pub fn charges(&self, idx: usize) -> (i64, i64) {
        let n = self.n_max as i64;
        ((idx / self.side()) as i64 - n, (idx % self.side()) as i64 - n)
    }

    /// Band half-width of every operator built here: the (+1, +1) shift.
    pub fn bandwidth(&self) -> usize {
        self.side() + 1
    }

    /// Index of the charge-reflected state |−k1, −k2⟩.
    pub fn reflected(&self, idx: usize) -> usize {
        self.dim() - 1 - idx
    }
}

/// Operator Σ_j c_j S(d1_j, d2_j) + diag(k1, k2), S the charge shift.
#[derive(Debug, Clone, Default)]
pub struct ChargeOperator {
    pub shifts: Vec<(i64, i64, C64)>,
    pub diagonal: Option<fn(&FluxQubitParams, i64, i64) -> f64>,
}

impl ChargeOperator {
    /// Add c·S(d) + c*·S(−d), i.e. a Hermitian pair.
    fn pair(mut self, d1: i64, d2: i64, c: C64) -> Self {
        self.shifts.push((d1, d2, c));
        self.shifts.push((-d1, -d2, c.conj()));
        self
    }

    pub fn apply(&self, params: &FluxQubitParams, grid: &ChargeGrid, v: &CVec) -> CVec {
        let mut out = CVec::zeros(grid.dim());
        for idx in 0..grid.dim() {
            let x = v[idx];
            if x == C64::new(0.0, 0.0) {
                continue;
            }
            let (k1, k2) = grid.charges(idx);
            if let Some(f) = self.diagonal {
                out[idx] += x * f(params, k1, k2);
            }
            for &(d1, d2, c) in &self.shifts {
                if let Some(j) = grid.index(k1 + d1, k2 + d2) {
                    out[j] += c * x;
                }
            }
        }
        out
    }

    pub fn to_banded(&self, params: &FluxQubitParams, grid: &ChargeGrid) -> BandedHermitian {
        let mut h = BandedHermitian::zeros(grid.dim(), grid.bandwidth());
        for idx in 0..grid.dim() {
            let (k1, k2) = grid.charges(idx);
            if let Some(f) = self.diagonal {
                h.add(idx, idx, C64::new(f(params, k1, k2), 0.0));
            }
            for &(d1, d2, c) in &self.shifts {
                if let Some(j) = grid.index(k1 + d1, k2 + d2) {
                    // only the lower triangle; the pair partner fills the rest
                    if j > idx {
                        h.add(j, idx, c);
                    }
                }
            }
        }
        h
    }

    /// ⟨a|O|b⟩.
    pub fn element(&self, params: &FluxQubitParams, grid: &ChargeGrid, a: &CVec, b: &CVec) -> C64 {
        a.dotc(&self.apply(params, grid, b))
    }
}

fn charging(p: &FluxQubitParams, k1: i64, k2: i64) -> f64 {
    let na = (k1 - k2) as f64;
    let ns = (k1 + k2) as f64;
    2.0 * p.e_ca() * na * na + 2.0 * p.e_cs() * ns * ns
}

fn number_a(_: &FluxQubitParams, k1: i64, k2: i64) -> f64 {
    (k1 - k2) as f64
}

fn phase(x: f64) -> C64 {
    C64::from_polar(1.0, x)
}

/// H_q0 = 2E_Ca N_a² + 2E_Cs N_s² − 2E_J cosφ_s cosφ_a
///        − 2αE_J cos(πf2) cos(2φ_s + 2πf3).
pub fn h_q0_operator(p: &FluxQubitParams) -> ChargeOperator {
    let ej = p.ej_ghz;
    let amp = p.alpha * ej * (PI * p.f2).cos();
    let half = C64::new(-0.5 * ej, 0.0);
    ChargeOperator {
        shifts: vec![],
        diagonal: Some(charging),
    }
    .pair(1, 0, half)
    .pair(0, 1, half)
    .pair(1, 1, -amp * phase(2.0 * PI * p.f3()))
}

pub fn build_h_q0(p: &FluxQubitParams, grid: &ChargeGrid) -> BandedHermitian {
    h_q0_operator(p).to_banded(p, grid)
}

/// Rigorous lower bound on the spectrum of H_q0 (charging ≥ 0, potential
/// ≥ −2E_J − 2αE_J|cos πf2|), less 1 GHz.
pub fn spectrum_lower_bound(p: &FluxQubitParams) -> f64 {
    -(2.0 * p.ej_ghz + 2.0 * p.alpha * p.ej_ghz * (PI * p.f2).cos().abs()) - 1.0
}

/// sin_l = sin(2φ_a + 2πf3) = (E − E†)/2i with E = e^{2πif3} S(+1, −1).
pub fn sin_l(p: &FluxQubitParams) -> ChargeOperator {
    ChargeOperator::default().pair(1, -1, phase(2.0 * PI * p.f3()) / C64::new(0.0, 2.0))
}

/// cos_l = cos(2φ_a + 2πf3) = (E + E†)/2.
pub fn cos_l(p: &FluxQubitParams) -> ChargeOperator {
    ChargeOperator::default().pair(1, -1, phase(2.0 * PI * p.f3()) * 0.5)
}

pub fn n_a() -> ChargeOperator {
    ChargeOperator {
        shifts: vec![],
        diagonal: Some(number_a),
    }
}

/// Dimensionless circulating-current operator, the bracket of
/// I_0 = [β/(1+2β)](2π/Φ0)E_J[sinφ1 + sinφ2 − 2(α/β)cos(πf2) sin(φ1 + φ2 + 2πf3)
///        + l sinφ1 cosφ1].
pub fn current_bracket(p: &FluxQubitParams, with_correction: bool) -> ChargeOperator {
    let sin_unit = C64::new(0.0, -0.5); // 1/(2i)
    let mut op = ChargeOperator::default()
        .pair(1, 0, sin_unit)
        .pair(0, 1, sin_unit)
        .pair(
            1,
            1,
            sin_unit * phase(2.0 * PI * p.f3()) * (-2.0 * p.alpha / p.beta * (PI * p.f2).cos()),
        );
    if with_correction {
        // sinφ1 cosφ1 = sin(2φ1)/2
        op = op.pair(2, 0, sin_unit * (0.5 * p.lambda_r));
    }
    op
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_indexing() {
        let g = ChargeGrid::new(3);
        for idx in 0..g.dim() {
            let (k1, k2) = g.charges(idx);
            assert_eq!(g.index(k1, k2), Some(idx));
            assert_eq!(g.charges(g.reflected(idx)), (-k1, -k2));
        }
        assert_eq!(g.index(4, 0), None);
    }

    #[test]
    fn hermitian_by_construction() {
        let p = jjdirac_core::config::default_qubit(1).with_f1(0.31);
        let g = ChargeGrid::new(4);
        let h = build_h_q0(&p, &g).to_dense();
        assert_eq!(jjdirac_core::linalg::hermiticity_defect(&h), 0.0);
    }

    #[test]
    fn single_junction_cosine() {
        // E_J cos φ1 alone: ⟨k+1|cos φ1|k⟩ = 1/2
        let p = jjdirac_core::config::default_qubit(1);
        let g = ChargeGrid::new(2);
        let op = ChargeOperator::default().pair(1, 0, C64::new(0.5, 0.0));
        let a = CVec::from_fn(g.dim(), |i, _| if i == g.index(1, 0).unwrap() { C64::new(1.0, 0.0) } else { C64::new(0.0, 0.0) });
        let b = CVec::from_fn(g.dim(), |i, _| if i == g.index(0, 0).unwrap() { C64::new(1.0, 0.0) } else { C64::new(0.0, 0.0) });
        assert_eq!(op.element(&p, &g, &a, &b), C64::new(0.5, 0.0));
        // sin φ1 = (S − S†)/2i: ⟨1|sin|0⟩ = −i/2
        let s = ChargeOperator::default().pair(1, 0, C64::new(0.0, -0.5));
        assert_eq!(s.element(&p, &g, &a, &b), C64::new(0.0, -0.5));
    }
}
