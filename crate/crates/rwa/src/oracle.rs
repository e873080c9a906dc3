//! Dense propagator check of the 1+1D sideband coupling.
//!
//! The interaction-picture Hamiltonian is rebuilt as a matrix from the same
//! rotating monomials the engine integrates, propagated over one common
//! period with a fourth-order Magnus step, raised to the number of periods
//! in half a sideband period (one full |0⟩ → |1⟩ transfer), and compared
//! on the bus vacuum with exp(−i H_eff t).

use crate::algebra::{DriveId, FreqTable, InteractionTerm, Ladder, Mode, Word};
use crate::effective::run_stage;
use crate::integrate::{EffectiveCoupling, IntegrationSettings};
use crate::interactions::{build_interactions, Drive, EngineInputs, ModeParams, QubitCouplings, Stage};
use crate::RwaError;
use jjdirac_core::config::DenominatorMode;
use jjdirac_core::linalg::{commutator, dagger, expm, hermiticity_defect, identity, CMat, C64, I, ZERO};
use jjdirac_core::units::to_angular;
use serde::Serialize;
use std::f64::consts::FRAC_PI_2;

/// Truncated space: optional qubits, then bosonic modes with Fock sizes.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedSpace {
    pub qubit1: bool,
    pub qubit2: bool,
    pub modes: Vec<(Mode, usize)>,
}

impl TruncatedSpace {
    pub fn dims(&self) -> Vec<usize> {
        let mut d = Vec::new();
        if self.qubit1 {
            d.push(2);
        }
        if self.qubit2 {
            d.push(2);
        }
        d.extend(self.modes.iter().map(|&(_, n)| n));
        d
    }

    pub fn dim(&self) -> usize {
        self.dims().iter().product()
    }

    fn ladder(n: usize, l: Ladder) -> CMat {
        let mut m = CMat::zeros(n, n);
        for k in 1..n {
            let v = C64::new((k as f64).sqrt(), 0.0);
            match l {
                Ladder::Annihilate => m[(k - 1, k)] = v,
                Ladder::Create => m[(k, k - 1)] = v,
            }
        }
        m
    }

    /// Matrix of a word; letters of modes outside the space are an error.
    pub fn word_matrix(&self, w: &Word) -> Result<CMat, RwaError> {
        let unit = |u: Option<crate::algebra::Unit>| {
            let mut m = CMat::zeros(2, 2);
            match u {
                None => m = identity(2),
                Some(u) => m[(u.row as usize, u.col as usize)] = C64::new(1.0, 0.0),
            }
            m
        };
        let mut factors = Vec::new();
        if self.qubit1 {
            factors.push(unit(w.q1));
        } else if w.q1.is_some() {
            return Err(RwaError::MissingQubit(1));
        }
        if self.qubit2 {
            factors.push(unit(w.q2));
        } else if w.q2.is_some() {
            return Err(RwaError::MissingQubit(2));
        }
        for &(mode, n) in &self.modes {
            let mut m = identity(n);
            for &(wm, l) in &w.bosons {
                if wm == mode {
                    m *= Self::ladder(n, l);
                }
            }
            factors.push(m);
        }
        if let Some(&(m, _)) = w.bosons.iter().find(|(m, _)| !self.modes.iter().any(|(mm, _)| mm == m)) {
            return Err(RwaError::MissingMode(m.name().into()));
        }
        Ok(factors
            .iter()
            .skip(1)
            .fold(factors[0].clone(), |acc, f| acc.kronecker(f)))
    }
}

/// H(t) = Σ_f C_f e^{i2πft}, grouped by distinct frequency (GHz).
#[derive(Debug, Clone)]
pub struct Fourier {
    pub components: Vec<(f64, CMat)>,
}

impl Fourier {
    pub fn from_terms(terms: &[InteractionTerm], space: &TruncatedSpace, table: &FreqTable) -> Result<Self, RwaError> {
        let mut components: Vec<(f64, CMat)> = Vec::new();
        for t in terms {
            for m in &t.monomials {
                let f = m.frequency.value(table);
                let mat = space.word_matrix(&m.word)? * m.amplitude;
                match components.iter_mut().find(|(g, _)| (g - f).abs() < 1e-12) {
                    Some((_, c)) => *c += mat,
                    None => components.push((f, mat)),
                }
            }
        }
        Ok(Self { components })
    }

    pub fn at(&self, t: f64) -> CMat {
        let n = self.components[0].1.nrows();
        let mut h = CMat::zeros(n, n);
        for (f, c) in &self.components {
            h += c * C64::from_polar(1.0, to_angular(*f) * t);
        }
        h
    }
}

/// U(t0 + h, t0) by one two-point Gauss Magnus step; H in GHz, t in ns.
pub fn magnus4_step(h_of: &Fourier, t0: f64, h: f64) -> CMat {
    let s = 3f64.sqrt() / 6.0;
    let a1 = h_of.at(t0 + h * (0.5 - s)) * (-I * to_angular(1.0));
    let a2 = h_of.at(t0 + h * (0.5 + s)) * (-I * to_angular(1.0));
    let omega = (&a1 + &a2) * C64::new(0.5 * h, 0.0) + commutator(&a2, &a1) * C64::new(3f64.sqrt() / 12.0 * h * h, 0.0);
    expm(&omega)
}

pub fn propagate(h_of: &Fourier, t0: f64, t1: f64, steps: usize) -> CMat {
    let n = h_of.components[0].1.nrows();
    let h = (t1 - t0) / steps as f64;
    let mut u = identity(n);
    for k in 0..steps {
        u = magnus4_step(h_of, t0 + k as f64 * h, h) * u;
    }
    u
}

pub fn matrix_power(u: &CMat, mut n: u64) -> CMat {
    let mut result = identity(u.nrows());
    let mut base = u.clone();
    while n > 0 {
        if n & 1 == 1 {
            result = &result * &base;
        }
        base = &base * &base;
        n >>= 1;
    }
    result
}

/// Effective Hamiltonian matrix (GHz) from bus-free couplings (MHz).
pub fn effective_matrix(couplings: &[EffectiveCoupling], space: &TruncatedSpace) -> Result<CMat, RwaError> {
    let n = space.dim();
    let mut h = CMat::zeros(n, n);
    for c in couplings {
        h += space.word_matrix(&c.word)? * (c.coefficient() * 1e-3);
    }
    Ok(h)
}

/// Parameters of the 1+1D check; defaults give ω_X/ω_x = 10.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SidebandSetup {
    pub omega_x_ghz: f64,
    pub lambda_x: f64,
    pub ej_bus_ghz: f64,
    pub ec_bus_ghz: f64,
    pub x2_ghz: f64,
    pub e_l_ghz: f64,
    pub n: f64,
    pub fock: usize,
    pub steps_per_period: usize,
}

impl Default for SidebandSetup {
    fn default() -> Self {
        Self {
            omega_x_ghz: 1.0,
            lambda_x: 0.05,
            ej_bus_ghz: 500.0,
            ec_bus_ghz: 0.025,
            x2_ghz: 100.0,
            e_l_ghz: 0.1,
            n: 0.01,
            fock: 3,
            steps_per_period: 4000,
        }
    }
}

impl SidebandSetup {
    pub fn inputs(&self) -> EngineInputs {
        let lx = self.lambda_x;
        let px = ModeParams {
            lambda: lx,
            omega_ghz: self.omega_x_ghz,
            stiffness_ghz: self.omega_x_ghz / (2.0 * lx * lx),
        };
        EngineInputs {
            dimension: 1,
            qubit1: QubitCouplings {
                big_z: [0.0; 4],
                big_x: [1.0, 0.0, self.x2_ghz, 0.0],
            },
            qubit2: None,
            phase: [Some(px), None, None],
            bus: [Some(ModeParams::from_stiffness(self.ec_bus_ghz, self.ej_bus_ghz)), None, None],
            bus_o: None,
            e_l: [Some(self.e_l_ghz), None, None],
            drives: vec![Drive {
                id: DriveId::new(1, 1),
                amplitude: self.n,
                omega_ghz: self.omega_x_ghz,
                phase: FRAC_PI_2,
            }],
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct PropagatorCheck {
    /// g of g σx i(a − a†), GHz; full transfer |0⟩ → |1⟩ at t = 1/(4g).
    pub omega_ghz: f64,
    pub period_ns: f64,
    pub periods: u64,
    pub steps_per_period: usize,
    pub t_ns: f64,
    pub fidelity: f64,
    /// ‖U_block − U_eff‖ over the bus vacuum.
    pub max_abs_error: f64,
    pub hermiticity_defect: f64,
}

/// Compare dense and effective propagation over half a sideband period.
pub fn sideband_oracle(setup: &SidebandSetup) -> Result<PropagatorCheck, RwaError> {
    let inputs = setup.inputs();
    let settings = IntegrationSettings {
        mode: DenominatorMode::Exact,
        eps_den_ghz: 0.1,
    };
    let stage = run_stage(&inputs, Stage::Momentum1D, &settings, 1e-6)?;
    let terms = build_interactions(&inputs, Stage::Momentum1D)?;
    let full = TruncatedSpace {
        qubit1: true,
        qubit2: false,
        modes: vec![(Mode::Px, setup.fock), (Mode::BX, setup.fock)],
    };
    let reduced = TruncatedSpace {
        qubit1: true,
        qubit2: false,
        modes: vec![(Mode::Px, setup.fock)],
    };
    let h_eff = effective_matrix(&stage.couplings, &reduced)?;
    let omega = stage
        .couplings
        .iter()
        .map(|c| c.coefficient().norm() * 1e-3)
        .fold(0.0, f64::max);
    // all frequencies are integer multiples of the phase-mode frequency
    let period = 1.0 / setup.omega_x_ghz;
    let periods = (1.0 / (4.0 * omega) / period).round().max(1.0) as u64;
    let t = periods as f64 * period;
    let fourier = Fourier::from_terms(&terms, &full, &inputs.freq_table())?;
    // step ≤ 1/(200 f_max)
    let f_max = fourier.components.iter().map(|(f, _)| f.abs()).fold(0.0, f64::max);
    let steps = setup.steps_per_period.max((200.0 * f_max * period).ceil() as usize);
    let u_period = propagate(&fourier, 0.0, period, steps);
    let u = matrix_power(&u_period, periods);
    // block on the bus vacuum
    let nb = setup.fock;
    let d = reduced.dim();
    let block = CMat::from_fn(d, d, |i, j| u[(i * nb, j * nb)]);
    let u_eff = expm(&(h_eff.clone() * (-I * to_angular(t))));
    let overlap = (dagger(&u_eff) * &block).trace();
    // remove the common phase before the elementwise comparison
    let phase = if overlap.norm() > 0.0 { overlap / overlap.norm() } else { ZERO };
    let diff = &block - &u_eff * phase;
    Ok(PropagatorCheck {
        omega_ghz: omega,
        period_ns: period,
        periods,
        steps_per_period: steps,
        t_ns: t,
        fidelity: overlap.norm() / d as f64,
        max_abs_error: diff.iter().map(|z| z.norm()).fold(0.0, f64::max),
        hermiticity_defect: hermiticity_defect(&h_eff),
    })
}
