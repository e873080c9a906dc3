//! Zitterbewegung of the mapped Dirac Hamiltonian.
//!
//! Positions are in units of c·µs: ⟨x(t)⟩/c with r(0) = 0. Multiply by
//! c_p = 4πΩ̃_p (zero-point lengths per µs) to get Δ_p units. H is in MHz
//! (E/h); the 2π enters once when building the propagator.

use jjdirac_core::linalg::{c, eigh, CMat, CVec, C64};
use jjdirac_core::units::to_angular;
use jjdirac_diracmap::{alpha, assemble_standard};
use serde::Serialize;
use thiserror::Error;

pub mod oracle;
pub mod tremor;
pub mod wavepacket;

pub use oracle::{zb_oracle, OracleReport};
pub use tremor::{analyze_tremor, TremorFit};
pub use wavepacket::{momentum_samples, quantile_samples, wavepacket_average, MomentumSample};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DynamicsError {
    #[error("H is singular (|E|min = {min_abs:e} MHz); use the oracle path")]
    SingularHamiltonian { min_abs: f64 },
    #[error("spinor has length {got}, expected {want}")]
    SpinorLength { got: usize, want: usize },
    #[error("spinor has zero norm")]
    ZeroSpinor,
    #[error("invalid time grid: {0}")]
    Times(String),
    #[error("trajectory covers {periods:.2} tremor periods, need at least 5")]
    InsufficientPeriods { periods: f64 },
    #[error("steps per period must be at least 64, got {0}")]
    TooFewSteps(usize),
}

pub type Result<T> = std::result::Result<T, DynamicsError>;

/// Normalized spinor in the {|10⟩,|11⟩}⊗{|20⟩,|21⟩} basis (or 2-component).
#[derive(Debug, Clone, PartialEq)]
pub struct SpinorState(CVec);

impl SpinorState {
    pub fn new(amplitudes: &[C64]) -> Result<Self> {
        let v = CVec::from_column_slice(amplitudes);
        let n = v.norm();
        if n == 0.0 || !n.is_finite() {
            return Err(DynamicsError::ZeroSpinor);
        }
        Ok(Self(v / c(n, 0.0)))
    }

    pub fn from_real(amplitudes: &[f64]) -> Result<Self> {
        Self::new(&amplitudes.iter().map(|&a| c(a, 0.0)).collect::<Vec<_>>())
    }

    pub fn vector(&self) -> &CVec {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn conjugate(&self) -> Self {
        Self(self.0.map(|z| z.conj()))
    }
}

/// H (MHz) with its velocity operators and momenta.
#[derive(Debug, Clone)]
pub struct DiracSystem {
    pub h: CMat,
    /// α_i for each active axis.
    pub alphas: Vec<CMat>,
    /// cp_i (MHz) for each active axis.
    pub cp: Vec<f64>,
}

impl DiracSystem {
    /// Standard form: 2×2 for `dimension` 1, otherwise 4×4.
    pub fn standard(mc2: f64, cp: [f64; 3], dimension: u8) -> Self {
        let h = assemble_standard(mc2, cp, dimension).matrix;
        let n = match dimension {
            1 => 1,
            2 => 2,
            _ => 3,
        };
        let size = h.nrows();
        Self {
            alphas: (0..n).map(|i| alpha(size, i)).collect(),
            cp: cp[..n].to_vec(),
            h,
        }
    }

    pub fn size(&self) -> usize {
        self.h.nrows()
    }

    pub fn axes(&self) -> usize {
        self.alphas.len()
    }

    fn check(&self, psi: &SpinorState) -> Result<()> {
        if psi.len() != self.size() {
            return Err(DynamicsError::SpinorLength {
                got: psi.len(),
                want: self.size(),
            });
        }
        Ok(())
    }

    /// Largest |E| (MHz).
    pub fn max_energy(&self) -> f64 {
        eigh(&self.h).0.iter().fold(0.0, |m, e| m.max(e.abs()))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Trajectory {
    pub times: Vec<f64>,
    /// ⟨x_i⟩/c (µs); unused axes stay zero.
    pub position: Vec<[f64; 3]>,
    /// Largest |Im⟨x⟩| met while evaluating.
    pub max_imag: f64,
}

impl Trajectory {
    pub fn axis(&self, i: usize) -> Vec<f64> {
        self.position.iter().map(|p| p[i]).collect()
    }

    pub fn max_abs(&self) -> f64 {
        self.position.iter().flatten().fold(0.0, |m, x| m.max(x.abs()))
    }

    /// max |a − b| / max(‖a‖∞, ‖b‖∞).
    pub fn relative_distance(&self, other: &Trajectory) -> f64 {
        let d = self
            .position
            .iter()
            .zip(&other.position)
            .flat_map(|(a, b)| (0..3).map(move |i| (a[i] - b[i]).abs()))
            .fold(0.0, f64::max);
        let s = self.max_abs().max(other.max_abs());
        if s == 0.0 {
            d
        } else {
            d / s
        }
    }
}

pub(crate) fn validate_times(times: &[f64]) -> Result<()> {
    if times.iter().any(|t| !t.is_finite()) {
        return Err(DynamicsError::Times("non-finite time".into()));
    }
    Ok(())
}

/// Closed form: ⟨x_i(t)⟩/c = ⟨cp_i H⁻¹⟩ t + ⟨(e^{2iHt} − 1)(2iH)⁻¹ (α_i − cp_i H⁻¹)⟩.
pub fn zb_closed_form(sys: &DiracSystem, psi: &SpinorState, times: &[f64]) -> Result<Trajectory> {
    sys.check(psi)?;
    validate_times(times)?;
    let (vals, v) = eigh(&sys.h);
    let scale = vals.iter().fold(0.0, |m: f64, e| m.max(e.abs()));
    let min_abs = vals.iter().fold(f64::INFINITY, |m: f64, e| m.min(e.abs()));
    if min_abs <= 1e-12 * scale || scale == 0.0 {
        return Err(DynamicsError::SingularHamiltonian { min_abs });
    }
    let n = vals.len();
    let phi = v.adjoint() * psi.vector();
    let inv = CMat::from_diagonal(&CVec::from_iterator(n, vals.iter().map(|&e| c(1.0 / e, 0.0))));
    let ang: Vec<f64> = vals.iter().map(|&e| to_angular(e)).collect();
    // per axis: drift coefficient and η in the eigenbasis applied to φ
    let mut drift = Vec::new();
    let mut eta_phi = Vec::new();
    for (a, &p) in sys.alphas.iter().zip(&sys.cp) {
        let a_e = v.adjoint() * a * &v;
        let eta = a_e - &inv * c(p, 0.0);
        drift.push((phi.adjoint() * &inv * &phi)[(0, 0)] * p);
        eta_phi.push(eta * &phi);
    }
    let mut out = Trajectory {
        times: times.to_vec(),
        position: Vec::with_capacity(times.len()),
        max_imag: 0.0,
    };
    for &t in times {
        let f: Vec<C64> = ang
            .iter()
            .map(|&e| (C64::from_polar(1.0, 2.0 * e * t) - 1.0) / c(0.0, 2.0 * e))
            .collect();
        let mut pos = [0.0; 3];
        for i in 0..sys.axes() {
            let mut z = drift[i] * t;
            for k in 0..n {
                z += phi[k].conj() * f[k] * eta_phi[i][k];
            }
            out.max_imag = out.max_imag.max(z.im.abs());
            pos[i] = z.re;
        }
        out.position.push(pos);
    }
    Ok(out)
}

/// ⟨cp_i H⁻¹⟩ in units of c: the drift velocity of Eq.-(7)'s linear term.
pub fn drift_velocity(sys: &DiracSystem, psi: &SpinorState) -> Result<Vec<f64>> {
    sys.check(psi)?;
    let (vals, v) = eigh(&sys.h);
    let phi = v.adjoint() * psi.vector();
    if vals.iter().any(|e| e.abs() == 0.0) {
        return Err(DynamicsError::SingularHamiltonian { min_abs: 0.0 });
    }
    let w: f64 = vals.iter().zip(phi.iter()).map(|(e, z)| z.norm_sqr() / e).sum();
    Ok(sys.cp.iter().map(|p| p * w).collect())
}

/// Uniform grid 0..t_max with `steps` points.
pub fn time_grid(t_max: f64, steps: usize) -> Vec<f64> {
    let n = steps.max(2);
    (0..n).map(|k| t_max * k as f64 / (n - 1) as f64).collect()
}
