//! Circuit-level parameter containers.
//!
//! Energies are GHz (E/h), inductances pH, fluxes in units of Φ0.
//! Derived quantities are methods, never stored fields.

use crate::units::{inductive_energy_ghz, josephson_inductance_ph};
use serde::{Deserialize, Serialize};

/// Spatial axis of the simulated Dirac particle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    pub const ALL: [Axis; 3] = [Axis::X, Axis::Y, Axis::Z];

    pub fn index(self) -> usize {
        match self {
            Axis::X => 0,
            Axis::Y => 1,
            Axis::Z => 2,
        }
    }

    pub fn lower(self) -> &'static str {
        match self {
            Axis::X => "x",
            Axis::Y => "y",
            Axis::Z => "z",
        }
    }

    pub fn upper(self) -> &'static str {
        match self {
            Axis::X => "X",
            Axis::Y => "Y",
            Axis::Z => "Z",
        }
    }

    /// Axes present in a simulation of the given spatial dimension.
    pub fn for_dimension(dim: u8) -> &'static [Axis] {
        match dim {
            1 => &Axis::ALL[..1],
            2 => &Axis::ALL[..2],
            _ => &Axis::ALL[..],
        }
    }
}

/// Weak flux drive Φ_i = n cos(ω t + φ) on one of the three drive lines
/// of a flux qubit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DrivePulse {
    /// Drive line i ∈ {1, 2, 3}.
    pub target: u8,
    /// Amplitude n_i in units of Φ0.
    pub amplitude: f64,
    /// Frequency in GHz.
    pub omega_ghz: f64,
    /// Phase in rad.
    pub phase: f64,
}

/// Four-junction flux qubit with a capacitively shunted SQUID.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FluxQubitParams {
    pub ej_ghz: f64,
    pub ej_over_ec: f64,
    pub alpha: f64,
    pub beta: f64,
    pub f1: f64,
    pub f2: f64,
    pub lg_ph: f64,
    /// Λ = L_r / L_J.
    pub lambda_r: f64,
    /// Explicit drives; when empty the resonance helper generates them.
    #[serde(default, skip_serializing_if = "Vec::is_empty", rename = "pulse")]
    pub drives: Vec<DrivePulse>,
}

impl FluxQubitParams {
    pub fn ec_ghz(&self) -> f64 {
        self.ej_ghz / self.ej_over_ec
    }

    /// f3 = f1 + f2/2.
    pub fn f3(&self) -> f64 {
        self.f1 + 0.5 * self.f2
    }

    pub fn e_ca(&self) -> f64 {
        self.ec_ghz()
    }

    pub fn e_cs(&self) -> f64 {
        self.ec_ghz() / (1.0 + 4.0 * self.beta)
    }

    /// Josephson inductance of one large junction, pH.
    pub fn l_j_ph(&self) -> f64 {
        josephson_inductance_ph(self.ej_ghz)
    }

    pub fn with_f1(&self, f1: f64) -> Self {
        Self { f1, ..self.clone() }
    }
}

/// Current-biased phase qubit in a loop with geometric inductance L_p and
/// a shared junction.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PhaseQubitParams {
    pub ej_ghz: f64,
    pub ej_over_ec: f64,
    /// sin φ_p0 = I_pb / I_p0.
    pub bias: f64,
    pub lp_ph: f64,
}

impl PhaseQubitParams {
    pub fn ec_ghz(&self) -> f64 {
        self.ej_ghz / self.ej_over_ec
    }

    pub fn phi0(&self) -> f64 {
        self.bias.asin()
    }

    /// E_Lp = (Φ0/2π)²/L_p.
    pub fn e_lp_ghz(&self) -> f64 {
        inductive_energy_ghz(self.lp_ph)
    }

    /// L_rp = L_p + L_JP for the shared junction closing the loop.
    pub fn l_rp_ph(&self, bus: &SharedJunctionParams) -> f64 {
        self.lp_ph + bus.l_j_ph()
    }

    /// E_rp = (Φ0/2π)²/L_rp.
    pub fn e_rp_ghz(&self, bus: &SharedJunctionParams) -> f64 {
        inductive_energy_ghz(self.l_rp_ph(bus))
    }
}

/// Large shared junction acting as a bus mode (P = X, Y, Z or O).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SharedJunctionParams {
    pub ej_ghz: f64,
    pub ec_ghz: f64,
    /// I_Pb / I_P0.
    #[serde(default)]
    pub bias: f64,
}

impl SharedJunctionParams {
    pub fn l_j_ph(&self) -> f64 {
        josephson_inductance_ph(self.ej_ghz)
    }

    pub fn gamma0(&self) -> f64 {
        self.bias.asin()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MomentumKind {
    Point,
    Gaussian,
}

/// Momentum distribution of the simulated wavepacket along each axis.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MomentumSpec {
    pub kind: MomentumKind,
    /// Relative width: σ = width_fraction · |mean cp|.
    pub width_fraction: f64,
    pub samples: usize,
}

impl Default for MomentumSpec {
    fn default() -> Self {
        Self {
            kind: MomentumKind::Gaussian,
            width_fraction: 0.2,
            samples: 41,
        }
    }
}

/// Noise environment for the decoherence budget.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NoiseConfig {
    /// Re Z(ω) of the charge-bias line, Ω (flat).
    pub re_z_ohm: f64,
    /// Re Y(ω) of the flux-bias line, S (flat).
    pub re_y_siemens: f64,
    /// Mutual inductance to the flux-bias line, pH.
    pub m_ph: f64,
    /// Gate capacitance ratio C_g / C.
    pub cg_over_c: f64,
    /// 1/f flux-noise amplitude α (Φ0², dimensionless).
    pub alpha_flux: f64,
    /// Upper and lower cut-offs of the 1/f band, GHz.
    pub omega_t_ghz: f64,
    pub omega_c_ghz: f64,
    /// Use |⟨0|I|1⟩| in the flux channel of Γ1 (otherwise the diagonal
    /// difference (⟨1|I|1⟩ − ⟨0|I|0⟩)/2).
    pub offdiagonal_current: bool,
}

impl Default for NoiseConfig {
    fn default() -> Self {
        Self {
            re_z_ohm: 50.0,
            re_y_siemens: 1.0 / 50.0,
            m_ph: 5.0,
            cg_over_c: 0.0,
            alpha_flux: 1.0e-12,
            omega_t_ghz: 1.0,
            omega_c_ghz: 1.0e-9,
            offdiagonal_current: true,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f3_is_derived() {
        let p = FluxQubitParams {
            ej_ghz: 300.0,
            ej_over_ec: 30.0,
            alpha: 0.6,
            beta: 6.0,
            f1: 0.3,
            f2: 0.2,
            lg_ph: 33.0,
            lambda_r: 0.17,
            drives: vec![],
        };
        assert_eq!(p.f3(), 0.4);
        assert_eq!(p.with_f1(0.1).f3(), 0.2);
        assert!((p.e_cs() - 10.0 / 25.0).abs() < 1e-15);
    }
}
