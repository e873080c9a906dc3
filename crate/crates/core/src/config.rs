//! Configuration document (TOML) loading, defaults and validation.
//!
//! Only the sections required by the chosen dimension may appear; missing
//! ones are filled with the reference operating point. Every numeric field
//! inside a section is optional and defaults independently.

use crate::params::{
    Axis, DrivePulse, FluxQubitParams, MomentumSpec, NoiseConfig, PhaseQubitParams,
    SharedJunctionParams,
};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ConfigError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid {field}: {message}")]
    Invalid { field: String, message: String },
}

impl ConfigError {
    fn invalid(field: impl Into<String>, message: impl Into<String>) -> Self {
        ConfigError::Invalid {
            field: field.into(),
            message: message.into(),
        }
    }
}

pub const DELTA_F: f64 = 0.015;
/// Symmetric point f3 = 1/2 of the default f2.
pub const SYMMETRIC_F1: f64 = 1.0 / 3.0 + DELTA_F / 2.0;
/// Default bias of both qubits, off the symmetric point so that the
/// odd-parity elements (z1, x1) do not vanish.
pub const OPERATING_F1: f64 = 0.3555;

/// Drive amplitudes (units of Φ0) of the resonance-generated pulses.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DriveAmplitudes {
    /// Mass drive n_m on qubit 1, line 3.
    pub nm: f64,
    pub nx: f64,
    pub ny: f64,
    pub nz: f64,
}

impl Default for DriveAmplitudes {
    fn default() -> Self {
        Self {
            nm: 0.02,
            nx: 0.01,
            ny: 0.01,
            nz: 0.01,
        }
    }
}

impl DriveAmplitudes {
    pub fn for_axis(&self, axis: Axis) -> f64 {
        match axis {
            Axis::X => self.nx,
            Axis::Y => self.ny,
            Axis::Z => self.nz,
        }
    }
}

/// Dirac parameters for stand-alone dynamics runs (MHz).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiracTargets {
    pub mc2_mhz: f64,
    pub cpx_mhz: f64,
    pub cpy_mhz: f64,
    pub cpz_mhz: f64,
    pub cp0_mhz: f64,
    /// Initial spinor in the {|10>,|11>}⊗{|20>,|21>} basis (real parts).
    pub spinor: Vec<f64>,
}

impl Default for DiracTargets {
    fn default() -> Self {
        Self {
            mc2_mhz: 5.0,
            cpx_mhz: 0.1,
            cpy_mhz: 0.1,
            cpz_mhz: 0.1,
            cp0_mhz: 0.0,
            spinor: vec![1.0, 0.0, 0.0, 0.0],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TimeGrid {
    pub t_max_us: f64,
    pub steps: usize,
}

impl Default for TimeGrid {
    fn default() -> Self {
        Self {
            t_max_us: 5.0,
            steps: 2001,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DenominatorMode {
    /// Exact partial-frequency sums.
    Exact,
    /// Partial sums collapsed to their fastest tier, leading order only.
    Hierarchy,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BusModel {
    /// λ_P = (2E_CP/E_JP)^{1/4}, ω_P = (8E_JP E_CP)^{1/2}.
    Approximate,
    /// Keep E_JP cos γ_P0 + E_Lp inside both forms.
    Inductive,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Numerics {
    /// Junction-charge truncation |k1|, |k2| ≤ n_max.
    pub n_max: usize,
    pub secular_mhz: f64,
    pub eps_den_ghz: f64,
    pub denominators: DenominatorMode,
    pub bus_model: BusModel,
    /// Include the l·sinφ1 cosφ1 term in the circulating current.
    pub current_correction: bool,
}

impl Default for Numerics {
    fn default() -> Self {
        Self {
            n_max: 16,
            secular_mhz: 1.0,
            eps_den_ghz: 0.1,
            denominators: DenominatorMode::Exact,
            bus_model: BusModel::Approximate,
            current_correction: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimulationConfig {
    pub dimension: u8,
    pub qubit1: Option<FluxQubitParams>,
    pub qubit2: Option<FluxQubitParams>,
    pub phase_x: Option<PhaseQubitParams>,
    pub phase_y: Option<PhaseQubitParams>,
    pub phase_z: Option<PhaseQubitParams>,
    pub bus_x: Option<SharedJunctionParams>,
    pub bus_y: Option<SharedJunctionParams>,
    pub bus_z: Option<SharedJunctionParams>,
    pub bus_o: Option<SharedJunctionParams>,
    pub drive: DriveAmplitudes,
    pub dirac: DiracTargets,
    pub time: TimeGrid,
    pub wavepacket: MomentumSpec,
    pub noise: NoiseConfig,
    pub numerics: Numerics,
}

// Raw document: every field optional so partial sections merge onto defaults.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDoc {
    dimension: Option<u8>,
    qubit1: Option<toml::Table>,
    qubit2: Option<toml::Table>,
    phase_x: Option<toml::Table>,
    phase_y: Option<toml::Table>,
    phase_z: Option<toml::Table>,
    bus_x: Option<toml::Table>,
    bus_y: Option<toml::Table>,
    bus_z: Option<toml::Table>,
    bus_o: Option<toml::Table>,
    drive: Option<toml::Table>,
    dirac: Option<toml::Table>,
    time: Option<toml::Table>,
    wavepacket: Option<toml::Table>,
    noise: Option<toml::Table>,
    numerics: Option<toml::Table>,
}

pub fn default_qubit(l: u8) -> FluxQubitParams {
    let (ej, lambda_r) = if l == 1 { (300.0, 0.17) } else { (400.0, 0.23) };
    FluxQubitParams {
        ej_ghz: ej,
        ej_over_ec: 30.0,
        alpha: 0.6,
        beta: 6.0,
        f1: OPERATING_F1,
        f2: 1.0 / 3.0 - DELTA_F,
        lg_ph: 33.0,
        lambda_r,
        drives: vec![],
    }
}

pub fn default_phase(axis: Axis) -> PhaseQubitParams {
    let ej = match axis {
        Axis::X => 850.0,
        Axis::Y => 1100.0,
        Axis::Z => 1350.0,
    };
    PhaseQubitParams {
        ej_ghz: ej,
        ej_over_ec: 1.0e6,
        bias: 0.99,
        lp_ph: 40.0,
    }
}

/// Bus junctions: E_J = 8000 GHz; charging energies chosen so that the
/// plasma frequencies are 150, 165, 180 GHz (X, Y, Z) and 1000 GHz (O).
pub fn default_bus(name: char) -> SharedJunctionParams {
    let ej = 8000.0;
    let omega: f64 = match name {
        'X' => 150.0,
        'Y' => 165.0,
        'Z' => 180.0,
        _ => 1000.0,
    };
    SharedJunctionParams {
        ej_ghz: ej,
        ec_ghz: omega * omega / (8.0 * ej),
        bias: 0.0,
    }
}

/// Sections that must be present for each dimension.
pub fn inventory(dim: u8) -> &'static [&'static str] {
    match dim {
        1 => &["qubit1", "phase_x", "bus_x"],
        2 => &[
            "qubit1", "qubit2", "phase_x", "phase_y", "bus_x", "bus_y", "bus_o",
        ],
        _ => &[
            "qubit1", "qubit2", "phase_x", "phase_y", "phase_z", "bus_x", "bus_y", "bus_z",
            "bus_o",
        ],
    }
}

fn merge<T: Serialize + for<'de> Deserialize<'de>>(
    section: &str,
    default: T,
    table: Option<toml::Table>,
) -> Result<T, ConfigError> {
    let Some(table) = table else {
        return Ok(default);
    };
    let mut base = toml::Table::try_from(&default).map_err(|e| ConfigError::Parse(e.to_string()))?;
    for (k, v) in table {
        base.insert(k, v);
    }
    base.try_into()
        .map_err(|e: toml::de::Error| ConfigError::Parse(format!("[{section}] {}", e.message())))
}

/// Result of loading: the validated config plus the list of sections that
/// were filled entirely from defaults.
#[derive(Debug, Clone)]
pub struct LoadReport {
    pub config: SimulationConfig,
    pub defaulted: Vec<String>,
}

pub fn load_config(document: &str) -> Result<SimulationConfig, ConfigError> {
    load_config_report(document).map(|r| r.config)
}

pub fn load_config_report(document: &str) -> Result<LoadReport, ConfigError> {
    let raw: RawDoc = toml::from_str(document).map_err(|e| ConfigError::Parse(e.message().to_string()))?;
    let dimension = raw.dimension.unwrap_or(3);
    if !(1..=3).contains(&dimension) {
        return Err(ConfigError::invalid("dimension", "must be 1, 2 or 3"));
    }
    let need = inventory(dimension);
    let mut defaulted = Vec::new();

    macro_rules! slot {
        ($name:literal, $field:expr, $default:expr) => {{
            let present = $field.is_some();
            if need.contains(&$name) {
                if !present {
                    defaulted.push($name.to_string());
                }
                Some(merge($name, $default, $field)?)
            } else if present {
                return Err(ConfigError::invalid(
                    $name,
                    format!("section not used in {}+1D", dimension),
                ));
            } else {
                None
            }
        }};
    }

    let qubit1 = slot!("qubit1", raw.qubit1, default_qubit(1));
    let qubit2 = slot!("qubit2", raw.qubit2, default_qubit(2));
    let phase_x = slot!("phase_x", raw.phase_x, default_phase(Axis::X));
    let phase_y = slot!("phase_y", raw.phase_y, default_phase(Axis::Y));
    let phase_z = slot!("phase_z", raw.phase_z, default_phase(Axis::Z));
    let bus_x = slot!("bus_x", raw.bus_x, default_bus('X'));
    let bus_y = slot!("bus_y", raw.bus_y, default_bus('Y'));
    let bus_z = slot!("bus_z", raw.bus_z, default_bus('Z'));
    let bus_o = slot!("bus_o", raw.bus_o, default_bus('O'));

    let config = SimulationConfig {
        dimension,
        qubit1,
        qubit2,
        phase_x,
        phase_y,
        phase_z,
        bus_x,
        bus_y,
        bus_z,
        bus_o,
        drive: merge("drive", DriveAmplitudes::default(), raw.drive)?,
        dirac: merge("dirac", DiracTargets::default(), raw.dirac)?,
        time: merge("time", TimeGrid::default(), raw.time)?,
        wavepacket: merge("wavepacket", MomentumSpec::default(), raw.wavepacket)?,
        noise: merge("noise", NoiseConfig::default(), raw.noise)?,
        numerics: merge("numerics", Numerics::default(), raw.numerics)?,
    };
    config.validate()?;
    Ok(LoadReport { config, defaulted })
}

impl Default for SimulationConfig {
    fn default() -> Self {
        Self::defaults(3)
    }
}

impl SimulationConfig {
    /// Reference operating point for the given dimension.
    pub fn defaults(dimension: u8) -> Self {
        load_config(&format!("dimension = {dimension}\n")).expect("defaults are valid")
    }

    pub fn serialize(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }

    /// SHA-256 of the canonical serialization, hex.
    pub fn checksum(&self) -> String {
        let digest = Sha256::digest(self.serialize().as_bytes());
        digest.iter().map(|b| format!("{b:02x}")).collect()
    }

    pub fn axes(&self) -> &'static [Axis] {
        Axis::for_dimension(self.dimension)
    }

    pub fn qubit(&self, l: u8) -> Option<&FluxQubitParams> {
        if l == 1 {
            self.qubit1.as_ref()
        } else {
            self.qubit2.as_ref()
        }
    }

    pub fn phase(&self, axis: Axis) -> Option<&PhaseQubitParams> {
        match axis {
            Axis::X => self.phase_x.as_ref(),
            Axis::Y => self.phase_y.as_ref(),
            Axis::Z => self.phase_z.as_ref(),
        }
    }

    pub fn bus(&self, axis: Axis) -> Option<&SharedJunctionParams> {
        match axis {
            Axis::X => self.bus_x.as_ref(),
            Axis::Y => self.bus_y.as_ref(),
            Axis::Z => self.bus_z.as_ref(),
        }
    }

    pub fn cp_target(&self, axis: Axis) -> f64 {
        match axis {
            Axis::X => self.dirac.cpx_mhz,
            Axis::Y => self.dirac.cpy_mhz,
            Axis::Z => self.dirac.cpz_mhz,
        }
    }

    /// Apply a single `key=value` override (dotted path, e.g. `qubit1.f1`).
    pub fn with_override(&self, key: &str, value: f64) -> Result<Self, ConfigError> {
        let mut doc: toml::Table =
            toml::from_str(&self.serialize()).map_err(|e| ConfigError::Parse(e.message().to_string()))?;
        let parts: Vec<&str> = key.split('.').collect();
        let (last, path) = parts.split_last().ok_or_else(|| ConfigError::invalid(key, "empty key"))?;
        let mut cur = &mut doc;
        for p in path {
            cur = cur
                .get_mut(*p)
                .and_then(|v| v.as_table_mut())
                .ok_or_else(|| ConfigError::invalid(key, "unknown section"))?;
        }
        match cur.get(*last) {
            Some(toml::Value::Float(_)) => {
                cur.insert(last.to_string(), toml::Value::Float(value));
            }
            Some(toml::Value::Integer(_)) => {
                cur.insert(last.to_string(), toml::Value::Integer(value.round() as i64));
            }
            _ => return Err(ConfigError::invalid(key, "not a numeric field")),
        }
        load_config(&toml::to_string(&doc).map_err(|e| ConfigError::Parse(e.to_string()))?)
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        let mut ejs_small: Vec<f64> = Vec::new();
        for l in [1u8, 2] {
            if let Some(q) = self.qubit(l) {
                validate_qubit(&format!("qubit{l}"), q)?;
                ejs_small.push(q.ej_ghz);
            }
        }
        for axis in Axis::ALL {
            if let Some(p) = self.phase(axis) {
                let f = format!("phase_{}", axis.lower());
                positive(&format!("{f}.ej_ghz"), p.ej_ghz)?;
                positive(&format!("{f}.lp_ph"), p.lp_ph)?;
                if p.ej_over_ec <= 1.0 {
                    return Err(ConfigError::invalid(format!("{f}.ej_over_ec"), "must exceed 1"));
                }
                if !(p.bias.abs() < 1.0) {
                    return Err(ConfigError::invalid(format!("{f}.bias"), "bias at or beyond critical current"));
                }
                ejs_small.push(p.ej_ghz);
            }
        }
        let largest_small = ejs_small.iter().cloned().fold(0.0, f64::max);
        let buses = [
            ("bus_x", self.bus_x.as_ref()),
            ("bus_y", self.bus_y.as_ref()),
            ("bus_z", self.bus_z.as_ref()),
            ("bus_o", self.bus_o.as_ref()),
        ];
        for (name, bus) in buses {
            if let Some(b) = bus {
                positive(&format!("{name}.ej_ghz"), b.ej_ghz)?;
                positive(&format!("{name}.ec_ghz"), b.ec_ghz)?;
                if !(b.bias.abs() < 1.0) {
                    return Err(ConfigError::invalid(format!("{name}.bias"), "bias at or beyond critical current"));
                }
                if b.ej_ghz < 5.0 * largest_small {
                    return Err(ConfigError::invalid(
                        format!("{name}.ej_ghz"),
                        format!(
                            "shared junction must exceed qubit junctions by 5x (ratio {:.3})",
                            b.ej_ghz / largest_small
                        ),
                    ));
                }
            }
        }
        for (name, n) in [
            ("drive.nm", self.drive.nm),
            ("drive.nx", self.drive.nx),
            ("drive.ny", self.drive.ny),
            ("drive.nz", self.drive.nz),
        ] {
            amplitude(name, n)?;
        }
        if self.dirac.spinor.len() != 4 || self.dirac.spinor.iter().all(|v| *v == 0.0) {
            return Err(ConfigError::invalid("dirac.spinor", "needs 4 components, not all zero"));
        }
        if !(self.time.t_max_us > 0.0) || self.time.steps < 2 {
            return Err(ConfigError::invalid("time", "t_max_us > 0 and steps >= 2 required"));
        }
        if !(self.wavepacket.width_fraction >= 0.0) {
            return Err(ConfigError::invalid("wavepacket.width_fraction", "must be >= 0"));
        }
        if self.wavepacket.samples < 1 {
            return Err(ConfigError::invalid("wavepacket.samples", "must be >= 1"));
        }
        let n = &self.noise;
        if n.re_z_ohm < 0.0 || n.re_y_siemens < 0.0 {
            return Err(ConfigError::invalid("noise", "Re Z and Re Y must be >= 0"));
        }
        if !(n.omega_c_ghz > 0.0 && n.omega_t_ghz > n.omega_c_ghz) {
            return Err(ConfigError::invalid("noise.omega_t_ghz", "need omega_t > omega_c > 0"));
        }
        if n.m_ph < 0.0 || n.cg_over_c < 0.0 || n.alpha_flux < 0.0 {
            return Err(ConfigError::invalid("noise", "m_ph, cg_over_c, alpha_flux must be >= 0"));
        }
        if self.numerics.n_max < 8 {
            return Err(ConfigError::invalid("numerics.n_max", "truncation must be >= 8"));
        }
        if !(self.numerics.secular_mhz > 0.0 && self.numerics.eps_den_ghz > 0.0) {
            return Err(ConfigError::invalid("numerics", "secular_mhz and eps_den_ghz must be > 0"));
        }
        Ok(())
    }
}

fn positive(field: &str, v: f64) -> Result<(), ConfigError> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(ConfigError::invalid(field, "must be positive"))
    }
}

fn amplitude(field: &str, n: f64) -> Result<(), ConfigError> {
    if (0.0..=0.05).contains(&n) {
        Ok(())
    } else {
        Err(ConfigError::invalid(field, "drive amplitude outside [0, 0.05]"))
    }
}

fn validate_qubit(name: &str, q: &FluxQubitParams) -> Result<(), ConfigError> {
    positive(&format!("{name}.ej_ghz"), q.ej_ghz)?;
    if q.ej_over_ec <= 1.0 {
        return Err(ConfigError::invalid(format!("{name}.ej_over_ec"), "must exceed 1"));
    }
    if !(q.alpha > 0.0 && q.alpha < 1.0) {
        return Err(ConfigError::invalid(format!("{name}.alpha"), "alpha out of range"));
    }
    if !(q.beta > 0.0) {
        return Err(ConfigError::invalid(format!("{name}.beta"), "beta must be positive"));
    }
    for (f, v) in [("f1", q.f1), ("f2", q.f2)] {
        if !(0.0..1.0).contains(&v) {
            return Err(ConfigError::invalid(format!("{name}.{f}"), "flux outside [0, 1)"));
        }
    }
    for d in &q.drives {
        validate_pulse(name, d)?;
    }
    Ok(())
}

fn validate_pulse(name: &str, d: &DrivePulse) -> Result<(), ConfigError> {
    if !(1..=3).contains(&d.target) {
        return Err(ConfigError::invalid(format!("{name}.pulse.target"), "must be 1, 2 or 3"));
    }
    amplitude(&format!("{name}.pulse.amplitude"), d.amplitude)?;
    positive(&format!("{name}.pulse.omega_ghz"), d.omega_ghz)
}
