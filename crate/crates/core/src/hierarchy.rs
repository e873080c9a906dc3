//! Frequency-ordering checks for the bus modes.
//!
//! "≫" means ratio ≥ [`MUCH_GREATER`], "≠" means relative gap ≥ [`DISTINCT`].

use crate::config::SimulationConfig;
use crate::params::SharedJunctionParams;
use std::fmt;

pub const MUCH_GREATER: f64 = 5.0;
pub const DISTINCT: f64 = 0.01;

#[derive(Debug, Clone, Default, PartialEq)]
pub struct HierarchyInput {
    pub omega_o: Option<f64>,
    /// Bus frequencies X, Y, Z (absent axes are `None`).
    pub omega_bus: [Option<f64>; 3],
    /// 2X_0 of qubit 1, if known.
    pub two_x0: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum HierarchyWarning {
    /// ω_hi/ω_lo below the "≫" threshold.
    NotSeparated {
        upper: String,
        lower: String,
        ratio: f64,
    },
    DegenerateBus { a: String, b: String, gap: f64 },
}

impl fmt::Display for HierarchyWarning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HierarchyWarning::NotSeparated { upper, lower, ratio } => write!(
                f,
                "{upper}/{lower} = {ratio} below separation threshold {MUCH_GREATER}"
            ),
            HierarchyWarning::DegenerateBus { a, b, gap } => {
                write!(f, "degenerate bus frequencies {a}, {b} (relative gap {gap})")
            }
        }
    }
}

/// Plasma frequency of a bus junction, √(8 E_J E_C cos γ0).
pub fn bus_frequency(bus: &SharedJunctionParams) -> f64 {
    (8.0 * bus.ej_ghz * bus.ec_ghz * bus.gamma0().cos()).sqrt()
}

const NAMES: [&str; 3] = ["omega_X", "omega_Y", "omega_Z"];

pub fn check_hierarchy(input: &HierarchyInput) -> Vec<HierarchyWarning> {
    let mut out = Vec::new();
    let present: Vec<(usize, f64)> = input
        .omega_bus
        .iter()
        .enumerate()
        .filter_map(|(i, w)| w.map(|w| (i, w)))
        .collect();
    if let Some(wo) = input.omega_o {
        for &(i, w) in &present {
            let ratio = wo / w;
            if ratio < MUCH_GREATER {
                out.push(HierarchyWarning::NotSeparated {
                    upper: "omega_O".into(),
                    lower: NAMES[i].into(),
                    ratio,
                });
            }
        }
    }
    for (k, &(i, wi)) in present.iter().enumerate() {
        for &(j, wj) in &present[k + 1..] {
            let gap = (wi - wj).abs() / wi.max(wj);
            if gap < DISTINCT {
                out.push(HierarchyWarning::DegenerateBus {
                    a: NAMES[i].into(),
                    b: NAMES[j].into(),
                    gap,
                });
            }
        }
    }
    if let Some(x) = input.two_x0 {
        for &(i, w) in &present {
            let ratio = w / x;
            if ratio < MUCH_GREATER {
                out.push(HierarchyWarning::NotSeparated {
                    upper: NAMES[i].into(),
                    lower: "2X0".into(),
                    ratio,
                });
            }
        }
    }
    out
}

/// Hierarchy warnings for a loaded config. `two_x0` comes from the
/// flux-qubit solver when available.
pub fn validate_hierarchy(config: &SimulationConfig, two_x0: Option<f64>) -> Vec<HierarchyWarning> {
    let input = HierarchyInput {
        omega_o: config.bus_o.as_ref().map(bus_frequency),
        omega_bus: [
            config.bus_x.as_ref().map(bus_frequency),
            config.bus_y.as_ref().map(bus_frequency),
            config.bus_z.as_ref().map(bus_frequency),
        ],
        two_x0,
    };
    check_hierarchy(&input)
}
