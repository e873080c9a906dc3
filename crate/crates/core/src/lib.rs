//! Shared foundations: physical constants, the GHz/MHz unit convention,
//! circuit parameter containers, configuration loading and a handful of
//! dense linear-algebra helpers used by every other crate.

pub mod config;
pub mod constants;
pub mod hierarchy;
pub mod linalg;
pub mod params;
pub mod units;

pub use config::{load_config, ConfigError, SimulationConfig};
pub use constants::PhysicalConstants;
pub use hierarchy::{check_hierarchy, validate_hierarchy, HierarchyInput, HierarchyWarning};
pub use linalg::{CMat, CVec, C64};
pub use params::{
    Axis, DrivePulse, FluxQubitParams, MomentumSpec, NoiseConfig, PhaseQubitParams,
    SharedJunctionParams,
};
