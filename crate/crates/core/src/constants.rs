//! SI constants (2019 exact definitions).

/// Immutable set of the constants the simulator needs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalConstants {
    /// Flux quantum h/2e in Wb.
    pub flux_quantum: f64,
    /// Elementary charge in C.
    pub electron_charge: f64,
    /// Planck constant in J s.
    pub planck: f64,
    /// Reduced Planck constant in J s.
    pub hbar: f64,
}

pub const PLANCK: f64 = 6.626_070_15e-34;
pub const ELECTRON_CHARGE: f64 = 1.602_176_634e-19;

impl PhysicalConstants {
    pub const fn si() -> Self {
        Self {
            flux_quantum: PLANCK / (2.0 * ELECTRON_CHARGE),
            electron_charge: ELECTRON_CHARGE,
            planck: PLANCK,
            hbar: PLANCK / (2.0 * std::f64::consts::PI),
        }
    }
}

impl Default for PhysicalConstants {
    fn default() -> Self {
        Self::si()
    }
}

pub const SI: PhysicalConstants = PhysicalConstants::si();

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hbar_is_h_over_two_pi() {
        let c = PhysicalConstants::si();
        assert_eq!(c.hbar, c.planck / (2.0 * std::f64::consts::PI));
        assert!((c.flux_quantum - 2.067_833_848e-15).abs() < 1e-23);
    }
}
