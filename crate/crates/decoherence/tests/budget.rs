use jjdirac_core::config::default_qubit;
use jjdirac_core::{Axis, NoiseConfig, SimulationConfig};
use jjdirac_decoherence::*;
use jjdirac_flux::solve_spectrum;

fn sample() -> TransitionData {
    TransitionData {
        f10_ghz: 11.6,
        current_na: 120.0,
        charge_e: 0.3,
        sensitivity_ghz: 40.0,
    }
}

#[test]
fn no_coupling_no_relaxation() {
    let env = NoiseConfig {
        cg_over_c: 0.0,
        m_ph: 0.0,
        ..NoiseConfig::default()
    };
    assert_eq!(relaxation_rate(&sample(), &env).total, 0.0);
}

#[test]
fn flux_channel_scales_with_m_squared_and_re_y() {
    let env = NoiseConfig::default();
    let base = relaxation_rate(&sample(), &env);
    assert_eq!(base.charge, 0.0);
    let m4 = relaxation_rate(&sample(), &NoiseConfig { m_ph: 4.0 * env.m_ph, ..env.clone() });
    assert!((m4.total / base.total - 16.0).abs() < 1e-12);
    let y2 = relaxation_rate(&sample(), &NoiseConfig { re_y_siemens: 2.0 * env.re_y_siemens, ..env.clone() });
    assert!((y2.total / base.total - 2.0).abs() < 1e-12);
}

#[test]
fn charge_channel_is_monotone() {
    let env = NoiseConfig { cg_over_c: 0.01, ..NoiseConfig::default() };
    let a = relaxation_rate(&sample(), &env);
    let b = relaxation_rate(&sample(), &NoiseConfig { re_z_ohm: 2.0 * env.re_z_ohm, ..env.clone() });
    let c = relaxation_rate(&sample(), &NoiseConfig { cg_over_c: 0.02, ..env.clone() });
    assert!(a.charge > 0.0 && b.total > a.total && c.total > a.total);
    assert!((c.charge / a.charge - 4.0).abs() < 1e-12);
}

#[test]
fn decoherence_identities() {
    let env = NoiseConfig::default();
    for s in [0.0, 1.0, 40.0, -300.0] {
        let t = TransitionData { sensitivity_ghz: s, ..sample() };
        let b = qubit_budget("q", &t, &env).unwrap();
        assert_eq!(b.gamma2, b.gamma1.total / 2.0 + b.gamma_phi);
        assert_eq!(b.t1_us, 1.0 / b.gamma1.total);
        assert_eq!(b.t2_us, 1.0 / b.gamma2);
    }
}

#[test]
fn dephasing_scalings() {
    let env = NoiseConfig::default();
    assert_eq!(dephasing_rate(&[(0.0, env.alpha_flux)], &env).unwrap(), 0.0);
    let a = dephasing_rate(&[(10.0, env.alpha_flux)], &env).unwrap();
    let b = dephasing_rate(&[(10.0, 4.0 * env.alpha_flux)], &env).unwrap();
    assert!((b / a - 2.0).abs() < 1e-12);
    let bad = NoiseConfig { omega_t_ghz: 1e-9, omega_c_ghz: 1.0, ..env };
    assert!(matches!(dephasing_rate(&[(1.0, 1e-12)], &bad), Err(DecoherenceError::Band { .. })));
}

#[test]
fn transition_time_convention() {
    assert!((transition_time_us(0.1) - 2.5).abs() < 1e-15);
    let q = |t2: f64| QubitBudget {
        label: "q".into(),
        transition: sample(),
        gamma1: RelaxationRates { charge: 0.0, flux: 0.0, total: 0.0 },
        gamma_phi: 0.0,
        gamma2: 1.0 / t2,
        t1_us: f64::INFINITY,
        t2_us: t2,
    };
    let r = feasibility(vec![q(10.0)], &[(Axis::X, 0.1)]).unwrap();
    assert!((r.axes[0].ratio - 4.0).abs() < 1e-12 && r.claim_satisfied);
    let r = feasibility(vec![q(1.0)], &[(Axis::X, 0.1)]).unwrap();
    assert!(r.microsecond_threshold_met && !r.claim_satisfied);
    let r = feasibility(vec![q(0.5), q(10.0)], &[(Axis::X, 0.1)]).unwrap();
    assert!(!r.microsecond_threshold_met && r.t2_us == 0.5);
}

#[test]
fn sweet_spot_sits_at_gap_minimum() {
    let p = default_qubit(1);
    let s0 = symmetric_f1(&p);
    let h = 0.0005;
    let grid: Vec<f64> = (-6..=6).map(|k| s0 + h * k as f64).collect();
    let s = sweet_spot(&p, &grid, 16, &NoiseConfig::default()).unwrap();
    assert!(s.colocated, "{} vs {}", s.gap_extremum, s.gamma_phi_minimum);
    assert!(s.gap_extremum.abs_diff(6) <= 1);
    // at the symmetric point the finite-difference sensitivity vanishes
    let t = TransitionData::from_flux_qubit(&p.with_f1(s0), 16, true, true).unwrap();
    let away = TransitionData::from_flux_qubit(&p, 16, true, true).unwrap();
    assert!(t.sensitivity_ghz.abs() < 1e-3 * away.sensitivity_ghz.abs());
}

#[test]
fn default_feasibility_is_evaluated() {
    let cfg = SimulationConfig::defaults(1);
    let r = feasibility_report(&cfg, &[(Axis::X, 0.1)]).unwrap();
    assert!(r.t2_us.is_finite() && r.t2_us > 0.0);
    assert!(r.axes[0].ratio.is_finite());
    assert_eq!(r.gamma2, r.gamma1 / 2.0 + r.gamma_phi);
    let sol = solve_spectrum(cfg.qubit(1).unwrap(), jjdirac_flux::ChargeGrid::new(16)).unwrap();
    assert!((r.qubits[0].transition.f10_ghz - sol.gap()).abs() < 1e-9);
}
