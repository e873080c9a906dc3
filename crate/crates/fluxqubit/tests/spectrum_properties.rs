use jjdirac_core::config::{default_qubit, SYMMETRIC_F1};
use jjdirac_core::linalg::{eigh, C64};
use jjdirac_flux::hamiltonian::{build_h_q0, ChargeGrid};
use jjdirac_flux::{rotated_couplings, solve_spectrum, MatrixElements};

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

#[test]
fn truncation_converged_16_to_20() {
    for f1 in [SYMMETRIC_F1, 0.3555] {
        let p = default_qubit(1).with_f1(f1);
        let a = solve_spectrum(&p, ChargeGrid::new(16)).unwrap();
        let b = solve_spectrum(&p, ChargeGrid::new(20)).unwrap();
        for i in 0..2 {
            assert!(rel(a.energies[i], b.energies[i]) < 1e-10);
        }
    }
}

#[test]
fn lanczos_agrees_with_dense() {
    let p = default_qubit(2).with_f1(0.33);
    let g = ChargeGrid::new(7);
    let s = solve_spectrum(&p, g).unwrap();
    let (dense, _) = eigh(&build_h_q0(&p, &g).to_dense());
    for i in 0..4 {
        assert!((s.energies[i] - dense[i]).abs() < 1e-9, "{i}");
    }
}

#[test]
fn parity_rule_at_symmetric_point() {
    let p = default_qubit(1).with_f1(SYMMETRIC_F1);
    assert!((p.f3() - 0.5).abs() < 1e-15);
    let s = solve_spectrum(&p, ChargeGrid::new(16)).unwrap();
    let m = s.matrix_elements();
    assert!(m.z[1].abs() < 1e-10, "z1 = {}", m.z[1]);
    assert!(s.gap() > 0.0);
}

#[test]
fn pauli_identity_and_orthonormality() {
    for (l, f1) in [(1, SYMMETRIC_F1), (1, 0.3555), (2, 0.3555), (2, 0.331)] {
        let p = default_qubit(l).with_f1(f1);
        let s = solve_spectrum(&p, ChargeGrid::new(16)).unwrap();
        let m = s.matrix_elements();
        let lhs = m.z[0] * m.z[0] + m.x_complex[0].norm_sqr();
        let half = s.gap() / 2.0;
        assert!(rel(lhs, half * half) < 1e-12);
        let gg = s.ground.dotc(&s.ground);
        let ee = s.excited.dotc(&s.excited);
        let ge = s.ground.dotc(&s.excited);
        assert!((gg - C64::new(1.0, 0.0)).norm() < 1e-12);
        assert!((ee - C64::new(1.0, 0.0)).norm() < 1e-12);
        assert!(ge.norm() < 1e-12);
    }
}

#[test]
fn reflection_gauge_makes_elements_real() {
    let p = default_qubit(2);
    let m = solve_spectrum(&p, ChargeGrid::new(16)).unwrap().matrix_elements();
    for i in 1..3 {
        assert!(m.x_complex[i].im.abs() < 1e-12 * (1.0 + m.x_complex[i].re.abs()));
    }
    assert!(m.x_complex[3].re.abs() < 1e-12);
}

#[test]
fn alpha_zero_is_flux_independent() {
    let mut p = default_qubit(1);
    p.alpha = 0.0;
    let g = ChargeGrid::new(12);
    let h = 1e-4;
    let up = solve_spectrum(&p.with_f1(0.30 + h), g).unwrap().energies[0];
    let dn = solve_spectrum(&p.with_f1(0.30 - h), g).unwrap().energies[0];
    assert!(((up - dn) / (2.0 * h)).abs() < 1e-10);
}

#[test]
fn spectrum_symmetric_under_flux_reversal() {
    let p = default_qubit(1).with_f1(0.3555);
    let mirrored = p.with_f1(1.0 - p.f3() - p.f2 / 2.0);
    assert!((mirrored.f3() - (1.0 - p.f3())).abs() < 1e-15);
    let a = solve_spectrum(&p, ChargeGrid::new(16)).unwrap();
    let b = solve_spectrum(&mirrored, ChargeGrid::new(16)).unwrap();
    for i in 0..4 {
        assert!(rel(a.energies[i], b.energies[i]) < 1e-10);
    }
}

#[test]
fn gauge_is_continuous() {
    let p = default_qubit(2);
    let g = ChargeGrid::new(16);
    let a = solve_spectrum(&p, g).unwrap().matrix_elements();
    let b = solve_spectrum(&p.with_f1(p.f1 + 1e-9), g).unwrap().matrix_elements();
    for i in 0..4 {
        assert!((a.z[i] - b.z[i]).abs() < 1e-6);
        assert!((a.x[i] - b.x[i]).abs() < 1e-6);
    }
}

#[test]
fn rotation_preserves_norms() {
    let m = MatrixElements {
        z: [0.0, 0.3, -0.2, 0.1],
        x: [0.7, 0.5, 0.4, -0.9],
        x_complex: [C64::new(0.0, 0.0); 4],
    };
    for l in [1, 2] {
        let r = rotated_couplings(&m, &default_qubit(l), l);
        assert!((r.theta - std::f64::consts::FRAC_PI_2).abs() < 1e-15);
        for i in 0..4 {
            let a = m.z[i] * m.z[i] + m.x[i] * m.x[i];
            let b = r.zr[i] * r.zr[i] + r.xr[i] * r.xr[i];
            assert!((a - b).abs() < 1e-12);
        }
    }
    // θ = π/2, qubit 2: zr = x, xr = z
    let r = rotated_couplings(&m, &default_qubit(2), 2);
    assert!((r.zr[1] - m.x[1]).abs() < 1e-15 && (r.xr[1] - m.z[1]).abs() < 1e-15);
}
