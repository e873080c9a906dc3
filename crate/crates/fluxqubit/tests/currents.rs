use jjdirac_core::config::{default_qubit, SYMMETRIC_F1};
use jjdirac_flux::{solve_spectrum, ChargeGrid};

#[test]
fn symmetric_point_currents_cancel() {
    let p = default_qubit(1).with_f1(SYMMETRIC_F1);
    let s = solve_spectrum(&p, ChargeGrid::new(16)).unwrap();
    let c = s.circulating_current(false);
    assert!(c.i_gg.abs() < 1e-6 && c.i_ee.abs() < 1e-6);
    assert!((c.i_gg + c.i_ee).abs() < 1e-8 * c.i_ge);
    assert!(c.i_ge > 100.0);
    // just off the point the two states carry opposite currents
    let s = solve_spectrum(&p.with_f1(SYMMETRIC_F1 + 0.001), ChargeGrid::new(16)).unwrap();
    let c = s.circulating_current(false);
    assert!(c.i_gg * c.i_ee < 0.0);
    assert!((c.i_gg + c.i_ee).abs() < 0.02 * c.i_gg.abs());
}

#[test]
fn alpha_term_vanishes_with_alpha() {
    let mut p = default_qubit(1);
    p.alpha = 0.0;
    let s = solve_spectrum(&p, ChargeGrid::new(12)).unwrap();
    let full = s.circulating_current(false);
    // with α = 0 the bracket is sinφ1 + sinφ2 only; rebuild it by hand
    let mut q = p.clone();
    q.alpha = 1e-300;
    let s2 = solve_spectrum(&q, ChargeGrid::new(12)).unwrap();
    assert!((s2.circulating_current(false).i_gg - full.i_gg).abs() < 1e-9);
}

#[test]
fn inductive_correction_is_small() {
    // Λ1 = 0.17 at the operating point
    let p = default_qubit(1);
    let s = solve_spectrum(&p, ChargeGrid::new(16)).unwrap();
    let a = s.circulating_current(false);
    let b = s.circulating_current(true);
    let d = ((b.i_gg - a.i_gg) / a.i_gg).abs();
    println!("relative change of I_gg with l = {}: {d}", p.lambda_r);
    assert!(d < 0.05, "{d}");
}
