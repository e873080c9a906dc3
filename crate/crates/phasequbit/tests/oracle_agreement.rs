use jjdirac_core::config::{default_bus, default_phase};
use jjdirac_core::Axis;
use jjdirac_phase::{oracle_diagonalize, quantize_phase};

#[test]
fn deep_well_agreement() {
    let bus = default_bus('X');
    let mut worst: f64 = 0.0;
    for ej in [850.0, 1100.0, 1350.0] {
        for ratio in [1e4, 1e5, 1e6] {
            for bias in [0.0, 0.5, 0.9] {
                let mut p = default_phase(Axis::X);
                p.ej_ghz = ej;
                p.ej_over_ec = ratio;
                p.bias = bias;
                let r = oracle_diagonalize(ej, p.ec_ghz(), bias, p.e_rp_ghz(&bus), 40).unwrap();
                assert!(r.anharmonicity < 0.0);
                worst = worst.max(r.relative_deviation.abs());
            }
        }
    }
    println!("worst relative deviation: {worst:e}");
    assert!(worst < 1e-3);
}

#[test]
fn operating_bias_regression() {
    let bus = default_bus('X');
    let p = default_phase(Axis::X);
    let m = quantize_phase(&p, &bus).unwrap();
    let r = oracle_diagonalize(p.ej_ghz, p.ec_ghz(), p.bias, p.e_rp_ghz(&bus), 40).unwrap();
    println!("bias 0.99: lambda {} omega {} GHz, oracle {} GHz, deviation {:e}", m.lambda, m.omega_ghz, r.omega_numeric, r.relative_deviation);
    assert!((r.omega_closed - m.omega_ghz).abs() < 1e-12);
    assert!(r.relative_deviation.abs() < 2e-2);
    // frozen after the first run
    assert!((r.relative_deviation - FROZEN_099).abs() < 1e-9);
}

const FROZEN_099: f64 = -3.690117685729886e-5;

#[test]
fn ring_inductance_ratio() {
    let c = jjdirac_core::SimulationConfig::defaults(3);
    let q = c.qubit1.clone().unwrap();
    let (lr, lambda) = jjdirac_phase::ring_inductance(&c, 1, &q);
    assert!(lr > q.lg_ph);
    assert!((lambda - 0.17).abs() / 0.17 < 0.15, "{lambda}");
}
