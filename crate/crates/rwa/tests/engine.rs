use jjdirac_core::config::{DenominatorMode, DriveAmplitudes};
use jjdirac_core::linalg::hermiticity_defect;
use jjdirac_core::{Axis, SimulationConfig};
use jjdirac_rwa::algebra::{DriveId, Ladder, Mode};
use jjdirac_rwa::effective::{closed_form, run_stage, Pauli};
use jjdirac_rwa::integrate::{collect_secular, ordered_integral, orderings, IntegrationSettings};
use jjdirac_rwa::interactions::{build_interactions, EngineInputs, ModeParams, QubitCouplings, Stage};
use jjdirac_rwa::oracle::{effective_matrix, sideband_oracle, SidebandSetup, TruncatedSpace};
use jjdirac_rwa::resonance::resonant_drives;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SECULAR: f64 = 1e-3;

fn settings(mode: DenominatorMode) -> IntegrationSettings {
    IntegrationSettings { mode, eps_den_ghz: 0.1 }
}

/// A random parameter set obeying the frequency hierarchy, with qubit
/// splittings placed so that no unintended product is accidentally secular.
fn random_inputs(rng: &mut ChaCha8Rng, dim: u8) -> EngineInputs {
    let mut u = |a: f64, b: f64| rng.gen_range(a..b);
    let signed = |v: f64, s: bool| if s { v } else { -v };
    let q1 = QubitCouplings {
        big_z: [0.0, u(-1.0, 1.0), u(-5.0, 5.0), u(-0.1, 0.1)],
        big_x: [u(7.5, 10.0), u(-1.0, 1.0), signed(u(0.1, 2.0), true), 0.0],
    };
    let q2 = QubitCouplings {
        big_z: [u(15.0, 20.0), 0.0, u(-1.0, 1.0), 0.0],
        big_x: [0.0, u(-1.0, 1.0), u(1.0, 6.0), 0.0],
    };
    let bus = |w: f64, ej: f64| Some(ModeParams::from_stiffness(w * w / (8.0 * ej), ej));
    let phase = |w: f64, lam: f64| {
        let e = w / (2.0 * lam * lam);
        Some(ModeParams::from_stiffness(w * w / (8.0 * e), e))
    };
    let px = phase(u(3.0, 6.0), u(0.02, 0.06));
    let py = phase(u(3.0, 6.0), u(0.02, 0.06));
    let pz = phase(u(3.0, 6.0), u(0.02, 0.06));
    let bx = bus(u(100.0, 130.0), u(2000.0, 10000.0));
    let by = bus(u(140.0, 170.0), u(2000.0, 10000.0));
    let bz = bus(u(180.0, 210.0), u(2000.0, 10000.0));
    let bo = bus(u(1100.0, 1500.0), u(2000.0, 10000.0));
    let e_l = [Some(u(1.0, 5000.0)), Some(u(1.0, 5000.0)), Some(u(1.0, 5000.0))];
    let amps = DriveAmplitudes {
        nm: u(0.0, 0.05),
        nx: u(0.005, 0.025),
        ny: u(0.005, 0.025),
        nz: u(0.005, 0.025),
    };
    let mut inputs = EngineInputs {
        dimension: dim,
        qubit1: q1,
        qubit2: (dim > 1).then_some(q2),
        phase: [px, if dim > 1 { py } else { None }, if dim > 2 { pz } else { None }],
        bus: [bx, if dim > 1 { by } else { None }, if dim > 2 { bz } else { None }],
        bus_o: if dim > 1 { bo } else { None },
        e_l,
        drives: vec![],
    };
    inputs.drives = resonant_drives(&inputs, &amps);
    inputs
}

#[test]
fn closed_forms_hold_for_random_draws() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut worst: f64 = 0.0;
    for draw in 0..20 {
        let dim = [1u8, 2, 3][draw % 3];
        let inputs = random_inputs(&mut rng, dim);
        for stage in Stage::for_dimension(dim) {
            let engine = run_stage(&inputs, stage, &settings(DenominatorMode::Hierarchy), SECULAR)
                .unwrap()
                .pauli();
            let closed = closed_form(&inputs, stage).unwrap();
            let d = engine.relative_distance(&closed);
            worst = worst.max(d);
            assert!(d < 1e-12, "draw {draw} {stage:?}: {d:e}");
        }
    }
    eprintln!("worst relative deviation {worst:e}");
}

#[test]
fn exact_mode_differs_only_at_hierarchy_order() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let inputs = random_inputs(&mut rng, 3);
    for axis in Axis::ALL {
        let stage = Stage::Momentum(axis);
        let exact = run_stage(&inputs, stage, &settings(DenominatorMode::Exact), SECULAR).unwrap().pauli();
        let closed = closed_form(&inputs, stage).unwrap();
        let d = exact.relative_distance(&closed);
        // corrections are O(slow/ω_bus) ≲ 0.1
        assert!(d > 1e-8 && d < 0.1, "{axis:?}: {d:e}");
    }
}

#[test]
fn axis_x_words_and_structure() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let inputs = random_inputs(&mut rng, 3);
    let r = run_stage(&inputs, Stage::Momentum(Axis::X), &settings(DenominatorMode::Exact), SECULAR).unwrap();
    // σx(1) is static, so every word carries a qubit-1 projector, a qubit-2
    // flip and one phase-qubit ladder operator
    assert_eq!(r.couplings.len(), 8);
    for c in &r.couplings {
        assert!(c.word.q1.map(|u| u.row == u.col).unwrap_or(false));
        assert!(c.word.q2.map(|u| u.row != u.col).unwrap_or(false));
        assert_eq!(c.word.bosons.len(), 1);
        assert_eq!(c.word.bosons[0].0, Mode::Px);
    }
    // JC pulse feeds σ+a / σ−a†, AJC pulse feeds σ+a† / σ−a
    let p = r.pauli();
    let plus = p.get(Pauli::X, Pauli::X, &[(Mode::Px, Ladder::Create)]);
    let minus = p.get(Pauli::X, Pauli::X, &[(Mode::Px, Ladder::Annihilate)]);
    assert!((plus + minus).norm() < 1e-12 * plus.norm());
    assert!(plus.re.abs() < 1e-12 * plus.norm());
}

#[test]
fn linear_in_drive_amplitude() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let inputs = random_inputs(&mut rng, 3);
    let ids = [DriveId::new(2, 1), DriveId::new(2, 2)];
    let doubled = inputs.with_drive_scale(&ids, 2.0);
    let s = settings(DenominatorMode::Exact);
    let a = run_stage(&inputs, Stage::Momentum(Axis::X), &s, SECULAR).unwrap();
    let b = run_stage(&doubled, Stage::Momentum(Axis::X), &s, SECULAR).unwrap();
    assert_eq!(a.couplings.len(), b.couplings.len());
    for (x, y) in a.couplings.iter().zip(&b.couplings) {
        assert_eq!(x.word, y.word);
        let d = (y.coefficient() - x.coefficient() * 2.0).norm();
        assert!(d <= 1e-15 * y.coefficient().norm(), "{d:e}");
    }
}

#[test]
fn zero_drive_gives_empty_output() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let inputs = random_inputs(&mut rng, 3).with_drive_scale(&[DriveId::new(2, 3)], 0.0);
    let r = run_stage(&inputs, Stage::Momentum(Axis::Z), &settings(DenominatorMode::Exact), SECULAR).unwrap();
    assert!(r.couplings.is_empty());
}

#[test]
fn detuned_branch_vanishes() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut inputs = random_inputs(&mut rng, 3);
    for d in &mut inputs.drives {
        if d.id == DriveId::new(2, 1) {
            d.omega_ghz += 0.05;
        }
    }
    let r = run_stage(&inputs, Stage::Momentum(Axis::X), &settings(DenominatorMode::Exact), SECULAR).unwrap();
    assert_eq!(r.couplings.len(), 4);
    for c in &r.couplings {
        for p in &c.provenance {
            assert!(p.drives.iter().all(|d| !d.contains("n1(2)")), "{:?}", p.drives);
        }
        // only the JC words σ+ a_x and σ− a_x† survive
        let q2 = c.word.q2.unwrap();
        let l = c.word.bosons[0].1;
        assert_eq!(q2.row == 0, l == Ladder::Annihilate);
    }
}

#[test]
fn census_is_order_independent() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let inputs = random_inputs(&mut rng, 3);
    let table = inputs.freq_table();
    let s = settings(DenominatorMode::Exact);
    let run = |terms: &[jjdirac_rwa::InteractionTerm]| {
        let names: Vec<String> = terms.iter().map(|t| t.name.clone()).collect();
        let prods: Vec<_> = orderings(3)
            .iter()
            .flat_map(|o| ordered_integral(terms, o, &table, &s).unwrap())
            .collect();
        collect_secular(&prods, &names, &table, SECULAR, false)
    };
    let terms = build_interactions(&inputs, Stage::Momentum(Axis::Y)).unwrap();
    let (a, ca) = run(&terms);
    let mut shuffled = terms.clone();
    for t in &mut shuffled {
        t.monomials.reverse();
    }
    shuffled.rotate_left(1);
    let (b, cb) = run(&shuffled);
    assert_eq!(ca.kept, cb.kept);
    assert_eq!(ca.discarded, cb.discarded);
    assert_eq!(ca.discarded_by_frequency, cb.discarded_by_frequency);
    assert_eq!(a.len(), b.len());
    for (x, y) in a.iter().zip(&b) {
        assert_eq!(x.word, y.word);
        assert!((x.coefficient() - y.coefficient()).norm() <= 1e-14 * x.coefficient().norm());
    }
}

#[test]
fn kept_denominators_respect_floor() {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let inputs = random_inputs(&mut rng, 3);
    for stage in Stage::for_dimension(3) {
        let r = run_stage(&inputs, stage, &settings(DenominatorMode::Exact), SECULAR).unwrap();
        for c in &r.couplings {
            for p in &c.provenance {
                assert!(p.denominators.iter().all(|(_, v)| v.abs() >= 0.1));
            }
        }
    }
}

#[test]
fn lambda_squared_over_omega_identity() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..50 {
        let ej_x = rng.gen_range(100.0..20000.0);
        let ej_o = rng.gen_range(100.0..20000.0);
        let x = ModeParams::from_stiffness(rng.gen_range(0.01..5.0), ej_x);
        let o = ModeParams::from_stiffness(rng.gen_range(0.01..5.0), ej_o);
        let one = x.lambda.powi(2) / x.omega_ghz;
        assert!((one * 2.0 * ej_x - 1.0).abs() < 1e-14);
        let two = x.lambda.powi(2) * o.lambda.powi(2) / (x.omega_ghz * o.omega_ghz);
        assert!((two * 4.0 * ej_x * ej_o - 1.0).abs() < 1e-14);
    }
}

#[test]
fn assembled_matrix_is_hermitian() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let inputs = random_inputs(&mut rng, 3);
    let space = TruncatedSpace {
        qubit1: true,
        qubit2: true,
        modes: vec![(Mode::Px, 3), (Mode::Py, 3), (Mode::Pz, 3)],
    };
    let mut all = Vec::new();
    for stage in Stage::for_dimension(3) {
        all.extend(run_stage(&inputs, stage, &settings(DenominatorMode::Exact), SECULAR).unwrap().couplings);
    }
    let h = effective_matrix(&all, &space).unwrap();
    let scale = h.iter().map(|z| z.norm()).fold(0.0, f64::max);
    assert!(hermiticity_defect(&h) <= 1e-14 * scale);
}

#[test]
fn small_denominator_names_partial_sum() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    let inputs = random_inputs(&mut rng, 1);
    let s = IntegrationSettings {
        mode: DenominatorMode::Exact,
        eps_den_ghz: 1e4,
    };
    let err = run_stage(&inputs, Stage::Momentum1D, &s, SECULAR).unwrap_err();
    assert!(err.to_string().contains("w_"), "{err}");
}

#[test]
fn sideband_propagator_matches_effective() {
    let t = std::time::Instant::now();
    let r = sideband_oracle(&SidebandSetup::default()).unwrap();
    eprintln!("{r:?} in {:?}", t.elapsed());
    assert!(r.fidelity >= 0.999, "{}", r.fidelity);
    assert!(r.hermiticity_defect < 1e-14);
    assert!(r.steps_per_period as f64 >= 200.0 * 11.0);
}

#[test]
fn default_config_pipeline() {
    let cfg = SimulationConfig::defaults(3);
    let r = jjdirac_rwa::effective_hamiltonian(&cfg).unwrap();
    assert!(r.resonance.all_ok());
    assert_eq!(r.stages.len(), 4);
    for c in &r.checks {
        assert!(c.hierarchy_deviation < 1e-12, "{}: {}", c.stage, c.hierarchy_deviation);
    }
    let mass = r.stage(Stage::Mass).unwrap().pauli();
    let z = mass.get(Pauli::Z, Pauli::I, &[]);
    let q1 = r.inputs.qubit1;
    assert!((z.re - 0.5 * q1.big_z[1] * cfg.drive.nm).abs() < 1e-12 * z.norm());
}
