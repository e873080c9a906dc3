//! Acceptance criteria 1–10. One PASS/FAIL line per criterion goes straight
//! to stderr (uncaptured), then the test fails if any criterion failed.
//! Criteria run one after another so the runtime budgets are not shared
//! with other test threads.

use jjdirac_core::config::{default_bus, default_phase, default_qubit, DenominatorMode, DriveAmplitudes, SYMMETRIC_F1};
use jjdirac_core::linalg::{c, C64};
use jjdirac_core::{Axis, NoiseConfig, SimulationConfig};
use jjdirac_decoherence::{feasibility_report, qubit_budget, relaxation_rate, sweet_spot, symmetric_f1, TransitionData};
use jjdirac_diracmap::{assemble_standard, lorentz_boost, map_parameters, project, with_cp0};
use jjdirac_dynamics::{analyze_tremor, time_grid, zb_closed_form, zb_oracle, DiracSystem, SpinorState};
use jjdirac_flux::sweep::linspace;
use jjdirac_flux::{solve_spectrum, ChargeGrid};
use jjdirac_phase::{oracle_diagonalize, quantize_phase};
use jjdirac_rwa::effective::{closed_form, run_stage};
use jjdirac_rwa::integrate::IntegrationSettings;
use jjdirac_rwa::interactions::{EngineInputs, ModeParams, QubitCouplings, Stage};
use jjdirac_rwa::oracle::{sideband_oracle, SidebandSetup};
use jjdirac_rwa::resonance::resonant_drives;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::io::Write;
use std::path::Path;
use std::time::Instant;

type Outcome = Result<String, String>;

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn sorted(mut v: Vec<f64>) -> Vec<f64> {
    v.sort_by(f64::total_cmp);
    v
}

fn random_spinor(rng: &mut ChaCha8Rng, n: usize) -> SpinorState {
    let v: Vec<C64> = (0..n).map(|_| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect();
    SpinorState::new(&v).unwrap()
}

/// Random parameters obeying the frequency hierarchy with splittings placed
/// away from accidental resonances.
fn random_inputs(rng: &mut ChaCha8Rng, dim: u8) -> EngineInputs {
    let mut u = |a: f64, b: f64| rng.gen_range(a..b);
    let q1 = QubitCouplings {
        big_z: [0.0, u(-1.0, 1.0), u(-5.0, 5.0), u(-0.1, 0.1)],
        big_x: [u(7.5, 10.0), u(-1.0, 1.0), u(0.1, 2.0), 0.0],
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

fn c1_rwa_exactness() -> Outcome {
    let t0 = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    let settings = IntegrationSettings {
        mode: DenominatorMode::Hierarchy,
        eps_den_ghz: 0.1,
    };
    let mut worst: f64 = 0.0;
    let mut stages = std::collections::BTreeSet::new();
    for draw in 0..20 {
        let dim = [1u8, 2, 3][draw % 3];
        let inputs = random_inputs(&mut rng, dim);
        for stage in Stage::for_dimension(dim) {
            let engine = run_stage(&inputs, stage, &settings, 1e-3).map_err(|e| e.to_string())?.pauli();
            let closed = closed_form(&inputs, stage).map_err(|e| e.to_string())?;
            worst = worst.max(engine.relative_distance(&closed));
            stages.insert(stage.name());
        }
    }
    let secs = t0.elapsed().as_secs_f64();
    let names: Vec<String> = stages.into_iter().collect();
    check(
        worst <= 1e-12 && secs < 5.0,
        format!("20 draws, stages {}: worst relative {worst:.2e} (tol 1e-12), {secs:.2} s (< 5 s)", names.join("/")),
    )
}

fn c2_propagator() -> Outcome {
    let t0 = Instant::now();
    let r = sideband_oracle(&SidebandSetup::default()).map_err(|e| e.to_string())?;
    let secs = t0.elapsed().as_secs_f64();
    check(
        r.fidelity >= 0.999 && secs < 60.0,
        format!(
            "2 x Fock(3) x Fock(3), t = {:.0} ns ({} periods): fidelity {:.6} (>= 0.999), {secs:.2} s (< 60 s)",
            r.t_ns, r.periods, r.fidelity
        ),
    )
}

fn c3_zitter_oracle() -> Outcome {
    let t0 = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(103);
    let mut worst: f64 = 0.0;
    for _ in 0..20 {
        let mc2 = rng.gen_range(1.0..5.0);
        let cp = rng.gen_range(0.01..10.0);
        let sys = DiracSystem::standard(mc2, [cp, 0.0, 0.0], 1);
        let psi = random_spinor(&mut rng, 2);
        let times = time_grid(5.0 / mc2, 201);
        let closed = zb_closed_form(&sys, &psi, &times).map_err(|e| e.to_string())?;
        let oracle = zb_oracle(&sys, &psi, &times, 128).map_err(|e| e.to_string())?;
        worst = worst.max(closed.relative_distance(&oracle.trajectory));
    }
    let secs = t0.elapsed().as_secs_f64();
    check(
        worst <= 1e-9 && secs < 10.0,
        format!("20 draws mc2 in [1,5], cp in [0.01,10] MHz: worst relative {worst:.2e} (tol 1e-9), {secs:.2} s (< 10 s)"),
    )
}

fn c4_tremor_frequency() -> Outcome {
    let points = [(5.0, 0.1), (1.0, 0.01), (2.0, 0.5), (3.0, 3.0), (4.0, 1.0), (1.0, 10.0)];
    let psi = SpinorState::from_real(&[1.0, 0.0]).unwrap();
    let times = time_grid(5.0, 2001);
    let mut worst: f64 = 0.0;
    for (mc2, cp) in points {
        let sys = DiracSystem::standard(mc2, [cp, 0.0, 0.0], 1);
        let traj = zb_closed_form(&sys, &psi, &times).map_err(|e| e.to_string())?;
        let fit = analyze_tremor(&traj.times, &traj.axis(0)).map_err(|e| e.to_string())?;
        let want = 2.0 * (mc2 * mc2 + cp * cp).sqrt();
        worst = worst.max((fit.frequency - want).abs() / want);
    }
    check(worst < 1e-3, format!("6 points incl. (5, 0.1) MHz: worst relative error {worst:.2e} (tol 1e-3)"))
}

fn c5_dimensions() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(105);
    let (mut d23, mut d14): (f64, f64) = (0.0, 0.0);
    let r = 1.0 / 2f64.sqrt();
    for _ in 0..10 {
        let mc2 = rng.gen_range(1.0..5.0);
        let (px, py) = (rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
        let psi = random_spinor(&mut rng, 4);
        let times = time_grid(5.0 / mc2, 201);
        let a = zb_closed_form(&DiracSystem::standard(mc2, [px, py, 0.0], 2), &psi, &times).unwrap();
        let b = zb_closed_form(&DiracSystem::standard(mc2, [px, py, 0.0], 3), &psi, &times).unwrap();
        for (p, q) in a.position.iter().zip(&b.position) {
            d23 = d23.max((p[0] - q[0]).abs()).max((p[1] - q[1]).abs());
        }
        let two = random_spinor(&mut rng, 2);
        let (a0, a1) = (two.vector()[0], two.vector()[1]);
        let four = SpinorState::new(&[a0 * r, a0 * r, a1 * r, a1 * r]).unwrap();
        let x2 = zb_closed_form(&DiracSystem::standard(mc2, [px, 0.0, 0.0], 1), &two, &times).unwrap();
        let x4 = zb_closed_form(&DiracSystem::standard(mc2, [px, 0.0, 0.0], 3), &four, &times).unwrap();
        for (p, q) in x2.axis(0).iter().zip(x4.axis(0)) {
            d14 = d14.max((p - q).abs());
        }
    }
    check(
        d23 <= 1e-12 && d14 <= 1e-10,
        format!("2+1D vs 3+1D (pz = 0): {d23:.2e} (tol 1e-12); 1+1D vs 4x4 subspace: {d14:.2e} (tol 1e-10)"),
    )
}

fn c6_boost() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(106);
    let (mut gen, mut spec): (f64, f64) = (0.0, 0.0);
    for _ in 0..10 {
        let mc2 = rng.gen_range(0.5..5.0);
        let cp0 = mc2 * rng.gen_range(-2.0..2.0);
        let cp = [rng.gen_range(-0.1..0.1), rng.gen_range(-0.1..0.1), 0.0];
        let h = with_cp0(&assemble_standard(mc2, cp, 3), cp0);
        let b = lorentz_boost(&h, mc2, cp0).map_err(|e| e.to_string())?;
        gen = gen.max(project(&b.h.matrix, &jjdirac_diracmap::cp0_generator()).norm() / h.norm());
        for (x, y) in sorted(h.eigenvalues()).iter().zip(sorted(b.h.eigenvalues())) {
            spec = spec.max((x - y).abs());
        }
    }
    check(
        gen < 1e-10 && spec <= 1e-10,
        format!("10 draws |cp0/mc2| <= 2: generator projection {gen:.2e}·|H| (tol 1e-10), spectrum {spec:.2e} (tol 1e-10)"),
    )
}

fn c7_flux_solver() -> Outcome {
    let p = default_qubit(1);
    let rel = |a: f64, b: f64| (a - b).abs() / b.abs();
    let mut conv: f64 = 0.0;
    let mut ident: f64 = 0.0;
    for f1 in [SYMMETRIC_F1, p.f1] {
        let q = p.with_f1(f1);
        let a = solve_spectrum(&q, ChargeGrid::new(16)).map_err(|e| e.to_string())?;
        let b = solve_spectrum(&q, ChargeGrid::new(20)).map_err(|e| e.to_string())?;
        for i in 0..2 {
            conv = conv.max(rel(a.energies[i], b.energies[i]));
        }
        let m = a.matrix_elements();
        let half = a.gap() / 2.0;
        ident = ident.max(rel(m.z[0] * m.z[0] + m.x_complex[0].norm_sqr(), half * half));
    }
    let s = solve_spectrum(&p.with_f1(SYMMETRIC_F1), ChargeGrid::new(16)).map_err(|e| e.to_string())?;
    let z1 = s.matrix_elements().z[1].abs();
    check(
        conv <= 1e-10 && z1 <= 1e-10 && ident <= 1e-12,
        format!(
            "E_J 300 GHz, E_J/E_C {}, alpha {}, beta {}: n_max 16->20 {conv:.2e} (tol 1e-10), z1 at f3=1/2 {z1:.2e} (tol 1e-10), z0^2+x0^2 vs (gap/2)^2 {ident:.2e} (tol 1e-12)",
            p.ej_over_ec, p.alpha, p.beta
        ),
    )
}

/// Measured once at bias 0.99 and frozen.
const FROZEN_BIAS_099: f64 = -3.690117685729886e-5;

fn c8_phase_qubit() -> Outcome {
    let bus = default_bus('X');
    let mut worst: f64 = 0.0;
    for ej in [850.0, 1100.0, 1350.0] {
        for ratio in [1e4, 1e5, 1e6] {
            for bias in [0.0, 0.5, 0.9] {
                let mut p = default_phase(Axis::X);
                p.ej_ghz = ej;
                p.ej_over_ec = ratio;
                p.bias = bias;
                let r = oracle_diagonalize(ej, p.ec_ghz(), bias, p.e_rp_ghz(&bus), 40).map_err(|e| e.to_string())?;
                worst = worst.max(r.relative_deviation.abs());
            }
        }
    }
    let p = default_phase(Axis::X);
    let m = quantize_phase(&p, &bus).map_err(|e| e.to_string())?;
    let r = oracle_diagonalize(p.ej_ghz, p.ec_ghz(), p.bias, p.e_rp_ghz(&bus), 40).map_err(|e| e.to_string())?;
    let frozen = (r.relative_deviation - FROZEN_BIAS_099).abs() < 1e-9;
    check(
        worst < 1e-3 && frozen,
        format!(
            "E_J/E_C >= 1e4, bias <= 0.9: worst {worst:.2e} (tol 1e-3); bias 0.99: omega {:.6} GHz, deviation {:.6e} (frozen {FROZEN_BIAS_099:.6e})",
            m.omega_ghz, r.relative_deviation
        ),
    )
}

fn c9_decoherence() -> Outcome {
    let cfg = SimulationConfig::defaults(3);
    let env = NoiseConfig::default();
    let q = cfg.qubit(1).unwrap();
    let n = &cfg.numerics;
    let t = TransitionData::from_flux_qubit(q, n.n_max, n.current_correction, env.offdiagonal_current)
        .map_err(|e| e.to_string())?;
    let b = qubit_budget("flux1", &t, &env).map_err(|e| e.to_string())?;
    let identity = b.gamma2 == b.gamma1.total / 2.0 + b.gamma_phi;
    let base = relaxation_rate(&t, &env).total;
    let m4 = relaxation_rate(&t, &NoiseConfig { m_ph: 4.0 * env.m_ph, ..env.clone() }).total;
    let y2 = relaxation_rate(&t, &NoiseConfig { re_y_siemens: 2.0 * env.re_y_siemens, ..env.clone() }).total;
    let scal = (m4 / base - 16.0).abs().max((y2 / base - 2.0).abs());
    let sym = symmetric_f1(q);
    let grid = linspace(sym - 0.01, sym + 0.01, 21);
    let ss = sweet_spot(q, &grid, n.n_max, &env).map_err(|e| e.to_string())?;

    let report = jjdirac_rwa::effective_hamiltonian(&cfg).map_err(|e| e.to_string())?;
    let mapped = map_parameters(&report, cfg.dirac.cp0_mhz).map_err(|e| e.to_string())?;
    let omega: Vec<(Axis, f64)> = cfg.axes().iter().map(|&a| (a, mapped.params.omega_tilde[a.index()])).collect();
    let f = feasibility_report(&cfg, &omega).map_err(|e| e.to_string())?;
    let ratios: Vec<String> = f.axes.iter().map(|a| format!("{} {:.3e}", a.axis, a.ratio)).collect();
    let evaluated = f.axes.len() == 3 && f.axes.iter().all(|a| a.ratio.is_finite());
    check(
        identity && scal < 1e-12 && ss.colocated && evaluated,
        format!(
            "G2 = G1/2 + Gphi exact: {identity}; M^2, Re Y scaling {scal:.1e} (tol 1e-12); sweet spot colocated: {} (f1 {:.5} vs {:.5}); default 3+1D T2 {:.4e} us, T2/transition {}; claim (> 3 on all axes) satisfied: {}",
            ss.colocated,
            ss.f1[ss.gap_extremum],
            ss.f1[ss.gamma_phi_minimum],
            f.t2_us,
            ratios.join(", "),
            f.claim_satisfied
        ),
    )
}

fn c10_determinism() -> Outcome {
    let t0 = Instant::now();
    let dirs = [tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap()];
    for d in &dirs {
        let o = std::process::Command::new(env!("CARGO_BIN_EXE_jjdirac"))
            .args(["all", "--out", d.path().to_str().unwrap()])
            .output()
            .map_err(|e| e.to_string())?;
        if !o.status.success() {
            return Err(String::from_utf8_lossy(&o.stderr).to_string());
        }
    }
    let secs = t0.elapsed().as_secs_f64();
    let files = |p: &Path| {
        let mut v: Vec<String> = std::fs::read_dir(p)
            .unwrap()
            .map(|e| e.unwrap().file_name().to_string_lossy().to_string())
            .filter(|n| n.ends_with(".csv"))
            .collect();
        v.sort();
        v
    };
    let names = files(dirs[0].path());
    let same_set = names == files(dirs[1].path());
    let identical = names
        .iter()
        .all(|n| std::fs::read(dirs[0].path().join(n)).unwrap() == std::fs::read(dirs[1].path().join(n)).unwrap());
    let manifest = |p: &Path| {
        let mut v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(p.join("manifest.json")).unwrap()).unwrap();
        v.as_object_mut().unwrap().remove("timings_ms");
        v
    };
    let manifests = manifest(dirs[0].path()) == manifest(dirs[1].path());
    check(
        same_set && identical && manifests && names.len() == 6 && secs < 180.0,
        format!(
            "two 3+1D `all` runs: {} CSVs byte-identical: {identical}, manifests equal modulo timings: {manifests}, {secs:.1} s for both (< 180 s)",
            names.len()
        ),
    )
}

#[test]
fn acceptance_criteria() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("rwa engine exactness", c1_rwa_exactness),
        ("propagator oracle", c2_propagator),
        ("zitterbewegung closed form vs oracle", c3_zitter_oracle),
        ("tremor frequency", c4_tremor_frequency),
        ("dimensional consistency", c5_dimensions),
        ("lorentz boost", c6_boost),
        ("flux-qubit solver", c7_flux_solver),
        ("phase-qubit quantization", c8_phase_qubit),
        ("decoherence identities", c9_decoherence),
        ("determinism", c10_determinism),
    ];
    let mut failed = Vec::new();
    let mut err = std::io::stderr();
    for (i, (name, f)) in criteria.iter().enumerate() {
        let out = std::panic::catch_unwind(f).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())
        });
        let (tag, detail) = match &out {
            Ok(d) => ("PASS", d),
            Err(d) => ("FAIL", d),
        };
        writeln!(err, "{tag} criterion {:>2} {name}: {detail}", i + 1).unwrap();
        if out.is_err() {
            failed.push(i + 1);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
