//! One function per pipeline stage. Each returns its CSV table together
//! with the JSON block that goes into the manifest.

use crate::error::CliError;
use crate::table::{Cell, Table};
use jjdirac_core::config::TimeGrid;
use jjdirac_core::{Axis, SimulationConfig};
use jjdirac_decoherence::{coherence_sweep, feasibility_report, sweet_spot, symmetric_f1, DecoherenceReport};
use jjdirac_diracmap::{map_parameters, standard_defect, DiracParameters, MappedDirac};
use jjdirac_dynamics::{
    analyze_tremor, momentum_samples, time_grid, wavepacket_average, zb_closed_form, zb_oracle, DiracSystem,
    DynamicsError, SpinorState, Trajectory,
};
use jjdirac_flux::sweep::{linspace, SPECTRUM_HEADER};
use jjdirac_flux::spectrum_sweep;
use jjdirac_phase::{quantize_all, ModeRole};
use jjdirac_rwa::EffectiveReport;
use serde::Serialize;
use serde_json::{json, Value};

pub type Result<T> = std::result::Result<T, CliError>;

/// Oracle resolution used by the CLI.
pub const ORACLE_STEPS_PER_PERIOD: usize = 64;
pub const SPECTRUM_POINTS: usize = 61;
pub const COHERENCE_POINTS: usize = 21;
pub const COHERENCE_HALF_WIDTH: f64 = 0.01;

/// f1 grid covering [0.32, 0.38] plus the symmetric and operating points of
/// every configured qubit.
pub fn spectrum_grid(cfg: &SimulationConfig) -> Vec<f64> {
    let (mut lo, mut hi) = (0.32f64, 0.38f64);
    for l in 1..=2 {
        if let Some(p) = cfg.qubit(l) {
            for f in [p.f1, symmetric_f1(p)] {
                lo = lo.min(f - 0.01);
                hi = hi.max(f + 0.01);
            }
        }
    }
    linspace(lo, hi, SPECTRUM_POINTS)
}

pub fn spectrum(cfg: &SimulationConfig) -> Result<(Table, Value)> {
    let mut header = vec!["qubit"];
    header.extend(SPECTRUM_HEADER.split(','));
    let mut t = Table::new("spectrum", &header);
    let grid = spectrum_grid(cfg);
    let n = &cfg.numerics;
    let mut block = serde_json::Map::new();
    for l in 1..=2u8 {
        let Some(p) = cfg.qubit(l) else { continue };
        let rows = spectrum_sweep(p, &grid, n.n_max, n.current_correction)?;
        let (imin, _) = rows
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.gap.total_cmp(&b.1.gap))
            .expect("non-empty grid");
        block.insert(
            format!("qubit{l}"),
            json!({
                "f1_min_gap": rows[imin].f1,
                "min_gap_ghz": rows[imin].gap,
                "symmetric_f1": symmetric_f1(p),
            }),
        );
        for r in rows {
            let mut row: Vec<Cell> = vec![Cell::Int(l as i64)];
            row.extend(r.values().into_iter().map(Cell::Num));
            t.push(row);
        }
    }
    block.insert("f1_grid".into(), json!([grid[0], grid[grid.len() - 1], grid.len()]));
    Ok((t, Value::Object(block)))
}

fn role_name(r: ModeRole) -> &'static str {
    match r {
        ModeRole::Phase => "phase",
        ModeRole::SharedP => "shared",
        ModeRole::SharedO => "shared_o",
    }
}

pub fn quantize(cfg: &SimulationConfig) -> Result<(Table, Value)> {
    let table = quantize_all(cfg)?;
    let mut t = Table::new(
        "modes",
        &["mode", "role", "lambda", "omega_ghz", "stiffness_ghz", "ec_ghz", "ej_ghz", "alt_lambda", "alt_omega_ghz"],
    );
    let mut block = serde_json::Map::new();
    for (name, m) in table.rows() {
        let alt = Axis::ALL
            .iter()
            .find(|a| a.upper() == name)
            .and_then(|a| table.bus_alt[a.index()]);
        t.push(vec![
            name.clone().into(),
            role_name(m.role).into(),
            m.lambda.into(),
            m.omega_ghz.into(),
            m.stiffness_ghz.into(),
            m.ec_ghz.into(),
            m.ej_ghz.into(),
            alt.map_or(f64::NAN, |a| a.lambda).into(),
            alt.map_or(f64::NAN, |a| a.omega_ghz).into(),
        ]);
        block.insert(name, json!({ "lambda": m.lambda, "omega_ghz": m.omega_ghz }));
    }
    let elp: Vec<Value> = table.e_lp.iter().map(|v| json!(v)).collect();
    block.insert("e_lp_ghz".into(), Value::Array(elp));
    Ok((t, Value::Object(block)))
}

pub fn effective(cfg: &SimulationConfig) -> Result<EffectiveReport> {
    Ok(jjdirac_rwa::effective_hamiltonian(cfg)?)
}

pub fn couplings_table(r: &EffectiveReport) -> (Table, Value) {
    let mut t = Table::new("couplings", &["stage", "source", "term", "re_mhz", "im_mhz", "contributions"]);
    for s in &r.stages {
        for cpl in &s.couplings {
            t.push(vec![
                s.name.clone().into(),
                "engine".into(),
                cpl.word_text.clone().into(),
                cpl.coefficient_mhz[0].into(),
                cpl.coefficient_mhz[1].into(),
                cpl.provenance.len().into(),
            ]);
        }
    }
    for chk in &r.checks {
        for (term, v) in &chk.closed_form_mhz {
            t.push(vec![
                chk.stage.clone().into(),
                "closed_form".into(),
                term.clone().into(),
                v[0].into(),
                v[1].into(),
                Cell::Int(0),
            ]);
        }
    }
    let checks: Vec<Value> = r
        .checks
        .iter()
        .map(|c| json!({"stage": c.stage, "hierarchy_deviation": c.hierarchy_deviation, "exact_deviation": c.exact_deviation}))
        .collect();
    let block = json!({
        "closed_form_checks": checks,
        "resonance_max_residual_ghz": r.resonance.max_residual(),
        "hierarchy_warnings": r.resonance.warnings.iter().map(|w| w.to_string()).collect::<Vec<_>>(),
        "drives": r.inputs.drives.iter().map(|d| json!({
            "qubit": d.id.qubit, "line": d.id.line, "amplitude": d.amplitude,
            "omega_ghz": d.omega_ghz, "phase": d.phase,
        })).collect::<Vec<_>>(),
    });
    (t, block)
}

pub fn dirac(r: &EffectiveReport, cfg: &SimulationConfig) -> Result<MappedDirac> {
    Ok(map_parameters(r, cfg.dirac.cp0_mhz)?)
}

pub fn dirac_table(m: &MappedDirac) -> (Table, Value) {
    let p = &m.params;
    let mut t = Table::new("dirac", &["quantity", "value", "unit", "source"]);
    let mut row = |q: &str, v: f64, unit: &str, src: &str| {
        t.push(vec![q.into(), v.into(), unit.into(), src.into()]);
    };
    row("mc2", p.mc2, "MHz", "mass term after D(theta) and boost");
    row("cp0", p.cp0, "MHz", "config dirac.cp0_mhz");
    let dim_axes = Axis::for_dimension(p.dimension);
    for &a in dim_axes {
        let i = a.index();
        let l = a.lower();
        row(&format!("cp_{l}"), p.cp[i], "MHz", "momentum coupling at unit quadrature");
        row(&format!("omega_tilde_{l}"), p.omega_tilde[i], "MHz", "|cp|");
        row(&format!("delta_{l}"), p.delta_p[i], "1", "phase-mode lambda");
        row(&format!("c_{l}"), p.c[i], "delta*MHz", "2 delta omega_tilde");
        if let Some(v) = m.printed.cp[i] {
            row(&format!("printed_cp_{l}"), v, "MHz", "literal closed form");
        }
    }
    row("omega", p.omega, "MHz", "sqrt(a^2 + b^2) of the mass terms");
    row("theta", p.theta, "rad", "D(theta) angle");
    row("az", p.az, "1", "boost rapidity");
    row("printed_mc2", m.printed.mc2, "MHz", "literal closed form");
    if let Some(v) = m.printed.cp0 {
        row("printed_cp0", v, "MHz", "literal closed form");
    }
    row("sigma_y_residual", m.sigma_y_residual, "1", "relative to omega");
    row("unmapped", m.unmapped_mhz, "MHz", "largest coefficient without a Dirac generator");
    row("standard_defect", standard_defect(m), "MHz", "reassembled vs mapped");
    if let Some(v) = m.cp0_residual {
        row("cp0_residual", v, "MHz", "generator left after boost");
    }
    let block = json!({
        "parameters": p,
        "printed": m.printed,
        "boost_error": m.boost_error,
    });
    (t, block)
}

/// Where zitter takes (mc², cp) from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DiracSource {
    /// The config's `[dirac]` section (stand-alone run).
    ConfigTargets,
    /// The mapped circuit pipeline.
    Mapped,
}

#[derive(Debug, Clone, Serialize)]
pub struct AxisAnalysis {
    pub axis: String,
    pub expected_frequency_mhz: f64,
    pub frequency_mhz: Option<f64>,
    pub amplitude: Option<f64>,
    pub drift: Option<f64>,
    pub periods: Option<f64>,
    pub note: Option<String>,
    /// Multiply positions by this to get zero-point lengths (mapped runs).
    pub delta_per_c_us: Option<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ZitterRun {
    pub source: DiracSource,
    pub engine: String,
    pub mc2: f64,
    pub cp: [f64; 3],
    pub spinor: Vec<f64>,
    pub samples: usize,
    #[serde(skip)]
    pub trajectory: Trajectory,
    pub max_imag: f64,
    pub analysis: Vec<AxisAnalysis>,
    /// max relative |oracle − closed form| when both ran.
    pub oracle_deviation: Option<f64>,
    pub oracle_warnings: Vec<String>,
}

fn spinor_for(cfg: &SimulationConfig) -> Vec<f64> {
    let n = if cfg.dimension == 1 { 2 } else { 4 };
    cfg.dirac.spinor.iter().copied().take(n).collect()
}

/// Single-momentum trajectory with the chosen engine. A singular H goes to
/// the oracle whatever was asked.
fn point_trajectory(
    sys: &DiracSystem,
    psi: &SpinorState,
    times: &[f64],
    oracle: bool,
) -> std::result::Result<(Trajectory, Option<f64>, Option<String>), DynamicsError> {
    let closed = zb_closed_form(sys, psi, times);
    match (oracle, closed) {
        (false, Ok(t)) => Ok((t, None, None)),
        (_, Err(DynamicsError::SingularHamiltonian { .. })) => {
            let r = zb_oracle(sys, psi, times, ORACLE_STEPS_PER_PERIOD)?;
            Ok((r.trajectory, None, r.warning))
        }
        (true, Ok(cf)) => {
            let r = zb_oracle(sys, psi, times, ORACLE_STEPS_PER_PERIOD)?;
            let d = r.trajectory.relative_distance(&cf);
            Ok((r.trajectory, Some(d), r.warning))
        }
        (_, Err(e)) => Err(e),
    }
}

pub fn zitter(
    cfg: &SimulationConfig,
    mapped: Option<&DiracParameters>,
    oracle: bool,
) -> Result<ZitterRun> {
    let (source, mc2, cp) = match mapped {
        Some(p) => (DiracSource::Mapped, p.mc2, p.cp),
        None => (
            DiracSource::ConfigTargets,
            cfg.dirac.mc2_mhz,
            [cfg.dirac.cpx_mhz, cfg.dirac.cpy_mhz, cfg.dirac.cpz_mhz],
        ),
    };
    let dim = cfg.dimension;
    let mut mean = [0.0; 3];
    for &a in cfg.axes() {
        mean[a.index()] = cp[a.index()];
    }
    let spinor = spinor_for(cfg);
    let psi = SpinorState::from_real(&spinor)?;
    let TimeGrid { t_max_us, steps } = cfg.time;
    let times = time_grid(t_max_us, steps);
    let samples = momentum_samples(&cfg.wavepacket, mean);
    let extra = std::sync::Mutex::new(Vec::new());
    let traj = wavepacket_average(&samples, |p| {
        let sys = DiracSystem::standard(mc2, p, dim);
        let (t, dev, warn) = point_trajectory(&sys, &psi, &times, oracle)?;
        extra.lock().expect("lock").push((p, dev, warn));
        Ok(t)
    })?;
    // collected in completion order; sort so the summary is reproducible
    let mut extra = extra.into_inner().expect("lock");
    extra.sort_by(|a, b| a.0.iter().zip(&b.0).map(|(x, y)| x.total_cmp(y)).find(|o| o.is_ne()).unwrap_or(std::cmp::Ordering::Equal));
    let oracle_deviation = extra.iter().filter_map(|e| e.1).reduce(f64::max);
    let mut oracle_warnings: Vec<String> = extra.iter().filter_map(|e| e.2.clone()).collect();
    oracle_warnings.dedup();
    let any_singular = mc2 == 0.0 && mean.iter().all(|v| *v == 0.0);
    let engine = if oracle || any_singular { "oracle" } else { "closed_form" };

    let e_mean = (mc2 * mc2 + mean.iter().map(|v| v * v).sum::<f64>()).sqrt();
    let analysis = cfg
        .axes()
        .iter()
        .map(|&a| {
            let i = a.index();
            let delta_per_c_us = mapped.map(|p| 4.0 * std::f64::consts::PI * p.omega_tilde[i]);
            let mut out = AxisAnalysis {
                axis: a.lower().into(),
                expected_frequency_mhz: 2.0 * e_mean,
                frequency_mhz: None,
                amplitude: None,
                drift: None,
                periods: None,
                note: None,
                delta_per_c_us,
            };
            match analyze_tremor(&traj.times, &traj.axis(i)) {
                Ok(f) => {
                    out.frequency_mhz = Some(f.frequency);
                    out.amplitude = Some(f.amplitude);
                    out.drift = Some(f.drift);
                    out.periods = Some(f.periods);
                }
                Err(e) => out.note = Some(e.to_string()),
            }
            out
        })
        .collect();
    Ok(ZitterRun {
        source,
        engine: engine.into(),
        mc2,
        cp: mean,
        spinor,
        samples: samples.len(),
        max_imag: traj.max_imag,
        trajectory: traj,
        analysis,
        oracle_deviation,
        oracle_warnings,
    })
}

pub fn trajectory_table(z: &ZitterRun) -> Table {
    let mut t = Table::new("trajectory", &["t_us", "x", "y", "z"]);
    for (time, p) in z.trajectory.times.iter().zip(&z.trajectory.position) {
        t.push(vec![(*time).into(), p[0].into(), p[1].into(), p[2].into()]);
    }
    t
}

pub struct DecohereRun {
    pub report: DecoherenceReport,
    pub table: Table,
    pub block: Value,
}

/// Budget against the mapped couplings; the CSV is qubit 1's T1, T2 along f1.
pub fn decohere(cfg: &SimulationConfig, mapped: &DiracParameters) -> Result<DecohereRun> {
    let omega: Vec<(Axis, f64)> = cfg.axes().iter().map(|&a| (a, mapped.omega_tilde[a.index()])).collect();
    let report = feasibility_report(cfg, &omega)?;
    let p = cfg.qubit(1).ok_or_else(|| CliError::Config("qubit1 missing".into()))?;
    let n = &cfg.numerics;
    let grid = linspace(p.f1 - COHERENCE_HALF_WIDTH, p.f1 + COHERENCE_HALF_WIDTH, COHERENCE_POINTS);
    let rows = coherence_sweep(p, &grid, n.n_max, n.current_correction, &cfg.noise)?;
    let mut table = Table::new("coherence", &["f1", "t1_us", "t2_us"]);
    for r in &rows {
        table.push(vec![r.f1.into(), r.t1_us.into(), r.t2_us.into()]);
    }
    let sym = symmetric_f1(p);
    let sweet_grid = linspace(sym - 0.01, sym + 0.01, COHERENCE_POINTS);
    let ss = sweet_spot(p, &sweet_grid, n.n_max, &cfg.noise)?;
    let block = json!({
        "report": report,
        "sweet_spot": {
            "f1_gap_extremum": ss.f1[ss.gap_extremum],
            "f1_gamma_phi_minimum": ss.f1[ss.gamma_phi_minimum],
            "colocated": ss.colocated,
        },
    });
    Ok(DecohereRun { report, table, block })
}
