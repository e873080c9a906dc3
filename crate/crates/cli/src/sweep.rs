//! `--sweep KEY=START:STOP:N` over a single numeric config field.

use crate::error::CliError;
use crate::pipeline::{Result, ORACLE_STEPS_PER_PERIOD};
use crate::table::{Cell, Table};
use jjdirac_core::SimulationConfig;
use jjdirac_diracmap::map_parameters;
use jjdirac_dynamics::{analyze_tremor, time_grid, zb_closed_form, zb_oracle, DiracSystem, DynamicsError, SpinorState};
use jjdirac_flux::sweep::linspace;
use jjdirac_rwa::pipeline::{effective_for_inputs, inputs_from_config};
use rayon::prelude::*;
use serde_json::{json, Value};

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub key: String,
    pub start: f64,
    pub stop: f64,
    pub n: usize,
}

impl SweepSpec {
    pub fn parse(s: &str) -> Result<Self> {
        let bad = || CliError::Usage(format!("sweep spec '{s}' is not KEY=START:STOP:N"));
        let (key, range) = s.split_once('=').ok_or_else(bad)?;
        let parts: Vec<&str> = range.split(':').collect();
        if key.is_empty() || parts.len() != 3 {
            return Err(bad());
        }
        let start: f64 = parts[0].trim().parse().map_err(|_| bad())?;
        let stop: f64 = parts[1].trim().parse().map_err(|_| bad())?;
        let n: usize = parts[2].trim().parse().map_err(|_| bad())?;
        if n == 0 || !start.is_finite() || !stop.is_finite() {
            return Err(bad());
        }
        Ok(Self {
            key: key.trim().to_string(),
            start,
            stop,
            n,
        })
    }

    pub fn values(&self) -> Vec<f64> {
        linspace(self.start, self.stop, self.n)
    }

    /// `dirac.*` keys only touch the stand-alone dynamics.
    pub fn is_dynamics(&self) -> bool {
        self.key.starts_with("dirac.")
    }
}

const DYNAMICS_HEADER: [&str; 10] = [
    "value",
    "mc2_mhz",
    "cp_mhz",
    "expected_frequency_mhz",
    "frequency_mhz",
    "relative_error",
    "amplitude",
    "drift",
    "oracle_deviation",
    "status",
];

const PIPELINE_HEADER: [&str; 7] = ["value", "gap_ghz", "mc2_mhz", "cp_x_mhz", "cp_y_mhz", "cp_z_mhz", "status"];

fn dynamics_row(cfg: &SimulationConfig, oracle: bool) -> Result<Vec<Cell>> {
    let d = &cfg.dirac;
    let mut cp = [0.0; 3];
    for &a in cfg.axes() {
        cp[a.index()] = cfg.cp_target(a);
    }
    let sys = DiracSystem::standard(d.mc2_mhz, cp, cfg.dimension);
    let n = sys.size();
    let psi = SpinorState::from_real(&d.spinor[..n.min(d.spinor.len())])?;
    let times = time_grid(cfg.time.t_max_us, cfg.time.steps);
    let (traj, dev) = match (oracle, zb_closed_form(&sys, &psi, &times)) {
        (false, Ok(t)) => (t, f64::NAN),
        (true, Ok(cf)) => {
            let o = zb_oracle(&sys, &psi, &times, ORACLE_STEPS_PER_PERIOD)?.trajectory;
            let dev = o.relative_distance(&cf);
            (o, dev)
        }
        (_, Err(DynamicsError::SingularHamiltonian { .. })) => {
            (zb_oracle(&sys, &psi, &times, ORACLE_STEPS_PER_PERIOD)?.trajectory, f64::NAN)
        }
        (_, Err(e)) => return Err(e.into()),
    };
    let p2: f64 = cp.iter().map(|v| v * v).sum();
    let expected = 2.0 * (d.mc2_mhz * d.mc2_mhz + p2).sqrt();
    let fit = analyze_tremor(&traj.times, &traj.axis(0))?;
    Ok(vec![
        d.mc2_mhz.into(),
        p2.sqrt().into(),
        expected.into(),
        fit.frequency.into(),
        ((fit.frequency - expected) / expected).into(),
        fit.amplitude.into(),
        fit.drift.into(),
        dev.into(),
        "ok".into(),
    ])
}

fn pipeline_row(cfg: &SimulationConfig) -> Result<Vec<Cell>> {
    let up = inputs_from_config(cfg)?;
    let gap = up
        .qubits
        .iter()
        .find(|q| q.l == 1)
        .map(|q| q.energies[1] - q.energies[0])
        .unwrap_or(f64::NAN);
    let report = effective_for_inputs(&up.inputs, cfg)?;
    let m = map_parameters(&report, cfg.dirac.cp0_mhz)?;
    let p = m.params;
    Ok(vec![
        gap.into(),
        p.mc2.into(),
        p.cp[0].into(),
        p.cp[1].into(),
        p.cp[2].into(),
        "ok".into(),
    ])
}

/// Every grid point runs independently; failures become rows whose status
/// is the error category.
pub fn run_sweep(cfg: &SimulationConfig, spec: &SweepSpec, oracle: bool) -> Result<(Table, Value)> {
    // reject unknown keys up front rather than emitting a table of errors
    cfg.with_override(&spec.key, spec.start)?;
    let values = spec.values();
    let dynamics = spec.is_dynamics();
    let width = if dynamics { DYNAMICS_HEADER.len() } else { PIPELINE_HEADER.len() };
    let rows: Vec<Vec<Cell>> = values
        .par_iter()
        .map(|&v| {
            let out = cfg.with_override(&spec.key, v).map_err(CliError::from).and_then(|c| {
                if dynamics {
                    dynamics_row(&c, oracle)
                } else {
                    pipeline_row(&c)
                }
            });
            let mut row = vec![Cell::Num(v)];
            match out {
                Ok(r) => row.extend(r),
                Err(e) => {
                    row.extend((0..width - 2).map(|_| Cell::Num(f64::NAN)));
                    row.push(Cell::Text(e.category().into()));
                }
            }
            row
        })
        .collect();
    let mut t = Table::new("sweep", if dynamics { &DYNAMICS_HEADER } else { &PIPELINE_HEADER });
    let mut failed = 0;
    for r in rows {
        if !matches!(r.last(), Some(Cell::Text(s)) if s == "ok") {
            failed += 1;
        }
        t.push(r);
    }
    let block = json!({
        "key": spec.key,
        "start": spec.start,
        "stop": spec.stop,
        "points": spec.n,
        "kind": if dynamics { "dynamics" } else { "pipeline" },
        "failed_points": failed,
    });
    Ok((t, block))
}
