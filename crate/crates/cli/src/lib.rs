//! Command-line front end: subcommands, CSV artifacts, run manifests,
//! parameter sweeps and golden-file comparison.

pub mod error;
pub mod golden;
pub mod pipeline;
pub mod sweep;
pub mod table;

use clap::{Parser, ValueEnum};
use error::CliError;
use jjdirac_core::config::load_config_report;
use jjdirac_core::SimulationConfig;
use pipeline::Result;
use serde::Serialize;
use serde_json::{json, Value};
use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::time::Instant;
use table::Table;

pub use golden::{golden_check, GoldenReport, Tolerance};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Subcommand {
    Spectrum,
    Quantize,
    Effective,
    Dirac,
    Zitter,
    Decohere,
    Sweep,
    All,
}

impl Subcommand {
    pub fn name(self) -> &'static str {
        match self {
            Subcommand::Spectrum => "spectrum",
            Subcommand::Quantize => "quantize",
            Subcommand::Effective => "effective",
            Subcommand::Dirac => "dirac",
            Subcommand::Zitter => "zitter",
            Subcommand::Decohere => "decohere",
            Subcommand::Sweep => "sweep",
            Subcommand::All => "all",
        }
    }
}

#[derive(Debug, Clone, Parser)]
#[command(name = "jjdirac", version, about = "Josephson-circuit Dirac simulator")]
pub struct Args {
    pub command: Subcommand,
    /// TOML configuration; without it the defaults for --dimension are used.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long, default_value = "out")]
    pub out: PathBuf,
    /// Use the velocity-integration oracle for trajectories.
    #[arg(long)]
    pub oracle: bool,
    /// KEY=START:STOP:N, e.g. qubit1.f1=0.33:0.36:81.
    #[arg(long)]
    pub sweep: Option<String>,
    /// Recorded in the manifest; only random property draws use it.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Compare the written artifacts against this directory.
    #[arg(long)]
    pub golden: Option<PathBuf>,
    #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u8).range(1..=3))]
    pub dimension: u8,
}

/// A loaded configuration and what the document said explicitly.
#[derive(Debug, Clone)]
pub struct Context {
    pub config: SimulationConfig,
    pub defaulted: Vec<String>,
    /// The document had its own `[dirac]` section.
    pub dirac_explicit: bool,
    pub source: String,
}

pub fn load_context(path: Option<&Path>, dimension: u8) -> Result<Context> {
    let (doc, source) = match path {
        Some(p) => {
            let doc = std::fs::read_to_string(p).map_err(|e| CliError::Config(format!("{}: {e}", p.display())))?;
            let name = p.file_name().map(|s| s.to_string_lossy().to_string()).unwrap_or_default();
            (doc, name)
        }
        None => (format!("dimension = {dimension}\n"), format!("defaults(dimension={dimension})")),
    };
    let report = load_config_report(&doc)?;
    let dirac_explicit = doc
        .parse::<toml::Table>()
        .map(|t| t.contains_key("dirac"))
        .unwrap_or(false);
    Ok(Context {
        config: report.config,
        defaulted: report.defaulted,
        dirac_explicit,
        source,
    })
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct ArtifactEntry {
    pub file: String,
    pub sha256: String,
    pub rows: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct RunManifest {
    pub tool: String,
    pub version: String,
    pub subcommand: String,
    pub config_source: String,
    pub config_sha256: String,
    pub config: Value,
    pub defaulted_sections: Vec<String>,
    pub seed: Option<u64>,
    pub oracle: bool,
    pub sweep: Option<String>,
    pub derived: BTreeMap<String, Value>,
    pub open_questions: Vec<String>,
    pub artifacts: Vec<ArtifactEntry>,
    pub timings_ms: BTreeMap<String, f64>,
}

pub const MANIFEST_FILE: &str = "manifest.json";

/// Collects tables, derived blocks and timings while stages run.
struct Run {
    tables: Vec<Table>,
    derived: BTreeMap<String, Value>,
    flags: Vec<String>,
    timings: BTreeMap<String, f64>,
}

impl Run {
    fn timed<T>(&mut self, stage: &str, f: impl FnOnce() -> Result<T>) -> Result<T> {
        let t0 = Instant::now();
        let out = f();
        self.timings.insert(stage.into(), t0.elapsed().as_secs_f64() * 1e3);
        out
    }

    fn flag(&mut self, s: &str) {
        if !self.flags.iter().any(|f| f == s) {
            self.flags.push(s.into());
        }
    }
}

fn open_question_flags(ctx: &Context, run: &mut Run, uses_dynamics: bool, uses_noise: bool) {
    let inverted = jjdirac_core::config::default_phase(jjdirac_core::Axis::X).ej_over_ec;
    let uses_inverted = ctx.config.axes().iter().any(|&a| ctx.config.phase(a).is_some_and(|p| p.ej_over_ec == inverted));
    if ctx.defaulted.iter().any(|s| s.starts_with("phase_")) || uses_inverted {
        run.flag("phase E_J/E_C of 1e-6 read as 1e6");
    }
    if uses_dynamics {
        if !ctx.dirac_explicit {
            run.flag("initial spinor unspecified: default (1,0,0,0)");
        }
        run.flag("wavepacket construction unspecified: quantile-sampled Gaussian");
    }
    if uses_noise {
        run.flag("noise units under-specified: A in GHz per flux quantum, alpha dimensionless; absolute T1/T2 not reproducible");
        run.flag("transition time convention: 1/(4 omega_tilde), half sideband Rabi cycle");
    }
}

/// Run one subcommand and write its artifacts plus manifest into `out`.
pub fn execute(args: &Args) -> Result<RunManifest> {
    let ctx = load_context(args.config.as_deref(), args.dimension)?;
    let cfg = &ctx.config;
    if args.command == Subcommand::Sweep && args.sweep.is_none() {
        return Err(CliError::Usage("sweep needs --sweep KEY=START:STOP:N".into()));
    }
    if args.command != Subcommand::Sweep && args.sweep.is_some() {
        return Err(CliError::Usage("--sweep only applies to the sweep subcommand".into()));
    }
    let mut run = Run {
        tables: Vec::new(),
        derived: BTreeMap::new(),
        flags: Vec::new(),
        timings: BTreeMap::new(),
    };
    use Subcommand as S;
    let cmd = args.command;
    let wants = |s: S| cmd == s || cmd == S::All;

    if wants(S::Spectrum) {
        let (t, b) = run.timed("spectrum", || pipeline::spectrum(cfg))?;
        run.tables.push(t);
        run.derived.insert("spectrum".into(), b);
    }
    if wants(S::Quantize) {
        let (t, b) = run.timed("quantize", || pipeline::quantize(cfg))?;
        run.tables.push(t);
        run.derived.insert("modes".into(), b);
    }
    let zitter_standalone = cmd == S::Zitter && ctx.dirac_explicit;
    let needs_effective = matches!(cmd, S::Effective | S::Dirac | S::Decohere | S::All) || (cmd == S::Zitter && !zitter_standalone);
    let mut mapped = None;
    if needs_effective {
        let report = run.timed("effective", || pipeline::effective(cfg))?;
        if wants(S::Effective) {
            let (t, b) = pipeline::couplings_table(&report);
            run.tables.push(t);
            run.derived.insert("couplings".into(), b);
        }
        if cmd != S::Effective {
            let m = run.timed("dirac", || pipeline::dirac(&report, cfg))?;
            let (t, b) = pipeline::dirac_table(&m);
            if wants(S::Dirac) {
                run.tables.push(t);
            }
            run.derived.insert("dirac".into(), b);
            mapped = Some(m.params);
        }
    }
    if wants(S::Zitter) {
        let source = if ctx.dirac_explicit { None } else { mapped.as_ref() };
        let z = run.timed("zitter", || pipeline::zitter(cfg, source, args.oracle))?;
        run.tables.push(pipeline::trajectory_table(&z));
        run.derived.insert("zitter".into(), serde_json::to_value(&z).expect("serializable"));
    }
    if wants(S::Decohere) {
        let m = mapped.as_ref().expect("mapped before decohere");
        let d = run.timed("decohere", || pipeline::decohere(cfg, m))?;
        run.tables.push(d.table);
        run.derived.insert("decoherence".into(), d.block);
    }
    if cmd == S::Sweep {
        let spec = sweep::SweepSpec::parse(args.sweep.as_deref().unwrap_or_default())?;
        let (t, b) = run.timed("sweep", || sweep::run_sweep(cfg, &spec, args.oracle))?;
        run.tables.push(t);
        run.derived.insert("sweep".into(), b);
    }
    open_question_flags(
        &ctx,
        &mut run,
        matches!(cmd, S::Zitter | S::All) || (cmd == S::Sweep && args.sweep.as_deref().unwrap_or("").starts_with("dirac.")),
        matches!(cmd, S::Decohere | S::All),
    );

    std::fs::create_dir_all(&args.out)?;
    let mut artifacts = Vec::new();
    for t in &run.tables {
        let (file, sha256, rows) = t.write(&args.out)?;
        artifacts.push(ArtifactEntry { file, sha256, rows });
    }
    let manifest = RunManifest {
        tool: "jjdirac".into(),
        version: env!("CARGO_PKG_VERSION").into(),
        subcommand: cmd.name().into(),
        config_source: ctx.source.clone(),
        config_sha256: cfg.checksum(),
        config: serde_json::to_value(cfg).expect("config serializes"),
        defaulted_sections: ctx.defaulted.clone(),
        seed: args.seed,
        oracle: args.oracle,
        sweep: args.sweep.clone(),
        derived: run.derived,
        open_questions: run.flags,
        artifacts,
        timings_ms: run.timings,
    };
    let text = serde_json::to_string_pretty(&manifest).expect("manifest serializes");
    std::fs::write(args.out.join(MANIFEST_FILE), text + "\n")?;

    if let Some(g) = &args.golden {
        let report = golden_check(&args.out, g, &BTreeMap::new())?;
        if !report.ok() {
            return Err(CliError::Golden(report.summary()));
        }
    }
    Ok(manifest)
}

/// Parse arguments, run, and report. Returns the process exit code.
pub fn run_cli<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let args = match Args::try_parse_from(argv) {
        Ok(a) => a,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return 0;
            }
            let msg = e.to_string();
            let first = msg.lines().find(|l| !l.trim().is_empty()).unwrap_or("bad arguments");
            let err = CliError::Usage(first.trim_start_matches("error: ").to_string());
            eprintln!("{}", err.line());
            return err.exit_code();
        }
    };
    match execute(&args) {
        Ok(m) => {
            for a in &m.artifacts {
                println!("{} rows={} sha256={}", a.file, a.rows, a.sha256);
            }
            println!("{}", json!({"manifest": args.out.join(MANIFEST_FILE)}));
            0
        }
        Err(e) => {
            eprintln!("{}", e.line());
            e.exit_code()
        }
    }
}
