//! The `simulate`, `classify` and `reproduce` commands as library calls.
//!
//! Each command writes its files into `RunConfig::output_dir` (created if
//! missing) and returns what it wrote so callers can inspect results
//! without re-reading files.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::{Instant, SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};

use crate::analysis::{classify, summarize_loop, LoopSummary, MemoryVerdict};
use crate::config::RunConfig;
use crate::device::DeviceKind;
use crate::error::{Error, Result};
use crate::output::{loops_plot_script, resistance_plot_script, trace_table, write_text, Table};
use crate::sim::{simulate, steady_state_period, sweep_frequencies, Trace};
use crate::waveform::Waveform;

/// Exit status for success, or a memristive verdict.
pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
/// A verdict other than memristive.
pub const EXIT_NOT_MEMRISTIVE: i32 = 2;
pub const EXIT_RUNTIME: i32 = 3;

/// Ripple added to a plain sine for the compound-drive figure.
const FIG1B_RIPPLE_V: f64 = 0.3;
const FIG1B_RIPPLE_FRACTION: f64 = 0.1;
/// Vertical separation of the resistance curves in the figure scripts.
const PLOT_OFFSET_OHM: f64 = 1000.0;

impl Error {
    /// Process exit status for this error.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse { .. }
            | Error::Validation { .. }
            | Error::InvalidParameter { .. }
            | Error::InvalidConfig(_) => EXIT_USAGE,
            _ => EXIT_RUNTIME,
        }
    }
}

/// Contents of `summary.json`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SummaryReport {
    pub tool_version: String,
    pub command: String,
    pub config: RunConfig,
    pub loops: Vec<LoopSummary>,
    pub verdict: Option<MemoryVerdict>,
    pub generated_unix_s: u64,
    pub duration_s: f64,
}

impl SummaryReport {
    fn new(command: &str, config: &RunConfig) -> Self {
        SummaryReport {
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            command: command.to_string(),
            config: config.clone(),
            loops: Vec::new(),
            verdict: None,
            generated_unix_s: SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map_or(0, |d| d.as_secs()),
            duration_s: 0.0,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })
    }

    /// Exit status encoding the verdict; [`EXIT_OK`] when there is none.
    pub fn exit_code(&self) -> i32 {
        match &self.verdict {
            Some(v) if !v.label.is_memristive() => EXIT_NOT_MEMRISTIVE,
            _ => EXIT_OK,
        }
    }

    fn write(&self, dir: &Path) -> Result<PathBuf> {
        let path = dir.join("summary.json");
        write_text(&path, &self.to_json())?;
        Ok(path)
    }
}

fn prepare_dir(dir: &Path) -> Result<()> {
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))
}

#[derive(Debug)]
pub struct SimulateOutput {
    pub trace: Trace,
    pub report: SummaryReport,
    pub trace_path: PathBuf,
    pub summary_path: PathBuf,
}

/// Runs the configured device and writes `trace.csv` and `summary.json`.
///
/// When the run spans at least two periods the summary carries the
/// final-period loop.
pub fn cmd_simulate(cfg: &RunConfig) -> Result<SimulateOutput> {
    let started = Instant::now();
    cfg.validate()?;
    let device = cfg.device_model()?;
    let trace = simulate(&device, &cfg.waveform, &cfg.sim_config())?;

    let mut report = SummaryReport::new("simulate", cfg);
    if let Ok(ss) = steady_state_period(&trace, cfg.period()) {
        report
            .loops
            .push(summarize_loop(1.0, &ss, device.level_gap())?);
    }

    prepare_dir(&cfg.output_dir)?;
    let trace_path = cfg.output_dir.join("trace.csv");
    trace_table(&trace).write(&trace_path)?;
    report.duration_s = started.elapsed().as_secs_f64();
    let summary_path = report.write(&cfg.output_dir)?;
    Ok(SimulateOutput {
        trace,
        report,
        trace_path,
        summary_path,
    })
}

/// Sweeps the configured device over `sweep_factors` and labels it.
pub fn run_classification(cfg: &RunConfig) -> Result<(Vec<LoopSummary>, MemoryVerdict)> {
    cfg.validate()?;
    let device = cfg.device_model()?;
    let sweep = sweep_frequencies(
        &device,
        &cfg.waveform,
        &cfg.sweep_factors,
        &cfg.sweep_options(),
    )?;
    let loops = sweep
        .iter()
        .map(|p| summarize_loop(p.factor, &p.trace, device.level_gap()))
        .collect::<Result<Vec<_>>>()?;
    let verdict = classify(&loops)?;
    Ok((loops, verdict))
}

/// [`run_classification`] plus `summary.json`.
pub fn cmd_classify(cfg: &RunConfig) -> Result<SummaryReport> {
    let started = Instant::now();
    let (loops, verdict) = run_classification(cfg)?;
    let mut report = SummaryReport::new("classify", cfg);
    report.loops = loops;
    report.verdict = Some(verdict);
    prepare_dir(&cfg.output_dir)?;
    report.duration_s = started.elapsed().as_secs_f64();
    report.write(&cfg.output_dir)?;
    Ok(report)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Figure {
    /// Resistance traces under the plain sine.
    Fig1a,
    /// Resistance traces under the sine with ripple.
    Fig1b,
    /// I-V loops across frequencies.
    Fig2,
}

impl FromStr for Figure {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "fig1a" => Ok(Figure::Fig1a),
            "fig1b" => Ok(Figure::Fig1b),
            "fig2" => Ok(Figure::Fig2),
            other => Err(format!(
                "unknown figure `{other}` (expected fig1a, fig1b or fig2)"
            )),
        }
    }
}

impl fmt::Display for Figure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(match self {
            Figure::Fig1a => "fig1a",
            Figure::Fig1b => "fig1b",
            Figure::Fig2 => "fig2",
        })
    }
}

#[derive(Debug)]
pub struct ReproduceOutput {
    pub files: Vec<PathBuf>,
    /// Traces per model: the whole run for the time-domain figures, the
    /// steady-state period at each factor for the loop figure.
    pub traces: Vec<(DeviceKind, f64, Trace)>,
}

/// Drive for the time-domain figures, taking amplitude and period from the
/// configured waveform.
pub fn figure_waveform(cfg: &RunConfig, figure: Figure) -> Waveform {
    let (amplitude, period) = (cfg.waveform.amplitude(), cfg.waveform.period());
    match (figure, cfg.waveform) {
        (Figure::Fig1b, w @ Waveform::Compound { .. }) => w,
        (Figure::Fig1b, _) => Waveform::Compound {
            amplitude,
            period,
            ripple_amplitude: FIG1B_RIPPLE_V,
            ripple_period_fraction: FIG1B_RIPPLE_FRACTION,
        },
        _ => Waveform::Sine { amplitude, period },
    }
}

pub fn cmd_reproduce(cfg: &RunConfig, figure: Figure) -> Result<ReproduceOutput> {
    cfg.validate()?;
    prepare_dir(&cfg.output_dir)?;
    match figure {
        Figure::Fig1a | Figure::Fig1b => reproduce_resistance_figure(cfg, figure),
        Figure::Fig2 => reproduce_loops(cfg),
    }
}

fn reproduce_resistance_figure(cfg: &RunConfig, figure: Figure) -> Result<ReproduceOutput> {
    let w = figure_waveform(cfg, figure);
    let sim = cfg.sim_config();
    let mut traces = Vec::new();
    for kind in DeviceKind::ALL {
        let dev = cfg.device_model_of(kind)?;
        traces.push((kind, 1.0, simulate(&dev, &w, &sim)?));
    }
    let base = &traces[0].2;
    let phase: Vec<f64> = base.times.iter().map(|t| t / w.period()).collect();
    let mut table = Table::new()
        .column("t", &base.times)
        .column("t_over_T", &phase)
        .column("V", &base.voltage)
        .column("Vdot", &base.v_dot);
    for (kind, _, tr) in &traces {
        table = table
            .column(format!("R_{kind}"), &tr.resistance)
            .column(format!("I_{kind}"), &tr.current);
    }
    if let Some(x) = &traces[2].2.state_x {
        table = table.column("x_memristor", x);
    }

    let csv_name = format!("{figure}.csv");
    let csv = cfg.output_dir.join(&csv_name);
    table.write(&csv)?;
    let title = match figure {
        Figure::Fig1a => "Resistance under a sinusoidal drive",
        _ => "Resistance under a sinusoidal drive with ripple",
    };
    let script = cfg.output_dir.join(format!("{figure}.gp"));
    write_text(
        &script,
        &resistance_plot_script(&csv_name, title, PLOT_OFFSET_OHM),
    )?;
    Ok(ReproduceOutput {
        files: vec![csv, script],
        traces,
    })
}

fn reproduce_loops(cfg: &RunConfig) -> Result<ReproduceOutput> {
    let w = figure_waveform(cfg, Figure::Fig1a);
    let opts = cfg.sweep_options();
    let mut per_kind = Vec::new();
    for kind in DeviceKind::ALL {
        let dev = cfg.device_model_of(kind)?;
        per_kind.push((
            kind,
            sweep_frequencies(&dev, &w, &cfg.sweep_factors, &opts)?,
        ));
    }

    let mut files = Vec::new();
    let mut names = Vec::new();
    let mut traces = Vec::new();
    for (i, &factor) in cfg.sweep_factors.iter().enumerate() {
        let base = &per_kind[0].1[i].trace;
        let mut table = Table::new()
            .column("t", &base.times)
            .column("V", &base.voltage);
        for (kind, sweep) in &per_kind {
            let tr = &sweep[i].trace;
            table = table
                .column(format!("R_{kind}"), &tr.resistance)
                .column(format!("I_{kind}"), &tr.current);
        }
        let name = format!("loops_{factor}.csv");
        let path = cfg.output_dir.join(&name);
        table.write(&path)?;
        files.push(path);
        names.push((factor, name));
    }
    for (kind, sweep) in per_kind {
        for p in sweep {
            traces.push((kind, p.factor, p.trace));
        }
    }
    let script = cfg.output_dir.join("fig2.gp");
    write_text(&script, &loops_plot_script(&names))?;
    files.push(script);
    Ok(ReproduceOutput { files, traces })
}
