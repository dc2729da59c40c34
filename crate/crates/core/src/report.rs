//! CSV tables and JSON manifests behind the `spin-qfi` command line.
//!
//! Numbers are written with 17 significant digits so a table can be parsed
//! back without loss. Each command writes its CSV plus a
//! `<stem>.manifest.json` next to it recording the full parameter set.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{ensure_positive, Error, Result};
use crate::noise::{chi_unchecked, OUNoise};
use crate::numeric::{linear_grid, log_grid};
use crate::optimize::{
    optimize_initial_state_spin1, sweep, ExponentFit, StateOptResult, SweepFixed, SweepParam,
    SweepTable,
};
use crate::qfi::ghz_qfi_from_chi;
use crate::spin::SpinQuantumNumber;
use crate::validate::{ValidateOptions, ValidationReport};

/// Environment variable naming the default output directory.
pub const OUT_DIR_ENV: &str = "SPIN_QFI_OUT_DIR";

pub const QFI_CURVE_FIRST_COLUMN: &str = "tau";
pub const SWEEP_HEADER: [&str; 6] = [
    "param",
    "rate",
    "tau_opt",
    "markov_param",
    "regime",
    "status",
];
pub const OPTIMIZE_STATE_HEADER: [&str; 6] = [
    "tau_c",
    "r_ghz",
    "r_opt",
    "theta_opt",
    "phi_opt",
    "fidelity",
];

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunManifest {
    pub command: String,
    pub parameters: Value,
    pub seeds: Vec<u64>,
    pub rng_algorithm: Option<String>,
    pub tool_version: String,
    pub wall_clock_seconds: f64,
    pub outputs: Vec<String>,
}

impl RunManifest {
    fn new(command: &str, parameters: Value) -> Self {
        Self {
            command: command.to_string(),
            parameters,
            seeds: Vec::new(),
            rng_algorithm: None,
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            wall_clock_seconds: 0.0,
            outputs: Vec::new(),
        }
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        fs::write(path, serde_json::to_string_pretty(self)? + "\n")?;
        Ok(())
    }
}

/// 17 significant digits, `.` decimal separator.
pub fn format_float(x: f64) -> String {
    format!("{x:.16e}")
}

/// `<dir>/<stem>.<suffix>` next to `csv_path`.
pub fn sibling_path(csv_path: &Path, suffix: &str) -> PathBuf {
    let stem = csv_path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "output".into());
    csv_path.with_file_name(format!("{stem}.{suffix}"))
}

/// `explicit` if given, otherwise `<$SPIN_QFI_OUT_DIR or .>/<default_name>`.
pub fn resolve_output(explicit: Option<&Path>, default_name: &str) -> PathBuf {
    match explicit {
        Some(p) => p.to_path_buf(),
        None => std::env::var_os(OUT_DIR_ENV)
            .map(PathBuf::from)
            .unwrap_or_else(|| PathBuf::from("."))
            .join(default_name),
    }
}

fn ensure_parent(path: &Path) -> Result<()> {
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        fs::create_dir_all(parent)?;
    }
    Ok(())
}

fn write_csv<I>(path: &Path, header: &[String], rows: I) -> Result<()>
where
    I: IntoIterator<Item = Vec<String>>,
{
    ensure_parent(path)?;
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(header)?;
    for row in rows {
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}

fn finish(
    mut manifest: RunManifest,
    started: Instant,
    csv_path: &Path,
    extra: &[PathBuf],
) -> Result<RunManifest> {
    let manifest_path = sibling_path(csv_path, "manifest.json");
    manifest.outputs = std::iter::once(csv_path.to_path_buf())
        .chain(extra.iter().cloned())
        .chain(std::iter::once(manifest_path.clone()))
        .map(|p| p.display().to_string())
        .collect();
    manifest.wall_clock_seconds = started.elapsed().as_secs_f64();
    manifest.write(&manifest_path)?;
    Ok(manifest)
}

/// Settings of the `qfi-curve` command.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QfiCurveConfig {
    pub spins: Vec<SpinQuantumNumber>,
    pub b: f64,
    pub tau_c: f64,
    pub tau_min: f64,
    pub tau_max: f64,
    pub points: usize,
}

impl QfiCurveConfig {
    pub fn validate(&self) -> Result<OUNoise> {
        if self.spins.is_empty() {
            return Err(Error::param("s", "at least one spin is required"));
        }
        if self.points == 0 {
            return Err(Error::param("points", "must be >= 1"));
        }
        if !(self.tau_min.is_finite() && self.tau_min >= 0.0) {
            return Err(Error::param("tau-min", "must be finite and >= 0"));
        }
        if !(self.tau_max.is_finite() && self.tau_max >= self.tau_min) {
            return Err(Error::param("tau-max", "must be finite and >= tau-min"));
        }
        OUNoise::new(self.b, self.tau_c)
    }

    pub fn header(&self) -> Vec<String> {
        std::iter::once(QFI_CURVE_FIRST_COLUMN.to_string())
            .chain(self.spins.iter().map(|s| format!("qfi_{s}")))
            .collect()
    }

    /// Rows of `(tau, F_S1(tau), F_S2(tau), ...)` for the GHZ protocol.
    pub fn rows(&self) -> Result<Vec<Vec<f64>>> {
        let noise = self.validate()?;
        Ok(linear_grid(self.tau_min, self.tau_max, self.points)
            .into_iter()
            .map(|tau| {
                let chi = chi_unchecked(&noise, tau);
                std::iter::once(tau)
                    .chain(self.spins.iter().map(|&s| ghz_qfi_from_chi(s, chi, tau)))
                    .collect()
            })
            .collect())
    }
}

pub fn run_qfi_curve(config: &QfiCurveConfig, out: &Path) -> Result<RunManifest> {
    let started = Instant::now();
    let rows = config.rows()?;
    write_csv(
        out,
        &config.header(),
        rows.into_iter()
            .map(|r| r.into_iter().map(format_float).collect()),
    )?;
    let params = json!({
        "s": config.spins.iter().map(|s| s.to_string()).collect::<Vec<_>>(),
        "b": config.b,
        "tau_c": config.tau_c,
        "tau_min": config.tau_min,
        "tau_max": config.tau_max,
        "points": config.points,
        "gyromagnetic_ratio": 1.0,
    });
    finish(RunManifest::new("qfi-curve", params), started, out, &[])
}

/// Settings of the `sweep` command.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepConfig {
    pub param: SweepParam,
    pub min: f64,
    pub max: f64,
    pub points: usize,
    pub fixed: SweepFixed,
}

impl SweepConfig {
    pub fn grid(&self) -> Result<Vec<f64>> {
        ensure_positive("min", self.min)?;
        ensure_positive("max", self.max)?;
        if self.max <= self.min {
            return Err(Error::param("max", "must exceed min"));
        }
        Ok(log_grid(self.min, self.max, self.points))
    }

    pub fn run(&self) -> Result<SweepTable> {
        sweep(self.param, &self.grid()?, self.fixed)
    }
}

fn fit_json(table: &SweepTable, fit: &Option<ExponentFit>) -> Value {
    match fit {
        None => Value::Null,
        Some(f) => json!({
            "exponent": f.slope,
            "intercept": f.intercept,
            "max_residual": f.max_residual,
            "window": [f.window.start, f.window.end],
            "value_range": [table.rows[f.window.start].value, table.rows[f.window.end - 1].value],
        }),
    }
}

pub fn sweep_summary(table: &SweepTable) -> Value {
    json!({
        "param": table.param.as_str(),
        "rows": table.rows.len(),
        "boundary_rows": table.rows.iter().filter(|r| r.on_boundary).count(),
        "fits": {
            "markovian": fit_json(table, &table.markovian_fit),
            "quasi_static": fit_json(table, &table.quasi_static_fit),
        },
    })
}

pub fn sweep_rows(table: &SweepTable) -> Vec<Vec<String>> {
    table
        .rows
        .iter()
        .map(|r| {
            vec![
                format_float(r.value),
                format_float(r.rate),
                format_float(r.tau_opt),
                format_float(r.markov_param),
                r.regime.as_str().to_string(),
                if r.on_boundary { "boundary" } else { "ok" }.to_string(),
            ]
        })
        .collect()
}

pub fn run_sweep(config: &SweepConfig, out: &Path) -> Result<(SweepTable, RunManifest)> {
    let started = Instant::now();
    let table = config.run()?;
    let header: Vec<String> = SWEEP_HEADER.iter().map(|s| s.to_string()).collect();
    write_csv(out, &header, sweep_rows(&table))?;
    let summary_path = sibling_path(out, "summary.json");
    fs::write(
        &summary_path,
        serde_json::to_string_pretty(&sweep_summary(&table))? + "\n",
    )?;
    let params = json!({
        "param": config.param.as_str(),
        "min": config.min,
        "max": config.max,
        "points": config.points,
        "s": config.fixed.s.to_string(),
        "b": config.fixed.b,
        "tau_c": config.fixed.tau_c,
        "fit_windows": {
            "markovian_max_markov_param": crate::optimize::MARKOVIAN_FIT_MAX,
            "quasi_static_min_markov_param": crate::optimize::QUASI_STATIC_FIT_MIN,
        },
    });
    let manifest = finish(
        RunManifest::new("sweep", params),
        started,
        out,
        &[summary_path],
    )?;
    Ok((table, manifest))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StateSweepAxis {
    TauC,
    B,
}

/// Settings of the `optimize-state` command: one spin-1 optimization per
/// log-spaced value of `axis`, the other noise parameter held at `fixed`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OptimizeStateConfig {
    pub axis: StateSweepAxis,
    pub fixed: f64,
    pub min: f64,
    pub max: f64,
    pub points: usize,
}

impl OptimizeStateConfig {
    pub fn run(&self) -> Result<Vec<(f64, StateOptResult)>> {
        ensure_positive("fixed", self.fixed)?;
        ensure_positive("min", self.min)?;
        ensure_positive("max", self.max)?;
        if self.max < self.min {
            return Err(Error::param("max", "must be >= min"));
        }
        if self.points == 0 {
            return Err(Error::param("points", "must be >= 1"));
        }
        let grid = log_grid(self.min, self.max, self.points);
        grid.into_iter()
            .map(|v| {
                let noise = match self.axis {
                    StateSweepAxis::TauC => OUNoise::new(self.fixed, v)?,
                    StateSweepAxis::B => OUNoise::new(v, self.fixed)?,
                };
                Ok((v, optimize_initial_state_spin1(&noise)))
            })
            .collect()
    }
}

pub fn run_optimize_state(
    config: &OptimizeStateConfig,
    out: &Path,
) -> Result<(Vec<(f64, StateOptResult)>, RunManifest)> {
    let started = Instant::now();
    let results = config.run()?;
    let mut header: Vec<String> = OPTIMIZE_STATE_HEADER
        .iter()
        .map(|s| s.to_string())
        .collect();
    if config.axis == StateSweepAxis::B {
        header[0] = "b".to_string();
    }
    write_csv(
        out,
        &header,
        results.iter().map(|(v, r)| {
            [
                *v,
                r.r_ghz,
                r.r_max,
                r.theta_opt,
                r.phi_opt,
                r.fidelity_with_ghz,
            ]
            .into_iter()
            .map(format_float)
            .collect()
        }),
    )?;
    let params = json!({
        "axis": config.axis,
        "fixed": config.fixed,
        "min": config.min,
        "max": config.max,
        "points": config.points,
        "spin": "1",
        "search": { "grid": 64, "simplex_starts": 5, "state_tolerance": 1e-6 },
    });
    let manifest = finish(
        RunManifest::new("optimize-state", params),
        started,
        out,
        &[],
    )?;
    Ok((results, manifest))
}

/// Writes a validation report as JSON to `out` plus its manifest.
pub fn write_validation(
    report: &ValidationReport,
    options: &ValidateOptions,
    wall_clock_seconds: f64,
    out: &Path,
) -> Result<RunManifest> {
    ensure_parent(out)?;
    fs::write(out, serde_json::to_string_pretty(report)? + "\n")?;
    let params = json!({
        "suite": report.suite,
        "paths": options.paths,
        "samples": options.samples,
    });
    let mut manifest = RunManifest::new("validate", params);
    manifest.seeds = vec![options.seed];
    manifest.rng_algorithm = Some(report.rng_algorithm.to_string());
    let manifest_path = sibling_path(out, "manifest.json");
    manifest.outputs = vec![
        out.display().to_string(),
        manifest_path.display().to_string(),
    ];
    manifest.wall_clock_seconds = wall_clock_seconds;
    manifest.write(&manifest_path)?;
    Ok(manifest)
}
