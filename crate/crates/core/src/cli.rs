//! Command-line front end: configuration, grid evaluation and CSV/JSON output.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::coherent::{coherent_eval_terms, evolve_coherent, CoherentLabel, CoherentState};
use crate::oscillator::{OscillatorParams, PhasePoint, TripleIndex};
use crate::phase_space::{wigner_fock, wigner_numeric, AxisRange, PhaseCoord, WignerGridSpec};
use crate::special::{MAX_DEGREE, MAX_ORDER};
use crate::squeezed::{squeezed_fock_coefficients, SqueezeLabel, SqueezedState};
use crate::statistics::{
    classify_squeezing, mandel_q_axis, mandel_q_oracle, quadrature_variances, squeeze_border, DeltaConvention,
};
use crate::validation::{self, Check, CriterionReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_CHECK_FAILED: i32 = 3;

/// Environment variable capping the worker pool.
pub const THREADS_ENV: &str = "OSC3D_THREADS";

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error(transparent)]
    Numeric(#[from] crate::Error),
    #[error("i/o error on {path}: {source}")]
    Io { path: String, source: std::io::Error },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        EXIT_CONFIG
    }
}

fn config_err(msg: impl Into<String>) -> CliError {
    CliError::Config(msg.into())
}

#[derive(Debug, Parser)]
#[command(name = "osc3d", version, about = "Phase-space and photon statistics of the 3D harmonic oscillator")]
pub struct Cli {
    #[command(subcommand)]
    pub command: CommandKind,
    #[command(flatten)]
    pub options: ConfigFile,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CommandKind {
    /// Wigner function on a two-dimensional slice of phase space.
    Wigner,
    /// Coherent-state centroid and global phase over a time grid.
    Evolve,
    /// Mandel Q over a (delta, r) grid at fixed |alpha|.
    Mandel,
    /// Quadrature variances and squeezing flag over a (phi, r) grid.
    #[command(name = "squeeze-map", alias = "squeeze_map")]
    SqueezeMap,
    /// Squeezing border curves r(phi).
    Borders,
    /// Run the numerical validation suite.
    Check,
}

impl CommandKind {
    pub fn name(self) -> &'static str {
        match self {
            CommandKind::Wigner => "wigner",
            CommandKind::Evolve => "evolve",
            CommandKind::Mandel => "mandel",
            CommandKind::SqueezeMap => "squeeze_map",
            CommandKind::Borders => "borders",
            CommandKind::Check => "check",
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

/// Raw options, shared by the command line and the `--config` JSON file.
/// Flags take precedence over file entries.
#[derive(Debug, Clone, Default, Args, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ConfigFile {
    /// JSON file with any of the options below.
    #[arg(long, global = true)]
    #[serde(skip)]
    pub config: Option<PathBuf>,
    /// Output file (stdout when absent).
    #[arg(long, global = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub format: Option<Format>,
    /// fock:m,n,l | coherent | squeezed
    #[arg(long, global = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub state: Option<String>,
    /// Displacement per axis, e.g. "1+0i;0+0i;0.5-0.5i".
    #[arg(long, global = true, allow_hyphen_values = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<String>,
    /// Squeeze parameter per axis, same syntax as --alpha.
    #[arg(long, global = true, allow_hyphen_values = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub squeeze: Option<String>,
    /// axis:min:max:count, repeatable.
    #[arg(long, global = true, allow_hyphen_values = true)]
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub grid: Vec<String>,
    /// Number-basis cutoff per axis.
    #[arg(long, global = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cutoff: Option<usize>,
    /// Quadrature order.
    #[arg(long, global = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub order: Option<usize>,
    /// M,omega,hbar
    #[arg(long, global = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub params: Option<String>,
    /// Fixed phase-space point x,y,z,px,py,pz for the coordinates not on the grid.
    #[arg(long, global = true, allow_hyphen_values = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub point: Option<String>,
}

impl ConfigFile {
    pub fn load(path: &std::path::Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|source| CliError::Io { path: path.display().to_string(), source })?;
        serde_json::from_str(&text).map_err(|e| config_err(format!("{}: {e}", path.display())))
    }

    /// `self` over `base`, field by field.
    pub fn over(self, base: ConfigFile) -> ConfigFile {
        ConfigFile {
            config: self.config.or(base.config),
            out: self.out.or(base.out),
            format: self.format.or(base.format),
            state: self.state.or(base.state),
            alpha: self.alpha.or(base.alpha),
            squeeze: self.squeeze.or(base.squeeze),
            grid: if self.grid.is_empty() { base.grid } else { self.grid },
            cutoff: self.cutoff.or(base.cutoff),
            order: self.order.or(base.order),
            params: self.params.or(base.params),
            point: self.point.or(base.point),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StateSpec {
    Fock(TripleIndex),
    Coherent(CoherentLabel),
    Squeezed(SqueezeLabel),
}

/// A named grid axis.
#[derive(Debug, Clone, PartialEq)]
pub struct GridAxis {
    pub name: String,
    pub range: AxisRange,
}

/// Fully resolved run configuration.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: CommandKind,
    pub state: StateSpec,
    pub params: OscillatorParams,
    pub grid: Vec<GridAxis>,
    pub cutoff: Option<usize>,
    pub order: usize,
    pub base: PhasePoint,
    pub out: Option<PathBuf>,
    pub format: Format,
    /// Merged raw options, echoed in JSON output.
    pub raw: ConfigFile,
}

pub fn parse_complex(text: &str) -> Result<Complex64, CliError> {
    let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || config_err(format!("cannot parse complex number '{text}'"));
    let num = |s: &str| -> Result<f64, CliError> {
        match s {
            "" | "+" => Ok(1.0),
            "-" => Ok(-1.0),
            _ => s.parse::<f64>().map_err(|_| bad()),
        }
    };
    if t.is_empty() {
        return Err(bad());
    }
    let Some(body) = t.strip_suffix('i') else {
        return Ok(Complex64::new(t.parse::<f64>().map_err(|_| bad())?, 0.0));
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    match split {
        Some(k) => Ok(Complex64::new(body[..k].parse::<f64>().map_err(|_| bad())?, num(&body[k..])?)),
        None => Ok(Complex64::new(0.0, num(body)?)),
    }
}

/// One component broadcasts to all three axes.
pub fn parse_complex_triple(text: &str) -> Result<[Complex64; 3], CliError> {
    let parts = text.split(';').map(parse_complex).collect::<Result<Vec<_>, _>>()?;
    match parts.as_slice() {
        [a] => Ok([*a; 3]),
        [a, b, c] => Ok([*a, *b, *c]),
        _ => Err(config_err(format!("expected 1 or 3 ';'-separated components in '{text}'"))),
    }
}

fn parse_floats<const N: usize>(text: &str, what: &str) -> Result<[f64; N], CliError> {
    let v = text
        .split(',')
        .map(|s| s.trim().parse::<f64>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|_| config_err(format!("cannot parse {what} '{text}'")))?;
    v.try_into().map_err(|_| config_err(format!("{what} needs {N} comma-separated values, got '{text}'")))
}

pub fn parse_grid_axis(text: &str) -> Result<GridAxis, CliError> {
    let parts: Vec<&str> = text.split(':').collect();
    let [name, min, max, count] = parts.as_slice() else {
        return Err(config_err(format!("grid '{text}' is not axis:min:max:count")));
    };
    let f = |s: &str| s.parse::<f64>().map_err(|_| config_err(format!("bad number '{s}' in grid '{text}'")));
    let count = count.parse::<usize>().map_err(|_| config_err(format!("bad count in grid '{text}'")))?;
    let range = AxisRange::new(f(min)?, f(max)?, count).map_err(|e| config_err(format!("grid '{text}': {e}")))?;
    Ok(GridAxis { name: name.to_string(), range })
}

fn parse_state(raw: &ConfigFile) -> Result<StateSpec, CliError> {
    let alpha = raw.alpha.as_deref().map(parse_complex_triple).transpose()?.unwrap_or([Complex64::new(0.0, 0.0); 3]);
    let squeeze = raw.squeeze.as_deref().map(parse_complex_triple).transpose()?;
    let kind = raw.state.as_deref().unwrap_or(if squeeze.is_some() {
        "squeezed"
    } else if raw.alpha.is_some() {
        "coherent"
    } else {
        "fock:0,0,0"
    });
    if let Some(idx) = kind.strip_prefix("fock:") {
        let q: Vec<usize> = idx
            .split(',')
            .map(|s| s.trim().parse::<usize>())
            .collect::<Result<_, _>>()
            .map_err(|_| config_err(format!("bad Fock index '{idx}'")))?;
        let [m, n, l] = q.as_slice() else {
            return Err(config_err(format!("Fock index needs three entries, got '{idx}'")));
        };
        if q.iter().any(|&x| x > MAX_DEGREE) {
            return Err(config_err(format!("Fock index exceeds {MAX_DEGREE}")));
        }
        return Ok(StateSpec::Fock(TripleIndex::new(*m, *n, *l)));
    }
    match kind {
        "coherent" => Ok(StateSpec::Coherent(CoherentLabel::new(alpha))),
        "squeezed" => {
            Ok(StateSpec::Squeezed(SqueezeLabel::new(squeeze.unwrap_or([Complex64::new(0.0, 0.0); 3]), alpha)))
        }
        other => Err(config_err(format!("unknown state '{other}'"))),
    }
}

fn default_grid(command: CommandKind) -> Vec<&'static str> {
    match command {
        CommandKind::Wigner => vec!["x:-3:3:61", "px:-3:3:61"],
        CommandKind::Evolve => vec!["t:0:6.283185307179586:33"],
        CommandKind::Mandel => vec!["delta:0:3.141592653589793:25", "r:0:1:21"],
        CommandKind::SqueezeMap => vec!["phi:0:6.283185307179586:73", "r:-2:2:41"],
        CommandKind::Borders => vec!["phi:0:6.283185307179586:73"],
        CommandKind::Check => vec![],
    }
}

fn expected_axes(command: CommandKind) -> &'static [&'static str] {
    match command {
        CommandKind::Evolve => &["t"],
        CommandKind::Mandel => &["delta", "r"],
        CommandKind::SqueezeMap => &["phi", "r"],
        CommandKind::Borders => &["phi"],
        CommandKind::Wigner | CommandKind::Check => &[],
    }
}

impl RunConfig {
    pub fn resolve(command: CommandKind, raw: ConfigFile) -> Result<Self, CliError> {
        let raw = match &raw.config {
            Some(path) => raw.clone().over(ConfigFile::load(path)?),
            None => raw,
        };
        let params = match raw.params.as_deref() {
            Some(t) => {
                let [m, w, h] = parse_floats::<3>(t, "params")?;
                OscillatorParams::new(m, w, h).map_err(|e| config_err(e.to_string()))?
            }
            None => OscillatorParams::NATURAL,
        };
        let order = raw.order.unwrap_or(40);
        if order == 0 || order > MAX_ORDER {
            return Err(config_err(format!("order must lie in 1..={MAX_ORDER}")));
        }
        if raw.cutoff.is_some_and(|c| c > MAX_DEGREE) {
            return Err(config_err(format!("cutoff exceeds {MAX_DEGREE}")));
        }
        let base = match raw.point.as_deref() {
            Some(t) => {
                let v = parse_floats::<6>(t, "point")?;
                PhasePoint::new([v[0], v[1], v[2]], [v[3], v[4], v[5]])
            }
            None => PhasePoint::ORIGIN,
        };
        let grid = if raw.grid.is_empty() {
            default_grid(command).into_iter().map(parse_grid_axis).collect::<Result<Vec<_>, _>>()?
        } else {
            raw.grid.iter().map(|g| parse_grid_axis(g)).collect::<Result<Vec<_>, _>>()?
        };
        let config = RunConfig {
            command,
            state: parse_state(&raw)?,
            params,
            grid,
            cutoff: raw.cutoff,
            order,
            base,
            out: raw.out.clone(),
            format: raw.format.unwrap_or_default(),
            raw,
        };
        config.validate()?;
        Ok(config)
    }

    fn validate(&self) -> Result<(), CliError> {
        match self.command {
            CommandKind::Check => Ok(()),
            CommandKind::Wigner => {
                if self.grid.len() != 2 {
                    return Err(config_err("wigner needs exactly two --grid axes"));
                }
                self.wigner_grid().map(|_| ())
            }
            CommandKind::Evolve if !matches!(self.state, StateSpec::Coherent(_)) => {
                Err(config_err("evolve needs a coherent state (--state coherent --alpha ...)"))
            }
            _ => {
                let names: Vec<&str> = self.grid.iter().map(|g| g.name.as_str()).collect();
                let expected = expected_axes(self.command);
                if names != expected {
                    return Err(config_err(format!(
                        "{} expects grid axes [{}] in that order, got [{}]",
                        self.command.name(),
                        expected.join(", "),
                        names.join(", ")
                    )));
                }
                Ok(())
            }
        }
    }

    fn wigner_grid(&self) -> Result<WignerGridSpec, CliError> {
        let coord = |g: &GridAxis| {
            PhaseCoord::parse(&g.name).ok_or_else(|| config_err(format!("'{}' is not one of x,y,z,px,py,pz", g.name)))
        };
        WignerGridSpec::new(
            (coord(&self.grid[0])?, self.grid[0].range),
            (coord(&self.grid[1])?, self.grid[1].range),
            self.base,
        )
        .map_err(|e| config_err(e.to_string()))
    }

    /// Column names in output order.
    pub fn columns(&self) -> Vec<String> {
        let fixed: &[&str] = match self.command {
            CommandKind::Wigner => return vec![self.grid[0].name.clone(), self.grid[1].name.clone(), "W".into()],
            CommandKind::Evolve => &["t", "rx", "ry", "rz", "px", "py", "pz", "phase"],
            CommandKind::Mandel => &["delta", "r", "Q"],
            CommandKind::SqueezeMap => &["phi", "r", "var1", "var2", "squeezed"],
            CommandKind::Borders => &["phi", "r_plus", "r_minus"],
            CommandKind::Check => &[],
        };
        fixed.iter().map(|s| s.to_string()).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Cell {
    Num(f64),
    Flag(bool),
}

impl Cell {
    fn csv(&self, out: &mut String) {
        match self {
            Cell::Num(v) => write!(out, "{v:?}").unwrap(),
            Cell::Flag(b) => write!(out, "{b}").unwrap(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Num(v) => json!(v),
            Cell::Flag(b) => json!(b),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn to_csv(&self) -> String {
        let mut out = self.columns.join(",");
        out.push('\n');
        for row in &self.rows {
            for (i, c) in row.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                c.csv(&mut out);
            }
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self, meta: Value) -> String {
        let rows: Vec<Value> = self.rows.iter().map(|r| Value::Array(r.iter().map(Cell::json).collect())).collect();
        let mut text = serde_json::to_string(&json!({ "meta": meta, "rows": rows })).expect("json value");
        text.push('\n');
        text
    }
}

fn product2(a: &AxisRange, b: &AxisRange) -> Vec<(f64, f64)> {
    a.values().into_iter().flat_map(|u| b.values().into_iter().map(move |v| (u, v))).collect()
}

fn wigner_rows(config: &RunConfig) -> Result<Vec<Vec<Cell>>, CliError> {
    let grid = config.wigner_grid()?;
    let p = config.params;
    let rows: Vec<crate::Result<Vec<Cell>>> = grid
        .points()
        .par_iter()
        .map(|(u, v, point)| {
            let w = match &config.state {
                StateSpec::Fock(idx) => wigner_fock(*idx, point, &p)?,
                StateSpec::Coherent(label) => {
                    wigner_numeric(&CoherentState::new(label, 0.0, &p), point, &p, config.order)?.value
                }
                StateSpec::Squeezed(label) => {
                    wigner_numeric(&SqueezedState::new(label, &p), point, &p, config.order)?.value
                }
            };
            Ok(vec![Cell::Num(*u), Cell::Num(*v), Cell::Num(w)])
        })
        .collect();
    Ok(rows.into_iter().collect::<crate::Result<_>>()?)
}

fn evolve_rows(config: &RunConfig, label: &CoherentLabel) -> Vec<Vec<Cell>> {
    let p = config.params;
    config.grid[0]
        .range
        .values()
        .par_iter()
        .map(|&t| {
            let terms = coherent_eval_terms(label, t, &p);
            let (_, phase) = evolve_coherent(label, t, &p);
            let mut row = vec![Cell::Num(t)];
            row.extend(terms.r_bar.iter().chain(terms.p_bar.iter()).map(|&v| Cell::Num(v)));
            row.push(Cell::Num(phase));
            row
        })
        .collect()
}

/// `|α|` of the first axis fixes the displacement; the squeeze phase is zero
/// and `φ` follows from `δ`. With a cutoff the Q value comes from truncated
/// number-basis moments instead of the closed form.
fn mandel_rows(config: &RunConfig) -> Result<Vec<Vec<Cell>>, CliError> {
    let amp = match &config.state {
        StateSpec::Coherent(l) => l.alpha[0].norm(),
        StateSpec::Squeezed(l) => l.alpha[0].norm(),
        StateSpec::Fock(_) => 0.0,
    };
    let rows: Vec<crate::Result<Vec<Cell>>> = product2(&config.grid[0].range, &config.grid[1].range)
        .par_iter()
        .map(|&(delta, r)| {
            let q = match config.cutoff {
                None => mandel_q_axis(r, amp * amp, delta),
                Some(c) => {
                    let phi = DeltaConvention::Reattributed.phi_for(0.0, delta);
                    let zero = Complex64::new(0.0, 0.0);
                    let label = SqueezeLabel::new(
                        [Complex64::new(r, 0.0), zero, zero],
                        [Complex64::from_polar(amp, phi), zero, zero],
                    );
                    mandel_q_oracle(&squeezed_fock_coefficients(&label, [c, 0, 0], config.order.max(c + 40))?)?[0]
                }
            };
            Ok(vec![Cell::Num(delta), Cell::Num(r), Cell::Num(q)])
        })
        .collect();
    Ok(rows.into_iter().collect::<crate::Result<_>>()?)
}

fn squeeze_map_rows(config: &RunConfig) -> Vec<Vec<Cell>> {
    product2(&config.grid[0].range, &config.grid[1].range)
        .par_iter()
        .map(|&(phi, r)| {
            let (v1, v2) = quadrature_variances(r, phi);
            vec![Cell::Num(phi), Cell::Num(r), Cell::Num(v1), Cell::Num(v2), Cell::Flag(classify_squeezing(v1, v2))]
        })
        .collect()
}

fn border_rows(config: &RunConfig) -> Vec<Vec<Cell>> {
    config.grid[0]
        .range
        .values()
        .par_iter()
        .map(|&phi| {
            let (rp, rm) = squeeze_border(phi);
            vec![Cell::Num(phi), Cell::Num(rp), Cell::Num(rm)]
        })
        .collect()
}

/// Evaluates a grid command on the current rayon pool.
pub fn compute(config: &RunConfig) -> Result<Table, CliError> {
    let rows = match (&config.command, &config.state) {
        (CommandKind::Wigner, _) => wigner_rows(config)?,
        (CommandKind::Evolve, StateSpec::Coherent(label)) => evolve_rows(config, label),
        (CommandKind::Evolve, _) => return Err(config_err("evolve needs a coherent state")),
        (CommandKind::Mandel, _) => mandel_rows(config)?,
        (CommandKind::SqueezeMap, _) => squeeze_map_rows(config),
        (CommandKind::Borders, _) => border_rows(config),
        (CommandKind::Check, _) => return Err(config_err("check produces no table")),
    };
    Ok(Table { columns: config.columns(), rows })
}

pub fn meta(config: &RunConfig) -> Value {
    let mut echo = serde_json::to_value(&config.raw).expect("config echo");
    if let Value::Object(m) = &mut echo {
        m.remove("out");
    }
    json!({
        "command": config.command.name(),
        "config": echo,
        "version": env!("CARGO_PKG_VERSION"),
        "columns": config.columns(),
    })
}

pub fn render(config: &RunConfig, table: &Table) -> String {
    match config.format {
        Format::Csv => table.to_csv(),
        Format::Json => table.to_json(meta(config)),
    }
}

/// Worker count: `OSC3D_THREADS` capped at the machine's parallelism.
pub fn worker_count() -> usize {
    let machine = std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1);
    match std::env::var(THREADS_ENV).ok().and_then(|v| v.trim().parse::<usize>().ok()) {
        Some(n) if n > 0 => n.min(machine),
        _ => machine,
    }
}

/// Computes and renders `config` on a dedicated pool of `threads` workers.
pub fn render_with_threads(config: &RunConfig, threads: usize) -> Result<String, CliError> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads.max(1))
        .build()
        .map_err(|e| config_err(format!("thread pool: {e}")))?;
    pool.install(|| compute(config).map(|t| render(config, &t)))
}

/// Output-layer checks: thread-count independence and JSON round trip.
pub fn output_checks() -> CriterionReport {
    let checks = (|| -> Result<Vec<Check>, CliError> {
        let mut mismatched = 0usize;
        for (command, extra) in [
            (CommandKind::Mandel, ConfigFile { alpha: Some("1.5".into()), ..Default::default() }),
            (CommandKind::SqueezeMap, ConfigFile::default()),
            (
                CommandKind::Wigner,
                ConfigFile {
                    state: Some("coherent".into()),
                    alpha: Some("0.5+0.5i".into()),
                    grid: vec!["x:-2:2:7".into(), "py:-2:2:5".into()],
                    order: Some(24),
                    ..Default::default()
                },
            ),
        ] {
            let cfg = RunConfig::resolve(command, extra)?;
            if render_with_threads(&cfg, 1)? != render_with_threads(&cfg, 4)? {
                mismatched += 1;
            }
        }
        let cfg = RunConfig::resolve(
            CommandKind::Mandel,
            ConfigFile { format: Some(Format::Json), alpha: Some("0.75".into()), ..Default::default() },
        )?;
        let table = compute(&cfg)?;
        let parsed: Value = serde_json::from_str(&render(&cfg, &table)).map_err(|e| config_err(e.to_string()))?;
        let mut inexact = 0usize;
        for (row, back) in table.rows.iter().zip(parsed["rows"].as_array().into_iter().flatten()) {
            for (c, v) in row.iter().zip(back.as_array().into_iter().flatten()) {
                if let Cell::Num(x) = c {
                    if v.as_f64().map(f64::to_bits) != Some(x.to_bits()) {
                        inexact += 1;
                    }
                }
            }
        }
        Ok(vec![
            Check::at_most("outputs differing between 1 and 4 workers", mismatched as f64, 0.0),
            Check::at_most("JSON values not reproduced bit-exactly", inexact as f64, 0.0),
        ])
    })();
    CriterionReport {
        id: 10,
        title: "Deterministic output",
        checks: checks.unwrap_or_else(|e| vec![Check::exceeds(format!("evaluation error: {e}"), 0.0, 0.0)]),
    }
}

fn write_output(config: &RunConfig, text: &str) -> Result<(), CliError> {
    match &config.out {
        Some(path) => {
            std::fs::write(path, text).map_err(|source| CliError::Io { path: path.display().to_string(), source })
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// Runs one invocation and returns the process exit code.
pub fn run(config: &RunConfig) -> Result<i32, CliError> {
    if config.command == CommandKind::Check {
        let mut reports = validation::run_all();
        reports.push(output_checks());
        let mut text = String::new();
        for r in &reports {
            write!(text, "{r}").unwrap();
        }
        let failed = reports.iter().filter(|r| !r.passed()).count();
        writeln!(text, "{} of {} criteria passed", reports.len() - failed, reports.len()).unwrap();
        write_output(config, &text)?;
        return Ok(if failed == 0 { EXIT_OK } else { EXIT_CHECK_FAILED });
    }
    let text = render_with_threads(config, worker_count())?;
    write_output(config, &text)?;
    Ok(EXIT_OK)
}

/// Entry point of the `osc3d` binary.
pub fn main() -> i32 {
    let cli = Cli::parse();
    let outcome = RunConfig::resolve(cli.command, cli.options).and_then(|c| run(&c));
    match outcome {
        Ok(code) => code,
        Err(e) => {
            eprintln!("osc3d: {e}");
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use std::f64::consts::PI;

    use super::*;

    fn resolve(command: CommandKind, raw: ConfigFile) -> RunConfig {
        RunConfig::resolve(command, raw).unwrap()
    }

    #[test]
    fn complex_literals() {
        let c = |s| parse_complex(s).unwrap();
        assert_eq!(c("1+0i"), Complex64::new(1.0, 0.0));
        assert_eq!(c("0.5-0.5i"), Complex64::new(0.5, -0.5));
        assert_eq!(c("-2i"), Complex64::new(0.0, -2.0));
        assert_eq!(c("i"), Complex64::new(0.0, 1.0));
        assert_eq!(c("-1.5"), Complex64::new(-1.5, 0.0));
        assert_eq!(c("1e-3-2.5E+1i"), Complex64::new(1e-3, -25.0));
        assert!(parse_complex("1+x").is_err());
        assert!(parse_complex("").is_err());
        let t = parse_complex_triple("1+0i;0+0i;0.5-0.5i").unwrap();
        assert_eq!(t[2], Complex64::new(0.5, -0.5));
        assert!(parse_complex_triple("1;2").is_err());
    }

    #[test]
    fn grid_axis_syntax() {
        let g = parse_grid_axis("r:-2:2:5").unwrap();
        assert_eq!(g.name, "r");
        assert_eq!(g.range.values(), vec![-2.0, -1.0, 0.0, 1.0, 2.0]);
        assert!(parse_grid_axis("r:0:1:1").is_err());
        assert!(parse_grid_axis("r:0:1").is_err());
    }

    #[test]
    fn squeeze_map_row_at_phi_zero_r_one() {
        let cfg = resolve(
            CommandKind::SqueezeMap,
            ConfigFile { grid: vec!["phi:0:1:2".into(), "r:1:2:2".into()], ..Default::default() },
        );
        let t = compute(&cfg).unwrap();
        let Cell::Num(v1) = t.rows[0][2] else { panic!() };
        let Cell::Num(v2) = t.rows[0][3] else { panic!() };
        assert!((v1 - 1.84726402).abs() < 1e-8);
        assert!((v2 - 0.03383382).abs() < 1e-8);
        assert_eq!(t.rows[0][4], Cell::Flag(true));
        assert!(t.to_csv().starts_with("phi,r,var1,var2,squeezed\n0.0,1.0,"));
    }

    #[test]
    fn border_at_quarter_turn_is_zero() {
        let cfg = resolve(
            CommandKind::Borders,
            ConfigFile { grid: vec![format!("phi:{}:{}:2", PI / 2.0, PI)], ..Default::default() },
        );
        let t = compute(&cfg).unwrap();
        for c in &t.rows[0][1..] {
            let Cell::Num(r) = c else { panic!() };
            assert!(r.abs() < 1e-15);
        }
    }

    #[test]
    fn mandel_vacuum_rows_are_cosh() {
        let cfg = resolve(CommandKind::Mandel, ConfigFile::default());
        for row in compute(&cfg).unwrap().rows {
            let [Cell::Num(_), Cell::Num(r), Cell::Num(q)] = row.as_slice() else { panic!() };
            let expected = if *r == 0.0 { 0.0 } else { (2.0 * r).cosh() };
            assert!((q - expected).abs() < 1e-12);
        }
    }

    #[test]
    fn mandel_from_number_basis_matches_closed_form() {
        let raw = ConfigFile {
            alpha: Some("1.2".into()),
            grid: vec!["delta:0:3:4".into(), "r:0.1:0.6:3".into()],
            ..Default::default()
        };
        let closed = compute(&resolve(CommandKind::Mandel, raw.clone())).unwrap();
        let series = compute(&resolve(CommandKind::Mandel, ConfigFile { cutoff: Some(80), ..raw })).unwrap();
        for (a, b) in closed.rows.iter().zip(&series.rows) {
            let (Cell::Num(x), Cell::Num(y)) = (a[2], b[2]) else { panic!() };
            assert!((x - y).abs() < 1e-8, "{x} vs {y}");
        }
    }

    #[test]
    fn evolve_rows_follow_the_centroid() {
        let cfg = resolve(
            CommandKind::Evolve,
            ConfigFile {
                alpha: Some("1+0i;0+1i;0".into()),
                grid: vec!["t:0:3.141592653589793:3".into()],
                ..Default::default()
            },
        );
        let t = compute(&cfg).unwrap();
        assert_eq!(t.columns.join(","), "t,rx,ry,rz,px,py,pz,phase");
        let Cell::Num(rx) = t.rows[2][1] else { panic!() };
        let Cell::Num(phase) = t.rows[2][7] else { panic!() };
        assert!((rx + 2f64.sqrt()).abs() < 1e-12);
        assert!((phase + 1.5 * PI).abs() < 1e-12);
    }

    #[test]
    fn wigner_header_names_grid_axes() {
        let cfg = resolve(
            CommandKind::Wigner,
            ConfigFile { grid: vec!["y:-1:1:3".into(), "pz:-1:1:3".into()], ..Default::default() },
        );
        let csv = render(&cfg, &compute(&cfg).unwrap());
        assert!(csv.starts_with("y,pz,W\n"));
        assert_eq!(csv.lines().count(), 10);
    }

    #[test]
    fn config_errors() {
        let bad = |c, raw| RunConfig::resolve(c, raw).unwrap_err().exit_code();
        assert_eq!(
            bad(
                CommandKind::Mandel,
                ConfigFile { grid: vec!["r:0:1:3".into(), "delta:0:1:3".into()], ..Default::default() }
            ),
            EXIT_CONFIG
        );
        assert_eq!(bad(CommandKind::Evolve, ConfigFile::default()), EXIT_CONFIG);
        assert_eq!(
            bad(CommandKind::Wigner, ConfigFile { order: Some(MAX_ORDER + 1), ..Default::default() }),
            EXIT_CONFIG
        );
        assert_eq!(
            bad(
                CommandKind::Wigner,
                ConfigFile { grid: vec!["q:0:1:3".into(), "x:0:1:3".into()], ..Default::default() }
            ),
            EXIT_CONFIG
        );
        assert_eq!(
            bad(CommandKind::Wigner, ConfigFile { params: Some("1,0,1".into()), ..Default::default() }),
            EXIT_CONFIG
        );
    }

    #[test]
    fn flags_override_config_file() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("run.json");
        std::fs::write(&path, r#"{"alpha": "0.3", "grid": ["delta:0:1:2", "r:0:1:2"], "format": "json"}"#).unwrap();
        let cfg = resolve(
            CommandKind::Mandel,
            ConfigFile { config: Some(path), alpha: Some("0.9".into()), ..Default::default() },
        );
        assert_eq!(cfg.format, Format::Json);
        assert_eq!(cfg.grid.len(), 2);
        let StateSpec::Coherent(l) = cfg.state else { panic!() };
        assert_eq!(l.alpha[0].re, 0.9);
    }

    #[test]
    fn json_round_trip_is_exact() {
        let cfg = resolve(CommandKind::SqueezeMap, ConfigFile { format: Some(Format::Json), ..Default::default() });
        let table = compute(&cfg).unwrap();
        let v: Value = serde_json::from_str(&render(&cfg, &table)).unwrap();
        assert_eq!(v["meta"]["command"], "squeeze_map");
        for (row, back) in table.rows.iter().zip(v["rows"].as_array().unwrap()) {
            for (c, b) in row.iter().zip(back.as_array().unwrap()) {
                match c {
                    Cell::Num(x) => assert_eq!(b.as_f64().unwrap().to_bits(), x.to_bits()),
                    Cell::Flag(f) => assert_eq!(b.as_bool().unwrap(), *f),
                }
            }
        }
    }

    #[test]
    fn output_is_thread_count_independent() {
        let report = output_checks();
        assert!(report.passed(), "{report}");
    }
}
