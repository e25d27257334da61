//! Command-line front end: `evolve`, `sweep`, `fig1`, `optimize` and
//! `convert`. All output is dimensionless unless physical units are given.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use crate::error::Error;
use crate::evolution::{probabilities, spin_projections};
use crate::model::{build_hamiltonian, ModelParams};
use crate::switching::{linear_grid, optimize_field, sweep_field, Quench, ScanOptions, SweepEntry};
use crate::units::{to_physical, PhysicalUnits};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

pub const EVOLVE_HEADER: &str = "t,p1,p2,p3,p4,p5,p6,s_za,s_zb,energy";
pub const SWEEP_HEADER: &str = "u_over_v,h_over_v,t0,s_za_at_t0,p_err,status";
pub const OPTIMIZE_HEADER: &str = "u_over_v,h_opt,t0,s_za,p_err";
pub const CONVERT_HEADER: &str = "t0,h_over_v,v_mev,g,t0_seconds,h_tesla";

#[derive(Debug, Parser)]
#[command(name = "qd-inverter", version, about = "Unitary switching of a two-dot spin inverter")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Time series of occupation probabilities, spins and energy.
    Evolve(EvolveArgs),
    /// Switching reports along a field grid at one u/v.
    Sweep(SweepArgs),
    /// Switching reports along a field grid for several u/v.
    Fig1(Fig1Args),
    /// Field maximizing S_zA(t0) at one u/v.
    Optimize(OptimizeArgs),
    /// Convert a dimensionless switching time and field to seconds and Tesla.
    Convert(ConvertArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Output file; stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct GridArgs {
    #[arg(long, default_value_t = 0.05, allow_negative_numbers = true)]
    pub h_min: f64,
    #[arg(long, default_value_t = 6.0, allow_negative_numbers = true)]
    pub h_max: f64,
    #[arg(long, default_value_t = 0.05)]
    pub h_step: f64,
    /// Give up on a point if no maximum appears before this time (ħ/V).
    #[arg(long, default_value_t = 400.0)]
    pub t_max: f64,
}

#[derive(Debug, Args)]
pub struct EvolveArgs {
    #[arg(long, default_value_t = 0.0)]
    pub u_over_v: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub h_over_v: f64,
    #[arg(long)]
    pub t_max: f64,
    #[arg(long)]
    pub dt_out: f64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long)]
    pub u_over_v: f64,
    #[command(flatten)]
    pub grid: GridArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct Fig1Args {
    /// Comma-separated list of u/v values.
    #[arg(long, value_delimiter = ',', default_values_t = [0.0, 1.0, 2.0, 5.0, 10.0])]
    pub u_over_v: Vec<f64>,
    #[command(flatten)]
    pub grid: GridArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct OptimizeArgs {
    #[arg(long)]
    pub u_over_v: f64,
    /// Lower end of the field bracket.
    #[arg(long, default_value_t = 1e-3)]
    pub h_min: f64,
    /// Upper end of the field bracket.
    #[arg(long, default_value_t = 6.0)]
    pub h_max: f64,
    #[arg(long, default_value_t = 400.0)]
    pub t_max: f64,
    /// Hopping energy in meV; enables physical-unit output.
    #[arg(long)]
    pub v_mev: Option<f64>,
    /// Landé g factor.
    #[arg(long, default_value_t = 2.0, allow_negative_numbers = true)]
    pub g: f64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ConvertArgs {
    /// Switching time in units of ħ/V.
    #[arg(long)]
    pub t0: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub h_over_v: f64,
    #[arg(long)]
    pub v_mev: f64,
    #[arg(long, default_value_t = 2.0, allow_negative_numbers = true)]
    pub g: f64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Usage(#[from] Error),
    #[error("cannot write {path}: {source}")]
    Io { path: String, source: std::io::Error },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Io { .. } => EXIT_FAILURE,
        }
    }
}

/// Rendered output plus whether every requested point succeeded.
#[derive(Debug, Clone, PartialEq)]
pub struct Rendered {
    pub text: String,
    pub complete: bool,
}

/// `%.12g`-style formatting: 12 significant digits, `.` separator,
/// trailing zeros removed.
pub fn format_number(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let sci = format!("{x:.11e}");
    let (mantissa, exp) = sci.split_once('e').unwrap();
    let exp: i32 = exp.parse().unwrap();
    if !(-5..12).contains(&exp) {
        let mantissa = trim_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        return format!("{mantissa}e{sign}{:02}", exp.abs());
    }
    let decimals = (11 - exp).max(0) as usize;
    trim_zeros(&format!("{x:.decimals$}")).to_string()
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

fn csv_row(values: &[f64]) -> String {
    values.iter().map(|&x| format_number(x)).collect::<Vec<_>>().join(",")
}

fn number(x: f64) -> Value {
    serde_json::Number::from_f64(x).map(Value::Number).unwrap_or(Value::Null)
}

fn finite(name: &str, x: f64) -> Result<f64, Error> {
    if x.is_finite() {
        Ok(x)
    } else {
        Err(Error::InvalidParams(format!("--{name} must be finite, got {x}")))
    }
}

pub fn render_evolve(args: &EvolveArgs) -> Result<Rendered, Error> {
    let t_max = finite("t-max", args.t_max)?;
    let dt_out = finite("dt-out", args.dt_out)?;
    if t_max < 0.0 || dt_out <= 0.0 {
        return Err(Error::InvalidTime(format!("need t-max >= 0 and dt-out > 0, got {t_max}, {dt_out}")));
    }
    let params = ModelParams::dimensionless(finite("u-over-v", args.u_over_v)?, finite("h-over-v", args.h_over_v)?)?;
    let h = build_hamiltonian(&params)?;
    let quench = Quench::new(&params)?;
    let steps = (t_max / dt_out + 1e-9).floor() as usize;

    let mut rows = Vec::with_capacity(steps + 1);
    for i in 0..=steps {
        let t = i as f64 * dt_out;
        let sv = quench.state(t)?;
        let p = probabilities(&sv).p;
        let s = spin_projections(&sv);
        let mut row = vec![t];
        row.extend_from_slice(&p);
        row.extend([s.s_za, s.s_zb, sv.energy(&h)]);
        rows.push(row);
    }

    let text = match args.output.format {
        Format::Csv => {
            let mut out = String::from(EVOLVE_HEADER);
            out.push('\n');
            for row in &rows {
                writeln!(out, "{}", csv_row(row)).unwrap();
            }
            out
        }
        Format::Json => {
            let names: Vec<&str> = EVOLVE_HEADER.split(',').collect();
            let items: Vec<Value> = rows
                .iter()
                .map(|row| {
                    let obj: Map<String, Value> =
                        names.iter().zip(row).map(|(k, &v)| (k.to_string(), number(v))).collect();
                    Value::Object(obj)
                })
                .collect();
            serde_json::to_string_pretty(&items).unwrap() + "\n"
        }
    };
    Ok(Rendered { text, complete: true })
}

fn grid_of(args: &GridArgs) -> Result<(Vec<f64>, ScanOptions), Error> {
    let grid = linear_grid(args.h_min, args.h_max, args.h_step)?;
    let t_max = finite("t-max", args.t_max)?;
    Ok((grid, ScanOptions { t_max, dt_scan: None }))
}

fn render_entries(entries: &[SweepEntry], format: Format) -> Rendered {
    let complete = entries.iter().all(|e| e.outcome.is_ok());
    let text = match format {
        Format::Csv => {
            let mut out = String::from(SWEEP_HEADER);
            out.push('\n');
            for e in entries {
                let (t0, s, p) = match &e.outcome {
                    Ok(r) => (r.t0, r.s_za_at_t0, r.p_err),
                    Err(_) => (f64::NAN, f64::NAN, f64::NAN),
                };
                writeln!(out, "{},{}", csv_row(&[e.u_over_v, e.h_over_v, t0, s, p]), e.status()).unwrap();
            }
            out
        }
        Format::Json => {
            let items: Vec<Value> = entries
                .iter()
                .map(|e| {
                    let (t0, s, p) = match &e.outcome {
                        Ok(r) => (number(r.t0), number(r.s_za_at_t0), number(r.p_err)),
                        Err(_) => (Value::Null, Value::Null, Value::Null),
                    };
                    json!({
                        "u_over_v": number(e.u_over_v),
                        "h_over_v": number(e.h_over_v),
                        "t0": t0,
                        "s_za_at_t0": s,
                        "p_err": p,
                        "status": e.status(),
                    })
                })
                .collect();
            serde_json::to_string_pretty(&items).unwrap() + "\n"
        }
    };
    Rendered { text, complete }
}

pub fn render_sweep(args: &SweepArgs) -> Result<Rendered, Error> {
    let u = finite("u-over-v", args.u_over_v)?;
    ModelParams::dimensionless(u, 0.0)?;
    let (grid, scan) = grid_of(&args.grid)?;
    Ok(render_entries(&sweep_field(u, &grid, &scan), args.output.format))
}

pub fn render_fig1(args: &Fig1Args) -> Result<Rendered, Error> {
    let (grid, scan) = grid_of(&args.grid)?;
    let mut entries = Vec::new();
    for &u in &args.u_over_v {
        ModelParams::dimensionless(finite("u-over-v", u)?, 0.0)?;
        entries.extend(sweep_field(u, &grid, &scan));
    }
    Ok(render_entries(&entries, args.output.format))
}

pub fn render_optimize(args: &OptimizeArgs) -> Result<Rendered, Error> {
    let u = finite("u-over-v", args.u_over_v)?;
    ModelParams::dimensionless(u, 0.0)?;
    let scan = ScanOptions { t_max: finite("t-max", args.t_max)?, dt_scan: None };
    let report = optimize_field(u, (args.h_min, args.h_max), 1e-6, &scan)?;
    let physical = match args.v_mev {
        Some(v_mev) => Some(to_physical(&report, &PhysicalUnits::new(v_mev, args.g)?)?),
        None => None,
    };
    let text = match args.format {
        Format::Csv => {
            let mut header = OPTIMIZE_HEADER.to_string();
            let mut row = vec![report.u_over_v, report.h_over_v, report.t0, report.s_za_at_t0, report.p_err];
            if let Some(ph) = physical {
                header.push_str(",t0_seconds,h_tesla");
                row.extend([ph.t0_seconds, ph.h_a_tesla]);
            }
            format!("{header}\n{}\n", csv_row(&row))
        }
        Format::Json => {
            let mut obj = json!({
                "u_over_v": number(report.u_over_v),
                "h_opt": number(report.h_over_v),
                "t0": number(report.t0),
                "s_za": number(report.s_za_at_t0),
                "p_err": number(report.p_err),
            });
            if let Some(ph) = physical {
                obj["t0_seconds"] = number(ph.t0_seconds);
                obj["h_tesla"] = number(ph.h_a_tesla);
            }
            serde_json::to_string_pretty(&obj).unwrap() + "\n"
        }
    };
    Ok(Rendered { text, complete: true })
}

pub fn render_convert(args: &ConvertArgs) -> Result<Rendered, Error> {
    let units = PhysicalUnits::new(args.v_mev, args.g)?;
    let t0 = finite("t0", args.t0)?;
    let h = finite("h-over-v", args.h_over_v)?;
    let (secs, tesla) = (units.seconds(t0), units.tesla(h));
    let text = match args.output.format {
        Format::Csv => format!("{CONVERT_HEADER}\n{}\n", csv_row(&[t0, h, args.v_mev, args.g, secs, tesla])),
        Format::Json => {
            let obj = json!({
                "t0": number(t0),
                "h_over_v": number(h),
                "v_mev": number(args.v_mev),
                "g": number(args.g),
                "t0_seconds": number(secs),
                "h_tesla": number(tesla),
            });
            serde_json::to_string_pretty(&obj).unwrap() + "\n"
        }
    };
    Ok(Rendered { text, complete: true })
}

pub fn render(cli: &Cli) -> Result<(Rendered, Option<&PathBuf>), Error> {
    Ok(match &cli.command {
        Command::Evolve(a) => (render_evolve(a)?, a.output.out.as_ref()),
        Command::Sweep(a) => (render_sweep(a)?, a.output.out.as_ref()),
        Command::Fig1(a) => (render_fig1(a)?, a.output.out.as_ref()),
        Command::Optimize(a) => (render_optimize(a)?, a.out.as_ref()),
        Command::Convert(a) => (render_convert(a)?, a.output.out.as_ref()),
    })
}

/// Runs a parsed command and returns the process exit code.
pub fn run(cli: &Cli) -> Result<i32, CliError> {
    let (rendered, out) = render(cli)?;
    match out {
        Some(path) => std::fs::write(path, &rendered.text)
            .map_err(|source| CliError::Io { path: path.display().to_string(), source })?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(rendered.text.as_bytes())
                .map_err(|source| CliError::Io { path: "<stdout>".into(), source })?;
        }
    }
    Ok(if rendered.complete { EXIT_OK } else { EXIT_FAILURE })
}

/// Entry point shared by the binary: parses `args`, runs, maps errors to
/// exit codes (2 usage, 1 failure or partial sweep).
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
