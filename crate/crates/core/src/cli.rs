//! Command-line surface: argument parsing and the five commands.
//!
//! Every command returns a [`CmdOutput`] instead of printing, so that the
//! binary, the examples and the tests share one code path.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, ValueEnum};
use serde::Serialize;

use crate::density::{DensityModel, ShapeReport};
use crate::error::{SalemError, SimError};
use crate::poly::{parse_poly, IntPolynomial};
use crate::salem::{verify_salem, SalemNumber};
use crate::sim::{self, Method};
use crate::special::{BesselSeries, BesselSeriesParams, Smoothing};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_NUMERIC: i32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Command {
    /// Verify a Salem minimal polynomial and print θ and its conjugate angles.
    Verify,
    /// Grid of the repartition function and its density, plus the shape report.
    Density,
    /// Histogram of the simulated sequence, compared with the model.
    Simulate,
    /// Shape table for nine cubic polynomials, checked against stored rows.
    Table1,
    /// Bessel-series density for a Salem number of degree 2t.
    Bessel,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SmoothingArg {
    Auto,
    None,
    Cesaro,
}

#[derive(Debug, Clone, Parser)]
#[command(
    name = "salem-dist",
    version,
    about = "Distribution of P(θ^n) mod 1 for Salem numbers θ"
)]
pub struct RunConfig {
    #[arg(value_enum)]
    pub command: Command,
    /// Minimal polynomial, `x^4-x^3-x^2-x+1` or ascending `1,-1,-1,-1,1`.
    #[arg(long, default_value = "x^4-x^3-x^2-x+1")]
    pub minpoly: String,
    /// Polynomial P, ascending coefficients `a0,a1,...` or monomial form.
    #[arg(long, default_value = "0,1", allow_hyphen_values = true)]
    pub poly: String,
    #[arg(long, default_value_t = 100)]
    pub grid: usize,
    #[arg(long, default_value_t = 50)]
    pub bins: usize,
    #[arg(short = 'N', long = "n-max", default_value_t = 100_000)]
    pub n_max: u64,
    /// Defaults to exact up to 10^4 terms, conjugate beyond.
    #[arg(long)]
    pub method: Option<Method>,
    #[arg(long, default_value_t = 10_000)]
    pub terms: usize,
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Decimal digits printed by `verify`.
    #[arg(long, default_value_t = 20)]
    pub digits: usize,
    /// Half-degree of the Salem number for `bessel`.
    #[arg(long, default_value_t = 2)]
    pub t: u32,
    /// `simulate`: also run the other method and report the largest difference.
    #[arg(long)]
    pub cross_check: bool,
    #[arg(long, value_enum, default_value_t = SmoothingArg::Auto)]
    pub smoothing: SmoothingArg,
}

impl RunConfig {
    /// Configuration with every flag at its default.
    pub fn new(command: Command) -> Self {
        RunConfig::parse_from([
            "salem-dist",
            command.to_possible_value().unwrap().get_name(),
        ])
    }

    pub fn run(&self) -> CmdOutput {
        match self.command {
            Command::Verify => cmd_verify(self),
            Command::Density => cmd_density(self),
            Command::Simulate => cmd_simulate(self),
            Command::Table1 => cmd_table1(self),
            Command::Bessel => cmd_bessel(self),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CmdOutput {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl CmdOutput {
    fn ok(stdout: String) -> Self {
        CmdOutput {
            stdout,
            stderr: String::new(),
            code: EXIT_OK,
        }
    }

    fn fail(code: i32, msg: impl Into<String>) -> Self {
        let mut stderr = msg.into();
        stderr.push('\n');
        CmdOutput {
            stdout: String::new(),
            stderr,
            code,
        }
    }
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn load_salem(cfg: &RunConfig) -> Result<SalemNumber, CmdOutput> {
    let p = parse_poly(&cfg.minpoly)
        .map_err(|e| CmdOutput::fail(EXIT_VALIDATION, format!("--minpoly: {e}")))?;
    verify_salem(&p).map_err(|e| CmdOutput::fail(EXIT_VALIDATION, format!("--minpoly: {e}")))
}

fn load_poly(cfg: &RunConfig) -> Result<IntPolynomial, CmdOutput> {
    parse_poly(&cfg.poly).map_err(|e| CmdOutput::fail(EXIT_VALIDATION, format!("--poly: {e}")))
}

#[derive(Serialize)]
struct Rejection<'a> {
    salem: bool,
    reason: &'a str,
    message: String,
}

pub fn cmd_verify(cfg: &RunConfig) -> CmdOutput {
    let p = match parse_poly(&cfg.minpoly) {
        Ok(p) => p,
        Err(e) => return CmdOutput::fail(EXIT_VALIDATION, format!("--minpoly: {e}")),
    };
    match verify_salem(&p) {
        Ok(s) => CmdOutput::ok(to_json(&s.report(cfg.digits))),
        Err(e) => CmdOutput {
            stdout: to_json(&rejection(&e)),
            stderr: format!("not a Salem number: {e}\n"),
            code: EXIT_VALIDATION,
        },
    }
}

fn rejection(e: &SalemError) -> Rejection<'_> {
    Rejection {
        salem: false,
        reason: e.reason(),
        message: e.to_string(),
    }
}

/// Density grid row; `fprime` is `None` at an asymptote.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DensityRow {
    pub x: f64,
    pub f: f64,
    pub fprime: Option<f64>,
}

#[derive(Serialize)]
struct DensityJson<'a> {
    rows: &'a [DensityRow],
    shape_report: &'a ShapeReport,
}

/// `grid + 1` equally spaced rows on `[0, 1]`; the endpoints use one-sided limits.
pub fn density_rows(model: &DensityModel, grid: usize) -> Vec<DensityRow> {
    (0..=grid)
        .map(|i| {
            let x = i as f64 / grid as f64;
            let f = model.repartition_f(x).expect("x in [0, 1]");
            let fp = if i == 0 {
                model.density_fprime_limit(0.0, true)
            } else if i == grid {
                model.density_fprime_limit(1.0, false)
            } else {
                model.density_fprime(x).unwrap_or(f64::INFINITY)
            };
            DensityRow {
                x,
                f,
                fprime: fp.is_finite().then_some(fp),
            }
        })
        .collect()
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map_or_else(|| "inf".to_string(), |v| v.to_string())
}

pub fn cmd_density(cfg: &RunConfig) -> CmdOutput {
    if cfg.grid < 2 {
        return CmdOutput::fail(EXIT_VALIDATION, "--grid must be at least 2");
    }
    let s = match load_salem(cfg) {
        Ok(s) => s,
        Err(out) => return out,
    };
    if s.degree() != 4 {
        return CmdOutput::fail(
            EXIT_VALIDATION,
            format!(
                "{}; the analytic density is only available for degree 4, use `simulate` instead",
                SimError::DegreeMismatch(s.degree())
            ),
        );
    }
    let p = match load_poly(cfg) {
        Ok(p) => p,
        Err(out) => return out,
    };
    let model = match DensityModel::new(&p) {
        Ok(m) => m,
        Err(e) => return CmdOutput::fail(EXIT_VALIDATION, format!("--poly: {e}")),
    };
    let rows = density_rows(&model, cfg.grid);
    if rows.iter().all(|r| r.fprime.is_none()) {
        return CmdOutput::fail(EXIT_NUMERIC, "every grid point lies on an asymptote");
    }
    let shape = model.shape();
    let stdout = match cfg.format {
        Format::Json => to_json(&DensityJson {
            rows: &rows,
            shape_report: &shape,
        }),
        Format::Csv => {
            let mut out = String::from("x,f,fprime\n");
            for r in &rows {
                let _ = writeln!(out, "{},{},{}", r.x, r.f, fmt_opt(r.fprime));
            }
            let _ = writeln!(out, "# shape: {}", serde_json::to_string(&shape).unwrap());
            out
        }
    };
    CmdOutput::ok(stdout)
}

#[derive(Debug, Clone, Serialize)]
pub struct SimulateSummary {
    pub method: Method,
    pub n_max: u64,
    pub bins: usize,
    pub ks_distance: Option<f64>,
    pub ks_prefix: Option<f64>,
    pub converging: Option<bool>,
    pub max_bin_error: Option<f64>,
    pub max_deviation_from_uniform: f64,
    pub excluded_bins: Vec<usize>,
    pub precision_bits_max: u64,
    pub cross_check_max_diff: Option<f64>,
}

#[derive(Serialize)]
struct SimulateJson<'a> {
    histogram: &'a sim::HistogramReport,
    summary: &'a SimulateSummary,
}

fn sim_failure(e: SimError) -> CmdOutput {
    match e {
        SimError::PrecisionCap { .. } => CmdOutput::fail(EXIT_NUMERIC, e.to_string()),
        _ => CmdOutput::fail(EXIT_VALIDATION, e.to_string()),
    }
}

pub fn cmd_simulate(cfg: &RunConfig) -> CmdOutput {
    if cfg.bins < 2 {
        return CmdOutput::fail(EXIT_VALIDATION, "--bins must be at least 2");
    }
    if cfg.n_max < 1 {
        return CmdOutput::fail(EXIT_VALIDATION, "--n-max must be at least 1");
    }
    let s = match load_salem(cfg) {
        Ok(s) => s,
        Err(out) => return out,
    };
    let p = match load_poly(cfg) {
        Ok(p) => p,
        Err(out) => return out,
    };
    let method = cfg.method.unwrap_or_else(|| Method::default_for(cfg.n_max));
    let run = match sim::sequence(&s, &p, cfg.n_max, method) {
        Ok(r) => r,
        Err(e) => return sim_failure(e),
    };
    let cross_check_max_diff = if cfg.cross_check {
        let other = match method {
            Method::Exact => Method::Conjugate,
            Method::Conjugate => Method::Exact,
        };
        match sim::sequence(&s, &p, cfg.n_max, other) {
            Ok(o) => Some(sim::max_path_difference(&run, &o)),
            Err(e) => return sim_failure(e),
        }
    } else {
        None
    };
    let model = if s.degree() == 4 {
        match DensityModel::new(&p) {
            Ok(m) => Some(m),
            Err(e) => return CmdOutput::fail(EXIT_VALIDATION, format!("--poly: {e}")),
        }
    } else {
        None
    };
    let hist = match sim::histogram(&run, cfg.bins, model.as_ref()) {
        Ok(h) => h,
        Err(e) => return sim_failure(e),
    };
    let cmp = match &model {
        Some(m) => match sim::compare(&run, m, cfg.bins) {
            Ok(c) => Some(c),
            Err(e) => return sim_failure(e),
        },
        None => None,
    };
    let summary = SimulateSummary {
        method,
        n_max: cfg.n_max,
        bins: cfg.bins,
        ks_distance: cmp.as_ref().map(|c| c.ks_distance),
        ks_prefix: cmp.as_ref().map(|c| c.ks_prefix),
        converging: cmp.as_ref().map(|c| c.converging),
        max_bin_error: cmp.as_ref().map(|c| c.max_bin_error),
        max_deviation_from_uniform: hist.max_deviation_from_uniform(),
        excluded_bins: hist.excluded_bins.clone(),
        precision_bits_max: run.precision_log.iter().map(|s| s.bits).max().unwrap_or(0),
        cross_check_max_diff,
    };
    let stdout = match cfg.format {
        Format::Json => to_json(&SimulateJson {
            histogram: &hist,
            summary: &summary,
        }),
        Format::Csv => {
            let mut out = String::from("bin_left,bin_right,count,normalized,analytic_bin_avg\n");
            let p = cfg.bins as f64;
            for (i, (c, v)) in hist.counts.iter().zip(&hist.normalized).enumerate() {
                let avg = hist
                    .analytic_bin_avg
                    .as_ref()
                    .map_or(String::new(), |a| a[i].to_string());
                let _ = writeln!(out, "{},{},{c},{v},{avg}", i as f64 / p, (i + 1) as f64 / p);
            }
            let _ = writeln!(
                out,
                "# summary: {}",
                serde_json::to_string(&summary).unwrap()
            );
            out
        }
    };
    CmdOutput::ok(stdout)
}

/// One formatted row of the cubic shape table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TableRow {
    pub coeffs: String,
    pub x1: String,
    pub x2: String,
    pub q1: String,
    pub q2: String,
    #[serde(rename = "A")]
    pub a: String,
    #[serde(rename = "B")]
    pub b: String,
    #[serde(rename = "S")]
    pub s: String,
    pub shape: String,
}

/// `(a3, a2, a1)` for the nine cubic rows.
pub const TABLE_POLYS: [(i64, i64, i64); 9] = [
    (1, 1, 1),
    (3, 5, 6),
    (3, 3, 10),
    (1, -1, -2),
    (1, 2, 3),
    (1, -2, -2),
    (1, 2, -2),
    (1, 0, 0),
    (1, 1, 4),
];

/// Expected rows. For `1,2,3` the minimum value is `Q(-2/3) = 76/27 = 2.8148…`.
const EXPECTED: [[&str; 9]; 9] = [
    [
        "1,1,1",
        "-0.61",
        "0.27",
        "-0.11",
        "2.63",
        ".89,0,1",
        ".63,0,1",
        "∅",
        "∪⌣∪",
    ],
    [
        "3,5,6",
        "-0.68",
        "0.12",
        "4.22",
        "10.39",
        ".22,0,1",
        ".39,0,1",
        "∅",
        "⌊∪⌋",
    ],
    [
        "3,3,10", "-0.17", "-0.17", "6.11", "6.11", "0,1", "0,1", ".11", "∪∪",
    ],
    [
        "1,-1,-2", "-0.5", "0.83", "-5", "4.48", "0,1", ".48,0,1", "∅", "∪⌋",
    ],
    [
        "1,2,3", "-0.67", "0", "2.81", "4", ".81,0,1", "0,1", "∅", "⌊∪",
    ],
    [
        "1,-2,-2", "-0.39", "1.06", "-6.21", "", ".79", "0,1", "∅", "⌣∪",
    ],
    [
        "1,2,-2", "-1.06", "0.39", "", "6.21", "0,1", ".21", "∅", "∪⌣",
    ],
    ["1,0,0", "-0.5", "0.5", "-2", "2", "0,1", "0,1", "∅", "∪"],
    ["1,1,4", "∉R", "∉R", "", "", "0,1", "0,1", "∅", "∪"],
];

impl TableRow {
    fn fields(&self) -> [&str; 9] {
        [
            &self.coeffs,
            &self.x1,
            &self.x2,
            &self.q1,
            &self.q2,
            &self.a,
            &self.b,
            &self.s,
            &self.shape,
        ]
    }
}

pub const TABLE_HEADER: [&str; 9] = [
    "a3,a2,a1", "x1", "x2", "Q(x1)", "Q(x2)", "A", "B", "S", "shape",
];

/// Two decimals with trailing zeros removed: `-0.50 → -0.5`, `4.00 → 4`.
pub fn fmt2(v: f64) -> String {
    let s = format!("{v:.2}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    match s {
        "-0" => "0".to_string(),
        _ => s.to_string(),
    }
}

/// Set of fractional parts: non-integer entries first as `.xx`, then `0,1`.
pub fn fmt_set(set: &[f64]) -> String {
    let mut parts: Vec<String> = set
        .iter()
        .filter(|v| **v != 0.0 && **v != 1.0)
        .map(|v| {
            let s = fmt2(*v);
            s.strip_prefix('0').map(str::to_string).unwrap_or(s)
        })
        .collect();
    for v in [0.0, 1.0] {
        if set.contains(&v) {
            parts.push(fmt2(v));
        }
    }
    if parts.is_empty() {
        "∅".into()
    } else {
        parts.join(",")
    }
}

pub fn table_row(a3: i64, a2: i64, a1: i64) -> TableRow {
    let model =
        DensityModel::new(&IntPolynomial::from_i64(&[0, a1, a2, a3])).expect("nonconstant cubic");
    let r = model.shape();
    let (x1, x2, q1, q2) = match r.criticals.as_slice() {
        [c1, c2] => (
            fmt2(c1.x),
            fmt2(c2.x),
            c1.value.map(fmt2).unwrap_or_default(),
            c2.value.map(fmt2).unwrap_or_default(),
        ),
        _ => ("∉R".into(), "∉R".into(), String::new(), String::new()),
    };
    TableRow {
        coeffs: format!("{a3},{a2},{a1}"),
        x1,
        x2,
        q1,
        q2,
        a: fmt_set(&r.a),
        b: fmt_set(&r.b),
        s: fmt_set(&r.s),
        shape: r.shape,
    }
}

pub fn table_rows() -> Vec<TableRow> {
    TABLE_POLYS
        .iter()
        .map(|&(a3, a2, a1)| table_row(a3, a2, a1))
        .collect()
}

/// Differences from the stored rows, one line per mismatching cell.
pub fn table_mismatches(rows: &[TableRow]) -> Vec<String> {
    let mut out = Vec::new();
    for (row, want) in rows.iter().zip(EXPECTED.iter()) {
        for ((got, want), name) in row.fields().iter().zip(want).zip(TABLE_HEADER) {
            if got != want {
                out.push(format!(
                    "row {}: {name}: got `{got}`, expected `{want}`",
                    row.coeffs
                ));
            }
        }
    }
    if rows.len() != EXPECTED.len() {
        out.push(format!("{} rows, expected {}", rows.len(), EXPECTED.len()));
    }
    out
}

fn csv_field(s: &str) -> String {
    if s.contains(',') {
        format!("\"{s}\"")
    } else {
        s.to_string()
    }
}

pub fn cmd_table1(cfg: &RunConfig) -> CmdOutput {
    let rows = table_rows();
    let stdout = match cfg.format {
        Format::Json => to_json(&rows),
        Format::Csv => {
            let mut out = TABLE_HEADER.map(csv_field).join(",");
            out.push('\n');
            for r in &rows {
                out.push_str(&r.fields().map(csv_field).join(","));
                out.push('\n');
            }
            out
        }
    };
    let diffs = table_mismatches(&rows);
    if diffs.is_empty() {
        CmdOutput {
            stdout,
            stderr: format!("all {} rows match\n", rows.len()),
            code: EXIT_OK,
        }
    } else {
        CmdOutput {
            stdout,
            stderr: diffs.join("\n") + "\n",
            code: EXIT_NUMERIC,
        }
    }
}

pub fn cmd_bessel(cfg: &RunConfig) -> CmdOutput {
    if cfg.grid < 2 {
        return CmdOutput::fail(EXIT_VALIDATION, "--grid must be at least 2");
    }
    let mut params = BesselSeriesParams::new(cfg.t, cfg.terms);
    match cfg.smoothing {
        SmoothingArg::Auto => {}
        SmoothingArg::None => params.smoothing = Smoothing::None,
        SmoothingArg::Cesaro => params.smoothing = Smoothing::Cesaro,
    }
    let series = match BesselSeries::new(params) {
        Ok(s) => s,
        Err(e) => return CmdOutput::fail(EXIT_VALIDATION, e.to_string()),
    };
    let grid = cfg.grid as u64;
    let values: Vec<(f64, f64)> = (0..=grid)
        .map(|i| (i as f64 / grid as f64, series.eval_ratio(i, grid)))
        .collect();
    let stdout = match cfg.format {
        Format::Json => {
            #[derive(Serialize)]
            struct Row {
                x: f64,
                value: f64,
            }
            #[derive(Serialize)]
            struct Out {
                params: BesselSeriesParams,
                rows: Vec<Row>,
            }
            to_json(&Out {
                params,
                rows: values.iter().map(|&(x, value)| Row { x, value }).collect(),
            })
        }
        Format::Csv => {
            let smoothing = match params.smoothing {
                Smoothing::None => "none",
                Smoothing::Cesaro => "cesaro",
            };
            let mut out = format!(
                "# t={} terms={} smoothing={smoothing}\nx,value\n",
                params.t, params.k_terms
            );
            for (x, v) in values {
                let _ = writeln!(out, "{x},{v}");
            }
            out
        }
    };
    CmdOutput::ok(stdout)
}
