//! Command-line front end: argument definitions, commands and output
//! rendering. The binary only parses arguments and prints the [`Report`].

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use thiserror::Error;

use crate::distribution::{DistError, DistOptions, MomentResult, PolyDist};
use crate::polylog::{polylog, EvalOptions, PolylogError};
use crate::ppcc::{fit_shape_with, PlottingPositions, PpccError, PpccOptions};

// Upper bound on the number of points a single range item may expand to.
const MAX_GRID_POINTS: usize = 1_000_000;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("bad grid '{text}': {reason}")]
    Grid { text: String, reason: String },
    #[error("{path}: line {line}: {reason}")]
    Data {
        path: String,
        line: usize,
        reason: String,
    },
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error(transparent)]
    Polylog(#[from] PolylogError),
    #[error(transparent)]
    Dist(#[from] DistError),
    #[error(transparent)]
    Ppcc(#[from] PpccError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum OutputFormat {
    #[default]
    Csv,
    Jsonl,
}

#[derive(Debug, Parser)]
#[command(
    name = "polylog-dist",
    version,
    about = "Polylogarithm function and the distribution with quantile Li_s(p)"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Csv)]
    pub format: OutputFormat,
    /// Relative tolerance for series evaluation and quadrature.
    #[arg(long, global = true)]
    pub rel_tol: Option<f64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DistWhat {
    Quantile,
    Cdf,
    Pdf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CurveWhat {
    Cdf,
    Pdf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PositionsArg {
    Hazen,
    Weibull,
    Blom,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate Li_s(z) for z in [0, 1].
    #[command(allow_negative_numbers = true)]
    Eval {
        #[arg(long)]
        s: f64,
        /// One or more arguments, repeated or comma separated.
        #[arg(long, required = true, num_args = 1.., value_delimiter = ',')]
        z: Vec<f64>,
    },
    /// Quantile, CDF or PDF of the distribution.
    #[command(allow_negative_numbers = true)]
    Dist {
        #[arg(long)]
        s: f64,
        #[arg(long, default_value_t = 0.0)]
        loc: f64,
        #[arg(long, default_value_t = 1.0)]
        scale: f64,
        #[arg(long, value_enum)]
        what: DistWhat,
        /// Probabilities (quantile).
        #[arg(long, num_args = 1.., value_delimiter = ',')]
        p: Vec<f64>,
        /// Points (cdf, pdf).
        #[arg(long, num_args = 1.., value_delimiter = ',')]
        x: Vec<f64>,
    },
    /// Draw seeded samples by inverse transform.
    #[command(allow_negative_numbers = true)]
    Sample {
        #[arg(long)]
        s: f64,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 0.0)]
        loc: f64,
        #[arg(long, default_value_t = 1.0)]
        scale: f64,
        /// Print one row of n, mean, variance, min, max instead of the draws.
        #[arg(long)]
        summary: bool,
    },
    /// Raw moments of the standard variate over a grid of shapes.
    Moments {
        /// Shapes: comma separated values or start:step:stop ranges, ascending.
        #[arg(long, allow_hyphen_values = true)]
        s: String,
        #[arg(long, default_value_t = 2)]
        max_order: u32,
        /// Add a row with the variance for each shape.
        #[arg(long)]
        variance: bool,
    },
    /// CDF or PDF curves sampled at equispaced probabilities p = i/(npoints-1).
    ///
    /// Curves are parametrised by p rather than x, so unbounded supports
    /// need no cut-off; the last point has x = inf when s <= 1.
    Curves {
        #[arg(long, value_enum)]
        what: CurveWhat,
        /// Shapes: comma separated values or start:step:stop ranges.
        #[arg(long, allow_hyphen_values = true)]
        s: String,
        #[arg(long, default_value_t = 101)]
        npoints: usize,
    },
    /// Fit the shape to non-negative data by probability plot correlation.
    Fit {
        /// One number per line; blank lines and lines starting with '#' are skipped.
        #[arg(long)]
        data: PathBuf,
        /// Shape grid: comma separated values or start:step:stop ranges, ascending.
        #[arg(long, allow_hyphen_values = true, default_value = "-2:0.1:10")]
        s: String,
        #[arg(long, value_enum, default_value_t = PositionsArg::Hazen)]
        positions: PositionsArg,
        /// Skip the midpoint refinement around the best grid shape.
        #[arg(long)]
        no_refine: bool,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(u64),
    Text(String),
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Num(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(header: Vec<&'static str>) -> Self {
        Self {
            header,
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Csv => self.render_csv(),
            OutputFormat::Jsonl => self.render_jsonl(),
        }
    }

    fn render_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        // writing into memory cannot fail
        w.write_record(&self.header).expect("in-memory write");
        for row in &self.rows {
            w.write_record(row.iter().map(cell_text))
                .expect("in-memory write");
        }
        let bytes = w.into_inner().expect("in-memory flush");
        String::from_utf8(bytes).expect("fields are UTF-8")
    }

    fn render_jsonl(&self) -> String {
        let mut out = String::new();
        for row in &self.rows {
            out.push('{');
            for (i, (key, cell)) in self.header.iter().zip(row).enumerate() {
                if i > 0 {
                    out.push(',');
                }
                let value = match cell {
                    Cell::Num(v) if v.is_finite() => format_num(*v),
                    Cell::Int(v) => v.to_string(),
                    other => json_string(&cell_text(other)),
                };
                let _ = write!(out, "{}:{}", json_string(key), value);
            }
            out.push_str("}\n");
        }
        out
    }
}

fn json_string(s: &str) -> String {
    serde_json::to_string(s).expect("strings always serialize")
}

fn cell_text(cell: &Cell) -> String {
    match cell {
        Cell::Num(v) => format_num(*v),
        Cell::Int(v) => v.to_string(),
        Cell::Text(t) => t.clone(),
    }
}

/// `printf("%.17g")`: 17 significant digits, trailing zeros dropped, so
/// parsing the text gives back the same double. Non-finite values print as
/// `inf`, `-inf` and `nan`.
pub fn format_num(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return if x.is_sign_negative() {
            "-0".into()
        } else {
            "0".into()
        };
    }
    let sci = format!("{x:.16e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-4..17).contains(&exp) {
        let sign = if exp < 0 { '-' } else { '+' };
        return format!("{}e{sign}{:02}", trim_zeros(mantissa), exp.abs());
    }
    trim_zeros(&format!("{:.*}", (16 - exp) as usize, x)).to_string()
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// Comma separated values and `start:step:stop` ranges, strictly ascending.
pub fn parse_grid(text: &str) -> Result<Vec<f64>, CliError> {
    let values = parse_list(text)?;
    if let Some(w) = values.windows(2).find(|w| !(w[1] > w[0])) {
        return Err(grid_error(
            text,
            format!("values must be strictly ascending ({} then {})", w[0], w[1]),
        ));
    }
    Ok(values)
}

/// Like [`parse_grid`] without the ordering requirement.
pub fn parse_list(text: &str) -> Result<Vec<f64>, CliError> {
    let mut values = Vec::new();
    for item in text.split(',').map(str::trim) {
        let parts: Vec<&str> = item.split(':').collect();
        let nums = parts
            .iter()
            .map(|t| t.trim().parse::<f64>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| grid_error(text, format!("'{item}' is not a number or range")))?;
        if nums.iter().any(|v| !v.is_finite()) {
            return Err(grid_error(text, format!("'{item}' is not finite")));
        }
        match nums[..] {
            [v] => values.push(v),
            [start, step, stop] => values.extend(expand_range(text, start, step, stop)?),
            _ => return Err(grid_error(text, format!("'{item}' is not start:step:stop"))),
        }
    }
    Ok(values)
}

fn expand_range(text: &str, start: f64, step: f64, stop: f64) -> Result<Vec<f64>, CliError> {
    if !(step > 0.0) {
        return Err(grid_error(text, "step must be positive".into()));
    }
    if stop < start {
        return Err(grid_error(text, "stop is below start".into()));
    }
    let span = (stop - start) / step;
    if span >= MAX_GRID_POINTS as f64 {
        return Err(grid_error(text, "range has too many points".into()));
    }
    let count = (span + 1e-9).floor() as usize + 1;
    // round away the drift of start + i * step at a few digits below the step
    let digits = ((-step.log10()).ceil().max(0.0) as usize + 6).min(300);
    Ok((0..count)
        .map(|i| {
            let v = start + i as f64 * step;
            format!("{v:.digits$}")
                .parse()
                .expect("formatted float parses")
        })
        .collect())
}

fn grid_error(text: &str, reason: String) -> CliError {
    CliError::Grid {
        text: text.to_string(),
        reason,
    }
}

/// Reads one non-negative number per line, skipping blank and `#` lines.
pub fn read_data_file(path: &Path) -> Result<Vec<f64>, CliError> {
    let display = path.display().to_string();
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: display.clone(),
        source,
    })?;
    let mut data = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |reason: String| CliError::Data {
            path: display.clone(),
            line: i + 1,
            reason,
        };
        let v: f64 = line
            .parse()
            .map_err(|_| err(format!("'{line}' is not a number")))?;
        if !v.is_finite() {
            return Err(err(format!("'{line}' is not finite")));
        }
        if v < 0.0 {
            return Err(err(format!("negative value {line}")));
        }
        data.push(v);
    }
    Ok(data)
}

/// Output of one command: the table for stdout, messages for stderr and
/// whether the process should exit successfully.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub table: Table,
    pub messages: Vec<String>,
    pub success: bool,
}

impl Report {
    fn ok(table: Table) -> Self {
        Self {
            table,
            messages: Vec::new(),
            success: true,
        }
    }
}

fn options(rel_tol: Option<f64>) -> DistOptions {
    let mut opts = DistOptions::default();
    if let Some(tol) = rel_tol {
        opts.eval.rel_tol = tol;
        opts.quad.rel_tol = tol;
    }
    opts
}

fn dist(s: f64, loc: f64, scale: f64, rel_tol: Option<f64>) -> Result<PolyDist, CliError> {
    Ok(PolyDist::with_affine(s, loc, scale)?.with_options(options(rel_tol)))
}

pub fn run(cli: &Cli) -> Result<Report, CliError> {
    let tol = cli.rel_tol;
    if let Some(t) = tol {
        if !(t > 0.0 && t < 1.0) {
            return Err(CliError::Usage(format!("--rel-tol {t} must be in (0, 1)")));
        }
    }
    match &cli.command {
        Command::Eval { s, z } => cmd_eval(*s, z, tol),
        Command::Dist {
            s,
            loc,
            scale,
            what,
            p,
            x,
        } => cmd_dist(dist(*s, *loc, *scale, tol)?, *what, p, x),
        Command::Sample {
            s,
            n,
            seed,
            loc,
            scale,
            summary,
        } => cmd_sample(dist(*s, *loc, *scale, tol)?, *n, *seed, *summary),
        Command::Moments {
            s,
            max_order,
            variance,
        } => cmd_moments(&parse_grid(s)?, *max_order, *variance, tol),
        Command::Curves { what, s, npoints } => cmd_curves(*what, &parse_list(s)?, *npoints, tol),
        Command::Fit {
            data,
            s,
            positions,
            no_refine,
        } => {
            let opts = PpccOptions {
                positions: match positions {
                    PositionsArg::Hazen => PlottingPositions::Hazen,
                    PositionsArg::Weibull => PlottingPositions::Weibull,
                    PositionsArg::Blom => PlottingPositions::Blom,
                },
                refine: !no_refine,
                ..PpccOptions::default()
            };
            cmd_fit(&read_data_file(data)?, &parse_grid(s)?, &opts)
        }
    }
}

pub fn cmd_eval(s: f64, zs: &[f64], rel_tol: Option<f64>) -> Result<Report, CliError> {
    let opts = EvalOptions {
        rel_tol: rel_tol.unwrap_or(EvalOptions::default().rel_tol),
        ..EvalOptions::default()
    };
    let mut table = Table::new(vec!["z", "value", "method", "est_error"]);
    for &z in zs {
        let v = polylog(s, z, &opts)?;
        table.push(vec![
            z.into(),
            v.value.into(),
            v.method.as_str().into(),
            v.est_error.into(),
        ]);
    }
    Ok(Report::ok(table))
}

pub fn cmd_dist(d: PolyDist, what: DistWhat, ps: &[f64], xs: &[f64]) -> Result<Report, CliError> {
    let (header, inputs, flag) = match what {
        DistWhat::Quantile => (vec!["p", "quantile"], ps, "--p"),
        DistWhat::Cdf => (vec!["x", "cdf"], xs, "--x"),
        DistWhat::Pdf => (vec!["x", "pdf"], xs, "--x"),
    };
    let other = if what == DistWhat::Quantile { xs } else { ps };
    if inputs.is_empty() || !other.is_empty() {
        return Err(CliError::Usage(format!(
            "--what {} takes its inputs from {flag}",
            what.to_possible_value()
                .expect("no skipped variants")
                .get_name()
        )));
    }
    let mut table = Table::new(header);
    for &v in inputs {
        let out = match what {
            DistWhat::Quantile => d.quantile(v)?,
            DistWhat::Cdf => d.cdf(v),
            DistWhat::Pdf => d.pdf(v),
        };
        table.push(vec![v.into(), out.into()]);
    }
    Ok(Report::ok(table))
}

pub fn cmd_sample(d: PolyDist, n: usize, seed: u64, summary: bool) -> Result<Report, CliError> {
    let draws = d.sample(n, seed)?;
    if !summary {
        let mut table = Table::new(vec!["value"]);
        for v in draws {
            table.push(vec![v.into()]);
        }
        return Ok(Report::ok(table));
    }
    let nf = n as f64;
    let mean = draws.iter().sum::<f64>() / nf;
    let var = draws.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (nf - 1.0);
    let min = draws.iter().copied().fold(f64::NAN, f64::min);
    let max = draws.iter().copied().fold(f64::NAN, f64::max);
    let mut table = Table::new(vec!["n", "mean", "variance", "min", "max"]);
    table.push(vec![
        Cell::Int(n as u64),
        mean.into(),
        var.into(),
        min.into(),
        max.into(),
    ]);
    Ok(Report::ok(table))
}

pub fn cmd_moments(
    grid: &[f64],
    max_order: u32,
    variance: bool,
    rel_tol: Option<f64>,
) -> Result<Report, CliError> {
    if max_order == 0 {
        return Err(CliError::Usage("--max-order must be at least 1".into()));
    }
    let per_shape: Vec<Vec<(Vec<Cell>, Option<String>)>> = grid
        .par_iter()
        .map(|&s| moment_rows(s, max_order, variance, rel_tol))
        .collect();
    let mut table = Table::new(vec!["s", "order", "value", "method"]);
    let mut messages = Vec::new();
    let mut successes = 0;
    for (row, msg) in per_shape.into_iter().flatten() {
        match &row[3] {
            Cell::Text(m) if m == "error" => {}
            _ => successes += 1,
        }
        table.push(row);
        messages.extend(msg);
    }
    Ok(Report {
        table,
        messages,
        success: successes > 0,
    })
}

fn moment_rows(
    s: f64,
    max_order: u32,
    variance: bool,
    rel_tol: Option<f64>,
) -> Vec<(Vec<Cell>, Option<String>)> {
    let d = dist(s, 0.0, 1.0, rel_tol);
    let mut rows = Vec::new();
    let mut emit = |order: Cell, res: Result<MomentResult, CliError>| match res {
        Ok(m) => {
            let note = m.diagnostic.map(|d| {
                format!(
                    "note: s={}, order={}: {d}",
                    format_num(s),
                    cell_text(&order)
                )
            });
            rows.push((
                vec![
                    s.into(),
                    order,
                    m.value.as_f64().into(),
                    m.method.as_str().into(),
                ],
                note,
            ));
        }
        Err(e) => {
            let msg = format!(
                "error: s={}, order={}: {e}",
                format_num(s),
                cell_text(&order)
            );
            rows.push((
                vec![s.into(), order, f64::NAN.into(), "error".into()],
                Some(msg),
            ));
        }
    };
    for m in 1..=max_order {
        let res = match &d {
            Ok(d) => d.moment(m).map_err(CliError::from),
            Err(e) => Err(CliError::Usage(e.to_string())),
        };
        emit(Cell::Int(m as u64), res);
    }
    if variance {
        let res = match &d {
            Ok(d) => d.variance().map_err(CliError::from),
            Err(e) => Err(CliError::Usage(e.to_string())),
        };
        emit("variance".into(), res);
    }
    rows
}

pub fn cmd_curves(
    what: CurveWhat,
    shapes: &[f64],
    npoints: usize,
    rel_tol: Option<f64>,
) -> Result<Report, CliError> {
    if npoints < 2 {
        return Err(CliError::Usage("--npoints must be at least 2".into()));
    }
    let label = match what {
        CurveWhat::Cdf => "cdf",
        CurveWhat::Pdf => "pdf",
    };
    let mut table = Table::new(vec!["s", "p", "x", label]);
    for &s in shapes {
        let d = dist(s, 0.0, 1.0, rel_tol)?;
        for i in 0..npoints {
            let p = i as f64 / (npoints - 1) as f64;
            let x = d.quantile(p)?;
            let value = match what {
                CurveWhat::Cdf => p,
                CurveWhat::Pdf => d.density_at_probability(p)?,
            };
            table.push(vec![s.into(), p.into(), x.into(), value.into()]);
        }
    }
    Ok(Report::ok(table))
}

pub fn cmd_fit(data: &[f64], grid: &[f64], opts: &PpccOptions) -> Result<Report, CliError> {
    let prof = fit_shape_with(data, grid, opts)?;
    let mut table = Table::new(vec!["kind", "s", "r", "family"]);
    for (&s, &r) in prof.grid.iter().zip(&prof.r) {
        table.push(vec!["profile".into(), s.into(), r.into(), "".into()]);
    }
    table.push(vec![
        "best".into(),
        prof.best_s.into(),
        prof.best_r.into(),
        prof.family.name.as_str().into(),
    ]);
    if opts.refine {
        let family = crate::families::nearest_named_family_with(prof.refined_s, &opts.bands);
        table.push(vec![
            "refined".into(),
            prof.refined_s.into(),
            prof.refined_r.into(),
            family.name.as_str().into(),
        ]);
    }
    Ok(Report::ok(table))
}
