//! Command-line front end over the verification library.
//!
//! Five subcommands: `eval` renders every formula at one parameter point,
//! `verify` runs the identity suite there, `scan` classifies signs along
//! an `x` grid, `surface` emits kernel lattice data with overlay
//! rectangles, and `campaign` runs the full default verification. Output
//! formats are `human`, `json`, and `csv`; floats are rendered with 17
//! significant digits so every printed value parses back bit-identically.
//!
//! Exit status is 0 when the command succeeds and every check passes, 1
//! when a verification or scan reports a failure, and 2 on usage or
//! domain errors. `--out FILE` writes a copy of the rendered output to
//! `FILE`; without it, the environment variable named by [`OUT_DIR_ENV`]
//! may supply a directory for a default report file.

use crate::error::Error;
use crate::formulas::{
    denominator, f_prime, f_value, h_closed, h_separable, h_sign, Params,
};
use crate::kernel::{full_rectangle, lattice, surface_grid, Overlay, Rect, SurfaceGrid};
use crate::quadrature::{h_double_integral, QuadSpec};
use crate::specfun::Interval;
use crate::verify::{
    campaign, default_a_values, scan_monotonicity, uniform_grid,
    verify_identities_with_tolerance, CampaignResult, ScanReport, Tolerance,
    VerificationReport,
};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use std::io::Write;
use std::path::PathBuf;

/// Environment variable naming a directory that receives a copy of each
/// command's rendered output when `--out` is not given.
pub const OUT_DIR_ENV: &str = "MONOVERIFY_OUT_DIR";

#[derive(Debug, Parser)]
#[command(
    name = "monoverify",
    version,
    about = "Cross-checked numerics for a Gaussian monotonicity family"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate f, the three forms of h, f', and the denominator at (x, a)
    Eval(EvalArgs),
    /// Run every identity cross-check at (x, a)
    Verify(VerifyArgs),
    /// Classify the sign of h and the direction of f along an x grid
    Scan(ScanArgs),
    /// Emit the kernel gamma on a lattice with overlay rectangles
    Surface(SurfaceArgs),
    /// Run identity checks and sign scans over the default grids
    Campaign(CampaignArgs),
}

#[derive(Debug, clap::Args)]
pub struct EvalArgs {
    /// Evaluation point, must be > 0
    #[arg(long, allow_hyphen_values = true)]
    pub x: f64,
    /// Scale parameter, must be > 0
    #[arg(long, allow_hyphen_values = true)]
    pub a: f64,
    #[arg(long, value_enum, default_value_t = OutputFormat::Human)]
    pub format: OutputFormat,
    /// Also write the rendered output to this file
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, clap::Args)]
pub struct VerifyArgs {
    /// Evaluation point, must be > 0
    #[arg(long, allow_hyphen_values = true)]
    pub x: f64,
    /// Scale parameter, must be > 0
    #[arg(long, allow_hyphen_values = true)]
    pub a: f64,
    /// Replace every per-check absolute tolerance (default 0 when only
    /// --rel-tol is given)
    #[arg(long, allow_hyphen_values = true)]
    pub abs_tol: Option<f64>,
    /// Replace every per-check relative tolerance (default 0 when only
    /// --abs-tol is given)
    #[arg(long, allow_hyphen_values = true)]
    pub rel_tol: Option<f64>,
    #[arg(long, value_enum, default_value_t = OutputFormat::Human)]
    pub format: OutputFormat,
    /// Also write the rendered output to this file
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, clap::Args)]
pub struct ScanArgs {
    /// Scale parameter, must be > 0
    #[arg(long, allow_hyphen_values = true)]
    pub a: f64,
    #[arg(long, default_value_t = 0.1, allow_hyphen_values = true)]
    pub x_min: f64,
    #[arg(long, default_value_t = 3.0, allow_hyphen_values = true)]
    pub x_max: f64,
    #[arg(long, default_value_t = 0.05, allow_hyphen_values = true)]
    pub step: f64,
    #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
    pub format: OutputFormat,
    /// Also write the rendered output to this file
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, clap::Args)]
pub struct SurfaceArgs {
    /// Evaluation point defining the overlays, must be > 0
    #[arg(long, allow_hyphen_values = true)]
    pub x: f64,
    /// Scale parameter defining the overlays, must be > 0
    #[arg(long, allow_hyphen_values = true)]
    pub a: f64,
    /// Half-width of the lattice square [-extent, extent]^2
    #[arg(long, default_value_t = 1.6, allow_hyphen_values = true)]
    pub extent: f64,
    /// Lattice points per axis, at least 2
    #[arg(long, default_value_t = 161)]
    pub n: usize,
    #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
    pub format: OutputFormat,
    /// Also write the rendered output to this file
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, clap::Args)]
pub struct CampaignArgs {
    /// Comma-separated scale parameters (default: the built-in grid)
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub a_values: Option<Vec<f64>>,
    #[arg(long, default_value_t = 0.1, allow_hyphen_values = true)]
    pub x_min: f64,
    #[arg(long, default_value_t = 3.0, allow_hyphen_values = true)]
    pub x_max: f64,
    #[arg(long, default_value_t = 0.05, allow_hyphen_values = true)]
    pub step: f64,
    #[arg(long, value_enum, default_value_t = OutputFormat::Human)]
    pub format: OutputFormat,
    /// Also write the rendered output to this file
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Human,
    Json,
    Csv,
}

impl OutputFormat {
    fn extension(self) -> &'static str {
        match self {
            OutputFormat::Human => "txt",
            OutputFormat::Json => "json",
            OutputFormat::Csv => "csv",
        }
    }
}

/// A command's rendered output, exit code, and optional file target.
struct Rendering {
    text: String,
    exit: i32,
    out: Option<PathBuf>,
}

/// Dispatches a parsed command line, writing rendered output to `stdout`
/// and diagnostics to `stderr`. Returns the process exit code: 0 for
/// success, 1 for failed checks, 2 for usage or domain errors.
pub fn run(cli: Cli, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let outcome = match &cli.command {
        Command::Eval(args) => cmd_eval(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Scan(args) => cmd_scan(args),
        Command::Surface(args) => cmd_surface(args),
        Command::Campaign(args) => cmd_campaign(args),
    };
    match outcome {
        Ok(rendering) => {
            let _ = stdout.write_all(rendering.text.as_bytes());
            if let Some(path) = &rendering.out {
                if let Err(e) = std::fs::write(path, rendering.text.as_bytes()) {
                    let _ = writeln!(stderr, "error: cannot write {}: {e}", path.display());
                    return 2;
                }
            }
            rendering.exit
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            2
        }
    }
}

/// 17 significant digits; every rendered float parses back to the same
/// bits.
fn fmt(v: f64) -> String {
    format!("{v:.16e}")
}

fn json<T: Serialize>(value: &T) -> Result<String, Error> {
    serde_json::to_string_pretty(value)
        .map(|mut s| {
            s.push('\n');
            s
        })
        .map_err(|e| Error::InvalidArgument(format!("serialization failed: {e}")))
}

/// The file target: an explicit `--out` wins, otherwise the directory
/// named by [`OUT_DIR_ENV`] receives `<command>.<ext>`.
fn resolve_out(explicit: &Option<PathBuf>, command: &str, format: OutputFormat) -> Option<PathBuf> {
    if let Some(path) = explicit {
        return Some(path.clone());
    }
    std::env::var_os(OUT_DIR_ENV)
        .map(|dir| PathBuf::from(dir).join(format!("{command}.{}", format.extension())))
}

/// Everything `eval` prints, in one serializable record.
#[derive(Debug, Serialize)]
struct EvalRecord {
    x: f64,
    a: f64,
    f: f64,
    h_closed: f64,
    h_separable: f64,
    h_double_integral: f64,
    h_double_integral_err_estimate: f64,
    h_sign: i32,
    f_prime: f64,
    denominator: f64,
}

fn cmd_eval(args: &EvalArgs) -> Result<Rendering, Error> {
    let p = Params::new(args.x, args.a)?;
    let dbl = h_double_integral(p, &QuadSpec::default())?;
    let record = EvalRecord {
        x: p.x(),
        a: p.a(),
        f: f_value(p),
        h_closed: h_closed(p),
        h_separable: h_separable(p),
        h_double_integral: dbl.value,
        h_double_integral_err_estimate: dbl.err_estimate,
        h_sign: h_sign(p),
        f_prime: f_prime(p),
        denominator: denominator(p),
    };
    let text = match args.format {
        OutputFormat::Json => json(&record)?,
        OutputFormat::Csv => {
            let mut s = String::from(
                "x,a,f,h_closed,h_separable,h_double_integral,\
                 h_double_integral_err_estimate,h_sign,f_prime,denominator\n",
            );
            s.push_str(&format!(
                "{},{},{},{},{},{},{},{},{},{}\n",
                fmt(record.x),
                fmt(record.a),
                fmt(record.f),
                fmt(record.h_closed),
                fmt(record.h_separable),
                fmt(record.h_double_integral),
                fmt(record.h_double_integral_err_estimate),
                record.h_sign,
                fmt(record.f_prime),
                fmt(record.denominator),
            ));
            s
        }
        OutputFormat::Human => {
            let mut s = String::new();
            s.push_str(&format!("{:<32}{}\n", "x", fmt(record.x)));
            s.push_str(&format!("{:<32}{}\n", "a", fmt(record.a)));
            s.push_str(&format!("{:<32}{}\n", "f", fmt(record.f)));
            s.push_str(&format!("{:<32}{}\n", "h_closed", fmt(record.h_closed)));
            s.push_str(&format!("{:<32}{}\n", "h_separable", fmt(record.h_separable)));
            s.push_str(&format!(
                "{:<32}{}\n",
                "h_double_integral",
                fmt(record.h_double_integral)
            ));
            s.push_str(&format!(
                "{:<32}{}\n",
                "h_double_integral_err_estimate",
                fmt(record.h_double_integral_err_estimate)
            ));
            s.push_str(&format!("{:<32}{}\n", "h_sign", record.h_sign));
            s.push_str(&format!("{:<32}{}\n", "f_prime", fmt(record.f_prime)));
            s.push_str(&format!("{:<32}{}\n", "denominator", fmt(record.denominator)));
            s
        }
    };
    Ok(Rendering {
        text,
        exit: 0,
        out: resolve_out(&args.out, "eval", args.format),
    })
}

fn validate_tol_flag(name: &str, value: Option<f64>) -> Result<(), Error> {
    if let Some(t) = value {
        if !(t.is_finite() && t >= 0.0) {
            return Err(Error::InvalidArgument(format!(
                "--{name} must be finite and >= 0, got {t}"
            )));
        }
    }
    Ok(())
}

fn reports_csv(reports: &[VerificationReport]) -> String {
    let mut s = String::from("check_name,lhs,rhs,abs_err,rel_err,abs_tol,rel_tol,pass,note\n");
    for r in reports {
        s.push_str(&format!(
            "{},{},{},{},{},{},{},{},{}\n",
            r.check_name,
            fmt(r.lhs),
            fmt(r.rhs),
            fmt(r.abs_err),
            fmt(r.rel_err),
            fmt(r.abs_tol),
            fmt(r.rel_tol),
            r.pass,
            r.note.as_deref().unwrap_or(""),
        ));
    }
    s
}

fn reports_human(reports: &[VerificationReport]) -> String {
    let mut s = String::new();
    for r in reports {
        s.push_str(&format!(
            "{:<34}{:<6}lhs={:<24} rhs={:<24} abs_err={:.3e} rel_err={:.3e}",
            r.check_name,
            if r.pass { "PASS" } else { "FAIL" },
            fmt(r.lhs),
            fmt(r.rhs),
            r.abs_err,
            r.rel_err,
        ));
        if let Some(note) = &r.note {
            s.push_str(&format!(" note: {note}"));
        }
        s.push('\n');
    }
    let passed = reports.iter().filter(|r| r.pass).count();
    s.push_str(&format!("checks passed: {passed}/{}\n", reports.len()));
    s
}

fn cmd_verify(args: &VerifyArgs) -> Result<Rendering, Error> {
    let p = Params::new(args.x, args.a)?;
    validate_tol_flag("abs-tol", args.abs_tol)?;
    validate_tol_flag("rel-tol", args.rel_tol)?;
    let override_tol = match (args.abs_tol, args.rel_tol) {
        (None, None) => None,
        (abs, rel) => Some(Tolerance::new(abs.unwrap_or(0.0), rel.unwrap_or(0.0))),
    };
    let reports = verify_identities_with_tolerance(p, &QuadSpec::default(), override_tol)?;
    let all_pass = reports.iter().all(|r| r.pass);
    let text = match args.format {
        OutputFormat::Json => json(&reports)?,
        OutputFormat::Csv => reports_csv(&reports),
        OutputFormat::Human => reports_human(&reports),
    };
    Ok(Rendering {
        text,
        exit: if all_pass { 0 } else { 1 },
        out: resolve_out(&args.out, "verify", args.format),
    })
}

fn scan_csv(report: &ScanReport) -> String {
    let mut s = String::from("x,a,f,h,f_prime,sign_expected,sign_observed,consistent\n");
    for r in &report.rows {
        s.push_str(&format!(
            "{},{},{},{},{},{},{},{}\n",
            fmt(r.x),
            fmt(r.a),
            fmt(r.f),
            fmt(r.h),
            fmt(r.f_prime),
            r.sign_expected,
            r.sign_observed,
            r.consistent,
        ));
    }
    s
}

fn scan_human(report: &ScanReport) -> String {
    let mut s = String::new();
    for r in &report.rows {
        s.push_str(&format!(
            "x={:<24} f={:<24} h={:<24} f_prime={:<24} expected={} observed={} {}\n",
            fmt(r.x),
            fmt(r.f),
            fmt(r.h),
            fmt(r.f_prime),
            r.sign_expected,
            r.sign_observed,
            if r.consistent { "ok" } else { "INCONSISTENT" },
        ));
    }
    s.push_str(&format!(
        "monotone-consistent: {} ({} rows, worst violation {})\n",
        report.monotone_consistent,
        report.rows.len(),
        fmt(report.worst_violation),
    ));
    s
}

fn cmd_scan(args: &ScanArgs) -> Result<Rendering, Error> {
    let grid = uniform_grid(args.x_min, args.x_max, args.step)?;
    let report = scan_monotonicity(args.a, &grid, &QuadSpec::default())?;
    let text = match args.format {
        OutputFormat::Json => json(&report)?,
        OutputFormat::Csv => scan_csv(&report),
        OutputFormat::Human => scan_human(&report),
    };
    Ok(Rendering {
        text,
        exit: if report.monotone_consistent { 0 } else { 1 },
        out: resolve_out(&args.out, "scan", args.format),
    })
}

fn rect_within(outer: &Rect, inner: &Rect) -> bool {
    outer.u.lo() <= inner.u.lo()
        && inner.u.hi() <= outer.u.hi()
        && outer.v.lo() <= inner.v.lo()
        && inner.v.hi() <= outer.v.hi()
}

fn surface_csv(grid: &SurfaceGrid) -> String {
    let us = lattice(grid.region.u, grid.n_u);
    let vs = lattice(grid.region.v, grid.n_v);
    let mut s = String::from("u,v,gamma\n");
    for (i, &u) in us.iter().enumerate() {
        for (j, &v) in vs.iter().enumerate() {
            s.push_str(&format!(
                "{},{},{}\n",
                fmt(u),
                fmt(v),
                fmt(grid.values[i * grid.n_v + j])
            ));
        }
    }
    s
}

fn surface_human(grid: &SurfaceGrid) -> String {
    let lo = grid.values.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = grid.values.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let mut s = format!(
        "lattice: {} x {} over u in [{}, {}], v in [{}, {}]\n",
        grid.n_u,
        grid.n_v,
        fmt(grid.region.u.lo()),
        fmt(grid.region.u.hi()),
        fmt(grid.region.v.lo()),
        fmt(grid.region.v.hi()),
    );
    s.push_str(&format!("gamma range: [{}, {}]\n", fmt(lo), fmt(hi)));
    s.push_str("overlays:\n");
    for o in &grid.overlays {
        s.push_str(&format!(
            "  {:<18}u in [{}, {}], v in [{}, {}]\n",
            o.label,
            fmt(o.rect.u.lo()),
            fmt(o.rect.u.hi()),
            fmt(o.rect.v.lo()),
            fmt(o.rect.v.hi()),
        ));
    }
    s
}

fn cmd_surface(args: &SurfaceArgs) -> Result<Rendering, Error> {
    let p = Params::new(args.x, args.a)?;
    if !(args.extent.is_finite() && args.extent > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "--extent must be finite and > 0, got {}",
            args.extent
        )));
    }
    let half = Interval::new(-args.extent, args.extent)?;
    let region = Rect::new(half, half);
    let mut grid = surface_grid(region, args.n, args.n)?;

    let m = p.x().min(p.a() * p.x());
    let core_iv = Interval::new(-m, m)?;
    let overlays = vec![
        Overlay {
            label: "core_square".into(),
            rect: Rect::new(core_iv, core_iv),
        },
        Overlay {
            label: "full_rectangle".into(),
            rect: full_rectangle(p),
        },
    ];
    for o in &overlays {
        if !rect_within(&region, &o.rect) {
            return Err(Error::InvalidSurface(format!(
                "overlay {} exceeds the lattice region; set --extent to at least {}",
                o.label,
                p.x().max(p.a() * p.x()),
            )));
        }
    }
    grid.overlays = overlays;

    let text = match args.format {
        OutputFormat::Json => json(&grid)?,
        OutputFormat::Csv => surface_csv(&grid),
        OutputFormat::Human => surface_human(&grid),
    };
    Ok(Rendering {
        text,
        exit: 0,
        out: resolve_out(&args.out, "surface", args.format),
    })
}

fn campaign_human(result: &CampaignResult) -> String {
    let mut s = format!("{}\n", result.summary);
    for scan in &result.scans {
        let a = scan.rows.first().map(|r| r.a).unwrap_or(f64::NAN);
        s.push_str(&format!(
            "scan a={}: {} ({} rows, worst violation {})\n",
            fmt(a),
            if scan.monotone_consistent {
                "consistent"
            } else {
                "INCONSISTENT"
            },
            scan.rows.len(),
            fmt(scan.worst_violation),
        ));
    }
    let failing: Vec<&VerificationReport> =
        result.reports.iter().filter(|r| !r.pass).collect();
    if failing.is_empty() {
        s.push_str("failed checks: none\n");
    } else {
        s.push_str("failed checks:\n");
        s.push_str(&reports_human(&failing.into_iter().cloned().collect::<Vec<_>>()));
    }
    s
}

fn cmd_campaign(args: &CampaignArgs) -> Result<Rendering, Error> {
    let a_values = args.a_values.clone().unwrap_or_else(default_a_values);
    let grid = uniform_grid(args.x_min, args.x_max, args.step)?;
    let result = campaign(&a_values, &grid, &QuadSpec::default())?;
    let text = match args.format {
        OutputFormat::Json => json(&result)?,
        OutputFormat::Csv => reports_csv(&result.reports),
        OutputFormat::Human => campaign_human(&result),
    };
    Ok(Rendering {
        text,
        exit: if result.all_pass() { 0 } else { 1 },
        out: resolve_out(&args.out, "campaign", args.format),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (i32, String, String) {
        let cli = Cli::try_parse_from(args).expect("test arguments parse");
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(cli, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn eval_human_prints_every_field() {
        let (code, out, err) = run_args(&["monoverify", "eval", "--x", "1", "--a", "1.4"]);
        assert_eq!(code, 0, "stderr: {err}");
        for label in [
            "x", "a", "f", "h_closed", "h_separable", "h_double_integral", "h_sign",
            "f_prime", "denominator",
        ] {
            assert!(out.contains(label), "missing {label} in {out}");
        }
    }

    #[test]
    fn eval_json_is_zero_at_equal_scales() {
        let (code, out, _) = run_args(&[
            "monoverify", "eval", "--x", "1", "--a", "1", "--format", "json",
        ]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["f"].as_f64().unwrap(), 0.0);
        assert_eq!(v["h_closed"].as_f64().unwrap(), 0.0);
        assert_eq!(v["h_sign"].as_i64().unwrap(), 0);
    }

    #[test]
    fn eval_rejects_nonpositive_x() {
        let (code, out, err) = run_args(&["monoverify", "eval", "--x", "-1", "--a", "2"]);
        assert_eq!(code, 2);
        assert!(out.is_empty());
        assert!(err.starts_with("error:"), "stderr was: {err}");
    }

    #[test]
    fn verify_passes_at_default_tolerances() {
        let (code, out, _) = run_args(&["monoverify", "verify", "--x", "1", "--a", "1.4"]);
        assert_eq!(code, 0, "output: {out}");
        assert!(out.contains("checks passed: 11/11"));
    }

    #[test]
    fn verify_fails_at_unattainable_tolerance() {
        let (code, out, _) = run_args(&[
            "monoverify", "verify", "--x", "1", "--a", "1.4", "--rel-tol", "1e-30",
        ]);
        assert_eq!(code, 1);
        assert!(out.contains("FAIL"));
    }

    #[test]
    fn verify_rejects_negative_tolerance() {
        let (code, _, err) = run_args(&[
            "monoverify", "verify", "--x", "1", "--a", "1.4", "--abs-tol", "-1e-3",
        ]);
        assert_eq!(code, 2);
        assert!(err.contains("abs-tol"));
    }

    #[test]
    fn scan_defaults_to_csv_with_exact_header() {
        let (code, out, _) = run_args(&["monoverify", "scan", "--a", "1.4"]);
        assert_eq!(code, 0);
        let lines: Vec<&str> = out.lines().collect();
        assert_eq!(
            lines[0],
            "x,a,f,h,f_prime,sign_expected,sign_observed,consistent"
        );
        assert_eq!(lines.len(), 60);
        for row in &lines[1..] {
            assert!(row.ends_with(",true"), "inconsistent row: {row}");
        }
    }

    #[test]
    fn scan_flat_case_prints_tiny_f() {
        let (code, out, _) = run_args(&["monoverify", "scan", "--a", "1"]);
        assert_eq!(code, 0);
        for row in out.lines().skip(1) {
            let f: f64 = row.split(',').nth(2).unwrap().parse().unwrap();
            assert!(f.abs() <= 1e-14, "row: {row}");
        }
    }

    #[test]
    fn scan_rejects_bad_range() {
        let (code, _, err) = run_args(&[
            "monoverify", "scan", "--a", "1.4", "--x-min", "3", "--x-max", "1",
        ]);
        assert_eq!(code, 2);
        assert!(err.starts_with("error:"));
        let (code, _, _) = run_args(&["monoverify", "scan", "--a", "1.4", "--step", "-0.05"]);
        assert_eq!(code, 2);
    }

    #[test]
    fn surface_csv_has_header_and_full_lattice() {
        let (code, out, _) = run_args(&[
            "monoverify", "surface", "--x", "1", "--a", "1.4", "--extent", "1.6", "--n", "5",
        ]);
        assert_eq!(code, 0);
        let lines: Vec<&str> = out.lines().collect();
        assert_eq!(lines[0], "u,v,gamma");
        assert_eq!(lines.len(), 1 + 25);
    }

    #[test]
    fn surface_json_carries_both_overlays() {
        let (code, out, _) = run_args(&[
            "monoverify", "surface", "--x", "1", "--a", "1.4", "--extent", "1.6", "--n", "9",
            "--format", "json",
        ]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        let overlays = v["overlays"].as_array().unwrap();
        assert_eq!(overlays.len(), 2);
        assert_eq!(overlays[0]["label"], "core_square");
        assert_eq!(overlays[1]["label"], "full_rectangle");
        assert_eq!(overlays[1]["rect"]["u"]["hi"].as_f64().unwrap(), 1.4);
    }

    #[test]
    fn surface_overlays_coincide_at_equal_scales() {
        let (code, out, _) = run_args(&[
            "monoverify", "surface", "--x", "1", "--a", "1", "--extent", "1.6", "--n", "9",
            "--format", "json",
        ]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        let overlays = v["overlays"].as_array().unwrap();
        assert_eq!(overlays[0]["rect"], overlays[1]["rect"]);
    }

    #[test]
    fn surface_rejects_extent_smaller_than_overlays() {
        let (code, _, err) = run_args(&[
            "monoverify", "surface", "--x", "1", "--a", "1.4", "--extent", "1.2",
        ]);
        assert_eq!(code, 2);
        assert!(err.contains("full_rectangle"), "stderr was: {err}");
    }

    #[test]
    fn campaign_degenerate_grid_passes() {
        let (code, out, err) = run_args(&[
            "monoverify", "campaign", "--a-values", "1", "--x-min", "1", "--x-max", "1",
            "--step", "0.5",
        ]);
        assert_eq!(code, 0, "stdout: {out}\nstderr: {err}");
        assert!(out.contains("overall: PASS"));
        assert!(out.contains("failed checks: none"));
    }

    #[test]
    fn campaign_json_summary_counts_match() {
        let (code, out, _) = run_args(&[
            "monoverify", "campaign", "--a-values", "0.5,1,1.4", "--x-min", "0.5",
            "--x-max", "2.5", "--step", "0.5", "--format", "json",
        ]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        let reports = v["reports"].as_array().unwrap();
        assert!(reports.iter().all(|r| r["pass"].as_bool().unwrap()));
        assert_eq!(v["scans"].as_array().unwrap().len(), 3);
        assert!(v["summary"].as_str().unwrap().contains("overall: PASS"));
    }

    #[test]
    fn explicit_out_path_wins_over_environment() {
        let explicit = Some(PathBuf::from("/tmp/custom.json"));
        let resolved = resolve_out(&explicit, "eval", OutputFormat::Json);
        assert_eq!(resolved, Some(PathBuf::from("/tmp/custom.json")));
    }

    #[test]
    fn format_round_trips_through_17_digits() {
        for v in [0.1, 1.4, -2.9e-13, 3.0, f64::MIN_POSITIVE, 0.7814770540969252] {
            let printed = fmt(v);
            let back: f64 = printed.parse().unwrap();
            assert_eq!(back.to_bits(), v.to_bits(), "printed {printed}");
        }
    }
}
