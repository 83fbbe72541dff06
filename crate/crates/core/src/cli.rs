//! Command-line front end: figure-style sweeps, stability maps, the
//! material-parameter Kerr estimator and the Monte Carlo oracle check.
//!
//! All numeric output is CSV with a `#`-comment header echoing the fully
//! resolved configuration, `.` decimal points and no locale dependence.
//! Exit codes: 0 success, 1 oracle disagreement, 2 invalid configuration,
//! 3 I/O failure.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};

use crate::error::{Error, Result};
use crate::model::{self, FixedPoint, Stability};
use crate::oracle::{self, OracleConfig};
use crate::spectra::{self, Mode};

pub const EXIT_ORACLE_DISAGREEMENT: i32 = 1;
pub const EXIT_INVALID_CONFIG: i32 = 2;
pub const EXIT_IO: i32 = 3;

/// Physical crystal/cavity parameters feeding the Kerr-strength
/// estimate.
#[derive(Debug, Clone, Copy)]
pub struct MaterialParams {
    /// Mirror transmission for the harmonic mode, in (0, 1].
    pub t_b: f64,
    /// Harmonic wavelength in meters.
    pub lambda_b: f64,
    /// Crystal length in meters.
    pub length: f64,
    /// Second-order susceptibility.
    pub chi2: f64,
    /// Third-order susceptibility.
    pub chi3: f64,
}

impl MaterialParams {
    pub fn new(t_b: f64, lambda_b: f64, length: f64, chi2: f64, chi3: f64) -> Result<Self> {
        let all_positive =
            t_b > 0.0 && lambda_b > 0.0 && length > 0.0 && chi2 > 0.0 && chi3 > 0.0;
        if !all_positive || t_b > 1.0 {
            return Err(Error::Domain(
                "material parameters must be positive with t_b <= 1".into(),
            ));
        }
        Ok(Self { t_b, lambda_b, length, chi2, chi3 })
    }
}

/// Scaled Kerr strength achievable with the given material parameters.
pub fn estimate_lambda(m: &MaterialParams) -> f64 {
    (m.t_b / (4.0 * std::f64::consts::PI)) * (m.lambda_b / m.length)
        * (m.chi3 / (m.chi2 * m.chi2))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Fundamental,
    Harmonic,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Fundamental => Mode::Fundamental,
            ModeArg::Harmonic => Mode::Harmonic,
        }
    }
}

impl FromStr for ModeArg {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "fundamental" => Ok(ModeArg::Fundamental),
            "harmonic" => Ok(ModeArg::Harmonic),
            other => Err(format!("unknown mode '{other}'")),
        }
    }
}

#[derive(Parser)]
#[command(
    name = "cavity-squeeze",
    version,
    about = "Squeezing spectra and stability of a two-mode cavity with competing nonlinearities"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Photon-number sweep of the optimized squeezing spectrum,
    /// conjugate-quadrature noise and conversion efficiencies.
    Sweep(SweepArgs),
    /// Long-format (n, omega) surface of the optimally squeezed
    /// quadrature noise.
    Surface(SurfaceArgs),
    /// Map of the leading drift eigenvalue over a (lambda, n) grid.
    StabilityMap(StabilityMapArgs),
    /// Kerr strength reachable with given material parameters.
    Material(MaterialArgs),
    /// Monte Carlo cross-check of the analytic spectrum matrix.
    OracleCheck(OracleCheckArgs),
}

#[derive(clap::Args)]
struct SweepArgs {
    #[arg(long)]
    r: Option<f64>,
    #[arg(long)]
    lambda_kerr: Option<f64>,
    #[arg(long, value_enum)]
    mode: Option<ModeArg>,
    #[arg(long)]
    n_min: Option<f64>,
    #[arg(long)]
    n_max: Option<f64>,
    #[arg(long)]
    n_steps: Option<usize>,
    /// Axis rescale factor for the reduced-coupling comparison curve;
    /// multiplies the reported photon-number column.
    #[arg(long)]
    kappa_scale: Option<f64>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    config: Option<PathBuf>,
    /// Also write a companion python plot script next to the CSV.
    #[arg(long)]
    emit_plot_script: bool,
}

#[derive(clap::Args)]
struct SurfaceArgs {
    #[arg(long)]
    r: Option<f64>,
    #[arg(long)]
    lambda_kerr: Option<f64>,
    #[arg(long, value_enum)]
    mode: Option<ModeArg>,
    #[arg(long)]
    n_min: Option<f64>,
    #[arg(long)]
    n_max: Option<f64>,
    #[arg(long)]
    n_steps: Option<usize>,
    #[arg(long)]
    omega_min: Option<f64>,
    #[arg(long)]
    omega_max: Option<f64>,
    #[arg(long)]
    omega_steps: Option<usize>,
    /// Report the noise in decibels relative to vacuum.
    #[arg(long, conflicts_with = "linear")]
    db: bool,
    /// Report the noise in vacuum noise units (default).
    #[arg(long)]
    linear: bool,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    emit_plot_script: bool,
}

#[derive(clap::Args)]
struct StabilityMapArgs {
    #[arg(long)]
    r: Option<f64>,
    #[arg(long)]
    lambda_min: Option<f64>,
    #[arg(long)]
    lambda_max: Option<f64>,
    #[arg(long)]
    lambda_steps: Option<usize>,
    #[arg(long)]
    n_min: Option<f64>,
    #[arg(long)]
    n_max: Option<f64>,
    #[arg(long)]
    n_steps: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(clap::Args)]
struct MaterialArgs {
    /// Mirror transmission for the harmonic mode.
    #[arg(long)]
    t_b: Option<f64>,
    /// Harmonic wavelength in meters.
    #[arg(long)]
    lambda_b: Option<f64>,
    /// Crystal length in meters.
    #[arg(long)]
    length: Option<f64>,
    #[arg(long)]
    chi2: Option<f64>,
    #[arg(long)]
    chi3: Option<f64>,
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(clap::Args)]
struct OracleCheckArgs {
    #[arg(long)]
    r: Option<f64>,
    #[arg(long)]
    lambda_kerr: Option<f64>,
    /// Photon number of the probed fixed point.
    #[arg(long)]
    n: Option<f64>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    dt: Option<f64>,
    #[arg(long)]
    t_total: Option<f64>,
    #[arg(long)]
    n_traj: Option<usize>,
    #[arg(long)]
    t_segment: Option<f64>,
    #[arg(long)]
    g0_sq: Option<f64>,
    #[arg(long)]
    omega_min: Option<f64>,
    #[arg(long)]
    omega_max: Option<f64>,
    #[arg(long)]
    omega_steps: Option<usize>,
    #[arg(long)]
    config: Option<PathBuf>,
}

/// A fatal CLI error carrying its process exit code.
#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    fn config(message: impl Into<String>) -> Self {
        Self { code: EXIT_INVALID_CONFIG, message: message.into() }
    }

    fn io(path: &Path, err: std::io::Error) -> Self {
        Self { code: EXIT_IO, message: format!("{}: {err}", path.display()) }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::config(e.to_string())
    }
}

/// Optional `key = value` file; flags always win over file entries.
struct FileConfig(HashMap<String, String>);

impl FileConfig {
    fn load(path: Option<&PathBuf>) -> std::result::Result<Self, CliError> {
        let mut map = HashMap::new();
        if let Some(path) = path {
            let text = fs::read_to_string(path)
                .map_err(|e| CliError::config(format!("{}: {e}", path.display())))?;
            for (lineno, line) in text.lines().enumerate() {
                let line = line.trim();
                if line.is_empty() || line.starts_with('#') {
                    continue;
                }
                let (key, value) = line.split_once('=').ok_or_else(|| {
                    CliError::config(format!(
                        "{}:{}: expected key=value",
                        path.display(),
                        lineno + 1
                    ))
                })?;
                map.insert(key.trim().to_string(), value.trim().to_string());
            }
        }
        Ok(Self(map))
    }

    fn get<T: FromStr>(&self, key: &str) -> std::result::Result<Option<T>, CliError> {
        match self.0.get(key) {
            None => Ok(None),
            Some(raw) => raw
                .parse()
                .map(Some)
                .map_err(|_| CliError::config(format!("bad value for '{key}': {raw}"))),
        }
    }
}

fn resolve<T: FromStr>(
    flag: Option<T>,
    file: &FileConfig,
    key: &str,
    default: T,
) -> std::result::Result<T, CliError> {
    Ok(flag.or(file.get(key)?).unwrap_or(default))
}

fn resolve_required<T: FromStr>(
    flag: Option<T>,
    file: &FileConfig,
    key: &str,
) -> std::result::Result<T, CliError> {
    flag.or(file.get(key)?)
        .ok_or_else(|| CliError::config(format!("missing required parameter '--{key}'")))
}

fn linspace(min: f64, max: f64, steps: usize) -> std::result::Result<Vec<f64>, CliError> {
    if steps == 0 || !min.is_finite() || !max.is_finite() || max < min {
        return Err(CliError::config(format!("bad grid: min={min} max={max} steps={steps}")));
    }
    if steps == 1 {
        return Ok(vec![min]);
    }
    let h = (max - min) / (steps - 1) as f64;
    Ok((0..steps).map(|i| min + i as f64 * h).collect())
}

fn check_r_lambda(r: f64, lambda_kerr: f64) -> std::result::Result<(), CliError> {
    if !(r > 0.0) || !(lambda_kerr >= 0.0) {
        return Err(CliError::config(format!(
            "need r > 0 and lambda-kerr >= 0, got r={r} lambda-kerr={lambda_kerr}"
        )));
    }
    Ok(())
}

fn write_output(path: &Path, contents: &str) -> std::result::Result<(), CliError> {
    fs::write(path, contents).map_err(|e| CliError::io(path, e))
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

fn mode_name(mode: Mode) -> &'static str {
    match mode {
        Mode::Fundamental => "fundamental",
        Mode::Harmonic => "harmonic",
    }
}

/// Parses the process arguments, runs the selected command and returns
/// the process exit code.
pub fn run() -> i32 {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {}", e.message);
            e.code
        }
    }
}

fn dispatch(cli: Cli) -> std::result::Result<(), CliError> {
    match cli.command {
        Command::Sweep(args) => cmd_sweep(args),
        Command::Surface(args) => cmd_surface(args),
        Command::StabilityMap(args) => cmd_stability_map(args),
        Command::Material(args) => cmd_material(args),
        Command::OracleCheck(args) => cmd_oracle_check(args),
    }
}

fn cmd_sweep(args: SweepArgs) -> std::result::Result<(), CliError> {
    let file = FileConfig::load(args.config.as_ref())?;
    let r: f64 = resolve_required(args.r, &file, "r")?;
    let lambda_kerr: f64 = resolve(args.lambda_kerr, &file, "lambda-kerr", 0.0)?;
    let mode: Mode = resolve(args.mode, &file, "mode", ModeArg::Fundamental)?.into();
    let n_min: f64 = resolve(args.n_min, &file, "n-min", 0.0)?;
    let n_max: f64 = resolve_required(args.n_max, &file, "n-max")?;
    let n_steps: usize = resolve(args.n_steps, &file, "n-steps", 100)?;
    let kappa_scale: f64 = resolve(args.kappa_scale, &file, "kappa-scale", 1.0)?;
    let seed: u64 = resolve(args.seed, &file, "seed", 0)?;
    let out: PathBuf = resolve_required(args.out, &file, "out")?;
    check_r_lambda(r, lambda_kerr)?;
    if !(kappa_scale > 0.0) {
        return Err(CliError::config("kappa-scale must be positive"));
    }

    let grid = linspace(n_min, n_max, n_steps)?;
    let rows = spectra::sweep(&grid, r, lambda_kerr, mode)?;

    let mut csv = format!(
        "# command=sweep r={r} lambda-kerr={lambda_kerr} mode={} n-min={n_min} n-max={n_max} \
         n-steps={n_steps} kappa-scale={kappa_scale} seed={seed}\n",
        mode_name(mode)
    );
    csv.push_str("n,omega_m,s_minus,s_plus,s_minus_db,s_plus_db,eta_a,eta_b,stable\n");
    for row in &rows {
        let _ = writeln!(
            csv,
            "{},{},{},{},{},{},{},{},{}",
            row.n * kappa_scale,
            fmt_opt(row.omega_m),
            fmt_opt(row.s_minus),
            fmt_opt(row.s_plus),
            fmt_opt(row.s_minus.map(spectra::to_db)),
            fmt_opt(row.s_plus.map(spectra::to_db)),
            row.eta_a,
            row.eta_b,
            row.stability == Stability::Stable,
        );
    }
    write_output(&out, &csv)?;
    if args.emit_plot_script {
        emit_plot_script(&out, "n", &["s_minus_db", "s_plus_db"], "sweep")?;
    }
    Ok(())
}

fn cmd_surface(args: SurfaceArgs) -> std::result::Result<(), CliError> {
    let file = FileConfig::load(args.config.as_ref())?;
    let r: f64 = resolve_required(args.r, &file, "r")?;
    let lambda_kerr: f64 = resolve(args.lambda_kerr, &file, "lambda-kerr", 0.0)?;
    let mode: Mode = resolve(args.mode, &file, "mode", ModeArg::Fundamental)?.into();
    let n_min: f64 = resolve(args.n_min, &file, "n-min", 0.0)?;
    let n_max: f64 = resolve_required(args.n_max, &file, "n-max")?;
    let n_steps: usize = resolve(args.n_steps, &file, "n-steps", 50)?;
    let omega_min: f64 = resolve(args.omega_min, &file, "omega-min", 0.0)?;
    let omega_max: f64 = resolve_required(args.omega_max, &file, "omega-max")?;
    let omega_steps: usize = resolve(args.omega_steps, &file, "omega-steps", 50)?;
    let db = args.db || matches!(file.get::<String>("scale")?.as_deref(), Some("db"));
    let out: PathBuf = resolve_required(args.out, &file, "out")?;
    check_r_lambda(r, lambda_kerr)?;

    let n_grid = linspace(n_min, n_max, n_steps)?;
    let omega_grid = linspace(omega_min, omega_max, omega_steps)?;

    let mut csv = format!(
        "# command=surface r={r} lambda-kerr={lambda_kerr} mode={} n-min={n_min} n-max={n_max} \
         n-steps={n_steps} omega-min={omega_min} omega-max={omega_max} omega-steps={omega_steps} \
         scale={}\n",
        mode_name(mode),
        if db { "db" } else { "linear" }
    );
    csv.push_str("n,omega,s_minus\n");
    for &n in &n_grid {
        let fp = FixedPoint::for_photon_number(n, r, lambda_kerr)?;
        for &omega in &omega_grid {
            let value = if fp.stability == Stability::Stable {
                let pt = spectra::quadrature_spectra(&fp, r, lambda_kerr, omega, mode)?;
                let s = if db { spectra::to_db(pt.s_minus) } else { pt.s_minus };
                Some(s)
            } else {
                None
            };
            let _ = writeln!(csv, "{n},{omega},{}", fmt_opt(value));
        }
    }
    write_output(&out, &csv)?;
    if args.emit_plot_script {
        emit_plot_script(&out, "omega", &["s_minus"], "surface")?;
    }
    Ok(())
}

fn cmd_stability_map(args: StabilityMapArgs) -> std::result::Result<(), CliError> {
    let file = FileConfig::load(args.config.as_ref())?;
    let r: f64 = resolve_required(args.r, &file, "r")?;
    let lambda_min: f64 = resolve(args.lambda_min, &file, "lambda-min", 0.0)?;
    let lambda_max: f64 = resolve(args.lambda_max, &file, "lambda-max", 1.0)?;
    let lambda_steps: usize = resolve(args.lambda_steps, &file, "lambda-steps", 50)?;
    let n_min: f64 = resolve(args.n_min, &file, "n-min", 0.0)?;
    let n_max: f64 = resolve_required(args.n_max, &file, "n-max")?;
    let n_steps: usize = resolve(args.n_steps, &file, "n-steps", 100)?;
    let out: PathBuf = resolve_required(args.out, &file, "out")?;
    check_r_lambda(r, lambda_min.max(0.0))?;

    let lambda_grid = linspace(lambda_min, lambda_max, lambda_steps)?;
    let n_grid = linspace(n_min, n_max, n_steps)?;

    let mut csv = format!(
        "# command=stability-map r={r} lambda-min={lambda_min} lambda-max={lambda_max} \
         lambda-steps={lambda_steps} n-min={n_min} n-max={n_max} n-steps={n_steps}\n"
    );
    csv.push_str("lambda,n,max_re_eigenvalue,stable\n");
    for &lam in &lambda_grid {
        for &n in &n_grid {
            let eig = model::eigenvalues_closed_form(n, r, lam);
            let max_re = eig.max_re();
            let stable = matches!(
                model::classify_stability(&eig.k, model::EPS_STAB_DEFAULT),
                Stability::Stable
            );
            let _ = writeln!(csv, "{lam},{n},{max_re},{stable}");
        }
    }
    write_output(&out, &csv)
}

fn cmd_material(args: MaterialArgs) -> std::result::Result<(), CliError> {
    let file = FileConfig::load(args.config.as_ref())?;
    let t_b: f64 = resolve_required(args.t_b, &file, "t-b")?;
    let lambda_b: f64 = resolve_required(args.lambda_b, &file, "lambda-b")?;
    let length: f64 = resolve_required(args.length, &file, "length")?;
    let chi2: f64 = resolve_required(args.chi2, &file, "chi2")?;
    let chi3: f64 = resolve_required(args.chi3, &file, "chi3")?;
    let m = MaterialParams::new(t_b, lambda_b, length, chi2, chi3)?;
    let lam = estimate_lambda(&m);
    println!("# command=material t-b={t_b} lambda-b={lambda_b} length={length} chi2={chi2} chi3={chi3}");
    println!("lambda_kerr={lam}");
    Ok(())
}

fn cmd_oracle_check(args: OracleCheckArgs) -> std::result::Result<(), CliError> {
    let file = FileConfig::load(args.config.as_ref())?;
    let r: f64 = resolve_required(args.r, &file, "r")?;
    let lambda_kerr: f64 = resolve(args.lambda_kerr, &file, "lambda-kerr", 0.0)?;
    let n: f64 = resolve_required(args.n, &file, "n")?;
    let seed: u64 = resolve(args.seed, &file, "seed", 0)?;
    check_r_lambda(r, lambda_kerr)?;

    let fp = FixedPoint::for_photon_number(n, r, lambda_kerr)?;
    if fp.stability != Stability::Stable {
        return Err(CliError::config(format!(
            "unstable system: the fixed point at n={n} is {:?}; spectra are undefined there",
            fp.stability
        )));
    }
    let sys = spectra::LinearizedSystem::from_fixed_point(&fp, r, lambda_kerr);
    let max_abs = sys.max_abs_eigenvalue();
    let max_re = sys.max_re_eigenvalue();
    let tau_fast =
        1.0 / sys.eigenvalues().iter().map(|k| k.re.abs()).fold(0.0, f64::max);

    let dt: f64 = resolve(args.dt, &file, "dt", 0.004 / max_abs.max(1.0))?;
    let n_traj: usize = resolve(args.n_traj, &file, "n-traj", 8)?;
    // Segments must resolve the narrowest spectral feature, whose width is
    // set by the slowest decay; the sampling window then holds ~640 of them.
    let t_segment_default = (25.0 * tau_fast).max(40.0 / max_re.abs());
    let t_segment: f64 = resolve(args.t_segment, &file, "t-segment", t_segment_default)?;
    let t_total_default =
        (50.0 / max_re.abs()).max(10.0 / max_re.abs() + 80.0 * t_segment) + t_segment;
    let t_total: f64 = resolve(args.t_total, &file, "t-total", t_total_default)?;
    let g0_sq: f64 = resolve(args.g0_sq, &file, "g0-sq", 1.0)?;

    let omega_min: f64 = resolve(args.omega_min, &file, "omega-min", 0.0)?;
    let omega_max: f64 =
        resolve(args.omega_max, &file, "omega-max", (lambda_kerr * n).max(2.0))?;
    let omega_steps: usize = resolve(args.omega_steps, &file, "omega-steps", 5)?;
    let omega_grid = linspace(omega_min, omega_max, omega_steps)?;

    println!(
        "# command=oracle-check r={r} lambda-kerr={lambda_kerr} n={n} seed={seed} dt={dt} \
         t-total={t_total} n-traj={n_traj} t-segment={t_segment} g0-sq={g0_sq} \
         omega-min={omega_min} omega-max={omega_max} omega-steps={omega_steps}"
    );

    let cfg = OracleConfig {
        g0_sq,
        dt,
        t_total,
        n_traj,
        seed,
        omega_grid,
        t_segment: Some(t_segment),
    };
    let estimates = oracle::simulate_linear_ou(&sys, &cfg)?;

    let mut worst: f64 = 0.0;
    for est in &estimates {
        let analytic = spectra::spectrum_matrix(&sys, est.omega)?;
        let mut max_z: f64 = 0.0;
        for i in 0..4 {
            for j in 0..4 {
                max_z = max_z.max(est.z_score(i, j, analytic[(i, j)]));
            }
        }
        println!("omega={:.6} max_z={:.3}", est.omega, max_z);
        worst = worst.max(max_z);
    }
    let segments = estimates.first().map(|e| e.n_segments).unwrap_or(0);
    if worst < 3.0 {
        println!("oracle agreement: OK (max z={worst:.3} over {} frequencies, {segments} segments)",
            estimates.len());
        Ok(())
    } else {
        Err(CliError {
            code: EXIT_ORACLE_DISAGREEMENT,
            message: format!(
                "oracle disagreement: max z={worst:.3} over {} frequencies, {segments} segments",
                estimates.len()
            ),
        })
    }
}

/// Writes a minimal matplotlib script next to the CSV so the figures can
/// be reproduced without any plotting dependency in this crate.
fn emit_plot_script(
    csv_path: &Path,
    x: &str,
    ys: &[&str],
    kind: &str,
) -> std::result::Result<(), CliError> {
    let script_path = csv_path.with_extension("py");
    let csv_name = csv_path
        .file_name()
        .map(|f| f.to_string_lossy().into_owned())
        .unwrap_or_else(|| csv_path.display().to_string());
    let mut script = String::from("#!/usr/bin/env python3\n");
    script.push_str("import csv\nimport matplotlib.pyplot as plt\n\n");
    let _ = writeln!(script, "rows = []");
    let _ = writeln!(script, "with open({csv_name:?}) as fh:");
    let _ = writeln!(
        script,
        "    for row in csv.DictReader(l for l in fh if not l.startswith('#')):"
    );
    let _ = writeln!(script, "        rows.append(row)");
    if kind == "surface" {
        let _ = writeln!(script, "ns = sorted(set(float(r['n']) for r in rows))");
        let _ = writeln!(script, "for n in ns[:: max(1, len(ns) // 8)]:");
        let _ = writeln!(
            script,
            "    pts = [(float(r['{x}']), float(r['{y}'])) for r in rows \
             if float(r['n']) == n and r['{y}']]",
            y = ys[0]
        );
        let _ = writeln!(script, "    if pts:");
        let _ = writeln!(script, "        plt.plot(*zip(*pts), label=f'n={{n:g}}')");
    } else {
        for y in ys {
            let _ = writeln!(
                script,
                "pts = [(float(r['{x}']), float(r['{y}'])) for r in rows if r['{y}']]"
            );
            let _ = writeln!(script, "plt.plot(*zip(*pts), label='{y}')");
        }
    }
    let _ = writeln!(script, "plt.xlabel({x:?})");
    let _ = writeln!(script, "plt.legend()");
    let _ = writeln!(script, "plt.show()");
    write_output(&script_path, &script)
}
