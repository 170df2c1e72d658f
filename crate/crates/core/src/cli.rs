//! Batch front end: one subcommand per experiment, files out, exit codes
//! 0 (success), 1 (contract error), 2 (blow-up or non-convergence), 3 (I/O).

use std::f64::consts::PI;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::analysis::{report_json, run_suite, sobolev_counterexample, Suite};
use crate::error::{KpError, Result};
use crate::solver::{rescale, rescaled_time, run_with, write_diagnostics_csv, SolverConfig};
use crate::spectral::{
    band_limited_field, counter_rng, load_snapshot, save_snapshot, FrequencyPair, Grid, RandomFieldSpec,
};
use crate::stability::{
    critical_speed_scan_with, min_eigenvalue_with, run_stability_experiment, soliton_profile, write_spectrum_csv,
    SolitonParams, SpectrumSettings, StabilityRunConfig,
};

/// Parses a length such as `64pi`, `pi`, `2.5pi` or `100`.
pub fn parse_length(s: &str) -> std::result::Result<f64, String> {
    let t = s.trim();
    let (num, factor) = match t.strip_suffix("pi") {
        Some("") => ("1", PI),
        Some(head) => (head.trim_end_matches('*'), PI),
        None => (t, 1.0),
    };
    let v: f64 = num.trim().parse().map_err(|_| format!("'{s}' is not a length (try 64pi or 12.5)"))?;
    let v = v * factor;
    if !(v.is_finite() && v > 0.0) {
        return Err(format!("length '{s}' must be positive"));
    }
    Ok(v)
}

#[derive(Debug, Parser)]
#[command(name = "kpi-lab", version, about = "KP-I simulator and verification lab")]
pub struct RunManifest {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write the line soliton Q_c as a field snapshot.
    Soliton(SolitonArgs),
    /// Integrate a snapshot (or seeded random data) and write diagnostics.
    Evolve(EvolveArgs),
    /// Perturb Q_c transversally and track its orbital distance.
    Stability(StabilityArgs),
    /// Lowest eigenvalue of the linearized operator over a speed range.
    Spectrum(SpectrumArgs),
    /// Run the seeded verification suites.
    Verify(VerifyArgs),
    /// Apply the scaling symmetry to a snapshot.
    Rescale(RescaleArgs),
}

#[derive(Debug, Clone, Args)]
pub struct GridArgs {
    #[arg(long, default_value_t = 512)]
    pub nx: usize,
    #[arg(long, default_value_t = 64)]
    pub ny: usize,
    /// x period; accepts a `pi` suffix.
    #[arg(long = "Lx", value_parser = parse_length, default_value = "64pi")]
    pub lx: f64,
    /// y period is `2 pi lambda_y`.
    #[arg(long = "lambda-y", default_value_t = 1.0)]
    pub lambda_y: f64,
}

impl GridArgs {
    fn grid(&self) -> Result<Grid> {
        Grid::new(self.nx, self.ny, self.lx, self.lambda_y)
    }
}

#[derive(Debug, Args)]
pub struct SolitonArgs {
    #[arg(long, default_value_t = 1.0)]
    pub c: f64,
    #[command(flatten)]
    pub grid: GridArgs,
    #[arg(long, default_value_t = 0.0)]
    pub x0: f64,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct EvolveArgs {
    /// Initial snapshot; without it a seeded band-limited field is used.
    #[arg(long)]
    pub input: Option<PathBuf>,
    #[command(flatten)]
    pub grid: GridArgs,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Peak amplitude of the random initial data.
    #[arg(long, default_value_t = 0.1)]
    pub amplitude: f64,
    #[arg(long, default_value_t = 1e-3)]
    pub dt: f64,
    #[arg(long = "t-end", default_value_t = 1.0)]
    pub t_end: f64,
    #[arg(long = "record-every", default_value_t = 100)]
    pub record_every: usize,
    /// Frame speed; also the `c` in the diagnostics' `E + c M`.
    #[arg(long = "frame-speed", default_value_t = 0.0)]
    pub frame_speed: f64,
    #[arg(long = "no-dealias")]
    pub no_dealias: bool,
    #[arg(long = "linear-only")]
    pub linear_only: bool,
    /// Diagnostics CSV.
    #[arg(long, default_value = "diagnostics.csv")]
    pub csv: PathBuf,
    /// Final-state snapshot.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct StabilityArgs {
    #[arg(long, default_value_t = 1.0)]
    pub c: f64,
    #[arg(long, default_value_t = 1e-2)]
    pub delta: f64,
    #[arg(long, default_value_t = 512)]
    pub nx: usize,
    #[arg(long, default_value_t = 16)]
    pub ny: usize,
    #[arg(long = "Lx", value_parser = parse_length, default_value = "32pi")]
    pub lx: f64,
    #[arg(long = "lambda-y", default_value_t = 1.0)]
    pub lambda_y: f64,
    /// Carrier x mode index of the perturbation (frequency `k 2 pi / Lx`).
    #[arg(long = "mode-kx", default_value_t = 1)]
    pub mode_kx: i64,
    /// Carrier y mode index (frequency `k / lambda_y`).
    #[arg(long = "mode-ky", default_value_t = 1)]
    pub mode_ky: i64,
    #[arg(long = "t-end", default_value_t = 20.0)]
    pub t_end: f64,
    #[arg(long, default_value_t = 5e-3)]
    pub dt: f64,
    #[arg(long = "record-every", default_value_t = 100)]
    pub record_every: usize,
    #[arg(long, default_value = "stability.csv")]
    pub csv: PathBuf,
}

#[derive(Debug, Args)]
pub struct SpectrumArgs {
    #[arg(long = "c-min", default_value_t = 2.0)]
    pub c_min: f64,
    #[arg(long = "c-max", default_value_t = 2.6)]
    pub c_max: f64,
    /// Bisect on the sign of the lowest eigenvalue instead of sampling.
    #[arg(long)]
    pub bisect: bool,
    /// Bisection steps, or number of sampled speeds.
    #[arg(long, default_value_t = 12)]
    pub steps: usize,
    /// Coarse resolution; the fine one is twice this.
    #[arg(long, default_value_t = 1024)]
    pub n: usize,
    #[arg(long = "half-width", default_value_t = 40.0)]
    pub half_width: f64,
    #[arg(long, default_value = "spectrum.csv")]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Suite name or `all`.
    #[arg(long, default_value = "all")]
    pub suite: String,
    /// Overrides every suite's default sample count.
    #[arg(long)]
    pub samples: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// JSON report path; printed to stdout when absent.
    #[arg(long)]
    pub report: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct RescaleArgs {
    #[arg(long)]
    pub input: PathBuf,
    /// Scaling factor, an integer power of 4.
    #[arg(long)]
    pub lambda: f64,
    #[arg(long)]
    pub out: PathBuf,
}

/// Failure of a command: a library error or failed verification samples.
#[derive(Debug)]
pub enum Failure {
    Kp(KpError),
    Verification { failures: usize },
}

impl From<KpError> for Failure {
    fn from(e: KpError) -> Self {
        Failure::Kp(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Kp(KpError::Io(e))
    }
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Kp(e) => e.exit_code(),
            Failure::Verification { .. } => 1,
        }
    }

    /// Single-line diagnostic: `error kind=<tag> code=<n> message="<text>"`.
    pub fn diagnostic(&self) -> String {
        let (kind, message) = match self {
            Failure::Kp(e) => (e.kind(), e.to_string()),
            Failure::Verification { failures } => ("verification_failed", format!("{failures} failing samples")),
        };
        let message = message.replace(['\n', '\r'], " ").replace('"', "'");
        format!("error kind={kind} code={} message=\"{message}\"", self.exit_code())
    }
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    Ok(BufWriter::new(File::create(path)?))
}

/// Executes one parsed manifest, printing a summary to `out`.
pub fn execute(manifest: &RunManifest, out: &mut dyn Write) -> std::result::Result<(), Failure> {
    match &manifest.command {
        Command::Soliton(a) => soliton(a, out),
        Command::Evolve(a) => evolve(a, out),
        Command::Stability(a) => stability(a, out),
        Command::Spectrum(a) => spectrum(a, out),
        Command::Verify(a) => verify(a, out),
        Command::Rescale(a) => rescale_cmd(a, out),
    }
}

fn soliton(a: &SolitonArgs, out: &mut dyn Write) -> std::result::Result<(), Failure> {
    let grid = a.grid.grid()?;
    let q = soliton_profile(&SolitonParams::new(a.c, a.x0)?, &grid)?;
    save_snapshot(&a.out, &q, 0.0)?;
    writeln!(out, "wrote Q_{} ({}x{}, max {}) to {}", a.c, grid.nx(), grid.ny(), q.max(), a.out.display())?;
    Ok(())
}

fn evolve(a: &EvolveArgs, out: &mut dyn Write) -> std::result::Result<(), Failure> {
    let (u0, t0) = match &a.input {
        Some(p) => {
            let s = load_snapshot(p)?;
            (s.field, s.t)
        }
        None => {
            let spec = RandomFieldSpec { amplitude: a.amplitude, ..Default::default() };
            (band_limited_field(a.grid.grid()?, &spec, &mut counter_rng(a.seed, 0)), 0.0)
        }
    };
    let cfg = SolverConfig {
        dt: a.dt,
        t_end: a.t_end,
        dealias: !a.no_dealias,
        moving_frame_speed: a.frame_speed,
        record_every: a.record_every,
        linear_only: a.linear_only,
        ..Default::default()
    };
    let mut run = run_with(&u0, &cfg, |_, _| None)?;
    for r in &mut run.records {
        r.t += t0;
    }
    write_diagnostics_csv(create(&a.csv)?, &run.records)?;
    if let Some(e) = run.blowup {
        return Err(e.into());
    }
    if let Some(p) = &a.out {
        save_snapshot(p, &run.last_field, t0 + run.last_t)?;
    }
    writeln!(out, "evolved to t = {} ({} records) -> {}", t0 + run.last_t, run.records.len(), a.csv.display())?;
    Ok(())
}

fn stability(a: &StabilityArgs, out: &mut dyn Write) -> std::result::Result<(), Failure> {
    let grid = Grid::new(a.nx, a.ny, a.lx, a.lambda_y)?;
    let cfg = StabilityRunConfig {
        c: a.c,
        delta: a.delta,
        perturbation_mode: FrequencyPair::new(
            a.mode_kx as f64 * 2.0 * PI / a.lx,
            a.mode_ky as f64 / a.lambda_y,
        ),
        t_end: a.t_end,
        solver: SolverConfig { dt: a.dt, record_every: a.record_every, ..Default::default() },
        grid,
    };
    let run = run_stability_experiment(&cfg)?;
    write_diagnostics_csv(create(&a.csv)?, &run.records)?;
    let blowup = run.blowup_time.map_or_else(|| "none".to_string(), |t| t.to_string());
    writeln!(
        out,
        "c={} delta={} sup_distance={:.6e} ratio={:.4} blowup={} unstable={}",
        a.c,
        a.delta,
        run.sup_distance,
        run.sup_distance / a.delta,
        blowup,
        run.unstable
    )?;
    Ok(())
}

fn spectrum(a: &SpectrumArgs, out: &mut dyn Write) -> std::result::Result<(), Failure> {
    let settings = SpectrumSettings { n: a.n, half_width: a.half_width };
    if a.bisect {
        let scan = critical_speed_scan_with(a.c_min, a.c_max, a.steps, &settings)?;
        write_spectrum_csv(create(&a.out)?, &scan.evaluations)?;
        writeln!(
            out,
            "critical speed {:.6} (bracket [{:.6}, {:.6}], {} eigensolves)",
            scan.critical_speed,
            scan.bracket.0,
            scan.bracket.1,
            scan.evaluations.len()
        )?;
    } else {
        if !(a.c_min > 0.0 && a.c_max >= a.c_min) || a.steps == 0 {
            return Err(KpError::InvalidConfig("need 0 < c-min <= c-max and steps >= 1".into()).into());
        }
        let rows = (0..a.steps)
            .map(|k| {
                let s = if a.steps == 1 { 0.0 } else { k as f64 / (a.steps - 1) as f64 };
                min_eigenvalue_with(a.c_min + s * (a.c_max - a.c_min), &settings)
            })
            .collect::<Result<Vec<_>>>()?;
        write_spectrum_csv(create(&a.out)?, &rows)?;
        for r in &rows {
            writeln!(out, "c={} min_eigenvalue={:.8} error={:.1e}", r.c, r.min_eigenvalue, r.error_estimate)?;
        }
    }
    Ok(())
}

fn verify(a: &VerifyArgs, out: &mut dyn Write) -> std::result::Result<(), Failure> {
    let suites: Vec<Suite> = if a.suite == "all" { Suite::ALL.to_vec() } else { vec![a.suite.parse()?] };
    let reports = suites
        .iter()
        .map(|&s| run_suite(s, a.samples.unwrap_or(s.default_samples()), a.seed))
        .collect::<Result<Vec<_>>>()?;
    let json = report_json(&reports)?;
    match &a.report {
        Some(p) => {
            let mut w = create(p)?;
            w.write_all(json.as_bytes())?;
            w.flush()?;
        }
        None => out.write_all(json.as_bytes())?,
    }
    for r in &reports {
        writeln!(out, "{}: {} samples, {} failures, worst ratio {:.3e}", r.name, r.samples, r.failures, r.worst_ratio)?;
    }
    if suites.contains(&Suite::Sobolev) {
        let c = sobolev_counterexample()?;
        writeln!(
            out,
            "sobolev counterexample (y-independent Q_1): lhs={:.6} rhs_literal={:.6} rhs_corrected={:.6} literal_holds={}",
            c.lhs,
            c.rhs_literal,
            c.rhs_corrected,
            c.literal_holds()
        )?;
    }
    let failures: usize = reports.iter().map(|r| r.failures).sum();
    if failures > 0 {
        return Err(Failure::Verification { failures });
    }
    Ok(())
}

fn rescale_cmd(a: &RescaleArgs, out: &mut dyn Write) -> std::result::Result<(), Failure> {
    let s = load_snapshot(&a.input)?;
    let v = rescale(&s.field, a.lambda)?;
    save_snapshot(&a.out, &v, rescaled_time(s.t, a.lambda))?;
    let g = v.grid();
    writeln!(out, "rescaled by {} to Lx = {}, lambda_y = {} -> {}", a.lambda, g.length_x(), g.lambda_y(), a.out.display())?;
    Ok(())
}

/// Parses `args` (program name first), runs the command and returns the exit
/// code. Errors go to `err` as one machine-parsable line.
pub fn run_with_io<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let manifest = match RunManifest::try_parse_from(args) {
        Ok(m) => m,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return 0;
            }
            let first = e.to_string().lines().next().unwrap_or("").to_string();
            let _ = writeln!(err, "error kind=usage code=1 message=\"{}\"", first.replace('"', "'"));
            return 1;
        }
    };
    match execute(&manifest, out) {
        Ok(()) => 0,
        Err(f) => {
            let _ = writeln!(err, "{}", f.diagnostic());
            f.exit_code()
        }
    }
}

/// [`run_with_io`] on the process arguments and standard streams.
pub fn run() -> i32 {
    let stdout = io::stdout();
    let stderr = io::stderr();
    run_with_io(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}
