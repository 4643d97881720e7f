//! Command-line front end for the `uamo` binary.
//!
//! Every run echoes its full effective configuration. Exit codes: 0 success,
//! 1 a check failed, 2 configuration or I/O error.

use crate::arithmetic::{
    continued_fraction, default_n_floor, diophantine_check, lyapunov_floor, nonresonance_check, phase_classify, DiophantineParams,
};
use crate::cocycle::{lyapunov_exponent, rotation_number, CocycleSpec, Family, DEFAULT_THETA_SAMPLES};
use crate::duality::{isospectrality_check, rotation_match_check};
use crate::error::Error;
use crate::model::{Couplings, Frequency};
use crate::spectrum::{
    band_arcs, band_arcs_at_phase, butterfly, gap_labels, gaps, symmetry_check, Arc, BandOptions, BandStructure, ButterflyRecord,
    DEFAULT_WIDTH_FLOOR, LABEL_RESIDUAL_MAX,
};
use clap::{Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};
use std::f64::consts::TAU;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;

pub const ISOSPECTRAL_TOL: f64 = 1e-8;
pub const SYMMETRY_TOL: f64 = 1e-8;
pub const ROTATION_MATCH_TOL: f64 = 1e-3;
/// Gaps narrower than this are reported but not required to carry a label.
pub const LABEL_WIDTH_MIN: f64 = 1e-4;

const BUTTERFLY_COUPLINGS: (f64, f64) = (std::f64::consts::FRAC_1_SQRT_2, 0.577_350_269_189_625_8);
const DEFAULT_COUPLINGS: (f64, f64) = (0.6, 0.8);

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    Csv,
    Json,
    Svg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Command {
    /// Band structures for every reduced p/q with q ≤ qmax.
    Butterfly,
    /// Band arcs at one frequency, as a union over phases or at --theta.
    Bands,
    /// Gaps with their labels and fit residuals.
    Gaps,
    /// Lyapunov exponent at z = e^{iζ}.
    Lyapunov,
    /// Fibered rotation number at z = e^{iζ}.
    Rot,
    /// Isospectrality of (λ1, λ2) and (λ2, λ1), or rotation matching for irrational Φ.
    Duality,
    /// Deviation from the z ↦ z̄ and z ↦ −z symmetries.
    Symmetry,
    /// Subcritical, critical or supercritical regime.
    Classify,
    /// Continued fraction and Diophantine checks for Φ.
    Arith,
}

#[derive(Debug, Clone, Parser)]
#[command(name = "uamo", version, about = "Spectra, cocycles and duality for the unitary almost-Mathieu operator")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Coupling constants "l1,l2" (butterfly defaults to 1/√2,1/√3, others to 0.6,0.8).
    #[arg(long, global = true)]
    pub couplings: Option<String>,
    /// Frequency "p/q", a decimal, or "golden".
    #[arg(long, global = true, default_value = "2/5")]
    pub freq: String,
    /// Phase θ; for `bands` and `symmetry` it selects a single periodic operator.
    #[arg(long, global = true)]
    pub theta: Option<f64>,
    /// Spectral angle ζ for `lyapunov` and `rot`.
    #[arg(long, global = true, default_value_t = 1.0)]
    pub zeta: f64,
    #[arg(long, global = true, default_value_t = 12)]
    pub qmax: i64,
    /// ζ grid for the bisection edge solver; 0 selects the eigenvalue solver.
    #[arg(long, global = true, default_value_t = 0)]
    pub res: usize,
    #[arg(long, global = true, default_value_t = 100_000)]
    pub iters: u64,
    #[arg(long = "theta-grid", global = true, default_value_t = 16)]
    pub theta_grid: usize,
    /// Continued-fraction depth used when a decimal frequency needs a rational approximant.
    #[arg(long, global = true, default_value_t = 10)]
    pub depth: usize,
    #[arg(long, global = true, default_value_t = 0.2)]
    pub kappa: f64,
    #[arg(long, global = true, default_value_t = 1.01)]
    pub tau: f64,
    #[arg(long, global = true, default_value_t = 10_000)]
    pub horizon: u64,
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Worker threads; 0 uses the machine parallelism.
    #[arg(long, global = true, default_value_t = 0)]
    pub workers: usize,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
}

/// Validated configuration, echoed into every output.
#[derive(Debug, Clone, Serialize)]
pub struct RunConfig {
    pub command: Command,
    pub couplings: Couplings,
    pub freq: String,
    pub theta: Option<f64>,
    pub zeta: f64,
    pub qmax: i64,
    pub res: usize,
    pub iters: u64,
    pub theta_grid: usize,
    pub depth: usize,
    pub kappa: f64,
    pub tau: f64,
    pub horizon: u64,
    pub out: Option<PathBuf>,
    pub format: Format,
    pub workers: usize,
    pub seed: u64,
}

impl RunConfig {
    pub fn from_cli(cli: &Cli) -> Result<Self, String> {
        let default = if cli.command == Command::Butterfly { BUTTERFLY_COUPLINGS } else { DEFAULT_COUPLINGS };
        let couplings = match &cli.couplings {
            None => Couplings::new(default.0, default.1).map_err(|e| e.to_string())?,
            Some(s) => parse_couplings(s)?,
        };
        parse_frequency(&cli.freq)?;
        if cli.iters == 0 || cli.theta_grid == 0 {
            return Err("--iters and --theta-grid must be positive".into());
        }
        Ok(RunConfig {
            command: cli.command,
            couplings,
            freq: cli.freq.clone(),
            theta: cli.theta,
            zeta: cli.zeta,
            qmax: cli.qmax,
            res: cli.res,
            iters: cli.iters,
            theta_grid: cli.theta_grid,
            depth: cli.depth,
            kappa: cli.kappa,
            tau: cli.tau,
            horizon: cli.horizon,
            out: cli.out.clone(),
            format: cli.format,
            workers: cli.workers,
            seed: cli.seed,
        })
    }

    pub fn band_options(&self) -> BandOptions {
        let solver = if self.res == 0 {
            crate::spectrum::EdgeSolver::FloquetEigen
        } else {
            crate::spectrum::EdgeSolver::TraceBisection
        };
        BandOptions { theta_grid: self.theta_grid, zeta_resolution: self.res, solver }
    }

    fn frequency(&self) -> FreqSpec {
        parse_frequency(&self.freq).expect("validated")
    }

    /// Rational frequency, or the convergent at the configured depth for a decimal.
    fn rational(&self) -> Result<(Frequency, Option<f64>), Error> {
        match self.frequency() {
            FreqSpec::Rational(f) => Ok((f, None)),
            FreqSpec::Decimal(x) => {
                let cf = continued_fraction(x, self.depth)?;
                let (p, q) = cf.convergent(self.depth).unwrap_or(cf.convergents[cf.convergents.len() - 1]);
                Ok((Frequency::rational(p, q)?, Some(x)))
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FreqSpec {
    Rational(Frequency),
    Decimal(f64),
}

impl FreqSpec {
    pub fn frequency(&self) -> Result<Frequency, Error> {
        match *self {
            FreqSpec::Rational(f) => Ok(f),
            FreqSpec::Decimal(x) => Frequency::real(x),
        }
    }

    pub fn value(&self) -> f64 {
        match *self {
            FreqSpec::Rational(f) => f.value(),
            FreqSpec::Decimal(x) => x,
        }
    }
}

pub fn parse_couplings(s: &str) -> Result<Couplings, String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != 2 {
        return Err(format!("couplings must be \"l1,l2\", got {s:?}"));
    }
    let l1: f64 = parts[0].parse().map_err(|_| format!("bad coupling {:?}", parts[0]))?;
    let l2: f64 = parts[1].parse().map_err(|_| format!("bad coupling {:?}", parts[1]))?;
    Couplings::new(l1, l2).map_err(|e| e.to_string())
}

pub fn parse_frequency(s: &str) -> Result<FreqSpec, String> {
    let s = s.trim();
    if s == "golden" {
        return Ok(FreqSpec::Decimal((5f64.sqrt() - 1.0) / 2.0));
    }
    if let Some((p, q)) = s.split_once('/') {
        let p: i64 = p.trim().parse().map_err(|_| format!("bad numerator in {s:?}"))?;
        let q: i64 = q.trim().parse().map_err(|_| format!("bad denominator in {s:?}"))?;
        return Frequency::rational(p, q).map(FreqSpec::Rational).map_err(|e| e.to_string());
    }
    let x: f64 = s.parse().map_err(|_| format!("frequency must be p/q, a decimal or \"golden\", got {s:?}"))?;
    if !x.is_finite() {
        return Err(format!("frequency {s:?} is not finite"));
    }
    Ok(FreqSpec::Decimal(x))
}

/// Fixed-point decimal with 12 significant digits.
pub fn fmt12(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return if x.is_finite() { "0.00000000000".into() } else { format!("{x}") };
    }
    let mag = x.abs().log10().floor() as i32;
    let decimals = (11 - mag).clamp(0, 30) as usize;
    let s = format!("{x:.decimals$}");
    if s == "-0.00000000000" {
        "0.00000000000".into()
    } else {
        s
    }
}

/// Outcome of one run: the primary payload plus the process exit code.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
}

/// Parses arguments and runs; never panics on bad input.
pub fn run_from<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
            return Outcome { code, stdout: e.to_string() };
        }
    };
    match RunConfig::from_cli(&cli) {
        Ok(cfg) => run(&cfg),
        Err(msg) => Outcome { code: EXIT_CONFIG, stdout: json!({"error": msg}).to_string() },
    }
}

pub fn run(cfg: &RunConfig) -> Outcome {
    let pool = rayon::ThreadPoolBuilder::new().num_threads(cfg.workers).build();
    let pool = match pool {
        Ok(p) => p,
        Err(e) => return Outcome { code: EXIT_CONFIG, stdout: json!({"error": e.to_string()}).to_string() },
    };
    let result = pool.install(|| dispatch(cfg));
    match result {
        Ok(o) => o,
        Err(CliError::Config(msg)) => Outcome { code: EXIT_CONFIG, stdout: json!({"error": msg, "config": cfg}).to_string() },
        Err(CliError::Numeric(e)) => Outcome {
            code: EXIT_CHECK_FAILED,
            stdout: json!({"error": e.to_string(), "config": cfg}).to_string(),
        },
    }
}

#[derive(Debug)]
pub enum CliError {
    Config(String),
    Numeric(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Domain(m) => CliError::Config(m),
            other => CliError::Numeric(other),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Config(e.to_string())
    }
}

pub type CliResult = std::result::Result<Outcome, CliError>;

fn dispatch(cfg: &RunConfig) -> CliResult {
    match cfg.command {
        Command::Butterfly => cmd_butterfly(cfg),
        Command::Bands => cmd_bands(cfg),
        Command::Gaps => cmd_gaps(cfg),
        Command::Lyapunov => cmd_lyapunov(cfg),
        Command::Rot => cmd_rot(cfg),
        Command::Duality => cmd_duality(cfg),
        Command::Symmetry => cmd_symmetry(cfg),
        Command::Classify => cmd_classify(cfg),
        Command::Arith => cmd_arith(cfg),
    }
}

/// Writes to --out when given, otherwise returns the text as stdout.
fn emit(cfg: &RunConfig, body: String, code: i32) -> CliResult {
    match &cfg.out {
        Some(path) => {
            std::fs::write(path, &body)?;
            Ok(Outcome { code, stdout: json!({"written": path}).to_string() })
        }
        None => Ok(Outcome { code, stdout: body }),
    }
}

fn emit_json(cfg: &RunConfig, mut v: Value, pass: Option<bool>) -> CliResult {
    v["config"] = json!(cfg);
    if let Some(p) = pass {
        v["pass"] = json!(p);
    }
    let code = if pass == Some(false) { EXIT_CHECK_FAILED } else { EXIT_OK };
    emit(cfg, serde_json::to_string_pretty(&v).expect("serializable") + "\n", code)
}

pub fn butterfly_csv(records: &[ButterflyRecord]) -> String {
    let mut s = String::from("p,q,band_index,zeta_lo,zeta_hi\n");
    for r in records {
        if let Ok(bs) = &r.result {
            for (i, a) in bs.arcs.iter().enumerate() {
                let _ = writeln!(s, "{},{},{},{},{}", r.p, r.q, i, fmt12(a.lo), fmt12(a.hi));
            }
        }
    }
    s
}

const SVG_SIZE: f64 = 800.0;
const SVG_PAD: f64 = 40.0;

fn svg_segments(out: &mut String, x: f64, arcs: &[Arc], stroke: f64) {
    let inner = SVG_SIZE - 2.0 * SVG_PAD;
    let px = SVG_PAD + x * inner;
    let py = |z: f64| SVG_PAD + (1.0 - z / TAU) * inner;
    for a in arcs {
        let mut pieces = vec![(a.lo, a.hi.min(TAU))];
        if a.hi > TAU {
            pieces.push((0.0, a.hi - TAU));
        }
        for (lo, hi) in pieces {
            let _ = writeln!(
                out,
                r#"<line x1="{px:.3}" y1="{:.3}" x2="{px:.3}" y2="{:.3}" stroke="black" stroke-width="{stroke:.3}"/>"#,
                py(lo),
                py(hi)
            );
        }
    }
}

fn svg_frame(title: &str, body: &str) -> String {
    let inner = SVG_SIZE - 2.0 * SVG_PAD;
    format!(
        concat!(
            r#"<?xml version="1.0" encoding="UTF-8"?>"#,
            "\n",
            r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{s}" height="{s}" viewBox="0 0 {s} {s}">"#,
            "\n<title>{t}</title>\n",
            r#"<rect x="{p}" y="{p}" width="{i}" height="{i}" fill="none" stroke="gray"/>"#,
            "\n",
            r#"<text x="{p}" y="{ty}" font-size="12">Φ</text><text x="4" y="{p}" font-size="12">ζ</text>"#,
            "\n{b}</svg>\n"
        ),
        s = SVG_SIZE,
        p = SVG_PAD,
        i = inner,
        ty = SVG_SIZE - 10.0,
        t = title,
        b = body
    )
}

pub fn butterfly_svg(records: &[ButterflyRecord]) -> String {
    let mut body = String::new();
    for r in records {
        if let Ok(bs) = &r.result {
            svg_segments(&mut body, r.p as f64 / r.q as f64, &bs.arcs, 1.0);
        }
    }
    svg_frame("UAMO butterfly", &body)
}

fn bands_svg(bs: &BandStructure) -> String {
    let mut body = String::new();
    svg_segments(&mut body, 0.5, &bs.arcs, 6.0);
    svg_frame("UAMO bands", &body)
}

fn sidecar_path(path: &Path) -> PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(".json");
    PathBuf::from(s)
}

pub fn cmd_butterfly(cfg: &RunConfig) -> CliResult {
    let start = Instant::now();
    let records = butterfly(&cfg.couplings, cfg.qmax, &cfg.band_options())?;
    let failures: Vec<Value> = records
        .iter()
        .filter_map(|r| r.result.as_ref().err().map(|e| json!({"p": r.p, "q": r.q, "error": e})))
        .collect();
    let warnings: Vec<Value> = records
        .iter()
        .filter_map(|r| r.result.as_ref().ok().filter(|b| !b.warnings.is_empty()).map(|b| json!({"p": r.p, "q": r.q, "warnings": b.warnings})))
        .collect();
    let rows: usize = records.iter().filter_map(|r| r.result.as_ref().ok()).map(|b| b.arcs.len()).sum();
    let primary = match cfg.format {
        Format::Csv | Format::Svg => butterfly_csv(&records),
        Format::Json => {
            let v: Vec<Value> = records
                .iter()
                .map(|r| match &r.result {
                    Ok(b) => json!({"p": r.p, "q": r.q, "arcs": b.arcs}),
                    Err(e) => json!({"p": r.p, "q": r.q, "error": e}),
                })
                .collect();
            serde_json::to_string_pretty(&v).expect("serializable") + "\n"
        }
    };
    let sidecar = json!({
        "config": cfg,
        "tool": "uamo",
        "version": env!("CARGO_PKG_VERSION"),
        "wall_time_s": start.elapsed().as_secs_f64(),
        "frequencies": records.len(),
        "rows": rows,
        "failures": failures,
        "warning_count": failures.len() + warnings.len(),
        "warnings": warnings,
    });
    match &cfg.out {
        None => Ok(Outcome { code: EXIT_OK, stdout: primary }),
        Some(path) => {
            std::fs::write(path, &primary)?;
            if cfg.format == Format::Svg {
                std::fs::write(path.with_extension("svg"), butterfly_svg(&records))?;
            }
            std::fs::write(sidecar_path(path), serde_json::to_string_pretty(&sidecar).expect("serializable") + "\n")?;
            Ok(Outcome { code: EXIT_OK, stdout: json!({"written": path, "rows": rows, "warning_count": failures.len() + warnings.len()}).to_string() })
        }
    }
}

fn band_structure(cfg: &RunConfig) -> Result<BandStructure, Error> {
    let (f, decimal) = cfg.rational()?;
    let mut bs = match cfg.theta {
        Some(t) => band_arcs_at_phase(&cfg.couplings, &f, t, &cfg.band_options())?,
        None => band_arcs(&cfg.couplings, &f, &cfg.band_options())?,
    };
    if decimal.is_some() {
        bs.convergent = f.as_rational();
    }
    Ok(bs)
}

pub fn cmd_bands(cfg: &RunConfig) -> CliResult {
    let bs = band_structure(cfg)?;
    match cfg.format {
        Format::Csv => {
            let mut s = String::from("band_index,zeta_lo,zeta_hi\n");
            for (i, a) in bs.arcs.iter().enumerate() {
                let _ = writeln!(s, "{i},{},{}", fmt12(a.lo), fmt12(a.hi));
            }
            emit(cfg, s, EXIT_OK)
        }
        Format::Svg => emit(cfg, bands_svg(&bs), EXIT_OK),
        Format::Json => emit_json(
            cfg,
            json!({
                "freq": bs.freq,
                "convergent": bs.convergent,
                "arcs": bs.arcs,
                "band_count": bs.arcs.len(),
                "closed_gaps": bs.closed_gaps,
                "measure": bs.measure(),
                "envelope": bs.envelope,
                "warnings": bs.warnings,
            }),
            None,
        ),
    }
}

pub fn cmd_gaps(cfg: &RunConfig) -> CliResult {
    let bs = band_structure(cfg)?;
    let labeled = gap_labels(&cfg.couplings, &bs.freq, &gaps(&bs, DEFAULT_WIDTH_FLOOR), cfg.iters, None)?;
    let pass = labeled.iter().filter(|g| g.width > LABEL_WIDTH_MIN).all(|g| g.label.is_some());
    if cfg.format == Format::Csv {
        let mut s = String::from("zeta_lo,zeta_hi,width,ids,label,residual\n");
        for g in &labeled {
            let opt = |x: Option<f64>| x.map(fmt12).unwrap_or_default();
            let _ = writeln!(
                s,
                "{},{},{},{},{},{}",
                fmt12(g.arc.lo),
                fmt12(g.arc.hi),
                fmt12(g.width),
                opt(g.ids),
                g.label.map(|k| k.to_string()).unwrap_or_default(),
                opt(g.residual)
            );
        }
        return emit(cfg, s, if pass { EXIT_OK } else { EXIT_CHECK_FAILED });
    }
    emit_json(
        cfg,
        json!({"gaps": labeled, "label_residual_max": LABEL_RESIDUAL_MAX, "label_width_min": LABEL_WIDTH_MIN, "width_floor": DEFAULT_WIDTH_FLOOR}),
        Some(pass),
    )
}

pub fn cmd_lyapunov(cfg: &RunConfig) -> CliResult {
    let f = cfg.frequency().frequency()?;
    let spec = CocycleSpec::new(Family::TwoStep, cfg.couplings, f, cfg.zeta);
    let est = lyapunov_exponent(&spec, cfg.iters, DEFAULT_THETA_SAMPLES)?;
    let floor = lyapunov_floor(&cfg.couplings).ok();
    emit_json(
        cfg,
        json!({"lyapunov": est.value, "spread": est.spread, "theta_samples": est.samples, "steps": est.steps, "floor": floor, "regime": phase_classify(&cfg.couplings)}),
        None,
    )
}

pub fn cmd_rot(cfg: &RunConfig) -> CliResult {
    let f = cfg.frequency().frequency()?;
    let spec = CocycleSpec::new(Family::TwoStep, cfg.couplings, f, cfg.zeta);
    let rot = rotation_number(&spec, cfg.iters, cfg.theta.unwrap_or(0.0))?;
    emit_json(cfg, json!({"rot": rot}), None)
}

pub fn cmd_duality(cfg: &RunConfig) -> CliResult {
    match cfg.frequency() {
        FreqSpec::Rational(f) => {
            let h = isospectrality_check(&cfg.couplings, &f, &cfg.band_options())?;
            emit_json(cfg, json!({"hausdorff": h, "tolerance": ISOSPECTRAL_TOL}), Some(h < ISOSPECTRAL_TOL))
        }
        FreqSpec::Decimal(x) => {
            let f = Frequency::real(x)?;
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            let zetas: Vec<f64> = (0..16).map(|_| rng.gen_range(0.0..TAU)).collect();
            let diffs = zetas
                .iter()
                .map(|&z| rotation_match_check(&cfg.couplings, &f, z, cfg.iters, cfg.theta.unwrap_or(0.0)))
                .collect::<Result<Vec<f64>, Error>>()?;
            let worst = diffs.iter().cloned().fold(0.0, f64::max);
            emit_json(
                cfg,
                json!({"zeta": zetas, "rotation_difference": diffs, "max_difference": worst, "tolerance": ROTATION_MATCH_TOL}),
                Some(worst < ROTATION_MATCH_TOL),
            )
        }
    }
}

pub fn cmd_symmetry(cfg: &RunConfig) -> CliResult {
    let bs = band_structure(cfg)?;
    let d = symmetry_check(&bs);
    let pass = d.conjugation < SYMMETRY_TOL && d.negation < SYMMETRY_TOL;
    emit_json(cfg, json!({"conjugation": d.conjugation, "negation": d.negation, "tolerance": SYMMETRY_TOL}), Some(pass))
}

pub fn cmd_classify(cfg: &RunConfig) -> CliResult {
    emit_json(cfg, json!({"regime": phase_classify(&cfg.couplings), "lyapunov_floor": lyapunov_floor(&cfg.couplings).ok()}), None)
}

pub fn cmd_arith(cfg: &RunConfig) -> CliResult {
    let phi = cfg.frequency().value();
    let cf = continued_fraction(phi, cfg.depth.max(1))?;
    let params = DiophantineParams { kappa: cfg.kappa, tau: cfg.tau, horizon: cfg.horizon };
    let dio = diophantine_check(phi, params)?;
    let mut v = json!({"phi": phi, "continued_fraction": cf, "diophantine": dio});
    if let Some(theta) = cfg.theta {
        let horizon = cfg.horizon as i64;
        v["nonresonance"] = json!(nonresonance_check(theta, phi, cfg.tau, horizon, None)?);
        v["nonresonance_n_floor"] = json!(default_n_floor(horizon));
    }
    emit_json(cfg, v, None)
}
