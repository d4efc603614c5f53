//! The `boundent` command line.
//!
//! ```text
//! boundent construct --family a --params 1,2,3,1,1,1
//! boundent certify   --input state.json
//! boundent sample    --family b --count 1000 --seed 7
//! boundent sweep     --var '|s|' --lo 1.5 --hi 4.5 --steps 31 --params 1,2,3,1,1,1
//! ```
//!
//! Exit codes: 0 success (and a definite verdict for `certify`), 2 invalid
//! input, 3 inconclusive certification.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::chessboard::{
    build_rho, family_a, family_b, CanonicalParams, ParamSet, Params, RawParams, StateMatrix,
};
use crate::criteria::{certify_with, CertificationReport, RangeCondition, RangeSearchConfig, VerdictKind};
use crate::linalg::MatrixC;
use crate::sampling::{self, Family};
use crate::tolerance::Tolerances;
use crate::{C64, DIM};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_INCONCLUSIVE: i32 = 3;

pub const INDEX_CONVENTION: &str = "i = m + 3*mu";

#[derive(Debug, Parser)]
#[command(name = "boundent", version, about = "Chessboard bound-entangled 3x3 states")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a state and write its density matrix as JSON.
    Construct(ConstructArgs),
    /// Run PPT and range-criterion checks and write a report as JSON.
    Certify(CertifyArgs),
    /// Certify seeded random parameter draws, one row per draw.
    Sample(SampleArgs),
    /// Certify along a one-parameter grid.
    Sweep(SweepArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SpecFamily {
    /// six reals a,b,c,d,m,n; s = ac/n, t = ad/m
    A,
    /// six reals plus --phi-s/--phi-t; |s| = ac/n, |t| = ad/m
    B,
    /// a,b,c,d,m,n,s,t reals, or a..n then s_re,s_im,t_re,t_im
    Canonical,
    /// sixteen numbers: re,im of a,b,c,d,m,n,s,t
    Raw,
}

#[derive(Debug, Clone, Args)]
pub struct ParamArgs {
    #[arg(long, value_enum)]
    pub family: Option<SpecFamily>,
    /// Comma-separated parameter list.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub params: Vec<f64>,
    #[arg(long = "phi-s", default_value_t = 0.0, allow_hyphen_values = true)]
    pub phi_s: f64,
    #[arg(long = "phi-t", default_value_t = 0.0, allow_hyphen_values = true)]
    pub phi_t: f64,
}

#[derive(Debug, Clone, Args)]
pub struct SearchArgs {
    #[arg(long, default_value_t = 200)]
    pub restarts: usize,
    #[arg(long = "max-iters", default_value_t = 500)]
    pub max_iters: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Partial-transpose eigenvalues below minus this are negative.
    #[arg(long = "tol-psd", default_value_t = crate::tolerance::PPT)]
    pub tol_psd: f64,
}

impl SearchArgs {
    fn config(&self) -> RangeSearchConfig {
        RangeSearchConfig {
            restarts: self.restarts,
            max_iters: self.max_iters,
            seed: self.seed,
            ..RangeSearchConfig::default()
        }
    }

    fn tolerances(&self) -> Tolerances {
        Tolerances {
            ppt: self.tol_psd,
            ..Tolerances::default()
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct ConstructArgs {
    #[command(flatten)]
    pub params: ParamArgs,
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct CertifyArgs {
    #[command(flatten)]
    pub params: ParamArgs,
    /// State file written by `construct`.
    #[arg(long, conflicts_with = "family")]
    pub input: Option<PathBuf>,
    #[command(flatten)]
    pub search: SearchArgs,
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Args)]
pub struct SampleArgs {
    #[arg(long)]
    pub family: Family,
    #[arg(long, default_value_t = 1)]
    pub count: usize,
    #[command(flatten)]
    pub search: SearchArgs,
    /// Worker threads (0 = all cores); output does not depend on it.
    #[arg(long, default_value_t = 0)]
    pub workers: usize,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    /// One of a, b, c, d, m, n, phi_s, phi_t, |s|, |t|.
    #[arg(long)]
    pub var: String,
    #[arg(long, allow_hyphen_values = true)]
    pub lo: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub hi: f64,
    #[arg(long)]
    pub steps: usize,
    /// Base magnitudes a,b,c,d,m,n.
    #[arg(long, value_delimiter = ',', default_value = "1,2,3,1,1,1")]
    pub params: Vec<f64>,
    #[arg(long = "phi-s", default_value_t = 0.0, allow_hyphen_values = true)]
    pub phi_s: f64,
    #[arg(long = "phi-t", default_value_t = 0.0, allow_hyphen_values = true)]
    pub phi_t: f64,
    #[command(flatten)]
    pub search: SearchArgs,
    #[arg(long, default_value_t = 0)]
    pub workers: usize,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

/// Failure carrying the process exit code.
#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    fn invalid(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_INVALID,
            message: message.into(),
        }
    }
}

impl From<crate::Error> for CliError {
    fn from(e: crate::Error) -> Self {
        Self::invalid(e.to_string())
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

/// State file written by `construct` and accepted by `certify --input`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StateFile {
    pub params: Params,
    pub norm_constant: f64,
    /// Rows of `[re, im]` pairs.
    pub matrix: Vec<Vec<[f64; 2]>>,
    pub index_convention: String,
}

impl StateFile {
    pub fn from_state(state: &StateMatrix) -> Self {
        let matrix = (0..DIM)
            .map(|i| state.rho.row(i).iter().map(|z| [z.re, z.im]).collect())
            .collect();
        Self {
            params: state.params,
            norm_constant: state.norm_constant,
            matrix,
            index_convention: INDEX_CONVENTION.into(),
        }
    }

    pub fn matrix(&self) -> CliResult<MatrixC> {
        if self.matrix.len() != DIM || self.matrix.iter().any(|r| r.len() != DIM) {
            return Err(CliError::invalid("state matrix must be 9x9"));
        }
        let data = self
            .matrix
            .iter()
            .flatten()
            .map(|[re, im]| C64::new(*re, *im))
            .collect();
        Ok(MatrixC::from_vec(DIM, DIM, data)?)
    }

    /// Rebuilds the state from the stored parameters and checks that it
    /// matches the stored matrix.
    pub fn validate(&self) -> CliResult<StateMatrix> {
        if self.index_convention != INDEX_CONVENTION {
            return Err(CliError::invalid(format!(
                "unsupported index convention '{}'",
                self.index_convention
            )));
        }
        let stored = self.matrix()?;
        let state = build_rho(self.params)?;
        let diff = (&stored - &state.rho).frobenius_norm();
        if !(diff <= 1e-12) {
            return Err(CliError::invalid(format!(
                "matrix does not match params (Frobenius distance {diff:e})"
            )));
        }
        Ok(state)
    }
}

/// Parses the command line and runs it; returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
            let rendered = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = write!(sink, "{rendered}");
            return code;
        }
    };
    match execute(&cli.command, stdout) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {}", e.message);
            e.code
        }
    }
}

pub fn execute(command: &Command, stdout: &mut dyn Write) -> CliResult<i32> {
    match command {
        Command::Construct(args) => cmd_construct(args, stdout),
        Command::Certify(args) => cmd_certify(args, stdout),
        Command::Sample(args) => cmd_sample(args, stdout),
        Command::Sweep(args) => cmd_sweep(args, stdout),
    }
}

pub fn params_from_args(args: &ParamArgs) -> CliResult<Params> {
    let family = args
        .family
        .ok_or_else(|| CliError::invalid("--family is required"))?;
    let v = &args.params;
    let expect = |counts: &[usize]| -> CliResult<()> {
        if counts.contains(&v.len()) {
            Ok(())
        } else {
            Err(CliError::invalid(format!(
                "family {family:?} takes {counts:?} numbers, got {}",
                v.len()
            )))
        }
    };
    let params = match family {
        SpecFamily::A => {
            expect(&[6])?;
            Params::Canonical(family_a(v[0], v[1], v[2], v[3], v[4], v[5])?)
        }
        SpecFamily::B => {
            expect(&[6])?;
            Params::Canonical(family_b(
                v[0], v[1], v[2], v[3], v[4], v[5], args.phi_s, args.phi_t,
            )?)
        }
        SpecFamily::Canonical => {
            expect(&[8, 10])?;
            let (s, t) = if v.len() == 8 {
                (C64::new(v[6], 0.0), C64::new(v[7], 0.0))
            } else {
                (C64::new(v[6], v[7]), C64::new(v[8], v[9]))
            };
            Params::Canonical(CanonicalParams::new(
                v[0], v[1], v[2], v[3], v[4], v[5], s, t,
            )?)
        }
        SpecFamily::Raw => {
            expect(&[16])?;
            let raw = RawParams::from_array(std::array::from_fn(|k| {
                C64::new(v[2 * k], v[2 * k + 1])
            }));
            if !raw.all_finite() {
                return Err(CliError::invalid("parameters must be finite"));
            }
            Params::Raw(raw)
        }
    };
    Ok(params)
}

fn emit(output: Option<&Path>, stdout: &mut dyn Write, bytes: &[u8]) -> CliResult<()> {
    match output {
        Some(path) => fs::write(path, bytes)
            .map_err(|e| CliError::invalid(format!("cannot write {}: {e}", path.display()))),
        None => stdout
            .write_all(bytes)
            .map_err(|e| CliError::invalid(format!("cannot write output: {e}"))),
    }
}

fn to_json<T: Serialize>(value: &T) -> CliResult<Vec<u8>> {
    let mut out = serde_json::to_vec_pretty(value)
        .map_err(|e| CliError::invalid(format!("serialization failed: {e}")))?;
    out.push(b'\n');
    Ok(out)
}

pub fn cmd_construct(args: &ConstructArgs, stdout: &mut dyn Write) -> CliResult<i32> {
    let params = params_from_args(&args.params)?;
    let state = build_rho(params)?;
    emit(
        args.output.as_deref(),
        stdout,
        &to_json(&StateFile::from_state(&state))?,
    )?;
    Ok(EXIT_OK)
}

pub fn cmd_certify(args: &CertifyArgs, stdout: &mut dyn Write) -> CliResult<i32> {
    let params = match &args.input {
        Some(path) => {
            let text = fs::read_to_string(path)
                .map_err(|e| CliError::invalid(format!("cannot read {}: {e}", path.display())))?;
            let file: StateFile = serde_json::from_str(&text)
                .map_err(|e| CliError::invalid(format!("malformed state file: {e}")))?;
            file.validate()?.params
        }
        None => params_from_args(&args.params)?,
    };
    let report = certify_with(params, &args.search.config(), &args.search.tolerances())?;
    emit(args.output.as_deref(), stdout, &to_json(&report)?)?;
    Ok(match report.kind() {
        VerdictKind::Inconclusive => EXIT_INCONCLUSIVE,
        _ => EXIT_OK,
    })
}

/// One row of `sample` output.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SampleRow {
    pub index: u64,
    pub seed: u64,
    pub family: Family,
    pub a_re: f64,
    pub a_im: f64,
    pub b_re: f64,
    pub b_im: f64,
    pub c_re: f64,
    pub c_im: f64,
    pub d_re: f64,
    pub d_im: f64,
    pub m_re: f64,
    pub m_im: f64,
    pub n_re: f64,
    pub n_im: f64,
    pub s_re: f64,
    pub s_im: f64,
    pub t_re: f64,
    pub t_im: f64,
    pub pt_min_eigenvalue: f64,
    pub sigma_equals_rho: bool,
    pub analytic_range: RangeCondition,
    pub search_residual: f64,
    pub verdict: VerdictKind,
}

impl SampleRow {
    fn new(index: u64, seed: u64, family: Family, report: &CertificationReport) -> Self {
        let [a, b, c, d, m, n, s, t] = report.params.raw().to_array();
        Self {
            index,
            seed,
            family,
            a_re: a.re,
            a_im: a.im,
            b_re: b.re,
            b_im: b.im,
            c_re: c.re,
            c_im: c.im,
            d_re: d.re,
            d_im: d.im,
            m_re: m.re,
            m_im: m.im,
            n_re: n.re,
            n_im: n.im,
            s_re: s.re,
            s_im: s.im,
            t_re: t.re,
            t_im: t.im,
            pt_min_eigenvalue: report.pt_min_eigenvalue,
            sigma_equals_rho: report.sigma_equals_rho,
            analytic_range: report.analytic_range,
            search_residual: report.search_residual,
            verdict: report.kind(),
        }
    }

    pub fn params(&self) -> RawParams {
        let c = C64::new;
        RawParams::from_array([
            c(self.a_re, self.a_im),
            c(self.b_re, self.b_im),
            c(self.c_re, self.c_im),
            c(self.d_re, self.d_im),
            c(self.m_re, self.m_im),
            c(self.n_re, self.n_im),
            c(self.s_re, self.s_im),
            c(self.t_re, self.t_im),
        ])
    }
}

/// One row of `sweep` output.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SweepRow {
    pub value: f64,
    pub pt_min_eigenvalue: f64,
    pub search_residual: f64,
    pub analytic_range: RangeCondition,
    pub verdict: VerdictKind,
}

fn with_workers<T: Send>(workers: usize, job: impl FnOnce() -> T + Send) -> CliResult<T> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| CliError::invalid(format!("cannot start workers: {e}")))?;
    Ok(pool.install(job))
}

fn write_rows<T: Serialize>(rows: &[T], format: Format) -> CliResult<Vec<u8>> {
    match format {
        Format::Json => to_json(&rows),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            for row in rows {
                w.serialize(row)
                    .map_err(|e| CliError::invalid(format!("csv: {e}")))?;
            }
            w.into_inner()
                .map_err(|e| CliError::invalid(format!("csv: {e}")))
        }
    }
}

/// Certifies draws `0..count`; row order follows the index.
pub fn sample_rows(
    family: Family,
    count: usize,
    cfg: &RangeSearchConfig,
    tol: &Tolerances,
) -> crate::Result<Vec<SampleRow>> {
    (0..count as u64)
        .into_par_iter()
        .map(|index| {
            let (seed, params) = sampling::draw(family, cfg.seed, index);
            let search = RangeSearchConfig { seed, ..*cfg };
            let report = certify_with(params, &search, tol)?;
            Ok(SampleRow::new(index, seed, family, &report))
        })
        .collect()
}

pub fn cmd_sample(args: &SampleArgs, stdout: &mut dyn Write) -> CliResult<i32> {
    if args.count < 1 {
        return Err(CliError::invalid("--count must be at least 1"));
    }
    let cfg = args.search.config();
    let tol = args.search.tolerances();
    let rows = with_workers(args.workers, || sample_rows(args.family, args.count, &cfg, &tol))??;
    emit(args.output.as_deref(), stdout, &write_rows(&rows, args.format)?)?;
    Ok(EXIT_OK)
}

/// Parameter varied by `sweep`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepVar {
    Magnitude(usize),
    PhiS,
    PhiT,
    AbsS,
    AbsT,
}

impl std::str::FromStr for SweepVar {
    type Err = CliError;

    fn from_str(s: &str) -> CliResult<Self> {
        Ok(match s {
            "a" => SweepVar::Magnitude(0),
            "b" => SweepVar::Magnitude(1),
            "c" => SweepVar::Magnitude(2),
            "d" => SweepVar::Magnitude(3),
            "m" => SweepVar::Magnitude(4),
            "n" => SweepVar::Magnitude(5),
            "phi_s" => SweepVar::PhiS,
            "phi_t" => SweepVar::PhiT,
            "|s|" | "abs_s" => SweepVar::AbsS,
            "|t|" | "abs_t" => SweepVar::AbsT,
            other => {
                return Err(CliError::invalid(format!(
                    "unknown sweep variable '{other}' (expected a, b, c, d, m, n, phi_s, phi_t, |s|, |t|)"
                )))
            }
        })
    }
}

/// Parameters at one sweep point. Magnitude and phase sweeps stay on the
/// `|s| = ac/n`, `|t| = ad/m` surface; `|s|` and `|t|` sweeps leave it.
pub fn sweep_point(
    var: SweepVar,
    base: [f64; 6],
    phases: [f64; 2],
    value: f64,
) -> crate::Result<CanonicalParams> {
    if matches!(var, SweepVar::AbsS | SweepVar::AbsT) && !(value >= 0.0) {
        return Err(crate::Error::InvalidParams(format!(
            "modulus {value} must be nonnegative"
        )));
    }
    let mut reals = base;
    let [mut phi_s, mut phi_t] = phases;
    match var {
        SweepVar::Magnitude(k) => reals[k] = value,
        SweepVar::PhiS => phi_s = value,
        SweepVar::PhiT => phi_t = value,
        SweepVar::AbsS | SweepVar::AbsT => {}
    }
    let [a, b, c, d, m, n] = reals;
    let mut p = family_b(a, b, c, d, m, n, phi_s, phi_t)?;
    match var {
        SweepVar::AbsS => p.s = C64::from_polar(value, phi_s),
        SweepVar::AbsT => p.t = C64::from_polar(value, phi_t),
        _ => {}
    }
    Ok(p)
}

pub fn sweep_grid(lo: f64, hi: f64, steps: usize) -> Vec<f64> {
    let h = (hi - lo) / (steps - 1) as f64;
    (0..steps)
        .map(|i| if i + 1 == steps { hi } else { lo + h * i as f64 })
        .collect()
}

pub fn cmd_sweep(args: &SweepArgs, stdout: &mut dyn Write) -> CliResult<i32> {
    let var: SweepVar = args.var.parse()?;
    if args.steps < 2 {
        return Err(CliError::invalid("--steps must be at least 2"));
    }
    if !(args.lo.is_finite() && args.hi.is_finite()) {
        return Err(CliError::invalid("--lo and --hi must be finite"));
    }
    let base: [f64; 6] = args
        .params
        .clone()
        .try_into()
        .map_err(|_| CliError::invalid("--params takes six numbers a,b,c,d,m,n"))?;
    let points = sweep_grid(args.lo, args.hi, args.steps)
        .into_iter()
        .map(|x| sweep_point(var, base, [args.phi_s, args.phi_t], x).map(|p| (x, p)))
        .collect::<crate::Result<Vec<_>>>()?;

    let cfg = args.search.config();
    let tol = args.search.tolerances();
    let rows = with_workers(args.workers, || {
        points
            .par_iter()
            .map(|(x, p)| {
                let report = certify_with(*p, &cfg, &tol)?;
                Ok(SweepRow {
                    value: *x,
                    pt_min_eigenvalue: report.pt_min_eigenvalue,
                    search_residual: report.search_residual,
                    analytic_range: report.analytic_range,
                    verdict: report.kind(),
                })
            })
            .collect::<crate::Result<Vec<_>>>()
    })??;
    emit(args.output.as_deref(), stdout, &write_rows(&rows, args.format)?)?;
    Ok(EXIT_OK)
}
