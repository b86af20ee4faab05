//! Command-line front end.
//!
//! Exit codes: 0 on success, 2 for usage or validation errors, 3 when a
//! computed residual or identity difference exceeds the tolerance, 1 for
//! other runtime failures.

use std::ffi::OsString;
use std::f64::consts::PI;
use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::Value;

use crate::analytic::{
    corner_block_eigenpairs, fem_p2_eigenpairs, fem_p3_eigenpairs, gevp_eigenpairs, pevp_eigenpairs,
    scale_pencil, FemP2Branch, PolynomialPencil,
};
use crate::error::Error;
use crate::identities::{eve_identity_evp, eve_identity_gevp, trig_identity, GeviForm, IdentityReport, TrigKind, TridiagonalBands};
use crate::linalg::DenseMatrix;
use crate::mtx::{read_matrix_market, write_matrix_market};
use crate::reference::{match_spectra, match_values, residual_pevp, solve_gevp_numeric, solve_pevp_numeric};
use crate::sampling::{random_hermitian_definite, random_hermitian_separated};
use crate::scalar::{display_imag, parse_scalar, parse_scalar_list, re, Scalar};
use crate::solution::EigenSolution;
use crate::structured::{
    assemble_toeplitz_hankel, build_corner_block, build_fem_p2, build_fem_p3, build_toeplitz, CoefficientBand,
    HankelVariant, PencilSpec,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_TOLERANCE: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "structeig", version, about = "Closed-form eigenpairs of structured matrix pencils")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write a structured matrix (or pencil) as Matrix Market, JSON or CSV.
    Build(BuildArgs),
    /// Closed-form spectrum with residuals and a numerical cross-check.
    Spectrum(SpectrumArgs),
    /// Evaluate eigenvector-eigenvalue and trigonometric identities.
    Identity(IdentityArgs),
    /// Discrete eigenvalues against the continuum values (jπ)².
    Dispersion(DispersionArgs),
    /// Polynomial eigenproblem from a JSON description.
    Pevp(PevpArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyKind {
    Toeplitz,
    ToeplitzHankel,
    CornerBlock,
    FemP2,
    FemP3,
}

#[derive(Debug, Clone, Args)]
pub struct FamilyArgs {
    #[arg(long, value_enum)]
    pub family: FamilyKind,
    /// Hankel variant 1-4.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u8).range(1..=4))]
    pub variant: u8,
    /// Matrix dimension.
    #[arg(long)]
    pub n: Option<usize>,
    /// Bandwidth; must agree with the length of --alpha when given.
    #[arg(long)]
    pub m: Option<usize>,
    /// Comma-separated band of A (complex literals such as 8+2i or -1/3).
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: Option<String>,
    /// Comma-separated band of B.
    #[arg(long, allow_hyphen_values = true)]
    pub beta: Option<String>,
    /// Number of finite elements.
    #[arg(long)]
    pub n_elems: Option<usize>,
    /// Number of shared nodes of a corner-overlapped matrix (dimension 2·half_n+1).
    #[arg(long)]
    pub half_n: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MatrixFormat {
    Mtx,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TableFormat {
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct BuildArgs {
    #[command(flatten)]
    pub family: FamilyArgs,
    /// Output path; pencils get `_A`/`_B` (or `_K`/`_M`) suffixes.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = MatrixFormat::Mtx)]
    pub format: MatrixFormat,
}

#[derive(Debug, Args)]
pub struct SpectrumArgs {
    #[command(flatten)]
    pub family: FamilyArgs,
    #[arg(long, default_value_t = 1e-8)]
    pub tol: f64,
    /// Debugging aid: shift every closed-form eigenvalue by this amount.
    #[arg(long, allow_hyphen_values = true)]
    pub perturb: Option<f64>,
    /// Skip the numerical cross-check.
    #[arg(long)]
    pub no_oracle: bool,
    #[arg(long, value_enum, default_value_t = TableFormat::Csv)]
    pub format: TableFormat,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum IdentityKind {
    Eve,
    GevpEve,
    Ti31,
    Ti3,
    Ti3g,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormChoice {
    Literal,
    Proof,
    Both,
}

#[derive(Debug, Args)]
pub struct IdentityArgs {
    #[arg(long, value_enum)]
    pub kind: IdentityKind,
    #[arg(long)]
    pub n: Option<usize>,
    /// Mode index (all modes when omitted).
    #[arg(long)]
    pub j: Option<usize>,
    /// Entry index (all entries when omitted).
    #[arg(long)]
    pub k: Option<usize>,
    /// Removed row for ti3/ti3g (all rows when omitted).
    #[arg(long)]
    pub l: Option<usize>,
    /// Number of random matrices for eve/gevp-eve.
    #[arg(long)]
    pub random: Option<usize>,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Matrix Market file with A (eve, gevp-eve).
    #[arg(long)]
    pub matrix: Option<PathBuf>,
    /// Matrix Market file with B (gevp-eve).
    #[arg(long)]
    pub matrix_b: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = FormChoice::Both)]
    pub form: FormChoice,
    /// (α_0, α_1) for ti3g.
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: Option<String>,
    /// (β_0, β_1) for ti3g.
    #[arg(long, allow_hyphen_values = true)]
    pub beta: Option<String>,
    #[arg(long, default_value_t = 1e-8)]
    pub tol: f64,
    /// Print the reports as JSON lines.
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DispersionMethod {
    Fdm,
    Fem1,
    Fem2,
    Iga2Example,
}

#[derive(Debug, Args)]
pub struct DispersionArgs {
    #[arg(long, value_enum)]
    pub method: DispersionMethod,
    /// Number of intervals (elements) on [0, 1].
    #[arg(long, default_value_t = 16)]
    pub n: usize,
    /// Emit only the lowest modes.
    #[arg(long)]
    pub modes: Option<usize>,
    #[arg(long, value_enum, default_value_t = TableFormat::Csv)]
    pub format: TableFormat,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct PevpArgs {
    /// JSON file `{"variant":1,"n":8,"bands":[[...],[...]]}`; `-` reads stdin.
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, default_value_t = 1e-8)]
    pub tol: f64,
    #[arg(long)]
    pub no_oracle: bool,
    #[arg(long, value_enum, default_value_t = TableFormat::Csv)]
    pub format: TableFormat,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// A failed command with its exit code.
#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    fn usage(message: impl Into<String>) -> Self {
        Self { code: EXIT_USAGE, message: message.into() }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::NoConvergence { .. } | Error::Io(_) => EXIT_FAILURE,
            _ => EXIT_USAGE,
        };
        Self { code, message: e.to_string() }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        Self { code: EXIT_FAILURE, message: e.to_string() }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

/// Entry point of the binary.
pub fn main_exit_code() -> i32 {
    let stdout = io::stdout();
    let stderr = io::stderr();
    run(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}

/// Parses `args` and runs the command, writing to the given streams.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    let result = match &cli.command {
        Command::Build(a) => cmd_build(a, out),
        Command::Spectrum(a) => cmd_spectrum(a, out, err),
        Command::Identity(a) => cmd_identity(a, out, err),
        Command::Dispersion(a) => cmd_dispersion(a, out),
        Command::Pevp(a) => cmd_pevp(a, out, err),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {}", e.message);
            e.code
        }
    }
}

fn parse_band(text: &str, flag: &str) -> CliResult<CoefficientBand> {
    let values = parse_scalar_list(text).map_err(|e| CliError::usage(format!("--{flag}: {e}")))?;
    Ok(CoefficientBand::new(values)?)
}

fn require<T: Copy>(v: Option<T>, flag: &str, family: &str) -> CliResult<T> {
    v.ok_or_else(|| CliError::usage(format!("--{flag} is required for {family}")))
}

fn parse_xi(text: &str, flag: &str) -> CliResult<[Scalar; 4]> {
    let band = parse_band(text, flag)?;
    band.values()
        .try_into()
        .map_err(|_| CliError::usage(format!("--{flag} needs exactly four values (ξ_0, ξ_1, ξ_2, ξ_3)")))
}

impl FamilyArgs {
    fn variant(&self) -> HankelVariant {
        HankelVariant::from_index(self.variant).expect("clap restricts the range")
    }

    fn alpha(&self) -> CliResult<CoefficientBand> {
        let text = self.alpha.as_deref().ok_or_else(|| CliError::usage("--alpha is required"))?;
        let band = parse_band(text, "alpha")?;
        if let Some(m) = self.m {
            if m != band.bandwidth() {
                return Err(CliError::usage(format!(
                    "--m {m} does not match --alpha, which has bandwidth {}",
                    band.bandwidth()
                )));
            }
        }
        Ok(band)
    }

    fn beta_or_identity(&self) -> CliResult<CoefficientBand> {
        match &self.beta {
            Some(t) => parse_band(t, "beta"),
            None => Ok(CoefficientBand::real(&[1.0])),
        }
    }

    fn half_n(&self) -> CliResult<usize> {
        match (self.half_n, self.n) {
            (Some(h), _) => Ok(h),
            (None, Some(n)) if n >= 3 && n % 2 == 1 => Ok((n - 1) / 2),
            (None, Some(n)) => Err(CliError::usage(format!("corner-block dimension must be odd and >= 3, got {n}"))),
            (None, None) => Err(CliError::usage("--half-n (or an odd --n) is required for corner-block")),
        }
    }

    /// Materialized matrices with their file suffixes.
    fn matrices(&self) -> CliResult<Vec<(&'static str, DenseMatrix)>> {
        Ok(match self.family {
            FamilyKind::Toeplitz => {
                let n = require(self.n, "n", "toeplitz")?;
                vec![("", build_toeplitz(&self.alpha()?, n)?)]
            }
            FamilyKind::ToeplitzHankel => {
                let n = require(self.n, "n", "toeplitz-hankel")?;
                let alpha = self.alpha()?;
                match &self.beta {
                    None => vec![("", assemble_toeplitz_hankel(&alpha, n, self.variant())?)],
                    Some(t) => {
                        let (a, b) =
                            PencilSpec::toeplitz_hankel(self.variant(), alpha, parse_band(t, "beta")?, n).materialize()?;
                        vec![("_A", a), ("_B", b)]
                    }
                }
            }
            FamilyKind::CornerBlock => {
                let half_n = self.half_n()?;
                let text = self.alpha.as_deref().ok_or_else(|| CliError::usage("--alpha is required"))?;
                let a = build_corner_block(&parse_xi(text, "alpha")?, half_n)?;
                match &self.beta {
                    None => vec![("", a)],
                    Some(t) => vec![("_A", a), ("_B", build_corner_block(&parse_xi(t, "beta")?, half_n)?)],
                }
            }
            FamilyKind::FemP2 => {
                let (k, m) = build_fem_p2(require(self.n_elems, "n-elems", "fem-p2")?)?;
                vec![("_K", k), ("_M", m)]
            }
            FamilyKind::FemP3 => {
                let (k, m) = build_fem_p3(require(self.n_elems, "n-elems", "fem-p3")?)?;
                vec![("_K", k), ("_M", m)]
            }
        })
    }

    /// Closed-form solution together with the pencil it belongs to.
    fn analytic(&self) -> CliResult<(EigenSolution, DenseMatrix, DenseMatrix)> {
        match self.family {
            FamilyKind::Toeplitz => Err(CliError::usage(
                "plain toeplitz has no closed form; use --family toeplitz-hankel with a --variant",
            )),
            FamilyKind::ToeplitzHankel => {
                let n = require(self.n, "n", "toeplitz-hankel")?;
                let (alpha, beta) = (self.alpha()?, self.beta_or_identity()?);
                let sol = gevp_eigenpairs(&alpha, &beta, n, self.variant())?;
                let (a, b) = PencilSpec::toeplitz_hankel(self.variant(), alpha, beta, n).materialize()?;
                Ok((sol, a, b))
            }
            FamilyKind::CornerBlock => {
                let half_n = self.half_n()?;
                let text = self.alpha.as_deref().ok_or_else(|| CliError::usage("--alpha is required"))?;
                let alpha = parse_xi(text, "alpha")?;
                let beta = match &self.beta {
                    Some(t) => parse_xi(t, "beta")?,
                    None => [re(1.0), re(0.0), re(0.0), re(1.0)],
                };
                let sol = corner_block_eigenpairs(&alpha, &beta, half_n)?;
                Ok((sol, build_corner_block(&alpha, half_n)?, build_corner_block(&beta, half_n)?))
            }
            FamilyKind::FemP2 => {
                let n = require(self.n_elems, "n-elems", "fem-p2")?;
                let (k, m) = build_fem_p2(n)?;
                Ok((fem_p2_eigenpairs(n)?, k, m))
            }
            FamilyKind::FemP3 => {
                let n = require(self.n_elems, "n-elems", "fem-p3")?;
                let (k, m) = build_fem_p3(n)?;
                Ok((fem_p3_eigenpairs(n)?, k, m))
            }
        }
    }
}

fn family_stem(kind: FamilyKind) -> &'static str {
    match kind {
        FamilyKind::Toeplitz => "toeplitz",
        FamilyKind::ToeplitzHankel => "toeplitz-hankel",
        FamilyKind::CornerBlock => "corner-block",
        FamilyKind::FemP2 => "fem-p2",
        FamilyKind::FemP3 => "fem-p3",
    }
}

#[derive(Serialize)]
struct JsonMatrix {
    rows: usize,
    cols: usize,
    re: Vec<Vec<f64>>,
    im: Vec<Vec<f64>>,
}

fn write_matrix(m: &DenseMatrix, format: MatrixFormat, w: &mut dyn Write) -> CliResult<()> {
    match format {
        MatrixFormat::Mtx => write_matrix_market(m, w)?,
        MatrixFormat::Json => {
            let grid = |f: fn(&Scalar) -> f64| (0..m.rows()).map(|i| m.row(i).iter().map(f).collect()).collect();
            let jm = JsonMatrix { rows: m.rows(), cols: m.cols(), re: grid(|z| z.re), im: grid(|z| z.im) };
            serde_json::to_writer_pretty(&mut *w, &jm).map_err(|e| CliError { code: EXIT_FAILURE, message: e.to_string() })?;
            writeln!(w)?;
        }
        MatrixFormat::Csv => {
            for i in 0..m.rows() {
                let cells: Vec<String> = m.row(i).iter().map(|&z| csv_scalar(z)).collect();
                writeln!(w, "{}", cells.join(","))?;
            }
        }
    }
    Ok(())
}

fn csv_scalar(z: Scalar) -> String {
    if z.im == 0.0 {
        format!("{}", z.re)
    } else if z.im < 0.0 {
        format!("{}-{}i", z.re, -z.im)
    } else {
        format!("{}+{}i", z.re, z.im)
    }
}

fn output_path(out: Option<&Path>, stem: &str, suffix: &str, ext: &str) -> PathBuf {
    let base = out.map(|p| p.with_extension("")).unwrap_or_else(|| PathBuf::from(stem));
    let name = format!("{}{suffix}.{ext}", base.file_name().and_then(|s| s.to_str()).unwrap_or(stem));
    base.with_file_name(name)
}

fn cmd_build(args: &BuildArgs, out: &mut dyn Write) -> CliResult<i32> {
    let matrices = args.family.matrices()?;
    let ext = match args.format {
        MatrixFormat::Mtx => "mtx",
        MatrixFormat::Json => "json",
        MatrixFormat::Csv => "csv",
    };
    for (suffix, m) in &matrices {
        let path = output_path(args.out.as_deref(), family_stem(args.family.family), suffix, ext);
        let mut file = io::BufWriter::new(fs::File::create(&path)?);
        write_matrix(m, args.format, &mut file)?;
        file.flush()?;
        writeln!(out, "wrote {} ({}x{})", path.display(), m.rows(), m.cols())?;
    }
    Ok(EXIT_OK)
}

/// Sends table output to `--out` or to the given stream.
fn with_output(path: Option<&Path>, out: &mut dyn Write, body: &str) -> CliResult<()> {
    match path {
        Some(p) => fs::write(p, body)?,
        None => out.write_all(body.as_bytes())?,
    }
    Ok(())
}

#[derive(Serialize)]
struct SpectrumRow {
    mode_index: usize,
    lambda_re: f64,
    lambda_im: f64,
    residual: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    oracle_lambda_re: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    oracle_lambda_im: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    oracle_distance: Option<f64>,
}

fn opt(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

fn to_json<T: Serialize>(v: &T) -> CliResult<String> {
    serde_json::to_string_pretty(v)
        .map(|s| s + "\n")
        .map_err(|e| CliError { code: EXIT_FAILURE, message: e.to_string() })
}

fn cmd_spectrum(args: &SpectrumArgs, out: &mut dyn Write, err: &mut dyn Write) -> CliResult<i32> {
    let (mut sol, a, b) = args.family.analytic()?;
    if let Some(delta) = args.perturb {
        sol.pairs.iter_mut().for_each(|p| p.value += delta);
    }
    for note in &sol.notes {
        writeln!(err, "note: {note}")?;
    }
    let sol = sol.with_residuals(&a, &b)?;
    let report = if args.no_oracle {
        None
    } else {
        match solve_gevp_numeric(&a, &b) {
            Ok(numeric) => Some(match_spectra(&sol, &numeric)),
            Err(e @ Error::TooLargeForGeneralPath { .. }) => {
                writeln!(err, "warning: oracle skipped: {e}")?;
                None
            }
            Err(e) => return Err(e.into()),
        }
    };
    if report.as_ref().is_some_and(|r| r.count_mismatch) {
        writeln!(err, "warning: analytic and numeric eigenvalue counts differ")?;
    }
    let rows: Vec<SpectrumRow> = sol
        .pairs
        .iter()
        .map(|p| {
            let partner = report.as_ref().and_then(|r| r.partner(p.mode));
            SpectrumRow {
                mode_index: p.mode,
                lambda_re: p.value.re,
                lambda_im: display_imag(p.value),
                residual: p.residual.unwrap_or(f64::NAN),
                oracle_lambda_re: partner.map(|m| m.numeric.re),
                oracle_lambda_im: partner.map(|m| display_imag(m.numeric)),
                oracle_distance: partner.map(|m| m.distance),
            }
        })
        .collect();
    let body = match args.format {
        TableFormat::Json => to_json(&rows)?,
        TableFormat::Csv => {
            let mut s = String::from("mode_index,lambda_re,lambda_im,residual");
            if report.is_some() {
                s.push_str(",oracle_lambda_re,oracle_lambda_im,oracle_distance");
            }
            s.push('\n');
            for r in &rows {
                s.push_str(&format!("{},{},{},{}", r.mode_index, r.lambda_re, r.lambda_im, r.residual));
                if report.is_some() {
                    s.push_str(&format!(
                        ",{},{},{}",
                        opt(r.oracle_lambda_re),
                        opt(r.oracle_lambda_im),
                        opt(r.oracle_distance)
                    ));
                }
                s.push('\n');
            }
            s
        }
    };
    with_output(args.out.as_deref(), out, &body)?;
    let worst = sol.max_residual().unwrap_or(0.0);
    if !(worst <= args.tol) {
        writeln!(err, "residual {worst:e} exceeds tolerance {:e}", args.tol)?;
        return Ok(EXIT_TOLERANCE);
    }
    Ok(EXIT_OK)
}

fn indices(fixed: Option<usize>, n: usize) -> Vec<usize> {
    fixed.map(|v| vec![v]).unwrap_or_else(|| (1..=n).collect())
}

fn read_mtx(path: &Path) -> CliResult<DenseMatrix> {
    let file = fs::File::open(path).map_err(|e| CliError::usage(format!("{}: {e}", path.display())))?;
    Ok(read_matrix_market(io::BufReader::new(file))?)
}

fn parse_real_pair(text: Option<&str>, flag: &str) -> CliResult<[f64; 2]> {
    let text = text.ok_or_else(|| CliError::usage(format!("--{flag} is required for ti3g")))?;
    let values = parse_scalar_list(text).map_err(|e| CliError::usage(format!("--{flag}: {e}")))?;
    match values.as_slice() {
        [a, b] if a.im == 0.0 && b.im == 0.0 => Ok([a.re, b.re]),
        _ => Err(CliError::usage(format!("--{flag} needs two real values"))),
    }
}

fn report_line(r: &IdentityReport) -> String {
    let mut s = format!("kind={} n={}", r.kind, r.n);
    for (name, v) in [("j", r.j), ("k", r.k), ("l", r.l)] {
        if let Some(v) = v {
            s.push_str(&format!(" {name}={v}"));
        }
    }
    s.push_str(&format!(
        " lhs={} rhs={} abs_diff={:e} rel_diff={:e}",
        crate::scalar::format_scalar(r.lhs),
        crate::scalar::format_scalar(r.rhs),
        r.abs_diff,
        r.rel_diff
    ));
    s
}

fn cmd_identity(args: &IdentityArgs, out: &mut dyn Write, err: &mut dyn Write) -> CliResult<i32> {
    // (report, counts toward the exit code)
    let mut reports: Vec<(IdentityReport, bool)> = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    match args.kind {
        IdentityKind::Eve => {
            let matrices = match &args.matrix {
                Some(p) => vec![read_mtx(p)?],
                None => {
                    let n = args.n.unwrap_or(5);
                    (0..args.random.unwrap_or(1)).map(|_| random_hermitian_separated(&mut rng, n)).collect()
                }
            };
            for a in &matrices {
                for j in indices(args.j, a.rows()) {
                    for k in indices(args.k, a.rows()) {
                        reports.push((eve_identity_evp(a, j, k)?, true));
                    }
                }
            }
        }
        IdentityKind::GevpEve => {
            let pencils = match (&args.matrix, &args.matrix_b) {
                (Some(pa), Some(pb)) => vec![(read_mtx(pa)?, read_mtx(pb)?)],
                (None, None) => {
                    let n = args.n.unwrap_or(4);
                    (0..args.random.unwrap_or(1))
                        .map(|_| (random_hermitian_separated(&mut rng, n), random_hermitian_definite(&mut rng, n)))
                        .collect()
                }
                _ => return Err(CliError::usage("--matrix and --matrix-b must be given together")),
            };
            let forms: &[GeviForm] = match args.form {
                FormChoice::Literal => &[GeviForm::Literal],
                FormChoice::Proof => &[GeviForm::ProofForm],
                FormChoice::Both => &[GeviForm::ProofForm, GeviForm::Literal],
            };
            for (a, b) in &pencils {
                for j in indices(args.j, a.rows()) {
                    for k in indices(args.k, a.rows()) {
                        for &form in forms {
                            reports.push((eve_identity_gevp(a, b, j, k, form)?, form == GeviForm::ProofForm));
                        }
                    }
                }
            }
        }
        IdentityKind::Ti31 | IdentityKind::Ti3 | IdentityKind::Ti3g => {
            let n = args.n.ok_or_else(|| CliError::usage("--n is required"))?;
            let kind = match args.kind {
                IdentityKind::Ti31 => TrigKind::Ti31,
                IdentityKind::Ti3 => TrigKind::Ti3,
                _ => TrigKind::Ti3g,
            };
            let bands = if kind == TrigKind::Ti3g {
                Some(TridiagonalBands {
                    alpha: parse_real_pair(args.alpha.as_deref(), "alpha")?,
                    beta: parse_real_pair(args.beta.as_deref(), "beta")?,
                })
            } else {
                None
            };
            let ls = if kind == TrigKind::Ti31 { vec![1] } else { indices(args.l, n) };
            for k in indices(args.k, n) {
                for &l in &ls {
                    reports.push((trig_identity(kind, n, k, l, bands)?, kind.is_proven()));
                }
            }
        }
    }

    let mut gated_max: f64 = 0.0;
    let mut overall_max: f64 = 0.0;
    for (r, gates) in &reports {
        if args.json {
            writeln!(out, "{}", serde_json::to_string(r).map_err(|e| CliError { code: EXIT_FAILURE, message: e.to_string() })?)?;
        } else {
            writeln!(out, "{}", report_line(r))?;
            for w in &r.warnings {
                writeln!(out, "  warning: {w}")?;
            }
        }
        overall_max = overall_max.max(r.rel_diff);
        if *gates && r.warnings.is_empty() {
            gated_max = gated_max.max(r.rel_diff);
        }
    }
    if !args.json {
        writeln!(out, "reports={} max_rel_diff={overall_max:e} gated_max_rel_diff={gated_max:e}", reports.len())?;
    }
    if gated_max > args.tol {
        writeln!(err, "identity violated: rel_diff {gated_max:e} exceeds tolerance {:e}", args.tol)?;
        return Ok(EXIT_TOLERANCE);
    }
    Ok(EXIT_OK)
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct DispersionRow {
    pub j: usize,
    pub lambda_h: f64,
    pub lambda_exact: f64,
    pub rel_error: f64,
    pub branch: String,
}

/// Discrete Laplacian eigenvalues on `n` uniform intervals, ascending, with
/// the relative error against `(jπ)²`.
pub fn dispersion_table(method: DispersionMethod, n: usize) -> crate::error::Result<Vec<DispersionRow>> {
    let h = 1.0 / n as f64;
    let dim = n.saturating_sub(1);
    let set1 = |alpha: &[f64], beta: &[f64], c1: f64, c2: f64| -> crate::error::Result<Vec<(f64, String)>> {
        let sol = gevp_eigenpairs(&CoefficientBand::real(alpha), &CoefficientBand::real(beta), dim, HankelVariant::Set1)?;
        Ok(scale_pencil(&sol, re(c1), re(c2))?
            .values()
            .into_iter()
            .map(|v| (v.re, "acoustic".to_string()))
            .collect())
    };
    let mut values: Vec<(f64, String)> = match method {
        DispersionMethod::Fdm => set1(&[2.0, -1.0], &[1.0], 1.0 / (h * h), 1.0)?,
        DispersionMethod::Fem1 => set1(&[2.0, -1.0], &[2.0 / 3.0, 1.0 / 6.0], 1.0 / h, h)?,
        DispersionMethod::Iga2Example => {
            set1(&[1.0, -1.0 / 3.0, -1.0 / 6.0], &[11.0 / 20.0, 13.0 / 60.0, 1.0 / 120.0], 1.0 / h, h)?
        }
        DispersionMethod::Fem2 => fem_p2_eigenpairs(n)?
            .pairs
            .iter()
            .map(|p| (p.value.re, FemP2Branch::of_mode(p.mode, n).label().to_string()))
            .collect(),
    };
    values.sort_by(|a, b| a.0.total_cmp(&b.0));
    Ok(values
        .into_iter()
        .enumerate()
        .map(|(i, (lambda_h, branch))| {
            let exact = ((i + 1) as f64 * PI).powi(2);
            DispersionRow { j: i + 1, lambda_h, lambda_exact: exact, rel_error: (lambda_h - exact).abs() / exact, branch }
        })
        .collect())
}

fn cmd_dispersion(args: &DispersionArgs, out: &mut dyn Write) -> CliResult<i32> {
    let mut rows = dispersion_table(args.method, args.n)?;
    if let Some(m) = args.modes {
        rows.truncate(m);
    }
    let body = match args.format {
        TableFormat::Json => to_json(&rows)?,
        TableFormat::Csv => {
            let mut s = String::from("j,lambda_h,lambda_exact,rel_error,branch\n");
            for r in &rows {
                s.push_str(&format!("{},{},{},{},{}\n", r.j, r.lambda_h, r.lambda_exact, r.rel_error, r.branch));
            }
            s
        }
    };
    with_output(args.out.as_deref(), out, &body)?;
    Ok(EXIT_OK)
}

/// Parses `{"variant":1,"n":8,"bands":[[...],[...]]}`; band entries are
/// numbers or complex literal strings and `bands[k]` multiplies `λ^k`.
pub fn parse_pevp_json(text: &str) -> crate::error::Result<PolynomialPencil> {
    let v: Value = serde_json::from_str(text).map_err(|e| Error::Parse(format!("pevp json: {e}")))?;
    let variant = v["variant"].as_u64().ok_or_else(|| Error::Parse("pevp json: missing integer `variant`".into()))?;
    let n = v["n"].as_u64().ok_or_else(|| Error::Parse("pevp json: missing integer `n`".into()))? as usize;
    let bands = v["bands"].as_array().ok_or_else(|| Error::Parse("pevp json: missing array `bands`".into()))?;
    let bands = bands
        .iter()
        .map(|band| {
            let entries = band.as_array().ok_or_else(|| Error::Parse("pevp json: each band must be an array".into()))?;
            let values = entries
                .iter()
                .map(|e| match e {
                    Value::Number(x) => x.as_f64().map(re).ok_or_else(|| Error::Parse("bad number".into())),
                    Value::String(s) => parse_scalar(s),
                    other => Err(Error::Parse(format!("pevp json: bad band entry {other}"))),
                })
                .collect::<crate::error::Result<Vec<Scalar>>>()?;
            CoefficientBand::new(values)
        })
        .collect::<crate::error::Result<Vec<_>>>()?;
    let variant = u8::try_from(variant).map_err(|_| Error::Invalid(format!("variant must be 1..=4, got {variant}")))?;
    PolynomialPencil::new(bands, HankelVariant::from_index(variant)?, n)
}

#[derive(Serialize)]
struct PevpRow {
    mode_index: usize,
    root_index: usize,
    lambda_re: f64,
    lambda_im: f64,
    residual: f64,
    degree_drop: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    oracle_distance: Option<f64>,
}

fn cmd_pevp(args: &PevpArgs, out: &mut dyn Write, err: &mut dyn Write) -> CliResult<i32> {
    let text = if args.input.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        s
    } else {
        fs::read_to_string(&args.input).map_err(|e| CliError::usage(format!("{}: {e}", args.input.display())))?
    };
    let pencil = parse_pevp_json(&text)?;
    let sol = pevp_eigenpairs(&pencil)?;
    let coeffs = pencil.materialize()?;
    let mut rows = Vec::new();
    for m in &sol.modes {
        for (r, &root) in m.roots.iter().enumerate() {
            rows.push(PevpRow {
                mode_index: m.mode,
                root_index: r + 1,
                lambda_re: root.re,
                lambda_im: display_imag(root),
                residual: residual_pevp(&coeffs, root, &m.vector)?,
                degree_drop: m.degree_drop,
                oracle_distance: None,
            });
        }
    }
    if sol.any_degree_drop() {
        writeln!(err, "warning: leading symbol vanishes for some modes; fewer roots returned there")?;
    }
    if !args.no_oracle {
        let numeric = solve_pevp_numeric(&coeffs)?;
        let analytic = sol.values();
        if numeric.values.len() != analytic.len() {
            writeln!(err, "warning: {} analytic vs {} numeric eigenvalues", analytic.len(), numeric.values.len())?;
        }
        for (i, _, d) in match_values(&analytic, &numeric.values) {
            rows[i].oracle_distance = Some(d);
        }
    }
    let body = match args.format {
        TableFormat::Json => to_json(&rows)?,
        TableFormat::Csv => {
            let mut s = String::from("mode_index,root_index,lambda_re,lambda_im,residual,degree_drop");
            if !args.no_oracle {
                s.push_str(",oracle_distance");
            }
            s.push('\n');
            for r in &rows {
                s.push_str(&format!(
                    "{},{},{},{},{},{}",
                    r.mode_index, r.root_index, r.lambda_re, r.lambda_im, r.residual, r.degree_drop
                ));
                if !args.no_oracle {
                    s.push_str(&format!(",{}", opt(r.oracle_distance)));
                }
                s.push('\n');
            }
            s
        }
    };
    with_output(args.out.as_deref(), out, &body)?;
    let worst = rows.iter().map(|r| r.residual).fold(0.0, f64::max);
    if !(worst <= args.tol) {
        writeln!(err, "residual {worst:e} exceeds tolerance {:e}", args.tol)?;
        return Ok(EXIT_TOLERANCE);
    }
    Ok(EXIT_OK)
}
