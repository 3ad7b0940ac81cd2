//! Command-line front end.
//!
//! Exit codes: 0 ok, 2 input error, 3 non-convergence under `--strict`,
//! 4 degenerate family, 1 I/O failure. Results go to stdout or `--out`;
//! files are written to a temporary sibling and renamed into place only after
//! every computation succeeded.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::error::Error;
use crate::families::{xi, Family};
use crate::format::{read_basis, read_matrix, BasisJson};
use crate::geometry::{
    beta_thresholds, classify_witness, entanglement_order, face_outside, witnesses_outside_face,
};
use crate::knorm::{max_expectation, min_knorm, SolverConfig};
use crate::linalg::{CVector, HermitianOp, State, Subspace};
use crate::tol;
use crate::repro::{
    bp_boundary_on_plane, curves_svg, plane_csv, plane_svg, sweep_csv, sweep_family_levels, uniform_grid, Plane,
    PlaneFrame,
};

pub const THREADS_ENV: &str = "SCHMIDT_WITNESS_THREADS";

#[derive(Debug, Parser)]
#[command(name = "schmidt-witness", version, about = "Operator k-norms and Schmidt number witness geometry")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub solver: SolverFlags,
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SolverFlags {
    /// Random restarts of the seesaw optimizer.
    #[arg(long, default_value_t = 64, global = true)]
    pub restarts: usize,
    /// Iteration cap per restart.
    #[arg(long, default_value_t = 500, global = true)]
    pub max_iters: usize,
    /// Relative tolerance on the objective between sweeps.
    #[arg(long, default_value_t = 1e-12, global = true)]
    pub tol: f64,
    #[arg(long, default_value_t = 0, global = true)]
    pub seed: u64,
    /// Fail with exit code 3 when an optimizer run did not converge.
    #[arg(long, global = true)]
    pub strict: bool,
}

impl SolverFlags {
    fn config(&self) -> SolverConfig {
        SolverConfig { restarts: self.restarts, max_iters: self.max_iters, rel_tol: self.tol, seed: self.seed }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Svg,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// ‖X‖_S(k) (or |X|_S(k) with --min) with a certificate vector.
    Knorm {
        #[command(flatten)]
        source: Source,
        /// Schmidt rank bound.
        #[arg(long)]
        k: usize,
        /// Infimum instead of supremum.
        #[arg(long)]
        min: bool,
        /// Level parameter of omega/tomiyama families.
        #[arg(long = "family-k")]
        family_k: Option<usize>,
    },
    /// Blockpositivity thresholds β±_k of the line through ρ* and a state.
    Beta {
        #[command(flatten)]
        source: Source,
        /// Level parameter of omega/tomiyama families.
        #[arg(long)]
        k: Option<usize>,
    },
    /// Witness class of a trace-1 matrix and the face it lies outside of.
    Classify {
        #[command(flatten)]
        source: Source,
        /// Level parameter of omega/tomiyama families.
        #[arg(long)]
        k: Option<usize>,
    },
    /// Entanglement order of a subspace.
    Subspace {
        /// Comma-separated named vectors: xi1, xi2, xi3.
        #[arg(long, value_delimiter = ',', conflicts_with = "file")]
        vectors: Vec<String>,
        /// Basis file `{"m", "n", "vectors"}`.
        #[arg(long)]
        file: Option<PathBuf>,
    },
    /// Threshold curves and plane sections for the 3⊗3 families.
    Repro {
        #[arg(long, value_parser = clap::value_parser!(u8).range(2..=4))]
        fig: u8,
        #[arg(long, default_value = "H1")]
        plane: Plane,
        #[arg(long, default_value_t = 90)]
        rays: usize,
        /// Points of the uniform λ-grid.
        #[arg(long, default_value_t = 21)]
        grid: usize,
        #[arg(long, default_value = ".")]
        out_dir: PathBuf,
    },
}

/// Either a built-in family or a JSON matrix file.
#[derive(Debug, Args)]
pub struct Source {
    #[arg(long, conflicts_with = "file")]
    pub family: Option<String>,
    #[arg(long)]
    pub file: Option<PathBuf>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub m: Option<usize>,
    /// Index of rho/sigma/omega/rho-lambda families.
    #[arg(long)]
    pub i: Option<usize>,
    #[arg(long, allow_negative_numbers = true)]
    pub lambda: Option<f64>,
    /// Replace the trace-1 matrix X by (1−t)ρ* + tX.
    #[arg(long, allow_negative_numbers = true)]
    pub line: Option<f64>,
}

#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    fn input(message: impl Into<String>) -> Self {
        Self { code: 2, message: message.into() }
    }

    fn not_converged() -> Self {
        Self { code: 3, message: "optimizer did not converge (--strict)".into() }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::DegenerateFamily => 4,
            Error::Io(_) => 1,
            _ => 2,
        };
        Self { code, message: e.to_string() }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

fn need(value: Option<usize>, flag: &str, family: &str) -> CliResult<usize> {
    value.ok_or_else(|| CliError::input(format!("family {family} needs --{flag}")))
}

fn family_of(src: &Source, k: Option<usize>) -> CliResult<Family> {
    let name = src.family.as_deref().unwrap_or_default();
    let lambda = || src.lambda.ok_or_else(|| CliError::input(format!("family {name} needs --lambda")));
    Ok(match name {
        "max-entangled" => Family::MaxEntangled { n: need(src.n, "n", name)? },
        "antisym" | "antisymmetric" => Family::Antisymmetric { n: need(src.n, "n", name)? },
        "rho-star" | "uniform" => {
            let n = src.n.unwrap_or(3);
            Family::MaximallyMixed { m: src.m.unwrap_or(n), n }
        }
        "rho1" => Family::Rho(1),
        "rho2" => Family::Rho(2),
        "rho3" => Family::Rho(3),
        "rho" => Family::Rho(need(src.i, "i", name)?),
        "rho-lambda" => Family::RhoLambda { i: need(src.i, "i", name)?, lambda: lambda()? },
        "sigma" => Family::Sigma(need(src.i, "i", name)?),
        "omega" => Family::Omega { i: need(src.i, "i", name)?, k: need(k, "k", name)? },
        "isotropic" => Family::Isotropic { n: need(src.n, "n", name)?, lambda: lambda()? },
        "werner" => Family::Werner { n: need(src.n, "n", name)?, lambda: lambda()? },
        "tomiyama" => Family::Tomiyama { n: need(src.n, "n", name)?, k: need(k, "k", name)? },
        other => return Err(CliError::input(format!("unknown family {other:?}"))),
    })
}

fn load(src: &Source, k: Option<usize>) -> CliResult<HermitianOp> {
    let op = match (&src.family, &src.file) {
        (_, Some(path)) => read_matrix(path)?,
        (Some(_), None) => family_of(src, k)?.build()?,
        (None, None) => return Err(CliError::input("give --family or --file")),
    };
    let Some(t) = src.line else { return Ok(op) };
    if (op.trace() - 1.0).abs() > tol::EPS_TRACE {
        return Err(CliError::input(format!("--line needs a trace-1 matrix, got trace {}", op.trace())));
    }
    let star = State::maximally_mixed(op.dim());
    Ok(&star.scaled(1.0 - t) + &op.scaled(t))
}

fn configure_threads() -> CliResult<()> {
    let Ok(raw) = std::env::var(THREADS_ENV) else { return Ok(()) };
    let threads: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&t| t > 0)
        .ok_or_else(|| CliError::input(format!("{THREADS_ENV} must be a positive integer, got {raw:?}")))?;
    // Fails only if the pool was already built, e.g. by an earlier call in-process.
    let _ = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global();
    Ok(())
}

/// Writes all files or none: everything goes to temporary siblings first.
fn write_atomically(files: &[(PathBuf, String)]) -> CliResult<()> {
    let mut staged = Vec::with_capacity(files.len());
    for (path, contents) in files {
        let dir = match path.parent() {
            Some(p) if !p.as_os_str().is_empty() => p,
            _ => Path::new("."),
        };
        std::fs::create_dir_all(dir).map_err(Error::from)?;
        let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(Error::from)?;
        tmp.write_all(contents.as_bytes()).map_err(Error::from)?;
        staged.push((tmp, path));
    }
    for (tmp, path) in staged {
        tmp.persist(path).map_err(|e| Error::from(e.error))?;
    }
    Ok(())
}

fn json_text<T: Serialize>(value: &T) -> CliResult<String> {
    let mut s = serde_json::to_string_pretty(value).map_err(Error::from)?;
    s.push('\n');
    Ok(s)
}

fn only_json(format: Format) -> CliResult<()> {
    if format != Format::Json {
        return Err(CliError::input("this subcommand only supports --format json"));
    }
    Ok(())
}

fn complement_summary(e: &Subspace) -> String {
    match e.complement() {
        Ok(perp) if perp.dim() == 1 => {
            let v: CVector = perp.basis().column(0).into_owned();
            for i in 1..=3 {
                if let Ok(named) = xi(i) {
                    if named.dim() == e.ambient() && named.amplitudes().dotc(&v).norm() > 1.0 - 1e-9 {
                        return format!("E = xi{i}-perp");
                    }
                }
            }
            format!("E of dimension {} (1-dimensional complement)", e.dim())
        }
        _ => format!("E of dimension {}", e.dim()),
    }
}

fn execute(cli: &Cli) -> CliResult<Vec<(Option<PathBuf>, String)>> {
    let cfg = cli.solver.config();
    cfg.validate()?;
    let strict = cli.solver.strict;
    let single = |text: String| Ok(vec![(cli.out.clone(), text)]);
    match &cli.command {
        Command::Knorm { source, k, min, family_k } => {
            only_json(cli.format)?;
            let op = load(source, *family_k)?;
            let res = if *min { min_knorm(&op, *k, &cfg)? } else { max_expectation(&op, *k, &cfg)? };
            if strict && !res.converged {
                return Err(CliError::not_converged());
            }
            single(json_text(&res)?)
        }
        Command::Beta { source, k } => {
            let state = State::new(load(source, *k)?)?;
            let b = beta_thresholds(&state, &cfg)?;
            if strict && !b.converged {
                return Err(CliError::not_converged());
            }
            match cli.format {
                Format::Json => single(json_text(&b)?),
                Format::Csv => {
                    let mut out = String::from("k,beta_minus,beta_plus\n");
                    for (idx, (lo, hi)) in b.beta_minus.iter().zip(&b.beta_plus).enumerate() {
                        out.push_str(&format!("{},{lo},{hi}\n", idx + 1));
                    }
                    single(out)
                }
                Format::Svg => Err(CliError::input("beta does not produce svg")),
            }
        }
        Command::Classify { source, k } => {
            only_json(cli.format)?;
            let x = load(source, *k)?;
            let class = classify_witness(&x, &cfg)?;
            let face = match face_outside(&x) {
                Ok(f) => Some(f),
                Err(Error::InsideStateSpace) => None,
                Err(e) => return Err(e.into()),
            };
            let summary = match &face {
                Some(f) => format!("{}; outside face {}", class.describe(), complement_summary(&f.range_subspace)),
                None if class.is_state && x.min_eigenvalue() > crate::tol::EPS_PSD => "state (interior)".to_string(),
                None => "state (boundary)".to_string(),
            };
            single(json_text(&json!({ "summary": summary, "class": class, "face": face }))?)
        }
        Command::Subspace { vectors, file } => {
            only_json(cli.format)?;
            let e = match file {
                Some(path) => read_basis(path)?,
                None if !vectors.is_empty() => {
                    let vs = vectors
                        .iter()
                        .map(|name| match name.trim() {
                            "xi1" => xi(1),
                            "xi2" => xi(2),
                            "xi3" => xi(3),
                            other => Err(Error::InvalidParameter(format!("unknown vector {other:?}"))),
                        })
                        .map(|v| v.map(|v| v.into_amplitudes()))
                        .collect::<crate::Result<Vec<_>>>()?;
                    Subspace::span(crate::families::d33(), &vs)?
                }
                None => return Err(CliError::input("give --vectors or --file")),
            };
            let order = entanglement_order(&e, &cfg)?;
            // Witnesses outside the face whose orthogonal complement is `e`.
            let outside = match e.complement() {
                Ok(face) if face.dim() > 0 => Some(witnesses_outside_face(&face, &cfg)?),
                _ => None,
            };
            single(json_text(&json!({
                "dim": e.dim(),
                "entanglement_order": order,
                "basis": BasisJson::from(&e),
                "witnesses_outside_complement_face": outside,
            }))?)
        }
        Command::Repro { fig, plane, rays, grid, out_dir } => repro(cli, *fig, *plane, *rays, *grid, out_dir, &cfg),
    }
}

fn repro(
    cli: &Cli,
    fig: u8,
    plane: Plane,
    rays: usize,
    grid: usize,
    out_dir: &Path,
    cfg: &SolverConfig,
) -> CliResult<Vec<(Option<PathBuf>, String)>> {
    let (stem, csv, svg) = if fig == 2 {
        let frame = PlaneFrame::new(plane)?;
        let levels = (1..=3).map(|k| bp_boundary_on_plane(plane, k, rays, cfg)).collect::<crate::Result<Vec<_>>>()?;
        let flat: Vec<_> = levels.iter().flatten().copied().collect();
        (format!("fig2_{plane}"), plane_csv(&flat), plane_svg(&frame, &levels))
    } else {
        if grid < 2 {
            return Err(CliError::input("--grid must be at least 2"));
        }
        let points = sweep_family_levels(usize::from(fig - 2), &uniform_grid(grid), cfg)?;
        (format!("fig{fig}"), sweep_csv(&points), curves_svg(&points))
    };
    let files = match (&cli.out, cli.format) {
        (Some(path), Format::Csv) => vec![(path.clone(), csv)],
        (Some(path), Format::Svg) => vec![(path.clone(), svg)],
        (Some(_), Format::Json) => return Err(CliError::input("--out with repro needs --format csv or svg")),
        (None, _) => vec![(out_dir.join(format!("{stem}.csv")), csv), (out_dir.join(format!("{stem}.svg")), svg)],
    };
    write_atomically(&files)?;
    let written: Vec<String> = files.iter().map(|(p, _)| p.display().to_string()).collect();
    Ok(vec![(None, json_text(&json!({ "written": written }))?)])
}

/// Parses `args`, runs the command and reports to `stdout`/`stderr`.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if code == 0 { write!(stdout, "{e}") } else { write!(stderr, "{e}") };
            return code;
        }
    };
    let outcome = configure_threads().and_then(|_| execute(&cli)).and_then(|outputs| {
        let files: Vec<(PathBuf, String)> =
            outputs.iter().filter_map(|(p, t)| p.clone().map(|p| (p, t.clone()))).collect();
        write_atomically(&files)?;
        for (_, text) in outputs.iter().filter(|(p, _)| p.is_none()) {
            stdout.write_all(text.as_bytes()).map_err(Error::from)?;
        }
        Ok(())
    });
    match outcome {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "error: {}", e.message);
            e.code
        }
    }
}

pub fn main() -> ExitCode {
    let code = run(std::env::args_os(), &mut std::io::stdout().lock(), &mut std::io::stderr().lock());
    ExitCode::from(code)
}
