//! Batch front door for the finite quantum time-frequency toolkit:
//! reproducible identity suites, named transforms over matrix files, and
//! frame experiments. Exit codes: 0 on success, 1 on a failed suite or
//! frame condition, 2 on configuration or input errors.

mod io;
mod suites;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use serde::Serialize;

use qtfa_core::cohen::cohen;
use qtfa_core::fourier::double_symplectic_dft;
use qtfa_core::frames::{dual_window, operator_frame_bounds, reconstruction_error, span_rank, Lattice};
use qtfa_core::operator::{rank_one, Operator};
use qtfa_core::phase_space::{DoublePhaseFunction, Modulus, PhaseFunction, Signal};
use qtfa_core::quantization::{fourier_wigner, kernel_to_symbol, spreading};
use qtfa_core::random::{random_operator, seeded_rng, RNG_ALGORITHM};
use qtfa_core::tfa::{stft, wigner, Window};

use io::{Matrix, MatrixFormat};

#[derive(Parser)]
#[command(name = "qtfa", version, about = "Finite phase-space toolkit: identity suites, transforms, frames")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a named identity suite and write a JSON report.
    Suite(SuiteArgs),
    /// Apply a named transform to matrix/vector files.
    Transform(TransformArgs),
    /// Compute frame bounds, the dual window, and reconstruction error.
    Frame(FrameArgs),
}

#[derive(Args)]
struct SuiteArgs {
    /// Suite name (see --list).
    #[arg(long)]
    name: Option<String>,
    /// List the suites and the identities they cover.
    #[arg(long)]
    list: bool,
    /// Odd modulus N >= 3.
    #[arg(long)]
    n: Option<usize>,
    /// RNG seed for the random draws.
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Inner mixed-norm exponent for the norm checks (number or "inf").
    #[arg(long, default_value = "1")]
    p: String,
    /// Outer mixed-norm exponent for the norm checks.
    #[arg(long, default_value = "2")]
    q: String,
    /// Weight for the norm checks: one | poly:S.
    #[arg(long, default_value = "one")]
    weight: String,
    /// Lattice steps "a,b" for the frame checks (divisors of N).
    #[arg(long)]
    lattice: Option<String>,
    /// Output directory for report.json.
    #[arg(long, default_value = ".")]
    out: PathBuf,
}

#[derive(Args)]
struct TransformArgs {
    /// One of: stft, wigner, symbol, spreading, fw, cohen, fphi.
    #[arg(long)]
    name: String,
    /// Odd modulus N >= 3.
    #[arg(long)]
    n: usize,
    /// Input file (csv or bin complex matrix).
    #[arg(long)]
    input: PathBuf,
    /// Second input, where the transform is bilinear.
    #[arg(long)]
    input2: Option<PathBuf>,
    /// Window spec: gauss | gauss:WIDTH | file:PATH | tensor:(gauss|gauss:W|file:PATH).
    #[arg(long, default_value = "gauss")]
    window: String,
    /// Output directory.
    #[arg(long, default_value = ".")]
    out: PathBuf,
    /// Output format.
    #[arg(long, default_value = "csv", value_parser = parse_format)]
    format: MatrixFormat,
    /// Also write a PPM heatmap of magnitudes.
    #[arg(long)]
    heatmap: bool,
}

#[derive(Args)]
struct FrameArgs {
    /// Odd modulus N >= 3.
    #[arg(long)]
    n: usize,
    /// Lattice steps "a,b" (divisors of N) for the first index.
    #[arg(long, default_value = "1,1")]
    lattice: String,
    /// Lattice steps for the second index; defaults to --lattice.
    #[arg(long)]
    lattice2: Option<String>,
    /// Operator window spec (tensor:...); plain signal specs are lifted to
    /// the rank-one tensor window.
    #[arg(long, default_value = "tensor:gauss")]
    window: String,
    /// RNG seed for the reconstruction probes.
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Output directory for frame.json.
    #[arg(long, default_value = ".")]
    out: PathBuf,
}

fn parse_format(s: &str) -> std::result::Result<MatrixFormat, String> {
    match s {
        "csv" => Ok(MatrixFormat::Csv),
        "bin" => Ok(MatrixFormat::Bin),
        other => Err(format!("unknown format '{other}', expected csv or bin")),
    }
}

fn main() -> ExitCode {
    configure_threads();
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Suite(args) => cmd_suite(args),
        Command::Transform(args) => cmd_transform(args),
        Command::Frame(args) => cmd_frame(args),
    };
    match outcome {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}

/// QTFA_THREADS caps the data-parallel pool; ignored when unset or invalid.
fn configure_threads() {
    if let Ok(raw) = std::env::var("QTFA_THREADS") {
        if let Ok(k) = raw.trim().parse::<usize>() {
            if k >= 1 {
                let _ = rayon::ThreadPoolBuilder::new().num_threads(k).build_global();
            }
        }
    }
}

fn modulus(n: usize) -> Result<Modulus> {
    Modulus::new(n).map_err(|e| anyhow!("{e}"))
}

fn parse_exponent(s: &str) -> Result<qtfa_core::norms::Exponent> {
    let v = if s.trim().eq_ignore_ascii_case("inf") {
        f64::INFINITY
    } else {
        s.trim()
            .parse::<f64>()
            .with_context(|| format!("bad exponent '{s}'"))?
    };
    qtfa_core::norms::Exponent::new(v).map_err(|e| anyhow!("{e}"))
}

fn parse_weight(s: &str) -> Result<qtfa_core::norms::Weight> {
    if s == "one" {
        return Ok(qtfa_core::norms::Weight::One);
    }
    if let Some(order) = s.strip_prefix("poly:") {
        let sv: f64 = order
            .parse()
            .with_context(|| format!("bad weight order '{order}'"))?;
        return Ok(qtfa_core::norms::Weight::Poly { s: sv });
    }
    bail!("unknown weight '{s}', expected one | poly:S")
}

#[derive(Serialize)]
struct SuiteReport {
    config: SuiteConfig,
    results: Vec<suites::IdentityResult>,
    pass: bool,
}

#[derive(Serialize)]
struct SuiteConfig {
    command: &'static str,
    name: String,
    n: usize,
    seed: u64,
    p: String,
    q: String,
    weight: String,
    lattice: Option<String>,
    rng: &'static str,
}

fn cmd_suite(args: SuiteArgs) -> Result<ExitCode> {
    if args.list {
        println!("available suites:");
        for (name, what) in suites::describe_suites() {
            println!("  {name:<12} {what}");
        }
        return Ok(ExitCode::SUCCESS);
    }
    let name = args
        .name
        .ok_or_else(|| anyhow!("--name is required (or use --list)"))?;
    let n = args.n.ok_or_else(|| anyhow!("--n is required"))?;
    let m = modulus(n)?;
    let mut opts = suites::SuiteOptions::new(args.seed);
    opts.p = parse_exponent(&args.p)?;
    opts.q = parse_exponent(&args.q)?;
    opts.weight = parse_weight(&args.weight)?;
    if let Some(spec) = &args.lattice {
        let lat = parse_lattice(spec, &m)?;
        opts.lattice = Some(lat.steps());
    }
    let results = suites::run_suite(&name, &m, &opts)?;
    let pass = results.iter().all(|r| r.pass);
    for r in &results {
        println!(
            "{} [{}] n={} max_error={:.3e} tolerance={:.1e}",
            if r.pass { "pass" } else { "FAIL" },
            r.identity,
            r.n,
            r.max_error,
            r.tolerance
        );
    }
    let report = SuiteReport {
        config: SuiteConfig {
            command: "suite",
            name: name.clone(),
            n,
            seed: args.seed,
            p: args.p.clone(),
            q: args.q.clone(),
            weight: args.weight.clone(),
            lattice: args.lattice.clone(),
            rng: RNG_ALGORITHM,
        },
        results,
        pass,
    };
    let path = args.out.join("report.json");
    let json = serde_json::to_string_pretty(&report)?;
    io::write_atomic(&path, json.as_bytes())?;
    println!(
        "{}: report written to {}",
        if pass { "pass" } else { "FAIL" },
        path.display()
    );
    Ok(if pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

/// Parsed window argument: a signal window, possibly lifted to a rank-one
/// operator window by the `tensor:` prefix.
enum WindowSpec {
    Signal(Signal),
    Operator(Operator),
}

fn parse_window(spec: &str, m: &Modulus) -> Result<WindowSpec> {
    if let Some(inner) = spec.strip_prefix("tensor:") {
        let sig = parse_signal_window(inner, m)?;
        return Ok(WindowSpec::Operator(rank_one(&sig, &sig)));
    }
    Ok(WindowSpec::Signal(parse_signal_window(spec, m)?))
}

fn parse_signal_window(spec: &str, m: &Modulus) -> Result<Signal> {
    if spec == "gauss" {
        return Ok(Window::gaussian(m).signal().clone());
    }
    if let Some(width) = spec.strip_prefix("gauss:") {
        let w: f64 = width
            .parse()
            .with_context(|| format!("bad Gaussian width '{width}'"))?;
        if w <= 0.0 {
            bail!("Gaussian width must be positive");
        }
        return Ok(Window::gaussian_scaled(m, w).signal().clone());
    }
    if let Some(path) = spec.strip_prefix("file:") {
        let mat = io::read_matrix(Path::new(path))?;
        return signal_from_matrix(&mat, m.n())
            .with_context(|| format!("window file '{path}'"));
    }
    bail!("unknown window spec '{spec}'")
}

fn signal_from_matrix(mat: &Matrix, n: usize) -> Result<Signal> {
    if (mat.rows, mat.cols) == (n, 1) || (mat.rows, mat.cols) == (1, n) {
        Ok(Signal::new(mat.data.clone()))
    } else {
        bail!(
            "expected a length-{n} vector, found {}x{}",
            mat.rows,
            mat.cols
        )
    }
}

fn operator_from_matrix(mat: &Matrix, n: usize) -> Result<Operator> {
    if (mat.rows, mat.cols) != (n, n) {
        bail!("expected an {n}x{n} operator, found {}x{}", mat.rows, mat.cols);
    }
    Operator::from_kernel(n, mat.data.clone()).map_err(|e| anyhow!("{e}"))
}

fn table_from_matrix(mat: &Matrix, n: usize) -> Result<DoublePhaseFunction> {
    let n2 = n * n;
    if (mat.rows, mat.cols) != (n2, n2) {
        bail!(
            "expected an {n2}x{n2} double-phase table, found {}x{}",
            mat.rows,
            mat.cols
        );
    }
    let mut out = DoublePhaseFunction::zeros(n);
    for w1 in 0..n {
        for w2 in 0..n {
            for z1 in 0..n {
                for z2 in 0..n {
                    out.set(w1, w2, z1, z2, mat.data[(w1 * n + w2) * n2 + z1 * n + z2]);
                }
            }
        }
    }
    Ok(out)
}

fn phase_function_to_matrix(f: &PhaseFunction) -> Matrix {
    Matrix::new(f.n(), f.n(), f.values().to_vec())
}

fn table_to_matrix(f: &DoublePhaseFunction) -> Matrix {
    let n = f.n();
    let n2 = n * n;
    let mut data = vec![Complex64::ZERO; n2 * n2];
    for w1 in 0..n {
        for w2 in 0..n {
            for z1 in 0..n {
                for z2 in 0..n {
                    data[(w1 * n + w2) * n2 + z1 * n + z2] = f.at(w1, w2, z1, z2);
                }
            }
        }
    }
    Matrix::new(n2, n2, data)
}

fn cmd_transform(args: TransformArgs) -> Result<ExitCode> {
    let m = modulus(args.n)?;
    let n = m.n();
    let input = io::read_matrix(&args.input)
        .with_context(|| format!("input '{}'", args.input.display()))?;

    let output: Matrix = match args.name.as_str() {
        "stft" => {
            let f = signal_from_matrix(&input, n)?;
            let w = match parse_window(&args.window, &m)? {
                WindowSpec::Signal(s) => Window::new(s).map_err(|e| anyhow!("{e}"))?,
                WindowSpec::Operator(_) => bail!("stft needs a signal window"),
            };
            phase_function_to_matrix(&stft(&m, &f, &w))
        }
        "wigner" => {
            let f = signal_from_matrix(&input, n)?;
            let g = match &args.input2 {
                Some(path) => signal_from_matrix(&io::read_matrix(path)?, n)?,
                None => f.clone(),
            };
            phase_function_to_matrix(&wigner(&m, &f, &g))
        }
        "symbol" => {
            let s = operator_from_matrix(&input, n)?;
            phase_function_to_matrix(&kernel_to_symbol(&m, &s))
        }
        "spreading" => {
            let s = operator_from_matrix(&input, n)?;
            phase_function_to_matrix(&spreading(&m, &s))
        }
        "fw" => {
            let s = operator_from_matrix(&input, n)?;
            phase_function_to_matrix(&fourier_wigner(&m, &s))
        }
        "cohen" => {
            let t = operator_from_matrix(&input, n)?;
            let s = match parse_window(&args.window, &m)? {
                WindowSpec::Operator(op) => op,
                WindowSpec::Signal(sig) => rank_one(&sig, &sig),
            };
            let table = cohen(&m, &s, &t).map_err(|e| anyhow!("{e}"))?;
            table_to_matrix(&table)
        }
        "fphi" => {
            let f = table_from_matrix(&input, n)?;
            let hat = double_symplectic_dft(&m, &f).map_err(|e| anyhow!("{e}"))?;
            table_to_matrix(&hat)
        }
        other => bail!("unknown transform '{other}'"),
    };

    let base = args.out.join(&args.name);
    let data_path = base.with_extension(args.format.extension());
    io::write_matrix(&data_path, &output, args.format)?;
    println!("wrote {}", data_path.display());
    if args.heatmap {
        let ppm = base.with_extension("ppm");
        io::write_heatmap(&ppm, &output)?;
        println!("wrote {}", ppm.display());
    }
    Ok(ExitCode::SUCCESS)
}

fn parse_lattice(spec: &str, m: &Modulus) -> Result<Lattice> {
    let parts: Vec<&str> = spec.split(',').collect();
    if parts.len() != 2 {
        bail!("lattice spec must be 'a,b', got '{spec}'");
    }
    let a: usize = parts[0].trim().parse().context("bad lattice step a")?;
    let b: usize = parts[1].trim().parse().context("bad lattice step b")?;
    Lattice::new(m, a, b).map_err(|e| anyhow!("{e}"))
}

#[derive(Serialize)]
struct FrameReport {
    config: FrameConfig,
    dim: usize,
    frame_bounds: [f64; 2],
    tight: bool,
    span_rank: usize,
    smallest_eigenvalue: f64,
    reconstruction_error: Option<f64>,
    pass: bool,
}

#[derive(Serialize)]
struct FrameConfig {
    command: &'static str,
    n: usize,
    lattice: String,
    lattice2: String,
    window: String,
    seed: u64,
    rng: &'static str,
}

fn cmd_frame(args: FrameArgs) -> Result<ExitCode> {
    let m = modulus(args.n)?;
    let lat1 = parse_lattice(&args.lattice, &m)?;
    let lat2 = match &args.lattice2 {
        Some(spec) => parse_lattice(spec, &m)?,
        None => parse_lattice(&args.lattice, &m)?,
    };
    let window = match parse_window(&args.window, &m)? {
        WindowSpec::Operator(op) => op,
        WindowSpec::Signal(sig) => rank_one(&sig, &sig),
    };
    if window.hs_norm() <= 0.0 {
        bail!("window operator has zero HS norm");
    }
    let lats = (&lat1, &lat2);
    let (lo, hi) = operator_frame_bounds(&m, &window, lats);
    let rank = span_rank(&m, &window, lats);
    let dim = m.n() * m.n();
    let tight = hi > 0.0 && (hi - lo).abs() <= 1e-10 * hi.max(1.0);

    let (recon, pass) = match dual_window(&m, &window, lats) {
        Ok(dual) => {
            let mut rng = seeded_rng(args.seed);
            let mut worst: f64 = 0.0;
            for _ in 0..3 {
                let t = random_operator(&m, &mut rng);
                worst = worst
                    .max(reconstruction_error(&m, &window, &dual, lats, &t).map_err(|e| anyhow!("{e}"))?);
            }
            (Some(worst), worst < 1e-9)
        }
        Err(_) => (None, false),
    };

    let report = FrameReport {
        config: FrameConfig {
            command: "frame",
            n: m.n(),
            lattice: args.lattice.clone(),
            lattice2: args.lattice2.clone().unwrap_or_else(|| args.lattice.clone()),
            window: args.window.clone(),
            seed: args.seed,
            rng: RNG_ALGORITHM,
        },
        dim,
        frame_bounds: [lo, hi],
        tight,
        span_rank: rank,
        smallest_eigenvalue: lo,
        reconstruction_error: recon,
        pass,
    };
    let path = args.out.join("frame.json");
    io::write_atomic(&path, serde_json::to_string_pretty(&report)?.as_bytes())?;
    if pass {
        println!(
            "frame: bounds [{lo:.6}, {hi:.6}], rank {rank}/{dim}, reconstruction {:.3e}; report {}",
            recon.unwrap_or(f64::NAN),
            path.display()
        );
        Ok(ExitCode::SUCCESS)
    } else {
        eprintln!(
            "not a frame: smallest eigenvalue {lo:.3e}, rank {rank}/{dim}; report {}",
            path.display()
        );
        Ok(ExitCode::from(1))
    }
}
