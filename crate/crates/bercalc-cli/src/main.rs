//! Command-line driver: sampled transform ranges as CSV/SVG scatters, exact
//! finite-model norms, randomized inequality verification with JSON reports,
//! and scripted reproduction of the worked examples with their reference
//! numbers checked on every run.
//!
//! Exit codes: 0 success, 1 verification/assertion/runtime failure, 2 usage
//! error (unknown flags, malformed descriptors, out-of-domain parameters).

use std::fs;
use std::io::{self, BufWriter};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use bercalc_core::berezin::{berezin_radius, min_t_ber_mix, sigma_t_norm, OperatorModel};
use bercalc_core::convexity::{
    blaschke_range, convexity_diagnostic, dilation_convexity, dilation_range,
    finite_rank_radial_range, fock_diag_convexity, fock_diag_example_midpoint_distance,
    fock_diag_range, fock_scalar_convexity, fock_scalar_range, rank_one_offdiag_range,
    write_points_csv, RangeConvexity, SampledRange, DEFAULT_REL_TOL,
};
use bercalc_core::harness::{blocks_suite, pairing_suite, seminorm_suite};
use bercalc_core::mat::ModulusSpectrum;
use bercalc_core::{
    Complex64, ComplexMatrix, CoreError, DomainSampler, InequalityReport, InterpolationPath,
    KernelSpace, MeanKind, Result,
};

#[derive(Parser)]
#[command(
    name = "bercalc",
    version,
    about = "Berezin range sampling, radius and interpolation-path norms, inequality fuzzing"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sample a transform range and emit it as CSV (optionally SVG)
    Range(RangeArgs),
    /// Largest diagonal transform modulus of a matrix on the finite model
    Radius(RadiusArgs),
    /// Interpolation-path seminorm of a matrix on the finite model
    Norm(NormArgs),
    /// Run the randomized inequality suites and write a JSON report
    Verify(VerifyArgs),
    /// Recompute a named worked example and check its reference values
    Reproduce(ReproduceArgs),
}

#[derive(Args)]
struct RangeArgs {
    /// Symbol descriptor: dilation:<re>,<im> | blaschke:<re>,<im> |
    /// rankone-diag:<n> | rankone-offdiag:<m>,<n> | fock-scalar:<re>,<im> |
    /// fock-diag:<a>,<b>
    #[arg(long)]
    symbol: String,
    /// Space descriptor: hardy:<beta> for disc symbols (default hardy:0.5),
    /// fock:<alpha>:<dim> for Fock symbols (default fock:1:1)
    #[arg(long)]
    space: Option<String>,
    /// Grid: <n_r>x<n_theta> for disc symbols (default 400x64),
    /// <n_s> for curve symbols (default 2001)
    #[arg(long)]
    grid: Option<String>,
    /// Largest radial parameter for Fock curves
    #[arg(long, default_value_t = 50.0)]
    smax: f64,
    /// CSV output path (stdout when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
    /// Optional SVG scatter output path
    #[arg(long)]
    svg: Option<PathBuf>,
}

#[derive(Args)]
struct RadiusArgs {
    /// Matrix file, JSON {"rows": n, "cols": n, "data": [[re, im], ...]}
    #[arg(long)]
    matrix: PathBuf,
}

#[derive(Args)]
struct NormArgs {
    /// Matrix file, JSON {"rows": n, "cols": n, "data": [[re, im], ...]}
    #[arg(long)]
    matrix: PathBuf,
    /// Mean family: arith | geom | harm (full names accepted)
    #[arg(long, default_value = "arith")]
    path: String,
    /// Interpolation weight in [0, 1]
    #[arg(long, default_value_t = 0.5)]
    t: f64,
    /// Outer exponent, p >= 1
    #[arg(long, default_value_t = 1.0)]
    p: f64,
}

#[derive(Args)]
struct VerifyArgs {
    /// Which inequality suite to run
    #[arg(long, value_enum, default_value_t = SuiteChoice::All)]
    suite: SuiteChoice,
    /// Base seed; trial k runs on an independent stream derived from it
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Trials per suite
    #[arg(long, default_value_t = 1000)]
    trials: u64,
    /// Matrix dimension range, <lo>-<hi> or a single value
    #[arg(long, default_value = "2-6")]
    dims: String,
    /// JSON report path (stdout when omitted)
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(Args)]
struct ReproduceArgs {
    /// Worked example to recompute
    #[arg(long, value_enum)]
    item: ReproItem,
    /// Directory for emitted CSV/SVG files
    #[arg(long, default_value = ".")]
    outdir: PathBuf,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum SuiteChoice {
    Pairing,
    Seminorm,
    Blocks,
    All,
}

#[derive(Copy, Clone, ValueEnum)]
enum ReproItem {
    /// Strict 3x3 triangle: minimized mixed radius 481/6, half power radius 185/2
    MixMinimizer,
    /// Dilation ranges for eta = -0.75, beta = 0.25 (convex) and eta = 0.6i, beta = 0.5 (not)
    DilationPair,
    /// Blaschke range for alpha = 0.5, beta = 0.7 (sampled diagnostic: not convex)
    BlaschkeRange,
    /// Fock scalar symbol 0.5i: logarithmic spiral, not convex
    FockSpiral,
    /// Fock diagonal spiral midpoint (1 - e^-pi)/2 at distance > 0.01 from the curve
    FockMidpoint,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = configure_threads() {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

/// Usage-shaped errors exit 2; computation and I/O failures exit 1.
fn exit_code(e: &CoreError) -> ExitCode {
    match e {
        CoreError::Descriptor(_) | CoreError::Input(_) | CoreError::Domain(_)
        | CoreError::Dimension(_) => ExitCode::from(2),
        _ => ExitCode::FAILURE,
    }
}

fn configure_threads() -> Result<()> {
    let Ok(text) = std::env::var("BERCALC_THREADS") else {
        return Ok(());
    };
    let n: usize = text
        .trim()
        .parse()
        .ok()
        .filter(|&n| n >= 1)
        .ok_or_else(|| {
            CoreError::Input(format!("BERCALC_THREADS must be a positive integer, got {text:?}"))
        })?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CoreError::Input(format!("thread pool setup failed: {e}")))?;
    Ok(())
}

/// Reproducibility header: the fully resolved configuration, on stderr so
/// that data written to stdout stays machine-readable.
fn print_config(command: &str, entries: &[(&str, String)]) {
    let mut line = format!("config: command={command}");
    for (key, value) in entries {
        line.push_str(&format!(" {key}={value}"));
    }
    line.push_str(&format!(" threads={}", rayon::current_num_threads()));
    eprintln!("{line}");
}

fn display_path(path: &Option<PathBuf>) -> String {
    path.as_ref().map_or_else(|| "-".into(), |p| p.display().to_string())
}

fn run(cli: &Cli) -> Result<bool> {
    match &cli.command {
        Command::Range(args) => run_range(args).map(|()| true),
        Command::Radius(args) => run_radius(args).map(|()| true),
        Command::Norm(args) => run_norm(args).map(|()| true),
        Command::Verify(args) => run_verify(args),
        Command::Reproduce(args) => run_reproduce(args),
    }
}

// ---------------------------------------------------------------------------
// descriptor parsing
// ---------------------------------------------------------------------------

fn parse_f64(text: &str, what: &str) -> Result<f64> {
    text.trim()
        .parse()
        .map_err(|_| CoreError::Descriptor(format!("{what} must be a number, got {text:?}")))
}

fn parse_usize(text: &str, what: &str) -> Result<usize> {
    text.trim()
        .parse()
        .map_err(|_| CoreError::Descriptor(format!("{what} must be a nonnegative integer, got {text:?}")))
}

fn parse_u32(text: &str, what: &str) -> Result<u32> {
    text.trim()
        .parse()
        .map_err(|_| CoreError::Descriptor(format!("{what} must be a nonnegative integer, got {text:?}")))
}

fn split_pair<'t>(text: &'t str, what: &str) -> Result<(&'t str, &'t str)> {
    text.split_once(',')
        .ok_or_else(|| CoreError::Descriptor(format!("{what} needs \"<a>,<b>\", got {text:?}")))
}

fn parse_f64_pair(text: &str, what: &str) -> Result<(f64, f64)> {
    let (a, b) = split_pair(text, what)?;
    Ok((parse_f64(a, what)?, parse_f64(b, what)?))
}

fn parse_u32_pair(text: &str, what: &str) -> Result<(u32, u32)> {
    let (a, b) = split_pair(text, what)?;
    Ok((parse_u32(a, what)?, parse_u32(b, what)?))
}

fn parse_complex(text: &str, what: &str) -> Result<Complex64> {
    let (re, im) = parse_f64_pair(text, what)?;
    Ok(Complex64::new(re, im))
}

// ---------------------------------------------------------------------------
// range
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy)]
enum Symbol {
    Dilation(Complex64),
    Blaschke(Complex64),
    RankOneDiag(u32),
    RankOneOffdiag(u32, u32),
    FockScalar(Complex64),
    FockDiag(f64, f64),
}

impl Symbol {
    fn parse(text: &str) -> Result<Symbol> {
        let (name, rest) = text.split_once(':').ok_or_else(|| {
            CoreError::Descriptor(format!("symbol descriptor needs \"<kind>:<params>\", got {text:?}"))
        })?;
        match name {
            "dilation" => Ok(Symbol::Dilation(parse_complex(rest, "dilation factor")?)),
            "blaschke" => Ok(Symbol::Blaschke(parse_complex(rest, "blaschke parameter")?)),
            "rankone-diag" => Ok(Symbol::RankOneDiag(parse_u32(rest, "monomial power")?)),
            "rankone-offdiag" => {
                let (m, n) = parse_u32_pair(rest, "monomial powers")?;
                Ok(Symbol::RankOneOffdiag(m, n))
            }
            "fock-scalar" => Ok(Symbol::FockScalar(parse_complex(rest, "scalar symbol")?)),
            "fock-diag" => {
                let (a, b) = parse_f64_pair(rest, "diagonal symbol")?;
                Ok(Symbol::FockDiag(a, b))
            }
            other => Err(CoreError::Descriptor(format!(
                "unknown symbol kind {other:?}; expected dilation, blaschke, rankone-diag, \
                 rankone-offdiag, fock-scalar or fock-diag"
            ))),
        }
    }

    fn name(&self) -> &'static str {
        match self {
            Symbol::Dilation(_) => "dilation",
            Symbol::Blaschke(_) => "blaschke",
            Symbol::RankOneDiag(_) => "rankone-diag",
            Symbol::RankOneOffdiag(..) => "rankone-offdiag",
            Symbol::FockScalar(_) => "fock-scalar",
            Symbol::FockDiag(..) => "fock-diag",
        }
    }

    fn on_fock(&self) -> bool {
        matches!(self, Symbol::FockScalar(_) | Symbol::FockDiag(..))
    }

    /// Disc symbols sample a polar grid; the others sample a parameter curve.
    fn on_polar_grid(&self) -> bool {
        matches!(self, Symbol::Dilation(_) | Symbol::Blaschke(_) | Symbol::RankOneOffdiag(..))
    }
}

#[derive(Debug, Clone, Copy)]
enum RangeGrid {
    Polar { n_r: usize, n_theta: usize },
    Curve { n_s: usize },
}

impl RangeGrid {
    fn resolve(symbol: &Symbol, text: Option<&str>) -> Result<RangeGrid> {
        match (symbol.on_polar_grid(), text) {
            (true, None) => Ok(RangeGrid::Polar { n_r: 400, n_theta: 64 }),
            (false, None) => Ok(RangeGrid::Curve { n_s: 2001 }),
            (true, Some(t)) => {
                let (a, b) = t.split_once('x').ok_or_else(|| {
                    CoreError::Descriptor(format!(
                        "{} needs a polar grid \"<n_r>x<n_theta>\", got {t:?}",
                        symbol.name()
                    ))
                })?;
                Ok(RangeGrid::Polar {
                    n_r: parse_usize(a, "radial sample count")?,
                    n_theta: parse_usize(b, "angular sample count")?,
                })
            }
            (false, Some(t)) => Ok(RangeGrid::Curve { n_s: parse_usize(t, "sample count")? }),
        }
    }
}

impl std::fmt::Display for RangeGrid {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RangeGrid::Polar { n_r, n_theta } => write!(f, "{n_r}x{n_theta}"),
            RangeGrid::Curve { n_s } => write!(f, "{n_s}"),
        }
    }
}

fn resolve_space(symbol: &Symbol, text: Option<&str>) -> Result<KernelSpace> {
    let default = if symbol.on_fock() { "fock:1:1" } else { "hardy:0.5" };
    let space: KernelSpace = text.unwrap_or(default).parse()?;
    let fits = matches!(
        (symbol.on_fock(), &space),
        (false, KernelSpace::WeightedHardy { .. }) | (true, KernelSpace::Fock { .. })
    );
    if !fits {
        return Err(CoreError::Descriptor(format!(
            "symbol {} does not act on space {space}",
            symbol.name()
        )));
    }
    Ok(space)
}

fn monomial(n: u32) -> Vec<Complex64> {
    let mut coeffs = vec![Complex64::new(0.0, 0.0); n as usize];
    coeffs.push(Complex64::new(1.0, 0.0));
    coeffs
}

fn sample_range(
    symbol: &Symbol,
    space: &KernelSpace,
    grid: &RangeGrid,
    smax: f64,
) -> Result<SampledRange> {
    match (symbol, space, grid) {
        (Symbol::Dilation(eta), KernelSpace::WeightedHardy { beta }, RangeGrid::Polar { n_r, n_theta }) => {
            dilation_range(*eta, *beta, *n_r, *n_theta)
        }
        (Symbol::Blaschke(alpha), KernelSpace::WeightedHardy { beta }, RangeGrid::Polar { n_r, n_theta }) => {
            blaschke_range(*alpha, *beta, *n_r, *n_theta)
        }
        (Symbol::RankOneOffdiag(m, n), KernelSpace::WeightedHardy { beta }, RangeGrid::Polar { n_r, n_theta }) => {
            rank_one_offdiag_range(*m, *n, *beta, *n_r, *n_theta)
        }
        (Symbol::RankOneDiag(n), KernelSpace::WeightedHardy { beta }, RangeGrid::Curve { n_s }) => {
            finite_rank_radial_range(&[monomial(*n)], *beta, *n_s)
        }
        (Symbol::FockScalar(lambda), KernelSpace::Fock { alpha, .. }, RangeGrid::Curve { n_s }) => {
            fock_scalar_range(*lambda, *alpha, *n_s, smax)
        }
        (Symbol::FockDiag(a, b), KernelSpace::Fock { alpha, .. }, RangeGrid::Curve { n_s }) => {
            fock_diag_range(*a, *b, *alpha, *n_s, smax)
        }
        _ => Err(CoreError::Descriptor(format!(
            "symbol {} has no sampler for space {space}",
            symbol.name()
        ))),
    }
}

fn run_range(args: &RangeArgs) -> Result<()> {
    let symbol = Symbol::parse(&args.symbol)?;
    let space = resolve_space(&symbol, args.space.as_deref())?;
    let grid = RangeGrid::resolve(&symbol, args.grid.as_deref())?;
    print_config(
        "range",
        &[
            ("symbol", args.symbol.clone()),
            ("space", space.to_string()),
            ("grid", grid.to_string()),
            ("smax", format!("{}", args.smax)),
            ("out", display_path(&args.out)),
            ("svg", display_path(&args.svg)),
        ],
    );
    let range = sample_range(&symbol, &space, &grid, args.smax)?;
    write_csv_output(&args.out, &range.points)?;
    if let Some(path) = &args.svg {
        write_svg(path, &range.points)?;
        eprintln!("wrote {}", path.display());
    }
    Ok(())
}

fn write_csv_output(out: &Option<PathBuf>, points: &[Complex64]) -> Result<()> {
    match out {
        Some(path) => {
            let file = fs::File::create(path)?;
            write_points_csv(BufWriter::new(file), points)?;
            eprintln!("wrote {}", path.display());
        }
        None => write_points_csv(io::stdout().lock(), points)?,
    }
    Ok(())
}

/// Minimal scatter plot: fixed 800x800 viewbox, isotropically auto-scaled
/// axes with a frame, every point a 1.5-radius dot.
fn svg_scatter(points: &[Complex64]) -> String {
    const SIZE: f64 = 800.0;
    const MARGIN: f64 = 40.0;
    let (mut x_lo, mut x_hi, mut y_lo, mut y_hi) = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
    for p in points {
        x_lo = x_lo.min(p.re);
        x_hi = x_hi.max(p.re);
        y_lo = y_lo.min(p.im);
        y_hi = y_hi.max(p.im);
    }
    if points.is_empty() {
        (x_lo, x_hi, y_lo, y_hi) = (0.0, 1.0, 0.0, 1.0);
    }
    let span = (x_hi - x_lo).max(y_hi - y_lo).max(1e-12);
    let scale = (SIZE - 2.0 * MARGIN) / span;
    let x_off = (SIZE - scale * (x_hi - x_lo)) / 2.0;
    let y_off = (SIZE - scale * (y_hi - y_lo)) / 2.0;
    let mut svg = format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 {SIZE} {SIZE}\">\n\
         <rect x=\"0.5\" y=\"0.5\" width=\"799\" height=\"799\" fill=\"white\" stroke=\"#444\"/>\n"
    );
    for p in points {
        let x = x_off + (p.re - x_lo) * scale;
        let y = SIZE - (y_off + (p.im - y_lo) * scale);
        svg.push_str(&format!(
            "<circle cx=\"{x:.2}\" cy=\"{y:.2}\" r=\"1.5\" fill=\"#1f5fa8\"/>\n"
        ));
    }
    svg.push_str("</svg>\n");
    svg
}

fn write_svg(path: &Path, points: &[Complex64]) -> Result<()> {
    fs::write(path, svg_scatter(points))?;
    Ok(())
}

// ---------------------------------------------------------------------------
// radius / norm
// ---------------------------------------------------------------------------

fn finite_model(matrix: ComplexMatrix) -> Result<(OperatorModel, DomainSampler)> {
    let space = KernelSpace::finite(matrix.rows())?;
    let sampler = DomainSampler::default_for(space.clone());
    Ok((OperatorModel::matrix(space, matrix)?, sampler))
}

fn run_radius(args: &RadiusArgs) -> Result<()> {
    print_config("radius", &[("matrix", args.matrix.display().to_string())]);
    let matrix = ComplexMatrix::read_json_file(&args.matrix)?;
    let (op, sampler) = finite_model(matrix)?;
    println!("{:.15}", berezin_radius(&op, &sampler)?);
    Ok(())
}

fn run_norm(args: &NormArgs) -> Result<()> {
    let kind: MeanKind = args.path.parse()?;
    let path = InterpolationPath::new(kind, args.t)?;
    print_config(
        "norm",
        &[
            ("matrix", args.matrix.display().to_string()),
            ("path", format!("{kind:?}").to_lowercase()),
            ("t", format!("{}", args.t)),
            ("p", format!("{}", args.p)),
        ],
    );
    let matrix = ComplexMatrix::read_json_file(&args.matrix)?;
    let (op, sampler) = finite_model(matrix)?;
    println!("{:.15}", sigma_t_norm(&op, path, args.p, &sampler)?);
    Ok(())
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

fn parse_dims(text: &str) -> Result<std::ops::RangeInclusive<usize>> {
    let (lo, hi) = match text.split_once('-') {
        Some((a, b)) => (parse_usize(a, "dimension")?, parse_usize(b, "dimension")?),
        None => {
            let n = parse_usize(text, "dimension")?;
            (n, n)
        }
    };
    Ok(lo..=hi)
}

fn run_verify(args: &VerifyArgs) -> Result<bool> {
    let dims = parse_dims(&args.dims)?;
    print_config(
        "verify",
        &[
            ("suite", format!("{:?}", args.suite).to_lowercase()),
            ("seed", args.seed.to_string()),
            ("trials", args.trials.to_string()),
            ("dims", format!("{}-{}", dims.start(), dims.end())),
            ("report", display_path(&args.report)),
        ],
    );
    let all = [SuiteChoice::Pairing, SuiteChoice::Seminorm, SuiteChoice::Blocks];
    let mut reports: Vec<InequalityReport> = Vec::new();
    for choice in all {
        if args.suite != SuiteChoice::All && args.suite != choice {
            continue;
        }
        let report = match choice {
            SuiteChoice::Pairing => pairing_suite(args.seed, args.trials, dims.clone())?,
            SuiteChoice::Seminorm => seminorm_suite(args.seed, args.trials, dims.clone())?,
            SuiteChoice::Blocks => blocks_suite(args.seed, args.trials, dims.clone())?,
            SuiteChoice::All => unreachable!(),
        };
        eprintln!(
            "suite {}: trials={} minSlack={:.6e} failures={}",
            report.suite,
            report.trials,
            report.min_slack,
            report.failures.len()
        );
        reports.push(report);
    }
    let passed = reports.iter().all(InequalityReport::passed);
    let json = serde_json::to_string_pretty(&reports).map_err(CoreError::from)?;
    match &args.report {
        Some(path) => {
            fs::write(path, json + "\n")?;
            eprintln!("wrote {}", path.display());
        }
        None => println!("{json}"),
    }
    Ok(passed)
}

// ---------------------------------------------------------------------------
// reproduce
// ---------------------------------------------------------------------------

/// Accumulates mismatches between recomputed and reference values; the
/// command exits 1 when any survive, printing one diff line per mismatch.
struct Checks {
    failures: Vec<String>,
}

impl Checks {
    fn new() -> Checks {
        Checks { failures: Vec::new() }
    }

    fn close(&mut self, label: &str, got: f64, want: f64, tol: f64) {
        let err = (got - want).abs();
        if err.is_nan() || err > tol {
            self.failures.push(format!(
                "{label}: expected {want:.15} within {tol:e}, got {got:.15}"
            ));
        }
    }

    fn ensure(&mut self, label: &str, ok: bool, detail: String) {
        if !ok {
            self.failures.push(format!("{label}: {detail}"));
        }
    }
}

fn run_reproduce(args: &ReproduceArgs) -> Result<bool> {
    let item_name = match args.item {
        ReproItem::MixMinimizer => "mix-minimizer",
        ReproItem::DilationPair => "dilation-pair",
        ReproItem::BlaschkeRange => "blaschke-range",
        ReproItem::FockSpiral => "fock-spiral",
        ReproItem::FockMidpoint => "fock-midpoint",
    };
    print_config(
        "reproduce",
        &[("item", item_name.to_string()), ("outdir", args.outdir.display().to_string())],
    );
    fs::create_dir_all(&args.outdir)?;
    let mut checks = Checks::new();
    match args.item {
        ReproItem::MixMinimizer => reproduce_mix_minimizer(&mut checks)?,
        ReproItem::DilationPair => reproduce_dilation_pair(&args.outdir, &mut checks)?,
        ReproItem::BlaschkeRange => reproduce_blaschke_range(&args.outdir, &mut checks)?,
        ReproItem::FockSpiral => reproduce_fock_spiral(&args.outdir, &mut checks)?,
        ReproItem::FockMidpoint => reproduce_fock_midpoint(&args.outdir, &mut checks)?,
    }
    for line in &checks.failures {
        eprintln!("mismatch {item_name} {line}");
    }
    Ok(checks.failures.is_empty())
}

fn emit_range(outdir: &Path, stem: &str, points: &[Complex64]) -> Result<()> {
    let csv = outdir.join(format!("{stem}.csv"));
    let file = fs::File::create(&csv)?;
    write_points_csv(BufWriter::new(file), points)?;
    eprintln!("wrote {}", csv.display());
    let svg = outdir.join(format!("{stem}.svg"));
    write_svg(&svg, points)?;
    eprintln!("wrote {}", svg.display());
    Ok(())
}

fn reproduce_mix_minimizer(checks: &mut Checks) -> Result<()> {
    let a = ComplexMatrix::from_real_rows(&[
        vec![0.0, 2.0, 2.0],
        vec![0.0, 0.0, 3.0],
        vec![0.0, 0.0, 0.0],
    ])?;
    let (t_star, minimum) = min_t_ber_mix(&a, 4.0)?;
    println!("minimizing weight t = {t_star:.15}");
    println!("minimized mixed radius = {minimum:.15}");
    checks.close("minimized mixed radius (481/6)", minimum, 481.0 / 6.0, 1e-10);

    let fourth = ModulusSpectrum::of(&a)?.power(4.0).add(&ModulusSpectrum::of_adjoint(&a)?.power(4.0))?;
    let (op, sampler) = finite_model(fourth)?;
    let half = 0.5 * berezin_radius(&op, &sampler)?;
    println!("half fourth-power radius = {half:.15}");
    checks.close("half fourth-power radius (185/2)", half, 185.0 / 2.0, 1e-10);
    Ok(())
}

fn print_diagnostic(label: &str, rc: &RangeConvexity) {
    println!(
        "{label}: characterization={} verdict={} hullDeviation={:.15e} diameter={:.15}",
        rc.characterization, rc.report.verdict, rc.report.hull_deviation, rc.report.diameter
    );
}

fn reproduce_dilation_pair(outdir: &Path, checks: &mut Checks) -> Result<()> {
    let left = dilation_convexity(Complex64::new(-0.75, 0.0), 0.25)?;
    emit_range(outdir, "dilation-pair-left", &left.range.points)?;
    print_diagnostic("left (eta=-0.75, beta=0.25)", &left);
    let (mut inf, mut sup) = (f64::INFINITY, f64::NEG_INFINITY);
    for p in &left.range.points {
        inf = inf.min(p.re);
        sup = sup.max(p.re);
    }
    println!("left infimum = {inf:.15}");
    println!("left supremum = {sup:.15}");
    checks.close("left infimum (12/19)", inf, 12.0 / 19.0, 1e-5);
    checks.close("left supremum", sup, 1.0, 1e-12);
    checks.ensure(
        "left convexity",
        left.characterization && left.report.verdict,
        format!(
            "expected convex by both tests, got characterization={} verdict={}",
            left.characterization, left.report.verdict
        ),
    );

    let right = dilation_convexity(Complex64::new(0.0, 0.6), 0.5)?;
    emit_range(outdir, "dilation-pair-right", &right.range.points)?;
    print_diagnostic("right (eta=0.6i, beta=0.5)", &right);
    checks.ensure(
        "right non-convexity",
        !right.characterization
            && !right.report.verdict
            && right.report.hull_deviation > 1e-2 * right.report.diameter,
        format!(
            "expected a macroscopic deviation, got characterization={} verdict={} deviation={:.3e} diameter={:.3e}",
            right.characterization,
            right.report.verdict,
            right.report.hull_deviation,
            right.report.diameter
        ),
    );
    Ok(())
}

fn reproduce_blaschke_range(outdir: &Path, checks: &mut Checks) -> Result<()> {
    let range = blaschke_range(Complex64::new(0.5, 0.0), 0.7, 400, 64)?;
    emit_range(outdir, "blaschke-range", &range.points)?;
    let report = convexity_diagnostic(&range, DEFAULT_REL_TOL)?;
    println!(
        "blaschke (alpha=0.5, beta=0.7): verdict={} hullDeviation={:.15e} diameter={:.15}",
        report.verdict, report.hull_deviation, report.diameter
    );
    checks.ensure(
        "sampled non-convexity",
        !report.verdict,
        format!(
            "expected the midpoint diagnostic to refuse a convex verdict, got deviation={:.3e} diameter={:.3e}",
            report.hull_deviation, report.diameter
        ),
    );
    Ok(())
}

fn reproduce_fock_spiral(outdir: &Path, checks: &mut Checks) -> Result<()> {
    let rc = fock_scalar_convexity(Complex64::new(0.0, 0.5), 1.0)?;
    emit_range(outdir, "fock-spiral", &rc.range.points)?;
    print_diagnostic("fock scalar (lambda=0.5i, alpha=1)", &rc);
    checks.ensure(
        "spiral non-convexity",
        !rc.characterization && !rc.report.verdict,
        format!(
            "expected both tests to reject convexity, got characterization={} verdict={}",
            rc.characterization, rc.report.verdict
        ),
    );
    Ok(())
}

fn reproduce_fock_midpoint(outdir: &Path, checks: &mut Checks) -> Result<()> {
    let curve = fock_diag_range(0.0, 1.0, 1.0, 2001, 50.0)?;
    emit_range(outdir, "fock-midpoint", &curve.points)?;
    let (midpoint, distance) = fock_diag_example_midpoint_distance();
    println!("midpoint = {:.15} + {:.15}i", midpoint.re, midpoint.im);
    println!("distance to curve = {distance:.15}");
    let expected = (1.0 - (-std::f64::consts::PI).exp()) / 2.0;
    checks.close("midpoint real part ((1-e^-pi)/2)", midpoint.re, expected, 1e-12);
    checks.close("midpoint imaginary part", midpoint.im, 0.0, 1e-12);
    checks.ensure(
        "midpoint clearance",
        distance > 0.01,
        format!("expected distance > 0.01, got {distance:.15}"),
    );
    let rc = fock_diag_convexity(0.0, 1.0)?;
    print_diagnostic("fock diagonal (a=0, b=1)", &rc);
    checks.ensure(
        "diagonal spiral non-convexity",
        !rc.characterization && !rc.report.verdict,
        format!(
            "expected both tests to reject convexity, got characterization={} verdict={}",
            rc.characterization, rc.report.verdict
        ),
    );
    Ok(())
}
