use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;

use quartic_cones::bundle::hessian_sweep;
use quartic_cones::canring::CurveContext;
use quartic_cones::cone::{double_quadric_quartic, polar_cubic, reconstruct_quartic};
use quartic_cones::curve::{generate_curve, CurveFile};
use quartic_cones::net::random_net;
use quartic_cones::report::{form_terms, sweep_csv, trajectory_csv, ConeJson, Envelope, PolarJson, Terms};
use quartic_cones::rng::stream;
use quartic_cones::spanlab::{
    accumulate_spans, base_locus_probe, squares_containment, BaseLocusReport, SpanOptions, SquaresReport,
};
use quartic_cones::suite::{expected_f4_rank, run_full_suite, run_suite, SuiteConfig, SuiteReport};
use quartic_cones::{with_prime, Error, PrimeField, DEFAULT_PRIME};

const CONVENTIONS: &str = "\
Conventions:
  Forms are lists of [exponents, coefficient] pairs over their nonzero terms.
  Monomials are ordered by degree, then lexicographically with z0 > z1 > ...
  (so z0^2 precedes z0*z1 precedes z1^2). Coefficients are residues in [0, p).
  Ideal bases are in reduced echelon form in that order; quartic cones and
  polars are scaled so that their first nonzero coefficient is 1.

Exit codes:
  0 success, 2 usage or configuration error, 3 verification failure,
  4 sampling budget exhausted.";

#[derive(Parser)]
#[command(name = "qcone", version, about = "Quartic tangent cones of genus 4 and 5 canonical curves over F_p")]
#[command(after_help = CONVENTIONS)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a random smooth canonical curve and write it as JSON.
    GenCurve {
        #[arg(long, value_parser = clap::value_parser!(u64).range(4..=5))]
        genus: u64,
        #[arg(long, default_value_t = DEFAULT_PRIME)]
        prime: u64,
        #[arg(long)]
        seed: u64,
        /// Number of sample points to store alongside the equations.
        #[arg(long, default_value_t = 0)]
        points: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Basis of the degree-N piece of the ideal.
    Ideal {
        #[arg(long)]
        curve: PathBuf,
        #[arg(long, value_parser = clap::value_parser!(u64).range(2..=4))]
        degree: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Reconstruct the quartic cone of a random net, with its polar cubics.
    Reconstruct {
        #[arg(long)]
        curve: PathBuf,
        #[arg(long)]
        w_seed: u64,
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Saturated spans of all quartic cones and their polars.
    Spans {
        #[arg(long)]
        curve: PathBuf,
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write the rank trajectory as CSV.
        #[arg(long)]
        trajectory: Option<PathBuf>,
    },
    /// Fiber discriminants over the plane of a random net, as CSV.
    Hessian {
        #[arg(long)]
        curve: PathBuf,
        #[arg(long)]
        w_seed: u64,
        #[arg(long, default_value_t = 200)]
        sweep: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the acceptance criteria; `--full` runs twice and adds the determinism check.
    Verify {
        #[arg(long)]
        curve: PathBuf,
        #[arg(long)]
        full: bool,
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

enum Failure {
    Config(String),
    Verification(String),
    Budget(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Config(_) => 2,
            Failure::Verification(_) => 3,
            Failure::Budget(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Config(m) | Failure::Verification(m) | Failure::Budget(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::UnsupportedGenus(_)
            | Error::UnsupportedPrime(_)
            | Error::UnsupportedDegree(_)
            | Error::Invalid(_) => Failure::Config(e.to_string()),
            Error::BudgetExhausted(_) | Error::GenerationFailed { .. } | Error::InsufficientPoints { .. } => {
                Failure::Budget(e.to_string())
            }
            other => Failure::Verification(other.to_string()),
        }
    }
}

type Outcome = Result<(), Failure>;

/// Where a command's primary output goes.
fn emit(out: Option<&Path>, text: &str) -> Outcome {
    match out {
        Some(path) => fs::write(path, text)
            .map_err(|e| Failure::Config(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

fn read_curve(path: &Path) -> Result<CurveFile, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::Config(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::Config(format!("{}: {e}", path.display())))
}

fn read_config(path: Option<&Path>) -> Result<SuiteConfig, Failure> {
    let cfg = match path {
        None => SuiteConfig::default(),
        Some(path) => {
            let text = fs::read_to_string(path)
                .map_err(|e| Failure::Config(format!("cannot read {}: {e}", path.display())))?;
            serde_json::from_str(&text)
                .map_err(|e| Failure::Config(format!("{}: {e}", path.display())))?
        }
    };
    cfg.validate().map_err(Failure::Config)?;
    Ok(cfg)
}

fn context<F: PrimeField>(file: &CurveFile, cfg: &SuiteConfig) -> Result<CurveContext<F>, Failure> {
    let (curve, points) = file.to_curve::<F>()?;
    Ok(CurveContext::with_points(curve, points, cfg.panel())?)
}

/// Identifies the curve inside a report.
#[derive(Serialize)]
struct CurveTag {
    genus: usize,
    prime: u64,
    seed: u64,
    stored_points: usize,
}

impl CurveTag {
    fn new(file: &CurveFile) -> Self {
        Self {
            genus: file.genus,
            prime: file.prime,
            seed: file.seed,
            stored_points: file.points.len(),
        }
    }
}

fn gen_curve(genus: usize, prime: u64, seed: u64, points: usize, out: &Path) -> Outcome {
    let file = with_prime!(prime, F => {
        let curve = generate_curve::<F>(genus, seed)?;
        let pts = curve.sample_points(points)?;
        CurveFile::from_curve(&curve, &pts)
    })?;
    emit(Some(out), &to_json(&file))?;
    eprintln!("genus {genus} curve over F_{prime} written to {}", out.display());
    Ok(())
}

#[derive(Serialize)]
struct IdealConfig {
    curve: CurveTag,
    degree: usize,
}

#[derive(Serialize)]
struct IdealBody {
    dim: usize,
    basis: Vec<Terms>,
}

fn ideal(curve: &Path, degree: usize, out: Option<&Path>) -> Outcome {
    let file = read_curve(curve)?;
    let cfg = SuiteConfig::default();
    let body = with_prime!(file.prime, F => {
        let ctx = context::<F>(&file, &cfg)?;
        let piece = ctx.ideal(degree);
        IdealBody {
            dim: piece.dim(),
            basis: piece.forms().iter().map(form_terms).collect(),
        }
    })?;
    eprintln!("dim I({degree}) = {}", body.dim);
    let config = IdealConfig {
        curve: CurveTag::new(&file),
        degree,
    };
    emit(out, &to_json(&Envelope::new(config, body)))
}

#[derive(Serialize)]
struct RunConfig<'a> {
    curve: CurveTag,
    w_seed: Option<u64>,
    suite: &'a SuiteConfig,
}

#[derive(Serialize)]
struct ReconstructBody {
    cone: ConeJson,
    polars: Vec<PolarJson>,
    passed: bool,
}

fn reconstruct(curve: &Path, w_seed: u64, config: Option<&Path>, out: Option<&Path>) -> Outcome {
    let file = read_curve(curve)?;
    let cfg = read_config(config)?;
    let body = with_prime!(file.prime, F => {
        let ctx = context::<F>(&file, &cfg)?;
        let mut rng = stream(w_seed, "net");
        let net = random_net(&ctx, &mut rng)?;
        let opts = quartic_cones::cone::ReconstructOptions {
            seed: w_seed,
            k_max: cfg.k_max,
            oracle_points: cfg.oracle_points,
            ..Default::default()
        };
        let cone = if net.in_d {
            double_quadric_quartic(&ctx, &net)?
        } else {
            reconstruct_quartic(&ctx, &net, &opts)?
        };
        let mut polars = Vec::new();
        for (i, x) in cone.net.vertex.iter().enumerate() {
            let p = polar_cubic(&ctx, &cone, x, w_seed ^ i as u64, cfg.oracle_points)?;
            polars.push(PolarJson::new(&p));
        }
        let passed = cone.certificate.passed() && polars.iter().all(|p| p.certificate.passed());
        ReconstructBody {
            cone: ConeJson::new(&cone),
            polars,
            passed,
        }
    })?;
    let passed = body.passed;
    let config = RunConfig {
        curve: CurveTag::new(&file),
        w_seed: Some(w_seed),
        suite: &cfg,
    };
    emit(out, &to_json(&Envelope::new(config, body)))?;
    if !passed {
        return Err(Failure::Verification("certificate failed".into()));
    }
    Ok(())
}

#[derive(Serialize)]
struct SpansBody {
    f4_rank: usize,
    f3_rank: usize,
    expected_f4_rank: Option<usize>,
    f4_trajectory: Vec<usize>,
    f3_trajectory: Vec<usize>,
    nets_used: usize,
    nets_skipped: usize,
    f4_basis: Vec<Terms>,
    squares: SquaresReport,
    f4_base_locus: BaseLocusReport,
    f3_base_locus: BaseLocusReport,
}

impl SpansBody {
    fn passed(&self) -> bool {
        Some(self.f4_rank) == self.expected_f4_rank
            && self.squares.passed()
            && self.f4_base_locus.passed()
            && self.f3_base_locus.passed()
    }
}

fn spans(curve: &Path, config: Option<&Path>, out: Option<&Path>, trajectory: Option<&Path>) -> Outcome {
    let file = read_curve(curve)?;
    let cfg = read_config(config)?;
    let (body, csv) = with_prime!(file.prime, F => {
        let ctx = context::<F>(&file, &cfg)?;
        let opts = SpanOptions {
            seed: cfg.seed,
            batch: cfg.span_batch,
            stable_batches: cfg.span_stable_batches,
            max_batches: cfg.span_max_batches,
        };
        let s = accumulate_spans(&ctx, &opts)?;
        let squares = squares_containment(&ctx, &s.f4, 20, cfg.seed);
        let f4_base_locus = base_locus_probe(&ctx, &s.f4, cfg.off_curve_probes, cfg.structured_probes, cfg.seed)?;
        let f3_base_locus = base_locus_probe(&ctx, &s.f3, cfg.off_curve_probes, cfg.structured_probes, cfg.seed)?;
        let body = SpansBody {
            f4_rank: s.f4.rank(),
            f3_rank: s.f3.rank(),
            expected_f4_rank: expected_f4_rank(ctx.genus()),
            f4_trajectory: s.f4.trajectory.clone(),
            f3_trajectory: s.f3.trajectory.clone(),
            nets_used: s.nets_used,
            nets_skipped: s.nets_skipped,
            f4_basis: s.f4.basis().iter().map(form_terms).collect(),
            squares,
            f4_base_locus,
            f3_base_locus,
        };
        (body, trajectory_csv(&s.f4, &s.f3))
    })?;
    eprintln!("rank |F_4| = {}, rank |F_3| = {}", body.f4_rank, body.f3_rank);
    if let Some(path) = trajectory {
        emit(Some(path), &csv)?;
    }
    let passed = body.passed();
    let config = RunConfig {
        curve: CurveTag::new(&file),
        w_seed: None,
        suite: &cfg,
    };
    emit(out, &to_json(&Envelope::new(config, body)))?;
    if !passed {
        return Err(Failure::Verification("span checks failed".into()));
    }
    Ok(())
}

fn hessian(curve: &Path, w_seed: u64, sweep: usize, out: Option<&Path>) -> Outcome {
    if sweep < 4 {
        return Err(Failure::Config(format!("sweep must be at least 4, got {sweep}")));
    }
    let file = read_curve(curve)?;
    let cfg = SuiteConfig::default();
    let rows = with_prime!(file.prime, F => {
        let ctx = context::<F>(&file, &cfg)?;
        let mut rng = stream(w_seed, "net");
        let net = random_net(&ctx, &mut rng)?;
        let opts = quartic_cones::cone::ReconstructOptions {
            seed: w_seed,
            ..Default::default()
        };
        let cone = reconstruct_quartic(&ctx, &net, &opts)?;
        hessian_sweep(&ctx, &net, &cone, sweep, w_seed)?
    })?;
    emit(out, &sweep_csv(&rows))?;
    let bad = rows
        .iter()
        .filter(|r| r.on_gamma() != r.singular_fiber() || r.kernel_match == Some(false))
        .count();
    eprintln!("{} fibers, {bad} mismatches", rows.len());
    if bad > 0 {
        return Err(Failure::Verification(format!("{bad} fibers disagree")));
    }
    Ok(())
}

fn verify(curve: &Path, full: bool, config: Option<&Path>, out: Option<&Path>) -> Outcome {
    let file = read_curve(curve)?;
    let cfg = read_config(config)?;
    let report: SuiteReport = with_prime!(file.prime, F => {
        let ctx = context::<F>(&file, &cfg)?;
        if full {
            run_full_suite(&ctx, &cfg)
        } else {
            run_suite(&ctx, &cfg)
        }
    })?;
    for line in report.summary_lines() {
        eprintln!("{line}");
    }
    let config = RunConfig {
        curve: CurveTag::new(&file),
        w_seed: None,
        suite: &cfg,
    };
    emit(out, &to_json(&Envelope::new(config, &report)))?;
    if report.budget_exhausted {
        return Err(Failure::Budget("sampling budget exhausted".into()));
    }
    if !report.passed() {
        return Err(Failure::Verification(format!("failing criteria: {:?}", report.failed_ids())));
    }
    Ok(())
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::GenCurve {
            genus,
            prime,
            seed,
            points,
            out,
        } => gen_curve(genus as usize, prime, seed, points, &out),
        Command::Ideal { curve, degree, out } => ideal(&curve, degree as usize, out.as_deref()),
        Command::Reconstruct {
            curve,
            w_seed,
            config,
            out,
        } => reconstruct(&curve, w_seed, config.as_deref(), out.as_deref()),
        Command::Spans {
            curve,
            config,
            out,
            trajectory,
        } => spans(&curve, config.as_deref(), out.as_deref(), trajectory.as_deref()),
        Command::Hessian {
            curve,
            w_seed,
            sweep,
            out,
        } => hessian(&curve, w_seed, sweep, out.as_deref()),
        Command::Verify {
            curve,
            full,
            config,
            out,
        } => verify(&curve, full, config.as_deref(), out.as_deref()),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
