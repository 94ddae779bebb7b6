//! `fthresh`: Frobenius threshold computations from the command line.
//!
//! Exit codes: 0 success, 1 parse/config error, 2 precondition violation,
//! 3 resource abort, 4 total sweep failure.

mod output;
mod sweep;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use fthresh_core::{
    fedder_fpure, fpt_budgeted, jumping_numbers, nu_budgeted, parse_poly, test_ideal,
    threshold_interval_budgeted, verify_correspondence, Error as CoreError, FrobeniusLevel, Ideal,
    PRational, Poly, PrimeField, Ring, StabilizeOpts,
};

use output::{
    ideal_generators, FedderOutput, FptOutput, JumpsOutput, NuOutput, TestIdealOutput,
    ThresholdOutput, VerifyOutput,
};

#[derive(Parser)]
#[command(
    name = "fthresh",
    version,
    about = "Frobenius threshold invariants of hypersurfaces over prime fields"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Emit machine-readable JSON on stdout
    #[arg(long, global = true)]
    json: bool,

    /// Worker threads for sweep (default: logical cores)
    #[arg(long, global = true)]
    jobs: Option<usize>,

    /// Largest Frobenius level visited by iterative computations
    #[arg(long, global = true, default_value_t = 6)]
    max_e: u32,

    /// Abort when an intermediate polynomial exceeds this many terms
    #[arg(long, global = true, default_value_t = 1_000_000)]
    degree_budget: u64,
}

#[derive(Args)]
struct RingArgs {
    /// Characteristic of the prime field
    #[arg(short = 'p', long = "prime")]
    prime: u64,

    /// Comma-separated variable names, e.g. x,y
    #[arg(short = 'v', long = "vars", value_delimiter = ',')]
    vars: Vec<String>,

    /// The hypersurface polynomial
    #[arg(short = 'f')]
    f: String,
}

#[derive(Subcommand)]
enum Command {
    /// Largest n with f^n outside J^[p^e]
    Nu {
        #[command(flatten)]
        ring: RingArgs,
        /// Ideal generators, comma-separated (@m for the maximal ideal)
        #[arg(short = 'J')]
        ideal: String,
        /// Frobenius level
        #[arg(short = 'e', long = "level")]
        e: u32,
    },
    /// Interval estimate of the threshold c^J(f) at level max-e
    Threshold {
        #[command(flatten)]
        ring: RingArgs,
        #[arg(short = 'J')]
        ideal: String,
    },
    /// F-pure threshold estimate with a candidate exact value
    Fpt {
        #[command(flatten)]
        ring: RingArgs,
    },
    /// Fedder criterion: is R/f F-pure at the origin?
    Fedder {
        #[command(flatten)]
        ring: RingArgs,
    },
    /// Generalized test ideal tau(f^t)
    Testideal {
        #[command(flatten)]
        ring: RingArgs,
        /// Parameter t as a rational, e.g. 5/7
        #[arg(short = 't')]
        t: String,
        /// Consecutive equal levels required for chain stabilization
        #[arg(long, default_value_t = 2)]
        window: u32,
    },
    /// Test-ideal profile and jump intervals on the grid a/p^E
    Jumps {
        #[command(flatten)]
        ring: RingArgs,
        /// Scan t in [0, t-max]
        #[arg(long = "t-max")]
        t_max: String,
        /// Grid resolution exponent E
        #[arg(short = 'E', long = "grid-level")]
        grid_level: u32,
    },
    /// Check the thresholds/jumping-numbers correspondence for a family
    Verify {
        #[command(flatten)]
        ring: RingArgs,
        /// Ideal generators, comma-separated; repeatable
        #[arg(short = 'J')]
        ideals: Vec<String>,
        #[arg(long = "t-max", default_value = "1")]
        t_max: String,
        #[arg(short = 'E', long = "grid-level", default_value_t = 2)]
        grid_level: u32,
    },
    /// Run a batch of threshold jobs from a config file
    Sweep {
        /// Key-value config listing primes, vars, f/J lines, e range, out path
        config: PathBuf,
    },
}

enum CliError {
    Core(CoreError),
    Config(String),
    AllJobsFailed(String),
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        CliError::Core(e)
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) => 1,
            CliError::AllJobsFailed(_) => 4,
            CliError::Core(e) => match e {
                CoreError::Parse(_)
                | CoreError::NotPrime(_)
                | CoreError::CharacteristicOutOfRange(_)
                | CoreError::InvalidRing(_) => 1,
                CoreError::NotInRadical
                | CoreError::NotLocalAtOrigin
                | CoreError::ContainmentViolated
                | CoreError::ZeroPolynomial
                | CoreError::NegativeParameter(_)
                | CoreError::RingMismatch(_) => 2,
                CoreError::BudgetExceeded { .. }
                | CoreError::NonStabilization { .. }
                | CoreError::ExponentOverflow(_)
                | CoreError::LevelOverflow { .. } => 3,
            },
        }
    }

    fn message(&self) -> String {
        match self {
            CliError::Core(e) => format!("error: {}", e),
            CliError::Config(m) => format!("config error: {}", m),
            CliError::AllJobsFailed(m) => format!("sweep failed: {}", m),
        }
    }
}

struct Rendered {
    plain: String,
    json: String,
}

fn render<T: Serialize>(value: &T, plain: String) -> Rendered {
    Rendered {
        plain,
        json: serde_json::to_string(value).expect("output serialization cannot fail"),
    }
}

fn build_ring(args: &RingArgs) -> Result<(Ring, Poly), CliError> {
    let field = PrimeField::new(args.prime)?;
    let ring = Ring::new(field, args.vars.clone())?;
    let f = parse_poly(&args.f, &ring).map_err(CoreError::from)?;
    Ok((ring, f))
}

/// `@m` expands to all ring variables; otherwise a comma-separated list of
/// generator expressions.
fn parse_ideal(text: &str, ring: &Ring) -> Result<Ideal, CliError> {
    if text.trim() == "@m" {
        return Ok(Ideal::maximal(ring));
    }
    let gens = text
        .split(',')
        .map(|g| parse_poly(g, ring).map_err(CoreError::from))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Ideal::new(ring, gens))
}

fn parse_rational(text: &str) -> Result<PRational, CliError> {
    text.parse::<PRational>()
        .map_err(|e| CliError::Core(CoreError::from(e)))
}

fn run(cli: &Cli) -> Result<Rendered, CliError> {
    let budget = cli.degree_budget;
    if cli.max_e == 0 {
        return Err(CliError::Config("--max-e must be at least 1".into()));
    }
    match &cli.command {
        Command::Nu { ring, ideal, e } => {
            let (rng, f) = build_ring(ring)?;
            let j = parse_ideal(ideal, &rng)?;
            let level = FrobeniusLevel::new(rng.field(), *e)?;
            let value = nu_budgeted(&f, &j, level, budget)?;
            let mut plain = format!("nu={}", value);
            if value == 0 {
                plain.push_str(" (degenerate: f lies in J^[p^e])");
            }
            Ok(render(&NuOutput { nu: value }, plain))
        }
        Command::Threshold { ring, ideal } => {
            let (rng, f) = build_ring(ring)?;
            let j = parse_ideal(ideal, &rng)?;
            let est = threshold_interval_budgeted(&f, &j, cli.max_e, budget)?;
            let out = ThresholdOutput::from_estimate(&est);
            let plain = out.plain();
            Ok(render(&out, plain))
        }
        Command::Fpt { ring } => {
            let (_, f) = build_ring(ring)?;
            let res = fpt_budgeted(&f, cli.max_e, budget)?;
            let out = FptOutput {
                lower: res.estimate.lower.to_string(),
                upper: res.estimate.upper.to_string(),
                guess: res.guess.to_string(),
            };
            let plain = format!(
                "e={} nu={} interval=[{}, {}] guess={}",
                res.estimate.level, res.estimate.nu, out.lower, out.upper, out.guess
            );
            Ok(render(&out, plain))
        }
        Command::Fedder { ring } => {
            let (_, f) = build_ring(ring)?;
            let pure = fedder_fpure(&f)?;
            Ok(render(
                &FedderOutput { f_pure: pure },
                format!("F-pure: {}", pure),
            ))
        }
        Command::Testideal { ring, t, window } => {
            let (_, f) = build_ring(ring)?;
            let t = parse_rational(t)?;
            let opts = StabilizeOpts {
                window: *window,
                max_e: cli.max_e,
                budget,
            };
            let tau = test_ideal(&f, &t, opts)?;
            let plain = format!("tau(f^({})) = {}", t, tau);
            Ok(render(
                &TestIdealOutput {
                    t: t.to_string(),
                    generators: ideal_generators(&tau),
                },
                plain,
            ))
        }
        Command::Jumps {
            ring,
            t_max,
            grid_level,
        } => {
            let (_, f) = build_ring(ring)?;
            let t_max = parse_rational(t_max)?;
            let opts = StabilizeOpts {
                max_e: cli.max_e,
                budget,
                ..StabilizeOpts::default()
            };
            let profile = jumping_numbers(&f, &t_max, *grid_level, opts)?;
            let out = JumpsOutput::from_profile(&profile);
            let plain = out.plain();
            Ok(render(&out, plain))
        }
        Command::Verify {
            ring,
            ideals,
            t_max,
            grid_level,
        } => {
            if ideals.is_empty() {
                return Err(CliError::Config(
                    "verify needs at least one -J ideal".into(),
                ));
            }
            if *grid_level == 0 {
                return Err(CliError::Config("verify needs a grid level E >= 1".into()));
            }
            let (rng, f) = build_ring(ring)?;
            let family = ideals
                .iter()
                .map(|text| parse_ideal(text, &rng))
                .collect::<Result<Vec<_>, _>>()?;
            let t_max = parse_rational(t_max)?;
            let opts = StabilizeOpts {
                max_e: cli.max_e,
                budget,
                ..StabilizeOpts::default()
            };
            let report = verify_correspondence(&f, &family, &t_max, *grid_level, opts)?;
            let out = VerifyOutput::from_report(&report);
            let plain = out.plain();
            Ok(render(&out, plain))
        }
        Command::Sweep { config } => {
            let text = std::fs::read_to_string(config).map_err(|e| {
                CliError::Config(format!("cannot read {}: {}", config.display(), e))
            })?;
            let base = config.parent().unwrap_or_else(|| std::path::Path::new("."));
            let parsed = sweep::parse_config(&text, base).map_err(CliError::Config)?;
            let workers = cli.jobs.unwrap_or_else(|| {
                std::thread::available_parallelism()
                    .map(usize::from)
                    .unwrap_or(1)
            });
            let summary = sweep::run_sweep(&parsed, workers, budget).map_err(CliError::Config)?;
            let succeeded = summary.appended - summary.errors + summary.skipped;
            if succeeded == 0 {
                return Err(CliError::AllJobsFailed(format!(
                    "all {} jobs failed; see {}",
                    summary.errors,
                    summary.out.display()
                )));
            }
            #[derive(Serialize)]
            struct SweepOutput {
                appended: usize,
                skipped: usize,
                errors: usize,
                out: String,
            }
            let out = SweepOutput {
                appended: summary.appended,
                skipped: summary.skipped,
                errors: summary.errors,
                out: summary.out.display().to_string(),
            };
            let plain = format!(
                "{} records appended ({} skipped, {} errors) -> {}",
                out.appended, out.skipped, out.errors, out.out
            );
            Ok(render(&out, plain))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(rendered) => {
            if cli.json {
                println!("{}", rendered.json);
            } else {
                println!("{}", rendered.plain);
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("{}", e.message());
            ExitCode::from(e.exit_code())
        }
    }
}
