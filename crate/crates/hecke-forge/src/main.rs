use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use exact_arith::par;
use hecke_forge::compute::{self, CharSelector, DistSource, KappaHatArgs};
use hecke_forge::{run_suite, Suite, SuiteConfig, Summary};
use serde_json::Value;

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;

#[derive(Parser)]
#[command(name = "hecke-forge", version, about = "Exact verification of Hecke-algebra, Gauss-sum and distribution identities")]
struct Cli {
    /// Flat `key = value` configuration file.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Base seed for every randomised case.
    #[arg(long, global = true, env = "HECKE_FORGE_SEED", value_name = "N")]
    seed: Option<u64>,
    /// Restrict `run` to these suites (repeatable).
    #[arg(long = "suite", global = true, value_name = "NAME", num_args = 1..)]
    suites: Vec<Suite>,
    /// Also write the JSON Lines output to this file.
    #[arg(long, global = true, value_name = "PATH")]
    json_out: Option<PathBuf>,
    /// Worker threads for the parallel core.
    #[arg(long, global = true, value_name = "N", value_parser = clap::value_parser!(u64).range(1..))]
    jobs: Option<u64>,
    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Args, Clone, Copy)]
struct CharArgs {
    /// Level `l` of the modulus `p^l`.
    #[arg(long, default_value_t = 1)]
    level: u32,
    /// Index in the lexicographic enumeration of characters mod `p^l`.
    #[arg(long, conflicts_with = "order")]
    index: Option<usize>,
    /// Pick the first primitive character of this order.
    #[arg(long)]
    order: Option<u64>,
}

impl CharArgs {
    fn selector(self) -> CharSelector {
        match (self.index, self.order) {
            (Some(i), _) => CharSelector::Index(i),
            (None, Some(d)) => CharSelector::Order(d),
            (None, None) => CharSelector::FirstPrimitive,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Run the verification suites (the default).
    Run,
    /// Normalised and classical Gauss sums of a character of `(Z/p^l)^×`.
    GaussSum {
        #[arg(long)]
        p: u64,
        #[command(flatten)]
        character: CharArgs,
    },
    /// Expand a Hecke operator into single cosets and check coverage.
    HeckeExpand {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        r: u32,
        /// Operator tag: `V1`, `Vp`, `Vp'`, `U1`, `T2`, ...
        #[arg(long)]
        op: String,
        #[arg(long, default_value_t = 200)]
        samples: usize,
    },
    /// Satake image of `T_ν` on `GL_n`.
    Satake {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        nu: usize,
    },
    /// All `GL_{n−1}` weights interlacing a `GL_n` weight.
    Branch {
        /// Comma-separated weight, e.g. `3,1,-1`.
        #[arg(long, allow_hyphen_values = true)]
        mu: String,
    },
    /// Critical set and `Emb(ν, μ)` for a pair of weights.
    Critical {
        #[arg(long, allow_hyphen_values = true)]
        mu: String,
        #[arg(long, allow_hyphen_values = true)]
        nu: String,
    },
    /// The interpolation factor `κ̂` and its exponent audit.
    KappaHat {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: u64,
        #[command(flatten)]
        character: CharArgs,
        #[arg(long, allow_hyphen_values = true)]
        nu: i64,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        nu_min: i64,
        /// `κ_λ·κ_λ′` as a rational, e.g. `2` or `3/4`.
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        kappa: String,
    },
    /// Integrate a character against a distribution (from a file or random).
    Integrate {
        /// Distribution JSON file; a random eigen-distribution is used when absent.
        #[arg(long, value_name = "PATH")]
        distribution: Option<PathBuf>,
        /// Prime of the random distribution.
        #[arg(long, default_value_t = 3)]
        p: u64,
        /// Depth of the random distribution.
        #[arg(long, default_value_t = 3)]
        depth: u32,
        /// Eigenvalue of the random distribution.
        #[arg(long, default_value = "2", allow_hyphen_values = true)]
        kappa: String,
        /// Evaluate at this level instead of the character's conductor.
        #[arg(long)]
        at_level: Option<u32>,
        #[command(flatten)]
        character: CharArgs,
    },
}

fn config_from(cli: &Cli) -> Result<SuiteConfig, String> {
    let mut cfg = match &cli.config {
        Some(path) => SuiteConfig::load(path).map_err(|e| e.to_string())?,
        None => SuiteConfig::default(),
    };
    if let Some(seed) = cli.seed {
        cfg.seed = seed;
    }
    if !cli.suites.is_empty() {
        cfg.suites = cli.suites.clone();
    }
    if cli.json_out.is_some() {
        cfg.json_out = cli.json_out.clone();
    }
    if let Some(j) = cli.jobs {
        cfg.jobs = Some(j as usize);
    }
    cfg.validate().map_err(|e| e.to_string())?;
    Ok(cfg)
}

fn emit(lines: &[String], json_out: Option<&PathBuf>) -> io::Result<()> {
    let stdout = io::stdout();
    let mut out = stdout.lock();
    for l in lines {
        writeln!(out, "{l}")?;
    }
    if let Some(path) = json_out {
        let mut f = BufWriter::new(File::create(path)?);
        for l in lines {
            writeln!(f, "{l}")?;
        }
        f.flush()?;
    }
    Ok(())
}

fn compute(cmd: &Command, seed: u64) -> Result<Value, String> {
    match cmd {
        Command::Run => unreachable!("handled by the caller"),
        Command::GaussSum { p, character } => compute::gauss_sum_json(*p, character.level, character.selector()),
        Command::HeckeExpand { n, p, r, op, samples } => compute::hecke_expand_json(*n, *p, *r, op, *samples, seed),
        Command::Satake { n, nu } => compute::satake_json(*n, *nu),
        Command::Branch { mu } => compute::branch_json(mu),
        Command::Critical { mu, nu } => compute::critical_json(mu, nu),
        Command::KappaHat { n, p, character, nu, nu_min, kappa } => compute::kappa_hat_json(&KappaHatArgs {
            n: *n,
            p: *p,
            level: character.level,
            character: character.selector(),
            nu: *nu,
            nu_min: *nu_min,
            kappa: kappa.clone(),
        }),
        Command::Integrate { distribution, p, depth, kappa, at_level, character } => {
            let src = match distribution {
                Some(path) => DistSource::File(path),
                None => DistSource::Random { p: *p, depth: *depth, kappa, seed },
            };
            compute::integrate_json(&src, character.level, character.selector(), *at_level)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = match config_from(&cli) {
        Ok(cfg) => cfg,
        Err(e) => {
            eprintln!("hecke-forge: {e}");
            return ExitCode::from(EXIT_USAGE);
        }
    };
    let command = cli.command.unwrap_or(Command::Run);
    if let Command::Run = command {
        let reports = run_suite(&cfg);
        let summary = Summary::of(&reports);
        let lines: Vec<String> = reports.iter().map(|r| r.to_json_line()).collect();
        if let Err(e) = emit(&lines, cfg.json_out.as_ref()) {
            eprintln!("hecke-forge: {e}");
            return ExitCode::from(EXIT_USAGE);
        }
        eprintln!(
            "hecke-forge: {} pass, {} fail, {} xfail, {} skip (seed {})",
            summary.pass, summary.fail, summary.xfail, summary.skip, cfg.seed
        );
        return if summary.ok() { ExitCode::SUCCESS } else { ExitCode::from(EXIT_FAIL) };
    }
    let value = match par::with_jobs(cfg.jobs, || compute(&command, cfg.seed)) {
        Ok(v) => v,
        Err(e) => {
            eprintln!("hecke-forge: {e}");
            return ExitCode::from(EXIT_USAGE);
        }
    };
    if let Err(e) = emit(&[value.to_string()], cfg.json_out.as_ref()) {
        eprintln!("hecke-forge: {e}");
        return ExitCode::from(EXIT_USAGE);
    }
    if value.get("ok") == Some(&Value::Bool(false)) {
        ExitCode::from(EXIT_FAIL)
    } else {
        ExitCode::SUCCESS
    }
}
