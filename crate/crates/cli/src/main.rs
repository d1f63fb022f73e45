use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand};
use corner_cli::commands::{self, fail, Family, InstanceSource, Method, Outcome, StyleArg, EXIT_PARSE};
use corner_cli::report::{Format, RunConfig};
use corner_core::io::{parse_anti_blocking, parse_assembly, parse_polytope};
use corner_core::rational::parse_rational;
use corner_core::Rational;

/// Exact mixed volumes of polytopes and sweeps of the Godbersen inequality
/// over locally anti-blocking bodies.
#[derive(Parser)]
#[command(name = "corner-mixvol", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Write the report to FILE instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    #[command(about = "Mixed volume V(K[j], T[n-j]) of two polytopes given as JSON files")]
    Mixvol {
        k: PathBuf,
        t: PathBuf,
        #[arg(long)]
        j: usize,
        #[arg(long, value_enum)]
        method: Option<Method>,
        /// Run every applicable method and exit 4 if any two disagree.
        #[arg(long)]
        cross_check: bool,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    #[command(about = "Sweep V(K[j], -K[n-j]) <= C(n, j) Vol(K) over a family of assemblies")]
    Godbersen {
        #[command(flatten)]
        sweep: SweepArgs,
        #[command(flatten)]
        instance: InstanceArgs,
    },
    /// Step-by-step audit of the inequality chain for one assembly.
    Audit {
        file: PathBuf,
        #[arg(long)]
        j: Option<usize>,
    },
    /// Write one assembly as JSON.
    Gen {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        dim: Option<usize>,
        #[command(flatten)]
        instance: InstanceArgs,
    },
    /// Closed forms for coordinate-aligned simplices; a sweep when --alphas is absent.
    Simplex {
        #[arg(long, value_delimiter = ',', value_parser = rational)]
        alphas: Option<Vec<Rational>>,
        #[arg(long, value_delimiter = ',', value_parser = rational)]
        betas: Option<Vec<Rational>>,
        #[arg(long)]
        j: Option<usize>,
        /// Also evaluate Vol(Delta + lambda S).
        #[arg(long, value_parser = rational)]
        lambda: Option<Rational>,
        #[arg(long)]
        cross_check: bool,
        #[command(flatten)]
        sweep: SweepArgs,
    },
    /// Projection formula for anti-blocking bodies in opposite orthants;
    /// a sweep over random pairs when no files are given.
    Decompose {
        k: Option<PathBuf>,
        k_prime: Option<PathBuf>,
        #[arg(long)]
        j: Option<usize>,
        #[arg(long)]
        cross_check: bool,
        #[command(flatten)]
        sweep: SweepArgs,
    },
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Defaults to the length of `--alphas` when given, else 3.
    #[arg(long)]
    dim: Option<usize>,
    #[arg(long, default_value_t = 10)]
    trials: u64,
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Add a decimal `approx_ratio` column to CSV output.
    #[arg(long)]
    approx: bool,
}

#[derive(Args)]
struct InstanceArgs {
    #[arg(long, value_enum, default_value = "random")]
    family: Family,
    #[arg(long, value_enum, default_value = "mixed")]
    style: StyleArg,
    #[arg(long, value_delimiter = ',', value_parser = rational)]
    alphas: Option<Vec<Rational>>,
    #[arg(long, value_parser = rational)]
    beta: Option<Rational>,
}

const DEFAULT_DIM: usize = 3;

fn rational(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

impl InstanceArgs {
    fn source(self) -> InstanceSource {
        InstanceSource {
            family: self.family,
            style: self.style,
            alphas: self.alphas,
            beta: self.beta,
        }
    }
}

impl SweepArgs {
    fn config(&self, alphas: Option<&Vec<Rational>>, params: std::collections::BTreeMap<String, String>) -> RunConfig {
        RunConfig {
            seed: self.seed,
            dim: self.dim.or(alphas.map(Vec::len)).unwrap_or(DEFAULT_DIM),
            trials: self.trials,
            format: self.format.unwrap_or(Format::Json),
            approx: self.approx,
            params,
        }
    }
}

fn read(path: &Path) -> anyhow::Result<String> {
    std::fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))
        .map_err(|e| fail(EXIT_PARSE, format!("{e:#}")))
}

fn run(cli: Cli) -> anyhow::Result<Outcome> {
    match cli.command {
        Command::Mixvol {
            k,
            t,
            j,
            method,
            cross_check,
            format,
        } => commands::mixvol(&commands::MixvolArgs {
            k: parse_polytope(&read(&k)?)?,
            t: parse_polytope(&read(&t)?)?,
            j,
            method,
            cross_check,
            format,
        }),
        Command::Godbersen { sweep, instance } => {
            let source = instance.source();
            commands::godbersen(&sweep.config(source.alphas.as_ref(), source.params()), &source)
        }
        Command::Audit { file, j } => commands::audit(&parse_assembly(&read(&file)?)?, j),
        Command::Gen { seed, dim, instance } => {
            let source = instance.source();
            let config = SweepArgs {
                seed,
                dim,
                trials: 1,
                format: None,
                approx: false,
            }
            .config(source.alphas.as_ref(), source.params());
            commands::gen(&config, &source)
        }
        Command::Simplex {
            alphas: Some(alphas),
            betas,
            j,
            lambda,
            cross_check,
            sweep,
        } => commands::simplex(&commands::SimplexArgs {
            alphas,
            betas,
            j,
            lambda,
            cross_check,
            format: sweep.format,
        }),
        Command::Simplex { sweep, .. } => commands::simplex_sweep(&sweep.config(None, Default::default())),
        Command::Decompose {
            k: Some(k),
            k_prime: Some(kp),
            j,
            cross_check,
            ..
        } => commands::decompose(
            &parse_anti_blocking(&read(&k)?)?,
            &parse_anti_blocking(&read(&kp)?)?,
            j,
            cross_check,
        ),
        Command::Decompose { k: Some(_), .. } => Err(fail(EXIT_PARSE, "decompose needs two bodies or none")),
        Command::Decompose { sweep, .. } => commands::decompose_sweep(&sweep.config(None, Default::default())),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = cli.out.clone();
    let outcome = run(cli).and_then(|o| {
        match &out {
            Some(path) => std::fs::write(path, &o.output).with_context(|| format!("writing {}", path.display()))?,
            None => print!("{}", o.output),
        }
        Ok(o.code)
    });
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(commands::exit_code(&e))
        }
    }
}
