use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use shearer_cli::{run, write_atomic, Command, RunConfig, WeightSource, EXIT_INFRA};
use shearer_core::certify::DEFAULT_TOLERANCE;
use shearer_core::corpus::DEFAULT_SEED;
use shearer_core::{generate, GeneratorSpec, Mode};

#[derive(Parser, Debug)]
#[command(name = "shearer", version, about = "Fractional colouring certificates for triangle-free graphs")]
struct Cli {
    /// Seed for random weights, generators and the corpus.
    #[arg(long, global = true, env = "SHEARER_SEED", default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Render a text table instead of JSON.
    #[arg(long, global = true)]
    pretty: bool,
    /// Write the report here (atomically) instead of stdout.
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,
    /// Pass/fail tolerance in float mode.
    #[arg(long, global = true, default_value_t = DEFAULT_TOLERANCE)]
    tol: f64,
    /// Rational arithmetic throughout.
    #[arg(long, global = true)]
    exact: bool,
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Kind {
    Cycle,
    Path,
    Petersen,
    Kneser,
    /// Mycielskian of the cycle `C_n`.
    Mycielski,
    Tfp,
    /// Random bipartite with edge probability `p` (1 gives `K_{a,b}`).
    Bipartite,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Generate a graph as an edge list.
    Gen {
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        a: Option<usize>,
        #[arg(long)]
        b: Option<usize>,
        #[arg(long, default_value_t = 1.0)]
        p: f64,
    },
    /// Fractional chromatic number with cover and clique certificate.
    Chif { input: PathBuf },
    /// Weighted local-demand certificate.
    Verify {
        input: PathBuf,
        #[arg(long, default_value = "unit")]
        weights: WeightSource,
    },
    /// Spectral radius and the 1/f(ρ) certificate.
    Spectral { input: PathBuf },
    /// Three-way mixture certificate for the edge-count bound.
    Edgebound {
        input: PathBuf,
        #[arg(long)]
        strip_isolated: bool,
    },
    /// One tilt-and-mix step with its identity and inequality checks.
    Dynamics {
        input: PathBuf,
        #[arg(long)]
        eps: f64,
    },
    /// Informational comparison of χ_f with the known upper bounds.
    Bounds { input: PathBuf },
    /// Every certifier over the built-in corpus.
    Corpus {
        #[arg(long)]
        filter: Option<String>,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
}

fn need(v: Option<usize>, flag: &str) -> Result<usize, String> {
    v.ok_or_else(|| format!("--{flag} is required for this kind"))
}

fn gen_spec(kind: Kind, n: Option<usize>, k: Option<usize>, a: Option<usize>, b: Option<usize>, p: f64, seed: u64) -> Result<GeneratorSpec, String> {
    Ok(match kind {
        Kind::Cycle => GeneratorSpec::Cycle(need(n, "n")?),
        Kind::Path => GeneratorSpec::Path(need(n, "n")?),
        Kind::Petersen => GeneratorSpec::Petersen,
        Kind::Kneser => GeneratorSpec::kneser(need(n, "n")?, need(k, "k")?),
        Kind::Mycielski => {
            let base = generate(&GeneratorSpec::Cycle(need(n, "n")?)).map_err(|e| e.to_string())?;
            GeneratorSpec::Mycielski(Box::new(base))
        }
        Kind::Tfp => GeneratorSpec::TriangleFreeProcess { n: need(n, "n")?, seed },
        Kind::Bipartite => {
            let (a, b) = (need(a, "a")?, need(b, "b")?);
            if p >= 1.0 {
                GeneratorSpec::CompleteBipartite(a, b)
            } else {
                GeneratorSpec::RandomBipartite { a, b, p, seed }
            }
        }
    })
}

fn config(cli: Cli) -> Result<RunConfig, String> {
    let command = match cli.command {
        Cmd::Gen { kind, n, k, a, b, p } => Command::Gen {
            spec: gen_spec(kind, n, k, a, b, p, cli.seed)?,
        },
        Cmd::Chif { input } => Command::Chif { input },
        Cmd::Verify { input, weights } => Command::Verify { input, weights },
        Cmd::Spectral { input } => Command::Spectral { input },
        Cmd::Edgebound {
            input,
            strip_isolated,
        } => Command::EdgeBound {
            input,
            strip_isolated,
        },
        Cmd::Dynamics { input, eps } => Command::Dynamics { input, eps },
        Cmd::Bounds { input } => Command::Bounds { input },
        Cmd::Corpus { filter, jobs } => Command::Corpus {
            filter,
            jobs: jobs.max(1),
        },
    };
    Ok(RunConfig {
        command,
        mode: if cli.exact {
            Mode::Exact
        } else {
            Mode::Float { tol: cli.tol }
        },
        seed: cli.seed,
        output: cli.output,
        pretty: cli.pretty,
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = match config(cli) {
        Ok(c) => c,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(EXIT_INFRA);
        }
    };
    let outcome = run(&cfg);
    let written = match &cfg.output {
        Some(path) => write_atomic(path, outcome.body.as_bytes()).map_err(|e| e.to_string()),
        None => std::io::stdout()
            .write_all(outcome.body.as_bytes())
            .map_err(|e| e.to_string()),
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return ExitCode::from(EXIT_INFRA);
    }
    ExitCode::from(outcome.code)
}
