//! Run configuration and dispatch for the `shearer` binary.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use rayon::prelude::*;
use serde_json::{json, Value};
use shearer_core::certify::{
    bound_report, dcore_reduction_check, edge_bound_mixture, verify_local_shearer,
    verify_spectral_bound, verify_weighted_theorem, Certificate,
};
use shearer_core::corpus::{self, CorpusEntry};
use shearer_core::dynamics::{
    jensen_check, lower_bound_chain, mix_process, optimal_mixing_inputs, ODE_TOL,
};
use shearer_core::graph::io::{read_graph_file, to_edge_list};
use shearer_core::spectral::{perron_weights, spectral_radius};
use shearer_core::{
    chi_fractional, generate, Error, GeneratorSpec, Graph, Mode, Rational, SolveConfig, WeightFn,
};

pub mod pretty;

pub const EXIT_PASS: u8 = 0;
pub const EXIT_INFRA: u8 = 1;
pub const EXIT_HYPOTHESIS: u8 = 2;
pub const EXIT_CERTIFICATE: u8 = 3;

#[derive(Clone, Debug, PartialEq)]
pub enum WeightSource {
    Unit,
    Degree,
    Perron,
    File(PathBuf),
    Random(u64),
}

impl FromStr for WeightSource {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "unit" => Ok(WeightSource::Unit),
            "degree" => Ok(WeightSource::Degree),
            "perron" => Ok(WeightSource::Perron),
            _ => {
                if let Some(p) = s.strip_prefix("file:") {
                    Ok(WeightSource::File(PathBuf::from(p)))
                } else if let Some(seed) = s.strip_prefix("random:") {
                    seed.parse()
                        .map(WeightSource::Random)
                        .map_err(|e| format!("bad seed in {s:?}: {e}"))
                } else {
                    Err(format!(
                        "unknown weight source {s:?} (unit, degree, perron, file:PATH, random:SEED)"
                    ))
                }
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Command {
    Gen { spec: GeneratorSpec },
    Chif { input: PathBuf },
    Verify { input: PathBuf, weights: WeightSource },
    Spectral { input: PathBuf },
    EdgeBound { input: PathBuf, strip_isolated: bool },
    Dynamics { input: PathBuf, eps: f64 },
    Bounds { input: PathBuf },
    Corpus { filter: Option<String>, jobs: usize },
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub mode: Mode,
    pub seed: u64,
    pub output: Option<PathBuf>,
    pub pretty: bool,
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), Error> {
        if let Mode::Float { tol } = self.mode {
            if !(tol > 0.0 && tol.is_finite()) {
                return Err(Error::InvalidInput(format!("tolerance must be positive, got {tol}")));
            }
        }
        Ok(())
    }
}

/// Exit code plus the bytes to emit.
#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub code: u8,
    pub body: String,
}

pub fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::NotTriangleFree(_) | Error::Disconnected(_) | Error::IsolatedVertex(_) => {
            EXIT_HYPOTHESIS
        }
        _ => EXIT_INFRA,
    }
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::NotTriangleFree(_) => "not_triangle_free",
        Error::Disconnected(_) => "disconnected",
        Error::IsolatedVertex(_) => "isolated_vertex",
        Error::Parse { .. } => "parse",
        Error::Io(_) => "io",
        _ => "error",
    }
}

pub fn error_json(e: &Error) -> Value {
    json!({ "error": error_kind(e), "message": e.to_string() })
}

/// One-value-per-vertex weights, whitespace separated, `#` comments.
pub fn read_weights(path: &Path, n: usize) -> Result<WeightFn<f64>, Error> {
    let text = fs::read_to_string(path)?;
    let mut values = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let data = line.split('#').next().unwrap_or("");
        for tok in data.split_whitespace() {
            let x: f64 = tok.parse().map_err(|_| Error::Parse {
                line: i + 1,
                reason: format!("not a number: {tok:?}"),
            })?;
            values.push(x);
        }
    }
    if values.len() != n {
        return Err(Error::InvalidInput(format!(
            "weights file lists {} values for {n} vertices",
            values.len()
        )));
    }
    WeightFn::new(values)
}

pub fn resolve_weights(src: &WeightSource, g: &Graph) -> Result<WeightFn<f64>, Error> {
    match src {
        WeightSource::Unit => Ok(WeightFn::unit(g.n())),
        WeightSource::Degree => WeightFn::degree(g),
        WeightSource::Perron => WeightFn::new(perron_weights(g)?),
        WeightSource::File(p) => read_weights(p, g.n()),
        WeightSource::Random(seed) => Ok(WeightFn::random_seeded(g.n(), *seed)),
    }
}

fn certificate_outcome(c: &Certificate) -> (u8, Value) {
    let code = if c.pass { EXIT_PASS } else { EXIT_CERTIFICATE };
    (code, c.to_json())
}

fn strip_isolated(g: &Graph) -> Graph {
    let keep: Vec<bool> = (0..g.n()).map(|v| g.degree(v) > 0).collect();
    g.induced(&keep).graph
}

fn run_dynamics(g: &Graph, eps: f64, seed: u64) -> Result<(u8, Value), Error> {
    g.require_triangle_free()?;
    let w = WeightFn::random_seeded(g.n(), seed).normalized();
    let inputs = optimal_mixing_inputs(g, &w, eps, &SolveConfig::default())?;
    let (_, report) = mix_process(g, &w, &eps, &inputs.d_main, &inputs.d_sub)?;
    let chain = lower_bound_chain(g, &w, eps, &inputs)?;
    let jensen: Vec<(f64, f64)> = (0..g.n())
        .map(|v| jensen_check(g, &w, eps, v))
        .collect::<Result<_, _>>()?;
    let pass = report.identity_holds
        && report.claim_holds
        && report.max_ode_cancellation <= ODE_TOL
        && chain.iter().all(|c| c.holds(1e-9))
        && jensen.iter().all(|(l, r)| *l >= r - 1e-12);
    let body = json!({
        "seed": seed,
        "epsilon": eps,
        "weights": w.values(),
        "mix_report": report.to_json(),
        "lower_bound_chain": chain,
        "jensen": jensen.iter().map(|(l, r)| json!({ "lhs": l, "rhs": r })).collect::<Vec<_>>(),
        "pass": pass,
    });
    Ok((if pass { EXIT_PASS } else { EXIT_CERTIFICATE }, body))
}

fn corpus_job(e: &CorpusEntry, mode: Mode, seed: u64) -> (u8, Value) {
    let g = &e.graph;
    let mut code = EXIT_PASS;
    let mut certs = Vec::new();
    let mut record = |r: Result<Certificate, Error>| match r {
        Ok(c) => {
            if !c.pass {
                code = code.max(EXIT_CERTIFICATE);
            }
            certs.push(c.to_json());
        }
        Err(err) => {
            code = code.max(exit_code_for(&err));
            certs.push(error_json(&err));
        }
    };
    record(verify_local_shearer(g, mode));
    record(verify_weighted_theorem(
        g,
        &WeightFn::random_seeded(g.n(), seed),
        mode,
    ));
    record(verify_spectral_bound(g, mode));
    record(edge_bound_mixture(g, mode));
    for d in 2..=4 {
        record(dcore_reduction_check(g, d, mode));
    }
    let body = json!({
        "name": e.name,
        "n": g.n(),
        "m": g.m(),
        "graph_hash": g.hash(),
        "certificates": certs,
        "pass": code == EXIT_PASS,
    });
    (code, body)
}

fn run_corpus(filter: Option<&str>, jobs: usize, mode: Mode, seed: u64) -> Result<(u8, Value), Error> {
    let entries = corpus::filtered(seed, filter)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::InvalidInput(format!("worker pool: {e}")))?;
    let results: Vec<(u8, Value)> =
        pool.install(|| entries.par_iter().map(|e| corpus_job(e, mode, seed)).collect());
    let code = results.iter().map(|r| r.0).max().unwrap_or(EXIT_PASS);
    let graphs: Vec<Value> = results.into_iter().map(|r| r.1).collect();
    Ok((
        code,
        json!({ "seed": seed, "graphs": graphs, "pass": code == EXIT_PASS }),
    ))
}

fn dispatch(cfg: &RunConfig) -> Result<(u8, Value), Error> {
    let mode = cfg.mode;
    match &cfg.command {
        Command::Gen { .. } => unreachable!("gen emits an edge list"),
        Command::Chif { input } => {
            let g = read_graph_file(input)?;
            let sc = SolveConfig::default();
            let body = match mode {
                Mode::Exact => chi_fractional::<Rational>(&g, &sc)?.to_json(),
                Mode::Float { .. } => chi_fractional::<f64>(&g, &sc)?.to_json(),
            };
            Ok((EXIT_PASS, body))
        }
        Command::Verify { input, weights } => {
            let g = read_graph_file(input)?;
            let w = resolve_weights(weights, &g)?;
            Ok(certificate_outcome(&verify_weighted_theorem(&g, &w, mode)?))
        }
        Command::Spectral { input } => {
            let g = read_graph_file(input)?;
            let sp = spectral_radius(&g)?;
            let cert = verify_spectral_bound(&g, mode)?;
            let (code, cert_json) = certificate_outcome(&cert);
            Ok((code, json!({ "spectral": sp, "certificate": cert_json })))
        }
        Command::EdgeBound {
            input,
            strip_isolated: strip,
        } => {
            let mut g = read_graph_file(input)?;
            if *strip {
                g = strip_isolated(&g);
            }
            Ok(certificate_outcome(&edge_bound_mixture(&g, mode)?))
        }
        Command::Dynamics { input, eps } => run_dynamics(&read_graph_file(input)?, *eps, cfg.seed),
        Command::Bounds { input } => {
            let g = read_graph_file(input)?;
            let r = bound_report(&g)?;
            Ok((EXIT_PASS, serde_json::to_value(r).expect("report serialises")))
        }
        Command::Corpus { filter, jobs } => run_corpus(filter.as_deref(), *jobs, mode, cfg.seed),
    }
}

/// Runs one command and renders its report. Never panics on bad input.
pub fn run(cfg: &RunConfig) -> Outcome {
    if let Err(e) = cfg.validate() {
        return render(EXIT_INFRA, error_json(&e), cfg.pretty);
    }
    if let Command::Gen { spec } = &cfg.command {
        return match generate(spec) {
            Ok(g) => Outcome {
                code: EXIT_PASS,
                body: to_edge_list(&g),
            },
            Err(e) => render(exit_code_for(&e), error_json(&e), cfg.pretty),
        };
    }
    match dispatch(cfg) {
        Ok((code, body)) => render(code, body, cfg.pretty),
        Err(e) => render(exit_code_for(&e), error_json(&e), cfg.pretty),
    }
}

fn render(code: u8, body: Value, pretty: bool) -> Outcome {
    let mut text = if pretty {
        pretty::render(&body)
    } else {
        serde_json::to_string_pretty(&body).expect("json renders")
    };
    if !text.ends_with('\n') {
        text.push('\n');
    }
    Outcome { code, body: text }
}

/// Writes through a temporary file in the target directory, then renames.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<(), Error> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(bytes)?;
    tmp.flush()?;
    tmp.persist(path).map_err(|e| Error::Io(e.error.to_string()))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weight_source_parsing() {
        assert_eq!("unit".parse::<WeightSource>().unwrap(), WeightSource::Unit);
        assert_eq!(
            "random:7".parse::<WeightSource>().unwrap(),
            WeightSource::Random(7)
        );
        assert_eq!(
            "file:/tmp/w.txt".parse::<WeightSource>().unwrap(),
            WeightSource::File("/tmp/w.txt".into())
        );
        assert!("random:x".parse::<WeightSource>().is_err());
        assert!("bogus".parse::<WeightSource>().is_err());
    }

    #[test]
    fn exit_codes() {
        assert_eq!(exit_code_for(&Error::NotTriangleFree([0, 1, 2])), EXIT_HYPOTHESIS);
        assert_eq!(exit_code_for(&Error::Io("x".into())), EXIT_INFRA);
    }

    #[test]
    fn nonpositive_tolerance_is_rejected() {
        let cfg = RunConfig {
            command: Command::Corpus {
                filter: None,
                jobs: 1,
            },
            mode: Mode::Float { tol: 0.0 },
            seed: 1,
            output: None,
            pretty: false,
        };
        assert_eq!(run(&cfg).code, EXIT_INFRA);
    }

    #[test]
    fn weights_file_validation() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("w.txt");
        fs::write(&p, "1 2 # two\n3\n").unwrap();
        assert_eq!(read_weights(&p, 3).unwrap().values(), &[1.0, 2.0, 3.0]);
        assert!(read_weights(&p, 4).is_err());
        fs::write(&p, "1 -2 3").unwrap();
        assert!(matches!(read_weights(&p, 3), Err(Error::NonPositiveWeight(1))));
    }
}
