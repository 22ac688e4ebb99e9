use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use hamsieve::engine::draw_sample;
use hamsieve::fingerprint::derive_params;
use hamsieve::oracle::{evaluate_p_fullsum, is_hamiltonian_bruteforce};
use hamsieve::{
    decide_hamiltonicity, generate_random_digraph, DetectionReport, DirectedGraph, EngineConfig,
    EngineError, ParamOverrides,
};
use num_traits::ToPrimitive;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Mode {
    /// Run the randomized detector.
    Detect,
    /// Evaluate the unsieved sum at one sample point.
    Fullsum,
    /// Exact subset dynamic programming.
    Oracle,
    /// Random instances, one CSV row each.
    Bench,
}

/// Monte Carlo Hamiltonicity detection for sparse digraphs.
#[derive(Debug, Parser)]
#[command(name = "hamsieve", version)]
struct Cli {
    #[arg(long, value_enum, default_value_t = Mode::Detect)]
    mode: Mode,
    /// Edge-list file; `-` reads standard input.
    #[arg(long)]
    input: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    tau: Option<usize>,
    #[arg(long)]
    k: Option<u32>,
    #[arg(long)]
    ell: Option<u64>,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    reps: Option<usize>,
    #[arg(long)]
    abort_factor: Option<u64>,
    /// Vertex split into source and sink.
    #[arg(long, default_value_t = 0)]
    split_vertex: usize,
    /// Evaluation threads (0 = one per core).
    #[arg(long, default_value_t = 1)]
    workers: usize,
    /// Graphs up to this size are decided exactly.
    #[arg(long, default_value_t = hamsieve::engine::DEFAULT_ORACLE_THRESHOLD)]
    oracle_threshold: usize,
    /// Bench: vertex count.
    #[arg(long)]
    n: Option<usize>,
    /// Bench: average outdegree.
    #[arg(long, default_value_t = 2.0)]
    delta: f64,
    #[arg(long, default_value_t = 1)]
    trials: usize,
    #[arg(long)]
    ensure_hamiltonian: bool,
}

enum Failure {
    Usage(String),
    Input(String),
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<EngineError> for Failure {
    fn from(e: EngineError) -> Self {
        match e {
            EngineError::Params(_) => Failure::Usage(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

impl Cli {
    fn overrides(&self) -> ParamOverrides {
        ParamOverrides {
            tau: self.tau,
            k: self.k,
            ell: self.ell,
            m: self.m,
            reps: self.reps,
            abort_factor: self.abort_factor,
        }
    }

    fn config(&self, seed: u64) -> EngineConfig {
        EngineConfig {
            overrides: self.overrides(),
            master_seed: seed,
            workers: self.workers,
            split_vertex: self.split_vertex,
            oracle_threshold: self.oracle_threshold,
        }
    }

    fn read_graph(&self) -> Result<DirectedGraph, Failure> {
        let path = self.input.as_ref().ok_or_else(|| {
            Failure::Usage(format!("--input is required in {:?} mode", self.mode))
        })?;
        let text = if path.as_os_str() == "-" {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s)?;
            s
        } else {
            fs::read_to_string(path)
                .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?
        };
        DirectedGraph::parse(&text).map_err(|e| Failure::Input(e.to_string()))
    }
}

fn print_report(out: &mut impl Write, r: &DetectionReport) -> io::Result<()> {
    writeln!(out, "{}", r.verdict)?;
    writeln!(out, "route: {}", r.route)?;
    if let Some(p) = &r.params {
        writeln!(
            out,
            "params: tau={} k={} ell={} m={} reps={} abort_factor={}",
            p.tau, p.k, p.ell, p.m, p.reps, p.abort_factor
        )?;
    }
    writeln!(out, "repetitions: {}", r.repetitions_run)?;
    for (i, s) in r.per_rep.iter().enumerate() {
        writeln!(
            out,
            "rep {i}: terms={} expected={:.3} threshold={} aborted={} nonzero={}",
            s.terms_streamed,
            s.expected_terms.to_f64().unwrap_or(f64::INFINITY),
            s.threshold,
            s.aborted,
            s.nonzero
        )?;
    }
    Ok(())
}

fn detect(cli: &Cli) -> Result<(), Failure> {
    let g = cli.read_graph()?;
    let report = decide_hamiltonicity(&g, &cli.config(cli.seed))?;
    print_report(&mut io::stdout().lock(), &report)?;
    log::info!("wall time {:?}", report.wall_time);
    Ok(())
}

fn fullsum(cli: &Cli) -> Result<(), Failure> {
    let g = cli.read_graph()?;
    let sg = g
        .split_vertex(cli.split_vertex)
        .map_err(|e| Failure::Input(e.to_string()))?;
    let p = derive_params(&sg, &cli.overrides()).map_err(|e| Failure::Usage(e.to_string()))?;
    let (sp, q) = draw_sample(&sg, &p, cli.seed, 0);
    let value = evaluate_p_fullsum(&sg, &sp, &q, p.ring_params())
        .map_err(|e| Failure::Input(e.to_string()))?;
    let mut out = io::stdout().lock();
    writeln!(out, "{}", if value.is_zero() { "ZERO" } else { "NONZERO" })?;
    writeln!(out, "T: {:?}", sp.t_set())?;
    writeln!(out, "value: {value}")?;
    Ok(())
}

fn oracle(cli: &Cli) -> Result<(), Failure> {
    let g = cli.read_graph()?;
    let yes = is_hamiltonian_bruteforce(&g).map_err(|e| Failure::Input(e.to_string()))?;
    println!("{}", if yes { "YES" } else { "NO" });
    Ok(())
}

fn bench(cli: &Cli) -> Result<(), Failure> {
    let n = cli
        .n
        .ok_or_else(|| Failure::Usage("--n is required in bench mode".into()))?;
    let mut csv = csv::Writer::from_writer(io::stdout().lock());
    let header = [
        "n",
        "delta",
        "tau",
        "k",
        "terms_streamed",
        "expected_terms",
        "wall_ms",
        "verdict",
        "reps_run",
        "aborted",
    ];
    csv.write_record(header)
        .map_err(|e| Failure::Input(e.to_string()))?;
    for trial in 0..cli.trials as u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
        rng.set_stream(trial);
        let g = generate_random_digraph(n, cli.delta, cli.ensure_hamiltonian, &mut rng)
            .map_err(|e| Failure::Usage(e.to_string()))?;
        let r = decide_hamiltonicity(&g, &cli.config(cli.seed.wrapping_add(trial)))?;
        let last = r.per_rep.last();
        let opt = |v: Option<String>| v.unwrap_or_default();
        let row = [
            n.to_string(),
            cli.delta.to_string(),
            opt(r.params.map(|p| p.tau.to_string())),
            opt(r.params.map(|p| p.k.to_string())),
            opt(last.map(|s| s.terms_streamed.to_string())),
            opt(last.map(|s| format!("{:.3}", s.expected_terms.to_f64().unwrap_or(f64::INFINITY)))),
            r.wall_time.as_millis().to_string(),
            r.verdict.to_string(),
            r.repetitions_run.to_string(),
            opt(last.map(|s| s.aborted.to_string())),
        ];
        csv.write_record(&row)
            .map_err(|e| Failure::Input(e.to_string()))?;
        csv.flush()?;
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match cli.mode {
        Mode::Detect => detect(&cli),
        Mode::Fullsum => fullsum(&cli),
        Mode::Oracle => oracle(&cli),
        Mode::Bench => bench(&cli),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
