use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use clap::{Args, Parser, Subcommand};

use mrd_storage::bounds::{self, BoundParams};
use mrd_storage::concat::{Scheme, SchemeDescriptor};
use mrd_storage::payload::NodeFile;
use mrd_storage::scenario::{Report, ScenarioConfig};
use mrd_storage::Error;

/// Exit code for payloads that cannot be decoded from the given nodes.
const EXIT_DECODE: u8 = 2;

#[derive(Parser)]
#[command(name = "mrd-storage", version, about = "Rank-metric concatenated storage codes")]
struct Cli {
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate every bound whose parameters are given.
    Bounds(BoundsArgs),
    /// Encode a byte payload into node blocks.
    Encode {
        /// scheme descriptor (JSON)
        #[arg(long)]
        config: PathBuf,
        /// payload file, `-` for standard input
        #[arg(long, default_value = "-")]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decode a node file back to the payload.
    Decode {
        /// node file written by `encode`
        #[arg(long, default_value = "-")]
        input: PathBuf,
        /// 1-based nodes to use, comma separated (default: all present)
        #[arg(long, value_delimiter = ',')]
        nodes: Option<Vec<usize>>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run scenario scripts and write their reports.
    Run {
        #[arg(long, required = true)]
        config: Vec<PathBuf>,
        /// overrides the seed of every config
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
}

#[derive(Args)]
struct BoundsArgs {
    /// parameters as JSON; flags override its fields
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    d: Option<usize>,
    #[arg(long)]
    alpha: Option<usize>,
    #[arg(long)]
    beta: Option<usize>,
    #[arg(long)]
    r: Option<usize>,
    #[arg(long)]
    delta: Option<usize>,
    #[arg(long)]
    t: Option<usize>,
    #[arg(long)]
    file_size: Option<usize>,
    #[arg(long)]
    d_min: Option<usize>,
}

enum Failure {
    Io(String),
    Decode(String),
    Unmet,
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e.to_string())
    }
}

fn read_input(path: &Path) -> Result<Vec<u8>, Failure> {
    if path == Path::new("-") {
        let mut buf = Vec::new();
        io::stdin().read_to_end(&mut buf)?;
        Ok(buf)
    } else {
        fs::read(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
    }
}

fn write_output(path: Option<&Path>, data: &[u8]) -> Result<(), Failure> {
    match path {
        Some(p) => fs::write(p, data).map_err(|e| Failure::Io(format!("{}: {e}", p.display()))),
        None => {
            let mut out = io::stdout().lock();
            out.write_all(data)?;
            out.flush()?;
            Ok(())
        }
    }
}

fn parse_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    let raw = read_input(path)?;
    serde_json::from_slice(&raw).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn to_json<T: serde::Serialize>(v: &T) -> Vec<u8> {
    let mut s = serde_json::to_vec_pretty(v).expect("serializable");
    s.push(b'\n');
    s
}

fn bounds_cmd(a: BoundsArgs) -> Result<(), Failure> {
    let mut p: BoundParams = match &a.config {
        Some(path) => parse_json(path)?,
        None => BoundParams::default(),
    };
    let set = |slot: &mut Option<usize>, v: Option<usize>| {
        if v.is_some() {
            *slot = v;
        }
    };
    set(&mut p.n, a.n);
    set(&mut p.k, a.k);
    set(&mut p.d, a.d);
    set(&mut p.alpha, a.alpha);
    set(&mut p.beta, a.beta);
    set(&mut p.r, a.r);
    set(&mut p.delta, a.delta);
    set(&mut p.t, a.t);
    set(&mut p.file_size, a.file_size);
    set(&mut p.d_min, a.d_min);
    let report = bounds::evaluate_all(&p);
    write_output(a.out.as_deref(), &to_json(&report))?;
    if report.bounds.is_empty() {
        return Err(Failure::Unmet);
    }
    Ok(())
}

fn is_decode_error(e: &Error) -> bool {
    matches!(
        e,
        Error::DecodeFailure | Error::InsufficientNodes { .. } | Error::TooManyErasures { .. }
    )
}

fn encode_cmd(config: &Path, input: &Path, out: Option<&Path>) -> Result<(), Failure> {
    let desc: SchemeDescriptor = parse_json(config)?;
    let scheme = Scheme::from_descriptor(&desc).map_err(|e| Failure::Io(e.to_string()))?;
    let payload = read_input(input)?;
    let nodes = NodeFile::encode(&scheme, &payload).map_err(|e| Failure::Io(e.to_string()))?;
    write_output(out, &to_json(&nodes))
}

fn decode_cmd(input: &Path, nodes: Option<Vec<usize>>, out: Option<&Path>) -> Result<(), Failure> {
    let mut file: NodeFile = parse_json(input)?;
    if let Some(keep) = nodes {
        if keep.iter().any(|&j| j == 0 || j > file.nodes.len()) {
            return Err(Failure::Io(format!("node indices must lie in 1..={}", file.nodes.len())));
        }
        let keep: Vec<usize> = keep.into_iter().map(|j| j - 1).collect();
        file.retain(&keep);
    }
    match file.decode() {
        Ok(bytes) => write_output(out, &bytes),
        Err(e) if is_decode_error(&e) => Err(Failure::Decode(e.to_string())),
        Err(e) => Err(Failure::Io(e.to_string())),
    }
}

fn run_cmd(configs: &[PathBuf], seed: Option<u64>, out: Option<&Path>, jobs: usize) -> Result<(), Failure> {
    let mut parsed = Vec::with_capacity(configs.len());
    for path in configs {
        let raw = read_input(path)?;
        let text = String::from_utf8(raw).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
        let mut cfg =
            ScenarioConfig::from_json(&text).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
        if let Some(s) = seed {
            cfg.seed = s;
        }
        parsed.push(cfg);
    }
    let results: Vec<Mutex<Option<Result<Report, Error>>>> = parsed.iter().map(|_| Mutex::new(None)).collect();
    let next = AtomicUsize::new(0);
    std::thread::scope(|s| {
        for _ in 0..jobs.clamp(1, parsed.len().max(1)) {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some(cfg) = parsed.get(i) else { break };
                *results[i].lock().unwrap() = Some(cfg.run());
            });
        }
    });
    let mut reports = Vec::with_capacity(parsed.len());
    for (path, r) in configs.iter().zip(results) {
        match r.into_inner().unwrap().expect("every config ran") {
            Ok(rep) => reports.push(rep),
            Err(e) => return Err(Failure::Io(format!("{}: {e}", path.display()))),
        }
    }
    for (path, rep) in configs.iter().zip(&reports) {
        for c in rep.checks.iter().filter(|c| !c.met) {
            eprintln!("{}: {} not met: {}", path.display(), c.name, c.detail);
        }
    }
    let data = if reports.len() == 1 {
        to_json(&reports[0])
    } else {
        to_json(&reports)
    };
    write_output(out, &data)?;
    if reports.iter().all(|r| r.success) {
        Ok(())
    } else {
        Err(Failure::Unmet)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.cmd {
        Command::Bounds(a) => bounds_cmd(a),
        Command::Encode { config, input, out } => encode_cmd(&config, &input, out.as_deref()),
        Command::Decode { input, nodes, out } => decode_cmd(&input, nodes, out.as_deref()),
        Command::Run {
            config,
            seed,
            out,
            jobs,
        } => run_cmd(&config, seed, out.as_deref(), jobs),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::FAILURE
        }
        Err(Failure::Decode(msg)) => {
            eprintln!("decode failed: {msg}");
            ExitCode::from(EXIT_DECODE)
        }
        Err(Failure::Unmet) => ExitCode::FAILURE,
    }
}
