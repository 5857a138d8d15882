//! `taxman`: play, sweep, bound and replay taxman games, or serve the HTTP API.
//!
//! Exit codes: `play` gives 0 on a win, 2 on a tie, 3 on a loss. `replay`
//! gives 3 on an illegal move. Usage, parse and I/O errors give 1.

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use taxman_core::matching_bridge::matching_from_history;
use taxman_core::oracle::DEFAULT_ORACLE_CAP;
use taxman_core::{
    born_free_play, fas_lower_bound, play_standard, pot_total, upper_bound, BornFreeConfig, Error,
    GameRecord, MoveSequence, OracleCache, Outcome, Score,
};

#[derive(Parser)]
#[command(name = "taxman", version, about = "Taxman game solver and score bounds")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Play one game with a strategy and print every move.
    Play {
        n: usize,
        #[arg(long, value_enum, default_value_t = Strategy::BornFree)]
        strategy: Strategy,
        #[arg(long, default_value_t = DEFAULT_ORACLE_CAP)]
        oracle_cap: usize,
    },
    /// Pot fraction won by a strategy for each n, as `N,p(N)` CSV.
    Sweep {
        n_min: usize,
        n_max: usize,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
        step: u64,
        #[arg(long, value_enum, default_value_t = Strategy::BornFree)]
        strategy: Strategy,
        #[arg(long, default_value_t = DEFAULT_ORACLE_CAP)]
        oracle_cap: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Optimum (when solvable) and matching bounds, as `N,opt(N),upper(N),lower(N)` CSV.
    Bounds {
        n_min: usize,
        n_max: usize,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
        step: u64,
        /// Largest n solved exactly; the opt column is blank above it.
        #[arg(long, default_value_t = DEFAULT_ORACLE_CAP)]
        oracle_cap: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a recorded game (JSON `{"n": .., "picks": [..]}`).
    Replay { file: PathBuf },
    /// Start the HTTP API.
    Serve {
        #[arg(long, default_value_t = 8080)]
        port: u16,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Strategy {
    BornFree,
    #[value(name = "born-free-5")]
    BornFree5,
    FasLower,
    Oracle,
}

/// A failure with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Failure {
            code,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::new(1, e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::new(1, e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let result = match cli.command {
        Command::Play {
            n,
            strategy,
            oracle_cap,
        } => play(n, strategy, oracle_cap),
        Command::Sweep {
            n_min,
            n_max,
            step,
            strategy,
            oracle_cap,
            out,
        } => sweep(n_min, n_max, step as usize, strategy, oracle_cap, out.as_deref()),
        Command::Bounds {
            n_min,
            n_max,
            step,
            oracle_cap,
            out,
        } => bounds(n_min, n_max, step as usize, oracle_cap, out.as_deref()),
        Command::Replay { file } => replay(&file),
        Command::Serve { port } => serve(port),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("taxman: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

/// `TAXMAN_ORACLE_CACHE`, else `$HOME/.cache/taxman/oracle.txt`.
fn cache_path() -> Option<PathBuf> {
    match std::env::var_os("TAXMAN_ORACLE_CACHE") {
        Some(p) if !p.is_empty() => Some(PathBuf::from(p)),
        _ => std::env::var_os("HOME").map(|h| PathBuf::from(h).join(".cache/taxman/oracle.txt")),
    }
}

/// Oracle results backed by the cache file. A cache that cannot be read
/// is ignored with a warning.
struct Oracle {
    cache: OracleCache,
    path: Option<PathBuf>,
    dirty: bool,
}

impl Oracle {
    fn open() -> Self {
        let path = cache_path();
        let cache = match path.as_deref().map(OracleCache::load) {
            Some(Ok(c)) => c,
            Some(Err(e)) => {
                eprintln!("taxman: ignoring oracle cache: {e}");
                OracleCache::new()
            }
            None => OracleCache::new(),
        };
        Oracle {
            cache,
            path,
            dirty: false,
        }
    }

    /// No cache file; for strategies that never consult the oracle.
    fn disabled() -> Self {
        Oracle {
            cache: OracleCache::new(),
            path: None,
            dirty: false,
        }
    }

    fn solve(&mut self, n: usize, cap: usize) -> Result<(Score, MoveSequence), Failure> {
        if n > cap {
            return Err(Error::OracleInfeasible { size: n, cap }.into());
        }
        let before = self.cache.get(n).map(|(s, p)| (s, p.to_vec()));
        let (score, seq) = self.cache.optimal_score(n, cap)?;
        self.dirty |= before != Some((score, seq.picks()));
        Ok((score, seq))
    }

    fn save(&self) {
        if let (true, Some(path)) = (self.dirty, &self.path) {
            if let Err(e) = self.cache.save(path) {
                eprintln!("taxman: could not write oracle cache {}: {e}", path.display());
            }
        }
    }
}

fn strategy_picks(n: usize, strategy: Strategy, oracle: &mut Oracle, cap: usize) -> Result<Vec<usize>, Failure> {
    Ok(match strategy {
        Strategy::BornFree => born_free_play(&BornFreeConfig::new(n))?.picks(),
        Strategy::BornFree5 => born_free_play(&BornFreeConfig::with_p_max(n, 5)?)?.picks(),
        Strategy::FasLower => fas_lower_bound(n)?.1.picks(),
        Strategy::Oracle => oracle.solve(n, cap)?.1.picks(),
    })
}

fn play(n: usize, strategy: Strategy, cap: usize) -> Result<u8, Failure> {
    if n == 0 {
        return Err(Error::EmptyPot.into());
    }
    let mut oracle = Oracle::open();
    let picks = strategy_picks(n, strategy, &mut oracle, cap)?;
    oracle.save();
    let state = play_standard(n, &picks)?;
    let mut out = String::new();
    for (i, mv) in state.history().moves.iter().enumerate() {
        let _ = writeln!(out, "{:>4}. pick {:>6}  tax {}", i + 1, mv.pick, list(&mv.taxed));
    }
    if state.history().is_empty() {
        out.push_str("no moves\n");
    }
    if !state.swept().is_empty() {
        let _ = writeln!(out, "left to the taxman: {}", list(state.swept()));
    }
    let outcome = state.outcome();
    let _ = writeln!(
        out,
        "player {}, taxman {}: {outcome}",
        state.player_score(),
        state.taxman_score()
    );
    print!("{out}");
    Ok(match outcome {
        Outcome::Win => 0,
        Outcome::Tie => 2,
        Outcome::Loss => 3,
    })
}

fn list(xs: &[usize]) -> String {
    let parts: Vec<String> = xs.iter().map(|x| x.to_string()).collect();
    parts.join(",")
}

fn range(n_min: usize, n_max: usize, step: usize) -> Result<Vec<usize>, Failure> {
    if n_min == 0 {
        return Err(Failure::new(1, "n_min must be at least 1"));
    }
    Ok((n_min..=n_max).step_by(step).collect())
}

fn emit(csv: &str, out: Option<&Path>) -> Result<(), Failure> {
    match out {
        Some(path) => std::fs::write(path, csv)?,
        None => std::io::stdout().lock().write_all(csv.as_bytes())?,
    }
    Ok(())
}

fn sweep(
    n_min: usize,
    n_max: usize,
    step: usize,
    strategy: Strategy,
    cap: usize,
    out: Option<&Path>,
) -> Result<u8, Failure> {
    let ns = range(n_min, n_max, step)?;
    let scores: Vec<Score> = if strategy == Strategy::Oracle {
        let mut oracle = Oracle::open();
        let scores = ns
            .iter()
            .map(|&n| oracle.solve(n, cap).map(|r| r.0))
            .collect::<Result<_, _>>();
        oracle.save();
        scores?
    } else {
        ns.par_iter()
            .map(|&n| {
                let picks = strategy_picks(n, strategy, &mut Oracle::disabled(), cap)?;
                Ok(play_standard(n, &picks)?.player_score())
            })
            .collect::<Result<_, Failure>>()?
    };
    let mut csv = String::from("N,p(N)\n");
    for (n, score) in ns.iter().zip(scores) {
        let _ = writeln!(csv, "{n},{:.8}", score as f64 / pot_total(*n) as f64);
    }
    emit(&csv, out)?;
    Ok(0)
}

fn bounds(n_min: usize, n_max: usize, step: usize, cap: usize, out: Option<&Path>) -> Result<u8, Failure> {
    let ns = range(n_min, n_max, step)?;
    let mut oracle = Oracle::open();
    let opts = ns
        .iter()
        .map(|&n| if n <= cap { oracle.solve(n, cap).map(|r| Some(r.0)) } else { Ok(None) })
        .collect::<Result<Vec<_>, _>>();
    oracle.save();
    let opts = opts?;
    let bounds: Vec<(Score, Score)> = ns
        .par_iter()
        .map(|&n| Ok((upper_bound(n)?, fas_lower_bound(n)?.0)))
        .collect::<Result<_, Failure>>()?;
    let mut csv = String::from("N,opt(N),upper(N),lower(N)\n");
    for ((n, opt), (upper, lower)) in ns.iter().zip(opts).zip(bounds) {
        let opt = opt.map(|o| o.to_string()).unwrap_or_default();
        let _ = writeln!(csv, "{n},{opt},{upper},{lower}");
    }
    emit(&csv, out)?;
    Ok(0)
}

fn replay(file: &Path) -> Result<u8, Failure> {
    let text = std::fs::read_to_string(file)
        .map_err(|e| Failure::new(1, format!("cannot read {}: {e}", file.display())))?;
    let record: GameRecord = serde_json::from_str(&text)
        .map_err(|e| Failure::new(1, format!("cannot parse {}: {e}", file.display())))?;
    let state = match record.replay() {
        Ok(state) => state,
        Err(Error::IllegalPick { index, value, reason }) => {
            return Err(Failure::new(
                3,
                format!("illegal move at index {index}: pick {value} ({reason})"),
            ))
        }
        Err(e) => return Err(e.into()),
    };
    let matching = matching_from_history(state.arena(), state.history());
    let pairs: Vec<String> = matching
        .pairs()
        .iter()
        .map(|e| format!("{}-{}", e.lower, e.upper))
        .collect();
    println!("legal: {} moves on n = {}", state.history().len(), record.n);
    println!(
        "player {}, taxman {}: {}",
        state.player_score(),
        state.taxman_score(),
        state.outcome()
    );
    println!("matching: {}", pairs.join(" "));
    for (label, recorded, actual) in [
        ("player", record.player_score, state.player_score()),
        ("taxman", record.taxman_score, state.taxman_score()),
    ] {
        if let Some(r) = recorded.filter(|&r| r != actual) {
            println!("note: recorded {label} score {r} differs from the replayed {actual}");
        }
    }
    Ok(0)
}

fn serve(port: u16) -> Result<u8, Failure> {
    let runtime = tokio::runtime::Runtime::new()?;
    runtime.block_on(async {
        let listener = tokio::net::TcpListener::bind(("127.0.0.1", port)).await?;
        eprintln!("taxman: listening on http://{}", listener.local_addr()?);
        taxman_service::serve(listener, taxman_service::ServiceConfig::default()).await
    })?;
    Ok(0)
}
