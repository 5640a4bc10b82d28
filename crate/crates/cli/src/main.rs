mod commands;
mod output;

use clap::{Parser, Subcommand, ValueEnum};
use commands::{BehaviorSource, CliError, CliResult, Objective};
use output::{Format, Output};
use qbgames::optimizer::DEFAULT_SEED;
use qbgames::par::with_jobs;
use qbgames::rational::parse_rational;
use qbgames::{Error, Rational};
use sha2::{Digest, Sha256};
use std::io::Write;
use std::process::ExitCode;
use std::time::Instant;

#[derive(Parser, Debug)]
#[command(name = "qbgames", version, about = "Bayesian games, Bell functionals and entangled strategies")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value = "text")]
    format: Format,
    /// Seed for randomized searches.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Worker threads for parallel restarts (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Expected payoffs and equilibrium flags of every deterministic profile.
    Table { game: String },
    /// Classical optimum, pure equilibria and conflict report.
    Classical { game: String },
    /// Evaluate a quantum strategy on a game.
    Quantum {
        game: String,
        /// Use the builtin strategy named after the game.
        #[arg(long, conflicts_with = "strategy")]
        builtin: bool,
        /// Builtin strategy name or strategy file.
        #[arg(long)]
        strategy: Option<String>,
        /// Also estimate each player's best-response gap (uses --seed).
        #[arg(long)]
        gaps: bool,
    },
    /// See-saw maximization of a game's weighted payoff or a Bell functional.
    Optimize {
        /// Builtin game name or game file.
        #[arg(required_unless_present = "bell", conflicts_with = "bell")]
        game: Option<String>,
        /// Builtin functional name or functional file.
        #[arg(long)]
        bell: Option<String>,
        /// Local Hilbert space dimension of each player (2 to 4).
        #[arg(long)]
        dim: usize,
        #[arg(long, default_value_t = 20)]
        restarts: usize,
        /// Iteration cap per restart.
        #[arg(long, default_value_t = 500)]
        max_iters: usize,
        /// Stop a restart once an iteration gains less than this.
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        /// Weight of Alice's payoff (game objectives only).
        #[arg(long, default_value = "1", value_parser = rational_arg)]
        wa: Rational,
        /// Weight of Bob's payoff (game objectives only).
        #[arg(long, default_value = "1", value_parser = rational_arg)]
        wb: Rational,
        /// Write the winning strategy to this path.
        #[arg(long)]
        emit_strategy: Option<String>,
    },
    /// Evaluate a Bell functional and compare with its classical bound.
    Bell {
        functional: String,
        /// Deterministic profile string, e.g. 0011.
        #[arg(long, conflicts_with = "strategy")]
        profile: Option<String>,
        /// Builtin strategy name or strategy file.
        #[arg(long)]
        strategy: Option<String>,
    },
    /// Print the canonical file form of a game, functional or strategy.
    Show { kind: Kind, reference: String },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Kind {
    Game,
    Bell,
    Strategy,
}

fn rational_arg(s: &str) -> Result<Rational, String> {
    parse_rational(s)
}

struct Report {
    command: String,
    digests: Vec<String>,
    seed: Option<u64>,
    numeric: &'static str,
}

fn digest(text: &str) -> String {
    let bytes = Sha256::digest(text.as_bytes());
    bytes.iter().take(8).map(|b| format!("{b:02x}")).collect()
}

fn run(cli: &Cli, report: &mut Report) -> CliResult<Output> {
    const EXACT: &str = "exact rationals (num/den)";
    const FLOATS: &str = "float64 printed to 8 decimals; rationals exact";
    match &cli.command {
        Command::Table { game } => {
            let g = commands::load_game(game)?;
            report.digests.push(digest(&g.canonical));
            report.numeric = EXACT;
            commands::table(&g.value)
        }
        Command::Classical { game } => {
            let g = commands::load_game(game)?;
            report.digests.push(digest(&g.canonical));
            report.numeric = EXACT;
            commands::classical(&g.value)
        }
        Command::Quantum { game, builtin, strategy, gaps } => {
            let g = commands::load_game(game)?;
            let sref = match (builtin, strategy) {
                (_, Some(s)) => s.clone(),
                (true, None) => g.value.name().to_string(),
                (false, None) => {
                    return Err(CliError::Core(Error::Validation("pass --builtin or --strategy <ref>".into())))
                }
            };
            let s = commands::load_strategy(&sref)?;
            report.digests.extend([digest(&g.canonical), digest(&s.canonical)]);
            report.numeric = FLOATS;
            let cfg = gaps.then(|| {
                report.seed = Some(cli.seed);
                commands::default_seesaw(s.value.state.dim_a().max(s.value.state.dim_b()), cli.seed)
            });
            commands::quantum(&g.value, &s.value, cfg.as_ref())
        }
        Command::Optimize { game, bell, dim, restarts, max_iters, tol, wa, wb, emit_strategy } => {
            let objective = match (game, bell) {
                (Some(g), _) => {
                    let g = commands::load_game(g)?;
                    report.digests.push(digest(&g.canonical));
                    Objective::Game { game: g.value, w_a: *wa, w_b: *wb }
                }
                (None, Some(b)) => {
                    let f = commands::load_functional(b)?;
                    report.digests.push(digest(&f.canonical));
                    Objective::Bell(f.value)
                }
                (None, None) => unreachable!("clap requires one objective"),
            };
            let mut cfg = commands::default_seesaw(*dim, cli.seed);
            cfg.restarts = *restarts;
            cfg.max_iters = *max_iters;
            cfg.tol = *tol;
            report.seed = Some(cli.seed);
            report.numeric = FLOATS;
            commands::optimize(&objective, &cfg, emit_strategy.as_deref())
        }
        Command::Bell { functional, profile, strategy } => {
            let f = commands::load_functional(functional)?;
            report.digests.push(digest(&f.canonical));
            let source = match (profile, strategy) {
                (Some(p), _) => BehaviorSource::Profile(p.clone()),
                (None, Some(s)) => {
                    let s = commands::load_strategy(s)?;
                    report.digests.push(digest(&s.canonical));
                    BehaviorSource::Strategy(s.value)
                }
                (None, None) => BehaviorSource::None,
            };
            report.numeric = FLOATS;
            commands::bell(&f.value, &source)
        }
        Command::Show { kind, reference } => {
            let canonical = match kind {
                Kind::Game => commands::load_game(reference)?.canonical,
                Kind::Bell => commands::load_functional(reference)?.canonical,
                Kind::Strategy => commands::load_strategy(reference)?.canonical,
            };
            report.digests.push(digest(&canonical));
            report.numeric = "as stored";
            let mut out = Output::default();
            out.raw(canonical);
            Ok(out)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let started = Instant::now();
    let mut report = Report {
        command: std::env::args().skip(1).collect::<Vec<_>>().join(" "),
        digests: Vec::new(),
        seed: None,
        numeric: "",
    };
    let result = with_jobs(cli.jobs, || run(&cli, &mut report));
    let elapsed = started.elapsed();
    let code = match result {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(out.render(cli.format).as_bytes());
            0
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    };
    eprintln!(
        "# qbgames {} | command: {} | inputs: {} | seed: {} | numbers: {} | elapsed: {:.3} ms",
        env!("CARGO_PKG_VERSION"),
        report.command,
        if report.digests.is_empty() { "-".to_string() } else { report.digests.join(",") },
        report.seed.map_or("-".to_string(), |s| s.to_string()),
        if report.numeric.is_empty() { "-" } else { report.numeric },
        elapsed.as_secs_f64() * 1e3
    );
    ExitCode::from(code)
}
