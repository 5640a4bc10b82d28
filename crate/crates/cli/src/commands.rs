use crate::output::{float, Output};
use qbgames::bell::format::{emit_functional, parse_functional};
use qbgames::bell::BUILTIN_FUNCTIONALS;
use qbgames::game::format::{emit_game, parse_game};
use qbgames::game::{ProfileRow, BUILTIN_GAMES};
use qbgames::optimizer::{best_response_gap, seesaw, SeesawConfig};
use qbgames::par::Execution;
use qbgames::quantum::format::{emit_strategy, parse_strategy};
use qbgames::quantum::{builtin_strategy, BUILTIN_STRATEGIES};
use qbgames::{BellFunctional, Error, ExactBehavior, GameSpec, Player, PureProfile, QuantumStrategy, Rational, ENUMERATION_CAP};
use std::fmt;
use std::path::Path;

/// Slack used when deciding whether a float value violates a rational bound.
pub const VIOLATION_TOL: f64 = 1e-9;

#[derive(Debug)]
pub enum CliError {
    Core(Error),
    Io(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Io(m) => write!(f, "{m}"),
        }
    }
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(Error::Capacity(_)) => 2,
            CliError::Core(Error::Integrity(_)) => 3,
            _ => 1,
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

/// A loaded input plus its canonical text, which feeds the report digest.
pub struct Loaded<T> {
    pub value: T,
    pub canonical: String,
}

fn read(path: &str) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("cannot read '{path}': {e}")))
}

fn with_file<T>(path: &str, parse: impl Fn(&str) -> qbgames::Result<T>) -> CliResult<T> {
    parse(&read(path)?).map_err(|e| match e {
        Error::Parse { line, message } => CliError::Io(format!("{path}:{line}: {message}")),
        other => CliError::Core(other),
    })
}

pub fn load_game(r: &str) -> CliResult<Loaded<GameSpec>> {
    let value = if BUILTIN_GAMES.contains(&r) || !Path::new(r).exists() {
        GameSpec::builtin(r)?
    } else {
        with_file(r, parse_game)?
    };
    Ok(Loaded { canonical: emit_game(&value), value })
}

pub fn load_functional(r: &str) -> CliResult<Loaded<BellFunctional>> {
    let value = if BUILTIN_FUNCTIONALS.contains(&r) || !Path::new(r).exists() {
        BellFunctional::builtin(r)?
    } else {
        with_file(r, parse_functional)?
    };
    Ok(Loaded { canonical: emit_functional(&value), value })
}

pub fn load_strategy(r: &str) -> CliResult<Loaded<QuantumStrategy>> {
    let value = if BUILTIN_STRATEGIES.contains(&r) || !Path::new(r).exists() {
        builtin_strategy(r)?
    } else {
        with_file(r, parse_strategy)?
    };
    Ok(Loaded { canonical: emit_strategy(&value), value })
}

fn yes_no(b: bool) -> String {
    if b { "YES" } else { "no" }.to_string()
}

fn violated(b: bool) -> String {
    if b { "VIOLATED" } else { "no" }.to_string()
}

fn pair(row: &ProfileRow) -> String {
    format!("{} ({}, {})", row.profile, row.payoffs.pay_a, row.payoffs.pay_b)
}

fn join_rows(rows: &[ProfileRow]) -> String {
    rows.iter().map(pair).collect::<Vec<_>>().join("; ")
}

pub fn table(game: &GameSpec) -> CliResult<Output> {
    let rows = game
        .enumerate_profiles()?
        .into_iter()
        .map(|r| {
            vec![
                r.profile.to_string(),
                r.payoffs.pay_a.to_string(),
                r.payoffs.pay_b.to_string(),
                r.payoffs.total.to_string(),
                yes_no(r.is_equilibrium),
            ]
        })
        .collect();
    let mut out = Output::default();
    out.table(&["profile", "payA", "payB", "total", "equilibrium"], rows);
    Ok(out)
}

pub fn classical(game: &GameSpec) -> CliResult<Output> {
    let (best, argmax) = game.classical_optimum()?;
    let eq = game.find_pure_equilibria()?;
    let conflict = game.conflict_report()?;
    let mut out = Output::default();
    out.fields(vec![
        ("game", game.name().to_string()),
        ("classical_optimum", best.to_string()),
        ("maximizers", argmax.iter().map(PureProfile::to_string).collect::<Vec<_>>().join(" ")),
        ("equilibria", join_rows(&eq)),
        ("conflicting", yes_no(conflict.is_conflicting)),
        ("alice_prefers", join_rows(&conflict.alice_preferred)),
        ("bob_prefers", join_rows(&conflict.bob_preferred)),
    ]);
    Ok(out)
}

pub fn quantum(game: &GameSpec, qs: &QuantumStrategy, gaps: Option<&SeesawConfig>) -> CliResult<Output> {
    let beh = game.behavior_from_quantum(qs)?;
    let pay = game.expected_payoffs(&beh)?;
    let d = game.dims();
    let rows = d
        .tuples()
        .map(|(x, y, a, b)| {
            vec![(x + 1).to_string(), (y + 1).to_string(), a.to_string(), b.to_string(), float(beh.get(x, y, a, b))]
        })
        .collect();
    let mut out = Output::default();
    out.table(&["x", "y", "a", "b", "P"], rows);
    let mut fields = vec![
        ("game", game.name().to_string()),
        ("payA", float(pay.pay_a)),
        ("payB", float(pay.pay_b)),
        ("total", float(pay.total)),
        ("fairness_gap", float((pay.pay_a - pay.pay_b).abs())),
        ("classical_optimum", game.classical_optimum()?.0.to_string()),
    ];
    if let Some(cfg) = gaps {
        fields.push(("alice_best_response_gap", float(best_response_gap(game, qs, Player::Alice, cfg)?)));
        fields.push(("bob_best_response_gap", float(best_response_gap(game, qs, Player::Bob, cfg)?)));
    }
    out.fields(fields);
    let mut frows = Vec::new();
    for name in BUILTIN_FUNCTIONALS {
        let f = BellFunctional::builtin(name)?;
        if f.dims() != d {
            continue;
        }
        let value = f.evaluate(&beh)?;
        let bound = f.classical_bound_bruteforce()?;
        frows.push(vec![
            name.to_string(),
            float(value),
            bound.to_string(),
            violated(value > qbgames::rational::to_f64(&bound) + VIOLATION_TOL),
        ]);
    }
    if !frows.is_empty() {
        out.table(&["functional", "value", "classical_bound", "violated"], frows);
    }
    Ok(out)
}

pub enum Objective {
    Game { game: GameSpec, w_a: Rational, w_b: Rational },
    Bell(BellFunctional),
}

pub fn optimize(objective: &Objective, cfg: &SeesawConfig, emit: Option<&str>) -> CliResult<Output> {
    let f = match objective {
        Objective::Game { game, w_a, w_b } => BellFunctional::from_game(game, *w_a, *w_b),
        Objective::Bell(f) => f.clone(),
    };
    let result = seesaw(&f, cfg)?;
    let mut fields = vec![
        ("objective", f.name().to_string()),
        ("dim", cfg.dim.to_string()),
        ("restarts", cfg.restarts.to_string()),
        ("best_value", float(result.best_value)),
        ("best_restart", result.best_restart.to_string()),
        ("converged", yes_no(result.converged)),
        ("iterations", (result.trace.len() - 1).to_string()),
        ("trace_first", float(result.trace[0])),
        ("trace_last", float(*result.trace.last().expect("non-empty trace"))),
    ];
    match f.deterministic_maximum(ENUMERATION_CAP) {
        Ok((bound, _)) => {
            fields.push(("classical_bound", bound.to_string()));
            fields.push((
                "exceeds_classical",
                yes_no(result.best_value > qbgames::rational::to_f64(&bound) + VIOLATION_TOL),
            ));
        }
        Err(Error::Capacity(_)) => fields.push(("classical_bound", "n/a (capacity)".into())),
        Err(e) => return Err(e.into()),
    }
    if let Objective::Game { game, .. } = objective {
        let pay = game.expected_payoffs(&game.behavior_from_quantum(&result.best_strategy)?)?;
        fields.push(("payA", float(pay.pay_a)));
        fields.push(("payB", float(pay.pay_b)));
        fields.push(("total", float(pay.total)));
    }
    if let Some(path) = emit {
        std::fs::write(path, emit_strategy(&result.best_strategy))
            .map_err(|e| CliError::Io(format!("cannot write '{path}': {e}")))?;
        fields.push(("strategy_written", path.to_string()));
    }
    let mut out = Output::default();
    out.fields(fields);
    let rows = result
        .restart_values
        .iter()
        .enumerate()
        .map(|(r, v)| vec![r.to_string(), float(*v)])
        .collect();
    out.table(&["restart", "value"], rows);
    Ok(out)
}

pub enum BehaviorSource {
    None,
    Profile(String),
    Strategy(QuantumStrategy),
}

pub fn bell(f: &BellFunctional, source: &BehaviorSource) -> CliResult<Output> {
    let bound = f.classical_bound_bruteforce()?;
    let mut fields = vec![("functional", f.name().to_string()), ("classical_bound", bound.to_string())];
    match source {
        BehaviorSource::None => {}
        BehaviorSource::Profile(s) => {
            let p = PureProfile::parse(f.dims(), s)?;
            let value = f.evaluate_exact(&ExactBehavior::deterministic(*f.dims(), &p)?)?;
            fields.push(("source", format!("profile {p}")));
            fields.push(("value", value.to_string()));
            fields.push(("violated", violated(value > bound)));
        }
        BehaviorSource::Strategy(qs) => {
            let value = f.evaluate(&qs.behavior(f.dims())?)?;
            fields.push(("source", "quantum strategy".into()));
            fields.push(("value", float(value)));
            fields.push(("violated", violated(value > qbgames::rational::to_f64(&bound) + VIOLATION_TOL)));
        }
    }
    let mut out = Output::default();
    out.fields(fields);
    Ok(out)
}

pub fn default_seesaw(dim: usize, seed: u64) -> SeesawConfig {
    let mut cfg = SeesawConfig::new(dim);
    cfg.seed = seed;
    cfg.execution = Execution::Parallel;
    cfg
}
