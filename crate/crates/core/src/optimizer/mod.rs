//! See-saw maximization of Bell functionals over quantum strategies.
//!
//! Each iteration updates every Alice measurement, then every Bob
//! measurement, then replaces the state by the principal eigenvector of the
//! game operator. No step lowers the objective, so the per-restart trace is
//! non-decreasing. Restarts run independently and each draws from its own
//! seeded stream, so results do not depend on scheduling.

pub mod rng;
mod updates;

pub use updates::{game_operator, measurement_update, objective, state_update};

use crate::bell::BellFunctional;
use crate::error::{Error, Result};
use crate::game::GameSpec;
use crate::par::{map_range, Execution};
use crate::quantum::random::{random_basis, random_unit_vector};
use crate::quantum::{ProjectiveMeasurement, QuantumStrategy, StateVector};
use crate::rational::int;
use crate::Player;

/// Seed used when none is given.
pub const DEFAULT_SEED: u64 = 1;
/// Largest local dimension the optimizer accepts (game operator is at most 16x16).
pub const MAX_DIM: usize = 4;

#[derive(Debug, Clone, PartialEq)]
pub struct SeesawConfig {
    pub dim: usize,
    pub restarts: usize,
    pub max_iters: usize,
    /// Stop once one full iteration improves the objective by less than this.
    pub tol: f64,
    pub seed: u64,
    pub execution: Execution,
}

impl SeesawConfig {
    pub fn new(dim: usize) -> Self {
        SeesawConfig {
            dim,
            restarts: 20,
            max_iters: 500,
            tol: 1e-10,
            seed: DEFAULT_SEED,
            execution: Execution::Parallel,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.dim < 2 || self.dim > MAX_DIM {
            return Err(Error::Validation(format!("dimension must be in 2..={MAX_DIM}, got {}", self.dim)));
        }
        if self.restarts == 0 {
            return Err(Error::Validation("at least one restart is required".into()));
        }
        if self.tol.is_nan() || self.tol <= 0.0 {
            return Err(Error::Validation(format!("tolerance must be positive, got {}", self.tol)));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SeesawResult {
    pub best_value: f64,
    pub best_strategy: QuantumStrategy,
    pub best_restart: usize,
    /// Objective after initialization, then after every iteration, for the winning restart.
    pub trace: Vec<f64>,
    pub converged: bool,
    pub restart_values: Vec<f64>,
}

struct RestartOutcome {
    value: f64,
    strategy: QuantumStrategy,
    trace: Vec<f64>,
    converged: bool,
}

/// Maximizes `f` over strategies with local dimension `cfg.dim`.
pub fn seesaw(f: &BellFunctional, cfg: &SeesawConfig) -> Result<SeesawResult> {
    cfg.validate()?;
    let d = f.dims();
    if d.na > cfg.dim || d.nb > cfg.dim {
        return Err(Error::Dimension(format!(
            "local dimension {} cannot host {}x{} outcomes",
            cfg.dim, d.na, d.nb
        )));
    }
    let outcomes = map_range(cfg.restarts, cfg.execution, |r| run_restart(f, cfg, r));
    let outcomes: Vec<RestartOutcome> = outcomes.into_iter().collect::<Result<_>>()?;

    let restart_values: Vec<f64> = outcomes.iter().map(|o| o.value).collect();
    // Strict comparison keeps the lowest index on ties.
    let best_restart = (1..outcomes.len()).fold(0, |best, r| if restart_values[r] > restart_values[best] { r } else { best });
    let winner = outcomes.into_iter().nth(best_restart).expect("restarts >= 1");
    Ok(SeesawResult {
        best_value: winner.value,
        best_strategy: winner.strategy,
        best_restart,
        trace: winner.trace,
        converged: winner.converged,
        restart_values,
    })
}

fn initial_strategy(f: &BellFunctional, cfg: &SeesawConfig, restart: usize) -> Result<QuantumStrategy> {
    let mut rng = rng::stream(cfg.seed, restart as u64);
    let dim = cfg.dim;
    let state = if restart.is_multiple_of(2) {
        StateVector::max_entangled(dim)?
    } else {
        StateVector::normalized(dim, dim, random_unit_vector(dim * dim, &mut rng))?
    };
    let mut meas = |n: usize| -> Result<Vec<ProjectiveMeasurement>> {
        (0..n).map(|_| ProjectiveMeasurement::new(random_basis(dim, &mut rng))).collect()
    };
    let alice = meas(f.dims().nx)?;
    let bob = meas(f.dims().ny)?;
    QuantumStrategy::new(state, alice, bob)
}

fn run_restart(f: &BellFunctional, cfg: &SeesawConfig, restart: usize) -> Result<RestartOutcome> {
    let mut qs = initial_strategy(f, cfg, restart)?;
    let mut value = objective(f, &qs)?;
    let mut trace = vec![value];
    let mut converged = false;
    for _ in 0..cfg.max_iters {
        for x in 0..qs.alice.len() {
            qs.alice[x] = measurement_update(f, &qs, Player::Alice, x)?;
        }
        for y in 0..qs.bob.len() {
            qs.bob[y] = measurement_update(f, &qs, Player::Bob, y)?;
        }
        qs.state = state_update(f, &qs)?;
        let next = objective(f, &qs)?;
        trace.push(next);
        let improvement = next - value;
        value = next;
        if improvement < cfg.tol {
            converged = true;
            break;
        }
    }
    Ok(RestartOutcome { value, strategy: qs, trace, converged })
}

/// How much `player` could gain by changing only their own measurements,
/// with the state and the other player's measurements fixed.
///
/// Restart 0 starts from the current measurements; the others from random
/// bases. The result is `best - current`, never meaningfully negative.
pub fn best_response_gap(game: &GameSpec, qs: &QuantumStrategy, player: Player, cfg: &SeesawConfig) -> Result<f64> {
    let (w_a, w_b) = match player {
        Player::Alice => (int(1), int(0)),
        Player::Bob => (int(0), int(1)),
    };
    let f = BellFunctional::from_game(game, w_a, w_b);
    qs.check_compatible(f.dims())?;
    let current = objective(&f, qs)?;
    let restarts = cfg.restarts.max(1);
    let values = map_range(restarts, cfg.execution, |r| -> Result<f64> {
        let mut trial = qs.clone();
        if r > 0 {
            let mut rng = rng::stream(cfg.seed, r as u64);
            let side = match player {
                Player::Alice => &mut trial.alice,
                Player::Bob => &mut trial.bob,
            };
            for m in side.iter_mut() {
                *m = ProjectiveMeasurement::new(random_basis(m.dim(), &mut rng))?;
            }
        }
        let mut value = objective(&f, &trial)?;
        for _ in 0..cfg.max_iters {
            let n = match player {
                Player::Alice => trial.alice.len(),
                Player::Bob => trial.bob.len(),
            };
            for i in 0..n {
                let m = measurement_update(&f, &trial, player, i)?;
                match player {
                    Player::Alice => trial.alice[i] = m,
                    Player::Bob => trial.bob[i] = m,
                }
            }
            let next = objective(&f, &trial)?;
            let improvement = next - value;
            value = next;
            if improvement < cfg.tol {
                break;
            }
        }
        Ok(value)
    });
    let best = values.into_iter().collect::<Result<Vec<_>>>()?.into_iter().fold(current, f64::max);
    Ok(best - current)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_validation() {
        assert!(SeesawConfig::new(2).validate().is_ok());
        assert!(SeesawConfig::new(1).validate().is_err());
        assert!(SeesawConfig::new(5).validate().is_err());
        let mut c = SeesawConfig::new(2);
        c.restarts = 0;
        assert!(c.validate().is_err());
        c.restarts = 1;
        c.tol = 0.0;
        assert!(c.validate().is_err());
    }

    #[test]
    fn dimension_must_host_outcomes() {
        let f = BellFunctional::builtin("collins3").unwrap();
        assert!(matches!(seesaw(&f, &SeesawConfig::new(2)), Err(Error::Dimension(_))));
    }

    #[test]
    fn chsh_small_run() {
        let f = BellFunctional::builtin("chsh").unwrap();
        let mut cfg = SeesawConfig::new(2);
        cfg.restarts = 4;
        let r = seesaw(&f, &cfg).unwrap();
        assert!((r.best_value - 2.0 * 2f64.sqrt()).abs() < 1e-4);
        assert!(r.trace.windows(2).all(|w| w[1] >= w[0] - 1e-12));
        assert_eq!(r.restart_values.len(), 4);
        assert_eq!(r.best_value, r.restart_values.iter().cloned().fold(f64::MIN, f64::max));
    }

    #[test]
    fn coarse_grained_dimension_runs() {
        let f = BellFunctional::builtin("chsh").unwrap();
        let mut cfg = SeesawConfig::new(3);
        cfg.restarts = 2;
        let r = seesaw(&f, &cfg).unwrap();
        assert!(r.best_value <= 2.0 * 2f64.sqrt() + 1e-6);
        assert!(r.best_value >= 2.0 - 1e-9);
    }

    #[test]
    fn gap_is_nonnegative() {
        let g = GameSpec::builtin("game1").unwrap();
        let qs = crate::quantum::builtin_strategy("game1").unwrap();
        let mut cfg = SeesawConfig::new(2);
        cfg.restarts = 3;
        for p in [Player::Alice, Player::Bob] {
            assert!(best_response_gap(&g, &qs, p, &cfg).unwrap() >= -1e-9);
        }
        let other = crate::quantum::builtin_strategy("game3").unwrap();
        assert!(matches!(best_response_gap(&g, &other, Player::Alice, &cfg), Err(Error::Dimension(_))));
    }
}
