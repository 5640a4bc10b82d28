//! Two-player Bayesian games with incomplete information and their quantum
//! counterparts.
//!
//! - [`game`] exact payoffs, deterministic profiles, common advice, pure
//!   equilibria and classical optima, all in rational arithmetic.
//! - [`quantum`] bipartite pure states, projective measurements and the Born rule.
//! - [`bell`] Bell functionals, correlators and exhaustive local bounds.
//! - [`optimizer`] see-saw maximization over entangled strategies.
//!
//! With the default `parallel` feature, enumeration and optimizer restarts
//! run on rayon; disabling it gives the same results sequentially.

pub mod bell;
pub mod dims;
pub mod error;
pub mod game;
pub mod optimizer;
pub mod par;
pub mod quantum;
pub mod rational;
mod textfmt;

pub use bell::BellFunctional;
pub use dims::{Dims, ENUMERATION_CAP};
pub use error::{Error, Result};
pub use game::{AdviceDistribution, Behavior, ExactBehavior, GameSpec, PayoffPair, PureProfile};
pub use optimizer::{seesaw, SeesawConfig, SeesawResult};
pub use quantum::{ProjectiveMeasurement, QuantumStrategy, StateVector};
pub use rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Player {
    Alice,
    Bob,
}
