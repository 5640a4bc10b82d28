//! Exact two-player Bayesian games: payoff tensors, deterministic and
//! advice-correlated play, pure equilibria and classical bounds.

mod analysis;
mod behavior;
pub mod format;
mod profile;

pub use analysis::{ConflictReport, Deviation, ProfileRow};
pub use behavior::{Behavior, ExactBehavior, PayoffPair, PROB_EPS};
pub use profile::{AdviceDistribution, PureProfile};

use crate::dims::Dims;
use crate::error::{Error, Result};
use crate::rational::{self, Rational};
use num_traits::{One, Zero};

/// Names accepted by [`GameSpec::builtin`].
pub const BUILTIN_GAMES: [&str; 3] = ["game1", "game2", "game3"];

/// A two-player Bayesian game with exact rational prior and payoffs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GameSpec {
    name: String,
    dims: Dims,
    prior: Vec<Rational>,
    pay_a: Vec<Rational>,
    pay_b: Vec<Rational>,
}

impl GameSpec {
    /// `prior` is indexed `x * ny + y`; payoff tensors follow [`Dims::index`].
    pub fn new(
        name: impl Into<String>,
        dims: Dims,
        prior: Vec<Rational>,
        pay_a: Vec<Rational>,
        pay_b: Vec<Rational>,
    ) -> Result<Self> {
        let name = name.into();
        if name.is_empty() || name.chars().any(char::is_whitespace) {
            return Err(Error::Validation(format!("invalid game name '{name}'")));
        }
        if prior.len() != dims.setting_pairs() {
            return Err(Error::Dimension(format!(
                "prior needs {} cells, got {}",
                dims.setting_pairs(),
                prior.len()
            )));
        }
        if pay_a.len() != dims.len() || pay_b.len() != dims.len() {
            return Err(Error::Dimension(format!("payoff tensors must have {} entries", dims.len())));
        }
        if let Some(p) = prior.iter().find(|p| **p < Rational::zero()) {
            return Err(Error::Validation(format!("negative prior entry {p}")));
        }
        let sum: Rational = prior.iter().sum();
        if sum != Rational::one() {
            return Err(Error::Validation(format!("prior sums to {sum}, not 1")));
        }
        Ok(GameSpec { name, dims, prior, pay_a, pay_b })
    }

    /// The three games from the source tables: `game1` (binary inputs and
    /// outputs), `game2` (ternary outputs) and `game3` (ternary inputs).
    pub fn builtin(name: &str) -> Result<Self> {
        match name {
            "game1" => Ok(game1()),
            "game2" => Ok(game2()),
            "game3" => Ok(game3()),
            other => Err(Error::NotFound(format!(
                "unknown builtin game '{other}' (expected one of {})",
                BUILTIN_GAMES.join(", ")
            ))),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dims(&self) -> &Dims {
        &self.dims
    }

    pub fn prior(&self, x: usize, y: usize) -> Rational {
        self.prior[x * self.dims.ny + y]
    }

    pub fn pay_a(&self, x: usize, y: usize, a: usize, b: usize) -> Rational {
        self.pay_a[self.dims.index(x, y, a, b)]
    }

    pub fn pay_b(&self, x: usize, y: usize, a: usize, b: usize) -> Rational {
        self.pay_b[self.dims.index(x, y, a, b)]
    }

    /// `P(a, b | x, y) = [a = alice(x)] [b = bob(y)]`.
    pub fn behavior_from_profile(&self, profile: &PureProfile) -> Result<ExactBehavior> {
        ExactBehavior::deterministic(self.dims, profile)
    }

    /// Convex mixture of the deterministic behaviors weighted by the advice.
    pub fn behavior_from_advice(&self, advice: &AdviceDistribution) -> Result<ExactBehavior> {
        let mut beh = ExactBehavior::zeros(self.dims);
        for (profile, w) in advice.iter() {
            profile.check(&self.dims)?;
            for x in 0..self.dims.nx {
                for y in 0..self.dims.ny {
                    beh.add_at(x, y, profile.alice[x], profile.bob[y], *w);
                }
            }
        }
        Ok(beh)
    }

    pub fn expected_payoffs_exact(&self, beh: &ExactBehavior) -> Result<PayoffPair<Rational>> {
        self.dims.ensure_eq(beh.dims(), "behavior")?;
        let mut pa = Rational::zero();
        let mut pb = Rational::zero();
        for (i, (x, y, _, _)) in self.dims.tuples().enumerate() {
            let p = beh.probs()[i];
            if p.is_zero() {
                continue;
            }
            let w = self.prior(x, y) * p;
            pa += w * self.pay_a[i];
            pb += w * self.pay_b[i];
        }
        Ok(PayoffPair::new(pa, pb))
    }

    pub fn expected_payoffs(&self, beh: &Behavior) -> Result<PayoffPair<f64>> {
        self.dims.ensure_eq(beh.dims(), "behavior")?;
        let mut pa = 0.0;
        let mut pb = 0.0;
        for (i, (x, y, _, _)) in self.dims.tuples().enumerate() {
            let w = rational::to_f64(&self.prior(x, y)) * beh.probs()[i];
            pa += w * rational::to_f64(&self.pay_a[i]);
            pb += w * rational::to_f64(&self.pay_b[i]);
        }
        Ok(PayoffPair::new(pa, pb))
    }

    /// Direct block lookup: `sum_{x,y} prior(x,y) * pay(x, y, alice(x), bob(y))`.
    pub fn profile_payoffs(&self, profile: &PureProfile) -> Result<PayoffPair<Rational>> {
        profile.check(&self.dims)?;
        Ok(self.profile_payoffs_unchecked(profile))
    }

    pub(crate) fn profile_payoffs_unchecked(&self, profile: &PureProfile) -> PayoffPair<Rational> {
        let mut pa = Rational::zero();
        let mut pb = Rational::zero();
        for x in 0..self.dims.nx {
            for y in 0..self.dims.ny {
                let w = self.prior(x, y);
                if w.is_zero() {
                    continue;
                }
                let i = self.dims.index(x, y, profile.alice[x], profile.bob[y]);
                pa += w * self.pay_a[i];
                pb += w * self.pay_b[i];
            }
        }
        PayoffPair::new(pa, pb)
    }
}

/// Builds a game from `(x, y)` blocks listed row-major, each block holding
/// `(alice, bob)` payoffs in half units, row-major over `(a, b)`.
fn from_half_blocks(name: &str, dims: Dims, blocks: &[&[(i64, i64)]]) -> GameSpec {
    assert_eq!(blocks.len(), dims.setting_pairs());
    let mut pay_a = Vec::with_capacity(dims.len());
    let mut pay_b = Vec::with_capacity(dims.len());
    for block in blocks {
        assert_eq!(block.len(), dims.na * dims.nb);
        for &(ua, ub) in *block {
            pay_a.push(Rational::new(ua, 2));
            pay_b.push(Rational::new(ub, 2));
        }
    }
    let prior = vec![Rational::new(1, dims.setting_pairs() as i64); dims.setting_pairs()];
    GameSpec::new(name, dims, prior, pay_a, pay_b).expect("builtin game tables are valid")
}

const O: (i64, i64) = (0, 0);
const HI_A: (i64, i64) = (4, 2);
const HI_B: (i64, i64) = (2, 4);
const MID: (i64, i64) = (3, 3);
const LOSS: (i64, i64) = (-3, -3);

fn game1() -> GameSpec {
    let dims = Dims { nx: 2, ny: 2, na: 2, nb: 2 };
    from_half_blocks(
        "game1",
        dims,
        &[
            &[HI_A, O, O, HI_B],
            &[O, HI_A, HI_B, O],
            &[O, HI_B, HI_A, O],
            &[LOSS, O, O, LOSS],
        ],
    )
}

fn game2() -> GameSpec {
    let dims = Dims { nx: 2, ny: 2, na: 3, nb: 3 };
    let diag: &[(i64, i64)] = &[HI_A, O, O, O, MID, O, O, O, HI_B];
    from_half_blocks(
        "game2",
        dims,
        &[diag, diag, &[O, MID, O, O, O, MID, MID, O, O], diag],
    )
}

fn game3() -> GameSpec {
    let dims = Dims { nx: 3, ny: 3, na: 2, nb: 2 };
    let diag: &[(i64, i64)] = &[HI_A, O, O, HI_B];
    let loss: &[(i64, i64)] = &[LOSS; 4];
    let anti: &[(i64, i64)] = &[O, MID, MID, O];
    from_half_blocks(
        "game3",
        dims,
        &[diag, loss, anti, diag, diag, loss, loss, diag, diag],
    )
}
