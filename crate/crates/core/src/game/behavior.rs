use crate::dims::Dims;
use crate::error::{Error, Result};
use crate::rational::{self, Rational};
use super::PureProfile;
use num_traits::{One, Zero};
use std::ops::Add;

/// Tolerance on individual probabilities and on per-setting normalization.
pub const PROB_EPS: f64 = 1e-12;

/// Conditional output distribution `P(a, b | x, y)` over real numbers.
#[derive(Debug, Clone, PartialEq)]
pub struct Behavior {
    dims: Dims,
    probs: Vec<f64>,
}

impl Behavior {
    /// Validates and clamps; entries may stray from `[0, 1]` by at most
    /// [`PROB_EPS`] and each setting block must sum to 1 within the same.
    pub fn new(dims: Dims, mut probs: Vec<f64>) -> Result<Self> {
        if probs.len() != dims.len() {
            return Err(Error::Dimension(format!(
                "behavior for {dims} needs {} entries, got {}",
                dims.len(),
                probs.len()
            )));
        }
        for (i, p) in probs.iter_mut().enumerate() {
            if !p.is_finite() || *p < -PROB_EPS || *p > 1.0 + PROB_EPS {
                return Err(Error::Validation(format!("probability #{i} = {p} outside [0, 1]")));
            }
            *p = p.clamp(0.0, 1.0);
        }
        let block = dims.na * dims.nb;
        for (s, chunk) in probs.chunks(block).enumerate() {
            let sum: f64 = chunk.iter().sum();
            if (sum - 1.0).abs() > PROB_EPS {
                return Err(Error::Validation(format!(
                    "setting pair (x={}, y={}) sums to {sum}",
                    s / dims.ny + 1,
                    s % dims.ny + 1
                )));
            }
        }
        Ok(Behavior { dims, probs })
    }

    /// `P(a, b | x, y) = 1 / (na * nb)` everywhere.
    pub fn uniform(dims: Dims) -> Self {
        let p = 1.0 / (dims.na * dims.nb) as f64;
        Behavior { dims, probs: vec![p; dims.len()] }
    }

    pub fn dims(&self) -> &Dims {
        &self.dims
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize, a: usize, b: usize) -> f64 {
        self.probs[self.dims.index(x, y, a, b)]
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    /// Alice's marginal `P(a | x, y)`.
    pub fn alice_marginal(&self, x: usize, y: usize, a: usize) -> f64 {
        (0..self.dims.nb).map(|b| self.get(x, y, a, b)).sum()
    }

    /// Bob's marginal `P(b | x, y)`.
    pub fn bob_marginal(&self, x: usize, y: usize, b: usize) -> f64 {
        (0..self.dims.na).map(|a| self.get(x, y, a, b)).sum()
    }

    /// Largest dependence of either marginal on the other player's input.
    pub fn signaling_gap(&self) -> f64 {
        let d = self.dims;
        let mut gap: f64 = 0.0;
        for x in 0..d.nx {
            for a in 0..d.na {
                let first = self.alice_marginal(x, 0, a);
                for y in 1..d.ny {
                    gap = gap.max((self.alice_marginal(x, y, a) - first).abs());
                }
            }
        }
        for y in 0..d.ny {
            for b in 0..d.nb {
                let first = self.bob_marginal(0, y, b);
                for x in 1..d.nx {
                    gap = gap.max((self.bob_marginal(x, y, b) - first).abs());
                }
            }
        }
        gap
    }

    /// Largest deviation of any setting block's sum from 1.
    pub fn normalization_gap(&self) -> f64 {
        let block = self.dims.na * self.dims.nb;
        self.probs
            .chunks(block)
            .map(|c| (c.iter().sum::<f64>() - 1.0).abs())
            .fold(0.0, f64::max)
    }
}

/// Behavior with exact rational entries, produced by deterministic
/// strategies and common advice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactBehavior {
    dims: Dims,
    probs: Vec<Rational>,
}

impl ExactBehavior {
    pub(crate) fn zeros(dims: Dims) -> Self {
        ExactBehavior { dims, probs: vec![Rational::zero(); dims.len()] }
    }

    /// `P(a, b | x, y) = [a = alice(x)] [b = bob(y)]`.
    pub fn deterministic(dims: Dims, profile: &PureProfile) -> Result<Self> {
        profile.check(&dims)?;
        let mut beh = Self::zeros(dims);
        for x in 0..dims.nx {
            for y in 0..dims.ny {
                beh.add_at(x, y, profile.alice[x], profile.bob[y], Rational::one());
            }
        }
        Ok(beh)
    }

    pub(crate) fn add_at(&mut self, x: usize, y: usize, a: usize, b: usize, w: Rational) {
        let i = self.dims.index(x, y, a, b);
        self.probs[i] += w;
    }

    pub fn dims(&self) -> &Dims {
        &self.dims
    }

    pub fn get(&self, x: usize, y: usize, a: usize, b: usize) -> Rational {
        self.probs[self.dims.index(x, y, a, b)]
    }

    pub fn probs(&self) -> &[Rational] {
        &self.probs
    }

    pub fn to_real(&self) -> Behavior {
        Behavior {
            dims: self.dims,
            probs: self.probs.iter().map(rational::to_f64).collect(),
        }
    }
}

impl From<&ExactBehavior> for Behavior {
    fn from(b: &ExactBehavior) -> Self {
        b.to_real()
    }
}

/// Expected payoffs of both players; `total` is always `pay_a + pay_b`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PayoffPair<T> {
    pub pay_a: T,
    pub pay_b: T,
    pub total: T,
}

impl<T: Add<Output = T> + Copy> PayoffPair<T> {
    pub fn new(pay_a: T, pay_b: T) -> Self {
        PayoffPair { pay_a, pay_b, total: pay_a + pay_b }
    }
}

impl PayoffPair<Rational> {
    pub fn to_real(&self) -> PayoffPair<f64> {
        PayoffPair::new(rational::to_f64(&self.pay_a), rational::to_f64(&self.pay_b))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn clamps_tiny_excursions() {
        let d = Dims::new(1, 1, 2, 1).unwrap();
        let b = Behavior::new(d, vec![1.0 + 5e-13, -5e-13]).unwrap();
        assert_eq!(b.probs(), &[1.0, 0.0]);
    }

    #[test]
    fn rejects_out_of_range_and_unnormalized() {
        let d = Dims::new(1, 1, 2, 1).unwrap();
        assert!(matches!(Behavior::new(d, vec![1.1, -0.1]), Err(Error::Validation(_))));
        assert!(matches!(Behavior::new(d, vec![0.5, 0.4]), Err(Error::Validation(_))));
        assert!(matches!(Behavior::new(d, vec![1.0]), Err(Error::Dimension(_))));
        assert!(matches!(Behavior::new(d, vec![f64::NAN, 1.0]), Err(Error::Validation(_))));
    }

    #[test]
    fn uniform_is_nonsignaling() {
        let b = Behavior::uniform(Dims::new(3, 2, 2, 3).unwrap());
        assert!(b.normalization_gap() < PROB_EPS);
        assert_eq!(b.signaling_gap(), 0.0);
    }
}
