//! Bell functionals: linear forms on behaviors plus a constant offset.

pub mod format;

use crate::dims::{Dims, ENUMERATION_CAP};
use crate::error::{Error, Result};
use crate::game::{Behavior, ExactBehavior, GameSpec, PureProfile};
use crate::par::{map_range, Execution};
use crate::rational::{self, int, Rational};
use num_traits::Zero;

/// Names accepted by [`BellFunctional::builtin`].
pub const BUILTIN_FUNCTIONALS: [&str; 5] = ["cereceda1", "cereceda2", "collins3", "chained3", "chsh"];

/// `sum c(x,y,a,b) P(a,b|x,y) + offset`, with an optional claimed local bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BellFunctional {
    name: String,
    dims: Dims,
    coeff: Vec<Rational>,
    offset: Rational,
    claimed_bound: Option<Rational>,
}

impl BellFunctional {
    pub fn new(name: impl Into<String>, dims: Dims, coeff: Vec<Rational>, offset: Rational) -> Result<Self> {
        let name = name.into();
        if name.is_empty() || name.chars().any(char::is_whitespace) {
            return Err(Error::Validation(format!("invalid functional name '{name}'")));
        }
        if coeff.len() != dims.len() {
            return Err(Error::Dimension(format!("functional on {dims} needs {} coefficients", dims.len())));
        }
        Ok(BellFunctional { name, dims, coeff, offset, claimed_bound: None })
    }

    pub fn with_claimed_bound(mut self, bound: Rational) -> Self {
        self.claimed_bound = Some(bound);
        self
    }

    /// Builds `sum_t sign_t <A_x B_y>` over binary outputs. A `+` term
    /// expands as `2(P00 + P11) - 1`, a `-` term as `2(P01 + P10) - 1`.
    pub fn from_correlators(name: &str, nx: usize, ny: usize, terms: &[(usize, usize, i64)]) -> Result<Self> {
        let dims = Dims::new(nx, ny, 2, 2)?;
        let mut coeff = vec![Rational::zero(); dims.len()];
        for &(x, y, sign) in terms {
            if x >= nx || y >= ny || sign.abs() != 1 {
                return Err(Error::Validation(format!("bad correlator term ({x}, {y}, {sign})")));
            }
            let pairs = if sign > 0 { [(0, 0), (1, 1)] } else { [(0, 1), (1, 0)] };
            for (a, b) in pairs {
                coeff[dims.index(x, y, a, b)] += int(2);
            }
        }
        Self::new(name, dims, coeff, int(-(terms.len() as i64)))
    }

    /// `coeff = prior * (w_a * payA + w_b * payB)`, so that evaluating on any
    /// behavior gives `w_a $A + w_b $B`.
    pub fn from_game(game: &GameSpec, w_a: Rational, w_b: Rational) -> Self {
        let d = *game.dims();
        let coeff = d
            .tuples()
            .map(|(x, y, a, b)| game.prior(x, y) * (w_a * game.pay_a(x, y, a, b) + w_b * game.pay_b(x, y, a, b)))
            .collect();
        let name = format!("{}[{}*A+{}*B]", game.name(), w_a, w_b).replace(' ', "");
        BellFunctional { name, dims: d, coeff, offset: Rational::zero(), claimed_bound: None }
    }

    pub fn builtin(name: &str) -> Result<Self> {
        let d22 = Dims { nx: 2, ny: 2, na: 2, nb: 2 };
        let sparse = |name: &str, dims: Dims, entries: &[(usize, usize, usize, usize, i64)]| {
            let mut coeff = vec![Rational::zero(); dims.len()];
            for &(x, y, a, b, c) in entries {
                coeff[dims.index(x - 1, y - 1, a, b)] = int(c);
            }
            BellFunctional::new(name, dims, coeff, Rational::zero())
        };
        let f = match name {
            "cereceda1" => {
                sparse(name, d22, &[(1, 1, 1, 1, 1), (1, 2, 0, 1, 1), (2, 1, 1, 0, 1), (2, 2, 1, 1, -1)])?.with_claimed_bound(int(1))
            }
            "cereceda2" => {
                sparse(name, d22, &[(1, 1, 0, 0, 1), (1, 2, 1, 0, 1), (2, 1, 0, 1, 1), (2, 2, 0, 0, -1)])?.with_claimed_bound(int(1))
            }
            "collins3" => {
                let d = Dims { nx: 2, ny: 2, na: 3, nb: 3 };
                let mut entries = Vec::new();
                for k in 0..3 {
                    entries.push((1, 1, k, k, 1));
                    entries.push((1, 2, k, k, 1));
                    entries.push((2, 1, k, (k + 1) % 3, 1));
                    entries.push((2, 2, k, k, 1));
                }
                sparse(name, d, &entries)?.with_claimed_bound(int(3))
            }
            "chained3" => Self::from_correlators(
                name,
                3,
                3,
                &[(0, 0, 1), (1, 1, 1), (2, 2, 1), (1, 0, 1), (2, 1, 1), (0, 2, -1)],
            )?
            .with_claimed_bound(int(4)),
            "chsh" => Self::from_correlators(name, 2, 2, &[(0, 0, 1), (0, 1, 1), (1, 0, 1), (1, 1, -1)])?
                .with_claimed_bound(int(2)),
            other => {
                return Err(Error::NotFound(format!(
                    "unknown builtin functional '{other}' (expected one of {})",
                    BUILTIN_FUNCTIONALS.join(", ")
                )))
            }
        };
        Ok(f)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dims(&self) -> &Dims {
        &self.dims
    }

    pub fn coeff(&self, x: usize, y: usize, a: usize, b: usize) -> Rational {
        self.coeff[self.dims.index(x, y, a, b)]
    }

    pub fn coefficients(&self) -> &[Rational] {
        &self.coeff
    }

    pub fn offset(&self) -> Rational {
        self.offset
    }

    pub fn claimed_bound(&self) -> Option<Rational> {
        self.claimed_bound
    }

    /// Coefficients as floats, in storage order.
    pub fn real_coefficients(&self) -> Vec<f64> {
        self.coeff.iter().map(rational::to_f64).collect()
    }

    /// `k * self`, with the claimed bound scaled too (for `k >= 0`).
    pub fn scaled(&self, k: Rational) -> Self {
        BellFunctional {
            name: self.name.clone(),
            dims: self.dims,
            coeff: self.coeff.iter().map(|c| c * k).collect(),
            offset: self.offset * k,
            claimed_bound: self.claimed_bound.filter(|_| k >= Rational::zero()).map(|b| b * k),
        }
    }

    /// Coefficient-wise sum; offsets add, claimed bounds are dropped.
    pub fn sum(&self, other: &Self) -> Result<Self> {
        self.dims.ensure_eq(&other.dims, "functional sum")?;
        Ok(BellFunctional {
            name: format!("{}+{}", self.name, other.name),
            dims: self.dims,
            coeff: self.coeff.iter().zip(&other.coeff).map(|(a, b)| a + b).collect(),
            offset: self.offset + other.offset,
            claimed_bound: None,
        })
    }

    pub fn evaluate(&self, beh: &Behavior) -> Result<f64> {
        self.dims.ensure_eq(beh.dims(), "behavior")?;
        let linear: f64 = self.coeff.iter().zip(beh.probs()).map(|(c, p)| rational::to_f64(c) * p).sum();
        Ok(linear + rational::to_f64(&self.offset))
    }

    pub fn evaluate_exact(&self, beh: &ExactBehavior) -> Result<Rational> {
        self.dims.ensure_eq(beh.dims(), "behavior")?;
        Ok(self.coeff.iter().zip(beh.probs()).map(|(c, p)| c * p).sum::<Rational>() + self.offset)
    }

    fn evaluate_profile(&self, p: &PureProfile) -> Rational {
        let d = &self.dims;
        let mut v = self.offset;
        for x in 0..d.nx {
            for y in 0..d.ny {
                v += self.coeff[d.index(x, y, p.alice[x], p.bob[y])];
            }
        }
        v
    }

    /// Maximum over deterministic profiles, with every maximizer.
    pub fn deterministic_maximum(&self, cap: u64) -> Result<(Rational, Vec<PureProfile>)> {
        let d = self.dims;
        d.profile_count(cap)?;
        let n_alice = d.alice_strategies().unwrap_or(0) as usize;
        let n_bob = d.bob_strategies().unwrap_or(0);
        let per_alice = map_range(n_alice, Execution::Parallel, |i| {
            let mut best: Option<Rational> = None;
            let mut arg = Vec::new();
            for j in 0..n_bob {
                let p = PureProfile::from_indices(&d, i as u64, j);
                let v = self.evaluate_profile(&p);
                match best {
                    Some(b) if v < b => {}
                    Some(b) if v == b => arg.push(p),
                    _ => {
                        best = Some(v);
                        arg = vec![p];
                    }
                }
            }
            (best.expect("at least one Bob strategy"), arg)
        });
        let best = per_alice.iter().map(|(v, _)| *v).max().expect("at least one Alice strategy");
        let arg = per_alice.into_iter().filter(|(v, _)| *v == best).flat_map(|(_, a)| a).collect();
        Ok((best, arg))
    }

    /// Local-realistic bound by exhaustive search; errors if it disagrees
    /// with the claimed bound.
    pub fn classical_bound_bruteforce(&self) -> Result<Rational> {
        let (best, _) = self.deterministic_maximum(ENUMERATION_CAP)?;
        match self.claimed_bound {
            Some(claimed) if claimed != best => Err(Error::Integrity(format!(
                "functional {} claims classical bound {claimed} but exhaustive search gives {best}",
                self.name
            ))),
            _ => Ok(best),
        }
    }
}

/// `<A_x B_y> = P00 + P11 - P01 - P10` for binary outputs.
pub fn correlator(beh: &Behavior, x: usize, y: usize) -> Result<f64> {
    let d = beh.dims();
    if d.na != 2 || d.nb != 2 {
        return Err(Error::Dimension(format!("correlators need binary outputs, got {d}")));
    }
    if x >= d.nx || y >= d.ny {
        return Err(Error::Dimension(format!("setting pair ({x}, {y}) out of range for {d}")));
    }
    Ok(beh.get(x, y, 0, 0) + beh.get(x, y, 1, 1) - beh.get(x, y, 0, 1) - beh.get(x, y, 1, 0))
}
