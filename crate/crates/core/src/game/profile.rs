use crate::dims::Dims;
use crate::error::{Error, Result};
use crate::rational::Rational;
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// A deterministic strategy pair: Alice's output for each of her inputs and
/// Bob's output for each of his.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PureProfile {
    pub alice: Vec<usize>,
    pub bob: Vec<usize>,
}

impl PureProfile {
    pub fn new(dims: &Dims, alice: Vec<usize>, bob: Vec<usize>) -> Result<Self> {
        let p = PureProfile { alice, bob };
        p.check(dims)?;
        Ok(p)
    }

    pub fn check(&self, dims: &Dims) -> Result<()> {
        if self.alice.len() != dims.nx || self.bob.len() != dims.ny {
            return Err(Error::Dimension(format!(
                "profile {self} has {}+{} entries, game expects {}+{}",
                self.alice.len(),
                self.bob.len(),
                dims.nx,
                dims.ny
            )));
        }
        if self.alice.iter().any(|&a| a >= dims.na) || self.bob.iter().any(|&b| b >= dims.nb) {
            return Err(Error::Dimension(format!("profile {self} has an output out of range for {dims}")));
        }
        Ok(())
    }

    /// Parses the concatenated output string, e.g. `0100` for `a1 a2 b1 b2`.
    pub fn parse(dims: &Dims, text: &str) -> Result<Self> {
        let digits: Vec<usize> = text
            .chars()
            .map(|c| c.to_digit(36).map(|d| d as usize))
            .collect::<Option<_>>()
            .ok_or_else(|| Error::Validation(format!("profile '{text}' contains a non-digit")))?;
        if digits.len() != dims.nx + dims.ny {
            return Err(Error::Dimension(format!(
                "profile '{text}' has {} symbols, expected {}",
                digits.len(),
                dims.nx + dims.ny
            )));
        }
        let bob = digits[dims.nx..].to_vec();
        let mut alice = digits;
        alice.truncate(dims.nx);
        PureProfile::new(dims, alice, bob)
    }

    /// Decodes the `(alice_index, bob_index)` pair used by enumeration, with
    /// the first input's output as the most significant digit.
    pub fn from_indices(dims: &Dims, alice_index: u64, bob_index: u64) -> Self {
        PureProfile {
            alice: decode(alice_index, dims.na, dims.nx),
            bob: decode(bob_index, dims.nb, dims.ny),
        }
    }

    pub fn alice_index(&self, dims: &Dims) -> u64 {
        encode(&self.alice, dims.na)
    }

    pub fn bob_index(&self, dims: &Dims) -> u64 {
        encode(&self.bob, dims.nb)
    }
}

pub(crate) fn decode(mut index: u64, base: usize, len: usize) -> Vec<usize> {
    let mut out = vec![0; len];
    for slot in out.iter_mut().rev() {
        *slot = (index % base as u64) as usize;
        index /= base as u64;
    }
    out
}

fn encode(digits: &[usize], base: usize) -> u64 {
    digits.iter().fold(0, |acc, &d| acc * base as u64 + d as u64)
}

impl fmt::Display for PureProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &d in self.alice.iter().chain(&self.bob) {
            let c = char::from_digit(d as u32, 36).unwrap_or('?');
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// Common advice: a probability distribution over deterministic profiles,
/// sampled once and handed to both players.
#[derive(Debug, Clone, PartialEq)]
pub struct AdviceDistribution {
    weights: BTreeMap<PureProfile, Rational>,
}

impl AdviceDistribution {
    /// Builds a distribution; repeated profiles have their weights summed.
    pub fn new(dims: &Dims, entries: impl IntoIterator<Item = (PureProfile, Rational)>) -> Result<Self> {
        let mut weights = BTreeMap::new();
        let mut sum = Rational::zero();
        for (profile, w) in entries {
            profile.check(dims)?;
            if w < Rational::zero() {
                return Err(Error::Validation(format!("negative advice weight {w} on {profile}")));
            }
            sum += w;
            *weights.entry(profile).or_insert_with(Rational::zero) += w;
        }
        if sum != Rational::one() {
            return Err(Error::Validation(format!("advice weights sum to {sum}, not 1")));
        }
        Ok(AdviceDistribution { weights })
    }

    pub fn point(dims: &Dims, profile: PureProfile) -> Result<Self> {
        Self::new(dims, [(profile, Rational::one())])
    }

    pub fn iter(&self) -> impl Iterator<Item = (&PureProfile, &Rational)> {
        self.weights.iter()
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;

    fn d2() -> Dims {
        Dims::new(2, 2, 2, 2).unwrap()
    }

    #[test]
    fn parse_and_display_round_trip() {
        let p = PureProfile::parse(&d2(), "0100").unwrap();
        assert_eq!(p.alice, vec![0, 1]);
        assert_eq!(p.bob, vec![0, 0]);
        assert_eq!(p.to_string(), "0100");
    }

    #[test]
    fn parse_rejects_bad_input() {
        assert!(matches!(PureProfile::parse(&d2(), "010"), Err(Error::Dimension(_))));
        assert!(matches!(PureProfile::parse(&d2(), "0120"), Err(Error::Dimension(_))));
        assert!(matches!(PureProfile::parse(&d2(), "01-0"), Err(Error::Validation(_))));
    }

    #[test]
    fn index_encoding_is_lexicographic() {
        let d = Dims::new(2, 2, 3, 3).unwrap();
        let p = PureProfile::from_indices(&d, 7, 5);
        assert_eq!(p.to_string(), "2112");
        assert_eq!(p.alice_index(&d), 7);
        assert_eq!(p.bob_index(&d), 5);
    }

    #[test]
    fn advice_must_be_normalized() {
        let d = d2();
        let p = PureProfile::parse(&d, "0000").unwrap();
        let q = PureProfile::parse(&d, "1111").unwrap();
        assert!(AdviceDistribution::new(&d, [(p.clone(), frac(1, 2)), (q.clone(), frac(1, 2))]).is_ok());
        assert!(matches!(
            AdviceDistribution::new(&d, [(p.clone(), frac(1, 2)), (q.clone(), frac(1, 3))]),
            Err(Error::Validation(_))
        ));
        assert!(matches!(
            AdviceDistribution::new(&d, [(p, frac(3, 2)), (q, frac(-1, 2))]),
            Err(Error::Validation(_))
        ));
    }

    #[test]
    fn duplicate_profiles_merge() {
        let d = d2();
        let p = PureProfile::parse(&d, "0101").unwrap();
        let adv = AdviceDistribution::new(&d, [(p.clone(), frac(1, 4)), (p.clone(), frac(3, 4))]).unwrap();
        assert_eq!(adv.len(), 1);
        assert_eq!(adv.iter().next().unwrap().1, &frac(1, 1));
    }
}
