use super::{GameSpec, PayoffPair, PureProfile};
use crate::dims::ENUMERATION_CAP;
use crate::error::Result;
use crate::par::{map_range, Execution};
use crate::rational::Rational;
use crate::Player;

/// One deterministic profile with its exact expected payoffs.
#[derive(Debug, Clone, PartialEq)]
pub struct ProfileRow {
    pub profile: PureProfile,
    pub payoffs: PayoffPair<Rational>,
    pub is_equilibrium: bool,
}

/// A unilateral whole-strategy deviation that strictly helps the deviator.
#[derive(Debug, Clone, PartialEq)]
pub struct Deviation {
    pub player: Player,
    pub to: PureProfile,
    pub gain: Rational,
}

/// Equilibria each player likes best, and whether those choices are disjoint.
#[derive(Debug, Clone, PartialEq)]
pub struct ConflictReport {
    pub is_conflicting: bool,
    pub alice_preferred: Vec<ProfileRow>,
    pub bob_preferred: Vec<ProfileRow>,
}

/// Exact payoff matrices indexed `[alice_index][bob_index]`.
struct PayoffTable {
    rows: Vec<Vec<PayoffPair<Rational>>>,
}

impl PayoffTable {
    fn build(game: &GameSpec, cap: u64) -> Result<Self> {
        let d = game.dims();
        d.profile_count(cap)?;
        let n_alice = d.alice_strategies().unwrap_or(0) as usize;
        let n_bob = d.bob_strategies().unwrap_or(0);
        let rows = map_range(n_alice, Execution::Parallel, |i| {
            (0..n_bob)
                .map(|j| game.profile_payoffs_unchecked(&PureProfile::from_indices(d, i as u64, j)))
                .collect()
        });
        Ok(PayoffTable { rows })
    }

    fn equilibrium_flags(&self) -> Vec<Vec<bool>> {
        let n_bob = self.rows.first().map_or(0, Vec::len);
        // Alice's best reply value against each Bob strategy, Bob's against each Alice strategy.
        let alice_best: Vec<Rational> = (0..n_bob)
            .map(|j| self.rows.iter().map(|r| r[j].pay_a).max().expect("non-empty"))
            .collect();
        self.rows
            .iter()
            .map(|row| {
                let bob_best = row.iter().map(|p| p.pay_b).max().expect("non-empty");
                row.iter()
                    .enumerate()
                    .map(|(j, p)| p.pay_a == alice_best[j] && p.pay_b == bob_best)
                    .collect()
            })
            .collect()
    }
}

impl GameSpec {
    /// All deterministic profiles in lexicographic order of Alice's map then
    /// Bob's, with exact payoffs and weak-Nash flags.
    pub fn enumerate_profiles(&self) -> Result<Vec<ProfileRow>> {
        self.enumerate_profiles_capped(ENUMERATION_CAP)
    }

    pub fn enumerate_profiles_capped(&self, cap: u64) -> Result<Vec<ProfileRow>> {
        let table = PayoffTable::build(self, cap)?;
        let flags = table.equilibrium_flags();
        let d = self.dims();
        let mut out = Vec::new();
        for (i, (row, frow)) in table.rows.into_iter().zip(flags).enumerate() {
            for (j, (payoffs, is_equilibrium)) in row.into_iter().zip(frow).enumerate() {
                out.push(ProfileRow {
                    profile: PureProfile::from_indices(d, i as u64, j as u64),
                    payoffs,
                    is_equilibrium,
                });
            }
        }
        Ok(out)
    }

    /// Profiles from which no unilateral change of a whole input-to-output
    /// map strictly raises the deviator's expected payoff. Ties are kept.
    pub fn find_pure_equilibria(&self) -> Result<Vec<ProfileRow>> {
        Ok(self.enumerate_profiles()?.into_iter().filter(|r| r.is_equilibrium).collect())
    }

    /// Largest total payoff over deterministic profiles, with every maximizer.
    /// Common advice is a convex mixture of these, so it cannot do better.
    pub fn classical_optimum(&self) -> Result<(Rational, Vec<PureProfile>)> {
        let rows = self.enumerate_profiles()?;
        let best = rows.iter().map(|r| r.payoffs.total).max().expect("at least one profile");
        let argmax = rows.into_iter().filter(|r| r.payoffs.total == best).map(|r| r.profile).collect();
        Ok((best, argmax))
    }

    pub fn conflict_report(&self) -> Result<ConflictReport> {
        let eq = self.find_pure_equilibria()?;
        let (Some(best_a), Some(best_b)) = (
            eq.iter().map(|r| r.payoffs.pay_a).max(),
            eq.iter().map(|r| r.payoffs.pay_b).max(),
        ) else {
            return Ok(ConflictReport { is_conflicting: false, alice_preferred: vec![], bob_preferred: vec![] });
        };
        let alice_preferred: Vec<ProfileRow> = eq.iter().filter(|r| r.payoffs.pay_a == best_a).cloned().collect();
        let bob_preferred: Vec<ProfileRow> = eq.iter().filter(|r| r.payoffs.pay_b == best_b).cloned().collect();
        let is_conflicting = alice_preferred
            .iter()
            .all(|a| bob_preferred.iter().all(|b| a.profile != b.profile));
        Ok(ConflictReport { is_conflicting, alice_preferred, bob_preferred })
    }

    /// Searches every unilateral deviation from `profile` and returns the
    /// first strictly improving one, if any.
    pub fn improving_deviation(&self, profile: &PureProfile) -> Result<Option<Deviation>> {
        let d = self.dims();
        d.profile_count(ENUMERATION_CAP)?;
        let base = self.profile_payoffs(profile)?;
        for i in 0..d.alice_strategies().unwrap_or(0) {
            let alice = PureProfile::from_indices(d, i, 0).alice;
            let to = PureProfile { alice, bob: profile.bob.clone() };
            let gain = self.profile_payoffs_unchecked(&to).pay_a - base.pay_a;
            if gain > Rational::from_integer(0) {
                return Ok(Some(Deviation { player: Player::Alice, to, gain }));
            }
        }
        for j in 0..d.bob_strategies().unwrap_or(0) {
            let bob = PureProfile::from_indices(d, 0, j).bob;
            let to = PureProfile { alice: profile.alice.clone(), bob };
            let gain = self.profile_payoffs_unchecked(&to).pay_b - base.pay_b;
            if gain > Rational::from_integer(0) {
                return Ok(Some(Deviation { player: Player::Bob, to, gain }));
            }
        }
        Ok(None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dims::Dims;
    use crate::error::Error;
    use crate::rational::{frac, int};

    fn names(rows: &[ProfileRow]) -> Vec<String> {
        rows.iter().map(|r| r.profile.to_string()).collect()
    }

    #[test]
    fn enumeration_sizes_and_order() {
        let counts: Vec<usize> = ["game1", "game2", "game3"]
            .iter()
            .map(|n| GameSpec::builtin(n).unwrap().enumerate_profiles().unwrap().len())
            .collect();
        assert_eq!(counts, vec![16, 81, 64]);
        let rows = GameSpec::builtin("game1").unwrap().enumerate_profiles().unwrap();
        assert_eq!(rows[0].profile.to_string(), "0000");
        assert_eq!(rows[1].profile.to_string(), "0001");
        assert_eq!(rows[15].profile.to_string(), "1111");
        assert_eq!((rows[0].payoffs.pay_a, rows[0].payoffs.pay_b), (frac(1, 8), frac(-1, 8)));
        assert_eq!((rows[15].payoffs.pay_a, rows[15].payoffs.pay_b), (frac(-1, 8), frac(1, 8)));
    }

    #[test]
    fn game2_bob_preferred_row() {
        let g = GameSpec::builtin("game2").unwrap();
        let p = PureProfile::parse(g.dims(), "2122").unwrap();
        let pay = g.profile_payoffs(&p).unwrap();
        assert_eq!((pay.pay_a, pay.pay_b), (frac(7, 8), frac(11, 8)));
    }

    #[test]
    fn game1_equilibria() {
        let g = GameSpec::builtin("game1").unwrap();
        assert_eq!(names(&g.find_pure_equilibria().unwrap()), vec!["0011", "0100", "1110"]);
    }

    #[test]
    fn game2_and_game3_named_equilibria() {
        let g2 = GameSpec::builtin("game2").unwrap();
        let eq2 = g2.find_pure_equilibria().unwrap();
        let r = eq2.iter().find(|r| r.profile.to_string() == "0010").unwrap();
        assert_eq!((r.payoffs.pay_a, r.payoffs.pay_b), (frac(11, 8), frac(7, 8)));

        let g3 = GameSpec::builtin("game3").unwrap();
        let eq3 = g3.find_pure_equilibria().unwrap();
        let a = eq3.iter().find(|r| r.profile.to_string() == "000001").unwrap();
        assert_eq!((a.payoffs.pay_a, a.payoffs.pay_b), (frac(5, 9), frac(1, 9)));
        let b = eq3.iter().find(|r| r.profile.to_string() == "011111").unwrap();
        assert_eq!((b.payoffs.pay_a, b.payoffs.pay_b), (frac(1, 9), frac(5, 9)));
    }

    #[test]
    fn classical_optima() {
        let opt = |n| GameSpec::builtin(n).unwrap().classical_optimum().unwrap().0;
        assert_eq!(opt("game1"), frac(3, 2));
        assert_eq!(opt("game2"), frac(9, 4));
        assert_eq!(opt("game3"), frac(2, 3));
    }

    #[test]
    fn conflict_reports() {
        let g1 = GameSpec::builtin("game1").unwrap().conflict_report().unwrap();
        assert!(g1.is_conflicting);
        assert_eq!(names(&g1.alice_preferred), vec!["0100"]);
        assert_eq!(names(&g1.bob_preferred), vec!["1110"]);
        let g2 = GameSpec::builtin("game2").unwrap().conflict_report().unwrap();
        assert!(g2.is_conflicting);
        assert_eq!(names(&g2.alice_preferred), vec!["0010"]);
        assert_eq!(names(&g2.bob_preferred), vec!["2122"]);
    }

    #[test]
    fn common_interest_game_is_not_conflicting() {
        let d = Dims::new(2, 2, 2, 2).unwrap();
        let pay: Vec<Rational> = d.tuples().map(|(x, y, a, b)| int(((x ^ a) + (y ^ b) + a * b) as i64)).collect();
        let g = GameSpec::new("common", d, vec![frac(1, 4); 4], pay.clone(), pay).unwrap();
        let report = g.conflict_report().unwrap();
        assert!(!report.is_conflicting);
        assert!(!report.alice_preferred.is_empty());
    }

    #[test]
    fn deviation_witnesses() {
        let g = GameSpec::builtin("game1").unwrap();
        let eq = PureProfile::parse(g.dims(), "0011").unwrap();
        assert!(g.improving_deviation(&eq).unwrap().is_none());
        let non = PureProfile::parse(g.dims(), "0000").unwrap();
        let dev = g.improving_deviation(&non).unwrap().unwrap();
        assert!(dev.gain > int(0));
    }

    #[test]
    fn cap_is_enforced() {
        let g = GameSpec::builtin("game2").unwrap();
        assert!(matches!(g.enumerate_profiles_capped(80), Err(Error::Capacity(_))));
        assert_eq!(g.enumerate_profiles_capped(81).unwrap().len(), 81);
    }
}
