use serde::Serialize;

use crate::error::{DcsError, Result};
use crate::game::{profile_space, Game, ProfileIter};

/// Default cap on `|S| * sum_j |S_j|` for influence discovery by perturbation.
pub const DEFAULT_PERTURBATION_BUDGET: u128 = 10_000_000;

/// For each player `i`, the players whose strategy can change `u_i`,
/// including `i` itself.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InfluenceMap {
    sets: Vec<Vec<usize>>,
}

impl InfluenceMap {
    /// Validates and normalizes externally supplied sets; each player is added
    /// to its own set.
    pub fn from_sets(mut sets: Vec<Vec<usize>>) -> Result<Self> {
        let n = sets.len();
        for (i, set) in sets.iter_mut().enumerate() {
            if let Some(&j) = set.iter().find(|&&j| j >= n) {
                return Err(DcsError::invalid(format!(
                    "influence set of {i} names player {j}"
                )));
            }
            set.push(i);
            set.sort_unstable();
            set.dedup();
        }
        Ok(InfluenceMap { sets })
    }

    /// Every player influences everyone.
    pub fn complete(n: usize) -> Self {
        InfluenceMap {
            sets: vec![(0..n).collect(); n],
        }
    }

    pub fn of(&self, player: usize) -> &[usize] {
        &self.sets[player]
    }

    pub fn sets(&self) -> &[Vec<usize>] {
        &self.sets
    }

    /// `f = max_i |N(i)|`.
    pub fn bound(&self) -> usize {
        self.sets.iter().map(Vec::len).max().unwrap_or(0)
    }
}

/// Influence sets of a game: the structural sets when the game declares them,
/// otherwise found by changing one strategy at a time over the whole profile
/// space, provided that fits `budget`.
pub fn influence_map<G: Game + ?Sized>(game: &G, budget: u128) -> Result<InfluenceMap> {
    if let Some(sets) = game.influence_sets() {
        return InfluenceMap::from_sets(sets);
    }
    let n = game.n_players();
    let counts: Vec<usize> = (0..n).map(|i| game.strategy_count(i)).collect();
    let work = profile_space(&counts)
        .and_then(|s| s.checked_mul(counts.iter().map(|&c| c as u128).sum()))
        .unwrap_or(u128::MAX);
    if work > budget {
        return Err(DcsError::Unsupported(format!(
            "influence discovery needs {work} evaluations (cap {budget}); supply the influence sets explicitly"
        )));
    }
    let mut linked = vec![vec![false; n]; n];
    for profile in ProfileIter::new(counts.clone()) {
        let base: Vec<f64> = (0..n).map(|i| game.utility(&profile, i)).collect();
        let mut p = profile.clone();
        for j in 0..n {
            for t in 0..counts[j] {
                if t == profile[j] {
                    continue;
                }
                p[j] = t;
                for i in 0..n {
                    if i != j && !linked[i][j] && game.utility(&p, i) != base[i] {
                        linked[i][j] = true;
                    }
                }
            }
            p[j] = profile[j];
        }
    }
    let sets = linked
        .into_iter()
        .enumerate()
        .map(|(i, row)| (0..n).filter(|&j| j == i || row[j]).collect())
        .collect();
    InfluenceMap::from_sets(sets)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::tests::two_by_two;
    use crate::game::TableGame;

    #[test]
    fn perturbation_finds_dependencies() {
        let m = influence_map(&two_by_two(), DEFAULT_PERTURBATION_BUDGET).unwrap();
        assert_eq!(m.sets(), &[vec![0, 1], vec![0, 1]]);
        assert_eq!(m.bound(), 2);
        // Player 0's utility ignores player 1.
        let g = TableGame::new(
            vec![2, 2],
            vec![
                vec![1.0, 0.0],
                vec![1.0, 1.0],
                vec![2.0, 0.0],
                vec![2.0, 1.0],
            ],
        )
        .unwrap();
        let m = influence_map(&g, DEFAULT_PERTURBATION_BUDGET).unwrap();
        assert_eq!(m.of(0), &[0]);
        assert_eq!(m.of(1), &[1]);
    }

    #[test]
    fn over_budget_is_unsupported() {
        assert!(matches!(
            influence_map(&two_by_two(), 3),
            Err(DcsError::Unsupported(_))
        ));
    }

    #[test]
    fn supplied_sets_contain_self() {
        let m = InfluenceMap::from_sets(vec![vec![1], vec![]]).unwrap();
        assert_eq!(m.sets(), &[vec![0, 1], vec![1]]);
        assert!(InfluenceMap::from_sets(vec![vec![2]]).is_err());
    }
}
