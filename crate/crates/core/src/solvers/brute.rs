use std::sync::atomic::{AtomicU64, Ordering};
use std::time::Instant;

use rayon::prelude::*;

use super::{key_cmp, mask_members, mask_weight};
use crate::error::{DcsError, Result};
use crate::game::{CountingGame, Game, PlayerSet};
use crate::instance::{is_dcs, mask_membership, DcsInstance, Method, SolveReport, SolveStats};

/// Default cap on the number of subsets brute force may enumerate (`2^20`).
pub const DEFAULT_BRUTE_FORCE_BUDGET: u128 = 1 << 20;

/// Hard limit regardless of budget: subsets are stored as 64-bit masks and
/// sorted in memory.
pub const MAX_BRUTE_FORCE_PLAYERS: usize = 32;

/// Exact minimum-weight direct control set by exhaustive search.
///
/// Subsets are visited by nondecreasing weight, then cardinality, then
/// lexicographic member list, so the first feasible one is the answer and
/// ties are broken deterministically.
pub fn brute_force_min_dcs<G: Game>(
    instance: &DcsInstance<G>,
    budget: u128,
) -> Result<SolveReport> {
    let started = Instant::now();
    let n = instance.n();
    let needed = 1u128 << n.min(127);
    if n > MAX_BRUTE_FORCE_PLAYERS || needed > budget {
        return Err(DcsError::budget(
            format!("brute force over 2^{n} subsets"),
            needed,
            budget.min(1u128 << MAX_BRUTE_FORCE_PLAYERS),
        ));
    }
    let weights = instance.weights();
    let mut order: Vec<(f64, u64)> = (0..1u64 << n)
        .map(|m| (mask_weight(m, weights), m))
        .collect();
    order.par_sort_unstable_by(|a, b| key_cmp(*a, *b));

    let game = CountingGame::new(instance.game());
    let examined = AtomicU64::new(0);
    let (start, target) = (instance.start(), instance.target());
    let hit = order.par_iter().position_first(|&(_, mask)| {
        examined.fetch_add(1, Ordering::Relaxed);
        is_dcs(&game, start, target, &mask_membership(mask as u128, n))
    });
    let Some(pos) = hit else {
        return Err(DcsError::Internal(
            "the full player set must be feasible".into(),
        ));
    };
    let solution = PlayerSet::from_members(mask_members(order[pos].1), weights)?;
    let stats = SolveStats {
        oracle_calls: game.calls(),
        subsets_examined: examined.into_inner(),
        wall_time: started.elapsed(),
        exhaustive: Some(true),
    };
    SolveReport::certify(instance, solution, Method::BruteForce, stats)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::tests::two_by_two;
    use crate::game::{Profile, TableGame};

    #[test]
    fn two_by_two_needs_one_player() {
        let inst =
            DcsInstance::unit(two_by_two(), Profile(vec![0, 0]), Profile(vec![1, 1])).unwrap();
        let r = brute_force_min_dcs(&inst, DEFAULT_BRUTE_FORCE_BUDGET).unwrap();
        assert!(r.feasible);
        assert_eq!(r.weight, 1.0);
        // lexicographic tie-break
        assert_eq!(r.solution.members(), vec![0]);
        let inst = inst.with_weights(vec![3.0, 2.0]).unwrap();
        let r = brute_force_min_dcs(&inst, DEFAULT_BRUTE_FORCE_BUDGET).unwrap();
        assert_eq!(r.solution.members(), vec![1]);
    }

    #[test]
    fn weakly_dominant_target_needs_nobody() {
        // Strategy 1 is weakly dominant for both players.
        let game = TableGame::new(
            vec![2, 2],
            vec![
                vec![0.0, 0.0],
                vec![0.0, 1.0],
                vec![1.0, 0.0],
                vec![1.0, 1.0],
            ],
        )
        .unwrap();
        let inst = DcsInstance::unit(game, Profile(vec![0, 0]), Profile(vec![1, 1])).unwrap();
        let r = brute_force_min_dcs(&inst, DEFAULT_BRUTE_FORCE_BUDGET).unwrap();
        assert!(r.solution.is_empty());
        assert_eq!(r.weight, 0.0);
    }

    #[test]
    fn budget_is_enforced() {
        let inst =
            DcsInstance::unit(two_by_two(), Profile(vec![0, 0]), Profile(vec![1, 1])).unwrap();
        assert!(matches!(
            brute_force_min_dcs(&inst, 3),
            Err(DcsError::BudgetExceeded { needed: 4, .. })
        ));
    }
}
