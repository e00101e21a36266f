use std::collections::{HashMap, HashSet};
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{key_cmp, mask_members, mask_weight};
use crate::error::{DcsError, Result};
use crate::game::{CountingGame, Game, PlayerSet};
use crate::instance::{is_dcs, mask_membership, DcsInstance, Method, SolveReport, SolveStats};

/// Default number of orderings tried when the players cannot all be ordered
/// exhaustively.
pub const DEFAULT_ORDERING_BUDGET: u64 = 40_320;

fn factorial(n: usize) -> Option<u128> {
    (1..=n as u128).try_fold(1u128, |acc, k| acc.checked_mul(k))
}

/// Grows a set one player at a time along player orderings, stopping at the
/// first feasible prefix, and keeps the lightest set seen.
///
/// With `ordering_budget >= n!` every ordering is covered. That case is
/// computed over the subset lattice instead of the `n!` orderings: a set is
/// the first feasible prefix of some ordering exactly when it is feasible and
/// reachable from the empty set through infeasible sets one player at a time.
/// Otherwise `ordering_budget` orderings are drawn from a generator seeded
/// with `seed`.
pub fn incremental_min_dcs<G: Game>(
    instance: &DcsInstance<G>,
    ordering_budget: u64,
    seed: u64,
) -> Result<SolveReport> {
    let started = Instant::now();
    let n = instance.n();
    if n > 64 {
        return Err(DcsError::Unsupported(
            "incremental search supports at most 64 players".into(),
        ));
    }
    let game = CountingGame::new(instance.game());
    let (start, target, weights) = (instance.start(), instance.target(), instance.weights());
    let mut memo: HashMap<u64, bool> = HashMap::new();
    let mut feasible = |mask: u64| -> bool {
        *memo
            .entry(mask)
            .or_insert_with(|| is_dcs(&game, start, target, &mask_membership(mask as u128, n)))
    };
    let exhaustive = factorial(n).is_some_and(|f| f <= ordering_budget as u128);
    let mut best: Option<(f64, u64)> = None;
    let consider = |mask: u64, best: &mut Option<(f64, u64)>| {
        let key = (mask_weight(mask, weights), mask);
        if best.is_none_or(|b| key_cmp(key, b).is_lt()) {
            *best = Some(key);
        }
    };
    let orderings_tried;
    if exhaustive {
        let mut seen = HashSet::new();
        let mut stack = vec![0u64];
        while let Some(mask) = stack.pop() {
            if !seen.insert(mask) {
                continue;
            }
            // Supersets are never lighter, smaller or earlier than `best`.
            if let Some(b) = best {
                if key_cmp((mask_weight(mask, weights), mask), b).is_ge() {
                    continue;
                }
            }
            if feasible(mask) {
                consider(mask, &mut best);
                continue;
            }
            stack.extend(
                (0..n)
                    .filter(|&j| mask >> j & 1 == 0)
                    .map(|j| mask | 1 << j),
            );
        }
        orderings_tried = factorial(n).map_or(u64::MAX, |f| f.min(u64::MAX as u128) as u64);
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut order: Vec<usize> = (0..n).collect();
        for _ in 0..ordering_budget.max(1) {
            order.shuffle(&mut rng);
            let mut mask = 0u64;
            let mut prefix = order.iter();
            while !feasible(mask) {
                match prefix.next() {
                    Some(&p) => mask |= 1 << p,
                    None => {
                        return Err(DcsError::Internal(
                            "the full player set must be feasible".into(),
                        ))
                    }
                }
            }
            consider(mask, &mut best);
        }
        orderings_tried = ordering_budget.max(1);
    }
    let (_, mask) = best.ok_or_else(|| DcsError::Internal("no ordering produced a set".into()))?;
    let subsets_examined = memo.len() as u64;
    let solution = PlayerSet::from_members(mask_members(mask), weights)?;
    let stats = SolveStats {
        oracle_calls: game.calls(),
        subsets_examined,
        wall_time: started.elapsed(),
        exhaustive: Some(exhaustive),
    };
    Ok(
        SolveReport::certify(instance, solution, Method::Incremental, stats)?
            .with_note(format!("orderings={orderings_tried}")),
    )
}

/// Every ordering of `0..n`, for cross-checking the lattice search.
#[cfg(test)]
pub(crate) fn first_feasible_prefixes<G: Game>(instance: &DcsInstance<G>) -> Vec<Vec<usize>> {
    use itertools::Itertools;
    let n = instance.n();
    (0..n)
        .permutations(n)
        .map(|order| {
            let mut inside = vec![false; n];
            let mut k = 0;
            while !is_dcs(
                instance.game(),
                instance.start(),
                instance.target(),
                &inside,
            ) {
                inside[order[k]] = true;
                k += 1;
            }
            let mut set = order[..k].to_vec();
            set.sort_unstable();
            set
        })
        .unique()
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::tests::two_by_two;
    use crate::game::Profile;
    use crate::solvers::brute_force_min_dcs;

    #[test]
    fn lattice_search_matches_permutations() {
        let inst = DcsInstance::new(
            two_by_two(),
            Profile(vec![0, 0]),
            Profile(vec![1, 1]),
            vec![2.0, 1.0],
        )
        .unwrap();
        let r = incremental_min_dcs(&inst, 2, 0).unwrap();
        assert_eq!(r.stats.exhaustive, Some(true));
        assert_eq!(r.solution.members(), vec![1]);
        let best = first_feasible_prefixes(&inst)
            .into_iter()
            .map(|s| crate::game::set_weight(&s, inst.weights()))
            .fold(f64::INFINITY, f64::min);
        assert_eq!(best, r.weight);
        let exact = brute_force_min_dcs(&inst, 1 << 10).unwrap();
        assert!(r.weight >= exact.weight);
    }

    #[test]
    fn sampled_orderings_are_seeded() {
        let inst =
            DcsInstance::unit(two_by_two(), Profile(vec![0, 0]), Profile(vec![1, 1])).unwrap();
        let a = incremental_min_dcs(&inst, 1, 7).unwrap();
        let b = incremental_min_dcs(&inst, 1, 7).unwrap();
        assert_eq!(a.solution, b.solution);
        assert_eq!(a.stats.exhaustive, Some(false));
        assert!(a.feasible);
    }

    #[test]
    fn feasible_empty_set_is_returned() {
        let inst =
            DcsInstance::unit(two_by_two(), Profile(vec![1, 1]), Profile(vec![1, 1])).unwrap();
        let r = incremental_min_dcs(&inst, 100, 0).unwrap();
        assert!(r.solution.is_empty());
    }
}
