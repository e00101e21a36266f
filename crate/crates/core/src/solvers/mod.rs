//! General-purpose solvers for minimum-weight direct control sets.

mod brute;
mod hitting;
mod incremental;
mod influence;
mod local_ratio;

pub use brute::{brute_force_min_dcs, DEFAULT_BRUTE_FORCE_BUDGET, MAX_BRUTE_FORCE_PLAYERS};
pub use hitting::{
    exact_hitting_set, greedy_hitting_set, singleton_hitting_min_dcs, HittingMode, HittingSet,
    MAX_EXACT_HITTING_ELEMENTS,
};
pub use incremental::{incremental_min_dcs, DEFAULT_ORDERING_BUDGET};
pub use influence::{influence_map, InfluenceMap, DEFAULT_PERTURBATION_BUDGET};
pub use local_ratio::{
    local_ratio_dcs, local_ratio_trace, player_wise_monotone_sampled, LocalRatioTrace, Peel,
};

use std::cmp::Ordering;

use crate::game::set_weight;

/// Members of a bit mask in increasing order.
pub(crate) fn mask_members(mask: u64) -> impl Iterator<Item = usize> {
    (0..64).filter(move |&i| mask >> i & 1 == 1)
}

pub(crate) fn mask_weight(mask: u64, weights: &[f64]) -> f64 {
    let members: Vec<usize> = mask_members(mask).collect();
    set_weight(&members, weights)
}

/// Lexicographic order on the sorted member lists of two equal-size masks:
/// the set holding the smallest element of the symmetric difference is first.
pub(crate) fn lex_cmp(a: u64, b: u64) -> Ordering {
    let diff = a ^ b;
    if diff == 0 {
        return Ordering::Equal;
    }
    let low = diff & diff.wrapping_neg();
    if a & low != 0 {
        Ordering::Less
    } else {
        Ordering::Greater
    }
}

/// Tie-breaking order shared by all solvers: weight, then size, then members.
pub(crate) fn key_cmp(a: (f64, u64), b: (f64, u64)) -> Ordering {
    a.0.total_cmp(&b.0)
        .then(a.1.count_ones().cmp(&b.1.count_ones()))
        .then_with(|| lex_cmp(a.1, b.1))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lex_order_on_masks() {
        // {0,3} < {1,2}
        assert_eq!(lex_cmp(0b1001, 0b0110), Ordering::Less);
        assert_eq!(lex_cmp(0b0110, 0b1001), Ordering::Greater);
        assert_eq!(lex_cmp(5, 5), Ordering::Equal);
        assert_eq!(key_cmp((1.0, 0b100), (1.0, 0b011)), Ordering::Less);
        assert_eq!(key_cmp((2.0, 0b1), (1.0, 0b11)), Ordering::Greater);
    }
}
