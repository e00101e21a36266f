//! Independent oracles shared by the integration tests. They only use the
//! definitional checks on an instance, never a solver.

#![allow(dead_code)]

use dcs::{DcsInstance, Game, Graph, PlayerSet};

pub fn members(mask: u64, n: usize) -> Vec<usize> {
    (0..n).filter(|i| mask >> i & 1 == 1).collect()
}

/// Lightest feasible set by plain enumeration (weight, then size).
pub fn exhaustive_min_dcs<G: Game>(instance: &DcsInstance<G>) -> (f64, usize) {
    let n = instance.n();
    let mut best = (f64::INFINITY, usize::MAX);
    for mask in 0u64..1 << n {
        let set = instance.player_set(members(mask, n)).unwrap();
        let key = (set.weight(), set.len());
        if (key.0 < best.0 - 1e-9 || ((key.0 - best.0).abs() <= 1e-9 && key.1 < best.1))
            && instance.is_direct_control_set(&set).unwrap()
        {
            best = key;
        }
    }
    best
}

/// Smallest number of players that forms a direct control set.
pub fn exhaustive_min_size<G: Game>(instance: &DcsInstance<G>) -> usize {
    let n = instance.n();
    (0u64..1 << n)
        .filter(|&mask| {
            let set = PlayerSet::from_members(members(mask, n), instance.weights()).unwrap();
            instance.is_direct_control_set(&set).unwrap()
        })
        .map(|mask| mask.count_ones() as usize)
        .min()
        .unwrap()
}

/// Closed neighbourhood bitmasks.
fn closed_masks(g: &Graph) -> Vec<u64> {
    (0..g.n())
        .map(|v| {
            g.neighbors(v)
                .iter()
                .fold(1u64 << v, |acc, &u| acc | 1 << u)
        })
        .collect()
}

pub fn domination_number(g: &Graph) -> usize {
    let closed = closed_masks(g);
    let full = (1u64 << g.n()) - 1;
    (0u64..=full)
        .filter(|&mask| {
            members(mask, g.n())
                .iter()
                .fold(0, |acc, &v| acc | closed[v])
                == full
        })
        .map(|mask| mask.count_ones() as usize)
        .min()
        .unwrap()
}

/// True when every set that makes player `i` prefer its target contains `i`
/// or some single player that does so alone.
pub fn singletons_suffice<G: Game>(inst: &DcsInstance<G>) -> bool {
    let n = inst.n();
    let controls = |mask: u64, i: usize| {
        let set = inst.player_set(members(mask, n)).unwrap();
        let p = inst.intermediate_profile(&set).unwrap();
        dcs::game::best_responses(inst.game(), &p, i)
            .unwrap()
            .contains(&inst.target()[i])
    };
    (0..n).all(|i| {
        if controls(0, i) {
            return true;
        }
        let singles: u64 = (0..n)
            .filter(|&j| controls(1 << j, i))
            .fold(0, |m, j| m | 1 << j);
        (0..1u64 << n).all(|mask| mask & (singles | 1 << i) != 0 || !controls(mask, i))
    })
}
