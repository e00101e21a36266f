use std::time::Instant;

use super::{key_cmp, mask_members};
use crate::error::{DcsError, Result};
use crate::game::{is_best_response, set_weight, CountingGame, Game, PlayerSet, TOL};
use crate::instance::{intermediate, DcsInstance, Method, SolveReport, SolveStats};

/// Largest number of distinct elements the exact hitting-set search accepts.
pub const MAX_EXACT_HITTING_ELEMENTS: usize = 20;

/// Weighted hitting set: pick elements `0..weights.len()` meeting every set.
#[derive(Clone, Debug, PartialEq)]
pub struct HittingSet {
    pub weights: Vec<f64>,
    pub sets: Vec<Vec<usize>>,
}

impl HittingSet {
    pub fn new(weights: Vec<f64>, sets: Vec<Vec<usize>>) -> Result<Self> {
        for set in &sets {
            if set.is_empty() {
                return Err(DcsError::invalid("an empty set cannot be hit"));
            }
            if let Some(&e) = set.iter().find(|&&e| e >= weights.len()) {
                return Err(DcsError::invalid(format!("element {e} out of range")));
            }
        }
        Ok(HittingSet { weights, sets })
    }

    pub fn is_hit_by(&self, chosen: &[usize]) -> bool {
        self.sets
            .iter()
            .all(|s| s.iter().any(|e| chosen.contains(e)))
    }
}

/// Greedy by weight per newly hit set, followed by dropping redundant
/// elements, heaviest first.
pub fn greedy_hitting_set(h: &HittingSet) -> Vec<usize> {
    let mut open: Vec<bool> = vec![true; h.sets.len()];
    let mut chosen: Vec<usize> = Vec::new();
    while open.iter().any(|&o| o) {
        let mut best: Option<(usize, f64)> = None;
        for e in 0..h.weights.len() {
            let hits = h
                .sets
                .iter()
                .zip(&open)
                .filter(|(s, &o)| o && s.contains(&e))
                .count();
            if hits == 0 {
                continue;
            }
            let ratio = h.weights[e] / hits as f64;
            if best.is_none_or(|(_, r)| ratio < r - TOL) {
                best = Some((e, ratio));
            }
        }
        let (e, _) = best.expect("every open set has an element");
        chosen.push(e);
        for (s, o) in h.sets.iter().zip(open.iter_mut()) {
            if s.contains(&e) {
                *o = false;
            }
        }
    }
    let mut by_weight = chosen.clone();
    by_weight.sort_by(|a, b| h.weights[*b].total_cmp(&h.weights[*a]).then(b.cmp(a)));
    for e in by_weight {
        let rest: Vec<usize> = chosen.iter().copied().filter(|&x| x != e).collect();
        if h.is_hit_by(&rest) {
            chosen = rest;
        }
    }
    chosen.sort_unstable();
    chosen
}

struct Search<'a> {
    weights: &'a [f64],
    sets: Vec<u64>,
    best: (f64, u64),
    nodes: u64,
}

impl Search<'_> {
    fn weight(&self, mask: u64) -> f64 {
        let members: Vec<usize> = mask_members(mask).collect();
        set_weight(&members, self.weights)
    }

    /// Lightest element of each pairwise-disjoint open set.
    fn packing_bound(&self, chosen: u64, excluded: u64) -> f64 {
        let mut used = 0u64;
        let mut bound = 0.0;
        for &s in &self.sets {
            if s & chosen != 0 || s & used != 0 {
                continue;
            }
            used |= s;
            bound += mask_members(s & !excluded)
                .map(|e| self.weights[e])
                .fold(f64::INFINITY, f64::min);
        }
        bound
    }

    fn run(&mut self, chosen: u64, excluded: u64) {
        self.nodes += 1;
        let w = self.weight(chosen);
        let open = self
            .sets
            .iter()
            .copied()
            .filter(|&s| s & chosen == 0)
            .min_by_key(|&s| ((s & !excluded).count_ones(), s.trailing_zeros()));
        let Some(set) = open else {
            if key_cmp((w, chosen), self.best).is_lt() {
                self.best = (w, chosen);
            }
            return;
        };
        if w + self.packing_bound(chosen, excluded) > self.best.0 + TOL {
            return;
        }
        let mut excluded = excluded;
        for e in mask_members(set & !excluded) {
            self.run(chosen | 1 << e, excluded);
            excluded |= 1 << e;
        }
    }
}

/// Exact minimum-weight hitting set by branch and bound, ties broken by size
/// and then lexicographically. Refuses more than
/// [`MAX_EXACT_HITTING_ELEMENTS`] distinct elements.
pub fn exact_hitting_set(h: &HittingSet) -> Result<Vec<usize>> {
    let mut elements: Vec<usize> = h.sets.iter().flatten().copied().collect();
    elements.sort_unstable();
    elements.dedup();
    if elements.len() > MAX_EXACT_HITTING_ELEMENTS {
        return Err(DcsError::budget(
            format!("exact hitting set over {} elements", elements.len()),
            1u128 << elements.len().min(127),
            1u128 << MAX_EXACT_HITTING_ELEMENTS,
        ));
    }
    // Relabelling in increasing order keeps the lexicographic tie-break.
    let local = |e: usize| elements.binary_search(&e).unwrap();
    let weights: Vec<f64> = elements.iter().map(|&e| h.weights[e]).collect();
    let sets: Vec<u64> = h
        .sets
        .iter()
        .map(|s| s.iter().fold(0u64, |m, &e| m | 1 << local(e)))
        .collect();
    let greedy = greedy_hitting_set(h);
    let start_mask = greedy.iter().fold(0u64, |m, &e| m | 1 << local(e));
    let mut search = Search {
        weights: &weights,
        sets,
        best: (f64::INFINITY, u64::MAX),
        nodes: 0,
    };
    search.best = (search.weight(start_mask), start_mask);
    search.run(0, 0);
    Ok(mask_members(search.best.1).map(|e| elements[e]).collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum HittingMode {
    /// Exact when the collection is small enough, greedy otherwise.
    #[default]
    Auto,
    Greedy,
    Exact,
}

/// Minimum-weight direct control set when every minimal set controlling a
/// single player is one player.
///
/// For each player `i` not already at its target as a best response in `s`,
/// the candidates are `i` itself and every `j` such that `{j}` alone brings
/// `i` to its target; the answer is a hitting set of these candidate sets.
/// With `checked`, every pair of non-candidates is also tested and a pair
/// that controls `i` is reported as a violated precondition.
pub fn singleton_hitting_min_dcs<G: Game>(
    instance: &DcsInstance<G>,
    mode: HittingMode,
    checked: bool,
) -> Result<SolveReport> {
    let started = Instant::now();
    let n = instance.n();
    let game = CountingGame::new(instance.game());
    let (start, target) = (instance.start(), instance.target());
    let controls = |inside: &[usize], player: usize| -> bool {
        let mut mask = vec![false; n];
        for &p in inside {
            mask[p] = true;
        }
        let mut profile = intermediate(start, target, &mask);
        is_best_response(&game, &mut profile, player, target[player])
    };
    let mut collection = Vec::new();
    for i in 0..n {
        if controls(&[], i) {
            continue;
        }
        let mut candidates: Vec<usize> = (0..n).filter(|&j| j != i && controls(&[j], i)).collect();
        if checked {
            let others: Vec<usize> = (0..n)
                .filter(|&j| j != i && !candidates.contains(&j))
                .collect();
            for (a, &j) in others.iter().enumerate() {
                for &k in &others[a + 1..] {
                    if controls(&[j, k], i) {
                        return Err(DcsError::PreconditionViolated(format!(
                            "player {i} is controlled by {{{j},{k}}} but by neither alone"
                        )));
                    }
                }
            }
        }
        candidates.push(i);
        candidates.sort_unstable();
        collection.push(candidates);
    }
    let sets_count = collection.len();
    let h = HittingSet::new(instance.weights().to_vec(), collection)?;
    let distinct = {
        let mut e: Vec<usize> = h.sets.iter().flatten().copied().collect();
        e.sort_unstable();
        e.dedup();
        e.len()
    };
    let exact = match mode {
        HittingMode::Greedy => false,
        HittingMode::Exact => true,
        HittingMode::Auto => distinct <= MAX_EXACT_HITTING_ELEMENTS,
    };
    let (chosen, method) = if exact {
        (exact_hitting_set(&h)?, Method::SingletonHittingExact)
    } else {
        (greedy_hitting_set(&h), Method::SingletonHittingGreedy)
    };
    let solution = PlayerSet::from_members(chosen, instance.weights())?;
    let stats = SolveStats {
        oracle_calls: game.calls(),
        subsets_examined: sets_count as u64,
        wall_time: started.elapsed(),
        exhaustive: Some(exact),
    };
    let report = SolveReport::certify(instance, solution, method, stats)?;
    if !report.feasible {
        return Err(DcsError::PreconditionViolated(format!(
            "the hitting set {} does not control all players together; per-player control is not monotone",
            report.solution
        )));
    }
    Ok(report.with_note(format!("sets={sets_count}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn forced_and_shared_elements() {
        let h = HittingSet::new(vec![1.0; 3], vec![vec![0, 1], vec![1, 2]]).unwrap();
        assert_eq!(exact_hitting_set(&h).unwrap(), vec![1]);
        assert_eq!(greedy_hitting_set(&h), vec![1]);
        let h = HittingSet::new(vec![1.0; 3], vec![vec![2]]).unwrap();
        assert_eq!(exact_hitting_set(&h).unwrap(), vec![2]);
        let h = HittingSet::new(vec![1.0; 3], vec![]).unwrap();
        assert!(exact_hitting_set(&h).unwrap().is_empty());
    }

    #[test]
    fn exact_beats_greedy_trap() {
        // Greedy takes the element hitting three sets; two cheap ones suffice.
        let h = HittingSet::new(
            vec![1.0, 1.0, 2.5],
            vec![vec![0, 2], vec![0, 2], vec![1, 2], vec![1, 2]],
        )
        .unwrap();
        assert_eq!(exact_hitting_set(&h).unwrap(), vec![0, 1]);
    }

    #[test]
    fn exact_matches_enumeration() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..200 {
            let k = rng.gen_range(1..=7);
            let weights: Vec<f64> = (0..k).map(|_| rng.gen_range(0..4) as f64).collect();
            let sets: Vec<Vec<usize>> = (0..rng.gen_range(0..6))
                .map(|_| {
                    let mut s: Vec<usize> = (0..k).filter(|_| rng.gen_bool(0.4)).collect();
                    if s.is_empty() {
                        s.push(rng.gen_range(0..k));
                    }
                    s
                })
                .collect();
            let h = HittingSet::new(weights.clone(), sets).unwrap();
            let best = (0u64..1 << k)
                .filter(|&m| h.is_hit_by(&mask_members(m).collect::<Vec<_>>()))
                .map(|m| set_weight(&mask_members(m).collect::<Vec<_>>(), &weights))
                .fold(f64::INFINITY, f64::min);
            let got = exact_hitting_set(&h).unwrap();
            assert!(h.is_hit_by(&got));
            assert_eq!(set_weight(&got, &weights), best);
            let greedy = greedy_hitting_set(&h);
            assert!(h.is_hit_by(&greedy));
        }
    }
}
