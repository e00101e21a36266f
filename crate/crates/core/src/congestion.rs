//! Congestion games: players choose sets of resources and pay the sum of the
//! resource costs at the resulting loads.
//!
//! Singleton games (one resource per strategy) get the structural tools:
//! attraction basins, the size bound, the general-position and
//! cost-monotonicity validators, and the exact candidate-structure solver.
//! Symmetric games with strictly decreasing costs get the size-only solver.

use std::time::Instant;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{DcsError, Result};
use crate::game::{
    best_responses, is_nash_unchecked, profile_space, CountingGame, Game, PlayerSet, Profile,
    ProfileIter, StructureTag, TOL,
};
use crate::instance::{is_dcs, DcsInstance, Method, SolveReport, SolveStats};

/// A congestion game with cost tables: `costs[r][x - 1]` is the cost of
/// resource `r` at load `x`, for `x` in `1..=n`. Utilities are negated costs.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "CongestionRepr", into = "CongestionRepr")]
pub struct CongestionGame {
    resources: usize,
    strategies: Vec<Vec<Vec<usize>>>,
    costs: Vec<Vec<f64>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CongestionRepr {
    resources: usize,
    strategies: Vec<Vec<Vec<usize>>>,
    costs: Vec<Vec<f64>>,
}

impl TryFrom<CongestionRepr> for CongestionGame {
    type Error = DcsError;
    fn try_from(r: CongestionRepr) -> Result<Self> {
        CongestionGame::new(r.resources, r.strategies, r.costs)
    }
}

impl From<CongestionGame> for CongestionRepr {
    fn from(g: CongestionGame) -> Self {
        CongestionRepr {
            resources: g.resources,
            strategies: g.strategies,
            costs: g.costs,
        }
    }
}

fn validate_costs(resources: usize, n: usize, costs: &[Vec<f64>]) -> Result<()> {
    if costs.len() != resources {
        return Err(DcsError::invalid(format!(
            "{} cost tables for {resources} resources",
            costs.len()
        )));
    }
    for (r, table) in costs.iter().enumerate() {
        if table.len() != n {
            return Err(DcsError::invalid(format!(
                "cost table of resource {r} has {} entries, expected one per load 1..={n}",
                table.len()
            )));
        }
        if table.iter().any(|c| !c.is_finite()) {
            return Err(DcsError::invalid(format!(
                "cost table of resource {r} is not finite"
            )));
        }
    }
    Ok(())
}

impl CongestionGame {
    pub fn new(
        resources: usize,
        strategies: Vec<Vec<Vec<usize>>>,
        costs: Vec<Vec<f64>>,
    ) -> Result<Self> {
        let n = strategies.len();
        if n == 0 || resources == 0 {
            return Err(DcsError::invalid(
                "a congestion game needs players and resources",
            ));
        }
        let mut normalized = Vec::with_capacity(n);
        for (i, list) in strategies.into_iter().enumerate() {
            if list.is_empty() {
                return Err(DcsError::invalid(format!("player {i} has no strategy")));
            }
            let mut out = Vec::with_capacity(list.len());
            for mut s in list {
                s.sort_unstable();
                s.dedup();
                if s.is_empty() {
                    return Err(DcsError::invalid(format!(
                        "player {i} has an empty strategy"
                    )));
                }
                if let Some(&r) = s.iter().find(|&&r| r >= resources) {
                    return Err(DcsError::invalid(format!(
                        "player {i} uses unknown resource {r}"
                    )));
                }
                out.push(s);
            }
            normalized.push(out);
        }
        validate_costs(resources, n, &costs)?;
        Ok(CongestionGame {
            resources,
            strategies: normalized,
            costs,
        })
    }

    /// Every player has the same strategy list.
    pub fn symmetric(
        n: usize,
        resources: usize,
        strategies: Vec<Vec<usize>>,
        costs: Vec<Vec<f64>>,
    ) -> Result<Self> {
        CongestionGame::new(resources, vec![strategies; n], costs)
    }

    pub fn resources(&self) -> usize {
        self.resources
    }

    pub fn strategies(&self) -> &[Vec<Vec<usize>>] {
        &self.strategies
    }

    pub fn costs(&self) -> &[Vec<f64>] {
        &self.costs
    }

    /// `c_r(x)` for `x >= 1`.
    pub fn cost(&self, resource: usize, load: usize) -> f64 {
        self.costs[resource][load - 1]
    }

    pub fn loads(&self, profile: &[usize]) -> Vec<usize> {
        let mut loads = vec![0; self.resources];
        for (i, &k) in profile.iter().enumerate() {
            for &r in &self.strategies[i][k] {
                loads[r] += 1;
            }
        }
        loads
    }

    pub fn is_symmetric(&self) -> bool {
        self.strategies.iter().all_equal()
    }

    /// Each strategy is a single resource.
    pub fn is_singleton(&self) -> bool {
        self.strategies.iter().flatten().all(|s| s.len() == 1)
    }

    fn reachable(&self, player: usize) -> Vec<usize> {
        self.strategies[player]
            .iter()
            .flatten()
            .copied()
            .sorted()
            .dedup()
            .collect()
    }
}

impl Game for CongestionGame {
    fn n_players(&self) -> usize {
        self.strategies.len()
    }
    fn strategy_count(&self, player: usize) -> usize {
        self.strategies[player].len()
    }
    fn utility(&self, profile: &[usize], player: usize) -> f64 {
        let loads = self.loads(profile);
        -self.strategies[player][profile[player]]
            .iter()
            .map(|&r| self.cost(r, loads[r]))
            .sum::<f64>()
    }
    fn structure(&self) -> StructureTag {
        StructureTag::Congestion
    }
    /// Players that can share a resource.
    fn influence_sets(&self) -> Option<Vec<Vec<usize>>> {
        let reach: Vec<Vec<usize>> = (0..self.n_players()).map(|i| self.reachable(i)).collect();
        Some(
            (0..reach.len())
                .map(|i| {
                    (0..reach.len())
                        .filter(|&j| {
                            j == i || reach[j].iter().any(|r| reach[i].binary_search(r).is_ok())
                        })
                        .collect()
                })
                .collect(),
        )
    }
}

/// A congestion game in which every strategy is one resource. Strategy `k` of
/// player `i` is resource `allowed[i][k]`.
#[derive(Clone, Debug, PartialEq)]
pub struct SingletonCongestionGame {
    allowed: Vec<Vec<usize>>,
    costs: Vec<Vec<f64>>,
}

impl SingletonCongestionGame {
    pub fn new(allowed: Vec<Vec<usize>>, costs: Vec<Vec<f64>>) -> Result<Self> {
        let resources = costs.len();
        let as_sets = allowed
            .iter()
            .map(|l| l.iter().map(|&r| vec![r]).collect())
            .collect();
        CongestionGame::new(resources, as_sets, costs.clone())?;
        for (i, list) in allowed.iter().enumerate() {
            if !list.iter().all_unique() {
                return Err(DcsError::invalid(format!(
                    "player {i} lists a resource twice"
                )));
            }
        }
        Ok(SingletonCongestionGame { allowed, costs })
    }

    /// Every player may use every resource; strategy index equals resource.
    pub fn full(n: usize, costs: Vec<Vec<f64>>) -> Result<Self> {
        let m = costs.len();
        SingletonCongestionGame::new(vec![(0..m).collect(); n], costs)
    }

    pub fn from_congestion(game: &CongestionGame) -> Result<Self> {
        if !game.is_singleton() {
            return Err(DcsError::Unsupported(
                "some strategy uses more than one resource".into(),
            ));
        }
        let allowed = game
            .strategies
            .iter()
            .map(|l| l.iter().map(|s| s[0]).collect())
            .collect();
        SingletonCongestionGame::new(allowed, game.costs.clone())
    }

    pub fn to_congestion(&self) -> CongestionGame {
        let strategies = self
            .allowed
            .iter()
            .map(|l| l.iter().map(|&r| vec![r]).collect())
            .collect();
        CongestionGame::new(self.costs.len(), strategies, self.costs.clone())
            .expect("validated on construction")
    }

    pub fn resources(&self) -> usize {
        self.costs.len()
    }

    pub fn allowed(&self) -> &[Vec<usize>] {
        &self.allowed
    }

    pub fn costs(&self) -> &[Vec<f64>] {
        &self.costs
    }

    pub fn cost(&self, resource: usize, load: usize) -> f64 {
        self.costs[resource][load - 1]
    }

    pub fn resource(&self, player: usize, strategy: usize) -> usize {
        self.allowed[player][strategy]
    }

    pub fn strategy_for(&self, player: usize, resource: usize) -> Option<usize> {
        self.allowed[player].iter().position(|&r| r == resource)
    }

    /// Resource chosen by each player.
    pub fn assignment(&self, profile: &[usize]) -> Vec<usize> {
        profile
            .iter()
            .enumerate()
            .map(|(i, &k)| self.allowed[i][k])
            .collect()
    }

    /// Translates per-player resources into a profile.
    pub fn profile_from_resources(&self, resources: &[usize]) -> Result<Profile> {
        if resources.len() != self.allowed.len() {
            return Err(DcsError::invalid("one resource per player expected"));
        }
        resources
            .iter()
            .enumerate()
            .map(|(i, &r)| {
                self.strategy_for(i, r)
                    .ok_or_else(|| DcsError::invalid(format!("player {i} cannot use resource {r}")))
            })
            .collect::<Result<Vec<_>>>()
            .map(Profile)
    }

    pub fn loads(&self, profile: &[usize]) -> Vec<usize> {
        let mut loads = vec![0; self.resources()];
        for (i, &k) in profile.iter().enumerate() {
            loads[self.allowed[i][k]] += 1;
        }
        loads
    }

    /// Players on `resource` in `profile`.
    pub fn players_on(&self, profile: &[usize], resource: usize) -> Vec<usize> {
        (0..profile.len())
            .filter(|&i| self.allowed[i][profile[i]] == resource)
            .collect()
    }

    pub fn has_full_strategy_sets(&self) -> bool {
        let m = self.resources();
        self.allowed.iter().all(|l| l.len() == m)
    }

    pub fn has_nondecreasing_costs(&self) -> bool {
        self.costs
            .iter()
            .all(|t| t.windows(2).all(|w| w[0] <= w[1]))
    }
}

impl Game for SingletonCongestionGame {
    fn n_players(&self) -> usize {
        self.allowed.len()
    }
    fn strategy_count(&self, player: usize) -> usize {
        self.allowed[player].len()
    }
    fn utility(&self, profile: &[usize], player: usize) -> f64 {
        let r = self.allowed[player][profile[player]];
        let load = (0..profile.len())
            .filter(|&j| self.allowed[j][profile[j]] == r)
            .count();
        -self.cost(r, load)
    }
    fn structure(&self) -> StructureTag {
        StructureTag::SingletonCongestion
    }
    fn influence_sets(&self) -> Option<Vec<Vec<usize>>> {
        let n = self.allowed.len();
        Some(
            (0..n)
                .map(|i| {
                    (0..n)
                        .filter(|&j| {
                            j == i || self.allowed[j].iter().any(|r| self.allowed[i].contains(r))
                        })
                        .collect()
                })
                .collect(),
        )
    }
}

/// Resources some player would move to, with their common entry cost.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AttractionBasin {
    pub resources: Vec<usize>,
    /// `c_r(l_r + 1)`, equal for every basin resource.
    pub entry_cost: Option<f64>,
}

/// Union over players of their best-response resources other than the
/// current one.
///
/// Errors when basin resources have different entry costs. With full strategy
/// sets and nondecreasing costs that cannot happen, so it is reported as an
/// internal error there and as a violated precondition otherwise.
pub fn attraction_basin(
    game: &SingletonCongestionGame,
    profile: &[usize],
) -> Result<AttractionBasin> {
    let loads = game.loads(profile);
    let mut basin = Vec::new();
    for i in 0..game.n_players() {
        let current = game.resource(i, profile[i]);
        for b in best_responses(game, profile, i)? {
            let r = game.resource(i, b);
            if r != current {
                basin.push(r);
            }
        }
    }
    basin.sort_unstable();
    basin.dedup();
    let entry: Vec<f64> = basin.iter().map(|&r| game.cost(r, loads[r] + 1)).collect();
    if let Some((a, b)) = entry
        .iter()
        .tuple_combinations()
        .find(|(a, b)| (*a - *b).abs() > TOL)
    {
        let msg = format!("attraction basin {basin:?} has unequal entry costs {a} and {b}");
        return Err(
            if game.has_full_strategy_sets() && game.has_nondecreasing_costs() {
                DcsError::Internal(msg)
            } else {
                DcsError::PreconditionViolated(msg)
            },
        );
    }
    Ok(AttractionBasin {
        entry_cost: entry.first().copied(),
        resources: basin,
    })
}

/// `floor(n - n/m)`, computed as `(n*m - n) / m`.
pub fn dcs_size_upper_bound(game: &SingletonCongestionGame) -> usize {
    let (n, m) = (game.n_players(), game.resources());
    (n * m - n) / m
}

/// Two resources sharing a cost value: `c_q(x) = c_r(y)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CostCollision {
    pub q: usize,
    pub x: usize,
    pub r: usize,
    pub y: usize,
}

/// Sufficient check for general position: no two distinct resources share a
/// cost value at any loads. Returns the first collision found.
pub fn general_position_check(
    game: &SingletonCongestionGame,
) -> std::result::Result<(), CostCollision> {
    let n = game.n_players();
    for (q, r) in (0..game.resources()).tuple_combinations() {
        for x in 1..=n {
            for y in 1..=n {
                if (game.cost(q, x) - game.cost(r, y)).abs() <= TOL {
                    return Err(CostCollision { q, x, r, y });
                }
            }
        }
    }
    Ok(())
}

/// Exact general position: every profile's attraction basin has at most one
/// resource. Enumerates the profile space, bounded by `budget`.
pub fn general_position_exact(game: &SingletonCongestionGame, budget: u128) -> Result<bool> {
    let counts: Vec<usize> = (0..game.n_players())
        .map(|i| game.strategy_count(i))
        .collect();
    let space = profile_space(&counts).unwrap_or(u128::MAX);
    if space > budget {
        return Err(DcsError::budget(
            "general position over all profiles",
            space,
            budget,
        ));
    }
    for p in ProfileIter::new(counts) {
        match attraction_basin(game, &p) {
            Ok(b) if b.resources.len() > 1 => return Ok(false),
            Ok(_) => {}
            // Unequal entry costs mean two basin resources.
            Err(DcsError::PreconditionViolated(_)) => return Ok(false),
            Err(e) => return Err(e),
        }
    }
    Ok(true)
}

/// The monotone-costs condition at a target equilibrium `d`: for all
/// resources `q != r`, `c_q(l_q + 1) > c_r(l_r)` implies
/// `c_q(l_q) > c_r(l_r - 1)`, loads taken at `d`.
///
/// A cost at load zero counts as minus infinity; pairs where `q` is empty in
/// `d` are vacuous.
pub fn cost_monotonicity_check(game: &SingletonCongestionGame, target: &[usize]) -> Result<bool> {
    crate::game::validate_profile(game, target)?;
    if !is_nash_unchecked(game, target) {
        return Err(DcsError::PreconditionViolated(format!(
            "{} is not a Nash equilibrium",
            Profile(target.to_vec())
        )));
    }
    let loads = game.loads(target);
    let n = game.n_players();
    let cost = |r: usize, x: usize| {
        if x == 0 {
            f64::NEG_INFINITY
        } else {
            game.cost(r, x)
        }
    };
    for (q, r) in (0..game.resources()).cartesian_product(0..game.resources()) {
        let (lq, lr) = (loads[q], loads[r]);
        if q == r || lq == 0 || lq >= n {
            continue;
        }
        let antecedent = cost(q, lq + 1) > cost(r, lr) + TOL;
        let consequent = lr <= 1 || cost(q, lq) > cost(r, lr - 1) + TOL;
        if antecedent && !consequent {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Exact minimum-size direct control set of a singleton congestion game in
/// general position satisfying [`cost_monotonicity_check`], with `s` and `d` Nash.
///
/// Candidates: all movers; and, for every resource `r`, the movers whose
/// target is not `r`, plus none, one or all of the movers whose target is
/// `r`, plus every non-mover left without its target as a best response.
/// Each candidate is verified and the smallest feasible one wins (ties by
/// weight, then members).
pub fn singleton_min_dcs(instance: &DcsInstance<SingletonCongestionGame>) -> Result<SolveReport> {
    let started = Instant::now();
    let game = instance.game();
    if let Err(c) = general_position_check(game) {
        return Err(DcsError::PreconditionViolated(format!(
            "not in general position: c_{}({}) = c_{}({})",
            c.q, c.x, c.r, c.y
        )));
    }
    if !cost_monotonicity_check(game, instance.target())? {
        return Err(DcsError::PreconditionViolated(
            "the target violates the cost-monotonicity condition".into(),
        ));
    }
    if !is_nash_unchecked(game, instance.start()) {
        return Err(DcsError::PreconditionViolated(
            "the start profile is not a Nash equilibrium".into(),
        ));
    }
    let n = game.n_players();
    let counting = CountingGame::new(game);
    let (start, target) = (instance.start(), instance.target());
    let from = game.assignment(start);
    let to = game.assignment(target);
    let movers: Vec<usize> = (0..n).filter(|&i| from[i] != to[i]).collect();

    let mut candidates: Vec<Vec<bool>> = Vec::new();
    let mut full = vec![false; n];
    for &i in &movers {
        full[i] = true;
    }
    candidates.push(full);
    for r in 0..game.resources() {
        let entering: Vec<usize> = movers.iter().copied().filter(|&i| to[i] == r).collect();
        let mut base = vec![false; n];
        for &i in movers.iter().filter(|&&i| to[i] != r) {
            base[i] = true;
        }
        let mut options: Vec<Vec<usize>> = vec![Vec::new()];
        options.extend(entering.iter().map(|&i| vec![i]));
        if entering.len() > 1 {
            options.push(entering.clone());
        }
        for extra in options {
            let mut inside = base.clone();
            for i in extra {
                inside[i] = true;
            }
            // Non-movers play the same strategy either way; add those that
            // would otherwise leave.
            let profile = crate::instance::intermediate(start, target, &inside);
            let mut scratch = profile.clone();
            for i in 0..n {
                if !inside[i]
                    && from[i] == to[i]
                    && !crate::game::is_best_response(&counting, &mut scratch, i, target[i])
                {
                    inside[i] = true;
                }
            }
            candidates.push(inside);
        }
    }
    candidates.sort();
    candidates.dedup();
    let examined = candidates.len() as u64;
    let weights = instance.weights();
    let best = candidates
        .into_iter()
        .filter(|inside| {
            let ok = is_dcs(&counting, start, target, inside);
            if !ok {
                log::debug!(
                    "discarding infeasible candidate {:?}",
                    PlayerSet::from_membership(inside, weights)
                );
            }
            ok
        })
        .map(|inside| PlayerSet::from_membership(&inside, weights))
        .min_by(|a, b| {
            a.len()
                .cmp(&b.len())
                .then(a.weight().total_cmp(&b.weight()))
                .then_with(|| a.members().cmp(&b.members()))
        })
        .ok_or_else(|| DcsError::Internal("the set of all movers must be feasible".into()))?;
    let stats = SolveStats {
        oracle_calls: counting.calls(),
        subsets_examined: examined,
        wall_time: started.elapsed(),
        exhaustive: None,
    };
    SolveReport::certify(instance, best, Method::SingletonCongestion, stats)
}

/// Minimum direct control set of a symmetric congestion game with strictly
/// decreasing costs and uniform `s`, `d`. Only the number of controlled
/// players matters, so the `k` lightest players (ties by index) are tried for
/// `k = 0, 1, ...`.
pub fn symmetric_decreasing_min_dcs(instance: &DcsInstance<CongestionGame>) -> Result<SolveReport> {
    let started = Instant::now();
    let game = instance.game();
    if !game.is_symmetric() {
        return Err(DcsError::invalid("players do not share one strategy set"));
    }
    if let Some(r) = game
        .costs
        .iter()
        .position(|t| !t.windows(2).all(|w| w[0] > w[1]))
    {
        return Err(DcsError::invalid(format!(
            "cost of resource {r} is not strictly decreasing"
        )));
    }
    for (name, p) in [("start", instance.start()), ("target", instance.target())] {
        if !p.iter().all_equal() {
            return Err(DcsError::invalid(format!(
                "{name} profile {p} is not uniform"
            )));
        }
    }
    let n = instance.n();
    let weights = instance.weights();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| weights[a].total_cmp(&weights[b]).then(a.cmp(&b)));
    let counting = CountingGame::new(game);
    let mut inside = vec![false; n];
    let mut k = 0;
    while !is_dcs(&counting, instance.start(), instance.target(), &inside) {
        inside[order[k]] = true;
        k += 1;
    }
    let stats = SolveStats {
        oracle_calls: counting.calls(),
        subsets_examined: k as u64 + 1,
        wall_time: started.elapsed(),
        exhaustive: None,
    };
    let solution = PlayerSet::from_membership(&inside, weights);
    Ok(
        SolveReport::certify(instance, solution, Method::SymmetricDecreasing, stats)?
            .with_note(format!("k={k}")),
    )
}

/// `n` players split evenly over `m` resources with `c_r(x) = x`; the start
/// puts block `b` of `n/m` consecutive players on resource `b`, the target
/// moves every block one resource up (cyclically).
pub fn balanced_shift_instance(n: usize, m: usize) -> Result<DcsInstance<SingletonCongestionGame>> {
    if m < 2 || n == 0 || !n.is_multiple_of(m) {
        return Err(DcsError::invalid(
            "need m >= 2 resources dividing n players",
        ));
    }
    let costs = vec![(1..=n).map(|x| x as f64).collect(); m];
    let game = SingletonCongestionGame::full(n, costs)?;
    let block = n / m;
    let start = Profile((0..n).map(|i| i / block).collect());
    let target = Profile((0..n).map(|i| (i / block + 1) % m).collect());
    DcsInstance::unit(game, start, target)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solvers::brute_force_min_dcs;

    fn linear(n: usize, m: usize) -> SingletonCongestionGame {
        SingletonCongestionGame::full(n, vec![(1..=n).map(|x| x as f64).collect(); m]).unwrap()
    }

    #[test]
    fn oracle_matches_general_form() {
        let s = linear(4, 3);
        let g = s.to_congestion();
        for p in ProfileIter::for_game(&s) {
            for i in 0..4 {
                assert_eq!(s.utility(&p, i), g.utility(&p, i));
            }
        }
        assert!(g.is_singleton());
        assert_eq!(SingletonCongestionGame::from_congestion(&g).unwrap(), s);
    }

    #[test]
    fn balanced_shift_loads() {
        let inst = balanced_shift_instance(6, 3).unwrap();
        let a = inst.player_set([0, 1, 4, 5]).unwrap();
        let sd = inst.intermediate_profile(&a).unwrap();
        assert_eq!(inst.game().loads(&sd), vec![2, 4, 0]);
        let basin = attraction_basin(inst.game(), &sd).unwrap();
        assert_eq!(basin.resources, vec![2]);
        assert_eq!(basin.entry_cost, Some(1.0));
    }

    #[test]
    fn basin_ties_and_strict_equilibria() {
        // One player, two identical resources: moving is as good as staying.
        let g = linear(1, 2);
        let b = attraction_basin(&g, &[0]).unwrap();
        assert_eq!(b.resources, vec![1]);
        // General position: c_0 = (1,3), c_1 = (2,4); loads (1,1) is strict.
        let g = SingletonCongestionGame::full(2, vec![vec![1.0, 3.0], vec![2.0, 4.0]]).unwrap();
        assert!(attraction_basin(&g, &[0, 1]).unwrap().resources.is_empty());
    }

    #[test]
    fn size_bound() {
        assert_eq!(dcs_size_upper_bound(&linear(6, 3)), 4);
        assert_eq!(dcs_size_upper_bound(&linear(4, 4)), 3);
        assert_eq!(dcs_size_upper_bound(&linear(9, 3)), 6);
    }

    #[test]
    fn general_position() {
        let (n, m) = (4, 3);
        let spread = SingletonCongestionGame::full(
            n,
            (0..m)
                .map(|j| (1..=n).map(|x| (j + m * (x - 1)) as f64).collect())
                .collect(),
        )
        .unwrap();
        assert!(general_position_check(&spread).is_ok());
        assert!(general_position_exact(&spread, 1 << 20).unwrap());
        let c = general_position_check(&linear(3, 2)).unwrap_err();
        assert_eq!((c.q, c.x, c.r, c.y), (0, 1, 1, 1));
        // Identical costs still keep two-resource basins small for two players.
        assert!(general_position_exact(&linear(2, 2), 1 << 20).unwrap());
        assert!(!general_position_exact(&linear(3, 3), 1 << 20).unwrap());
    }

    #[test]
    fn monotone_costs_condition() {
        // c_q = (5,7,9), c_r = (6,6,8); d puts one player on q and two on r.
        let g = SingletonCongestionGame::full(3, vec![vec![5.0, 7.0, 9.0], vec![6.0, 6.0, 8.0]])
            .unwrap();
        assert!(!cost_monotonicity_check(&g, &[0, 1, 1]).unwrap());
        let lin = SingletonCongestionGame::full(3, vec![vec![2.0, 4.0, 6.0], vec![3.0, 4.0, 5.0]])
            .unwrap();
        assert!(cost_monotonicity_check(&lin, &[0, 1, 1]).unwrap());
        let single = SingletonCongestionGame::full(3, vec![vec![1.0, 2.0, 3.0]]).unwrap();
        assert!(cost_monotonicity_check(&single, &[0, 0, 0]).unwrap());
        assert!(cost_monotonicity_check(&g, &[0, 0, 0]).is_err());
    }

    #[test]
    fn spread_costs_all_movers() {
        // c_j(x) = j + m(x-1) with n = 4, m = 2; s = (0,0,1,1), d = (1,1,0,0).
        let (n, m) = (4, 2);
        let costs = (0..m)
            .map(|j| (1..=n).map(|x| (j + m * (x - 1)) as f64).collect())
            .collect();
        let g = SingletonCongestionGame::full(n, costs).unwrap();
        let inst =
            DcsInstance::unit(g, Profile(vec![0, 0, 1, 1]), Profile(vec![1, 1, 0, 0])).unwrap();
        let r = singleton_min_dcs(&inst).unwrap();
        assert!(r.feasible);
        assert_eq!(r.solution.len(), 2);
        assert_eq!(
            brute_force_min_dcs(&inst, 1 << 10).unwrap().solution.len(),
            2
        );
        let same = DcsInstance::unit(
            inst.game().clone(),
            Profile(vec![0, 0, 1, 1]),
            Profile(vec![0, 0, 1, 1]),
        )
        .unwrap();
        assert!(singleton_min_dcs(&same).unwrap().solution.is_empty());
    }

    #[test]
    fn symmetric_decreasing_examples() {
        let tenth = |n: usize| (1..=n).map(|x| 10.0 / x as f64).collect::<Vec<_>>();
        let g = CongestionGame::symmetric(4, 2, vec![vec![0], vec![1]], vec![tenth(4), tenth(4)])
            .unwrap();
        let inst = DcsInstance::unit(g, Profile(vec![0; 4]), Profile(vec![1; 4])).unwrap();
        let r = symmetric_decreasing_min_dcs(&inst).unwrap();
        assert_eq!(r.solution.members(), vec![0, 1]);
        let same = inst.clone().with_start(Profile(vec![1; 4])).unwrap();
        assert!(symmetric_decreasing_min_dcs(&same)
            .unwrap()
            .solution
            .is_empty());
        let g = CongestionGame::symmetric(2, 2, vec![vec![0], vec![1]], vec![vec![10.0, 1.0]; 2])
            .unwrap();
        let inst = DcsInstance::unit(g, Profile(vec![0; 2]), Profile(vec![1; 2])).unwrap();
        assert_eq!(
            symmetric_decreasing_min_dcs(&inst).unwrap().solution.len(),
            1
        );
        assert_eq!(brute_force_min_dcs(&inst, 16).unwrap().solution.len(), 1);
    }

    #[test]
    fn influence_is_resource_sharing() {
        let g =
            SingletonCongestionGame::new(vec![vec![0], vec![0, 1], vec![2]], vec![vec![1.0; 3]; 3])
                .unwrap();
        assert_eq!(
            g.influence_sets().unwrap(),
            vec![vec![0, 1], vec![0, 1], vec![2]]
        );
    }
}
