//! Seed-deterministic random instances.
//!
//! Every generator draws from a `ChaCha8Rng` seeded with the given seed, so a
//! (kind, size, seed) triple always yields the same instance for a given
//! [`RECIPE_VERSION`]. Weights are unit; see [`random_weights`].

use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::any_game::AnyGame;
use crate::congestion::{CongestionGame, SingletonCongestionGame};
use crate::coordination::CoordinationGame;
use crate::error::{DcsError, Result};
use crate::game::{is_nash, Game, Profile, TableGame};
use crate::graph::Graph;
use crate::instance::DcsInstance;
use crate::nash::{best_response_dynamics, enumerate_nash, DEFAULT_NASH_BUDGET};
use crate::tree::{GraphicalGame, PairwiseUtility};

/// Bumped whenever a generator's sampling changes.
pub const RECIPE_VERSION: u32 = 1;

/// Draws before a generator gives up on finding two distinct equilibria.
pub const MAX_ATTEMPTS: usize = 1_000;

const EDGE_PROBABILITY: f64 = 0.35;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RandomKind {
    NormalForm,
    SingletonCongestion,
    /// Singleton congestion with costs in general position.
    SingletonCongestionGp,
    SymmetricDecreasing,
    TreeGraphical,
    TreePairwise,
    Graphical,
    Coordination,
}

impl RandomKind {
    pub const ALL: [RandomKind; 8] = [
        RandomKind::NormalForm,
        RandomKind::SingletonCongestion,
        RandomKind::SingletonCongestionGp,
        RandomKind::SymmetricDecreasing,
        RandomKind::TreeGraphical,
        RandomKind::TreePairwise,
        RandomKind::Graphical,
        RandomKind::Coordination,
    ];

    pub fn name(self) -> &'static str {
        match self {
            RandomKind::NormalForm => "normal-form",
            RandomKind::SingletonCongestion => "singleton-congestion",
            RandomKind::SingletonCongestionGp => "singleton-congestion-gp",
            RandomKind::SymmetricDecreasing => "symmetric-decreasing",
            RandomKind::TreeGraphical => "tree-graphical",
            RandomKind::TreePairwise => "tree-pairwise",
            RandomKind::Graphical => "graphical",
            RandomKind::Coordination => "coordination",
        }
    }
}

impl fmt::Display for RandomKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for RandomKind {
    type Err = DcsError;
    fn from_str(s: &str) -> Result<Self> {
        RandomKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| DcsError::invalid(format!("unknown random kind `{s}`")))
    }
}

fn rng_for(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn check_players(n: usize) -> Result<()> {
    if n < 2 {
        return Err(DcsError::invalid(format!(
            "random instances need at least 2 players, got {n}"
        )));
    }
    Ok(())
}

fn check_strategies(m: usize) -> Result<()> {
    if m < 2 {
        return Err(DcsError::invalid(format!(
            "need at least 2 strategies or resources, got {m}"
        )));
    }
    Ok(())
}

fn exhausted(what: &str) -> DcsError {
    DcsError::invalid(format!(
        "no {what} with two distinct equilibria after {MAX_ATTEMPTS} draws"
    ))
}

/// Integer weights drawn uniformly from `1..=max`.
pub fn random_weights(n: usize, max: u32, seed: u64) -> Vec<f64> {
    let mut rng = rng_for(seed);
    (0..n)
        .map(|_| rng.gen_range(1..=max.max(1)) as f64)
        .collect()
}

/// `G(n, p)`.
pub fn random_graph(n: usize, p: f64, seed: u64) -> Graph {
    let mut rng = rng_for(seed);
    gnp(n, p, &mut rng)
}

fn gnp(n: usize, p: f64, rng: &mut ChaCha8Rng) -> Graph {
    let edges: Vec<(usize, usize)> = (0..n)
        .tuple_combinations()
        .filter(|_| rng.gen_bool(p))
        .collect();
    Graph::from_edges(n, edges).expect("indices in range")
}

/// Uniform random labelled tree on `n` vertices (random attachment, then a
/// random relabelling).
fn random_tree(n: usize, rng: &mut ChaCha8Rng) -> Graph {
    let mut label: Vec<usize> = (0..n).collect();
    label.shuffle(rng);
    let edges: Vec<(usize, usize)> = (1..n)
        .map(|v| (label[v], label[rng.gen_range(0..v)]))
        .collect();
    Graph::from_edges(n, edges).expect("indices in range")
}

fn random_profile(counts: &[usize], rng: &mut ChaCha8Rng) -> Vec<usize> {
    counts.iter().map(|&c| rng.gen_range(0..c)).collect()
}

/// Two distinct random profiles.
fn random_pair(counts: &[usize], rng: &mut ChaCha8Rng) -> (Vec<usize>, Vec<usize>) {
    let s = random_profile(counts, rng);
    loop {
        let d = random_profile(counts, rng);
        if d != s {
            return (s, d);
        }
    }
}

/// `n` players with `m` strategies each and integer payoffs in `0..=9`; two
/// random profiles are made equilibria by paying every player 10 there.
pub fn random_normal_form(n: usize, m: usize, seed: u64) -> Result<DcsInstance<TableGame>> {
    check_players(n)?;
    check_strategies(m)?;
    let mut rng = rng_for(seed);
    let counts = vec![m; n];
    let size = crate::game::profile_space(&counts)
        .filter(|&s| s <= crate::game::MAX_TABLE_PROFILES as u128)
        .ok_or_else(|| DcsError::invalid("payoff table too large"))? as usize;
    let mut rows: Vec<Vec<f64>> = (0..size)
        .map(|_| (0..n).map(|_| rng.gen_range(0..=9) as f64).collect())
        .collect();
    let (s, d) = random_pair(&counts, &mut rng);
    let index = |p: &[usize]| p.iter().fold(0, |acc, &x| acc * m + x);
    rows[index(&s)] = vec![10.0; n];
    rows[index(&d)] = vec![10.0; n];
    let game = TableGame::new(counts, rows)?;
    DcsInstance::unit(game, Profile(s), Profile(d))
}

/// Every way to put `n` players on `m` resources, as load vectors.
fn load_vectors(n: usize, m: usize) -> Vec<Vec<usize>> {
    fn rec(left: usize, slots: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if slots == 1 {
            cur.push(left);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for x in 0..=left {
            cur.push(x);
            rec(left - x, slots - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, m, &mut Vec::new(), &mut out);
    out
}

/// Nondecreasing integer cost tables. In general position every value of
/// resource `r` is `r` modulo `m`, so distinct resources never share a cost.
fn singleton_costs(
    n: usize,
    m: usize,
    general_position: bool,
    rng: &mut ChaCha8Rng,
) -> Vec<Vec<f64>> {
    (0..m)
        .map(|r| {
            let mut v = rng.gen_range(1..=3);
            (0..n)
                .map(|_| {
                    let c = if general_position { m * v + r } else { v };
                    v += rng.gen_range(0..=2);
                    c as f64
                })
                .collect()
        })
        .collect()
}

/// `n` players over `m` resources, full strategy sets (strategy = resource).
/// Equilibrium load vectors are found by the no-improving-move condition and
/// players are assigned to them at random until `s != d`.
pub fn random_singleton_congestion(
    n: usize,
    m: usize,
    general_position: bool,
    seed: u64,
) -> Result<DcsInstance<SingletonCongestionGame>> {
    check_players(n)?;
    check_strategies(m)?;
    let mut rng = rng_for(seed);
    for _ in 0..MAX_ATTEMPTS {
        let costs = singleton_costs(n, m, general_position, &mut rng);
        let c = |r: usize, x: usize| costs[r][x - 1];
        let stable: Vec<Vec<usize>> = load_vectors(n, m)
            .into_iter()
            .filter(|l| {
                (0..m).filter(|&q| l[q] > 0).all(|q| {
                    (0..m)
                        .filter(|&r| r != q)
                        .all(|r| l[r] == n || c(q, l[q]) <= c(r, l[r] + 1))
                })
            })
            .collect();
        if stable.is_empty() {
            continue;
        }
        let assign = |loads: &[usize], rng: &mut ChaCha8Rng| {
            let mut slots: Vec<usize> = loads
                .iter()
                .enumerate()
                .flat_map(|(r, &l)| std::iter::repeat_n(r, l))
                .collect();
            slots.shuffle(rng);
            slots
        };
        let s = assign(stable.choose(&mut rng).unwrap(), &mut rng);
        let d = assign(stable.choose(&mut rng).unwrap(), &mut rng);
        if s == d {
            continue;
        }
        let game = SingletonCongestionGame::full(n, costs)?;
        return DcsInstance::unit(game, Profile(s), Profile(d));
    }
    Err(exhausted("singleton congestion game"))
}

/// Symmetric game over `m` resources whose common strategy set is two or
/// three random non-empty resource subsets, with strictly decreasing integer
/// costs. Two distinct equilibria are picked from an exhaustive scan.
pub fn random_symmetric_decreasing(
    n: usize,
    m: usize,
    seed: u64,
) -> Result<DcsInstance<CongestionGame>> {
    check_players(n)?;
    if m == 0 {
        return Err(DcsError::invalid("need at least one resource"));
    }
    let mut rng = rng_for(seed);
    for _ in 0..MAX_ATTEMPTS {
        let k = rng.gen_range(2..=3);
        let strategies: Vec<Vec<usize>> = (0..k)
            .map(|_| loop {
                let set: Vec<usize> = (0..m).filter(|_| rng.gen_bool(0.5)).collect();
                if !set.is_empty() {
                    break set;
                }
            })
            .unique()
            .collect();
        if strategies.len() < 2 {
            continue;
        }
        let costs: Vec<Vec<f64>> = (0..m)
            .map(|_| {
                let mut v = 4 * n + rng.gen_range(0..=4);
                (0..n)
                    .map(|_| {
                        let c = v;
                        v -= rng.gen_range(1..=3);
                        c as f64
                    })
                    .collect()
            })
            .collect();
        let game = CongestionGame::symmetric(n, m, strategies, costs)?;
        let ne = enumerate_nash(&game, DEFAULT_NASH_BUDGET)?;
        if ne.len() < 2 {
            continue;
        }
        let picked: Vec<&Profile> = ne.choose_multiple(&mut rng, 2).collect();
        return DcsInstance::unit(game.clone(), picked[0].clone(), picked[1].clone());
    }
    Err(exhausted("symmetric decreasing congestion game"))
}

fn local_index(hood: &[usize], counts: &[usize], profile: &[usize]) -> usize {
    hood.iter().fold(0, |acc, &j| acc * counts[j] + profile[j])
}

/// Random local tables in `0..=9` with two random profiles made equilibria
/// by paying 10 at their local configurations.
fn forced_tables(
    graph: Graph,
    counts: Vec<usize>,
    rng: &mut ChaCha8Rng,
) -> Result<DcsInstance<GraphicalGame>> {
    let n = graph.n();
    let (s, d) = random_pair(&counts, rng);
    let mut tables = Vec::with_capacity(n);
    for i in 0..n {
        let hood = graph.closed_neighborhood(i);
        let size: usize = hood.iter().map(|&j| counts[j]).product();
        if size > crate::tree::MAX_LOCAL_TABLE {
            return Err(DcsError::invalid(format!(
                "local table of player {i} too large"
            )));
        }
        let mut table: Vec<f64> = (0..size).map(|_| rng.gen_range(0..=9) as f64).collect();
        table[local_index(&hood, &counts, &s)] = 10.0;
        table[local_index(&hood, &counts, &d)] = 10.0;
        tables.push(table);
    }
    let game = GraphicalGame::from_tables(graph, counts, tables)?;
    DcsInstance::unit(game, Profile(s), Profile(d))
}

/// Tree graphical game with `2..=max_strategies` strategies per player and
/// random local tables.
pub fn random_tree_graphical(
    n: usize,
    max_strategies: usize,
    seed: u64,
) -> Result<DcsInstance<GraphicalGame>> {
    check_players(n)?;
    check_strategies(max_strategies)?;
    let mut rng = rng_for(seed);
    let graph = random_tree(n, &mut rng);
    let counts = (0..n).map(|_| rng.gen_range(2..=max_strategies)).collect();
    forced_tables(graph, counts, &mut rng)
}

/// Graphical game on `G(n, 0.35)` (usually not a tree).
pub fn random_graphical(
    n: usize,
    max_strategies: usize,
    seed: u64,
) -> Result<DcsInstance<GraphicalGame>> {
    check_players(n)?;
    check_strategies(max_strategies)?;
    let mut rng = rng_for(seed);
    let graph = gnp(n, EDGE_PROBABILITY, &mut rng);
    let counts = (0..n).map(|_| rng.gen_range(2..=max_strategies)).collect();
    forced_tables(graph, counts, &mut rng)
}

/// Tree game with pairwise utilities. Both `s_i` and `d_i` carry an own bonus
/// of 100; edge terms pay 10 when both ends play their `s` strategies or both
/// play their `d` strategies, and noise in `0..=5` elsewhere. Other own terms
/// are noise in `0..=20`, so `s` and `d` are equilibria.
pub fn random_tree_pairwise(
    n: usize,
    max_strategies: usize,
    seed: u64,
) -> Result<DcsInstance<GraphicalGame>> {
    check_players(n)?;
    check_strategies(max_strategies)?;
    let mut rng = rng_for(seed);
    let graph = random_tree(n, &mut rng);
    let counts: Vec<usize> = (0..n).map(|_| rng.gen_range(2..=max_strategies)).collect();
    let (s, d) = random_pair(&counts, &mut rng);
    let own = (0..n)
        .map(|i| {
            (0..counts[i])
                .map(|t| {
                    if t == s[i] || t == d[i] {
                        100.0
                    } else {
                        rng.gen_range(0..=20) as f64
                    }
                })
                .collect()
        })
        .collect();
    let edge = (0..n)
        .map(|i| {
            graph
                .neighbors(i)
                .iter()
                .map(|&j| {
                    (0..counts[i])
                        .map(|a| {
                            (0..counts[j])
                                .map(|b| {
                                    if (a, b) == (s[i], s[j]) || (a, b) == (d[i], d[j]) {
                                        10.0
                                    } else {
                                        rng.gen_range(0..=5) as f64
                                    }
                                })
                                .collect()
                        })
                        .collect()
                })
                .collect()
        })
        .collect();
    let game = GraphicalGame::from_pairwise(graph, counts, PairwiseUtility { own, edge })?;
    debug_assert!(is_nash(&game, &s).unwrap() && is_nash(&game, &d).unwrap());
    DcsInstance::unit(game, Profile(s), Profile(d))
}

/// Binary coordination game on `G(n, 0.35)` with prestiges in `1..=3`. The
/// target is all-0; the start is the fixpoint of best-response dynamics from
/// a random colouring, redrawn until it differs from the target.
pub fn random_coordination(n: usize, seed: u64) -> Result<DcsInstance<CoordinationGame>> {
    check_players(n)?;
    let mut rng = rng_for(seed);
    for _ in 0..MAX_ATTEMPTS {
        let graph = gnp(n, EDGE_PROBABILITY, &mut rng);
        let prestige = [rng.gen_range(1..=3) as f64, rng.gen_range(1..=3) as f64];
        let game = CoordinationGame::binary(graph, prestige)?;
        let colouring: Vec<usize> = (0..n).map(|_| rng.gen_range(0..2)).collect();
        let start = best_response_dynamics(&game, &colouring, 10 * n * n)?.profile;
        let target = game.all_zero();
        if start == target {
            continue;
        }
        return DcsInstance::unit(game, start, target);
    }
    Err(exhausted("coordination game"))
}

/// Any kind at size `n`. `m` is the strategy count (normal form), the
/// resource count (congestion kinds) or the strategy cap (graphical kinds);
/// coordination ignores it.
pub fn random_instance(
    kind: RandomKind,
    n: usize,
    m: usize,
    seed: u64,
) -> Result<DcsInstance<AnyGame>> {
    fn any<G: Game + Into<AnyGame>>(i: DcsInstance<G>) -> Result<DcsInstance<AnyGame>> {
        i.map_game(Into::into)
    }
    match kind {
        RandomKind::NormalForm => any(random_normal_form(n, m, seed)?),
        RandomKind::SingletonCongestion => any(random_singleton_congestion(n, m, false, seed)?),
        RandomKind::SingletonCongestionGp => any(random_singleton_congestion(n, m, true, seed)?),
        RandomKind::SymmetricDecreasing => any(random_symmetric_decreasing(n, m, seed)?),
        RandomKind::TreeGraphical => any(random_tree_graphical(n, m, seed)?),
        RandomKind::TreePairwise => any(random_tree_pairwise(n, m, seed)?),
        RandomKind::Graphical => any(random_graphical(n, m, seed)?),
        RandomKind::Coordination => any(random_coordination(n, seed)?),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::congestion::general_position_check;

    #[test]
    fn same_seed_same_instance() {
        for kind in RandomKind::ALL {
            let a = random_instance(kind, 5, 2, 7).unwrap();
            let b = random_instance(kind, 5, 2, 7).unwrap();
            assert_eq!(a.game(), b.game(), "{kind}");
            assert_eq!((a.start(), a.target()), (b.start(), b.target()));
            assert_ne!(a.start(), a.target());
            assert!(is_nash(a.game(), a.start()).unwrap(), "{kind}");
        }
    }

    #[test]
    fn general_position_flag() {
        for seed in 0..20 {
            let i = random_singleton_congestion(6, 3, true, seed).unwrap();
            assert!(general_position_check(i.game()).is_ok());
        }
    }

    #[test]
    fn too_few_players() {
        for kind in RandomKind::ALL {
            assert!(matches!(
                random_instance(kind, 1, 2, 0),
                Err(DcsError::InvalidInput(_))
            ));
        }
    }

    #[test]
    fn kinds_parse() {
        for kind in RandomKind::ALL {
            assert_eq!(kind.name().parse::<RandomKind>().unwrap(), kind);
        }
        assert!("tree".parse::<RandomKind>().is_err());
    }

    #[test]
    fn tree_kinds_are_trees() {
        for seed in 0..10 {
            assert!(random_tree_graphical(8, 3, seed)
                .unwrap()
                .game()
                .graph()
                .is_tree());
            assert!(random_tree_pairwise(8, 3, seed)
                .unwrap()
                .game()
                .graph()
                .is_tree());
        }
    }
}
