//! Graphical games and the exact dynamic program for minimum-weight direct
//! control sets when the interaction graph is a tree (or a forest).
//!
//! Rooting the tree, a node's best-response condition only involves the
//! membership bits of its parent and children. The table
//! `T[v][m_v][m_p]` holds the lightest choice inside the subtree of `v`, given
//! whether `v` and its parent are controlled, such that every uncontrolled
//! node of the subtree has its target as a best response. Children bits are
//! chosen either by enumeration (generic mode) or, when utilities are declared
//! as sums of pairwise edge terms, by a Pareto scan over best-response margins
//! (additive mode).

use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::{DcsError, Result};
use crate::game::{Game, PlayerSet, StructureTag, TOL};
use crate::graph::Graph;
use crate::instance::{DcsInstance, Method, SolveReport, SolveStats};

/// Largest local table a graphical game may hold for one player.
pub const MAX_LOCAL_TABLE: usize = 1_000_000;

/// Utilities declared as `own_i(x_i) + sum_j edge_ij(x_i, x_j)` over the
/// neighbours `j` of `i`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairwiseUtility {
    /// `own[i][x_i]`.
    pub own: Vec<Vec<f64>>,
    /// `edge[i][k][x_i][x_j]` where `j` is the `k`-th neighbour of `i` in
    /// increasing index order.
    pub edge: Vec<Vec<Vec<Vec<f64>>>>,
}

/// A game whose utilities factor over the closed neighbourhoods of an
/// interaction graph: `u_i(s) = U_i(s_{N[i]})`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "GraphicalRepr", into = "GraphicalRepr")]
pub struct GraphicalGame {
    graph: Graph,
    strategy_counts: Vec<usize>,
    neighborhoods: Vec<Vec<usize>>,
    /// Row-major over `neighborhoods[i]` (last neighbour fastest).
    tables: Vec<Vec<f64>>,
    pairwise: Option<PairwiseUtility>,
}

/// File form: either full local tables or pairwise terms, never both.
#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphicalRepr {
    graph: Graph,
    strategy_counts: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    tables: Option<Vec<Vec<f64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pairwise: Option<PairwiseUtility>,
}

impl TryFrom<GraphicalRepr> for GraphicalGame {
    type Error = DcsError;
    fn try_from(r: GraphicalRepr) -> Result<Self> {
        match (r.tables, r.pairwise) {
            (Some(t), None) => GraphicalGame::from_tables(r.graph, r.strategy_counts, t),
            (None, Some(p)) => GraphicalGame::from_pairwise(r.graph, r.strategy_counts, p),
            _ => Err(DcsError::invalid(
                "give exactly one of `tables` and `pairwise`",
            )),
        }
    }
}

impl From<GraphicalGame> for GraphicalRepr {
    fn from(g: GraphicalGame) -> Self {
        let (tables, pairwise) = match g.pairwise {
            Some(p) => (None, Some(p)),
            None => (Some(g.tables), None),
        };
        GraphicalRepr {
            graph: g.graph,
            strategy_counts: g.strategy_counts,
            tables,
            pairwise,
        }
    }
}

fn validate_counts(graph: &Graph, strategy_counts: &[usize]) -> Result<()> {
    if strategy_counts.len() != graph.n() {
        return Err(DcsError::invalid(format!(
            "{} strategy counts for {} vertices",
            strategy_counts.len(),
            graph.n()
        )));
    }
    if graph.n() == 0 || strategy_counts.contains(&0) {
        return Err(DcsError::invalid(
            "every player needs at least one strategy",
        ));
    }
    Ok(())
}

impl GraphicalGame {
    pub fn from_tables(
        graph: Graph,
        strategy_counts: Vec<usize>,
        tables: Vec<Vec<f64>>,
    ) -> Result<Self> {
        validate_counts(&graph, &strategy_counts)?;
        let neighborhoods: Vec<Vec<usize>> = (0..graph.n())
            .map(|v| graph.closed_neighborhood(v))
            .collect();
        if tables.len() != graph.n() {
            return Err(DcsError::invalid(format!(
                "{} local tables for {} players",
                tables.len(),
                graph.n()
            )));
        }
        for (i, table) in tables.iter().enumerate() {
            let size = local_size(&neighborhoods[i], &strategy_counts)?;
            if table.len() != size {
                return Err(DcsError::invalid(format!(
                    "local table of player {i} has {} entries, expected {size}",
                    table.len()
                )));
            }
        }
        Ok(GraphicalGame {
            graph,
            strategy_counts,
            neighborhoods,
            tables,
            pairwise: None,
        })
    }

    /// Builds the game from pairwise terms and materializes the local tables.
    pub fn from_pairwise(
        graph: Graph,
        strategy_counts: Vec<usize>,
        pairwise: PairwiseUtility,
    ) -> Result<Self> {
        validate_counts(&graph, &strategy_counts)?;
        let n = graph.n();
        if pairwise.own.len() != n || pairwise.edge.len() != n {
            return Err(DcsError::invalid("pairwise terms must cover every player"));
        }
        for i in 0..n {
            if pairwise.own[i].len() != strategy_counts[i] {
                return Err(DcsError::invalid(format!(
                    "own term of player {i} has wrong length"
                )));
            }
            let nbrs = graph.neighbors(i);
            if pairwise.edge[i].len() != nbrs.len() {
                return Err(DcsError::invalid(format!(
                    "player {i} has {} neighbours but {} edge terms",
                    nbrs.len(),
                    pairwise.edge[i].len()
                )));
            }
            for (k, &j) in nbrs.iter().enumerate() {
                let m = &pairwise.edge[i][k];
                if m.len() != strategy_counts[i] || m.iter().any(|r| r.len() != strategy_counts[j])
                {
                    return Err(DcsError::invalid(format!(
                        "edge term ({i},{j}) must be {}x{}",
                        strategy_counts[i], strategy_counts[j]
                    )));
                }
            }
        }
        let neighborhoods: Vec<Vec<usize>> = (0..n).map(|v| graph.closed_neighborhood(v)).collect();
        let mut tables = Vec::with_capacity(n);
        for i in 0..n {
            let hood = &neighborhoods[i];
            let size = local_size(hood, &strategy_counts)?;
            let counts: Vec<usize> = hood.iter().map(|&j| strategy_counts[j]).collect();
            let own_pos = hood.binary_search(&i).unwrap();
            let table = crate::game::ProfileIter::new(counts)
                .map(|config| {
                    let xi = config[own_pos];
                    let mut u = pairwise.own[i][xi];
                    let mut k = 0;
                    for (pos, &j) in hood.iter().enumerate() {
                        if j == i {
                            continue;
                        }
                        u += pairwise.edge[i][k][xi][config[pos]];
                        k += 1;
                    }
                    u
                })
                .collect::<Vec<_>>();
            debug_assert_eq!(table.len(), size);
            tables.push(table);
        }
        Ok(GraphicalGame {
            graph,
            strategy_counts,
            neighborhoods,
            tables,
            pairwise: Some(pairwise),
        })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn strategy_counts(&self) -> &[usize] {
        &self.strategy_counts
    }

    pub fn tables(&self) -> &[Vec<f64>] {
        &self.tables
    }

    pub fn pairwise(&self) -> Option<&PairwiseUtility> {
        self.pairwise.as_ref()
    }

    /// Closed neighbourhood of `player`, sorted.
    pub fn neighborhood(&self, player: usize) -> &[usize] {
        &self.neighborhoods[player]
    }

    /// `U_i` at a configuration aligned with [`GraphicalGame::neighborhood`].
    pub fn local_utility(&self, player: usize, config: &[usize]) -> f64 {
        let idx = self.neighborhoods[player]
            .iter()
            .zip(config)
            .fold(0, |acc, (&j, &c)| acc * self.strategy_counts[j] + c);
        self.tables[player][idx]
    }

    /// Whether `target` maximizes `U_player` with the neighbours fixed as in
    /// `config` (the player's own slot is overwritten and restored).
    fn local_target_is_best(&self, player: usize, config: &mut [usize], target: usize) -> bool {
        let own_pos = self.neighborhoods[player].binary_search(&player).unwrap();
        let saved = config[own_pos];
        let mut best = f64::NEG_INFINITY;
        let mut at_target = f64::NEG_INFINITY;
        for t in 0..self.strategy_counts[player] {
            config[own_pos] = t;
            let u = self.local_utility(player, config);
            best = best.max(u);
            if t == target {
                at_target = u;
            }
        }
        config[own_pos] = saved;
        at_target >= best - TOL
    }
}

fn local_size(hood: &[usize], counts: &[usize]) -> Result<usize> {
    let size = hood
        .iter()
        .try_fold(1usize, |acc, &j| acc.checked_mul(counts[j]))
        .filter(|&s| s <= MAX_LOCAL_TABLE);
    size.ok_or_else(|| {
        DcsError::invalid(format!(
            "local tables are limited to {MAX_LOCAL_TABLE} entries"
        ))
    })
}

impl Game for GraphicalGame {
    fn n_players(&self) -> usize {
        self.graph.n()
    }
    fn strategy_count(&self, player: usize) -> usize {
        self.strategy_counts[player]
    }
    fn utility(&self, profile: &[usize], player: usize) -> f64 {
        let idx = self.neighborhoods[player]
            .iter()
            .fold(0, |acc, &j| acc * self.strategy_counts[j] + profile[j]);
        self.tables[player][idx]
    }
    fn structure(&self) -> StructureTag {
        StructureTag::Graphical
    }
    fn influence_sets(&self) -> Option<Vec<Vec<usize>>> {
        Some(self.neighborhoods.clone())
    }
}

/// Connected and acyclic interaction graph.
pub fn is_tree(game: &GraphicalGame) -> bool {
    game.graph.is_tree()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum TreeDpMode {
    /// Additive when pairwise terms are declared, generic otherwise.
    #[default]
    Auto,
    Generic,
    Additive,
}

#[derive(Clone, Copy, Debug)]
pub struct TreeDpOptions {
    pub mode: TreeDpMode,
    /// Largest number of children the generic mode enumerates over.
    pub degree_cap: usize,
}

impl Default for TreeDpOptions {
    fn default() -> Self {
        TreeDpOptions {
            mode: TreeDpMode::Auto,
            degree_cap: 16,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
struct Cost {
    weight: f64,
    count: usize,
}

impl Cost {
    const ZERO: Cost = Cost {
        weight: 0.0,
        count: 0,
    };
    const INF: Cost = Cost {
        weight: f64::INFINITY,
        count: usize::MAX,
    };

    fn is_finite(&self) -> bool {
        self.weight.is_finite()
    }

    fn add(self, other: Cost) -> Cost {
        if !self.is_finite() || !other.is_finite() {
            return Cost::INF;
        }
        Cost {
            weight: self.weight + other.weight,
            count: self.count + other.count,
        }
    }

    fn better_than(&self, other: &Cost) -> bool {
        if (self.weight - other.weight).abs() > TOL {
            self.weight < other.weight
        } else {
            self.count < other.count
        }
    }
}

#[derive(Clone, Debug)]
struct Entry {
    cost: Cost,
    child_bits: Vec<bool>,
}

impl Entry {
    fn infeasible() -> Self {
        Entry {
            cost: Cost::INF,
            child_bits: Vec::new(),
        }
    }
}

struct TreeDp<'a> {
    game: &'a GraphicalGame,
    start: &'a [usize],
    target: &'a [usize],
    weights: &'a [f64],
    additive: bool,
    degree_cap: usize,
    parent: Vec<Option<usize>>,
    children: Vec<Vec<usize>>,
    /// `table[v][m_v][m_p]`; roots only use `m_p = 0`.
    table: Vec<[[Entry; 2]; 2]>,
    lookups: u64,
}

impl<'a> TreeDp<'a> {
    fn strategy_of(&self, j: usize, controlled: bool) -> usize {
        if controlled {
            self.target[j]
        } else {
            self.start[j]
        }
    }

    /// Local configuration of `v`'s neighbourhood for given parent and
    /// children bits.
    fn config(&self, v: usize, parent_bit: bool, child_bits: &[bool]) -> Vec<usize> {
        self.game.neighborhoods[v]
            .iter()
            .map(|&j| {
                if j == v {
                    self.start[v]
                } else if Some(j) == self.parent[v] {
                    self.strategy_of(j, parent_bit)
                } else {
                    let k = self.children[v].binary_search(&j).unwrap();
                    self.strategy_of(j, child_bits[k])
                }
            })
            .collect()
    }

    fn solve_node(&mut self, v: usize) -> Result<()> {
        let kids = self.children[v].clone();
        // Controlled v: no constraint on v, children see v at its target.
        let mut inside = Entry {
            cost: Cost {
                weight: self.weights[v],
                count: 1,
            },
            child_bits: Vec::with_capacity(kids.len()),
        };
        for &c in &kids {
            let (b, cost) = self.best_child(c, true);
            inside.cost = inside.cost.add(cost);
            inside.child_bits.push(b);
        }
        let parent_states: &[bool] = if self.parent[v].is_some() {
            &[false, true]
        } else {
            &[false]
        };
        for &pb in parent_states {
            let outside = if self.additive {
                self.solve_outside_additive(v, pb)
            } else {
                self.solve_outside_generic(v, pb)?
            };
            self.table[v][0][pb as usize] = outside;
            self.table[v][1][pb as usize] = inside.clone();
        }
        Ok(())
    }

    fn best_child(&self, c: usize, parent_bit: bool) -> (bool, Cost) {
        let out = self.table[c][0][parent_bit as usize].cost;
        let ins = self.table[c][1][parent_bit as usize].cost;
        if ins.better_than(&out) {
            (true, ins)
        } else {
            (false, out)
        }
    }

    fn solve_outside_generic(&mut self, v: usize, parent_bit: bool) -> Result<Entry> {
        let kids = self.children[v].clone();
        if kids.len() > self.degree_cap {
            return Err(DcsError::budget(
                format!("generic tree DP at node {v} with {} children", kids.len()),
                1u128 << kids.len().min(127),
                1u128 << self.degree_cap.min(127),
            ));
        }
        let mut best = Entry::infeasible();
        for mask in 0u64..(1u64 << kids.len()) {
            let bits: Vec<bool> = (0..kids.len()).map(|k| mask >> k & 1 == 1).collect();
            let cost = kids.iter().zip(&bits).fold(Cost::ZERO, |acc, (&c, &b)| {
                acc.add(self.table[c][b as usize][0].cost)
            });
            if !cost.is_finite() || !cost.better_than(&best.cost) {
                continue;
            }
            let mut config = self.config(v, parent_bit, &bits);
            self.lookups += self.game.strategy_counts[v] as u64;
            if self
                .game
                .local_target_is_best(v, &mut config, self.target[v])
            {
                best = Entry {
                    cost,
                    child_bits: bits,
                };
            }
        }
        Ok(best)
    }

    /// Pareto scan over the best-response margins `U(d_v) - U(t)` contributed
    /// by each child's membership bit.
    fn solve_outside_additive(&mut self, v: usize, parent_bit: bool) -> Entry {
        let pw = self
            .game
            .pairwise
            .as_ref()
            .expect("additive mode needs pairwise terms");
        let dv = self.target[v];
        let alternatives: Vec<usize> = (0..self.game.strategy_counts[v])
            .filter(|&t| t != dv)
            .collect();
        let nbrs = self.game.graph.neighbors(v);
        let edge_margin = |j: usize, xj: usize| -> Vec<f64> {
            let k = nbrs.binary_search(&j).unwrap();
            alternatives
                .iter()
                .map(|&t| pw.edge[v][k][dv][xj] - pw.edge[v][k][t][xj])
                .collect()
        };
        let mut base: Vec<f64> = alternatives
            .iter()
            .map(|&t| pw.own[v][dv] - pw.own[v][t])
            .collect();
        if let Some(p) = self.parent[v] {
            for (b, m) in base
                .iter_mut()
                .zip(edge_margin(p, self.strategy_of(p, parent_bit)))
            {
                *b += m;
            }
        }
        struct State {
            margin: Vec<f64>,
            cost: Cost,
            bits: Vec<bool>,
        }
        let mut states = vec![State {
            margin: base,
            cost: Cost::ZERO,
            bits: Vec::new(),
        }];
        for &c in &self.children[v] {
            let options: Vec<(bool, Vec<f64>, Cost)> = [false, true]
                .into_iter()
                .map(|b| {
                    (
                        b,
                        edge_margin(c, self.strategy_of(c, b)),
                        self.table[c][b as usize][0].cost,
                    )
                })
                .filter(|(_, _, cost)| cost.is_finite())
                .collect();
            self.lookups += 2 * alternatives.len() as u64;
            let mut next: Vec<State> = Vec::with_capacity(states.len() * 2);
            for s in &states {
                for (b, delta, cost) in &options {
                    let mut bits = s.bits.clone();
                    bits.push(*b);
                    next.push(State {
                        margin: s.margin.iter().zip(delta).map(|(x, y)| x + y).collect(),
                        cost: s.cost.add(*cost),
                        bits,
                    });
                }
            }
            // Keep the Pareto front: lower cost, componentwise larger margin.
            next.sort_by(|a, b| {
                if a.cost.better_than(&b.cost) {
                    std::cmp::Ordering::Less
                } else if b.cost.better_than(&a.cost) {
                    std::cmp::Ordering::Greater
                } else {
                    std::cmp::Ordering::Equal
                }
            });
            let mut front: Vec<State> = Vec::new();
            for s in next {
                let dominated = front
                    .iter()
                    .any(|f| f.margin.iter().zip(&s.margin).all(|(a, b)| *a >= *b));
                if !dominated {
                    front.push(s);
                }
            }
            states = front;
        }
        states
            .into_iter()
            .find(|s| s.margin.iter().all(|&m| m >= -TOL))
            .map(|s| Entry {
                cost: s.cost,
                child_bits: s.bits,
            })
            .unwrap_or_else(Entry::infeasible)
    }

    fn collect(&self, v: usize, member: bool, parent_bit: bool, out: &mut Vec<usize>) {
        let mut stack = vec![(v, member, parent_bit)];
        while let Some((v, member, pb)) = stack.pop() {
            if member {
                out.push(v);
            }
            let entry = &self.table[v][member as usize][pb as usize];
            for (&c, &b) in self.children[v].iter().zip(&entry.child_bits) {
                stack.push((c, b, member));
            }
        }
    }
}

/// Exact minimum-weight direct control set of a graphical game whose
/// interaction graph is a forest. `root` roots its own component; other
/// components are rooted at their smallest vertex.
pub fn tree_dp_min_dcs(
    instance: &DcsInstance<GraphicalGame>,
    root: usize,
    options: TreeDpOptions,
) -> Result<SolveReport> {
    let started = Instant::now();
    let game = instance.game();
    let n = game.n_players();
    if root >= n {
        return Err(DcsError::invalid(format!("root {root} out of range")));
    }
    if !game.graph.is_forest() {
        return Err(DcsError::NotATree(format!(
            "{} vertices, {} edges, {} components",
            n,
            game.graph.edge_count(),
            game.graph.components().len()
        )));
    }
    let additive = match options.mode {
        TreeDpMode::Auto => game.pairwise.is_some(),
        TreeDpMode::Generic => false,
        TreeDpMode::Additive => {
            if game.pairwise.is_none() {
                return Err(DcsError::Unsupported(
                    "additive tree DP needs pairwise utility terms".into(),
                ));
            }
            true
        }
    };

    let mut parent = vec![None; n];
    let mut children = vec![Vec::new(); n];
    let mut roots = Vec::new();
    let mut order = Vec::with_capacity(n);
    let mut seen = vec![false; n];
    let comps = game.graph.components();
    for comp in &comps {
        let r = if comp.binary_search(&root).is_ok() {
            root
        } else {
            comp[0]
        };
        roots.push(r);
        seen[r] = true;
        let first = order.len();
        order.push(r);
        let mut i = first;
        while i < order.len() {
            let v = order[i];
            i += 1;
            for &u in game.graph.neighbors(v) {
                if !seen[u] {
                    seen[u] = true;
                    parent[u] = Some(v);
                    children[v].push(u);
                    order.push(u);
                }
            }
        }
    }
    for list in &mut children {
        list.sort_unstable();
    }

    let mut dp = TreeDp {
        game,
        start: instance.start(),
        target: instance.target(),
        weights: instance.weights(),
        additive,
        degree_cap: options.degree_cap,
        parent,
        children,
        table: vec![
            [
                [Entry::infeasible(), Entry::infeasible()],
                [Entry::infeasible(), Entry::infeasible()],
            ];
            n
        ],
        lookups: 0,
    };
    for &v in order.iter().rev() {
        dp.solve_node(v)?;
    }

    let mut members = Vec::new();
    for &r in &roots {
        let out = dp.table[r][0][0].cost;
        let ins = dp.table[r][1][0].cost;
        let member = ins.better_than(&out);
        if !dp.table[r][member as usize][0].cost.is_finite() {
            return Err(DcsError::Internal(format!(
                "no feasible state at root {r}; the target should always be reachable"
            )));
        }
        dp.collect(r, member, false, &mut members);
    }
    let stats = SolveStats {
        oracle_calls: dp.lookups,
        subsets_examined: 0,
        wall_time: started.elapsed(),
        exhaustive: Some(true),
    };
    let solution = PlayerSet::from_members(members, instance.weights())?;
    let mode = if additive { "additive" } else { "generic" };
    Ok(
        SolveReport::certify(instance, solution, Method::TreeDp, stats)?
            .with_note(format!("mode={mode}; roots={roots:?}")),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::Profile;
    use crate::solvers::brute_force_min_dcs;

    /// Binary coordination-like pairwise terms: `edge = [[1,0],[0,1]]`
    /// scaled, with an own bias towards the start strategy 1.
    fn pairwise_binary(graph: &Graph, bias: f64) -> PairwiseUtility {
        let n = graph.n();
        PairwiseUtility {
            own: (0..n).map(|_| vec![0.0, bias]).collect(),
            edge: (0..n)
                .map(|i| {
                    graph
                        .neighbors(i)
                        .iter()
                        .map(|_| vec![vec![1.0, 0.0], vec![0.0, 1.0]])
                        .collect()
                })
                .collect(),
        }
    }

    #[test]
    fn path_of_two_controls_cheaper_endpoint() {
        // Each player copies the neighbour; nobody moves unless the neighbour did.
        let g = Graph::path(2);
        let game =
            GraphicalGame::from_pairwise(g.clone(), vec![2, 2], pairwise_binary(&g, 0.0)).unwrap();
        let inst = DcsInstance::new(
            game,
            Profile(vec![1, 1]),
            Profile(vec![0, 0]),
            vec![3.0, 2.0],
        )
        .unwrap();
        for mode in [TreeDpMode::Generic, TreeDpMode::Additive] {
            let opts = TreeDpOptions {
                mode,
                ..Default::default()
            };
            let r = tree_dp_min_dcs(&inst, 0, opts).unwrap();
            assert!(r.feasible);
            assert_eq!(r.solution.members(), vec![1]);
            assert_eq!(r.weight, 2.0);
        }
        assert_eq!(brute_force_min_dcs(&inst, 1 << 20).unwrap().weight, 2.0);
    }

    #[test]
    fn star_forces_centre() {
        // Leaves need the centre; the centre would need all four leaves.
        let g = Graph::star(4);
        let game =
            GraphicalGame::from_pairwise(g.clone(), vec![2; 5], pairwise_binary(&g, 0.5)).unwrap();
        let inst = DcsInstance::unit(game, Profile(vec![1; 5]), Profile(vec![0; 5])).unwrap();
        for root in 0..5 {
            let r = tree_dp_min_dcs(&inst, root, TreeDpOptions::default()).unwrap();
            assert_eq!(r.solution.members(), vec![0]);
        }
        assert_eq!(
            brute_force_min_dcs(&inst, 1 << 20)
                .unwrap()
                .solution
                .members(),
            vec![0]
        );
    }

    #[test]
    fn feasible_empty_set_costs_nothing() {
        let g = Graph::path(3);
        let n = 3;
        // Target strategy 0 is dominant for everyone.
        let tables = (0..n)
            .map(|i| {
                let size = g.closed_neighborhood(i).len();
                let counts = vec![2; size];
                let own_pos = g.closed_neighborhood(i).binary_search(&i).unwrap();
                crate::game::ProfileIter::new(counts)
                    .map(|c| if c[own_pos] == 0 { 1.0 } else { 0.0 })
                    .collect()
            })
            .collect();
        let game = GraphicalGame::from_tables(g, vec![2; 3], tables).unwrap();
        let inst = DcsInstance::unit(game, Profile(vec![1; 3]), Profile(vec![0; 3])).unwrap();
        let r = tree_dp_min_dcs(&inst, 1, TreeDpOptions::default()).unwrap();
        assert_eq!(r.weight, 0.0);
        assert!(r.solution.is_empty());
    }

    #[test]
    fn cycles_are_rejected() {
        let g = Graph::cycle(3);
        let game =
            GraphicalGame::from_pairwise(g.clone(), vec![2; 3], pairwise_binary(&g, 0.0)).unwrap();
        assert!(!is_tree(&game));
        let inst = DcsInstance::unit(game, Profile(vec![1; 3]), Profile(vec![0; 3])).unwrap();
        assert!(matches!(
            tree_dp_min_dcs(&inst, 0, TreeDpOptions::default()),
            Err(DcsError::NotATree(_))
        ));
    }

    #[test]
    fn forests_are_solved_per_component() {
        let g = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        let game =
            GraphicalGame::from_pairwise(g.clone(), vec![2; 4], pairwise_binary(&g, 0.0)).unwrap();
        assert!(!is_tree(&game));
        let inst = DcsInstance::new(
            game,
            Profile(vec![1; 4]),
            Profile(vec![0; 4]),
            vec![1.0, 2.0, 5.0, 4.0],
        )
        .unwrap();
        let r = tree_dp_min_dcs(&inst, 3, TreeDpOptions::default()).unwrap();
        assert_eq!(r.solution.members(), vec![0, 3]);
        assert_eq!(r.weight, 5.0);
    }

    #[test]
    fn degree_cap_applies_to_generic_mode() {
        let g = Graph::star(5);
        let game =
            GraphicalGame::from_pairwise(g.clone(), vec![2; 6], pairwise_binary(&g, 0.5)).unwrap();
        let inst = DcsInstance::unit(game, Profile(vec![1; 6]), Profile(vec![0; 6])).unwrap();
        let opts = TreeDpOptions {
            mode: TreeDpMode::Generic,
            degree_cap: 3,
        };
        assert!(matches!(
            tree_dp_min_dcs(&inst, 0, opts),
            Err(DcsError::BudgetExceeded { .. })
        ));
        // Additive mode is not bounded by the degree cap.
        let opts = TreeDpOptions {
            mode: TreeDpMode::Additive,
            degree_cap: 3,
        };
        assert!(tree_dp_min_dcs(&inst, 0, opts).is_ok());
    }

    #[test]
    fn pairwise_tables_match_formula() {
        let g = Graph::path(3);
        let pw = pairwise_binary(&g, 0.25);
        let game = GraphicalGame::from_pairwise(g.clone(), vec![2; 3], pw.clone()).unwrap();
        for p in crate::game::ProfileIter::for_game(&game) {
            for i in 0..3 {
                let mut expect = pw.own[i][p[i]];
                for (k, &j) in g.neighbors(i).iter().enumerate() {
                    expect += pw.edge[i][k][p[i]][p[j]];
                }
                assert_eq!(game.utility(&p, i), expect);
            }
        }
    }
}
