//! Undirected simple graphs and the small exact graph searches used to certify
//! gadget instances.

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{DcsError, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "GraphRepr", into = "GraphRepr")]
pub struct Graph {
    adj: Vec<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphRepr {
    vertices: usize,
    edges: Vec<[usize; 2]>,
}

impl TryFrom<GraphRepr> for Graph {
    type Error = DcsError;
    fn try_from(r: GraphRepr) -> Result<Self> {
        Graph::from_edges(r.vertices, r.edges.iter().map(|e| (e[0], e[1])))
    }
}

impl From<Graph> for GraphRepr {
    fn from(g: Graph) -> Self {
        GraphRepr {
            vertices: g.n(),
            edges: g.edges().map(|(u, v)| [u, v]).collect(),
        }
    }
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
        }
    }

    /// Builds a simple graph; duplicate edges are merged, self-loops rejected.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut adj = vec![Vec::new(); n];
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(DcsError::invalid(format!(
                    "edge ({u},{v}) out of range for {n} vertices"
                )));
            }
            if u == v {
                return Err(DcsError::invalid(format!("self-loop at vertex {u}")));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        Ok(Graph { adj })
    }

    /// Parses the edge-list text format: one `u v` pair per line, 0-based.
    ///
    /// Blank lines and lines starting with `#` are skipped. The vertex count is
    /// one more than the largest index seen, or `min_vertices` if larger.
    pub fn parse_edge_list(text: &str, min_vertices: usize) -> Result<Self> {
        let mut edges = Vec::new();
        let mut n = min_vertices;
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let parts: Vec<&str> = line.split_whitespace().collect();
            let parse = |s: &str| {
                s.parse::<usize>().map_err(|_| DcsError::Schema {
                    path: format!("line {}", lineno + 1),
                    message: format!("expected a vertex index, found {s:?}"),
                })
            };
            match parts.as_slice() {
                [u] => n = n.max(parse(u)? + 1),
                [u, v] => {
                    let (u, v) = (parse(u)?, parse(v)?);
                    n = n.max(u.max(v) + 1);
                    edges.push((u, v));
                }
                _ => {
                    return Err(DcsError::Schema {
                        path: format!("line {}", lineno + 1),
                        message: "expected `u v`".into(),
                    })
                }
            }
        }
        Graph::from_edges(n, edges)
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    /// Each edge once, as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Sorted closed neighbourhood `N[v]`.
    pub fn closed_neighborhood(&self, v: usize) -> Vec<usize> {
        let mut out = self.adj[v].clone();
        let pos = out.binary_search(&v).unwrap_err();
        out.insert(pos, v);
        out
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        self.components_within(&vec![true; self.n()])
    }

    fn components_within(&self, keep: &[bool]) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n()];
        let mut out = Vec::new();
        for start in 0..self.n() {
            if seen[start] || !keep[start] {
                continue;
            }
            let mut comp = vec![start];
            seen[start] = true;
            let mut i = 0;
            while i < comp.len() {
                let v = comp[i];
                i += 1;
                for &u in &self.adj[v] {
                    if keep[u] && !seen[u] {
                        seen[u] = true;
                        comp.push(u);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n() > 0 && self.components().len() == 1
    }

    pub fn is_forest(&self) -> bool {
        self.edge_count() + self.components().len() == self.n()
    }

    /// Connected and acyclic.
    pub fn is_tree(&self) -> bool {
        self.n() > 0 && self.edge_count() + 1 == self.n() && self.is_connected()
    }

    /// Whether the subgraph induced by `keep` is a (non-empty) tree.
    pub fn induced_is_tree(&self, keep: &[bool]) -> bool {
        let vertices = keep.iter().filter(|&&k| k).count();
        if vertices == 0 {
            return false;
        }
        let edges = self.edges().filter(|&(u, v)| keep[u] && keep[v]).count();
        edges + 1 == vertices && self.components_within(keep).len() == 1
    }

    /// Whether `chosen` dominates every vertex (closed neighbourhoods).
    pub fn is_dominating(&self, chosen: &[bool]) -> bool {
        (0..self.n()).all(|v| chosen[v] || self.adj[v].iter().any(|&u| chosen[u]))
    }

    /// A minimum dominating set by exhaustive search over increasing sizes.
    pub fn min_dominating_set(&self) -> Vec<usize> {
        let n = self.n();
        for size in 0..=n {
            for combo in (0..n).combinations(size) {
                let mut chosen = vec![false; n];
                for &v in &combo {
                    chosen[v] = true;
                }
                if self.is_dominating(&chosen) {
                    return combo;
                }
            }
        }
        unreachable!("the full vertex set dominates")
    }

    pub fn domination_number(&self) -> usize {
        self.min_dominating_set().len()
    }

    /// A minimum set of vertices whose deletion leaves a non-empty tree.
    pub fn min_tree_deletion(&self) -> Vec<usize> {
        let n = self.n();
        for size in 0..n {
            for combo in (0..n).combinations(size) {
                let mut keep = vec![true; n];
                for &v in &combo {
                    keep[v] = false;
                }
                if self.induced_is_tree(&keep) {
                    return combo;
                }
            }
        }
        (0..n).collect()
    }

    /// Double graph used by the coordination hardness gadget: vertex `v` has
    /// copies `v` and `n + v`, the copies are adjacent, and every original edge
    /// `{u, v}` joins every copy of `u` to every copy of `v`.
    pub fn doubled(&self) -> Graph {
        let n = self.n();
        let mut edges: Vec<(usize, usize)> = (0..n).map(|v| (v, n + v)).collect();
        for (u, v) in self.edges() {
            edges.extend([(u, v), (u, n + v), (n + u, v), (n + u, n + v)]);
        }
        Graph::from_edges(2 * n, edges).expect("doubling preserves simplicity")
    }

    pub fn path(n: usize) -> Graph {
        Graph::from_edges(n, (1..n).map(|v| (v - 1, v))).unwrap()
    }

    pub fn cycle(n: usize) -> Graph {
        let mut edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
        if n > 2 {
            edges.push((n - 1, 0));
        }
        Graph::from_edges(n, edges).unwrap()
    }

    pub fn complete(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).tuple_combinations()).unwrap()
    }

    /// Star with centre 0 and `leaves` leaves.
    pub fn star(leaves: usize) -> Graph {
        Graph::from_edges(leaves + 1, (1..=leaves).map(|v| (0, v))).unwrap()
    }

    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        for (u, v) in self.edges() {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tree_recognition() {
        assert!(Graph::path(4).is_tree());
        assert!(!Graph::complete(3).is_tree());
        let two_edges = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        assert!(!two_edges.is_tree());
        assert!(two_edges.is_forest());
        assert!(Graph::empty(1).is_tree());
    }

    #[test]
    fn domination_numbers() {
        assert_eq!(Graph::star(3).domination_number(), 1);
        assert_eq!(Graph::path(4).domination_number(), 2);
        assert_eq!(Graph::path(3).domination_number(), 1);
        assert_eq!(Graph::empty(2).domination_number(), 2);
        assert_eq!(Graph::complete(3).domination_number(), 1);
    }

    #[test]
    fn tree_deletion_numbers() {
        assert_eq!(Graph::cycle(4).min_tree_deletion().len(), 1);
        assert_eq!(Graph::complete(4).min_tree_deletion().len(), 2);
        assert_eq!(Graph::path(5).min_tree_deletion().len(), 0);
    }

    #[test]
    fn edge_list_round_trip() {
        let g = Graph::parse_edge_list("# star\n0 1\n0 2\n\n0 3\n", 0).unwrap();
        assert_eq!(g, Graph::star(3));
        assert_eq!(Graph::parse_edge_list(&g.to_edge_list(), 0).unwrap(), g);
        assert!(Graph::parse_edge_list("0 x\n", 0).is_err());
        assert!(Graph::parse_edge_list("1 1\n", 0).is_err());
    }

    #[test]
    fn doubled_graph_shape() {
        let d = Graph::path(2).doubled();
        assert_eq!(d.n(), 4);
        // twins (0,2), (1,3) and the 4 copies of edge {0,1}
        assert_eq!(d.edge_count(), 6);
    }
}
