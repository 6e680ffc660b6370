//! Simple undirected graphs and validated trees.
//!
//! Vertices are contiguous indices `0..n`. Both types are immutable once
//! built, so they can be shared freely between sweep workers.

use std::collections::{BTreeMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::GraphError;

/// Undirected simple graph stored as sorted adjacency lists.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
}

impl Graph {
    /// Builds a graph on `n` vertices, rejecting loops, duplicates and
    /// out-of-range endpoints.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(GraphError::VertexOutOfRange { u, v, n });
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            if adj[u].contains(&v) {
                return Err(GraphError::DuplicateEdge(u, v));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(Graph { adj })
    }

    pub fn empty(n: usize) -> Self {
        Graph { adj: vec![Vec::new(); n] }
    }

    pub fn path(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edges(n, &edges).expect("path edges are valid")
    }

    /// `K_{1,k}` with center 0.
    pub fn star(k: usize) -> Self {
        let edges: Vec<_> = (1..=k).map(|i| (0, i)).collect();
        Graph::from_edges(k + 1, &edges).expect("star edges are valid")
    }

    pub fn cycle(n: usize) -> Self {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n, &edges).expect("cycle edges are valid")
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for (u, list) in self.adj.iter().enumerate() {
            out.extend(list.iter().filter(|&&v| u < v).map(|&v| (u, v)));
        }
        out
    }

    pub fn leaves(&self) -> Vec<usize> {
        (0..self.vertex_count()).filter(|&v| self.degree(v) == 1).collect()
    }

    /// Distances from every vertex of `sources`; unreachable vertices get `None`.
    pub fn bfs_distances(&self, sources: &[usize]) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.vertex_count()];
        let mut queue = VecDeque::new();
        for &s in sources {
            if dist[s].is_none() {
                dist[s] = Some(0);
                queue.push_back(s);
            }
        }
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap();
            for &w in &self.adj[u] {
                if dist[w].is_none() {
                    dist[w] = Some(du + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    pub fn is_connected(&self) -> bool {
        let n = self.vertex_count();
        n == 0 || self.bfs_distances(&[0]).iter().all(Option::is_some)
    }

    /// `N[D]`: the vertices of `set` together with all their neighbors, sorted.
    pub fn closed_neighborhood(&self, set: &[usize]) -> Vec<usize> {
        let mut mark = vec![false; self.vertex_count()];
        for &v in set {
            mark[v] = true;
            for &w in &self.adj[v] {
                mark[w] = true;
            }
        }
        mark.iter().enumerate().filter(|(_, &m)| m).map(|(v, _)| v).collect()
    }

    /// Subgraph induced by `keep` (any order); vertex `i` of the result is `keep[i]`.
    pub fn induced(&self, keep: &[usize]) -> Graph {
        let mut index = vec![usize::MAX; self.vertex_count()];
        for (i, &v) in keep.iter().enumerate() {
            index[v] = i;
        }
        let adj = keep
            .iter()
            .map(|&v| {
                let mut list: Vec<usize> = self.adj[v]
                    .iter()
                    .filter(|&&w| index[w] != usize::MAX)
                    .map(|&w| index[w])
                    .collect();
                list.sort_unstable();
                list
            })
            .collect();
        Graph { adj }
    }

    /// A copy of the graph with one new leaf per entry of `attach`, hung on that vertex.
    pub fn with_pendants(&self, attach: &[usize]) -> Graph {
        let n = self.vertex_count();
        let mut adj = self.adj.clone();
        for (i, &v) in attach.iter().enumerate() {
            adj[v].push(n + i);
            adj.push(vec![v]);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Graph { adj }
    }

    /// Same graph with vertex `v` renamed to `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        let edges: Vec<_> = self.edges().into_iter().map(|(u, v)| (perm[u], perm[v])).collect();
        Graph::from_edges(self.vertex_count(), &edges).expect("relabeling keeps a simple graph")
    }
}

/// A connected acyclic graph with its leaf and support statistics cached.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tree {
    graph: Graph,
    leaves: Vec<usize>,
    supports: Vec<usize>,
    strong_supports: Vec<usize>,
    degree_histogram: BTreeMap<usize, usize>,
}

impl Tree {
    pub fn new(graph: Graph) -> Result<Self, GraphError> {
        let n = graph.vertex_count();
        if n == 0 {
            return Err(GraphError::TooSmall { needed: 1, got: 0 });
        }
        if graph.edge_count() != n - 1 {
            if graph.edge_count() >= n {
                return Err(GraphError::Cyclic { edges: graph.edge_count(), n });
            }
            return Err(GraphError::Disconnected);
        }
        if !graph.is_connected() {
            return Err(GraphError::Disconnected);
        }
        let leaves = graph.leaves();
        let mut leaf_neighbors = vec![0usize; n];
        for &l in &leaves {
            leaf_neighbors[graph.neighbors(l)[0]] += 1;
        }
        let supports = (0..n).filter(|&v| leaf_neighbors[v] >= 1).collect();
        let strong_supports = (0..n).filter(|&v| leaf_neighbors[v] >= 2).collect();
        let mut degree_histogram = BTreeMap::new();
        for v in 0..n {
            *degree_histogram.entry(graph.degree(v)).or_insert(0) += 1;
        }
        Ok(Tree { graph, leaves, supports, strong_supports, degree_histogram })
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        Tree::new(Graph::from_edges(n, edges)?)
    }

    pub fn path(n: usize) -> Self {
        Tree::new(Graph::path(n)).expect("paths are trees")
    }

    pub fn star(k: usize) -> Self {
        Tree::new(Graph::star(k)).expect("stars are trees")
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn into_graph(self) -> Graph {
        self.graph
    }

    pub fn order(&self) -> usize {
        self.graph.vertex_count()
    }

    pub fn leaf_set(&self) -> &[usize] {
        &self.leaves
    }

    /// Leaf order ℓ. A single vertex has no leaves.
    pub fn leaf_count(&self) -> usize {
        self.leaves.len()
    }

    pub fn support_set(&self) -> &[usize] {
        &self.supports
    }

    pub fn support_count(&self) -> usize {
        self.supports.len()
    }

    pub fn strong_support_set(&self) -> &[usize] {
        &self.strong_supports
    }

    pub fn degree_histogram(&self) -> &BTreeMap<usize, usize> {
        &self.degree_histogram
    }

    pub fn max_degree(&self) -> usize {
        self.graph.max_degree()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.graph.degree(v)
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        self.graph.neighbors(v)
    }

    pub fn is_leaf(&self, v: usize) -> bool {
        self.graph.degree(v) == 1
    }

    /// `K_{1,m}` for some `m >= 1` (this includes `K_2`).
    pub fn is_star(&self) -> bool {
        let n = self.order();
        n >= 2 && self.max_degree() == n - 1
    }

    /// Number of vertices of degree at least `k`.
    pub fn count_degree_at_least(&self, k: usize) -> usize {
        self.degree_histogram.range(k..).map(|(_, c)| c).sum()
    }

    /// ℓ = 2 + Σ_{i≥3} n_i (i − 2), which every tree with at least two vertices satisfies.
    pub fn leaf_identity_holds(&self) -> bool {
        if self.order() < 2 {
            return true;
        }
        let rhs: usize = 2 + self
            .degree_histogram
            .range(3..)
            .map(|(&d, &c)| c * (d - 2))
            .sum::<usize>();
        rhs == self.leaf_count()
    }

    pub fn diameter(&self) -> usize {
        if self.order() < 2 {
            return 0;
        }
        let far = farthest(&self.graph, 0).0;
        farthest(&self.graph, far).1
    }

    /// Unique path between two vertices.
    pub fn path_between(&self, from: usize, to: usize) -> Vec<usize> {
        let n = self.order();
        let mut parent = vec![usize::MAX; n];
        let mut queue = VecDeque::from([to]);
        parent[to] = to;
        while let Some(u) = queue.pop_front() {
            for &w in self.neighbors(u) {
                if parent[w] == usize::MAX {
                    parent[w] = u;
                    queue.push_back(w);
                }
            }
        }
        let mut path = vec![from];
        let mut cur = from;
        while cur != to {
            cur = parent[cur];
            path.push(cur);
        }
        path
    }

    /// A longest path. With `maximize_u1_degree`, the returned path maximizes
    /// the degree of its second vertex over all diametral paths in both
    /// orientations (ties broken by the smallest endpoint pair).
    pub fn diameter_path(&self, maximize_u1_degree: bool) -> Result<PathWitness, GraphError> {
        let n = self.order();
        if n < 2 {
            return Err(GraphError::TooSmall { needed: 2, got: n });
        }
        if !maximize_u1_degree {
            let (a, _) = farthest(&self.graph, 0);
            let (b, _) = farthest(&self.graph, a);
            return Ok(PathWitness::new(self.path_between(a, b)));
        }
        let d = self.diameter();
        let mut best: Option<(usize, usize, usize)> = None;
        for u in 0..n {
            let dist = self.graph.bfs_distances(&[u]);
            for (v, dv) in dist.iter().enumerate() {
                if *dv != Some(d) {
                    continue;
                }
                let u1 = self.path_between(u, v)[1];
                let deg = self.degree(u1);
                if best.is_none_or(|(bd, _, _)| deg > bd) {
                    best = Some((deg, u, v));
                }
            }
        }
        let (_, u, v) = best.expect("a diametral pair exists");
        Ok(PathWitness::new(self.path_between(u, v)))
    }
}

fn farthest(g: &Graph, from: usize) -> (usize, usize) {
    let dist = g.bfs_distances(&[from]);
    let mut best = (from, 0);
    for (v, d) in dist.iter().enumerate() {
        if let Some(d) = *d {
            if d > best.1 {
                best = (v, d);
            }
        }
    }
    best
}

/// A simple path `u_0, …, u_d`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PathWitness {
    pub vertices: Vec<usize>,
}

impl PathWitness {
    fn new(vertices: Vec<usize>) -> Self {
        PathWitness { vertices }
    }

    pub fn length(&self) -> usize {
        self.vertices.len().saturating_sub(1)
    }

    /// Consecutive vertices adjacent in `g` and no repeats.
    pub fn is_valid_in(&self, g: &Graph) -> bool {
        let mut seen = vec![false; g.vertex_count()];
        for &v in &self.vertices {
            if v >= seen.len() || seen[v] {
                return false;
            }
            seen[v] = true;
        }
        self.vertices.windows(2).all(|w| g.has_edge(w[0], w[1]))
    }
}
