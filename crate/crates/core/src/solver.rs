//! k-isolating sets: verification, exact solvers and normalization.
//!
//! A set `D` is k-isolating when `G - N[D]` has no vertex of degree `>= k`
//! (a `K_{1,k}` subgraph exists exactly when some vertex has `k` neighbors).

use serde::Serialize;

use crate::error::SolverError;
use crate::graph::{Graph, Tree};

/// Hard limit for the subset searches.
pub const BRUTE_FORCE_LIMIT: usize = 24;
/// Above this order the subset search requires an explicit size cap.
pub const UNCAPPED_LIMIT: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    BruteForce,
    TreeDp,
    FamilyConstruction,
}

/// A k-isolating set together with how it was found.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IsolationSolution {
    pub k: usize,
    /// Sorted vertex indices.
    pub set: Vec<usize>,
    pub method: Method,
}

impl IsolationSolution {
    pub fn new(k: usize, mut set: Vec<usize>, method: Method) -> Self {
        set.sort_unstable();
        set.dedup();
        IsolationSolution { k, set, method }
    }

    pub fn size(&self) -> usize {
        self.set.len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DominationSolution {
    pub set: Vec<usize>,
}

impl DominationSolution {
    pub fn size(&self) -> usize {
        self.set.len()
    }
}

/// `G - N[D]` with the map from its vertices back to `G`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Residual {
    pub graph: Graph,
    pub original: Vec<usize>,
}

pub fn residual(g: &Graph, set: &[usize]) -> Residual {
    let covered = g.closed_neighborhood(set);
    let mut mark = vec![false; g.vertex_count()];
    for v in covered {
        mark[v] = true;
    }
    let keep: Vec<usize> = (0..g.vertex_count()).filter(|&v| !mark[v]).collect();
    Residual { graph: g.induced(&keep), original: keep }
}

pub fn contains_k_star(g: &Graph, k: usize) -> bool {
    g.vertex_count() > 0 && g.max_degree() >= k
}

/// A vertex of `G - N[D]` with at least `k` neighbors there, if any.
pub fn star_center_in_residual(g: &Graph, set: &[usize], k: usize) -> Option<usize> {
    let covered = covered_mask(g, set);
    (0..g.vertex_count()).find(|&v| {
        !covered[v] && g.neighbors(v).iter().filter(|&&w| !covered[w]).count() >= k
    })
}

/// Maximum degree of `G - N[D]` (0 when it is empty).
pub fn residual_max_degree(g: &Graph, set: &[usize]) -> usize {
    let covered = covered_mask(g, set);
    (0..g.vertex_count())
        .filter(|&v| !covered[v])
        .map(|v| g.neighbors(v).iter().filter(|&&w| !covered[w]).count())
        .max()
        .unwrap_or(0)
}

pub fn is_isolating(g: &Graph, set: &[usize], k: usize) -> bool {
    star_center_in_residual(g, set, k).is_none()
}

fn covered_mask(g: &Graph, set: &[usize]) -> Vec<bool> {
    let mut covered = vec![false; g.vertex_count()];
    for &v in set {
        covered[v] = true;
        for &w in g.neighbors(v) {
            covered[w] = true;
        }
    }
    covered
}

struct BitGraph {
    n: usize,
    adj: Vec<u32>,
    closed: Vec<u32>,
}

impl BitGraph {
    fn new(g: &Graph) -> Self {
        let adj: Vec<u32> = (0..g.vertex_count())
            .map(|v| g.neighbors(v).iter().fold(0u32, |m, &w| m | 1 << w))
            .collect();
        let closed = adj.iter().enumerate().map(|(v, m)| m | 1 << v).collect();
        BitGraph { n: g.vertex_count(), adj, closed }
    }

    fn full(&self) -> u32 {
        if self.n == 32 { u32::MAX } else { (1u32 << self.n) - 1 }
    }

    fn uncovered(&self, chosen: &[usize]) -> u32 {
        self.full() & !chosen.iter().fold(0u32, |m, &v| m | self.closed[v])
    }

    fn isolates(&self, chosen: &[usize], k: usize) -> bool {
        let rest = self.uncovered(chosen);
        let mut bits = rest;
        while bits != 0 {
            let v = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            if (self.adj[v] & rest).count_ones() as usize >= k {
                return false;
            }
        }
        true
    }
}

/// Smallest set (lexicographically first among the smallest) satisfying
/// `ok`, trying sizes `0..=cap` in order.
fn first_subset(n: usize, cap: usize, mut ok: impl FnMut(&[usize]) -> bool) -> Option<Vec<usize>> {
    for size in 0..=cap.min(n) {
        let mut comb: Vec<usize> = (0..size).collect();
        loop {
            if ok(&comb) {
                return Some(comb);
            }
            let Some(i) = (0..size).rev().find(|&i| comb[i] < n - size + i) else {
                break;
            };
            comb[i] += 1;
            for j in i + 1..size {
                comb[j] = comb[j - 1] + 1;
            }
        }
    }
    None
}

fn check_order(n: usize, cap: Option<usize>) -> Result<(), SolverError> {
    if n > BRUTE_FORCE_LIMIT {
        return Err(SolverError::TooLarge { n, limit: BRUTE_FORCE_LIMIT });
    }
    if n > UNCAPPED_LIMIT && cap.is_none() {
        return Err(SolverError::Precondition(format!(
            "a size cap is required above {UNCAPPED_LIMIT} vertices"
        )));
    }
    Ok(())
}

/// Minimum k-isolating set by increasing-size subset search.
pub fn iota_bruteforce(
    g: &Graph,
    k: usize,
    size_cap: Option<usize>,
) -> Result<IsolationSolution, SolverError> {
    if k == 0 {
        return Err(SolverError::ZeroK);
    }
    let n = g.vertex_count();
    check_order(n, size_cap)?;
    let bits = BitGraph::new(g);
    let cap = size_cap.unwrap_or(n);
    first_subset(n, cap, |s| bits.isolates(s, k))
        .map(|set| IsolationSolution::new(k, set, Method::BruteForce))
        .ok_or(SolverError::CapExceeded { cap })
}

/// Minimum dominating set by increasing-size subset search.
pub fn gamma_bruteforce(g: &Graph) -> Result<DominationSolution, SolverError> {
    let n = g.vertex_count();
    check_order(n, Some(n))?;
    let bits = BitGraph::new(g);
    let set = first_subset(n, n, |s| bits.uncovered(s) == 0).expect("V dominates");
    Ok(DominationSolution { set })
}

const INF: usize = usize::MAX / 4;

fn plus(a: usize, b: usize) -> usize {
    if a >= INF || b >= INF { INF } else { a + b }
}

// Per-vertex optimum of the subtree below it, for each role of the vertex:
//   in_set:   v ∈ D
//   dominated: v ∉ D, some child ∈ D
//   needs:    v ∉ D, no child ∈ D, so the parent must be in D
//   free[j]:  v ∉ N[D] with exactly j children also outside N[D]
#[derive(Debug, Clone)]
struct Costs {
    in_set: usize,
    dominated: usize,
    needs: usize,
    free: Vec<usize>,
}

impl Costs {
    fn free_any(&self) -> usize {
        self.free.iter().copied().min().unwrap_or(INF)
    }

    /// Best free cost leaving room for one more residual neighbor (the parent).
    fn free_below(&self, k: usize) -> usize {
        self.free.iter().take(k.saturating_sub(1)).copied().min().unwrap_or(INF)
    }

    fn argmin_free(&self, limit: usize) -> usize {
        (0..self.free.len().min(limit))
            .min_by_key(|&j| self.free[j])
            .expect("nonempty range")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Role {
    In,
    Dominated,
    Needs,
    Free(usize),
}

fn free_rows(children: &[usize], costs: &[Costs], k: usize) -> Vec<Vec<usize>> {
    let width = (k - 1).min(children.len()) + 1;
    let mut rows = Vec::with_capacity(children.len() + 1);
    let mut row = vec![INF; width];
    row[0] = 0;
    rows.push(row.clone());
    for &c in children {
        let dom = costs[c].dominated;
        let below = costs[c].free_below(k);
        let next: Vec<usize> = (0..width)
            .map(|j| {
                let keep = plus(row[j], dom);
                if j == 0 { keep } else { keep.min(plus(row[j - 1], below)) }
            })
            .collect();
        rows.push(next.clone());
        row = next;
    }
    rows
}

/// Exact ι_k of a tree by dynamic programming rooted at vertex 0.
pub fn iota_tree_dp(t: &Tree, k: usize) -> Result<IsolationSolution, SolverError> {
    iota_tree_dp_rooted(t, k, 0)
}

pub fn iota_tree_dp_rooted(t: &Tree, k: usize, root: usize) -> Result<IsolationSolution, SolverError> {
    if k == 0 {
        return Err(SolverError::ZeroK);
    }
    let n = t.order();
    if root >= n {
        return Err(SolverError::Precondition(format!("root {root} is not a vertex")));
    }
    let mut parent = vec![usize::MAX; n];
    let mut order = Vec::with_capacity(n);
    let mut stack = vec![root];
    parent[root] = root;
    while let Some(v) = stack.pop() {
        order.push(v);
        for &w in t.neighbors(v) {
            if parent[w] == usize::MAX {
                parent[w] = v;
                stack.push(w);
            }
        }
    }
    let children: Vec<Vec<usize>> = (0..n)
        .map(|v| t.neighbors(v).iter().copied().filter(|&w| parent[w] == v && w != root).collect())
        .collect();

    let mut costs = vec![Costs { in_set: INF, dominated: INF, needs: INF, free: Vec::new() }; n];
    for &v in order.iter().rev() {
        let cs = &children[v];
        let in_set = cs.iter().fold(1, |acc, &c| {
            let x = &costs[c];
            plus(acc, x.in_set.min(x.dominated).min(x.needs))
        });
        let dominated = if cs.is_empty() {
            INF
        } else {
            let mut base = 0;
            let mut penalty = INF;
            for &c in cs {
                let x = &costs[c];
                let m = x.in_set.min(x.dominated).min(x.free_any());
                base = plus(base, m);
                penalty = penalty.min(x.in_set - m);
            }
            plus(base, penalty)
        };
        let needs = cs.iter().fold(0, |acc, &c| {
            let x = &costs[c];
            plus(acc, x.dominated.min(x.free_any()))
        });
        let free = free_rows(cs, &costs, k).pop().unwrap();
        costs[v] = Costs { in_set, dominated, needs, free };
    }

    let rc = &costs[root];
    let mut best = (rc.in_set, Role::In);
    if rc.dominated < best.0 {
        best = (rc.dominated, Role::Dominated);
    }
    if rc.free_any() < best.0 {
        best = (rc.free_any(), Role::Free(rc.argmin_free(k)));
    }

    let mut set = Vec::with_capacity(best.0);
    let mut work = vec![(root, best.1)];
    while let Some((v, role)) = work.pop() {
        let cs = &children[v];
        match role {
            Role::In => {
                set.push(v);
                for &c in cs {
                    let x = &costs[c];
                    let m = x.in_set.min(x.dominated).min(x.needs);
                    let r = if x.in_set == m {
                        Role::In
                    } else if x.dominated == m {
                        Role::Dominated
                    } else {
                        Role::Needs
                    };
                    work.push((c, r));
                }
            }
            Role::Dominated => {
                let mut picks: Vec<(usize, Role)> = cs
                    .iter()
                    .map(|&c| {
                        let x = &costs[c];
                        let m = x.in_set.min(x.dominated).min(x.free_any());
                        let r = if x.in_set == m {
                            Role::In
                        } else if x.dominated == m {
                            Role::Dominated
                        } else {
                            Role::Free(x.argmin_free(k))
                        };
                        (c, r)
                    })
                    .collect();
                if !picks.iter().any(|(_, r)| *r == Role::In) {
                    let i = (0..picks.len())
                        .min_by_key(|&i| {
                            let x = &costs[picks[i].0];
                            x.in_set - x.in_set.min(x.dominated).min(x.free_any())
                        })
                        .unwrap();
                    picks[i].1 = Role::In;
                }
                work.extend(picks);
            }
            Role::Needs => {
                for &c in cs {
                    let x = &costs[c];
                    let r = if x.dominated <= x.free_any() {
                        Role::Dominated
                    } else {
                        Role::Free(x.argmin_free(k))
                    };
                    work.push((c, r));
                }
            }
            Role::Free(mut j) => {
                let rows = free_rows(cs, &costs, k);
                for i in (0..cs.len()).rev() {
                    let c = cs[i];
                    let x = &costs[c];
                    if rows[i + 1][j] == plus(rows[i][j], x.dominated) {
                        work.push((c, Role::Dominated));
                    } else {
                        work.push((c, Role::Free(x.argmin_free(k - 1))));
                        j -= 1;
                    }
                }
            }
        }
    }
    let sol = IsolationSolution::new(k, set, Method::TreeDp);
    debug_assert_eq!(sol.size(), best.0);
    debug_assert!(is_isolating(t.graph(), &sol.set, k));
    Ok(sol)
}

/// Swaps every leaf of a k-isolating set for its support vertex.
///
/// Never increases the size; a minimum set stays minimum.
pub fn normalize_no_leaves(g: &Graph, sol: &IsolationSolution) -> Result<IsolationSolution, SolverError> {
    if g.vertex_count() < 3 || !g.is_connected() {
        return Err(SolverError::Precondition("graph must be connected with n >= 3".into()));
    }
    if !is_isolating(g, &sol.set, sol.k) {
        return Err(SolverError::Precondition("set is not k-isolating".into()));
    }
    let set = sol
        .set
        .iter()
        .map(|&v| if g.degree(v) == 1 { g.neighbors(v)[0] } else { v })
        .collect();
    Ok(IsolationSolution::new(sol.k, set, sol.method))
}

/// Swaps every degree-2 support vertex of a leaf-free isolating set for its
/// non-leaf neighbor.
pub fn normalize_no_deg2_support(
    t: &Tree,
    sol: &IsolationSolution,
) -> Result<IsolationSolution, SolverError> {
    let g = t.graph();
    if t.order() < 5 {
        return Err(SolverError::Precondition("tree must have n >= 5".into()));
    }
    if sol.k != 1 {
        return Err(SolverError::Precondition("only defined for k = 1".into()));
    }
    if sol.set.iter().any(|&v| t.is_leaf(v)) {
        return Err(SolverError::Precondition("set contains a leaf".into()));
    }
    if !is_isolating(g, &sol.set, 1) {
        return Err(SolverError::Precondition("set is not isolating".into()));
    }
    let is_support = |v: usize| t.neighbors(v).iter().any(|&w| t.is_leaf(w));
    let set = sol
        .set
        .iter()
        .map(|&v| {
            if t.degree(v) == 2 && is_support(v) {
                *t.neighbors(v).iter().find(|&&w| !t.is_leaf(w)).expect("n >= 5")
            } else {
                v
            }
        })
        .collect();
    Ok(IsolationSolution::new(1, set, sol.method))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k1() -> Tree {
        Tree::from_edges(1, &[]).unwrap()
    }

    #[test]
    fn residual_examples() {
        let p5 = Graph::path(5);
        let r = residual(&p5, &[2]);
        assert_eq!((r.graph.vertex_count(), r.graph.edge_count()), (2, 0));
        let r = residual(&Graph::path(6), &[1]);
        assert_eq!(r.original, vec![3, 4, 5]);
        assert_eq!(r.graph, Graph::path(3));
        let s = Graph::star(4);
        assert_eq!(residual(&s, &[]).graph, s);
    }

    #[test]
    fn star_detection() {
        assert!(contains_k_star(&Graph::path(3), 2));
        assert!(!contains_k_star(&Graph::path(3), 3));
        assert!(!contains_k_star(&Graph::empty(0), 1));
    }

    #[test]
    fn isolating_examples() {
        for k in 1..5 {
            let s = Graph::star(k);
            assert!(is_isolating(&s, &[0], k));
            assert!(!is_isolating(&s, &[], k));
        }
        assert_eq!(star_center_in_residual(&Graph::star(2), &[], 2), Some(0));
        assert_eq!(residual_max_degree(&Graph::star(2), &[0]), 0);
    }

    #[test]
    fn brute_force_examples() {
        assert_eq!(iota_bruteforce(&Graph::path(6), 1, None).unwrap().size(), 2);
        assert_eq!(iota_bruteforce(&Graph::path(7), 2, None).unwrap().size(), 1);
        assert_eq!(iota_bruteforce(k1().graph(), 1, None).unwrap().size(), 0);
        // lexicographic witness
        assert_eq!(iota_bruteforce(&Graph::path(6), 1, None).unwrap().set, vec![0, 3]);
        assert_eq!(iota_bruteforce(&Graph::path(6), 1, Some(1)), Err(SolverError::CapExceeded { cap: 1 }));
        assert!(matches!(iota_bruteforce(&Graph::path(25), 1, Some(9)), Err(SolverError::TooLarge { .. })));
        assert!(matches!(iota_bruteforce(&Graph::path(17), 1, None), Err(SolverError::Precondition(_))));
        assert_eq!(iota_bruteforce(&Graph::path(17), 1, Some(5)).unwrap().size(), 4);
        assert_eq!(iota_bruteforce(&Graph::path(3), 0, None), Err(SolverError::ZeroK));
    }

    #[test]
    fn dp_examples() {
        assert_eq!(iota_tree_dp(&Tree::path(8), 2).unwrap().size(), 2);
        for k in 1..6 {
            assert_eq!(iota_tree_dp(&Tree::star(k), k).unwrap().size(), 1);
        }
        assert_eq!(iota_tree_dp(&k1(), 1).unwrap().size(), 0);
        assert_eq!(iota_tree_dp(&Tree::path(2), 2).unwrap().size(), 0);
        assert_eq!(iota_tree_dp(&Tree::path(2), 1).unwrap().size(), 1);
    }

    #[test]
    fn domination_examples() {
        assert_eq!(gamma_bruteforce(&Graph::cycle(4)).unwrap().size(), 2);
        assert_eq!(gamma_bruteforce(&Graph::path(4)).unwrap().size(), 2);
        assert_eq!(gamma_bruteforce(&Graph::star(5)).unwrap().size(), 1);
    }

    #[test]
    fn leaf_normalizer() {
        let p5 = Graph::path(5);
        let sol = IsolationSolution::new(1, vec![0, 4], Method::BruteForce);
        assert_eq!(normalize_no_leaves(&p5, &sol).unwrap().set, vec![1, 3]);
        let sol = IsolationSolution::new(1, vec![2], Method::BruteForce);
        assert_eq!(normalize_no_leaves(&p5, &sol).unwrap().set, vec![2]);
        let sol = IsolationSolution::new(1, vec![3], Method::BruteForce);
        assert_eq!(normalize_no_leaves(&Graph::star(3), &sol).unwrap().set, vec![0]);
        // {u0} does not isolate P5
        let sol = IsolationSolution::new(1, vec![0], Method::BruteForce);
        assert!(normalize_no_leaves(&p5, &sol).is_err());
    }

    #[test]
    fn degree_two_support_normalizer() {
        let p7 = Tree::path(7);
        let sol = IsolationSolution::new(1, vec![1, 5], Method::BruteForce);
        assert_eq!(normalize_no_deg2_support(&p7, &sol).unwrap().set, vec![2, 4]);
        let p6 = Tree::path(6);
        let sol = IsolationSolution::new(1, vec![2, 3], Method::BruteForce);
        assert_eq!(normalize_no_deg2_support(&p6, &sol).unwrap().set, vec![2, 3]);
        // {u1} does not isolate P5
        let sol = IsolationSolution::new(1, vec![1], Method::BruteForce);
        assert!(normalize_no_deg2_support(&Tree::path(5), &sol).is_err());
        let sol = IsolationSolution::new(1, vec![0, 5], Method::BruteForce);
        assert!(normalize_no_deg2_support(&p6, &sol).is_err());
    }
}
