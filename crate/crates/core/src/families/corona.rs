//! Graphs with ι_k = (n - ℓ)/2: leaves hung on a 4-cycle, or on a corona
//! `H ∘ K1` with at least `k` leaves on every corona leaf.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::FamilyError;
use crate::graph::{Graph, Tree};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CoronaKind {
    C4Leaves,
    CoronaWithLeaves,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoronaCertificate {
    pub kind: CoronaKind,
    /// The 4-cycle in cyclic order, or the base vertices `v_i`.
    pub core_vertices: Vec<usize>,
    /// `(v_i, w_i)` pairs; empty for the 4-cycle.
    pub pairs: Vec<(usize, usize)>,
    /// Leaves attached to each core vertex that carries any.
    pub leaf_assignment: BTreeMap<usize, usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CharParams {
    /// Leaf counts on the cycle vertices 0, 1, 2, 3.
    C4 { leaves: [usize; 4] },
    /// Base graph `H`, leaves on each corona vertex `w_i`, leaves on each `v_i`.
    Corona { base: Graph, w_leaves: Vec<usize>, v_leaves: Vec<usize> },
}

/// The path-based graph with ι_k = r = (n - ℓ)/2: a path `v_1..v_r`, a
/// k-star centered at `w_i` hung on each `v_i`, and the remaining
/// `n - (k+2)r` leaves on `w_r`.
///
/// For `r = 1` the vertex `v_1` would be a leaf, so one leaf of `w_1` is
/// moved onto `v_1` (possible once `n >= 4`).
pub fn gen_corona_extremal(k: usize, r: usize, n: usize) -> Result<Tree, FamilyError> {
    if k == 0 || r == 0 {
        return Err(FamilyError::InvalidParams("k and r must be at least 1".into()));
    }
    if n < (k + 2) * r {
        return Err(FamilyError::InvalidParams(format!("n = {n} is below (k+2)r = {}", (k + 2) * r)));
    }
    let mut edges: Vec<(usize, usize)> = (1..r).map(|i| (i - 1, i)).collect();
    edges.extend((0..r).map(|i| (i, r + i)));
    let mut next = 2 * r;
    for i in 0..r {
        let extra = if i + 1 == r { n - (k + 2) * r } else { 0 };
        for _ in 0..k + extra {
            edges.push((r + i, next));
            next += 1;
        }
    }
    if r == 1 && n >= 4 {
        let last = edges.pop().expect("w_1 has leaves");
        edges.push((0, last.1));
    }
    Ok(Tree::from_edges(n, &edges)?)
}

pub fn gen_char_orderminusleaves(k: usize, params: &CharParams) -> Result<(Graph, CoronaCertificate), FamilyError> {
    if k == 0 {
        return Err(FamilyError::InvalidParams("k must be at least 1".into()));
    }
    let mut edges = Vec::new();
    let (core_n, counts) = match params {
        CharParams::C4 { leaves } => {
            if leaves.iter().any(|&c| c < k) {
                return Err(FamilyError::InvalidParams("every cycle vertex needs at least k leaves".into()));
            }
            edges.extend([(0, 1), (1, 2), (2, 3), (0, 3)]);
            (4, leaves.to_vec())
        }
        CharParams::Corona { base, w_leaves, v_leaves } => {
            let m = base.vertex_count();
            if m == 0 || !base.is_connected() {
                return Err(FamilyError::InvalidParams("base graph must be nonempty and connected".into()));
            }
            if w_leaves.len() != m || v_leaves.len() != m {
                return Err(FamilyError::InvalidParams("one leaf count per base vertex is required".into()));
            }
            if w_leaves.iter().any(|&c| c < k) || (m == 1 && v_leaves[0] < k) {
                return Err(FamilyError::InvalidParams("every corona leaf needs at least k leaves".into()));
            }
            edges.extend(base.edges());
            edges.extend((0..m).map(|i| (i, m + i)));
            let mut counts = v_leaves.clone();
            counts.extend(w_leaves);
            (2 * m, counts)
        }
    };
    let mut next = core_n;
    for (v, &c) in counts.iter().enumerate() {
        for _ in 0..c {
            edges.push((v, next));
            next += 1;
        }
    }
    let g = Graph::from_edges(next, &edges)?;
    let cert = recognize_char_orderminusleaves(&g, k)
        .ok_or_else(|| FamilyError::Clause("generated graph does not match its own description".into()))?;
    Ok((g, cert))
}

/// Certificate when `g` is a 4-cycle or a corona with leaves as above.
pub fn recognize_char_orderminusleaves(g: &Graph, k: usize) -> Option<CoronaCertificate> {
    let n = g.vertex_count();
    if k == 0 || n < 3 || !g.is_connected() {
        return None;
    }
    let is_leaf = |v: usize| g.degree(v) == 1;
    let core: Vec<usize> = (0..n).filter(|&v| !is_leaf(v)).collect();
    if core.len() < 2 {
        return None;
    }
    let leaf_count = |v: usize| g.neighbors(v).iter().filter(|&&w| is_leaf(w)).count();
    let assignment: BTreeMap<usize, usize> =
        core.iter().map(|&v| (v, leaf_count(v))).filter(|&(_, c)| c > 0).collect();
    let stripped = g.induced(&core);
    let m = core.len();
    if m == 4 && stripped.edge_count() == 4 && (0..4).all(|i| stripped.degree(i) == 2) {
        if core.iter().any(|&v| leaf_count(v) < k) {
            return None;
        }
        let mut cycle = vec![0usize];
        while cycle.len() < 4 {
            let last = *cycle.last().unwrap();
            let nxt = stripped.neighbors(last).iter().copied().find(|w| !cycle.contains(w))?;
            cycle.push(nxt);
        }
        return Some(CoronaCertificate {
            kind: CoronaKind::C4Leaves,
            core_vertices: cycle.into_iter().map(|i| core[i]).collect(),
            pairs: Vec::new(),
            leaf_assignment: assignment,
        });
    }
    if !m.is_multiple_of(2) {
        return None;
    }
    // Corona case: the leaves of the stripped graph pair off with distinct
    // supports, and the supports induce a connected graph.
    let pairs: Vec<(usize, usize)> = if m == 2 {
        // K2: both ends are leaves of the stripped graph and both need k leaves.
        if core.iter().any(|&v| leaf_count(v) < k) {
            return None;
        }
        vec![(core[0], core[1])]
    } else {
        let mut pairs = Vec::new();
        let mut used = vec![false; m];
        for w in 0..m {
            if stripped.degree(w) == 1 {
                let v = stripped.neighbors(w)[0];
                if stripped.degree(v) == 1 || used[v] {
                    return None;
                }
                used[v] = true;
                used[w] = true;
                pairs.push((core[v], core[w]));
            }
        }
        if pairs.len() * 2 != m || used.iter().any(|&u| !u) {
            return None;
        }
        if pairs.iter().any(|&(_, w)| leaf_count(w) < k) {
            return None;
        }
        let base: Vec<usize> = pairs.iter().map(|&(v, _)| v).collect();
        if !g.induced(&base).is_connected() {
            return None;
        }
        pairs
    };
    Some(CoronaCertificate {
        kind: CoronaKind::CoronaWithLeaves,
        core_vertices: pairs.iter().map(|&(v, _)| v).collect(),
        pairs,
        leaf_assignment: assignment,
    })
}
