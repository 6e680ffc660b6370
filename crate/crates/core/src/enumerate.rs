//! Free-tree enumeration and Prüfer decoding.

use std::collections::BTreeSet;

use crate::canon::{canonical_code, tree_from_code, TreeCode};
use crate::error::GraphError;
use crate::graph::Tree;

pub const MAX_ENUMERATION_ORDER: usize = 20;

/// Number of free trees on `n` vertices, `n = 1..=20`.
pub const FREE_TREE_COUNTS: [usize; 20] = [
    1, 1, 1, 2, 3, 6, 11, 23, 47, 106, 235, 551, 1301, 3159, 7741, 19320, 48629, 123867, 317955,
    823065,
];

/// Decodes a Prüfer sequence into the labeled tree on `seq.len() + 2` vertices.
pub fn prufer_decode(seq: &[usize]) -> Result<Tree, GraphError> {
    let n = seq.len() + 2;
    if let Some(&entry) = seq.iter().find(|&&e| e >= n) {
        return Err(GraphError::PruferEntry { entry, n });
    }
    let mut degree = vec![1usize; n];
    for &v in seq {
        degree[v] += 1;
    }
    let mut leaves: BTreeSet<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    let mut edges = Vec::with_capacity(n - 1);
    for &v in seq {
        let leaf = leaves.pop_first().expect("a leaf always remains");
        edges.push((leaf, v));
        degree[v] -= 1;
        if degree[v] == 1 {
            leaves.insert(v);
        }
    }
    let u = leaves.pop_first().unwrap();
    let w = leaves.pop_first().unwrap();
    edges.push((u, w));
    Tree::from_edges(n, &edges)
}

/// Every labeled tree on `n` vertices, in lexicographic Prüfer order.
pub fn labeled_trees(n: usize) -> impl Iterator<Item = Tree> {
    let len = n.saturating_sub(2);
    let total = if n < 2 { 1 } else { n.pow(len as u32) };
    (0..total).map(move |mut idx| {
        if n == 1 {
            return Tree::from_edges(1, &[]).unwrap();
        }
        let mut seq = vec![0; len];
        for slot in seq.iter_mut().rev() {
            *slot = idx % n;
            idx /= n;
        }
        prufer_decode(&seq).expect("entries are in range")
    })
}

/// One representative per isomorphism class of trees on `n` vertices, in
/// canonical-code order. Vertex labels are those of [`tree_from_code`], so a
/// representative is reproducible from its code.
pub fn enumerate_free_trees(n: usize) -> Result<impl Iterator<Item = Tree>, GraphError> {
    if n == 0 || n > MAX_ENUMERATION_ORDER {
        return Err(GraphError::OrderOutOfRange(n));
    }
    let last = grow_levels(n).pop().expect("n >= 1");
    Ok(last.into_iter().map(|code| tree_from_code(&code).expect("codes decode")))
}

/// All free trees with `1 <= n <= max_n`, ordered by `n` then code.
pub fn enumerate_up_to(max_n: usize) -> Result<Vec<Tree>, GraphError> {
    if max_n == 0 || max_n > MAX_ENUMERATION_ORDER {
        return Err(GraphError::OrderOutOfRange(max_n));
    }
    Ok(grow_levels(max_n)
        .into_iter()
        .flatten()
        .map(|code| tree_from_code(&code).expect("codes decode"))
        .collect())
}

// Every tree on m + 1 vertices arises from one on m vertices by hanging a
// leaf somewhere, so extending each class at every vertex and deduplicating
// by canonical code covers all classes.
fn grow_levels(max_n: usize) -> Vec<BTreeSet<TreeCode>> {
    let mut levels = vec![BTreeSet::from([b"()".to_vec()])];
    for _ in 1..max_n {
        let mut next = BTreeSet::new();
        for code in levels.last().unwrap() {
            let t = tree_from_code(code).expect("codes decode");
            for v in 0..t.order() {
                let grown = Tree::new(t.graph().with_pendants(&[v])).expect("still a tree");
                next.insert(canonical_code(&grown));
            }
        }
        levels.push(next);
    }
    levels
}
