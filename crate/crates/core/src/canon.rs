//! Center-rooted AHU encoding for unlabeled trees.
//!
//! A rooted subtree encodes as `(` + sorted child encodings + `)`. A tree
//! with two centers takes the smaller of its two rootings, so the code is a
//! complete isomorphism invariant.

use crate::error::GraphError;
use crate::graph::Tree;

/// Canonical code; printable ASCII made of `(` and `)`.
pub type TreeCode = Vec<u8>;

pub fn centers(t: &Tree) -> Vec<usize> {
    if t.order() == 1 {
        return vec![0];
    }
    let path = t.diameter_path(false).expect("order >= 2").vertices;
    let d = path.len() - 1;
    if d.is_multiple_of(2) {
        vec![path[d / 2]]
    } else {
        vec![path[d / 2], path[d / 2 + 1]]
    }
}

pub fn rooted_code(t: &Tree, root: usize) -> TreeCode {
    fn encode(t: &Tree, v: usize, parent: usize) -> Vec<u8> {
        let mut kids: Vec<Vec<u8>> = t
            .neighbors(v)
            .iter()
            .filter(|&&w| w != parent)
            .map(|&w| encode(t, w, v))
            .collect();
        kids.sort_unstable();
        let mut out = Vec::with_capacity(2 + kids.iter().map(Vec::len).sum::<usize>());
        out.push(b'(');
        for k in kids {
            out.extend_from_slice(&k);
        }
        out.push(b')');
        out
    }
    encode(t, root, usize::MAX)
}

/// Equal for two trees exactly when they are isomorphic.
pub fn canonical_code(t: &Tree) -> TreeCode {
    centers(t)
        .into_iter()
        .map(|c| rooted_code(t, c))
        .min()
        .expect("at least one center")
}

pub fn code_string(code: &[u8]) -> String {
    String::from_utf8(code.to_vec()).expect("codes are ASCII")
}

/// Rebuilds a tree from a rooted code; the root becomes vertex 0 and the
/// remaining vertices are numbered in preorder.
pub fn tree_from_code(code: &[u8]) -> Result<Tree, GraphError> {
    let mut edges = Vec::new();
    let mut stack: Vec<usize> = Vec::new();
    let mut next = 0usize;
    for (i, &b) in code.iter().enumerate() {
        match b {
            b'(' => {
                if stack.is_empty() && i != 0 {
                    return Err(GraphError::BadCode);
                }
                if let Some(&p) = stack.last() {
                    edges.push((p, next));
                }
                stack.push(next);
                next += 1;
            }
            b')' => {
                stack.pop().ok_or(GraphError::BadCode)?;
            }
            _ => return Err(GraphError::BadCode),
        }
    }
    if !stack.is_empty() || next == 0 {
        return Err(GraphError::BadCode);
    }
    Tree::from_edges(next, &edges)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn relabeled_paths_agree() {
        let p4 = Tree::path(4);
        let q = Tree::from_edges(4, &[(2, 0), (0, 3), (3, 1)]).unwrap();
        assert_eq!(canonical_code(&p4), canonical_code(&q));
        assert_ne!(canonical_code(&p4), canonical_code(&Tree::star(3)));
    }

    #[test]
    fn decode_round_trips() {
        for t in [Tree::path(7), Tree::star(4), Tree::from_edges(1, &[]).unwrap()] {
            let code = canonical_code(&t);
            let back = tree_from_code(&code).unwrap();
            assert_eq!(canonical_code(&back), code);
        }
        assert!(tree_from_code(b"(()").is_err());
        assert!(tree_from_code(b"()()").is_err());
        assert!(tree_from_code(b"").is_err());
    }
}
