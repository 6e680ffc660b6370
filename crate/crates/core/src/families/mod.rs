//! Generators, recognizers and constructive minimum sets for the extremal
//! tree families.

mod corona;
mod f_family;
mod tk_family;

use std::collections::BTreeMap;

pub use corona::{
    gen_char_orderminusleaves, gen_corona_extremal, recognize_char_orderminusleaves, CharParams, CoronaCertificate,
    CoronaKind,
};
pub use f_family::{gen_family_f, min_iso_set_f, recognize_f, sample_family_f, FCertificate, FWiring};
pub use tk_family::{gen_family_tk, min_iso_set_tk, recognize_tk, sample_family_tk, TkCertificate};

use crate::error::FamilyError;
use crate::graph::Tree;

/// A path `0-1-2-3` with `2k - 1` extra leaves on vertex 1. Here ι = 1 while
/// (n + ℓ)/4 = k + 1.
pub fn gen_spider_gap(k: usize) -> Result<Tree, FamilyError> {
    if k == 0 {
        return Err(FamilyError::InvalidParams("k must be at least 1".into()));
    }
    let mut edges = vec![(0, 1), (1, 2), (2, 3)];
    edges.extend((0..2 * k - 1).map(|i| (1, 4 + i)));
    Ok(Tree::from_edges(2 * k + 3, &edges)?)
}

/// Adds `multiplicities[v]` extra leaves at each support vertex `v` of a
/// member of 𝓕.
pub fn add_twin_leaves(t: &Tree, cert: &FCertificate, multiplicities: &BTreeMap<usize, usize>) -> Result<Tree, FamilyError> {
    cert.validate(t)?;
    let mut attach = Vec::new();
    for (&v, &count) in multiplicities {
        if t.support_set().binary_search(&v).is_err() {
            return Err(FamilyError::NotSupport(v));
        }
        attach.extend(std::iter::repeat_n(v, count));
    }
    Ok(Tree::new(t.graph().with_pendants(&attach))?)
}

/// Keeps only the smallest leaf at every support vertex.
pub fn strip_twin_leaves(t: &Tree) -> Tree {
    let n = t.order();
    let mut keep_leaf = vec![false; n];
    for &s in t.support_set() {
        if let Some(&l) = t.neighbors(s).iter().find(|&&w| t.is_leaf(w)) {
            keep_leaf[l] = true;
        }
    }
    let keep: Vec<usize> = (0..n).filter(|&v| !t.is_leaf(v) || keep_leaf[v] || n <= 2).collect();
    Tree::new(t.graph().induced(&keep)).expect("removing twin leaves keeps a tree")
}

/// Adds a new path `P_len` and joins its vertex `at` (0-based along the
/// path) to `v`.
pub fn join_path(t: &Tree, v: usize, len: usize, at: usize) -> Result<Tree, FamilyError> {
    if v >= t.order() || at >= len {
        return Err(FamilyError::InvalidParams(format!("cannot join path position {at} of P{len} to vertex {v}")));
    }
    let n = t.order();
    let mut edges = t.graph().edges();
    edges.extend((1..len).map(|i| (n + i - 1, n + i)));
    edges.push((v, n + at));
    Ok(Tree::from_edges(n + len, &edges)?)
}
