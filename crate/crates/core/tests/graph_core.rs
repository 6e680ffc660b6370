use std::collections::{BTreeSet, VecDeque};

use kstar_isolation::canon::{canonical_code, tree_from_code};
use kstar_isolation::enumerate::{enumerate_free_trees, labeled_trees, prufer_decode, FREE_TREE_COUNTS};
use kstar_isolation::io::{parse_edge_list, parse_graph6, write_edge_list, write_graph6};
use kstar_isolation::{Graph, GraphError, Tree};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn codes(trees: impl IntoIterator<Item = Tree>) -> BTreeSet<Vec<u8>> {
    trees.into_iter().map(|t| canonical_code(&t)).collect()
}

/// Isomorphism by trying every bijection; only for tiny trees.
fn isomorphic_by_permutation(a: &Graph, b: &Graph) -> bool {
    let n = a.vertex_count();
    if n != b.vertex_count() || a.edge_count() != b.edge_count() {
        return false;
    }
    let mut perm: Vec<usize> = (0..n).collect();
    fn search(i: usize, perm: &mut Vec<usize>, a: &Graph, b: &Graph) -> bool {
        if i == perm.len() {
            return a.edges().iter().all(|&(u, v)| b.has_edge(perm[u], perm[v]));
        }
        for j in i..perm.len() {
            perm.swap(i, j);
            if search(i + 1, perm, a, b) {
                return true;
            }
            perm.swap(i, j);
        }
        false
    }
    search(0, &mut perm, a, b)
}

fn eccentricity_max(g: &Graph) -> usize {
    (0..g.vertex_count())
        .map(|s| {
            let mut dist = vec![usize::MAX; g.vertex_count()];
            dist[s] = 0;
            let mut q = VecDeque::from([s]);
            while let Some(v) = q.pop_front() {
                for &w in g.neighbors(v) {
                    if dist[w] == usize::MAX {
                        dist[w] = dist[v] + 1;
                        q.push_back(w);
                    }
                }
            }
            dist.into_iter().max().unwrap()
        })
        .max()
        .unwrap()
}

#[test]
fn enumeration_matches_prufer_dedup() {
    for n in 1..=8 {
        let from_labeled = codes(labeled_trees(n));
        let enumerated = codes(enumerate_free_trees(n).unwrap());
        assert_eq!(from_labeled, enumerated, "n = {n}");
        assert_eq!(enumerated.len(), FREE_TREE_COUNTS[n - 1]);
    }
}

#[test]
fn random_labeled_trees_of_order_ten_are_covered() {
    let known = codes(enumerate_free_trees(10).unwrap());
    assert_eq!(known.len(), 106);
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut hit = BTreeSet::new();
    for _ in 0..20_000 {
        let seq: Vec<usize> = (0..8).map(|_| rng.gen_range(0..10)).collect();
        let code = canonical_code(&prufer_decode(&seq).unwrap());
        assert!(known.contains(&code));
        hit.insert(code);
    }
    assert!(hit.len() > 90);
}

#[test]
fn counts_up_to_fourteen() {
    for n in 1..=14 {
        let trees: Vec<Tree> = enumerate_free_trees(n).unwrap().collect();
        assert_eq!(trees.len(), FREE_TREE_COUNTS[n - 1], "n = {n}");
        assert_eq!(codes(trees).len(), FREE_TREE_COUNTS[n - 1]);
    }
    assert_eq!(enumerate_free_trees(0).err(), Some(GraphError::OrderOutOfRange(0)));
    assert_eq!(enumerate_free_trees(21).err(), Some(GraphError::OrderOutOfRange(21)));
}

#[test]
fn six_vertex_classes_pairwise_non_isomorphic() {
    let trees: Vec<Tree> = enumerate_free_trees(6).unwrap().collect();
    assert_eq!(trees.len(), 6);
    for (i, a) in trees.iter().enumerate() {
        for b in &trees[i + 1..] {
            assert!(!isomorphic_by_permutation(a.graph(), b.graph()));
        }
    }
}

#[test]
fn order_four_prufer_classes() {
    let all: Vec<Tree> = labeled_trees(4).collect();
    assert_eq!(all.len(), 16);
    let edge_sets: BTreeSet<_> = all.iter().map(|t| t.graph().edges()).collect();
    assert_eq!(edge_sets.len(), 16);
    assert_eq!(codes(all).len(), 2);
    let star = prufer_decode(&[0, 0]).unwrap();
    assert_eq!(star.degree(0), 3);
}

#[test]
fn prufer_is_a_bijection() {
    for n in 2..=6 {
        let edge_sets: BTreeSet<_> = labeled_trees(n).map(|t| t.graph().edges()).collect();
        assert_eq!(edge_sets.len(), n.pow(n as u32 - 2), "n = {n}");
    }
    assert_eq!(prufer_decode(&[]).unwrap().graph().edges(), vec![(0, 1)]);
    assert_eq!(prufer_decode(&[5, 0]).err(), Some(GraphError::PruferEntry { entry: 5, n: 4 }));
}

#[test]
fn structural_identities_over_enumeration() {
    for n in 2..=11 {
        for t in enumerate_free_trees(n).unwrap() {
            assert!(t.leaf_identity_holds());
            assert!(t.leaf_count() >= 2);
            assert!(t.strong_support_set().iter().all(|v| t.support_set().contains(v)));
            let p = t.diameter_path(false).unwrap();
            assert!(p.is_valid_in(t.graph()));
            assert_eq!(p.length(), eccentricity_max(t.graph()));
            assert_eq!(t.diameter(), p.length());
        }
    }
}

#[test]
fn heaviest_diametral_path_maximizes_u1() {
    for n in 3..=10 {
        for t in enumerate_free_trees(n).unwrap() {
            let d = t.diameter();
            let p = t.diameter_path(true).unwrap();
            assert_eq!(p.length(), d);
            // every diametral path, both orientations, via all pairs
            let best = (0..n)
                .flat_map(|a| (0..n).map(move |b| (a, b)))
                .map(|(a, b)| t.path_between(a, b))
                .filter(|path| path.len() == d + 1)
                .map(|path| t.degree(path[1]))
                .max()
                .unwrap();
            assert_eq!(t.degree(p.vertices[1]), best);
        }
    }
}

#[test]
fn build_and_tree_examples() {
    let k2 = Graph::from_edges(2, &[(0, 1)]).unwrap();
    assert_eq!(k2.edge_count(), 1);
    let star = Graph::from_edges(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
    assert_eq!(star.degree(0), 4);
    let p6 = Tree::path(6);
    assert_eq!((p6.leaf_count(), p6.support_count(), p6.max_degree()), (2, 2, 2));
    let k14 = Tree::star(4);
    assert_eq!((k14.leaf_count(), k14.support_count(), k14.max_degree()), (4, 1, 4));
    assert!(matches!(Tree::new(Graph::cycle(4)), Err(GraphError::Cyclic { .. })));
    assert_eq!(Graph::from_edges(3, &[(0, 3)]).err(), Some(GraphError::VertexOutOfRange { u: 0, v: 3, n: 3 }));
    assert_eq!(Graph::from_edges(3, &[(1, 1)]).err(), Some(GraphError::SelfLoop(1)));
    assert!(matches!(Graph::from_edges(3, &[(0, 1), (1, 0)]), Err(GraphError::DuplicateEdge(..))));
    let p3 = Graph::path(3);
    assert_eq!(p3.closed_neighborhood(&[1]), vec![0, 1, 2]);
    assert!(p3.closed_neighborhood(&[]).is_empty());
    assert_eq!(star.closed_neighborhood(&[3]), vec![0, 3]);
    assert_eq!(Tree::star(3).diameter_path(false).unwrap().length(), 2);
    assert!(Tree::path(1).diameter_path(false).is_err());
}

#[test]
fn path_four_codes() {
    let p4 = Tree::path(4);
    let relabeled = Tree::from_edges(4, &[(2, 0), (0, 3), (3, 1)]).unwrap();
    assert_eq!(canonical_code(&p4), canonical_code(&relabeled));
    assert_ne!(canonical_code(&p4), canonical_code(&Tree::star(3)));
}

fn arb_tree() -> impl Strategy<Value = Tree> {
    (2usize..=14).prop_flat_map(|n| proptest::collection::vec(0..n, n - 2)).prop_map(|seq| prufer_decode(&seq).unwrap())
}

proptest! {
    #[test]
    fn canonical_code_ignores_labels(t in arb_tree(), seed in any::<u64>()) {
        let n = t.order();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for i in (1..n).rev() {
            perm.swap(i, rng.gen_range(0..=i));
        }
        let relabeled = Tree::new(t.graph().relabel(&perm)).unwrap();
        prop_assert_eq!(canonical_code(&t), canonical_code(&relabeled));
    }

    #[test]
    fn code_decodes_to_same_class(t in arb_tree()) {
        let code = canonical_code(&t);
        let back = tree_from_code(&code).unwrap();
        prop_assert_eq!(back.order(), t.order());
        prop_assert_eq!(canonical_code(&back), code);
    }

    #[test]
    fn text_formats_round_trip(t in arb_tree()) {
        let g = t.graph();
        prop_assert_eq!(&parse_edge_list(&write_edge_list(g)).unwrap(), g);
        prop_assert_eq!(&parse_graph6(&write_graph6(g)).unwrap(), g);
    }

    #[test]
    fn tree_statistics_are_consistent(t in arb_tree()) {
        prop_assert!(t.leaf_identity_holds());
        prop_assert_eq!(t.graph().edge_count() + 1, t.order());
        let hist_total: usize = t.degree_histogram().values().sum();
        prop_assert_eq!(hist_total, t.order());
        for &s in t.support_set() {
            prop_assert!(t.neighbors(s).iter().any(|&w| t.is_leaf(w)));
        }
    }
}
