use kstar_isolation::enumerate::{enumerate_free_trees, prufer_decode};
use kstar_isolation::families::gen_spider_gap;
use kstar_isolation::solver::{
    contains_k_star, gamma_bruteforce, iota_bruteforce, iota_tree_dp, iota_tree_dp_rooted, is_isolating,
    normalize_no_deg2_support, normalize_no_leaves, residual,
};
use kstar_isolation::{Graph, IsolationSolution, Method, SolverError, Tree};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Smallest k-isolating set by scanning every bitmask; ties go to the
/// lexicographically smallest sorted vertex list.
fn naive_iota(g: &Graph, k: usize) -> Vec<usize> {
    let n = g.vertex_count();
    let mut best: Option<Vec<usize>> = None;
    for mask in 0u32..(1 << n) {
        let set: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
        let mut covered = vec![false; n];
        for &v in &set {
            covered[v] = true;
            for &w in g.neighbors(v) {
                covered[w] = true;
            }
        }
        let ok = (0..n).all(|v| covered[v] || g.neighbors(v).iter().filter(|&&w| !covered[w]).count() < k);
        if ok {
            let better = match &best {
                None => true,
                Some(b) => set.len() < b.len() || (set.len() == b.len() && set < *b),
            };
            if better {
                best = Some(set);
            }
        }
    }
    best.unwrap()
}

fn naive_gamma(g: &Graph) -> usize {
    let n = g.vertex_count();
    (0u32..(1 << n))
        .filter(|mask| (0..n).all(|v| mask >> v & 1 == 1 || g.neighbors(v).iter().any(|&w| mask >> w & 1 == 1)))
        .map(|mask| mask.count_ones() as usize)
        .min()
        .unwrap()
}

fn random_connected_graph(rng: &mut ChaCha8Rng, n: usize) -> Graph {
    let seq: Vec<usize> = (0..n.saturating_sub(2)).map(|_| rng.gen_range(0..n)).collect();
    let mut edges = if n >= 2 { prufer_decode(&seq).unwrap().graph().edges() } else { Vec::new() };
    for u in 0..n {
        for v in u + 1..n {
            if !edges.contains(&(u, v)) && rng.gen_bool(0.2) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &edges).unwrap()
}

#[test]
fn brute_force_matches_naive_scan_on_graphs() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for _ in 0..150 {
        let n = rng.gen_range(1..=10);
        let g = random_connected_graph(&mut rng, n);
        for k in 1..=3 {
            let sol = iota_bruteforce(&g, k, None).unwrap();
            assert_eq!(sol.set, naive_iota(&g, k), "{g:?} k={k}");
            assert_eq!(sol.method, Method::BruteForce);
        }
    }
}

#[test]
fn dp_matches_brute_force_on_all_small_trees() {
    for n in 1..=11 {
        for t in enumerate_free_trees(n).unwrap() {
            for k in 1..=3 {
                let dp = iota_tree_dp(&t, k).unwrap();
                let bf = iota_bruteforce(t.graph(), k, None).unwrap();
                assert_eq!(dp.size(), bf.size(), "n={n} k={k} {:?}", t.graph().edges());
                assert!(is_isolating(t.graph(), &dp.set, k));
                assert_eq!(dp.method, Method::TreeDp);
            }
        }
    }
}

#[test]
fn dp_root_independent() {
    for n in 1..=9 {
        for t in enumerate_free_trees(n).unwrap() {
            for k in 1..=3 {
                let base = iota_tree_dp(&t, k).unwrap().size();
                for root in 0..n {
                    let sol = iota_tree_dp_rooted(&t, k, root).unwrap();
                    assert_eq!(sol.size(), base);
                    assert!(is_isolating(t.graph(), &sol.set, k));
                }
            }
        }
    }
}

#[test]
fn monotone_in_k_and_zero_iff_small_degree() {
    for n in 1..=10 {
        for t in enumerate_free_trees(n).unwrap() {
            let iota1 = iota_tree_dp(&t, 1).unwrap().size();
            let mut prev = iota1;
            for k in 1..=6 {
                let v = iota_tree_dp(&t, k).unwrap().size();
                assert!(v <= prev && v <= iota1);
                assert_eq!(v == 0, t.max_degree() < k);
                prev = v;
            }
        }
    }
}

#[test]
fn domination_matches_naive_and_ore() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..120 {
        let n = rng.gen_range(1..=8);
        let g = random_connected_graph(&mut rng, n);
        let sol = gamma_bruteforce(&g).unwrap();
        assert_eq!(sol.size(), naive_gamma(&g));
        assert_eq!(g.closed_neighborhood(&sol.set).len(), n);
        if n >= 2 {
            assert!(2 * sol.size() <= n);
        }
    }
    assert_eq!(gamma_bruteforce(&Graph::cycle(4)).unwrap().size(), 2);
    assert_eq!(gamma_bruteforce(&Graph::path(4)).unwrap().size(), 2);
    assert_eq!(gamma_bruteforce(&Graph::star(5)).unwrap().size(), 1);
}

#[test]
fn residual_and_star_examples() {
    let r = residual(&Graph::path(5), &[2]);
    assert_eq!((r.graph.vertex_count(), r.graph.edge_count()), (2, 0));
    let r = residual(&Graph::path(6), &[1]);
    assert_eq!(r.original, vec![3, 4, 5]);
    assert_eq!(r.graph, Graph::path(3));
    let r = residual(&Graph::star(4), &[]);
    assert_eq!(r.graph, Graph::star(4));
    assert!(contains_k_star(&Graph::path(3), 2));
    assert!(!contains_k_star(&Graph::path(3), 3));
    assert!(!contains_k_star(&Graph::empty(0), 1));
    for k in 2..=5 {
        assert!(is_isolating(&Graph::star(k), &[0], k));
        assert!(!is_isolating(&Graph::star(k), &[], k));
        assert_eq!(iota_tree_dp(&Tree::star(k), k).unwrap().size(), 1);
    }
}

#[test]
fn solver_examples() {
    assert_eq!(iota_bruteforce(&Graph::path(6), 1, None).unwrap().size(), 2);
    for n in 3..=7 {
        assert_eq!(iota_bruteforce(&Graph::path(n), 2, None).unwrap().size(), 1);
    }
    assert_eq!(iota_bruteforce(&Graph::empty(1), 1, None).unwrap().size(), 0);
    assert_eq!(iota_tree_dp(&Tree::path(8), 2).unwrap().size(), 2);
}

#[test]
fn solver_errors() {
    assert_eq!(iota_tree_dp(&Tree::path(3), 0), Err(SolverError::ZeroK));
    assert_eq!(iota_bruteforce(&Graph::path(3), 0, None), Err(SolverError::ZeroK));
    assert_eq!(iota_bruteforce(&Graph::path(25), 1, Some(9)), Err(SolverError::TooLarge { n: 25, limit: 24 }));
    assert!(matches!(iota_bruteforce(&Graph::path(17), 1, None), Err(SolverError::Precondition(_))));
    assert_eq!(iota_bruteforce(&Graph::path(17), 1, Some(3)), Err(SolverError::CapExceeded { cap: 3 }));
    assert_eq!(iota_bruteforce(&Graph::path(17), 1, Some(5)).unwrap().size(), 4);
}

#[test]
fn normalizer_examples() {
    let sol = |k, set: &[usize]| IsolationSolution::new(k, set.to_vec(), Method::BruteForce);
    let star = Tree::star(3);
    assert_eq!(normalize_no_leaves(star.graph(), &sol(1, &[2])).unwrap().set, vec![0]);
    let p5 = Tree::path(5);
    assert_eq!(normalize_no_leaves(p5.graph(), &sol(1, &[2])).unwrap().set, vec![2]);
    assert_eq!(normalize_no_leaves(p5.graph(), &sol(1, &[0, 4])).unwrap().set, vec![1, 3]);
    assert!(normalize_no_leaves(p5.graph(), &sol(1, &[0])).is_err());
    assert!(normalize_no_leaves(&Graph::path(2), &sol(1, &[0])).is_err());
    assert_eq!(normalize_no_deg2_support(&p5, &sol(1, &[1, 3])).unwrap().set, vec![2]);
    assert!(normalize_no_deg2_support(&p5, &sol(1, &[1])).is_err());
    assert!(normalize_no_deg2_support(&p5, &sol(2, &[2])).is_err());
    let p6 = Tree::path(6);
    assert_eq!(normalize_no_deg2_support(&p6, &sol(1, &[2, 3])).unwrap().set, vec![2, 3]);

    let spider = gen_spider_gap(1).unwrap();
    let min = iota_bruteforce(spider.graph(), 1, None).unwrap();
    let step1 = normalize_no_leaves(spider.graph(), &min).unwrap();
    let step2 = normalize_no_deg2_support(&spider, &step1).unwrap();
    assert_eq!(step2.size(), 1);
    assert!(is_isolating(spider.graph(), &step2.set, 1));
    assert!(step2.set.iter().all(|&v| !spider.is_leaf(v)));
}

fn arb_tree(max_n: usize) -> impl Strategy<Value = Tree> {
    (2usize..=max_n).prop_flat_map(|n| proptest::collection::vec(0..n, n - 2)).prop_map(|seq| prufer_decode(&seq).unwrap())
}

proptest! {
    #[test]
    fn dp_witness_is_sound(t in arb_tree(60), k in 1usize..5, root_pick in any::<usize>()) {
        let a = iota_tree_dp(&t, k).unwrap();
        prop_assert!(is_isolating(t.graph(), &a.set, k));
        let b = iota_tree_dp_rooted(&t, k, root_pick % t.order()).unwrap();
        prop_assert_eq!(a.size(), b.size());
    }

    #[test]
    fn dp_is_optimal_on_mid_sized_trees(t in arb_tree(15), k in 1usize..4) {
        let dp = iota_tree_dp(&t, k).unwrap();
        let bf = iota_bruteforce(t.graph(), k, Some(dp.size())).unwrap();
        prop_assert_eq!(dp.size(), bf.size());
    }

    #[test]
    fn normalizers_preserve_minimum(t in arb_tree(12)) {
        prop_assume!(t.order() >= 5);
        let min = iota_tree_dp(&t, 1).unwrap();
        let a = normalize_no_leaves(t.graph(), &min).unwrap();
        prop_assert_eq!(a.size(), min.size());
        prop_assert!(is_isolating(t.graph(), &a.set, 1));
        let b = normalize_no_deg2_support(&t, &a).unwrap();
        prop_assert_eq!(b.size(), min.size());
        prop_assert!(is_isolating(t.graph(), &b.set, 1));
        prop_assert!(b.set.iter().all(|&v| !t.is_leaf(v)));
    }
}
