//! Trees with ι_k = (n + ℓ)/(2k + 1): a forest `A` without isolated
//! vertices, a pendant `B` vertex on every `A` vertex, and hubs `C` of degree
//! exactly `k` that gather the `B` vertices and carry the leaves `L`.

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::SliceRandom;
use rand::Rng;
use serde::Serialize;

use crate::error::FamilyError;
use crate::graph::{Graph, Tree};
use crate::solver::{IsolationSolution, Method};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TkCertificate {
    pub k: usize,
    pub a: Vec<usize>,
    pub b: Vec<usize>,
    pub c: Vec<usize>,
    pub l: Vec<usize>,
    /// Number of components of `T[A]`.
    pub h: usize,
    /// |A|.
    pub n0: usize,
    /// Components of `T[A]`, each sorted, ordered by smallest vertex.
    pub a_components: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Part {
    A,
    B,
    C,
    L,
}

fn components_within(g: &Graph, members: &[usize]) -> Vec<Vec<usize>> {
    let inside: BTreeSet<usize> = members.iter().copied().collect();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for &s in members {
        if !seen.insert(s) {
            continue;
        }
        let mut comp = vec![s];
        let mut stack = vec![s];
        while let Some(v) = stack.pop() {
            for &w in g.neighbors(v) {
                if inside.contains(&w) && seen.insert(w) {
                    comp.push(w);
                    stack.push(w);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out.sort();
    out
}

impl TkCertificate {
    fn build(t: &Tree, k: usize, mut a: Vec<usize>, mut b: Vec<usize>, mut c: Vec<usize>) -> Self {
        a.sort_unstable();
        b.sort_unstable();
        c.sort_unstable();
        let a_components = components_within(t.graph(), &a);
        TkCertificate {
            k,
            n0: a.len(),
            h: a_components.len(),
            l: t.leaf_set().to_vec(),
            a,
            b,
            c,
            a_components,
        }
    }

    /// n0 - h + 1, which equals |C| and ι_k of the tree.
    pub fn isolation_number(&self) -> usize {
        self.c.len()
    }

    pub fn validate(&self, t: &Tree) -> Result<(), FamilyError> {
        let clause = |msg: &str| Err(FamilyError::Clause(msg.to_string()));
        let k = self.k;
        if k < 2 {
            return clause("k must be at least 2");
        }
        let n = t.order();
        let g = t.graph();
        let mut part: Vec<Option<Part>> = vec![None; n];
        for (list, p) in [(&self.a, Part::A), (&self.b, Part::B), (&self.c, Part::C), (&self.l, Part::L)] {
            for &v in list {
                if v >= n || part[v].is_some() {
                    return clause("parts are not a partition of V");
                }
                part[v] = Some(p);
            }
        }
        let Some(part) = part.into_iter().collect::<Option<Vec<Part>>>() else {
            return clause("parts do not cover V");
        };
        if self.l != t.leaf_set() {
            return clause("L is not the leaf set");
        }
        let count = |v: usize, p: Part| g.neighbors(v).iter().filter(|&&w| part[w] == p).count();
        for v in 0..n {
            let ok = match part[v] {
                Part::L => count(v, Part::C) == 1,
                Part::A => count(v, Part::B) == 1 && count(v, Part::C) == 0 && count(v, Part::L) == 0,
                Part::B => t.degree(v) == 2 && count(v, Part::A) == 1 && count(v, Part::C) == 1,
                Part::C => t.degree(v) == k && count(v, Part::B) >= 1 && count(v, Part::B) + count(v, Part::L) == k,
            };
            if !ok {
                let msg = match part[v] {
                    Part::L => "every leaf hangs from a C vertex",
                    Part::A => "every A vertex has exactly one B neighbor and no C or leaf neighbors",
                    Part::B => "every B vertex joins one A vertex to one C vertex",
                    Part::C => "every C vertex has degree k with neighbors in B ∪ L, at least one in B",
                };
                return clause(msg);
            }
        }
        let core: Vec<usize> = (0..n).filter(|&v| part[v] != Part::L).collect();
        let core_graph = g.induced(&core);
        if !core_graph.is_connected() || core_graph.edge_count() + 1 != core.len() {
            return clause("A ∪ B ∪ C does not induce a tree");
        }
        let comps = components_within(g, &self.a);
        if comps.iter().any(|c| c.len() < 2) {
            return clause("T[A] has an isolated vertex");
        }
        if comps != self.a_components || comps.len() != self.h || self.a.len() != self.n0 {
            return clause("component data disagrees with T[A]");
        }
        let (n0, h) = (self.n0, self.h);
        let identities = self.b.len() == n0
            && self.c.len() + h == n0 + 1
            && self.l.len() + k * (h - 1) == (k - 1) * n0
            && n + (k + 1) * (h - 1) == (k + 2) * n0
            && n >= 2 * k + 4;
        if !identities {
            return clause("counting identities fail");
        }
        for &c in &self.c {
            let d = g.bfs_distances(&[c]);
            if self.c.iter().any(|&o| o != c && d[o].is_none_or(|x| x < 5)) {
                return clause("two C vertices are closer than 5");
            }
        }
        Ok(())
    }
}

/// Builds a member from `n0` A vertices (`0..n0`), the edges of the forest on
/// them, and a grouping of the B vertices into hubs. `hubs[j]` lists the A
/// indices whose B vertex joins hub `j`; the hub is padded with leaves up to
/// degree `k`.
///
/// Vertex numbering: A is `0..n0`, B is `n0..2n0` with `B_i` attached to
/// `A_i`, then the hubs, then the leaves hub by hub.
pub fn gen_family_tk(
    k: usize,
    n0: usize,
    a_edges: &[(usize, usize)],
    hubs: &[Vec<usize>],
) -> Result<(Tree, TkCertificate), FamilyError> {
    let bad = |msg: &str| Err(FamilyError::InvalidParams(msg.to_string()));
    if k < 2 {
        return bad("k must be at least 2");
    }
    if n0 < 2 {
        return bad("n0 must be at least 2");
    }
    let forest = Graph::from_edges(n0, a_edges)?;
    if (0..n0).any(|v| forest.degree(v) == 0) {
        return Err(FamilyError::Clause("T[A] has an isolated vertex".into()));
    }
    let mut owner = vec![None; n0];
    for (j, hub) in hubs.iter().enumerate() {
        if hub.is_empty() || hub.len() > k {
            return bad("every hub takes between 1 and k B vertices");
        }
        for &i in hub {
            if i >= n0 || owner[i].replace(j).is_some() {
                return bad("every B vertex belongs to exactly one hub");
            }
        }
    }
    if owner.iter().any(Option::is_none) {
        return bad("every B vertex belongs to exactly one hub");
    }
    let c0 = 2 * n0;
    let mut edges: Vec<(usize, usize)> = a_edges.to_vec();
    edges.extend((0..n0).map(|i| (i, n0 + i)));
    let mut next = c0 + hubs.len();
    for (j, hub) in hubs.iter().enumerate() {
        edges.extend(hub.iter().map(|&i| (n0 + i, c0 + j)));
        for _ in hub.len()..k {
            edges.push((c0 + j, next));
            next += 1;
        }
    }
    let graph = Graph::from_edges(next, &edges)?;
    let tree = Tree::new(graph).map_err(|e| FamilyError::Clause(format!("result is not a tree: {e}")))?;
    let cert = TkCertificate::build(&tree, k, (0..n0).collect(), (n0..2 * n0).collect(), (c0..c0 + hubs.len()).collect());
    cert.validate(&tree)?;
    Ok((tree, cert))
}

/// Random member with given `k`, `n0` and `h` components of `T[A]`.
pub fn sample_family_tk<R: Rng>(k: usize, n0: usize, h: usize, rng: &mut R) -> Result<(Tree, TkCertificate), FamilyError> {
    if k < 2 || h == 0 || n0 < 2 * h {
        return Err(FamilyError::InvalidParams("need k >= 2, h >= 1 and n0 >= 2h".into()));
    }
    for _ in 0..100 {
        let mut sizes = vec![2usize; h];
        for _ in 0..n0 - 2 * h {
            sizes[rng.gen_range(0..h)] += 1;
        }
        let mut order: Vec<usize> = (0..n0).collect();
        order.shuffle(rng);
        let mut comp_of = vec![0; n0];
        let mut edges = Vec::new();
        let mut start = 0;
        for (ci, &size) in sizes.iter().enumerate() {
            let members = &order[start..start + size];
            for (i, &v) in members.iter().enumerate() {
                comp_of[v] = ci;
                if i > 0 {
                    edges.push((members[rng.gen_range(0..i)], v));
                }
            }
            start += size;
        }
        // h - 1 merges of hubs across different super-components.
        let mut hubs: Vec<Vec<usize>> = (0..n0).map(|i| vec![i]).collect();
        let mut root: Vec<usize> = (0..h).collect();
        fn find(root: &mut [usize], x: usize) -> usize {
            let mut x = x;
            while root[x] != x {
                root[x] = root[root[x]];
                x = root[x];
            }
            x
        }
        let mut merges = 0;
        let mut attempts = 0;
        while merges + 1 < h && attempts < 1000 {
            attempts += 1;
            let i = rng.gen_range(0..hubs.len());
            let j = rng.gen_range(0..hubs.len());
            if i == j || hubs[i].len() + hubs[j].len() > k {
                continue;
            }
            let (ri, rj) = (find(&mut root, comp_of[hubs[i][0]]), find(&mut root, comp_of[hubs[j][0]]));
            if ri == rj {
                continue;
            }
            root[ri] = rj;
            let taken = hubs.swap_remove(i.max(j));
            hubs[i.min(j)].extend(taken);
            merges += 1;
        }
        if merges + 1 == h {
            return gen_family_tk(k, n0, &edges, &hubs);
        }
    }
    Err(FamilyError::Stalled("could not merge hubs within the size limit".into()))
}

/// Recovers the labeling when `t` belongs to the family for this `k`.
///
/// Leaves are forced into L; the remaining vertices get labels A, B or C by
/// an exact dynamic program over the leaf-stripped tree with the local
/// neighborhood rules of each part. The winning labeling is then checked in
/// full.
pub fn recognize_tk(t: &Tree, k: usize) -> Option<TkCertificate> {
    const A: usize = 0;
    const B: usize = 1;
    const C: usize = 2;
    const NONE: usize = 3;
    let n = t.order();
    if k < 2 || n < 2 * k + 4 {
        return None;
    }
    let g = t.graph();
    let leaf_nbrs: Vec<usize> = (0..n).map(|v| g.neighbors(v).iter().filter(|&&w| t.is_leaf(w)).count()).collect();
    let core: Vec<usize> = (0..n).filter(|&v| !t.is_leaf(v)).collect();
    let root = core[0];
    let mut parent = vec![usize::MAX; n];
    let mut order = vec![root];
    let mut i = 0;
    while i < order.len() {
        let v = order[i];
        i += 1;
        for &w in g.neighbors(v) {
            if w != parent[v] && !t.is_leaf(w) {
                parent[w] = v;
                order.push(w);
            }
        }
    }
    let kids: Vec<Vec<usize>> = (0..n)
        .map(|v| g.neighbors(v).iter().copied().filter(|&w| w != parent[v] && !t.is_leaf(w)).collect())
        .collect();
    let local = |v: usize, x: usize| match x {
        A => leaf_nbrs[v] == 0,
        B => leaf_nbrs[v] == 0 && t.degree(v) == 2,
        _ => t.degree(v) == k,
    };
    let satisfies = |x: usize, cnt: [usize; 3]| match x {
        A => cnt[B] == 1 && cnt[C] == 0 && cnt[A] >= 1,
        B => cnt[A] == 1 && cnt[B] == 0 && cnt[C] == 1,
        _ => cnt[A] == 0 && cnt[C] == 0 && cnt[B] >= 1,
    };
    let with_parent = |mut cnt: [usize; 3], p: usize| {
        if p != NONE {
            cnt[p] = (cnt[p] + 1).min(2);
        }
        cnt
    };
    type States = BTreeMap<[usize; 3], Vec<usize>>;
    let mut states: Vec<[States; 3]> = vec![Default::default(); n];
    let mut ok = vec![[[false; 4]; 3]; n];
    for &v in order.iter().rev() {
        for x in [A, B, C] {
            if !local(v, x) {
                continue;
            }
            let mut cur: States = BTreeMap::from([([0; 3], Vec::new())]);
            for &c in &kids[v] {
                let mut nxt = States::new();
                for (cnt, wit) in &cur {
                    for y in [A, B, C] {
                        if ok[c][y][x] {
                            let mut cnt2 = *cnt;
                            cnt2[y] = (cnt2[y] + 1).min(2);
                            nxt.entry(cnt2).or_insert_with(|| {
                                let mut w = wit.clone();
                                w.push(y);
                                w
                            });
                        }
                    }
                }
                cur = nxt;
            }
            for p in 0..4 {
                ok[v][x][p] = cur.keys().any(|&cnt| satisfies(x, with_parent(cnt, p)));
            }
            states[v][x] = cur;
        }
    }
    let mut label = vec![usize::MAX; n];
    label[root] = [A, B, C].into_iter().find(|&x| ok[root][x][NONE])?;
    for &v in &order {
        let p = if v == root { NONE } else { label[parent[v]] };
        let x = label[v];
        let (_, wit) = states[v][x].iter().find(|(&cnt, _)| satisfies(x, with_parent(cnt, p)))?;
        for (&c, &y) in kids[v].iter().zip(wit) {
            label[c] = y;
        }
    }
    let pick = |x: usize| core.iter().copied().filter(|&v| label[v] == x).collect::<Vec<_>>();
    let cert = TkCertificate::build(t, k, pick(A), pick(B), pick(C));
    cert.validate(t).ok().map(|_| cert)
}

/// Builds a minimum k-isolating set of size n0 - h + 1.
///
/// Starting from the first component of `T[A]`, each round finds the A
/// vertices at distance exactly 4 from the covered part, and adds the newly
/// reached components minus those entry vertices.
pub fn min_iso_set_tk(t: &Tree, cert: &TkCertificate) -> Result<IsolationSolution, FamilyError> {
    let comps = &cert.a_components;
    let first = comps.first().ok_or_else(|| FamilyError::Clause("T[A] is empty".into()))?;
    let comp_of: BTreeMap<usize, usize> = comps.iter().enumerate().flat_map(|(i, c)| c.iter().map(move |&v| (v, i))).collect();
    let mut covered: BTreeSet<usize> = first.iter().copied().collect();
    let mut d: Vec<usize> = first.clone();
    while covered.len() < cert.a.len() {
        let w: Vec<usize> = covered.iter().copied().collect();
        let dist = t.graph().bfs_distances(&w);
        let entry: BTreeSet<usize> = cert.a.iter().copied().filter(|u| !covered.contains(u) && dist[*u] == Some(4)).collect();
        if entry.is_empty() {
            return Err(FamilyError::Stalled(format!("{} of {} A vertices covered", covered.len(), cert.a.len())));
        }
        let reached: BTreeSet<usize> = entry.iter().map(|u| comp_of[u]).collect();
        for ci in reached {
            for &v in &comps[ci] {
                covered.insert(v);
                if !entry.contains(&v) {
                    d.push(v);
                }
            }
        }
    }
    Ok(IsolationSolution::new(cert.k, d, Method::FamilyConstruction))
}
