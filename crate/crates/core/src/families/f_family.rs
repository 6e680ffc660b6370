//! Trees assembled from labeled `P3` copies `a-b-c` and `P4` copies
//! `x-y-y-x`, joined by extra edges inside `A ∪ X`. These are exactly the
//! trees of order at least 6 with ι = (n + ℓ)/4.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::Serialize;

use crate::error::FamilyError;
use crate::graph::{Graph, Tree};
use crate::solver::{IsolationSolution, Method};

/// Labeling of V into A, B, C, X, Y with the copy decomposition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FCertificate {
    pub a: Vec<usize>,
    pub b: Vec<usize>,
    pub c: Vec<usize>,
    pub x: Vec<usize>,
    pub y: Vec<usize>,
    /// `(a, b, c)` per `P3` copy.
    pub p3_copies: Vec<[usize; 3]>,
    /// `(x, y, y', x')` per `P4` copy.
    pub p4_copies: Vec<[usize; 4]>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Part {
    A,
    B,
    C,
    X,
    Y,
}

impl FCertificate {
    fn from_copies(mut p3_copies: Vec<[usize; 3]>, mut p4_copies: Vec<[usize; 4]>) -> Self {
        p3_copies.sort_unstable();
        p4_copies.sort_unstable();
        let sorted = |mut v: Vec<usize>| {
            v.sort_unstable();
            v
        };
        FCertificate {
            a: sorted(p3_copies.iter().map(|c| c[0]).collect()),
            b: sorted(p3_copies.iter().map(|c| c[1]).collect()),
            c: sorted(p3_copies.iter().map(|c| c[2]).collect()),
            x: sorted(p4_copies.iter().flat_map(|c| [c[0], c[3]]).collect()),
            y: sorted(p4_copies.iter().flat_map(|c| [c[1], c[2]]).collect()),
            p3_copies,
            p4_copies,
        }
    }

    pub fn p3_count(&self) -> usize {
        self.p3_copies.len()
    }

    pub fn p4_count(&self) -> usize {
        self.p4_copies.len()
    }

    /// |A| + |X|/2, which equals (n + ℓ)/4 and ι of the tree.
    pub fn isolation_number(&self) -> usize {
        self.a.len() + self.x.len() / 2
    }

    /// Re-checks every structural property of the labeling against `t`.
    pub fn validate(&self, t: &Tree) -> Result<(), FamilyError> {
        let clause = |msg: String| Err(FamilyError::Clause(msg));
        let n = t.order();
        let mut part: Vec<Option<Part>> = vec![None; n];
        let mut copy_of = vec![usize::MAX; n];
        let mut assign = |v: usize, p: Part, copy: usize| -> Result<(), FamilyError> {
            if v >= n {
                return Err(FamilyError::Clause(format!("vertex {v} out of range")));
            }
            if part[v].is_some() {
                return Err(FamilyError::Clause(format!("vertex {v} is labeled twice")));
            }
            part[v] = Some(p);
            copy_of[v] = copy;
            Ok(())
        };
        for (i, &[a, b, c]) in self.p3_copies.iter().enumerate() {
            assign(a, Part::A, i)?;
            assign(b, Part::B, i)?;
            assign(c, Part::C, i)?;
        }
        let offset = self.p3_copies.len();
        for (i, &[x, y, y2, x2]) in self.p4_copies.iter().enumerate() {
            assign(x, Part::X, offset + i)?;
            assign(y, Part::Y, offset + i)?;
            assign(y2, Part::Y, offset + i)?;
            assign(x2, Part::X, offset + i)?;
        }
        let expected = Self::from_copies(self.p3_copies.clone(), self.p4_copies.clone());
        if expected.a != self.a
            || expected.b != self.b
            || expected.c != self.c
            || expected.x != self.x
            || expected.y != self.y
        {
            return clause("part lists disagree with the copy decomposition".into());
        }
        let Some(part) = part.into_iter().collect::<Option<Vec<Part>>>() else {
            return clause("the parts do not cover every vertex".into());
        };
        let g = t.graph();
        for &[a, b, c] in &self.p3_copies {
            if !g.has_edge(a, b) || !g.has_edge(b, c) {
                return clause(format!("copy ({a},{b},{c}) is not a path a-b-c"));
            }
        }
        for &[x, y, y2, x2] in &self.p4_copies {
            if !g.has_edge(x, y) || !g.has_edge(y, y2) || !g.has_edge(y2, x2) {
                return clause(format!("copy ({x},{y},{y2},{x2}) is not a path x-y-y-x"));
            }
        }
        let leaves: BTreeSet<usize> = t.leaf_set().iter().copied().collect();
        let c_set: BTreeSet<usize> = self.c.iter().copied().collect();
        if leaves != c_set {
            return clause("C is not the leaf set".into());
        }
        let count = |v: usize, p: Part| g.neighbors(v).iter().filter(|&&w| part[w] == p).count();
        for v in 0..n {
            match part[v] {
                Part::B => {
                    if t.degree(v) != 2 || count(v, Part::A) != 1 || count(v, Part::C) != 1 {
                        return clause(format!("B vertex {v} must have degree 2 with one A and one C neighbor"));
                    }
                }
                Part::X => {
                    if count(v, Part::Y) != 1 || count(v, Part::X) + count(v, Part::A) == 0 {
                        return clause(format!("X vertex {v} needs one Y neighbor and a neighbor in X ∪ A"));
                    }
                }
                Part::Y => {
                    if t.degree(v) != 2 || count(v, Part::X) != 1 || count(v, Part::Y) != 1 {
                        return clause(format!("Y vertex {v} must have degree 2 with one X and one Y neighbor"));
                    }
                }
                Part::A | Part::C => {}
            }
            if matches!(part[v], Part::A | Part::X) && t.is_leaf(v) {
                return clause(format!("vertex {v} of A ∪ X is a leaf"));
            }
        }
        for (u, v) in g.edges() {
            if copy_of[u] == copy_of[v] {
                if part[u] == Part::X && part[v] == Part::X {
                    return clause(format!("X-X edge ({u},{v}) inside one P4 copy"));
                }
                continue;
            }
            let joinable = |p: Part| matches!(p, Part::A | Part::X);
            if !joinable(part[u]) || !joinable(part[v]) {
                return clause(format!("joining edge ({u},{v}) leaves A ∪ X"));
            }
        }
        let (a, x) = (self.a.len(), self.x.len());
        if a < 2 {
            return clause("need at least two P3 copies".into());
        }
        if x != self.y.len() || x % 2 != 0 {
            return clause("|X| and |Y| must be equal and even".into());
        }
        if n != 3 * a + 2 * x || n < 6 {
            return clause("n must equal 3|A| + 2|X| >= 6".into());
        }
        if n + t.leaf_count() != 4 * a + 2 * x {
            return clause("(n + l)/4 must equal |A| + |X|/2".into());
        }
        Ok(())
    }
}

/// How the copies are joined.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FWiring {
    /// A-path when there are no `P4` copies; otherwise the `P4` copies are
    /// chained into one path through their X ends, one end of that path is
    /// joined to the first A vertex and every other A vertex to the far end.
    PaperDefault,
    /// Explicit joining edges. Copy `i < r` occupies vertices
    /// `3i, 3i+1, 3i+2` as `(a, b, c)`; copy `j` of the `P4`s occupies
    /// `3r + 4j .. 3r + 4j + 4` as `(x, y, y', x')`.
    Custom(Vec<(usize, usize)>),
}

fn layout(r: usize, s: usize) -> (Vec<[usize; 3]>, Vec<[usize; 4]>, Vec<(usize, usize)>) {
    let p3: Vec<[usize; 3]> = (0..r).map(|i| [3 * i, 3 * i + 1, 3 * i + 2]).collect();
    let p4: Vec<[usize; 4]> = (0..s)
        .map(|j| {
            let base = 3 * r + 4 * j;
            [base, base + 1, base + 2, base + 3]
        })
        .collect();
    let mut edges = Vec::new();
    for &[a, b, c] in &p3 {
        edges.extend([(a, b), (b, c)]);
    }
    for &[x, y, y2, x2] in &p4 {
        edges.extend([(x, y), (y, y2), (y2, x2)]);
    }
    (p3, p4, edges)
}

pub fn gen_family_f(r: usize, s: usize, wiring: &FWiring) -> Result<(Tree, FCertificate), FamilyError> {
    if r < 2 {
        return Err(FamilyError::InvalidParams("r must be at least 2".into()));
    }
    let (p3, p4, mut edges) = layout(r, s);
    let n = 3 * r + 4 * s;
    let joins = match wiring {
        FWiring::PaperDefault => {
            if s == 0 {
                (1..r).map(|i| (p3[i - 1][0], p3[i][0])).collect()
            } else {
                let mut joins: Vec<(usize, usize)> = (1..s).map(|j| (p4[j - 1][3], p4[j][0])).collect();
                joins.push((p4[0][0], p3[0][0]));
                let far = p4[s - 1][3];
                joins.extend(p3.iter().skip(1).map(|c| (c[0], far)));
                joins
            }
        }
        FWiring::Custom(joins) => {
            let in_ax = |v: usize| v < n && ((v < 3 * r && v.is_multiple_of(3)) || (v >= 3 * r && ((v - 3 * r) % 4).is_multiple_of(3)));
            if let Some(&(u, v)) = joins.iter().find(|&&(u, v)| !in_ax(u) || !in_ax(v)) {
                return Err(FamilyError::Clause(format!("wiring edge ({u},{v}) has an endpoint outside A ∪ X")));
            }
            joins.clone()
        }
    };
    edges.extend(joins);
    let graph = Graph::from_edges(n, &edges)
        .map_err(|e| FamilyError::Clause(format!("wiring is not a simple graph: {e}")))?;
    let tree = Tree::new(graph).map_err(|e| FamilyError::Clause(format!("wiring does not form a tree: {e}")))?;
    let cert = FCertificate::from_copies(p3, p4);
    cert.validate(&tree)?;
    Ok((tree, cert))
}

/// Random member of the family with `r` `P3` and `s` `P4` copies.
///
/// The copies are joined along a uniformly random tree on the copies in which
/// every `P4` copy has degree at least 2, so both of its X ends can be used.
pub fn sample_family_f<R: Rng>(r: usize, s: usize, rng: &mut R) -> Result<(Tree, FCertificate), FamilyError> {
    if r < 2 {
        return Err(FamilyError::InvalidParams("r must be at least 2".into()));
    }
    let units = r + s;
    // Prüfer sequence over copies; each P4 copy appears at least once.
    let mut seq: Vec<usize> = (r..units).collect();
    while seq.len() < units - 2 {
        seq.push(rng.gen_range(0..units));
    }
    seq.shuffle(rng);
    let copy_tree = if units == 2 {
        vec![(0, 1)]
    } else {
        crate::enumerate::prufer_decode(&seq)?.graph().edges()
    };
    let (p3, p4, _) = layout(r, s);
    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); units];
    for (e, &(u, v)) in copy_tree.iter().enumerate() {
        incident[u].push(e);
        incident[v].push(e);
    }
    let mut endpoint = vec![[usize::MAX; 2]; copy_tree.len()];
    for unit in 0..units {
        let mut es = incident[unit].clone();
        es.shuffle(rng);
        for (i, &e) in es.iter().enumerate() {
            let vertex = if unit < r {
                p3[unit][0]
            } else {
                let copy = p4[unit - r];
                match i {
                    0 => copy[0],
                    1 => copy[3],
                    _ => copy[if rng.gen_bool(0.5) { 0 } else { 3 }],
                }
            };
            let side = usize::from(copy_tree[e].0 != unit);
            endpoint[e][side] = vertex;
        }
    }
    let joins = endpoint.into_iter().map(|[u, v]| (u, v)).collect();
    gen_family_f(r, s, &FWiring::Custom(joins))
}

/// Recovers the labeling when `t` belongs to the family.
///
/// The labeling is forced: C are the leaves, B their supports, A the other
/// neighbors of B. What remains must split into `P4` copies; a vertex with
/// one remaining neighbor has to be an X end, which pins down its copy.
pub fn recognize_f(t: &Tree) -> Option<FCertificate> {
    let n = t.order();
    if n < 6 {
        return None;
    }
    let mut taken = vec![false; n];
    let mut p3 = Vec::new();
    for &c in t.leaf_set() {
        let b = t.neighbors(c)[0];
        if t.degree(b) != 2 || taken[b] {
            return None;
        }
        let a = *t.neighbors(b).iter().find(|&&w| w != c)?;
        if t.is_leaf(a) || taken[a] || taken[c] {
            return None;
        }
        taken[a] = true;
        taken[b] = true;
        taken[c] = true;
        p3.push([a, b, c]);
    }
    // Greedy P4 peeling on the remaining forest.
    let mut remaining: BTreeSet<usize> = (0..n).filter(|&v| !taken[v]).collect();
    let mut p4 = Vec::new();
    let live_degree = |v: usize, rem: &BTreeSet<usize>| t.neighbors(v).iter().filter(|w| rem.contains(w)).count();
    while let Some(&x) = remaining.iter().find(|&&v| live_degree(v, &remaining) <= 1) {
        let y = *t.neighbors(x).iter().find(|w| remaining.contains(w))?;
        if t.degree(y) != 2 {
            return None;
        }
        let y2 = *t.neighbors(y).iter().find(|&&w| w != x)?;
        if !remaining.contains(&y2) || t.degree(y2) != 2 {
            return None;
        }
        let x2 = *t.neighbors(y2).iter().find(|&&w| w != y)?;
        if !remaining.contains(&x2) {
            return None;
        }
        for v in [x, y, y2, x2] {
            remaining.remove(&v);
        }
        p4.push([x, y, y2, x2]);
    }
    let cert = FCertificate::from_copies(p3, p4);
    cert.validate(t).ok().map(|_| cert)
}

/// Minimum isolating set `A ∪ X0`, where `X0` takes from each `P4` copy the
/// X end closer to `root`.
pub fn min_iso_set_f(t: &Tree, cert: &FCertificate, root: usize) -> Result<IsolationSolution, FamilyError> {
    if cert.a.binary_search(&root).is_err() && cert.x.binary_search(&root).is_err() {
        return Err(FamilyError::BadRoot(root));
    }
    let dist = t.graph().bfs_distances(&[root]);
    let mut set = cert.a.clone();
    for &[x, _, _, x2] in &cert.p4_copies {
        set.push(if dist[x] < dist[x2] { x } else { x2 });
    }
    Ok(IsolationSolution::new(1, set, Method::FamilyConstruction))
}
