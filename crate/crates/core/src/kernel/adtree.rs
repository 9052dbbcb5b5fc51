//! Disjoint `(A, d)`-trees or a small separator.
//!
//! An `(A, d)`-tree is a tree subgraph with at least `d` vertices whose leaves
//! all lie in `A`.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::graph::{Graph, Vertex};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdTree {
    /// Sorted vertex set.
    pub vertices: Vec<Vertex>,
    /// Tree edges, each as `(smaller, larger)`.
    pub edges: Vec<(Vertex, Vertex)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ADTreeResult {
    /// Exactly `k` pairwise vertex-disjoint `(A, d)`-trees.
    Trees(Vec<AdTree>),
    /// A set whose removal leaves fewer than `d` vertices of `A` in every
    /// component.
    Separator(Vec<Vertex>),
}

/// The size bound `2(2k-1)(d^2-d+1)` on separators.
pub fn separator_bound(d: usize, k: usize) -> usize {
    2 * (2 * k).saturating_sub(1) * (d * d - d + 1)
}

#[derive(Default)]
struct Forest {
    adj: BTreeMap<Vertex, BTreeSet<Vertex>>,
}

impl Forest {
    fn add_path(&mut self, path: &[Vertex]) {
        for &v in path {
            self.adj.entry(v).or_default();
        }
        for w in path.windows(2) {
            self.adj.get_mut(&w[0]).unwrap().insert(w[1]);
            self.adj.get_mut(&w[1]).unwrap().insert(w[0]);
        }
    }

    fn contains(&self, v: Vertex) -> bool {
        self.adj.contains_key(&v)
    }

    fn degree(&self, v: Vertex) -> usize {
        self.adj.get(&v).map_or(0, |s| s.len())
    }

    fn components(&self) -> Vec<Vec<Vertex>> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for &s in self.adj.keys() {
            if !seen.insert(s) {
                continue;
            }
            let mut comp = vec![s];
            let mut i = 0;
            while i < comp.len() {
                for &w in &self.adj[&comp[i]] {
                    if seen.insert(w) {
                        comp.push(w);
                    }
                }
                i += 1;
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    fn tree_on(&self, vertices: &[Vertex]) -> AdTree {
        let keep: BTreeSet<Vertex> = vertices.iter().copied().collect();
        let mut edges = Vec::new();
        for &u in vertices {
            for &w in &self.adj[&u] {
                if u < w && keep.contains(&w) {
                    edges.push((u, w));
                }
            }
        }
        AdTree {
            vertices: vertices.to_vec(),
            edges,
        }
    }
}

/// Breadth-first search from `sources` to the nearest vertex satisfying
/// `is_target`, moving only through `allowed` vertices. The path runs from a
/// source to the target.
fn bfs_path(
    g: &Graph,
    sources: &[Vertex],
    is_target: impl Fn(Vertex) -> bool,
    allowed: impl Fn(Vertex) -> bool,
) -> Option<Vec<Vertex>> {
    let mut parent: BTreeMap<Vertex, Option<Vertex>> = BTreeMap::new();
    let mut queue = VecDeque::new();
    for &s in sources {
        if parent.insert(s, None).is_none() {
            queue.push_back(s);
        }
    }
    while let Some(u) = queue.pop_front() {
        for &w in g.neighbors(u) {
            if !allowed(w) || parent.contains_key(&w) {
                continue;
            }
            parent.insert(w, Some(u));
            if is_target(w) {
                let mut path = vec![w];
                let mut cur = u;
                loop {
                    path.push(cur);
                    match parent[&cur] {
                        Some(p) => cur = p,
                        None => break,
                    }
                }
                path.reverse();
                return Some(path);
            }
            queue.push_back(w);
        }
    }
    None
}

/// Finds `k` vertex-disjoint `(A, d)`-trees in `g` or a separator of size at
/// most [`separator_bound`] leaving fewer than `d` vertices of `A` in each
/// component.
///
/// A forest `H` of `(A, d)`-trees is grown one step at a time. Each step
/// picks a component `C` of `g - ((V(H) ∩ A) ∪ S)`, where `S` holds the
/// vertices of `H` whose degree is not two, that still has `d` vertices of
/// `A`. If `C` meets `H`, a shortest path from `A ∩ C` to `H` is added;
/// otherwise a fresh tree is grown inside `C` from its smallest `A` vertex by
/// shortest paths to new `A` vertices. The loop stops once `H` has `k`
/// components, once `H` holds enough vertices of `A` to cut out `k` trees,
/// or once no such component remains.
pub fn find_ad_trees(g: &Graph, a: &[Vertex], d: usize, k: usize) -> ADTreeResult {
    assert!(d >= 1 && k >= 1, "find_ad_trees needs d >= 1 and k >= 1");
    let mut a: Vec<Vertex> = a.iter().copied().filter(|&v| g.has_vertex(v)).collect();
    a.sort_unstable();
    a.dedup();
    let in_a = |v: Vertex| a.binary_search(&v).is_ok();
    let harvest_at = (2 * k - 1) * (d * d - d + 1);
    let mut forest = Forest::default();
    let result = loop {
        let comps = forest.components();
        if comps.len() >= k {
            break ADTreeResult::Trees(comps.iter().take(k).map(|c| forest.tree_on(c)).collect());
        }
        if forest.adj.keys().filter(|&&v| in_a(v)).count() >= harvest_at {
            break ADTreeResult::Trees(harvest(&forest, &comps, &in_a, d, k));
        }
        let blocked: Vec<Vertex> = forest
            .adj
            .keys()
            .copied()
            .filter(|&v| in_a(v) || forest.degree(v) != 2)
            .collect();
        let rest = g.without(&blocked);
        let Some(c) = rest
            .components()
            .into_iter()
            .find(|c| c.iter().filter(|&&v| in_a(v)).count() >= d)
        else {
            break ADTreeResult::Separator(blocked);
        };
        let in_c = |v: Vertex| c.binary_search(&v).is_ok();
        let a_in_c: Vec<Vertex> = c.iter().copied().filter(|&v| in_a(v)).collect();
        if c.iter().any(|&v| forest.contains(v)) {
            let path = bfs_path(g, &a_in_c, |v| forest.contains(v), in_c).expect("C is connected");
            forest.add_path(&path);
        } else {
            let mut q = vec![a_in_c[0]];
            forest.add_path(&q);
            for _ in 1..d {
                let path = bfs_path(g, &q, |v| in_a(v) && !q.contains(&v), in_c).expect("C holds d vertices of A");
                forest.add_path(&path);
                q.extend_from_slice(&path[1..]);
            }
        }
    };
    debug_assert!(check_ad_result(g, &a, d, k, &result));
    result
}

/// Cuts disjoint `(A, d)`-trees out of the forest bottom-up: a vertex whose
/// uncut subtree holds at least `d` vertices of `A` yields one tree, pruned of
/// leaves outside `A`, and is then detached from its parent.
fn harvest(forest: &Forest, comps: &[Vec<Vertex>], in_a: &impl Fn(Vertex) -> bool, d: usize, k: usize) -> Vec<AdTree> {
    let mut out = Vec::new();
    for comp in comps {
        let root = *comp.iter().find(|&&v| forest.degree(v) <= 1).unwrap_or(&comp[0]);
        let mut order = vec![root];
        let mut parent: BTreeMap<Vertex, Vertex> = BTreeMap::new();
        let mut i = 0;
        while i < order.len() {
            let u = order[i];
            for &w in &forest.adj[&u] {
                if parent.get(&u) != Some(&w) && w != root && !parent.contains_key(&w) {
                    parent.insert(w, u);
                    order.push(w);
                }
            }
            i += 1;
        }
        let mut children: BTreeMap<Vertex, Vec<Vertex>> = BTreeMap::new();
        for (&c, &p) in &parent {
            children.entry(p).or_default().push(c);
        }
        let mut weight: BTreeMap<Vertex, usize> = BTreeMap::new();
        let mut cut: BTreeSet<Vertex> = BTreeSet::new();
        for &t in order.iter().rev() {
            let kids = children.get(&t).map(|c| c.as_slice()).unwrap_or(&[]);
            let w = usize::from(in_a(t)) + kids.iter().filter(|c| !cut.contains(c)).map(|c| weight[c]).sum::<usize>();
            weight.insert(t, w);
            if w >= d {
                let mut members = vec![t];
                let mut j = 0;
                while j < members.len() {
                    if let Some(cs) = children.get(&members[j]) {
                        members.extend(cs.iter().filter(|c| !cut.contains(c)));
                    }
                    j += 1;
                }
                cut.insert(t);
                out.push(prune(forest, members, in_a));
                if out.len() == k {
                    return out;
                }
            }
        }
    }
    panic!("forest with enough vertices of A yielded only {} trees", out.len());
}

fn prune(forest: &Forest, mut members: Vec<Vertex>, in_a: &impl Fn(Vertex) -> bool) -> AdTree {
    members.sort_unstable();
    loop {
        let t = forest.tree_on(&members);
        let deg = |v: Vertex| t.edges.iter().filter(|&&(x, y)| x == v || y == v).count();
        match members.iter().position(|&v| !in_a(v) && deg(v) <= 1) {
            Some(i) => {
                members.remove(i);
            }
            None => return t,
        }
    }
}

/// Structural contract of [`find_ad_trees`].
pub fn check_ad_result(g: &Graph, a: &[Vertex], d: usize, k: usize, res: &ADTreeResult) -> bool {
    let in_a = |v: Vertex| a.contains(&v);
    match res {
        ADTreeResult::Trees(trees) => {
            let mut used = BTreeSet::new();
            trees.len() == k
                && trees.iter().all(|t| {
                    let n = t.vertices.len();
                    let tg = Graph::from_edges(g.id_bound(), &t.edges).ok();
                    let Some(tg) = tg else { return false };
                    let sub = tg.induced(&t.vertices);
                    n >= d
                        && t.edges.len() + 1 == n
                        && sub.size() == t.edges.len()
                        && sub.is_connected()
                        && t.edges.iter().all(|&(u, v)| g.has_edge(u, v))
                        && t.vertices.iter().all(|&v| sub.degree(v) >= 2 || in_a(v))
                        && t.vertices.iter().all(|&v| used.insert(v))
                })
        }
        ADTreeResult::Separator(s) => {
            s.len() <= separator_bound(d, k)
                && g.without(s)
                    .components()
                    .iter()
                    .all(|c| c.iter().filter(|&&v| in_a(v)).count() < d)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn star(m: usize) -> Graph {
        let edges: Vec<_> = (1..=m).map(|i| (0, i)).collect();
        Graph::from_edges(m + 1, &edges).unwrap()
    }

    #[test]
    fn star_gives_separator_with_centre() {
        let g = star(6);
        let a: Vec<Vertex> = (1..=6).collect();
        let r = find_ad_trees(&g, &a, 3, 2);
        match &r {
            ADTreeResult::Separator(s) => assert!(s.contains(&0)),
            other => panic!("expected a separator, got {other:?}"),
        }
        assert!(check_ad_result(&g, &a, 3, 2, &r));
    }

    #[test]
    fn short_path_is_left_alone() {
        // a path on three vertices holds only two vertices of A, below d = 3
        let g = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(find_ad_trees(&g, &[0, 2], 3, 1), ADTreeResult::Separator(vec![]));
    }

    #[test]
    fn path_with_three_terminals_is_a_tree() {
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap();
        let r = find_ad_trees(&g, &[0, 2, 4], 3, 1);
        let ADTreeResult::Trees(t) = &r else { panic!("{r:?}") };
        assert_eq!(t[0].vertices, vec![0, 1, 2, 3, 4]);
    }

    #[test]
    fn two_disjoint_spiders() {
        let mut edges = vec![];
        for c in [0, 4] {
            for i in 1..=3 {
                edges.push((c, c + i));
            }
        }
        let g = Graph::from_edges(8, &edges).unwrap();
        let a = [1, 2, 3, 5, 6, 7];
        let r = find_ad_trees(&g, &a, 3, 2);
        let ADTreeResult::Trees(t) = &r else { panic!("{r:?}") };
        assert_eq!(t.len(), 2);
        assert!(check_ad_result(&g, &a, 3, 2, &r));
    }

    #[test]
    fn harvest_splits_one_growing_comb() {
        // spine 0..m with a pendant A-vertex on every spine vertex; paths keep
        // attaching to the first tree until the harvest threshold is reached
        let m = 30;
        let mut edges: Vec<_> = (0..m - 1).map(|i| (i, i + 1)).collect();
        edges.extend((0..m).map(|i| (i, m + i)));
        let g = Graph::from_edges(2 * m, &edges).unwrap();
        let a: Vec<Vertex> = (m..2 * m).collect();
        for (d, k) in [(2, 2), (2, 4), (3, 2), (2, 1)] {
            let r = find_ad_trees(&g, &a, d, k);
            assert!(check_ad_result(&g, &a, d, k, &r), "d = {d}, k = {k}: {r:?}");
            assert!(matches!(r, ADTreeResult::Trees(_)), "d = {d}, k = {k}");
        }
    }
}
