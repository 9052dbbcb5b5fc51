//! Small obstructions and cluster extraction.
//!
//! An obstruction is a biconnected induced subgraph that either has at most
//! `d` vertices and lies outside `P`, or has between `d + 1` and `2d - 2`
//! vertices. A graph without obstructions splits into clusters: maximal
//! induced subgraphs isomorphic to `K1` or to a member of `P` with at most
//! `d` vertices, pairwise sharing at most one vertex.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use crate::pclass::PClassSpec;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ObstructionKind {
    /// Biconnected, `2 <= |V| <= d`, not in the class.
    InB2dNotP,
    /// Biconnected, `d + 1 <= |V| <= 2d - 2`.
    TooBig,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Obstruction {
    /// Sorted vertex set of the induced subgraph.
    pub vertex_set: Vec<Vertex>,
    pub kind: ObstructionKind,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Search {
    Found(Obstruction),
    Free,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ClusterSet {
    /// Sorted vertex sets.
    pub clusters: Vec<Vec<Vertex>>,
    /// Vertices lying in at least two clusters, sorted.
    pub external_vertices: Vec<Vertex>,
}

impl ClusterSet {
    /// Indices of the clusters containing `v`.
    pub fn clusters_of(&self, v: Vertex) -> Vec<usize> {
        self.clusters
            .iter()
            .enumerate()
            .filter(|(_, c)| c.binary_search(&v).is_ok())
            .map(|(i, _)| i)
            .collect()
    }
}

/// Kind of obstruction formed by the biconnected induced subgraph `g[set]`.
pub fn classify(g: &Graph, p: &PClassSpec, d: usize, set: &[Vertex]) -> Option<ObstructionKind> {
    let n = set.len();
    if n > d && n + 2 <= 2 * d {
        Some(ObstructionKind::TooBig)
    } else if n >= 2 && n <= d && !p.accepts_block(g, set) {
        Some(ObstructionKind::InB2dNotP)
    } else {
        None
    }
}

fn trace_back(par: &[Vertex], mut v: Vertex, stop: Vertex, out: &mut Vec<Vertex>) {
    while v != stop {
        out.push(v);
        v = par[v];
    }
}

/// Vertex set of a shortest cycle of length at most `max_len`.
///
/// Among shortest cycles found by the per-root searches the lexicographically
/// smallest sorted vertex set wins.
pub fn shortest_cycle(g: &Graph, max_len: usize) -> Option<Vec<Vertex>> {
    let bound = g.id_bound();
    let mut best: Option<(usize, Vec<Vertex>)> = None;
    let mut dist = vec![usize::MAX; bound];
    let mut par = vec![usize::MAX; bound];
    let mut label = vec![usize::MAX; bound];
    let mut queue = VecDeque::new();
    let mut touched = Vec::new();
    for r in g.vertices() {
        if g.degree(r) < 2 {
            continue;
        }
        let limit = best.as_ref().map_or(max_len, |b| b.0);
        for &t in &touched {
            dist[t] = usize::MAX;
        }
        touched.clear();
        dist[r] = 0;
        touched.push(r);
        queue.clear();
        queue.push_back(r);
        while let Some(u) = queue.pop_front() {
            if 2 * dist[u] + 1 > limit {
                break;
            }
            for &w in g.neighbors(u) {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    par[w] = u;
                    label[w] = if u == r { w } else { label[u] };
                    touched.push(w);
                    queue.push_back(w);
                } else if u != r && w != r && w != par[u] && label[w] != label[u] {
                    let len = dist[u] + dist[w] + 1;
                    if len > limit {
                        continue;
                    }
                    let mut set = vec![r];
                    trace_back(&par, u, r, &mut set);
                    trace_back(&par, w, r, &mut set);
                    set.sort_unstable();
                    let better = match &best {
                        None => true,
                        Some((bl, bs)) => len < *bl || (len == *bl && set < *bs),
                    };
                    if better {
                        best = Some((len, set));
                    }
                }
            }
        }
    }
    best.map(|b| b.1)
}

/// Shortest non-trivial `X`-paths in `g`.
struct XPaths {
    /// Overall shortest: (number of internal vertices, internal vertices).
    best: Option<Vec<Vertex>>,
    /// Shortest length (in edges) of an `X`-path between each pair.
    pair_len: Vec<(Vertex, Vertex, usize, Vec<Vertex>)>,
}

fn x_paths(g: &Graph, in_x: &[bool], xs: &[Vertex]) -> XPaths {
    let bound = g.id_bound();
    let mut dist = vec![usize::MAX; bound];
    let mut par = vec![usize::MAX; bound];
    let mut best: Option<Vec<Vertex>> = None;
    let mut pair_len = Vec::new();
    let mut queue = VecDeque::new();
    for &x in xs {
        dist.iter_mut().for_each(|d| *d = usize::MAX);
        queue.clear();
        let mut to: Vec<Option<(usize, Vertex)>> = vec![None; xs.len()];
        for &w in g.neighbors(x) {
            if !in_x[w] {
                dist[w] = 1;
                par[w] = x;
                queue.push_back(w);
            }
        }
        while let Some(u) = queue.pop_front() {
            for &y in g.neighbors(u) {
                if in_x[y] {
                    if y != x {
                        let j = xs.binary_search(&y).unwrap();
                        if to[j].is_none() {
                            to[j] = Some((dist[u] + 1, u));
                        }
                    }
                } else if dist[y] == usize::MAX {
                    dist[y] = dist[u] + 1;
                    par[y] = u;
                    queue.push_back(y);
                }
            }
        }
        for (j, entry) in to.into_iter().enumerate() {
            if let Some((len, last)) = entry {
                let mut internal = Vec::new();
                trace_back(&par, last, x, &mut internal);
                internal.sort_unstable();
                if best.as_ref().is_none_or(|b| internal.len() < b.len()) {
                    best = Some(internal.clone());
                }
                pair_len.push((x, xs[j], len, internal));
            }
        }
    }
    XPaths { best, pair_len }
}

/// Shortest path from `u` to `v` inside `g[xs]`.
fn path_within(g: &Graph, in_x: &[bool], u: Vertex, v: Vertex) -> Vec<Vertex> {
    let mut par = vec![usize::MAX; g.id_bound()];
    let mut queue = VecDeque::from([u]);
    par[u] = u;
    while let Some(a) = queue.pop_front() {
        if a == v {
            break;
        }
        for &b in g.neighbors(a) {
            if in_x[b] && par[b] == usize::MAX {
                par[b] = a;
                queue.push_back(b);
            }
        }
    }
    let mut path = vec![u];
    trace_back(&par, v, u, &mut path);
    path
}

fn remove_induced_edges(work: &mut Graph, g: &Graph, xs: &[Vertex]) {
    for (i, &a) in xs.iter().enumerate() {
        for &b in &xs[i + 1..] {
            if g.has_edge(a, b) {
                work.remove_edge(a, b).unwrap();
            }
        }
    }
}

fn found(g: &Graph, p: &PClassSpec, d: usize, mut set: Vec<Vertex>) -> Search {
    set.sort_unstable();
    set.dedup();
    let kind = classify(g, p, d, &set).expect("search returned a non-obstruction");
    Search::Found(Obstruction {
        vertex_set: set,
        kind,
    })
}

/// Finds an obstruction in `g` or certifies that none exists.
///
/// For `d <= 2` every graph is obstruction-free.
pub fn find_obstruction(g: &Graph, p: &PClassSpec, d: usize) -> Result<Search> {
    if p.is_degenerate() {
        return Err(Error::DegenerateClass);
    }
    if d <= 2 {
        return Ok(Search::Free);
    }
    let mut work = g.clone();
    let mut in_x = vec![false; g.id_bound()];
    while let Some(mut xs) = shortest_cycle(&work, 2 * d - 2) {
        if xs.len() > d || !p.accepts_block(g, &xs) {
            return Ok(found(g, p, d, xs));
        }
        for &x in &xs {
            in_x[x] = true;
        }
        let leftover = loop {
            let paths = x_paths(&work, &in_x, &xs);
            match paths.best {
                Some(internal) if xs.len() + internal.len() <= d => {
                    for &v in &internal {
                        in_x[v] = true;
                    }
                    xs.extend(internal);
                    xs.sort_unstable();
                    if !p.accepts_block(g, &xs) {
                        return Ok(found(g, p, d, xs));
                    }
                }
                _ => break paths,
            }
        };
        if let Some(internal) = &leftover.best {
            if xs.len() + internal.len() <= 2 * d - 2 {
                let mut set = xs.clone();
                set.extend(internal);
                return Ok(found(g, p, d, set));
            }
        }
        let mut pair: Option<(usize, Vertex, Vertex, &Vec<Vertex>)> = None;
        for (u, v, len, internal) in &leftover.pair_len {
            if u > v {
                continue;
            }
            let inside = path_within(g, &in_x, *u, *v).len() - 1;
            let total = inside + len;
            if total <= 2 * d - 2 && pair.as_ref().is_none_or(|b| total < b.0) {
                pair = Some((total, *u, *v, internal));
            }
        }
        if let Some((_, u, v, internal)) = pair {
            let mut set = path_within(g, &in_x, u, v);
            set.extend(internal);
            return Ok(found(g, p, d, set));
        }
        remove_induced_edges(&mut work, g, &xs);
        for &x in &xs {
            in_x[x] = false;
        }
    }
    Ok(Search::Free)
}

/// Clusters of an obstruction-free graph; the caller guarantees freeness.
pub(crate) fn clusters_unchecked(g: &Graph, p: &PClassSpec, d: usize) -> ClusterSet {
    let mut work = g.clone();
    let mut clusters = Vec::new();
    if d >= 3 {
        let mut in_x = vec![false; g.id_bound()];
        while let Some(mut xs) = shortest_cycle(&work, d) {
            for &x in &xs {
                in_x[x] = true;
            }
            loop {
                match x_paths(&work, &in_x, &xs).best {
                    Some(internal) if xs.len() + internal.len() <= d => {
                        for &v in &internal {
                            in_x[v] = true;
                        }
                        xs.extend(internal);
                        xs.sort_unstable();
                    }
                    _ => break,
                }
            }
            debug_assert!(p.accepts_block(g, &xs));
            remove_induced_edges(&mut work, g, &xs);
            for &x in &xs {
                in_x[x] = false;
            }
            clusters.push(xs);
        }
    }
    for (u, v) in work.edges() {
        clusters.push(vec![u, v]);
    }
    for v in g.vertices() {
        if g.degree(v) == 0 {
            clusters.push(vec![v]);
        }
    }
    let mut count = vec![0usize; g.id_bound()];
    for c in &clusters {
        for &v in c {
            count[v] += 1;
        }
    }
    let external_vertices = (0..g.id_bound()).filter(|&v| count[v] >= 2).collect();
    ClusterSet {
        clusters,
        external_vertices,
    }
}

/// Clusters of `g`; errors with the obstruction if `g` is not free.
pub fn clusters(g: &Graph, p: &PClassSpec, d: usize) -> Result<ClusterSet> {
    match find_obstruction(g, p, d)? {
        Search::Found(o) => Err(Error::NotFree(Box::new(o))),
        Search::Free => Ok(clusters_unchecked(g, p, d)),
    }
}

/// True iff any two clusters share at most one vertex.
pub fn check_clusterable(_g: &Graph, cs: &ClusterSet) -> bool {
    for (i, a) in cs.clusters.iter().enumerate() {
        for b in &cs.clusters[i + 1..] {
            let shared = a.iter().filter(|v| b.binary_search(v).is_ok()).count();
            if shared > 1 {
                return false;
            }
        }
    }
    true
}
