//! Reduction from clusterable instances to Subset Feedback Vertex Set.
//!
//! Every external vertex `x` loses its edges and gains one private copy
//! `v(x, H)` per cluster `H` containing it. A copy is joined to `x` and to the
//! neighbours of `x` inside `H`, with external neighbours replaced by their
//! own copies for `H`. Cycles through an external vertex of the new graph
//! correspond to cycles of the old graph that leave a cluster.

use std::collections::{BTreeMap, VecDeque};

use crate::blocks::block_decomposition;
use crate::clustering::ClusterSet;
use crate::graph::{Graph, Vertex};

#[derive(Clone, Debug)]
pub struct SfvsInstance {
    pub graph: Graph,
    /// Sorted terminal set.
    pub terminals: Vec<Vertex>,
    pub k: usize,
    /// Split vertex to (external vertex, cluster index).
    pub back_map: BTreeMap<Vertex, (Vertex, usize)>,
    /// Ids at or above this bound are split vertices.
    pub source_bound: usize,
}

impl SfvsInstance {
    pub fn is_split(&self, v: Vertex) -> bool {
        v >= self.source_bound
    }
}

pub fn build_sfvs_instance(g: &Graph, cs: &ClusterSet, k: usize) -> SfvsInstance {
    let mut h = g.clone();
    let source_bound = g.id_bound();
    let external = &cs.external_vertices;
    let is_ext = |v: Vertex| external.binary_search(&v).is_ok();
    let mut copy: BTreeMap<(Vertex, usize), Vertex> = BTreeMap::new();
    let mut back_map = BTreeMap::new();
    for &x in external {
        for (i, c) in cs.clusters.iter().enumerate() {
            if c.binary_search(&x).is_ok() {
                let s = h.add_vertex();
                copy.insert((x, i), s);
                back_map.insert(s, (x, i));
            }
        }
    }
    for &x in external {
        let nbrs = g.neighbors(x).to_vec();
        for y in nbrs {
            h.remove_edge(x, y).unwrap();
        }
    }
    for (&(x, i), &s) in &copy {
        h.add_edge(s, x).unwrap();
        for &y in &cs.clusters[i] {
            if y != x && g.has_edge(x, y) {
                let target = if is_ext(y) { copy[&(y, i)] } else { y };
                h.add_edge(s, target).unwrap();
            }
        }
    }
    SfvsInstance {
        graph: h,
        terminals: external.clone(),
        k,
        back_map,
        source_bound,
    }
}

/// True iff no cycle of `graph - s` passes through a terminal.
pub fn is_sfvs(graph: &Graph, terminals: &[Vertex], s: &[Vertex]) -> bool {
    let h = graph.without(s);
    let bd = block_decomposition(&h);
    terminals
        .iter()
        .filter(|t| h.has_vertex(**t))
        .all(|&t| bd.blocks_of(t).iter().all(|&b| bd.blocks[b].len() <= 2))
}

/// Vertex set of a shortest cycle through some terminal.
fn terminal_cycle(g: &Graph, terminals: &[Vertex]) -> Option<Vec<Vertex>> {
    let bound = g.id_bound();
    let mut best: Option<Vec<Vertex>> = None;
    let mut dist = vec![usize::MAX; bound];
    let mut par = vec![usize::MAX; bound];
    let mut label = vec![usize::MAX; bound];
    for &x in terminals {
        if !g.has_vertex(x) || g.degree(x) < 2 {
            continue;
        }
        dist.iter_mut().for_each(|d| *d = usize::MAX);
        dist[x] = 0;
        let mut queue = VecDeque::from([x]);
        while let Some(u) = queue.pop_front() {
            if let Some(b) = &best {
                if 2 * dist[u] + 1 > b.len() {
                    break;
                }
            }
            for &w in g.neighbors(u) {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    par[w] = u;
                    label[w] = if u == x { w } else { label[u] };
                    queue.push_back(w);
                } else if u != x && w != x && label[w] != label[u] {
                    let len = dist[u] + dist[w] + 1;
                    if best.as_ref().is_none_or(|b| len < b.len()) {
                        let mut set = vec![x];
                        for mut v in [u, w] {
                            while v != x {
                                set.push(v);
                                v = par[v];
                            }
                        }
                        set.sort_unstable();
                        best = Some(set);
                    }
                }
            }
        }
    }
    best
}

fn search(g: &Graph, terminals: &[Vertex], budget: usize, chosen: &mut Vec<Vertex>) -> bool {
    let Some(cycle) = terminal_cycle(g, terminals) else {
        return true;
    };
    if budget == 0 {
        return false;
    }
    for v in cycle {
        let mut h = g.clone();
        h.remove_vertex(v).unwrap();
        chosen.push(v);
        if search(&h, terminals, budget - 1, chosen) {
            return true;
        }
        chosen.pop();
    }
    false
}

enum Limited {
    Found,
    Absent,
    Exhausted,
}

fn search_limited(
    g: &Graph,
    terminals: &[Vertex],
    budget: usize,
    nodes: &mut usize,
    chosen: &mut Vec<Vertex>,
) -> Limited {
    if *nodes == 0 {
        return Limited::Exhausted;
    }
    *nodes -= 1;
    let Some(cycle) = terminal_cycle(g, terminals) else {
        return Limited::Found;
    };
    if budget == 0 {
        return Limited::Absent;
    }
    let mut exhausted = false;
    for v in cycle {
        let mut h = g.clone();
        h.remove_vertex(v).unwrap();
        chosen.push(v);
        match search_limited(&h, terminals, budget - 1, nodes, chosen) {
            Limited::Found => return Limited::Found,
            Limited::Absent => {}
            Limited::Exhausted => exhausted = true,
        }
        chosen.pop();
        if exhausted {
            break;
        }
    }
    if exhausted {
        Limited::Exhausted
    } else {
        Limited::Absent
    }
}

/// Minimum subset feedback vertex set of size at most `max_size` found
/// within `node_limit` search nodes, together with a proven lower bound on
/// the minimum. The set is `None` when the limit ran out first or no set of
/// that size exists.
pub(crate) fn min_sfvs_limited(
    graph: &Graph,
    terminals: &[Vertex],
    node_limit: usize,
    max_size: usize,
) -> (Option<Vec<Vertex>>, usize) {
    let mut nodes = node_limit;
    for budget in 0..=max_size.min(graph.order()) {
        let mut chosen = Vec::new();
        match search_limited(graph, terminals, budget, &mut nodes, &mut chosen) {
            Limited::Found => {
                chosen.sort_unstable();
                return (Some(chosen), budget);
            }
            Limited::Absent => {}
            Limited::Exhausted => return (None, budget),
        }
    }
    (None, max_size.min(graph.order()) + 1)
}

/// Some shortest cycle through a terminal, for greedy heuristics.
pub(crate) fn shortest_terminal_cycle(g: &Graph, terminals: &[Vertex]) -> Option<Vec<Vertex>> {
    terminal_cycle(g, terminals)
}

fn binomial(n: usize, r: usize) -> u128 {
    (0..r as u128).fold(1u128, |acc, i| acc * (n as u128 - i) / (i + 1))
}

/// Lexicographically first valid set among all `size`-subsets of `verts`.
fn first_valid_subset(inst: &SfvsInstance, verts: &[Vertex], size: usize) -> Option<Vec<Vertex>> {
    let n = verts.len();
    let mut idx: Vec<usize> = (0..size).collect();
    loop {
        let s: Vec<Vertex> = idx.iter().map(|&i| verts[i]).collect();
        if is_sfvs(&inst.graph, &inst.terminals, &s) {
            return Some(s);
        }
        let mut i = size;
        loop {
            if i == 0 {
                return None;
            }
            i -= 1;
            if idx[i] != i + n - size {
                break;
            }
        }
        idx[i] += 1;
        for j in i + 1..size {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Subset enumeration is used for the final tie-break only below this many
/// candidate sets.
const LEX_LIMIT: u128 = 5_000;

/// Minimum subset feedback vertex set of size at most `inst.k`.
///
/// The size is found by iterative deepening over shortest terminal cycles.
/// Among sets of that size the lexicographically smallest is returned when
/// the number of candidates is small enough to enumerate, otherwise the
/// first set found by the branching.
pub fn solve_sfvs(inst: &SfvsInstance) -> Option<Vec<Vertex>> {
    for budget in 0..=inst.k {
        let mut chosen = Vec::new();
        if search(&inst.graph, &inst.terminals, budget, &mut chosen) {
            let verts: Vec<Vertex> = inst.graph.vertices().collect();
            if budget > 0 && binomial(verts.len(), budget) <= LEX_LIMIT {
                if let Some(s) = first_valid_subset(inst, &verts, budget) {
                    return Some(s);
                }
            }
            chosen.sort_unstable();
            return Some(chosen);
        }
    }
    None
}

/// Maps a solution of the split instance back to the source graph.
pub fn lift_solution(inst: &SfvsInstance, s_prime: &[Vertex]) -> Vec<Vertex> {
    let mut out: Vec<Vertex> = s_prime
        .iter()
        .map(|&v| match inst.back_map.get(&v) {
            Some(&(x, _)) => x,
            None => v,
        })
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clustering::clusters;
    use crate::pclass::PClassSpec;

    fn bowtie() -> Graph {
        Graph::from_edges(5, &[(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)]).unwrap()
    }

    #[test]
    fn bowtie_construction() {
        let g = bowtie();
        let cs = clusters(&g, &PClassSpec::cliques(), 3).unwrap();
        let inst = build_sfvs_instance(&g, &cs, 1);
        assert_eq!(inst.graph.order(), 7);
        assert_eq!(inst.terminals, vec![2]);
        assert_eq!(inst.graph.neighbors(2), &[5, 6]);
        for (&s, &(x, _)) in &inst.back_map {
            let terminals_adjacent = inst
                .graph
                .neighbors(s)
                .iter()
                .filter(|v| inst.terminals.contains(v))
                .count();
            assert_eq!((x, terminals_adjacent), (2, 1));
        }
        assert_eq!(solve_sfvs(&inst), Some(vec![]));
    }

    #[test]
    fn three_triangles_at_one_vertex() {
        let g = Graph::from_edges(
            7,
            &[(0, 1), (0, 2), (1, 2), (0, 3), (0, 4), (3, 4), (0, 5), (0, 6), (5, 6)],
        )
        .unwrap();
        let cs = clusters(&g, &PClassSpec::cliques(), 3).unwrap();
        let inst = build_sfvs_instance(&g, &cs, 0);
        assert_eq!(inst.graph.order(), 10);
        assert_eq!(inst.back_map.len(), 3);
    }

    #[test]
    fn no_external_vertices() {
        let g = Graph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        let cs = clusters(&g, &PClassSpec::cliques(), 3).unwrap();
        let inst = build_sfvs_instance(&g, &cs, 0);
        assert_eq!(inst.graph, g);
        assert!(inst.terminals.is_empty());
        assert_eq!(solve_sfvs(&inst), Some(vec![]));
    }

    #[test]
    fn triangle_with_terminal() {
        let g = Graph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        let mut inst = SfvsInstance {
            graph: g,
            terminals: vec![0],
            k: 0,
            back_map: BTreeMap::new(),
            source_bound: 3,
        };
        assert_eq!(solve_sfvs(&inst), None);
        inst.k = 1;
        assert_eq!(solve_sfvs(&inst), Some(vec![0]));
    }

    #[test]
    fn long_cycle_through_two_triangles_needs_one() {
        // two triangles joined by two paths of length two
        let g = Graph::from_edges(
            8,
            &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (2, 6), (6, 3), (1, 7), (7, 4)],
        )
        .unwrap();
        let cs = clusters(&g, &PClassSpec::cliques(), 3).unwrap();
        let inst = build_sfvs_instance(&g, &cs, 2);
        let s = solve_sfvs(&inst).unwrap();
        assert_eq!(s.len(), 1);
        let lifted = lift_solution(&inst, &s);
        assert!(lifted.len() <= s.len());
        assert!(crate::is_in_phi(&g.without(&lifted), &PClassSpec::cliques(), 3));
    }

    #[test]
    fn lifting() {
        let g = bowtie();
        let cs = clusters(&g, &PClassSpec::cliques(), 3).unwrap();
        let inst = build_sfvs_instance(&g, &cs, 1);
        assert!(lift_solution(&inst, &[]).is_empty());
        assert_eq!(lift_solution(&inst, &[5]), vec![2]);
        assert_eq!(lift_solution(&inst, &[0, 3]), vec![0, 3]);
    }
}
