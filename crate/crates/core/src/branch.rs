//! Bounded search tree over small obstructions.
//!
//! While the graph contains an obstruction on at most `2d - 2` vertices, one
//! of them must be deleted, giving at most `2d - 2` branches per level. An
//! obstruction-free graph is solved exactly through the subset feedback
//! vertex set reduction.

use crate::clustering::{clusters_unchecked, find_obstruction, Search};
use crate::graph::{Graph, Vertex};
use crate::pclass::{is_in_phi, PClassSpec};
use crate::sfvs::{build_sfvs_instance, lift_solution, solve_sfvs};

#[derive(Clone, Debug)]
pub struct Instance {
    pub graph: Graph,
    pub pclass: PClassSpec,
    pub d: usize,
    pub k: usize,
}

impl Instance {
    pub fn new(graph: Graph, pclass: PClassSpec, d: usize, k: usize) -> Self {
        Instance { graph, pclass, d, k }
    }

    /// True iff `s` has at most `k` vertices and `G - s` lies in the target class.
    pub fn accepts_solution(&self, s: &[Vertex]) -> bool {
        s.len() <= self.k && is_in_phi(&self.graph.without(s), &self.pclass, self.d)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SolveStats {
    /// Nodes of the search tree, the root included.
    pub nodes: u64,
    /// Nodes that ended without branching.
    pub leaves: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    /// Sorted deleted vertices.
    pub deleted: Vec<Vertex>,
    pub stats: SolveStats,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Solved(Solution),
    Infeasible(SolveStats),
}

impl Outcome {
    pub fn is_yes(&self) -> bool {
        matches!(self, Outcome::Solved(_))
    }

    pub fn solution(&self) -> Option<&[Vertex]> {
        match self {
            Outcome::Solved(s) => Some(&s.deleted),
            Outcome::Infeasible(_) => None,
        }
    }

    pub fn stats(&self) -> SolveStats {
        match self {
            Outcome::Solved(s) => s.stats,
            Outcome::Infeasible(st) => *st,
        }
    }

    pub(crate) fn from_option(s: Option<Vec<Vertex>>, stats: SolveStats) -> Self {
        match s {
            Some(mut deleted) => {
                deleted.sort_unstable();
                Outcome::Solved(Solution { deleted, stats })
            }
            None => Outcome::Infeasible(stats),
        }
    }
}

/// Minimum vertex cover of size at most `budget`, by branching on edge endpoints.
pub(crate) fn vertex_cover(g: &Graph, budget: usize, stats: &mut SolveStats) -> Option<Vec<Vertex>> {
    stats.nodes += 1;
    let Some((u, v)) = g.edges().next() else {
        stats.leaves += 1;
        return Some(Vec::new());
    };
    if budget == 0 {
        stats.leaves += 1;
        return None;
    }
    let mut best: Option<Vec<Vertex>> = None;
    for x in [u, v] {
        let limit = best.as_ref().map_or(budget, |b| b.len() - 1);
        if limit == 0 {
            break;
        }
        if let Some(mut s) = vertex_cover(&g.without(&[x]), limit - 1, stats) {
            s.push(x);
            best = Some(s);
        }
    }
    best
}

fn branch(g: &Graph, p: &PClassSpec, d: usize, budget: usize, stats: &mut SolveStats) -> Option<Vec<Vertex>> {
    stats.nodes += 1;
    let search = find_obstruction(g, p, d).expect("non-degenerate class");
    match search {
        Search::Found(o) => {
            if budget == 0 {
                stats.leaves += 1;
                return None;
            }
            let mut best: Option<Vec<Vertex>> = None;
            for &v in &o.vertex_set {
                let limit = best.as_ref().map_or(budget, |b| b.len() - 1);
                if limit == 0 {
                    break;
                }
                if let Some(mut s) = branch(&g.without(&[v]), p, d, limit - 1, stats) {
                    s.push(v);
                    best = Some(s);
                }
            }
            best
        }
        Search::Free => {
            stats.leaves += 1;
            let cs = clusters_unchecked(g, p, d);
            let inst = build_sfvs_instance(g, &cs, budget);
            solve_sfvs(&inst).map(|s| lift_solution(&inst, &s))
        }
    }
}

/// Minimum-size solution of size at most `k`, or infeasibility.
pub fn solve(inst: &Instance) -> Outcome {
    let mut stats = SolveStats::default();
    let s = if inst.d <= 1 || inst.pclass.is_degenerate() {
        vertex_cover(&inst.graph, inst.k, &mut stats)
    } else {
        branch(&inst.graph, &inst.pclass, inst.d, inst.k, &mut stats)
    };
    debug_assert!(s.as_ref().is_none_or(|s| inst.accepts_solution(s)));
    Outcome::from_option(s, stats)
}

/// Number of search-tree nodes explored by [`solve`].
pub fn count_branch_nodes(inst: &Instance) -> u64 {
    solve(inst).stats().nodes
}

/// The bound `sum_{i=0..k} (2d-2)^i` on the number of search-tree nodes.
pub fn node_bound(d: usize, k: usize) -> u128 {
    let b = (2 * d).saturating_sub(2) as u128;
    (0..=k as u32).map(|i| b.pow(i)).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k4() -> Graph {
        Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap()
    }

    fn diamond() -> Graph {
        Graph::from_edges(4, &[(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)]).unwrap()
    }

    fn size_of(o: &Outcome) -> Option<usize> {
        o.solution().map(|s| s.len())
    }

    #[test]
    fn k4_examples() {
        let cl = PClassSpec::cliques();
        let cy = PClassSpec::cycles_and_k2();
        assert_eq!(size_of(&solve(&Instance::new(k4(), cl.clone(), 4, 0))), Some(0));
        assert_eq!(size_of(&solve(&Instance::new(k4(), cl, 3, 1))), Some(1));
        assert!(!solve(&Instance::new(k4(), cy.clone(), 4, 0)).is_yes());
        assert_eq!(size_of(&solve(&Instance::new(k4(), cy, 4, 1))), Some(1));
    }

    #[test]
    fn node_counts() {
        let cy = PClassSpec::cycles_and_k2();
        let free = Instance::new(Graph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]).unwrap(), cy.clone(), 3, 2);
        assert_eq!(count_branch_nodes(&free), 1);
        let dia = Instance::new(diamond(), cy, 4, 1);
        assert!(count_branch_nodes(&dia) <= 5);
        assert_eq!(node_bound(4, 1), 7);
    }

    #[test]
    fn small_d_paths() {
        let p = PClassSpec::all_biconnected();
        // d = 1: vertex cover of the diamond has size 2
        assert_eq!(size_of(&solve(&Instance::new(diamond(), p.clone(), 1, 3))), Some(2));
        // d = 2: feedback vertex set of the diamond has size 1
        assert_eq!(size_of(&solve(&Instance::new(diamond(), p, 2, 3))), Some(1));
        let none = PClassSpec::custom("edgeless", true, |_| false);
        assert_eq!(size_of(&solve(&Instance::new(diamond(), none, 4, 3))), Some(2));
    }

    #[test]
    fn solutions_validate() {
        let g = Graph::from_edges(
            6,
            &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 2), (3, 4), (4, 5), (5, 3)],
        )
        .unwrap();
        for p in [PClassSpec::cliques(), PClassSpec::cycles_and_k2(), PClassSpec::all_biconnected()] {
            for d in 3..=5 {
                let inst = Instance::new(g.clone(), p.clone(), d, 4);
                if let Some(s) = solve(&inst).solution() {
                    assert!(inst.accepts_solution(s));
                }
            }
        }
    }
}
