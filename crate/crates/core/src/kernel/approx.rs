//! Approximation for the minimisation version of the problem.

use crate::clustering::{clusters_unchecked, find_obstruction, Search};
use crate::graph::{Graph, Vertex};
use crate::pclass::PClassSpec;
use crate::sfvs::{build_sfvs_instance, is_sfvs, lift_solution, min_sfvs_limited, shortest_terminal_cycle};

/// Search nodes granted to the exact feedback phase before falling back to
/// the greedy heuristic.
const SFVS_NODE_LIMIT: usize = 20_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Approximation {
    /// Sorted solution.
    pub solution: Vec<Vertex>,
    /// A proven lower bound on the optimum.
    pub lower_bound: usize,
    /// True when the solution is known to be within the `2d + 6` ratio.
    pub ratio_certified: bool,
}

/// A set `U` with `G - U` in the target class.
///
/// Obstructions on at most `2d - 2` vertices are deleted whole until none
/// remain. The clusterable remainder is then reduced to Subset Feedback
/// Vertex Set, which is solved exactly when that is cheap and greedily
/// otherwise.
pub fn approximate(g: &Graph, p: &PClassSpec, d: usize) -> Vec<Vertex> {
    approximate_with_bound(g, p, d).solution
}

pub fn approximate_with_bound(g: &Graph, p: &PClassSpec, d: usize) -> Approximation {
    approximate_up_to(g, p, d, usize::MAX)
}

/// As [`approximate_with_bound`], but the exact feedback phase gives up once
/// the optimum is known to exceed `max_opt`.
pub(crate) fn approximate_up_to(g: &Graph, p: &PClassSpec, d: usize, max_opt: usize) -> Approximation {
    if d <= 1 || p.is_degenerate() {
        return matching_cover(g);
    }
    let mut h = g.clone();
    let mut solution = Vec::new();
    let mut obstructions = 0;
    while let Search::Found(o) = find_obstruction(&h, p, d).expect("non-degenerate class") {
        h.remove_vertices(&o.vertex_set).unwrap();
        solution.extend_from_slice(&o.vertex_set);
        obstructions += 1;
    }
    let cs = clusters_unchecked(&h, p, d);
    let inst = build_sfvs_instance(&h, &cs, h.order());
    let (exact, sfvs_bound) = min_sfvs_limited(&inst.graph, &inst.terminals, SFVS_NODE_LIMIT, max_opt);
    let ratio_certified = exact.is_some();
    let fvs = exact.unwrap_or_else(|| greedy_sfvs(&inst.graph, &inst.terminals));
    solution.extend(lift_solution(&inst, &fvs));
    solution.sort_unstable();
    solution.dedup();
    Approximation {
        solution,
        lower_bound: obstructions.max(sfvs_bound),
        ratio_certified,
    }
}

/// Endpoints of a maximal matching: a 2-approximate vertex cover.
fn matching_cover(g: &Graph) -> Approximation {
    let mut covered = vec![false; g.id_bound()];
    let mut solution = Vec::new();
    for (u, v) in g.edges() {
        if !covered[u] && !covered[v] {
            covered[u] = true;
            covered[v] = true;
            solution.extend([u, v]);
        }
    }
    solution.sort_unstable();
    Approximation {
        lower_bound: solution.len() / 2,
        solution,
        ratio_certified: true,
    }
}

/// Deletes a terminal of a shortest terminal cycle until none is left, then
/// drops chosen vertices that turned out to be unnecessary.
fn greedy_sfvs(graph: &Graph, terminals: &[Vertex]) -> Vec<Vertex> {
    let mut chosen = Vec::new();
    let mut h = graph.clone();
    while let Some(cycle) = shortest_terminal_cycle(&h, terminals) {
        let t = cycle
            .iter()
            .copied()
            .filter(|v| terminals.binary_search(v).is_ok())
            .max_by_key(|&v| (h.degree(v), std::cmp::Reverse(v)))
            .expect("the cycle passes through a terminal");
        h.remove_vertex(t).unwrap();
        chosen.push(t);
    }
    for i in (0..chosen.len()).rev() {
        let v = chosen.remove(i);
        if !is_sfvs(graph, terminals, &chosen) {
            chosen.insert(i, v);
        }
    }
    chosen.sort_unstable();
    chosen
}
