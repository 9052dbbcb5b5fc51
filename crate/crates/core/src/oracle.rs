//! Exhaustive reference solver.
//!
//! Vertex subsets are tried by increasing size, lexicographically within a
//! size. Membership of `G - S` is decided on bitmasks: two edges lie in the
//! same block iff no single vertex separates them, so each edge gets a
//! signature listing its side in `G - w` for every `w`, and edges with equal
//! signatures form a block.

use crate::branch::{Instance, Outcome, SolveStats};
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use crate::pclass::PClassSpec;

pub const DEFAULT_CAP: usize = 14;

/// Dense bitmask view of a graph on at most 64 vertices.
struct Dense {
    ids: Vec<Vertex>,
    adj: Vec<u64>,
    edges: Vec<(usize, usize)>,
}

impl Dense {
    fn new(g: &Graph) -> Self {
        let ids: Vec<Vertex> = g.vertices().collect();
        let pos = |v: Vertex| ids.binary_search(&v).unwrap();
        let mut adj = vec![0u64; ids.len()];
        let mut edges = Vec::new();
        for (u, v) in g.edges() {
            let (a, b) = (pos(u), pos(v));
            adj[a] |= 1 << b;
            adj[b] |= 1 << a;
            edges.push((a, b));
        }
        Dense { ids, adj, edges }
    }

    /// Component label (lowest member index) of each vertex of `alive`.
    fn components(&self, alive: u64, label: &mut [u8]) {
        let mut rest = alive;
        while rest != 0 {
            let start = rest.trailing_zeros() as usize;
            let mut comp = 1u64 << start;
            let mut frontier = comp;
            while frontier != 0 {
                let v = frontier.trailing_zeros() as usize;
                frontier &= frontier - 1;
                let new = self.adj[v] & alive & !comp;
                comp |= new;
                frontier |= new;
            }
            rest &= !comp;
            let mut m = comp;
            while m != 0 {
                let v = m.trailing_zeros() as usize;
                m &= m - 1;
                label[v] = start as u8;
            }
        }
    }

    /// Vertex masks and edge counts of the blocks of `G[alive]` with an edge.
    fn blocks(&self, alive: u64) -> Vec<(u64, usize)> {
        let n = self.ids.len();
        let live: Vec<(usize, usize)> = self
            .edges
            .iter()
            .copied()
            .filter(|&(a, b)| alive >> a & 1 == 1 && alive >> b & 1 == 1)
            .collect();
        if live.is_empty() {
            return Vec::new();
        }
        let mut sig: Vec<Vec<u8>> = vec![Vec::with_capacity(n + 1); live.len()];
        let mut label = vec![u8::MAX; n];
        self.components(alive, &mut label);
        for (i, &(a, _)) in live.iter().enumerate() {
            sig[i].push(label[a]);
        }
        for w in 0..n {
            if alive >> w & 1 == 0 {
                continue;
            }
            self.components(alive & !(1 << w), &mut label);
            for (i, &(a, b)) in live.iter().enumerate() {
                let side = if a == w { label[b] } else { label[a] };
                sig[i].push(side);
            }
        }
        let mut order: Vec<usize> = (0..live.len()).collect();
        order.sort_by(|&i, &j| sig[i].cmp(&sig[j]));
        let mut out: Vec<(u64, usize)> = Vec::new();
        for (pos, &i) in order.iter().enumerate() {
            let (a, b) = live[i];
            let mask = 1u64 << a | 1u64 << b;
            if pos > 0 && sig[order[pos - 1]] == sig[i] {
                let last = out.last_mut().unwrap();
                last.0 |= mask;
                last.1 += 1;
            } else {
                out.push((mask, 1));
            }
        }
        out
    }

    fn in_phi(&self, g: &Graph, p: &PClassSpec, d: usize, alive: u64) -> bool {
        let blocks = self.blocks(alive);
        if blocks.is_empty() {
            return true;
        }
        if p.is_degenerate() || d < 2 {
            return false;
        }
        blocks.iter().all(|&(mask, m)| {
            let n = mask.count_ones() as usize;
            if n > d {
                return false;
            }
            match p.accepts_counts(n, m) {
                Some(b) => b,
                None => {
                    let verts: Vec<Vertex> = (0..self.ids.len())
                        .filter(|&i| mask >> i & 1 == 1)
                        .map(|i| self.ids[i])
                        .collect();
                    p.accepts(&g.induced(&verts))
                }
            }
        })
    }
}

/// Lexicographically first minimum solution with at most `max_size`
/// vertices, or `None` if there is none.
pub fn brute_force_min(
    g: &Graph,
    p: &PClassSpec,
    d: usize,
    max_size: usize,
    cap: usize,
) -> Result<Option<Vec<Vertex>>> {
    let n = g.order();
    if n > cap || n > 64 {
        return Err(Error::OracleCap { n, cap });
    }
    let dense = Dense::new(g);
    let full: u64 = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    for size in 0..=max_size.min(n) {
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            let removed = idx.iter().fold(0u64, |m, &i| m | 1 << i);
            if dense.in_phi(g, p, d, full & !removed) {
                return Ok(Some(idx.iter().map(|&i| dense.ids[i]).collect()));
            }
            let mut i = size;
            let advanced = loop {
                if i == 0 {
                    break false;
                }
                i -= 1;
                if idx[i] != i + n - size {
                    break true;
                }
            };
            if !advanced {
                break;
            }
            idx[i] += 1;
            for j in i + 1..size {
                idx[j] = idx[j - 1] + 1;
            }
        }
    }
    Ok(None)
}

/// Exhaustive solver; errors if the graph has more than `cap` vertices.
pub fn brute_force(inst: &Instance, cap: usize) -> Result<Outcome> {
    let s = brute_force_min(&inst.graph, &inst.pclass, inst.d, inst.k, cap)?;
    Ok(Outcome::from_option(s, SolveStats::default()))
}

/// Membership test independent of the block decomposition module.
pub fn oracle_in_phi(g: &Graph, p: &PClassSpec, d: usize) -> bool {
    let dense = Dense::new(g);
    let n = dense.ids.len();
    assert!(n <= 64, "oracle membership needs at most 64 vertices");
    let full: u64 = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    dense.in_phi(g, p, d, full)
}

/// True iff both instances have the same exhaustive verdict.
pub fn kernel_equivalence_check(before: &Instance, after: &Instance, cap: usize) -> Result<bool> {
    Ok(brute_force(before, cap)?.is_yes() == brute_force(after, cap)?.is_yes())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::blocks::block_decomposition;
    use crate::pclass::is_in_phi;

    fn cycle(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    fn diamond_pair() -> Graph {
        Graph::from_edges(
            8,
            &[(0, 1), (0, 2), (1, 2), (1, 3), (2, 3), (4, 5), (4, 6), (5, 6), (5, 7), (6, 7)],
        )
        .unwrap()
    }

    #[test]
    fn examples() {
        let cy = PClassSpec::cycles_and_k2();
        let o = brute_force(&Instance::new(cycle(4), cy.clone(), 4, 0), DEFAULT_CAP).unwrap();
        assert_eq!(o.solution(), Some(&[][..]));
        let o = brute_force(&Instance::new(cycle(4), cy.clone(), 3, 1), DEFAULT_CAP).unwrap();
        assert_eq!(o.solution(), Some(&[0][..]));
        let o = brute_force(&Instance::new(diamond_pair(), cy, 4, 1), DEFAULT_CAP).unwrap();
        assert!(!o.is_yes());
    }

    #[test]
    fn cap_is_enforced() {
        let g = Graph::with_vertices(15);
        let inst = Instance::new(g, PClassSpec::cliques(), 3, 0);
        assert!(matches!(brute_force(&inst, DEFAULT_CAP), Err(Error::OracleCap { .. })));
    }

    #[test]
    fn bitmask_blocks_match_decomposition() {
        let g = Graph::from_edges(
            9,
            &[(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (4, 5), (5, 3), (5, 6), (6, 7), (7, 8), (8, 6), (0, 8)],
        )
        .unwrap();
        let dense = Dense::new(&g);
        let mut ours: Vec<Vec<Vertex>> = dense
            .blocks((1 << 9) - 1)
            .iter()
            .map(|&(m, _)| (0..9).filter(|&i| m >> i & 1 == 1).collect())
            .collect();
        ours.sort();
        let theirs: Vec<Vec<Vertex>> = block_decomposition(&g).nontrivial_blocks().cloned().collect();
        assert_eq!(ours, theirs);
        for p in [PClassSpec::cliques(), PClassSpec::cycles_and_k2(), PClassSpec::all_biconnected()] {
            for d in 2..10 {
                assert_eq!(oracle_in_phi(&g, &p, d), is_in_phi(&g, &p, d));
            }
        }
    }
}
