//! Deterministic instance generators.

use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::SplitMix64;

use crate::branch::Instance;
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use crate::pclass::PClassSpec;

#[derive(Clone, Debug, PartialEq)]
pub enum Structured {
    Path(usize),
    Cycle(usize),
    Clique(usize),
    Diamond,
    Bowtie,
    /// `count` cycles of length `len` glued in a row, consecutive ones
    /// sharing one vertex. A length of 2 gives a path.
    BlockChain { count: usize, len: usize },
}

#[derive(Clone, Debug, PartialEq)]
pub enum Family {
    /// `G(n, p)`: each pair is an edge independently with probability `p`.
    Random { n: usize, p: f64 },
    /// Random `k x k` grid graph with independent columns.
    KxkGrid { k: usize, p: f64 },
    Structured(Structured),
}

#[derive(Clone, Debug, PartialEq)]
pub struct GeneratorSpec {
    pub family: Family,
    pub seed: u64,
}

/// Uniform double in `[0, 1)` from the top 53 bits.
pub fn unit(rng: &mut SplitMix64) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

pub fn random_graph(n: usize, p: f64, seed: u64) -> Graph {
    let mut rng = SplitMix64::seed_from_u64(seed);
    let mut g = Graph::with_vertices(n);
    for u in 0..n {
        for v in u + 1..n {
            if unit(&mut rng) < p {
                g.add_edge(u, v).unwrap();
            }
        }
    }
    g
}

/// Random graph on a `k x k` grid of vertices where vertex `v` sits in
/// column `v / k`; only vertices of different columns may be adjacent.
pub fn random_kxk_grid(k: usize, p: f64, seed: u64) -> Graph {
    let mut rng = SplitMix64::seed_from_u64(seed);
    let mut g = Graph::with_vertices(k * k);
    for u in 0..k * k {
        for v in u + 1..k * k {
            if u / k != v / k && unit(&mut rng) < p {
                g.add_edge(u, v).unwrap();
            }
        }
    }
    g
}

pub fn structured(s: &Structured) -> Graph {
    match *s {
        Structured::Path(n) => {
            let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
            Graph::from_edges(n, &edges).unwrap()
        }
        Structured::Cycle(n) => {
            let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
            Graph::from_edges(n, &edges).unwrap()
        }
        Structured::Clique(n) => {
            let edges: Vec<_> = (0..n)
                .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
                .collect();
            Graph::from_edges(n, &edges).unwrap()
        }
        Structured::Diamond => {
            Graph::from_edges(4, &[(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)]).unwrap()
        }
        Structured::Bowtie => {
            Graph::from_edges(5, &[(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)]).unwrap()
        }
        Structured::BlockChain { count, len } => {
            let len = len.max(2);
            let mut g = Graph::with_vertices(1);
            let mut anchor = 0;
            for _ in 0..count {
                let mut ring = vec![anchor];
                for _ in 1..len {
                    ring.push(g.add_vertex());
                }
                for w in ring.windows(2) {
                    g.add_edge(w[0], w[1]).unwrap();
                }
                if len >= 3 {
                    g.add_edge(ring[len - 1], anchor).unwrap();
                }
                anchor = ring[len / 2];
            }
            g
        }
    }
}

pub fn generate(spec: &GeneratorSpec) -> Graph {
    match &spec.family {
        Family::Random { n, p } => random_graph(*n, *p, spec.seed),
        Family::KxkGrid { k, p } => random_kxk_grid(*k, *p, spec.seed),
        Family::Structured(s) => structured(s),
    }
}

/// Vertex-id layout of the split graph built by [`gen_kxk_reduction`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KxkLayout {
    /// Clique side: grid vertices followed by the first copies of the edges.
    pub q: Vec<Vertex>,
    /// Independent side: the second copies of the edges.
    pub i: Vec<Vertex>,
}

/// Split graph whose solutions with `k` deletions correspond to `k`-cliques
/// of the grid picking one vertex per column.
///
/// With `m` grid edges, vertices `0..k^2` are the grid vertices,
/// `k^2 + j` is the first copy of edge `j` and `k^2 + m + j` its second copy.
/// The clique side holds the grid vertices and first copies. Each second
/// copy is joined to both endpoints of its edge and to its first copy.
pub fn gen_kxk_reduction(grid: &Graph, k: usize) -> Result<(Instance, KxkLayout)> {
    let n = k * k;
    if k == 0 || grid.order() != n || grid.id_bound() != n {
        return Err(Error::InvalidArgument(format!(
            "grid must have exactly {n} vertices with ids 0..{n}"
        )));
    }
    let edges: Vec<(Vertex, Vertex)> = grid.edges().collect();
    if let Some(&(u, v)) = edges.iter().find(|&&(u, v)| u / k == v / k) {
        return Err(Error::InvalidArgument(format!(
            "edge {u}-{v} lies inside column {}",
            u / k
        )));
    }
    let m = edges.len();
    let mut g = Graph::with_vertices(n + 2 * m);
    let q: Vec<Vertex> = (0..n + m).collect();
    for (a, &u) in q.iter().enumerate() {
        for &v in &q[a + 1..] {
            g.add_edge(u, v).unwrap();
        }
    }
    for (j, &(u, v)) in edges.iter().enumerate() {
        let e2 = n + m + j;
        g.add_edge(u, e2).unwrap();
        g.add_edge(v, e2).unwrap();
        g.add_edge(n + j, e2).unwrap();
    }
    let d = (n + 2 * m).saturating_sub(k + k * (k - 1) / 2);
    let layout = KxkLayout {
        q,
        i: (n + m..n + 2 * m).collect(),
    };
    Ok((Instance::new(g, PClassSpec::all_biconnected(), d, k), layout))
}
