//! Block classes and membership in the target class.

use std::fmt;
use std::sync::Arc;

use rand_core::RngCore;
use rand_xoshiro::SplitMix64;
use rand_core::SeedableRng;

use crate::blocks::block_decomposition;
use crate::graph::{Graph, Vertex};

/// Predicate on biconnected graphs.
pub type Recognizer = Arc<dyn Fn(&Graph) -> bool + Send + Sync>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ClassKind {
    AllBiconnected,
    Cliques,
    CyclesAndK2,
    Custom,
}

/// A block-hereditary class of biconnected graphs.
///
/// For the three named kinds membership is decided from vertex and edge
/// counts alone. A custom class supplies its own recognizer; it is only ever
/// queried on biconnected graphs, and keeping the class block-hereditary is
/// the caller's job (see [`check_block_hereditary`]).
#[derive(Clone)]
pub struct PClassSpec {
    kind: ClassKind,
    recognizer: Option<Recognizer>,
    degenerate: bool,
    name: String,
}

impl fmt::Debug for PClassSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PClassSpec")
            .field("kind", &self.kind)
            .field("name", &self.name)
            .field("degenerate", &self.degenerate)
            .finish()
    }
}

impl PClassSpec {
    pub fn all_biconnected() -> Self {
        Self::named(ClassKind::AllBiconnected, "biconnected")
    }

    pub fn cliques() -> Self {
        Self::named(ClassKind::Cliques, "cliques")
    }

    pub fn cycles_and_k2() -> Self {
        Self::named(ClassKind::CyclesAndK2, "cycles")
    }

    fn named(kind: ClassKind, name: &str) -> Self {
        PClassSpec {
            kind,
            recognizer: None,
            degenerate: false,
            name: name.to_string(),
        }
    }

    /// A custom class. `degenerate` must be true iff the class has no
    /// member with an edge.
    pub fn custom<F>(name: &str, degenerate: bool, recognizer: F) -> Self
    where
        F: Fn(&Graph) -> bool + Send + Sync + 'static,
    {
        PClassSpec {
            kind: ClassKind::Custom,
            recognizer: Some(Arc::new(recognizer)),
            degenerate,
            name: name.to_string(),
        }
    }

    pub fn kind(&self) -> ClassKind {
        self.kind
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn is_degenerate(&self) -> bool {
        self.degenerate
    }

    /// Closed-form test for a biconnected graph with `n` vertices and `m`
    /// edges; `None` for custom classes.
    pub fn accepts_counts(&self, n: usize, m: usize) -> Option<bool> {
        match self.kind {
            ClassKind::AllBiconnected => Some(true),
            ClassKind::Cliques => Some(2 * m == n * n.saturating_sub(1)),
            ClassKind::CyclesAndK2 => Some(n == 2 || m == n),
            ClassKind::Custom => None,
        }
    }

    /// Membership of the biconnected graph `g`.
    pub fn accepts(&self, g: &Graph) -> bool {
        match self.accepts_counts(g.order(), g.size()) {
            Some(b) => b,
            None => (self.recognizer.as_ref().unwrap())(g),
        }
    }

    /// Membership of `g[block]`, where `block` induces a biconnected graph.
    pub fn accepts_block(&self, g: &Graph, block: &[Vertex]) -> bool {
        if self.kind == ClassKind::Custom {
            return self.accepts(&g.induced(block));
        }
        let m = g.count_edges_within(block);
        self.accepts_counts(block.len(), m).unwrap()
    }
}

/// True iff every block of `g` with an edge has at most `d` vertices and
/// belongs to `p`.
pub fn is_in_phi(g: &Graph, p: &PClassSpec, d: usize) -> bool {
    first_bad_block(g, p, d).is_none()
}

/// Some block of `g` violating the bound or the class, if any.
pub fn first_bad_block(g: &Graph, p: &PClassSpec, d: usize) -> Option<Vec<Vertex>> {
    if g.size() == 0 {
        return None;
    }
    if p.is_degenerate() || d < 2 {
        let (u, v) = g.edges().next().unwrap();
        return Some(vec![u, v]);
    }
    let bd = block_decomposition(g);
    bd.blocks
        .into_iter()
        .find(|b| b.len() >= 2 && (b.len() > d || !p.accepts_block(g, b)))
}

/// Sampling check that `p` looks block-hereditary on the given accepted
/// graphs: random vertex deletions must leave every block accepted.
/// Returns a counterexample block if one is found.
pub fn check_block_hereditary(
    p: &PClassSpec,
    samples: &[Graph],
    rounds: usize,
    seed: u64,
) -> Option<Graph> {
    let mut rng = SplitMix64::seed_from_u64(seed);
    for g in samples {
        if !p.accepts(g) {
            continue;
        }
        for _ in 0..rounds {
            let verts: Vec<Vertex> = g.vertices().collect();
            let del: Vec<Vertex> = verts
                .iter()
                .copied()
                .filter(|_| rng.next_u64() % 3 == 0)
                .collect();
            let h = g.without(&del);
            let bd = block_decomposition(&h);
            for b in bd.nontrivial_blocks() {
                let sub = h.induced(b);
                if !p.accepts(&sub) {
                    return Some(sub);
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    fn diamond() -> Graph {
        Graph::from_edges(4, &[(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)]).unwrap()
    }

    #[test]
    fn c4_against_cycles() {
        let p = PClassSpec::cycles_and_k2();
        assert!(is_in_phi(&cycle(4), &p, 4));
        assert!(!is_in_phi(&cycle(4), &p, 3));
    }

    #[test]
    fn diamond_is_not_a_clique_block() {
        assert!(!is_in_phi(&diamond(), &PClassSpec::cliques(), 4));
        assert!(is_in_phi(&diamond(), &PClassSpec::all_biconnected(), 4));
    }

    #[test]
    fn isolated_vertices_are_fine() {
        let g = Graph::with_vertices(5);
        assert!(is_in_phi(&g, &PClassSpec::cliques(), 1));
    }

    #[test]
    fn d_one_means_edgeless() {
        let g = Graph::from_edges(2, &[(0, 1)]).unwrap();
        assert!(!is_in_phi(&g, &PClassSpec::all_biconnected(), 1));
        assert!(is_in_phi(&g, &PClassSpec::all_biconnected(), 2));
    }

    #[test]
    fn custom_matches_named() {
        let custom = PClassSpec::custom("complete", false, |g: &Graph| {
            2 * g.size() == g.order() * (g.order() - 1)
        });
        for g in [diamond(), cycle(3), cycle(5)] {
            assert_eq!(
                is_in_phi(&g, &custom, 5),
                is_in_phi(&g, &PClassSpec::cliques(), 5)
            );
        }
    }

    #[test]
    fn named_classes_look_hereditary() {
        let samples = vec![cycle(5), diamond(), Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap()];
        for p in [
            PClassSpec::all_biconnected(),
            PClassSpec::cliques(),
            PClassSpec::cycles_and_k2(),
        ] {
            assert!(check_block_hereditary(&p, &samples, 50, 7).is_none());
        }
    }

    #[test]
    fn sampler_catches_non_hereditary_class() {
        // "exactly four vertices" is not closed under taking blocks of subgraphs
        let p = PClassSpec::custom("four", false, |g: &Graph| g.order() == 4);
        let k4 = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        assert!(check_block_hereditary(&p, &[k4], 50, 1).is_some());
    }
}
