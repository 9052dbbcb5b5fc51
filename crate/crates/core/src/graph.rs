//! Simple undirected graphs with stable vertex identities.
//!
//! Vertex ids are opaque integers. Deleting a vertex never renumbers the
//! others and a deleted id is never handed out again by [`Graph::add_vertex`],
//! so solutions computed on derived graphs can be reported in the coordinates
//! of the original instance.

use std::collections::VecDeque;

use crate::error::{Error, Result};

/// Opaque vertex identifier.
pub type Vertex = usize;

/// A simple undirected graph (no loops, no parallel edges).
///
/// Adjacency is stored as sorted vectors, so edge membership is a binary
/// search.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Option<Vec<Vertex>>>,
    order: usize,
    size: usize,
}

/// A single structural edit, see [`Graph::mutate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Mutation {
    DeleteVertices(Vec<Vertex>),
    DeleteEdges(Vec<(Vertex, Vertex)>),
    /// Contract `uv` into `u`; parallel edges are merged.
    ContractEdge(Vertex, Vertex),
    AddVertex,
    AddEdge(Vertex, Vertex),
}

impl Graph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Graph on vertices `0..n` without edges.
    pub fn with_vertices(n: usize) -> Self {
        Graph {
            adj: vec![Some(Vec::new()); n],
            order: n,
            size: 0,
        }
    }

    /// Graph on vertices `0..n` with the given edges.
    pub fn from_edges(n: usize, edges: &[(Vertex, Vertex)]) -> Result<Self> {
        let mut g = Graph::with_vertices(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// One past the largest id ever allocated in this graph's lineage.
    pub fn id_bound(&self) -> usize {
        self.adj.len()
    }

    /// Number of vertices.
    pub fn order(&self) -> usize {
        self.order
    }

    /// Number of edges.
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn is_empty(&self) -> bool {
        self.order == 0
    }

    pub fn has_vertex(&self, v: Vertex) -> bool {
        matches!(self.adj.get(v), Some(Some(_)))
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        match self.adj.get(u) {
            Some(Some(nu)) => nu.binary_search(&v).is_ok(),
            _ => false,
        }
    }

    /// Sorted neighbours of `v`; empty if `v` is not present.
    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        match self.adj.get(v) {
            Some(Some(nv)) => nv,
            _ => &[],
        }
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.neighbors(v).len()
    }

    /// Vertices in ascending id order.
    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.adj
            .iter()
            .enumerate()
            .filter_map(|(v, a)| a.as_ref().map(|_| v))
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.vertices().flat_map(move |u| {
            self.neighbors(u)
                .iter()
                .copied()
                .filter(move |&v| v > u)
                .map(move |v| (u, v))
        })
    }

    fn check(&self, v: Vertex) -> Result<()> {
        if self.has_vertex(v) {
            Ok(())
        } else {
            Err(Error::UnknownVertex(v))
        }
    }

    /// Adds a vertex with a fresh id and returns it.
    pub fn add_vertex(&mut self) -> Vertex {
        self.adj.push(Some(Vec::new()));
        self.order += 1;
        self.adj.len() - 1
    }

    /// Adds `uv`. Returns `false` if the edge was already present.
    pub fn add_edge(&mut self, u: Vertex, v: Vertex) -> Result<bool> {
        self.check(u)?;
        self.check(v)?;
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        let nu = self.adj[u].as_mut().unwrap();
        match nu.binary_search(&v) {
            Ok(_) => return Ok(false),
            Err(pos) => nu.insert(pos, v),
        }
        let nv = self.adj[v].as_mut().unwrap();
        let pos = nv.binary_search(&u).unwrap_err();
        nv.insert(pos, u);
        self.size += 1;
        Ok(true)
    }

    /// Removes `uv`. Returns `false` if the edge was absent.
    pub fn remove_edge(&mut self, u: Vertex, v: Vertex) -> Result<bool> {
        self.check(u)?;
        self.check(v)?;
        let nu = self.adj[u].as_mut().unwrap();
        match nu.binary_search(&v) {
            Ok(pos) => {
                nu.remove(pos);
            }
            Err(_) => return Ok(false),
        }
        let nv = self.adj[v].as_mut().unwrap();
        let pos = nv.binary_search(&u).unwrap();
        nv.remove(pos);
        self.size -= 1;
        Ok(true)
    }

    pub fn remove_vertex(&mut self, v: Vertex) -> Result<()> {
        self.check(v)?;
        let nv = self.adj[v].take().unwrap();
        for &u in &nv {
            let nu = self.adj[u].as_mut().unwrap();
            let pos = nu.binary_search(&v).unwrap();
            nu.remove(pos);
        }
        self.size -= nv.len();
        self.order -= 1;
        Ok(())
    }

    pub fn remove_vertices(&mut self, vs: &[Vertex]) -> Result<()> {
        for &v in vs {
            self.remove_vertex(v)?;
        }
        Ok(())
    }

    /// Contracts the edge `uv` into `u`.
    pub fn contract_edge(&mut self, u: Vertex, v: Vertex) -> Result<()> {
        if !self.has_edge(u, v) {
            self.check(u)?;
            self.check(v)?;
            return Err(Error::UnknownEdge(u, v));
        }
        let nv = self.neighbors(v).to_vec();
        self.remove_vertex(v)?;
        for w in nv {
            if w != u {
                self.add_edge(u, w)?;
            }
        }
        Ok(())
    }

    /// Applies `m` to a copy of `self`; `self` is left untouched.
    pub fn mutate(&self, m: &Mutation) -> Result<Graph> {
        let mut g = self.clone();
        match m {
            Mutation::DeleteVertices(vs) => g.remove_vertices(vs)?,
            Mutation::DeleteEdges(es) => {
                for &(u, v) in es {
                    if !g.remove_edge(u, v)? {
                        return Err(Error::UnknownEdge(u, v));
                    }
                }
            }
            Mutation::ContractEdge(u, v) => g.contract_edge(*u, *v)?,
            Mutation::AddVertex => {
                g.add_vertex();
            }
            Mutation::AddEdge(u, v) => {
                g.add_edge(*u, *v)?;
            }
        }
        Ok(g)
    }

    /// `G - X`. Ids not present in the graph are ignored.
    pub fn without(&self, xs: &[Vertex]) -> Graph {
        let mut g = self.clone();
        for &x in xs {
            if g.has_vertex(x) {
                g.remove_vertex(x).unwrap();
            }
        }
        g
    }

    /// `G[X]`, keeping the original ids.
    pub fn induced(&self, xs: &[Vertex]) -> Graph {
        let mut keep = vec![false; self.adj.len()];
        for &x in xs {
            if self.has_vertex(x) {
                keep[x] = true;
            }
        }
        let mut order = 0;
        let mut twice = 0;
        let adj = self
            .adj
            .iter()
            .enumerate()
            .map(|(v, a)| {
                if !keep[v] {
                    return None;
                }
                let nv: Vec<Vertex> = a
                    .as_ref()
                    .unwrap()
                    .iter()
                    .copied()
                    .filter(|&u| keep[u])
                    .collect();
                order += 1;
                twice += nv.len();
                Some(nv)
            })
            .collect();
        Graph {
            adj,
            order,
            size: twice / 2,
        }
    }

    /// Number of edges with both ends in `xs`.
    pub fn count_edges_within(&self, xs: &[Vertex]) -> usize {
        let mut twice = 0;
        for (i, &u) in xs.iter().enumerate() {
            for &v in &xs[i + 1..] {
                if self.has_edge(u, v) {
                    twice += 1;
                }
            }
        }
        twice
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<Vertex>> {
        let mut seen = vec![false; self.adj.len()];
        let mut out = Vec::new();
        let mut queue = VecDeque::new();
        for s in self.vertices() {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            queue.push_back(s);
            let mut comp = Vec::new();
            while let Some(u) = queue.pop_front() {
                comp.push(u);
                for &w in self.neighbors(u) {
                    if !seen[w] {
                        seen[w] = true;
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.order == 0 || self.components().len() == 1
    }

    /// Dense re-indexing: returns the vertex list (ascending) and adjacency
    /// lists over local indices `0..n`.
    pub fn to_dense(&self) -> (Vec<Vertex>, Vec<Vec<usize>>) {
        let verts: Vec<Vertex> = self.vertices().collect();
        let mut index = vec![usize::MAX; self.adj.len()];
        for (i, &v) in verts.iter().enumerate() {
            index[v] = i;
        }
        let adj = verts
            .iter()
            .map(|&v| self.neighbors(v).iter().map(|&u| index[u]).collect())
            .collect();
        (verts, adj)
    }

    /// Copy relabelled to `0..n` in ascending id order, plus the old ids.
    pub fn compacted(&self) -> (Graph, Vec<Vertex>) {
        let (verts, adj) = self.to_dense();
        let size = self.size;
        let g = Graph {
            order: verts.len(),
            adj: adj.into_iter().map(Some).collect(),
            size,
        };
        (g, verts)
    }

    /// `(|V|, |E|)` of the induced subgraph on `xs` without materializing it.
    pub fn induced_counts(&self, xs: &[Vertex]) -> (usize, usize) {
        (xs.len(), self.count_edges_within(xs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> Graph {
        Graph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]).unwrap()
    }

    #[test]
    fn delete_from_triangle_gives_k2() {
        let g = triangle();
        let h = g.mutate(&Mutation::DeleteVertices(vec![2])).unwrap();
        assert_eq!(h.order(), 2);
        assert_eq!(h.size(), 1);
        assert!(h.has_edge(0, 1));
        // original untouched
        assert_eq!(g.size(), 3);
    }

    #[test]
    fn contract_c4_gives_triangle() {
        let c4 = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let h = c4.mutate(&Mutation::ContractEdge(0, 1)).unwrap();
        assert_eq!(h.order(), 3);
        assert_eq!(h.size(), 3);
        assert!(h.has_edge(0, 2) && h.has_edge(2, 3) && h.has_edge(0, 3));
    }

    #[test]
    fn contraction_merges_parallel_edges() {
        let g = triangle();
        let h = g.mutate(&Mutation::ContractEdge(0, 1)).unwrap();
        assert_eq!(h.order(), 2);
        assert_eq!(h.size(), 1);
    }

    #[test]
    fn delete_everything() {
        let g = triangle();
        let h = g.mutate(&Mutation::DeleteVertices(vec![0, 1, 2])).unwrap();
        assert!(h.is_empty());
        assert_eq!(h.size(), 0);
    }

    #[test]
    fn unknown_vertex_is_an_error() {
        let g = triangle();
        assert!(matches!(
            g.mutate(&Mutation::DeleteVertices(vec![7])),
            Err(Error::UnknownVertex(7))
        ));
        assert!(matches!(
            g.mutate(&Mutation::AddEdge(0, 9)),
            Err(Error::UnknownVertex(9))
        ));
        assert!(g.mutate(&Mutation::AddEdge(1, 1)).is_err());
    }

    #[test]
    fn ids_are_not_reused() {
        let mut g = triangle();
        g.remove_vertex(2).unwrap();
        let v = g.add_vertex();
        assert_eq!(v, 3);
        assert!(!g.has_vertex(2));
    }

    #[test]
    fn induced_keeps_ids() {
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap();
        let h = g.induced(&[1, 2, 4]);
        assert_eq!(h.vertices().collect::<Vec<_>>(), vec![1, 2, 4]);
        assert_eq!(h.edges().collect::<Vec<_>>(), vec![(1, 2)]);
    }
}
