//! Blocks, cut vertices and the block tree.

use crate::graph::{Graph, Vertex};

/// Blocks and cut vertices of a graph together with its block tree.
///
/// Every edge lies in exactly one block. Isolated vertices form blocks of
/// their own so that each vertex belongs to at least one block.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BlockDecomposition {
    /// Sorted vertex sets, one per block.
    pub blocks: Vec<Vec<Vertex>>,
    /// Sorted list of cut vertices.
    pub cut_vertices: Vec<Vertex>,
    /// For each block, the cut vertices it contains (its block-tree neighbours).
    pub block_cuts: Vec<Vec<Vertex>>,
    membership: Vec<Vec<usize>>,
}

impl BlockDecomposition {
    /// Indices of the blocks containing `v`.
    pub fn blocks_of(&self, v: Vertex) -> &[usize] {
        self.membership.get(v).map(|b| b.as_slice()).unwrap_or(&[])
    }

    pub fn is_cut(&self, v: Vertex) -> bool {
        self.blocks_of(v).len() >= 2
    }

    /// Degree of block `b` in the block tree.
    pub fn block_degree(&self, b: usize) -> usize {
        self.block_cuts[b].len()
    }

    /// Degree of cut vertex `c` in the block tree.
    pub fn cut_degree(&self, c: Vertex) -> usize {
        self.blocks_of(c).len()
    }

    /// Blocks with at least one edge.
    pub fn nontrivial_blocks(&self) -> impl Iterator<Item = &Vec<Vertex>> {
        self.blocks.iter().filter(|b| b.len() >= 2)
    }
}

/// Computes the blocks of `g` with the Hopcroft–Tarjan lowpoint DFS.
pub fn block_decomposition(g: &Graph) -> BlockDecomposition {
    let bound = g.id_bound();
    let mut disc = vec![0usize; bound];
    let mut low = vec![0usize; bound];
    let mut time = 0usize;
    let mut blocks: Vec<Vec<Vertex>> = Vec::new();
    let mut edge_stack: Vec<(Vertex, Vertex)> = Vec::new();
    // (vertex, parent, next neighbour index)
    let mut frames: Vec<(Vertex, Vertex, usize)> = Vec::new();

    for root in g.vertices() {
        if disc[root] != 0 {
            continue;
        }
        if g.degree(root) == 0 {
            time += 1;
            disc[root] = time;
            blocks.push(vec![root]);
            continue;
        }
        time += 1;
        disc[root] = time;
        low[root] = time;
        frames.push((root, usize::MAX, 0));
        while let Some(frame) = frames.last_mut() {
            let (v, parent, idx) = *frame;
            let nbrs = g.neighbors(v);
            if idx < nbrs.len() {
                frame.2 += 1;
                let w = nbrs[idx];
                if w == parent {
                    continue;
                }
                if disc[w] == 0 {
                    edge_stack.push((v, w));
                    time += 1;
                    disc[w] = time;
                    low[w] = time;
                    frames.push((w, v, 0));
                } else if disc[w] < disc[v] {
                    edge_stack.push((v, w));
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                frames.pop();
                if let Some(&(p, _, _)) = frames.last() {
                    low[p] = low[p].min(low[v]);
                    if low[v] >= disc[p] {
                        let mut block = Vec::new();
                        while let Some((a, b)) = edge_stack.pop() {
                            block.push(a);
                            block.push(b);
                            if (a, b) == (p, v) {
                                break;
                            }
                        }
                        block.sort_unstable();
                        block.dedup();
                        blocks.push(block);
                    }
                }
            }
        }
    }

    blocks.sort();
    let mut membership = vec![Vec::new(); bound];
    for (i, b) in blocks.iter().enumerate() {
        for &v in b {
            membership[v].push(i);
        }
    }
    let cut_vertices: Vec<Vertex> = (0..bound).filter(|&v| membership[v].len() >= 2).collect();
    let block_cuts = blocks
        .iter()
        .map(|b| {
            b.iter()
                .copied()
                .filter(|&v| membership[v].len() >= 2)
                .collect()
        })
        .collect();
    BlockDecomposition {
        blocks,
        cut_vertices,
        block_cuts,
        membership,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle_is_one_block() {
        let g = Graph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        let bd = block_decomposition(&g);
        assert_eq!(bd.blocks, vec![vec![0, 1, 2]]);
        assert!(bd.cut_vertices.is_empty());
    }

    #[test]
    fn path_has_edge_blocks() {
        let g = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let bd = block_decomposition(&g);
        assert_eq!(bd.blocks, vec![vec![0, 1], vec![1, 2]]);
        assert_eq!(bd.cut_vertices, vec![1]);
        assert_eq!(bd.block_cuts, vec![vec![1], vec![1]]);
    }

    #[test]
    fn bowtie() {
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)]).unwrap();
        let bd = block_decomposition(&g);
        assert_eq!(bd.blocks, vec![vec![0, 1, 2], vec![2, 3, 4]]);
        assert_eq!(bd.cut_vertices, vec![2]);
        assert_eq!(bd.cut_degree(2), 2);
    }

    #[test]
    fn isolated_and_empty() {
        assert!(block_decomposition(&Graph::new()).blocks.is_empty());
        let g = Graph::with_vertices(2);
        assert_eq!(block_decomposition(&g).blocks, vec![vec![0], vec![1]]);
    }

    #[test]
    fn sparse_ids_after_deletion() {
        let g = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let h = g.without(&[1]);
        let bd = block_decomposition(&h);
        assert_eq!(bd.blocks, vec![vec![0, 3], vec![2, 3]]);
        assert_eq!(bd.cut_vertices, vec![3]);
    }
}
