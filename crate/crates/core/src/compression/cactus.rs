//! Disjoint compression step for cactus graphs.
//!
//! A vertex outside `S` with a neighbour in `S` is red. A chain is the set
//! of inner vertices, all of degree two in `G`, of a path inside a block of
//! `G - S`; two red vertices joined by such a path are consecutive.

use crate::blocks::BlockDecomposition;
use crate::graph::Vertex;
use crate::pclass::PClassSpec;

use super::{rest_blocks, run_disjoint, CompressionStats, Ctx, DisjointInstance, State, Step};

/// A set `R` avoiding the forbidden vertices with `|R| <= k` such that every
/// block of `G - R` is an edge or a cycle on at most `d` vertices.
pub fn disjoint_cactus(di: &DisjointInstance) -> Option<Vec<Vertex>> {
    disjoint_with_stats(di, &mut CompressionStats::default())
}

pub(crate) fn disjoint_with_stats(di: &DisjointInstance, stats: &mut CompressionStats) -> Option<Vec<Vertex>> {
    run_disjoint(di, &PClassSpec::cycles_and_k2(), rules, stats)
}

struct View<'a> {
    st: &'a State,
    bd: BlockDecomposition,
    comp: Vec<usize>,
}

impl View<'_> {
    fn red(&self, v: Vertex) -> bool {
        self.st.is_red(v)
    }

    /// Component of `G[S]` holding the `S`-neighbours of a red vertex.
    fn comp_of(&self, v: Vertex) -> usize {
        self.comp[self.st.s_nbrs(v)[0]]
    }

    fn s_deg(&self, v: Vertex) -> usize {
        self.st.s_nbrs(v).len()
    }

    fn block_nbrs(&self, b: usize, v: Vertex) -> Vec<Vertex> {
        let block = &self.bd.blocks[b];
        self.st
            .g
            .neighbors(v)
            .iter()
            .copied()
            .filter(|u| block.binary_search(u).is_ok())
            .collect()
    }

    /// Walks inside block `b` from `a` through `first` while the current
    /// vertex is an inner chain vertex. Returns the stopping vertex and the
    /// chain passed.
    fn walk(&self, b: usize, a: Vertex, first: Vertex) -> (Vertex, Vec<Vertex>) {
        let (mut prev, mut cur) = (a, first);
        let mut chain = Vec::new();
        loop {
            if cur == a || self.red(cur) || self.st.g.degree(cur) != 2 || self.bd.is_cut(cur) {
                return (cur, chain);
            }
            let next = self.block_nbrs(b, cur).into_iter().find(|&u| u != prev);
            match next {
                Some(n) => {
                    chain.push(cur);
                    prev = cur;
                    cur = n;
                }
                None => return (cur, chain),
            }
        }
    }

    /// Consecutive red pairs `(v, w, chain)` with `v < w` inside block `b`.
    fn consecutive(&self, b: usize) -> Vec<(Vertex, Vertex, Vec<Vertex>)> {
        let mut out = Vec::new();
        for &a in &self.bd.blocks[b] {
            if !self.red(a) {
                continue;
            }
            for first in self.block_nbrs(b, a) {
                let (end, chain) = self.walk(b, a, first);
                if end != a && a < end && self.red(end) {
                    out.push((a, end, chain));
                }
            }
        }
        out
    }

    fn reds_in(&self, b: usize) -> Vec<Vertex> {
        self.bd.blocks[b].iter().copied().filter(|&v| self.red(v)).collect()
    }

    fn leaves(&self) -> Vec<usize> {
        (0..self.bd.blocks.len())
            .filter(|&b| self.bd.block_degree(b) <= 1 && self.bd.blocks[b].len() >= 2)
            .collect()
    }

    /// The single red vertex of leaf block `b`, provided it is not a cut vertex.
    fn leaf_red(&self, b: usize) -> Option<Vertex> {
        match self.reds_in(b).as_slice() {
            [v] if !self.bd.is_cut(*v) => Some(*v),
            _ => None,
        }
    }
}

fn branch_on(st: &State, name: &'static str, vs: &[Vertex], join: Option<Option<State>>) -> Step {
    let mut seen = Vec::new();
    let mut children = Vec::new();
    for &v in vs {
        if !seen.contains(&v) {
            seen.push(v);
            children.push(Some(st.deleting(&[v])));
        }
    }
    if let Some(j) = join {
        children.push(j);
    }
    Step::Branch(name, children)
}

fn sorted_union(parts: &[&[Vertex]]) -> Vec<Vertex> {
    let mut out: Vec<Vertex> = parts.iter().flat_map(|p| p.iter().copied()).collect();
    out.sort_unstable();
    out.dedup();
    out
}

fn rules(ctx: &mut Ctx, st: &State) -> Option<Step> {
    let outside = st.outside();
    if let Some(&v) = outside.iter().find(|&&v| st.g.degree(v) <= 1) {
        return Some(Step::Reduce("cactus.low-degree", Some(st.removing(&[v]))));
    }
    let reds: Vec<Vertex> = outside.iter().copied().filter(|&v| st.is_red(v)).collect();
    if let Some(&v) = reds.iter().find(|&&v| !st.class_ok(ctx, &[v])) {
        return Some(Step::Reduce("cactus.direct", Some(st.deleting(&[v]))));
    }
    let (comp, _) = st.s_components();
    for &u in &reds {
        let mut cs: Vec<usize> = st.s_nbrs(u).iter().map(|&s| comp[s]).collect();
        cs.sort_unstable();
        cs.dedup();
        if cs.len() >= 2 {
            return Some(Step::Branch(
                "cactus.connect",
                vec![Some(st.deleting(&[u])), st.absorbing(ctx, &[u])],
            ));
        }
    }
    let (rest, bd) = rest_blocks(st);
    let view = View { st, bd, comp };
    let nb = view.bd.blocks.len();
    for b in 0..nb {
        for (v, w, chain) in view.consecutive(b) {
            if view.comp_of(v) != view.comp_of(w) {
                let join = st.absorbing(ctx, &sorted_union(&[&[v, w], &chain]));
                return Some(branch_on(st, "cactus.connect-chain", &[v, w], Some(join)));
            }
        }
    }
    if reds.iter().any(|&v| view.s_deg(v) > 2) {
        ctx.stats.claim_violations += 1;
    }

    if let Some(step) = tier_two(ctx, &view) {
        return Some(step);
    }
    if let Some(step) = tier_three(ctx, &view) {
        return Some(step);
    }
    if let Some(step) = tier_four(ctx, &view) {
        return Some(step);
    }
    if let Some(step) = tier_five(ctx, &view) {
        return Some(step);
    }
    if rest.size() == 0 {
        for (i, &v) in outside.iter().enumerate() {
            for &w in &outside[i + 1..] {
                if !st.class_ok(ctx, &[v, w]) {
                    return Some(branch_on(st, "cactus.final-pair", &[v, w], None));
                }
            }
        }
        if st.class_ok(ctx, &outside) {
            return Some(Step::Reduce("cactus.final-absorb", st.absorbing(ctx, &outside)));
        }
    }
    None
}

fn tier_two(ctx: &mut Ctx, view: &View) -> Option<Step> {
    let st = view.st;
    for b in 0..view.bd.blocks.len() {
        let pairs = view.consecutive(b);
        for (i, p) in pairs.iter().enumerate() {
            for q in &pairs[i + 1..] {
                let ends = [p.0, p.1, q.0, q.1];
                let mut distinct = ends.to_vec();
                distinct.sort_unstable();
                distinct.dedup();
                if distinct.len() == 3 {
                    return Some(branch_on(st, "cactus.three-red", &distinct, None));
                }
            }
        }
    }
    let leaf_edges: Vec<usize> = view
        .leaves()
        .into_iter()
        .filter(|&b| view.bd.blocks[b].len() == 2)
        .collect();
    for &b in &leaf_edges {
        let (x, y) = (view.bd.blocks[b][0], view.bd.blocks[b][1]);
        for (u, v) in [(x, y), (y, x)] {
            let v_ok = view.bd.is_cut(v) || (view.red(v) && view.s_deg(v) == 1);
            if !view.bd.is_cut(u) && view.red(u) && view.s_deg(u) == 1 && v_ok {
                return Some(Step::Reduce("cactus.leaf-edge-absorb", st.absorbing(ctx, &[u])));
            }
        }
    }
    for &b in &leaf_edges {
        let (u, v) = (view.bd.blocks[b][0], view.bd.blocks[b][1]);
        if view.red(u) && view.red(v) && (view.s_deg(u) >= 2 || view.s_deg(v) >= 2) {
            return Some(branch_on(st, "cactus.leaf-edge-branch", &[u, v], None));
        }
    }
    None
}

fn tier_three(ctx: &mut Ctx, view: &View) -> Option<Step> {
    let st = view.st;
    let leaves = view.leaves();
    for &b in &leaves {
        let block = &view.bd.blocks[b];
        let reds = view.reds_in(b);
        if block.len() >= 3 && reds.len() == 2 {
            let mut vs = reds.clone();
            if let Some(&w) = view.bd.block_cuts[b].first() {
                vs.push(w);
            }
            return Some(branch_on(st, "cactus.leaf-two-red", &vs, None));
        }
    }
    for &b in &leaves {
        let block = &view.bd.blocks[b];
        let c_prime: Vec<Vertex> = block.iter().copied().filter(|&v| !view.bd.is_cut(v)).collect();
        let red_prime: Vec<Vertex> = c_prime.iter().copied().filter(|&v| view.red(v)).collect();
        if red_prime.is_empty() {
            return Some(Step::Reduce("cactus.leaf-clean", Some(st.removing(&c_prime))));
        }
        if view.bd.block_cuts[b].is_empty() && red_prime.len() == 1 && c_prime.len() > 1 {
            let drop: Vec<Vertex> = c_prime.iter().copied().filter(|&v| v != red_prime[0]).collect();
            return Some(Step::Reduce("cactus.leaf-trim", Some(st.removing(&drop))));
        }
    }
    for &b in &leaves {
        if view.bd.block_cuts[b].is_empty() {
            continue;
        }
        if let Some(u) = view.leaf_red(b) {
            if view.s_deg(u) == 1 {
                return Some(Step::Reduce("cactus.leaf-red-absorb", st.absorbing(ctx, &[u])));
            }
        }
    }
    None
}

/// Chains of red-free blocks hanging off a leaf block.
fn tier_four(ctx: &mut Ctx, view: &View) -> Option<Step> {
    let st = view.st;
    let bd = &view.bd;
    for b1 in view.leaves() {
        let Some(&c1) = bd.block_cuts[b1].first() else { continue };
        let Some(v) = view.leaf_red(b1) else { continue };
        let mut path = vec![b1];
        let mut c = c1;
        loop {
            if view.red(c) || bd.cut_degree(c) != 2 {
                break;
            }
            let prev = *path.last().unwrap();
            let next = *bd.blocks_of(c).iter().find(|&&x| x != prev).unwrap();
            let hit = view.block_nbrs(next, c).into_iter().find_map(|first| {
                let (end, chain) = view.walk(next, c, first);
                (end != c && view.red(end)).then_some((end, chain))
            });
            if let Some((w, chain)) = hit {
                let join = if view.comp_of(v) == view.comp_of(w) {
                    None
                } else {
                    let mut parts: Vec<&[Vertex]> = path.iter().map(|&b| bd.blocks[b].as_slice()).collect();
                    parts.push(&chain);
                    let wv = [w];
                    parts.push(&wv);
                    Some(st.absorbing(ctx, &sorted_union(&parts)))
                };
                let name = if join.is_some() { "cactus.block-path-join" } else { "cactus.block-path" };
                return Some(branch_on(st, name, &[v, w, c], join));
            }
            if !view.reds_in(next).is_empty() || bd.block_degree(next) != 2 {
                break;
            }
            c = *bd.block_cuts[next].iter().find(|&&x| x != c).unwrap();
            path.push(next);
        }
    }
    None
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Node {
    Block(usize),
    Cut(Vertex),
}

/// Branching at the parent of the deepest leaves of the smoothed block tree.
fn tier_five(ctx: &mut Ctx, view: &View) -> Option<Step> {
    let st = view.st;
    let bd = &view.bd;
    let nbrs = |n: Node| -> Vec<Node> {
        match n {
            Node::Block(b) => bd.block_cuts[b].iter().map(|&c| Node::Cut(c)).collect(),
            Node::Cut(c) => bd.blocks_of(c).iter().map(|&b| Node::Block(b)).collect(),
        }
    };
    let mut seen_cut = vec![false; st.g.id_bound()];
    for &root in &bd.cut_vertices {
        if seen_cut[root] {
            continue;
        }
        // depth-first order with parents; depth counts unsmoothed ancestors
        let mut order: Vec<(Node, Option<Node>, usize)> = Vec::new();
        let mut stack = vec![(Node::Cut(root), None::<Node>, 0usize)];
        while let Some((n, parent, depth)) = stack.pop() {
            if let Node::Cut(c) = n {
                seen_cut[c] = true;
            }
            order.push((n, parent, depth));
            let ns = nbrs(n);
            let smoothed = parent.is_some() && ns.len() == 2;
            let child_depth = depth + usize::from(!smoothed);
            for m in ns.into_iter().rev() {
                if Some(m) != parent {
                    stack.push((m, Some(n), child_depth));
                }
            }
        }
        let parent_of = |n: Node| order.iter().find(|e| e.0 == n).and_then(|e| e.1);
        let is_smoothed = |n: Node| n != Node::Cut(root) && nbrs(n).len() == 2;
        let Some(&(leaf, _, _)) = order
            .iter()
            .filter(|e| e.1.is_some() && nbrs(e.0).len() == 1)
            .max_by_key(|e| (e.2, std::cmp::Reverse(match e.0 {
                Node::Block(b) => b,
                Node::Cut(c) => c,
            })))
        else {
            continue;
        };
        let mut p = parent_of(leaf)?;
        while is_smoothed(p) {
            p = parent_of(p)?;
        }
        // each child of p leads down a smoothed path to a leaf block
        let mut arms: Vec<(Node, usize, Vec<usize>)> = Vec::new();
        for ch in nbrs(p) {
            if Some(ch) == parent_of(p) {
                continue;
            }
            let mut blocks = Vec::new();
            let mut cur = ch;
            let mut prev = p;
            loop {
                if let Node::Block(b) = cur {
                    blocks.push(b);
                }
                let down: Vec<Node> = nbrs(cur).into_iter().filter(|&m| m != prev).collect();
                match down.as_slice() {
                    [] => break,
                    [only] if is_smoothed(cur) => {
                        prev = cur;
                        cur = *only;
                    }
                    _ => {
                        blocks.clear();
                        break;
                    }
                }
            }
            if let Some(&leaf_block) = blocks.last() {
                arms.push((ch, leaf_block, blocks));
            }
        }
        let pick = match p {
            Node::Cut(c) => {
                if arms.len() < 2 {
                    ctx.stats.claim_violations += 1;
                    continue;
                }
                Some((c, c, Vec::new(), 0, 1))
            }
            Node::Block(cb) => {
                let mut found = None;
                'outer: for (i, arm) in arms.iter().enumerate() {
                    let Node::Cut(x) = arm.0 else { continue };
                    for first in view.block_nbrs(cb, x) {
                        let (end, chain) = view.walk(cb, x, first);
                        if let Some(j) = arms.iter().position(|a| a.0 == Node::Cut(end)) {
                            if j != i {
                                found = Some((x, end, chain, i, j));
                                break 'outer;
                            }
                        }
                    }
                }
                found
            }
        };
        let Some((x, y, chain, i, j)) = pick else {
            ctx.stats.claim_violations += 1;
            continue;
        };
        let (Some(v), Some(w)) = (view.leaf_red(arms[i].1), view.leaf_red(arms[j].1)) else {
            ctx.stats.claim_violations += 1;
            continue;
        };
        let join = if view.comp_of(v) == view.comp_of(w) {
            None
        } else {
            let mut parts: Vec<&[Vertex]> = Vec::new();
            for &b in arms[i].2.iter().chain(arms[j].2.iter()) {
                parts.push(&bd.blocks[b]);
            }
            let ends = [v, w, x, y];
            parts.push(&ends);
            parts.push(&chain);
            Some(st.absorbing(ctx, &sorted_union(&parts)))
        };
        let name = if join.is_some() { "cactus.deep-parent-join" } else { "cactus.deep-parent" };
        return Some(branch_on(st, name, &[v, w, x, y], join));
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{structured, Structured};
    use crate::graph::Graph;

    #[test]
    fn diamond_with_path_forbidden() {
        // vertices 1 and 2 have degree three
        let di = DisjointInstance {
            graph: structured(&Structured::Diamond),
            forbidden: vec![0, 1, 2],
            d: 4,
            k: 1,
        };
        assert_eq!(disjoint_cactus(&di), Some(vec![3]));
        let di = DisjointInstance {
            graph: structured(&Structured::Diamond),
            forbidden: vec![1, 0, 3],
            d: 4,
            k: 1,
        };
        assert_eq!(disjoint_cactus(&di), Some(vec![2]));
    }

    #[test]
    fn nothing_outside() {
        let g = structured(&Structured::Cycle(4));
        let di = DisjointInstance {
            graph: g.clone(),
            forbidden: g.vertices().collect(),
            d: 4,
            k: 0,
        };
        assert_eq!(disjoint_cactus(&di), Some(vec![]));
    }

    #[test]
    fn two_c4_sharing_a_vertex() {
        let g = Graph::from_edges(7, &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 4), (4, 5), (5, 6), (6, 0)]).unwrap();
        let di = DisjointInstance {
            graph: g.clone(),
            forbidden: g.vertices().collect(),
            d: 4,
            k: 0,
        };
        assert_eq!(disjoint_cactus(&di), Some(vec![]));
    }
}
