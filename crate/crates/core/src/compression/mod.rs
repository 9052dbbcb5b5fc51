//! Iterative compression for the complete-block and cactus targets.
//!
//! Vertices are inserted in ascending id order while a minimum solution of
//! the induced prefix is maintained. When the new vertex breaks the current
//! solution `S`, the solution `S + v` is compressed: every intersection `I`
//! of the old and new solution is guessed, and the disjoint variant asks for
//! a set `R` avoiding `S - I` with `G - I - R` in the target class.
//!
//! The disjoint solvers are rule systems over a state `(G, S, R, k)` with
//! measure `k + cc(S)`. Every rule application is instrumented: reductions
//! must shrink `G - S` and branchings must lower the measure in each branch.

mod cactus;
mod complete_block;

use std::collections::BTreeMap;
use std::collections::VecDeque;

use crate::blocks::block_decomposition;
use crate::branch::{Outcome, SolveStats};
use crate::graph::{Graph, Vertex};
use crate::pclass::{first_bad_block, is_in_phi, PClassSpec};

pub use cactus::disjoint_cactus;
pub use complete_block::disjoint_complete_block;

/// Counters collected over one compression run.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CompressionStats {
    /// Applications per rule name.
    pub rules: BTreeMap<&'static str, u64>,
    /// Reductions that failed to shrink `G - S`.
    pub reduction_violations: u64,
    /// Branches that failed to lower the measure.
    pub branch_violations: u64,
    /// Structural claims found false at a tier boundary.
    pub claim_violations: u64,
    /// Branchings on a bad block taken because no rule applied.
    pub fallback_branches: u64,
    pub disjoint_calls: u64,
}

impl CompressionStats {
    pub fn violations(&self) -> u64 {
        self.reduction_violations + self.branch_violations
    }

    pub fn rule_applications(&self) -> u64 {
        self.rules.values().sum()
    }
}

/// Input of the disjoint problem.
#[derive(Clone, Debug)]
pub struct DisjointInstance {
    pub graph: Graph,
    /// Vertices that may not be deleted.
    pub forbidden: Vec<Vertex>,
    pub d: usize,
    pub k: usize,
}

/// Working state of a disjoint solver.
#[derive(Clone, Debug)]
pub(crate) struct State {
    pub g: Graph,
    pub in_s: Vec<bool>,
    pub r: Vec<Vertex>,
    pub k: isize,
}

pub(crate) enum Step {
    Reduce(&'static str, Option<State>),
    Branch(&'static str, Vec<Option<State>>),
}

pub(crate) struct Ctx<'a> {
    pub p: &'a PClassSpec,
    pub d: usize,
    pub stats: &'a mut CompressionStats,
}

impl State {
    fn new(di: &DisjointInstance) -> Self {
        let mut in_s = vec![false; di.graph.id_bound()];
        for &v in &di.forbidden {
            if di.graph.has_vertex(v) {
                in_s[v] = true;
            }
        }
        State {
            g: di.graph.clone(),
            in_s,
            r: Vec::new(),
            k: di.k as isize,
        }
    }

    pub fn is_s(&self, v: Vertex) -> bool {
        self.in_s[v]
    }

    pub fn outside(&self) -> Vec<Vertex> {
        self.g.vertices().filter(|&v| !self.in_s[v]).collect()
    }

    pub fn s_vertices(&self) -> Vec<Vertex> {
        self.g.vertices().filter(|&v| self.in_s[v]).collect()
    }

    pub fn s_nbrs(&self, v: Vertex) -> Vec<Vertex> {
        self.g.neighbors(v).iter().copied().filter(|&u| self.in_s[u]).collect()
    }

    /// A vertex outside `S` with a neighbour in `S`.
    pub fn is_red(&self, v: Vertex) -> bool {
        !self.in_s[v] && self.g.neighbors(v).iter().any(|&u| self.in_s[u])
    }

    /// `G - S`.
    pub fn rest(&self) -> Graph {
        self.g.without(&self.s_vertices())
    }

    /// Component label of every vertex of `G[S]` (usize::MAX elsewhere) and
    /// the number of components.
    pub fn s_components(&self) -> (Vec<usize>, usize) {
        let mut label = vec![usize::MAX; self.g.id_bound()];
        let mut count = 0;
        for s in self.s_vertices() {
            if label[s] != usize::MAX {
                continue;
            }
            label[s] = count;
            let mut queue = VecDeque::from([s]);
            while let Some(a) = queue.pop_front() {
                for &b in self.g.neighbors(a) {
                    if self.in_s[b] && label[b] == usize::MAX {
                        label[b] = count;
                        queue.push_back(b);
                    }
                }
            }
            count += 1;
        }
        (label, count)
    }

    pub fn measure(&self) -> isize {
        self.k + self.s_components().1 as isize
    }

    pub fn size_outside(&self) -> usize {
        self.g.vertices().filter(|&v| !self.in_s[v]).count()
    }

    /// Whether `G[S + extra]` lies in the target class.
    pub fn class_ok(&self, ctx: &Ctx, extra: &[Vertex]) -> bool {
        let mut verts = self.s_vertices();
        verts.extend_from_slice(extra);
        is_in_phi(&self.g.induced(&verts), ctx.p, ctx.d)
    }

    pub fn deleting(&self, vs: &[Vertex]) -> State {
        let mut st = self.clone();
        for &v in vs {
            st.g.remove_vertex(v).unwrap();
            st.r.push(v);
            st.k -= 1;
        }
        st
    }

    pub fn removing(&self, vs: &[Vertex]) -> State {
        let mut st = self.clone();
        st.g.remove_vertices(vs).unwrap();
        st
    }

    /// Moves `vs` into `S`; `None` if `G[S]` leaves the class.
    pub fn absorbing(&self, ctx: &Ctx, vs: &[Vertex]) -> Option<State> {
        if !self.class_ok(ctx, vs) {
            return None;
        }
        let mut st = self.clone();
        for &v in vs {
            st.in_s[v] = true;
        }
        Some(st)
    }
}

type Rules = fn(&mut Ctx, &State) -> Option<Step>;

fn run(ctx: &mut Ctx, mut st: State, rules: Rules) -> Option<Vec<Vertex>> {
    loop {
        if st.k < 0 {
            return None;
        }
        if st.size_outside() == 0 {
            debug_assert!(is_in_phi(&st.g, ctx.p, ctx.d));
            return Some(st.r);
        }
        match rules(ctx, &st) {
            Some(Step::Reduce(name, next)) => {
                *ctx.stats.rules.entry(name).or_default() += 1;
                let next = next?;
                if next.size_outside() >= st.size_outside() {
                    ctx.stats.reduction_violations += 1;
                }
                st = next;
            }
            Some(Step::Branch(name, children)) => {
                *ctx.stats.rules.entry(name).or_default() += 1;
                let mu = st.measure();
                for child in children.into_iter().flatten() {
                    if child.measure() >= mu {
                        ctx.stats.branch_violations += 1;
                    }
                    if let Some(r) = run(ctx, child, rules) {
                        return Some(r);
                    }
                }
                return None;
            }
            None => return fallback(ctx, st, rules),
        }
    }
}

/// Used when no rule applies: either the whole graph is already in the
/// class, or some vertex outside `S` of a bad block must be deleted.
fn fallback(ctx: &mut Ctx, st: State, rules: Rules) -> Option<Vec<Vertex>> {
    match first_bad_block(&st.g, ctx.p, ctx.d) {
        None => Some(st.r),
        Some(block) => {
            ctx.stats.fallback_branches += 1;
            for v in block.into_iter().filter(|&v| !st.is_s(v)) {
                if let Some(r) = run(ctx, st.deleting(&[v]), rules) {
                    return Some(r);
                }
            }
            None
        }
    }
}

pub(crate) fn run_disjoint(
    di: &DisjointInstance,
    p: &PClassSpec,
    rules: Rules,
    stats: &mut CompressionStats,
) -> Option<Vec<Vertex>> {
    stats.disjoint_calls += 1;
    let st = State::new(di);
    let mut ctx = Ctx { p, d: di.d, stats };
    if !st.class_ok(&ctx, &[]) {
        return None;
    }
    let mut r = run(&mut ctx, st, rules)?;
    r.sort_unstable();
    Some(r)
}

/// The two leaf-block flavours of the disjoint problem.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Target {
    CompleteBlock,
    Cactus,
}

impl Target {
    pub fn class(self) -> PClassSpec {
        match self {
            Target::CompleteBlock => PClassSpec::cliques(),
            Target::Cactus => PClassSpec::cycles_and_k2(),
        }
    }

    fn disjoint(self, di: &DisjointInstance, stats: &mut CompressionStats) -> Option<Vec<Vertex>> {
        match self {
            Target::CompleteBlock => complete_block::disjoint_with_stats(di, stats),
            Target::Cactus => cactus::disjoint_with_stats(di, stats),
        }
    }
}

/// Solution of size `|s| - 1` for `g`, given the solution `s`.
fn compress(
    g: &Graph,
    s: &[Vertex],
    d: usize,
    target: Target,
    stats: &mut CompressionStats,
) -> Option<Vec<Vertex>> {
    let p = target.class();
    let kk = s.len() - 1;
    let n = s.len();
    let mut masks: Vec<u32> = (0..1u32 << n)
        .filter(|m| m.count_ones() as usize <= kk)
        .collect();
    masks.sort_by_key(|m| (std::cmp::Reverse(m.count_ones()), *m));
    for mask in masks {
        let inter: Vec<Vertex> = (0..n).filter(|&i| mask >> i & 1 == 1).map(|i| s[i]).collect();
        let keep: Vec<Vertex> = (0..n).filter(|&i| mask >> i & 1 == 0).map(|i| s[i]).collect();
        if !is_in_phi(&g.induced(&keep), &p, d) {
            continue;
        }
        let di = DisjointInstance {
            graph: g.without(&inter),
            forbidden: keep,
            d,
            k: kk - inter.len(),
        };
        if let Some(r) = target.disjoint(&di, stats) {
            let mut out = inter;
            out.extend(r);
            out.sort_unstable();
            debug_assert!(out.len() <= kk);
            debug_assert!(is_in_phi(&g.without(&out), &p, d));
            return Some(out);
        }
    }
    None
}

/// Minimum solution of size at most `k` for the given target, by iterative
/// compression, together with the run's counters.
pub fn solve_with_stats(g: &Graph, d: usize, k: usize, target: Target) -> (Outcome, CompressionStats) {
    let mut stats = CompressionStats::default();
    let p = target.class();
    if target == Target::Cactus && d < 3 {
        let inst = crate::branch::Instance::new(g.clone(), p, d, k);
        return (crate::branch::solve(&inst), stats);
    }
    let mut s: Vec<Vertex> = Vec::new();
    let mut prefix: Vec<Vertex> = Vec::new();
    for v in g.vertices() {
        prefix.push(v);
        let gi = g.induced(&prefix);
        if is_in_phi(&gi.without(&s), &p, d) {
            continue;
        }
        let mut grown = s.clone();
        grown.push(v);
        s = match compress(&gi, &grown, d, target, &mut stats) {
            Some(smaller) => smaller,
            None => grown,
        };
        if s.len() > k {
            return (Outcome::Infeasible(SolveStats::default()), stats);
        }
    }
    s.sort_unstable();
    let st = SolveStats {
        nodes: stats.rule_applications(),
        leaves: stats.disjoint_calls,
    };
    (Outcome::from_option(Some(s), st), stats)
}

/// Bounded complete-block deletion: every block must be a clique on at most
/// `d` vertices.
pub fn solve_complete_block(g: &Graph, d: usize, k: usize) -> Outcome {
    solve_with_stats(g, d, k, Target::CompleteBlock).0
}

/// Bounded cactus deletion: every block must be an edge or a cycle on at
/// most `d` vertices. For `d < 3` no cycle is allowed and the problem is
/// solved as feedback vertex set by the branching solver.
pub fn solve_cactus(g: &Graph, d: usize, k: usize) -> Outcome {
    solve_with_stats(g, d, k, Target::Cactus).0
}

/// `G - S` with its block decomposition.
pub(crate) fn rest_blocks(st: &State) -> (Graph, crate::blocks::BlockDecomposition) {
    let rest = st.rest();
    let bd = block_decomposition(&rest);
    (rest, bd)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{structured, Structured};

    #[test]
    fn complete_block_examples() {
        let tri = structured(&Structured::Cycle(3));
        assert_eq!(solve_complete_block(&tri, 3, 0).solution(), Some(&[][..]));
        let k4 = structured(&Structured::Clique(4));
        assert_eq!(solve_complete_block(&k4, 3, 1).solution().map(|s| s.len()), Some(1));
        let dia = structured(&Structured::Diamond);
        assert_eq!(solve_complete_block(&dia, 4, 1).solution().map(|s| s.len()), Some(1));
        assert!(!solve_complete_block(&dia, 4, 0).is_yes());
    }

    #[test]
    fn cactus_examples() {
        let c5 = structured(&Structured::Cycle(5));
        assert_eq!(solve_cactus(&c5, 5, 0).solution(), Some(&[][..]));
        assert_eq!(solve_cactus(&c5, 4, 1).solution().map(|s| s.len()), Some(1));
        let dia = structured(&Structured::Diamond);
        assert_eq!(solve_cactus(&dia, 4, 1).solution().map(|s| s.len()), Some(1));
    }
}
