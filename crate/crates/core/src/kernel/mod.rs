//! Polynomial kernel and approximation.
//!
//! [`kernelize`] applies seven reduction rules until none fires and returns
//! an equivalent instance together with a trace that maps solutions of the
//! reduced instance back to the input.

mod adtree;
mod approx;
mod expansion;
mod rules;

use std::collections::BTreeSet;
use std::fmt;

pub use adtree::{check_ad_result, find_ad_trees, separator_bound, ADTreeResult, AdTree};
pub use approx::{approximate, approximate_with_bound, Approximation};
pub use expansion::{check_expansion, expansion, ExpansionResult};

use crate::branch::{Instance, Outcome, SolveStats};
use crate::graph::Vertex;

use rules::Work;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RuleId {
    /// The approximate solution is too large for the budget.
    Approx,
    /// The reduced instance is too large to be a yes-instance.
    TooLarge,
    Component,
    CutVertex,
    Bypass,
    Sunflower1,
    DisjointObstructions,
    Sunflower2,
    LargeDegree,
}

impl RuleId {
    /// The seven reduction rules in priority order.
    pub const RULES: [RuleId; 7] = [
        RuleId::Component,
        RuleId::CutVertex,
        RuleId::Bypass,
        RuleId::Sunflower1,
        RuleId::DisjointObstructions,
        RuleId::Sunflower2,
        RuleId::LargeDegree,
    ];

    pub fn number(self) -> Option<usize> {
        RuleId::RULES.iter().position(|&r| r == self).map(|i| i + 1)
    }

    pub fn from_number(n: usize) -> Option<RuleId> {
        n.checked_sub(1).and_then(|i| RuleId::RULES.get(i).copied())
    }
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RuleId::Approx => write!(f, "approx"),
            RuleId::TooLarge => write!(f, "size"),
            r => write!(f, "{}", r.number().unwrap()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceStep {
    pub rule: RuleId,
    pub vertices: Vec<Vertex>,
    /// Number of vertices after the step.
    pub size: usize,
    /// Fresh vertices introduced by the step.
    pub synthetic: Vec<Vertex>,
}

/// How a solution of the graph after a step becomes one of the graph before.
#[derive(Clone, Debug, PartialEq, Eq)]
enum Lift {
    Keep,
    Add(Vertex),
    /// A hit on the chain interior is replaced by its first cut vertex.
    Bypass { v1: Vertex, interior: Vec<Vertex> },
    /// Synthetic path vertices are replaced by the hub `v`.
    Expansion { v: Vertex, paths: Vec<(Vertex, Vec<Vertex>)> },
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct KernelTrace {
    pub steps: Vec<TraceStep>,
    lifts: Vec<Lift>,
}

impl KernelTrace {
    /// One `RULE <id> verts=<list> size=<n>` line per step. Steps that add
    /// vertices append `synthetic=<list>`.
    pub fn to_log(&self) -> String {
        let list = |vs: &[Vertex]| vs.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",");
        let mut out = String::new();
        for s in &self.steps {
            out.push_str(&format!("RULE {} verts={} size={}", s.rule, list(&s.vertices), s.size));
            if !s.synthetic.is_empty() {
                out.push_str(&format!(" synthetic={}", list(&s.synthetic)));
            }
            out.push('\n');
        }
        out
    }

    /// All vertices introduced by the kernel.
    pub fn synthetic(&self) -> BTreeSet<Vertex> {
        self.steps.iter().flat_map(|s| s.synthetic.iter().copied()).collect()
    }

    /// Number of applications of each rule.
    pub fn rule_counts(&self) -> Vec<(RuleId, usize)> {
        let mut out: Vec<(RuleId, usize)> = Vec::new();
        for s in &self.steps {
            match out.iter_mut().find(|(r, _)| *r == s.rule) {
                Some((_, c)) => *c += 1,
                None => out.push((s.rule, 1)),
            }
        }
        out.sort();
        out
    }

    /// Maps a solution of the reduced instance to one of the input instance
    /// of no larger size.
    pub fn lift(&self, solution: &[Vertex]) -> Vec<Vertex> {
        let mut s: BTreeSet<Vertex> = solution.iter().copied().collect();
        for lift in self.lifts.iter().rev() {
            match lift {
                Lift::Keep => {}
                Lift::Add(v) => {
                    s.insert(*v);
                }
                Lift::Bypass { v1, interior } => {
                    if interior.iter().any(|x| s.contains(x)) {
                        for x in interior {
                            s.remove(x);
                        }
                        s.insert(*v1);
                    }
                }
                Lift::Expansion { v, paths } => {
                    for (x, rs) in paths {
                        let hit = rs.iter().fold(false, |h, r| s.remove(r) | h);
                        if hit && !s.contains(v) && !s.contains(x) {
                            s.insert(*v);
                        }
                    }
                }
            }
        }
        s.into_iter().collect()
    }
}

#[derive(Clone, Debug)]
pub enum Verdict {
    Reduced(Instance),
    No,
}

#[derive(Clone, Debug)]
pub struct Kernel {
    pub verdict: Verdict,
    pub trace: KernelTrace,
}

impl Kernel {
    pub fn instance(&self) -> Option<&Instance> {
        match &self.verdict {
            Verdict::Reduced(i) => Some(i),
            Verdict::No => None,
        }
    }
}

/// The constant `C` with every kernel having at most `C k^2 d^7` vertices.
pub const SIZE_CONSTANT: u128 = 263;

/// `C k^2 d^7`.
pub fn size_bound(d: usize, k: usize) -> u128 {
    SIZE_CONSTANT * (k as u128).pow(2) * (d as u128).pow(7)
}

/// `ℓ = 2d^2(2k+1)(d^2-d+3)`, the degree guaranteed in large reduced instances.
pub fn large_degree(d: usize, k: usize) -> u128 {
    let (d, k) = (d as u128, k as u128);
    2 * d * d * (2 * k + 1) * (d * d - d + 3)
}

/// The vertex count `4d(2d+3)(d+3)kℓ` above which a reduced yes-instance has
/// a vertex of degree greater than `ℓ`.
pub fn large_instance_threshold(d: usize, k: usize) -> u128 {
    let l = large_degree(d, k);
    let (d, k) = (d as u128, k as u128);
    4 * d * (2 * d + 3) * (d + 3) * k * l
}

/// Applies the reduction rules exhaustively.
///
/// Rules are tried in priority order and the scan restarts from the first
/// rule after every application. A reduced instance on at least
/// [`large_instance_threshold`] vertices is a no-instance, unless the last
/// scan skipped a large-degree step that would not have shrunk the graph.
/// Classes without edges and `d <= 1` are returned unchanged.
pub fn kernelize(inst: &Instance) -> Kernel {
    let mut w = Work::new(inst);
    if inst.d <= 1 || inst.pclass.is_degenerate() {
        return w.finish(false);
    }
    if w.approximation_says_no() {
        return w.finish(true);
    }
    loop {
        match w.step(&RuleId::RULES, false) {
            Some(rules::Fired::Changed) => {}
            Some(rules::Fired::No) => return w.finish(true),
            None => break,
        }
    }
    if w.too_large() {
        return w.finish(true);
    }
    let kernel = w.finish(false);
    if let Verdict::Reduced(out) = &kernel.verdict {
        debug_assert!(out.graph.order() as u128 <= size_bound(out.d, out.k));
    }
    kernel
}

/// Kernelizes, solves the reduced instance with [`crate::branch::solve`] and
/// lifts the answer back to the input graph.
pub fn solve_with_kernel(inst: &Instance) -> (Kernel, Outcome) {
    let kernel = kernelize(inst);
    let outcome = match &kernel.verdict {
        Verdict::No => Outcome::Infeasible(SolveStats::default()),
        Verdict::Reduced(out) => {
            let reduced = crate::branch::solve(out);
            let stats = reduced.stats();
            let lifted = reduced.solution().map(|s| kernel.trace.lift(s));
            Outcome::from_option(lifted, stats)
        }
    };
    debug_assert!(outcome.solution().is_none_or(|s| inst.accepts_solution(s)));
    (kernel, outcome)
}

/// Result of applying a single rule once.
#[derive(Clone, Debug)]
pub enum RuleApplication {
    NotApplicable,
    Applied(Kernel),
}

/// Applies the first applicable instance of `rule` alone.
///
/// The large-degree rule is applied as soon as the expansion lemma's
/// precondition holds rather than above its degree threshold, so that it
/// can be exercised on small graphs.
pub fn apply_rule(inst: &Instance, rule: RuleId) -> RuleApplication {
    let mut w = Work::new(inst);
    if inst.d <= 1 || inst.pclass.is_degenerate() {
        return RuleApplication::NotApplicable;
    }
    match w.step(&[rule], true) {
        None => RuleApplication::NotApplicable,
        Some(rules::Fired::Changed) => RuleApplication::Applied(w.finish(false)),
        Some(rules::Fired::No) => RuleApplication::Applied(w.finish(true)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{structured, Structured};
    use crate::graph::Graph;
    use crate::oracle::kernel_equivalence_check;
    use crate::pclass::PClassSpec;

    fn applied(inst: &Instance, rule: RuleId) -> Kernel {
        match apply_rule(inst, rule) {
            RuleApplication::Applied(k) => k,
            RuleApplication::NotApplicable => panic!("rule {rule} did not fire"),
        }
    }

    /// Hub 0 joined to every vertex of `ears` disjoint paths `a-m-b`.
    fn ears(ears: usize) -> Graph {
        let mut g = Graph::with_vertices(1);
        for _ in 0..ears {
            let a = g.add_vertex();
            let m = g.add_vertex();
            let b = g.add_vertex();
            for (x, y) in [(0, a), (0, m), (0, b), (a, m), (m, b)] {
                g.add_edge(x, y).unwrap();
            }
        }
        g
    }

    #[test]
    fn rule_numbers_round_trip() {
        for (i, r) in RuleId::RULES.iter().enumerate() {
            assert_eq!(r.number(), Some(i + 1));
            assert_eq!(RuleId::from_number(i + 1), Some(*r));
        }
        assert_eq!(RuleId::Approx.number(), None);
        assert_eq!(RuleId::from_number(8), None);
        assert_eq!(RuleId::Approx.to_string(), "approx");
        assert_eq!(RuleId::TooLarge.to_string(), "size");
    }

    #[test]
    fn component_in_phi_is_dropped() {
        let g = Graph::from_edges(7, &[(0, 1), (1, 2), (0, 2), (3, 4), (3, 5), (4, 5), (4, 6), (5, 6)]).unwrap();
        let inst = Instance::new(g, PClassSpec::cycles_and_k2(), 4, 1);
        let k = applied(&inst, RuleId::Component);
        let out = k.instance().unwrap();
        assert_eq!(out.graph.vertices().collect::<Vec<_>>(), vec![3, 4, 5, 6]);
        assert_eq!((out.d, out.k), (4, 1));
        assert_eq!(k.trace.to_log(), "RULE 1 verts=0,1,2 size=4\n");
        assert!(kernel_equivalence_check(&inst, out, 14).unwrap());
    }

    #[test]
    fn pendant_triangle_is_dropped() {
        let mut edges = vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
        edges.extend([(0, 4), (0, 5), (4, 5)]);
        let inst = Instance::new(Graph::from_edges(6, &edges).unwrap(), PClassSpec::cliques(), 3, 1);
        let k = applied(&inst, RuleId::CutVertex);
        let out = k.instance().unwrap();
        assert_eq!(out.graph.order(), 4);
        assert!(!out.graph.has_vertex(4) && !out.graph.has_vertex(5));
        assert_eq!(k.trace.to_log(), "RULE 2 verts=4,5 size=4\n");
    }

    #[test]
    fn sunflower_hub_exhausts_zero_budget() {
        let inst = Instance::new(ears(3), PClassSpec::cycles_and_k2(), 3, 0);
        assert!(matches!(applied(&inst, RuleId::Sunflower1).verdict, Verdict::No));
        assert!(matches!(kernelize(&inst).verdict, Verdict::No));
    }

    #[test]
    fn sunflower_hub_is_deleted() {
        let inst = Instance::new(ears(3), PClassSpec::cycles_and_k2(), 3, 2);
        let k = applied(&inst, RuleId::Sunflower1);
        let out = k.instance().unwrap();
        assert_eq!(out.k, 1);
        assert!(!out.graph.has_vertex(0));
        assert_eq!(k.trace.lift(&[]), vec![0]);
        assert!(kernel_equivalence_check(&inst, out, 14).unwrap());
    }

    #[test]
    fn graph_in_phi_kernelizes_to_nothing() {
        let g = structured(&Structured::BlockChain { count: 3, len: 4 });
        let k = kernelize(&Instance::new(g, PClassSpec::cycles_and_k2(), 4, 0));
        assert_eq!(k.instance().unwrap().graph.order(), 0);
        assert_eq!(k.trace.lift(&[]), Vec::<Vertex>::new());
    }

    #[test]
    fn lift_replays_in_reverse() {
        let trace = KernelTrace {
            steps: vec![],
            lifts: vec![
                Lift::Add(9),
                Lift::Bypass { v1: 1, interior: vec![2, 3] },
                Lift::Expansion { v: 5, paths: vec![(6, vec![20, 21]), (7, vec![22])] },
            ],
        };
        assert_eq!(trace.lift(&[3, 20]), vec![1, 5, 9]);
        assert_eq!(trace.lift(&[6, 21]), vec![6, 9]);
        assert_eq!(trace.lift(&[4]), vec![4, 9]);
    }

    #[test]
    fn bounds() {
        assert_eq!(size_bound(2, 1), 263 * 128);
        assert_eq!(large_degree(2, 1), 2 * 4 * 3 * 5);
        assert_eq!(large_instance_threshold(2, 1), 4 * 2 * 7 * 5 * 120);
        for d in 2..=12 {
            for k in 0..=12 {
                assert!(large_instance_threshold(d, k) <= size_bound(d, k), "d {d} k {k}");
            }
        }
    }
}
