//! The seven reduction rules.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::blocks::block_decomposition;
use crate::branch::Instance;
use crate::graph::{Graph, Vertex};
use crate::pclass::{is_in_phi, PClassSpec};

use super::adtree::{find_ad_trees, ADTreeResult};
use super::approx::{approximate_up_to, approximate_with_bound};
use super::expansion::expansion;
use super::{large_instance_threshold, Kernel, KernelTrace, Lift, RuleId, TraceStep, Verdict};

pub(crate) enum Fired {
    Changed,
    No,
}

pub(crate) struct Work {
    g: Graph,
    p: PClassSpec,
    d: usize,
    k: isize,
    trace: KernelTrace,
    /// Separator `S_v` per vertex, or `None` when `G - v` has `k + 1`
    /// disjoint `(N(v), d)`-trees. Cleared on every change.
    separators: BTreeMap<Vertex, Option<Vec<Vertex>>>,
    /// A large-degree step was skipped since the last change because it
    /// would not have lowered the potential.
    expansion_skipped: bool,
}

/// `|V(G)|` plus the number of edges whose ends both have degree at least 3.
fn potential(g: &Graph) -> usize {
    g.order() + g.edges().filter(|&(u, v)| g.degree(u) >= 3 && g.degree(v) >= 3).count()
}

impl Work {
    pub(crate) fn new(inst: &Instance) -> Self {
        Work {
            g: inst.graph.clone(),
            p: inst.pclass.clone(),
            d: inst.d,
            k: inst.k as isize,
            trace: KernelTrace::default(),
            separators: BTreeMap::new(),
            expansion_skipped: false,
        }
    }

    pub(crate) fn finish(self, no: bool) -> Kernel {
        let verdict = if no || self.k < 0 {
            Verdict::No
        } else {
            Verdict::Reduced(Instance::new(self.g, self.p, self.d, self.k as usize))
        };
        Kernel {
            verdict,
            trace: self.trace,
        }
    }

    fn record(&mut self, rule: RuleId, vertices: Vec<Vertex>, synthetic: Vec<Vertex>, lift: Lift) {
        self.separators.clear();
        self.expansion_skipped = false;
        self.trace.steps.push(TraceStep {
            rule,
            vertices,
            size: self.g.order(),
            synthetic,
        });
        self.trace.lifts.push(lift);
    }

    fn in_phi(&self, vs: &[Vertex]) -> bool {
        is_in_phi(&self.g.induced(vs), &self.p, self.d)
    }

    /// Records a no-verdict if the approximation proves the optimum exceeds
    /// `k`; otherwise returns the approximate solution.
    fn approximation(&mut self) -> Option<Vec<Vertex>> {
        let a = approximate_up_to(&self.g, &self.p, self.d, self.k.max(0) as usize);
        let ratio = 2 * self.d as isize + 6;
        if a.lower_bound as isize > self.k || (a.ratio_certified && a.solution.len() as isize > ratio * self.k) {
            self.record(RuleId::Approx, a.solution, vec![], Lift::Keep);
            return None;
        }
        Some(a.solution)
    }

    pub(crate) fn approximation_says_no(&mut self) -> bool {
        self.approximation().is_none()
    }

    /// Records a no-verdict for a reduced instance above the size threshold.
    pub(crate) fn too_large(&mut self) -> bool {
        let n = self.g.order() as u128;
        let big = n > 0 && n >= large_instance_threshold(self.d, self.k.max(0) as usize);
        if big && !self.expansion_skipped {
            self.record(RuleId::TooLarge, vec![], vec![], Lift::Keep);
            return true;
        }
        false
    }

    pub(crate) fn step(&mut self, rules: &[RuleId], isolated: bool) -> Option<Fired> {
        if self.k < 0 {
            return Some(Fired::No);
        }
        for &rule in rules {
            let fired = match rule {
                RuleId::Approx => self.approximation_says_no().then_some(Fired::No),
                RuleId::TooLarge => self.too_large().then_some(Fired::No),
                RuleId::Component => self.component(),
                RuleId::CutVertex => self.cut_vertex(),
                RuleId::Bypass => {
                    let u = if isolated {
                        approximate_with_bound(&self.g, &self.p, self.d).solution
                    } else {
                        match self.approximation() {
                            Some(u) => u,
                            None => return Some(Fired::No),
                        }
                    };
                    self.bypass(&u)
                }
                RuleId::Sunflower1 => self.sunflower1(),
                RuleId::DisjointObstructions => self.disjoint_obstructions(),
                RuleId::Sunflower2 => self.sunflower2(),
                RuleId::LargeDegree => self.large_degree(isolated),
            };
            if fired.is_some() {
                return fired;
            }
        }
        None
    }

    fn delete(&mut self, rule: RuleId, v: Vertex) -> Fired {
        self.g.remove_vertex(v).unwrap();
        self.k -= 1;
        self.record(rule, vec![v], vec![], Lift::Add(v));
        if self.k < 0 {
            Fired::No
        } else {
            Fired::Changed
        }
    }

    /// Rule 1: drop a component that already lies in the target class.
    fn component(&mut self) -> Option<Fired> {
        let c = self.g.components().into_iter().find(|c| self.in_phi(c))?;
        self.g.remove_vertices(&c).unwrap();
        self.record(RuleId::Component, c, vec![], Lift::Keep);
        Some(Fired::Changed)
    }

    /// Rule 2: drop a permitted leaf block hanging from a cut vertex.
    fn cut_vertex(&mut self) -> Option<Fired> {
        let bd = block_decomposition(&self.g);
        let b = (0..bd.blocks.len()).find(|&b| {
            let block = &bd.blocks[b];
            bd.block_degree(b) == 1 && block.len() >= 2 && block.len() <= self.d && self.p.accepts_block(&self.g, block)
        })?;
        let v = bd.block_cuts[b][0];
        let h: Vec<Vertex> = bd.blocks[b].iter().copied().filter(|&x| x != v).collect();
        self.g.remove_vertices(&h).unwrap();
        self.record(RuleId::CutVertex, h, vec![], Lift::Keep);
        Some(Fired::Changed)
    }

    /// Rule 3: shorten a chain `v1 B1 v2 ... vt` of blocks of `G - U` that has
    /// no edge to `U` except at its ends and spans at least `d + 1` vertices.
    /// A chain of bridges loses the edge `v1 v2` by contraction; otherwise a
    /// non-cut vertex of the chain is deleted, provided every `v1`-`vt` path
    /// left inside the chain still has at least `d` vertices. Inner cut
    /// vertices must lie in exactly two blocks of `G - U`.
    fn bypass(&mut self, u: &[Vertex]) -> Option<Fired> {
        let d = self.d;
        let in_u: BTreeSet<Vertex> = u.iter().copied().collect();
        let h = self.g.without(u);
        let bd = block_decomposition(&h);
        let touches_u = |x: Vertex| self.g.neighbors(x).iter().any(|y| in_u.contains(y));
        for &v1 in &bd.cut_vertices {
            for &b1 in bd.blocks_of(v1) {
                let mut chain = vec![v1];
                let mut span: BTreeSet<Vertex> = BTreeSet::new();
                let mut bridges_only = true;
                let mut b = b1;
                loop {
                    let cuts = &bd.block_cuts[b];
                    let cur = *chain.last().unwrap();
                    if cuts.len() != 2 || (chain.len() > 1 && touches_u(cur)) {
                        break;
                    }
                    let next = if cuts[0] == cur { cuts[1] } else { cuts[0] };
                    if bd.blocks[b].iter().any(|&x| !bd.is_cut(x) && touches_u(x)) {
                        break;
                    }
                    chain.push(next);
                    span.extend(&bd.blocks[b]);
                    bridges_only &= bd.blocks[b].len() == 2;
                    if chain.len() > d + 1 {
                        break;
                    }
                    if span.len() > d {
                        let interior: Vec<Vertex> = span.iter().copied().filter(|&x| x != v1 && x != next).collect();
                        if bridges_only {
                            let v2 = chain[1];
                            self.g.contract_edge(v1, v2).unwrap();
                            let interior = interior.into_iter().filter(|&x| x != v2).collect();
                            self.record(RuleId::Bypass, vec![v1, v2], vec![], Lift::Bypass { v1, interior });
                            return Some(Fired::Changed);
                        }
                        let candidate = span.iter().copied().find(|&x| {
                            if bd.is_cut(x) {
                                return false;
                            }
                            let allowed: BTreeSet<Vertex> = span.iter().copied().filter(|&y| y != x).collect();
                            path_order(&self.g, v1, next, &allowed).is_none_or(|len| len >= d)
                        });
                        if let Some(x) = candidate {
                            self.g.remove_vertex(x).unwrap();
                            let interior = interior.into_iter().filter(|&y| y != x).collect();
                            self.record(RuleId::Bypass, vec![x], vec![], Lift::Bypass { v1, interior });
                            return Some(Fired::Changed);
                        }
                    }
                    if bd.cut_degree(next) != 2 {
                        break;
                    }
                    b = *bd.blocks_of(next).iter().find(|&&c| c != b).unwrap();
                }
            }
        }
        None
    }

    fn separator(&mut self, v: Vertex) -> Option<Vec<Vertex>> {
        if let Some(s) = self.separators.get(&v) {
            return s.clone();
        }
        let h = self.g.without(&[v]);
        let s = match find_ad_trees(&h, self.g.neighbors(v), self.d, self.k as usize + 1) {
            ADTreeResult::Trees(_) => None,
            ADTreeResult::Separator(s) => Some(s),
        };
        self.separators.insert(v, s.clone());
        s
    }

    /// Components of `G - (S_v + v)` for every vertex with a separator.
    fn components_around(&mut self) -> Vec<(Vertex, Vec<Vertex>, Vec<Vec<Vertex>>)> {
        let vs: Vec<Vertex> = self.g.vertices().collect();
        let mut out = Vec::new();
        for v in vs {
            if let Some(mut s) = self.separator(v) {
                let comps = self.g.without(&[&s[..], &[v]].concat()).components();
                s.sort_unstable();
                out.push((v, s, comps));
            }
        }
        out
    }

    /// Rule 4: `k + 1` disjoint `(N(v), d)`-trees in `G - v` force `v`.
    fn sunflower1(&mut self) -> Option<Fired> {
        let vs: Vec<Vertex> = self.g.vertices().collect();
        let v = vs.into_iter().find(|&v| self.separator(v).is_none())?;
        Some(self.delete(RuleId::Sunflower1, v))
    }

    /// Rule 5: `k + 1` components of `G - (S_v + v)` outside the class.
    fn disjoint_obstructions(&mut self) -> Option<Fired> {
        for (v, _, comps) in self.components_around() {
            let bad = comps.iter().filter(|c| !self.in_phi(c)).count();
            if bad as isize > self.k {
                self.record(RuleId::DisjointObstructions, vec![v], vec![], Lift::Keep);
                return Some(Fired::No);
            }
        }
        None
    }

    /// Rule 6: `k + 1` components that are fine alone but not together with `v`.
    fn sunflower2(&mut self) -> Option<Fired> {
        for (v, _, comps) in self.components_around() {
            let spoiled = comps
                .iter()
                .filter(|c| self.in_phi(c) && !self.in_phi(&[&c[..], &[v]].concat()))
                .count();
            if spoiled as isize > self.k {
                return Some(self.delete(RuleId::Sunflower2, v));
            }
        }
        None
    }

    /// Rule 7: when `v` sees many components `C` with `G[C + v]` in the class,
    /// an expansion of `S_v` into them lets `v` drop its edges to the
    /// expanded components in exchange for `d - 1` paths of length two to
    /// each expanded separator vertex (at least two paths, so that the new
    /// block is large enough also for `d = 2`). Vertices of degree at most
    /// one are pruned afterwards.
    fn large_degree(&mut self, isolated: bool) -> Option<Fired> {
        let d = self.d;
        let k = self.k as usize;
        for (v, s, comps) in self.components_around() {
            if s.is_empty() {
                continue;
            }
            let g = &self.g;
            let adjacent = |c: &[Vertex], x: Vertex| c.iter().any(|&y| g.has_edge(x, y));
            let good: Vec<&Vec<Vertex>> = comps
                .iter()
                .filter(|c| adjacent(c, v) && s.iter().any(|&x| adjacent(c, x)))
                .filter(|c| is_in_phi(&g.induced(&[&c[..], &[v]].concat()), &self.p, d))
                .collect();
            let mut threshold = d * s.len();
            if !isolated {
                threshold = threshold.max(2 * d * (2 * k + 1) * (d * d - d + 1));
            }
            if good.len() < threshold {
                continue;
            }
            let mut edges = Vec::new();
            for (i, c) in good.iter().enumerate() {
                for &x in &s {
                    if adjacent(c, x) {
                        edges.push((x, i));
                    }
                }
            }
            let ys: Vec<usize> = (0..good.len()).collect();
            let Ok(e) = expansion(&s, &ys, &edges, d) else {
                continue;
            };
            let mut g2 = g.clone();
            for &i in &e.y_prime {
                for &y in good[i].iter() {
                    g2.remove_edge(v, y).unwrap();
                }
            }
            let mut paths = Vec::new();
            let mut synthetic = Vec::new();
            for &x in &e.x_prime {
                let rs: Vec<Vertex> = (0..(d - 1).max(2))
                    .map(|_| {
                        let r = g2.add_vertex();
                        g2.add_edge(v, r).unwrap();
                        g2.add_edge(r, x).unwrap();
                        r
                    })
                    .collect();
                synthetic.extend_from_slice(&rs);
                paths.push((x, rs));
            }
            loop {
                let Some(y) = g2.vertices().find(|&y| g2.degree(y) <= 1) else {
                    break;
                };
                g2.remove_vertex(y).unwrap();
            }
            if potential(&g2) >= potential(g) {
                self.expansion_skipped = true;
                continue;
            }
            self.g = g2;
            let mut verts = vec![v];
            verts.extend_from_slice(&e.x_prime);
            self.record(RuleId::LargeDegree, verts, synthetic, Lift::Expansion { v, paths });
            return Some(Fired::Changed);
        }
        None
    }
}

/// Number of vertices on a shortest `s`-`t` path through `allowed` vertices.
fn path_order(g: &Graph, s: Vertex, t: Vertex, allowed: &BTreeSet<Vertex>) -> Option<usize> {
    let mut dist: BTreeMap<Vertex, usize> = BTreeMap::from([(s, 1)]);
    let mut queue = VecDeque::from([s]);
    while let Some(u) = queue.pop_front() {
        if u == t {
            return Some(dist[&u]);
        }
        for &w in g.neighbors(u) {
            if allowed.contains(&w) && !dist.contains_key(&w) {
                dist.insert(w, dist[&u] + 1);
                queue.push_back(w);
            }
        }
    }
    None
}
