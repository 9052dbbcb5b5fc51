//! Differential testing of the solvers against the exhaustive oracle.
//!
//! Every trial draws a graph from a [`GeneratorSpec`], picks a class, `d` and
//! `k` from its seed, runs each applicable solver and compares verdicts with
//! [`brute_force`]. Reported solutions are also checked for validity.

use std::fmt;

use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::SplitMix64;
use rayon::prelude::*;
use sha2::{Digest, Sha256};

use crate::branch::{self, Instance, Outcome};
use crate::compression::{solve_cactus, solve_complete_block};
use crate::generate::{generate, GeneratorSpec};
use crate::io::write_edge_list;
use crate::kernel::solve_with_kernel;
use crate::oracle::{brute_force, DEFAULT_CAP};
use crate::pclass::{ClassKind, PClassSpec};

/// A solver under test.
pub trait DiffSolver: Send + Sync {
    fn name(&self) -> &str;

    fn applies(&self, _inst: &Instance) -> bool {
        true
    }

    fn solve(&self, inst: &Instance) -> Outcome;
}

pub struct BranchSolver;

impl DiffSolver for BranchSolver {
    fn name(&self) -> &str {
        "branch"
    }

    fn solve(&self, inst: &Instance) -> Outcome {
        branch::solve(inst)
    }
}

/// Iterative compression; only for cliques and cycles.
pub struct CompressionSolver;

impl DiffSolver for CompressionSolver {
    fn name(&self) -> &str {
        "compress"
    }

    fn applies(&self, inst: &Instance) -> bool {
        matches!(inst.pclass.kind(), ClassKind::Cliques | ClassKind::CyclesAndK2)
    }

    fn solve(&self, inst: &Instance) -> Outcome {
        match inst.pclass.kind() {
            ClassKind::Cliques => solve_complete_block(&inst.graph, inst.d, inst.k),
            _ => solve_cactus(&inst.graph, inst.d, inst.k),
        }
    }
}

/// Kernelization followed by the branching solver.
pub struct KernelBranchSolver;

impl DiffSolver for KernelBranchSolver {
    fn name(&self) -> &str {
        "kernel-branch"
    }

    fn solve(&self, inst: &Instance) -> Outcome {
        solve_with_kernel(inst).1
    }
}

/// Reports the opposite verdict of the wrapped solver.
pub struct Negated<S>(pub S);

impl<S: DiffSolver> DiffSolver for Negated<S> {
    fn name(&self) -> &str {
        "negated"
    }

    fn applies(&self, inst: &Instance) -> bool {
        self.0.applies(inst)
    }

    fn solve(&self, inst: &Instance) -> Outcome {
        match self.0.solve(inst) {
            Outcome::Solved(s) => Outcome::Infeasible(s.stats),
            Outcome::Infeasible(stats) => Outcome::Solved(branch::Solution {
                deleted: inst.graph.vertices().take(inst.k).collect(),
                stats,
            }),
        }
    }
}

/// The branching, compression and kernel solvers.
pub fn standard_solvers() -> Vec<Box<dyn DiffSolver>> {
    vec![Box::new(BranchSolver), Box::new(CompressionSolver), Box::new(KernelBranchSolver)]
}

/// How trial parameters are drawn.
#[derive(Clone, Debug)]
pub struct TrialPlan {
    pub classes: Vec<PClassSpec>,
    pub d_min: usize,
    pub d_max: usize,
    pub k_max: usize,
    pub oracle_cap: usize,
}

impl Default for TrialPlan {
    fn default() -> Self {
        TrialPlan {
            classes: vec![
                PClassSpec::all_biconnected(),
                PClassSpec::cliques(),
                PClassSpec::cycles_and_k2(),
            ],
            d_min: 3,
            d_max: 5,
            k_max: 4,
            oracle_cap: DEFAULT_CAP,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Yes(usize),
    No,
    /// A claimed solution that is too large or leaves a bad block.
    Invalid,
    /// The oracle could not run.
    Unknown,
}

impl Verdict {
    fn answer(&self) -> Option<bool> {
        match self {
            Verdict::Yes(_) => Some(true),
            Verdict::No => Some(false),
            _ => None,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Yes(n) => write!(f, "yes:{n}"),
            Verdict::No => write!(f, "no"),
            Verdict::Invalid => write!(f, "invalid"),
            Verdict::Unknown => write!(f, "unknown"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct TrialRecord {
    pub trial: usize,
    /// Replays the trial through [`replay`].
    pub seed: u64,
    pub hash: String,
    pub class: String,
    pub d: usize,
    pub k: usize,
    pub oracle: Verdict,
    pub verdicts: Vec<(String, Verdict)>,
    pub agree: bool,
}

impl fmt::Display for TrialRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "trial={} seed={} hash={} class={} d={} k={} oracle={}",
            self.trial, self.seed, self.hash, self.class, self.d, self.k, self.oracle
        )?;
        for (name, v) in &self.verdicts {
            write!(f, " {name}={v}")?;
        }
        write!(f, " agree={}", self.agree)
    }
}

#[derive(Clone, Debug, Default)]
pub struct Report {
    pub records: Vec<TrialRecord>,
}

impl Report {
    pub fn mismatches(&self) -> impl Iterator<Item = &TrialRecord> {
        self.records.iter().filter(|r| !r.agree)
    }

    pub fn all_agree(&self) -> bool {
        self.mismatches().next().is_none()
    }

    /// One line per trial followed by a summary line.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for r in &self.records {
            out.push_str(&r.to_string());
            out.push('\n');
        }
        out.push_str(&self.summary());
        out.push('\n');
        out
    }

    pub fn summary(&self) -> String {
        let bad = self.mismatches().count();
        if bad == 0 {
            format!("{} trials, all agree", self.records.len())
        } else {
            format!("{} trials, {bad} mismatches", self.records.len())
        }
    }
}

/// SHA-256 prefix of the serialized instance.
pub fn instance_hash(inst: &Instance) -> String {
    let mut h = Sha256::new();
    h.update(write_edge_list(&inst.graph).as_bytes());
    h.update(format!("class={} d={} k={}", inst.pclass.name(), inst.d, inst.k).as_bytes());
    hex::encode(&h.finalize()[..8])
}

fn trial_seed(base: u64, trial: usize) -> u64 {
    let mut rng = SplitMix64::seed_from_u64(base ^ (trial as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
    rng.next_u64()
}

/// The instance of the trial with the given seed.
pub fn replay(gen: &GeneratorSpec, plan: &TrialPlan, seed: u64) -> Instance {
    let graph = generate(&GeneratorSpec {
        family: gen.family.clone(),
        seed,
    });
    let mut rng = SplitMix64::seed_from_u64(!seed);
    let mut pick = |n: usize| (rng.next_u64() % n as u64) as usize;
    let class = plan.classes[pick(plan.classes.len())].clone();
    let d = plan.d_min + pick(plan.d_max - plan.d_min + 1);
    let k = pick(plan.k_max + 1);
    Instance::new(graph, class, d, k)
}

fn judge(inst: &Instance, out: &Outcome) -> Verdict {
    match out.solution() {
        Some(s) if inst.accepts_solution(s) => Verdict::Yes(s.len()),
        Some(_) => Verdict::Invalid,
        None => Verdict::No,
    }
}

fn run_trial(gen: &GeneratorSpec, plan: &TrialPlan, solvers: &[Box<dyn DiffSolver>], trial: usize) -> TrialRecord {
    let seed = trial_seed(gen.seed, trial);
    let inst = replay(gen, plan, seed);
    let oracle = match brute_force(&inst, plan.oracle_cap) {
        Ok(o) => judge(&inst, &o),
        Err(_) => Verdict::Unknown,
    };
    let verdicts: Vec<(String, Verdict)> = solvers
        .iter()
        .filter(|s| s.applies(&inst))
        .map(|s| (s.name().to_string(), judge(&inst, &s.solve(&inst))))
        .collect();
    let reference = oracle.answer().or_else(|| verdicts.first().and_then(|(_, v)| v.answer()));
    let agree = oracle != Verdict::Invalid
        && verdicts.iter().all(|(_, v)| v.answer().is_some() && v.answer() == reference);
    TrialRecord {
        trial,
        seed,
        hash: instance_hash(&inst),
        class: inst.pclass.name().to_string(),
        d: inst.d,
        k: inst.k,
        oracle,
        verdicts,
        agree,
    }
}

/// Runs `trials` trials in parallel; records come back in trial order.
pub fn differential_run(
    gen: &GeneratorSpec,
    plan: &TrialPlan,
    solvers: &[Box<dyn DiffSolver>],
    trials: usize,
) -> Report {
    let records = (0..trials)
        .into_par_iter()
        .map(|t| run_trial(gen, plan, solvers, t))
        .collect();
    Report { records }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::Family;

    fn random(n: usize, seed: u64) -> GeneratorSpec {
        GeneratorSpec {
            family: Family::Random { n, p: 0.4 },
            seed,
        }
    }

    #[test]
    fn standard_solvers_agree() {
        let report = differential_run(&random(8, 42), &TrialPlan::default(), &standard_solvers(), 60);
        assert_eq!(report.records.len(), 60);
        assert!(report.all_agree(), "{}", report.to_text());
        assert!(report.to_text().ends_with("60 trials, all agree\n"));
    }

    #[test]
    fn negated_solver_is_caught() {
        let solvers: Vec<Box<dyn DiffSolver>> = vec![Box::new(Negated(BranchSolver))];
        let report = differential_run(&random(7, 1), &TrialPlan::default(), &solvers, 10);
        assert_eq!(report.mismatches().count(), 10);
    }

    #[test]
    fn no_trials_no_records() {
        let report = differential_run(&random(7, 1), &TrialPlan::default(), &standard_solvers(), 0);
        assert!(report.records.is_empty());
        assert!(report.all_agree());
    }

    #[test]
    fn records_replay() {
        let gen = random(9, 7);
        let plan = TrialPlan::default();
        let report = differential_run(&gen, &plan, &standard_solvers(), 5);
        for r in &report.records {
            assert_eq!(instance_hash(&replay(&gen, &plan, r.seed)), r.hash);
        }
    }

    #[test]
    fn compression_only_for_its_classes() {
        let g = crate::graph::Graph::with_vertices(2);
        let inst = Instance::new(g, PClassSpec::all_biconnected(), 3, 0);
        assert!(!CompressionSolver.applies(&inst));
    }
}
