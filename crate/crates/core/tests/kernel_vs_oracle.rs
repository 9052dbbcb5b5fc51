use bpbvd::generate::random_graph;
use bpbvd::kernel::{approximate_with_bound, kernelize, size_bound, Verdict};
use bpbvd::oracle::{brute_force, brute_force_min, DEFAULT_CAP};
use bpbvd::{is_in_phi, Instance, PClassSpec};

fn classes() -> [PClassSpec; 3] {
    [
        PClassSpec::all_biconnected(),
        PClassSpec::cliques(),
        PClassSpec::cycles_and_k2(),
    ]
}

#[test]
fn kernel_preserves_verdict_and_lifts_solutions() {
    for seed in 0..150u64 {
        let n = 4 + (seed % 9) as usize;
        let p = [0.2, 0.4, 0.6][(seed % 3) as usize];
        let g = random_graph(n, p, seed);
        for pc in classes() {
            for d in 2..=5 {
                for k in 0..=3 {
                    let inst = Instance::new(g.clone(), pc.clone(), d, k);
                    let expect = brute_force(&inst, DEFAULT_CAP).unwrap().is_yes();
                    let kernel = kernelize(&inst);
                    let ctx = format!("seed {seed} {} d {d} k {k}\n{}", pc.name(), kernel.trace.to_log());
                    match &kernel.verdict {
                        Verdict::No => assert!(!expect, "{ctx}"),
                        Verdict::Reduced(out) => {
                            assert!(out.graph.order() as u128 <= size_bound(out.d, out.k), "{ctx}");
                            let got = brute_force(out, 64).unwrap();
                            assert_eq!(got.is_yes(), expect, "{ctx}");
                            if let Some(s) = got.solution() {
                                let lifted = kernel.trace.lift(s);
                                assert!(lifted.len() <= k, "{ctx}");
                                assert!(is_in_phi(&g.without(&lifted), &pc, d), "{ctx} lifted {lifted:?}");
                            }
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn approximation_ratio_on_random_graphs() {
    for seed in 0..200u64 {
        let n = 4 + (seed % 8) as usize;
        let g = random_graph(n, [0.3, 0.5, 0.7][(seed % 3) as usize], seed);
        for pc in classes() {
            for d in 2..=5 {
                let a = approximate_with_bound(&g, &pc, d);
                assert!(is_in_phi(&g.without(&a.solution), &pc, d));
                let opt = brute_force_min(&g, &pc, d, n, DEFAULT_CAP).unwrap().unwrap().len();
                assert!(a.lower_bound <= opt, "seed {seed}");
                assert!(a.solution.len() <= (2 * d + 6) * opt, "seed {seed}");
            }
        }
    }
}
