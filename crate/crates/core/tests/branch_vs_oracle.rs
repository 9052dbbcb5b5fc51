use bpbvd::branch::{node_bound, solve};
use bpbvd::generate::random_graph;
use bpbvd::oracle::{brute_force_min, DEFAULT_CAP};
use bpbvd::{Instance, PClassSpec};

fn classes() -> [PClassSpec; 3] {
    [
        PClassSpec::all_biconnected(),
        PClassSpec::cliques(),
        PClassSpec::cycles_and_k2(),
    ]
}

#[test]
fn branch_matches_oracle_on_random_graphs() {
    for seed in 0..300u64 {
        let n = 4 + (seed % 8) as usize;
        let p = [0.2, 0.4, 0.6][(seed % 3) as usize];
        let g = random_graph(n, p, seed);
        for pc in classes() {
            for d in 2..=5 {
                let opt = brute_force_min(&g, &pc, d, 4, DEFAULT_CAP).unwrap().map(|s| s.len());
                for k in 0..=4 {
                    let inst = Instance::new(g.clone(), pc.clone(), d, k);
                    let out = solve(&inst);
                    let expect = opt.filter(|&o| o <= k);
                    assert_eq!(
                        out.solution().map(|s| s.len()),
                        expect,
                        "seed {seed} class {} d {d} k {k}",
                        pc.name()
                    );
                    if let Some(s) = out.solution() {
                        assert!(inst.accepts_solution(s));
                    }
                    assert!(out.stats().nodes as u128 <= node_bound(d, k));
                }
            }
        }
    }
}

#[test]
fn monotone_in_k_and_d() {
    let pc = PClassSpec::all_biconnected();
    for seed in 0..60u64 {
        let g = random_graph(8, 0.5, seed);
        for d in 3..=5 {
            for k in 0..3 {
                if solve(&Instance::new(g.clone(), pc.clone(), d, k)).is_yes() {
                    assert!(solve(&Instance::new(g.clone(), pc.clone(), d, k + 1)).is_yes());
                    assert!(solve(&Instance::new(g.clone(), pc.clone(), d + 1, k)).is_yes());
                }
            }
        }
    }
}
