use bpbvd::compression::{solve_with_stats, Target};
use bpbvd::generate::random_graph;
use bpbvd::oracle::{brute_force_min, DEFAULT_CAP};

#[test]
fn compression_matches_oracle_on_random_graphs() {
    for seed in 0..250u64 {
        let n = 4 + (seed % 8) as usize;
        let p = [0.2, 0.4, 0.6][(seed % 3) as usize];
        let g = random_graph(n, p, seed);
        for target in [Target::CompleteBlock, Target::Cactus] {
            let pc = target.class();
            for d in 3..=5 {
                let opt = brute_force_min(&g, &pc, d, 4, DEFAULT_CAP).unwrap().map(|s| s.len());
                for k in 0..=4 {
                    let (out, stats) = solve_with_stats(&g, d, k, target);
                    assert_eq!(
                        out.solution().map(|s| s.len()),
                        opt.filter(|&o| o <= k),
                        "seed {seed} {target:?} d {d} k {k}"
                    );
                    if let Some(s) = out.solution() {
                        assert!(bpbvd::is_in_phi(&g.without(s), &pc, d));
                    }
                    assert_eq!(stats.violations(), 0, "seed {seed} {target:?} d {d} k {k}");
                }
            }
        }
    }
}
