//! Disjoint compression step for complete-block graphs.

use crate::blocks::block_decomposition;
use crate::graph::Vertex;
use crate::pclass::PClassSpec;

use super::{rest_blocks, run_disjoint, CompressionStats, Ctx, DisjointInstance, State, Step};

/// A set `R` avoiding the forbidden vertices with `|R| <= k` such that every
/// block of `G - R` is a clique on at most `d` vertices.
pub fn disjoint_complete_block(di: &DisjointInstance) -> Option<Vec<Vertex>> {
    disjoint_with_stats(di, &mut CompressionStats::default())
}

pub(crate) fn disjoint_with_stats(di: &DisjointInstance, stats: &mut CompressionStats) -> Option<Vec<Vertex>> {
    run_disjoint(di, &PClassSpec::cliques(), rules, stats)
}

fn rules(ctx: &mut Ctx, st: &State) -> Option<Step> {
    let outside = st.outside();
    if let Some(&v) = outside.iter().find(|&&v| st.g.degree(v) <= 1) {
        return Some(Step::Reduce("complete.low-degree", Some(st.removing(&[v]))));
    }
    let reds: Vec<Vertex> = outside.iter().copied().filter(|&v| st.is_red(v)).collect();
    if let Some(&v) = reds.iter().find(|&&v| !st.class_ok(ctx, &[v])) {
        return Some(Step::Reduce("complete.direct", Some(st.deleting(&[v]))));
    }
    for (i, &u) in reds.iter().enumerate() {
        for &v in &reds[i + 1..] {
            if !st.class_ok(ctx, &[u, v]) {
                return Some(Step::Branch(
                    "complete.pair",
                    vec![Some(st.deleting(&[u])), Some(st.deleting(&[v]))],
                ));
            }
        }
    }
    let (comp, _) = st.s_components();
    let comp_of = |v: Vertex| -> Vec<usize> {
        let mut c: Vec<usize> = st.s_nbrs(v).iter().map(|&s| comp[s]).collect();
        c.sort_unstable();
        c.dedup();
        c
    };
    if let Some(&u) = reds.iter().find(|&&u| comp_of(u).len() >= 2) {
        return Some(Step::Branch(
            "complete.connect",
            vec![Some(st.deleting(&[u])), st.absorbing(ctx, &[u])],
        ));
    }
    for &u in &reds {
        for &v in st.g.neighbors(u) {
            if v > u && st.is_red(v) && comp_of(u) != comp_of(v) {
                return Some(Step::Branch(
                    "complete.connect-edge",
                    vec![
                        Some(st.deleting(&[u])),
                        Some(st.deleting(&[v])),
                        st.absorbing(ctx, &[u, v]),
                    ],
                ));
            }
        }
    }
    check_neighbourhood_claim(ctx, st, &reds);

    let (_, bd) = rest_blocks(st);
    let leaf = (0..bd.blocks.len()).find(|&b| bd.block_degree(b) <= 1)?;
    let c = &bd.blocks[leaf];
    let cut = bd.block_cuts[leaf].first().copied();
    let c_prime: Vec<Vertex> = c.iter().copied().filter(|&v| Some(v) != cut).collect();
    let red_c: Vec<Vertex> = c.iter().copied().filter(|&v| st.is_red(v)).collect();

    if c_prime.iter().all(|&v| !st.is_red(v)) {
        return Some(Step::Reduce("complete.leaf-clean", Some(st.removing(&c_prime))));
    }
    if red_c.len() == 1 {
        let w = red_c[0];
        return match cut {
            None => Some(Step::Reduce("complete.leaf-one-red", st.absorbing(ctx, c))),
            Some(_) => Some(Step::Reduce("complete.leaf-one-red-cut", st.absorbing(ctx, &[w]))),
        };
    }
    let a = st.s_nbrs(red_c[0]);
    if red_c.iter().any(|&v| st.s_nbrs(v) != a) {
        ctx.stats.claim_violations += 1;
        return None;
    }
    let c2: Vec<Vertex> = c.iter().copied().filter(|&v| !st.is_red(v)).collect();
    if c2.is_empty() {
        let s = (c_prime.len() + a.len()).saturating_sub(ctx.d).min(c_prime.len());
        let next = st.deleting(&c_prime[..s]);
        return Some(Step::Reduce("complete.leaf-twins", next.absorbing(ctx, &c_prime[s..])));
    }
    let x = *red_c.iter().find(|&&v| Some(v) != cut)?;
    let others: Vec<Vertex> = red_c.iter().copied().filter(|&v| v != x).collect();
    Some(Step::Branch(
        "complete.leaf-split",
        vec![Some(st.deleting(&c2)), Some(st.deleting(&others))],
    ))
}

/// Each vertex outside `S` sees nothing, one vertex, or a whole block of `G[S]`.
fn check_neighbourhood_claim(ctx: &mut Ctx, st: &State, reds: &[Vertex]) {
    let s_graph = st.g.induced(&st.s_vertices());
    let bd = block_decomposition(&s_graph);
    for &x in reds {
        let nb = st.s_nbrs(x);
        if nb.len() >= 2 && !bd.blocks.contains(&nb) {
            ctx.stats.claim_violations += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{structured, Structured};
    use crate::graph::Graph;

    #[test]
    fn diamond_with_degree_three_pair_in_s() {
        let di = DisjointInstance {
            graph: structured(&Structured::Diamond),
            forbidden: vec![1, 2],
            d: 4,
            k: 1,
        };
        let r = disjoint_complete_block(&di).unwrap();
        assert_eq!(r.len(), 1);
        assert!(r[0] == 0 || r[0] == 3);
    }

    #[test]
    fn everything_forbidden() {
        let g = structured(&Structured::Bowtie);
        let di = DisjointInstance {
            graph: g.clone(),
            forbidden: g.vertices().collect(),
            d: 3,
            k: 0,
        };
        assert_eq!(disjoint_complete_block(&di), Some(vec![]));
    }

    #[test]
    fn k5_with_four_forbidden() {
        let di = DisjointInstance {
            graph: structured(&Structured::Clique(5)),
            forbidden: vec![0, 1, 2, 3],
            d: 4,
            k: 0,
        };
        assert_eq!(disjoint_complete_block(&di), None);
    }

    #[test]
    fn twins_rule_trims_to_d() {
        // K5 on {0..4} where 0 and 1 are forbidden
        let di = DisjointInstance {
            graph: structured(&Structured::Clique(5)),
            forbidden: vec![0, 1],
            d: 4,
            k: 1,
        };
        let r = disjoint_complete_block(&di).unwrap();
        assert_eq!(r.len(), 1);
        let g: Graph = structured(&Structured::Clique(5)).without(&r);
        assert!(crate::is_in_phi(&g, &PClassSpec::cliques(), 4));
    }
}
