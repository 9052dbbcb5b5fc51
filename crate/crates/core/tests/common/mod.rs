//! Bitmask brute force shared by the integration tests and the acceptance run.
//! Nothing here uses the block decomposition or clustering code under test.

#![allow(dead_code)]

use std::collections::BTreeSet;

use bpbvd::clustering::{check_clusterable, clusters, find_obstruction, Search};
use bpbvd::oracle::oracle_in_phi;
use bpbvd::sfvs::build_sfvs_instance;
use bpbvd::{Graph, PClassSpec, Vertex};

pub struct Dense {
    pub ids: Vec<Vertex>,
    pub adj: Vec<u64>,
}

impl Dense {
    pub fn new(g: &Graph) -> Self {
        let ids: Vec<Vertex> = g.vertices().collect();
        assert!(ids.len() <= 64);
        let pos = |v: Vertex| ids.binary_search(&v).unwrap();
        let adj = ids
            .iter()
            .map(|&v| g.neighbors(v).iter().fold(0u64, |m, &w| m | 1 << pos(w)))
            .collect();
        Dense { ids, adj }
    }

    pub fn n(&self) -> usize {
        self.ids.len()
    }

    pub fn full(&self) -> u64 {
        if self.n() == 64 {
            u64::MAX
        } else {
            (1u64 << self.n()) - 1
        }
    }

    pub fn to_ids(&self, mask: u64) -> Vec<Vertex> {
        (0..self.n()).filter(|&i| mask >> i & 1 == 1).map(|i| self.ids[i]).collect()
    }

    pub fn edges_in(&self, mask: u64) -> usize {
        (0..self.n())
            .filter(|&i| mask >> i & 1 == 1)
            .map(|i| (self.adj[i] & mask).count_ones() as usize)
            .sum::<usize>()
            / 2
    }

    pub fn connected(&self, mask: u64) -> bool {
        if mask == 0 {
            return true;
        }
        let mut seen = mask & mask.wrapping_neg();
        loop {
            let mut next = seen;
            let mut rest = seen;
            while rest != 0 {
                let i = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                next |= self.adj[i] & mask;
            }
            if next == seen {
                return seen == mask;
            }
            seen = next;
        }
    }

    /// Connected with no cut vertex, on at least two vertices.
    pub fn biconnected(&self, mask: u64) -> bool {
        match mask.count_ones() {
            0 | 1 => false,
            2 => self.edges_in(mask) == 1,
            _ => {
                self.connected(mask)
                    && (0..self.n()).filter(|&i| mask >> i & 1 == 1).all(|i| self.connected(mask & !(1 << i)))
            }
        }
    }

    /// Vertex sets of all cycles.
    pub fn cycles(&self) -> Vec<u64> {
        let mut out = BTreeSet::new();
        for s in 0..self.n() {
            let mut path = vec![s];
            self.extend_cycles(s, 1 << s, &mut path, &mut out);
        }
        out.into_iter().collect()
    }

    fn extend_cycles(&self, s: usize, mask: u64, path: &mut Vec<usize>, out: &mut BTreeSet<u64>) {
        let last = *path.last().unwrap();
        if path.len() >= 3 && self.adj[last] >> s & 1 == 1 {
            out.insert(mask);
        }
        let mut cand = self.adj[last] & !mask & !((1u64 << s << 1) - 1);
        while cand != 0 {
            let w = cand.trailing_zeros() as usize;
            cand &= cand - 1;
            path.push(w);
            self.extend_cycles(s, mask | 1 << w, path, out);
            path.pop();
        }
    }

    /// Inclusion-maximal sets among those satisfying `keep`.
    pub fn maximal(&self, keep: impl Fn(u64) -> bool) -> Vec<u64> {
        let good: Vec<u64> = (1..=self.full()).filter(|&m| keep(m)).collect();
        good.iter()
            .copied()
            .filter(|&m| !good.iter().any(|&o| o != m && o & m == m))
            .collect()
    }
}

fn sorted(mut sets: Vec<Vec<Vertex>>) -> Vec<Vec<Vertex>> {
    sets.sort();
    sets
}

/// Blocks as maximal biconnected vertex sets plus isolated vertices.
pub fn brute_blocks(g: &Graph) -> Vec<Vec<Vertex>> {
    let dn = Dense::new(g);
    let mut out: Vec<Vec<Vertex>> = dn.maximal(|m| dn.biconnected(m)).into_iter().map(|m| dn.to_ids(m)).collect();
    out.extend((0..dn.n()).filter(|&i| dn.adj[i] == 0).map(|i| vec![dn.ids[i]]));
    sorted(out)
}

/// Maximal vertex sets inducing a single vertex or a biconnected member of
/// the class on at most `d` vertices.
pub fn brute_clusters(g: &Graph, p: &PClassSpec, d: usize) -> Vec<Vec<Vertex>> {
    let dn = Dense::new(g);
    let fits = |m: u64| {
        let n = m.count_ones() as usize;
        n == 1
            || (n <= d && dn.biconnected(m) && p.accepts_counts(n, dn.edges_in(m)).expect("named class"))
    };
    sorted(dn.maximal(fits).into_iter().map(|m| dn.to_ids(m)).collect())
}

/// Smallest number of elements of `universe` meeting every set.
pub fn min_hitting(universe: u64, sets: &[u64]) -> usize {
    let elems: Vec<u64> = (0..64).filter(|i| universe >> i & 1 == 1).map(|i| 1u64 << i).collect();
    for size in 0..=elems.len() {
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            let s = idx.iter().fold(0u64, |m, &i| m | elems[i]);
            if sets.iter().all(|&c| c & s != 0) {
                return size;
            }
            let mut i = size;
            let mut advanced = false;
            while i > 0 {
                i -= 1;
                if idx[i] != i + elems.len() - size {
                    advanced = true;
                    break;
                }
            }
            if !advanced {
                break;
            }
            idx[i] += 1;
            for j in i + 1..size {
                idx[j] = idx[j - 1] + 1;
            }
        }
    }
    unreachable!("the whole universe hits every nonempty set")
}

pub fn is_free(g: &Graph, p: &PClassSpec, d: usize) -> bool {
    matches!(find_obstruction(g, p, d).unwrap(), Search::Free)
}

/// Clusters pairwise share at most one vertex and match the brute-force ones.
pub fn check_clusters(g: &Graph, p: &PClassSpec, d: usize) -> Result<(), String> {
    let cs = clusters(g, p, d).unwrap();
    if !check_clusterable(g, &cs) {
        return Err(format!("clusters overlap: {:?}", cs.clusters));
    }
    let brute = brute_clusters(g, p, d);
    if sorted(cs.clusters.clone()) != brute {
        return Err(format!("clusters {:?} brute {:?}", cs.clusters, brute));
    }
    Ok(())
}

/// Cycles of `g` whose vertex set lies in no cluster.
fn non_cluster_cycles(g: &Graph, p: &PClassSpec, d: usize, dn: &Dense) -> Vec<u64> {
    let cs = clusters(g, p, d).unwrap();
    let masks: Vec<u64> = cs
        .clusters
        .iter()
        .map(|c| c.iter().fold(0u64, |m, v| m | 1 << dn.ids.binary_search(v).unwrap()))
        .collect();
    dn.cycles().into_iter().filter(|&c| !masks.iter().any(|&h| c & h == c)).collect()
}

/// For every `S`: `G - S` is in the class iff `S` meets every cycle that
/// leaves the clusters.
pub fn check_cycle_hitting(g: &Graph, p: &PClassSpec, d: usize) -> Result<(), String> {
    let dn = Dense::new(g);
    let bad = non_cluster_cycles(g, p, d, &dn);
    for s in 0..=dn.full() {
        let good = oracle_in_phi(&g.without(&dn.to_ids(s)), p, d);
        let hits = bad.iter().all(|&c| c & s != 0);
        if good != hits {
            return Err(format!("S = {:?}: in class {good}, hits {hits}", dn.to_ids(s)));
        }
    }
    Ok(())
}

/// Minimum subset feedback vertex set of the split instance versus the
/// minimum hitting set of cycles that leave the clusters.
pub fn check_sfvs_reduction(g: &Graph, p: &PClassSpec, d: usize) -> Result<(usize, usize), String> {
    let dn = Dense::new(g);
    let bad = non_cluster_cycles(g, p, d, &dn);
    let direct = min_hitting(dn.full(), &bad);
    let cs = clusters(g, p, d).unwrap();
    let inst = build_sfvs_instance(g, &cs, g.order());
    let hn = Dense::new(&inst.graph);
    let terminals = inst
        .terminals
        .iter()
        .fold(0u64, |m, t| m | 1 << hn.ids.binary_search(t).unwrap());
    let through: Vec<u64> = hn.cycles().into_iter().filter(|&c| c & terminals != 0).collect();
    let split = min_hitting(hn.full(), &through);
    if direct == split {
        Ok((direct, split))
    } else {
        Err(format!("hitting set {direct}, subset feedback set {split}"))
    }
}
