//! The α-expansion lemma on bipartite graphs.

use std::collections::{BTreeMap, VecDeque};

use crate::error::{Error, Result};

/// `X' ⊆ X`, `Y' ⊆ Y` and a map giving every `x ∈ X'` a private set of
/// exactly `α` neighbours inside `Y'`, with `N(Y') ∩ X = X'`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpansionResult<X: Ord, Y: Ord> {
    pub x_prime: Vec<X>,
    pub y_prime: Vec<Y>,
    pub phi: BTreeMap<X, Vec<Y>>,
}

/// Computes an α-expansion of `X` into `Y`.
///
/// Each vertex of `X` is replaced by `α` copies and a maximum matching is
/// taken. If every `Y` vertex is matched the whole graph is the expansion.
/// Otherwise the vertices reachable from unmatched `Y` vertices by
/// alternating paths form it.
pub fn expansion<X, Y>(x: &[X], y: &[Y], edges: &[(X, Y)], alpha: usize) -> Result<ExpansionResult<X, Y>>
where
    X: Ord + Copy,
    Y: Ord + Copy,
{
    let mut xs = x.to_vec();
    xs.sort_unstable();
    xs.dedup();
    let mut ys = y.to_vec();
    ys.sort_unstable();
    ys.dedup();
    if alpha == 0 || xs.is_empty() {
        return Err(Error::Expansion("need alpha >= 1 and a non-empty X side".into()));
    }
    if ys.len() < alpha * xs.len() {
        return Err(Error::Expansion(format!(
            "|Y| = {} is below alpha * |X| = {}",
            ys.len(),
            alpha * xs.len()
        )));
    }
    let mut y_adj: Vec<Vec<usize>> = vec![Vec::new(); ys.len()];
    let mut x_adj: Vec<Vec<usize>> = vec![Vec::new(); xs.len()];
    for (a, b) in edges {
        let (Ok(i), Ok(j)) = (xs.binary_search(a), ys.binary_search(b)) else {
            return Err(Error::Expansion("edge endpoint outside X or Y".into()));
        };
        x_adj[i].push(j);
        y_adj[j].push(i);
    }
    for l in x_adj.iter_mut().chain(y_adj.iter_mut()) {
        l.sort_unstable();
        l.dedup();
    }
    if y_adj.iter().any(|l| l.is_empty()) {
        return Err(Error::Expansion("some Y vertex has no neighbour in X".into()));
    }

    // copy c of x_i is left vertex i * alpha + c
    let copies = xs.len() * alpha;
    let mut match_left: Vec<Option<usize>> = vec![None; copies];
    let mut match_right: Vec<Option<usize>> = vec![None; ys.len()];
    for l in 0..copies {
        let mut seen = vec![false; ys.len()];
        augment(l, alpha, &x_adj, &mut seen, &mut match_left, &mut match_right);
    }

    let unmatched: Vec<usize> = (0..ys.len()).filter(|&j| match_right[j].is_none()).collect();
    let (reached_x, reached_y) = if unmatched.is_empty() {
        (vec![true; xs.len()], vec![true; ys.len()])
    } else {
        let mut rx = vec![false; xs.len()];
        let mut ry = vec![false; ys.len()];
        let mut queue: VecDeque<usize> = unmatched.into_iter().collect();
        for &j in &queue {
            ry[j] = true;
        }
        while let Some(j) = queue.pop_front() {
            for &i in &y_adj[j] {
                if rx[i] {
                    continue;
                }
                rx[i] = true;
                for c in 0..alpha {
                    let partner = match_left[i * alpha + c].expect("reachable copies are matched");
                    if !ry[partner] {
                        ry[partner] = true;
                        queue.push_back(partner);
                    }
                }
            }
        }
        (rx, ry)
    };

    let mut phi = BTreeMap::new();
    let mut x_prime = Vec::new();
    for (i, &xv) in xs.iter().enumerate() {
        if !reached_x[i] {
            continue;
        }
        x_prime.push(xv);
        let mut img: Vec<Y> = (0..alpha)
            .map(|c| ys[match_left[i * alpha + c].expect("expansion copies are matched")])
            .collect();
        img.sort_unstable();
        phi.insert(xv, img);
    }
    let y_prime = ys.iter().zip(&reached_y).filter(|(_, &r)| r).map(|(&v, _)| v).collect();
    let res = ExpansionResult { x_prime, y_prime, phi };
    debug_assert!(check_expansion(&xs, &ys, edges, alpha, &res));
    Ok(res)
}

fn augment(
    l: usize,
    alpha: usize,
    x_adj: &[Vec<usize>],
    seen: &mut [bool],
    match_left: &mut [Option<usize>],
    match_right: &mut [Option<usize>],
) -> bool {
    for &j in &x_adj[l / alpha] {
        if seen[j] {
            continue;
        }
        seen[j] = true;
        let free = match match_right[j] {
            None => true,
            Some(other) => augment(other, alpha, x_adj, seen, match_left, match_right),
        };
        if free {
            match_left[l] = Some(j);
            match_right[j] = Some(l);
            return true;
        }
    }
    false
}

/// Checks the three defining properties of an expansion.
pub fn check_expansion<X, Y>(x: &[X], y: &[Y], edges: &[(X, Y)], alpha: usize, res: &ExpansionResult<X, Y>) -> bool
where
    X: Ord + Copy,
    Y: Ord + Copy,
{
    if res.x_prime.is_empty() || res.y_prime.is_empty() {
        return false;
    }
    let in_y_prime = |v: &Y| res.y_prime.binary_search(v).is_ok();
    if !res.x_prime.iter().all(|v| x.contains(v)) || !res.y_prime.iter().all(|v| y.contains(v)) {
        return false;
    }
    let mut nbr_of_y_prime: Vec<X> = edges.iter().filter(|(_, b)| in_y_prime(b)).map(|&(a, _)| a).collect();
    nbr_of_y_prime.sort_unstable();
    nbr_of_y_prime.dedup();
    if nbr_of_y_prime != res.x_prime {
        return false;
    }
    let mut used: Vec<Y> = Vec::new();
    for xv in &res.x_prime {
        let Some(img) = res.phi.get(xv) else {
            return false;
        };
        if img.len() != alpha {
            return false;
        }
        for b in img {
            if !in_y_prime(b) || !edges.contains(&(*xv, *b)) {
                return false;
            }
            used.push(*b);
        }
    }
    let n = used.len();
    used.sort_unstable();
    used.dedup();
    used.len() == n && res.phi.len() == res.x_prime.len()
}
