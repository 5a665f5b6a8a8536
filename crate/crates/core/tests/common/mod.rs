//! Independent reference implementations used by the integration tests.
//!
//! Nothing here calls the library's parameter code: trees are only built and
//! validated through `Tree`, everything else is recomputed from scratch.

#![allow(dead_code)]

use gwpeel::Tree;

/// Every preorder degree sequence with at most `max_n` nodes and degrees
/// drawn from `allowed`.
pub fn all_trees(max_n: usize, allowed: &[u32]) -> Vec<Vec<u32>> {
    fn go(seq: &mut Vec<u32>, open: usize, max_n: usize, allowed: &[u32], out: &mut Vec<Vec<u32>>) {
        if open == 0 {
            out.push(seq.clone());
            return;
        }
        for &d in allowed {
            // each open slot needs at least one more node
            if seq.len() + open + d as usize > max_n {
                continue;
            }
            seq.push(d);
            go(seq, open - 1 + d as usize, max_n, allowed, out);
            seq.pop();
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), 1, max_n, allowed, &mut out);
    out
}

/// Children lists from a preorder degree sequence, by explicit stack.
pub fn children_lists(degrees: &[u32]) -> Vec<Vec<usize>> {
    let mut kids = vec![Vec::new(); degrees.len()];
    let mut stack: Vec<(usize, u32)> = Vec::new();
    for (i, &d) in degrees.iter().enumerate() {
        if let Some(top) = stack.last_mut() {
            kids[top.0].push(i);
            top.1 -= 1;
            if top.1 == 0 {
                stack.pop();
            }
        }
        if d > 0 {
            stack.push((i, d));
        }
    }
    kids
}

/// Peel numbers by literally running the leaf/parent removal loop.
/// Returns the layers and the number of loops performed.
pub fn algorithm_i(degrees: &[u32]) -> (Vec<u32>, u32) {
    let kids = children_lists(degrees);
    let n = degrees.len();
    let mut parent = vec![usize::MAX; n];
    for (u, ks) in kids.iter().enumerate() {
        for &c in ks {
            parent[c] = u;
        }
    }
    let mut alive = vec![true; n];
    let mut layer = vec![u32::MAX; n];
    let mut remaining = n;
    let mut round = 0;
    while remaining > 0 {
        let leaves: Vec<usize> = (0..n)
            .filter(|&u| alive[u] && kids[u].iter().all(|&c| !alive[c]))
            .collect();
        let mut parents: Vec<usize> = leaves
            .iter()
            .filter_map(|&u| (parent[u] != usize::MAX).then_some(parent[u]))
            .filter(|&p| alive[p])
            .collect();
        parents.sort_unstable();
        parents.dedup();
        for &u in &leaves {
            layer[u] = 2 * round;
            alive[u] = false;
        }
        for &p in &parents {
            layer[p] = 2 * round + 1;
            alive[p] = false;
        }
        remaining -= leaves.len() + parents.len();
        round += 1;
    }
    (layer, round)
}

/// Maximum independent set size by the include/exclude tree DP.
pub fn mis_dp(degrees: &[u32]) -> usize {
    let kids = children_lists(degrees);
    let n = degrees.len();
    let mut with = vec![1usize; n];
    let mut without = vec![0usize; n];
    for u in (0..n).rev() {
        for &c in &kids[u] {
            with[u] += without[c];
            without[u] += with[c].max(without[c]);
        }
    }
    with[0].max(without[0])
}

/// Smallest vertex set meeting every downward path of `s` nodes, by
/// checking every subset.
pub fn brute_spvc(degrees: &[u32], s: usize) -> usize {
    let n = degrees.len();
    assert!(n <= 20);
    let kids = children_lists(degrees);
    let mut parent = vec![usize::MAX; n];
    for (u, ks) in kids.iter().enumerate() {
        for &c in ks {
            parent[c] = u;
        }
    }
    // bitmask of each path of s nodes ending at v, walking up
    let mut paths = Vec::new();
    for v in 0..n {
        let mut mask = 0u32;
        let mut u = v;
        let mut len = 0;
        loop {
            mask |= 1 << u;
            len += 1;
            if len == s || parent[u] == usize::MAX {
                break;
            }
            u = parent[u];
        }
        if len == s {
            paths.push(mask);
        }
    }
    let mut best = n;
    for c in 0u32..(1 << n) {
        let k = c.count_ones() as usize;
        if k < best && paths.iter().all(|&p| p & c != 0) {
            best = k;
        }
    }
    best
}

/// `prod p_{deg}` over the nodes.
pub fn tree_probability(degrees: &[u32], pmf: &[f64]) -> f64 {
    degrees.iter().map(|&d| pmf[d as usize]).product()
}

/// Law of `min(rho(root), cap)` and of `min(lambda(root), cap)` for an
/// unconditioned tree with finite offspring pmf.
///
/// Capped values at depth budget `k` depend only on the children's capped
/// values at budget `k - 1`, so the laws are built level by level by summing
/// over every degree and every tuple of child values.
pub fn capped_root_laws(pmf: &[f64], cap: usize) -> (Vec<f64>, Vec<f64>) {
    // budget 0: nothing is known, everything sits at the cap
    let mut peel = vec![0.0; cap + 1];
    let mut leaf = vec![0.0; cap + 1];
    peel[0] = 1.0;
    leaf[0] = 1.0;
    for k in 1..=cap {
        let mut next_peel = vec![0.0; k + 1];
        let mut next_leaf = vec![0.0; k + 1];
        for (deg, &p) in pmf.iter().enumerate() {
            if p == 0.0 {
                continue;
            }
            for_each_tuple(deg, k, &mut |tuple| {
                let wp: f64 = tuple.iter().map(|&v| peel[v]).product();
                let wl: f64 = tuple.iter().map(|&v| leaf[v]).product();
                next_peel[combine_peel(tuple, k)] += p * wp;
                next_leaf[combine_leaf(tuple, k)] += p * wl;
            });
        }
        peel = next_peel;
        leaf = next_leaf;
    }
    (peel, leaf)
}

/// Calls `f` on every tuple in `{0, ..., k - 1}^deg`, where value `k - 1`
/// stands for "at least `k - 1`".
fn for_each_tuple(deg: usize, k: usize, f: &mut dyn FnMut(&[usize])) {
    let mut t = vec![0usize; deg];
    loop {
        f(&t);
        let mut i = 0;
        while i < deg {
            t[i] += 1;
            if t[i] < k {
                break;
            }
            t[i] = 0;
            i += 1;
        }
        if i == deg {
            return;
        }
    }
}

fn combine_peel(children: &[usize], k: usize) -> usize {
    if children.is_empty() {
        return 0;
    }
    let capped = k - 1;
    let exact = |v: usize| v < capped;
    if let Some(e) = children
        .iter()
        .copied()
        .filter(|&v| exact(v) && v % 2 == 0)
        .min()
    {
        return e + 1;
    }
    if children.iter().any(|&v| !exact(v)) {
        return k;
    }
    children.iter().max().unwrap() + 1
}

fn combine_leaf(children: &[usize], k: usize) -> usize {
    if children.is_empty() {
        return 0;
    }
    (children.iter().min().unwrap() + 1).min(k)
}

/// Unconditioned-tree probabilities of each root peel number and root
/// leaf-height over all trees with at most `max_n` nodes, plus the mass of
/// the larger trees.
pub fn enumerate_root_laws(pmf: &[f64], max_n: usize) -> (Vec<f64>, Vec<f64>, f64) {
    let allowed: Vec<u32> = (0..pmf.len() as u32)
        .filter(|&d| pmf[d as usize] > 0.0)
        .collect();
    let mut peel = vec![0.0; max_n];
    let mut leaf = vec![0.0; max_n];
    let mut seen = 0.0;
    for seq in all_trees(max_n, &allowed) {
        let w = tree_probability(&seq, pmf);
        let t = Tree::from_degrees(seq).unwrap();
        peel[t.peel_numbers()[0] as usize] += w;
        leaf[t.leaf_heights()[0] as usize] += w;
        seen += w;
    }
    (peel, leaf, 1.0 - seen)
}

/// The preorder rotation found by trying every shift.
pub fn rotate_by_search(seq: &[u32]) -> Vec<u32> {
    let n = seq.len();
    for k in 0..n {
        let mut r = seq.to_vec();
        r.rotate_left(k);
        if Tree::from_degrees(r.clone()).is_ok() {
            return r;
        }
    }
    panic!("no rotation of {seq:?} is a tree");
}
