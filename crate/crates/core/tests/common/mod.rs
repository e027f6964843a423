//! Oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeSet;

use dressian::subset::{self, Set};
use dressian::Matroid;

/// Every leaf-labelled tree on `0..n` with internal degrees at least 3, by
/// inserting leaves one at a time either at an internal vertex or on an
/// edge. Each tree is returned as its sorted list of nontrivial splits
/// (side without leaf 0).
pub fn tree_topologies(n: usize) -> BTreeSet<Vec<Set>> {
    assert!(n >= 3);
    // vertices: leaves 0..n, internal from n; edges as pairs
    let star = vec![(n, 0), (n, 1), (n, 2)];
    let mut trees = vec![(star, n + 1)];
    for leaf in 3..n {
        let mut next = Vec::new();
        for (edges, next_id) in &trees {
            for v in n..*next_id {
                let mut e = edges.clone();
                e.push((v, leaf));
                next.push((e, *next_id));
            }
            for i in 0..edges.len() {
                let (a, b) = edges[i];
                let mut e = edges.clone();
                e.remove(i);
                e.extend([(a, *next_id), (*next_id, b), (*next_id, leaf)]);
                next.push((e, next_id + 1));
            }
        }
        trees = next;
    }
    trees.into_iter().map(|(edges, count)| splits_of(n, count, &edges)).collect()
}

fn splits_of(n: usize, count: usize, edges: &[(usize, usize)]) -> Vec<Set> {
    let mut out = BTreeSet::new();
    for (i, &(a, b)) in edges.iter().enumerate() {
        if a < n || b < n {
            continue;
        }
        // leaves reachable from b without the edge i
        let mut seen = vec![false; count];
        let mut stack = vec![b];
        seen[b] = true;
        seen[a] = true;
        let mut side: Set = 0;
        while let Some(x) = stack.pop() {
            if x < n {
                side |= subset::singleton(x);
            }
            for (j, &(u, v)) in edges.iter().enumerate() {
                if j == i {
                    continue;
                }
                let y = if u == x { v } else if v == x { u } else { continue };
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        if subset::contains(side, 0) {
            side = subset::full(n) & !side;
        }
        out.insert(side);
    }
    out.into_iter().collect()
}

/// The rank-2 test corpus: uniform matroids and matroids with parallel
/// classes.
pub fn rank2_corpus() -> Vec<Matroid> {
    let s = |v: &[usize]| subset::from_elements(v.iter().copied());
    vec![
        Matroid::uniform(2, 4).unwrap(),
        Matroid::uniform(2, 5).unwrap(),
        Matroid::uniform(2, 6).unwrap(),
        Matroid::uniform_minus(2, 5, &[s(&[0, 1])]).unwrap(),
        Matroid::uniform_minus(2, 5, &[s(&[0, 1]), s(&[2, 3])]).unwrap(),
        Matroid::uniform_minus(2, 6, &[s(&[0, 1]), s(&[0, 2]), s(&[1, 2])]).unwrap(),
        Matroid::uniform_minus(2, 6, &[s(&[0, 1]), s(&[2, 3]), s(&[4, 5])]).unwrap(),
    ]
}

/// A random stable set of `J(r, n)` grown greedily in random order.
pub fn random_stable_set<R: rand::Rng>(rng: &mut R, n: usize, r: usize, keep: f64) -> Vec<Set> {
    use rand::seq::SliceRandom;
    let mut all: Vec<Set> = subset::k_subsets(n, r).collect();
    all.shuffle(rng);
    let mut chosen: Vec<Set> = Vec::new();
    for x in all {
        if rng.gen_bool(keep) && chosen.iter().all(|&y| subset::size(x ^ y) != 2) {
            chosen.push(x);
        }
    }
    chosen.sort_unstable();
    chosen
}

/// Uniform and non-uniform ambients of ranks 2 and 3.
pub fn mixed_corpus() -> Vec<Matroid> {
    let s = |v: &[usize]| subset::from_elements(v.iter().copied());
    let mut out = rank2_corpus();
    out.extend([
        Matroid::uniform(3, 5).unwrap(),
        Matroid::uniform(3, 6).unwrap(),
        Matroid::uniform_minus(3, 6, &[s(&[0, 1, 2])]).unwrap(),
        Matroid::uniform_minus(3, 6, &[s(&[0, 1, 2]), s(&[3, 4, 5])]).unwrap(),
    ]);
    out
}

/// A random valuation of `m`: realized by a random matrix where the sampler
/// supports it, otherwise a random point of the cell of the zero valuation.
pub fn any_valuation<R: rand::Rng>(rng: &mut R, m: &Matroid) -> dressian::Valuation {
    match dressian::sample::random_valuation(rng, m) {
        Ok(nu) => nu,
        Err(_) => dressian::sample::random_equivalent(rng, &dressian::Valuation::zero(m.clone())).unwrap(),
    }
}
